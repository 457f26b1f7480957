//! Seeded random polytope generation for property tests and fuzzing.
//!
//! The generator is deterministic per seed and uses ChaCha8, so fixtures are
//! reproducible across machines and implementations that agree on the
//! stream.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::RatVector;
use crate::polytope::{hull, Polytope};
use crate::rat::{int, Rat};
use crate::{Error, Result};

/// Shape of the random draw: `num_points` points in the cube
/// `[-coord_bound, coord_bound]^dim`, integer or denominator-at-most-4
/// rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub dim: usize,
    pub num_points: usize,
    pub coord_bound: i64,
    pub rational_vertices: bool,
    pub seed: u64,
}

/// Draws point sets until their hull is full-dimensional; deterministic per
/// spec.
pub fn random_polytope(spec: &GenSpec) -> Result<Polytope> {
    if spec.dim < 1 || spec.dim > 3 {
        return Err(Error::InvalidInput(format!("dimension {} outside supported range 1..=3", spec.dim)));
    }
    if spec.num_points < spec.dim + 1 {
        return Err(Error::InvalidInput(format!(
            "need at least {} points in dimension {}",
            spec.dim + 1,
            spec.dim
        )));
    }
    if spec.coord_bound < 1 {
        return Err(Error::InvalidInput("coord_bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..64 {
        let points: Vec<RatVector> = (0..spec.num_points)
            .map(|_| {
                RatVector::new(
                    (0..spec.dim)
                        .map(|_| {
                            if spec.rational_vertices {
                                let q = rng.random_range(1..=4i64);
                                let p = rng.random_range(-spec.coord_bound * q..=spec.coord_bound * q);
                                Rat::new(int(p), int(q))
                            } else {
                                Rat::from_integer(int(rng.random_range(-spec.coord_bound..=spec.coord_bound)))
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        match hull(&points) {
            Ok(p) => return Ok(p),
            Err(Error::Degenerate) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed)
}
