//! Rational-function values of shifted vertex cones and the Brion identity
//! checker.
//!
//! The generating function of a shifted pointed cone is represented as a sum
//! over half-open simplicial cells: each cell contributes its fundamental
//! parallelepiped's lattice points as a Laurent-polynomial numerator over the
//! product of `(1 - x^g)` for its generators. Identities between such
//! rational functions are checked by exact evaluation at random rational
//! points clear of every pole; with exact arithmetic a single agreeing point
//! is already strong evidence and twenty make disagreement implausible, while
//! any disagreement is a certain failure.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cones::{
    barrier_cone, contains_line, extreme_rays, generic_interior_point, half_open_decompose,
    parallelepiped_points, triangulate,
};
use crate::linalg::{det, invert, IntVector, RatMatrix, RatVector};
use crate::polytope::{Face, Polytope};
use crate::rat::{int, rat_pow, sign_pow, Int, Rat};
use crate::series::{LatticeBox, TruncatedSeries};
use crate::{Error, Result};

/// Seed for the generic interior point used in half-open decompositions;
/// fixed so that sigma representations are deterministic.
const XI_SEED: u64 = 17;

/// Which shift to attach to a vertex cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexConeMode {
    /// `sigma(v + C_v)`.
    ShiftedByVertex,
    /// `sigma(C_v)`.
    Unshifted,
    /// `sigma(-v + C_v)`.
    ShiftedByNegVertex,
}

impl VertexConeMode {
    pub fn cli_tag(&self) -> &'static str {
        match self {
            VertexConeMode::ShiftedByVertex => "v",
            VertexConeMode::Unshifted => "0",
            VertexConeMode::ShiftedByNegVertex => "-v",
        }
    }

    pub fn from_cli_tag(tag: &str) -> Result<Self> {
        match tag {
            "v" => Ok(VertexConeMode::ShiftedByVertex),
            "0" => Ok(VertexConeMode::Unshifted),
            "-v" => Ok(VertexConeMode::ShiftedByNegVertex),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?} (expected v, 0 or -v)"))),
        }
    }
}

/// Which of the three Brion identities to check, named after the right-hand
/// side: the Laurent polynomial of `P`, the constant 1, or the interior of
/// `-P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BrionVariant {
    #[serde(rename = "P")]
    Polytope,
    #[serde(rename = "one")]
    One,
    #[serde(rename = "intP")]
    InteriorNeg,
}

impl BrionVariant {
    pub const ALL: [BrionVariant; 3] = [BrionVariant::Polytope, BrionVariant::One, BrionVariant::InteriorNeg];

    pub fn mode(&self) -> VertexConeMode {
        match self {
            BrionVariant::Polytope => VertexConeMode::ShiftedByVertex,
            BrionVariant::One => VertexConeMode::Unshifted,
            BrionVariant::InteriorNeg => VertexConeMode::ShiftedByNegVertex,
        }
    }

    pub fn cli_tag(&self) -> &'static str {
        match self {
            BrionVariant::Polytope => "P",
            BrionVariant::One => "one",
            BrionVariant::InteriorNeg => "intP",
        }
    }

    pub fn from_cli_tag(tag: &str) -> Result<Self> {
        match tag {
            "P" => Ok(BrionVariant::Polytope),
            "one" => Ok(BrionVariant::One),
            "intP" => Ok(BrionVariant::InteriorNeg),
            other => Err(Error::InvalidInput(format!("unknown variant {other:?} (expected P, one or intP)"))),
        }
    }
}

/// One half-open simplicial cell's contribution: the monomials of its
/// parallelepiped points over the product of `(1 - x^g)` for its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTerm {
    numerator_points: Vec<IntVector>,
    denominator_gens: Vec<IntVector>,
}

impl SigmaTerm {
    pub fn numerator_points(&self) -> &[IntVector] {
        &self.numerator_points
    }

    pub fn denominator_gens(&self) -> &[IntVector] {
        &self.denominator_gens
    }
}

/// Rational function attached to a shifted pointed cone, one term per
/// half-open simplicial cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRep {
    ambient_dim: usize,
    terms: Vec<SigmaTerm>,
}

impl SigmaRep {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> &[SigmaTerm] {
        &self.terms
    }

    /// Every generator appearing in some denominator, deduplicated.
    pub fn denominator_generators(&self) -> BTreeSet<IntVector> {
        self.terms
            .iter()
            .flat_map(|t| t.denominator_gens.iter().cloned())
            .collect()
    }
}

/// Evaluation point with all coordinates nonzero, so Laurent monomials can
/// be evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    coords: RatVector,
}

impl EvalPoint {
    pub fn new(coords: RatVector) -> Result<Self> {
        if coords.iter().any(Rat::is_zero) {
            return Err(Error::InvalidInput("evaluation point has a zero coordinate".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(RatVector::from_i64s(values))
    }

    pub fn coords(&self) -> &RatVector {
        &self.coords
    }
}

/// `t^a` for a lattice exponent vector.
pub fn monomial_eval(t: &EvalPoint, a: &IntVector) -> Result<Rat> {
    assert_eq!(t.coords.len(), a.len(), "exponent length mismatch");
    let mut acc = Rat::one();
    for (base, e) in t.coords.iter().zip(a.iter()) {
        acc *= rat_pow(base, e)?;
    }
    Ok(acc)
}

/// The generating function of the barrier cone at a vertex, with the chosen
/// shift: triangulate the cone, make the cells half-open against a generic
/// interior point, and enumerate each cell's parallelepiped points as the
/// numerator support.
pub fn sigma_vertex_cone(p: &Polytope, face: &Face, mode: VertexConeMode) -> Result<SigmaRep> {
    let rays = extreme_rays(p, face)?;
    let cell_indices = triangulate(&rays)?;
    let cells: Vec<Vec<IntVector>> = cell_indices
        .iter()
        .map(|c| c.iter().map(|&i| rays[i].clone()).collect())
        .collect();
    let xi = generic_interior_point(&cells, XI_SEED)?;
    let half_open = half_open_decompose(&cells, &xi)?;

    let k = *face.vertex_set().iter().next().expect("vertex face");
    let vertex = &p.vertices()[k];
    let shift = match mode {
        VertexConeMode::ShiftedByVertex => vertex.clone(),
        VertexConeMode::Unshifted => RatVector::zeros(p.dim()),
        VertexConeMode::ShiftedByNegVertex => vertex.neg(),
    };

    let mut terms = Vec::with_capacity(half_open.len());
    for cell in &half_open {
        let shifted = cell.with_shift(shift.clone())?;
        let pts = parallelepiped_points(&shifted)?;
        terms.push(SigmaTerm {
            numerator_points: pts.points().to_vec(),
            denominator_gens: cell.generators().to_vec(),
        });
    }
    Ok(SigmaRep { ambient_dim: p.dim(), terms })
}

/// The linear extension of `sigma` to a face cone: zero (absent) when the
/// barrier cone contains a line, the vertex-cone value otherwise. This is
/// why the alternating face sums collapse to vertex sums.
pub fn phi_of_cone(p: &Polytope, face: &Face, mode: VertexConeMode) -> Result<Option<SigmaRep>> {
    if contains_line(&barrier_cone(p, face)) {
        return Ok(None);
    }
    sigma_vertex_cone(p, face, mode).map(Some)
}

/// Exact value of the represented rational function at `t`.
pub fn eval_sigma(s: &SigmaRep, t: &EvalPoint) -> Result<Rat> {
    let mut total = Rat::zero();
    for term in &s.terms {
        let mut numer = Rat::zero();
        for p in &term.numerator_points {
            numer += monomial_eval(t, p)?;
        }
        let mut denom = Rat::one();
        for g in &term.denominator_gens {
            let factor = Rat::one() - monomial_eval(t, g)?;
            if factor.is_zero() {
                return Err(Error::PoleHit);
            }
            denom *= factor;
        }
        total += numer / denom;
    }
    Ok(total)
}

/// The Laurent polynomial of the polytope evaluated at `t`: the sum of `t^a`
/// over the lattice points of `P`.
pub fn polytope_poly_eval(p: &Polytope, t: &EvalPoint) -> Result<Rat> {
    sum_monomials(&p.lattice_points(), t)
}

/// `(-1)^n` times the sum of `t^a` over the lattice points interior to `-P`.
pub fn interior_neg_eval(p: &Polytope, t: &EvalPoint) -> Result<Rat> {
    let mut total = Rat::zero();
    for b in p.interior_lattice_points() {
        total += monomial_eval(t, &b.neg())?;
    }
    Ok(total * Rat::from_integer(int(sign_pow(p.dim()))))
}

fn sum_monomials(points: &[IntVector], t: &EvalPoint) -> Result<Rat> {
    let mut total = Rat::zero();
    for a in points {
        total += monomial_eval(t, a)?;
    }
    Ok(total)
}

/// One failed evaluation, with everything rendered as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrionFailure {
    pub point: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a randomized Brion identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrionReport {
    pub variant: BrionVariant,
    pub trials: u32,
    pub seed: u64,
    pub ok: bool,
    pub failures: Vec<BrionFailure>,
}

/// Checks the chosen Brion identity at `trials` random rational points:
/// the sum over vertices of the shifted vertex-cone values against the
/// variant's right-hand side. Points are drawn as coordinatewise ratios of
/// odd integers in `[3, 97]` and redrawn while they hit a pole.
pub fn check_brion(p: &Polytope, variant: BrionVariant, trials: u32, seed: u64) -> Result<BrionReport> {
    let mode = variant.mode();
    let mut reps = Vec::new();
    for k in 0..p.vertices().len() {
        let face = &p.faces()[p.vertex_face_index(k)?];
        reps.push(sigma_vertex_cone(p, face, mode)?);
    }
    let gens: BTreeSet<IntVector> = reps.iter().flat_map(|r| r.denominator_generators()).collect();

    // Right-hand-side lattice data is trial-independent; enumerate once.
    let rhs_points: Vec<IntVector> = match variant {
        BrionVariant::Polytope => p.lattice_points(),
        BrionVariant::One => Vec::new(),
        BrionVariant::InteriorNeg => p.interior_lattice_points().iter().map(IntVector::neg).collect(),
    };
    let rhs_scale = match variant {
        BrionVariant::InteriorNeg => Rat::from_integer(int(sign_pow(p.dim()))),
        _ => Rat::one(),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let t = draw_admissible_point(p.dim(), &gens, &mut rng)?;
        let mut lhs = Rat::zero();
        for rep in &reps {
            lhs += eval_sigma(rep, &t)?;
        }
        let rhs = match variant {
            BrionVariant::One => Rat::one(),
            _ => sum_monomials(&rhs_points, &t)? * rhs_scale.clone(),
        };
        if lhs != rhs {
            failures.push(BrionFailure {
                point: t.coords().iter().map(Rat::to_string).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(BrionReport { variant, trials, seed, ok: failures.is_empty(), failures })
}

fn draw_admissible_point(
    dim: usize,
    gens: &BTreeSet<IntVector>,
    rng: &mut ChaCha8Rng,
) -> Result<EvalPoint> {
    'attempt: for _ in 0..100 {
        let coords: Vec<Rat> = (0..dim)
            .map(|_| {
                let numer = 2 * rng.random_range(1..=48i64) + 1;
                let denom = 2 * rng.random_range(1..=48i64) + 1;
                Rat::new(int(numer), int(denom))
            })
            .collect();
        let t = EvalPoint::new(RatVector::new(coords))?;
        for g in gens {
            if monomial_eval(&t, g)?.is_one() {
                continue 'attempt;
            }
        }
        return Ok(t);
    }
    Err(Error::NoAdmissiblePoint)
}

/// Truncated expansion of a sigma representation over a window, straight
/// from the representation data: each numerator point contributes every
/// point `p + sum k_i g_i` (integer `k_i >= 0`) that lands in the window.
///
/// Requires full-dimensional terms. The nonnegative-combination test runs on
/// the adjugate system `adj * (a - p) = det * k`, which stays in integers.
pub fn expand_series(s: &SigmaRep, window: &LatticeBox) -> Result<TruncatedSeries> {
    let n = s.ambient_dim;
    let mut out = TruncatedSeries::zero(window.clone());
    for term in &s.terms {
        if term.denominator_gens.len() != n {
            return Err(Error::ConeNotFullDimensional);
        }
        let g = RatMatrix::from_columns(&term.denominator_gens, n)?;
        let d = det(&g)?;
        if d.is_zero() {
            return Err(Error::DependentGenerators);
        }
        let inv = invert(&g)?;
        // Integer adjugate rows: det * G^{-1}.
        let adj: Vec<IntVector> = inv
            .rows()
            .iter()
            .map(|row| row.scale(&d).to_int())
            .collect::<Result<_>>()?;
        let d_int = d.numer().clone();
        let apply = |a: &IntVector| -> Vec<Int> { adj.iter().map(|row| row.dot(a)).collect() };
        let cached: Vec<Vec<Int>> = term.numerator_points.iter().map(|p| apply(p)).collect();
        for a in window.points() {
            let va = apply(&a);
            let mut hits = 0i64;
            for vp in &cached {
                let ok = va.iter().zip(vp.iter()).all(|(x, y)| {
                    use num_integer::Integer;
                    let (q, r) = (x - y).div_rem(&d_int);
                    r.is_zero() && !q.is_negative()
                });
                if ok {
                    hits += 1;
                }
            }
            out.add_to(a, hits);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::series::series_of;
    use crate::testutil::{segment, triangle, unit_square, vertex_face};

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64s(v)
    }

    fn segment_rep(vertex: &[i64], mode: VertexConeMode) -> SigmaRep {
        let p = segment();
        let face = &p.faces()[vertex_face(&p, vertex)];
        sigma_vertex_cone(&p, face, mode).unwrap()
    }

    #[test]
    fn segment_vertex_cone_representations() {
        let rep = segment_rep(&[0], VertexConeMode::Unshifted);
        assert_eq!(rep.terms().len(), 1);
        assert_eq!(rep.terms()[0].numerator_points(), &[iv(&[0])]);
        assert_eq!(rep.terms()[0].denominator_gens(), &[iv(&[1])]);

        let rep = segment_rep(&[2], VertexConeMode::ShiftedByVertex);
        assert_eq!(rep.terms()[0].numerator_points(), &[iv(&[2])]);
        assert_eq!(rep.terms()[0].denominator_gens(), &[iv(&[-1])]);

        let rep = segment_rep(&[2], VertexConeMode::ShiftedByNegVertex);
        assert_eq!(rep.terms()[0].numerator_points(), &[iv(&[-2])]);
        assert_eq!(rep.terms()[0].denominator_gens(), &[iv(&[-1])]);
    }

    #[test]
    fn eval_sigma_golden_values() {
        let t = EvalPoint::from_i64s(&[2]).unwrap();
        // 1/(1-x) at 2.
        let c0 = segment_rep(&[0], VertexConeMode::Unshifted);
        assert_eq!(eval_sigma(&c0, &t).unwrap(), rat_int(-1));
        // x^2/(1-1/x) at 2.
        let c2 = segment_rep(&[2], VertexConeMode::ShiftedByVertex);
        assert_eq!(eval_sigma(&c2, &t).unwrap(), rat_int(8));
        // Their sum is 1 + 2 + 4.
        let v0 = segment_rep(&[0], VertexConeMode::ShiftedByVertex);
        assert_eq!(
            eval_sigma(&v0, &t).unwrap() + eval_sigma(&c2, &t).unwrap(),
            rat_int(7)
        );
    }

    #[test]
    fn eval_sigma_reports_poles() {
        let rep = segment_rep(&[0], VertexConeMode::Unshifted);
        let one = EvalPoint::from_i64s(&[1]).unwrap();
        assert!(matches!(eval_sigma(&rep, &one), Err(Error::PoleHit)));
    }

    #[test]
    fn polytope_poly_eval_examples() {
        let t = EvalPoint::from_i64s(&[2]).unwrap();
        assert_eq!(polytope_poly_eval(&segment(), &t).unwrap(), rat_int(7));

        let sq = unit_square();
        let t2 = EvalPoint::from_i64s(&[2, 3]).unwrap();
        assert_eq!(polytope_poly_eval(&sq, &t2).unwrap(), rat_int(12));

        // Interior of -[0,2] contributes -x^{-1} in dimension 1.
        let p = segment();
        assert_eq!(interior_neg_eval(&p, &t).unwrap(), rat(-1, 2));
    }

    #[test]
    fn phi_kills_cones_with_lines() {
        let sq = unit_square();
        let edge = sq.faces().iter().find(|f| f.dim() == 1).unwrap();
        assert!(phi_of_cone(&sq, edge, VertexConeMode::Unshifted).unwrap().is_none());
        let top = &sq.faces()[sq.top_face_index()];
        assert!(phi_of_cone(&sq, top, VertexConeMode::Unshifted).unwrap().is_none());
        let v = &sq.faces()[vertex_face(&sq, &[0, 0])];
        let rep = phi_of_cone(&sq, v, VertexConeMode::Unshifted).unwrap().unwrap();
        assert_eq!(rep, sigma_vertex_cone(&sq, v, VertexConeMode::Unshifted).unwrap());
    }

    #[test]
    fn brion_identities_on_the_segment() {
        let p = segment();
        for variant in BrionVariant::ALL {
            let r = check_brion(&p, variant, 20, 7).unwrap();
            assert!(r.ok, "{variant:?}: {:?}", r.failures);
        }
        // Variant One evaluates to exactly 1 and variant InteriorNeg to
        // -1/t; spot-check at a fixed point.
        let t = EvalPoint::new(RatVector::new(vec![rat(3, 5)])).unwrap();
        let reps: Vec<SigmaRep> = (0..2)
            .map(|k| {
                let f = &p.faces()[p.vertex_face_index(k).unwrap()];
                sigma_vertex_cone(&p, f, VertexConeMode::Unshifted).unwrap()
            })
            .collect();
        let sum = reps.iter().map(|r| eval_sigma(r, &t).unwrap()).sum::<Rat>();
        assert_eq!(sum, rat_int(1));
    }

    #[test]
    fn brion_identities_on_polygons() {
        for p in [unit_square(), triangle()] {
            for variant in BrionVariant::ALL {
                let r = check_brion(&p, variant, 8, 42).unwrap();
                assert!(r.ok, "{variant:?}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn shifted_rep_translates_unshifted_one_for_lattice_vertices() {
        let sq = unit_square();
        for k in 0..4 {
            let face = &sq.faces()[sq.vertex_face_index(k).unwrap()];
            let v = sq.vertices()[k].to_int().unwrap();
            let shifted = sigma_vertex_cone(&sq, face, VertexConeMode::ShiftedByVertex).unwrap();
            let unshifted = sigma_vertex_cone(&sq, face, VertexConeMode::Unshifted).unwrap();
            for (ts, tu) in shifted.terms().iter().zip(unshifted.terms()) {
                assert_eq!(ts.denominator_gens(), tu.denominator_gens());
                let translated: Vec<IntVector> =
                    tu.numerator_points().iter().map(|p| p.add(&v)).collect();
                assert_eq!(ts.numerator_points(), translated.as_slice());
            }
        }
    }

    #[test]
    fn expansion_matches_cone_series_on_segment() {
        let p = segment();
        let window = LatticeBox::from_i64s(&[-4], &[4]).unwrap();
        for (vtx, mode) in [
            (&[0i64][..], VertexConeMode::Unshifted),
            (&[2][..], VertexConeMode::ShiftedByVertex),
            (&[2][..], VertexConeMode::ShiftedByNegVertex),
        ] {
            let face = &p.faces()[vertex_face(&p, vtx)];
            let rep = sigma_vertex_cone(&p, face, mode).unwrap();
            let expanded = expand_series(&rep, &window).unwrap();

            let cone = barrier_cone(&p, face);
            let k = *face.vertex_set().iter().next().unwrap();
            let shift = match mode {
                VertexConeMode::ShiftedByVertex => p.vertices()[k].clone(),
                VertexConeMode::Unshifted => RatVector::zeros(1),
                VertexConeMode::ShiftedByNegVertex => p.vertices()[k].neg(),
            };
            let oracle = series_of(|a| cone.contains_rat(&a.to_rat().sub(&shift)), &window);
            assert_eq!(expanded, oracle, "vertex {vtx:?} mode {mode:?}");
        }
    }

    #[test]
    fn expansion_matches_cone_series_on_square_vertices() {
        let sq = unit_square();
        let window = LatticeBox::from_i64s(&[-3, -3], &[3, 3]).unwrap();
        for k in 0..4 {
            let face = &sq.faces()[sq.vertex_face_index(k).unwrap()];
            let rep = sigma_vertex_cone(&sq, face, VertexConeMode::ShiftedByVertex).unwrap();
            let expanded = expand_series(&rep, &window).unwrap();
            let cone = barrier_cone(&sq, face);
            let v = &sq.vertices()[k];
            let oracle = series_of(|a| cone.contains_rat(&a.to_rat().sub(v)), &window);
            assert_eq!(expanded, oracle, "vertex {k}");
        }
    }

    #[test]
    fn rational_vertex_polytopes_pass_brion() {
        // A triangle with a denominator-4 vertex still satisfies Theorem 1's
        // rational-normal hypothesis.
        let p = crate::polytope::hull(&[
            RatVector::new(vec![rat(1, 4), rat(1, 2)]),
            RatVector::new(vec![rat_int(3), rat_int(0)]),
            RatVector::new(vec![rat_int(0), rat_int(3)]),
        ])
        .unwrap();
        for variant in BrionVariant::ALL {
            let r = check_brion(&p, variant, 6, 11).unwrap();
            assert!(r.ok, "{variant:?}: {:?}", r.failures);
        }
    }

    #[test]
    fn brion_report_round_trips_through_json() {
        let r = check_brion(&segment(), BrionVariant::Polytope, 3, 5).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let parsed: BrionReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, r);
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
    }
}
