//! Cones attached to polytope faces: barrier cones, tangent-cone membership,
//! extreme rays, triangulation into simplicial cones, half-open
//! decomposition, and fundamental-parallelepiped lattice points.
//!
//! Everything a vertex cone needs for its generating function happens here:
//! `triangulate` splits the cone into simplicial cells (pulling triangulation
//! anchored at the lowest-index ray), `half_open_decompose` marks cell facets
//! open or closed against a generic interior point so the cells partition the
//! cone, and `parallelepiped_points` enumerates the lattice points of each
//! cell's half-open fundamental parallelepiped.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{
    box_lattice_points, kernel_basis, primitive_direction, rank, solve_linear, IntVector,
    RatMatrix, RatVector,
};
use crate::polytope::{Face, Polytope};
use crate::rat::{int, rat_ceil, rat_floor, Int, Rat};
use crate::{Error, Result};

/// Polyhedral cone based at the origin, described by halfspaces
/// `<normal, x> >= 0` and, when known, by primitive integer generators.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_dim: usize,
    generators: Option<Vec<IntVector>>,
    halfspaces: Vec<IntVector>,
    pointed: bool,
}

impl Cone {
    fn from_parts(ambient_dim: usize, halfspaces: Vec<IntVector>, generators: Option<Vec<IntVector>>) -> Self {
        let normal_rows: Vec<RatVector> = halfspaces.iter().map(IntVector::to_rat).collect();
        let pointed = match RatMatrix::with_ncols(normal_rows, ambient_dim) {
            Ok(m) => rank(&m) == ambient_dim,
            Err(_) => false,
        };
        Self { ambient_dim, generators, halfspaces, pointed }
    }

    /// Builds a full-dimensional cone from generating rays, deriving the
    /// facet halfspaces by brute force.
    pub fn from_generators(rays: &[IntVector], ambient_dim: usize) -> Result<Cone> {
        let unique = unique_primitive_rays(rays, ambient_dim)?;
        let ray_rows: Vec<RatVector> = unique.iter().map(IntVector::to_rat).collect();
        if rank(&RatMatrix::with_ncols(ray_rows, ambient_dim)?) != ambient_dim {
            return Err(Error::ConeNotFullDimensional);
        }
        let halfspaces = halfspaces_from_rays(&unique, ambient_dim)?;
        Ok(Cone::from_parts(ambient_dim, halfspaces, Some(unique)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> Option<&[IntVector]> {
        self.generators.as_deref()
    }

    pub fn halfspaces(&self) -> &[IntVector] {
        &self.halfspaces
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn contains_rat(&self, x: &RatVector) -> bool {
        self.halfspaces.iter().all(|u| !u.dot_rat(x).is_negative())
    }

    pub fn contains_int(&self, a: &IntVector) -> bool {
        self.halfspaces.iter().all(|u| !u.dot(a).is_negative())
    }
}

/// True iff the cone's lineality space is nontrivial, i.e. the halfspace
/// normals do not span the ambient space.
pub fn contains_line(c: &Cone) -> bool {
    !c.pointed
}

/// Barrier cone of the polytope at a face: all directions that do not leave
/// any facet containing the face. For vertex faces the extreme rays (edge
/// directions) are attached as generators.
pub fn barrier_cone(p: &Polytope, face: &Face) -> Cone {
    let halfspaces: Vec<IntVector> =
        face.facet_set().iter().map(|&j| p.facets()[j].normal().clone()).collect();
    let generators = if face.is_vertex() {
        extreme_rays(p, face).ok()
    } else {
        None
    };
    Cone::from_parts(p.dim(), halfspaces, generators)
}

/// True iff `a` lies in the tangent cone of the face (the intersection of
/// the supporting halfspaces of the facets containing it). Vacuously true
/// for the whole polytope.
pub fn tangent_membership(p: &Polytope, face: &Face, a: &IntVector) -> bool {
    face.facet_set().iter().all(|&j| {
        let f = &p.facets()[j];
        Rat::from_integer(f.normal().dot(a)) >= *f.offset()
    })
}

/// True iff `a` lies in the barrier cone of the face.
pub fn barrier_membership(p: &Polytope, face: &Face, a: &IntVector) -> bool {
    face.facet_set().iter().all(|&j| !p.facets()[j].normal().dot(a).is_negative())
}

/// True iff `a` lies in `-F + C_F`, computed as `a + f0` in the barrier cone
/// for the face barycenter `f0` (the barrier cone absorbs directions along
/// the face, so any relative-interior point works).
pub fn neg_shift_membership(p: &Polytope, face: &Face, a: &IntVector) -> bool {
    let f0 = p.representative_point(face);
    face.facet_set().iter().all(|&j| {
        let u = p.facets()[j].normal();
        !(u.dot_rat(&f0) + Rat::from_integer(u.dot(a))).is_negative()
    })
}

/// Primitive directions of the edges of `p` incident to a vertex face; these
/// generate its barrier cone. Sorted lexicographically.
pub fn extreme_rays(p: &Polytope, face: &Face) -> Result<Vec<IntVector>> {
    if !face.is_vertex() {
        let idx = p.faces().iter().position(|f| f == face).unwrap_or(usize::MAX);
        return Err(Error::NotAVertex(idx));
    }
    let v = *face.vertex_set().iter().next().expect("vertex face has one vertex");
    let mut rays = Vec::new();
    for f in p.faces() {
        if f.dim() == 1 && f.vertex_set().contains(&v) {
            let w = *f.vertex_set().iter().find(|&&k| k != v).expect("edge has two vertices");
            let dir = p.vertices()[w].sub(&p.vertices()[v]);
            rays.push(primitive_direction(&dir)?);
        }
    }
    rays.sort();
    Ok(rays)
}

fn unique_primitive_rays(rays: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    if rays.is_empty() {
        return Err(Error::InvalidInput("cone needs at least one ray".into()));
    }
    if rays.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("rays of unequal length".into()));
    }
    let mut unique = Vec::new();
    for r in rays {
        let p = r.primitive()?;
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    Ok(unique)
}

/// Brute-force facet halfspaces of a full-dimensional cone spanned by the
/// given rays: hyperplanes through the origin spanned by rank-(n-1) subsets
/// with every ray weakly on one side.
fn halfspaces_from_rays(rays: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    let mut normals: BTreeSet<IntVector> = BTreeSet::new();
    for subset in (0..rays.len()).combinations(n - 1) {
        let rows: Vec<RatVector> = subset.iter().map(|&i| rays[i].to_rat()).collect();
        let mat = RatMatrix::with_ncols(rows, n)?;
        let kernel = kernel_basis(&mat);
        if kernel.len() != 1 {
            continue;
        }
        let normal = primitive_direction(&kernel[0])?;
        let mut above = false;
        let mut below = false;
        for r in rays {
            let s = normal.dot(r);
            if s.is_positive() {
                above = true;
            } else if s.is_negative() {
                below = true;
            }
            if above && below {
                break;
            }
        }
        match (above, below) {
            (true, false) | (false, false) => {
                normals.insert(normal);
            }
            (false, true) => {
                normals.insert(normal.neg());
            }
            (true, true) => {}
        }
    }
    Ok(normals.into_iter().collect())
}

/// Triangulates a pointed full-dimensional cone given by rays into
/// full-dimensional simplicial subcones, returned as sorted lists of ray
/// indices. Pulling triangulation anchored at the lowest-index ray, so every
/// cell contains ray 0's class; deterministic.
pub fn triangulate(rays: &[IntVector]) -> Result<Vec<Vec<usize>>> {
    let n = rays.first().map(IntVector::len).unwrap_or(0);
    if n == 0 {
        return Err(Error::InvalidInput("cone needs at least one ray".into()));
    }
    let unique = unique_primitive_rays(rays, n)?;
    // Map each unique ray back to the first input index carrying it.
    let orig_index: Vec<usize> = unique
        .iter()
        .map(|u| {
            rays.iter()
                .position(|r| r.primitive().ok().as_ref() == Some(u))
                .expect("unique ray came from input")
        })
        .collect();

    let ray_rows: Vec<RatVector> = unique.iter().map(IntVector::to_rat).collect();
    if rank(&RatMatrix::with_ncols(ray_rows, n)?) != n {
        return Err(Error::ConeNotFullDimensional);
    }
    let halfspaces = halfspaces_from_rays(&unique, n)?;
    let normal_rows: Vec<RatVector> = halfspaces.iter().map(IntVector::to_rat).collect();
    if rank(&RatMatrix::with_ncols(normal_rows, n)?) != n {
        return Err(Error::ConeContainsLine);
    }

    // Face lattice of the cone: tight ray sets of the facets, closed under
    // intersection, with the full ray set on top.
    let top: BTreeSet<usize> = (0..unique.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(top.clone());
    for u in &halfspaces {
        let tight: BTreeSet<usize> =
            (0..unique.len()).filter(|&i| u.dot(&unique[i]).is_zero()).collect();
        if !tight.is_empty() {
            sets.insert(tight);
        }
    }
    loop {
        let mut fresh = Vec::new();
        for [a, b] in sets.iter().array_combinations::<2>() {
            let c: BTreeSet<usize> = a.intersection(b).copied().collect();
            if !c.is_empty() && !sets.contains(&c) && !fresh.contains(&c) {
                fresh.push(c);
            }
        }
        if fresh.is_empty() {
            break;
        }
        sets.extend(fresh);
    }
    let lattice: BTreeMap<BTreeSet<usize>, usize> = sets
        .into_iter()
        .map(|s| {
            let rows: Vec<RatVector> = s.iter().map(|&i| unique[i].to_rat()).collect();
            let d = rank(&RatMatrix::with_ncols(rows, n).expect("rectangular"));
            (s, d)
        })
        .collect();

    let mut cells = pull_cells(&top, n, &lattice);
    for c in &mut cells {
        *c = c.iter().map(|&i| orig_index[i]).collect();
        c.sort_unstable();
    }
    cells.sort();
    Ok(cells)
}

/// Recursive pulling triangulation of a cone face given the cone's face
/// lattice: cone the lowest-index ray over the triangulations of the
/// subfaces that avoid it.
fn pull_cells(
    face: &BTreeSet<usize>,
    dim: usize,
    lattice: &BTreeMap<BTreeSet<usize>, usize>,
) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.iter().copied().collect()];
    }
    let anchor = *face.iter().next().expect("faces are non-empty");
    let mut cells = Vec::new();
    for (sub, &d) in lattice {
        if d + 1 == dim && !sub.contains(&anchor) && sub.is_subset(face) {
            for mut cell in pull_cells(sub, d, lattice) {
                cell.push(anchor);
                cells.push(cell);
            }
        }
    }
    cells
}

/// Simplicial cone with a rational shift and half-open facet marks:
/// coordinate `i` of the fundamental parallelepiped ranges over `(0, 1]`
/// when `open_mask[i]` is set and `[0, 1)` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSimplicialCone {
    shift: RatVector,
    generators: Vec<IntVector>,
    open_mask: Vec<bool>,
}

impl ShiftedSimplicialCone {
    pub fn new(shift: RatVector, generators: Vec<IntVector>, open_mask: Vec<bool>) -> Result<Self> {
        if generators.len() != open_mask.len() {
            return Err(Error::DimensionMismatch("one mask entry per generator".into()));
        }
        if generators.iter().any(|g| g.len() != shift.len()) {
            return Err(Error::DimensionMismatch("generator length != ambient dimension".into()));
        }
        let rows: Vec<RatVector> = generators.iter().map(IntVector::to_rat).collect();
        if rank(&RatMatrix::with_ncols(rows, shift.len())?) != generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(Self { shift, generators, open_mask })
    }

    pub fn shift(&self) -> &RatVector {
        &self.shift
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn open_mask(&self) -> &[bool] {
        &self.open_mask
    }

    pub fn ambient_dim(&self) -> usize {
        self.shift.len()
    }

    /// Same cell with a different shift.
    pub fn with_shift(&self, shift: RatVector) -> Result<Self> {
        Self::new(shift, self.generators.clone(), self.open_mask.clone())
    }

    /// True iff `a` lies in the shifted half-open cone (coordinates
    /// nonnegative, strictly positive where the mask is open).
    pub fn cone_contains_int(&self, a: &IntVector) -> Result<bool> {
        let g = RatMatrix::from_columns(&self.generators, self.ambient_dim())?;
        let rhs = a.to_rat().sub(&self.shift);
        let Some(lambda) = solve_linear(&g, &rhs)? else {
            return Ok(false);
        };
        if !check_consistent(&g, &lambda, &rhs) {
            return Ok(false);
        }
        Ok(lambda.iter().zip(&self.open_mask).all(|(l, &open)| {
            if open {
                l.is_positive()
            } else {
                !l.is_negative()
            }
        }))
    }
}

/// `solve_linear` guarantees consistency only on the row space; verify the
/// candidate actually reproduces the right-hand side.
fn check_consistent(g: &RatMatrix, lambda: &RatVector, rhs: &RatVector) -> bool {
    g.rows().iter().zip(rhs.iter()).all(|(row, want)| row.dot(lambda) == *want)
}

/// Marks each simplicial cell's facets open or closed against a generic
/// point `xi`: facet `i` (the one where the `i`-th generator coordinate
/// vanishes) is open iff `xi` lies strictly on its non-cone side. With `xi`
/// interior to the first cell, the resulting half-open cells partition the
/// union of the cells.
pub fn half_open_decompose(cells: &[Vec<IntVector>], xi: &RatVector) -> Result<Vec<ShiftedSimplicialCone>> {
    let n = xi.len();
    let mut out = Vec::with_capacity(cells.len());
    for (k, cell) in cells.iter().enumerate() {
        if cell.len() != n {
            return Err(Error::ConeNotFullDimensional);
        }
        let g = RatMatrix::from_columns(cell, n)?;
        let lambda = solve_linear(&g, xi)?.ok_or(Error::DependentGenerators)?;
        if !check_consistent(&g, &lambda, xi) {
            return Err(Error::DependentGenerators);
        }
        let mut mask = Vec::with_capacity(n);
        for l in lambda.iter() {
            if l.is_zero() {
                return Err(Error::NotGeneric);
            }
            mask.push(l.is_negative());
        }
        if k == 0 && mask.iter().any(|&open| open) {
            // xi must sit in the interior of the first cell.
            return Err(Error::NotGeneric);
        }
        out.push(ShiftedSimplicialCone::new(RatVector::zeros(n), cell.clone(), mask)?);
    }
    Ok(out)
}

/// Draws a generic interior point of the first cell: its generator sum plus
/// a small seeded rational perturbation, redrawn (with shrinking magnitude)
/// until no cell facet hyperplane contains it.
pub fn generic_interior_point(cells: &[Vec<IntVector>], seed: u64) -> Result<RatVector> {
    let first = cells.first().ok_or_else(|| Error::InvalidInput("no cells".into()))?;
    let n = first.first().map(IntVector::len).unwrap_or(0);
    let mut base = RatVector::zeros(n);
    for g in first {
        base = base.add(&g.to_rat());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..32u32 {
        let denom = int(997) << attempt;
        let eps = RatVector::new(
            (0..n)
                .map(|_| Rat::new(int(rng.random_range(-200..=200i64)), denom.clone()))
                .collect(),
        );
        let xi = base.add(&eps);
        if half_open_decompose(cells, &xi).is_ok() {
            return Ok(xi);
        }
    }
    Err(Error::NotGeneric)
}

/// Lattice points of the half-open fundamental parallelepiped of a shifted
/// simplicial cone, in lexicographic order.
#[derive(Clone, Debug)]
pub struct ParallelepipedPoints {
    points: Vec<IntVector>,
    cone: ShiftedSimplicialCone,
}

impl ParallelepipedPoints {
    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn cone(&self) -> &ShiftedSimplicialCone {
        &self.cone
    }
}

/// Enumerates all integer points `shift + sum lambda_i g_i` with each
/// `lambda_i` in `[0,1)` or `(0,1]` according to the mask: bound every
/// coordinate by the parallelepiped corners, then solve for the exact
/// coordinates of each candidate and filter.
pub fn parallelepiped_points(c: &ShiftedSimplicialCone) -> Result<ParallelepipedPoints> {
    let n = c.ambient_dim();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let mut mn = c.shift()[j].clone();
        let mut mx = c.shift()[j].clone();
        for g in c.generators() {
            let e = &g[j];
            if e.is_negative() {
                mn += Rat::from_integer(e.clone());
            } else {
                mx += Rat::from_integer(e.clone());
            }
        }
        lo.push(rat_ceil(&mn));
        hi.push(rat_floor(&mx));
    }
    let g = RatMatrix::from_columns(c.generators(), n)?;
    let mut points = Vec::new();
    for a in box_lattice_points(&IntVector::new(lo), &IntVector::new(hi)) {
        let rhs = a.to_rat().sub(c.shift());
        let Some(lambda) = solve_linear(&g, &rhs)? else {
            continue;
        };
        if !check_consistent(&g, &lambda, &rhs) {
            continue;
        }
        let inside = lambda.iter().zip(c.open_mask()).all(|(l, &open)| {
            let one = Rat::from_integer(Int::from(1));
            if open {
                l.is_positive() && *l <= one
            } else {
                !l.is_negative() && *l < one
            }
        });
        if inside {
            points.push(a);
        }
    }
    Ok(ParallelepipedPoints { points, cone: c.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{classify_lower, classify_visible};
    use crate::linalg::det;
    use crate::rat::{rat, rat_int};
    use crate::testutil::{cube3, segment, triangle, unit_square, vertex_face};

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64s(v)
    }

    #[test]
    fn barrier_cones_of_the_segment() {
        let p = segment();
        let c0 = barrier_cone(&p, &p.faces()[vertex_face(&p, &[0])]);
        assert_eq!(c0.halfspaces(), &[iv(&[1])]);
        assert_eq!(c0.generators().unwrap(), &[iv(&[1])]);
        assert!(c0.is_pointed());

        let c2 = barrier_cone(&p, &p.faces()[vertex_face(&p, &[2])]);
        assert_eq!(c2.halfspaces(), &[iv(&[-1])]);
        assert_eq!(c2.generators().unwrap(), &[iv(&[-1])]);

        let top = barrier_cone(&p, &p.faces()[p.top_face_index()]);
        assert!(top.halfspaces().is_empty());
        assert!(!top.is_pointed());
        assert!(contains_line(&top));
    }

    #[test]
    fn tangent_membership_examples() {
        let p = segment();
        let v0 = &p.faces()[vertex_face(&p, &[0])];
        let v2 = &p.faces()[vertex_face(&p, &[2])];
        let top = &p.faces()[p.top_face_index()];
        assert!(!tangent_membership(&p, v2, &iv(&[5])));
        assert!(tangent_membership(&p, v0, &iv(&[5])));
        assert!(tangent_membership(&p, top, &iv(&[5])));
        assert!(tangent_membership(&p, top, &iv(&[-100])));
    }

    #[test]
    fn barrier_membership_examples() {
        let p = segment();
        let v2 = &p.faces()[vertex_face(&p, &[2])];
        assert!(barrier_membership(&p, v2, &iv(&[0])));
        assert!(!barrier_membership(&p, v2, &iv(&[1])));
        let sq = unit_square();
        let origin = &sq.faces()[vertex_face(&sq, &[0, 0])];
        assert!(barrier_membership(&sq, origin, &iv(&[3, 7])));
    }

    #[test]
    fn neg_shift_membership_examples() {
        let p = segment();
        let v2 = &p.faces()[vertex_face(&p, &[2])];
        let v0 = &p.faces()[vertex_face(&p, &[0])];
        assert!(neg_shift_membership(&p, v2, &iv(&[-2])));
        assert!(!neg_shift_membership(&p, v2, &iv(&[-1])));
        assert!(neg_shift_membership(&p, v0, &iv(&[0])));
    }

    #[test]
    fn extreme_rays_examples() {
        let p = segment();
        assert_eq!(extreme_rays(&p, &p.faces()[vertex_face(&p, &[0])]).unwrap(), vec![iv(&[1])]);

        let sq = unit_square();
        let rays = extreme_rays(&sq, &sq.faces()[vertex_face(&sq, &[1, 1])]).unwrap();
        assert_eq!(rays, vec![iv(&[-1, 0]), iv(&[0, -1])]);

        let t = triangle();
        let rays = extreme_rays(&t, &t.faces()[vertex_face(&t, &[2, 0])]).unwrap();
        assert_eq!(rays, vec![iv(&[-2, 3]), iv(&[-1, 0])]);

        let top = &sq.faces()[sq.top_face_index()];
        assert!(matches!(extreme_rays(&sq, top), Err(Error::NotAVertex(_))));
    }

    #[test]
    fn contains_line_cases() {
        let sq = unit_square();
        let edge = sq.faces().iter().find(|f| f.dim() == 1).unwrap();
        assert!(contains_line(&barrier_cone(&sq, edge)));
        for k in 0..sq.vertices().len() {
            let v = &sq.faces()[sq.vertex_face_index(k).unwrap()];
            assert!(!contains_line(&barrier_cone(&sq, v)));
        }
        let top = &sq.faces()[sq.top_face_index()];
        assert!(contains_line(&barrier_cone(&sq, top)));
    }

    #[test]
    fn triangulate_simplicial_input_is_identity() {
        let cells = triangulate(&[iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert_eq!(cells, vec![vec![0, 1]]);
        let cells = triangulate(&[iv(&[5])]).unwrap();
        assert_eq!(cells, vec![vec![0]]);
    }

    #[test]
    fn triangulate_cone_over_square() {
        let rays = [iv(&[1, 1, 1]), iv(&[-1, 1, 1]), iv(&[-1, -1, 1]), iv(&[1, -1, 1])];
        let cells = triangulate(&rays).unwrap();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![0, 2, 3]]);
        // The two cells share the 2-D face spanned by rays 0 and 2.

        // Union check by membership sampling on a rational grid at height 1:
        // a grid point is in the cone iff it is in at least one cell.
        let cone = Cone::from_generators(&rays, 3).unwrap();
        for ix in -4..=4i64 {
            for iy in -4..=4i64 {
                let x = RatVector::new(vec![rat(ix, 2), rat(iy, 2), rat_int(1)]);
                let in_cone = cone.contains_rat(&x);
                let in_cells = cells.iter().any(|cell| {
                    let gens: Vec<IntVector> = cell.iter().map(|&i| rays[i].clone()).collect();
                    let g = RatMatrix::from_columns(&gens, 3).unwrap();
                    match solve_linear(&g, &x).unwrap() {
                        Some(l) => l.iter().all(|c| !c.is_negative()),
                        None => false,
                    }
                });
                assert_eq!(in_cone, in_cells, "grid point {x}");
            }
        }
    }

    #[test]
    fn triangulate_rejects_lines_and_low_dimension() {
        assert!(matches!(triangulate(&[iv(&[1]), iv(&[-1])]), Err(Error::ConeContainsLine)));
        assert!(matches!(
            triangulate(&[iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1])]),
            Err(Error::ConeContainsLine)
        ));
        assert!(matches!(triangulate(&[iv(&[1, 0])]), Err(Error::ConeNotFullDimensional)));
    }

    #[test]
    fn half_open_single_cell_is_all_closed() {
        let cells = vec![vec![iv(&[1, 0]), iv(&[0, 1])]];
        let xi = generic_interior_point(&cells, 7).unwrap();
        let opened = half_open_decompose(&cells, &xi).unwrap();
        assert_eq!(opened[0].open_mask(), &[false, false]);
    }

    #[test]
    fn half_open_shared_facet_is_open_once() {
        let rays = [iv(&[1, 1, 1]), iv(&[-1, 1, 1]), iv(&[-1, -1, 1]), iv(&[1, -1, 1])];
        let cell_idx = triangulate(&rays).unwrap();
        let cells: Vec<Vec<IntVector>> = cell_idx
            .iter()
            .map(|c| c.iter().map(|&i| rays[i].clone()).collect())
            .collect();
        let xi = generic_interior_point(&cells, 1).unwrap();
        let opened = half_open_decompose(&cells, &xi).unwrap();
        assert_eq!(opened[0].open_mask(), &[false, false, false]);
        assert_eq!(opened[1].open_mask().iter().filter(|&&b| b).count(), 1);

        // Partition: every lattice point of the cone in a box lies in
        // exactly one half-open cell.
        let cone = Cone::from_generators(&rays, 3).unwrap();
        for a in box_lattice_points(&iv(&[-3, -3, 0]), &iv(&[3, 3, 3])) {
            let cone_count = usize::from(cone.contains_int(&a));
            let cell_count = opened
                .iter()
                .filter(|c| c.cone_contains_int(&a).unwrap())
                .count();
            assert_eq!(cone_count, cell_count, "lattice point {a}");
        }
    }

    #[test]
    fn half_open_rejects_points_on_hyperplanes() {
        let cells = vec![vec![iv(&[1, 0]), iv(&[0, 1])]];
        let on_facet = RatVector::from_i64s(&[1, 0]);
        assert!(matches!(half_open_decompose(&cells, &on_facet), Err(Error::NotGeneric)));
    }

    #[test]
    fn parallelepiped_unimodular_and_shifted() {
        let c = ShiftedSimplicialCone::new(
            RatVector::zeros(2),
            vec![iv(&[1, 0]), iv(&[0, 1])],
            vec![false, false],
        )
        .unwrap();
        assert_eq!(parallelepiped_points(&c).unwrap().points(), &[iv(&[0, 0])]);

        let c = ShiftedSimplicialCone::new(
            RatVector::zeros(2),
            vec![iv(&[1, 0]), iv(&[1, 2])],
            vec![false, false],
        )
        .unwrap();
        let pts = parallelepiped_points(&c).unwrap();
        assert_eq!(pts.points(), &[iv(&[0, 0]), iv(&[1, 1])]);

        // Shift 2 along the cone 2 + [0, inf) from the 1-D example.
        let c = ShiftedSimplicialCone::new(
            RatVector::from_i64s(&[2]),
            vec![iv(&[1])],
            vec![false],
        )
        .unwrap();
        assert_eq!(parallelepiped_points(&c).unwrap().points(), &[iv(&[2])]);
        // And for the other vertex cone, generator -1.
        let c = ShiftedSimplicialCone::new(
            RatVector::from_i64s(&[2]),
            vec![iv(&[-1])],
            vec![false],
        )
        .unwrap();
        assert_eq!(parallelepiped_points(&c).unwrap().points(), &[iv(&[2])]);
    }

    #[test]
    fn parallelepiped_count_matches_determinant() {
        let gens = vec![iv(&[2, 1]), iv(&[-1, 3])];
        let d = det(&RatMatrix::from_columns(&gens, 2).unwrap()).unwrap();
        for mask in [[false, false], [true, false], [true, true]] {
            for shift in [RatVector::zeros(2), RatVector::new(vec![rat(1, 3), rat(-2, 5)])] {
                let c = ShiftedSimplicialCone::new(shift, gens.clone(), mask.to_vec()).unwrap();
                let count = parallelepiped_points(&c).unwrap().points().len() as i64;
                assert_eq!(rat_int(count.abs()), d.clone().abs(), "mask {mask:?}");
            }
        }
    }

    #[test]
    fn low_dimensional_parallelepiped_may_be_empty() {
        // The segment from (1/2, 0) along (0, 1) misses the lattice.
        let c = ShiftedSimplicialCone::new(
            RatVector::new(vec![rat(1, 2), rat_int(0)]),
            vec![iv(&[0, 1])],
            vec![false],
        )
        .unwrap();
        assert!(parallelepiped_points(&c).unwrap().points().is_empty());
        // From the origin it hits exactly one point.
        let c = ShiftedSimplicialCone::new(
            RatVector::zeros(2),
            vec![iv(&[0, 1])],
            vec![false],
        )
        .unwrap();
        assert_eq!(parallelepiped_points(&c).unwrap().points(), &[iv(&[0, 0])]);
    }

    /// Tangent membership agrees with the shifted barrier test through the
    /// face barycenter.
    #[test]
    fn tangent_equals_shifted_barrier() {
        for p in [segment(), unit_square(), triangle(), cube3()] {
            let pts = box_lattice_points(
                &IntVector::new(vec![int(-3); p.dim()]),
                &IntVector::new(vec![int(4); p.dim()]),
            );
            for face in p.faces() {
                let f0 = p.representative_point(face);
                let cone = barrier_cone(&p, face);
                for a in &pts {
                    let direct = tangent_membership(&p, face, a);
                    let shifted = cone.contains_rat(&a.to_rat().sub(&f0));
                    assert_eq!(direct, shifted);
                }
            }
        }
    }

    /// The polytope is the intersection of its tangent cones.
    #[test]
    fn polytope_is_intersection_of_tangent_cones() {
        for p in [segment(), unit_square(), triangle()] {
            let pts = box_lattice_points(
                &IntVector::new(vec![int(-4); p.dim()]),
                &IntVector::new(vec![int(5); p.dim()]),
            );
            for a in &pts {
                let in_all = p
                    .proper_face_indices()
                    .all(|i| tangent_membership(&p, &p.faces()[i], a));
                assert_eq!(p.contains(&a.to_rat()), in_all, "{a}");
            }
        }
    }

    /// For points outside, tangent membership picks out the invisible faces.
    #[test]
    fn tangent_membership_matches_invisibility() {
        for p in [unit_square(), triangle()] {
            let pts = box_lattice_points(&iv(&[-4, -4]), &iv(&[5, 5]));
            for a in &pts {
                if p.contains(&a.to_rat()) {
                    continue;
                }
                let (_, inv) = classify_visible(&p, &a.to_rat()).unwrap();
                for i in p.proper_face_indices() {
                    assert_eq!(
                        tangent_membership(&p, &p.faces()[i], a),
                        inv.contains(i),
                        "point {a} face {i}"
                    );
                }
            }
        }
    }

    /// For nonzero points, barrier membership picks out the upper faces with
    /// respect to the negated direction.
    #[test]
    fn barrier_membership_matches_upper_faces() {
        for p in [unit_square(), triangle()] {
            let pts = box_lattice_points(&iv(&[-4, -4]), &iv(&[5, 5]));
            for a in &pts {
                if a.is_zero() {
                    continue;
                }
                let (_, up) = classify_lower(&p, &a.to_rat().neg()).unwrap();
                for i in p.proper_face_indices() {
                    assert_eq!(
                        barrier_membership(&p, &p.faces()[i], a),
                        up.contains(i),
                        "point {a} face {i}"
                    );
                }
            }
        }
    }
}
