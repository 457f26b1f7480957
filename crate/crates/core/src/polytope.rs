//! Full-dimensional rational polytopes: vertex representation, derived facet
//! inequalities with primitive inward normals, and the full face lattice.
//!
//! Facet enumeration is brute force over all affinely independent `n`-subsets
//! of the input points; a candidate hyperplane survives iff every input point
//! lies weakly on one side. At the intended scale (up to ~20 points in
//! dimension <= 6) this is instant and has no pivoting edge cases. Faces are
//! then obtained by closing the facet vertex sets under intersection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_traits::Signed;
use serde_json::Value;

use crate::linalg::{kernel_basis, primitive_direction, rank, IntVector, RatMatrix, RatVector};
use crate::rat::{int, is_integer, parse_rat, rat_ceil, rat_floor, Int, Rat};
use crate::{Error, Result};

/// Facet inequality `<normal, x> >= offset`; the normal is primitive, integer
/// and inward-pointing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    normal: IntVector,
    offset: Rat,
    vertex_set: BTreeSet<usize>,
}

impl Facet {
    pub fn normal(&self) -> &IntVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn vertex_set(&self) -> &BTreeSet<usize> {
        &self.vertex_set
    }
}

/// Non-empty face, described combinatorially: the vertices it contains and
/// the facets containing it. `dim` is the affine dimension of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    vertex_set: BTreeSet<usize>,
    facet_set: BTreeSet<usize>,
    dim: usize,
}

impl Face {
    pub fn vertex_set(&self) -> &BTreeSet<usize> {
        &self.vertex_set
    }

    pub fn facet_set(&self) -> &BTreeSet<usize> {
        &self.facet_set
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }
}

/// Full-dimensional polytope with derived facets and face lattice.
///
/// Vertices are sorted lexicographically, facets by (normal, offset), faces
/// by (dimension, vertex set); all three orders are part of the deterministic
/// output contract. The face list contains every non-empty face including the
/// polytope itself (always the last entry).
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

/// Convex hull of a non-empty, full-dimensional set of rational points.
pub fn hull(points: &[RatVector]) -> Result<Polytope> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("hull of empty point set".into()))?;
    let n = first.len();
    if n == 0 {
        return Err(Error::InvalidInput("ambient dimension must be at least 1".into()));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch("points of unequal length".into()));
    }

    let mut pts: Vec<RatVector> = Vec::new();
    for p in points {
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }

    let diffs: Vec<RatVector> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
    if rank(&RatMatrix::with_ncols(diffs, n)?) != n {
        return Err(Error::Degenerate);
    }

    // Brute-force facet candidates: hyperplanes spanned by n affinely
    // independent input points with all points weakly on one side.
    let mut facet_map: BTreeMap<(IntVector, Rat), ()> = BTreeMap::new();
    for subset in (0..pts.len()).combinations(n) {
        let base = &pts[subset[0]];
        let diffs: Vec<RatVector> = subset[1..].iter().map(|&i| pts[i].sub(base)).collect();
        let mat = RatMatrix::with_ncols(diffs, n)?;
        let kernel = kernel_basis(&mat);
        if kernel.len() != 1 {
            continue;
        }
        let normal = primitive_direction(&kernel[0])?;
        let offset = normal.dot_rat(base);
        let mut above = false;
        let mut below = false;
        for p in &pts {
            let s = normal.dot_rat(p) - &offset;
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
            (true, false) => {
                facet_map.insert((normal, offset), ());
            }
            (false, true) => {
                let neg = normal.neg();
                facet_map.insert((neg, -offset), ());
            }
            _ => {}
        }
    }

    // A point is extreme iff the normals of its tight facets span R^n.
    let facet_keys: Vec<(IntVector, Rat)> = facet_map.into_keys().collect();
    let tight_per_point: Vec<Vec<usize>> = pts
        .iter()
        .map(|p| {
            facet_keys
                .iter()
                .enumerate()
                .filter(|(_, (u, c))| u.dot_rat(p) == *c)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut vertices: Vec<RatVector> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let normals: Vec<RatVector> = tight_per_point[i].iter().map(|&j| facet_keys[j].0.to_rat()).collect();
        if rank(&RatMatrix::with_ncols(normals, n)?) == n {
            vertices.push(p.clone());
        }
    }
    vertices.sort();

    let facets: Vec<Facet> = facet_keys
        .into_iter()
        .map(|(normal, offset)| {
            let vertex_set = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| normal.dot_rat(v) == offset)
                .map(|(k, _)| k)
                .collect();
            Facet { normal, offset, vertex_set }
        })
        .collect();

    let faces = build_face_lattice(&vertices, &facets, n)?;

    Ok(Polytope { dim: n, vertices, facets, faces })
}

/// Closes the facet vertex sets under intersection and assigns dimensions;
/// the result is every non-empty face of the polytope, plus the polytope
/// itself as the final entry.
fn build_face_lattice(vertices: &[RatVector], facets: &[Facet], n: usize) -> Result<Vec<Face>> {
    let all: BTreeSet<usize> = (0..vertices.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(all.clone());
    for f in facets {
        sets.insert(f.vertex_set.clone());
    }
    loop {
        let mut fresh: Vec<BTreeSet<usize>> = Vec::new();
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

    let mut faces: Vec<Face> = Vec::new();
    for vs in sets {
        let facet_set: BTreeSet<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| vs.is_subset(&f.vertex_set))
            .map(|(j, _)| j)
            .collect();
        let ids: Vec<usize> = vs.iter().copied().collect();
        let base = &vertices[ids[0]];
        let diffs: Vec<RatVector> = ids[1..].iter().map(|&i| vertices[i].sub(base)).collect();
        let dim = rank(&RatMatrix::with_ncols(diffs, n)?);
        faces.push(Face { vertex_set: vs, facet_set, dim });
    }
    faces.sort_by(|a, b| (a.dim, &a.vertex_set).cmp(&(b.dim, &b.vertex_set)));
    Ok(faces)
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Every non-empty face including the polytope itself, sorted by
    /// (dimension, vertex set).
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> Result<&Face> {
        self.faces.get(i).ok_or(Error::NotAFace(i))
    }

    /// Index of the improper face `P` itself.
    pub fn top_face_index(&self) -> usize {
        self.faces.len() - 1
    }

    /// Indices of the proper non-empty faces (everything except `P`).
    pub fn proper_face_indices(&self) -> impl Iterator<Item = usize> {
        0..self.faces.len() - 1
    }

    /// Index of the dimension-0 face of vertex `k`. Faces are sorted, so the
    /// vertex faces occupy positions `0..vertices.len()` in vertex order.
    pub fn vertex_face_index(&self, k: usize) -> Result<usize> {
        if k >= self.vertices.len() {
            return Err(Error::NotAVertex(k));
        }
        debug_assert_eq!(self.faces[k].vertex_set.iter().copied().collect::<Vec<_>>(), vec![k]);
        Ok(k)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.facets.iter().all(|f| f.normal.dot_rat(x) >= f.offset)
    }

    pub fn interior_contains(&self, x: &RatVector) -> bool {
        self.facets.iter().all(|f| f.normal.dot_rat(x) > f.offset)
    }

    /// Vertex barycenter of a face; lies in its relative interior.
    pub fn representative_point(&self, face: &Face) -> RatVector {
        let mut sum = RatVector::zeros(self.dim);
        for &i in &face.vertex_set {
            sum = sum.add(&self.vertices[i]);
        }
        sum.scale(&Rat::new(int(1), int(face.vertex_set.len() as i64)))
    }

    /// Smallest integer box containing the polytope.
    pub fn bounding_box(&self) -> (IntVector, IntVector) {
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut mn = self.vertices[0][j].clone();
            let mut mx = mn.clone();
            for v in &self.vertices[1..] {
                if v[j] < mn {
                    mn = v[j].clone();
                }
                if v[j] > mx {
                    mx = v[j].clone();
                }
            }
            lo.push(rat_floor(&mn));
            hi.push(rat_ceil(&mx));
        }
        (IntVector::new(lo), IntVector::new(hi))
    }

    /// All lattice points of the polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let (lo, hi) = self.bounding_box();
        crate::linalg::box_lattice_points(&lo, &hi)
            .into_iter()
            .filter(|a| self.contains(&a.to_rat()))
            .collect()
    }

    /// All lattice points interior to the polytope, in lexicographic order.
    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        let (lo, hi) = self.bounding_box();
        crate::linalg::box_lattice_points(&lo, &hi)
            .into_iter()
            .filter(|a| self.interior_contains(&a.to_rat()))
            .collect()
    }

    /// Parses the polytope input document
    /// `{"dimension": n, "vertices": [[...], ...]}` where coordinates are
    /// integers or `"p/q"` strings, and builds the hull.
    pub fn from_json_doc(text: &str) -> Result<Polytope> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("document: {e}")))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::Parse("document: expected a JSON object".into()))?;
        let dim = obj
            .get("dimension")
            .ok_or_else(|| Error::Parse("document: missing \"dimension\"".into()))?
            .as_u64()
            .ok_or_else(|| Error::Parse("dimension: expected a positive integer".into()))?;
        if dim == 0 || dim > 6 {
            return Err(Error::Parse(format!("dimension: {dim} out of supported range 1..=6")));
        }
        let verts = obj
            .get("vertices")
            .ok_or_else(|| Error::Parse("document: missing \"vertices\"".into()))?
            .as_array()
            .ok_or_else(|| Error::Parse("vertices: expected an array".into()))?;
        let mut points = Vec::with_capacity(verts.len());
        for (i, row) in verts.iter().enumerate() {
            let coords = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("vertices[{i}]: expected an array")))?;
            if coords.len() != dim as usize {
                return Err(Error::Parse(format!(
                    "vertices[{i}]: expected {dim} coordinates, got {}",
                    coords.len()
                )));
            }
            let mut v = Vec::with_capacity(coords.len());
            for (j, c) in coords.iter().enumerate() {
                v.push(json_coord(c).map_err(|e| Error::Parse(format!("vertices[{i}][{j}]: {e}")))?);
            }
            points.push(RatVector::new(v));
        }
        hull(&points)
    }

    /// Renders the polytope's (irredundant) vertices as an input document.
    pub fn to_json_doc(&self) -> String {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| Value::Array(v.iter().map(coord_json).collect()))
            .collect();
        let doc = serde_json::json!({
            "dimension": self.dim,
            "vertices": vertices,
        });
        doc.to_string()
    }
}

fn json_coord(v: &Value) -> std::result::Result<Rat, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(Int::from(i)))
            } else {
                Err(format!("{n} is not an exact integer (use a \"p/q\" string)"))
            }
        }
        Value::String(s) => parse_rat(s).map_err(|e| e.to_string()),
        other => Err(format!("expected integer or \"p/q\" string, got {other}")),
    }
}

fn coord_json(r: &Rat) -> Value {
    if is_integer(r) {
        if let Ok(i) = i64::try_from(r.numer()) {
            return Value::Number(i.into());
        }
    }
    Value::String(r.to_string())
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-polytope with {} vertices, {} facets, {} faces", self.dim, self.vertices.len(), self.facets.len(), self.faces.len())
    }
}
