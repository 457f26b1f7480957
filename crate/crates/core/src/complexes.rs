//! Classification of proper faces into the visible/invisible, back/front and
//! lower/upper complexes, plus Euler characteristics of face subsets.
//!
//! In all three classifications a facet is tested by an exact sign condition
//! against its inward normal, and a lower-dimensional face belongs to the
//! distinguished class iff it is contained in some facet that does. Ties
//! resolve as follows: a point on a facet's affine hyperplane makes that
//! facet front (a ray from the point along the facet stays inside the
//! polytope), and a direction orthogonal to a facet normal makes that facet
//! upper (the lower-face criterion is strict).

use std::collections::BTreeSet;

use num_traits::Signed;

use crate::linalg::RatVector;
use crate::polytope::Polytope;
use crate::rat::sign_pow;
use crate::{Error, Result};

/// Which classification a [`FaceSubset`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetKind {
    Visible,
    Invisible,
    Back,
    Front,
    Lower,
    Upper,
    Custom,
}

impl SubsetKind {
    pub fn label(&self) -> &'static str {
        match self {
            SubsetKind::Visible => "visible",
            SubsetKind::Invisible => "invisible",
            SubsetKind::Back => "back",
            SubsetKind::Front => "front",
            SubsetKind::Lower => "lower",
            SubsetKind::Upper => "upper",
            SubsetKind::Custom => "custom",
        }
    }
}

/// A set of proper non-empty faces of a polytope, identified by face index.
/// Never contains the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSubset {
    kind: SubsetKind,
    members: BTreeSet<usize>,
}

impl FaceSubset {
    pub fn new(kind: SubsetKind, members: BTreeSet<usize>) -> Self {
        Self { kind, members }
    }

    pub fn kind(&self) -> SubsetKind {
        self.kind
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, face_idx: usize) -> bool {
        self.members.contains(&face_idx)
    }
}

/// All proper faces of `p` as a custom subset (the boundary complex).
pub fn boundary_subset(p: &Polytope) -> FaceSubset {
    FaceSubset::new(SubsetKind::Custom, p.proper_face_indices().collect())
}

/// Splits the proper faces by containment in a marked facet: faces contained
/// in at least one marked facet land in the first subset.
fn split_by_facets(
    p: &Polytope,
    marked: &BTreeSet<usize>,
    kinds: (SubsetKind, SubsetKind),
) -> (FaceSubset, FaceSubset) {
    let mut in_class = BTreeSet::new();
    let mut complement = BTreeSet::new();
    for i in p.proper_face_indices() {
        let face = &p.faces()[i];
        if face.facet_set().iter().any(|j| marked.contains(j)) {
            in_class.insert(i);
        } else {
            complement.insert(i);
        }
    }
    (FaceSubset::new(kinds.0, in_class), FaceSubset::new(kinds.1, complement))
}

/// Partitions the proper faces into those visible and invisible from `x`.
/// A facet is visible iff `x` is strictly on the outer side of its
/// hyperplane; requires `x` outside the polytope.
pub fn classify_visible(p: &Polytope, x: &RatVector) -> Result<(FaceSubset, FaceSubset)> {
    if p.contains(x) {
        return Err(Error::PointInsidePolytope);
    }
    let marked: BTreeSet<usize> = p
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.normal().dot_rat(x) < *f.offset())
        .map(|(j, _)| j)
        .collect();
    Ok(split_by_facets(p, &marked, (SubsetKind::Visible, SubsetKind::Invisible)))
}

/// Partitions the proper faces into back and front faces with respect to
/// `x`. A facet is back iff `x` is strictly on the inner side of its
/// hyperplane; requires `x` outside the interior.
pub fn classify_back(p: &Polytope, x: &RatVector) -> Result<(FaceSubset, FaceSubset)> {
    if p.interior_contains(x) {
        return Err(Error::PointInInterior);
    }
    let marked: BTreeSet<usize> = p
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.normal().dot_rat(x) > *f.offset())
        .map(|(j, _)| j)
        .collect();
    Ok(split_by_facets(p, &marked, (SubsetKind::Back, SubsetKind::Front)))
}

/// Partitions the proper faces into lower and upper faces with respect to a
/// nonzero direction `d`. A facet with inward normal `u` is lower iff
/// `<d, u> > 0`.
pub fn classify_lower(p: &Polytope, d: &RatVector) -> Result<(FaceSubset, FaceSubset)> {
    if d.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let marked: BTreeSet<usize> = p
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.normal().dot_rat(d).is_positive())
        .map(|(j, _)| j)
        .collect();
    Ok(split_by_facets(p, &marked, (SubsetKind::Lower, SubsetKind::Upper)))
}

/// Euler characteristic: the alternating sum of face counts by dimension.
pub fn euler_char(p: &Polytope, s: &FaceSubset) -> i64 {
    s.members().iter().map(|&i| sign_pow(p.faces()[i].dim())).sum()
}
