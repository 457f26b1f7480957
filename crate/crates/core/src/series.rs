//! Truncated formal Laurent series over an integer box, and the
//! Brianchon-Gram identity checker.
//!
//! A formal Laurent series with one monomial per lattice point of a set is
//! represented here by its restriction to a finite window: a sparse map from
//! box lattice points to integer coefficients. The three Brianchon-Gram
//! identities are alternating sums of such series over all non-empty faces,
//! with the face cone varying by variant (tangent cone, barrier cone, or
//! reflected-shift cone); they are checked coefficient by coefficient.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cones::{barrier_membership, neg_shift_membership, tangent_membership};
use crate::linalg::{box_lattice_points, IntVector};
use crate::polytope::Polytope;
use crate::rat::{int, sign_pow, Int, Rat};
use crate::{Error, Result};

/// Axis-aligned integer box, the truncation window for formal series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    lo: IntVector,
    hi: IntVector,
}

impl LatticeBox {
    pub fn new(lo: IntVector, hi: IntVector) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch("box corners of unequal length".into()));
        }
        if lo.iter().zip(hi.iter()).any(|(a, b)| a > b) {
            return Err(Error::InvalidInput("box with hi < lo".into()));
        }
        Ok(Self { lo, hi })
    }

    pub fn from_i64s(lo: &[i64], hi: &[i64]) -> Result<Self> {
        Self::new(IntVector::from_i64s(lo), IntVector::from_i64s(hi))
    }

    /// Parses the `lo..hi,lo..hi,...` range grammar.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for (i, part) in text.split(',').enumerate() {
            let (a, b) = part
                .trim()
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("box range {i}: expected lo..hi, got {part:?}")))?;
            let a: i64 = a.trim().parse().map_err(|e| Error::Parse(format!("box range {i}: {e}")))?;
            let b: i64 = b.trim().parse().map_err(|e| Error::Parse(format!("box range {i}: {e}")))?;
            lo.push(a);
            hi.push(b);
        }
        Self::from_i64s(&lo, &hi)
    }

    /// Bounding box of the polytope and its reflection through the origin,
    /// padded by 3 on every side; the default window for identity checks.
    pub fn default_for(p: &Polytope) -> Self {
        let (lo, hi) = p.bounding_box();
        let pad = int(3);
        let new_lo: Vec<Int> = lo
            .iter()
            .zip(hi.iter())
            .map(|(l, h)| l.clone().min(-h.clone()) - &pad)
            .collect();
        let new_hi: Vec<Int> = lo
            .iter()
            .zip(hi.iter())
            .map(|(l, h)| h.clone().max(-l.clone()) + &pad)
            .collect();
        Self { lo: IntVector::new(new_lo), hi: IntVector::new(new_hi) }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &IntVector {
        &self.lo
    }

    pub fn hi(&self) -> &IntVector {
        &self.hi
    }

    pub fn contains(&self, a: &IntVector) -> bool {
        a.len() == self.dim()
            && self.lo.iter().zip(a.iter()).all(|(l, x)| l <= x)
            && self.hi.iter().zip(a.iter()).all(|(h, x)| x <= h)
    }

    /// All lattice points of the box in lexicographic order.
    pub fn points(&self) -> Vec<IntVector> {
        box_lattice_points(&self.lo, &self.hi)
    }

    /// Translate the box by `b`.
    pub fn translate(&self, b: &IntVector) -> Self {
        Self { lo: self.lo.add(b), hi: self.hi.add(b) }
    }
}

/// Sparse truncated Laurent series: integer coefficients on the lattice
/// points of a box, absent points meaning coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    window: LatticeBox,
    coeffs: BTreeMap<IntVector, i64>,
}

impl TruncatedSeries {
    pub fn zero(window: LatticeBox) -> Self {
        Self { window, coeffs: BTreeMap::new() }
    }

    pub fn window(&self) -> &LatticeBox {
        &self.window
    }

    /// Sets a coefficient; zero coefficients are not stored. Panics if the
    /// point is outside the window.
    pub fn set(&mut self, point: IntVector, coeff: i64) {
        assert!(self.window.contains(&point), "coefficient at {point} outside window");
        if coeff == 0 {
            self.coeffs.remove(&point);
        } else {
            self.coeffs.insert(point, coeff);
        }
    }

    pub fn add_to(&mut self, point: IntVector, delta: i64) {
        if delta != 0 {
            let c = self.coeff(&point) + delta;
            self.set(point, c);
        }
    }

    pub fn coeff(&self, point: &IntVector) -> i64 {
        self.coeffs.get(point).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in lexicographic point order.
    pub fn support(&self) -> impl Iterator<Item = (&IntVector, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Series of a membership predicate over a window: coefficient 1 at every
/// box lattice point satisfying it.
pub fn series_of(membership: impl Fn(&IntVector) -> bool, window: &LatticeBox) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(window.clone());
    for a in window.points() {
        if membership(&a) {
            s.set(a, 1);
        }
    }
    s
}

/// Multiplies by the monomial of `b`: the window shifts along and the
/// coefficient of `a + b` is the old coefficient of `a`.
pub fn translate_series(s: &TruncatedSeries, b: &IntVector) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(s.window().translate(b));
    for (p, c) in s.support() {
        out.set(p.add(b), c);
    }
    out
}

/// Which of the three Brianchon-Gram identities to check; named after the
/// right-hand side (the series of P, the constant 1, or the interior of -P).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GramVariant {
    /// Tangent cones `F + C_F`; rhs is the series of `P`.
    #[serde(rename = "tangent")]
    Tangent,
    /// Barrier cones `C_F`; rhs is the constant 1.
    #[serde(rename = "barrier")]
    Barrier,
    /// Reflected shifts `-F + C_F`; rhs is `(-1)^n` times the series of
    /// `int(-P)`.
    #[serde(rename = "negshift")]
    NegShift,
}

impl GramVariant {
    pub const ALL: [GramVariant; 3] = [GramVariant::Tangent, GramVariant::Barrier, GramVariant::NegShift];

    /// CLI tag, shared with the Brion checker: `P`, `one`, or `intP`.
    pub fn cli_tag(&self) -> &'static str {
        match self {
            GramVariant::Tangent => "P",
            GramVariant::Barrier => "one",
            GramVariant::NegShift => "intP",
        }
    }

    pub fn from_cli_tag(tag: &str) -> Result<Self> {
        match tag {
            "P" => Ok(GramVariant::Tangent),
            "one" => Ok(GramVariant::Barrier),
            "intP" => Ok(GramVariant::NegShift),
            other => Err(Error::InvalidInput(format!("unknown variant {other:?} (expected P, one or intP)"))),
        }
    }
}

/// Alternating sum over all non-empty faces (including `P` itself) of the
/// indicator series of the variant's face cone.
///
/// This is the left-hand side of the Brianchon-Gram identity. The membership
/// tests are the same inequalities as the cone membership oracles, but with
/// the per-face thresholds precomputed so each lattice point costs one dot
/// product per facet plus one comparison per (face, facet) pair.
pub fn gram_lhs(p: &Polytope, window: &LatticeBox, variant: GramVariant) -> TruncatedSeries {
    // Per face: its sign and, per facet containing it, the threshold num/den
    // that the facet dot must reach.
    let faces: Vec<(i64, Vec<(usize, Int, Int)>)> = p
        .faces()
        .iter()
        .map(|face| {
            let sign = sign_pow(face.dim());
            let f0 = p.representative_point(face);
            let tests: Vec<(usize, Int, Int)> = face
                .facet_set()
                .iter()
                .map(|&j| {
                    let facet = &p.facets()[j];
                    let threshold: Rat = match variant {
                        GramVariant::Tangent => facet.offset().clone(),
                        GramVariant::Barrier => Rat::from_integer(int(0)),
                        GramVariant::NegShift => -facet.normal().dot_rat(&f0),
                    };
                    (j, threshold.numer().clone(), threshold.denom().clone())
                })
                .collect();
            (sign, tests)
        })
        .collect();

    let mut s = TruncatedSeries::zero(window.clone());
    for a in window.points() {
        let dots: Vec<Int> = p.facets().iter().map(|f| f.normal().dot(&a)).collect();
        let mut coeff = 0i64;
        for (sign, tests) in &faces {
            if tests.iter().all(|(j, num, den)| &dots[*j] * den >= *num) {
                coeff += sign;
            }
        }
        s.set(a, coeff);
    }
    s
}

/// The variant's right-hand side over the window.
pub fn gram_rhs(p: &Polytope, window: &LatticeBox, variant: GramVariant) -> TruncatedSeries {
    match variant {
        GramVariant::Tangent => series_of(|a| p.contains(&a.to_rat()), window),
        GramVariant::Barrier => {
            let mut s = TruncatedSeries::zero(window.clone());
            let origin = IntVector::zeros(window.dim());
            if window.contains(&origin) {
                s.set(origin, 1);
            }
            s
        }
        GramVariant::NegShift => {
            let sign = sign_pow(p.dim());
            let mut s = TruncatedSeries::zero(window.clone());
            for a in window.points() {
                if p.interior_contains(&a.neg().to_rat()) {
                    s.set(a, sign);
                }
            }
            s
        }
    }
}

/// Box corners in a JSON-friendly form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl BoxSpec {
    pub fn from_box(b: &LatticeBox) -> Result<Self> {
        Ok(Self { lo: to_i64s(b.lo())?, hi: to_i64s(b.hi())? })
    }
}

pub(crate) fn to_i64s(v: &IntVector) -> Result<Vec<i64>> {
    v.iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::InvalidInput(format!("{c} exceeds the report integer range"))))
        .collect()
}

/// One coefficient disagreement between the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMismatch {
    pub point: Vec<i64>,
    pub lhs: i64,
    pub rhs: i64,
}

/// Outcome of a coefficientwise Brianchon-Gram check over a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub variant: GramVariant,
    #[serde(rename = "box")]
    pub window: BoxSpec,
    pub ok: bool,
    pub mismatches: Vec<GramMismatch>,
}

/// Compares the alternating face-cone sum against the variant's right-hand
/// side on every lattice point of the window.
pub fn check_gram(p: &Polytope, window: &LatticeBox, variant: GramVariant) -> Result<GramReport> {
    if window.dim() != p.dim() {
        return Err(Error::DimensionMismatch(format!(
            "window dimension {} != polytope dimension {}",
            window.dim(),
            p.dim()
        )));
    }
    let lhs = gram_lhs(p, window, variant);
    let rhs = gram_rhs(p, window, variant);
    let mut mismatches = Vec::new();
    for a in window.points() {
        let l = lhs.coeff(&a);
        let r = rhs.coeff(&a);
        if l != r {
            mismatches.push(GramMismatch { point: to_i64s(&a)?, lhs: l, rhs: r });
        }
    }
    Ok(GramReport {
        variant,
        window: BoxSpec::from_box(window)?,
        ok: mismatches.is_empty(),
        mismatches,
    })
}

/// Plain-oracle version of [`gram_lhs`]: per point, call the public
/// membership operations face by face. Used to pin the optimized loop.
pub fn gram_lhs_by_oracles(p: &Polytope, window: &LatticeBox, variant: GramVariant) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(window.clone());
    for a in window.points() {
        let mut coeff = 0i64;
        for face in p.faces() {
            let member = match variant {
                GramVariant::Tangent => tangent_membership(p, face, &a),
                GramVariant::Barrier => barrier_membership(p, face, &a),
                GramVariant::NegShift => neg_shift_membership(p, face, &a),
            };
            if member {
                coeff += sign_pow(face.dim());
            }
        }
        s.set(a, coeff);
    }
    s
}
