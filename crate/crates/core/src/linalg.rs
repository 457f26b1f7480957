//! Exact rational vectors, matrices, and Gaussian elimination.
//!
//! Everything here is pure and exact; there is no pivoting heuristic beyond
//! "first nonzero entry", which is all exact arithmetic needs.

use std::fmt;
use std::ops::Index;

use num_integer::Integer;
use num_traits::Zero;

use crate::rat::{Int, Rat};
use crate::{Error, Result};

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector {
    coords: Vec<Rat>,
}

impl RatVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn zeros(n: usize) -> Self {
        Self { coords: vec![Rat::zero(); n] }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self { coords: values.iter().map(|&v| crate::rat::rat_int(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn dot(&self, other: &RatVector) -> Rat {
        assert_eq!(self.len(), other.len(), "dot of unequal lengths");
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len());
        RatVector::new(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len());
        RatVector::new(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector::new(self.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatVector {
        RatVector::new(self.iter().map(|a| a * c).collect())
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(crate::rat::is_integer)
    }

    /// Truncates to an [`IntVector`]; requires every coordinate integral.
    pub fn to_int(&self) -> Result<IntVector> {
        if !self.is_integral() {
            return Err(Error::InvalidInput(format!("{self} is not integral")));
        }
        Ok(IntVector::new(self.iter().map(|r| r.numer().clone()).collect()))
    }
}

impl Index<usize> for RatVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.coords[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fixed-length vector of arbitrary-precision integers; lattice points, ray
/// generators, and facet normals all live here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector {
    coords: Vec<Int>,
}

impl IntVector {
    pub fn new(coords: Vec<Int>) -> Self {
        Self { coords }
    }

    pub fn zeros(n: usize) -> Self {
        Self { coords: vec![Int::zero(); n] }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self { coords: values.iter().map(|&v| Int::from(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        assert_eq!(self.len(), other.len(), "dot of unequal lengths");
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &RatVector) -> Rat {
        assert_eq!(self.len(), other.len(), "dot of unequal lengths");
        self.iter().zip(other.iter()).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector::new(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector::new(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector::new(self.iter().map(|a| -a).collect())
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector::new(self.iter().map(|a| Rat::from_integer(a.clone())).collect())
    }

    /// Divides by the gcd of the entries, preserving direction.
    pub fn primitive(&self) -> Result<IntVector> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut g = Int::zero();
        for c in &self.coords {
            g = g.gcd(c);
        }
        Ok(IntVector::new(self.iter().map(|c| c / &g).collect()))
    }
}

impl Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.coords[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction.
pub fn primitive_direction(v: &RatVector) -> Result<IntVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut lcm = Int::from(1);
    for c in v.iter() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<Int> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    IntVector::new(ints).primitive()
}

/// Rectangular matrix of exact rationals, stored by rows. The column count is
/// tracked explicitly so that matrices with zero rows still know their width.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
    ncols: usize,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self> {
        let ncols = rows
            .first()
            .map(RatVector::len)
            .ok_or_else(|| Error::InvalidInput("matrix needs at least one row; use with_ncols".into()))?;
        Self::with_ncols(rows, ncols)
    }

    pub fn with_ncols(rows: Vec<RatVector>, ncols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows, ncols })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector], nrows: usize) -> Result<Self> {
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch("column lengths differ".into()));
        }
        let rows = (0..nrows)
            .map(|i| RatVector::new(cols.iter().map(|c| Rat::from_integer(c[i].clone())).collect()))
            .collect();
        Self::with_ncols(rows, cols.len())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                RatVector::new(
                    (0..n).map(|j| if i == j { Rat::from_integer(Int::from(1)) } else { Rat::zero() }).collect(),
                )
            })
            .collect();
        Self { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }
}

/// All integer points `a` with `lo[i] <= a[i] <= hi[i]`, in lexicographic
/// order. Empty when some `hi[i] < lo[i]`.
pub fn box_lattice_points(lo: &IntVector, hi: &IntVector) -> Vec<IntVector> {
    assert_eq!(lo.len(), hi.len(), "box corners of unequal lengths");
    let n = lo.len();
    if n == 0 || lo.iter().zip(hi.iter()).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<Int> = lo.coords().to_vec();
    'outer: loop {
        out.push(IntVector::new(cur.clone()));
        for i in (0..n).rev() {
            if cur[i] < hi[i] {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                    *c = lo[j].clone();
                }
                continue 'outer;
            }
        }
        break;
    }
    out
}

/// Reduced row echelon form together with the pivot columns.
fn rref(m: &RatMatrix) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = m.rows.iter().map(|r| r.coords().to_vec()).collect();
    let (nr, nc) = (a.len(), m.ncols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone().recip();
        for x in &mut a[r] {
            *x *= &inv;
        }
        for i in 0..nr {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..nc {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nr {
            break;
        }
    }
    (a, pivots)
}

/// Exact row rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Exact determinant of a square matrix.
pub fn det(m: &RatMatrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NonSquare);
    }
    let n = m.nrows();
    let mut a: Vec<Vec<Rat>> = m.rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut result = Rat::from_integer(Int::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != c {
            a.swap(c, p);
            result = -result;
        }
        result *= &a[c][c];
        let inv = a[c][c].clone().recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    Ok(result)
}

/// Solves `A x = b` exactly. Returns `None` when inconsistent; for
/// underdetermined consistent systems the free variables are set to 0.
pub fn solve_linear(a: &RatMatrix, b: &RatVector) -> Result<Option<RatVector>> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but rhs has length {}",
            a.nrows(),
            b.len()
        )));
    }
    let nc = a.ncols();
    let aug_rows: Vec<RatVector> = a
        .rows
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut v = row.coords().to_vec();
            v.push(bi.clone());
            RatVector::new(v)
        })
        .collect();
    let aug = RatMatrix::with_ncols(aug_rows, nc + 1)?;
    let (rows, pivots) = rref(&aug);
    if pivots.contains(&nc) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); nc];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][nc].clone();
    }
    Ok(Some(RatVector::new(x)))
}

/// Inverse of a square nonsingular matrix, by Gauss-Jordan elimination on
/// the augmented system.
pub fn invert(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare);
    }
    let n = m.nrows();
    let aug_rows: Vec<RatVector> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.coords().to_vec();
            v.extend((0..n).map(|j| if i == j { Rat::from_integer(Int::from(1)) } else { Rat::zero() }));
            RatVector::new(v)
        })
        .collect();
    let aug = RatMatrix::with_ncols(aug_rows, 2 * n)?;
    let (rows, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::DependentGenerators);
    }
    let inv_rows: Vec<RatVector> = rows.iter().map(|r| RatVector::new(r[n..].to_vec())).collect();
    RatMatrix::with_ncols(inv_rows, n)
}

/// Basis of the null space `{x : A x = 0}`, one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<RatVector> {
    let nc = m.ncols();
    let (rows, pivots) = rref(m);
    let mut basis = Vec::new();
    for free in (0..nc).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); nc];
        v[free] = Rat::from_integer(Int::from(1));
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -rows[r][free].clone();
        }
        basis.push(RatVector::new(v));
    }
    basis
}
