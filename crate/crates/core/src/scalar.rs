//! Exact arithmetic over the rationals and the small amount of linear
//! algebra the rest of the crate needs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// An element of the base field ℚ, always held in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced.
    pub fn new(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Scalar(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Scalar::one(), |acc, _| &acc * self)
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Integer value if the scalar is an integer that fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse_int =
            |p: &str| BigInt::from_str(p.trim()).map_err(|_| ScalarError::Parse(s.to_string()));
        match t.split_once('/') {
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar(BigRational::new(num, den)))
            }
            None => Ok(Scalar(BigRational::from_integer(parse_int(t)?))),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // Integers are accepted as a convenience; floats are not.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::from_int(n)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'b> $trait<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

/// Panics on a zero divisor, like integer division; use
/// [`Scalar::checked_div`] when the divisor is not known to be nonzero.
impl<'b> Div<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'b Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division of a scalar by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry count {len} does not match {rows}x{cols}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("rows have unequal lengths")]
    Ragged,
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape { rows, cols, len: entries.len() });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Matrix with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Principal submatrix on the given (sorted or not) index list.
    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn checked_add(&self, other: &Matrix) -> Option<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Option<Matrix> {
        other.checked_add(&self.scale(&-Scalar::one())).map(|m| m.scale(&-Scalar::one()))
    }

    /// Reduced row echelon form. Pivots are taken at the first nonzero
    /// entry of the lowest-index column; no magnitude heuristics.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Sparse vector keyed by column index.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Incrementally built row-echelon basis of a subspace of ℚ^N, stored
/// sparsely. Every stored row has leading coefficient 1 at its pivot and
/// no other row shares that pivot.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = next else { break };
            for (&j, x) in &self.rows[&col] {
                let e = v.entry(j).or_insert_with(Scalar::zero);
                *e -= &(&coeff * x);
                if e.is_zero() {
                    v.remove(&j);
                }
            }
            cursor = col + 1;
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns true if the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero lead");
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn field_examples() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(Scalar::from_int(2).inv().unwrap(), q(1, 2));
        assert_eq!(Scalar::from_int(-1) * Scalar::from_int(-1), Scalar::one());
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn lowest_terms_and_sign() {
        let x = q(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!("4/8".parse::<Scalar>().unwrap().to_string(), "1/2");
        assert_eq!("-7".parse::<Scalar>().unwrap(), Scalar::from_int(-7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
    }

    #[test]
    fn serde_as_strings() {
        let s = serde_json::to_string(&q(-2, 3)).unwrap();
        assert_eq!(s, "\"-2/3\"");
        let back: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(-2, 3));
        let int: Scalar = serde_json::from_str("5").unwrap();
        assert_eq!(int, Scalar::from_int(5));
        assert!(serde_json::from_str::<Scalar>("0.5").is_err());
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(2).rref();
        assert_eq!(id.matrix, Matrix::identity(2));
        assert_eq!((id.rank, id.pivots), (2, vec![0, 1]));

        let z = Matrix::zeros(3, 3).rref();
        assert_eq!(z.matrix, Matrix::zeros(3, 3));
        assert_eq!((z.rank, z.pivots), (0, vec![]));

        let r = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut e = SparseEchelon::new();
        let v = |xs: &[(usize, i64)]| -> SparseVec {
            xs.iter().map(|&(c, x)| (c, Scalar::from_int(x))).collect()
        };
        assert!(e.insert(v(&[(0, 2), (3, 1)])));
        assert!(e.insert(v(&[(1, 1), (3, -1)])));
        assert!(!e.insert(v(&[(0, 4), (1, 3), (3, -1)])));
        assert!(!e.contains(v(&[(0, 1), (1, 1), (3, -1)])));
        assert!(e.contains(v(&[(0, 2), (1, 2), (3, -1)])));
        assert_eq!(e.dim(), 2);
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-6i64..=6, 1i64..=5).prop_map(|(n, d)| q(n, d))
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(small_scalar(), r * c)
                .prop_map(move |e| Matrix::new(r, c, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn echelon_dim_matches_dense_rank(m in small_matrix()) {
            let mut e = SparseEchelon::new();
            for i in 0..m.rows() {
                let v: SparseVec = m.row(i).iter().enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect();
                e.insert(v);
            }
            prop_assert_eq!(e.dim(), m.rank());
        }
    }
}
