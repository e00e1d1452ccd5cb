//! Validated input data `(μ, B)` of a skew Clifford algebra, condition ★
//! and the linear consequences forced by overlap ambiguities.
//!
//! Generator indices are 0-based in the API and 1-based in every
//! serialized report.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Matrix, Scalar};

/// Multiplicatively antisymmetric matrix: `μ_ij μ_ji = μ_ii = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MuMatrix(Matrix);

/// Matrix of a μ-symmetric bilinear form: `B_ij = μ_ij B_ji`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BMatrix(Matrix);

impl MuMatrix {
    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// Checks multiplicative antisymmetry and wraps the matrix.
    pub fn new(m: Matrix) -> Result<Self, ValidationError> {
        let mut v = Vec::new();
        check_square(&m, "mu", &mut v);
        if v.is_empty() {
            check_mu(&m, &mut v);
        }
        if v.is_empty() {
            Ok(MuMatrix(m))
        } else {
            Err(ValidationError { violations: v })
        }
    }

    pub fn submatrix(&self, idx: &[usize]) -> MuMatrix {
        MuMatrix(self.0.submatrix(idx))
    }

    pub fn transpose(&self) -> MuMatrix {
        MuMatrix(self.0.transpose())
    }

    /// True if `m` is μ-symmetric with respect to this matrix.
    pub fn is_mu_symmetric(&self, m: &Matrix) -> bool {
        mu_symmetry_violations(self, m).is_empty()
    }
}

impl BMatrix {
    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0 == self.0.transpose()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

/// One violated invariant, with 1-based coordinates in its display form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSquare { which: &'static str, rows: usize, cols: usize },
    SizeMismatch { mu: usize, b: usize },
    Empty,
    MuZero { i: usize, j: usize },
    MuNotAntisymmetric { i: usize, j: usize, product: Scalar },
    MuDiagonal { i: usize, value: Scalar },
    BNotMuSymmetric { i: usize, j: usize, lhs: Scalar, rhs: Scalar },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { which, rows, cols } => {
                write!(f, "{which} is {rows}x{cols}, expected a square matrix")
            }
            Violation::SizeMismatch { mu, b } => write!(f, "mu is {mu}x{mu} but B is {b}x{b}"),
            Violation::Empty => write!(f, "at least one generator is required"),
            Violation::MuZero { i, j } => write!(f, "mu_{}{} = 0", i + 1, j + 1),
            Violation::MuNotAntisymmetric { i, j, product } => write!(
                f,
                "mu_{a}{b} * mu_{b}{a} = {product}, expected 1",
                a = i + 1,
                b = j + 1
            ),
            Violation::MuDiagonal { i, value } => {
                write!(f, "mu_{a}{a} = {value}, expected 1", a = i + 1)
            }
            Violation::BNotMuSymmetric { i, j, lhs, rhs } => write!(
                f,
                "B_{a}{b} = {lhs} but mu_{a}{b} * B_{b}{a} = {rhs}",
                a = i + 1,
                b = j + 1
            ),
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (kind, at): (&str, Vec<usize>) = match self {
            Violation::NotSquare { .. } => ("not_square", vec![]),
            Violation::SizeMismatch { .. } => ("size_mismatch", vec![]),
            Violation::Empty => ("empty", vec![]),
            Violation::MuZero { i, j } => ("mu_zero", vec![i + 1, j + 1]),
            Violation::MuNotAntisymmetric { i, j, .. } => ("mu_not_antisymmetric", vec![i + 1, j + 1]),
            Violation::MuDiagonal { i, .. } => ("mu_diagonal", vec![i + 1, i + 1]),
            Violation::BNotMuSymmetric { i, j, .. } => ("b_not_mu_symmetric", vec![i + 1, j + 1]),
        };
        let mut s = serializer.serialize_struct("Violation", 3)?;
        s.serialize_field("kind", kind)?;
        s.serialize_field("at", &at)?;
        s.serialize_field("message", &self.to_string())?;
        s.end()
    }
}

/// Every invariant violated by a candidate `(μ, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("invalid presentation: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

/// A validated pair `(μ, B)` defining `sCl(V, μ, φ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    mu: MuMatrix,
    b: BMatrix,
}

fn check_square(m: &Matrix, which: &'static str, v: &mut Vec<Violation>) {
    if !m.is_square() {
        v.push(Violation::NotSquare { which, rows: m.rows(), cols: m.cols() });
    }
}

fn check_mu(m: &Matrix, v: &mut Vec<Violation>) {
    let n = m.rows();
    if n == 0 {
        v.push(Violation::Empty);
        return;
    }
    for i in 0..n {
        if !m.get(i, i).is_one() {
            v.push(Violation::MuDiagonal { i, value: m.get(i, i).clone() });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).is_zero() {
                v.push(Violation::MuZero { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let product = m.get(i, j) * m.get(j, i);
            if !product.is_one() && !m.get(i, j).is_zero() && !m.get(j, i).is_zero() {
                v.push(Violation::MuNotAntisymmetric { i, j, product });
            }
        }
    }
}

fn mu_symmetry_violations(mu: &MuMatrix, b: &Matrix) -> Vec<Violation> {
    let n = mu.n();
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rhs = mu.get(i, j) * b.get(j, i);
            if b.get(i, j) != &rhs {
                v.push(Violation::BNotMuSymmetric { i, j, lhs: b.get(i, j).clone(), rhs });
            }
        }
    }
    v
}

/// Checks Definition-level invariants of `(μ, B)` and reports all of
/// them at once.
pub fn validate(mu: Matrix, b: Matrix) -> Result<Presentation, ValidationError> {
    let mut v = Vec::new();
    check_square(&mu, "mu", &mut v);
    check_square(&b, "B", &mut v);
    if !v.is_empty() {
        return Err(ValidationError { violations: v });
    }
    if mu.rows() != b.rows() {
        v.push(Violation::SizeMismatch { mu: mu.rows(), b: b.rows() });
        return Err(ValidationError { violations: v });
    }
    check_mu(&mu, &mut v);
    if !v.is_empty() {
        return Err(ValidationError { violations: v });
    }
    let mu = MuMatrix(mu);
    v.extend(mu_symmetry_violations(&mu, &b));
    if v.is_empty() {
        Ok(Presentation { mu, b: BMatrix(b) })
    } else {
        Err(ValidationError { violations: v })
    }
}

impl Presentation {
    pub fn new(mu: Matrix, b: Matrix) -> Result<Self, ValidationError> {
        validate(mu, b)
    }

    pub fn n(&self) -> usize {
        self.mu.n()
    }

    pub fn mu(&self) -> &MuMatrix {
        &self.mu
    }

    pub fn b(&self) -> &BMatrix {
        &self.b
    }

    pub fn mu_at(&self, i: usize, j: usize) -> &Scalar {
        self.mu.get(i, j)
    }

    pub fn b_at(&self, i: usize, j: usize) -> &Scalar {
        self.b.get(i, j)
    }

    /// Restriction to the generators in `idx` (in the given order).
    pub fn restrict(&self, idx: &[usize]) -> Presentation {
        Presentation { mu: self.mu.submatrix(idx), b: BMatrix(self.b.0.submatrix(idx)) }
    }

    /// The presentation of the opposite algebra, `(μ^t, B^t)`.
    pub fn opposite(&self) -> Presentation {
        Presentation { mu: self.mu.transpose(), b: BMatrix(self.b.0.transpose()) }
    }

    pub fn star_condition(&self) -> StarReport {
        star_condition(self)
    }

    pub fn linear_consequences(&self) -> Vec<LinearConsequence> {
        linear_consequences(self)
    }
}

/// Outcome of checking condition ★: whenever `B_ij ≠ 0`, `μ_ik = μ_kj`
/// for every `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    pub holds: bool,
    /// 0-based `(i, j, k)` with `B_ij ≠ 0` and `μ_ik ≠ μ_kj`.
    pub violations: Vec<(usize, usize, usize)>,
}

impl Serialize for StarReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[usize; 3]> = self.violations.iter().map(|&(i, j, k)| [i + 1, j + 1, k + 1]).collect();
        let mut s = serializer.serialize_struct("StarReport", 2)?;
        s.serialize_field("holds", &self.holds)?;
        s.serialize_field("violations", &v)?;
        s.end()
    }
}

pub fn star_condition(p: &Presentation) -> StarReport {
    let n = p.n();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if p.b_at(i, j).is_zero() {
                continue;
            }
            for k in 0..n {
                if p.mu_at(i, k) != p.mu_at(k, j) {
                    violations.push((i, j, k));
                }
            }
        }
    }
    StarReport { holds: violations.is_empty(), violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConsequenceKind {
    Eq1,
    Eq2,
    Eq3,
}

/// A linear relation `Σ c_g x_g = 0` forced in the algebra by an overlap
/// ambiguity. Coefficients are "left side minus right side" of the
/// closed forms:
///
/// * Eq1 `(i,j)`: `2(1−μ_ij)B_ij x_i = (1−μ_ij²)B_ii x_j`
/// * Eq2 `(i,j)`: `2(1−μ_ij)B_ij x_j = (1−μ_ij²)B_jj x_i`
/// * Eq3 `(i,j,k)`: `(1−μ_ij μ_ik)B_jk x_i + (μ_ij−μ_jk)B_ik x_j = (1−μ_jk μ_ik)B_ij x_k`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConsequence {
    pub kind: ConsequenceKind,
    /// 0-based, ascending.
    pub indices: Vec<usize>,
    /// Nonzero coefficients only, keyed by 0-based generator.
    pub coefficients: BTreeMap<usize, Scalar>,
}

impl LinearConsequence {
    fn from_raw(kind: ConsequenceKind, indices: Vec<usize>, raw: Vec<(usize, Scalar)>) -> Option<Self> {
        let mut coefficients = BTreeMap::new();
        for (g, c) in raw {
            let e = coefficients.entry(g).or_insert_with(Scalar::zero);
            *e += &c;
        }
        coefficients.retain(|_, c: &mut Scalar| !c.is_zero());
        if coefficients.is_empty() {
            None
        } else {
            Some(LinearConsequence { kind, indices, coefficients })
        }
    }

    /// Number of generators with a nonzero coefficient.
    pub fn support(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficients scaled so that the lowest-index one is 1.
    pub fn normalized(&self) -> BTreeMap<usize, Scalar> {
        let lead = self.coefficients.values().next().expect("nonempty").inv().expect("nonzero");
        self.coefficients.iter().map(|(&g, c)| (g, c * &lead)).collect()
    }
}

impl Serialize for LinearConsequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let idx: Vec<usize> = self.indices.iter().map(|i| i + 1).collect();
        let coeffs: BTreeMap<String, &Scalar> =
            self.coefficients.iter().map(|(g, c)| (format!("x{}", g + 1), c)).collect();
        let mut s = serializer.serialize_struct("LinearConsequence", 3)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("indices", &idx)?;
        s.serialize_field("coefficients", &coeffs)?;
        s.end()
    }
}

fn eq1(p: &Presentation, i: usize, j: usize) -> Vec<(usize, Scalar)> {
    let one = Scalar::one();
    let mu = p.mu_at(i, j);
    vec![
        (i, Scalar::from_int(2) * (&one - mu) * p.b_at(i, j)),
        (j, -((&one - &mu.square()) * p.b_at(i, i))),
    ]
}

fn eq2(p: &Presentation, i: usize, j: usize) -> Vec<(usize, Scalar)> {
    let one = Scalar::one();
    let mu = p.mu_at(i, j);
    vec![
        (j, Scalar::from_int(2) * (&one - mu) * p.b_at(i, j)),
        (i, -((&one - &mu.square()) * p.b_at(j, j))),
    ]
}

fn eq3(p: &Presentation, i: usize, j: usize, k: usize) -> Vec<(usize, Scalar)> {
    let one = Scalar::one();
    let m = |a, b| p.mu_at(a, b);
    vec![
        (i, (&one - &(m(i, j) * m(i, k))) * p.b_at(j, k)),
        (j, (m(i, j) - m(j, k)) * p.b_at(i, k)),
        (k, -((&one - &(m(j, k) * m(i, k))) * p.b_at(i, j))),
    ]
}

/// One family member before deduplication; `None` when every coefficient
/// vanishes. Indices are 0-based and ascending.
#[cfg(test)]
pub(crate) fn consequence_at(p: &Presentation, kind: ConsequenceKind, idx: &[usize]) -> Option<LinearConsequence> {
    let raw = match (kind, idx) {
        (ConsequenceKind::Eq1, &[i, j]) => eq1(p, i, j),
        (ConsequenceKind::Eq2, &[i, j]) => eq2(p, i, j),
        (ConsequenceKind::Eq3, &[i, j, k]) => eq3(p, i, j, k),
        _ => return None,
    };
    LinearConsequence::from_raw(kind, idx.to_vec(), raw)
}

/// All nonzero instances of the three coefficient families, sorted by
/// `(kind, indices)` and deduplicated up to a scalar multiple.
pub fn linear_consequences(p: &Presentation) -> Vec<LinearConsequence> {
    use ConsequenceKind::*;
    let n = p.n();
    let mut out: Vec<LinearConsequence> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.extend(LinearConsequence::from_raw(Eq1, vec![i, j], eq1(p, i, j)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.extend(LinearConsequence::from_raw(Eq2, vec![i, j], eq2(p, i, j)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.extend(LinearConsequence::from_raw(Eq3, vec![i, j, k], eq3(p, i, j, k)));
            }
        }
    }
    let mut seen = Vec::new();
    out.retain(|c| {
        let key = c.normalized();
        if seen.contains(&key) {
            false
        } else {
            seen.push(key);
            true
        }
    });
    out
}

/// Quadratic form `Φ(v) = φ(v, v) = Σ B_ij v_i v_j` on coordinate vectors.
pub fn quadratic_form(p: &Presentation, v: &[Scalar]) -> Option<Scalar> {
    let n = p.n();
    if v.len() != n {
        return None;
    }
    let mut acc = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            acc += &(p.b_at(i, j) * &v[i] * &v[j]);
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn validate_accepts_fixtures() {
        assert!(fixtures::between_ex2().n() == 2);
        assert!(fixtures::zerodim().n() == 2);
    }

    #[test]
    fn validate_reports_antisymmetry_failure() {
        let err = validate(Matrix::from_i64(&[&[1, 2], &[2, 1]]), Matrix::zeros(2, 2)).unwrap_err();
        assert_eq!(
            err.violations,
            vec![Violation::MuNotAntisymmetric { i: 0, j: 1, product: Scalar::from_int(4) }]
        );
        assert!(err.to_string().contains("mu_12 * mu_21 = 4"));
    }

    #[test]
    fn validate_reports_every_violation_with_coordinates() {
        let mu = Matrix::from_i64(&[&[2, 0], &[1, 1]]);
        let err = validate(mu, Matrix::zeros(2, 2)).unwrap_err();
        assert!(err.violations.contains(&Violation::MuDiagonal { i: 0, value: Scalar::from_int(2) }));
        assert!(err.violations.contains(&Violation::MuZero { i: 0, j: 1 }));

        let mu = Matrix::from_i64(&[&[1, -1], &[-1, 1]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let err = validate(mu, b).unwrap_err();
        assert_eq!(err.violations.len(), 2);
        assert!(matches!(err.violations[0], Violation::BNotMuSymmetric { i: 0, j: 1, .. }));

        let err = validate(Matrix::identity(2), Matrix::identity(3)).unwrap_err();
        assert_eq!(err.violations, vec![Violation::SizeMismatch { mu: 2, b: 3 }]);
        let err = validate(Matrix::zeros(0, 0), Matrix::zeros(0, 0)).unwrap_err();
        assert_eq!(err.violations, vec![Violation::Empty]);
    }

    #[test]
    fn star_condition_examples() {
        let r = star_condition(&fixtures::zerodim());
        assert!(!r.holds);
        assert!(r.violations.contains(&(0, 1, 0)));

        let classical = Presentation::new(
            Matrix::from_i64(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]),
            Matrix::from_i64(&[&[1, 2, 0], &[2, -1, 3], &[0, 3, 0]]),
        )
        .unwrap();
        assert!(star_condition(&classical).holds);

        assert!(star_condition(&fixtures::fdex1(q(2, 1), q(1, 1))).holds);
    }

    #[test]
    fn linear_consequence_examples() {
        let c = linear_consequences(&fixtures::zerodim());
        let first = &c[0];
        assert_eq!(first.kind, ConsequenceKind::Eq1);
        assert_eq!(first.indices, vec![0, 1]);
        assert_eq!(first.coefficients, BTreeMap::from([(0, Scalar::from_int(4))]));

        let c = linear_consequences(&fixtures::between_ex2());
        let eq2 = c.iter().find(|c| c.kind == ConsequenceKind::Eq2).unwrap();
        assert_eq!(eq2.coefficients, BTreeMap::from([(0, Scalar::from_int(3))]));

        assert!(linear_consequences(&fixtures::fdex1(q(3, 1), q(1, 1))).is_empty());
    }

    #[test]
    fn opposite_examples() {
        let p = fixtures::fdex1(q(2, 1), q(1, 1));
        let op = p.opposite();
        assert_eq!(op.mu_at(0, 1), &q(1, 2));
        assert_eq!(op.b(), p.b());
        assert_eq!(op.opposite(), p);

        let sym = Presentation::new(Matrix::from_i64(&[&[1, 1], &[1, 1]]), Matrix::identity(2)).unwrap();
        assert_eq!(sym.opposite(), sym);
    }

    #[test]
    fn quadratic_form_evaluates_phi() {
        let p = Presentation::new(Matrix::from_i64(&[&[1, 1], &[1, 1]]), Matrix::from_i64(&[&[1, 2], &[2, 3]]))
            .unwrap();
        // x = x1 + x2: 1 + 2 + 2 + 3
        assert_eq!(quadratic_form(&p, &[Scalar::one(), Scalar::one()]), Some(Scalar::from_int(8)));
        assert_eq!(quadratic_form(&p, &[Scalar::one()]), None);
    }
}
