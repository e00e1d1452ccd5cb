//! Graded algebras attached to a presentation: the homogenization `A` with
//! one central `y`, the family `A(n)` with central `y_1..y_n`, the quantum
//! exterior algebra and its Koszul dual, plus truncated Hilbert series.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::rewrite::{Element, Word};
use crate::scalar::{Matrix, Scalar, SparseEchelon, SparseVec};
use crate::structure::tfae;

/// Default for the largest degree handled by [`hilbert_prefix`] and
/// [`centrality_from_quadratic`].
pub const DEFAULT_DEGREE_CAP: usize = 6;

/// Degree cap, overridable through `SKCL_DEGREE_CAP`.
pub fn degree_cap() -> Result<usize> {
    match std::env::var("SKCL_DEGREE_CAP") {
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("SKCL_DEGREE_CAP must be a non-negative integer, got {v:?}"))),
    }
}

fn check_cap(d: usize) -> Result<()> {
    let cap = degree_cap()?;
    if d > cap {
        return Err(Error::precondition(format!(
            "degree {d} exceeds the cap {cap} (raise SKCL_DEGREE_CAP to allow it)"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Quadratic,
    /// Makes a degree-two generator commute with everything.
    Centrality,
    /// Obtained by eliminating the degree-two generators.
    Eliminated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedRelation {
    pub degree: u32,
    pub kind: RelationKind,
    pub element: Element,
}

/// Homogeneous presentation: letters of every word index into `generators`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<GradedRelation>,
}

impl GradedPresentation {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    fn push(&mut self, kind: RelationKind, element: Element) -> Result<()> {
        if element.is_zero() {
            return Ok(());
        }
        let degree = element
            .homogeneous_weight(&self.degrees())
            .ok_or_else(|| Error::internal(format!("relation {element} is not homogeneous")))?;
        self.relations.push(GradedRelation { degree, kind, element });
        Ok(())
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }

    /// The same generators with only the relations of the given degree.
    pub fn restricted_to_degree(&self, degree: u32) -> GradedPresentation {
        GradedPresentation {
            generators: self.generators.clone(),
            relations: self.relations.iter().filter(|r| r.degree == degree).cloned().collect(),
        }
    }

    fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Relations rendered with generator names.
    pub fn display_relations(&self) -> Vec<String> {
        let names = self.names();
        self.relations.iter().map(|r| r.element.display_with(&names)).collect()
    }
}

fn x_generators(n: usize, prefix: &str) -> Vec<Generator> {
    (1..=n).map(|i| Generator { name: format!("{prefix}{i}"), degree: 1 }).collect()
}

fn word(letters: &[usize]) -> Word {
    Word::from_letters(letters.to_vec())
}

/// `X_i X_j + μ_ij X_j X_i`.
fn sym_pair(p: &Presentation, i: usize, j: usize) -> Element {
    let mut e = Element::word(word(&[i, j]));
    e.add_term(word(&[j, i]), p.mu_at(i, j));
    e
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Quantum exterior algebra `Λ_μ(V)`: `X_i X_j + μ_ij X_j X_i` for `i ≤ j`.
pub fn lambda_presentation(p: &Presentation) -> Result<GradedPresentation> {
    let mut g = GradedPresentation { generators: x_generators(p.n(), "X"), relations: Vec::new() };
    for (i, j) in pairs(p.n()) {
        g.push(RelationKind::Quadratic, sym_pair(p, i, j))?;
    }
    Ok(g)
}

/// Skew polynomial ring dual to `Λ_μ(V)`: `z_k z_i − μ_ik z_i z_k` for `i < k`.
pub fn koszul_dual_presentation(p: &Presentation) -> Result<GradedPresentation> {
    let mut g = GradedPresentation { generators: x_generators(p.n(), "z"), relations: Vec::new() };
    for i in 0..p.n() {
        for k in i + 1..p.n() {
            let mut e = Element::word(word(&[k, i]));
            e.add_term(word(&[i, k]), &-p.mu_at(i, k));
            g.push(RelationKind::Quadratic, e)?;
        }
    }
    Ok(g)
}

/// `A`: generators `X_1..X_n` and a degree-two `y`, relations
/// `X_i X_j + μ_ij X_j X_i − 2B_ij y` (`i ≤ j`) and `y X_k − X_k y`.
pub fn homogenize_single(p: &Presentation) -> Result<GradedPresentation> {
    let n = p.n();
    let mut generators = x_generators(n, "X");
    generators.push(Generator { name: "y".into(), degree: 2 });
    let mut g = GradedPresentation { generators, relations: Vec::new() };
    let y = n;
    for (i, j) in pairs(n) {
        let mut e = sym_pair(p, i, j);
        e.add_term(Word::letter(y), &(Scalar::from_int(-2) * p.b_at(i, j)));
        g.push(RelationKind::Quadratic, e)?;
    }
    for k in 0..n {
        g.push(RelationKind::Centrality, Element::generator(y).commutator(&Element::generator(k)))?;
    }
    Ok(g)
}

/// Checks that `ms` are `n` μ-symmetric `n×n` matrices summing to `2B`.
pub fn check_partition(p: &Presentation, ms: &[Matrix]) -> Result<()> {
    let n = p.n();
    if ms.len() != n {
        return Err(Error::precondition(format!("expected {n} matrices, got {}", ms.len())));
    }
    for (k, m) in ms.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(Error::precondition(format!("M_{} is {}x{}, expected {n}x{n}", k + 1, m.rows(), m.cols())));
        }
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) != &(p.mu_at(i, j) * m.get(j, i)) {
                    return Err(Error::precondition(format!(
                        "M_{} is not μ-symmetric at ({}, {})",
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }
    let two_b = p.b().matrix().scale(&Scalar::from_int(2));
    let sum = ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.checked_add(m).expect("sizes checked"));
    for i in 0..n {
        for j in 0..n {
            if sum.get(i, j) != two_b.get(i, j) {
                return Err(Error::precondition(format!(
                    "Σ M_k differs from 2B at ({}, {}): {} vs {}",
                    i + 1,
                    j + 1,
                    sum.get(i, j),
                    two_b.get(i, j)
                )));
            }
        }
    }
    Ok(())
}

/// Rank of the `M_k` viewed as vectors of length `n²`.
pub fn flattened_rank(ms: &[Matrix]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = ms.iter().map(|m| m.entries().to_vec()).collect();
    Matrix::from_rows(rows).expect("equal lengths").rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionCase {
    /// One generator: `M_1 = D`.
    Base,
    /// Upper block nonzero, last row/column of `D` nonzero.
    UpperBlockWithBorder,
    /// Upper block nonzero, last row/column of `D` zero.
    UpperBlockZeroBorder,
    /// Upper block zero.
    ZeroUpperBlock,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionStep {
    /// Size of the leading block handled at this step.
    pub size: usize,
    pub case: PartitionCase,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionResult {
    pub matrices: Vec<Matrix>,
    pub trace: Vec<PartitionStep>,
}

fn embed(m: &Matrix, n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    out
}

/// Splits the leading `size×size` block of `d` recursively.
fn partition_block(d: &Matrix, size: usize, trace: &mut Vec<PartitionStep>) -> Vec<Matrix> {
    if size == 1 {
        trace.push(PartitionStep { size, case: PartitionCase::Base });
        return vec![Matrix::from_rows(vec![vec![d.get(0, 0).clone()]]).expect("1x1")];
    }
    let last = size - 1;
    let lead: Vec<usize> = (0..last).collect();
    let upper = d.submatrix(&lead);
    if upper.is_zero() {
        trace.push(PartitionStep { size, case: PartitionCase::ZeroUpperBlock });
        let mut ms: Vec<Matrix> = (0..last).map(|k| Matrix::unit(size, k, k)).collect();
        let mut rest = d.submatrix(&(0..size).collect::<Vec<_>>());
        for k in 0..last {
            rest.set(k, k, rest.get(k, k) - &Scalar::one());
        }
        ms.push(rest);
        return ms;
    }
    let border_zero = (0..size).all(|i| d.get(i, last).is_zero() && d.get(last, i).is_zero());
    let inner = partition_block(d, last, trace);
    let mut ms: Vec<Matrix> = inner.iter().map(|m| embed(m, size)).collect();
    if border_zero {
        trace.push(PartitionStep { size, case: PartitionCase::UpperBlockZeroBorder });
        ms[0].set(last, last, Scalar::one());
        let mut corner = Matrix::zeros(size, size);
        corner.set(last, last, -Scalar::one());
        ms.push(corner);
    } else {
        trace.push(PartitionStep { size, case: PartitionCase::UpperBlockWithBorder });
        let mut border = Matrix::zeros(size, size);
        for i in 0..size {
            border.set(i, last, d.get(i, last).clone());
            border.set(last, i, d.get(last, i).clone());
        }
        ms.push(border);
    }
    ms
}

/// Writes `D = 2B` as a sum of `n` linearly independent μ-symmetric
/// matrices by induction on the leading block.
pub fn partition(p: &Presentation) -> Result<PartitionResult> {
    if p.b().is_zero() {
        return Err(Error::precondition("partition needs B ≠ 0"));
    }
    let n = p.n();
    let d = p.b().matrix().scale(&Scalar::from_int(2));
    let mut trace = Vec::new();
    let matrices = partition_block(&d, n, &mut trace);
    check_partition(p, &matrices).map_err(|e| Error::internal(format!("partition output invalid: {e}")))?;
    if flattened_rank(&matrices) != n {
        return Err(Error::internal("partition output is linearly dependent"));
    }
    Ok(PartitionResult { matrices, trace })
}

/// `A(n)`: generators `X_1..X_n`, `y_1..y_n`, relations
/// `X_i X_j + μ_ij X_j X_i − Σ_k (M_k)_ij y_k` for `i ≤ j`, `y_k X_i − X_i y_k`
/// and `y_k y_l − y_l y_k` for every ordered `k ≠ l`.
pub fn homogenize_multi(p: &Presentation, ms: &[Matrix]) -> Result<GradedPresentation> {
    check_partition(p, ms)?;
    let n = p.n();
    let mut generators = x_generators(n, "X");
    generators.extend((1..=n).map(|k| Generator { name: format!("y{k}"), degree: 2 }));
    let mut g = GradedPresentation { generators, relations: Vec::new() };
    let y = |k: usize| n + k;
    for (i, j) in pairs(n) {
        let mut e = sym_pair(p, i, j);
        for (k, m) in ms.iter().enumerate() {
            e.add_term(Word::letter(y(k)), &-m.get(i, j));
        }
        g.push(RelationKind::Quadratic, e)?;
    }
    for k in 0..n {
        for i in 0..n {
            g.push(RelationKind::Centrality, Element::generator(y(k)).commutator(&Element::generator(i)))?;
        }
    }
    for k in 0..n {
        for l in 0..n {
            if k != l {
                g.push(RelationKind::Centrality, Element::generator(y(k)).commutator(&Element::generator(y(l))))?;
            }
        }
    }
    let (q, c) = (g.count(RelationKind::Quadratic), g.count(RelationKind::Centrality));
    if q != (n * n + n) / 2 || c != n * (2 * n - 1) {
        return Err(Error::internal(format!("A(n) has {q} quadratic and {c} centrality relations")));
    }
    Ok(g)
}

/// Sets every degree-two generator to 1 in the quadratic relations.
pub fn dehomogenize(g: &GradedPresentation) -> Vec<Element> {
    let images: BTreeMap<usize, Element> = g
        .generators
        .iter()
        .enumerate()
        .filter(|(_, gen)| gen.degree == 2)
        .map(|(k, _)| (k, Element::one()))
        .collect();
    g.relations
        .iter()
        .filter(|r| r.kind == RelationKind::Quadratic)
        .map(|r| r.element.substitute(&images))
        .collect()
}

/// Defining relations `x_i x_j + μ_ij x_j x_i − 2B_ij` of `p` for `i ≤ j`.
pub fn defining_relations(p: &Presentation) -> Vec<Element> {
    pairs(p.n())
        .into_iter()
        .map(|(i, j)| {
            let mut e = sym_pair(p, i, j);
            e.add_term(Word::unit(), &(Scalar::from_int(-2) * p.b_at(i, j)));
            e
        })
        .collect()
}

/// Change of basis used before applying the non-diagonal formulas: new
/// generator `i` is `scale_i · x_{perm_i}` (1-based in JSON).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub perm: Vec<usize>,
    pub scale: Vec<Scalar>,
}

impl Serialize for Normalization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let perm: Vec<usize> = self.perm.iter().map(|i| i + 1).collect();
        let mut s = serializer.serialize_struct("Normalization", 2)?;
        s.serialize_field("perm", &perm)?;
        s.serialize_field("scale", &self.scale)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsregCase {
    SingleGenerator,
    Diagonal,
    NonDiagonal,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsregResult {
    pub case: AsregCase,
    pub normalization: Normalization,
    /// In the caller's original basis.
    pub matrices: Vec<Matrix>,
}

/// Builds `M_1..M_n` for which `A(n)` is quadratic and regular, following
/// the diagonal / non-diagonal construction. Requires full dimension,
/// `B ≠ 0` and `μ_ij² = 1` everywhere.
pub fn asreg_matrices(p: &Presentation) -> Result<AsregResult> {
    let n = p.n();
    if p.b().is_zero() {
        return Err(Error::precondition("B = 0: there is no form to distribute"));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !p.mu_at(i, j).square().is_one() {
                return Err(Error::precondition(format!(
                    "μ_{}{}² = {} ≠ 1",
                    i + 1,
                    j + 1,
                    p.mu_at(i, j).square()
                )));
            }
        }
    }
    let report = tfae(p)?;
    if !report.full_dimension {
        return Err(Error::precondition(format!(
            "the algebra has dimension {}, not full dimension {}",
            report.dimension,
            1usize << n
        )));
    }
    let two = Scalar::from_int(2);
    let b = |i: usize, j: usize| p.b_at(i, j).clone();

    if n == 1 {
        let m = Matrix::from_rows(vec![vec![&two * &b(0, 0)]]).expect("1x1");
        return Ok(AsregResult {
            case: AsregCase::SingleGenerator,
            normalization: Normalization { perm: vec![0], scale: vec![Scalar::one()] },
            matrices: vec![m],
        });
    }

    let (case, perm, scale) = if p.b().is_diagonal() {
        let first = (0..n).find(|&i| !b(i, i).is_zero()).expect("B ≠ 0 and diagonal");
        let mut perm = vec![first];
        perm.extend((0..n).filter(|&i| i != first));
        (AsregCase::Diagonal, perm, vec![Scalar::one(); n])
    } else {
        let (mut a, mut c) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !b(i, j).is_zero())
            .expect("B is not diagonal");
        if !b(c, c).is_zero() && b(a, a).is_zero() {
            std::mem::swap(&mut a, &mut c);
        }
        let mut perm = vec![a, c];
        perm.extend((0..n).filter(|&i| i != a && i != c));
        let mut scale = vec![Scalar::one(); n];
        scale[0] = b(a, c).inv().expect("nonzero");
        (AsregCase::NonDiagonal, perm, scale)
    };
    // Normalized form B'_ij = s_i s_j B_{π i, π j}.
    let bn = |i: usize, j: usize| &scale[i] * &scale[j] * p.b_at(perm[i], perm[j]);
    let mut local: Vec<Matrix> = (0..n).map(|_| Matrix::zeros(n, n)).collect();
    match case {
        AsregCase::Diagonal => {
            for k in 0..n {
                let bkk = bn(k, k);
                if !bkk.is_zero() {
                    local[k].set(k, k, &two * &bkk);
                } else {
                    // k ≥ 1 here since B'_11 ≠ 0.
                    local[k].set(k, k, -Scalar::one());
                    local[0].set(k, k, Scalar::one());
                }
            }
        }
        AsregCase::NonDiagonal => {
            for i in 0..n {
                for j in 0..n {
                    let v = if i == j && i == 0 {
                        if bn(0, 0).is_zero() { Scalar::one() } else { &two * &bn(0, 0) }
                    } else if i == j {
                        if bn(j, j).is_zero() { -Scalar::one() } else { Scalar::zero() }
                    } else {
                        &two * &bn(i, j)
                    };
                    local[0].set(i, j, v);
                }
            }
            for (k, m) in local.iter_mut().enumerate().skip(1) {
                let bkk = bn(k, k);
                m.set(k, k, if bkk.is_zero() { Scalar::one() } else { &two * &bkk });
            }
            if bn(0, 0).is_zero() {
                local[1].set(0, 0, -Scalar::one());
            }
        }
        AsregCase::SingleGenerator => unreachable!(),
    }
    let matrices: Vec<Matrix> = local
        .iter()
        .map(|m| {
            let mut out = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    out.set(perm[i], perm[j], m.get(i, j) / &(&scale[i] * &scale[j]));
                }
            }
            out
        })
        .collect();
    check_partition(p, &matrices).map_err(|e| Error::internal(format!("construction invalid: {e}")))?;
    if flattened_rank(&matrices) != n {
        return Err(Error::internal("constructed matrices are linearly dependent"));
    }
    Ok(AsregResult { case, normalization: Normalization { perm, scale }, matrices })
}

#[derive(Debug, Clone, Serialize)]
pub struct Elimination {
    pub presentation: GradedPresentation,
    /// `y_k` as a degree-two element in the `X`s.
    pub y_expressions: Vec<Element>,
}

/// Solves the quadratic relations of `A(n)` for the `y_k` and substitutes
/// them everywhere, leaving a presentation on `X_1..X_n`.
pub fn eliminate_y(g: &GradedPresentation, ms: &[Matrix]) -> Result<Elimination> {
    let n = ms.len();
    if n == 0 || g.generators.len() != 2 * n {
        return Err(Error::precondition("expected a presentation on X_1..X_n, y_1..y_n"));
    }
    if flattened_rank(ms) != n {
        return Err(Error::precondition("the matrices M_k are linearly dependent; y cannot be eliminated"));
    }
    let ps = pairs(n);
    let np = ps.len();
    // [C | I] with rows indexed by pairs i ≤ j and C[(i,j), k] = (M_k)_ij.
    let mut aug = Matrix::zeros(np, n + np);
    for (r, &(i, j)) in ps.iter().enumerate() {
        for (k, m) in ms.iter().enumerate() {
            aug.set(r, k, m.get(i, j).clone());
        }
        aug.set(r, n + r, Scalar::one());
    }
    let red = aug.rref();
    if red.pivots.iter().filter(|&&c| c < n).count() != n {
        return Err(Error::precondition("the coefficient system for y has rank below n"));
    }
    // P_ij = X_i X_j + μ_ij X_j X_i, read off the quadratic relations.
    let quad: Vec<&GradedRelation> = g.relations.iter().filter(|r| r.kind == RelationKind::Quadratic).collect();
    if quad.len() != np {
        return Err(Error::precondition(format!("expected {np} quadratic relations, found {}", quad.len())));
    }
    let p_elems: Vec<Element> = quad
        .iter()
        .map(|r| Element::from_terms(r.element.terms().filter(|(w, _)| w.letters().iter().all(|&l| l < n)).map(|(w, c)| (w.clone(), c.clone()))))
        .collect();
    let mut y_expressions = Vec::with_capacity(n);
    for k in 0..n {
        let row = red.pivots.iter().position(|&c| c == k).expect("pivot present");
        let mut e = Element::zero();
        for (r, pe) in p_elems.iter().enumerate() {
            let c = red.matrix.get(row, n + r);
            if !c.is_zero() {
                e = e.add(&pe.scale(c));
            }
        }
        y_expressions.push(e);
    }
    let images: BTreeMap<usize, Element> = y_expressions.iter().enumerate().map(|(k, e)| (n + k, e.clone())).collect();
    let mut out = GradedPresentation { generators: g.generators[..n].to_vec(), relations: Vec::new() };
    for r in &g.relations {
        let e = r.element.substitute(&images);
        out.push(RelationKind::Eliminated, e)?;
    }
    Ok(Elimination { presentation: out, y_expressions })
}

/// Degree-by-degree data for the two-sided ideal of a graded presentation.
struct GradedIdeal {
    degrees: Vec<u32>,
    /// Words of each weight, ascending, and the reverse lookup.
    words: Vec<Vec<Word>>,
    index: Vec<BTreeMap<Word, usize>>,
    ideal: Vec<SparseEchelon>,
}

impl GradedIdeal {
    fn new(g: &GradedPresentation, d: usize) -> Result<Self> {
        let degrees = g.degrees();
        let mut words: Vec<Vec<Word>> = vec![vec![Word::unit()]];
        for e in 1..=d {
            let mut level = Vec::new();
            for (gen, &dg) in degrees.iter().enumerate() {
                let dg = dg as usize;
                if dg == 0 || dg > e {
                    continue;
                }
                for w in &words[e - dg] {
                    level.push(w.concat(&Word::letter(gen)));
                }
            }
            level.sort();
            words.push(level);
        }
        let index = words.iter().map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect();
        let mut gi = GradedIdeal { degrees, words, index, ideal: Vec::new() };
        for e in 0..=d {
            let mut ech = SparseEchelon::new();
            for (gen, &dg) in gi.degrees.iter().enumerate() {
                let dg = dg as usize;
                if dg == 0 || dg > e {
                    continue;
                }
                let letter = Word::letter(gen);
                let prev: Vec<SparseVec> = gi.ideal[e - dg].rows().cloned().collect();
                for row in prev {
                    let left = gi.remap(&row, e - dg, e, |w| letter.concat(w));
                    ech.insert(left);
                    let right = gi.remap(&row, e - dg, e, |w| w.concat(&letter));
                    ech.insert(right);
                }
            }
            for r in g.relations.iter().filter(|r| r.degree as usize == e) {
                ech.insert(gi.vector(&r.element, e)?);
            }
            gi.ideal.push(ech);
        }
        Ok(gi)
    }

    fn remap(&self, row: &SparseVec, from: usize, to: usize, f: impl Fn(&Word) -> Word) -> SparseVec {
        row.iter().map(|(&i, c)| (self.index[to][&f(&self.words[from][i])], c.clone())).collect()
    }

    fn vector(&self, e: &Element, degree: usize) -> Result<SparseVec> {
        e.terms()
            .map(|(w, c)| {
                self.index[degree]
                    .get(w)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::Input(format!("word {w:?} is not of weight {degree}")))
            })
            .collect()
    }

    fn quotient_dim(&self, e: usize) -> usize {
        self.words[e].len() - self.ideal[e].dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertPrefix {
    pub coefficients: Vec<usize>,
}

/// Dimensions of the graded pieces `0..=d` of the quotient algebra.
pub fn hilbert_prefix(g: &GradedPresentation, d: usize) -> Result<HilbertPrefix> {
    check_cap(d)?;
    let gi = GradedIdeal::new(g, d)?;
    Ok(HilbertPrefix { coefficients: (0..=d).map(|e| gi.quotient_dim(e)).collect() })
}

/// Failing pair in a centrality check (`generator` is 1-based).
#[derive(Debug, Clone, Serialize)]
pub struct CentralityFailure {
    pub candidate: usize,
    pub generator: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralityReport {
    pub holds: bool,
    pub checked: usize,
    pub failures: Vec<CentralityFailure>,
}

/// Whether each `c X − X c` lies in the ideal generated by the degree-two
/// relations of `g`, for every candidate `c` and degree-one generator `X`.
pub fn centrality_from_quadratic(g: &GradedPresentation, candidates: &[Element], d: usize) -> Result<CentralityReport> {
    check_cap(d)?;
    let quad = g.restricted_to_degree(2);
    let degrees = g.degrees();
    let mut weights = Vec::new();
    for c in candidates {
        let w = c
            .homogeneous_weight(&degrees)
            .ok_or_else(|| Error::Input(format!("candidate {c} is not homogeneous")))? as usize;
        if w + 1 > d {
            return Err(Error::precondition(format!("candidate of weight {w} needs degree {} > {d}", w + 1)));
        }
        weights.push(w);
    }
    let gi = GradedIdeal::new(&quad, d)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (ci, c) in candidates.iter().enumerate() {
        for (x, _) in degrees.iter().enumerate().filter(|(_, &dg)| dg == 1) {
            checked += 1;
            let comm = c.commutator(&Element::generator(x));
            if !gi.ideal[weights[ci] + 1].contains(gi.vector(&comm, weights[ci] + 1)?) {
                failures.push(CentralityFailure { candidate: ci, generator: x + 1 });
            }
        }
    }
    Ok(CentralityReport { holds: failures.is_empty(), checked, failures })
}

/// Elements equal to `y` in `A` from its quadratic relations: `X_i²/B_ii`
/// for the first nonzero `B_ii`, else `(X_a X_b + μ_ab X_b X_a)/(2B_ab)`.
/// Empty when `B = 0`.
pub fn single_centrality_candidates(p: &Presentation) -> Vec<Element> {
    let n = p.n();
    if let Some(i) = (0..n).find(|&i| !p.b_at(i, i).is_zero()) {
        let inv = p.b_at(i, i).inv().expect("nonzero");
        return vec![Element::monomial(word(&[i, i]), inv)];
    }
    for a in 0..n {
        for b in a + 1..n {
            if !p.b_at(a, b).is_zero() {
                let inv = (Scalar::from_int(2) * p.b_at(a, b)).inv().expect("nonzero");
                return vec![sym_pair(p, a, b).scale(&inv)];
            }
        }
    }
    Vec::new()
}

/// `A(n)` from the regular construction with the `y_k` eliminated.
pub fn an_eliminated(p: &Presentation) -> Result<(AsregResult, Elimination)> {
    let asreg = asreg_matrices(p)?;
    let g = homogenize_multi(p, &asreg.matrices)?;
    let elim = eliminate_y(&g, &asreg.matrices)?;
    Ok((asreg, elim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn pres(mu12: i64, b: &[&[i64]]) -> Presentation {
        Presentation::new(fixtures::mu_from_upper(2, &[s(mu12)]), Matrix::from_i64(b)).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
    }

    #[test]
    fn single_generator_homogenization() {
        let p = Presentation::new(Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]])).unwrap();
        let g = homogenize_single(&p).unwrap();
        let mut q = Element::monomial(word(&[0, 0]), s(2));
        q.add_term(Word::letter(1), &s(-2));
        let c = Element::generator(1).commutator(&Element::generator(0));
        let rels: Vec<Element> = g.relations.iter().map(|r| r.element.clone()).collect();
        assert_eq!(rels, vec![q, c]);
        assert_eq!(g.relations[0].degree, 2);
        assert_eq!(g.relations[1].degree, 3);
    }

    #[test]
    fn single_counts_fdex1() {
        let g = homogenize_single(&fixtures::fdex1(s(2), s(1))).unwrap();
        assert_eq!(g.count(RelationKind::Quadratic), 6);
        assert_eq!(g.count(RelationKind::Centrality), 3);
    }

    #[test]
    fn single_zero_b_keeps_y_free() {
        let p = fixtures::fdex2(fixtures::mu_from_upper(2, &[s(-1)])).unwrap();
        let g = homogenize_single(&p).unwrap();
        // Λ ⊗ k[y]: (1+t)² / (1−t²)
        assert_eq!(hilbert_prefix(&g, 4).unwrap().coefficients, vec![1, 2, 2, 2, 2]);
        assert!(single_centrality_candidates(&p).is_empty());
        assert!(centrality_from_quadratic(&g, &[], 3).unwrap().holds);
    }

    #[test]
    fn partition_examples() {
        let p = pres(1, &[&[0, 1], &[1, 0]]);
        let r = partition(&p).unwrap();
        assert_eq!(r.matrices, vec![Matrix::from_i64(&[&[1, 0], &[0, 0]]), Matrix::from_i64(&[&[-1, 2], &[2, 0]])]);

        let r = partition(&fixtures::fdex1(s(2), s(1))).unwrap();
        let d = fixtures::fdex1(s(2), s(1)).b().matrix().scale(&s(2));
        let mut m3 = d.clone();
        m3.set(0, 0, s(-1));
        m3.set(1, 1, s(-1));
        assert_eq!(r.matrices, vec![Matrix::unit(3, 0, 0), Matrix::unit(3, 1, 1), m3]);
        assert_eq!(r.trace.last().unwrap().case, PartitionCase::ZeroUpperBlock);

        assert!(partition(&pres(-1, &[&[0, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn partition_zero_border() {
        let p = pres(-1, &[&[1, 0], &[0, 0]]);
        let r = partition(&p).unwrap();
        assert_eq!(r.matrices, vec![Matrix::from_i64(&[&[2, 0], &[0, 1]]), Matrix::from_i64(&[&[0, 0], &[0, -1]])]);
        assert_eq!(r.trace.last().unwrap().case, PartitionCase::UpperBlockZeroBorder);
    }

    #[test]
    fn multi_counts() {
        let p = pres(1, &[&[0, 1], &[1, 0]]);
        let ms = partition(&p).unwrap().matrices;
        let g = homogenize_multi(&p, &ms).unwrap();
        assert_eq!((g.count(RelationKind::Quadratic), g.count(RelationKind::Centrality)), (3, 6));
        let p3 = fixtures::fdex1(s(2), s(1));
        let g = homogenize_multi(&p3, &partition(&p3).unwrap().matrices).unwrap();
        assert_eq!((g.count(RelationKind::Quadratic), g.count(RelationKind::Centrality)), (6, 15));
        assert_eq!(dehomogenize(&g), defining_relations(&p3));
    }

    #[test]
    fn multi_rejects_bad_sum() {
        let p = pres(1, &[&[0, 1], &[1, 0]]);
        let ms = vec![Matrix::unit(2, 0, 0), Matrix::unit(2, 1, 1)];
        assert!(matches!(homogenize_multi(&p, &ms), Err(Error::Precondition(_))));
    }

    #[test]
    fn asreg_examples() {
        let r = asreg_matrices(&pres(-1, &[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(r.matrices, vec![Matrix::from_i64(&[&[2, 0], &[0, 1]]), Matrix::from_i64(&[&[0, 0], &[0, -1]])]);
        let r = asreg_matrices(&pres(-1, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(r.matrices, vec![Matrix::from_i64(&[&[2, 0], &[0, 0]]), Matrix::from_i64(&[&[0, 0], &[0, 2]])]);
        let r = asreg_matrices(&pres(1, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(r.matrices, vec![Matrix::from_i64(&[&[1, 2], &[2, -1]]), Matrix::from_i64(&[&[-1, 0], &[0, 1]])]);
        assert_eq!(r.case, AsregCase::NonDiagonal);
    }

    #[test]
    fn asreg_preconditions() {
        // full dimension but μ² ≠ 1
        let p = Presentation::new(fixtures::mu_from_upper(2, &[s(2)]), Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        match asreg_matrices(&p) {
            Err(Error::Precondition(m)) => assert!(m.contains("μ_12")),
            other => panic!("{other:?}"),
        }
        assert!(asreg_matrices(&fixtures::zerodim()).is_err());
        assert!(asreg_matrices(&pres(-1, &[&[0, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn asreg_rescales_back() {
        // B_12 = 3 and B_11 = 0 ≠ B_22: the second generator moves to the front.
        let p = pres(1, &[&[0, 3], &[3, 5]]);
        let r = asreg_matrices(&p).unwrap();
        assert_eq!(r.normalization.perm, vec![1, 0]);
        assert_eq!(r.normalization.scale[0], Scalar::new(1, 3).unwrap());
    }

    #[test]
    fn eliminate_diagonal_invertible() {
        let p = pres(-1, &[&[1, 0], &[0, 1]]);
        let (_, elim) = an_eliminated(&p).unwrap();
        assert_eq!(elim.y_expressions[0], Element::word(word(&[0, 0])));
        assert_eq!(elim.y_expressions[1], Element::word(word(&[1, 1])));
        assert_eq!(hilbert_prefix(&elim.presentation, 5).unwrap().coefficients, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn eliminate_rejects_dependent() {
        let p = pres(1, &[&[0, 1], &[1, 0]]);
        let g = homogenize_multi(&p, &partition(&p).unwrap().matrices).unwrap();
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(matches!(eliminate_y(&g, &[m.clone(), m]), Err(Error::Precondition(_))));
    }

    #[test]
    fn lambda_and_dual_series() {
        let mu = fixtures::mu_from_upper(3, &[s(2), s(-1), Scalar::new(1, 2).unwrap()]);
        let p = fixtures::fdex2(mu).unwrap();
        assert_eq!(hilbert_prefix(&lambda_presentation(&p).unwrap(), 5).unwrap().coefficients, vec![1, 3, 3, 1, 0, 0]);
        let p2 = fixtures::fdex2(fixtures::mu_from_upper(2, &[s(3)])).unwrap();
        assert_eq!(hilbert_prefix(&koszul_dual_presentation(&p2).unwrap(), 4).unwrap().coefficients, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn centrality_examples() {
        let p = Presentation::new(Matrix::from_i64(&[&[1, 1], &[1, 1]]), Matrix::identity(2)).unwrap();
        let g = homogenize_single(&p).unwrap();
        let cands = single_centrality_candidates(&p);
        assert_eq!(cands, vec![Element::word(word(&[0, 0]))]);
        assert!(centrality_from_quadratic(&g, &cands, 3).unwrap().holds);
        // X_1 X_2 is not central in the classical case
        let bad = Element::word(word(&[0, 1]));
        assert!(!centrality_from_quadratic(&g, &[bad], 3).unwrap().holds);
    }

    #[test]
    fn cap_enforced() {
        let p = fixtures::fdex2(fixtures::mu_from_upper(2, &[s(1)])).unwrap();
        let g = lambda_presentation(&p).unwrap();
        assert!(matches!(hilbert_prefix(&g, DEFAULT_DEGREE_CAP + 1), Err(Error::Precondition(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exterior_series_is_binomial(upper in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], 3)) {
            let ups: Vec<Scalar> = upper.iter().map(|&v| s(v)).collect();
            let p = fixtures::fdex2(fixtures::mu_from_upper(3, &ups)).unwrap();
            let h = hilbert_prefix(&lambda_presentation(&p).unwrap(), 4).unwrap();
            prop_assert_eq!(h.coefficients, (0..=4).map(|e| binom(3, e)).collect::<Vec<_>>());
        }
    }
}
