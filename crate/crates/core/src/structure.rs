//! Structural results on `sCl(V, μ, φ)`: reduction to a sub-presentation
//! satisfying ★, the four equivalent full-dimension criteria, the central
//! element `q` of the skew polynomial ring, and the filtration profile.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{linear_consequences, star_condition, LinearConsequence, MuMatrix, Presentation};
use crate::rewrite::{RewriteRule, SkewClifford, Word};
use crate::scalar::Scalar;

/// A linear relation `Σ c_g x_g = 0`, keyed by 0-based generator.
type Relation = BTreeMap<usize, Scalar>;

fn one_based(r: &Relation) -> Vec<(usize, Scalar)> {
    r.iter().map(|(g, c)| (g + 1, c.clone())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionOutcome {
    Trivial,
    Reduced,
}

/// One step of the reduction. Generator numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum ReductionStep {
    /// `x_g = 0` and `x_g` pairs trivially with every survivor, so it is dropped.
    Vanish { generator: usize, source: String },
    /// `x_a = λ_a x_root` for every listed `(a, λ_a)`; those generators are dropped.
    Proportional { root: usize, removed: Vec<(usize, Scalar)> },
    /// Linear relations forced by `x_a = λ x_root` when `μ_{a,other} ≠ μ_{root,other}`.
    Derived { generator: usize, root: usize, other: usize, relations: Vec<Vec<(usize, Scalar)>> },
    Trivial { reason: String },
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub outcome: ReductionOutcome,
    /// 0-based surviving generators, ascending. Empty when trivial.
    pub subset: Vec<usize>,
    /// `(μ′, B′)` on the surviving generators.
    pub reduced: Option<Presentation>,
    pub trace: Vec<ReductionStep>,
}

impl ReductionResult {
    pub fn dimension(&self) -> usize {
        match self.outcome {
            ReductionOutcome::Trivial => 0,
            ReductionOutcome::Reduced => 1 << self.subset.len(),
        }
    }
}

impl Serialize for ReductionResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let subset: Vec<usize> = self.subset.iter().map(|g| g + 1).collect();
        let mut s = serializer.serialize_struct("ReductionResult", 6)?;
        s.serialize_field("outcome", &self.outcome)?;
        s.serialize_field("subset", &subset)?;
        s.serialize_field("dimension", &self.dimension())?;
        s.serialize_field("mu_prime", &self.reduced.as_ref().map(|p| p.mu().matrix()))?;
        s.serialize_field("b_prime", &self.reduced.as_ref().map(|p| p.b().matrix()))?;
        s.serialize_field("trace", &self.trace)?;
        s.end()
    }
}

struct Reducer<'a> {
    p: &'a Presentation,
    alive: Vec<usize>,
    extra: Vec<Relation>,
    trace: Vec<ReductionStep>,
}

enum Step {
    Continue,
    Trivial,
}

impl<'a> Reducer<'a> {
    fn relations(&self) -> Vec<(String, Relation)> {
        let sub = self.p.restrict(&self.alive);
        let mut out: Vec<(String, Relation)> = linear_consequences(&sub)
            .into_iter()
            .map(|c| {
                let idx: Vec<String> = c.indices.iter().map(|&i| (self.alive[i] + 1).to_string()).collect();
                let label = format!("{:?}({})", c.kind, idx.join(","));
                (label, c.coefficients.into_iter().map(|(g, v)| (self.alive[g], v)).collect())
            })
            .collect();
        out.extend(self.extra.iter().map(|r| ("derived".to_string(), r.clone())));
        out
    }

    fn trivial(&mut self, reason: String) -> Step {
        self.trace.push(ReductionStep::Trivial { reason });
        Step::Trivial
    }

    /// Case (i): `x_m = 0` in the algebra.
    fn vanish(&mut self, m: usize, source: String) -> Step {
        if let Some(&l) = self.alive.iter().find(|&&l| !self.p.b_at(m, l).is_zero()) {
            return self.trivial(format!(
                "x{} = 0 but B_{}{} = {} ≠ 0",
                m + 1,
                m + 1,
                l + 1,
                self.p.b_at(m, l)
            ));
        }
        self.alive.retain(|&g| g != m);
        for r in &mut self.extra {
            r.remove(&m);
        }
        self.extra.retain(|r| !r.is_empty());
        self.trace.push(ReductionStep::Vanish { generator: m + 1, source });
        Step::Continue
    }

    fn step(&mut self) -> Result<Option<Step>> {
        let rels = self.relations();
        if rels.is_empty() {
            return Ok(None);
        }
        if let Some((label, r)) = rels.iter().find(|(_, r)| r.len() == 1) {
            let m = *r.keys().next().expect("one term");
            return Ok(Some(self.vanish(m, label.clone())));
        }
        let two: Vec<&Relation> = rels.iter().map(|(_, r)| r).filter(|r| r.len() == 2).collect();
        if two.is_empty() {
            return Err(Error::internal(
                "only three-term linear consequences remain; this configuration cannot occur",
            ));
        }

        // Component of the first two-term relation, scalings relative to its least member.
        let mut adj: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for r in &two {
            let mut it = r.iter();
            let (u, cu) = it.next().expect("two terms");
            let (v, cv) = it.next().expect("two terms");
            // cu x_u + cv x_v = 0
            adj.entry(*u).or_default().push((*v, -(cu / cv)));
            adj.entry(*v).or_default().push((*u, -(cv / cu)));
        }
        let start = *two[0].keys().next().expect("nonempty");
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        comp.insert(start);
        while let Some(u) = queue.pop_front() {
            for (v, _) in adj.get(&u).into_iter().flatten() {
                if comp.insert(*v) {
                    queue.push_back(*v);
                }
            }
        }
        let root = *comp.iter().next().expect("nonempty");
        let mut lambda: BTreeMap<usize, Scalar> = BTreeMap::from([(root, Scalar::one())]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let lu = lambda[&u].clone();
            for (v, f) in adj.get(&u).into_iter().flatten() {
                // x_v = f x_u
                let lv = f * &lu;
                match lambda.get(v) {
                    None => {
                        lambda.insert(*v, lv);
                        queue.push_back(*v);
                    }
                    Some(old) if *old != lv => {
                        let source = format!("x{} has two different multiples of x{}", v + 1, root + 1);
                        return Ok(Some(self.vanish(root, source)));
                    }
                    Some(_) => {}
                }
            }
        }

        let two_i = Scalar::from_int(2);
        let b = |i: usize, j: usize| self.p.b_at(i, j).clone();
        let mu = |i: usize, j: usize| self.p.mu_at(i, j).clone();
        for (&a, la) in &lambda {
            for (&c, lc) in &lambda {
                let lhs = la * lc * (Scalar::one() + mu(a, c)) * b(root, root);
                if lhs != &two_i * &b(a, c) {
                    let reason = format!(
                        "x{} = {}·x{} and x{} = {}·x{} force 2B_{}{} = {}, but B_{}{} = {}",
                        a + 1, la, root + 1, c + 1, lc, root + 1, a + 1, c + 1, lhs, a + 1, c + 1, b(a, c)
                    );
                    return Ok(Some(self.trivial(reason)));
                }
            }
        }
        let outside: Vec<usize> = self.alive.iter().copied().filter(|g| !comp.contains(g)).collect();
        for &l in &outside {
            for (&a, la) in lambda.iter().filter(|(&a, _)| a != root) {
                if mu(a, l) == mu(root, l) {
                    if b(a, l) != la * &b(root, l) {
                        let reason = format!(
                            "x{} = {}·x{} forces B_{}{} = {}, but it is {}",
                            a + 1, la, root + 1, a + 1, l + 1, la * &b(root, l), b(a, l)
                        );
                        return Ok(Some(self.trivial(reason)));
                    }
                    continue;
                }
                // x_l x_r = c and x_r x_l = d, then the cubic overlaps in x_r, x_l.
                let c = &two_i * &(b(a, l) - la * &b(root, l)) / (la * &(mu(a, l) - mu(root, l)));
                let d = &two_i * &b(root, l) - mu(root, l) * &c;
                let pair = |cl: Scalar, cr: Scalar| -> Relation {
                    [(l, cl), (root, cr)].into_iter().filter(|(_, v)| !v.is_zero()).collect()
                };
                let derived: Vec<Relation> = vec![
                    pair(b(root, root), -&c),
                    pair(-&c, b(l, l)),
                    pair(Scalar::zero(), &d - &c),
                    pair(&c - &d, Scalar::zero()),
                    pair(b(root, root), -&d),
                    pair(d.clone(), -b(l, l)),
                ]
                .into_iter()
                .filter(|r| !r.is_empty())
                .collect();
                if derived.is_empty() {
                    let reason = format!(
                        "x{} = {}·x{} with μ_{}{} ≠ μ_{}{} is inconsistent",
                        a + 1, la, root + 1, a + 1, l + 1, root + 1, l + 1
                    );
                    return Ok(Some(self.trivial(reason)));
                }
                self.trace.push(ReductionStep::Derived {
                    generator: a + 1,
                    root: root + 1,
                    other: l + 1,
                    relations: derived.iter().map(one_based).collect(),
                });
                self.extra.extend(derived);
                return Ok(Some(Step::Continue));
            }
        }

        // Case (ii): every x_a with a ≠ root is redundant.
        let removed: Vec<(usize, Scalar)> =
            lambda.iter().filter(|(&a, _)| a != root).map(|(&a, l)| (a, l.clone())).collect();
        for r in &mut self.extra {
            for (a, la) in &removed {
                if let Some(c) = r.remove(a) {
                    let e = r.entry(root).or_insert_with(Scalar::zero);
                    *e += &(&c * la);
                }
            }
            r.retain(|_, v| !v.is_zero());
        }
        self.extra.retain(|r| !r.is_empty());
        self.alive.retain(|g| !lambda.contains_key(g) || *g == root);
        self.trace.push(ReductionStep::Proportional {
            root: root + 1,
            removed: removed.into_iter().map(|(a, l)| (a + 1, l)).collect(),
        });
        Ok(Some(Step::Continue))
    }
}

/// Finds a subset of generators on which the algebra is again a skew
/// Clifford algebra satisfying ★, or shows the algebra is zero. Single-term
/// consequences are handled before proportionalities; ties go to the
/// smallest `(kind, indices)`.
pub fn reduce_presentation(p: &Presentation) -> Result<ReductionResult> {
    let n = p.n();
    let mut r = Reducer { p, alive: (0..n).collect(), extra: Vec::new(), trace: Vec::new() };
    let budget = 4 * n * n + 8;
    for _ in 0..budget {
        match r.step()? {
            Some(Step::Continue) => {}
            Some(Step::Trivial) => {
                return Ok(ReductionResult {
                    outcome: ReductionOutcome::Trivial,
                    subset: Vec::new(),
                    reduced: None,
                    trace: r.trace,
                })
            }
            None => {
                let reduced = p.restrict(&r.alive);
                if !star_condition(&reduced).holds {
                    return Err(Error::internal("reduced presentation violates ★"));
                }
                return Ok(ReductionResult {
                    outcome: ReductionOutcome::Reduced,
                    subset: r.alive,
                    reduced: Some(reduced),
                    trace: r.trace,
                });
            }
        }
    }
    Err(Error::internal(format!("reduction did not settle within {budget} steps")))
}

/// Monomial `z_1^{e_1}···z_n^{e_n}` of the skew polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SkewPolyMonomial {
    pub exponents: Vec<u32>,
}

impl SkewPolyMonomial {
    fn letters(&self) -> Vec<usize> {
        self.exponents.iter().enumerate().flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize)).collect()
    }
}

/// Sorts `word` into ascending order in the skew polynomial ring dual to
/// `Λ_μ(V)`, using `z_k z_i = μ_ik z_i z_k`. With this rule
/// `z_k (z_i z_j) = μ_ik μ_jk (z_i z_j) z_k`.
pub fn skew_poly_normal_form(mu: &MuMatrix, word: &Word) -> (Scalar, SkewPolyMonomial) {
    let letters = word.letters();
    let mut scalar = Scalar::one();
    for (p, &a) in letters.iter().enumerate() {
        for &b in &letters[p + 1..] {
            if a > b {
                scalar = scalar * mu.get(b, a);
            }
        }
    }
    let mut exponents = vec![0u32; mu.n()];
    for &g in letters {
        exponents[g] += 1;
    }
    (scalar, SkewPolyMonomial { exponents })
}

/// Element of the skew polynomial ring in normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SkewPoly {
    pub terms: BTreeMap<SkewPolyMonomial, Scalar>,
}

impl SkewPoly {
    fn add_word(&mut self, mu: &MuMatrix, word: &Word, c: &Scalar) {
        let (s, m) = skew_poly_normal_form(mu, word);
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e += &(&s * c);
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Serialize for SkewPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponents: &'a [u32],
            coeff: &'a Scalar,
        }
        serializer.collect_seq(self.terms.iter().map(|(m, c)| Term { exponents: &m.exponents, coeff: c }))
    }
}

/// `q = Σ B_ij z_i z_j` in normal form.
pub fn q_element(p: &Presentation) -> SkewPoly {
    let mut q = SkewPoly::default();
    for i in 0..p.n() {
        for j in 0..p.n() {
            q.add_word(p.mu(), &Word::from_letters(vec![i, j]), p.b_at(i, j));
        }
    }
    q
}

#[derive(Debug, Clone, Serialize)]
pub struct NonCentral {
    /// 1-based.
    pub generator: usize,
    /// `z_k q − q z_k`.
    pub commutator: SkewPoly,
}

fn q_commutators(p: &Presentation) -> Vec<NonCentral> {
    let q = q_element(p);
    let mut out = Vec::new();
    for k in 0..p.n() {
        let mut comm = SkewPoly::default();
        for (m, c) in &q.terms {
            let letters = m.letters();
            let mut left = vec![k];
            left.extend(&letters);
            let mut right = letters;
            right.push(k);
            comm.add_word(p.mu(), &Word::from_letters(left), c);
            comm.add_word(p.mu(), &Word::from_letters(right), &-c);
        }
        if !comm.is_zero() {
            out.push(NonCentral { generator: k + 1, commutator: comm });
        }
    }
    out
}

pub fn q_central(p: &Presentation) -> bool {
    q_commutators(p).is_empty()
}

#[derive(Debug, Clone, Serialize)]
pub struct TfaeWitnesses {
    pub trivial: bool,
    pub linear_rules: Vec<RewriteRule>,
    pub consequences: Vec<LinearConsequence>,
    pub noncentral: Vec<NonCentral>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TfaeReport {
    pub g_injective: bool,
    pub full_dimension: bool,
    pub coefficients_vanish: bool,
    pub q_central: bool,
    pub dimension: usize,
    pub witnesses: TfaeWitnesses,
}

/// Evaluates the four full-dimension criteria independently. Disagreement
/// means an engine bug and is reported as an internal error.
pub fn tfae(p: &Presentation) -> Result<TfaeReport> {
    let alg = SkewClifford::new(p)?;
    let linear_rules = alg.system().linear_rules();
    let consequences = linear_consequences(p);
    let noncentral = q_commutators(p);
    let report = TfaeReport {
        g_injective: !alg.is_trivial() && linear_rules.is_empty(),
        full_dimension: alg.dimension() == 1 << p.n(),
        coefficients_vanish: consequences.is_empty(),
        q_central: noncentral.is_empty(),
        dimension: alg.dimension(),
        witnesses: TfaeWitnesses { trivial: alg.is_trivial(), linear_rules, consequences, noncentral },
    };
    let v = [report.g_injective, report.full_dimension, report.coefficients_vanish, report.q_central];
    if v.iter().any(|&b| b != v[0]) {
        return Err(Error::internal(format!(
            "criteria disagree: injective={}, full={}, vanish={}, central={}",
            v[0], v[1], v[2], v[3]
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub holds: bool,
    pub subset_size: usize,
    /// Filtered profile `F_0..F_d` from the rewriting engine.
    pub profile: Vec<usize>,
    /// Partial sums of `C(|subset|, k)`.
    pub expected: Vec<usize>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Compares the engine's filtration profile with that of the quantum
/// exterior algebra on the reduced generator set.
pub fn pbw_check(p: &Presentation, d: usize) -> Result<PbwReport> {
    let red = reduce_presentation(p)?;
    if red.outcome == ReductionOutcome::Trivial {
        return Err(Error::precondition("the algebra is trivial; there is no filtration to compare"));
    }
    let profile = SkewClifford::new(p)?.filtered_dimension_profile(d)?;
    let j = red.subset.len();
    let expected: Vec<usize> = (0..=d).scan(0, |acc, k| {
        *acc += binomial(j, k);
        Some(*acc)
    }).collect();
    Ok(PbwReport { holds: profile == expected, subset_size: j, profile, expected })
}

/// Dimensions of the even and odd parts under `deg x_i = 1 (mod 2)`.
pub fn z2_dimensions(p: &Presentation) -> Result<(usize, usize)> {
    let alg = SkewClifford::new(p)?;
    let basis = alg.basis()?;
    let even = basis.iter().filter(|w| w.len() % 2 == 0).count();
    Ok((even, basis.len() - even))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rewrite::dimension;
    use crate::scalar::Matrix;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn w(letters: &[usize]) -> Word {
        Word::from_letters(letters.iter().map(|l| l - 1).collect())
    }

    #[test]
    fn reduce_fixture_examples() {
        let r = reduce_presentation(&fixtures::zerodim()).unwrap();
        assert_eq!(r.outcome, ReductionOutcome::Trivial);
        assert_eq!(r.dimension(), 0);

        let r = reduce_presentation(&fixtures::between_ex2()).unwrap();
        assert_eq!(r.outcome, ReductionOutcome::Reduced);
        assert_eq!(r.subset, vec![1]);
        assert_eq!(r.dimension(), 2);

        let p = fixtures::inbetweenex1(s(2), s(1), s(1), s(1), s(1), s(1));
        let r = reduce_presentation(&p).unwrap();
        assert_eq!(r.subset.len(), 3);
        assert_eq!(r.dimension(), 8);

        let p = fixtures::inbetweenex1(s(2), s(2), s(1), s(1), s(1), s(1));
        assert_eq!(reduce_presentation(&p).unwrap().dimension(), 4);
    }

    #[test]
    fn tfae_fixture_examples() {
        let t = tfae(&fixtures::fdex1(s(2), s(1))).unwrap();
        assert!(t.g_injective && t.full_dimension && t.coefficients_vanish && t.q_central);
        for p in [fixtures::zerodim(), fixtures::between_ex2()] {
            let t = tfae(&p).unwrap();
            assert!(!t.g_injective && !t.full_dimension && !t.coefficients_vanish && !t.q_central);
        }
        assert_eq!(tfae(&fixtures::between_ex2()).unwrap().dimension, 2);
    }

    #[test]
    fn skew_sorting() {
        let a = s(3);
        let mu = fixtures::mu_from_upper(2, std::slice::from_ref(&a));
        let mu = MuMatrix::new(mu).unwrap();
        assert_eq!(skew_poly_normal_form(&mu, &w(&[1, 2])).0, s(1));
        let (c, m) = skew_poly_normal_form(&mu, &w(&[2, 1]));
        assert_eq!((c, m.exponents), (a.clone(), vec![1, 1]));
        let (c, m) = skew_poly_normal_form(&mu, &w(&[2, 1, 1]));
        assert_eq!((c, m.exponents), (a.square(), vec![2, 1]));
    }

    #[test]
    fn q_examples() {
        let zero_b = fixtures::fdex2(fixtures::mu_from_upper(2, &[s(2)])).unwrap();
        assert!(q_central(&zero_b));
        assert!(q_element(&zero_b).is_zero());

        let q = q_element(&fixtures::zerodim());
        let m = SkewPolyMonomial { exponents: vec![1, 1] };
        assert_eq!(q.terms.get(&m), Some(&s(2)));
        assert_eq!(q.terms.len(), 1);
        assert!(!q_central(&fixtures::zerodim()));
        assert!(q_central(&fixtures::fdex1(s(2), s(1))));
    }

    #[test]
    fn pbw_examples() {
        let r = pbw_check(&fixtures::fdex1(s(2), s(1)), 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.profile, vec![1, 4, 7, 8]);
        let r = pbw_check(&fixtures::between_ex2(), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.expected, vec![1, 2, 2]);
        let ext = fixtures::fdex2(fixtures::mu_from_upper(3, &[s(2), s(-1), s(5)])).unwrap();
        assert!(pbw_check(&ext, 3).unwrap().holds);
        assert!(matches!(pbw_check(&fixtures::zerodim(), 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn z2_examples() {
        assert_eq!(z2_dimensions(&fixtures::fdex1(s(2), s(1))).unwrap(), (4, 4));
        assert_eq!(z2_dimensions(&fixtures::between_ex2()).unwrap(), (1, 1));
        let one = Presentation::new(Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(z2_dimensions(&one).unwrap(), (1, 1));
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        let mu_vals = prop_oneof![Just(s(1)), Just(s(-1)), Just(s(2)), Just(Scalar::new(1, 2).unwrap())];
        (1usize..=4)
            .prop_flat_map(move |n| {
                (Just(n), proptest::collection::vec(mu_vals.clone(), n * (n - 1) / 2), proptest::collection::vec(-2i64..=2, n * n))
            })
            .prop_map(|(n, upper, raw)| {
                let mu = fixtures::mu_from_upper(n, &upper);
                let mut b = Matrix::zeros(n, n);
                for i in 0..n {
                    b.set(i, i, s(raw[i * n + i]));
                    for j in i + 1..n {
                        let v = s(raw[i * n + j]);
                        b.set(j, i, mu.get(j, i) * &v);
                        b.set(i, j, v);
                    }
                }
                Presentation::new(mu, b).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn reduction_agrees_with_rewriting(p in arb_presentation()) {
            prop_assert_eq!(reduce_presentation(&p).unwrap().dimension(), dimension(&p).unwrap());
        }

        #[test]
        fn tfae_never_disagrees(p in arb_presentation()) {
            prop_assert!(tfae(&p).is_ok());
        }

        #[test]
        fn q_central_matches_star(p in arb_presentation()) {
            prop_assert_eq!(q_central(&p), p.star_condition().holds);
        }

        #[test]
        fn sorting_is_idempotent(p in arb_presentation(), letters in proptest::collection::vec(0usize..4, 0..6)) {
            let n = p.n();
            let word = Word::from_letters(letters.into_iter().map(|g| g % n).collect());
            let (c, m) = skew_poly_normal_form(p.mu(), &word);
            prop_assert!(!c.is_zero());
            let (c2, m2) = skew_poly_normal_form(p.mu(), &Word::from_letters(m.letters()));
            prop_assert!(c2.is_one());
            prop_assert_eq!(m, m2);
        }
    }
}
