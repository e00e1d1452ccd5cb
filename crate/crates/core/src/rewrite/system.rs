use std::collections::BTreeMap;

use serde::Serialize;

use super::element::{Element, Word};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::scalar::Scalar;

/// Hard cap on the number of generators the rewriting engine accepts.
pub const MAX_GENERATORS: usize = 24;

/// Upper bound on processed critical pairs before completion gives up.
const COMPLETION_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemStatus {
    /// Built from the defining relations, not yet completed.
    Pending,
    /// Every ambiguity resolves; irreducible words form a basis.
    Confluent,
    /// A relation `c·1 = 0` with `c ≠ 0` was derived.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteRule {
    pub head: Word,
    pub body: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum CompletionEvent {
    /// A new rule obtained from the relation attached to `source`.
    Added { source: Word, head: Word, body: Element },
    /// A rule whose head became reducible; its relation was requeued.
    Retired { head: Word },
    Trivial { source: Word, constant: Scalar },
}

/// An overlap word with its two one-step reductions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub word: Word,
    pub left: Element,
    pub right: Element,
}

/// Rewriting system for `T(V)/⟨relations⟩` under the degree-lex order
/// with `x_1 < … < x_n`.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    n: usize,
    rules: BTreeMap<Word, Element>,
    head_lengths: Vec<usize>,
    status: SystemStatus,
    trace: Vec<CompletionEvent>,
}

/// Rules `x_i x_i → B_ii` and, for `j > i`, `x_j x_i → 2B_ji − μ_ji x_i x_j`.
pub fn initial_system(p: &Presentation) -> Result<RewriteSystem> {
    let n = p.n();
    if n > MAX_GENERATORS {
        return Err(Error::precondition(format!(
            "{n} generators exceeds the rewriting engine cap of {MAX_GENERATORS}"
        )));
    }
    let mut rules = BTreeMap::new();
    for i in 0..n {
        rules.insert(Word::from_letters(vec![i, i]), Element::scalar(p.b_at(i, i).clone()));
        for j in i + 1..n {
            let mut body = Element::scalar(Scalar::from_int(2) * p.b_at(j, i));
            body.add_term(Word::from_letters(vec![i, j]), &-p.mu_at(j, i));
            rules.insert(Word::from_letters(vec![j, i]), body);
        }
    }
    let mut sys = RewriteSystem { n, rules, head_lengths: Vec::new(), status: SystemStatus::Pending, trace: Vec::new() };
    sys.refresh_head_lengths();
    Ok(sys)
}

impl RewriteSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn status(&self) -> SystemStatus {
        self.status
    }

    pub fn trace(&self) -> &[CompletionEvent] {
        &self.trace
    }

    pub fn rules(&self) -> impl Iterator<Item = RewriteRule> + '_ {
        self.rules.iter().map(|(h, b)| RewriteRule { head: h.clone(), body: b.clone() })
    }

    pub fn rule_for(&self, head: &Word) -> Option<&Element> {
        self.rules.get(head)
    }

    /// Rules whose head is a single generator: `x_m → lower terms`.
    pub fn linear_rules(&self) -> Vec<RewriteRule> {
        self.rules().filter(|r| r.head.len() == 1).collect()
    }

    pub fn quadratic_rules(&self) -> Vec<RewriteRule> {
        self.rules().filter(|r| r.head.len() == 2).collect()
    }

    /// Generators that are not the head of a linear rule.
    pub fn surviving_generators(&self) -> Vec<usize> {
        (0..self.n).filter(|&g| !self.rules.contains_key(&Word::letter(g))).collect()
    }

    fn refresh_head_lengths(&mut self) {
        let mut v: Vec<usize> = self.rules.keys().map(Word::len).collect();
        v.sort_unstable();
        v.dedup();
        self.head_lengths = v;
    }

    /// Leftmost occurrence of a rule head in `w`.
    fn find_redex(&self, w: &Word) -> Option<(usize, &Word, &Element)> {
        let letters = w.letters();
        for start in 0..letters.len() {
            for &len in &self.head_lengths {
                if start + len > letters.len() {
                    break;
                }
                let probe = Word::from_letters(letters[start..start + len].to_vec());
                if let Some((h, b)) = self.rules.get_key_value(&probe) {
                    return Some((start, h, b));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Rewrites until no rule applies. Terminates because every rule
    /// strictly decreases words in a well-order; the result is unique only
    /// once the system is confluent.
    pub fn reduce(&self, e: &Element) -> Element {
        let mut pending = e.clone();
        let mut out = Element::zero();
        while let Some((w, c)) = pending.pop_leading() {
            match self.find_redex(&w) {
                None => out.add_term(w, &c),
                Some((pos, head, body)) => {
                    let left = w.slice(0, pos);
                    let right = w.slice(pos + head.len(), w.len());
                    for (bw, bc) in body.terms() {
                        pending.add_term(left.concat(bw).concat(&right), &(&c * bc));
                    }
                }
            }
        }
        out
    }

    fn check_letters(&self, e: &Element) -> Result<()> {
        match e.terms().flat_map(|(w, _)| w.letters().iter().copied()).find(|&g| g >= self.n) {
            Some(g) => Err(Error::Input(format!("generator x{} out of range 1..={}", g + 1, self.n))),
            None => Ok(()),
        }
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        match self.status {
            SystemStatus::Confluent => {
                self.check_letters(e)?;
                Ok(self.reduce(e))
            }
            SystemStatus::Trivial => {
                Err(Error::precondition("normal forms are undefined in the zero algebra"))
            }
            SystemStatus::Pending => Err(Error::precondition("rewrite system has not been completed")),
        }
    }

    /// All overlap and inclusion ambiguities between current rules.
    pub fn ambiguities(&self) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        for (u, a) in &self.rules {
            for (v, b) in &self.rules {
                out.extend(overlaps(u, a, v, b));
                if u != v && u.len() > v.len() {
                    if let Some(pos) = u.find(v) {
                        let left = a.clone();
                        let right = b.sandwich(&u.slice(0, pos), &u.slice(pos + v.len(), u.len()));
                        out.push(Ambiguity { word: u.clone(), left, right });
                    }
                }
            }
        }
        out.sort_by(|x, y| x.word.cmp(&y.word));
        out
    }

    /// Ambiguities whose two sides reduce to different normal forms.
    pub fn unresolved_ambiguities(&self) -> Vec<Ambiguity> {
        self.ambiguities().into_iter().filter(|a| self.reduce(&a.left) != self.reduce(&a.right)).collect()
    }

    /// Diamond-Lemma completion. Critical pairs are processed in
    /// ascending order of their overlap word.
    pub fn complete(mut self) -> Result<RewriteSystem> {
        if self.status != SystemStatus::Pending {
            return Ok(self);
        }
        let mut queue = Queue::default();
        for amb in self.ambiguities() {
            queue.push(amb.word, amb.left.sub(&amb.right));
        }
        let mut steps = 0usize;
        loop {
            while let Some((source, rel)) = queue.pop() {
                steps += 1;
                if steps > COMPLETION_BUDGET {
                    return Err(Error::internal(format!("completion exceeded {COMPLETION_BUDGET} critical pairs")));
                }
                let r = self.reduce(&rel);
                if r.is_zero() {
                    continue;
                }
                if let Some(constant) = r.as_constant() {
                    self.trace.push(CompletionEvent::Trivial { source, constant });
                    self.status = SystemStatus::Trivial;
                    return Ok(self);
                }
                self.adjoin(source, r, &mut queue);
            }
            // Guard against pairs resolved with rules that were retired later.
            let left = self.unresolved_ambiguities();
            if left.is_empty() {
                break;
            }
            for amb in left {
                queue.push(amb.word, amb.left.sub(&amb.right));
            }
        }
        self.status = SystemStatus::Confluent;
        Ok(self)
    }

    fn adjoin(&mut self, source: Word, r: Element, queue: &mut Queue) {
        let (lead, lc) = r.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
        let inv = lc.inv().expect("nonzero lead");
        let mut body = r.scale(&-inv);
        body.add_term(lead.clone(), &Scalar::one());

        let retired: Vec<Word> = self.rules.keys().filter(|h| h.contains(&lead)).cloned().collect();
        for h in retired {
            let b = self.rules.remove(&h).expect("present");
            queue.push(h.clone(), Element::word(h.clone()).sub(&b));
            self.trace.push(CompletionEvent::Retired { head: h });
        }
        self.rules.insert(lead.clone(), body.clone());
        self.refresh_head_lengths();
        let heads: Vec<Word> = self.rules.keys().cloned().collect();
        for h in heads {
            let b = self.rules[&h].clone();
            let reduced = self.reduce(&b);
            self.rules.insert(h, reduced);
        }
        self.trace.push(CompletionEvent::Added { source, head: lead.clone(), body: self.rules[&lead].clone() });

        let new_body = self.rules[&lead].clone();
        let others: Vec<(Word, Element)> = self.rules.iter().map(|(h, b)| (h.clone(), b.clone())).collect();
        for (h, b) in &others {
            for amb in overlaps(&lead, &new_body, h, b) {
                queue.push(amb.word, amb.left.sub(&amb.right));
            }
            if h != &lead {
                for amb in overlaps(h, b, &lead, &new_body) {
                    queue.push(amb.word, amb.left.sub(&amb.right));
                }
            }
        }
    }

    /// Irreducible words, in degree-lex order. Only meaningful for a
    /// confluent system.
    pub fn basis(&self) -> Result<Vec<Word>> {
        match self.status {
            SystemStatus::Confluent => {}
            SystemStatus::Trivial => {
                return Err(Error::precondition("the algebra is trivial (dimension 0) and has an empty basis"))
            }
            SystemStatus::Pending => return Err(Error::precondition("rewrite system has not been completed")),
        }
        let cap = 1usize << self.n;
        let mut all = vec![Word::unit()];
        let mut level = vec![Word::unit()];
        while !level.is_empty() {
            let mut next = Vec::new();
            for w in &level {
                for g in 0..self.n {
                    let ext = w.concat(&Word::letter(g));
                    // w is irreducible, so only suffixes of ext can match a head.
                    let reducible = self.head_lengths.iter().any(|&len| {
                        len <= ext.len() && self.rules.contains_key(&ext.slice(ext.len() - len, ext.len()))
                    });
                    if !reducible {
                        next.push(ext);
                    }
                }
            }
            all.extend(next.iter().cloned());
            if all.len() > cap {
                return Err(Error::internal(format!("more than 2^{} irreducible words", self.n)));
            }
            level = next;
        }
        Ok(all)
    }
}

/// Overlaps where a proper suffix of `u` is a proper prefix of `v`.
fn overlaps(u: &Word, a: &Element, v: &Word, b: &Element) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    let max = u.len().min(v.len());
    for k in 1..max {
        if u.slice(u.len() - k, u.len()) == v.slice(0, k) {
            let tail = v.slice(k, v.len());
            let head = u.slice(0, u.len() - k);
            out.push(Ambiguity {
                word: u.concat(&tail),
                left: a.sandwich(&Word::unit(), &tail),
                right: b.sandwich(&head, &Word::unit()),
            });
        }
    }
    out
}

#[derive(Default)]
struct Queue {
    items: BTreeMap<(Word, u64), Element>,
    seq: u64,
}

impl Queue {
    fn push(&mut self, source: Word, rel: Element) {
        if rel.is_zero() {
            return;
        }
        self.seq += 1;
        self.items.insert((source, self.seq), rel);
    }

    fn pop(&mut self) -> Option<(Word, Element)> {
        self.items.pop_first().map(|((w, _), e)| (w, e))
    }
}
