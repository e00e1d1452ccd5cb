use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

/// A monomial of the free algebra: a sequence of 0-based generator
/// indices. The empty word is the unit.
///
/// Ordered degree-lexicographically: shorter words first, then
/// lexicographically with `x_1 < x_2 < …`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g])
    }

    pub fn from_letters(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Position of the first occurrence of `sub` in `self`.
    pub fn find(&self, sub: &Word) -> Option<usize> {
        if sub.len() > self.len() {
            return None;
        }
        (0..=self.len() - sub.len()).find(|&p| self.0[p..p + sub.len()] == sub.0[..])
    }

    pub fn contains(&self, sub: &Word) -> bool {
        self.find(sub).is_some()
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Strictly increasing letter sequence (square-free and sorted).
    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Weighted degree under a per-generator degree table.
    pub fn weight(&self, degrees: &[u32]) -> u32 {
        self.0.iter().map(|&g| degrees[g]).sum()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("x{}", g + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// 1-based on the wire.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<usize> = self.0.iter().map(|g| g + 1).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        if v.contains(&0) {
            return Err(serde::de::Error::custom("generator indices are 1-based"));
        }
        Ok(Word(v.into_iter().map(|g| g - 1).collect()))
    }
}

/// A finite linear combination of words with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::monomial(Word::unit(), c)
    }

    pub fn generator(g: usize) -> Self {
        Element::monomial(Word::letter(g), Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(w, &c);
        e
    }

    pub fn word(w: Word) -> Self {
        Element::monomial(w, Scalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word in the term order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    /// Maximum word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    /// The constant coefficient, if every term is a scalar multiple of 1.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    /// Product in the free algebra (concatenation of words).
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// `left · self · right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())).collect() }
    }

    pub fn commutator(&self, other: &Element) -> Element {
        self.mul(other).sub(&other.mul(self))
    }

    /// Replaces every generator by an element (generators without an
    /// entry are kept) and multiplies out.
    pub fn substitute(&self, images: &BTreeMap<usize, Element>) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut prod = Element::scalar(c.clone());
            for &g in w.letters() {
                let img = images.get(&g).cloned().unwrap_or_else(|| Element::generator(g));
                prod = prod.mul(&img);
            }
            out = out.add(&prod);
        }
        out
    }

    /// Every term has the same weight under `degrees`.
    pub fn homogeneous_weight(&self, degrees: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|w| w.weight(degrees));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Renders with custom generator names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, c) in self.terms.iter().rev() {
            let word: Vec<&str> = w.letters().iter().map(|&g| names[g].as_str()).collect();
            let body = word.join("*");
            let (neg, mag) = if c < &Scalar::zero() { (true, -c) } else { (false, c.clone()) };
            let term = match (body.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => body,
                (false, false) => format!("{mag}*{body}"),
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{term}") } else { term });
            } else {
                parts.push(format!("{} {term}", if neg { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.terms.keys().flat_map(|w| w.letters().iter().copied()).max().map_or(0, |m| m + 1);
        let names: Vec<String> = (0..n).map(|g| format!("x{}", g + 1)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Word,
    coeff: Scalar,
}

/// JSON array of `{"word": [1-based indices], "coeff": "p/q"}`, ascending
/// in the term order.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> =
            self.terms.iter().map(|(w, c)| TermJson { word: w.clone(), coeff: c.clone() }).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(deserializer)?;
        Ok(Element::from_terms(v.into_iter().map(|t| (t.word, t.coeff))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Word {
        Word::from_letters(v.to_vec())
    }

    #[test]
    fn deglex_order() {
        assert!(w(&[]) < w(&[0]));
        assert!(w(&[2]) < w(&[0, 0]));
        assert!(w(&[0, 1]) < w(&[1, 0]));
        assert!(w(&[1, 0]) < w(&[0, 0, 0]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut e = Element::generator(0);
        e.add_term(Word::letter(0), &Scalar::from_int(-1));
        assert!(e.is_zero());
        let x = Element::generator(0).add(&Element::one());
        let y = Element::generator(0).sub(&Element::one());
        assert_eq!(x.mul(&y), Element::from_terms([(w(&[0, 0]), Scalar::one()), (w(&[]), Scalar::from_int(-1))]));
    }

    #[test]
    fn json_is_one_based() {
        let e = Element::from_terms([(w(&[0, 2]), Scalar::new(1, 2).unwrap()), (w(&[]), Scalar::from_int(3))]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"[{"word":[],"coeff":"3"},{"word":[1,3],"coeff":"1/2"}]"#);
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Element>(r#"[{"word":[0],"coeff":"1"}]"#).is_err());
    }

    #[test]
    fn display() {
        let e = Element::from_terms([
            (w(&[0, 2]), Scalar::from_int(2)),
            (w(&[1]), Scalar::from_int(-1)),
            (w(&[]), Scalar::one()),
        ]);
        assert_eq!(e.to_string(), "2*x1*x3 - x2 + 1");
    }

    #[test]
    fn substitute_multiplies_out() {
        // x1 x2 with x2 -> 2 x1 + 1
        let e = Element::word(w(&[0, 1]));
        let images = BTreeMap::from([(1, Element::generator(0).scale(&Scalar::from_int(2)).add(&Element::one()))]);
        let out = e.substitute(&images);
        assert_eq!(out, Element::from_terms([(w(&[0, 0]), Scalar::from_int(2)), (w(&[0]), Scalar::one())]));
    }
}
