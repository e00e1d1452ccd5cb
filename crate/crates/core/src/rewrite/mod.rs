//! Rewriting over the tensor algebra and the finite-dimensional model of
//! `sCl(V, μ, φ)` built from a completed system.

mod element;
mod system;

pub use element::{Element, Word};
pub use system::{
    initial_system, Ambiguity, CompletionEvent, RewriteRule, RewriteSystem, SystemStatus, MAX_GENERATORS,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// A presentation together with its completed rewriting system.
#[derive(Debug, Clone)]
pub struct SkewClifford {
    presentation: Presentation,
    system: RewriteSystem,
    basis: Vec<Word>,
}

/// Outcome of re-checking every ambiguity of a completed system.
#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub failures: Vec<Ambiguity>,
}

impl SkewClifford {
    pub fn new(p: &Presentation) -> Result<Self> {
        let system = initial_system(p)?.complete()?;
        let basis = match system.status() {
            SystemStatus::Trivial => Vec::new(),
            _ => system.basis()?,
        };
        if system.status() == SystemStatus::Confluent {
            let expected = 1usize << (p.n() - system.linear_rules().len());
            if basis.len() != expected {
                return Err(Error::internal(format!(
                    "{} irreducible words but {} linear rules on {} generators",
                    basis.len(),
                    system.linear_rules().len(),
                    p.n()
                )));
            }
        }
        Ok(SkewClifford { presentation: p.clone(), system, basis })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn is_trivial(&self) -> bool {
        self.system.status() == SystemStatus::Trivial
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Result<&[Word]> {
        if self.is_trivial() {
            return Err(Error::precondition("the algebra is trivial (dimension 0) and has an empty basis"));
        }
        Ok(&self.basis)
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        self.system.normal_form(e)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.system.normal_form(&a.mul(b))
    }

    /// `F_k` = number of basis words of length at most `k`, for `k = 0..=d`.
    pub fn filtered_dimension_profile(&self, d: usize) -> Result<Vec<usize>> {
        let basis = self.basis()?;
        Ok((0..=d).map(|k| basis.iter().filter(|w| w.len() <= k).count()).collect())
    }

    pub fn verify_confluence(&self) -> ConfluenceReport {
        let all = self.system.ambiguities();
        let checked = all.len();
        let failures = all
            .into_iter()
            .filter(|a| self.system.reduce(&a.left) != self.system.reduce(&a.right))
            .collect();
        ConfluenceReport { checked, failures }
    }
}

pub fn dimension(p: &Presentation) -> Result<usize> {
    Ok(SkewClifford::new(p)?.dimension())
}

pub fn basis(p: &Presentation) -> Result<Vec<Word>> {
    SkewClifford::new(p)?.basis().map(<[Word]>::to_vec)
}

pub fn multiply(p: &Presentation, a: &Element, b: &Element) -> Result<Element> {
    SkewClifford::new(p)?.multiply(a, b)
}

pub fn filtered_dimension_profile(p: &Presentation, d: usize) -> Result<Vec<usize>> {
    SkewClifford::new(p)?.filtered_dimension_profile(d)
}
