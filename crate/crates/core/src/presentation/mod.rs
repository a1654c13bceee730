//! Finitely presented groups: words, relators, presentations, and the
//! derivation of a closed manifold's fundamental group from a blackboard
//! framed link diagram.

mod derive;
mod text;
pub mod tietze;
mod word;

use std::collections::HashSet;

use thiserror::Error;

pub use derive::{filling_relators, fundamental_group, transition_generators, wirtinger, Transition};
pub use text::{parse_presentation, serialize, Dialect, ParseError};
pub use tietze::{tietze_simplify, DEFAULT_TIETZE_BUDGET};
pub use word::{Letter, Word};

/// Where a presentation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Link exterior only: one generator per arc, one relator per crossing.
    Wirtinger,
    /// Closed manifold: Wirtinger data plus transition generators and
    /// filling relators.
    Filled,
    Simplified,
    Parsed,
}

/// A relator, optionally kept in the equation form `lhs = rhs` it was
/// written in. As a group element it is `lhs * rhs^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relator {
    pub lhs: Word,
    pub rhs: Option<Word>,
}

impl Relator {
    pub fn word(w: Word) -> Self {
        Relator { lhs: w, rhs: None }
    }

    pub fn equation(lhs: Word, rhs: Word) -> Self {
        Relator { lhs, rhs: Some(rhs) }
    }

    /// The relator as a single word, `lhs * rhs^-1`, unreduced.
    pub fn as_word(&self) -> Word {
        match &self.rhs {
            None => self.lhs.clone(),
            Some(r) => self.lhs.concat(&r.inverse()),
        }
    }

    fn max_generator(&self) -> Option<usize> {
        let rhs = self.rhs.iter().flat_map(|w| w.letters());
        self.lhs.letters().iter().chain(rhs).map(|l| l.generator()).max()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses generator index {index}, but only {count} generators exist")]
    UnknownGenerator {
        relator: usize,
        index: usize,
        count: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Relator>,
    provenance: Provenance,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Relator>,
        provenance: Provenance,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(PresentationError::UnknownGenerator {
                        relator: i,
                        index: m,
                        count: generators.len(),
                    });
                }
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
            provenance,
        })
    }

    /// Presentation with plain word relators.
    pub fn from_words(
        generators: Vec<String>,
        relators: Vec<Word>,
        provenance: Provenance,
    ) -> Result<Self, PresentationError> {
        Self::new(
            generators,
            relators.into_iter().map(Relator::word).collect(),
            provenance,
        )
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Every relator as a single word `lhs * rhs^-1`.
    pub fn relator_words(&self) -> Vec<Word> {
        self.relators.iter().map(Relator::as_word).collect()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.as_word().len()).sum()
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }
}
