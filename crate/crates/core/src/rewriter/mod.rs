//! Free-group words, relator solving, and mechanical replay of the
//! closed-form rewriting lemmas for cycle-form presentations.

mod lemmas;
mod subst;
mod word;

use thiserror::Error;

pub use lemmas::{
    alias_system, left_system, right_system, verify_cycle_lemmas, verify_lemma_left,
    verify_lemma_right, verify_lemma_x, verify_lemma_y, verify_product_relation, Agreement,
    CycleLemmas, LemmaTranscript, ProofStep, SideWords, Solved,
};
pub use subst::{
    quotient, solve_relation, substitute_one, EliminationStep, EliminationSystem, Eliminator,
    SubstitutionRule,
};
pub use word::{from_syllable_list, to_syllable_list, FreeWord, Letter, SyllableList, WordDisplay};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("replacement for generator {gen} mentions it")]
    SelfReferential { gen: usize },
    #[error("generator {gen} does not occur in the relator")]
    GeneratorAbsent { gen: usize },
    #[error("generator {gen} occurs {count} times in the relator")]
    MultipleOccurrences { gen: usize, count: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0:?} is already known")]
    AlreadyEliminated(String),
    #[error("no relator with index {0}")]
    NoSuchRelator(usize),
    #[error("eliminating {target} uses {uses}, which is not yet expressed over the base")]
    OrderViolation { target: String, uses: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
