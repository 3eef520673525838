//! Identification over acyclic causal graphs: paths, d-separation, adjustment
//! criteria, do-calculus rules and estimands.

mod adjust;
mod dag;
mod docalc;
mod dsep;
mod estimand;
mod identify;
mod paths;

pub use adjust::{
    backdoor_sets, find_instruments, frontdoor_check, frontdoor_check_bounded, is_instrument, latent_confounders,
    satisfies_backdoor, satisfies_frontdoor, AdjustmentSet, DEFAULT_MAX_ADJUSTMENT_SIZE,
};
pub use dag::Dag;
pub use docalc::{do_rule_applicable, DoRule};
pub use dsep::{d_separated, d_separated_sets};
pub use estimand::{DerivationStep, Estimand, Expr, Strategy, Var};
pub use identify::{backdoor_expr, frontdoor_expr, identify_effect, identify_effect_bounded, DO_SEARCH_DEPTH};
pub use paths::{enumerate_paths, path_blocked, Path};

use alloc::vec::Vec;

use thiserror::Error;

use crate::term::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferenceError {
    #[error("unknown variable {0}")]
    UnknownVariable(Iri),
    #[error("graph has a cycle through {0:?}")]
    CyclicGraph(Vec<Iri>),
    #[error("variable sets must be disjoint")]
    OverlappingSets,
}

impl InferenceError {
    pub fn code(&self) -> &'static str {
        match self {
            InferenceError::UnknownVariable(_) => "UNKNOWN_VARIABLE",
            InferenceError::CyclicGraph(_) => "CYCLIC_GRAPH",
            InferenceError::OverlappingSets => "OVERLAPPING_SETS",
        }
    }
}
