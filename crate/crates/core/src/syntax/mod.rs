//! Types, terms and substitution.

pub mod subst;
pub mod term;
pub mod types;

use thiserror::Error;

pub use subst::{vsubst, vsubst_plain, Blocked, NoSideConditions, SideConditions, Substituted};
pub use term::{alpha_equivalent, fresh_variant, Term, TermKind, Var};
pub use types::{HolType, TypeSubst};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("hole outside of a quotation")]
    HoleOutsideQuotation,
    #[error("term is not eval-free: {0}")]
    NotEvalFree(String),
    #[error("term contains a hole: {0}")]
    ContainsHole(String),
    #[error("not a variable: {0}")]
    NotAVariable(String),
    #[error("substitution blocked: {0:?}")]
    SubstitutionBlocked(Box<Blocked>),
}
