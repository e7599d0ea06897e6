//! Surface syntax: parsing, type elaboration and printing.
//!
//! Terms use the HOL Light QE notation: `Q_ t _Q` for quotation,
//! `H_ t _H` for a hole inside a quotation, `eval t to ty` for evaluation.

mod elab;
mod lexer;
mod parser;
mod printer;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::Kernel;
use crate::syntax::{HolType, Term};

pub use printer::print_type;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub start_line: usize,
    pub start_col: usize,
    pub end_line: usize,
    pub end_col: usize,
}

impl SourceSpan {
    pub fn new(
        file: &str,
        start_line: usize,
        start_col: usize,
        end_line: usize,
        end_col: usize,
    ) -> Self {
        SourceSpan {
            file: file.into(),
            start_line,
            start_col,
            end_line,
            end_col,
        }
    }

    /// The span from the start of `self` to the end of `other`.
    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            start_line: self.start_line,
            start_col: self.start_col,
            end_line: other.end_line,
            end_col: other.end_col,
        }
    }

    /// Moves the span by a line and column offset, for text embedded in a
    /// larger file. The column offset applies to the first line only.
    pub fn shifted(&self, file: &str, line: usize, col: usize) -> SourceSpan {
        let c = |l: usize, c: usize| if l == 1 { c + col } else { c };
        SourceSpan {
            file: file.into(),
            start_line: self.start_line + line,
            start_col: c(self.start_line, self.start_col),
            end_line: self.end_line + line,
            end_col: c(self.end_line, self.end_col),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)?;
        if (self.end_line, self.end_col) != (self.start_line, self.start_col) {
            write!(f, "-{}:{}", self.end_line, self.end_col)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FrontendError {
    #[error("{span}: parse error: {msg}")]
    Parse { span: SourceSpan, msg: String },
    #[error("{span}: {msg}")]
    Elaboration { span: SourceSpan, msg: String },
    #[error("{span}: hole outside of a quotation")]
    HoleOutsideQuotation { span: SourceSpan },
}

impl FrontendError {
    fn parse(span: SourceSpan, msg: impl Into<String>) -> Self {
        FrontendError::Parse {
            span,
            msg: msg.into(),
        }
    }

    fn elab(span: SourceSpan, msg: impl Into<String>) -> Self {
        FrontendError::Elaboration {
            span,
            msg: msg.into(),
        }
    }

    pub fn span(&self) -> &SourceSpan {
        match self {
            FrontendError::Parse { span, .. }
            | FrontendError::Elaboration { span, .. }
            | FrontendError::HoleOutsideQuotation { span } => span,
        }
    }

    /// The same error located inside a larger file.
    pub fn shifted(&self, file: &str, line: usize, col: usize) -> Self {
        let mut e = self.clone();
        match &mut e {
            FrontendError::Parse { span, .. }
            | FrontendError::Elaboration { span, .. }
            | FrontendError::HoleOutsideQuotation { span } => *span = span.shifted(file, line, col),
        }
        e
    }
}

/// The constants and type constructors terms are elaborated against.
pub trait Signature {
    fn constant_type(&self, name: &str) -> Option<HolType>;
    fn type_arity(&self, name: &str) -> Option<usize>;
}

impl Signature for Kernel {
    fn constant_type(&self, name: &str) -> Option<HolType> {
        Kernel::constant_type(self, name)
    }

    fn type_arity(&self, name: &str) -> Option<usize> {
        Kernel::type_arity(self, name)
    }
}

const INPUT: &str = "<input>";

pub fn parse_type(sig: &dyn Signature, text: &str) -> Result<HolType, FrontendError> {
    parse_type_in(sig, INPUT, text)
}

pub fn parse_type_in(
    sig: &dyn Signature,
    file: &str,
    text: &str,
) -> Result<HolType, FrontendError> {
    let mut p = parser::Parser::new(lexer::lex(file, text)?);
    let ty = p.parse_type()?;
    p.finish()?;
    check_type(sig, &ty, file)?;
    Ok(ty)
}

fn check_type(sig: &dyn Signature, ty: &HolType, file: &str) -> Result<(), FrontendError> {
    match ty {
        HolType::Var(_) => Ok(()),
        HolType::App(c, args) => {
            if sig.type_arity(c) != Some(args.len()) {
                return Err(FrontendError::elab(
                    SourceSpan::new(file, 1, 1, 1, 1),
                    format!("unknown type constructor {c} with {} arguments", args.len()),
                ));
            }
            args.iter().try_for_each(|a| check_type(sig, a, file))
        }
    }
}

pub fn parse_term(sig: &dyn Signature, text: &str) -> Result<Term, FrontendError> {
    parse_term_in(sig, INPUT, text, None)
}

/// Parses and elaborates a term, optionally at an expected type; `file`
/// names the source in error spans.
pub fn parse_term_in(
    sig: &dyn Signature,
    file: &str,
    text: &str,
    expected: Option<&HolType>,
) -> Result<Term, FrontendError> {
    let mut p = parser::Parser::new(lexer::lex(file, text)?);
    let pre = p.parse_term()?;
    p.finish()?;
    elab::Elaborator::new(sig).elaborate(&pre, expected)
}

/// One-line text that parses back to exactly `t`.
pub fn print_term(sig: &dyn Signature, t: &Term) -> String {
    printer::Printer::new(sig).print(t)
}
