//! The trusted kernel.
//!
//! A [`Kernel`] owns the session signature (type constructors and constants),
//! the axiom list, and the registry of proved "not effective in" facts that
//! substitution consults. Every [`Theorem`] is produced by one of its rules.

pub mod connectives;
pub mod oracle;
mod quote_rules;
mod rules;
mod thm;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::constructions::{self, ConstructionError};
use crate::syntax::{Blocked, HolType, SideConditions, SyntaxError, Term, TermKind, Var};

pub use connectives::{dest_not_effective, mk_is_effective_in};
pub use quote_rules::{mk_is_expr_type, mk_is_expr_type_rep, mk_is_free_in};
pub use thm::{Provenance, Theorem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error(transparent)]
    Syntax(SyntaxError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("substitution blocked: {0:?}")]
    SubstitutionBlocked(Box<Blocked>),
    #[error("unknown type constructor {0}")]
    UnknownType(String),
    #[error("type constructor {name} expects {expected} arguments, got {got}")]
    TypeArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown constant {0}")]
    UnknownConstant(String),
    #[error("constant {name} used at {ty}, which is not an instance of {generic}")]
    ConstantType {
        name: String,
        ty: String,
        generic: String,
    },
    #[error("{0} is already defined")]
    DuplicateName(String),
    #[error("{rule}: {msg}")]
    Shape { rule: &'static str, msg: String },
    #[error("{0:?} is not of type bool")]
    NotBool(Term),
    #[error("ABS: {var:?} may be effective in hypothesis {hyp:?}")]
    BinderInHypothesis { var: Var, hyp: Term },
    #[error("INST_TYPE: type variable {0} occurs inside a quotation or evaluation type")]
    QuotationTypePolymorphism(String),
    #[error("definition body is not closed: free variable {0:?}")]
    OpenBody(Var),
    #[error("not the quotation of a variable or constant: {0:?}")]
    NotAtomicQuote(Term),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("quotation contains holes: {0:?}")]
    HasHoles(Term),
    #[error("NEITHER_EFFECTIVE: binders must be distinct, both are {0:?}")]
    SameVariable(Var),
    #[error("{var:?} is free in {term:?}")]
    FreeOccurrence { var: Var, term: Term },
    #[error("not eval-free: {0:?}")]
    NotEvalFree(Term),
    #[error("not of the form ~IS-EFFECTIVE-IN(x, t): {0:?}")]
    WrongShape(Term),
    #[error("malformed type argument: {0}")]
    TypeArgMalformed(String),
    #[error("not a closed construction: {0:?}")]
    NotClosed(Term),
}

impl From<SyntaxError> for KernelError {
    fn from(e: SyntaxError) -> Self {
        match e {
            SyntaxError::SubstitutionBlocked(b) => KernelError::SubstitutionBlocked(b),
            other => KernelError::Syntax(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, KernelError>;

/// Names of logical constants the kernel rules refer to.
pub mod names {
    pub const EQ: &str = "=";
    pub const AND: &str = "/\\";
    pub const IMP: &str = "==>";
    pub const OR: &str = "\\/";
    pub const NOT: &str = "~";
    pub const EXISTS: &str = "?";
    pub const FORALL: &str = "!";
    pub const IS_EXPR_TYPE: &str = "isExprType";
    pub const IS_FREE_IN: &str = "isFreeIn";
    pub const IS_PEANO_FORM: &str = "isPeanoForm";
    pub const IS_PRESBURGER_FORM: &str = "isPresburgerForm";
}

#[derive(Clone, Debug)]
struct RegistryEntry {
    var: Var,
    term: Term,
    hyps: Vec<Term>,
    theorem: Theorem,
}

/// Proved `~IS-EFFECTIVE-IN(x, t)` facts, keyed by exact `(x, t)`.
#[derive(Clone, Debug, Default)]
pub struct SideConditionRegistry {
    entries: Vec<RegistryEntry>,
}

impl SideConditionRegistry {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn theorems(&self) -> impl Iterator<Item = &Theorem> {
        self.entries.iter().map(|e| &e.theorem)
    }

    fn entry_theorem(&self, x: &Var, t: &Term) -> Option<&Theorem> {
        self.find(x, t).map(|e| &e.theorem)
    }

    fn find(&self, x: &Var, t: &Term) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| &e.var == x && &e.term == t)
    }
}

impl SideConditions for SideConditionRegistry {
    fn not_effective(&self, x: &Var, t: &Term) -> Option<&[Term]> {
        self.find(x, t).map(|e| e.hyps.as_slice())
    }
}

/// Session state of the logic.
#[derive(Clone, Debug)]
pub struct Kernel {
    types: BTreeMap<String, usize>,
    constants: BTreeMap<String, HolType>,
    axioms: Vec<(String, Theorem)>,
    definitions: Vec<(String, Theorem)>,
    registry: SideConditionRegistry,
}

impl Default for Kernel {
    fn default() -> Self {
        Self::new()
    }
}

impl Kernel {
    pub fn new() -> Kernel {
        let mut k = Kernel {
            types: BTreeMap::new(),
            constants: BTreeMap::new(),
            axioms: Vec::new(),
            definitions: Vec::new(),
            registry: SideConditionRegistry::default(),
        };
        use crate::syntax::types::*;
        for (n, a) in [
            (BOOL, 0),
            (IND, 0),
            (EPSILON, 0),
            (TYPE, 0),
            (NUM, 0),
            (FUN, 2),
            (STR, 0),
        ] {
            k.types.insert(n.to_string(), a);
        }
        let a = HolType::var("A");
        k.constants.insert(
            names::EQ.into(),
            HolType::fun_n([a.clone(), a], HolType::bool()),
        );
        for (n, ty) in constructions::constructor_signatures() {
            k.constants.insert(n.into(), ty);
        }
        k.constants.insert(
            names::IS_EXPR_TYPE.into(),
            HolType::fun_n([HolType::epsilon(), HolType::type_rep()], HolType::bool()),
        );
        k.constants.insert(
            names::IS_FREE_IN.into(),
            HolType::fun_n([HolType::epsilon(), HolType::epsilon()], HolType::bool()),
        );
        for n in [names::IS_PEANO_FORM, names::IS_PRESBURGER_FORM] {
            k.constants
                .insert(n.into(), HolType::fun(HolType::epsilon(), HolType::bool()));
        }
        for (name, body) in connectives::definitions() {
            k.new_basic_definition(name, &body)
                .expect("connective definitions are well formed");
        }
        k
    }

    // ---- signature ----

    pub fn new_type(&mut self, name: &str, arity: usize) -> Result<()> {
        if self.types.contains_key(name) {
            return Err(KernelError::DuplicateName(name.into()));
        }
        if arity > 2 {
            return Err(ConstructionError::UnsupportedArity(name.into(), arity).into());
        }
        self.types.insert(name.into(), arity);
        Ok(())
    }

    pub fn type_arity(&self, name: &str) -> Option<usize> {
        self.types.get(name).copied()
    }

    pub fn new_constant(&mut self, name: &str, ty: HolType) -> Result<()> {
        if self.constants.contains_key(name) || constructions::is_str_lit_name(name) {
            return Err(KernelError::DuplicateName(name.into()));
        }
        self.check_type(&ty)?;
        self.constants.insert(name.into(), ty);
        Ok(())
    }

    /// Declared (generic) type of a constant. Name literals have type `str`.
    pub fn constant_type(&self, name: &str) -> Option<HolType> {
        if constructions::is_str_lit_name(name) {
            return Some(HolType::str_lit());
        }
        self.constants.get(name).cloned()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &HolType)> {
        self.constants.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn axioms(&self) -> &[(String, Theorem)] {
        &self.axioms
    }

    pub fn definitions(&self) -> &[(String, Theorem)] {
        &self.definitions
    }

    pub fn registry(&self) -> &SideConditionRegistry {
        &self.registry
    }

    pub fn check_type(&self, ty: &HolType) -> Result<()> {
        match ty {
            HolType::Var(_) => Ok(()),
            HolType::App(c, args) => {
                let arity = self
                    .types
                    .get(&**c)
                    .ok_or_else(|| KernelError::UnknownType(c.to_string()))?;
                if *arity != args.len() {
                    return Err(KernelError::TypeArity {
                        name: c.to_string(),
                        expected: *arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_type(a))
            }
        }
    }

    /// Checks a term coming from outside the kernel against the signature.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        if t.has_loose_holes() {
            return Err(SyntaxError::HoleOutsideQuotation.into());
        }
        self.check_term_rec(t)
    }

    fn check_term_rec(&self, t: &Term) -> Result<()> {
        match t.kind() {
            TermKind::Var(v) => self.check_type(v.ty()),
            TermKind::Const(n, ty) => {
                self.check_type(ty)?;
                let generic = self
                    .constant_type(n)
                    .ok_or_else(|| KernelError::UnknownConstant(n.to_string()))?;
                if !ty.is_instance_of(&generic) {
                    return Err(KernelError::ConstantType {
                        name: n.to_string(),
                        ty: ty.to_string(),
                        generic: generic.to_string(),
                    });
                }
                Ok(())
            }
            TermKind::App(f, a) => {
                self.check_term_rec(f)?;
                self.check_term_rec(a)
            }
            TermKind::Abs(v, b) => {
                self.check_type(v.ty())?;
                self.check_term_rec(b)
            }
            TermKind::Quote(b, _) => self.check_term_rec(b),
            TermKind::Hole(c, ty) | TermKind::Eval(c, ty) => {
                self.check_type(ty)?;
                self.check_term_rec(c)
            }
        }
    }

    fn check_bool(&self, p: &Term) -> Result<()> {
        self.check_term(p)?;
        if !p.ty().is_bool() {
            return Err(KernelError::NotBool(p.clone()));
        }
        Ok(())
    }

    /// Instance of a constant at `ty`, which must match its declared type.
    pub fn mk_const(&self, name: &str, ty: HolType) -> Result<Term> {
        let t = Term::constant(name, ty);
        self.check_term(&t)?;
        Ok(t)
    }

    // ---- definitional extension ----

    /// Asserts `p` as an axiom named `name`.
    pub fn new_axiom(&mut self, name: &str, p: &Term) -> Result<Theorem> {
        self.check_bool(p)?;
        if self.axioms.iter().any(|(n, _)| n == name) {
            return Err(KernelError::DuplicateName(name.into()));
        }
        let mut prov = Provenance::default();
        prov.axioms.insert(name.into());
        let th = Theorem::mk(vec![], p.clone(), Arc::new(prov));
        self.axioms.push((name.into(), th.clone()));
        Ok(th)
    }

    /// Introduces constant `name` with `|- name = body`.
    pub fn new_basic_definition(&mut self, name: &str, body: &Term) -> Result<Theorem> {
        self.check_term(body)?;
        if !body.is_eval_free() {
            return Err(KernelError::NotEvalFree(body.clone()));
        }
        if let Some(v) = body.free_vars()?.into_iter().next() {
            return Err(KernelError::OpenBody(v));
        }
        let mut body_tvs = Vec::new();
        collect_term_tyvars(body, &mut body_tvs);
        let mut ty_tvs = Vec::new();
        body.ty().type_vars(&mut ty_tvs);
        if let Some(extra) = body_tvs.iter().find(|v| !ty_tvs.contains(v)) {
            return Err(KernelError::Shape {
                rule: "new_basic_definition",
                msg: format!("type variable '{extra} does not occur in the type of the constant"),
            });
        }
        self.new_constant(name, body.ty().clone())?;
        let c = Term::constant(name, body.ty().clone());
        let th = Theorem::mk(vec![], Term::mk_eq(c, body.clone())?, Arc::default());
        self.definitions.push((name.into(), th.clone()));
        Ok(th)
    }

    /// Adds `th : G |- ~IS-EFFECTIVE-IN(x, t)` to the side-condition registry.
    /// Later substitutions that rely on it inherit `G` as hypotheses.
    pub fn register_not_effective(&mut self, th: &Theorem) -> Result<()> {
        let (var, term) = dest_not_effective(th.concl())
            .ok_or_else(|| KernelError::WrongShape(th.concl().clone()))?;
        if self.registry.find(&var, &term).is_some() {
            return Ok(());
        }
        self.registry.entries.push(RegistryEntry {
            var,
            term,
            hyps: th.hyps().to_vec(),
            theorem: th.clone(),
        });
        Ok(())
    }
}

fn collect_term_tyvars(t: &Term, out: &mut Vec<Arc<str>>) {
    t.ty().type_vars(out);
    match t.kind() {
        TermKind::Var(_) | TermKind::Const(..) => {}
        TermKind::App(f, a) => {
            collect_term_tyvars(f, out);
            collect_term_tyvars(a, out);
        }
        TermKind::Abs(v, b) => {
            v.ty().type_vars(out);
            collect_term_tyvars(b, out);
        }
        TermKind::Quote(b, _) | TermKind::Hole(b, _) | TermKind::Eval(b, _) => {
            collect_term_tyvars(b, out)
        }
    }
}

#[cfg(test)]
mod tests;
