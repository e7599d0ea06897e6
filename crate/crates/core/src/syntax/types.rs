//! Simple types: named type variables and applied type constructors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A type of the logic.
///
/// `bool`, `ind`, `epsilon`, `type`, `num` are nullary applications; the
/// function type is the binary constructor `fun`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HolType {
    Var(Arc<str>),
    App(Arc<str>, Arc<[HolType]>),
}

pub const BOOL: &str = "bool";
pub const IND: &str = "ind";
pub const EPSILON: &str = "epsilon";
pub const TYPE: &str = "type";
pub const NUM: &str = "num";
pub const FUN: &str = "fun";
/// Base type of the name literals embedded in constructions.
pub const STR: &str = "str";

/// Type substitution, keyed by type-variable name.
pub type TypeSubst = BTreeMap<Arc<str>, HolType>;

impl HolType {
    pub fn var(name: &str) -> Self {
        HolType::Var(name.into())
    }

    pub fn app(name: &str, args: Vec<HolType>) -> Self {
        HolType::App(name.into(), args.into())
    }

    pub fn base(name: &str) -> Self {
        HolType::App(name.into(), Arc::from([]))
    }

    pub fn bool() -> Self {
        Self::base(BOOL)
    }

    pub fn ind() -> Self {
        Self::base(IND)
    }

    pub fn epsilon() -> Self {
        Self::base(EPSILON)
    }

    pub fn type_rep() -> Self {
        Self::base(TYPE)
    }

    pub fn num() -> Self {
        Self::base(NUM)
    }

    pub fn str_lit() -> Self {
        Self::base(STR)
    }

    pub fn fun(dom: HolType, cod: HolType) -> Self {
        HolType::App(FUN.into(), Arc::from([dom, cod]))
    }

    /// `a1 -> a2 -> ... -> cod`
    pub fn fun_n(doms: impl IntoIterator<Item = HolType>, cod: HolType) -> Self {
        let doms: Vec<_> = doms.into_iter().collect();
        doms.into_iter()
            .rev()
            .fold(cod, |acc, d| HolType::fun(d, acc))
    }

    pub fn is_base(&self, name: &str) -> bool {
        matches!(self, HolType::App(n, args) if &**n == name && args.is_empty())
    }

    pub fn is_bool(&self) -> bool {
        self.is_base(BOOL)
    }

    pub fn is_epsilon(&self) -> bool {
        self.is_base(EPSILON)
    }

    /// Domain and codomain of a function type.
    pub fn dest_fun(&self) -> Option<(&HolType, &HolType)> {
        match self {
            HolType::App(n, args) if &**n == FUN && args.len() == 2 => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn type_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            HolType::Var(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            HolType::App(_, args) => args.iter().for_each(|a| a.type_vars(out)),
        }
    }

    pub fn has_type_vars(&self) -> bool {
        match self {
            HolType::Var(_) => true,
            HolType::App(_, args) => args.iter().any(HolType::has_type_vars),
        }
    }

    pub fn mentions_any(&self, vars: &TypeSubst) -> bool {
        match self {
            HolType::Var(n) => vars.contains_key(n),
            HolType::App(_, args) => args.iter().any(|a| a.mentions_any(vars)),
        }
    }

    pub fn subst(&self, theta: &TypeSubst) -> HolType {
        if theta.is_empty() {
            return self.clone();
        }
        match self {
            HolType::Var(n) => theta.get(n).cloned().unwrap_or_else(|| self.clone()),
            HolType::App(c, args) => {
                HolType::App(c.clone(), args.iter().map(|a| a.subst(theta)).collect())
            }
        }
    }

    /// Finds `theta` with `pattern.subst(theta) == self`, extending `theta`.
    pub fn match_into(&self, pattern: &HolType, theta: &mut TypeSubst) -> bool {
        match pattern {
            HolType::Var(n) => match theta.get(n) {
                Some(bound) => bound == self,
                None => {
                    theta.insert(n.clone(), self.clone());
                    true
                }
            },
            HolType::App(pc, pargs) => match self {
                HolType::App(c, args) if c == pc && args.len() == pargs.len() => args
                    .iter()
                    .zip(pargs.iter())
                    .all(|(a, p)| a.match_into(p, theta)),
                _ => false,
            },
        }
    }

    pub fn is_instance_of(&self, pattern: &HolType) -> bool {
        self.match_into(pattern, &mut TypeSubst::new())
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, arg_pos: bool) -> fmt::Result {
        match self {
            HolType::Var(n) => write!(f, "'{n}"),
            HolType::App(c, args) if args.is_empty() => write!(f, "{c}"),
            _ => {
                if let Some((d, r)) = self.dest_fun() {
                    if arg_pos {
                        write!(f, "(")?;
                    }
                    d.fmt_prec(f, true)?;
                    write!(f, "->")?;
                    r.fmt_prec(f, false)?;
                    if arg_pos {
                        write!(f, ")")?;
                    }
                    Ok(())
                } else if let HolType::App(c, args) = self {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        a.fmt_prec(f, false)?;
                    }
                    write!(f, "){c}")
                } else {
                    unreachable!()
                }
            }
        }
    }
}

impl fmt::Display for HolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

impl fmt::Debug for HolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`:{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_printing_is_right_associative() {
        let t = HolType::fun(
            HolType::fun(HolType::num(), HolType::bool()),
            HolType::bool(),
        );
        assert_eq!(t.to_string(), "(num->bool)->bool");
        let u = HolType::fun_n([HolType::var("A"), HolType::var("A")], HolType::bool());
        assert_eq!(u.to_string(), "'A->'A->bool");
    }

    #[test]
    fn matching_binds_consistently() {
        let pat = HolType::fun_n([HolType::var("A"), HolType::var("A")], HolType::bool());
        let inst = HolType::fun_n([HolType::num(), HolType::num()], HolType::bool());
        let bad = HolType::fun_n([HolType::num(), HolType::bool()], HolType::bool());
        assert!(inst.is_instance_of(&pat));
        assert!(!bad.is_instance_of(&pat));
    }
}
