//! Syntax values.
//!
//! The `type` and `epsilon` datatypes are represented by object-level
//! constructor constants; names are embedded as literal constants of the
//! reserved base type `str` whose constant name is the quoted, escaped
//! string (`"x"`), so a construction is an ordinary closed term.

use thiserror::Error;

use crate::syntax::{vsubst_plain, HolType, SyntaxError, Term, TermKind, Var};

pub const QUO_VAR: &str = "QuoVar";
pub const QUO_CONST: &str = "QuoConst";
pub const APP: &str = "App";
pub const ABS: &str = "Abs";
pub const QUO: &str = "Quo";
pub const TY_VAR: &str = "TyVar";
pub const TY_BASE: &str = "TyBase";
pub const TY_MONO_CONS: &str = "TyMonoCons";
pub const TY_BI_CONS: &str = "TyBiCons";

/// The five `epsilon` constructors.
pub const EPSILON_CONSTRUCTORS: [&str; 5] = [QUO_VAR, QUO_CONST, APP, ABS, QUO];
/// The four `type` constructors.
pub const TYPE_CONSTRUCTORS: [&str; 4] = [TY_VAR, TY_BASE, TY_MONO_CONS, TY_BI_CONS];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("type constructor {0} has arity {1}; only arities 0-2 have syntax values")]
    UnsupportedArity(String, usize),
    #[error("term is not eval-free")]
    NotEvalFree,
    #[error("term contains a hole")]
    ContainsHole,
    #[error("construction does not represent a well-typed term: {0}")]
    Improper(String),
    #[error("not a closed construction: {0}")]
    NotAConstruction(String),
    #[error("construction is not a quoted variable: {0}")]
    NotAVariable(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

/// Signatures of the constructor constants.
pub fn constructor_signatures() -> Vec<(&'static str, HolType)> {
    let s = HolType::str_lit;
    let ty = HolType::type_rep;
    let e = HolType::epsilon;
    vec![
        (TY_VAR, HolType::fun(s(), ty())),
        (TY_BASE, HolType::fun(s(), ty())),
        (TY_MONO_CONS, HolType::fun_n([s(), ty()], ty())),
        (TY_BI_CONS, HolType::fun_n([s(), ty(), ty()], ty())),
        (QUO_VAR, HolType::fun_n([s(), ty()], e())),
        (QUO_CONST, HolType::fun_n([s(), ty()], e())),
        (APP, HolType::fun_n([e(), e()], e())),
        (ABS, HolType::fun_n([e(), e()], e())),
        (QUO, HolType::fun(e(), e())),
    ]
}

/// The constructor constant `name`, if there is one.
pub fn constructor(name: &str) -> Option<Term> {
    constructor_signatures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(n, ty)| Term::constant(n, ty))
}

fn ctor(name: &str) -> Term {
    let ty = constructor_signatures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, ty)| ty)
        .expect("known constructor");
    Term::constant(name, ty)
}

fn mk(name: &str, args: Vec<Term>) -> Term {
    Term::apps(ctor(name), args).expect("constructor arguments are well-typed")
}

/// Literal constant for `s`.
pub fn str_lit(s: &str) -> Term {
    let mut name = String::with_capacity(s.len() + 2);
    name.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            name.push('\\');
        }
        name.push(ch);
    }
    name.push('"');
    Term::constant(&name, HolType::str_lit())
}

/// Whether a constant name is in the literal family.
pub fn is_str_lit_name(name: &str) -> bool {
    decode_lit_name(name).is_some()
}

fn decode_lit_name(name: &str) -> Option<String> {
    let inner = name.strip_prefix('"')?.strip_suffix('"')?;
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => out.push(chars.next().filter(|c| *c == '"' || *c == '\\')?),
            '"' => return None,
            c => out.push(c),
        }
    }
    Some(out)
}

pub fn dest_str_lit(t: &Term) -> Option<String> {
    match t.kind() {
        TermKind::Const(n, ty) if ty.is_base(crate::syntax::types::STR) => decode_lit_name(n),
        _ => None,
    }
}

pub fn type_to_construction(ty: &HolType) -> Result<Term> {
    Ok(match ty {
        HolType::Var(n) => mk(TY_VAR, vec![str_lit(n)]),
        HolType::App(c, args) => match args.len() {
            0 => mk(TY_BASE, vec![str_lit(c)]),
            1 => mk(
                TY_MONO_CONS,
                vec![str_lit(c), type_to_construction(&args[0])?],
            ),
            2 => mk(
                TY_BI_CONS,
                vec![
                    str_lit(c),
                    type_to_construction(&args[0])?,
                    type_to_construction(&args[1])?,
                ],
            ),
            n => return Err(ConstructionError::UnsupportedArity(c.to_string(), n)),
        },
    })
}

/// Inverse of [`type_to_construction`] on closed type syntax values.
pub fn construction_to_type(t: &Term) -> Result<HolType> {
    let bad = || ConstructionError::NotAConstruction(format!("{t:?}"));
    let (head, args) = t.strip_app();
    let (name, _) = head.as_const().ok_or_else(bad)?;
    let lit = |i: usize| args.get(i).and_then(|a| dest_str_lit(a)).ok_or_else(bad);
    match (name, args.len()) {
        (TY_VAR, 1) => Ok(HolType::var(&lit(0)?)),
        (TY_BASE, 1) => Ok(HolType::base(&lit(0)?)),
        (TY_MONO_CONS, 2) => Ok(HolType::app(&lit(0)?, vec![construction_to_type(args[1])?])),
        (TY_BI_CONS, 3) => Ok(HolType::app(
            &lit(0)?,
            vec![
                construction_to_type(args[1])?,
                construction_to_type(args[2])?,
            ],
        )),
        _ => Err(bad()),
    }
}

/// The syntax value of an eval-free, hole-free term.
pub fn term_to_construction(t: &Term) -> Result<Term> {
    if !t.is_eval_free() {
        return Err(ConstructionError::NotEvalFree);
    }
    if t.has_holes() {
        return Err(ConstructionError::ContainsHole);
    }
    encode(t, &|_| unreachable!("hole-free"))
}

fn encode(t: &Term, hole: &dyn Fn(&Term) -> Result<Term>) -> Result<Term> {
    Ok(match t.kind() {
        TermKind::Var(v) => mk(
            QUO_VAR,
            vec![str_lit(v.name()), type_to_construction(v.ty())?],
        ),
        TermKind::Const(n, ty) => mk(QUO_CONST, vec![str_lit(n), type_to_construction(ty)?]),
        TermKind::App(f, a) => mk(APP, vec![encode(f, hole)?, encode(a, hole)?]),
        TermKind::Abs(v, b) => mk(ABS, vec![encode(&v.to_term(), hole)?, encode(b, hole)?]),
        TermKind::Quote(b, _) => mk(QUO, vec![encode(b, hole)?]),
        TermKind::Hole(c, _) => hole(c)?,
        TermKind::Eval(..) => return Err(ConstructionError::NotEvalFree),
    })
}

/// Replaces each hole of a quotation by its content and every other node by
/// its syntax value.
pub fn expand_quasiquote(q: &Term) -> Result<Term> {
    match q.kind() {
        TermKind::Quote(body, _) => encode(body, &|c| Ok(c.clone())),
        _ => Err(ConstructionError::NotAConstruction(format!(
            "not a quotation: {q:?}"
        ))),
    }
}

/// The eval-free term represented by a closed construction.
pub fn construction_to_term(c: &Term) -> Result<Term> {
    let bad = || ConstructionError::NotAConstruction(format!("{c:?}"));
    let (head, args) = c.strip_app();
    let (name, _) = head.as_const().ok_or_else(bad)?;
    match (name, args.len()) {
        (QUO_VAR, 2) | (QUO_CONST, 2) => {
            let n = dest_str_lit(args[0]).ok_or_else(bad)?;
            let ty = construction_to_type(args[1])?;
            Ok(if name == QUO_VAR {
                Term::var(&n, ty)
            } else {
                Term::constant(&n, ty)
            })
        }
        (APP, 2) => {
            let f = construction_to_term(args[0])?;
            let a = construction_to_term(args[1])?;
            Term::app(f, a).map_err(|e| ConstructionError::Improper(e.to_string()))
        }
        (ABS, 2) => {
            let v = construction_to_term(args[0])?;
            let b = construction_to_term(args[1])?;
            Term::abs_term(&v, b).map_err(|e| ConstructionError::Improper(e.to_string()))
        }
        (QUO, 1) => Ok(Term::quote(construction_to_term(args[0])?)?),
        _ => Err(bad()),
    }
}

/// Checks that `c` is built from constructors and literals only.
fn check_closed_construction(c: &Term) -> Result<()> {
    let bad = || ConstructionError::NotAConstruction(format!("{c:?}"));
    let (head, args) = c.strip_app();
    let (name, _) = head.as_const().ok_or_else(bad)?;
    match (name, args.len()) {
        (QUO_VAR, 2) | (QUO_CONST, 2) => {
            dest_str_lit(args[0]).ok_or_else(bad)?;
            construction_to_type(args[1]).map(|_| ())
        }
        (APP, 2) | (ABS, 2) => {
            check_closed_construction(args[0])?;
            check_closed_construction(args[1])
        }
        (QUO, 1) => check_closed_construction(args[0]),
        _ => Err(bad()),
    }
}

pub fn is_proper(c: &Term) -> Result<bool> {
    check_closed_construction(c)?;
    Ok(construction_to_term(c).is_ok())
}

pub fn is_expr_type_meta(c: &Term, tyc: &Term) -> bool {
    let Ok(ty) = construction_to_type(tyc) else {
        return false;
    };
    matches!(construction_to_term(c), Ok(t) if *t.ty() == ty)
}

pub fn is_free_in_meta(xc: &Term, bc: &Term) -> Result<bool> {
    let x = match construction_to_term(xc) {
        Ok(t) => t.as_var().cloned(),
        Err(_) => None,
    }
    .ok_or_else(|| ConstructionError::NotAVariable(format!("{xc:?}")))?;
    check_closed_construction(bc)?;
    let b = construction_to_term(bc).map_err(|e| match e {
        ConstructionError::Improper(m) => ConstructionError::Improper(m),
        other => ConstructionError::Improper(other.to_string()),
    })?;
    Ok(b.free_vars()?.contains(&x))
}

/// Free-variable test read directly off the construction tree. Total on
/// closed constructions, proper or not; agrees with [`is_free_in_meta`] on
/// proper ones.
pub fn construction_mentions_free(x: &Var, c: &Term) -> bool {
    let (head, args) = c.strip_app();
    match (head.as_const().map(|(n, _)| n), args.len()) {
        (Some(QUO_VAR), 2) => {
            dest_str_lit(args[0]).as_deref() == Some(x.name())
                && construction_to_type(args[1]).ok().as_ref() == Some(x.ty())
        }
        (Some(APP), 2) => {
            construction_mentions_free(x, args[0]) || construction_mentions_free(x, args[1])
        }
        (Some(ABS), 2) => {
            let binds_x = construction_to_term(args[0])
                .ok()
                .and_then(|t| t.as_var().cloned())
                .is_some_and(|v| &v == x);
            !binds_x && construction_mentions_free(x, args[1])
        }
        _ => false,
    }
}

/// Whether no variable occurs free in the construction, read structurally.
pub fn construction_is_closed(c: &Term) -> bool {
    fn go(c: &Term, bound: &mut Vec<Var>) -> bool {
        let (head, args) = c.strip_app();
        match (head.as_const().map(|(n, _)| n), args.len()) {
            (Some(QUO_VAR), 2) => {
                let v = dest_str_lit(args[0])
                    .zip(construction_to_type(args[1]).ok())
                    .map(|(n, ty)| Var::new(&n, ty));
                v.is_some_and(|v| bound.contains(&v))
            }
            (Some(APP), 2) => go(args[0], bound) && go(args[1], bound),
            (Some(ABS), 2) => {
                let binder = construction_to_term(args[0])
                    .ok()
                    .and_then(|t| t.as_var().cloned());
                match binder {
                    Some(v) => {
                        bound.push(v);
                        let r = go(args[1], bound);
                        bound.pop();
                        r
                    }
                    None => go(args[1], bound),
                }
            }
            _ => true,
        }
    }
    go(c, &mut Vec::new())
}

/// Computes the constructor-form value of a closed term of type `epsilon`.
///
/// Understands constructor applications, quotations (with holes), eval-free
/// beta-redexes and evaluations at type `epsilon`. Returns `None` for
/// anything whose value is not determined by its syntax, such as free
/// variables.
pub fn construction_value(t: &Term) -> Option<Term> {
    match t.kind() {
        TermKind::Quote(b, _) => {
            if b.has_holes() {
                construction_value(&expand_quasiquote(t).ok()?)
            } else {
                term_to_construction(b).ok()
            }
        }
        TermKind::Eval(c, ty) if ty.is_epsilon() => {
            let k = construction_value(c)?;
            let u = construction_to_term(&k).ok()?;
            if u.ty().is_epsilon() {
                construction_value(&u)
            } else {
                None
            }
        }
        TermKind::App(f, a) => {
            if let Some((x, body)) = f.dest_abs() {
                if !t.is_eval_free() {
                    return None;
                }
                let r = vsubst_plain(&[(x.clone(), a.clone())], body).ok()?;
                return construction_value(&r);
            }
            let (head, args) = t.strip_app();
            let (name, _) = head.as_const()?;
            match (name, args.len()) {
                (QUO_VAR, 2) | (QUO_CONST, 2) => {
                    let n = dest_str_lit(args[0])?;
                    let ty = type_value(args[1])?;
                    let tyc = type_to_construction(&ty).ok()?;
                    Some(mk(name, vec![str_lit(&n), tyc]))
                }
                (APP, 2) | (ABS, 2) => Some(mk(
                    name,
                    vec![construction_value(args[0])?, construction_value(args[1])?],
                )),
                (QUO, 1) => Some(mk(QUO, vec![construction_value(args[0])?])),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Value of a closed term of type `type`.
pub fn type_value(t: &Term) -> Option<HolType> {
    if let Some((f, a)) = t.dest_app() {
        if let Some((x, body)) = f.dest_abs() {
            if !t.is_eval_free() {
                return None;
            }
            return type_value(&vsubst_plain(&[(x.clone(), a.clone())], body).ok()?);
        }
    }
    let (head, args) = t.strip_app();
    let (name, _) = head.as_const()?;
    let lit = |i: usize| args.get(i).and_then(|a| dest_str_lit(a));
    match (name, args.len()) {
        (TY_VAR, 1) => Some(HolType::var(&lit(0)?)),
        (TY_BASE, 1) => Some(HolType::base(&lit(0)?)),
        (TY_MONO_CONS, 2) => Some(HolType::app(&lit(0)?, vec![type_value(args[1])?])),
        (TY_BI_CONS, 3) => Some(HolType::app(
            &lit(0)?,
            vec![type_value(args[1])?, type_value(args[2])?],
        )),
        _ => None,
    }
}
