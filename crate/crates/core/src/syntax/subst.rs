//! Simultaneous substitution of terms for variables.
//!
//! Quotations without holes are opaque, holes are transparent, and a
//! substitution reaching an evaluation is suspended as a beta-redex around
//! it. Going under a binder `y` needs `y` to be independent of every
//! substituted term; when this cannot be decided syntactically, a proved
//! `~IS-EFFECTIVE-IN` fact must be supplied by a [`SideConditions`] lookup.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::term::{fresh_variant, Term, TermKind, Var};
use super::SyntaxError;

/// Source of proved "`x` is not effective in `t`" facts.
pub trait SideConditions {
    /// The hypotheses of a theorem `~IS-EFFECTIVE-IN(x, t)`, if one is known.
    fn not_effective(&self, x: &Var, t: &Term) -> Option<&[Term]>;
}

/// No side conditions available; substitution under binders then only
/// succeeds when it can be justified syntactically.
pub struct NoSideConditions;

impl SideConditions for NoSideConditions {
    fn not_effective(&self, _: &Var, _: &Term) -> Option<&[Term]> {
        None
    }
}

/// Why a substitution stopped under a binder.
#[derive(Clone, PartialEq, Eq)]
pub struct Blocked {
    pub binder: Var,
    pub var: Var,
    pub replacement: Term,
    pub body: Term,
}

impl fmt::Debug for Blocked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "substituting {:?} for {:?} under binder {:?}: need ~IS-EFFECTIVE-IN({:?}, {:?}) or ~IS-EFFECTIVE-IN({:?}, {:?})",
            self.replacement, self.var, self.binder, self.binder, self.replacement, self.var, self.body
        )
    }
}

/// A substituted term together with the hypotheses of every side-condition
/// theorem that was relied on.
#[derive(Clone, Debug)]
pub struct Substituted {
    pub term: Term,
    pub assumptions: Vec<Term>,
    /// The `(x, t)` side conditions that were relied on.
    pub used: Vec<(Var, Term)>,
}

pub fn vsubst(
    bindings: &[(Var, Term)],
    t: &Term,
    sc: &dyn SideConditions,
) -> Result<Substituted, SyntaxError> {
    for (x, u) in bindings {
        if x.ty() != u.ty() {
            return Err(SyntaxError::IllTyped(format!(
                "cannot substitute {u:?} : {} for {x:?}",
                u.ty()
            )));
        }
    }
    let bindings: Vec<(Var, Term)> = bindings
        .iter()
        .filter(|(x, u)| u.as_var() != Some(x))
        .cloned()
        .collect();
    let mut st = State {
        sc,
        assumptions: Vec::new(),
        used: Vec::new(),
        bound: Vec::new(),
    };
    let term = st.go(&bindings, t)?;
    Ok(Substituted {
        term,
        assumptions: st.assumptions,
        used: st.used,
    })
}

/// Substitution that never consults side conditions.
pub fn vsubst_plain(bindings: &[(Var, Term)], t: &Term) -> Result<Term, SyntaxError> {
    vsubst(bindings, t, &NoSideConditions).map(|s| s.term)
}

struct State<'a> {
    sc: &'a dyn SideConditions,
    assumptions: Vec<Term>,
    used: Vec<(Var, Term)>,
    // binders of the term being rewritten that enclose the current position
    bound: Vec<Var>,
}

impl State<'_> {
    fn assume(&mut self, hyps: &[Term]) {
        for h in hyps {
            if !self.assumptions.contains(h) {
                self.assumptions.push(h.clone());
            }
        }
    }

    fn lookup(&mut self, x: &Var, t: &Term) -> bool {
        match self.sc.not_effective(x, t) {
            // hypotheses are global assumptions, so they cannot speak about
            // a variable that is locally bound here
            Some(hyps)
                if hyps
                    .iter()
                    .all(|h| self.bound.iter().all(|b| h.syntactically_independent_of(b))) =>
            {
                let hyps = hyps.to_vec();
                self.assume(&hyps);
                let key = (x.clone(), t.clone());
                if !self.used.contains(&key) {
                    self.used.push(key);
                }
                true
            }
            _ => false,
        }
    }

    fn go(&mut self, bindings: &[(Var, Term)], t: &Term) -> Result<Term, SyntaxError> {
        if bindings.is_empty() {
            return Ok(t.clone());
        }
        if t.is_eval_free()
            && bindings
                .iter()
                .all(|(x, _)| t.syntactically_independent_of(x))
        {
            return Ok(t.clone());
        }
        match t.kind() {
            TermKind::Var(v) => Ok(bindings
                .iter()
                .find(|(x, _)| x == v)
                .map(|(_, u)| u.clone())
                .unwrap_or_else(|| t.clone())),
            TermKind::Const(..) => Ok(t.clone()),
            TermKind::App(f, a) => {
                let f2 = self.go(bindings, f)?;
                let a2 = self.go(bindings, a)?;
                if f2.ptr_eq(f) && a2.ptr_eq(a) {
                    return Ok(t.clone());
                }
                Term::app(f2, a2)
            }
            TermKind::Abs(y, s) => self.go_abs(bindings, y, s, t),
            TermKind::Quote(b, _) => {
                if !b.has_holes() {
                    return Ok(t.clone());
                }
                let b2 = self.go_holes(bindings, b)?;
                Term::quote(b2)
            }
            TermKind::Hole(c, slot) => Term::hole(self.go(bindings, c)?, slot.clone()),
            TermKind::Eval(..) => {
                let mut body = t.clone();
                for (x, _) in bindings.iter().rev() {
                    body = Term::abs(x.clone(), body);
                }
                Term::apps(body, bindings.iter().map(|(_, u)| u.clone()))
            }
        }
    }

    fn go_holes(&mut self, bindings: &[(Var, Term)], b: &Term) -> Result<Term, SyntaxError> {
        if !b.has_holes() {
            return Ok(b.clone());
        }
        match b.kind() {
            TermKind::Hole(c, slot) => Term::hole(self.go(bindings, c)?, slot.clone()),
            TermKind::App(f, a) => {
                Term::app(self.go_holes(bindings, f)?, self.go_holes(bindings, a)?)
            }
            TermKind::Abs(v, body) => Ok(Term::abs(v.clone(), self.go_holes(bindings, body)?)),
            TermKind::Quote(inner, _) => Term::quote(self.go_holes(bindings, inner)?),
            _ => Ok(b.clone()),
        }
    }

    fn go_abs(
        &mut self,
        bindings: &[(Var, Term)],
        y: &Var,
        s: &Term,
        whole: &Term,
    ) -> Result<Term, SyntaxError> {
        let live: Vec<(Var, Term)> = bindings
            .iter()
            .filter(|(x, _)| x != y && !s.syntactically_independent_of(x))
            .cloned()
            .collect();
        if live.is_empty() {
            return Ok(whole.clone());
        }
        let mut rename = false;
        for (x, u) in &live {
            if u.syntactically_independent_of(y) || self.lookup(y, u) || self.lookup(x, s) {
                continue;
            }
            if s.is_eval_free() && u.is_eval_free() {
                rename = true;
            } else {
                return Err(SyntaxError::SubstitutionBlocked(Box::new(Blocked {
                    binder: y.clone(),
                    var: x.clone(),
                    replacement: u.clone(),
                    body: s.clone(),
                })));
            }
        }
        if rename {
            let mut avoid: BTreeSet<Arc<str>> = BTreeSet::new();
            s.all_var_names(&mut avoid);
            for (x, u) in &live {
                avoid.insert(x.name().into());
                u.all_var_names(&mut avoid);
            }
            let y2 = fresh_variant(y, avoid.iter().map(|n| &**n));
            let s2 = self.go(&[(y.clone(), y2.to_term())], s)?;
            let renamed = Term::abs(y2.clone(), s2.clone());
            return self.go_abs(&live, &y2, &s2, &renamed);
        }
        self.bound.push(y.clone());
        let body = self.go(&live, s);
        self.bound.pop();
        Ok(Term::abs(y.clone(), body?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::types::HolType;

    fn v(n: &str, ty: HolType) -> Var {
        Var::new(n, ty)
    }

    #[test]
    fn quotation_is_opaque() {
        let x = v("x", HolType::bool());
        let q = Term::quote(x.to_term()).unwrap();
        let r = vsubst_plain(&[(x, Term::var("y", HolType::bool()))], &q).unwrap();
        assert_eq!(r, q);
    }

    #[test]
    fn holes_are_transparent() {
        let b = v("b", HolType::epsilon());
        let q = Term::quote(Term::hole(b.to_term(), HolType::bool()).unwrap()).unwrap();
        let c = Term::quote(Term::var("c", HolType::bool())).unwrap();
        let r = vsubst_plain(&[(b, c.clone())], &q).unwrap();
        let expect = Term::quote(Term::hole(c, HolType::bool()).unwrap()).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn evaluation_is_suspended() {
        let x = v("x", HolType::epsilon());
        let ev = Term::eval(Term::var("e", HolType::epsilon()), HolType::bool()).unwrap();
        let t = Term::quote(Term::var("z", HolType::bool())).unwrap();
        let r = vsubst_plain(&[(x.clone(), t.clone())], &ev).unwrap();
        let expect = Term::app(Term::abs(x.clone(), ev.clone()), t).unwrap();
        assert_eq!(r, expect);
        let same = vsubst_plain(&[(x.clone(), x.to_term())], &ev).unwrap();
        assert_eq!(same, ev);
    }

    #[test]
    fn eval_free_capture_is_avoided_by_renaming() {
        let x = v("x", HolType::bool());
        let y = v("y", HolType::bool());
        let imp = Term::constant(
            "=",
            HolType::fun_n([HolType::bool(), HolType::bool()], HolType::bool()),
        );
        let body = Term::apps(imp, [x.to_term(), y.to_term()]).unwrap();
        let lam = Term::abs(y.clone(), body);
        let r = vsubst_plain(&[(x, y.to_term())], &lam).unwrap();
        let (b, inner) = r.dest_abs().unwrap();
        assert_eq!(b.name(), "y'");
        assert_eq!(inner.dest_eq().unwrap().0, &y.to_term());
    }

    #[test]
    fn evaluation_under_binder_blocks() {
        let p = v("P", HolType::fun(HolType::num(), HolType::bool()));
        let n = v("n", HolType::num());
        let body = Term::app(p.to_term(), n.to_term()).unwrap();
        let lam = Term::abs(n, body);
        let ev = Term::eval(Term::var("f", HolType::epsilon()), p.ty().clone()).unwrap();
        let err = vsubst_plain(&[(p, ev)], &lam).unwrap_err();
        assert!(matches!(err, SyntaxError::SubstitutionBlocked(_)));
    }
}
