//! The theorem type. Values are only created by the rules in this module's
//! parent; everything outside the kernel can read theorems but not forge them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::syntax::{alpha_equivalent, Term};

/// What a theorem rests on besides the primitive rules.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Provenance {
    /// Names of axioms used.
    pub axioms: BTreeSet<String>,
    /// Names of trusted decision conversions used.
    pub oracles: BTreeSet<String>,
}

#[derive(Clone)]
pub struct Theorem {
    pub(super) hyps: Arc<[Term]>,
    pub(super) concl: Term,
    pub(super) prov: Arc<Provenance>,
}

impl Theorem {
    pub(super) fn mk(hyps: Vec<Term>, concl: Term, prov: Arc<Provenance>) -> Theorem {
        debug_assert!(concl.ty().is_bool());
        debug_assert!(hyps.iter().all(|h| h.ty().is_bool()));
        Theorem {
            hyps: hyps.into(),
            concl,
            prov,
        }
    }

    pub fn hyps(&self) -> &[Term] {
        &self.hyps
    }

    pub fn concl(&self) -> &Term {
        &self.concl
    }

    pub fn provenance(&self) -> &Provenance {
        &self.prov
    }

    pub fn uses_oracles(&self) -> bool {
        !self.prov.oracles.is_empty()
    }
}

impl fmt::Debug for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hyps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h:?}")?;
        }
        write!(f, " |- {:?}", self.concl)
    }
}

/// Union of hypothesis lists, dropping alpha-equivalent duplicates.
pub(super) fn union_hyps<'a>(lists: impl IntoIterator<Item = &'a [Term]>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for list in lists {
        for h in list {
            if !out.iter().any(|o| alpha_equivalent(o, h)) {
                out.push(h.clone());
            }
        }
    }
    out
}

pub(super) fn remove_hyp(hyps: &[Term], p: &Term) -> Vec<Term> {
    hyps.iter()
        .filter(|h| !alpha_equivalent(h, p))
        .cloned()
        .collect()
}

pub(super) fn merge_prov<'a>(thms: impl IntoIterator<Item = &'a Theorem>) -> Arc<Provenance> {
    let mut it = thms.into_iter();
    let Some(first) = it.next() else {
        return Arc::default();
    };
    let mut acc = first.prov.clone();
    for th in it {
        if Arc::ptr_eq(&acc, &th.prov) || *th.prov == Provenance::default() {
            continue;
        }
        if *acc == Provenance::default() {
            acc = th.prov.clone();
            continue;
        }
        let m = Arc::make_mut(&mut acc);
        m.axioms.extend(th.prov.axioms.iter().cloned());
        m.oracles.extend(th.prov.oracles.iter().cloned());
    }
    acc
}
