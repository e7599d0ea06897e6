//! Theorem export as a structured document.
//!
//! Field order is fixed, so exporting the same session twice gives
//! byte-identical output. Two encodings share one data model: pretty JSON
//! and an s-expression form.

use serde::{Deserialize, Serialize};

use cqe_core::frontend::{print_term, print_type, Signature};
use cqe_core::kernel::Theorem;
use cqe_core::syntax::{HolType, Term, TermKind, Var};

use crate::session::Session;

pub const FORMAT_NAME: &str = "cqe-export";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Sexp,
    JsonLike,
}

/// A term as a nested constructor tree; types are given in surface syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tree {
    Var {
        name: String,
        ty: String,
    },
    Const {
        name: String,
        ty: String,
    },
    App {
        fun: Box<Tree>,
        arg: Box<Tree>,
    },
    Abs {
        var: String,
        ty: String,
        body: Box<Tree>,
    },
    Quote {
        body: Box<Tree>,
    },
    Hole {
        content: Box<Tree>,
        slot: String,
    },
    Eval {
        content: Box<Tree>,
        ty: String,
    },
}

impl Tree {
    pub fn from_term(t: &Term) -> Tree {
        let ty = |t: &HolType| print_type(t);
        match t.kind() {
            TermKind::Var(v) => Tree::Var {
                name: v.name().into(),
                ty: ty(v.ty()),
            },
            TermKind::Const(n, t) => Tree::Const {
                name: n.to_string(),
                ty: ty(t),
            },
            TermKind::App(f, a) => Tree::App {
                fun: Box::new(Tree::from_term(f)),
                arg: Box::new(Tree::from_term(a)),
            },
            TermKind::Abs(v, b) => Tree::Abs {
                var: v.name().into(),
                ty: ty(v.ty()),
                body: Box::new(Tree::from_term(b)),
            },
            TermKind::Quote(b, _) => Tree::Quote {
                body: Box::new(Tree::from_term(b)),
            },
            TermKind::Hole(c, s) => Tree::Hole {
                content: Box::new(Tree::from_term(c)),
                slot: ty(s),
            },
            TermKind::Eval(c, t) => Tree::Eval {
                content: Box::new(Tree::from_term(c)),
                ty: ty(t),
            },
        }
    }

    /// Rebuilds the term, parsing the embedded types against `sig`.
    pub fn to_term(&self, sig: &dyn Signature) -> Result<Term, String> {
        let ty = |s: &str| cqe_core::frontend::parse_type(sig, s).map_err(|e| e.to_string());
        let err = |e: cqe_core::syntax::SyntaxError| e.to_string();
        Ok(match self {
            Tree::Var { name, ty: t } => Term::var(name, ty(t)?),
            Tree::Const { name, ty: t } => Term::constant(name, ty(t)?),
            Tree::App { fun, arg } => {
                Term::app(fun.to_term(sig)?, arg.to_term(sig)?).map_err(err)?
            }
            Tree::Abs { var, ty: t, body } => Term::abs(Var::new(var, ty(t)?), body.to_term(sig)?),
            Tree::Quote { body } => Term::quote(body.to_term(sig)?).map_err(err)?,
            Tree::Hole { content, slot } => {
                Term::hole(content.to_term(sig)?, ty(slot)?).map_err(err)?
            }
            Tree::Eval { content, ty: t } => {
                Term::eval(content.to_term(sig)?, ty(t)?).map_err(err)?
            }
        })
    }

    fn sexp(&self, out: &mut String) {
        match self {
            Tree::Var { name, ty } => {
                out.push_str("(var ");
                atom(name, out);
                out.push(' ');
                atom(ty, out);
                out.push(')');
            }
            Tree::Const { name, ty } => {
                out.push_str("(const ");
                atom(name, out);
                out.push(' ');
                atom(ty, out);
                out.push(')');
            }
            Tree::App { fun, arg } => {
                out.push_str("(app ");
                fun.sexp(out);
                out.push(' ');
                arg.sexp(out);
                out.push(')');
            }
            Tree::Abs { var, ty, body } => {
                out.push_str("(abs ");
                atom(var, out);
                out.push(' ');
                atom(ty, out);
                out.push(' ');
                body.sexp(out);
                out.push(')');
            }
            Tree::Quote { body } => {
                out.push_str("(quote ");
                body.sexp(out);
                out.push(')');
            }
            Tree::Hole { content, slot } => {
                out.push_str("(hole ");
                content.sexp(out);
                out.push(' ');
                atom(slot, out);
                out.push(')');
            }
            Tree::Eval { content, ty } => {
                out.push_str("(eval ");
                content.sexp(out);
                out.push(' ');
                atom(ty, out);
                out.push(')');
            }
        }
    }
}

fn atom(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub text: String,
    pub tree: Tree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremEntry {
    pub name: String,
    pub hypotheses: Vec<Formula>,
    pub conclusion: Formula,
    pub axioms: Vec<String>,
    pub trusted_conversions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub version: u32,
    pub theorems: Vec<TheoremEntry>,
}

fn formula(sig: &dyn Signature, t: &Term) -> Formula {
    Formula {
        text: print_term(sig, t),
        tree: Tree::from_term(t),
    }
}

pub fn entry(sig: &dyn Signature, name: &str, th: &Theorem) -> TheoremEntry {
    let prov = th.provenance();
    TheoremEntry {
        name: name.to_string(),
        hypotheses: th.hyps().iter().map(|h| formula(sig, h)).collect(),
        conclusion: formula(sig, th.concl()),
        axioms: prov.axioms.iter().cloned().collect(),
        trusted_conversions: prov.oracles.iter().cloned().collect(),
    }
}

pub fn document(session: &Session) -> Document {
    let sig = &session.logic.kernel;
    Document {
        format: FORMAT_NAME.into(),
        version: FORMAT_VERSION,
        theorems: session
            .theorems()
            .map(|(n, th)| entry(sig, n, th))
            .collect(),
    }
}

pub fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::JsonLike => {
            let mut s = serde_json::to_string_pretty(doc).expect("export document serializes");
            s.push('\n');
            s
        }
        Format::Sexp => render_sexp(doc),
    }
}

fn render_sexp(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str("(export\n (format ");
    atom(&doc.format, &mut out);
    out.push_str(&format!(")\n (version {})\n (theorems", doc.version));
    for th in &doc.theorems {
        out.push_str("\n  (theorem\n   (name ");
        atom(&th.name, &mut out);
        out.push_str(")\n   (hypotheses");
        for h in &th.hypotheses {
            out.push_str("\n    ");
            formula_sexp(h, &mut out);
        }
        out.push_str(")\n   (conclusion ");
        formula_sexp(&th.conclusion, &mut out);
        out.push_str(")\n   (axioms");
        for a in &th.axioms {
            out.push(' ');
            atom(a, &mut out);
        }
        out.push_str(")\n   (trusted-conversions");
        for c in &th.trusted_conversions {
            out.push(' ');
            atom(c, &mut out);
        }
        out.push_str("))");
    }
    out.push_str("))\n");
    out
}

fn formula_sexp(f: &Formula, out: &mut String) {
    out.push_str("(formula (text ");
    atom(&f.text, out);
    out.push_str(") (tree ");
    f.tree.sexp(out);
    out.push_str("))");
}

/// Re-reads a JSON export and confirms each formula's text and tree denote
/// the same term in `sig`.
pub fn verify_json(sig: &dyn Signature, json: &str) -> Result<usize, String> {
    let doc: Document = serde_json::from_str(json).map_err(|e| e.to_string())?;
    verify(sig, &doc)?;
    Ok(doc.theorems.len())
}

pub fn verify(sig: &dyn Signature, doc: &Document) -> Result<(), String> {
    for th in &doc.theorems {
        for f in th.hypotheses.iter().chain([&th.conclusion]) {
            let from_tree = f.tree.to_term(sig)?;
            let from_text =
                cqe_core::frontend::parse_term(sig, &f.text).map_err(|e| e.to_string())?;
            if from_tree != from_text {
                return Err(format!(
                    "{}: text and tree disagree for {}",
                    th.name, f.text
                ));
            }
        }
    }
    Ok(())
}
