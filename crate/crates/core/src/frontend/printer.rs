use super::parser::{infix, APP_PREC, ATOM_PREC, BINDERS, NOT_PREC};
use super::Signature;
use crate::constructions::is_str_lit_name;
use crate::syntax::{HolType, Term, TermKind, Var};

pub fn print_type(ty: &HolType) -> String {
    let mut s = String::new();
    type_into(ty, false, &mut s);
    s
}

fn type_into(ty: &HolType, arg_pos: bool, out: &mut String) {
    match ty {
        HolType::Var(n) => {
            out.push('\'');
            out.push_str(n);
        }
        HolType::App(c, args) if args.is_empty() => out.push_str(c),
        HolType::App(c, args) => {
            if let Some((d, r)) = ty.dest_fun() {
                if arg_pos {
                    out.push('(');
                }
                type_into(d, true, out);
                out.push_str("->");
                type_into(r, false, out);
                if arg_pos {
                    out.push(')');
                }
            } else {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    type_into(a, false, out);
                }
                out.push(')');
                out.push_str(c);
            }
        }
    }
}

/// Type after `:` or `to`: function types are parenthesized for readability.
fn annot_type(ty: &HolType) -> String {
    let s = print_type(ty);
    if ty.dest_fun().is_some() {
        format!("({s})")
    } else {
        s
    }
}

fn is_symbolic(name: &str) -> bool {
    infix(name).is_some() || name == "~" || BINDERS.contains(&name)
}

pub struct Printer<'s> {
    sig: &'s dyn Signature,
    scopes: Vec<Var>,
}

impl<'s> Printer<'s> {
    pub fn new(sig: &'s dyn Signature) -> Self {
        Printer {
            sig,
            scopes: Vec::new(),
        }
    }

    pub fn print(mut self, t: &Term) -> String {
        self.term(t, 0)
    }

    fn paren(s: String, prec: u8, min: u8) -> String {
        if prec < min {
            format!("({s})")
        } else {
            s
        }
    }

    // Whether the instance of a polymorphic constant is fixed by the types
    // of the `nargs` arguments it is applied to.
    fn const_determined(&self, name: &str, nargs: usize) -> bool {
        let Some(generic) = self.sig.constant_type(name) else {
            return true;
        };
        let mut all = Vec::new();
        generic.type_vars(&mut all);
        if all.is_empty() {
            return true;
        }
        let mut seen = Vec::new();
        let mut ty = generic;
        for _ in 0..nargs {
            let Some((d, r)) = ty.dest_fun().map(|(d, r)| (d.clone(), r.clone())) else {
                break;
            };
            d.type_vars(&mut seen);
            ty = r;
        }
        all.iter().all(|v| seen.contains(v))
    }

    fn var(&self, v: &Var) -> String {
        let bare = self
            .scopes
            .iter()
            .rev()
            .find(|b| b.name() == v.name())
            .is_some_and(|b| b.ty() == v.ty());
        if bare {
            v.name().to_string()
        } else {
            format!("({}:{})", v.name(), annot_type(v.ty()))
        }
    }

    fn constant(&self, name: &str, ty: &HolType, nargs: usize) -> String {
        let base = if is_symbolic(name) {
            format!("({name})")
        } else {
            name.to_string()
        };
        if is_str_lit_name(name) || self.const_determined(name, nargs) {
            base
        } else {
            format!("({base}:{})", annot_type(ty))
        }
    }

    fn binder(&mut self, lead: &str, x: &Var, body: &Term) -> String {
        self.scopes.push(x.clone());
        let b = self.term(body, 0);
        self.scopes.pop();
        format!("{lead}{}:{}. {b}", x.name(), annot_type(x.ty()))
    }

    fn term(&mut self, t: &Term, min: u8) -> String {
        match t.kind() {
            TermKind::Var(v) => self.var(v),
            TermKind::Const(n, ty) => self.constant(n, ty, 0),
            TermKind::Abs(x, b) => Self::paren(self.binder("\\", x, b), 0, min),
            TermKind::Quote(b, _) => {
                let inner = self.term(b, 0);
                format!("Q_ {inner} _Q")
            }
            TermKind::Hole(c, ty) => {
                let inner = self.term(c, 0);
                format!("(H_ {inner} _H:{})", annot_type(ty))
            }
            TermKind::Eval(c, ty) => {
                let inner = self.term(c, 0);
                format!("(eval {inner} to {})", annot_type(ty))
            }
            TermKind::App(..) => self.app(t, min),
        }
    }

    fn app(&mut self, t: &Term, min: u8) -> String {
        let (head, args) = t.strip_app();
        if let Some((name, _)) = head.as_const() {
            let determined = self.const_determined(name, args.len());
            if determined && args.len() == 1 && BINDERS.contains(&name) {
                if let Some((x, body)) = args[0].dest_abs() {
                    return Self::paren(self.binder(name, x, body), 0, min);
                }
            }
            if name == "~" && args.len() == 1 {
                let a = self.term(args[0], NOT_PREC + 1);
                return Self::paren(format!("~{a}"), NOT_PREC, min);
            }
            if let (true, Some((prec, right))) = (determined && args.len() >= 2, infix(name)) {
                let (lmin, rmin) = if right {
                    (prec + 1, prec)
                } else {
                    (prec, prec + 1)
                };
                let l = self.term(args[0], lmin);
                let r = self.term(args[1], rmin);
                let mut s = format!("{l} {name} {r}");
                if args.len() == 2 {
                    return Self::paren(s, prec, min);
                }
                s = format!("({s})");
                for a in &args[2..] {
                    s.push(' ');
                    s.push_str(&self.term(a, ATOM_PREC));
                }
                return Self::paren(s, APP_PREC, min);
            }
        }
        let mut s = match head.as_const() {
            Some((n, ty)) => self.constant(n, ty, args.len()),
            None => self.term(head, ATOM_PREC),
        };
        for a in args {
            s.push(' ');
            s.push_str(&self.term(a, ATOM_PREC));
        }
        Self::paren(s, APP_PREC, min)
    }
}
