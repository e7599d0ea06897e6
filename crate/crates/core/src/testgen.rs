//! Random well-typed terms over the standard signature, for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::kernel::connectives::{mk_conj, mk_disj, mk_exists, mk_forall, mk_imp, mk_neg};
use crate::syntax::{HolType, Term, Var};

pub const NAMES: &[&str] = &["a", "b", "c", "x", "y", "z"];

#[derive(Clone, Debug)]
pub struct TermGen {
    pub max_depth: usize,
    pub evals: bool,
    pub holes: bool,
    /// Allow type variables in the types of free variables.
    pub poly: bool,
}

impl TermGen {
    /// Eval-free, hole-free terms.
    pub fn pure(max_depth: usize) -> TermGen {
        TermGen {
            max_depth,
            evals: false,
            holes: false,
            poly: true,
        }
    }

    /// Every term former, including holes and evaluations.
    pub fn full(max_depth: usize) -> TermGen {
        TermGen {
            max_depth,
            evals: true,
            holes: true,
            poly: true,
        }
    }
}

fn bool_ty() -> HolType {
    HolType::bool()
}

fn num() -> HolType {
    HolType::num()
}

fn eps() -> HolType {
    HolType::epsilon()
}

fn fun(a: HolType, b: HolType) -> HolType {
    HolType::fun(a, b)
}

struct Ctx {
    bound: Vec<Var>,
    in_quote: bool,
}

impl TermGen {
    /// A small type; `depth` bounds the nesting of arrows.
    pub fn ty<R: Rng>(&self, rng: &mut R, depth: usize) -> HolType {
        let k = if depth == 0 {
            rng.gen_range(0..4)
        } else {
            rng.gen_range(0..6)
        };
        match k {
            0 => bool_ty(),
            1 => num(),
            2 => eps(),
            3 if self.poly => HolType::var("A"),
            3 => bool_ty(),
            _ => fun(self.ty(rng, depth - 1), self.ty(rng, depth - 1)),
        }
    }

    fn simple_ty<R: Rng>(&self, rng: &mut R) -> HolType {
        [bool_ty(), num(), eps(), fun(num(), bool_ty())]
            .choose(rng)
            .cloned()
            .unwrap()
    }

    pub fn term<R: Rng>(&self, rng: &mut R, ty: &HolType) -> Term {
        let mut ctx = Ctx {
            bound: Vec::new(),
            in_quote: false,
        };
        let d = rng.gen_range(0..=self.max_depth);
        self.go(rng, ty, d, &mut ctx)
    }

    /// A boolean term; the usual starting point.
    pub fn formula<R: Rng>(&self, rng: &mut R) -> Term {
        self.term(rng, &bool_ty())
    }

    /// A term of a random type.
    pub fn any<R: Rng>(&self, rng: &mut R) -> Term {
        let ty = self.ty(rng, 1);
        self.term(rng, &ty)
    }

    pub fn var<R: Rng>(&self, rng: &mut R, ty: &HolType) -> Var {
        Var::new(NAMES.choose(rng).unwrap(), ty.clone())
    }

    fn leaf<R: Rng>(&self, rng: &mut R, ty: &HolType, ctx: &mut Ctx) -> Term {
        let bound: Vec<&Var> = ctx.bound.iter().filter(|v| v.ty() == ty).collect();
        let mut consts: Vec<Term> = Vec::new();
        let (b, n) = (bool_ty(), num());
        if *ty == b {
            consts.push(Term::constant("T", b.clone()));
            consts.push(Term::constant("F", b.clone()));
        } else if *ty == n {
            consts.push(Term::constant("_0", n.clone()));
        } else if *ty == fun(n.clone(), n.clone()) {
            consts.push(Term::constant("SUC", ty.clone()));
        } else if *ty == fun(n.clone(), fun(n.clone(), n.clone())) {
            consts.push(Term::constant("+", ty.clone()));
            consts.push(Term::constant("*", ty.clone()));
        } else if *ty == fun(b.clone(), b.clone()) {
            consts.push(Term::constant("~", ty.clone()));
        } else if *ty == fun(b.clone(), fun(b.clone(), b.clone())) {
            consts.push(Term::constant("/\\", ty.clone()));
            consts.push(Term::constant("\\/", ty.clone()));
            consts.push(Term::constant("==>", ty.clone()));
        } else if let Some((a, r)) = ty.dest_fun() {
            if let Some((a2, r2)) = r.dest_fun() {
                if a == a2 && *r2 == b {
                    consts.push(Term::constant("=", ty.clone()));
                }
            }
        }
        if *ty == eps() && rng.gen_bool(0.5) {
            let inner = self.simple_ty(rng);
            let was = std::mem::replace(&mut ctx.in_quote, true);
            let body = self.leaf(rng, &inner, ctx);
            ctx.in_quote = was;
            return Term::quote(body).expect("quotable leaf");
        }
        let roll = rng.gen_range(0..10);
        if roll < 4 && !bound.is_empty() {
            return bound.choose(rng).unwrap().to_term();
        }
        if roll < 7 && !consts.is_empty() {
            return consts.choose(rng).unwrap().clone();
        }
        Term::from_var(self.var(rng, ty))
    }

    fn go<R: Rng>(&self, rng: &mut R, ty: &HolType, depth: usize, ctx: &mut Ctx) -> Term {
        if depth == 0 || rng.gen_bool(0.15) {
            return self.leaf(rng, ty, ctx);
        }
        let d = depth - 1;
        let (b, n) = (bool_ty(), num());
        // special formers that only fit some types
        let roll = rng.gen_range(0..10);
        if roll == 0 && self.holes && ctx.in_quote {
            let was = std::mem::replace(&mut ctx.in_quote, false);
            let content = self.go(rng, &eps(), d, ctx);
            ctx.in_quote = was;
            return Term::hole(content, ty.clone()).expect("hole");
        }
        if roll == 1 && self.evals && !ctx.in_quote {
            let content = self.go(rng, &eps(), d, ctx);
            return Term::eval(content, ty.clone()).expect("eval");
        }
        if roll == 2 && *ty == eps() {
            let inner = self.simple_ty(rng);
            let was = std::mem::replace(&mut ctx.in_quote, true);
            let body = self.go(rng, &inner, d, ctx);
            ctx.in_quote = was;
            return Term::quote(body).expect("quotable body");
        }
        if let Some((a, r)) = ty.dest_fun() {
            if rng.gen_bool(0.6) {
                let v = self.var(rng, a);
                ctx.bound.push(v.clone());
                let body = self.go(rng, r, d, ctx);
                ctx.bound.pop();
                return Term::abs(v, body);
            }
        }
        if *ty == b && rng.gen_bool(0.6) {
            return match rng.gen_range(0..6) {
                0 => {
                    let l = self.go(rng, &b, d, ctx);
                    mk_conj(l, self.go(rng, &b, d, ctx)).unwrap()
                }
                1 => {
                    let l = self.go(rng, &b, d, ctx);
                    mk_disj(l, self.go(rng, &b, d, ctx)).unwrap()
                }
                2 => {
                    let l = self.go(rng, &b, d, ctx);
                    mk_imp(l, self.go(rng, &b, d, ctx)).unwrap()
                }
                3 => mk_neg(self.go(rng, &b, d, ctx)).unwrap(),
                4 => {
                    let t = self.simple_ty(rng);
                    let l = self.go(rng, &t, d, ctx);
                    Term::mk_eq(l, self.go(rng, &t, d, ctx)).unwrap()
                }
                _ => {
                    let t = self.simple_ty(rng);
                    let v = self.var(rng, &t);
                    ctx.bound.push(v.clone());
                    let body = self.go(rng, &b, d, ctx);
                    ctx.bound.pop();
                    if rng.gen_bool(0.5) {
                        mk_forall(v, body).unwrap()
                    } else {
                        mk_exists(v, body).unwrap()
                    }
                }
            };
        }
        if *ty == n && rng.gen_bool(0.5) {
            let f = ["SUC", "+", "*"].choose(rng).unwrap();
            let l = self.go(rng, &n, d, ctx);
            if *f == "SUC" {
                return Term::app(Term::constant("SUC", fun(n.clone(), n.clone())), l).unwrap();
            }
            let r = self.go(rng, &n, d, ctx);
            let op = Term::constant(f, fun(n.clone(), fun(n.clone(), n.clone())));
            return Term::apps(op, [l, r]).unwrap();
        }
        // generic application
        let a = self.simple_ty(rng);
        let f = self.go(rng, &fun(a.clone(), ty.clone()), d, ctx);
        let x = self.go(rng, &a, d, ctx);
        Term::app(f, x).unwrap()
    }
}
