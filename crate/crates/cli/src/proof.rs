//! Proof expressions: `RULE(arg, ...)` trees over theorem names,
//! backquoted terms `` `t` `` and backquoted types `` `:ty` ``.

use cqe_core::frontend::{parse_term_in, parse_type_in, print_term, print_type, FrontendError};
use cqe_core::kernel::oracle::Arithmetic;
use cqe_core::kernel::{KernelError, Theorem};
use cqe_core::logic::{Logic, LogicError};
use cqe_core::syntax::{HolType, Term, Var};

use crate::error::CliError;
use crate::script::Located;

#[derive(Clone, Debug)]
pub enum Expr {
    Name(String, Located),
    Call(String, Vec<Expr>, Located),
    Term(Located),
    Type(Located),
}

impl Expr {
    pub fn source(&self) -> &Located {
        match self {
            Expr::Name(_, l) | Expr::Call(_, _, l) | Expr::Term(l) | Expr::Type(l) => l,
        }
    }
}

struct Lexer<'a> {
    src: &'a Located,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> CliError {
        let len = self.src.text[at..].chars().next().map_or(0, char::len_utf8);
        CliError::Parse {
            span: self.src.slice(at, len).span(),
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.text[self.pos..].chars().next()
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        match self.peek() {
            Some('`') => {
                let open = self.pos;
                let Some(len) = self.src.text[open + 1..].find('`') else {
                    return Err(self.err(open, "unterminated backquote"));
                };
                self.pos = open + 1 + len + 1;
                let inner = self.src.slice(open + 1, len);
                match inner.text.trim_start().strip_prefix(':') {
                    Some(_) => {
                        let colon = inner.text.find(':').expect("colon present");
                        let ty = inner.slice(colon + 1, inner.text.len() - colon - 1);
                        Ok(Expr::Type(ty))
                    }
                    None => Ok(Expr::Term(inner)),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let begin = self.pos;
                let rest = &self.src.text[begin..];
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
                    .unwrap_or(rest.len());
                self.pos += len;
                let name = rest[..len].to_string();
                if self.peek() != Some('(') {
                    return Ok(Expr::Name(name, self.src.slice(begin, len)));
                }
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek() == Some(')') {
                    self.pos += 1;
                } else {
                    loop {
                        args.push(self.expr()?);
                        match self.peek() {
                            Some(',') => self.pos += 1,
                            Some(')') => {
                                self.pos += 1;
                                break;
                            }
                            _ => {
                                return Err(self
                                    .err(self.pos.min(self.src.text.len()), "expected ',' or ')'"))
                            }
                        }
                    }
                }
                Ok(Expr::Call(
                    name,
                    args,
                    self.src.slice(begin, self.pos - begin),
                ))
            }
            _ => Err(self.err(
                self.pos.min(self.src.text.len()),
                "expected a rule, a theorem name or a backquoted term",
            )),
        }
    }
}

pub fn parse_proof(src: &Located) -> Result<Expr, CliError> {
    let mut lx = Lexer { src, pos: 0 };
    let e = lx.expr()?;
    if lx.peek().is_some() {
        return Err(lx.err(lx.pos, "unexpected text after the proof expression"));
    }
    Ok(e)
}

pub enum Val {
    Thm(Theorem),
    Term(Term),
    Type(HolType),
    Name(String),
}

impl Val {
    fn kind(&self) -> &'static str {
        match self {
            Val::Thm(_) => "a theorem",
            Val::Term(_) => "a term",
            Val::Type(_) => "a type",
            Val::Name(_) => "a name",
        }
    }
}

/// One line per rule: name and argument shape.
pub const RULES: &[(&str, &str)] = &[
    ("REFL", "t"),
    ("TRANS", "th1, th2"),
    ("MK_COMB", "th1, th2"),
    ("ABS", "x, th"),
    ("BETA", "(\\x. b) a"),
    ("ASSUME", "p"),
    ("EQ_MP", "th1, th2"),
    ("DEDUCT_ANTISYM", "th1, th2"),
    ("INST", "th, x1, t1, ..."),
    ("INST_TYPE", "th, :'A, :ty, ..."),
    ("EVAL_CONG", "th, :ty"),
    ("LAW_OF_QUO", "Q_ t _Q"),
    ("LAW_OF_QUO_STEP", "Q_ t _Q"),
    ("DISQUO", "Q_ a _Q, :ty"),
    ("APP_SPLIT", "a, b, :alpha, :beta"),
    ("ABS_SPLIT", "x, a, :beta"),
    ("QUOTABLE", "a"),
    ("BETA_EVAL", "x, b, :ty"),
    ("BETA_REVAL", "x, b, a, :ty"),
    ("NOT_FREE_OR_EFFECTIVE_IN", "x, b"),
    ("NEITHER_EFFECTIVE", "x, y, a, b"),
    ("IS_EXPR_TYPE_CONV", "c, tyc"),
    ("IS_FREE_IN_CONV", "xc, bc"),
    ("IS_PEANO_CONV", "c"),
    ("IS_PRESBURGER_CONV", "c"),
    ("DEF", "name"),
    ("AXIOM", "name"),
    ("SYM", "th"),
    ("AP_TERM", "f, th"),
    ("AP_THM", "th, x"),
    ("EQT_INTRO", "th"),
    ("EQT_ELIM", "th"),
    ("EQF_INTRO", "th"),
    ("EQF_ELIM", "th"),
    ("PROVE_HYP", "th1, th2"),
    ("CONJ", "th1, th2"),
    ("CONJUNCT1", "th"),
    ("CONJUNCT2", "th"),
    ("MP", "th1, th2"),
    ("DISCH", "p, th"),
    ("UNDISCH", "th"),
    ("GEN", "x, th"),
    ("SPEC", "t, th"),
    ("CONTR", "p, th"),
    ("DISJ1", "th, q"),
    ("DISJ2", "p, th"),
    ("DISJ_CASES", "th, th1, th2"),
    ("NOT_INTRO", "th"),
    ("NOT_ELIM", "th"),
    ("BETA_CONV", "t"),
    ("BETA_RULE", "th"),
    ("SUBS", "eq1, ..., th"),
    ("DISQUO_CONV", "Q_ t _Q"),
    ("NEI_INTRO", "th"),
    ("DISCHARGE", "th"),
];

pub struct Evaluator<'a> {
    pub logic: &'a Logic,
    pub lookup: &'a dyn Fn(&str) -> Option<Theorem>,
}

type R<T> = Result<T, CliError>;

impl Evaluator<'_> {
    fn logic_err(&self, src: &Located, e: LogicError) -> CliError {
        let msg = match &e {
            LogicError::Kernel(KernelError::SubstitutionBlocked(b)) => {
                let k = &self.logic.kernel;
                format!(
                    "substitution of {} for {} blocked under the binder {}\n  needs a registered theorem |- ~IS-EFFECTIVE-IN({}, {}) or |- ~IS-EFFECTIVE-IN({}, {})",
                    print_term(k, &b.replacement),
                    print_term(k, &b.var.to_term()),
                    print_term(k, &b.binder.to_term()),
                    print_term(k, &b.binder.to_term()),
                    print_term(k, &b.replacement),
                    print_term(k, &b.var.to_term()),
                    print_term(k, &b.body),
                )
            }
            _ => e.to_string(),
        };
        CliError::proof(src.span(), msg)
    }

    fn frontend_err(src: &Located, e: FrontendError) -> CliError {
        e.shifted(&src.file, src.line, src.col).into()
    }

    pub fn term(&self, src: &Located) -> R<Term> {
        parse_term_in(&self.logic.kernel, "", &src.text, None)
            .map_err(|e| Self::frontend_err(src, e))
    }

    pub fn ty(&self, src: &Located) -> R<HolType> {
        parse_type_in(&self.logic.kernel, "", &src.text).map_err(|e| Self::frontend_err(src, e))
    }

    pub fn eval(&self, e: &Expr) -> R<Val> {
        match e {
            Expr::Term(src) => Ok(Val::Term(self.term(src)?)),
            Expr::Type(src) => Ok(Val::Type(self.ty(src)?)),
            Expr::Name(n, _) => Ok(match (self.lookup)(n) {
                Some(th) => Val::Thm(th),
                None => Val::Name(n.clone()),
            }),
            Expr::Call(rule, args, src) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<R<Vec<_>>>()?;
                let th = self.apply(rule, args, &vals, src)?;
                Ok(Val::Thm(th))
            }
        }
    }

    /// Evaluates an expression that must produce a theorem.
    pub fn theorem(&self, e: &Expr) -> R<Theorem> {
        match self.eval(e)? {
            Val::Thm(th) => Ok(th),
            Val::Name(n) => Err(CliError::proof(
                e.source().span(),
                format!("unknown theorem {n}"),
            )),
            v => Err(CliError::proof(
                e.source().span(),
                format!("expected a theorem, found {}", v.kind()),
            )),
        }
    }

    fn apply(&self, rule: &str, exprs: &[Expr], vals: &[Val], src: &Located) -> R<Theorem> {
        let lg = self.logic;
        let k = &lg.kernel;
        let Some((_, shape)) = RULES.iter().find(|(n, _)| *n == rule) else {
            return Err(CliError::proof(src.span(), format!("unknown rule {rule}")));
        };
        let arity = |n: usize| -> R<()> {
            if vals.len() == n {
                Ok(())
            } else {
                Err(CliError::proof(
                    src.span(),
                    format!("{rule} takes {n} arguments ({shape}), given {}", vals.len()),
                ))
            }
        };
        let wrong = |i: usize, want: &str| {
            let (at, found) = match vals.get(i) {
                Some(v) => (exprs[i].source().span(), v.kind()),
                None => (src.span(), "nothing"),
            };
            CliError::proof(
                at,
                format!("{rule}: argument {} should be {want}, found {found}", i + 1),
            )
        };
        let thm = |i: usize| match vals.get(i) {
            Some(Val::Thm(t)) => Ok(t),
            Some(Val::Name(n)) => Err(CliError::proof(
                exprs[i].source().span(),
                format!("unknown theorem {n}"),
            )),
            _ => Err(wrong(i, "a theorem")),
        };
        let term = |i: usize| match vals.get(i) {
            Some(Val::Term(t)) => Ok(t),
            _ => Err(wrong(i, "a backquoted term")),
        };
        let var = |i: usize| -> R<Var> {
            term(i)?
                .as_var()
                .cloned()
                .ok_or_else(|| wrong(i, "a variable"))
        };
        let ty = |i: usize| match vals.get(i) {
            Some(Val::Type(t)) => Ok(t),
            _ => Err(wrong(i, "a backquoted type `:ty`")),
        };
        let name = |i: usize| match (vals.get(i), exprs.get(i)) {
            (Some(_), Some(Expr::Name(n, _))) => Ok(n.clone()),
            _ => Err(wrong(i, "a name")),
        };
        let lerr = |e: LogicError| self.logic_err(src, e);
        let kerr = |e: KernelError| self.logic_err(src, e.into());

        macro_rules! k1 {
            ($e:expr) => {{
                arity(1)?;
                $e.map_err(kerr)
            }};
        }
        macro_rules! l1 {
            ($e:expr) => {{
                arity(1)?;
                $e.map_err(lerr)
            }};
        }
        macro_rules! k2 {
            ($e:expr) => {{
                arity(2)?;
                $e.map_err(kerr)
            }};
        }
        macro_rules! l2 {
            ($e:expr) => {{
                arity(2)?;
                $e.map_err(lerr)
            }};
        }

        match rule {
            "REFL" => k1!(k.refl(term(0)?)),
            "TRANS" => k2!(k.trans(thm(0)?, thm(1)?)),
            "MK_COMB" => k2!(k.mk_comb(thm(0)?, thm(1)?)),
            "ABS" => k2!(k.abs(&var(0)?, thm(1)?)),
            "BETA" => k1!(k.beta(term(0)?)),
            "ASSUME" => k1!(k.assume(term(0)?)),
            "EQ_MP" => k2!(k.eq_mp(thm(0)?, thm(1)?)),
            "DEDUCT_ANTISYM" => k2!(k.deduct_antisym(thm(0)?, thm(1)?)),
            "INST" => {
                if vals.len() % 2 != 1 {
                    return Err(CliError::proof(src.span(), format!("INST takes {shape}")));
                }
                let pairs = (1..vals.len())
                    .step_by(2)
                    .map(|i| Ok((var(i)?, term(i + 1)?.clone())))
                    .collect::<R<Vec<_>>>()?;
                k.inst(&pairs, thm(0)?).map_err(kerr)
            }
            "INST_TYPE" => {
                if vals.len() % 2 != 1 {
                    return Err(CliError::proof(
                        src.span(),
                        format!("INST_TYPE takes {shape}"),
                    ));
                }
                let mut theta = cqe_core::syntax::TypeSubst::new();
                for i in (1..vals.len()).step_by(2) {
                    let HolType::Var(a) = ty(i)? else {
                        return Err(wrong(i, "a type variable"));
                    };
                    theta.insert(a.clone(), ty(i + 1)?.clone());
                }
                k.inst_type(&theta, thm(0)?).map_err(kerr)
            }
            "EVAL_CONG" => k2!(k.eval_cong(thm(0)?, ty(1)?)),
            "LAW_OF_QUO" => k1!(k.law_of_quo(term(0)?)),
            "LAW_OF_QUO_STEP" => k1!(k.law_of_quo_step(term(0)?)),
            "DISQUO" => k2!(k.disquo(term(0)?, ty(1)?)),
            "APP_SPLIT" => {
                arity(4)?;
                k.app_split(term(0)?, term(1)?, ty(2)?, ty(3)?)
                    .map_err(kerr)
            }
            "ABS_SPLIT" => {
                arity(3)?;
                k.abs_split(&var(0)?, term(1)?, ty(2)?).map_err(kerr)
            }
            "QUOTABLE" => k1!(k.quotable(term(0)?)),
            "BETA_EVAL" => {
                arity(3)?;
                k.beta_eval(&var(0)?, term(1)?, ty(2)?).map_err(kerr)
            }
            "BETA_REVAL" => {
                arity(4)?;
                k.beta_reval(&var(0)?, term(1)?, term(2)?, ty(3)?)
                    .map_err(kerr)
            }
            "NOT_FREE_OR_EFFECTIVE_IN" => k2!(k.not_free_or_effective_in(&var(0)?, term(1)?)),
            "NEITHER_EFFECTIVE" => {
                arity(4)?;
                k.neither_effective(&var(0)?, &var(1)?, term(2)?, term(3)?)
                    .map_err(kerr)
            }
            "IS_EXPR_TYPE_CONV" => l2!(lg.is_expr_type_conv(term(0)?, term(1)?)),
            "IS_FREE_IN_CONV" => l2!(lg.is_free_in_conv(term(0)?, term(1)?)),
            "IS_PEANO_CONV" => l1!(lg.arithmetic_conv(Arithmetic::Peano, term(0)?)),
            "IS_PRESBURGER_CONV" => l1!(lg.arithmetic_conv(Arithmetic::Presburger, term(0)?)),
            "DEF" => {
                arity(1)?;
                let n = name(0)?;
                lg.definition(&n)
                    .cloned()
                    .ok_or_else(|| CliError::proof(src.span(), format!("no definition named {n}")))
            }
            "AXIOM" => {
                arity(1)?;
                let n = name(0)?;
                lg.axiom(&n)
                    .cloned()
                    .ok_or_else(|| CliError::proof(src.span(), format!("no axiom named {n}")))
            }
            "SYM" => l1!(lg.sym(thm(0)?)),
            "AP_TERM" => l2!(lg.ap_term(term(0)?, thm(1)?)),
            "AP_THM" => l2!(lg.ap_thm(thm(0)?, term(1)?)),
            "EQT_INTRO" => l1!(lg.eqt_intro(thm(0)?)),
            "EQT_ELIM" => l1!(lg.eqt_elim(thm(0)?)),
            "EQF_INTRO" => l1!(lg.eqf_intro(thm(0)?)),
            "EQF_ELIM" => l1!(lg.eqf_elim(thm(0)?)),
            "PROVE_HYP" => l2!(lg.prove_hyp(thm(0)?, thm(1)?)),
            "CONJ" => l2!(lg.conj(thm(0)?, thm(1)?)),
            "CONJUNCT1" => l1!(lg.conjunct1(thm(0)?)),
            "CONJUNCT2" => l1!(lg.conjunct2(thm(0)?)),
            "MP" => l2!(lg.mp(thm(0)?, thm(1)?)),
            "DISCH" => l2!(lg.disch(term(0)?, thm(1)?)),
            "UNDISCH" => l1!(lg.undisch(thm(0)?)),
            "GEN" => l2!(lg.gen(&var(0)?, thm(1)?)),
            "SPEC" => l2!(lg.spec(term(0)?, thm(1)?)),
            "CONTR" => l2!(lg.contr(term(0)?, thm(1)?)),
            "DISJ1" => l2!(lg.disj1(thm(0)?, term(1)?)),
            "DISJ2" => l2!(lg.disj2(term(0)?, thm(1)?)),
            "DISJ_CASES" => {
                arity(3)?;
                lg.disj_cases(thm(0)?, thm(1)?, thm(2)?).map_err(lerr)
            }
            "NOT_INTRO" => l1!(lg.not_intro(thm(0)?)),
            "NOT_ELIM" => l1!(lg.not_elim(thm(0)?)),
            "BETA_CONV" => l1!(lg.beta_conv_depth(term(0)?)),
            "BETA_RULE" => l1!(lg.beta_rule(thm(0)?)),
            "SUBS" => {
                if vals.is_empty() {
                    return Err(CliError::proof(src.span(), format!("SUBS takes {shape}")));
                }
                let last = vals.len() - 1;
                let eqs = (0..last).map(|i| thm(i).cloned()).collect::<R<Vec<_>>>()?;
                lg.subs(&eqs, thm(last)?).map_err(lerr)
            }
            "DISQUO_CONV" => l1!(lg.disquo_conv(term(0)?)),
            "NEI_INTRO" => l1!(lg.nei_intro(thm(0)?)),
            "DISCHARGE" => l1!(lg.discharge_quote_conditions(thm(0)?)),
            _ => unreachable!("every listed rule is handled"),
        }
    }
}

/// `h1, h2 |- c` in surface syntax.
pub fn show_theorem(lg: &Logic, th: &Theorem) -> String {
    let k = &lg.kernel;
    let hyps: Vec<String> = th.hyps().iter().map(|h| print_term(k, h)).collect();
    let concl = print_term(k, th.concl());
    if hyps.is_empty() {
        format!("|- {concl}")
    } else {
        format!("{} |- {concl}", hyps.join(", "))
    }
}

pub fn show_type(ty: &HolType) -> String {
    print_type(ty)
}
