//! Session state and command execution.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cqe_core::frontend::{parse_term_in, parse_type_in, print_term, FrontendError};
use cqe_core::kernel::{KernelError, Theorem};
use cqe_core::logic::{Logic, LogicError};
use cqe_core::syntax::{alpha_equivalent, HolType, Term};

use crate::error::CliError;
use crate::proof::{parse_proof, show_theorem, show_type, Evaluator};
use crate::script::{parse_command, parse_script, Command, Located, Spanned};

/// What a successful command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Constant { name: String, ty: String },
    Axiom { name: String, thm: String },
    Definition { name: String, thm: String },
    Registered { name: String },
    Theorem { name: String, thm: String },
    Checked { name: String },
    Echo(String),
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Constant { name, ty } => write!(f, "constant {name} : {ty}"),
            Outcome::Axiom { name, thm } => write!(f, "axiom {name}: {thm}"),
            Outcome::Definition { name, thm } => write!(f, "definition {name}: {thm}"),
            Outcome::Registered { name } => write!(f, "registered {name}"),
            Outcome::Theorem { name, thm } => write!(f, "{name}: {thm}"),
            Outcome::Checked { name } => write!(f, "check {name}: ok"),
            Outcome::Echo(t) => write!(f, "{t}"),
        }
    }
}

pub struct Session {
    pub logic: Logic,
    thms: BTreeMap<String, Theorem>,
    /// Theorem names in binding order.
    order: Vec<String>,
    /// Source of every command that succeeded, for replay.
    transcript: Vec<String>,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    /// A session over the standard theory: connectives, datatype facts,
    /// arithmetic base, `isPeano`/`isPresburger`.
    pub fn new() -> Session {
        Session {
            logic: Logic::standard().expect("the standard theory is well formed"),
            thms: BTreeMap::new(),
            order: Vec::new(),
            transcript: Vec::new(),
        }
    }

    /// Named theorems in binding order, including axioms and definitions
    /// introduced by commands.
    pub fn theorems(&self) -> impl Iterator<Item = (&str, &Theorem)> {
        self.order.iter().map(|n| (n.as_str(), &self.thms[n]))
    }

    pub fn theorem(&self, name: &str) -> Option<&Theorem> {
        self.thms.get(name)
    }

    /// Commands that succeeded, in order; running them in a fresh session
    /// rebuilds an equivalent state.
    pub fn transcript(&self) -> String {
        let mut s = String::new();
        for c in &self.transcript {
            s.push_str(c);
            s.push('\n');
        }
        s
    }

    fn lookup(&self, name: &str) -> Option<Theorem> {
        self.thms
            .get(name)
            .or_else(|| self.logic.axiom(name))
            .cloned()
    }

    fn bind(&mut self, name: &str, th: Theorem, src: &Located) -> Result<(), CliError> {
        if self.thms.contains_key(name) {
            return Err(CliError::proof(
                src.span(),
                format!("the name {name} is already bound"),
            ));
        }
        self.thms.insert(name.to_string(), th);
        self.order.push(name.to_string());
        Ok(())
    }

    fn term(&self, src: &Located, expected: Option<&HolType>) -> Result<Term, CliError> {
        parse_term_in(&self.logic.kernel, "", &src.text, expected)
            .map_err(|e: FrontendError| CliError::from(e.shifted(&src.file, src.line, src.col)))
    }

    fn kernel_err(&self, src: &Located, e: KernelError) -> CliError {
        self.logic_err(src, e.into())
    }

    fn logic_err(&self, src: &Located, e: LogicError) -> CliError {
        CliError::proof(src.span(), e.to_string())
    }

    pub fn show(&self, th: &Theorem) -> String {
        show_theorem(&self.logic, th)
    }

    pub fn run(&mut self, cmd: &Spanned<Command>) -> Result<Outcome, CliError> {
        let src = &cmd.source;
        let out = match &cmd.value {
            Command::Constant { name, ty } => {
                let t = parse_type_in(&self.logic.kernel, "", &ty.text)
                    .map_err(|e| CliError::from(e.shifted(&ty.file, ty.line, ty.col)))?;
                self.logic
                    .kernel
                    .new_constant(name, t.clone())
                    .map_err(|e| self.kernel_err(src, e))?;
                Outcome::Constant {
                    name: name.clone(),
                    ty: show_type(&t),
                }
            }
            Command::Axiom { name, term } => {
                let p = self.term(term, Some(&HolType::bool()))?;
                if self.thms.contains_key(name) {
                    return Err(CliError::proof(
                        src.span(),
                        format!("the name {name} is already bound"),
                    ));
                }
                let th = self
                    .logic
                    .kernel
                    .new_axiom(name, &p)
                    .map_err(|e| self.kernel_err(src, e))?;
                self.bind(name, th.clone(), src)?;
                Outcome::Axiom {
                    name: name.clone(),
                    thm: self.show(&th),
                }
            }
            Command::Define { name, term } => {
                let body = self.term(term, None)?;
                if self.thms.contains_key(name) {
                    return Err(CliError::proof(
                        src.span(),
                        format!("the name {name} is already bound"),
                    ));
                }
                let th = self
                    .logic
                    .kernel
                    .new_basic_definition(name, &body)
                    .map_err(|e| self.kernel_err(src, e))?;
                self.bind(name, th.clone(), src)?;
                Outcome::Definition {
                    name: name.clone(),
                    thm: self.show(&th),
                }
            }
            Command::RegisterNei { thm } => {
                let th = self
                    .lookup(thm)
                    .ok_or_else(|| CliError::proof(src.span(), format!("unknown theorem {thm}")))?;
                self.logic
                    .kernel
                    .register_not_effective(&th)
                    .map_err(|e| self.kernel_err(src, e))?;
                Outcome::Registered { name: thm.clone() }
            }
            Command::Thm { name, proof } => {
                if self.logic.axiom(name).is_some() {
                    return Err(CliError::proof(
                        src.span(),
                        format!("the name {name} is already an axiom"),
                    ));
                }
                let expr = parse_proof(proof)?;
                let lookup = |n: &str| self.lookup(n);
                let ev = Evaluator {
                    logic: &self.logic,
                    lookup: &lookup,
                };
                let th = ev.theorem(&expr)?;
                self.bind(name, th.clone(), src)?;
                Outcome::Theorem {
                    name: name.clone(),
                    thm: self.show(&th),
                }
            }
            Command::Check { thm, term } => {
                let th = self
                    .lookup(thm)
                    .ok_or_else(|| CliError::proof(src.span(), format!("unknown theorem {thm}")))?;
                let want = self.term(term, Some(&HolType::bool()))?;
                if !alpha_equivalent(th.concl(), &want) {
                    let k = &self.logic.kernel;
                    return Err(CliError::proof(
                        src.span(),
                        format!(
                            "{thm} does not match\n  proved:   {}\n  expected: {}",
                            print_term(k, th.concl()),
                            print_term(k, &want)
                        ),
                    ));
                }
                Outcome::Checked { name: thm.clone() }
            }
            Command::Echo { text } => Outcome::Echo(text.clone()),
        };
        if !matches!(cmd.value, Command::Echo { .. }) {
            self.transcript.push(cmd.source.text.clone());
        }
        Ok(out)
    }

    /// Parses and runs one command given as text.
    pub fn run_text(&mut self, file: &str, line: usize, text: &str) -> Result<Outcome, CliError> {
        let source = Located {
            text: text.to_string(),
            file: file.to_string(),
            line,
            col: 0,
        };
        let value = parse_command(&source)?;
        self.run(&Spanned { value, source })
    }

    /// Runs a whole script, stopping at the first failure. Each outcome is
    /// passed to `report` as it happens.
    pub fn run_script(
        &mut self,
        file: &str,
        text: &str,
        mut report: impl FnMut(&Spanned<Command>, &Outcome),
    ) -> Result<(), ScriptFailure> {
        let script = parse_script(file, text).map_err(|error| ScriptFailure {
            command: None,
            error,
        })?;
        for cmd in &script {
            match self.run(cmd) {
                Ok(out) => report(cmd, &out),
                Err(error) => {
                    return Err(ScriptFailure {
                        command: Some(cmd.source.text.clone()),
                        error,
                    })
                }
            }
        }
        Ok(())
    }

    /// A readable summary for the REPL's `:state`.
    pub fn state_summary(&self) -> String {
        let k = &self.logic.kernel;
        let mut s = String::new();
        let _ = writeln!(s, "constants: {}", k.constants().count());
        let _ = writeln!(s, "axioms:");
        for (n, th) in k.axioms() {
            let _ = writeln!(s, "  {n}: {}", self.show(th));
        }
        let _ = writeln!(s, "definitions: {}", k.definitions().len());
        let _ = writeln!(s, "registered side conditions:");
        for th in k.registry().theorems() {
            let _ = writeln!(s, "  {}", self.show(th));
        }
        let _ = writeln!(s, "theorems: {}", self.order.len());
        s
    }
}

/// A script that stopped early.
#[derive(Debug)]
pub struct ScriptFailure {
    /// Text of the failing command, if the script parsed.
    pub command: Option<String>,
    pub error: CliError,
}

impl std::fmt::Display for ScriptFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(c) = &self.command {
            writeln!(f, "in command: {c}")?;
        }
        write!(f, "{}", self.error)
    }
}
