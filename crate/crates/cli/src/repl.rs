//! Line-oriented interactive loop.

use std::io::{BufRead, Write};

use crate::session::Session;
use crate::style::Style;

const HELP: &str = "commands: constant, axiom, define, register_nei, thm, check, echo\n\
                    meta: :state  :thms  :help  :quit";

/// Runs until `:quit` or end of input. Errors are reported and the loop
/// continues.
pub fn run<R: BufRead, W: Write>(
    session: &mut Session,
    input: R,
    mut out: W,
    style: Style,
    prompt: bool,
) -> std::io::Result<()> {
    let mut lines = input.lines();
    let mut n = 0usize;
    loop {
        if prompt {
            write!(out, "cqe> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        n += 1;
        let cmd = line.trim();
        if cmd.is_empty() || cmd.starts_with('#') {
            continue;
        }
        match cmd {
            ":quit" | ":q" => break,
            ":help" => writeln!(out, "{HELP}")?,
            ":state" => write!(out, "{}", session.state_summary())?,
            ":thms" => {
                for (name, th) in session.theorems() {
                    writeln!(out, "{name}: {}", session.show(th))?;
                }
            }
            c if c.starts_with(':') => {
                writeln!(out, "{}", style.error(&format!("unknown meta command {c}")))?
            }
            c => match session.run_text("<repl>", n - 1, c) {
                Ok(o) => writeln!(out, "{}", style.good(&o.to_string()))?,
                Err(e) => writeln!(out, "{} {e}", style.error("error:"))?,
            },
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn drive(input: &str) -> (Session, String) {
        let mut s = Session::new();
        let mut out = Vec::new();
        run(&mut s, input.as_bytes(), &mut out, Style::plain(), false).unwrap();
        (s, String::from_utf8(out).unwrap())
    }

    #[test]
    fn binds_lists_and_survives_errors() {
        let (s, out) = drive("thm r := REFL(`T`)\nthm ??? nonsense\n:thms\nthm r2 := SYM(r)\n:quit\necho unreachable\n");
        assert!(s.theorem("r").is_some());
        assert!(s.theorem("r2").is_some());
        assert!(out.contains("error:"));
        assert!(out.contains("r: |- T = T"), "{out}");
        assert!(!out.contains("unreachable"));
    }

    #[test]
    fn state_reports_axioms() {
        let (_, out) = drive(":state\n");
        assert!(out.contains("num_INDUCTION"));
    }
}
