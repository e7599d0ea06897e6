//! Script syntax: one command per line, indented lines continue the
//! previous command, `#` starts a comment line.
//!
//! ```text
//! constant c : num
//! axiom ax := `c = c`
//! define two := `SUC (SUC 0)`
//! thm lem := GEN(`x:epsilon`, DISCH(`isExprType x (TyBase "bool")`, em))
//! register_nei nei
//! check lem matches `!x:epsilon. ...`
//! echo some text
//! ```

use cqe_core::frontend::SourceSpan;

use crate::error::CliError;

/// Text together with where it starts in its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub file: String,
    /// Zero-based line and column offsets of the first character.
    pub line: usize,
    pub col: usize,
}

impl Located {
    pub fn span(&self) -> SourceSpan {
        let lines = self.text.lines().count().max(1);
        let last = self.text.lines().last().unwrap_or("");
        let end_col = if lines == 1 {
            self.col + last.chars().count()
        } else {
            last.chars().count()
        };
        SourceSpan::new(
            &self.file,
            self.line + 1,
            self.col + 1,
            self.line + lines,
            end_col.max(1),
        )
    }

    /// A sub-slice starting `byte` bytes into the text.
    pub fn slice(&self, byte: usize, len: usize) -> Located {
        let before = &self.text[..byte];
        let nl = before.matches('\n').count();
        let col = match before.rfind('\n') {
            Some(i) => before[i + 1..].chars().count(),
            None => self.col + before.chars().count(),
        };
        Located {
            text: self.text[byte..byte + len].to_string(),
            file: self.file.clone(),
            line: self.line + nl,
            col,
        }
    }

    /// The text with surrounding whitespace and one pair of backquotes removed.
    pub fn unquoted(&self) -> Located {
        let lead = self.text.len() - self.text.trim_start().len();
        let trimmed = self.text.trim();
        let mut out = self.slice(lead, trimmed.len());
        if out.text.len() >= 2 && out.text.starts_with('`') && out.text.ends_with('`') {
            out = out.slice(1, out.text.len() - 2);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Constant { name: String, ty: Located },
    Axiom { name: String, term: Located },
    Define { name: String, term: Located },
    RegisterNei { thm: String },
    Thm { name: String, proof: Located },
    Check { thm: String, term: Located },
    Echo { text: String },
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Constant { .. } => "constant",
            Command::Axiom { .. } => "axiom",
            Command::Define { .. } => "define",
            Command::RegisterNei { .. } => "register_nei",
            Command::Thm { .. } => "thm",
            Command::Check { .. } => "check",
            Command::Echo { .. } => "echo",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub value: T,
    pub source: Located,
}

pub type Script = Vec<Spanned<Command>>;

fn is_name(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_error(src: &Located, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        span: src.span(),
        msg: msg.into(),
    }
}

/// Splits `text` into command chunks.
pub fn chunks(file: &str, text: &str) -> Vec<Located> {
    let mut out: Vec<Located> = Vec::new();
    for (i, raw) in text.split_inclusive('\n').enumerate() {
        let line = raw.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let continues = line.starts_with([' ', '\t']);
        match out.last_mut() {
            Some(prev) if continues => {
                prev.text.push('\n');
                prev.text.push_str(line);
            }
            _ => out.push(Located {
                text: line.to_string(),
                file: file.to_string(),
                line: i,
                col: 0,
            }),
        }
    }
    out
}

/// Parses a single command.
pub fn parse_command(src: &Located) -> Result<Command, CliError> {
    let text = src.text.as_str();
    let kw_end = text.find(char::is_whitespace).unwrap_or(text.len());
    let kw = &text[..kw_end];
    let rest = src.slice(kw_end, text.len() - kw_end);
    let split_at = |sep: &str| -> Result<(String, Located), CliError> {
        let found = rest.text.match_indices(sep).map(|(i, _)| i).find(|&i| {
            // word separators need whitespace on both sides
            !sep.starts_with(char::is_alphabetic)
                || (rest.text[..i].ends_with(char::is_whitespace)
                    && rest.text[i + sep.len()..].starts_with(char::is_whitespace))
        });
        let Some(i) = found else {
            return Err(parse_error(src, format!("{kw}: expected '{sep}'")));
        };
        let name = rest.text[..i].trim().to_string();
        if !is_name(&name) {
            return Err(parse_error(src, format!("{kw}: bad name {name:?}")));
        }
        let after = rest
            .slice(i + sep.len(), rest.text.len() - i - sep.len())
            .unquoted();
        if after.text.trim().is_empty() {
            return Err(parse_error(
                src,
                format!("{kw}: missing text after '{sep}'"),
            ));
        }
        Ok((name, after))
    };
    let single_name = || -> Result<String, CliError> {
        let name = rest.text.trim();
        if is_name(name) {
            Ok(name.to_string())
        } else {
            Err(parse_error(src, format!("{kw}: bad name {name:?}")))
        }
    };
    Ok(match kw {
        "constant" => {
            let (name, ty) = split_at(":")?;
            Command::Constant { name, ty }
        }
        "axiom" => {
            let (name, term) = split_at(":=")?;
            Command::Axiom { name, term }
        }
        "define" => {
            let (name, term) = split_at(":=")?;
            Command::Define { name, term }
        }
        "thm" => {
            let (name, proof) = split_at(":=")?;
            Command::Thm { name, proof }
        }
        "check" => {
            let (thm, term) = split_at("matches")?;
            Command::Check { thm, term }
        }
        "register_nei" => Command::RegisterNei {
            thm: single_name()?,
        },
        "echo" => Command::Echo {
            text: rest.text.trim().to_string(),
        },
        other => return Err(parse_error(src, format!("unknown command {other:?}"))),
    })
}

pub fn parse_script(file: &str, text: &str) -> Result<Script, CliError> {
    chunks(file, text)
        .into_iter()
        .map(|src| parse_command(&src).map(|value| Spanned { value, source: src }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuation_lines_and_comments() {
        let s = "# header\nthm a := F(\n    x)\n\necho hi\n";
        let script = parse_script("t.cqe", s).unwrap();
        assert_eq!(script.len(), 2);
        assert_eq!(script[0].source.line, 1);
        match &script[0].value {
            Command::Thm { name, proof } => {
                assert_eq!(name, "a");
                assert_eq!(proof.text, "F(\n    x)");
                assert_eq!((proof.line, proof.col), (1, 9));
            }
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn backquotes_are_stripped_with_offsets() {
        let src = Located {
            text: "check a matches `p \\/ q`".into(),
            file: "f".into(),
            line: 4,
            col: 0,
        };
        let Command::Check { thm, term } = parse_command(&src).unwrap() else {
            panic!()
        };
        assert_eq!(thm, "a");
        assert_eq!(term.text, "p \\/ q");
        assert_eq!((term.line, term.col), (4, 17));
    }

    #[test]
    fn unknown_command() {
        let src = Located {
            text: "prove x".into(),
            file: "f".into(),
            line: 0,
            col: 0,
        };
        assert!(matches!(parse_command(&src), Err(CliError::Parse { .. })));
    }
}
