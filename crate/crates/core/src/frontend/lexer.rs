use super::{FrontendError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    TyVar(String),
    Str(String),
    Zero,
    LParen,
    RParen,
    Colon,
    Dot,
    Comma,
    Arrow,
    Lambda,
    /// Symbolic constant: `!`, `?`, `~`, `==>`, `\/`, `/\`, `=`, `<=`, `+`, `*`.
    Sym(&'static str),
    QuoteOpen,
    QuoteClose,
    HoleOpen,
    HoleClose,
    Eval,
    To,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

const SYMBOLS: [(&str, Option<&str>); 14] = [
    ("==>", Some("==>")),
    ("\\/", Some("\\/")),
    ("/\\", Some("/\\")),
    ("->", None),
    ("<=", Some("<=")),
    ("=", Some("=")),
    ("!", Some("!")),
    ("?", Some("?")),
    ("~", Some("~")),
    ("+", Some("+")),
    ("*", Some("*")),
    ("\\", None),
    (":", None),
    (".", None),
];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(file: &str, text: &str) -> Result<Vec<Token>, FrontendError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let span = |l0, c0, l1, c1| SourceSpan::new(file, l0, c0, l1, c1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        let start = i;
        let tok = if is_ident_start(c) {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "Q_" => Tok::QuoteOpen,
                "_Q" => Tok::QuoteClose,
                "H_" => Tok::HoleOpen,
                "_H" => Tok::HoleClose,
                "eval" => Tok::Eval,
                "to" => Tok::To,
                _ => Tok::Ident(word),
            }
        } else if c == '\'' {
            i += 1;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            if i == start + 1 {
                return Err(FrontendError::parse(
                    span(l0, c0, l0, c0),
                    "expected a type variable name after '",
                ));
            }
            Tok::TyVar(chars[start + 1..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            if digits != "0" {
                return Err(FrontendError::parse(
                    span(l0, c0, l0, c0 + digits.len() - 1),
                    format!("numeral {digits} is not supported; only 0 is"),
                ));
            }
            Tok::Zero
        } else if c == '"' {
            i += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(FrontendError::parse(
                            span(l0, c0, l0, c0),
                            "unterminated string literal",
                        ))
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => match chars.get(i + 1) {
                        Some(e @ ('"' | '\\')) => {
                            s.push(*e);
                            i += 2;
                        }
                        _ => {
                            return Err(FrontendError::parse(
                                span(l0, c0 + (i - start), l0, c0 + (i - start)),
                                "only \\\" and \\\\ escapes are allowed",
                            ))
                        }
                    },
                    Some(ch) => {
                        s.push(*ch);
                        i += 1;
                    }
                }
            }
            Tok::Str(s)
        } else if c == '(' {
            i += 1;
            Tok::LParen
        } else if c == ')' {
            i += 1;
            Tok::RParen
        } else if c == ',' {
            i += 1;
            Tok::Comma
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let Some((s, sym)) = SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) else {
                return Err(FrontendError::parse(
                    span(l0, c0, l0, c0),
                    format!("unexpected character {c:?}"),
                ));
            };
            i += s.chars().count();
            match (*s, sym) {
                (_, Some(sym)) => Tok::Sym(sym),
                ("->", None) => Tok::Arrow,
                ("\\", None) => Tok::Lambda,
                (":", None) => Tok::Colon,
                (".", None) => Tok::Dot,
                _ => unreachable!(),
            }
        };
        col += i - start;
        out.push(Token {
            tok,
            span: span(l0, c0, line, col - 1),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(line, col, line, col),
    });
    Ok(out)
}
