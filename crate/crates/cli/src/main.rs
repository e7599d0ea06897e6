use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cqe::error::CliError;
use cqe::export::{self, Format};
use cqe::session::Session;
use cqe::style::Style;

#[derive(Parser)]
#[command(
    name = "cqe",
    version,
    about = "Proof scripts for HOL with quotation and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a proof script.
    Check {
        file: PathBuf,
        /// Print every command before running it.
        #[arg(long)]
        trace: bool,
    },
    /// Interactive session.
    Repl {
        #[arg(long)]
        load: Option<PathBuf>,
    },
    /// Run a script and write its theorems to a file.
    Export {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Sexp,
    JsonLike,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(
    session: &mut Session,
    path: &Path,
    trace: bool,
    verbose: bool,
    style: Style,
) -> Result<(), CliError> {
    let text = read(path)?;
    let file = path.display().to_string();
    session
        .run_script(&file, &text, |cmd, out| {
            if trace {
                eprintln!("{}", style.dim(&format!("> {}", cmd.source.text)));
            }
            if verbose {
                println!("{}", style.good(&out.to_string()));
            }
        })
        .map_err(|f| {
            if let Some(c) = &f.command {
                eprintln!("{} {c}", style.error("failed command:"));
            }
            f.error
        })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style::detect();
    let result = match cli.cmd {
        Cmd::Check { file, trace } => load(&mut Session::new(), &file, trace, true, style),
        Cmd::Repl { load: path } => {
            let mut s = Session::new();
            let loaded = match path {
                Some(p) => load(&mut s, &p, false, true, style),
                None => Ok(()),
            };
            if let Err(e) = loaded {
                eprintln!("{} {e}", style.error("error:"));
            }
            let stdin = std::io::stdin();
            let interactive = std::io::IsTerminal::is_terminal(&stdin);
            cqe::repl::run(&mut s, stdin.lock(), std::io::stdout(), style, interactive).map_err(
                |source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                },
            )
        }
        Cmd::Export { file, out, format } => {
            let mut s = Session::new();
            load(&mut s, &file, false, false, style).and_then(|()| {
                let format = match format {
                    FormatArg::Sexp => Format::Sexp,
                    FormatArg::JsonLike => Format::JsonLike,
                };
                let doc = export::render(&export::document(&s), format);
                std::fs::write(&out, doc).map_err(|source| CliError::Io {
                    path: out.display().to_string(),
                    source,
                })
            })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{} {e}", style.error("error:"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
