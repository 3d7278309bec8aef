//! The `qwire` command line: check, sim, eq, lower and list.
//!
//! [`run`] executes one invocation against arbitrary writers so it can be
//! driven in-process. Results go to `out`, diagnostics to `err`.

pub mod corpus;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::check::box_type;
use crate::circuit::BoxedCircuit;
use crate::denote::{denote_box, max_deviation};
use crate::matrix::{format_matrix, parse_matrix, CMatrix, Tolerance};
use crate::surface::{elaborate_each, lower, parse, ElabError};
use corpus::{builtin, builtin_corpus, CorpusError, ENTRIES};

pub const BUILTIN_PREFIX: &str = "builtin:";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    /// A box failed to check, or two boxes are not equivalent.
    Failure,
    /// Unreadable input, parse error or bad usage.
    Usage,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Failure => 1,
            ExitStatus::Usage => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qwire", version, about = "Check, simulate, compare and lower linear quantum circuits")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type-check every box in FILE.
    Check { file: String },
    /// Apply a box to an input density matrix.
    Sim {
        file: String,
        #[arg(value_name = "BOX")]
        name: String,
        /// Matrix file, or `id` for the maximally mixed state.
        #[arg(long, default_value = "id")]
        input: String,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Compare two boxes by their Choi matrices.
    Eq {
        file1: String,
        box1: String,
        file2: String,
        box2: String,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Print the register-level program for a box.
    Lower {
        file: String,
        #[arg(value_name = "BOX")]
        name: String,
    },
    /// List the built-in boxes.
    List,
}

/// Outcome of a failed command step: the message and its exit status.
struct Fail(ExitStatus, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(ExitStatus::Usage, msg.into())
}

fn failure(msg: impl Into<String>) -> Fail {
    Fail(ExitStatus::Failure, msg.into())
}

fn corpus_fail(e: CorpusError) -> Fail {
    usage(e.to_string())
}

enum Source {
    Builtin(String),
    Parsed(Vec<(String, Result<BoxedCircuit, ElabError>)>),
}

fn load(file: &str) -> Result<Source, Fail> {
    if let Some(rest) = file.strip_prefix(BUILTIN_PREFIX) {
        return Ok(Source::Builtin(rest.to_string()));
    }
    let text = std::fs::read_to_string(PathBuf::from(file)).map_err(|e| usage(format!("{file}: {e}")))?;
    let prog = parse(&text).map_err(|e| usage(format!("{file}:{e}")))?;
    Ok(Source::Parsed(elaborate_each(&prog)))
}

fn find_box(file: &str, name: &str) -> Result<BoxedCircuit, Fail> {
    match load(file)? {
        Source::Builtin(_) => builtin(name).map_err(corpus_fail),
        Source::Parsed(boxes) => match boxes.into_iter().find(|(n, _)| n == name) {
            None => Err(usage(format!("{file}: no box named `{name}`"))),
            Some((_, Ok(b))) => Ok(b),
            Some((_, Err(e))) => Err(failure(format!("error: {e}"))),
        },
    }
}

fn tolerance(eps: f64) -> Result<Tolerance, Fail> {
    Tolerance::new(eps).ok_or_else(|| usage(format!("--eps must be a positive number, got {eps}")))
}

fn cmd_check(file: &str, out: &mut dyn Write) -> Result<ExitStatus, Fail> {
    let boxes: Vec<(String, Result<BoxedCircuit, String>)> = match load(file)? {
        Source::Builtin(name) if name.is_empty() => builtin_corpus().into_iter().map(|(n, b)| (n, Ok(b))).collect(),
        Source::Builtin(name) => vec![(name.clone(), Ok(builtin(&name).map_err(corpus_fail)?))],
        Source::Parsed(boxes) => boxes
            .into_iter()
            .map(|(n, r)| (n, r.map_err(|e| e.to_string())))
            .collect(),
    };
    let mut status = ExitStatus::Ok;
    for (name, r) in boxes {
        let typed = r.and_then(|b| box_type(&b).map_err(|e| format!("box {name}: {e}")));
        match typed {
            Ok((w1, w2)) => writeln!(out, "ok: {name} : {w1} -> {w2}").map_err(io)?,
            Err(e) => {
                writeln!(out, "error: {e}").map_err(io)?;
                status = ExitStatus::Failure;
            }
        }
    }
    Ok(status)
}

fn io(e: std::io::Error) -> Fail {
    usage(e.to_string())
}

fn cmd_sim(file: &str, name: &str, input: &str, eps: f64, out: &mut dyn Write) -> Result<ExitStatus, Fail> {
    let t = tolerance(eps)?;
    let b = find_box(file, name)?;
    let dim = b.input_type.dim();
    let rho = if input == "id" {
        CMatrix::identity(dim).scale((1.0 / dim as f64).into())
    } else {
        let text = std::fs::read_to_string(input).map_err(|e| usage(format!("{input}: {e}")))?;
        let m = parse_matrix(&text).map_err(|e| usage(format!("{input}: {e}")))?;
        if m.dims() != (dim, dim) {
            return Err(usage(format!(
                "{input}: box `{name}` takes a {dim}x{dim} density matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_density(t).map_err(|e| usage(e.to_string()))? {
            return Err(usage(format!("{input}: not a density matrix within {eps:e}")));
        }
        m
    };
    let s = denote_box(&b).map_err(|e| failure(format!("error: {e}")))?;
    let result = s.apply(&rho).map_err(|e| usage(e.to_string()))?;
    write!(out, "{}", format_matrix(&result)).map_err(io)?;
    Ok(ExitStatus::Ok)
}

fn cmd_eq(
    (file1, box1): (&str, &str),
    (file2, box2): (&str, &str),
    eps: f64,
    out: &mut dyn Write,
) -> Result<ExitStatus, Fail> {
    let t = tolerance(eps)?;
    let b1 = find_box(file1, box1)?;
    let b2 = find_box(file2, box2)?;
    let ty = |b: &BoxedCircuit| box_type(b).map_err(|e| failure(format!("error: {e}")));
    let (ty1, ty2) = (ty(&b1)?, ty(&b2)?);
    // Bit and Qubit share a two-dimensional space, so only dimensions must agree.
    if (ty1.0.dim(), ty1.1.dim()) != (ty2.0.dim(), ty2.1.dim()) {
        return Err(usage(format!(
            "dimension mismatch: `{box1}` is {} -> {}, `{box2}` is {} -> {}",
            ty1.0, ty1.1, ty2.0, ty2.1
        )));
    }
    let s1 = denote_box(&b1).map_err(|e| failure(format!("error: {e}")))?;
    let s2 = denote_box(&b2).map_err(|e| failure(format!("error: {e}")))?;
    let dev = max_deviation(&s1, &s2).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "max deviation: {dev:.3e}").map_err(io)?;
    if dev <= t.eps() {
        writeln!(out, "equal").map_err(io)?;
        Ok(ExitStatus::Ok)
    } else {
        writeln!(out, "not equal").map_err(io)?;
        Ok(ExitStatus::Failure)
    }
}

fn cmd_lower(file: &str, name: &str, out: &mut dyn Write) -> Result<ExitStatus, Fail> {
    let b = find_box(file, name)?;
    write!(out, "{}", lower(&b)).map_err(io)?;
    Ok(ExitStatus::Ok)
}

fn cmd_list(out: &mut dyn Write) -> Result<ExitStatus, Fail> {
    for (name, hint, desc) in ENTRIES {
        let spelled = if hint.is_empty() { name.to_string() } else { format!("{name}@{hint}") };
        writeln!(out, "{spelled:<18} {desc}").map_err(io)?;
    }
    Ok(ExitStatus::Ok)
}

/// Run one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("qwire")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                ExitStatus::Usage
            } else {
                let _ = write!(out, "{text}");
                ExitStatus::Ok
            };
        }
    };
    let r = match &cli.cmd {
        Command::Check { file } => cmd_check(file, out),
        Command::Sim { file, name, input, eps } => cmd_sim(file, name, input, *eps, out),
        Command::Eq {
            file1,
            box1,
            file2,
            box2,
            eps,
        } => cmd_eq((file1, box1), (file2, box2), *eps, out),
        Command::Lower { file, name } => cmd_lower(file, name, out),
        Command::List => cmd_list(out),
    };
    match r {
        Ok(s) => s,
        Err(Fail(status, msg)) => {
            let _ = writeln!(err, "{msg}");
            status
        }
    }
}
