//! The `cutseq` command line.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 usage error,
//! 3 domain error (e.g. not a factor), 4 overflow or length cap exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify_type, palindrome_check_star, palindromes_with_kernel, relation_sets};
use crate::error::{Error, Result};
use crate::gaps::{factor_gaps, gap_sequence_labels, gap_zero};
use crate::kernel::{envelope_word, kernel_of, kernel_word, star_decompose, KernelIndex};
use crate::oracle::{cutting_prefix, verify_all, VerifyBounds};
use crate::positions::factor_position;
use crate::word::{fixed_point_prefix, SeqParams, Word, DEFAULT_WORD_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cutseq", version, about = "Factors, kernels and gaps of the cutting sequences F_{d,∞}")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Longest word any command may build.
    #[arg(long, default_value_t = DEFAULT_WORD_CAP, global = true)]
    cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, clap::Args)]
struct DArg {
    #[arg(short, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
}

#[derive(Debug, clap::Args)]
struct KernelArgs {
    #[command(flatten)]
    d: DArg,
    #[arg(short)]
    m: u32,
    #[arg(short)]
    i: u32,
}

#[derive(Debug, clap::Args)]
struct WordArgs {
    #[command(flatten)]
    d: DArg,
    /// A word over {a, b}.
    #[arg(value_parser = parse_word)]
    word: Word,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print a prefix of F_{d,∞}.
    Gen {
        #[command(flatten)]
        d: DArg,
        #[arg(short)]
        n: u64,
        /// Build the prefix from the line y = θx instead of the substitution.
        #[arg(long)]
        geometric: bool,
    },
    /// Print the kernel word K_{d,m,i}.
    Kernel(KernelArgs),
    /// Print the envelope word E_{d,m,i}.
    Envelope(KernelArgs),
    /// Find the kernel of a factor.
    Ker(WordArgs),
    /// Star coordinates (x, y) of a factor around its kernel.
    Decompose(WordArgs),
    /// The two gaps of a factor and its gap label sequence.
    Gaps {
        #[command(flatten)]
        w: WordArgs,
        /// Number of labels to print.
        #[arg(short, default_value_t = 20)]
        p: usize,
    },
    /// Position of the p-th occurrence of a factor.
    Pos {
        #[command(flatten)]
        w: WordArgs,
        #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
        p: u64,
    },
    /// Type, relation sets and palindromicity of a factor.
    Classify(WordArgs),
    /// All palindromic factors with kernel K_{d,m,i}.
    Palindromes(KernelArgs),
    /// Cross-check every closed form against a brute-force scan.
    Verify {
        #[command(flatten)]
        d: DArg,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = 20)]
        len_max: usize,
        #[arg(long, default_value_t = 100)]
        p_max: u64,
    },
}

fn parse_word(s: &str) -> std::result::Result<Word, String> {
    match Word::parse(s) {
        Ok(w) if w.is_empty() => Err("the word must be non-empty".into()),
        Ok(w) => Ok(w),
        Err(e) => Err(e.to_string()),
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.to_string()
    }
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: EXIT_OK }
    }
}

fn params(d: &DArg, cap: usize) -> Result<SeqParams> {
    Ok(SeqParams::new(d.d)?.with_cap(cap))
}

fn kernel_index(a: &KernelArgs, cap: usize) -> Result<KernelIndex> {
    KernelIndex::new(params(&a.d, cap)?, a.m, a.i)
}

fn execute(cmd: &Cmd, cap: usize) -> Result<Output> {
    Ok(match cmd {
        Cmd::Gen { d, n, geometric } => {
            let p = params(d, cap)?;
            let w = if *geometric { cutting_prefix(p, *n)? } else { fixed_point_prefix(p, *n)? };
            Output::ok(w.to_string(), json!({ "d": d.d, "n": n, "word": w }))
        }
        Cmd::Kernel(a) => {
            let k = kernel_index(a, cap)?;
            let w = kernel_word(k)?;
            Output::ok(w.to_string(), json!({ "kernel": k, "word": w, "len": w.len() }))
        }
        Cmd::Envelope(a) => {
            let k = kernel_index(a, cap)?;
            let w = envelope_word(k)?;
            Output::ok(w.to_string(), json!({ "kernel": k, "word": w, "len": w.len() }))
        }
        Cmd::Ker(a) => {
            let p = params(&a.d, cap)?;
            let (k, pos) = kernel_of(&a.word, p)?;
            let kw = kernel_word(k)?;
            Output::ok(
                format!("{k} = {kw} at position {pos}"),
                json!({ "kernel": k, "kernel_word": kw, "position": pos, "word": a.word }),
            )
        }
        Cmd::Decompose(a) => {
            let p = params(&a.d, cap)?;
            let star = star_decompose(&a.word, p)?;
            let (left, right) = (star.left_margin()?, star.right_margin()?);
            let kw = kernel_word(star.kernel)?;
            Output::ok(
                format!("{} = [{}] {} [{}], (x, y) = ({}, {})", star.kernel, show(&left), kw, show(&right), star.x, star.y),
                json!({ "star": star, "left": left, "kernel_word": kw, "right": right, "word": a.word }),
            )
        }
        Cmd::Gaps { w, p } => {
            let params = params(&w.d, cap)?;
            let g = factor_gaps(&w.word, params)?;
            let i = star_decompose(&w.word, params)?.kernel.i();
            let labels = gap_sequence_labels(params, i, *p)?;
            let g0 = gap_zero(&w.word, params)?;
            Output::ok(
                format!("G_0 = {}\nG_A = {}\nG_B = {}\nB = {}\nlabels = {}", show(&g0), g.ga, g.gb, g.b, labels),
                json!({ "gaps": g, "gap_zero": g0, "labels": labels, "word": w.word }),
            )
        }
        Cmd::Pos { w, p } => {
            let pos = factor_position(&w.word, params(&w.d, cap)?, *p)?;
            Output::ok(pos.to_string(), json!({ "p": p, "position": pos, "word": w.word }))
        }
        Cmd::Classify(a) => {
            let p = params(&a.d, cap)?;
            let tag = classify_type(&a.word, p)?;
            let rel = relation_sets(&a.word, p)?;
            let pal = palindrome_check_star(&a.word, p)?;
            let mut text = format!("type {tag}");
            if let Some(pattern) = tag.sign_pattern(p.d()).filter(|t| *t != tag) {
                text.push_str(&format!(" (gap signs of {pattern})"));
            }
            text.push_str(&format!("\nrelations {rel}\npalindrome {pal}"));
            Output::ok(
                text,
                json!({
                    "type": tag,
                    "sign_pattern": tag.sign_pattern(p.d()),
                    "relations": rel,
                    "palindrome": pal,
                    "word": a.word,
                }),
            )
        }
        Cmd::Palindromes(a) => {
            let k = kernel_index(a, cap)?;
            let list = palindromes_with_kernel(k)?;
            let text = list.iter().map(Word::to_string).collect::<Vec<_>>().join("\n");
            Output::ok(text, json!({ "kernel": k, "palindromes": list }))
        }
        Cmd::Verify { d, m_max, len_max, p_max } => {
            let bounds = VerifyBounds { m_max: *m_max, len_max: *len_max, p_max: *p_max };
            let report = verify_all(params(d, cap)?, bounds);
            let text = report
                .checks
                .iter()
                .map(|c| {
                    let status = if c.pass { "pass" } else { "FAIL" };
                    match &c.counterexample {
                        Some(ce) => format!("{status} {} ({} cases): {ce}", c.check, c.cases),
                        None => format!("{status} {} ({} cases)", c.check, c.cases),
                    }
                })
                .collect::<Vec<_>>()
                .join("\n");
            let code = if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Output { text, json: json!({ "checks": report, "pass": report.all_pass() }), code }
        }
    })
}

fn error_code(e: &Error) -> i32 {
    match e {
        e if e.is_overflow() => EXIT_OVERFLOW,
        Error::InvalidDigit(_) | Error::InvalidAlphabet(_) | Error::EmptyWord | Error::IndexOutOfRange(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn with_schema(v: Value) -> Value {
    match v {
        Value::Object(mut map) => {
            map.insert("schema".into(), json!(1));
            Value::Object(map)
        }
        other => json!({ "schema": 1, "value": other }),
    }
}

/// Run the CLI with the given arguments (including the program name),
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json = cli.format == Format::Json;
    let res = match execute(&cli.cmd, cli.cap) {
        Ok(o) => {
            if json {
                writeln!(out, "{}", with_schema(o.json))
            } else {
                writeln!(out, "{}", o.text)
            }
            .map(|_| o.code)
        }
        Err(e) => {
            let code = error_code(&e);
            if json {
                let body = json!({ "schema": 1, "error": e.to_string(), "exit_code": code });
                writeln!(out, "{body}").map(|_| code)
            } else {
                writeln!(err, "error: {e}").map(|_| code)
            }
        }
    };
    res.unwrap_or(EXIT_DOMAIN)
}
