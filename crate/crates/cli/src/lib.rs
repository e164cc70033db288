//! Command-line front end for `sigma-tree`.
//!
//! [`run`] takes the argument vector and returns the exit status together
//! with the text for standard output and standard error, so the binary is a
//! thin wrapper and tests can drive every subcommand in-process.
//!
//! Exit status: 0 on success, 1 on a runtime failure (an empty horoball
//! window), 2 on malformed input, 3 when an enumeration would pass the word
//! cap or the cap itself passes the hard ceiling.

mod dot;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sigma_tree::horoball::{expsum_range, horoball_vertices, HoroballError, HoroballQuery};
use sigma_tree::sigma::{classify, sweep, SigmaError};
use sigma_tree::{
    Alphabet, CapExceeded, CoefficientError, EnumerationCap, Family, Letter, Ray, RayError,
    Verdict, Word, WordError,
};

pub use dot::render_dot;

/// Environment variable holding the largest `--max-words` value accepted.
pub const CEILING_VAR: &str = "SIGMA_TREE_WORD_CEILING";
pub const DEFAULT_CEILING: usize = 2_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "sigma-tree",
    version,
    about = "Σ¹ membership on the boundary of a free group"
)]
struct Cli {
    /// Emit JSON instead of line-oriented text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of words any single enumeration may produce.
    #[arg(long, global = true, default_value_t = EnumerationCap::DEFAULT_MAX_WORDS)]
    max_words: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a boundary point lies in Σ¹ and print the certificate.
    Classify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        ray: String,
        /// Add a human-readable line after the record.
        #[arg(long)]
        explain: bool,
    },
    /// List the vertices of A_k(τ) within the given radius.
    Horoball(HoroballArgs),
    /// Exponent sums of a letter over a horoball window.
    ExpsumRange {
        #[arg(long)]
        letter: String,
        #[command(flatten)]
        horoball: HoroballArgs,
    },
    /// List the words of a ball in the Cayley tree.
    Ball {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        #[arg(long, default_value = "")]
        center: String,
    },
    /// Classify every canonical ray within the given bounds.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        max_period: usize,
        #[arg(long, default_value_t = 2)]
        max_prefix: usize,
    },
    /// Render a ball as a Graphviz graph with A_k(τ) filled.
    Dot {
        #[command(flatten)]
        horoball: HoroballArgs,
        /// Label the graph with the verdict for this family.
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Debug, Args)]
struct HoroballArgs {
    #[arg(long)]
    ray: String,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, default_value_t = 5)]
    radius: usize,
    #[arg(long, default_value_t = 2)]
    rank: u32,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
    Runtime(String),
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        let (code, message) = match self {
            Failure::Runtime(m) => (1, m),
            Failure::Input(m) => (2, m),
            Failure::Cap(m) => (3, m),
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

impl From<CapExceeded> for Failure {
    fn from(e: CapExceeded) -> Failure {
        Failure::Cap(e.to_string())
    }
}

impl From<HoroballError> for Failure {
    fn from(e: HoroballError) -> Failure {
        match e {
            HoroballError::Cap(c) => c.into(),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<SigmaError> for Failure {
    fn from(e: SigmaError) -> Failure {
        match e {
            SigmaError::Cap(c) => c.into(),
            SigmaError::AlphabetMismatch { .. } => Failure::Input(e.to_string()),
            SigmaError::Contradiction(_) => Failure::Runtime(e.to_string()),
        }
    }
}

/// Runs with the hard ceiling taken from [`CEILING_VAR`].
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let ceiling = std::env::var(CEILING_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CEILING);
    run_with_ceiling(argv, ceiling)
}

pub fn run_with_ceiling<I, T>(argv: I, ceiling: usize) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if cli.max_words > ceiling {
        return Failure::Cap(format!(
            "--max-words {} is above the hard ceiling {ceiling} (set {CEILING_VAR} to raise it)",
            cli.max_words
        ))
        .into_outcome();
    }
    let cap = EnumerationCap::new(cli.max_words);
    match dispatch(cli.command, cli.json, cap) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(f) => f.into_outcome(),
    }
}

fn dispatch(command: Command, json: bool, cap: EnumerationCap) -> Result<String, Failure> {
    match command {
        Command::Classify {
            family,
            ray,
            explain,
        } => {
            let family = parse_family(&family)?;
            let ray = parse_ray(family.alphabet(), &ray)?;
            let verdict = classify(&family, &ray)?;
            if json {
                return Ok(to_line(&verdict_json(&family, &ray, &verdict)));
            }
            let mut out = verdict.record() + "\n";
            if explain {
                out += &verdict.explain();
                out += "\n";
            }
            Ok(out)
        }
        Command::Horoball(args) => {
            let (alphabet, q) = horoball_query(&args)?;
            let vertices = horoball_vertices(alphabet, &q, args.radius, cap)?;
            if json {
                let words: Vec<String> = vertices.iter().map(Word::to_string).collect();
                return Ok(to_line(&json!({
                    "ray": q.ray.to_string(),
                    "k": q.k,
                    "radius": args.radius,
                    "count": words.len(),
                    "vertices": words,
                })));
            }
            Ok(word_list(vertices.iter()))
        }
        Command::ExpsumRange { letter, horoball } => {
            let (alphabet, q) = horoball_query(&horoball)?;
            let t = parse_letter(alphabet, &letter)?;
            let range = expsum_range(alphabet, t, &q, horoball.radius, cap)?;
            let bound = range
                .upper_bound
                .map_or_else(|| "none".to_string(), |b| b.to_string());
            if json {
                return Ok(to_line(&json!({
                    "letter": t.to_string(),
                    "ray": q.ray.to_string(),
                    "k": range.k,
                    "radius": range.radius,
                    "min": range.observed_min,
                    "max": range.observed_max,
                    "values": range.observed.iter().collect::<Vec<_>>(),
                    "contiguous": range.is_contiguous(),
                    "bounded_above": range.bounded_above,
                    "upper_bound": range.upper_bound,
                })));
            }
            Ok(format!(
                "letter={t};k={};radius={};min={};max={};contiguous={};bounded_above={};bound={bound}\n",
                range.k,
                range.radius,
                range.observed_min,
                range.observed_max,
                range.is_contiguous(),
                range.bounded_above,
            ))
        }
        Command::Ball {
            rank,
            radius,
            center,
        } => {
            let alphabet = Alphabet::new(rank).map_err(|e| Failure::Input(e.to_string()))?;
            let center = parse_word(alphabet, &center, "--center")?;
            let ball = alphabet.ball(&center, radius, cap)?;
            if json {
                let words: Vec<String> = ball.iter().map(Word::to_string).collect();
                return Ok(to_line(&json!({
                    "rank": rank,
                    "radius": radius,
                    "center": center.to_string(),
                    "count": words.len(),
                    "words": words,
                })));
            }
            Ok(word_list(ball.iter()))
        }
        Command::Sweep {
            family,
            max_period,
            max_prefix,
        } => {
            let family = parse_family(&family)?;
            if max_period == 0 {
                return Err(Failure::Input("--max-period must be at least 1".into()));
            }
            let table = sweep(&family, max_prefix, max_period, cap)?;
            if json {
                let rows: Vec<Value> = table
                    .iter()
                    .map(|(ray, v)| verdict_json(&family, ray, v))
                    .collect();
                return Ok(to_line(&Value::Array(rows)));
            }
            Ok(sweep_table(&family, &table))
        }
        Command::Dot { horoball, family } => {
            let (alphabet, q) = horoball_query(&horoball)?;
            let verdict = match family {
                Some(text) => {
                    let family = parse_family(&text)?;
                    Some(classify(&family, &q.ray)?.record())
                }
                None => None,
            };
            let ball = alphabet.ball_words(horoball.radius, cap)?;
            Ok(render_dot(&ball, &q, verdict.as_deref()))
        }
    }
}

fn to_line(value: &Value) -> String {
    value.to_string() + "\n"
}

/// One word per line in shortlex order, `ε` for the identity, then a count.
fn word_list<'a>(words: impl Iterator<Item = &'a Word>) -> String {
    let mut out = String::new();
    let mut count = 0;
    for w in words {
        count += 1;
        if w.is_identity() {
            out.push_str("ε\n");
        } else {
            let _ = writeln!(out, "{w}");
        }
    }
    let _ = writeln!(out, "count={count}");
    out
}

/// Tab-separated `ray` and verdict record, followed by a `#` summary line.
fn sweep_table(family: &Family, table: &[(Ray, Verdict)]) -> String {
    let mut out = format!("# family={family}\n");
    let (mut ins, mut outs, mut unknown) = (0, 0, 0);
    for (ray, v) in table {
        match v {
            Verdict::In(_) => ins += 1,
            Verdict::Out(_) => outs += 1,
            Verdict::Unknown { .. } => unknown += 1,
        }
        let _ = writeln!(out, "{ray}\t{}", v.record());
    }
    let _ = writeln!(
        out,
        "# rays={} in={ins} out={outs} unknown={unknown}",
        table.len()
    );
    out
}

fn verdict_json(family: &Family, ray: &Ray, v: &Verdict) -> Value {
    json!({
        "family": family.to_string(),
        "ray": ray.to_string(),
        "status": v.status(),
        "criterion": v.certificate().map(|c| c.criterion().to_string()),
        "record": v.record(),
        "explanation": v.explain(),
    })
}

fn horoball_query(args: &HoroballArgs) -> Result<(Alphabet, HoroballQuery), Failure> {
    let alphabet = Alphabet::new(args.rank).map_err(|e| Failure::Input(e.to_string()))?;
    let ray = parse_ray(alphabet, &args.ray)?;
    Ok((alphabet, HoroballQuery::new(ray, args.k)))
}

fn parse_family(text: &str) -> Result<Family, Failure> {
    text.parse()
        .map_err(|e: CoefficientError| Failure::Input(format!("--family {text:?}: {e}")))
}

fn parse_ray(alphabet: Alphabet, text: &str) -> Result<Ray, Failure> {
    Ray::parse_in(alphabet, text).map_err(|e| {
        let position = match &e {
            RayError::Word { source, .. } => word_error_position(text, source),
            RayError::Syntax(_) if text.contains('|') => text.rfind('|').map(|p| (p, 1)),
            RayError::Syntax(_) => Some((text.len(), 1)),
            RayError::EmptyPeriod => text.find('|').map(|p| (p, 1)),
        };
        Failure::Input(annotate("--ray", text, &e.to_string(), position))
    })
}

fn parse_word(alphabet: Alphabet, text: &str, flag: &str) -> Result<Word, Failure> {
    alphabet.parse(text).map_err(|e| {
        let position = word_error_position(text, &e);
        Failure::Input(annotate(flag, text, &e.to_string(), position))
    })
}

fn parse_letter(alphabet: Alphabet, text: &str) -> Result<Letter, Failure> {
    let letter: Letter = text.trim().parse().map_err(|e: WordError| {
        let position = word_error_position(text, &e);
        Failure::Input(annotate("--letter", text, &e.to_string(), position))
    })?;
    if !alphabet.contains(letter) {
        let e = WordError::LetterOutOfRange {
            letter,
            rank: alphabet.rank(),
        };
        return Err(Failure::Input(annotate(
            "--letter",
            text,
            &e.to_string(),
            word_error_position(text, &e),
        )));
    }
    Ok(letter)
}

/// Byte offset and width of the offending token in `text`.
fn word_error_position(text: &str, e: &WordError) -> Option<(usize, usize)> {
    match e {
        WordError::BadToken { token, position } => Some((*position, token.chars().count().max(1))),
        WordError::LetterOutOfRange { letter, .. } => {
            let wanted = letter.to_string();
            tokens(text)
                .find(|(_, tok)| *tok == wanted)
                .map(|(p, tok)| (p, tok.len()))
        }
        WordError::ZeroRank => None,
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split(|c: char| c.is_whitespace() || c == '|')
        .scan(0usize, |offset, tok| {
            let start = *offset;
            *offset += tok.len() + 1;
            Some((start, tok))
        })
        .filter(|(_, tok)| !tok.is_empty())
}

/// `message`, then the input with a caret line under the bad span.
fn annotate(flag: &str, text: &str, message: &str, position: Option<(usize, usize)>) -> String {
    let Some((at, width)) = position else {
        return format!("{flag}: {message}");
    };
    let column = text[..at.min(text.len())].chars().count();
    format!(
        "{flag}: {message}\n  {text}\n  {}{}",
        " ".repeat(column),
        "^".repeat(width)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_byte_offsets() {
        let found: Vec<(usize, &str)> = tokens("a1  A2 | a3").collect();
        assert_eq!(found, vec![(0, "a1"), (4, "A2"), (9, "a3")]);
    }

    #[test]
    fn caret_sits_under_the_token() {
        let text = annotate("--ray", "| a1 x", "bad", Some((5, 1)));
        assert_eq!(text, "--ray: bad\n  | a1 x\n       ^");
        assert_eq!(annotate("--ray", "", "bad", None), "--ray: bad");
    }

    #[test]
    fn caret_counts_characters_not_bytes() {
        let text = annotate("--center", "ε a9", "bad", Some(("ε ".len(), 2)));
        assert!(text.ends_with("\n    ^^"), "{text:?}");
    }

    #[test]
    fn out_of_range_letter_is_located() {
        let e = WordError::LetterOutOfRange {
            letter: "A3".parse().unwrap(),
            rank: 2,
        };
        assert_eq!(word_error_position("a1 | a2 A3", &e), Some((8, 2)));
    }
}
