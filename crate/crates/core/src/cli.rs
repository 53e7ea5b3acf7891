//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the exit code together with the text to print.
//!
//! Exit codes: `0` success, `1` domain error (e.g. `eq-basis` on an
//! independent element), `2` usage or parse error.
//!
//! With `--format kv` every result is a sequence of records, one per line,
//! of space-separated `key=value` fields. Values containing spaces, quotes,
//! `=` or newlines are wrapped in double quotes, with `\\`, `\"` and `\n`
//! escapes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::closure::{dependence_closure, is_dependence_closed, is_malnormal, is_pure, OracleReport};
use crate::dependence::{dep_double_cosets, dep_generators, is_dependent, is_echelon, PairReduction};
use crate::equations::{
    degree_bound, equation_basis, equation_from_folding, transport, verify, Equation,
};
use crate::error::Error;
use crate::stallings::{build_core, pullback, CoreGraph};
use crate::words::{Alphabet, Word};

#[derive(Parser, Debug)]
#[command(name = "freedep", version, about = "Dependence and equations over subgroups of free groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of H.
    Rank { subgroup: PathBuf },
    /// Whether a word lies in H.
    Member { subgroup: PathBuf, word: String },
    /// Spanning-tree basis of H.
    Basis { subgroup: PathBuf },
    /// Whether g depends on H.
    Depq {
        subgroup: PathBuf,
        word: String,
        /// Also print the witness paths and vertex pair.
        #[arg(long)]
        witness: bool,
    },
    /// Double-coset representatives of the dependent elements.
    DepCosets {
        subgroup: PathBuf,
        /// Examine every vertex pair instead of one per neighbour orbit.
        #[arg(long)]
        no_reduce: bool,
    },
    /// Generators of the dependent subgroup.
    DepGens {
        subgroup: PathBuf,
        #[arg(long)]
        no_reduce: bool,
    },
    /// The dependence sequence up to its limit.
    Closure { subgroup: PathBuf },
    /// Whether H equals its dependent subgroup.
    Closed { subgroup: PathBuf },
    /// Echelon test along a letter order.
    Echelon {
        subgroup: PathBuf,
        /// Letter order such as "a b c"; defaults to the subgroup's alphabet.
        #[arg(long)]
        order: Option<String>,
    },
    /// Basis of the intersection of two subgroups.
    Intersect { first: PathBuf, second: PathBuf },
    /// Equation basis for a dependent element.
    EqBasis { subgroup: PathBuf, word: String },
    /// Equation extracted from the folding sequence.
    EqFold { subgroup: PathBuf, word: String },
    /// Whether g solves an equation over H.
    EqVerify {
        subgroup: PathBuf,
        equation: String,
        word: String,
    },
    /// Substitutes x by h1^-1 x h2 in an equation over H.
    Transport {
        subgroup: PathBuf,
        equation: String,
        h1: String,
        h2: String,
    },
    /// Degree bound over the double-coset representatives.
    DegreeBound { subgroup: PathBuf },
    /// Bounded search for a violation of purity.
    OraclePure {
        subgroup: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 4)]
        exponent_bound: usize,
    },
    /// Bounded search for a violation of malnormality.
    OracleMalnormal {
        subgroup: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Core graph in DOT.
    Dot {
        subgroup: PathBuf,
        /// Draw the dependent subgroup instead.
        #[arg(long)]
        dep: bool,
    },
}

/// Exit code and the text for stdout or stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
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

    fn fail(code: i32, msg: String) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => Outcome::ok(out.render(cli.format)),
        Err(Failure::Usage(m)) => Outcome::fail(2, m),
        Err(Failure::Domain(m)) => Outcome::fail(1, m),
    }
}

/// Generators and alphabet read from a subgroup file: one word per line,
/// `#` starts a comment, and an optional `#alphabet: a b c` header fixes the
/// alphabet. Without a header the alphabet is the set of letters used.
pub fn parse_subgroup_file(path: &Path) -> std::result::Result<(Alphabet, Vec<Word>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_subgroup_text(&text).map_err(|e| format!("{}:{e}", path.display()))
}

/// [`parse_subgroup_file`] on in-memory text. Errors start with the line number.
pub fn parse_subgroup_text(text: &str) -> std::result::Result<(Alphabet, Vec<Word>), String> {
    let mut header = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(letters) = rest.trim_start().strip_prefix("alphabet:") {
                let a = Alphabet::parse(letters).map_err(|e| format!("{}: {e}", i + 1))?;
                header = Some((i + 1, a));
            }
            continue;
        }
        let body = line.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let w: Word = body.parse().map_err(|e: Error| format!("{}: {e}", i + 1))?;
        gens.push(w);
    }
    let alphabet = match header {
        Some((line, a)) => {
            if let Some(w) = gens.iter().find(|w| !a.contains_word(w)) {
                return Err(format!("{line}: generator {w} uses letters outside the header alphabet {a}"));
            }
            a
        }
        None => Alphabet::infer(&gens),
    };
    Ok((alphabet, gens))
}

struct Subgroup {
    alphabet: Alphabet,
    gens: Vec<Word>,
}

impl Subgroup {
    fn load(path: &Path) -> CliResult<Subgroup> {
        let (alphabet, gens) = parse_subgroup_file(path).map_err(Failure::Usage)?;
        Ok(Subgroup { alphabet, gens })
    }

    /// Core graph over the file's alphabet extended by the letters of `extra`.
    fn core_with(&self, extra: &[&Word]) -> CoreGraph {
        let alphabet = self.alphabet.union(&Alphabet::infer(extra.iter().copied()));
        build_core(&self.gens, &alphabet)
    }

    fn core(&self) -> CoreGraph {
        self.core_with(&[])
    }
}

fn word(s: &str) -> CliResult<Word> {
    Ok(s.parse::<Word>()?)
}

fn equation(s: &str) -> CliResult<Equation> {
    Ok(s.parse::<Equation>()?)
}

fn reduction(no_reduce: bool) -> PairReduction {
    if no_reduce {
        PairReduction::None
    } else {
        PairReduction::Neighbor
    }
}

/// A result in both renderings.
struct Output {
    text: Vec<String>,
    records: Vec<Vec<(&'static str, String)>>,
}

impl Output {
    fn single(text: String, record: Vec<(&'static str, String)>) -> Output {
        Output {
            text: vec![text],
            records: vec![record],
        }
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for line in &self.text {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            Format::Kv => {
                for rec in &self.records {
                    let fields: Vec<String> =
                        rec.iter().map(|(k, v)| format!("{k}={}", kv_value(v))).collect();
                    out.push_str(&fields.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn kv_value(v: &str) -> String {
    if v.is_empty() || v.contains([' ', '"', '=', '\n', '\\']) {
        let escaped = v.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n");
        format!("\"{escaped}\"")
    } else {
        v.to_string()
    }
}

fn words_output(kind: &'static str, words: &[Word]) -> Output {
    Output {
        text: words.iter().map(Word::to_string).collect(),
        records: words.iter().map(|w| vec![(kind, w.to_string())]).collect(),
    }
}

fn bool_output(key: &'static str, b: bool) -> Output {
    Output::single(b.to_string(), vec![(key, b.to_string())])
}

fn oracle_output(r: &OracleReport) -> Output {
    let mut rec = vec![("holds", r.holds.to_string())];
    if let Some(w) = &r.witness {
        rec.push(("witness", w.to_string()));
    }
    rec.push(("bound", r.bound.to_string()));
    if let Some(k) = r.exponent_bound {
        rec.push(("exponent_bound", k.to_string()));
    }
    rec.push(("checked", r.candidates_checked.to_string()));
    Output::single(r.to_string(), rec)
}

fn execute(cmd: &Command) -> CliResult<Output> {
    Ok(match cmd {
        Command::Rank { subgroup } => {
            let r = Subgroup::load(subgroup)?.core().rank();
            Output::single(r.to_string(), vec![("rank", r.to_string())])
        }
        Command::Member { subgroup, word: w } => {
            let (h, w) = (Subgroup::load(subgroup)?, word(w)?);
            bool_output("member", h.core_with(&[&w]).contains(&w))
        }
        Command::Basis { subgroup } => words_output("generator", &Subgroup::load(subgroup)?.core().basis()),
        Command::Depq { subgroup, word: w, witness } => {
            let (h, g) = (Subgroup::load(subgroup)?, word(w)?);
            let wit = is_dependent(&h.core_with(&[&g]), &g)?;
            let verdict = if wit.verdict { "dependent" } else { "independent" };
            let mut rec = vec![("verdict", verdict.to_string())];
            let mut text = vec![verdict.to_string()];
            if *witness {
                rec.push(("g1", wit.g1.to_string()));
                rec.push(("g2", wit.g2.to_string()));
                text.push(format!("g1 {}", wit.g1));
                text.push(format!("g2 {}", wit.g2));
                if let Some((u, v)) = wit.pair {
                    rec.push(("u", u.to_string()));
                    rec.push(("v", v.to_string()));
                    text.push(format!("pair {u} {v}"));
                }
                rec.push(("rank_with_g", wit.rank_with_g.to_string()));
                text.push(format!("rank_with_g {}", wit.rank_with_g));
            }
            Output {
                text,
                records: vec![rec],
            }
        }
        Command::DepCosets { subgroup, no_reduce } => {
            let d = dep_double_cosets(&Subgroup::load(subgroup)?.core(), reduction(*no_reduce))?;
            Output {
                text: d.representatives.iter().map(|w| format!("H {w} H")).collect(),
                records: d
                    .representatives
                    .iter()
                    .map(|w| vec![("representative", w.to_string())])
                    .collect(),
            }
        }
        Command::DepGens { subgroup, no_reduce } => {
            let gens = dep_generators(&Subgroup::load(subgroup)?.core(), reduction(*no_reduce))?;
            words_output("generator", &gens)
        }
        Command::Closure { subgroup } => {
            let r = dependence_closure(&Subgroup::load(subgroup)?.core())?;
            let mut text = vec![format!("length {}", r.length)];
            let mut records = vec![vec![("length", r.length.to_string())]];
            for (i, g) in r.chain.iter().enumerate() {
                let basis: Vec<String> = g.basis().iter().map(Word::to_string).collect();
                text.push(format!("{i}: rank {} gens {}", g.rank(), basis.join(" ")));
                records.push(vec![
                    ("step", i.to_string()),
                    ("rank", g.rank().to_string()),
                    ("gens", basis.join(" ")),
                ]);
            }
            Output { text, records }
        }
        Command::Closed { subgroup } => {
            bool_output("closed", is_dependence_closed(&Subgroup::load(subgroup)?.core())?)
        }
        Command::Echelon { subgroup, order } => {
            let h = Subgroup::load(subgroup)?;
            let order = match order {
                Some(s) => Alphabet::parse(s)?,
                None => h.alphabet.clone(),
            };
            if let Some(w) = h.gens.iter().find(|w| !order.contains_word(w)) {
                return Err(Failure::Usage(format!("generator {w} uses letters outside the order {order}")));
            }
            let r = is_echelon(&build_core(&h.gens, &order), &order);
            let ranks: Vec<String> = r.ranks.iter().map(usize::to_string).collect();
            Output {
                text: vec![r.is_echelon.to_string(), format!("ranks {}", ranks.join(" "))],
                records: vec![vec![
                    ("echelon", r.is_echelon.to_string()),
                    ("ranks", ranks.join(" ")),
                ]],
            }
        }
        Command::Intersect { first, second } => {
            let (a, b) = (Subgroup::load(first)?, Subgroup::load(second)?);
            let alphabet = a.alphabet.union(&b.alphabet);
            let meet = pullback(&build_core(&a.gens, &alphabet), &build_core(&b.gens, &alphabet));
            words_output("generator", &meet.basis())
        }
        Command::EqBasis { subgroup, word: w } => {
            let (h, g) = (Subgroup::load(subgroup)?, word(w)?);
            let basis = equation_basis(&h.core_with(&[&g]), &g)?;
            let forms = basis.coefficient_forms()?;
            let mut text = Vec::new();
            let mut records = Vec::new();
            for (f, e) in basis.equations.iter().zip(&forms) {
                text.push(format!("{f} = 1 ; {e}"));
                records.push(vec![
                    ("formal", f.to_string()),
                    ("equation", e.to_string()),
                    ("degree", e.degree().to_string()),
                ]);
            }
            Output { text, records }
        }
        Command::EqFold { subgroup, word: w } => {
            let (h, g) = (Subgroup::load(subgroup)?, word(w)?);
            let e = equation_from_folding(&h.core_with(&[&g]), &g)?;
            Output::single(
                e.to_string(),
                vec![("equation", e.to_string()), ("degree", e.degree().to_string())],
            )
        }
        Command::EqVerify { subgroup, equation: e, word: w } => {
            let (h, e, g) = (Subgroup::load(subgroup)?, equation(e)?, word(w)?);
            let mut extra = vec![&g];
            extra.extend(e.coefficients());
            let core = h.core_with(&extra);
            if let Some(c) = e.coefficients().iter().find(|c| !core.contains(c)) {
                return Err(Error::NotInSubgroup(c.to_string()).into());
            }
            bool_output("solves", verify(&e, &g))
        }
        Command::Transport { subgroup, equation: e, h1, h2 } => {
            let (h, e) = (Subgroup::load(subgroup)?, equation(e)?);
            let (h1, h2) = (word(h1)?, word(h2)?);
            let mut extra = vec![&h1, &h2];
            extra.extend(e.coefficients());
            let t = transport(&e, &h.core_with(&extra), &h1, &h2)?;
            Output::single(
                t.to_string(),
                vec![("equation", t.to_string()), ("degree", t.degree().to_string())],
            )
        }
        Command::DegreeBound { subgroup } => {
            let b = degree_bound(&Subgroup::load(subgroup)?.core())?;
            let mut text = vec![b.bound.to_string()];
            let mut records = vec![vec![("bound", b.bound.to_string())]];
            for (w, e) in &b.per_representative {
                text.push(format!("H {w} H : {e}"));
                records.push(vec![("representative", w.to_string()), ("equation", e.to_string())]);
            }
            Output { text, records }
        }
        Command::OraclePure { subgroup, bound, exponent_bound } => {
            oracle_output(&is_pure(&Subgroup::load(subgroup)?.core(), *bound, *exponent_bound)?)
        }
        Command::OracleMalnormal { subgroup, bound } => {
            oracle_output(&is_malnormal(&Subgroup::load(subgroup)?.core(), *bound)?)
        }
        Command::Dot { subgroup, dep } => {
            let mut h = Subgroup::load(subgroup)?.core();
            if *dep {
                h = crate::closure::dep_subgroup(&h)?;
            }
            let dot = h.to_dot();
            Output {
                text: vec![dot.trim_end().to_string()],
                records: vec![vec![("dot", dot)]],
            }
        }
    })
}
