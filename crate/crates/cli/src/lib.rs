//! Command-line front end. [`run`] is the whole program minus process I/O, so
//! it can be driven from tests.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use pretorsion::enumerate::{chain_masks, chain_oracle, enumerate_pretorsion, pair_counts};
use pretorsion::format::{build, export, parse_spec, serialize, BuildError, Built, ParseError};
use pretorsion::gallery::{self, NamedSub};
use pretorsion::theory::{audit, check_pretorsion, ClaimStatus, PretorsionError, Verdict};
use pretorsion::{FinCategory, FullSub, ObjId};

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Lines,
}

#[derive(Debug, Parser)]
#[command(
    name = "pretorsion",
    version,
    about = "Verify and enumerate pretorsion theories of finite categories"
)]
struct Cli {
    /// Report style: prose, or one key=value record per line.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Chain,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a category file and check the category laws.
    Validate { file: String },
    /// Decide whether a pair of object sets is a pretorsion theory.
    Check {
        file: String,
        #[arg(long)]
        torsion: String,
        #[arg(long)]
        free: String,
    },
    /// List every pretorsion theory.
    Enumerate {
        file: String,
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Print the canonical short preexact sequences.
    Decompose {
        file: String,
        #[arg(long)]
        torsion: String,
        #[arg(long)]
        free: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// Evaluate every closure and characterization statement.
    Closure {
        file: String,
        #[arg(long)]
        torsion: String,
        #[arg(long)]
        free: String,
    },
    /// Print a built-in category in the file format.
    Gallery {
        /// One of `chain`, `two`, `n5`, `endomap`, `preord`.
        name: String,
        /// Length for `chain`, carrier bound for `endomap` and `preord`.
        size: Option<usize>,
        /// Write every morphism and composite instead of the shorthand.
        #[arg(long)]
        expand: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Theory(#[from] PretorsionError),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("no sub named {0}")]
    UnknownSub(String),
    #[error("{0}")]
    Usage(String),
}

/// Accumulates the report in either style.
struct Report {
    format: Format,
    out: String,
    err: String,
}

impl Report {
    fn record(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.format == Format::Lines {
            let _ = writeln!(self.out, "{key}={value}");
        }
    }

    fn text(&mut self, line: impl std::fmt::Display) {
        if self.format == Format::Text {
            let _ = writeln!(self.out, "{line}");
        }
    }

    fn warn(&mut self, line: impl std::fmt::Display) {
        let _ = writeln!(self.err, "warning: {line}");
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut r = Report {
        format: cli.format,
        out: String::new(),
        err: String::new(),
    };
    let code = match dispatch(cli.command, &mut r) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(r.err, "error: {e}");
            2
        }
    };
    Outcome {
        code,
        stdout: r.out,
        stderr: r.err,
    }
}

fn load(path: &str) -> Result<Built, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    let spec = parse_spec(&text).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })?;
    Ok(build(&spec)?)
}

/// `@NAME` is a sub of the document; anything else is a comma-separated list
/// of object names. The result is closed under isomorphism.
fn resolve<'c>(
    built: &'c Built,
    arg: &str,
    which: &str,
    r: &mut Report,
) -> Result<FullSub<'c>, CliError> {
    let c = &built.category;
    let objects: Vec<ObjId> = if let Some(name) = arg.strip_prefix('@') {
        built
            .sub(name)
            .ok_or_else(|| CliError::UnknownSub(name.to_string()))?
            .to_vec()
    } else {
        arg.split(',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                c.obj_id(s)
                    .ok_or_else(|| CliError::UnknownObject(s.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    let sub = FullSub::new(c, objects);
    let closed = sub.replete_closure();
    if closed.len() != sub.len() {
        let added: Vec<&str> = closed
            .objects()
            .iter()
            .filter(|&&o| !sub.contains(o))
            .map(|&o| c.obj_name(o))
            .collect();
        r.warn(format!(
            "{which} class closed under isomorphism, added {}",
            added.join(",")
        ));
    }
    Ok(closed)
}

fn csv(s: &FullSub<'_>) -> String {
    s.names().join(",")
}

fn dispatch(command: Command, r: &mut Report) -> Result<i32, CliError> {
    match command {
        Command::Validate { file } => validate(&file, r),
        Command::Check {
            file,
            torsion,
            free,
        } => {
            let built = load(&file)?;
            let (t, f) = (
                resolve(&built, &torsion, "torsion", r)?,
                resolve(&built, &free, "free", r)?,
            );
            check(&built.category, &t, &f, r)
        }
        Command::Enumerate { file, oracle } => {
            let built = load(&file)?;
            enumerate(&built.category, oracle, r)
        }
        Command::Decompose {
            file,
            torsion,
            free,
            object,
        } => {
            let built = load(&file)?;
            let (t, f) = (
                resolve(&built, &torsion, "torsion", r)?,
                resolve(&built, &free, "free", r)?,
            );
            decompose(&built.category, &t, &f, object.as_deref(), r)
        }
        Command::Closure {
            file,
            torsion,
            free,
        } => {
            let built = load(&file)?;
            let (t, f) = (
                resolve(&built, &torsion, "torsion", r)?,
                resolve(&built, &free, "free", r)?,
            );
            closure(&built.category, &t, &f, r)
        }
        Command::Gallery { name, size, expand } => gallery_spec(&name, size, expand, r),
    }
}

fn validate(file: &str, r: &mut Report) -> Result<i32, CliError> {
    r.record("command", "validate");
    let text = fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.to_string(),
        source,
    })?;
    let spec = parse_spec(&text).map_err(|source| CliError::Parse {
        path: file.to_string(),
        source,
    })?;
    let built = match build(&spec) {
        Ok(b) => b,
        Err(BuildError::Invalid(failure)) => {
            r.record("valid", false);
            r.text(format!(
                "invalid category: {} violation(s)",
                failure.violations.len()
            ));
            for v in &failure.violations {
                r.record("violation", v);
                r.text(format!("  {v}"));
            }
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let c = &built.category;
    r.record("valid", true);
    r.record("objects", c.obj_count());
    r.record("morphisms", c.mor_count());
    r.record("composable_pairs", c.composable_pairs());
    r.record("iso_classes", c.iso_classes().len());
    r.text(format!(
        "valid category: {} objects, {} morphisms, {} composable pairs, {} isomorphism classes",
        c.obj_count(),
        c.mor_count(),
        c.composable_pairs(),
        c.iso_classes().len()
    ));
    for s in &built.subs {
        let names: Vec<&str> = s.objects.iter().map(|&o| c.obj_name(o)).collect();
        r.record("sub", format!("{} {}", s.name, names.join(",")));
        r.text(format!("  sub {}: {}", s.name, names.join(", ")));
    }
    Ok(0)
}

fn verdict<'c>(
    c: &FinCategory,
    t: &FullSub<'c>,
    f: &FullSub<'c>,
    r: &mut Report,
) -> Result<Option<pretorsion::PretorsionData<'c>>, CliError> {
    r.record("torsion", csv(t));
    r.record("free", csv(f));
    r.record("zee", csv(&t.intersection(f)));
    match check_pretorsion(t, f)? {
        Verdict::Valid(d) => {
            r.record("verdict", "valid");
            r.text(format!(
                "Valid: torsion {{{}}}, free {{{}}}, trivial {{{}}}",
                csv(t),
                csv(f),
                csv(&d.zee)
            ));
            Ok(Some(*d))
        }
        Verdict::Invalid(cx) => {
            use pretorsion::Counterexample::*;
            r.record("verdict", "invalid");
            match &cx {
                NonTrivialMorphism { morphism, .. } => {
                    r.record("axiom", 1);
                    r.record("morphism", c.mor_name(*morphism));
                }
                NoPreexactSequence { object, .. } => {
                    r.record("axiom", 2);
                    r.record("object", c.obj_name(*object));
                }
            }
            let detail = cx.describe(c);
            r.record("detail", &detail);
            r.text(format!("Invalid: {detail}"));
            Ok(None)
        }
    }
}

fn sequence_line(c: &FinCategory, d: &pretorsion::Decomposition) -> (String, String) {
    let names = [
        c.obj_name(d.torsion),
        c.mor_name(d.eps),
        c.obj_name(d.object),
        c.mor_name(d.eta),
        c.obj_name(d.free),
    ];
    (
        format!(
            "{} {} {} {} {}",
            c.obj_name(d.object),
            names[0],
            names[1],
            names[3],
            names[4]
        ),
        format!(
            "{}: {} --{}--> {} --{}--> {}",
            names[2], names[0], names[1], names[2], names[3], names[4]
        ),
    )
}

fn check(
    c: &FinCategory,
    t: &FullSub<'_>,
    f: &FullSub<'_>,
    r: &mut Report,
) -> Result<i32, CliError> {
    r.record("command", "check");
    let Some(d) = verdict(c, t, f, r)? else {
        return Ok(1);
    };
    for s in &d.decomp {
        let (rec, txt) = sequence_line(c, s);
        r.record("sequence", rec);
        r.text(format!("  {txt}"));
    }
    r.record("report_violations", d.report.violations.len());
    for v in &d.report.violations {
        r.record("report", v);
        r.text(format!("  violated: {v}"));
    }
    Ok(if d.report.is_clean() { 0 } else { 1 })
}

/// Objects named `1..n` with a morphism `i → j` exactly when `i ≤ j`, one each.
fn chain_length(c: &FinCategory) -> Option<usize> {
    let n = c.obj_count();
    let ids: Vec<ObjId> = (1..=n)
        .map(|i| c.obj_id(&i.to_string()))
        .collect::<Option<_>>()?;
    let thin_chain = ids.iter().enumerate().all(|(i, &a)| {
        ids.iter()
            .enumerate()
            .all(|(j, &b)| c.hom(a, b).len() == usize::from(i <= j))
    });
    (thin_chain && n <= 20).then_some(n)
}

fn enumerate(c: &FinCategory, oracle: Option<Oracle>, r: &mut Report) -> Result<i32, CliError> {
    r.record("command", "enumerate");
    let counts = pair_counts(c);
    r.record("candidates", counts.after_pruning);
    let theories = enumerate_pretorsion(c);
    r.record("theories", theories.len());
    r.text(format!(
        "{} pretorsion theories ({} candidate pairs)",
        theories.len(),
        counts.after_pruning
    ));
    for (t, f) in &theories {
        r.record("theory", format!("{} {}", csv(t), csv(f)));
        r.text(format!("  torsion {{{}}}  free {{{}}}", csv(t), csv(f)));
    }
    if let Some(Oracle::Chain) = oracle {
        let n = chain_length(c).ok_or_else(|| {
            CliError::Usage("the chain oracle needs objects 1..n ordered as a chain".into())
        })?;
        let mut expected: Vec<(u64, u64)> = chain_oracle(n)
            .iter()
            .map(|d| (d.torsion(), d.free()))
            .collect();
        let mut found: Vec<(u64, u64)> = theories.iter().map(|(t, f)| chain_masks(t, f)).collect();
        expected.sort();
        found.sort();
        let agree = expected == found;
        r.record("oracle_theories", expected.len());
        r.record("oracle", if agree { "agree" } else { "disagree" });
        r.text(format!(
            "chain oracle: {} theories, {}",
            expected.len(),
            if agree { "agreement" } else { "DISAGREEMENT" }
        ));
        if !agree {
            return Ok(1);
        }
    }
    Ok(0)
}

fn decompose(
    c: &FinCategory,
    t: &FullSub<'_>,
    f: &FullSub<'_>,
    object: Option<&str>,
    r: &mut Report,
) -> Result<i32, CliError> {
    r.record("command", "decompose");
    let only = object
        .map(|o| {
            c.obj_id(o)
                .ok_or_else(|| CliError::UnknownObject(o.to_string()))
        })
        .transpose()?;
    let Some(d) = verdict(c, t, f, r)? else {
        return Ok(1);
    };
    for s in d
        .decomp
        .iter()
        .filter(|s| only.is_none_or(|o| o == s.object))
    {
        let (rec, txt) = sequence_line(c, s);
        r.record("sequence", rec);
        r.text(txt);
    }
    Ok(0)
}

fn closure(
    c: &FinCategory,
    t: &FullSub<'_>,
    f: &FullSub<'_>,
    r: &mut Report,
) -> Result<i32, CliError> {
    r.record("command", "closure");
    let Some(d) = verdict(c, t, f, r)? else {
        return Ok(1);
    };
    let a = audit(&d)?;
    for e in &a.entries {
        let (status, detail) = match &e.status {
            ClaimStatus::Verified => ("verified", None),
            ClaimStatus::HypothesisNotMet(w) => ("hypothesis_not_met", Some(w)),
            ClaimStatus::Violated(w) => ("violated", Some(w)),
        };
        match detail {
            Some(w) => {
                r.record(e.name, format!("{status} {w}"));
                r.text(format!("  {:<28}{status}: {w}", e.name));
            }
            None => {
                r.record(e.name, status);
                r.text(format!("  {:<28}{status}", e.name));
            }
        }
    }
    let bad = a.violations().count();
    r.record("violations", bad);
    r.text(format!("{bad} violation(s)"));
    Ok(if bad == 0 { 0 } else { 1 })
}

fn gallery_spec(
    name: &str,
    size: Option<usize>,
    expand: bool,
    r: &mut Report,
) -> Result<i32, CliError> {
    let need =
        |what: &str| size.ok_or_else(|| CliError::Usage(format!("gallery {what} needs a size")));
    let (shorthand, category, subs): (String, FinCategory, Vec<NamedSub>) = match name {
        "chain" => {
            let n = need("chain")?;
            (
                format!("chain {n}\n"),
                gallery::chain(n).map_err(BuildError::from)?,
                Vec::new(),
            )
        }
        "two" => {
            let c = gallery::two();
            let subs = named(&c, &[("torsion", &["0", "1"]), ("free", &["1"])]);
            (poset_text(&c, &subs), c, subs)
        }
        "n5" => {
            let c = gallery::n5();
            let subs = named(
                &c,
                &[("torsion", &["T", "Z", "Z'"]), ("free", &["Z", "Z'", "F"])],
            );
            (poset_text(&c, &subs), c, subs)
        }
        "endomap" => {
            let k = need("endomap")?;
            let g = gallery::endomap_category(k).map_err(BuildError::from)?;
            (format!("endomap {k}\n"), g.category, g.subs)
        }
        "preord" => {
            let k = need("preord")?;
            let g = gallery::preord_category(k).map_err(BuildError::from)?;
            (format!("preord {k}\n"), g.category, g.subs)
        }
        other => return Err(CliError::Usage(format!("unknown gallery category {other}"))),
    };
    let text = if expand {
        serialize(&export(&category, &subs)?)
    } else {
        shorthand
    };
    r.out.push_str(&text);
    Ok(0)
}

fn named(c: &FinCategory, subs: &[(&str, &[&str])]) -> Vec<NamedSub> {
    subs.iter()
        .map(|(name, objs)| {
            let mut objects = gallery::objects_named(c, objs);
            objects.sort();
            NamedSub {
                name: name.to_string(),
                objects,
            }
        })
        .collect()
}

/// A poset document listing every element, then every covering pair.
fn poset_text(c: &FinCategory, subs: &[NamedSub]) -> String {
    let mut s = String::from("poset:\n");
    for o in c.objects() {
        let _ = writeln!(s, "  {}", c.obj_name(o));
    }
    for a in c.objects() {
        for b in c.objects().filter(|&b| b != a && !c.hom(a, b).is_empty()) {
            let covered = c
                .objects()
                .any(|m| m != a && m != b && !c.hom(a, m).is_empty() && !c.hom(m, b).is_empty());
            if !covered {
                let _ = writeln!(s, "  {} < {}", c.obj_name(a), c.obj_name(b));
            }
        }
    }
    for sub in subs {
        let names: Vec<&str> = sub.objects.iter().map(|&o| c.obj_name(o)).collect();
        let _ = writeln!(s, "sub {}: {}", sub.name, names.join(" "));
    }
    s
}
