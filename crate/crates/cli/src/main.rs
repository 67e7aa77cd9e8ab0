use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use mipkit_core::catalog::{self, CorpusEntry, DATA_ENV};
use mipkit_core::decomp::{elementary_ideal, predicted_rank, reduce_and_compare};
use mipkit_core::families::{family, qs_distinguisher};
use mipkit_core::invariants::{fingerprint_with, EAnnotation, FingerprintOptions};
use mipkit_core::io::{write_cayley, write_perm};
use mipkit_core::lemmas::{verify_lemmas, SuiteOptions};
use mipkit_core::{compare, elementary_decomposition, jennings, Annotations, FamilyKind, Fingerprint, GroupAlgebra};

/// Invariants of modular group algebras of finite p-groups.
///
/// Exit status: 0 on success, 1 when a comparison distinguishes the groups
/// or a self-check fails, 2 on usage or input errors.
#[derive(Debug, Parser)]
#[command(name = "mipkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the invariant fingerprint of a group.
    Invariants {
        file: PathBuf,
        /// Largest n for k_n and the abelian invariant series (default log_p |G|).
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Compare two fingerprints. Exits 1 if the groups are distinguished.
    Compare {
        left: PathBuf,
        right: PathBuf,
        /// `name value` file of imported e(G) values.
        #[arg(long)]
        annotations: Option<PathBuf>,
        /// Strip elementary abelian direct factors first.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        json: bool,
    },
    /// Split off the largest elementary abelian direct factor.
    Decompose { file: PathBuf },
    /// Emit a member of the D, Q or S family as a group file.
    Family {
        kind: FamilyKind,
        m: u32,
        n: u32,
        #[arg(long, value_enum, default_value_t = Emit::Cayley)]
        emit: Emit,
    },
    /// Separate Q and S by whether Omega_1 of the algebra lies in Delta^2. Exits 1 on failure.
    QsDistinguish { m: u32, n: u32 },
    /// Reproduce the k_1 / a_2 / e and k_1 / a_3 / |Soc| tables from the corpus.
    Tables,
    /// Run the subspace-identity suite on one group. Exits 1 on any failure.
    VerifyLemmas {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Print the dimension subgroup series and its ranks.
    Jennings { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Cayley,
    Perm,
}

/// Output text plus exit status.
struct Outcome {
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }

    fn flagged(text: String, flag: bool) -> Self {
        Outcome { text, status: u8::from(flag) }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn data_dir() -> PathBuf {
    catalog::data_dir()
}

/// The path as given, else relative to the data directory.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let alt = data_dir().join(path);
    if alt.exists() {
        return alt;
    }
    let under_groups = data_dir().join("groups").join(path);
    if under_groups.exists() {
        under_groups
    } else {
        path.to_path_buf()
    }
}

fn load(path: &Path) -> anyhow::Result<CorpusEntry> {
    let path = resolve(path);
    catalog::load_entry(&path).with_context(|| format!("loading {}", path.display()))
}

fn annotation(ann: Option<&Annotations>, name: &str) -> Option<EAnnotation> {
    let ann = ann?;
    ann.get(name).map(|value| EAnnotation { value, source: ann.source.clone() })
}

fn load_annotations(path: &Path) -> anyhow::Result<Annotations> {
    let path = resolve(path);
    let ann = catalog::load_annotations(&path).with_context(|| format!("loading {}", path.display()))?;
    for w in &ann.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(ann)
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Invariants { file, n_max, json } => {
            let entry = load(&file)?;
            let f = fingerprint_with(&entry.group, None, FingerprintOptions { n_max })?;
            Ok(Outcome::ok(if json { to_json(&f)? } else { render_fingerprint(&entry.name, &f) }))
        }
        Command::Compare { left, right, annotations, reduce, json } => {
            let (a, b) = (load(&left)?, load(&right)?);
            let ann = annotations.as_deref().map(load_annotations).transpose()?;
            if reduce {
                let r = reduce_and_compare(&a.group, &b.group)?;
                let text = if json { to_json(&r.verdict)? } else { format!("{r}\n") };
                return Ok(Outcome::flagged(text, r.verdict.is_distinguished()));
            }
            let fa = fingerprint_with(&a.group, annotation(ann.as_ref(), &a.name), FingerprintOptions::default())?;
            let fb = fingerprint_with(&b.group, annotation(ann.as_ref(), &b.name), FingerprintOptions::default())?;
            let v = compare(&fa, &fb);
            let text = if json { to_json(&v)? } else { format!("{} vs {}: {v}\n", a.name, b.name) };
            Ok(Outcome::flagged(text, v.is_distinguished()))
        }
        Command::Decompose { file } => decompose(&load(&file)?),
        Command::Family { kind, m, n, emit } => {
            let fam = family(kind, m, n)?;
            fam.validate()?;
            let body = match emit {
                Emit::Cayley => write_cayley(&fam.group),
                Emit::Perm => write_perm(&fam.group),
            };
            let s = &fam.spec;
            Ok(Outcome::ok(format!(
                "# name {}\n# a = {}, b = {}, c = {}; (alpha, beta, gamma) = ({}, {}, {})\n{body}",
                s.label(),
                fam.a,
                fam.b,
                fam.c,
                s.alpha,
                s.beta,
                s.gamma
            )))
        }
        Command::QsDistinguish { m, n } => {
            let r = qs_distinguisher(m, n)?;
            Ok(Outcome::flagged(format!("{r}\n"), !r.passed()))
        }
        Command::Tables => tables(),
        Command::VerifyLemmas { file, seed, trials } => {
            let entry = load(&file)?;
            let checks = verify_lemmas(&entry.group, &SuiteOptions { seed, trials, ..SuiteOptions::default() })?;
            let mut out = String::new();
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{}: {} checks, {failed} failures", entry.name, checks.len())?;
            Ok(Outcome::flagged(out, failed > 0))
        }
        Command::Jennings { file } => jennings_report(&load(&file)?),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn render_fingerprint(name: &str, f: &Fingerprint) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {name}");
    let _ = writeln!(out, "order: {} (p = {})", f.order, f.prime);
    for (field, t) in f.corollary12.fields() {
        let _ = writeln!(out, "{field}: {t}");
    }
    let _ = writeln!(out, "|G|/|Soc:Soc∩Frat|: {}", f.corollary12.reduced_order);
    let _ = writeln!(out, "|Soc(G)|: {}", f.soc_order);
    let _ = writeln!(out, "|Soc(G)∩Frat(G)|: {}", f.soc_cap_frat_order);
    let _ = writeln!(out, "dg: {}", f.dg);
    let _ = writeln!(out, "k_n (n = 0..): {:?}", f.k_seq);
    let _ = writeln!(out, "a_n (n = 1..): {:?}", f.a_seq);
    for (n, t) in f.abelian_series.iter().enumerate() {
        let items = t.items().iter().map(ToString::to_string).collect::<Vec<_>>();
        let _ = writeln!(out, "abelian_series[n={n}]: {}", items.join("; "));
    }
    let _ = writeln!(out, "jennings_ranks: {:?}", f.jennings_ranks);
    let _ = writeln!(out, "omega1_in_delta2: {}", f.omega1_in_delta2);
    let _ = writeln!(out, "residue_isotropic: {}", f.residue_isotropic);
    if let Some(e) = &f.e_annotation {
        let _ = writeln!(out, "e (imported from {}): {}", e.source, e.value);
    }
    out
}

fn decompose(entry: &CorpusEntry) -> anyhow::Result<Outcome> {
    let g = &entry.group;
    let d = elementary_decomposition(g)?;
    let mut out = String::new();
    writeln!(out, "group: {} (order {})", entry.name, g.order())?;
    writeln!(out, "rank(T): {} (predicted from Soc, Frat: {})", d.rank, predicted_rank(g))?;
    writeln!(out, "|T|: {}", d.t.order())?;
    writeln!(out, "|U|: {}", d.u.order())?;
    writeln!(out, "T elements: {:?}", d.t.elements())?;
    writeln!(out, "|Soc(G)|: {}, |Frat(G)|: {}", d.soc.order(), d.frat.order())?;
    let verified = d.verify(g);
    writeln!(out, "conditions: {}", verified.as_ref().map_or_else(ToString::to_string, |()| "ok".to_string()))?;
    let ideal = elementary_ideal(g, &d)?;
    writeln!(
        out,
        "ideal I = Δ(FT)FG: codim {} (expected {}), FG = I ⊕ FU: {}, structure constants: {}",
        ideal.codim, ideal.expected_codim, ideal.split, ideal.structure_constants
    )?;
    Ok(Outcome::flagged(out, verified.is_err() || !ideal.passed()))
}

fn jennings_report(entry: &CorpusEntry) -> anyhow::Result<Outcome> {
    let g = &entry.group;
    let fg = GroupAlgebra::new(g)?;
    let by_membership = jennings::series_by_membership(&fg);
    let by_recursion = jennings::series_by_recursion(g);
    let ranks = jennings::ranks(g, &by_membership);
    let mut out = String::new();
    writeln!(out, "group: {} (order {})", entry.name, g.order())?;
    for (i, d) in by_membership.iter().enumerate() {
        writeln!(out, "|D_{}|: {}", i + 1, d.order())?;
    }
    writeln!(out, "ranks: {ranks:?}")?;
    writeln!(out, "nilpotency index of Δ: {}", jennings::nilpotency_bound(g.prime(), &ranks))?;
    let agree = by_membership == by_recursion;
    writeln!(out, "membership and recursion agree: {agree}")?;
    Ok(Outcome::flagged(out, !agree))
}

fn tables() -> anyhow::Result<Outcome> {
    let (corpus, ann) = if std::env::var_os(DATA_ENV).is_some() {
        let dir = data_dir();
        let corpus = catalog::corpus_from_dir(&dir).with_context(|| format!("reading corpus from {}", dir.display()))?;
        (corpus, load_annotations(&dir.join("annotations").join("e_values.txt"))?)
    } else {
        (catalog::corpus()?, catalog::embedded_annotations())
    };
    let fp = |e: &CorpusEntry| fingerprint_with(&e.group, None, FingerprintOptions { n_max: Some(1) });
    let mut out = String::new();
    writeln!(out, "Table 1 (order 32)")?;
    writeln!(out, "{:<6}{:<12}{:>5}{:>5}{:>5}", "", "group", "k_1", "a_2", "e")?;
    for e in &corpus[..6] {
        let f = fp(e)?;
        let ev = ann.get(&e.name).map_or_else(|| "-".to_string(), |v| v.to_string());
        writeln!(out, "{:<6}{:<12}{:>5}{:>5}{:>5}", e.label, e.name, f.k_seq[1], f.a_seq[1], ev)?;
    }
    writeln!(out, "e imported from {}", ann.source)?;
    writeln!(out)?;
    writeln!(out, "Table 2 (order 64)")?;
    writeln!(out, "{:<6}{:<12}{:>5}{:>5}{:>7}", "", "group", "k_1", "a_3", "|Soc|")?;
    for e in &corpus[6..12] {
        let f = fp(e)?;
        writeln!(out, "{:<6}{:<12}{:>5}{:>5}{:>7}", e.label, e.name, f.k_seq[1], f.a_seq[2], f.soc_order)?;
    }
    Ok(Outcome::ok(out))
}
