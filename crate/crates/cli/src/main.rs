//! `symvdw`: parse symbolic terms, polynomials, and colorings; run the
//! algebra, the table checks, and the witness searches; print text or one
//! JSON document per invocation.
//!
//! Exit codes: 0 success (including witness found), 1 witness absent within
//! the given bounds, 2 input or search error.

mod parse;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use symvdw::evaluation::{encode_multi, encode_poly, eval_pmulti, eval_px, pi_poly};
use symvdw::partial_semigroup::{
    check_adequate, check_commutativity, check_partial_associativity, idempotents, is_left_ideal,
    is_right_ideal, CheckStatus, PartialOpTable,
};
use symvdw::shifts::{ip_sum, shift, SequenceSpec};
use symvdw::sympoly::SymPoly;
use symvdw::term_algebra::Term;
use symvdw::vdw_search::{
    find_ip_vdw_outcome, find_multivar_vdw_outcome, find_poly_vdw_outcome, Coloring, SearchOutcome,
};

use parse::{ParsedPoly, ParseError};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] symvdw::AlgebraError),
    #[error(transparent)]
    Search(#[from] symvdw::SearchError),
    #[error(transparent)]
    Table(#[from] symvdw::TableError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

#[derive(Parser)]
#[command(
    name = "symvdw",
    version,
    about = "Symbolic polynomial semigroups and polynomial van der Waerden search"
)]
struct Cli {
    /// Emit exactly one JSON document on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a symbolic polynomial: pi and its image polynomial.
    Eval {
        /// A `T{..} + ..` or `M{..} + ..` literal.
        terms: String,
        /// Ambient cap: term length bound (`T`) or per-block bound (`M`).
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Add two symbolic polynomials and print the canonical sum.
    Add {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Scale a symbolic polynomial: one value acts diagonally, a
    /// comma-separated list acts slotwise.
    Scale {
        terms: String,
        #[arg(long)]
        by: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Encode an integer polynomial as its canonical symbolic preimage.
    Encode {
        /// `3n^2 + 2n` style (variables `n`) or `x1^2*x2` style.
        poly: String,
        /// Ambient cap; defaults to the degree (one-variable only).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Apply the IP shift `x + (sum_{t in F} f(t)) . eta`.
    Shift {
        /// The base polynomial, a `T{..} + ..` literal irreducible against eta.
        x: String,
        #[arg(long)]
        eta: String,
        /// Sequence: `id`, `const:c`, `pow:e`, or `table:v1,v2,...`.
        #[arg(long)]
        seq: String,
        /// Index set, e.g. `{1,3,4}`.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Search for a monochromatic `{a + p_i(r)}` configuration.
    SearchVdw {
        /// Comma-separated one-variable polynomials, e.g. `n,n^2`.
        #[arg(long)]
        polys: String,
        /// `mod:q:c0,..` | `explicit:lo:c0,..` | `random:r:seed:lo:hi` | `file:PATH`.
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        a_range: u64,
        #[arg(long)]
        r_range: u64,
    },
    /// Search for a monochromatic `{a + p_i(sum_{t in F} f(t))}` configuration.
    SearchIp {
        #[arg(long)]
        polys: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        a_range: u64,
        #[arg(long)]
        max_index: u64,
        #[arg(long)]
        max_size: usize,
    },
    /// Search with one IP sum per variable over multivariable polynomials.
    SearchMulti {
        /// Comma-separated `x<i>`-style polynomials.
        #[arg(long)]
        polys: String,
        /// One sequence per variable; repeat the flag.
        #[arg(long = "seq", required = true)]
        seqs: Vec<String>,
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        a_range: u64,
        /// One bound per variable; repeat the flag.
        #[arg(long = "max-index", required = true)]
        max_indices: Vec<u64>,
        /// One bound per variable; repeat the flag.
        #[arg(long = "max-size", required = true)]
        max_sizes: Vec<usize>,
    },
    /// Check a partial operation table: associativity, commutativity,
    /// adequacy, and idempotents.
    AnalyzeSemigroup {
        /// Path to a table in the `elements: n` / `i j -> k` text format.
        table: PathBuf,
        /// Element indices to test as a left/right ideal, e.g. `0,2,5`.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Fuzz the semigroup axioms on random symbolic polynomials.
    CheckAxioms {
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Die quietly on a closed pipe (`symvdw … | head`) instead of panicking;
/// Rust ignores SIGPIPE by default.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command, json) {
        Ok(code) => code,
        Err(err) => {
            if json {
                println!("{}", json!({ "schema": 1, "error": err.to_string() }));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, json: bool) -> Result<ExitCode, CliError> {
    match command {
        Command::Eval { terms, cap } => eval_cmd(&terms, cap, json),
        Command::Add { lhs, rhs, cap } => add_cmd(&lhs, &rhs, cap, json),
        Command::Scale { terms, by, cap } => scale_cmd(&terms, &by, cap, json),
        Command::Encode { poly, cap } => encode_cmd(&poly, cap, json),
        Command::Shift { x, eta, seq, set, cap } => shift_cmd(&x, &eta, &seq, &set, cap, json),
        Command::SearchVdw { polys, coloring, a_range, r_range } => {
            search_vdw_cmd(&polys, &coloring, a_range, r_range, json)
        }
        Command::SearchIp { polys, seq, coloring, a_range, max_index, max_size } => {
            search_ip_cmd(&polys, &seq, &coloring, a_range, max_index, max_size, json)
        }
        Command::SearchMulti { polys, seqs, coloring, a_range, max_indices, max_sizes } => {
            search_multi_cmd(&polys, &seqs, &coloring, a_range, &max_indices, &max_sizes, json)
        }
        Command::AnalyzeSemigroup { table, subset } => {
            analyze_cmd(&table, subset.as_deref(), json)
        }
        Command::CheckAxioms { cap, trials, seed } => check_axioms_cmd(cap, trials, seed, json),
    }
}

/// `M{..}` literals start with `M`; everything else is one-variable.
fn is_multi_literal(text: &str) -> bool {
    text.trim_start().starts_with('M')
}

fn eval_cmd(terms: &str, cap: usize, json: bool) -> Result<ExitCode, CliError> {
    if is_multi_literal(terms) {
        let x = parse::parse_multipoly(terms, cap)?;
        let p = eval_pmulti(&x)?;
        if json {
            println!(
                "{}",
                json!({ "schema": 1, "input": x.to_string(), "poly": p.to_string() })
            );
        } else {
            println!("input: {x}");
            println!("P: {p}");
        }
    } else {
        let x = parse::parse_sympoly(terms, cap)?;
        let pi = pi_poly(&x)?;
        let p = eval_px(&x)?;
        if json {
            println!(
                "{}",
                json!({
                    "schema": 1,
                    "input": x.to_string(),
                    "pi": pi,
                    "poly": p.to_string(),
                })
            );
        } else {
            println!("input: {x}");
            println!("pi: {pi}");
            println!("P_x: {p}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn add_cmd(lhs: &str, rhs: &str, cap: usize, json: bool) -> Result<ExitCode, CliError> {
    let sum = if is_multi_literal(lhs) || is_multi_literal(rhs) {
        let a = parse::parse_multipoly(lhs, cap)?;
        let b = parse::parse_multipoly(rhs, cap)?;
        a.add(&b)?.to_string()
    } else {
        let a = parse::parse_sympoly(lhs, cap)?;
        let b = parse::parse_sympoly(rhs, cap)?;
        a.add(&b)?.to_string()
    };
    if json {
        println!("{}", json!({ "schema": 1, "sum": sum }));
    } else {
        println!("{sum}");
    }
    Ok(ExitCode::SUCCESS)
}

fn scale_cmd(terms: &str, by: &str, cap: usize, json: bool) -> Result<ExitCode, CliError> {
    let scaled = if is_multi_literal(terms) {
        let x = parse::parse_multipoly(terms, cap)?;
        let r = parse::parse_scale_vector(by, 1)?;
        if r.len() != 1 {
            return Err(CliError::Input(
                "multivariable scaling takes a single diagonal value".to_string(),
            ));
        }
        let caps = x.caps();
        let rs = vec![vec![r[0]; caps.m()]; caps.k()];
        x.scale(&rs)?.to_string()
    } else {
        let x = parse::parse_sympoly(terms, cap)?;
        let r = parse::parse_scale_vector(by, cap)?;
        x.scale(&r)?.to_string()
    };
    if json {
        println!("{}", json!({ "schema": 1, "scaled": scaled }));
    } else {
        println!("{scaled}");
    }
    Ok(ExitCode::SUCCESS)
}

fn encode_cmd(poly: &str, cap: Option<usize>, json: bool) -> Result<ExitCode, CliError> {
    let (input, encoded, cap) = match parse::parse_polynomial(poly)? {
        ParsedPoly::One(p) => {
            let cap = match (cap, p.degree()) {
                (Some(c), _) => c,
                (None, Some(d)) => d.max(1),
                (None, None) => 1,
            };
            (p.to_string(), encode_poly(&p, cap)?.to_string(), cap)
        }
        ParsedPoly::Multi(p) => {
            let (enc, m) = encode_multi(&p)?;
            (p.to_string(), enc.to_string(), m)
        }
    };
    if json {
        println!(
            "{}",
            json!({ "schema": 1, "poly": input, "encoded": encoded, "cap": cap })
        );
    } else {
        println!("{encoded}");
    }
    Ok(ExitCode::SUCCESS)
}

fn shift_cmd(
    x: &str,
    eta: &str,
    seq: &str,
    set: &str,
    cap: usize,
    json: bool,
) -> Result<ExitCode, CliError> {
    let x = parse::parse_sympoly(x, cap)?;
    let eta = parse::parse_sympoly(eta, cap)?;
    let f: SequenceSpec = seq.parse()?;
    let set = parse::parse_index_set(set)?;
    let s = ip_sum(&f, &set)?;
    let shifted = shift(&x, &eta, &f, &set)?;
    if json {
        println!(
            "{}",
            json!({
                "schema": 1,
                "x": x.to_string(),
                "eta": eta.to_string(),
                "seq": f.to_string(),
                "set": set.elements(),
                "ip_sum": s,
                "result": shifted.to_string(),
            })
        );
    } else {
        println!("ip sum: {s}");
        println!("{shifted}");
    }
    Ok(ExitCode::SUCCESS)
}

fn one_variable_polys(text: &str) -> Result<Vec<symvdw::evaluation::IntPoly>, CliError> {
    parse::parse_poly_list(text)?
        .into_iter()
        .map(|p| match p {
            ParsedPoly::One(p) => Ok(p),
            ParsedPoly::Multi(_) => Err(CliError::Input(
                "this search takes one-variable polynomials; use search-multi for x<i> style"
                    .to_string(),
            )),
        })
        .collect()
}

fn multi_polys(text: &str) -> Result<Vec<symvdw::evaluation::MultiIntPoly>, CliError> {
    parse::parse_poly_list(text)?
        .into_iter()
        .map(|p| match p {
            ParsedPoly::Multi(p) => Ok(p),
            ParsedPoly::One(_) => Err(CliError::Input(
                "search-multi takes `x<i>`-style polynomials; use search-vdw for `n` style"
                    .to_string(),
            )),
        })
        .collect()
}

/// Shared tail of every search subcommand: report, then exit 0 when a
/// witness was found and 1 when the bounded scan came up empty.
fn emit_search_report(
    json: bool,
    polys: Vec<String>,
    coloring: &Coloring,
    outcome: &SearchOutcome,
    elapsed_ms: u64,
) -> ExitCode {
    if json {
        println!(
            "{}",
            json!({
                "schema": 1,
                "polys": polys,
                "coloring": coloring,
                "witness": outcome.witness,
                "stats": {
                    "candidates_scanned": outcome.candidates_scanned,
                    "elapsed_ms": elapsed_ms,
                },
            })
        );
    } else {
        match &outcome.witness {
            Some(w) => println!("witness: {w}"),
            None => println!("no witness within bounds"),
        }
        println!(
            "candidates scanned: {} in {} ms",
            outcome.candidates_scanned, elapsed_ms
        );
    }
    if outcome.witness.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn search_vdw_cmd(
    polys: &str,
    coloring: &str,
    a_range: u64,
    r_range: u64,
    json: bool,
) -> Result<ExitCode, CliError> {
    let polys = one_variable_polys(polys)?;
    let coloring = parse::parse_coloring(coloring)?;
    let start = Instant::now();
    let outcome = find_poly_vdw_outcome(&polys, &coloring, a_range, r_range)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let texts = polys.iter().map(|p| p.to_string()).collect();
    Ok(emit_search_report(json, texts, &coloring, &outcome, elapsed))
}

#[allow(clippy::too_many_arguments)]
fn search_ip_cmd(
    polys: &str,
    seq: &str,
    coloring: &str,
    a_range: u64,
    max_index: u64,
    max_size: usize,
    json: bool,
) -> Result<ExitCode, CliError> {
    let polys = one_variable_polys(polys)?;
    let f: SequenceSpec = seq.parse()?;
    let coloring = parse::parse_coloring(coloring)?;
    let start = Instant::now();
    let outcome = find_ip_vdw_outcome(&polys, &f, &coloring, a_range, max_index, max_size)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let texts = polys.iter().map(|p| p.to_string()).collect();
    Ok(emit_search_report(json, texts, &coloring, &outcome, elapsed))
}

#[allow(clippy::too_many_arguments)]
fn search_multi_cmd(
    polys: &str,
    seqs: &[String],
    coloring: &str,
    a_range: u64,
    max_indices: &[u64],
    max_sizes: &[usize],
    json: bool,
) -> Result<ExitCode, CliError> {
    let polys = multi_polys(polys)?;
    let fs: Vec<SequenceSpec> =
        seqs.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let coloring = parse::parse_coloring(coloring)?;
    let start = Instant::now();
    let outcome =
        find_multivar_vdw_outcome(&polys, &fs, &coloring, a_range, max_indices, max_sizes)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let texts = polys.iter().map(|p| p.to_string()).collect();
    Ok(emit_search_report(json, texts, &coloring, &outcome, elapsed))
}

fn analyze_cmd(path: &PathBuf, subset: Option<&str>, json: bool) -> Result<ExitCode, CliError> {
    let body = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let table = PartialOpTable::from_text(&body)?;
    let assoc = check_partial_associativity(&table);
    let comm = check_commutativity(&table);
    let adequacy = check_adequate(&table);
    let idem = idempotents(&table);
    let ideal = subset
        .map(|s| -> Result<_, CliError> {
            let subset = parse::parse_subset(s)?;
            let left = is_left_ideal(&table, &subset)?;
            let right = is_right_ideal(&table, &subset)?;
            Ok(json!({ "subset": subset, "left": left, "right": right }))
        })
        .transpose()?;
    if json {
        println!(
            "{}",
            json!({
                "schema": 1,
                "elements": table.len(),
                "associativity": assoc,
                "commutativity": comm,
                "adequacy": adequacy,
                "idempotents": idem,
                "ideal": ideal,
            })
        );
    } else {
        println!("elements: {}", table.len());
        println!(
            "associativity: {} ({} triples checked, {} window-censored)",
            if assoc.status == CheckStatus::Pass { "pass" } else { "FAIL" },
            assoc.checked_triples,
            assoc.window_censored
        );
        for c in &assoc.counterexamples {
            println!("  counterexample: ({}, {}, {}) {:?}", c.x, c.y, c.z, c.kind);
        }
        println!(
            "commutativity: {} ({} pairs)",
            if comm.status == CheckStatus::Pass { "pass" } else { "FAIL" },
            comm.checked_pairs
        );
        match adequacy.witness {
            Some(s) => println!("adequate: yes (witness {s})"),
            None => println!(
                "adequate: {}",
                if adequacy.adequate { "yes (vacuously)" } else { "no" }
            ),
        }
        println!("idempotents: {idem:?}");
        if let Some(ideal) = &ideal {
            println!(
                "subset {}: left ideal {}, right ideal {}",
                ideal["subset"], ideal["left"], ideal["right"]
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_axioms_cmd(cap: usize, trials: u64, seed: u64, json: bool) -> Result<ExitCode, CliError> {
    if cap == 0 {
        return Err(CliError::Input("cap must be at least 1".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_poly = |rng: &mut ChaCha8Rng| -> SymPoly {
        let want = rng.random_range(1..=3usize);
        let mut terms: Vec<Term> = Vec::new();
        for _ in 0..want * 8 {
            if terms.len() == want {
                break;
            }
            let len = rng.random_range(1..=cap);
            let iota = rng.random_range(-9..=9);
            let coeffs = (0..len).map(|_| rng.random_range(-9..=9)).collect();
            let t = Term::new(iota, coeffs, cap).expect("len is within cap");
            if terms.iter().all(|u| u.key() != t.key()) {
                terms.push(t);
            }
        }
        SymPoly::new(terms).expect("keys are pairwise distinct")
    };
    let mut assoc_failures = 0u64;
    let mut comm_failures = 0u64;
    for _ in 0..trials {
        let x = random_poly(&mut rng);
        let y = random_poly(&mut rng);
        let z = random_poly(&mut rng);
        let xy = x.add(&y)?;
        if xy != y.add(&x)? {
            comm_failures += 1;
        }
        if xy.add(&z)? != x.add(&y.add(&z)?)? {
            assoc_failures += 1;
        }
    }
    if json {
        println!(
            "{}",
            json!({
                "schema": 1,
                "cap": cap,
                "trials": trials,
                "seed": seed,
                "associativity_failures": assoc_failures,
                "commutativity_failures": comm_failures,
            })
        );
    } else {
        println!("cap {cap}, {trials} trials, seed {seed}");
        println!("associativity failures: {assoc_failures}");
        println!("commutativity failures: {comm_failures}");
    }
    if assoc_failures == 0 && comm_failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}
