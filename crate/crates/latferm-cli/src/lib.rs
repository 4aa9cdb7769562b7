//! Command-line front end for the latferm library.
//!
//! Five subcommands: `map` dumps encoded hopping operators per lattice
//! edge, `analyze` prints edge-averaged cost statistics for one lattice,
//! `sweep` tabulates those statistics across lattice sizes, `route`
//! solves one Steiner instance on a device graph, and `verify` replays
//! the library's oracle checks and reports as JSON.
//!
//! Exit codes: 0 success, 1 invalid flags or violated preconditions,
//! 2 verification failure.

use std::io::Write;
use std::sync::Mutex;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use latferm::bench::{self, Connectivity, StatRow};
use latferm::mappings::{EncodeError, Encoder, Mapping};
use latferm::num_rational::Ratio;
use latferm::routing::{self, ArchGraph, SteinerMethod};
use latferm::verify::{self, StateSample, MAX_DENSE_QUBITS};
use latferm::{Lattice, PauliOperator};

/// Frozen CSV column order for analyze and sweep.
pub const CSV_HEADER: &str =
    "mapping,N,n,avg_weight,max_weight,avg_iqc,max_iqc,qubit_ratio,exact_fraction";

#[derive(Parser)]
#[command(
    name = "latferm",
    version,
    about = "Encode square-lattice fermions as qubit Pauli operators and measure the cost"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the encoded hopping operator of every lattice edge
    Map(MapArgs),
    /// Edge-averaged weight and routing statistics for one lattice
    Analyze(AnalyzeArgs),
    /// Statistics across several lattice sizes
    Sweep(SweepArgs),
    /// Steiner-tree interaction qubit count for a qubit subset
    Route(RouteArgs),
    /// Check encoded operators against the fermionic oracle
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MapArgs {
    /// Mapping: jw, bk, hybrid, or hybridplus
    #[arg(long)]
    mapping: String,
    /// Lattice side length
    #[arg(long = "N")]
    n_side: usize,
    /// Cell side length (defaults: 1, or N for bk)
    #[arg(long = "n")]
    cell_side: Option<usize>,
    /// Output format: text or json
    #[arg(long, default_value = "text")]
    format: String,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Mapping: jw, bk, hybrid, or hybridplus
    #[arg(long)]
    mapping: String,
    /// Lattice side length
    #[arg(long = "N")]
    n_side: usize,
    /// Cell side length (defaults: 1, or N for bk)
    #[arg(long = "n")]
    cell_side: Option<usize>,
    /// Device connectivity: lattice or all
    #[arg(long, default_value = "lattice")]
    connectivity: String,
    /// Largest terminal set solved exactly
    #[arg(long = "exact-limit", default_value_t = routing::DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    /// Output format: text, csv, or json
    #[arg(long, default_value = "text")]
    format: String,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Mapping: jw, bk, hybrid, or hybridplus
    #[arg(long)]
    mapping: String,
    /// Comma-separated lattice side lengths
    #[arg(long = "N", value_delimiter = ',')]
    n_sides: Vec<usize>,
    /// Cell side length (defaults: 1, or N for bk)
    #[arg(long = "n")]
    cell_side: Option<usize>,
    /// Device connectivity: lattice or all
    #[arg(long, default_value = "lattice")]
    connectivity: String,
    /// Largest terminal set solved exactly
    #[arg(long = "exact-limit", default_value_t = routing::DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct RouteArgs {
    /// Device connectivity: lattice or all
    #[arg(long, default_value = "lattice")]
    connectivity: String,
    /// Device grid side length
    #[arg(long = "N")]
    n_side: usize,
    /// Comma-separated terminal qubit indices
    #[arg(long, value_delimiter = ',')]
    qubits: Vec<usize>,
    /// Largest terminal set solved exactly
    #[arg(long = "exact-limit", default_value_t = routing::DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    /// Output format: text or json
    #[arg(long, default_value = "text")]
    format: String,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Mapping: jw, bk, hybrid, or hybridplus
    #[arg(long)]
    mapping: String,
    /// Lattice side length
    #[arg(long = "N")]
    n_side: usize,
    /// Cell side length (defaults: 1, or N for bk)
    #[arg(long = "n")]
    cell_side: Option<usize>,
    /// Random Fock states sampled per edge
    #[arg(long, default_value_t = 20)]
    states: usize,
    /// Seed for the state sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

/// A failed command: exit code plus a message naming the owning module.
struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, module: &str, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: format!("error ({}): {}", module, message),
    }
}

impl From<EncodeError> for Failure {
    fn from(e: EncodeError) -> Self {
        let module = match e {
            EncodeError::Lattice(_) => "lattice",
            _ => "mappings",
        };
        fail(1, module, e)
    }
}

impl From<verify::VerifyError> for Failure {
    fn from(e: verify::VerifyError) -> Self {
        match e {
            verify::VerifyError::Encode(inner) => inner.into(),
            _ => fail(1, "verify", e),
        }
    }
}

/// Run with argv-style args, writing program output to `out`. Returns
/// the process exit code; error messages go to stderr.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    eprint!("{}", e.render());
                    1
                }
            };
        }
    };
    let result = match cli.cmd {
        Cmd::Map(a) => cmd_map(&a).map(|body| (body, a.out, 0)),
        Cmd::Analyze(a) => cmd_analyze(&a).map(|body| (body, a.out, 0)),
        Cmd::Sweep(a) => cmd_sweep(&a).map(|body| (body, a.out, 0)),
        Cmd::Route(a) => cmd_route(&a).map(|body| (body, a.out, 0)),
        Cmd::Verify(a) => cmd_verify(&a).map(|(body, code)| (body, a.out, code)),
    };
    match result {
        Ok((body, dest, code)) => match dest {
            None => {
                if out.write_all(body.as_bytes()).is_err() {
                    return 1;
                }
                code
            }
            Some(path) => match std::fs::write(&path, body) {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("error (cli): cannot write {}: {}", path, e);
                    1
                }
            },
        },
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    }
}

fn parse_mapping(s: &str) -> Result<Mapping, Failure> {
    Mapping::parse(s).ok_or_else(|| {
        fail(
            1,
            "cli",
            format!("unknown mapping {:?}: expected jw, bk, hybrid, or hybridplus", s),
        )
    })
}

fn parse_connectivity(s: &str) -> Result<Connectivity, Failure> {
    Connectivity::parse(s)
        .ok_or_else(|| fail(1, "cli", format!("unknown connectivity {:?}: expected lattice or all", s)))
}

fn parse_format(s: &str, allowed: &[&str]) -> Result<&'static str, Failure> {
    for &a in allowed {
        if s == a {
            // Round-trip through the allowed list to get 'static strs.
            return Ok(match a {
                "text" => "text",
                "json" => "json",
                "csv" => "csv",
                _ => unreachable!(),
            });
        }
    }
    Err(fail(
        1,
        "cli",
        format!("unknown format {:?}: expected {}", s, allowed.join(" or ")),
    ))
}

fn make_encoder(mapping: &str, n_side: usize, cell_side: Option<usize>) -> Result<Encoder, Failure> {
    let mapping = parse_mapping(mapping)?;
    let cell = cell_side.unwrap_or_else(|| mapping.default_cell_side(n_side));
    Ok(Encoder::new(mapping, n_side, cell)?)
}

/// Shortest-roundtrip float form of an exact ratio ("2.5", "1", ...).
fn ratio_f64_str(r: Ratio<i64>) -> String {
    format!("{}", bench::ratio_to_f64(r))
}

/// Exact form: "39/8", or just "5" when integral.
fn ratio_exact_str(r: Ratio<i64>) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn spec_json(lat: &Lattice) -> Value {
    json!({ "N": lat.n_side(), "n": lat.cell_side() })
}

fn operator_terms_json(op: &PauliOperator) -> Value {
    let terms: Vec<Value> = op
        .terms()
        .map(|(p, c)| json!({ "re": c.re, "im": c.im, "pauli": format!("{}", p) }))
        .collect();
    Value::Array(terms)
}

fn layout_json(enc: &Encoder) -> Value {
    let rows: Vec<Value> = (0..enc.num_qubits())
        .map(|q| {
            let info = enc.describe_qubit(q);
            let mode = if info.is_ancilla { Value::Null } else { json!(q) };
            json!({
                "row": info.row,
                "col": info.col,
                "cell": info.cell,
                "mode": mode,
                "is_ancilla": info.is_ancilla,
            })
        })
        .collect();
    Value::Array(rows)
}

fn cmd_map(a: &MapArgs) -> Result<String, Failure> {
    let format = parse_format(&a.format, &["text", "json"])?;
    let enc = make_encoder(&a.mapping, a.n_side, a.cell_side)?;
    let all = enc.encode_lattice_hamiltonian()?;
    if format == "text" {
        let mut body = String::new();
        for ((i, j), op) in &all {
            body.push_str(&format!("# edge {} {}\n{}\n", i, j, op));
        }
        return Ok(body);
    }
    let edges: Vec<Value> = all
        .iter()
        .map(|((i, j), op)| json!({ "i": i, "j": j, "terms": operator_terms_json(op) }))
        .collect();
    let doc = json!({
        "mapping": enc.mapping().name(),
        "spec": spec_json(enc.lattice()),
        "qubits": enc.num_qubits(),
        "layout": layout_json(&enc),
        "edges": edges,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
}

fn csv_row(row: &StatRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        row.mapping.name(),
        row.n_side,
        row.cell_side,
        ratio_f64_str(row.avg_weight),
        row.max_weight,
        ratio_f64_str(row.avg_iqc),
        row.max_iqc,
        ratio_f64_str(row.qubit_ratio),
        ratio_f64_str(row.exact_fraction),
    )
}

fn row_json(row: &StatRow) -> Value {
    json!({
        "mapping": row.mapping.name(),
        "N": row.n_side,
        "n": row.cell_side,
        "edges": row.edges,
        "avg_weight": bench::ratio_to_f64(row.avg_weight),
        "avg_weight_exact": ratio_exact_str(row.avg_weight),
        "max_weight": row.max_weight,
        "max_string_weight": row.max_string_weight,
        "avg_iqc": bench::ratio_to_f64(row.avg_iqc),
        "avg_iqc_exact": ratio_exact_str(row.avg_iqc),
        "max_iqc": row.max_iqc,
        "qubit_ratio": bench::ratio_to_f64(row.qubit_ratio),
        "qubit_ratio_exact": ratio_exact_str(row.qubit_ratio),
        "exact_fraction": bench::ratio_to_f64(row.exact_fraction),
    })
}

fn ratio_line(name: &str, r: Ratio<i64>) -> String {
    if *r.denom() == 1 {
        format!("{}: {}\n", name, r.numer())
    } else {
        format!("{}: {} ({})\n", name, ratio_f64_str(r), ratio_exact_str(r))
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<String, Failure> {
    let format = parse_format(&a.format, &["text", "csv", "json"])?;
    let connectivity = parse_connectivity(&a.connectivity)?;
    let enc = make_encoder(&a.mapping, a.n_side, a.cell_side)?;
    let row = bench::run_row(&enc, connectivity, a.exact_limit)?;
    Ok(match format {
        "text" => {
            let mut body = String::new();
            body.push_str(&format!("mapping: {}\n", row.mapping.name()));
            body.push_str(&format!("N: {}\n", row.n_side));
            body.push_str(&format!("n: {}\n", row.cell_side));
            body.push_str(&format!("connectivity: {}\n", connectivity.name()));
            body.push_str(&format!("edges: {}\n", row.edges));
            body.push_str(&ratio_line("avg_weight", row.avg_weight));
            body.push_str(&format!("max_weight: {}\n", row.max_weight));
            body.push_str(&format!("max_string_weight: {}\n", row.max_string_weight));
            body.push_str(&ratio_line("avg_iqc", row.avg_iqc));
            body.push_str(&format!("max_iqc: {}\n", row.max_iqc));
            body.push_str(&ratio_line("qubit_ratio", row.qubit_ratio));
            body.push_str(&ratio_line("exact_fraction", row.exact_fraction));
            body
        }
        "csv" => format!("{}\n{}\n", CSV_HEADER, csv_row(&row)),
        _ => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ "connectivity": connectivity.name(), "row": row_json(&row) }))
                .unwrap()
        ),
    })
}

fn cmd_sweep(a: &SweepArgs) -> Result<String, Failure> {
    let format = parse_format(&a.format, &["csv", "json"])?;
    let mapping = parse_mapping(&a.mapping)?;
    let connectivity = parse_connectivity(&a.connectivity)?;
    if a.n_sides.is_empty() {
        return Err(fail(1, "cli", "sweep needs at least one lattice side in --N"));
    }
    if a.jobs == 0 {
        return Err(fail(1, "cli", "--jobs must be at least 1"));
    }
    let jobs = a.jobs.min(a.n_sides.len());
    // One slot per size; workers fill disjoint index sets, output order
    // stays the order of --N regardless of completion order.
    let slots: Mutex<Vec<Option<Result<StatRow, (usize, EncodeError)>>>> =
        Mutex::new(vec![None; a.n_sides.len()]);
    std::thread::scope(|scope| {
        for worker in 0..jobs {
            let slots = &slots;
            let n_sides = &a.n_sides;
            let cell_side = a.cell_side;
            let exact_limit = a.exact_limit;
            scope.spawn(move || {
                let mut idx = worker;
                while idx < n_sides.len() {
                    let n = n_sides[idx];
                    let sweep =
                        bench::run_sweep(mapping, &[n], cell_side, connectivity, exact_limit);
                    let outcome = match (sweep.rows.into_iter().next(), sweep.skipped.into_iter().next()) {
                        (Some(row), _) => Ok(row),
                        (None, Some(skip)) => Err(skip),
                        (None, None) => unreachable!("one size in, one outcome out"),
                    };
                    slots.lock().unwrap()[idx] = Some(outcome);
                    idx += jobs;
                }
            });
        }
    });
    let outcomes = slots.into_inner().unwrap();
    let mut rows = Vec::new();
    for outcome in outcomes {
        match outcome.expect("every slot filled") {
            Ok(row) => rows.push(row),
            Err((n, e)) => eprintln!("skip N={}: {} ({})", n, e, "mappings"),
        }
    }
    if rows.is_empty() {
        return Err(fail(1, "cli", "no sweep row satisfied the mapping's preconditions"));
    }
    Ok(if format == "csv" {
        let mut body = String::from(CSV_HEADER);
        body.push('\n');
        for row in &rows {
            body.push_str(&csv_row(row));
            body.push('\n');
        }
        body
    } else {
        let doc = json!({
            "mapping": mapping.name(),
            "connectivity": connectivity.name(),
            "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
        });
        format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
    })
}

fn cmd_route(a: &RouteArgs) -> Result<String, Failure> {
    let format = parse_format(&a.format, &["text", "json"])?;
    let connectivity = parse_connectivity(&a.connectivity)?;
    if a.n_side == 0 {
        return Err(fail(1, "cli", "--N must be positive"));
    }
    let graph = match connectivity {
        Connectivity::Lattice => ArchGraph::square_lattice(a.n_side),
        Connectivity::AllToAll => ArchGraph::all_to_all(a.n_side * a.n_side),
    };
    if a.qubits.is_empty() {
        return Err(fail(1, "routing", "at least one terminal qubit is required"));
    }
    for &q in &a.qubits {
        if q >= graph.num_vertices() {
            return Err(fail(
                1,
                "routing",
                format!("terminal {} is outside the {} qubit device", q, graph.num_vertices()),
            ));
        }
    }
    let tree = routing::steiner_tree(&graph, &a.qubits, a.exact_limit);
    if format == "text" {
        return Ok(format!("{}\n", tree.num_vertices()));
    }
    let method = match tree.method {
        SteinerMethod::Exact => "exact",
        SteinerMethod::Heuristic => "heuristic",
    };
    let doc = json!({
        "connectivity": connectivity.name(),
        "N": a.n_side,
        "terminals": a.qubits,
        "count": tree.num_vertices(),
        "tree_edges": tree.edges,
        "method": method,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
}

/// A failure entry in the verify report, already JSON-shaped.
fn verify_suites(
    enc: &Encoder,
    states: usize,
    seed: u64,
) -> Result<(Value, usize, usize, Vec<Value>), Failure> {
    let mut suites = serde_json::Map::new();
    let mut failures: Vec<Value> = Vec::new();
    let mut edges_checked = 0;
    let mut states_checked = 0;

    if enc.mapping() != Mapping::HybridPlus {
        let car = verify::check_car(enc, 1e-12)?;
        for f in &car.failures {
            failures.push(json!({
                "suite": "car",
                "i": f.i,
                "j": f.j,
                "relation": f.relation,
                "deviation_sq": f.deviation_sq,
            }));
        }
        suites.insert(
            "car".into(),
            json!({ "pairs_checked": car.pairs_checked, "failures": car.failures.len() }),
        );
    }

    if enc.mapping() == Mapping::Hybrid {
        let mismatches = degenerate_mismatches(enc.lattice().n_side())?;
        suites.insert(
            "degenerate_equivalence".into(),
            json!({ "mismatches": mismatches.len() }),
        );
        failures.extend(mismatches);
    }

    if enc.mapping() == Mapping::HybridPlus {
        let stab_failures = stabilizer_suite(enc)?;
        suites.insert(
            "stabilizers".into(),
            json!({ "count": enc.build_stabilizers()?.len(), "failures": stab_failures.len() }),
        );
        failures.extend(stab_failures);
        if enc.num_qubits() <= MAX_DENSE_QUBITS {
            let dev =
                verify::entangling_contract_max_dev(enc, StateSample::Random(states), seed)?;
            let pass = dev < 1e-20;
            if !pass {
                failures.push(json!({ "suite": "entangling_contract", "deviation_sq": dev }));
            }
            suites.insert(
                "entangling_contract".into(),
                json!({ "max_deviation_sq": dev, "pass": pass }),
            );
        }
    }

    let report =
        verify::check_encoding_equivalence(enc, StateSample::Random(states), seed, 1e-10)?;
    edges_checked += report.edges_checked;
    states_checked += report.states_checked;
    for f in &report.failures {
        failures.push(json!({
            "suite": "encoding_equivalence",
            "edge": [f.edge.0, f.edge.1],
            "state": f.state,
            "deviation_sq": f.deviation_sq,
        }));
    }
    suites.insert(
        "encoding_equivalence".into(),
        json!({
            "edges_checked": report.edges_checked,
            "states_checked": report.states_checked,
            "failures": report.failures.len(),
        }),
    );
    Ok((Value::Object(suites), edges_checked, states_checked, failures))
}

/// String-for-string comparison of the degenerate cell sides against
/// their equivalents: cell 1 against jw, cell N against bk. Ladders and
/// every edge operator.
fn degenerate_mismatches(n_side: usize) -> Result<Vec<Value>, Failure> {
    let mut out = Vec::new();
    let pairs = [
        (Encoder::new(Mapping::Hybrid, n_side, 1)?, Encoder::new(Mapping::Jw, n_side, 1)?),
        (Encoder::new(Mapping::Hybrid, n_side, n_side)?, Encoder::new(Mapping::Bk, n_side, n_side)?),
    ];
    for (hybrid, other) in &pairs {
        let kind = other.mapping().name();
        for mode in 0..hybrid.lattice().num_modes() {
            for dagger in [false, true] {
                let a = hybrid.encode_ladder(mode, dagger)?;
                let b = other.encode_ladder(mode, dagger)?;
                if !a.approx_eq(&b, 1e-12) {
                    out.push(json!({
                        "suite": "degenerate_equivalence",
                        "against": kind,
                        "mode": mode,
                        "dagger": dagger,
                    }));
                }
            }
        }
        for (i, j) in hybrid.lattice().edges() {
            let a = hybrid.encode_hopping(i, j)?;
            let b = other.encode_hopping(i, j)?;
            if !a.approx_eq(&b, 1e-12) {
                out.push(json!({
                    "suite": "degenerate_equivalence",
                    "against": kind,
                    "edge": [i, j],
                }));
            }
        }
    }
    Ok(out)
}

/// Stabilizer family checks: pairwise commutation, squaring to +I, and
/// every stabilized edge operator commuting with the family.
fn stabilizer_suite(enc: &Encoder) -> Result<Vec<Value>, Failure> {
    let mut out = Vec::new();
    let stabs = enc.build_stabilizers()?;
    for (a, sa) in stabs.iter().enumerate() {
        let square = sa.string.mul(&sa.string);
        if !square.is_identity() || square.phase_exp() != 0 {
            out.push(json!({ "suite": "stabilizers", "kind": "square", "cell": sa.cell }));
        }
        for sb in stabs.iter().skip(a + 1) {
            if !sa.string.commutes_with(&sb.string) {
                out.push(json!({
                    "suite": "stabilizers",
                    "kind": "commute",
                    "cells": [sa.cell, sb.cell],
                }));
            }
        }
    }
    for (i, j) in enc.lattice().edges() {
        let op = enc.encode_hopping(i, j)?;
        for (p, _) in op.terms() {
            for s in &stabs {
                if !p.commutes_with(&s.string) {
                    out.push(json!({
                        "suite": "stabilizers",
                        "kind": "term_commutes",
                        "edge": [i, j],
                        "cell": s.cell,
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, i32), Failure> {
    if a.states == 0 {
        return Err(fail(1, "cli", "--states must be at least 1"));
    }
    let enc = make_encoder(&a.mapping, a.n_side, a.cell_side)?;
    let (suites, edges_checked, states_checked, failures) =
        verify_suites(&enc, a.states, a.seed)?;
    let pass = failures.is_empty();
    let doc = json!({
        "mapping": enc.mapping().name(),
        "spec": spec_json(enc.lattice()),
        "seed": a.seed,
        "states_per_edge": a.states,
        "edges_checked": edges_checked,
        "states_checked": states_checked,
        "suites": suites,
        "failures": failures,
        "pass": pass,
    });
    let body = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
    Ok((body, if pass { 0 } else { 2 }))
}
