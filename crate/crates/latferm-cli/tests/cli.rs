//! End-to-end tests through the public `run` entry point: frozen output
//! bytes, exit codes, and determinism across runs and worker counts.

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("latferm")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let mut buf = Vec::new();
    let code = latferm_cli::run(&argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn map_chain_two_by_two_is_frozen() {
    let (code, out) = run(&["map", "--mapping", "jw", "--N", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "# edge 0 1\n0.5 X0 X1\n0.5 Y0 Y1\n\
         # edge 0 2\n0.5 X0 Z1 X2\n0.5 Y0 Z1 Y2\n\
         # edge 1 3\n0.5 X1 Z2 X3\n0.5 Y1 Z2 Y3\n\
         # edge 2 3\n0.5 X2 X3\n0.5 Y2 Y3\n"
    );
}

#[test]
fn map_json_reports_layout_and_ancillas() {
    let (code, out) = run(&[
        "map", "--mapping", "hybridplus", "--N", "4", "--n", "2", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mapping"], "hybridplus");
    assert_eq!(v["qubits"], 20);
    let layout = v["layout"].as_array().unwrap();
    assert_eq!(layout.len(), 20);
    for (q, entry) in layout.iter().enumerate() {
        if q < 16 {
            assert_eq!(entry["is_ancilla"], false);
            assert_eq!(entry["mode"], q);
        } else {
            assert_eq!(entry["is_ancilla"], true);
            assert!(entry["mode"].is_null());
            assert_eq!(entry["cell"], q - 16);
        }
    }
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 24);
    for edge in edges {
        for term in edge["terms"].as_array().unwrap() {
            assert!(term["re"].is_number());
            assert!(term["im"].is_number());
            assert!(term["pauli"].is_string());
        }
    }
}

#[test]
fn analyze_text_prints_exact_forms_in_parens() {
    let (code, out) = run(&[
        "analyze", "--mapping", "hybridplus", "--N", "8", "--n", "2",
        "--connectivity", "all",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("qubit_ratio: 1.25 (5/4)"), "{out}");
    assert!(out.contains("avg_weight: 5.303571428571429 (297/56)"), "{out}");
    assert!(out.contains("connectivity: all-to-all"), "{out}");
}

#[test]
fn analyze_csv_uses_the_frozen_header() {
    let (code, out) = run(&[
        "analyze", "--mapping", "jw", "--N", "4", "--format", "csv",
        "--connectivity", "all",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(latferm_cli::CSV_HEADER));
    assert_eq!(lines.next(), Some("jw,4,1,3.5,5,3.5,5,1,1"));
    assert_eq!(lines.next(), None);
}

#[test]
fn bk_cell_side_defaults_to_the_lattice_side() {
    let (code, out) = run(&[
        "analyze", "--mapping", "bk", "--N", "4", "--format", "csv",
        "--connectivity", "all",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("bk,4,4,"), "{out}");
}

#[test]
fn sweep_reproduces_the_chain_weight_column() {
    let (code, out) = run(&[
        "sweep", "--mapping", "jw", "--N", "2,4,8", "--connectivity", "all",
    ]);
    assert_eq!(code, 0);
    let expected = format!(
        "{}\njw,2,1,2.5,3,2.5,3,1,1\njw,4,1,3.5,5,3.5,5,1,1\njw,8,1,5.5,9,5.5,9,1,1\n",
        latferm_cli::CSV_HEADER
    );
    assert_eq!(out, expected);
}

#[test]
fn sweep_worker_count_does_not_change_the_bytes() {
    let args = |jobs: &'static str| {
        [
            "sweep", "--mapping", "hybrid", "--N", "4,8", "--n", "2", "--jobs", jobs,
        ]
    };
    let (c1, serial) = run(&args("1"));
    let (c3, threaded) = run(&args("3"));
    assert_eq!((c1, c3), (0, 0));
    assert_eq!(serial, threaded);
    assert_eq!(serial.lines().count(), 3);
}

#[test]
fn sweep_skips_indivisible_sizes_but_fails_when_nothing_runs() {
    let (code, out) = run(&["sweep", "--mapping", "hybrid", "--N", "3,4", "--n", "2"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("hybrid,4,2,"), "{out}");

    let (code, out) = run(&["sweep", "--mapping", "hybrid", "--N", "3,5", "--n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(out, "");
}

#[test]
fn route_corner_instance_counts_seven() {
    let (code, out) = run(&[
        "route", "--connectivity", "lattice", "--N", "3", "--qubits", "0,2,6,8",
    ]);
    assert_eq!((code, out.as_str()), (0, "7\n"));

    let (code, out) = run(&[
        "route", "--connectivity", "lattice", "--N", "3", "--qubits", "0,2,6,8",
        "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 7);
    assert_eq!(v["method"], "exact");
    assert_eq!(v["tree_edges"].as_array().unwrap().len(), 6);
}

#[test]
fn route_rejects_out_of_range_terminals() {
    let (code, out) = run(&[
        "route", "--connectivity", "lattice", "--N", "2", "--qubits", "0,7",
    ]);
    assert_eq!(code, 1);
    assert_eq!(out, "");
}

#[test]
fn verify_chain_passes_and_is_deterministic() {
    let args = ["verify", "--mapping", "jw", "--N", "2"];
    let (code, first) = run(&args);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"]["car"]["pairs_checked"], 10);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let (_, second) = run(&args);
    assert_eq!(first, second);
}

#[test]
fn verify_hybridplus_reports_requested_sampling() {
    let (code, out) = run(&[
        "verify", "--mapping", "hybridplus", "--N", "2", "--n", "1",
        "--states", "5", "--seed", "9",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["states_per_edge"], 5);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["suites"]["stabilizers"]["failures"], 0);
    assert_eq!(v["suites"]["entangling_contract"]["pass"], true);
}

#[test]
fn exit_codes_separate_usage_errors_from_success() {
    let (code, out) = run(&["map", "--mapping", "xyz", "--N", "2"]);
    assert_eq!((code, out.as_str()), (1, ""));

    let (code, out) = run(&["map", "--mapping", "hybrid", "--N", "4", "--n", "3"]);
    assert_eq!((code, out.as_str()), (1, ""));

    let (code, _) = run(&["map", "--mapping", "jw"]);
    assert_eq!(code, 1);

    let (code, _) = run(&["map", "--mapping", "jw", "--N", "2", "--bogus"]);
    assert_eq!(code, 1);

    let (code, out) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"), "{out}");

    let (code, out) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("latferm"), "{out}");
}

#[test]
fn out_flag_redirects_the_body_to_a_file() {
    let path = std::env::temp_dir().join(format!("latferm-cli-route-{}.txt", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, out) = run(&[
        "route", "--connectivity", "lattice", "--N", "3", "--qubits", "0,2,6,8",
        "--out", path_str,
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "7\n");
    std::fs::remove_file(&path).unwrap();
}
