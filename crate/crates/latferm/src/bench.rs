//! Cost statistics for encoded hopping operators.
//!
//! For a lattice and mapping this module measures, over every
//! nearest-neighbor edge, the Pauli weight of the encoded hopping term
//! and the number of qubits a device with the given connectivity must
//! involve to couple the term's support (its interaction qubit count).
//! Averages are kept as exact rationals so closed-form predictions can
//! be checked without float tolerance.

use alloc::vec::Vec;

use num_rational::Ratio;

use crate::mappings::{EncodeError, Encoder, Mapping};
use crate::routing::{self, ArchGraph, SteinerMethod};

/// Device connectivity the interaction qubit count is measured against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Connectivity {
    /// Any pair may interact: the count is just the support size.
    AllToAll,
    /// Square-lattice couplings: supports are joined by Steiner trees.
    Lattice,
}

impl Connectivity {
    pub fn name(self) -> &'static str {
        match self {
            Connectivity::AllToAll => "all-to-all",
            Connectivity::Lattice => "lattice",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all" | "all-to-all" | "alltoall" | "all_to_all" => Some(Connectivity::AllToAll),
            "lattice" | "square" => Some(Connectivity::Lattice),
            _ => None,
        }
    }
}

/// Edge-averaged cost figures for one (mapping, lattice) pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatRow {
    pub mapping: Mapping,
    pub n_side: usize,
    pub cell_side: usize,
    pub edges: usize,
    /// Average union-support size per edge.
    pub avg_weight: Ratio<i64>,
    /// Largest union support over all edges.
    pub max_weight: usize,
    /// Largest single-string weight; differs from max_weight when an
    /// edge's two strings touch different qubits.
    pub max_string_weight: usize,
    pub avg_iqc: Ratio<i64>,
    pub max_iqc: usize,
    /// Total qubits (data + ancilla) over data qubits.
    pub qubit_ratio: Ratio<i64>,
    /// Fraction of edges whose Steiner tree was solved exactly.
    pub exact_fraction: Ratio<i64>,
}

/// Measure every nearest-neighbor edge of the encoder's lattice.
pub fn run_row(
    enc: &Encoder,
    connectivity: Connectivity,
    exact_limit: usize,
) -> Result<StatRow, EncodeError> {
    let edges = enc.lattice().edges();
    let graph = match connectivity {
        Connectivity::AllToAll => ArchGraph::all_to_all(enc.num_qubits()),
        Connectivity::Lattice => ArchGraph::for_encoder(enc),
    };
    let mut weight_sum = 0usize;
    let mut max_weight = 0usize;
    let mut max_string_weight = 0usize;
    let mut iqc_sum = 0usize;
    let mut max_iqc = 0usize;
    let mut exact = 0usize;
    for &(i, j) in &edges {
        let op = enc.encode_hopping(i, j)?;
        let support = op.support();
        let w = support.len();
        weight_sum += w;
        max_weight = max_weight.max(w);
        for (p, _) in op.terms() {
            max_string_weight = max_string_weight.max(p.weight());
        }
        let (iqc, method) = routing::interaction_qubit_count(&graph, &support, exact_limit);
        iqc_sum += iqc;
        max_iqc = max_iqc.max(iqc);
        if method == SteinerMethod::Exact {
            exact += 1;
        }
    }
    let count = edges.len() as i64;
    Ok(StatRow {
        mapping: enc.mapping(),
        n_side: enc.lattice().n_side(),
        cell_side: enc.lattice().cell_side(),
        edges: edges.len(),
        avg_weight: Ratio::new(weight_sum as i64, count),
        max_weight,
        max_string_weight,
        avg_iqc: Ratio::new(iqc_sum as i64, count),
        max_iqc,
        qubit_ratio: Ratio::new(enc.num_qubits() as i64, enc.num_data_qubits() as i64),
        exact_fraction: Ratio::new(exact as i64, count),
    })
}

/// Sweep outcome: finished rows plus the lattice sides whose
/// configuration violated the mapping's preconditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sweep {
    pub rows: Vec<StatRow>,
    pub skipped: Vec<(usize, EncodeError)>,
}

/// One row per lattice size, same mapping throughout. `cell_side` of
/// None picks the mapping's default per size; invalid sizes are skipped
/// and reported, not fatal.
pub fn run_sweep(
    mapping: Mapping,
    n_sides: &[usize],
    cell_side: Option<usize>,
    connectivity: Connectivity,
    exact_limit: usize,
) -> Sweep {
    let mut sweep = Sweep {
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for &n in n_sides {
        let cell = cell_side.unwrap_or_else(|| mapping.default_cell_side(n));
        let row = Encoder::new(mapping, n, cell)
            .and_then(|enc| run_row(&enc, connectivity, exact_limit));
        match row {
            Ok(r) => sweep.rows.push(r),
            Err(e) => sweep.skipped.push((n, e)),
        }
    }
    sweep
}

/// Lattice side above which the all-to-all weight comparison is not
/// computed and the row is marked extrapolation-only.
pub const DESK_SCALE_MAX_SIDE: usize = 64;

/// One lattice size in a hybrid-versus-Bravyi-Kitaev weight comparison.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossoverRow {
    pub n_side: usize,
    /// (hybrid, bk) average weights; None above the desk-scale budget.
    pub averages: Option<(Ratio<i64>, Ratio<i64>)>,
}

impl CrossoverRow {
    /// Whether the hybrid mapping wins at this size, if computed.
    pub fn hybrid_below(&self) -> Option<bool> {
        self.averages.map(|(h, b)| h < b)
    }
}

/// Average hopping weight of Hybrid(n) against Bravyi-Kitaev per lattice
/// size, under all-to-all connectivity (pure weight, no routing). Sizes
/// past the desk budget are emitted as placeholders rather than computed.
pub fn crossover_report(
    n_sides: &[usize],
    cell_side: usize,
) -> Result<Vec<CrossoverRow>, EncodeError> {
    let mut out = Vec::new();
    for &n in n_sides {
        if n > DESK_SCALE_MAX_SIDE {
            out.push(CrossoverRow {
                n_side: n,
                averages: None,
            });
            continue;
        }
        let hybrid = run_row(
            &Encoder::new(Mapping::Hybrid, n, cell_side)?,
            Connectivity::AllToAll,
            0,
        )?;
        let bk = run_row(
            &Encoder::new(Mapping::Bk, n, n)?,
            Connectivity::AllToAll,
            0,
        )?;
        out.push(CrossoverRow {
            n_side: n,
            averages: Some((hybrid.avg_weight, bk.avg_weight)),
        });
    }
    Ok(out)
}

/// Split the hybrid mapping's average hopping weight into the part from
/// inter-cell root parity chains and the remaining in-cell part.
///
/// A vertical hop between cells ci < cj drags in the roots of every cell
/// in ci..cj of the enumeration order; its root contribution counts the
/// support qubits among those roots (the lower target cell's root
/// included, since the chain passes through it). A horizontal inter-cell
/// hop's chain is just the lower target cell's root, which the in-cell
/// sets cover anyway, so it contributes zero. Counted from the encoded
/// operators, so the closed-form check is independent.
pub fn decompose_hybrid_weight(
    n_side: usize,
    cell_side: usize,
) -> Result<(Ratio<i64>, Ratio<i64>), EncodeError> {
    let enc = Encoder::new(Mapping::Hybrid, n_side, cell_side)?;
    let lat = enc.lattice();
    let w = lat.cells_per_side();
    let mut root_sum = 0usize;
    let mut cell_sum = 0usize;
    let edges = lat.edges();
    for &(i, j) in &edges {
        let op = enc.encode_hopping(i, j)?;
        let weight = op.weight();
        let lo = lat.cell_of(i).min(lat.cell_of(j));
        let hi = lat.cell_of(i).max(lat.cell_of(j));
        // Vertically adjacent cells sit one cell row apart.
        let chain = if hi == lo + w {
            let roots: alloc::collections::BTreeSet<usize> = (lo..hi)
                .flat_map(|c| {
                    crate::fenwick::forest_roots(lat.cell_size())
                        .into_iter()
                        .map(move |r| c * lat.cell_size() + r)
                })
                .collect();
            op.support().iter().filter(|q| roots.contains(q)).count()
        } else {
            0
        };
        root_sum += chain;
        cell_sum += weight - chain;
    }
    let count = edges.len() as i64;
    Ok((
        Ratio::new(root_sum as i64, count),
        Ratio::new(cell_sum as i64, count),
    ))
}

/// Average hopping weight of the linear chain ordering: (N + 3) / 2 on
/// an N x N lattice.
pub fn jw_avg_weight(n_side: usize) -> Ratio<i64> {
    let n = n_side as i64;
    Ratio::new(n + 3, 2)
}

/// Average number of cell roots an inter-cell parity chain contributes
/// to a hybrid hopping term: N (N - n) / (2 (N - 1) n^2) for cell side n.
pub fn root_parity_formula(n_side: usize, cell_side: usize) -> Ratio<i64> {
    let big = n_side as i64;
    let small = cell_side as i64;
    Ratio::new(big * (big - small), 2 * (big - 1) * small * small)
}

/// Total-to-data qubit overhead of the ancilla scheme: 1 + 1 / n^2.
pub fn hybridplus_qubit_ratio(cell_side: usize) -> Ratio<i64> {
    let n = cell_side as i64;
    Ratio::new(n * n + 1, n * n)
}

/// Least-squares slope of y against x. Exact over the rationals;
/// panics if fewer than two distinct x values.
pub fn least_squares_slope(points: &[(i64, Ratio<i64>)]) -> Ratio<i64> {
    let n = points.len() as i64;
    assert!(n >= 2);
    let sx: i64 = points.iter().map(|p| p.0).sum();
    let sxx: i64 = points.iter().map(|p| p.0 * p.0).sum();
    let sy: Ratio<i64> = points.iter().map(|p| p.1).sum();
    let sxy: Ratio<i64> = points.iter().map(|p| Ratio::from_integer(p.0) * p.1).sum();
    let denom = n * sxx - sx * sx;
    assert!(denom != 0, "x values must not all coincide");
    (Ratio::from_integer(n) * sxy - Ratio::from_integer(sx) * sy) / Ratio::from_integer(denom)
}

/// Ratio to f64 without extra trait plumbing.
pub fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
