//! Interaction routing on device connectivity graphs.
//!
//! An encoded operator touches its support qubits; on a device with
//! limited connectivity, interacting them also occupies the qubits of a
//! Steiner tree spanning the support. This module builds the device
//! graphs (square lattice for data qubits, plus an ancilla layer for
//! hybridplus, or all-to-all) and computes Steiner trees exactly with the
//! Dreyfus-Wagner dynamic program for small terminal sets, or with one
//! carried-distance pass of the repetitive shortest path heuristic
//! followed by an MST and leaf pruning.
//!
//! All tie-breaking prefers lower vertex indices, so identical inputs
//! always produce identical trees.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::mappings::{Encoder, Mapping};

/// Device connectivity graph. Vertices are qubit indices.
#[derive(Clone, Debug)]
pub struct ArchGraph {
    adj: Vec<Vec<usize>>,
    complete: bool,
}

impl ArchGraph {
    /// Graph from an explicit adjacency list; neighbor lists get sorted
    /// and deduplicated.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        ArchGraph { adj, complete: false }
    }

    /// All-to-all connectivity on `n` qubits.
    pub fn all_to_all(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        ArchGraph { adj, complete: true }
    }

    /// Square-lattice connectivity for an N x N grid of data qubits,
    /// row-major positions.
    pub fn square_lattice(n_side: usize) -> Self {
        let at = |r: usize, c: usize| r * n_side + c;
        let mut adj = vec![Vec::new(); n_side * n_side];
        for r in 0..n_side {
            for c in 0..n_side {
                if c + 1 < n_side {
                    adj[at(r, c)].push(at(r, c + 1));
                    adj[at(r, c + 1)].push(at(r, c));
                }
                if r + 1 < n_side {
                    adj[at(r, c)].push(at(r + 1, c));
                    adj[at(r + 1, c)].push(at(r, c));
                }
            }
        }
        ArchGraph::from_adjacency(adj)
    }

    /// Lattice connectivity for an encoder's full register: data qubits
    /// are grid-adjacent by lattice position; each hybridplus ancilla
    /// attaches to its cell root and to the ancillas of neighboring cells.
    pub fn for_encoder(enc: &Encoder) -> Self {
        let lat = enc.lattice();
        let n_side = lat.n_side();
        let mut adj = vec![Vec::new(); enc.num_qubits()];
        for r in 0..n_side {
            for c in 0..n_side {
                let m = lat.mode_at(r, c);
                if c + 1 < n_side {
                    let m2 = lat.mode_at(r, c + 1);
                    adj[m].push(m2);
                    adj[m2].push(m);
                }
                if r + 1 < n_side {
                    let m2 = lat.mode_at(r + 1, c);
                    adj[m].push(m2);
                    adj[m2].push(m);
                }
            }
        }
        if enc.mapping() == Mapping::HybridPlus {
            let w = lat.cells_per_side();
            for cell in 0..lat.num_cells() {
                let a = enc.ancilla_qubit(cell);
                let root = lat.cell_root(cell);
                adj[a].push(root);
                adj[root].push(a);
                let (cr, cc) = lat.cell_coords(cell);
                if cc + 1 < w {
                    let b = enc.ancilla_qubit(lat.cell_index(cr, cc + 1));
                    adj[a].push(b);
                    adj[b].push(a);
                }
                if cr + 1 < w {
                    let b = enc.ancilla_qubit(lat.cell_index(cr + 1, cc));
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        ArchGraph::from_adjacency(adj)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

/// How a Steiner tree was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SteinerMethod {
    Exact,
    Heuristic,
}

/// A Steiner tree: vertices include the terminals, edges form a tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SteinerTree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub method: SteinerMethod,
}

impl SteinerTree {
    /// Tree size in edges.
    pub fn length(&self) -> usize {
        self.edges.len()
    }

    /// Number of touched qubits.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
}

fn singleton_tree(terminals: &[usize], method: SteinerMethod) -> SteinerTree {
    SteinerTree {
        vertices: terminals.to_vec(),
        edges: Vec::new(),
        method,
    }
}

const INF: u32 = u32::MAX / 4;

/// Exact minimum Steiner tree via the Dreyfus-Wagner subset dynamic
/// program (unit edge weights). Exponential in the terminal count; keep
/// terminals small (the dispatcher defaults to at most 8).
pub fn steiner_exact(graph: &ArchGraph, terminals: &[usize]) -> SteinerTree {
    let mut terms: Vec<usize> = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    let k = terms.len();
    if k <= 1 {
        return singleton_tree(&terms, SteinerMethod::Exact);
    }
    if graph.complete {
        // A star from the lowest terminal is optimal.
        let edges = terms[1..].iter().map(|&t| (terms[0], t)).collect();
        return SteinerTree {
            vertices: terms.clone(),
            edges,
            method: SteinerMethod::Exact,
        };
    }
    let nv = graph.num_vertices();
    let full = (1usize << k) - 1;
    // dp[s][v]: minimum edge count of a tree spanning terminal set s plus
    // vertex v. Choices record either a relaxed edge or a subset merge.
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Choice {
        Leaf,
        Edge(usize),
        Merge(usize),
    }
    let mut dp = vec![vec![INF; nv]; full + 1];
    let mut choice = vec![vec![Choice::Leaf; nv]; full + 1];
    for (idx, &t) in terms.iter().enumerate() {
        dp[1 << idx][t] = 0;
    }
    for s in 1..=full {
        // Merge two disjoint sub-forests at a shared vertex.
        if s.count_ones() > 1 {
            let mut sub = (s - 1) & s;
            while sub > 0 {
                let other = s ^ sub;
                if sub < other {
                    break; // each split seen once
                }
                for v in 0..nv {
                    let cand = dp[sub][v].saturating_add(dp[other][v]);
                    if cand < dp[s][v] {
                        dp[s][v] = cand;
                        choice[s][v] = Choice::Merge(sub);
                    }
                }
                sub = (sub - 1) & s;
            }
        }
        // Grow along edges: multi-source Dijkstra over dp[s][.].
        let mut heap: BinaryHeap<Reverse<(u32, usize)>> = BinaryHeap::new();
        for v in 0..nv {
            if dp[s][v] < INF {
                heap.push(Reverse((dp[s][v], v)));
            }
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dp[s][v] {
                continue;
            }
            for &u in graph.neighbors(v) {
                let nd = d + 1;
                if nd < dp[s][u] {
                    dp[s][u] = nd;
                    choice[s][u] = Choice::Edge(v);
                    heap.push(Reverse((nd, u)));
                }
            }
        }
    }
    // Reconstruct at the lowest terminal.
    let root = terms[0];
    debug_assert!(dp[full][root] < INF, "terminals not connected");
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut stack = vec![(full, root)];
    while let Some((s, v)) = stack.pop() {
        match choice[s][v] {
            Choice::Leaf => {}
            Choice::Edge(u) => {
                edges.insert((u.min(v), u.max(v)));
                stack.push((s, u));
            }
            Choice::Merge(sub) => {
                stack.push((sub, v));
                stack.push((s ^ sub, v));
            }
        }
    }
    let mut vertices: BTreeSet<usize> = terms.iter().copied().collect();
    for &(a, b) in &edges {
        vertices.insert(a);
        vertices.insert(b);
    }
    let tree = SteinerTree {
        vertices: vertices.into_iter().collect(),
        edges: edges.into_iter().collect(),
        method: SteinerMethod::Exact,
    };
    debug_assert_eq!(tree.length() as u32, dp[full][root]);
    debug_assert_eq!(tree.num_vertices(), tree.length() + 1);
    tree
}

/// Steiner tree via one phase of the repetitive shortest path heuristic
/// with tentative distances carried over between terminal connections,
/// then a minimum spanning tree of the touched subgraph and iterative
/// pruning of non-terminal leaves.
pub fn steiner_heuristic(graph: &ArchGraph, terminals: &[usize]) -> SteinerTree {
    let mut terms: Vec<usize> = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.len() <= 1 {
        return singleton_tree(&terms, SteinerMethod::Heuristic);
    }
    if graph.complete {
        let edges = terms[1..].iter().map(|&t| (terms[0], t)).collect();
        return SteinerTree {
            vertices: terms.clone(),
            edges,
            method: SteinerMethod::Heuristic,
        };
    }
    let nv = graph.num_vertices();
    let term_set: BTreeSet<usize> = terms.iter().copied().collect();
    let mut dist = vec![INF; nv];
    let mut pred = vec![usize::MAX; nv];
    let mut in_tree = vec![false; nv];
    let mut remaining = term_set.clone();

    let start = terms[0];
    dist[start] = 0;
    in_tree[start] = true;
    remaining.remove(&start);
    let mut sub_vertices: BTreeSet<usize> = BTreeSet::new();
    sub_vertices.insert(start);

    let mut heap: BinaryHeap<Reverse<(u32, usize)>> = BinaryHeap::new();
    heap.push(Reverse((0, start)));
    while !remaining.is_empty() {
        let Reverse((d, v)) = heap.pop().expect("terminals not connected");
        if d > dist[v] {
            continue;
        }
        if remaining.contains(&v) {
            // Walk the predecessor chain back into the tree; carried
            // distances persist for later terminals.
            remaining.remove(&v);
            let mut cur = v;
            while !in_tree[cur] {
                let p = pred[cur];
                sub_vertices.insert(cur);
                in_tree[cur] = true;
                dist[cur] = 0;
                heap.push(Reverse((0, cur)));
                cur = p;
            }
        }
        for &u in graph.neighbors(v) {
            let nd = dist[v] + 1;
            if nd < dist[u] {
                dist[u] = nd;
                pred[u] = v;
                heap.push(Reverse((nd, u)));
            }
        }
    }

    // Minimum spanning tree of the induced subgraph (unit weights:
    // Kruskal in lexicographic edge order).
    let verts: Vec<usize> = sub_vertices.iter().copied().collect();
    let index_of = |v: usize| verts.binary_search(&v).unwrap();
    let mut dsu: Vec<usize> = (0..verts.len()).collect();
    fn find(dsu: &mut [usize], mut v: usize) -> usize {
        while dsu[v] != v {
            dsu[v] = dsu[dsu[v]];
            v = dsu[v];
        }
        v
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &v in &verts {
        for &u in graph.neighbors(v) {
            if u > v && sub_vertices.contains(&u) {
                let (ra, rb) = (find(&mut dsu, index_of(v)), find(&mut dsu, index_of(u)));
                if ra != rb {
                    dsu[ra] = rb;
                    edges.push((v, u));
                }
            }
        }
    }

    // Prune non-terminal leaves until none remain.
    let mut degree = vec![0usize; nv];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut removed = vec![false; nv];
    loop {
        let mut dropped = false;
        edges.retain(|&(a, b)| {
            let prune_a = degree[a] == 1 && !term_set.contains(&a);
            let prune_b = degree[b] == 1 && !term_set.contains(&b);
            if prune_a || prune_b {
                degree[a] -= 1;
                degree[b] -= 1;
                if prune_a {
                    removed[a] = true;
                }
                if prune_b {
                    removed[b] = true;
                }
                dropped = true;
                false
            } else {
                true
            }
        });
        if !dropped {
            break;
        }
    }
    let vertices: Vec<usize> = verts.into_iter().filter(|&v| !removed[v]).collect();
    let tree = SteinerTree {
        vertices,
        edges,
        method: SteinerMethod::Heuristic,
    };
    debug_assert_eq!(tree.num_vertices(), tree.length() + 1);
    tree
}

/// Default cap on the terminal count handed to the exact solver.
pub const DEFAULT_EXACT_LIMIT: usize = 8;

/// Steiner tree with method dispatch: exact for at most `exact_limit`
/// terminals, heuristic beyond.
pub fn steiner_tree(graph: &ArchGraph, terminals: &[usize], exact_limit: usize) -> SteinerTree {
    let unique: BTreeSet<usize> = terminals.iter().copied().collect();
    if graph.complete || unique.len() <= exact_limit {
        steiner_exact(graph, terminals)
    } else {
        steiner_heuristic(graph, terminals)
    }
}

/// Number of qubits an operator's support occupies once routed: the
/// vertex count of its Steiner tree.
pub fn interaction_qubit_count(
    graph: &ArchGraph,
    support: &[usize],
    exact_limit: usize,
) -> (usize, SteinerMethod) {
    let tree = steiner_tree(graph, support, exact_limit);
    (tree.num_vertices(), tree.method)
}
