//! Fenwick-tree index sets for binary parity encodings.
//!
//! A register of `m` modes is organized as a Fenwick forest: node `beta`
//! stores the parity of the occupation range `[beta & (beta + 1), beta]`.
//! Bit 0 is the least significant bit throughout. The three sets below
//! drive the encoders:
//!
//! * `update_set(a, m)`: nodes whose stored parity contains mode `a`
//!   (strict ancestors of `a` inside the forest).
//! * `parity_set(a)`: nodes whose stored parities XOR to the prefix
//!   parity of modes `0..a`.
//! * `flip_set(a)`: the subset of `parity_set(a)` that are children of
//!   `a` itself, i.e. nodes whose value flips when mode `a` flips.

use alloc::vec::Vec;

/// Strict ancestors of `a` in the size-`m` forest, ascending.
///
/// The parent of `a` is `a` with its lowest zero bit set; ancestors above
/// `m` do not exist (the forest is cut at `m`).
pub fn update_set(a: usize, m: usize) -> Vec<usize> {
    assert!(a < m, "mode {} out of range for {} modes", a, m);
    let mut out = Vec::new();
    let mut beta = a;
    let mut bit = 1usize;
    while bit < m {
        if beta & bit == 0 {
            beta |= bit;
            if beta >= m {
                break;
            }
            out.push(beta);
        }
        bit <<= 1;
    }
    out
}

/// Nodes whose stored parities XOR to the parity of modes `0..a`,
/// ascending. Defined for `a == m` as well, where it yields the roots
/// of the size-`m` forest.
pub fn parity_set(a: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while (a >> i) != 0 {
        if (a >> i) & 1 == 1 {
            // Clear bit i, set all bits below it.
            out.push((a & !((1 << (i + 1)) - 1)) | ((1 << i) - 1));
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Children of `a` within `parity_set(a)`: one node per trailing one bit,
/// ascending. Flipping mode `a` flips exactly these stored parities among
/// the parity set.
pub fn flip_set(a: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while (a >> i) & 1 == 1 {
        out.push(a & !(1 << i));
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Roots of the size-`m` forest, ascending. The XOR of their stored
/// parities is the total parity of all `m` modes.
pub fn forest_roots(m: usize) -> Vec<usize> {
    parity_set(m)
}

/// Stored node values for an occupation vector: node `beta` holds the XOR
/// of `f[beta & (beta + 1) ..= beta]`.
pub fn encode_occupations(f: &[bool]) -> Vec<bool> {
    let m = f.len();
    // prefix[k] = XOR of f[0..k]
    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(false);
    for k in 0..m {
        let last = *prefix.last().unwrap();
        prefix.push(last ^ f[k]);
    }
    (0..m).map(|b| prefix[b + 1] ^ prefix[b & (b + 1)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn update_set_reference_values() {
        assert_eq!(update_set(3, 8), vec![7]);
        assert_eq!(update_set(2, 8), vec![3, 7]);
        assert_eq!(update_set(2, 6), vec![3]);
        assert_eq!(update_set(0, 8), vec![1, 3, 7]);
        assert_eq!(update_set(7, 8), Vec::<usize>::new());
        assert_eq!(update_set(3, 16), vec![7, 15]);
        assert_eq!(update_set(0, 1), Vec::<usize>::new());
        assert_eq!(update_set(0, 4), vec![1, 3]);
        assert_eq!(update_set(2, 4), vec![3]);
    }

    #[test]
    fn parity_set_reference_values() {
        assert_eq!(parity_set(5), vec![3, 4]);
        assert_eq!(parity_set(3), vec![1, 2]);
        assert_eq!(parity_set(1), vec![0]);
        assert_eq!(parity_set(0), Vec::<usize>::new());
        assert_eq!(parity_set(7), vec![3, 5, 6]);
    }

    #[test]
    fn flip_set_reference_values() {
        assert_eq!(flip_set(3), vec![1, 2]);
        assert_eq!(flip_set(7), vec![3, 5, 6]);
        assert_eq!(flip_set(4), Vec::<usize>::new());
        assert_eq!(flip_set(5), vec![4]);
        assert_eq!(flip_set(0), Vec::<usize>::new());
    }

    #[test]
    fn flip_is_subset_of_parity() {
        for a in 0..256 {
            let p = parity_set(a);
            for x in flip_set(a) {
                assert!(p.contains(&x), "flip({}) not within parity({})", a, a);
            }
        }
    }

    #[test]
    fn forest_roots_values() {
        assert_eq!(forest_roots(8), vec![7]);
        assert_eq!(forest_roots(4), vec![3]);
        assert_eq!(forest_roots(1), vec![0]);
        assert_eq!(forest_roots(2), vec![1]);
        assert_eq!(forest_roots(6), vec![3, 5]);
        assert_eq!(forest_roots(9), vec![7, 8]);
    }

    #[test]
    fn update_and_subtree_agree() {
        // beta is an ancestor of a exactly when a lies in beta's range.
        for m in [1usize, 2, 3, 6, 8, 16, 21] {
            for a in 0..m {
                let anc = update_set(a, m);
                for beta in 0..m {
                    let covers = beta & (beta + 1) <= a && a <= beta;
                    let is_anc = anc.contains(&beta) || beta == a;
                    assert_eq!(covers, is_anc, "m={} a={} beta={}", m, a, beta);
                }
            }
        }
    }

    #[test]
    fn encode_matches_node_ranges() {
        // Independent route: recompute each node value straight from the
        // stored-range definition.
        let f = [true, false, true, true, false, true, false, true, true];
        let q = encode_occupations(&f);
        for b in 0..f.len() {
            let lo = b & (b + 1);
            let expect = (lo..=b).fold(false, |acc, k| acc ^ f[k]);
            assert_eq!(q[b], expect, "node {}", b);
        }
    }

    #[test]
    fn parity_set_reads_prefix_parity() {
        let f = [true, true, false, true, false, false, true, true];
        let q = encode_occupations(&f);
        for a in 0..=f.len() {
            let direct = f[..a].iter().fold(false, |acc, &v| acc ^ v);
            let via_nodes = parity_set(a).into_iter().fold(false, |acc, b| acc ^ q[b]);
            assert_eq!(direct, via_nodes, "prefix {}", a);
        }
    }

    #[test]
    fn update_set_tracks_single_mode_flips() {
        let mut f = [true, false, false, true, true, false, true, false];
        let q0 = encode_occupations(&f);
        for a in 0..f.len() {
            f[a] = !f[a];
            let q1 = encode_occupations(&f);
            f[a] = !f[a];
            // Nodes that changed are exactly a and its strict ancestors.
            let changed: Vec<usize> = (0..f.len()).filter(|&b| q0[b] != q1[b]).collect();
            let mut expect = update_set(a, f.len());
            expect.push(a);
            expect.sort_unstable();
            assert_eq!(changed, expect, "mode {}", a);
        }
    }

    #[test]
    fn flip_set_children_determine_stored_value() {
        // Defining property: a node's stored value is its own mode XOR
        // the stored values of its children.
        let f = [true, false, false, true, true, false, true, false, true];
        let q = encode_occupations(&f);
        for a in 0..f.len() {
            let children = flip_set(a)
                .into_iter()
                .fold(false, |acc, c| acc ^ q[c]);
            assert_eq!(q[a], f[a] ^ children, "node {}", a);
        }
    }
}
