//! Encoder verification against the fermionic oracle.
//!
//! Two independent routes must agree. The oracle route applies ladder
//! operators directly in Fock space: `a_p` kills an empty mode, otherwise
//! clears it with sign (-1)^(number of occupied lower modes), and `a_p^dag`
//! mirrors that. The encoded route applies the encoder's Pauli operators
//! to encoded computational basis states: sparsely (exact basis action)
//! for the basis-preserving mappings, or through a dense statevector for
//! hybridplus, whose encoded states leave the computational basis after
//! the ancilla entangling circuit.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::mappings::{Circuit, EncodeError, Encoder, Gate, Mapping};
use crate::pauli::{phase_to_complex, Complex64, PauliOperator, PauliString};

/// Dense statevectors are capped at 2^22 amplitudes.
pub const MAX_DENSE_QUBITS: usize = 22;

/// Exhaustive Fock enumeration is capped at 2^16 states.
pub const MAX_EXHAUSTIVE_MODES: usize = 16;

/// Errors from verification runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyError {
    Encode(EncodeError),
    /// The register is too large for a dense statevector.
    DenseTooLarge { qubits: usize, max: usize },
    /// Too many modes to enumerate every Fock state.
    ExhaustiveTooLarge { modes: usize, max: usize },
}

impl From<EncodeError> for VerifyError {
    fn from(e: EncodeError) -> Self {
        VerifyError::Encode(e)
    }
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Encode(e) => write!(f, "{}", e),
            VerifyError::DenseTooLarge { qubits, max } => {
                write!(f, "{} qubits exceed the dense statevector cap of {}", qubits, max)
            }
            VerifyError::ExhaustiveTooLarge { modes, max } => {
                write!(f, "{} modes exceed the exhaustive enumeration cap of {}", modes, max)
            }
        }
    }
}

/// Dense state on a small qubit register; bit q of the amplitude index
/// holds qubit q.
#[derive(Clone, Debug)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// Computational basis state |index>.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits <= MAX_DENSE_QUBITS);
        assert!(index < (1 << n_qubits));
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Statevector { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `coeff * P |self>`.
    pub fn apply_string(&self, p: &PauliString, coeff: Complex64) -> Statevector {
        assert_eq!(p.n_qubits(), self.n_qubits);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for b in 0..self.amps.len() {
            let a = self.amps[b];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let (b2, e) = p.apply_to_basis(b);
            out[b2] += coeff * phase_to_complex(e) * a;
        }
        Statevector {
            n_qubits: self.n_qubits,
            amps: out,
        }
    }

    /// `O |self>` summed over all terms.
    pub fn apply_operator(&self, op: &PauliOperator) -> Statevector {
        assert_eq!(op.n_qubits(), self.n_qubits);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (p, c) in op.terms() {
            for b in 0..self.amps.len() {
                let a = self.amps[b];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let (b2, e) = p.apply_to_basis(b);
                out[b2] += c * phase_to_complex(e) * a;
            }
        }
        Statevector {
            n_qubits: self.n_qubits,
            amps: out,
        }
    }

    /// In-place Hadamard on one qubit.
    pub fn apply_hadamard(&mut self, q: usize) {
        assert!(q < self.n_qubits);
        let mask = 1usize << q;
        let s = core::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amps.len() {
            if b & mask != 0 {
                continue;
            }
            let (lo, hi) = (self.amps[b], self.amps[b | mask]);
            self.amps[b] = (lo + hi) * s;
            self.amps[b | mask] = (lo - hi) * s;
        }
    }

    /// In-place controlled Pauli: apply `p` where `control` is set. `p`
    /// must act as identity on the control.
    pub fn apply_controlled_pauli(&mut self, control: usize, p: &PauliString) {
        assert_eq!(p.n_qubits(), self.n_qubits);
        assert!(control < self.n_qubits);
        let cmask = 1usize << control;
        for b in 0..self.amps.len() {
            if b & cmask == 0 {
                continue;
            }
            let (b2, e) = p.apply_to_basis(b);
            debug_assert_ne!(b2 & cmask, 0, "pauli must not touch the control");
            if b2 == b {
                self.amps[b] *= phase_to_complex(e);
            } else if b2 > b {
                let (b1, e1) = p.apply_to_basis(b2);
                debug_assert_eq!(b1, b);
                let t = self.amps[b];
                self.amps[b] = phase_to_complex(e1) * self.amps[b2];
                self.amps[b2] = phase_to_complex(e) * t;
            }
        }
    }

    /// Run a gate sequence in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) {
        assert_eq!(circuit.n_qubits, self.n_qubits);
        for gate in &circuit.gates {
            match gate {
                Gate::Hadamard(q) => self.apply_hadamard(*q),
                Gate::ControlledPauli { control, pauli } => {
                    self.apply_controlled_pauli(*control, pauli)
                }
            }
        }
    }

    /// Largest squared amplitude difference.
    pub fn max_dev_sqr(&self, other: &Statevector) -> f64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .fold(0.0, f64::max)
    }

    /// Largest squared amplitude.
    pub fn max_amp_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max)
    }
}

/// `a_mode |f>` (or `a_mode^dag` when `dagger`): None if it annihilates,
/// otherwise the new occupations and the Jordan-Wigner sign.
pub fn fock_ladder(f: &[bool], mode: usize, dagger: bool) -> Option<(Vec<bool>, f64)> {
    assert!(mode < f.len());
    if f[mode] == dagger {
        // Annihilating an empty mode or creating on an occupied one.
        return None;
    }
    let crossings = f[..mode].iter().filter(|&&b| b).count();
    let mut out = f.to_vec();
    out[mode] = dagger;
    let sign = if crossings % 2 == 0 { 1.0 } else { -1.0 };
    Some((out, sign))
}

/// `(a_i^dag a_j + a_j^dag a_i) |f>`: at most one branch survives on a
/// basis state; None if both annihilate.
pub fn fock_hopping(f: &[bool], i: usize, j: usize) -> Option<(Vec<bool>, f64)> {
    assert_ne!(i, j);
    let branch = |create: usize, destroy: usize| -> Option<(Vec<bool>, f64)> {
        let (mid, s1) = fock_ladder(f, destroy, false)?;
        let (out, s2) = fock_ladder(&mid, create, true)?;
        Some((out, s1 * s2))
    };
    branch(i, j).or_else(|| branch(j, i))
}

/// One violated canonical anticommutation relation.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CarFailure {
    pub i: usize,
    pub j: usize,
    /// Which relation: "a_adag", "a_a", or "adag_adag".
    pub relation: &'static str,
    pub deviation_sq: f64,
}

/// Result of the canonical anticommutation relation suite.
#[derive(Clone, PartialEq, Debug)]
pub struct CarReport {
    pub pairs_checked: usize,
    pub failures: Vec<CarFailure>,
}

impl CarReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check {a_i, a_j^dag} = delta_ij, {a_i, a_j} = 0, {a_i^dag, a_j^dag} = 0
/// for every mode pair, by exact Pauli algebra on the encoded operators.
pub fn check_car(enc: &Encoder, tol: f64) -> Result<CarReport, EncodeError> {
    let m = enc.lattice().num_modes();
    let n = enc.num_qubits();
    let lowers: Vec<PauliOperator> = (0..m)
        .map(|p| enc.encode_ladder(p, false))
        .collect::<Result<_, _>>()?;
    let raisers: Vec<PauliOperator> = (0..m)
        .map(|p| enc.encode_ladder(p, true))
        .collect::<Result<_, _>>()?;
    let anti = |a: &PauliOperator, b: &PauliOperator| -> PauliOperator {
        let mut out = a.mul(b);
        out.add_scaled(&b.mul(a), Complex64::new(1.0, 0.0));
        out
    };
    let mut failures = Vec::new();
    let mut pairs = 0;
    for i in 0..m {
        for j in i..m {
            pairs += 1;
            let mut mixed = anti(&lowers[i], &raisers[j]);
            if i == j {
                mixed.add_term(PauliString::identity(n), Complex64::new(-1.0, 0.0));
            }
            for (rel, op) in [
                ("a_adag", &mixed),
                ("a_a", &anti(&lowers[i], &lowers[j])),
                ("adag_adag", &anti(&raisers[i], &raisers[j])),
            ] {
                if !op.is_zero_within(tol) {
                    failures.push(CarFailure {
                        i,
                        j,
                        relation: rel,
                        deviation_sq: op.max_coeff_sqr(),
                    });
                }
            }
        }
    }
    Ok(CarReport {
        pairs_checked: pairs,
        failures,
    })
}

/// How Fock basis states are drawn for an equivalence check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StateSample {
    /// Every occupation vector (register must be small).
    Exhaustive,
    /// This many seeded uniform draws per edge.
    Random(usize),
}

/// One state where an edge operator disagreed with the Fock oracle.
#[derive(Clone, PartialEq, Debug)]
pub struct VerifyFailure {
    pub edge: (usize, usize),
    /// Occupation vector, packed little-endian into words.
    pub state: Vec<u64>,
    pub deviation_sq: f64,
}

/// Outcome of an encoding equivalence run.
#[derive(Clone, PartialEq, Debug)]
pub struct VerifyReport {
    pub mapping: Mapping,
    pub n_side: usize,
    pub cell_side: usize,
    pub edges_checked: usize,
    pub states_checked: usize,
    pub tolerance: f64,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn pack_words(bits: &[bool]) -> Vec<u64> {
    let mut out = vec![0u64; bits.len().div_ceil(64).max(1)];
    for (q, &b) in bits.iter().enumerate() {
        if b {
            out[q / 64] |= 1 << (q % 64);
        }
    }
    out
}

fn sample_occupations(rng: &mut ChaCha8Rng, modes: usize) -> Vec<bool> {
    let mut f = Vec::with_capacity(modes);
    let mut word = 0u64;
    for q in 0..modes {
        if q % 64 == 0 {
            word = rng.next_u64();
        }
        f.push(word >> (q % 64) & 1 == 1);
    }
    f
}

fn occupations_from_counter(counter: u64, modes: usize) -> Vec<bool> {
    (0..modes).map(|q| counter >> q & 1 == 1).collect()
}

/// Check every lattice edge operator against the Fock oracle on sampled
/// (or all) basis states. Basis-preserving mappings are checked by exact
/// sparse basis action; hybridplus goes through a dense statevector and
/// its ancilla entangling circuit.
pub fn check_encoding_equivalence(
    enc: &Encoder,
    sample: StateSample,
    seed: u64,
    tol: f64,
) -> Result<VerifyReport, VerifyError> {
    let modes = enc.lattice().num_modes();
    if sample == StateSample::Exhaustive && modes > MAX_EXHAUSTIVE_MODES {
        return Err(VerifyError::ExhaustiveTooLarge {
            modes,
            max: MAX_EXHAUSTIVE_MODES,
        });
    }
    let dense = enc.mapping() == Mapping::HybridPlus;
    let circuit = if dense {
        if enc.num_qubits() > MAX_DENSE_QUBITS {
            return Err(VerifyError::DenseTooLarge {
                qubits: enc.num_qubits(),
                max: MAX_DENSE_QUBITS,
            });
        }
        Some(enc.emit_entangling_circuit()?)
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport {
        mapping: enc.mapping(),
        n_side: enc.lattice().n_side(),
        cell_side: enc.lattice().cell_side(),
        edges_checked: 0,
        states_checked: 0,
        tolerance: tol,
        failures: Vec::new(),
    };
    for (i, j) in enc.lattice().edges() {
        let op = enc.encode_hopping(i, j)?;
        report.edges_checked += 1;
        let states: Vec<Vec<bool>> = match sample {
            StateSample::Exhaustive => (0..1u64 << modes)
                .map(|c| occupations_from_counter(c, modes))
                .collect(),
            StateSample::Random(count) => {
                (0..count).map(|_| sample_occupations(&mut rng, modes)).collect()
            }
        };
        for f in states {
            report.states_checked += 1;
            let dev = if let Some(circ) = &circuit {
                dense_deviation(enc, circ, &op, (i, j), &f, tol)
            } else {
                sparse_deviation(enc, &op, (i, j), &f)
            };
            if dev > tol * tol {
                report.failures.push(VerifyFailure {
                    edge: (i, j),
                    state: pack_words(&f),
                    deviation_sq: dev,
                });
            }
        }
    }
    Ok(report)
}

/// Exact basis-action comparison; works on any register size.
fn sparse_deviation(enc: &Encoder, op: &PauliOperator, edge: (usize, usize), f: &[bool]) -> f64 {
    let b = pack_words(&enc.encode_occupation_basis(f));
    let mut got: BTreeMap<Vec<u64>, Complex64> = BTreeMap::new();
    for (p, c) in op.terms() {
        let (b2, e) = p.apply_to_basis_words(&b);
        *got.entry(b2).or_insert(Complex64::new(0.0, 0.0)) += c * phase_to_complex(e);
    }
    let mut expect: BTreeMap<Vec<u64>, Complex64> = BTreeMap::new();
    if let Some((f2, sign)) = fock_hopping(f, edge.0, edge.1) {
        expect.insert(
            pack_words(&enc.encode_occupation_basis(&f2)),
            Complex64::new(sign, 0.0),
        );
    }
    let mut dev: f64 = 0.0;
    for (k, v) in &got {
        let e = expect.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0));
        dev = dev.max((v - e).norm_sqr());
    }
    for (k, v) in &expect {
        if !got.contains_key(k) {
            dev = dev.max(v.norm_sqr());
        }
    }
    dev
}

/// Dense statevector comparison through the entangling circuit.
fn dense_deviation(
    enc: &Encoder,
    circuit: &Circuit,
    op: &PauliOperator,
    edge: (usize, usize),
    f: &[bool],
    _tol: f64,
) -> f64 {
    let total = enc.num_qubits();
    let data = pack_words(&enc.encode_occupation_basis(f));
    let index = data[0] as usize; // ancillas above data bits start at 0
    let mut psi = Statevector::basis(total, index);
    psi.apply_circuit(circuit);
    let lhs = psi.apply_operator(op);
    match fock_hopping(f, edge.0, edge.1) {
        None => lhs.max_amp_sqr(),
        Some((f2, sign)) => {
            let data2 = pack_words(&enc.encode_occupation_basis(&f2));
            let mut rhs = Statevector::basis(total, data2[0] as usize);
            rhs.apply_circuit(circuit);
            rhs.scale(Complex64::new(sign, 0.0));
            lhs.max_dev_sqr(&rhs)
        }
    }
}

/// Largest squared deviation of `S V|f,0>` from `V|f,0>` over sampled
/// occupations `f` and all stabilizers `S`: the entangling circuit must
/// produce +1 eigenstates of the whole family.
pub fn entangling_contract_max_dev(
    enc: &Encoder,
    sample: StateSample,
    seed: u64,
) -> Result<f64, VerifyError> {
    let total = enc.num_qubits();
    if total > MAX_DENSE_QUBITS {
        return Err(VerifyError::DenseTooLarge {
            qubits: total,
            max: MAX_DENSE_QUBITS,
        });
    }
    let modes = enc.lattice().num_modes();
    if sample == StateSample::Exhaustive && modes > MAX_EXHAUSTIVE_MODES {
        return Err(VerifyError::ExhaustiveTooLarge {
            modes,
            max: MAX_EXHAUSTIVE_MODES,
        });
    }
    let stabs = enc.build_stabilizers()?;
    let circuit = enc.emit_entangling_circuit()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<Vec<bool>> = match sample {
        StateSample::Exhaustive => (0..1u64 << modes)
            .map(|c| occupations_from_counter(c, modes))
            .collect(),
        StateSample::Random(count) => {
            (0..count).map(|_| sample_occupations(&mut rng, modes)).collect()
        }
    };
    let one = Complex64::new(1.0, 0.0);
    let mut dev: f64 = 0.0;
    for f in states {
        let data = pack_words(&enc.encode_occupation_basis(&f));
        let mut psi = Statevector::basis(total, data[0] as usize);
        psi.apply_circuit(&circuit);
        for st in &stabs {
            let fixed = psi.apply_string(&st.string, one);
            dev = dev.max(fixed.max_dev_sqr(&psi));
        }
    }
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;

    #[test]
    fn fock_ladder_signs() {
        // f = modes 1 and 2 occupied (of 3).
        let f = [false, true, true];
        // a_0 kills: mode empty.
        assert!(fock_ladder(&f, 0, false).is_none());
        // a_1 clears mode 1 with no crossings below.
        let (f2, s) = fock_ladder(&f, 1, false).unwrap();
        assert_eq!((f2, s), (vec![false, false, true], 1.0));
        // a_2 crosses the occupied mode 1.
        let (_, s) = fock_ladder(&f, 2, false).unwrap();
        assert_eq!(s, -1.0);
        // a_0^dag creates with sign +1; a_1^dag kills.
        let (f2, s) = fock_ladder(&f, 0, true).unwrap();
        assert_eq!((f2, s), (vec![true, true, true], 1.0));
        assert!(fock_ladder(&f, 1, true).is_none());
    }

    #[test]
    fn fock_hopping_branches() {
        // Only one direction can act on a basis state.
        let f = [false, true];
        let (f2, s) = fock_hopping(&f, 0, 1).unwrap();
        assert_eq!((f2, s), (vec![true, false], 1.0));
        let f = [true, false];
        let (f2, s) = fock_hopping(&f, 0, 1).unwrap();
        assert_eq!((f2, s), (vec![false, true], 1.0));
        assert!(fock_hopping(&[true, true], 0, 1).is_none());
        assert!(fock_hopping(&[false, false], 0, 1).is_none());
        // Crossing an occupied intermediate mode flips the sign.
        let f = [false, true, true];
        let (f2, s) = fock_hopping(&f, 0, 2).unwrap();
        assert_eq!((f2, s), (vec![true, true, false], -1.0));
    }

    #[test]
    fn fock_anticommutator_by_composition() {
        // {a_i, a_j^dag} = delta_ij on every 5-mode basis state: the two
        // composition orders either cancel or reproduce the state once.
        let modes = 5;
        for c in 0..1u64 << modes {
            let f = occupations_from_counter(c, modes);
            for i in 0..modes {
                for j in 0..modes {
                    let mut total = BTreeMap::new();
                    let mut add = |r: Option<(Vec<bool>, f64)>| {
                        if let Some((g, s)) = r {
                            *total.entry(g).or_insert(0.0) += s;
                        }
                    };
                    add(fock_ladder(&f, j, true)
                        .and_then(|(g, s)| fock_ladder(&g, i, false).map(|(h, t)| (h, s * t))));
                    add(fock_ladder(&f, i, false)
                        .and_then(|(g, s)| fock_ladder(&g, j, true).map(|(h, t)| (h, s * t))));
                    total.retain(|_, v| *v != 0.0);
                    if i == j {
                        assert_eq!(total.len(), 1);
                        assert_eq!(total.get(&f), Some(&1.0));
                    } else {
                        assert!(total.is_empty(), "i={} j={} f={:?}", i, j, f);
                    }
                }
            }
        }
    }

    #[test]
    fn statevector_gates() {
        // H twice is identity.
        let mut psi = Statevector::basis(2, 1);
        psi.apply_hadamard(0);
        psi.apply_hadamard(0);
        assert!(psi.max_dev_sqr(&Statevector::basis(2, 1)) < 1e-24);
        // Controlled X fires only on set control.
        let x1 = PauliString::from_letters(2, &[(1, Letter::X)]);
        let mut on = Statevector::basis(2, 1);
        on.apply_controlled_pauli(0, &x1);
        assert!(on.max_dev_sqr(&Statevector::basis(2, 3)) < 1e-24);
        let mut off = Statevector::basis(2, 2);
        off.apply_controlled_pauli(0, &x1);
        assert!(off.max_dev_sqr(&Statevector::basis(2, 2)) < 1e-24);
    }

    #[test]
    fn apply_operator_matches_string_action() {
        let enc = Encoder::new(Mapping::Bk, 2, 2).unwrap();
        let op = enc.encode_hopping(0, 2).unwrap();
        for b in 0..16 {
            let psi = Statevector::basis(4, b);
            let dense = psi.apply_operator(&op);
            let mut sparse = vec![Complex64::new(0.0, 0.0); 16];
            for (p, c) in op.terms() {
                let (b2, e) = p.apply_to_basis(b);
                sparse[b2] += c * phase_to_complex(e);
            }
            for (k, a) in dense.amplitudes().iter().enumerate() {
                assert!((a - sparse[k]).norm_sqr() < 1e-24);
            }
        }
    }

    #[test]
    fn car_holds_for_small_encoders() {
        for enc in [
            Encoder::new(Mapping::Jw, 2, 1).unwrap(),
            Encoder::new(Mapping::Bk, 2, 2).unwrap(),
            Encoder::new(Mapping::Hybrid, 2, 1).unwrap(),
        ] {
            let report = check_car(&enc, 1e-12).unwrap();
            assert_eq!(report.pairs_checked, 10);
            assert!(report.ok(), "{:?}", report.failures);
        }
    }

    #[test]
    fn jw_equivalence_exhaustive() {
        let enc = Encoder::new(Mapping::Jw, 2, 1).unwrap();
        let report =
            check_encoding_equivalence(&enc, StateSample::Exhaustive, 0, 1e-10).unwrap();
        assert_eq!(report.edges_checked, 4);
        assert_eq!(report.states_checked, 64);
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn hybridplus_equivalence_exhaustive_small() {
        // 2x2 lattice, trivial cells: full dense check through the
        // entangling circuit, all 16 states x 4 edges.
        let enc = Encoder::new(Mapping::HybridPlus, 2, 1).unwrap();
        let report =
            check_encoding_equivalence(&enc, StateSample::Exhaustive, 0, 1e-10).unwrap();
        assert_eq!(report.edges_checked, 4);
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn entangling_contract_small() {
        // 8 qubits: every Fock state. 20 qubits: seeded sample.
        let enc = Encoder::new(Mapping::HybridPlus, 2, 1).unwrap();
        let dev = entangling_contract_max_dev(&enc, StateSample::Exhaustive, 0).unwrap();
        assert!(dev < 1e-20, "dev={}", dev);
        let enc = Encoder::new(Mapping::HybridPlus, 4, 2).unwrap();
        let dev = entangling_contract_max_dev(&enc, StateSample::Random(10), 0).unwrap();
        assert!(dev < 1e-20, "dev={}", dev);
    }

    #[test]
    fn sampling_is_deterministic() {
        let enc = Encoder::new(Mapping::Hybrid, 4, 2).unwrap();
        let a = check_encoding_equivalence(&enc, StateSample::Random(5), 7, 1e-10).unwrap();
        let b = check_encoding_equivalence(&enc, StateSample::Random(5), 7, 1e-10).unwrap();
        assert_eq!(a.states_checked, b.states_checked);
        assert!(a.ok() && b.ok());
    }

    #[test]
    fn size_guards() {
        let enc = Encoder::new(Mapping::HybridPlus, 8, 2).unwrap();
        // 64 data + 16 ancillas is far past the dense cap.
        assert!(matches!(
            check_encoding_equivalence(&enc, StateSample::Random(1), 0, 1e-10),
            Err(VerifyError::DenseTooLarge { .. })
        ));
        let enc = Encoder::new(Mapping::Jw, 8, 1).unwrap();
        assert!(matches!(
            check_encoding_equivalence(&enc, StateSample::Exhaustive, 0, 1e-10),
            Err(VerifyError::ExhaustiveTooLarge { .. })
        ));
    }
}
