//! Fermion-to-qubit encoders.
//!
//! Every mapping assigns one data qubit per mode and encodes ladder
//! operators as pairs of Pauli strings built from three index sets:
//! X on the update set and the target, Z on the parity set (X branch);
//! X on the update set, Y on the target, Z on parity minus flip (Y branch).
//! The mappings differ only in how the sets are produced:
//!
//! * `jw`: empty update set, parity = all lower modes, empty flip set.
//! * `bk`: Fenwick sets over the full N^2 register.
//! * `hybrid`: Fenwick sets inside the mode's n x n cell, plus the forest
//!   roots of every lower-numbered cell chained into the parity set.
//! * `hybridplus`: `hybrid` on the snake cell order, one ancilla per cell,
//!   and a stabilizer family used to shorten even operators. Odd (ladder)
//!   operators are not encodable on their own.

use alloc::vec::Vec;
use core::fmt;

use crate::fenwick;
use crate::lattice::{Lattice, LatticeError, Pattern};
use crate::pauli::{Complex64, Letter, PauliOperator, PauliString};

/// Relative tolerance for dropping numerically dead terms.
pub const PRUNE_REL: f64 = 1e-12;

/// Supported fermion-to-qubit mappings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mapping {
    Jw,
    Bk,
    Hybrid,
    HybridPlus,
}

impl Mapping {
    /// Cell enumeration pattern the mapping requires.
    pub fn pattern(self) -> Pattern {
        match self {
            Mapping::HybridPlus => Pattern::Snake,
            _ => Pattern::RowMajor,
        }
    }

    /// Canonical lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            Mapping::Jw => "jw",
            Mapping::Bk => "bk",
            Mapping::Hybrid => "hybrid",
            Mapping::HybridPlus => "hybridplus",
        }
    }

    /// Parse a canonical name.
    pub fn parse(s: &str) -> Option<Mapping> {
        match s {
            "jw" => Some(Mapping::Jw),
            "bk" => Some(Mapping::Bk),
            "hybrid" => Some(Mapping::Hybrid),
            "hybridplus" => Some(Mapping::HybridPlus),
            _ => None,
        }
    }

    /// Cell side used when none is given: the whole lattice for bk,
    /// single-mode cells otherwise.
    pub fn default_cell_side(self, n_side: usize) -> usize {
        match self {
            Mapping::Bk => n_side,
            _ => 1,
        }
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Errors from encoder construction and encoding.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EncodeError {
    Lattice(LatticeError),
    /// jw fixes the cell side to 1, bk to N.
    CellSideFixed { mapping: Mapping, expected: usize },
    /// hybridplus needs a power-of-two cell size n^2.
    CellNotPowerOfTwo { cell_size: usize },
    /// Ladder operators are odd and cannot be encoded under hybridplus.
    OddOperator,
    ModeOutOfRange { mode: usize, num_modes: usize },
    /// Hopping needs two distinct modes.
    SameMode { mode: usize },
    /// Stabilizers exist only under hybridplus.
    NoStabilizers { mapping: Mapping },
}

impl From<LatticeError> for EncodeError {
    fn from(e: LatticeError) -> Self {
        EncodeError::Lattice(e)
    }
}

impl fmt::Display for EncodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodeError::Lattice(e) => write!(f, "{}", e),
            EncodeError::CellSideFixed { mapping, expected } => {
                write!(f, "mapping {} fixes the cell side to {}", mapping, expected)
            }
            EncodeError::CellNotPowerOfTwo { cell_size } => {
                write!(f, "hybridplus needs a power-of-two cell size, got {}", cell_size)
            }
            EncodeError::OddOperator => {
                write!(f, "hybridplus encodes even operators only; ladder operators are odd")
            }
            EncodeError::ModeOutOfRange { mode, num_modes } => {
                write!(f, "mode {} out of range for {} modes", mode, num_modes)
            }
            EncodeError::SameMode { mode } => {
                write!(f, "hopping needs two distinct modes, got {} twice", mode)
            }
            EncodeError::NoStabilizers { mapping } => {
                write!(f, "mapping {} has no stabilizer family", mapping)
            }
        }
    }
}

/// The index sets behind a mode's ladder-operator strings, as global
/// qubit indices, each sorted ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModeSets {
    pub target: usize,
    /// Qubits whose stored parity contains the mode (X letters).
    pub update: Vec<usize>,
    /// Qubits whose stored parities give the parity of all lower modes
    /// (Z letters on the X branch).
    pub parity: Vec<usize>,
    /// Subset of `parity` that flips with the mode (dropped from the Y
    /// branch).
    pub flip: Vec<usize>,
}

/// One stabilizer of the hybridplus family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stabilizer {
    /// Cell whose ancilla the stabilizer pins.
    pub cell: usize,
    /// Ancilla qubit index.
    pub ancilla: usize,
    /// Top-cell-row ancillas stay |0> and are pinned by a bare Z.
    pub trivial: bool,
    /// Full stabilizer string over all qubits.
    pub string: PauliString,
}

/// State-preparation gate.
#[derive(Clone, PartialEq, Debug)]
pub enum Gate {
    Hadamard(usize),
    /// Apply `pauli` when `control` is |1>.
    ControlledPauli { control: usize, pauli: PauliString },
}

/// Ancilla entangling circuit; gates apply left to right.
#[derive(Clone, PartialEq, Debug)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

/// A fermion-to-qubit encoder for one lattice and mapping.
#[derive(Clone, Debug)]
pub struct Encoder {
    mapping: Mapping,
    lattice: Lattice,
}

impl Encoder {
    /// Build an encoder. `cell_side` must be 1 for jw, N for bk, a divisor
    /// of N for hybrid, and additionally make n^2 a power of two for
    /// hybridplus.
    pub fn new(mapping: Mapping, n_side: usize, cell_side: usize) -> Result<Self, EncodeError> {
        match mapping {
            Mapping::Jw if cell_side != 1 => {
                return Err(EncodeError::CellSideFixed { mapping, expected: 1 });
            }
            Mapping::Bk if cell_side != n_side => {
                return Err(EncodeError::CellSideFixed { mapping, expected: n_side });
            }
            _ => {}
        }
        let lattice = Lattice::new(n_side, cell_side, mapping.pattern())?;
        if mapping == Mapping::HybridPlus && !lattice.cell_size().is_power_of_two() {
            return Err(EncodeError::CellNotPowerOfTwo { cell_size: lattice.cell_size() });
        }
        Ok(Encoder { mapping, lattice })
    }

    pub fn mapping(&self) -> Mapping {
        self.mapping
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Data qubits: one per mode.
    pub fn num_data_qubits(&self) -> usize {
        self.lattice.num_modes()
    }

    /// Ancilla qubits: one per cell under hybridplus, none otherwise.
    pub fn num_ancillas(&self) -> usize {
        match self.mapping {
            Mapping::HybridPlus => self.lattice.num_cells(),
            _ => 0,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_data_qubits() + self.num_ancillas()
    }

    /// Qubit index of a cell's ancilla.
    pub fn ancilla_qubit(&self, cell: usize) -> usize {
        assert!(cell < self.num_ancillas(), "cell {} has no ancilla", cell);
        self.num_data_qubits() + cell
    }

    fn check_mode(&self, mode: usize) -> Result<(), EncodeError> {
        if mode < self.lattice.num_modes() {
            Ok(())
        } else {
            Err(EncodeError::ModeOutOfRange {
                mode,
                num_modes: self.lattice.num_modes(),
            })
        }
    }

    /// The update/parity/flip sets of a mode, as global qubit indices.
    pub fn mode_sets(&self, mode: usize) -> ModeSets {
        assert!(mode < self.lattice.num_modes());
        match self.mapping {
            Mapping::Jw => ModeSets {
                target: mode,
                update: Vec::new(),
                parity: (0..mode).collect(),
                flip: Vec::new(),
            },
            Mapping::Bk => ModeSets {
                target: mode,
                update: fenwick::update_set(mode, self.lattice.num_modes()),
                parity: fenwick::parity_set(mode),
                flip: fenwick::flip_set(mode),
            },
            Mapping::Hybrid | Mapping::HybridPlus => {
                let sz = self.lattice.cell_size();
                let cell = mode / sz;
                let local = mode % sz;
                let off = cell * sz;
                let update: Vec<usize> =
                    fenwick::update_set(local, sz).into_iter().map(|b| b + off).collect();
                let flip: Vec<usize> =
                    fenwick::flip_set(local).into_iter().map(|b| b + off).collect();
                // Parity of all lower modes: lower cells contribute their
                // forest roots, the own cell its in-cell parity set.
                let mut parity = Vec::new();
                for c in 0..cell {
                    parity.extend(fenwick::forest_roots(sz).into_iter().map(|b| b + c * sz));
                }
                parity.extend(fenwick::parity_set(local).into_iter().map(|b| b + off));
                parity.sort_unstable();
                ModeSets {
                    target: mode,
                    update,
                    parity,
                    flip,
                }
            }
        }
    }

    /// The two branch strings of a mode's ladder operators, over the full
    /// register (identity on ancillas).
    fn branch_strings(&self, mode: usize) -> (PauliString, PauliString) {
        let sets = self.mode_sets(mode);
        let n = self.num_qubits();
        let mut xbr = PauliString::identity(n);
        let mut ybr = PauliString::identity(n);
        for &q in &sets.update {
            xbr.set_letter(q, Letter::X);
            ybr.set_letter(q, Letter::X);
        }
        xbr.set_letter(sets.target, Letter::X);
        ybr.set_letter(sets.target, Letter::Y);
        for &q in &sets.parity {
            xbr.set_letter(q, Letter::Z);
            if !sets.flip.contains(&q) {
                ybr.set_letter(q, Letter::Z);
            }
        }
        (xbr, ybr)
    }

    fn ladder_operator(&self, mode: usize, dagger: bool) -> PauliOperator {
        let (xbr, ybr) = self.branch_strings(mode);
        let mut op = PauliOperator::zero(self.num_qubits());
        op.add_term(xbr, Complex64::new(0.5, 0.0));
        let y_coeff = if dagger {
            Complex64::new(0.0, -0.5)
        } else {
            Complex64::new(0.0, 0.5)
        };
        op.add_term(ybr, y_coeff);
        op
    }

    /// Encode a single ladder operator: annihilation `a_mode`, or creation
    /// when `dagger`. Errors under hybridplus (odd operator).
    pub fn encode_ladder(&self, mode: usize, dagger: bool) -> Result<PauliOperator, EncodeError> {
        self.check_mode(mode)?;
        if self.mapping == Mapping::HybridPlus {
            return Err(EncodeError::OddOperator);
        }
        Ok(self.ladder_operator(mode, dagger))
    }

    /// Encode the number operator `a_i^dag a_i`.
    pub fn encode_number(&self, mode: usize) -> Result<PauliOperator, EncodeError> {
        self.check_mode(mode)?;
        let mut op = self
            .ladder_operator(mode, true)
            .mul(&self.ladder_operator(mode, false));
        op.prune(PRUNE_REL);
        if self.mapping == Mapping::HybridPlus {
            op = self.stabilize_term(&op)?;
        }
        Ok(op)
    }

    /// Encode the hopping term `a_i^dag a_j + a_j^dag a_i` without the
    /// hybridplus stabilizer pass. Identical to [`Self::encode_hopping`]
    /// for the other mappings.
    pub fn encode_hopping_unstabilized(
        &self,
        i: usize,
        j: usize,
    ) -> Result<PauliOperator, EncodeError> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        if i == j {
            return Err(EncodeError::SameMode { mode: i });
        }
        let mut op = self
            .ladder_operator(i, true)
            .mul(&self.ladder_operator(j, false));
        op.add_scaled(
            &self
                .ladder_operator(j, true)
                .mul(&self.ladder_operator(i, false)),
            Complex64::new(1.0, 0.0),
        );
        op.prune(PRUNE_REL);
        Ok(op)
    }

    /// Encode the hopping term `a_i^dag a_j + a_j^dag a_i`. Under
    /// hybridplus the result is dressed and shortened by the stabilizer
    /// family.
    pub fn encode_hopping(&self, i: usize, j: usize) -> Result<PauliOperator, EncodeError> {
        let op = self.encode_hopping_unstabilized(i, j)?;
        match self.mapping {
            Mapping::HybridPlus => self.stabilize_term(&op),
            _ => Ok(op),
        }
    }

    /// Hopping terms for every nearest-neighbor lattice edge, in the
    /// lattice's deterministic edge order.
    pub fn encode_lattice_hamiltonian(
        &self,
    ) -> Result<Vec<((usize, usize), PauliOperator)>, EncodeError> {
        self.lattice
            .edges()
            .into_iter()
            .map(|(i, j)| Ok(((i, j), self.encode_hopping(i, j)?)))
            .collect()
    }

    /// The hybridplus stabilizer family, one per cell, cell order.
    ///
    /// The ancilla of cell c pairs with the cell directly above it on the
    /// lattice. Top-row ancillas have no upper partner: they stay |0> and
    /// are pinned by a bare Z (trivial). For the rest, the string reads
    /// top to bottom (X upper root, X ancilla, Y lower root) on odd cell
    /// rows and (Y, X, X) on even ones, with Z on the roots of the cells
    /// strictly between the pair in snake order. Consecutive rows then
    /// meet shared turning roots with equal letters, which makes the
    /// family commute.
    pub fn build_stabilizers(&self) -> Result<Vec<Stabilizer>, EncodeError> {
        if self.mapping != Mapping::HybridPlus {
            return Err(EncodeError::NoStabilizers { mapping: self.mapping });
        }
        let n = self.num_qubits();
        let lat = &self.lattice;
        let mut out = Vec::with_capacity(lat.num_cells());
        for cell in 0..lat.num_cells() {
            let ancilla = self.ancilla_qubit(cell);
            let (row, col) = lat.cell_coords(cell);
            if row == 0 {
                out.push(Stabilizer {
                    cell,
                    ancilla,
                    trivial: true,
                    string: PauliString::from_letters(n, &[(ancilla, Letter::Z)]),
                });
                continue;
            }
            let upper = lat.cell_index(row - 1, col);
            debug_assert!(upper < cell);
            let (up_letter, low_letter) = if row % 2 == 1 {
                (Letter::X, Letter::Y)
            } else {
                (Letter::Y, Letter::X)
            };
            let mut s = PauliString::identity(n);
            s.set_letter(lat.cell_root(upper), up_letter);
            for between in upper + 1..cell {
                s.set_letter(lat.cell_root(between), Letter::Z);
            }
            s.set_letter(lat.cell_root(cell), low_letter);
            s.set_letter(ancilla, Letter::X);
            out.push(Stabilizer {
                cell,
                ancilla,
                trivial: false,
                string: s,
            });
        }
        Ok(out)
    }

    /// Dress every term that anticommutes with a stabilizer with that
    /// stabilizer's ancilla Z, then greedily multiply by stabilizers while
    /// the support shrinks. The result acts identically on the stabilized
    /// subspace.
    pub fn stabilize_term(&self, op: &PauliOperator) -> Result<PauliOperator, EncodeError> {
        let stabs = self.build_stabilizers()?;
        let active: Vec<&Stabilizer> = stabs.iter().filter(|s| !s.trivial).collect();
        let mut out = PauliOperator::zero(op.n_qubits());
        for (term, coeff) in op.terms() {
            out.add_term(self.stabilize_string(term, &active), coeff);
        }
        out.prune(PRUNE_REL);
        Ok(out)
    }

    fn stabilize_string(&self, mut s: PauliString, active: &[&Stabilizer]) -> PauliString {
        let n = s.n_qubits();
        for st in active {
            if !s.commutes_with(&st.string) {
                s = s.mul(&PauliString::from_letters(n, &[(st.ancilla, Letter::Z)]));
            }
        }
        // Steepest descent on the support size: per pass take the single
        // multiplication that shrinks the weight most (first scan position
        // on ties). Taking merely the first shrinking candidate can strand a
        // long inter-cell chain on a partially overlapping stabilizer while
        // the fully matching one still waits later in the scan.
        loop {
            let mut best: Option<PauliString> = None;
            for st in active {
                let cand = s.mul(&st.string);
                if cand.weight() < best.as_ref().map_or(s.weight(), |b| b.weight()) {
                    best = Some(cand);
                }
            }
            match best {
                Some(b) => s = b,
                None => return s,
            }
        }
    }

    /// Gate sequence preparing the stabilized ancilla state from all-|0>
    /// ancillas: Hadamards on every paired ancilla, then per cell row one
    /// controlled Pauli for the row's snake-turn cell followed by chained
    /// constant-size controlled Paulis marching inward.
    pub fn emit_entangling_circuit(&self) -> Result<Circuit, EncodeError> {
        let stabs = self.build_stabilizers()?;
        let n = self.num_qubits();
        let w = self.lattice.cells_per_side();
        let mut gates = Vec::new();
        for st in &stabs {
            if !st.trivial {
                gates.push(Gate::Hadamard(st.ancilla));
            }
        }
        // Ancilla-free part of a stabilizer string.
        let data_part = |cell: usize| -> PauliString {
            let mut p = stabs[cell].string.clone();
            p.set_letter(stabs[cell].ancilla, Letter::I);
            p
        };
        for row in 1..w {
            for cell in row * w..(row + 1) * w {
                if cell == row * w {
                    gates.push(Gate::ControlledPauli {
                        control: stabs[cell].ancilla,
                        pauli: data_part(cell),
                    });
                } else {
                    let mut pauli = data_part(cell).mul(&data_part(cell - 1));
                    debug_assert_eq!(pauli.phase_exp(), 0);
                    pauli.set_letter(stabs[cell - 1].ancilla, Letter::X);
                    gates.push(Gate::ControlledPauli {
                        control: stabs[cell].ancilla,
                        pauli,
                    });
                }
            }
        }
        Ok(Circuit { n_qubits: n, gates })
    }

    /// Data-qubit values encoding an occupation vector (length N^2).
    /// Ancilla qubits, if any, start at |0> before the entangling circuit.
    pub fn encode_occupation_basis(&self, f: &[bool]) -> Vec<bool> {
        assert_eq!(f.len(), self.lattice.num_modes());
        match self.mapping {
            Mapping::Jw => f.to_vec(),
            Mapping::Bk => fenwick::encode_occupations(f),
            Mapping::Hybrid | Mapping::HybridPlus => {
                let sz = self.lattice.cell_size();
                let mut out = Vec::with_capacity(f.len());
                for cell in 0..self.lattice.num_cells() {
                    out.extend(fenwick::encode_occupations(&f[cell * sz..(cell + 1) * sz]));
                }
                out
            }
        }
    }
}

/// Where a qubit sits on the device.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QubitInfo {
    pub row: usize,
    pub col: usize,
    pub cell: usize,
    /// Within-cell index; ancillas report n^2.
    pub local: usize,
    pub is_ancilla: bool,
}

impl Encoder {
    /// Placement record for one qubit. Ancillas sit on their cell root's
    /// position in a separate layer.
    pub fn describe_qubit(&self, q: usize) -> QubitInfo {
        assert!(q < self.num_qubits());
        let lat = &self.lattice;
        if q < self.num_data_qubits() {
            let (row, col) = lat.position(q);
            QubitInfo {
                row,
                col,
                cell: lat.cell_of(q),
                local: lat.local_of(q),
                is_ancilla: false,
            }
        } else {
            let cell = q - self.num_data_qubits();
            let (row, col) = lat.position(lat.cell_root(cell));
            QubitInfo {
                row,
                col,
                cell,
                local: lat.cell_size(),
                is_ancilla: true,
            }
        }
    }
}
