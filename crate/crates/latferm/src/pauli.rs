//! Symplectic Pauli algebra.
//!
//! A [`PauliString`] is stored as packed x/z bit rows plus a global phase
//! `i^k`. Per qubit the (x, z) bits read: (0,0) I, (1,0) X, (1,1) Y,
//! (0,1) Z, i.e. the letter is `i^(x*z) X^x Z^z`, so `X * Z = -i Y`.
//! A [`PauliOperator`] is a complex-weighted sum of phase-normalized
//! strings with deterministic (sorted) term order.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use num_complex::Complex64;

const WORD: usize = 64;

#[inline]
fn words_for(n_qubits: usize) -> usize {
    n_qubits.div_ceil(WORD)
}

/// i^e for e in 0..4.
#[inline]
pub fn phase_to_complex(e: u8) -> Complex64 {
    match e & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    /// Letter for the given (x, z) symplectic bits.
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    /// Symplectic (x, z) bits of the letter.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    /// Printable symbol.
    pub fn symbol(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// Phase-tracked Pauli string on a fixed qubit register.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    /// Exponent of i, 0..4.
    ph: u8,
}

impl PauliString {
    /// Identity string on `n_qubits` qubits.
    pub fn identity(n_qubits: usize) -> Self {
        let w = words_for(n_qubits);
        PauliString {
            n: n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            ph: 0,
        }
    }

    /// String with the given letters placed on an identity background.
    /// Panics if a qubit index repeats or is out of range.
    pub fn from_letters(n_qubits: usize, letters: &[(usize, Letter)]) -> Self {
        let mut s = PauliString::identity(n_qubits);
        for &(q, l) in letters {
            assert_eq!(s.letter(q), Letter::I, "duplicate qubit {}", q);
            s.set_letter(q, l);
        }
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// The stored phase, as an exponent of i.
    pub fn phase_exp(&self) -> u8 {
        self.ph
    }

    pub fn set_phase_exp(&mut self, e: u8) {
        self.ph = e & 3;
    }

    /// Letter on qubit `q`.
    pub fn letter(&self, q: usize) -> Letter {
        assert!(q < self.n);
        let (w, b) = (q / WORD, q % WORD);
        Letter::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    /// Overwrite the letter on qubit `q`.
    pub fn set_letter(&mut self, q: usize, l: Letter) {
        assert!(q < self.n);
        let (w, b) = (q / WORD, q % WORD);
        let (xb, zb) = l.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Ascending qubit indices with non-identity letters.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (x, z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut m = x | z;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                out.push(w * WORD + b);
                m &= m - 1;
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// True when the two strings commute.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        assert_eq!(self.n, other.n);
        let mut acc = 0u32;
        for k in 0..self.x.len() {
            acc ^= (self.x[k] & other.z[k]).count_ones() ^ (self.z[k] & other.x[k]).count_ones();
        }
        acc & 1 == 0
    }

    /// Operator product `self * rhs`, phases included.
    pub fn mul(&self, rhs: &PauliString) -> PauliString {
        assert_eq!(self.n, rhs.n);
        let w = self.x.len();
        let mut x = vec![0u64; w];
        let mut z = vec![0u64; w];
        // Per qubit the i-exponent of the product is
        // ax*az + bx*bz + 2*az*bx - cx*cz (mod 4), c = a xor b.
        let mut e = u32::from(self.ph) + u32::from(rhs.ph);
        for k in 0..w {
            let (ax, az) = (self.x[k], self.z[k]);
            let (bx, bz) = (rhs.x[k], rhs.z[k]);
            let (cx, cz) = (ax ^ bx, az ^ bz);
            e += (ax & az).count_ones()
                + (bx & bz).count_ones()
                + 2 * (az & bx).count_ones()
                + 3 * (cx & cz).count_ones();
            x[k] = cx;
            z[k] = cz;
        }
        PauliString {
            n: self.n,
            x,
            z,
            ph: (e % 4) as u8,
        }
    }

    /// Hermitian adjoint (conjugates the phase).
    pub fn dagger(&self) -> PauliString {
        let mut s = self.clone();
        s.ph = (4 - self.ph) & 3;
        s
    }

    /// Action on a computational basis state: `P|b> = i^e |b'>`.
    /// Only registers up to 64 qubits are supported here.
    pub fn apply_to_basis(&self, basis: usize) -> (usize, u8) {
        assert!(self.n <= WORD, "basis action needs <= 64 qubits");
        let b = basis as u64;
        let e = u32::from(self.ph)
            + (self.x[0] & self.z[0]).count_ones()
            + 2 * (b & self.z[0]).count_ones();
        ((b ^ self.x[0]) as usize, (e % 4) as u8)
    }

    /// Basis action for registers of any size; the state is packed into
    /// words, bit q of word q/64 holding qubit q.
    pub fn apply_to_basis_words(&self, basis: &[u64]) -> (Vec<u64>, u8) {
        assert_eq!(basis.len(), self.x.len());
        let mut out = Vec::with_capacity(basis.len());
        let mut e = u32::from(self.ph);
        for k in 0..basis.len() {
            e += (self.x[k] & self.z[k]).count_ones() + 2 * (basis[k] & self.z[k]).count_ones();
            out.push(basis[k] ^ self.x[k]);
        }
        (out, (e % 4) as u8)
    }

    fn key(&self) -> TermKey {
        TermKey {
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    fn from_key(n: usize, key: &TermKey) -> PauliString {
        PauliString {
            n,
            x: key.x.clone(),
            z: key.z.clone(),
            ph: 0,
        }
    }

    fn fmt_letters(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in self.support() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.letter(q).symbol(), q)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    /// `X0 Z1 X2` with an `i `/`-`/`-i ` prefix for nontrivial phases.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ph {
            1 => write!(f, "i ")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i ")?,
            _ => {}
        }
        self.fmt_letters(f)
    }
}

/// Phase-normalized term key: x and z bit rows only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct TermKey {
    x: Vec<u64>,
    z: Vec<u64>,
}

/// Complex-weighted sum of Pauli strings.
///
/// Terms are keyed by phase-normalized strings; string phases are folded
/// into the coefficients on insertion. Iteration order is the sorted key
/// order, so identical operators always print identically.
#[derive(Clone, PartialEq, Debug)]
pub struct PauliOperator {
    n: usize,
    terms: BTreeMap<TermKey, Complex64>,
}

impl PauliOperator {
    /// Operator with no terms.
    pub fn zero(n_qubits: usize) -> Self {
        PauliOperator {
            n: n_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// `c * P` for a single string.
    pub fn from_term(s: PauliString, c: Complex64) -> Self {
        let mut op = PauliOperator::zero(s.n_qubits());
        op.add_term(s, c);
        op
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c * s`, folding the string phase into the coefficient and
    /// merging with an existing term if present. Exact-zero results are
    /// dropped.
    pub fn add_term(&mut self, s: PauliString, c: Complex64) {
        assert_eq!(self.n, s.n_qubits());
        let mut c = c * phase_to_complex(s.ph);
        // Normalize -0.0 so formatting stays deterministic.
        if c.re == 0.0 {
            c.re = 0.0;
        }
        if c.im == 0.0 {
            c.im = 0.0;
        }
        match self.terms.entry(s.key()) {
            Entry::Vacant(e) => {
                if c.norm_sqr() != 0.0 {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let mut v = *e.get() + c;
                if v.re == 0.0 {
                    v.re = 0.0;
                }
                if v.im == 0.0 {
                    v.im = 0.0;
                }
                if v.norm_sqr() == 0.0 {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    /// Terms in sorted key order, strings carrying phase 0.
    pub fn terms(&self) -> impl Iterator<Item = (PauliString, Complex64)> + '_ {
        self.terms
            .iter()
            .map(|(k, &c)| (PauliString::from_key(self.n, k), c))
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &PauliOperator, c: Complex64) {
        assert_eq!(self.n, other.n);
        for (s, v) in other.terms() {
            self.add_term(s, v * c);
        }
    }

    /// Operator product.
    pub fn mul(&self, other: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n, other.n);
        let mut out = PauliOperator::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(&b), ca * cb);
            }
        }
        out
    }

    /// `c * self`.
    pub fn scaled(&self, c: Complex64) -> PauliOperator {
        let mut out = PauliOperator::zero(self.n);
        for (s, v) in self.terms() {
            out.add_term(s, v * c);
        }
        out
    }

    /// Drop terms whose magnitude is below `rel` times the largest
    /// coefficient magnitude.
    pub fn prune(&mut self, rel: f64) {
        let max = self
            .terms
            .values()
            .map(|c| c.norm_sqr())
            .fold(0.0f64, f64::max);
        let thr = max * rel * rel;
        self.terms.retain(|_, c| c.norm_sqr() > thr);
    }

    /// Union support over all terms, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for (s, _) in self.terms() {
            set.extend(s.support());
        }
        set.into_iter().collect()
    }

    /// Size of the union support.
    pub fn weight(&self) -> usize {
        self.support().len()
    }

    /// Largest coefficient magnitude squared.
    pub fn max_coeff_sqr(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .fold(0.0f64, f64::max)
    }

    /// True when every coefficient is within `tol` of zero.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.max_coeff_sqr() <= tol * tol
    }

    /// True when the operators differ by at most `tol` per term.
    pub fn approx_eq(&self, other: &PauliOperator, tol: f64) -> bool {
        let mut diff = self.clone();
        diff.add_scaled(other, Complex64::new(-1.0, 0.0));
        diff.is_zero_within(tol)
    }

    /// True when all term coefficients are real within `tol` (phase-zero
    /// string keys are Hermitian, so this decides Hermiticity).
    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }
}

fn fmt_coeff(c: Complex64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else if c.re == 0.0 {
        write!(f, "{}i", c.im)
    } else if c.im < 0.0 {
        write!(f, "{}{}i", c.re, c.im)
    } else {
        write!(f, "{}+{}i", c.re, c.im)
    }
}

impl fmt::Display for PauliOperator {
    /// One `<coeff> <letters>` term per line, sorted key order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.terms() {
            if !first {
                writeln!(f)?;
            }
            fmt_coeff(c, f)?;
            write!(f, " ")?;
            s.fmt_letters(f)?;
            first = false;
        }
        Ok(())
    }
}
