//! Square-lattice mode enumeration.
//!
//! An N x N lattice of fermionic sites is tiled by n x n cells (n divides
//! N). Cells are numbered across the cell grid either row-major
//! ([`Pattern::RowMajor`], the "Z" order) or boustrophedon
//! ([`Pattern::Snake`], the "S" order used by the ancilla-assisted
//! mapping). Within a cell, sites are always numbered row-major. The
//! global mode index of a site is `cell * n^2 + local`.

use alloc::vec::Vec;
use core::fmt;

/// Cell enumeration order across the cell grid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pattern {
    /// Row-major ("Z") cell order.
    RowMajor,
    /// Boustrophedon ("S") cell order: even cell rows run left to right,
    /// odd cell rows right to left.
    Snake,
}

/// Errors from lattice construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeError {
    /// Side lengths must be positive.
    ZeroSide,
    /// The cell side must divide the lattice side.
    CellMismatch { n_side: usize, cell_side: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::ZeroSide => write!(f, "lattice and cell side must be at least 1"),
            LatticeError::CellMismatch { n_side, cell_side } => write!(
                f,
                "cell side {} does not divide lattice side {}",
                cell_side, n_side
            ),
        }
    }
}

/// Mode enumeration for an N x N lattice tiled by n x n cells.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Lattice {
    n_side: usize,
    cell_side: usize,
    pattern: Pattern,
}

impl Lattice {
    pub fn new(n_side: usize, cell_side: usize, pattern: Pattern) -> Result<Self, LatticeError> {
        if n_side == 0 || cell_side == 0 {
            return Err(LatticeError::ZeroSide);
        }
        if n_side % cell_side != 0 {
            return Err(LatticeError::CellMismatch { n_side, cell_side });
        }
        Ok(Lattice {
            n_side,
            cell_side,
            pattern,
        })
    }

    /// Lattice side length N.
    pub fn n_side(&self) -> usize {
        self.n_side
    }

    /// Cell side length n.
    pub fn cell_side(&self) -> usize {
        self.cell_side
    }

    pub fn pattern(&self) -> Pattern {
        self.pattern
    }

    /// Cells per lattice side, N / n.
    pub fn cells_per_side(&self) -> usize {
        self.n_side / self.cell_side
    }

    /// Total number of cells.
    pub fn num_cells(&self) -> usize {
        self.cells_per_side() * self.cells_per_side()
    }

    /// Modes per cell, n^2.
    pub fn cell_size(&self) -> usize {
        self.cell_side * self.cell_side
    }

    /// Total number of modes, N^2.
    pub fn num_modes(&self) -> usize {
        self.n_side * self.n_side
    }

    /// Cell index for cell-grid coordinates.
    pub fn cell_index(&self, cell_row: usize, cell_col: usize) -> usize {
        let w = self.cells_per_side();
        assert!(cell_row < w && cell_col < w);
        match self.pattern {
            Pattern::RowMajor => cell_row * w + cell_col,
            Pattern::Snake => {
                if cell_row % 2 == 0 {
                    cell_row * w + cell_col
                } else {
                    cell_row * w + (w - 1 - cell_col)
                }
            }
        }
    }

    /// Cell-grid coordinates for a cell index.
    pub fn cell_coords(&self, cell: usize) -> (usize, usize) {
        let w = self.cells_per_side();
        assert!(cell < self.num_cells());
        let row = cell / w;
        let col = cell % w;
        match self.pattern {
            Pattern::RowMajor => (row, col),
            Pattern::Snake => {
                if row % 2 == 0 {
                    (row, col)
                } else {
                    (row, w - 1 - col)
                }
            }
        }
    }

    /// Global mode index of the site at lattice position (row, col).
    pub fn mode_at(&self, row: usize, col: usize) -> usize {
        assert!(row < self.n_side && col < self.n_side);
        let n = self.cell_side;
        let cell = self.cell_index(row / n, col / n);
        let local = (row % n) * n + (col % n);
        cell * self.cell_size() + local
    }

    /// Lattice position (row, col) of a global mode index.
    pub fn position(&self, mode: usize) -> (usize, usize) {
        assert!(mode < self.num_modes());
        let sz = self.cell_size();
        let n = self.cell_side;
        let (cr, cc) = self.cell_coords(mode / sz);
        let local = mode % sz;
        (cr * n + local / n, cc * n + local % n)
    }

    /// Cell index containing a mode.
    pub fn cell_of(&self, mode: usize) -> usize {
        assert!(mode < self.num_modes());
        mode / self.cell_size()
    }

    /// Within-cell index of a mode.
    pub fn local_of(&self, mode: usize) -> usize {
        assert!(mode < self.num_modes());
        mode % self.cell_size()
    }

    /// Designated root mode of a cell: its last within-cell index.
    pub fn cell_root(&self, cell: usize) -> usize {
        assert!(cell < self.num_cells());
        cell * self.cell_size() + self.cell_size() - 1
    }

    /// All nearest-neighbor lattice edges as mode pairs (lo, hi), sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.n_side * (self.n_side.saturating_sub(1)));
        for r in 0..self.n_side {
            for c in 0..self.n_side {
                let m = self.mode_at(r, c);
                if c + 1 < self.n_side {
                    let m2 = self.mode_at(r, c + 1);
                    out.push((m.min(m2), m.max(m2)));
                }
                if r + 1 < self.n_side {
                    let m2 = self.mode_at(r + 1, c);
                    out.push((m.min(m2), m.max(m2)));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Lattice::new(0, 1, Pattern::RowMajor).is_err());
        assert!(Lattice::new(4, 0, Pattern::RowMajor).is_err());
        assert!(Lattice::new(4, 3, Pattern::RowMajor).is_err());
        assert!(Lattice::new(6, 3, Pattern::RowMajor).is_ok());
    }

    #[test]
    fn row_major_reference_position() {
        // N=4, n=2: site (0,2) sits in cell 1 at local 0, mode 4.
        let l = Lattice::new(4, 2, Pattern::RowMajor).unwrap();
        assert_eq!(l.mode_at(0, 2), 4);
        assert_eq!(l.position(4), (0, 2));
        assert_eq!(l.cell_of(4), 1);
        assert_eq!(l.local_of(4), 0);
    }

    #[test]
    fn trivial_cells_are_row_major_sites() {
        let l = Lattice::new(3, 1, Pattern::RowMajor).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(l.mode_at(r, c), r * 3 + c);
            }
        }
    }

    #[test]
    fn single_cell_is_row_major_sites() {
        let l = Lattice::new(4, 4, Pattern::RowMajor).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(l.mode_at(r, c), r * 4 + c);
            }
        }
    }

    #[test]
    fn snake_reverses_odd_cell_rows() {
        // N=4, n=2: cell grid 2x2; snake order 0,1 then 2 at (1,1), 3 at (1,0).
        let l = Lattice::new(4, 2, Pattern::Snake).unwrap();
        assert_eq!(l.cell_index(0, 0), 0);
        assert_eq!(l.cell_index(0, 1), 1);
        assert_eq!(l.cell_index(1, 1), 2);
        assert_eq!(l.cell_index(1, 0), 3);
        for cell in 0..4 {
            let (r, c) = l.cell_coords(cell);
            assert_eq!(l.cell_index(r, c), cell);
        }
        // Site (2,0) is in cell 3, local 0, mode 12.
        assert_eq!(l.mode_at(2, 0), 12);
        assert_eq!(l.position(12), (2, 0));
    }

    #[test]
    fn position_roundtrip() {
        for pattern in [Pattern::RowMajor, Pattern::Snake] {
            let l = Lattice::new(6, 2, pattern).unwrap();
            for m in 0..l.num_modes() {
                let (r, c) = l.position(m);
                assert_eq!(l.mode_at(r, c), m);
            }
        }
    }

    #[test]
    fn cell_root_reference() {
        let l = Lattice::new(8, 2, Pattern::RowMajor).unwrap();
        assert_eq!(l.cell_root(1), 7);
        assert_eq!(l.cell_root(0), 3);
    }

    #[test]
    fn edge_count_and_order() {
        let l = Lattice::new(2, 1, Pattern::RowMajor).unwrap();
        assert_eq!(l.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        for n_side in [2usize, 3, 4, 8] {
            let l = Lattice::new(n_side, 1, Pattern::RowMajor).unwrap();
            assert_eq!(l.edges().len(), 2 * n_side * (n_side - 1));
        }
    }

    #[test]
    fn edges_are_lattice_neighbors() {
        let l = Lattice::new(4, 2, Pattern::Snake).unwrap();
        for (i, j) in l.edges() {
            let (r1, c1) = l.position(i);
            let (r2, c2) = l.position(j);
            let d = r1.abs_diff(r2) + c1.abs_diff(c2);
            assert_eq!(d, 1, "modes {} {} not adjacent", i, j);
        }
    }
}
