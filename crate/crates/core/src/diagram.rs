//! The doubled free-space diagram.
//!
//! Cells are 1-based pairs `(i, j)` with `i` in `1..=2m` and `j` in `1..=n`;
//! the first sequence is indexed twice so that a full cycle of both curves is
//! a monotone path from `(i*, 1)` up to the virtual cell `(m + i*, n + 1)`,
//! which is identified with `(i*, 1)`. Forward moves are N, E and NE; the N
//! and NE moves out of the top row wrap back to the bottom row.
//!
//! [`Diagram`] keeps a flag per cell plus a live counter, and maintains the
//! invariant that no allowed cell is a dead end: deleting a cell re-tests its
//! W/S/SW predecessors and deletes those left without a live forward move.

use std::collections::HashMap;

use crate::error::{FrechetError, Result};
use crate::instrument::Instrument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    North,
    East,
    NorthEast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ForwardMoves {
    pub north: Option<Cell>,
    pub east: Option<Cell>,
    pub north_east: Option<Cell>,
}

impl ForwardMoves {
    /// Defined moves in greedy priority order: NE, N, E.
    pub fn prioritized(&self) -> impl Iterator<Item = (Step, Cell)> {
        [
            (Step::NorthEast, self.north_east),
            (Step::North, self.north),
            (Step::East, self.east),
        ]
        .into_iter()
        .filter_map(|(s, c)| c.map(|c| (s, c)))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> {
        [self.north, self.east, self.north_east]
            .into_iter()
            .flatten()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InverseMoves {
    pub west: Option<Cell>,
    pub south: Option<Cell>,
    pub south_west: Option<Cell>,
}

impl InverseMoves {
    pub fn cells(&self) -> impl Iterator<Item = Cell> {
        [self.west, self.south, self.south_west]
            .into_iter()
            .flatten()
    }
}

fn check_cell(cell: Cell, m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(FrechetError::EmptyDiagram);
    }
    if !(1..=2 * m).contains(&cell.i) || !(1..=n).contains(&cell.j) {
        return Err(FrechetError::CellOutOfBounds {
            i: cell.i,
            j: cell.j,
            rows: 2 * m,
            cols: n,
        });
    }
    Ok(())
}

#[inline]
fn not_self(from: Cell, to: Cell) -> Option<Cell> {
    (from != to).then_some(to)
}

#[inline]
fn forward_raw(c: Cell, m: usize, n: usize) -> ForwardMoves {
    let Cell { i, j } = c;
    let north = if j < n {
        Some(Cell::new(i, j + 1))
    } else if i > m {
        Some(Cell::new(i - m, 1))
    } else {
        None
    };
    let east = (i < 2 * m).then(|| Cell::new(i + 1, j));
    let north_east = if i < 2 * m && j < n {
        Some(Cell::new(i + 1, j + 1))
    } else if i >= m && j == n {
        Some(Cell::new(i + 1 - m, 1))
    } else {
        None
    };
    ForwardMoves {
        north: north.and_then(|t| not_self(c, t)),
        east,
        north_east: north_east.and_then(|t| not_self(c, t)),
    }
}

#[inline]
fn inverse_raw(c: Cell, m: usize, n: usize) -> InverseMoves {
    let Cell { i, j } = c;
    let west = (i > 1).then(|| Cell::new(i - 1, j));
    let south = if j > 1 {
        Some(Cell::new(i, j - 1))
    } else if i <= m {
        Some(Cell::new(i + m, n))
    } else {
        None
    };
    let south_west = if i > 1 && j > 1 {
        Some(Cell::new(i - 1, j - 1))
    } else if j == 1 && i <= m + 1 {
        Some(Cell::new(i + m - 1, n))
    } else {
        None
    };
    InverseMoves {
        west,
        south: south.and_then(|t| not_self(c, t)),
        south_west: south_west.and_then(|t| not_self(c, t)),
    }
}

/// Forward moves of `cell`; undefined moves (and self-loops, which only
/// occur for `m = n = 1`) are `None`.
pub fn forward_moves(cell: Cell, m: usize, n: usize) -> Result<ForwardMoves> {
    check_cell(cell, m, n)?;
    Ok(forward_raw(cell, m, n))
}

/// Exact preimages of [`forward_moves`].
pub fn inverse_moves(cell: Cell, m: usize, n: usize) -> Result<InverseMoves> {
    check_cell(cell, m, n)?;
    Ok(inverse_raw(cell, m, n))
}

/// A monotone path through allowed cells whose last cell steps forward onto
/// its first, covering one full cycle of both sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCyclePath {
    pub cells: Vec<Cell>,
}

impl MonotoneCyclePath {
    /// Row of the bottom cell the cycle starts from.
    pub fn anchor(&self) -> usize {
        self.cells[0].i
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Checks the step relation (including the closing step), distinctness,
    /// the start row and that every cell is allowed in `diag`.
    pub fn is_valid_in(&self, diag: &Diagram) -> bool {
        let (m, n) = (diag.m(), diag.n());
        let Some(&first) = self.cells.first() else {
            return false;
        };
        if first.j != 1 || first.i > m + 1 {
            return false;
        }
        let mut seen = std::collections::HashSet::with_capacity(self.cells.len());
        for (k, &c) in self.cells.iter().enumerate() {
            if check_cell(c, m, n).is_err() || !diag.is_allowed(c) || !seen.insert(c) {
                return false;
            }
            let next = self.cells[(k + 1) % self.cells.len()];
            if !forward_raw(c, m, n).cells().any(|t| t == next) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct Diagram {
    m: usize,
    n: usize,
    allowed: Vec<bool>,
    live: usize,
    deletes: u64,
    stack: Vec<Cell>,
}

impl Diagram {
    /// A diagram over `{1..2m} x {1..n}` with every cell allowed.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(FrechetError::EmptyDiagram);
        }
        let cells = 2 * m * n;
        Ok(Self {
            m,
            n,
            allowed: vec![true; cells],
            live: cells,
            deletes: 0,
            stack: Vec::new(),
        })
    }

    /// Marks every cell allowed again.
    pub fn reset(&mut self) {
        self.allowed.fill(true);
        self.live = self.allowed.len();
        self.deletes = 0;
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of allowed cells.
    pub fn live(&self) -> usize {
        self.live
    }

    /// Total number of cells, `2mn`.
    pub fn size(&self) -> usize {
        self.allowed.len()
    }

    /// Deletions (including cascades) since construction or the last reset.
    pub fn deletes(&self) -> u64 {
        self.deletes
    }

    #[inline]
    fn idx(&self, c: Cell) -> usize {
        (c.i - 1) * self.n + (c.j - 1)
    }

    pub fn contains(&self, c: Cell) -> bool {
        (1..=2 * self.m).contains(&c.i) && (1..=self.n).contains(&c.j)
    }

    /// # Panics
    /// If `c` is outside the diagram.
    #[inline]
    pub fn is_allowed(&self, c: Cell) -> bool {
        self.allowed[self.idx(c)]
    }

    /// Allowed flags in row-major order (`i` outer, `j` inner).
    pub fn allowed_mask(&self) -> &[bool] {
        &self.allowed
    }

    pub fn allowed_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let n = self.n;
        self.allowed
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(move |(k, _)| Cell::new(k / n + 1, k % n + 1))
    }

    /// True if no forward move of `c` leads to an allowed cell.
    #[inline]
    pub fn is_dead_end(&self, c: Cell) -> bool {
        !forward_raw(c, self.m, self.n)
            .cells()
            .any(|t| self.allowed[self.idx(t)])
    }

    #[inline]
    fn forbid<I: Instrument>(&mut self, c: Cell, probe: &mut I) {
        let k = self.idx(c);
        self.allowed[k] = false;
        self.live -= 1;
        self.deletes += 1;
        probe.on_delete();
    }

    /// Forbids `cell` and cascades to predecessors left without a live
    /// forward move. Deleting a forbidden cell is an internal error.
    pub fn delete(&mut self, cell: Cell) -> Result<()> {
        self.delete_with(cell, &mut ())
    }

    pub fn delete_with<I: Instrument>(&mut self, cell: Cell, probe: &mut I) -> Result<()> {
        check_cell(cell, self.m, self.n)?;
        if !self.is_allowed(cell) {
            return Err(FrechetError::internal(format!(
                "delete on forbidden cell ({}, {})",
                cell.i, cell.j
            )));
        }
        self.cascade(cell, probe);
        Ok(())
    }

    /// Deletes `cell` if it is still allowed; returns whether it was.
    #[inline]
    pub fn delete_if_allowed<I: Instrument>(&mut self, cell: Cell, probe: &mut I) -> bool {
        if self.is_allowed(cell) {
            self.cascade(cell, probe);
            true
        } else {
            false
        }
    }

    fn cascade<I: Instrument>(&mut self, cell: Cell, probe: &mut I) {
        let mut stack = std::mem::take(&mut self.stack);
        self.forbid(cell, probe);
        stack.push(cell);
        while let Some(x) = stack.pop() {
            for y in inverse_raw(x, self.m, self.n).cells() {
                probe.on_test();
                if self.is_allowed(y) && self.is_dead_end(y) {
                    self.forbid(y, probe);
                    stack.push(y);
                }
            }
        }
        self.stack = stack;
    }

    fn greedy_step(&self, c: Cell) -> Result<(Step, Cell)> {
        forward_raw(c, self.m, self.n)
            .prioritized()
            .find(|&(_, t)| self.is_allowed(t))
            .ok_or_else(|| {
                FrechetError::internal(format!("allowed cell ({}, {}) is a dead end", c.i, c.j))
            })
    }

    #[inline]
    fn wraps(&self, from: Cell, step: Step) -> bool {
        from.j == self.n && step != Step::East
    }

    /// Extracts a monotone cycle through allowed cells.
    ///
    /// Walks greedily (NE, then N, then E) from an allowed bottom cell,
    /// one sweep at a time. Each sweep ends by wrapping back to the bottom
    /// row at the next sweep's start. As soon as a sweep touches a cell of the
    /// previous sweep, the current sweep's prefix up to that cell joined with
    /// the previous sweep's suffix from it closes into a cycle.
    pub fn find_cyclic_path(&self) -> Result<MonotoneCyclePath> {
        if self.live == 0 {
            return Err(FrechetError::NoAllowedCells);
        }
        let mut anchor = match (1..=self.m)
            .map(|i| Cell::new(i, 1))
            .find(|&c| self.is_allowed(c))
        {
            Some(c) => c,
            // Only reachable when every live cycle enters the bottom row at
            // (m+1, 1) via the NE wrap out of (2m, n).
            None => {
                let mut x = self.allowed_cells().next().expect("live > 0");
                loop {
                    let (step, y) = self.greedy_step(x)?;
                    if self.wraps(x, step) {
                        break y;
                    }
                    x = y;
                }
            }
        };

        let mut previous: Option<(Vec<Cell>, HashMap<Cell, usize>)> = None;
        for _ in 0..self.m + 3 {
            let mut sweep = vec![anchor];
            let mut x = anchor;
            let next_anchor = loop {
                if let Some((prev, index)) = &previous {
                    if let Some(&k) = index.get(&x) {
                        sweep.extend_from_slice(&prev[k + 1..]);
                        return Ok(MonotoneCyclePath { cells: sweep });
                    }
                }
                let (step, y) = self.greedy_step(x)?;
                if self.wraps(x, step) {
                    break y;
                }
                sweep.push(y);
                x = y;
            };
            if next_anchor == anchor {
                return Ok(MonotoneCyclePath { cells: sweep });
            }
            let index = sweep.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            previous = Some((sweep, index));
            anchor = next_anchor;
        }
        Err(FrechetError::internal(
            "consecutive sweeps never intersected within m + 3 iterations",
        ))
    }
}

/// Free-function form of [`Diagram::find_cyclic_path`].
pub fn find_cyclic_path(diag: &Diagram) -> Result<MonotoneCyclePath> {
    diag.find_cyclic_path()
}
