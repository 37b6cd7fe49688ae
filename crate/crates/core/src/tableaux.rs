//! Partitions, 2-cores, standard Young tableaux, standard r-domino tableaux
//! and bitableaux, with reading words and descent sets.
//!
//! Cells are (row, column), 1-based, rows growing downward.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Cell = (usize, usize);

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidTableau(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// The staircase (r, r-1, ..., 1).
    pub fn staircase(r: usize) -> Self {
        Partition {
            parts: (1..=r).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn row_len(&self, row: usize) -> usize {
        if row >= 1 && row <= self.parts.len() {
            self.parts[row - 1]
        } else {
            0
        }
    }

    pub fn col_len(&self, col: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= col).count()
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.0 >= 1 && c.1 >= 1 && c.1 <= self.row_len(c.0)
    }

    pub fn is_staircase(&self) -> bool {
        *self == Partition::staircase(self.parts.len())
    }

    /// Arm + leg + 1 for a cell of the diagram.
    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.contains_cell(cell) {
            return Err(Error::Domain(format!("cell {cell:?} outside {self:?}")));
        }
        let arm = self.row_len(cell.0) - cell.1;
        let leg = self.col_len(cell.1) - cell.0;
        Ok(arm + leg + 1)
    }

    /// The 2-core: repeatedly strip rim hooks of size 2 (computed on beta
    /// numbers). Always a staircase.
    pub fn two_core(&self) -> Partition {
        let l = self.parts.len();
        // Beta set: strictly decreasing parts + (l - i).
        let mut beta: Vec<i64> = (0..l)
            .map(|i| self.parts[i] as i64 + (l - 1 - i) as i64)
            .collect();
        loop {
            let mut changed = false;
            for i in 0..beta.len() {
                let b = beta[i] - 2;
                if b >= 0 && !beta.contains(&b) {
                    beta[i] = b;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<usize> = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (beta.len() - 1 - i) as i64) as usize)
            .collect();
        parts.retain(|&p| p > 0);
        let core = Partition { parts };
        debug_assert!(core.is_staircase(), "2-core not a staircase: {core:?}");
        core
    }

    /// All ways to add one domino to this shape keeping it a partition.
    /// Returned cells are in reading order (horizontal: left cell first;
    /// vertical: top cell first).
    pub fn domino_additions(&self) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for row in 1..=self.rows() + 1 {
            let len = self.row_len(row);
            let above = if row == 1 {
                usize::MAX
            } else {
                self.row_len(row - 1)
            };
            // Horizontal at the end of `row`.
            if above >= len + 2 {
                out.push(((row, len + 1), (row, len + 2)));
            }
        }
        let cols = self.row_len(1) + 1;
        for col in 1..=cols {
            let len = self.col_len(col);
            let left = if col == 1 {
                usize::MAX
            } else {
                self.col_len(col - 1)
            };
            if left >= len + 2 {
                out.push(((len + 1, col), (len + 2, col)));
            }
        }
        out.sort();
        out
    }
}

// ---------------------------------------------------------------------------
// Standard Young tableaux.
// ---------------------------------------------------------------------------

/// A standard tableau with strictly increasing rows and columns. Labels are
/// distinct positive integers but need not be 1..n (bitableau components
/// carry complementary label sets).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StandardTableau {
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = StandardTableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    fn validate(&self) -> Result<()> {
        let shape: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        if shape.windows(2).any(|w| w[0] < w[1]) || shape.contains(&0) {
            return Err(Error::InvalidTableau(format!("bad shape {shape:?}")));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || !seen.insert(v) {
                    return Err(Error::InvalidTableau(format!("repeated or zero label {v}")));
                }
                if j + 1 < row.len() && row[j] >= row[j + 1] {
                    return Err(Error::InvalidTableau(format!(
                        "row {} not increasing",
                        i + 1
                    )));
                }
                if i + 1 < self.rows.len() && j < self.rows[i + 1].len() && v >= self.rows[i + 1][j]
                {
                    return Err(Error::InvalidTableau(format!(
                        "column {} not increasing",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len()).collect(),
        }
    }

    pub fn labels(&self) -> Vec<u32> {
        let mut ls: Vec<u32> = self.rows.iter().flatten().copied().collect();
        ls.sort_unstable();
        ls
    }

    pub fn contains_label(&self, v: u32) -> bool {
        self.rows.iter().any(|r| r.contains(&v))
    }

    pub fn cell_of(&self, v: u32) -> Option<Cell> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x == v) {
                return Some((i + 1, j + 1));
            }
        }
        None
    }

    pub fn entry(&self, c: Cell) -> Option<u32> {
        self.rows.get(c.0 - 1).and_then(|r| r.get(c.1 - 1)).copied()
    }

    /// Rows read bottom to top, each left to right.
    pub fn row_reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Swap the labels a and b wherever they occur; the caller is
    /// responsible for standardness of the result.
    pub(crate) fn swap_labels_unchecked(&self, a: u32, b: u32) -> StandardTableau {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| {
                        if v == a {
                            b
                        } else if v == b {
                            a
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        StandardTableau { rows }
    }

    /// Swap labels a <-> b, failing if the result is not standard.
    pub fn swap_labels(&self, a: u32, b: u32) -> Result<StandardTableau> {
        let t = self.swap_labels_unchecked(a, b);
        t.validate()?;
        Ok(t)
    }

    /// Append a label at the end of the given row (1-based), extending the
    /// shape by one new row if needed. Fails if the result is not standard.
    pub(crate) fn place_at_row_end(&self, row: usize, v: u32) -> Result<StandardTableau> {
        let mut rows = self.rows.clone();
        if row == rows.len() + 1 {
            rows.push(vec![v]);
        } else if row <= rows.len() {
            rows[row - 1].push(v);
        } else {
            return Err(Error::InvalidTableau(format!("row {row} out of range")));
        }
        StandardTableau::new(rows)
    }

    /// Append a label at the bottom of the given column (1-based).
    pub(crate) fn place_at_col_end(&self, col: usize, v: u32) -> Result<StandardTableau> {
        let row = self.shape().col_len(col) + 1;
        let mut rows = self.rows.clone();
        if row == rows.len() + 1 {
            if col != 1 && (row == 1 || self.rows[row - 2].len() < col) {
                return Err(Error::InvalidTableau(format!(
                    "column {col} cannot be extended at row {row}"
                )));
            }
            rows.push(vec![]);
        }
        if rows[row - 1].len() + 1 != col {
            return Err(Error::InvalidTableau(format!(
                "column {col} is not the next free slot of row {row}"
            )));
        }
        rows[row - 1].push(v);
        StandardTableau::new(rows)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(empty)");
        }
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A pair of standard tableaux with disjoint label sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bitableau {
    pub plus: StandardTableau,
    pub minus: StandardTableau,
}

impl Bitableau {
    pub fn new(plus: StandardTableau, minus: StandardTableau) -> Result<Self> {
        for v in plus.labels() {
            if minus.contains_label(v) {
                return Err(Error::InvalidTableau(format!(
                    "label {v} in both components"
                )));
            }
        }
        Ok(Bitableau { plus, minus })
    }

    /// Combined sorted label set.
    pub fn labels(&self) -> Vec<u32> {
        let mut ls = self.plus.labels();
        ls.extend(self.minus.labels());
        ls.sort_unstable();
        ls
    }

    /// n-standard: the combined labels are exactly 1..=n.
    pub fn is_n_standard(&self) -> bool {
        let ls = self.labels();
        ls.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    pub fn shape(&self) -> (Partition, Partition) {
        (self.plus.shape(), self.minus.shape())
    }
}

impl fmt::Display for Bitableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "plus:")?;
        writeln!(f, "{}", self.plus)?;
        writeln!(f, "minus:")?;
        write!(f, "{}", self.minus)
    }
}

// ---------------------------------------------------------------------------
// Domino tableaux.
// ---------------------------------------------------------------------------

/// A standard r-domino tableau: the staircase core delta_r plus labeled
/// dominoes tiling the rest of a Young diagram, labels increasing along
/// rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominoTableau {
    core: usize,
    /// label -> (first cell, second cell) in reading order.
    dominoes: BTreeMap<u32, (Cell, Cell)>,
}

#[derive(Serialize, Deserialize)]
struct DominoDto {
    label: u32,
    cells: [[usize; 2]; 2],
}

#[derive(Serialize, Deserialize)]
struct DominoTableauDto {
    core: usize,
    dominoes: Vec<DominoDto>,
}

impl Serialize for DominoTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = DominoTableauDto {
            core: self.core,
            dominoes: self
                .dominoes
                .iter()
                .map(|(&label, &(a, b))| DominoDto {
                    label,
                    cells: [[a.0, a.1], [b.0, b.1]],
                })
                .collect(),
        };
        dto.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DominoTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = DominoTableauDto::deserialize(d)?;
        let dominoes = dto
            .dominoes
            .into_iter()
            .map(|dd| {
                (
                    dd.label,
                    (
                        (dd.cells[0][0], dd.cells[0][1]),
                        (dd.cells[1][0], dd.cells[1][1]),
                    ),
                )
            })
            .collect();
        DominoTableau::new(dto.core, dominoes).map_err(serde::de::Error::custom)
    }
}

impl DominoTableau {
    pub fn new(core: usize, dominoes: BTreeMap<u32, (Cell, Cell)>) -> Result<Self> {
        let mut t = DominoTableau { core, dominoes };
        for v in t.dominoes.values_mut() {
            if v.1 < v.0 {
                std::mem::swap(&mut v.0, &mut v.1);
            }
        }
        t.validate()?;
        Ok(t)
    }

    pub fn empty(core: usize) -> Self {
        DominoTableau {
            core,
            dominoes: BTreeMap::new(),
        }
    }

    pub fn core_rank(&self) -> usize {
        self.core
    }

    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    pub fn labels(&self) -> Vec<u32> {
        self.dominoes.keys().copied().collect()
    }

    pub fn cells_of(&self, label: u32) -> Option<(Cell, Cell)> {
        self.dominoes.get(&label).copied()
    }

    pub fn is_vertical(&self, label: u32) -> Option<bool> {
        self.cells_of(label).map(|(a, b)| a.1 == b.1)
    }

    pub fn dominoes(&self) -> impl Iterator<Item = (u32, (Cell, Cell))> + '_ {
        self.dominoes.iter().map(|(&l, &c)| (l, c))
    }

    /// Grid of labels per cell; core cells hold 0. Rows define the shape.
    pub fn grid(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let set = |c: Cell, v: u32, rows: &mut Vec<Vec<u32>>| {
            while rows.len() < c.0 {
                rows.push(Vec::new());
            }
            let row = &mut rows[c.0 - 1];
            while row.len() < c.1 {
                row.push(u32::MAX);
            }
            row[c.1 - 1] = v;
        };
        for i in 1..=self.core {
            for j in 1..=(self.core + 1 - i) {
                set((i, j), 0, &mut rows);
            }
        }
        for (&label, &(a, b)) in &self.dominoes {
            set(a, label, &mut rows);
            set(b, label, &mut rows);
        }
        rows
    }

    pub fn shape(&self) -> Result<Partition> {
        let grid = self.grid();
        let parts: Vec<usize> = grid.iter().map(|r| r.len()).collect();
        if grid.iter().flatten().any(|&v| v == u32::MAX) {
            return Err(Error::InvalidTableau("shape has holes".into()));
        }
        Partition::new(parts.into_iter().filter(|&p| p > 0).collect())
    }

    fn validate(&self) -> Result<()> {
        for (&label, &(a, b)) in &self.dominoes {
            if label == 0 {
                return Err(Error::InvalidTableau(
                    "label 0 is reserved for the core".into(),
                ));
            }
            let adjacent = (a.0 == b.0 && a.1 + 1 == b.1) || (a.1 == b.1 && a.0 + 1 == b.0);
            if !adjacent {
                return Err(Error::InvalidTableau(format!(
                    "domino {label} cells {a:?} {b:?} not adjacent"
                )));
            }
            if Partition::staircase(self.core).contains_cell(a)
                || Partition::staircase(self.core).contains_cell(b)
            {
                return Err(Error::InvalidTableau(format!(
                    "domino {label} overlaps the core"
                )));
            }
        }
        let shape = self.shape()?; // also checks no overlaps / holes
        let _ = shape;
        // Standardness: labels weakly increase along grid rows and columns,
        // strictly between distinct dominoes.
        let grid = self.grid();
        for (i, row) in grid.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if j + 1 < row.len() {
                    let r = row[j + 1];
                    if r < v || (r == v && self.is_vertical(v) == Some(true) && v != 0) {
                        return Err(Error::InvalidTableau(format!(
                            "row {} not increasing",
                            i + 1
                        )));
                    }
                }
                if i + 1 < grid.len() && j < grid[i + 1].len() {
                    let d = grid[i + 1][j];
                    if d < v || (d == v && self.is_vertical(v) == Some(false) && v != 0) {
                        return Err(Error::InvalidTableau(format!(
                            "column {} not increasing",
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Test helper and parser: build from a grid of labels (0 = core cell).
    pub fn from_grid(core: usize, grid: &[&[u32]]) -> Result<Self> {
        let mut cells: BTreeMap<u32, Vec<Cell>> = BTreeMap::new();
        for (i, row) in grid.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    cells.entry(v).or_default().push((i + 1, j + 1));
                }
            }
        }
        let mut dominoes = BTreeMap::new();
        for (label, cs) in cells {
            if cs.len() != 2 {
                return Err(Error::InvalidTableau(format!(
                    "label {label} fills {} cells",
                    cs.len()
                )));
            }
            dominoes.insert(label, (cs[0], cs[1]));
        }
        DominoTableau::new(core, dominoes)
    }

    /// Insert the next domino (relabeling not allowed): used by insertion
    /// and the tableau enumerator.
    pub(crate) fn with_domino(&self, label: u32, cells: (Cell, Cell)) -> Result<Self> {
        if self.dominoes.contains_key(&label) {
            return Err(Error::LabelCollision(label));
        }
        let mut dominoes = self.dominoes.clone();
        dominoes.insert(label, cells);
        DominoTableau::new(self.core, dominoes)
    }

    /// Swap the labels of two dominoes, failing if the result is not
    /// standard.
    pub fn swap_labels(&self, a: u32, b: u32) -> Result<Self> {
        let mut dominoes = self.dominoes.clone();
        let ca = dominoes
            .remove(&a)
            .ok_or(Error::Domain(format!("no domino {a}")))?;
        let cb = dominoes
            .remove(&b)
            .ok_or(Error::Domain(format!("no domino {b}")))?;
        dominoes.insert(a, cb);
        dominoes.insert(b, ca);
        DominoTableau::new(self.core, dominoes)
    }

    /// Replace the cells of the given labels, failing if not standard.
    pub fn with_cells_replaced(&self, repl: &[(u32, (Cell, Cell))]) -> Result<Self> {
        let mut dominoes = self.dominoes.clone();
        for &(label, cells) in repl {
            if !dominoes.contains_key(&label) {
                return Err(Error::Domain(format!("no domino {label}")));
            }
            dominoes.insert(label, cells);
        }
        DominoTableau::new(self.core, dominoes)
    }

    /// Descent set: i is a descent when domino i+1 lies below domino i
    /// (every cell of dom_{i+1} in a row strictly below some cell of dom_i,
    /// and dom_{i+1} not entirely to the right of dom_i); 0 is a descent
    /// when domino 1 is vertical. Labels must be exactly 1..=n.
    pub fn descents(&self) -> Result<Vec<i32>> {
        let n = self.dominoes.len() as u32;
        for (idx, &l) in self.dominoes.keys().enumerate() {
            if l != idx as u32 + 1 {
                return Err(Error::Domain(format!(
                    "labels not contiguous: {:?}",
                    self.labels()
                )));
            }
        }
        let mut des = Vec::new();
        if n >= 1 && self.is_vertical(1) == Some(true) {
            des.push(0);
        }
        for i in 1..n {
            if self.lies_below(i + 1, i) {
                des.push(i as i32);
            }
        }
        Ok(des)
    }

    /// "dom_a lies below dom_b": every cell of a is in a row strictly below
    /// the top row of b, and a is not entirely to the right of b.
    pub(crate) fn lies_below(&self, a: u32, b: u32) -> bool {
        let (a1, a2) = self.cells_of(a).expect("label present");
        let (b1, b2) = self.cells_of(b).expect("label present");
        let min_row_b = b1.0.min(b2.0);
        let every_below = a1.0 > min_row_b && a2.0 > min_row_b;
        let max_col_b = b1.1.max(b2.1);
        let min_col_a = a1.1.min(a2.1);
        let entirely_right = min_col_a > max_col_b;
        every_below && !entirely_right
    }

    /// True if the closed boundaries of the two dominoes share at most a
    /// point, i.e. no pair of cells is edge-adjacent.
    pub(crate) fn boundaries_meet_at_most_point(&self, a: u32, b: u32) -> bool {
        let (a1, a2) = self.cells_of(a).expect("label present");
        let (b1, b2) = self.cells_of(b).expect("label present");
        for ca in [a1, a2] {
            for cb in [b1, b2] {
                let dr = ca.0.abs_diff(cb.0);
                let dc = ca.1.abs_diff(cb.1);
                if dr + dc == 1 {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for DominoTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.grid();
        if grid.is_empty() {
            return write!(f, "(empty)");
        }
        let width = self
            .dominoes
            .keys()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in grid.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|&v| {
                    if v == 0 {
                        format!("{:>width$}", ".")
                    } else {
                        format!("{v:>width$}")
                    }
                })
                .collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
