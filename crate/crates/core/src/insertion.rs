//! Insertion algorithms: RSK row insertion, Garfinkle domino insertion with
//! an r-core, column Beissinger insertion, and the three correspondences
//! built from them (domino pair, bitableau pair, modified bitableau pair).

use std::collections::BTreeMap;

use crate::coxeter::{SetInvolution, SignedPerm};
use crate::tableaux::{Bitableau, Cell, DominoTableau, Partition, StandardTableau};
use crate::{Error, Result};

/// A two-row array with strictly increasing top row; the bottom letters are
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biword {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl Biword {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::Domain("biword rows differ in length".into()));
        }
        if top.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "biword top row not strictly increasing".into(),
            ));
        }
        let mut sorted = bottom.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.first() == Some(&0) {
            return Err(Error::Domain(
                "biword bottom row not distinct positive".into(),
            ));
        }
        Ok(Biword { top, bottom })
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }
}

/// Split into the positive-letter and (absolute-valued) negative-letter
/// biwords.
pub fn split_biword(w: &SignedPerm) -> (Biword, Biword) {
    let mut plus = (Vec::new(), Vec::new());
    let mut minus = (Vec::new(), Vec::new());
    for (idx, &v) in w.oneline().iter().enumerate() {
        if v > 0 {
            plus.0.push(idx as u32 + 1);
            plus.1.push(v as u32);
        } else {
            minus.0.push(idx as u32 + 1);
            minus.1.push((-v) as u32);
        }
    }
    (
        Biword::new(plus.0, plus.1).expect("split is a biword"),
        Biword::new(minus.0, minus.1).expect("split is a biword"),
    )
}

// ---------------------------------------------------------------------------
// RSK row insertion.
// ---------------------------------------------------------------------------

/// Classical row bumping; returns the new tableau and the unique new cell.
pub fn rsk_insert(t: &StandardTableau, a: u32) -> Result<(StandardTableau, Cell)> {
    if t.contains_label(a) {
        return Err(Error::LabelCollision(a));
    }
    let mut rows: Vec<Vec<u32>> = t.rows().to_vec();
    let mut x = a;
    let mut row = 0;
    loop {
        if row == rows.len() {
            rows.push(vec![x]);
            break;
        }
        match rows[row].iter().position(|&y| y > x) {
            None => {
                rows[row].push(x);
                break;
            }
            Some(j) => {
                std::mem::swap(&mut x, &mut rows[row][j]);
                row += 1;
            }
        }
    }
    let cell = (row + 1, rows[row].len());
    Ok((StandardTableau::new(rows)?, cell))
}

/// Insertion and recording tableaux of a biword: bottom letters are bumped
/// in order, top letters record the new cells.
pub fn rsk_correspondence(bw: &Biword) -> Result<(StandardTableau, StandardTableau)> {
    let mut p = StandardTableau::empty();
    let mut q = StandardTableau::empty();
    for (&pos, &val) in bw.top().iter().zip(bw.bottom()) {
        let (p2, cell) = rsk_insert(&p, val)?;
        q = q.place_at_row_end(cell.0, pos)?;
        p = p2;
    }
    Ok((p, q))
}

/// Insertion tableau of an involution of a label set (single tableau; for
/// involutions the recording tableau coincides with it).
pub fn rsk_p(z: &SetInvolution) -> Result<StandardTableau> {
    let top: Vec<u32> = z.support().collect();
    let bottom = z.word();
    let (p, _q) = rsk_correspondence(&Biword::new(top, bottom)?)?;
    Ok(p)
}

// ---------------------------------------------------------------------------
// Column Beissinger insertion.
// ---------------------------------------------------------------------------

/// Insert a pair (a, b) with a <= b: for a < b, row-insert a and append b at
/// the bottom of the column right of the new cell; for a = b, append b at
/// the bottom of the first column.
pub fn cbs_insert(t: &StandardTableau, a: u32, b: u32) -> Result<StandardTableau> {
    if a > b {
        return Err(Error::Domain(format!("cbs pair ({a},{b}) needs a <= b")));
    }
    if a < b {
        let (t2, cell) = rsk_insert(t, a)?;
        t2.place_at_col_end(cell.1 + 1, b)
    } else {
        t.place_at_col_end(1, b)
    }
}

/// Column Beissinger insertion tableau of an involution: fold `cbs_insert`
/// over the pairs (a, z(a)) with a <= z(a), sorted by the larger element.
pub fn p_cbs(z: &SetInvolution) -> Result<StandardTableau> {
    let mut t = StandardTableau::empty();
    for (a, b) in z.pairs_by_larger() {
        t = cbs_insert(&t, a, b)?;
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Garfinkle domino insertion.
// ---------------------------------------------------------------------------

/// Incremental shape tracker used while bumping dominoes.
struct ShapeBuilder {
    core: usize,
    dominoes: BTreeMap<u32, (Cell, Cell)>,
    row_len: Vec<usize>,
}

impl ShapeBuilder {
    fn new(core: usize) -> Self {
        ShapeBuilder {
            core,
            dominoes: BTreeMap::new(),
            row_len: (1..=core).rev().collect(),
        }
    }

    fn contains(&self, c: Cell) -> bool {
        c.0 >= 1 && c.0 <= self.row_len.len() && c.1 >= 1 && c.1 <= self.row_len[c.0 - 1]
    }

    fn row_len(&self, row: usize) -> usize {
        if row >= 1 && row <= self.row_len.len() {
            self.row_len[row - 1]
        } else {
            0
        }
    }

    fn col_len(&self, col: usize) -> usize {
        self.row_len.iter().take_while(|&&l| l >= col).count()
    }

    fn add_cell(&mut self, c: Cell) {
        if c.0 == self.row_len.len() + 1 {
            self.row_len.push(0);
        }
        assert!(
            c.0 <= self.row_len.len() && self.row_len[c.0 - 1] + 1 == c.1,
            "cell {c:?} does not extend the shape"
        );
        assert!(
            c.0 == 1 || self.row_len[c.0 - 2] >= c.1,
            "cell {c:?} breaks the partition shape"
        );
        self.row_len[c.0 - 1] = c.1;
    }

    fn add_domino(&mut self, label: u32, cells: (Cell, Cell)) {
        self.add_cell(cells.0);
        self.add_cell(cells.1);
        let prev = self.dominoes.insert(label, cells);
        assert!(prev.is_none(), "label {label} placed twice");
    }

    fn finish(self) -> Result<DominoTableau> {
        DominoTableau::new(self.core, self.dominoes)
    }
}

/// Insert a signed letter into an r-domino tableau by Garfinkle's bumping
/// procedure. The new domino starts at the end of row 1 (positive letter)
/// or column 1 (negative letter) among the sub-tableau of smaller labels,
/// and larger dominoes are displaced by the four-case rule.
pub fn domino_insert(t: &DominoTableau, a: i32) -> Result<DominoTableau> {
    let label = a.unsigned_abs();
    if label == 0 {
        return Err(Error::Domain("cannot insert 0".into()));
    }
    if t.cells_of(label).is_some() {
        return Err(Error::LabelCollision(label));
    }
    let mut b = ShapeBuilder::new(t.core_rank());
    for (l, cells) in t.dominoes() {
        if l < label {
            b.add_domino(l, cells);
        }
    }
    // Starting placement of the new domino.
    if a > 0 {
        let len = b.row_len(1);
        b.add_domino(label, ((1, len + 1), (1, len + 2)));
    } else {
        let len = b.col_len(1);
        b.add_domino(label, ((len + 1, 1), (len + 2, 1)));
    }
    // Bump every larger domino, smallest label first.
    for (j, cells) in t.dominoes() {
        if j < label {
            continue;
        }
        let inside = [b.contains(cells.0), b.contains(cells.1)];
        match inside.iter().filter(|&&x| x).count() {
            0 => b.add_domino(j, cells),
            1 => {
                // Twisted bump: keep the free cell and grow away from the
                // overlap; the orientation flips.
                let free = if inside[0] { cells.1 } else { cells.0 };
                let horizontal = cells.0 .0 == cells.1 .0;
                let new = if horizontal {
                    (free, (free.0 + 1, free.1))
                } else {
                    (free, (free.0, free.1 + 1))
                };
                b.add_domino(j, new);
            }
            2 => {
                let horizontal = cells.0 .0 == cells.1 .0;
                let new = if horizontal {
                    let row = cells.0 .0 + 1;
                    let len = b.row_len(row);
                    ((row, len + 1), (row, len + 2))
                } else {
                    let col = cells.0 .1 + 1;
                    let len = b.col_len(col);
                    ((len + 1, col), (len + 2, col))
                };
                b.add_domino(j, new);
            }
            _ => unreachable!(),
        }
    }
    b.finish()
}

/// Iterated domino insertion of a word of distinct-magnitude nonzero
/// letters. Returns the insertion and recording tableaux; the recording
/// domino created at step k is labeled k.
pub fn domino_correspondence_word(
    word: &[i32],
    core: usize,
) -> Result<(DominoTableau, DominoTableau)> {
    let mut p = DominoTableau::empty(core);
    let mut q = DominoTableau::empty(core);
    for (step, &a) in word.iter().enumerate() {
        let next = domino_insert(&p, a)?;
        let before = p.shape()?;
        let after = next.shape()?;
        let mut new_cells = Vec::new();
        for row in 1..=after.rows() {
            for col in before.row_len(row) + 1..=after.row_len(row) {
                new_cells.push((row, col));
            }
        }
        if new_cells.len() != 2 {
            return Err(Error::InvalidTableau(format!(
                "insertion step {} grew by {} cells",
                step + 1,
                new_cells.len()
            )));
        }
        q = q.with_domino(step as u32 + 1, (new_cells[0], new_cells[1]))?;
        p = next;
    }
    Ok((p, q))
}

/// The domino correspondence w -> (P, Q) over standard r-domino tableaux.
pub fn domino_correspondence(w: &SignedPerm, core: usize) -> (DominoTableau, DominoTableau) {
    domino_correspondence_word(w.oneline(), core).expect("valid one-line word inserts cleanly")
}

// ---------------------------------------------------------------------------
// Bitableau correspondences.
// ---------------------------------------------------------------------------

/// The bitableau correspondence: RSK applied separately to the positive and
/// negated-negative biwords; recording labels are original positions.
pub fn bitableau_correspondence(w: &SignedPerm) -> (Bitableau, Bitableau) {
    let (wp, wm) = split_biword(w);
    let (pp, qp) = rsk_correspondence(&wp).expect("positive biword inserts");
    let (pm, qm) = rsk_correspondence(&wm).expect("negative biword inserts");
    (
        Bitableau::new(pp, pm).expect("disjoint labels"),
        Bitableau::new(qp, qm).expect("disjoint labels"),
    )
}

/// The modified correspondence for signed involutions: RSK on the positive
/// part and column Beissinger insertion on the negative part. The recording
/// pair equals the insertion pair.
pub fn bitableau_prime(z: &SignedPerm) -> Result<(Bitableau, Bitableau)> {
    let plus = rsk_p(&z.plus_part()?)?;
    let minus = p_cbs(&z.minus_part()?)?;
    let p = Bitableau::new(plus, minus)?;
    Ok((p.clone(), p))
}

// ---------------------------------------------------------------------------
// Exhaustive tableau enumeration (an independent oracle for the counting
// identities).
// ---------------------------------------------------------------------------

/// All standard r-domino tableaux with n dominoes, built by adding dominoes
/// in label order.
pub fn enumerate_sdt(n: usize, core: usize) -> Vec<DominoTableau> {
    let mut current = vec![DominoTableau::empty(core)];
    for label in 1..=n as u32 {
        let mut next = Vec::new();
        for t in &current {
            let shape = t.shape().expect("valid shape");
            for cells in shape.domino_additions() {
                next.push(t.with_domino(label, cells).expect("addition is standard"));
            }
        }
        current = next;
    }
    current
}

/// Count of same-shape pairs of standard r-domino tableaux with n dominoes.
pub fn sdt_same_shape_pairs(n: usize, core: usize) -> usize {
    let mut by_shape: BTreeMap<Partition, usize> = BTreeMap::new();
    for t in enumerate_sdt(n, core) {
        *by_shape.entry(t.shape().unwrap()).or_insert(0) += 1;
    }
    by_shape.values().map(|&c| c * c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{group_elements, CoxType};

    fn sp(s: &str) -> SignedPerm {
        SignedPerm::parse(s, None).unwrap()
    }

    #[test]
    fn rsk_basics() {
        let (t, c) = rsk_insert(&StandardTableau::empty(), 3).unwrap();
        assert_eq!(t.rows(), [vec![3]]);
        assert_eq!(c, (1, 1));
        let four = StandardTableau::new(vec![vec![4]]).unwrap();
        let (t, c) = rsk_insert(&four, 2).unwrap();
        assert_eq!(t.rows(), [vec![2], vec![4]]);
        assert_eq!(c, (2, 1));
        assert!(rsk_insert(&four, 4).is_err());
        // Biword (2,4)/(4,2) inserts to the column [2],[4].
        let bw = Biword::new(vec![2, 4], vec![4, 2]).unwrap();
        let (p, q) = rsk_correspondence(&bw).unwrap();
        assert_eq!(p.rows(), [vec![2], vec![4]]);
        assert_eq!(q.rows(), [vec![2], vec![4]]);
    }

    #[test]
    fn split_example() {
        let (wp, wm) = split_biword(&sp("-3,4,-1,2"));
        assert_eq!((wp.top(), wp.bottom()), (&[2, 4][..], &[4, 2][..]));
        assert_eq!((wm.top(), wm.bottom()), (&[1, 3][..], &[3, 1][..]));
        let (wp, wm) = split_biword(&sp("1,2,3"));
        assert_eq!(wp.len(), 3);
        assert!(wm.is_empty());
    }

    #[test]
    fn bitableau_worked_example() {
        let (p, q) = bitableau_correspondence(&sp("-4,3,6,-1,7,-2,5"));
        assert_eq!(p.plus.rows(), [vec![3, 5, 7], vec![6]]);
        assert_eq!(p.minus.rows(), [vec![1, 2], vec![4]]);
        assert_eq!(q.plus.rows(), [vec![2, 3, 5], vec![7]]);
        assert_eq!(q.minus.rows(), [vec![1, 6], vec![4]]);
        assert!(p.is_n_standard() && q.is_n_standard());

        let (p, _q) = bitableau_correspondence(&SignedPerm::identity(4));
        assert_eq!(p.plus.rows(), [vec![1, 2, 3, 4]]);
        assert!(p.minus.is_empty());
    }

    #[test]
    fn cbs_examples() {
        let t = cbs_insert(&StandardTableau::empty(), 1, 1).unwrap();
        assert_eq!(t.rows(), [vec![1]]);
        let t = cbs_insert(&StandardTableau::empty(), 1, 2).unwrap();
        assert_eq!(t.rows(), [vec![1, 2]]);

        // p_cbs of single fixed point and of a 2-cycle.
        let z = SetInvolution::new([(1, 1)].into()).unwrap();
        assert_eq!(p_cbs(&z).unwrap().rows(), [vec![1]]);
        let z = SetInvolution::new([(1, 2), (2, 1)].into()).unwrap();
        assert_eq!(p_cbs(&z).unwrap().rows(), [vec![1, 2]]);
    }

    #[test]
    fn bitableau_prime_examples() {
        // Identity: all pairs are fixed points of the positive part.
        let (p, q) = bitableau_prime(&SignedPerm::identity(3)).unwrap();
        assert_eq!(p.plus.rows(), [vec![1, 2, 3]]);
        assert!(p.minus.is_empty());
        assert_eq!(p, q);
        // z = s_0 at rank 1: single fixed point of the negative part.
        let (p, _) = bitableau_prime(&sp("-1")).unwrap();
        assert!(p.plus.is_empty());
        assert_eq!(p.minus.rows(), [vec![1]]);
        // z(1) = -2: one negative 2-cycle, inserted as a row.
        let (p, _) = bitableau_prime(&sp("-2,-1")).unwrap();
        assert!(p.plus.is_empty());
        assert_eq!(p.minus.rows(), [vec![1, 2]]);
    }

    #[test]
    fn domino_insert_trivial() {
        let t = domino_insert(&DominoTableau::empty(0), 1).unwrap();
        assert_eq!(t.grid(), vec![vec![1, 1]]);
        let t = domino_insert(&DominoTableau::empty(0), -1).unwrap();
        assert_eq!(t.grid(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn domino_insert_worked_example() {
        // Inserting -2 into the 6-domino tableau from the worked bumping
        // example: every one of the four cases fires along the way.
        let t = DominoTableau::from_grid(0, &[&[1, 1, 3, 3], &[4, 5, 5], &[4, 6, 6]]).unwrap();
        let got = domino_insert(&t, -2).unwrap();
        let expect =
            DominoTableau::from_grid(0, &[&[1, 1, 3, 3], &[2, 4, 5], &[2, 4, 5], &[6, 6]]).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn domino_correspondence_rank2_table() {
        // Full hand-derived table of the rank-2 correspondence at core 0.
        let hh = DominoTableau::from_grid(0, &[&[1, 1], &[2, 2]]).unwrap();
        let vv = DominoTableau::from_grid(0, &[&[1, 2], &[1, 2]]).unwrap();
        let row = DominoTableau::from_grid(0, &[&[1, 1, 2, 2]]).unwrap();
        let col = DominoTableau::from_grid(0, &[&[1], &[1], &[2], &[2]]).unwrap();
        let hook = DominoTableau::from_grid(0, &[&[1, 2, 2], &[1]]).unwrap();
        let hookt = DominoTableau::from_grid(0, &[&[1, 1], &[2], &[2]]).unwrap();
        let cases = vec![
            ("1,2", &row, &row),
            ("-1,-2", &col, &col),
            ("2,1", &hh, &hh),
            ("-1,2", &hook, &hook),
            ("1,-2", &hookt, &hookt),
            ("-2,-1", &vv, &vv),
            ("2,-1", &vv, &hh),
            ("-2,1", &hh, &vv),
        ];
        for (w, p_expect, q_expect) in cases {
            let (p, q) = domino_correspondence(&sp(w), 0);
            assert_eq!(&p, p_expect, "P mismatch at {w}");
            assert_eq!(&q, q_expect, "Q mismatch at {w}");
        }
    }

    #[test]
    fn recording_is_insertion_of_inverse() {
        for n in 1..=3 {
            for r in 0..=2 {
                for w in group_elements(n, CoxType::B) {
                    let (_, q) = domino_correspondence(&w, r);
                    let (p_inv, _) = domino_correspondence(&w.inverse(), r);
                    assert_eq!(q, p_inv, "Q(w) != P(w^-1) at {w}, r={r}");
                }
            }
        }
    }

    #[test]
    fn same_shape_pair_counts_small() {
        for n in 1..=3 {
            for r in 0..=2 {
                let expect = (1usize << n) * (1..=n).product::<usize>();
                assert_eq!(sdt_same_shape_pairs(n, r), expect, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn core_one_insertions() {
        let (p, _) = domino_correspondence(&sp("2,1"), 1);
        assert_eq!(p.grid(), vec![vec![0, 1, 1], vec![2, 2]]);
        let (p, _) = domino_correspondence(&sp("-2,1"), 1);
        assert_eq!(p.grid(), vec![vec![0, 1, 1], vec![2], vec![2]]);
    }
}
