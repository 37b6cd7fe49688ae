//! Signed permutations and the Coxeter groups of types B and D: group
//! operations, length functions, descent sets, involutions, the ascending
//! and descending embeddings into fixed-point-free involutions of twice the
//! rank, and the four-way generator classification at Gelfand vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which of the two Coxeter types an element or module lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxType {
    B,
    D,
}

/// The two Gelfand models. `M` is the "row" model built from the ascending
/// embedding, `N` the "column" model built from the descending one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    M,
    N,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::M => write!(f, "m"),
            Model::N => write!(f, "n"),
        }
    }
}

/// A simple-generator index. Type B uses 0..n-1, type D uses -1 and 1..n-1.
///
/// As signed permutations: s_0 = (-1,1), s_{-1} = (-2,1)(-1,2) and
/// s_i = (-i-1,-i)(i,i+1) for i >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen(pub i32);

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// Four-way classification of a generator at a Gelfand vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenClass {
    StrictAsc,
    StrictDes,
    WeakAsc,
    WeakDes,
}

impl GenClass {
    pub fn is_ascent(self) -> bool {
        matches!(self, GenClass::StrictAsc | GenClass::WeakAsc)
    }
    pub fn is_weak(self) -> bool {
        matches!(self, GenClass::WeakAsc | GenClass::WeakDes)
    }
}

/// A signed permutation in one-line notation: `oneline[i-1] = w(i)` for
/// i in 1..=n, with the negative half implied by w(-i) = -w(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    oneline: Vec<i32>,
}

impl SignedPerm {
    pub fn new(oneline: Vec<i32>) -> Result<Self> {
        let n = oneline.len();
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a] {
                return Err(Error::InvalidPerm(format!("{oneline:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPerm { oneline })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm {
            oneline: (1..=n as i32).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[i32] {
        &self.oneline
    }

    /// Evaluate the permutation at i, for i in [-n, n] \ {0}.
    pub fn apply(&self, i: i32) -> i32 {
        debug_assert!(i != 0 && i.unsigned_abs() as usize <= self.rank());
        if i > 0 {
            self.oneline[(i - 1) as usize]
        } else {
            -self.oneline[(-i - 1) as usize]
        }
    }

    /// Composition (uv)(i) = u(v(i)). Both factors must have equal rank.
    pub fn multiply(&self, v: &SignedPerm) -> SignedPerm {
        assert_eq!(self.rank(), v.rank(), "rank mismatch in multiply");
        SignedPerm {
            oneline: (1..=v.rank() as i32)
                .map(|i| self.apply(v.apply(i)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.rank();
        let mut out = vec![0i32; n];
        for i in 1..=n as i32 {
            let v = self.apply(i);
            if v > 0 {
                out[(v - 1) as usize] = i;
            } else {
                out[(-v - 1) as usize] = -i;
            }
        }
        SignedPerm { oneline: out }
    }

    pub fn is_identity(&self) -> bool {
        self.oneline
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i32 + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.multiply(self).is_identity()
    }

    /// An involution with |z(i)| != i for every i.
    pub fn is_fpf_involution(&self) -> bool {
        self.is_involution()
            && self
                .oneline
                .iter()
                .enumerate()
                .all(|(i, &v)| v.unsigned_abs() as usize != i + 1)
    }

    /// Number of pairs i < j with w(i) > w(j) in one-line notation.
    pub fn inversions(&self) -> usize {
        let w = &self.oneline;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Coxeter length via the closed formulas: inversions plus, for each
    /// negative entry, |w(i)| in type B or |w(i)| - 1 in type D.
    pub fn length(&self, t: CoxType) -> usize {
        let neg: usize = self
            .oneline
            .iter()
            .filter(|&&v| v < 0)
            .map(|&v| match t {
                CoxType::B => (-v) as usize,
                CoxType::D => (-v) as usize - 1,
            })
            .sum();
        self.inversions() + neg
    }

    pub fn in_type_d(&self) -> bool {
        self.oneline.iter().filter(|&&v| v < 0).count() % 2 == 0
    }

    /// Parse "-3,4,-1,2" (one-line) or "(1,3)(2,5)" (cycles; involutions
    /// only, rank inferred from the largest entry unless given).
    pub fn parse(s: &str, rank: Option<usize>) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('(') {
            Self::parse_cycles(s, rank)
        } else {
            let vals = s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad one-line entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let w = Self::new(vals)?;
            if let Some(n) = rank {
                if w.rank() != n {
                    return Err(Error::RankMismatch(w.rank(), n));
                }
            }
            Ok(w)
        }
    }

    fn parse_cycles(s: &str, rank: Option<usize>) -> Result<Self> {
        let mut pairs: Vec<(i32, i32)> = Vec::new();
        let mut max_abs = 0i32;
        for part in s.split(')') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let inner = part
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle syntax in `{s}`")))?;
            let vals = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad cycle entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != 2 || vals.contains(&0) {
                return Err(Error::Parse(format!(
                    "only 2-cycles of nonzero entries are accepted, got `({inner})`"
                )));
            }
            max_abs = max_abs.max(vals[0].abs()).max(vals[1].abs());
            pairs.push((vals[0], vals[1]));
        }
        let n = rank.unwrap_or(max_abs as usize);
        if max_abs as usize > n {
            return Err(Error::Parse(format!("cycle entry exceeds rank {n}")));
        }
        let mut w = SignedPerm::identity(n);
        for (a, b) in pairs {
            let (ai, bi) = (a.unsigned_abs() as usize - 1, b.unsigned_abs() as usize - 1);
            if w.oneline[ai] != a.signum() * (ai as i32 + 1)
                || w.oneline[bi] != b.signum() * (bi as i32 + 1)
            {
                // Entry already moved: overlapping cycles.
                return Err(Error::Parse(format!("overlapping cycles in `{s}`")));
            }
            // a <-> b and -a <-> -b.
            w.oneline[ai] = if a > 0 { b } else { -b };
            w.oneline[bi] = if b > 0 { a } else { -a };
        }
        if !w.is_involution() {
            return Err(Error::NotInvolution(s.to_string()));
        }
        Ok(w)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.oneline.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for SignedPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignedPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SignedPerm::parse(&s, None).map_err(serde::de::Error::custom)
    }
}

/// Simple generators of the acting group: type B has s_0..s_{n-1}, type D
/// has s_{-1} and s_1..s_{n-1}.
pub fn generators(t: CoxType, n: usize) -> Vec<Gen> {
    match t {
        CoxType::B => (0..n as i32).map(Gen).collect(),
        CoxType::D => {
            let mut g = vec![];
            if n >= 2 {
                g.push(Gen(-1));
            }
            g.extend((1..n as i32).map(Gen));
            g
        }
    }
}

/// The generator `g` realized as a signed permutation of rank `n`.
pub fn gen_perm(g: Gen, n: usize) -> Result<SignedPerm> {
    let mut w = SignedPerm::identity(n);
    match g.0 {
        0 => {
            if n < 1 {
                return Err(Error::InvalidGenerator(0, CoxType::B, n));
            }
            w.oneline[0] = -1;
        }
        -1 => {
            if n < 2 {
                return Err(Error::InvalidGenerator(-1, CoxType::D, n));
            }
            w.oneline[0] = -2;
            w.oneline[1] = -1;
        }
        i if i >= 1 => {
            let i = i as usize;
            if i + 1 > n {
                return Err(Error::InvalidGenerator(g.0, CoxType::B, n));
            }
            w.oneline.swap(i - 1, i);
        }
        other => return Err(Error::InvalidGenerator(other, CoxType::B, n)),
    }
    Ok(w)
}

/// Coxeter matrix entry m(a, b) for generators of the rank-n group of type t.
pub fn braid_order(t: CoxType, a: Gen, b: Gen) -> u32 {
    if a == b {
        return 1;
    }
    let (i, j) = (a.0.min(b.0), a.0.max(b.0));
    match t {
        CoxType::B => {
            if i == 0 && j == 1 {
                4
            } else if j - i == 1 {
                3
            } else {
                2
            }
        }
        CoxType::D => {
            if i == -1 {
                if j == 2 {
                    3
                } else {
                    2
                }
            } else if j - i == 1 {
                3
            } else {
                2
            }
        }
    }
}

/// Left descent set {i : l(s_i w) < l(w)} over the generators of type t.
pub fn left_descents(w: &SignedPerm, t: CoxType) -> BTreeSet<Gen> {
    let n = w.rank();
    let lw = w.length(t);
    generators(t, n)
        .into_iter()
        .filter(|&g| {
            let s = gen_perm(g, n).expect("generator valid for rank");
            s.multiply(w).length(t) < lw
        })
        .collect()
}

/// All elements of the hyperoctahedral group of rank n (type D filters to
/// evenly many sign changes). Order: lexicographic in one-line notation.
pub fn group_elements(n: usize, t: CoxType) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    let mut current: Vec<i32> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, current: &mut Vec<i32>, used: &mut Vec<bool>, out: &mut Vec<SignedPerm>) {
        if current.len() == n {
            out.push(SignedPerm {
                oneline: current.clone(),
            });
            return;
        }
        for a in 1..=n {
            if used[a] {
                continue;
            }
            used[a] = true;
            for v in [-(a as i32), a as i32] {
                current.push(v);
                rec(n, current, used, out);
                current.pop();
            }
            used[a] = false;
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    if t == CoxType::D {
        out.retain(|w| w.in_type_d());
    }
    out.sort();
    out
}

/// All involutions in the rank-n hyperoctahedral group, sorted.
pub fn involutions(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    let mut w = vec![0i32; n];
    fn rec(w: &mut Vec<i32>, out: &mut Vec<SignedPerm>) {
        let n = w.len();
        let i = match w.iter().position(|&v| v == 0) {
            None => {
                out.push(SignedPerm { oneline: w.clone() });
                return;
            }
            Some(i) => i,
        };
        // Fixed point with either sign.
        for s in [1, -1] {
            w[i] = s * (i as i32 + 1);
            rec(w, out);
        }
        w[i] = 0;
        // Pair with a later position, matching signs.
        for j in i + 1..n {
            if w[j] != 0 {
                continue;
            }
            for s in [1, -1] {
                w[i] = s * (j as i32 + 1);
                w[j] = s * (i as i32 + 1);
                rec(w, out);
            }
            w[i] = 0;
            w[j] = 0;
        }
    }
    rec(&mut w, &mut out);
    out.sort();
    out
}

/// BFS over the Cayley graph; the oracle the closed-form length is checked
/// against. Returns the full length table for the rank-n group of type t.
pub fn length_table_bfs(n: usize, t: CoxType) -> HashMap<SignedPerm, usize> {
    let gens: Vec<SignedPerm> = generators(t, n)
        .into_iter()
        .map(|g| gen_perm(g, n).unwrap())
        .collect();
    let mut dist = HashMap::new();
    let id = SignedPerm::identity(n);
    dist.insert(id.clone(), 0usize);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for s in &gens {
            let next = s.multiply(&w);
            dist.entry(next.clone()).or_insert_with(|| {
                queue.push_back(next);
                d + 1
            });
        }
    }
    dist
}

// ---------------------------------------------------------------------------
// Gelfand vertex sets and the embeddings iota_asc / iota_des.
// ---------------------------------------------------------------------------

/// The ascending embedding of a rank-n involution into the fixed-point-free
/// involutions of rank 2n: absolute fixed points c_1 < ... < c_q (the values
/// c in [-n,n] with w(c) = |c|) are paired c_i <-> n+i, the rest of [n]
/// keeps w's values, and the tail pairs adjacently (n+q+1 <-> n+q+2, ...).
pub fn iota_asc(w: &SignedPerm) -> Result<SignedPerm> {
    iota(w, true)
}

/// The descending embedding: like `iota_asc` but pairing c_i <-> n+q+1-i.
pub fn iota_des(w: &SignedPerm) -> Result<SignedPerm> {
    iota(w, false)
}

fn iota(w: &SignedPerm, ascending: bool) -> Result<SignedPerm> {
    if !w.is_involution() {
        return Err(Error::NotInvolution(w.to_string()));
    }
    let n = w.rank();
    let mut cs: Vec<i32> = Vec::new();
    for c in (1..=n as i32).flat_map(|a| [-a, a]) {
        if w.apply(c) == c.abs() {
            cs.push(c);
        }
    }
    cs.sort_unstable();
    let q = cs.len();
    let mut z = vec![0i32; 2 * n];
    // Values of w on the 2-cycle support inside [n].
    for i in 1..=n as i32 {
        if w.apply(i).unsigned_abs() != i.unsigned_abs() {
            z[(i - 1) as usize] = w.apply(i);
        }
    }
    // Pair each absolute fixed point with a slot just above n.
    for (idx, &c) in cs.iter().enumerate() {
        let partner = if ascending {
            n as i32 + idx as i32 + 1
        } else {
            n as i32 + q as i32 - idx as i32
        };
        // z(c) = partner, i.e. z(|c|) = sign(c) * partner, z(partner) = c.
        z[(c.abs() - 1) as usize] = c.signum() * partner;
        z[(partner - 1) as usize] = c;
    }
    // Tail: i -> i - (-1)^i pairs (n+q+1, n+q+2), (n+q+3, n+q+4), ...
    for i in (n + q + 1)..=(2 * n) {
        let v = if i % 2 == 1 { i + 1 } else { i - 1 };
        z[i - 1] = v as i32;
    }
    let z = SignedPerm { oneline: z };
    debug_assert!(z.is_fpf_involution());
    Ok(z)
}

/// All fixed-point-free involutions of rank m, sorted.
pub fn fpf_involutions(m: usize) -> Vec<SignedPerm> {
    involutions(m)
        .into_iter()
        .filter(|z| z.is_fpf_involution())
        .collect()
}

/// Membership test for the model-M vertex set via visible descents: no
/// i > n may have z(i+1) < min(i, z(i)) or z(i) < -i.
pub fn in_gelfand_m(z: &SignedPerm, n: usize) -> bool {
    if !z.is_fpf_involution() || z.rank() != 2 * n {
        return false;
    }
    for i in (n + 1)..=(2 * n) {
        let zi = z.apply(i as i32);
        if zi < -(i as i32) {
            return false;
        }
        if i < 2 * n && z.apply(i as i32 + 1) < (i as i32).min(zi) {
            return false;
        }
    }
    true
}

/// Membership test for the model-N vertex set. Beyond position n the
/// one-line values must consist of a strictly decreasing run of partner
/// values of magnitude at most n followed by the adjacent-pair tail
/// i -> i - (-1)^i. (The loose inequality z(i+1) <= max(i+2, z(i)) holds on
/// this set but does not characterize it.)
pub fn in_gelfand_n(z: &SignedPerm, n: usize) -> bool {
    if !z.is_fpf_involution() || z.rank() != 2 * n {
        return false;
    }
    let mut i = n + 1;
    let mut prev: Option<i32> = None;
    while i <= 2 * n {
        let v = z.apply(i as i32);
        if v.unsigned_abs() as usize <= n {
            if let Some(p) = prev {
                if v >= p {
                    return false;
                }
            }
            prev = Some(v);
            i += 1;
        } else {
            break;
        }
    }
    while i <= 2 * n {
        let expect = if i % 2 == 1 { i + 1 } else { i - 1 };
        if z.apply(i as i32) != expect as i32 {
            return false;
        }
        i += 1;
    }
    true
}

/// Type D keeps the vertices with evenly many i having z(i) < -i.
pub fn in_type_d_gelfand(z: &SignedPerm) -> bool {
    let m = z.rank();
    (1..=m as i32).filter(|&i| z.apply(i) < -i).count() % 2 == 0
}

/// The Gelfand vertex set: the image of I_n under iota_asc (model M) or
/// iota_des (model N), filtered for type D by the even sign-excedance
/// condition. Sorted by (length, one-line) for deterministic processing.
pub fn gelfand_set(n: usize, t: CoxType, model: Model) -> Vec<SignedPerm> {
    let mut verts: Vec<SignedPerm> = involutions(n)
        .iter()
        .map(|w| match model {
            Model::M => iota_asc(w).unwrap(),
            Model::N => iota_des(w).unwrap(),
        })
        .collect();
    if t == CoxType::D {
        verts.retain(in_type_d_gelfand);
    }
    verts.sort_by_key(|z| (z.length(t), z.oneline.clone()));
    verts
}

// ---------------------------------------------------------------------------
// Generator classification at Gelfand vertices.
// ---------------------------------------------------------------------------

/// Conjugate s z s where s is the generator `g` of the rank-2n ambient group.
pub fn conjugate_by_gen(z: &SignedPerm, g: Gen) -> SignedPerm {
    let s = gen_perm(g, z.rank()).expect("generator valid for ambient rank");
    s.multiply(z).multiply(&s)
}

/// Classification straight from the definitions: weak descent when s and z
/// commute, weak ascent when z s z is a simple reflection s_j with j > n,
/// otherwise strict by comparing lengths of sz and z in the rank-2n group.
pub fn classify_gen(z: &SignedPerm, g: Gen, t: CoxType, n: usize) -> GenClass {
    let m = z.rank();
    debug_assert_eq!(m, 2 * n);
    let s = gen_perm(g, m).expect("generator valid for ambient rank");
    let sz = s.multiply(z);
    let zs = z.multiply(&s);
    if sz == zs {
        return GenClass::WeakDes;
    }
    let zsz = zs.multiply(z);
    if is_high_simple(&zsz, n) {
        return GenClass::WeakAsc;
    }
    if sz.length(t) < z.length(t) {
        GenClass::StrictDes
    } else {
        GenClass::StrictAsc
    }
}

/// True if w = s_j for some j > n.
fn is_high_simple(w: &SignedPerm, n: usize) -> bool {
    let m = w.rank();
    for j in (n + 1)..m {
        let mut ok = true;
        for i in 1..=m {
            let expect = if i == j {
                j as i32 + 1
            } else if i == j + 1 {
                j as i32
            } else {
                i as i32
            };
            if w.apply(i as i32) != expect {
                ok = false;
                break;
            }
        }
        if ok {
            return true;
        }
    }
    false
}

/// The explicit case list for model-M vertices. Cross-checked against
/// `classify_gen` in the test suite; both must agree on every vertex.
pub fn classify_gen_cases(z: &SignedPerm, g: Gen, t: CoxType, n: usize) -> GenClass {
    let v = |i: i32| z.apply(i);
    match g.0 {
        i if i >= 1 => {
            let (a, b) = (v(i), v(i + 1));
            let nn = n as i32;
            if a == i + 1 || a == -i - 1 {
                GenClass::WeakDes
            } else if (nn < a && a < b) || (a < b && b < -nn) {
                GenClass::WeakAsc
            } else if a > b && a != i + 1 && b != i {
                GenClass::StrictDes
            } else {
                GenClass::StrictAsc
            }
        }
        0 => {
            debug_assert_eq!(t, CoxType::B);
            if v(1) < 0 {
                GenClass::StrictDes
            } else {
                GenClass::StrictAsc
            }
        }
        -1 => {
            debug_assert_eq!(t, CoxType::D);
            let nn = n as i32;
            let (v1, v2) = (v(1), v(2));
            if v1 == 2 || v1 == -2 {
                GenClass::WeakDes
            } else if (v1 < -nn && nn < v2) || (v2 < -nn && nn < v1) {
                GenClass::WeakAsc
            } else if -v2 > v1 {
                GenClass::StrictDes
            } else {
                GenClass::StrictAsc
            }
        }
        _ => unreachable!("invalid generator index"),
    }
}

// ---------------------------------------------------------------------------
// Involutions of arbitrary finite label sets (positive/negative parts).
// ---------------------------------------------------------------------------

/// An involution of a finite set of positive integer labels, stored as the
/// full map including fixed points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetInvolution {
    map: BTreeMap<u32, u32>,
}

impl SetInvolution {
    pub fn new(map: BTreeMap<u32, u32>) -> Result<Self> {
        for (&a, &b) in &map {
            if map.get(&b) != Some(&a) {
                return Err(Error::NotInvolution(format!("{map:?}")));
            }
        }
        Ok(SetInvolution { map })
    }

    pub fn empty() -> Self {
        SetInvolution {
            map: BTreeMap::new(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.map.keys().copied()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.map.contains_key(&a)
    }

    pub fn get(&self, a: u32) -> Option<u32> {
        self.map.get(&a).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// The pairs (a, b) with a <= b = z(a), sorted by b.
    pub fn pairs_by_larger(&self) -> Vec<(u32, u32)> {
        let mut pairs: Vec<(u32, u32)> = self
            .map
            .iter()
            .filter(|(&a, &b)| a <= b)
            .map(|(&a, &b)| (a, b))
            .collect();
        pairs.sort_by_key(|&(_, b)| b);
        pairs
    }

    /// Conjugate by the transposition (a, b); both labels are relabeled in
    /// domain and range, so the support may move.
    pub fn conjugate_by_transposition(&self, a: u32, b: u32) -> SetInvolution {
        let swap = |x: u32| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        SetInvolution {
            map: self.map.iter().map(|(&k, &v)| (swap(k), swap(v))).collect(),
        }
    }

    /// The biword (sorted support; image values) used for insertion.
    pub fn word(&self) -> Vec<u32> {
        self.map.values().copied().collect()
    }
}

impl SignedPerm {
    /// The positive part: the involution i -> z(i) on {i : z(i) > 0}.
    pub fn plus_part(&self) -> Result<SetInvolution> {
        if !self.is_involution() {
            return Err(Error::NotInvolution(self.to_string()));
        }
        let map = (1..=self.rank() as i32)
            .filter(|&i| self.apply(i) > 0)
            .map(|i| (i as u32, self.apply(i) as u32))
            .collect();
        SetInvolution::new(map)
    }

    /// The negative part: the involution i -> -z(i) on {i : z(i) < 0}.
    pub fn minus_part(&self) -> Result<SetInvolution> {
        if !self.is_involution() {
            return Err(Error::NotInvolution(self.to_string()));
        }
        let map = (1..=self.rank() as i32)
            .filter(|&i| self.apply(i) < 0)
            .map(|i| (i as u32, (-self.apply(i)) as u32))
            .collect();
        SetInvolution::new(map)
    }

    /// Rebuild a signed involution from disjoint positive and negative parts
    /// covering [n].
    pub fn from_parts(n: usize, plus: &SetInvolution, minus: &SetInvolution) -> Result<SignedPerm> {
        let mut oneline = vec![0i32; n];
        for a in plus.support() {
            oneline[a as usize - 1] = plus.get(a).unwrap() as i32;
        }
        for a in minus.support() {
            if oneline[a as usize - 1] != 0 {
                return Err(Error::Domain(format!("parts overlap at {a}")));
            }
            oneline[a as usize - 1] = -(minus.get(a).unwrap() as i32);
        }
        let w = SignedPerm::new(oneline)?;
        if !w.is_involution() {
            return Err(Error::NotInvolution(w.to_string()));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPerm {
        SignedPerm::parse(s, None).unwrap()
    }

    #[test]
    fn multiply_and_inverse() {
        let u = sp("2,-1");
        assert_eq!(SignedPerm::identity(2).multiply(&u), u);
        assert_eq!(u.multiply(&u.inverse()), SignedPerm::identity(2));
        // s_0 * s_0 = id at rank 1.
        let s0 = gen_perm(Gen(0), 1).unwrap();
        assert!(s0.multiply(&s0).is_identity());
        // (-1,2) squared: compose as maps by hand: w(1)=-1 so w(w(1))=1.
        let w = sp("-1,2");
        assert!(w.multiply(&w).is_identity());
    }

    #[test]
    fn length_closed_forms() {
        assert_eq!(SignedPerm::identity(3).length(CoxType::B), 0);
        assert_eq!(sp("-2,1").length(CoxType::B), 2);
        assert_eq!(sp("-1,2,3").length(CoxType::B), 1);
        assert_eq!(gen_perm(Gen(-1), 3).unwrap().length(CoxType::D), 1);
    }

    #[test]
    fn length_matches_bfs_small() {
        for t in [CoxType::B, CoxType::D] {
            for n in 1..=3 {
                let table = length_table_bfs(n, t);
                for (w, &d) in &table {
                    assert_eq!(w.length(t), d, "length mismatch at {w} type {t:?}");
                }
                let order: usize = match t {
                    CoxType::B => (1..=n).product::<usize>() * (1 << n),
                    CoxType::D => {
                        if n == 1 {
                            1
                        } else {
                            (1..=n).product::<usize>() * (1 << (n - 1))
                        }
                    }
                };
                assert_eq!(table.len(), order);
            }
        }
    }

    #[test]
    fn descent_sets() {
        assert!(left_descents(&SignedPerm::identity(3), CoxType::B).is_empty());
        assert_eq!(
            left_descents(&sp("-1,2,3"), CoxType::B),
            BTreeSet::from([Gen(0)])
        );
        // Dichotomy: i is a left descent iff l(s_i w) = l(w) - 1.
        for w in group_elements(3, CoxType::B) {
            let lw = w.length(CoxType::B);
            for g in generators(CoxType::B, 3) {
                let swl = gen_perm(g, 3).unwrap().multiply(&w).length(CoxType::B);
                let des = left_descents(&w, CoxType::B).contains(&g);
                assert_eq!(des, swl + 1 == lw);
            }
        }
    }

    #[test]
    fn involution_predicates() {
        assert!(SignedPerm::identity(4).is_involution());
        assert!(!SignedPerm::identity(4).is_fpf_involution());
        let z = SignedPerm::parse("(1,3)(2,5)(4,6)(7,8)", Some(8)).unwrap();
        assert!(z.is_involution() && z.is_fpf_involution());
        let z = sp("-1,2");
        assert!(z.is_involution() && !z.is_fpf_involution());
    }

    #[test]
    fn iota_examples() {
        // n=4, w=(1,3): both embeddings from the worked example.
        let w = SignedPerm::parse("(1,3)", Some(4)).unwrap();
        assert_eq!(
            iota_asc(&w).unwrap(),
            SignedPerm::parse("(1,3)(2,5)(4,6)(7,8)", Some(8)).unwrap()
        );
        assert_eq!(
            iota_des(&w).unwrap(),
            SignedPerm::parse("(1,3)(2,6)(4,5)(7,8)", Some(8)).unwrap()
        );
        // n=1: id has the single absolute fixed point c_1 = 1.
        assert_eq!(iota_asc(&SignedPerm::identity(1)).unwrap(), sp("2,1"));
    }

    #[test]
    fn gelfand_sets_small() {
        let g1 = gelfand_set(1, CoxType::B, Model::M);
        assert_eq!(g1, vec![sp("2,1"), sp("-2,-1")]);
        for n in 1..=3 {
            let gm = gelfand_set(n, CoxType::B, Model::M);
            assert_eq!(gm.len(), involutions(n).len());
            // Characterization: image = FPF involutions with no visible
            // descent above n.
            let by_chr: Vec<_> = fpf_involutions(2 * n)
                .into_iter()
                .filter(|z| in_gelfand_m(z, n))
                .collect();
            let mut gm_sorted = gm.clone();
            gm_sorted.sort();
            assert_eq!(gm_sorted, by_chr);

            let gn = gelfand_set(n, CoxType::B, Model::N);
            let by_chr_n: Vec<_> = fpf_involutions(2 * n)
                .into_iter()
                .filter(|z| in_gelfand_n(z, n))
                .collect();
            let mut gn_sorted = gn.clone();
            gn_sorted.sort();
            assert_eq!(gn_sorted, by_chr_n);
        }
        // Type D at n=2 keeps the three vertices with even sign excedance.
        let gd = gelfand_set(2, CoxType::D, Model::M);
        assert_eq!(gd.len(), 3);
        for z in &gd {
            assert!(in_type_d_gelfand(z));
        }
    }

    #[test]
    fn classification_examples() {
        // z=(1,2)(3,4) viewed as a vertex for n=2: z(1)=2 makes s_1 weak.
        let z = sp("2,1,4,3");
        assert_eq!(classify_gen(&z, Gen(1), CoxType::B, 2), GenClass::WeakDes);
        // z=(1,3)(2,4): z(1)=3>n and z(1)<z(2) make s_1 a weak ascent.
        let z = sp("3,4,1,2");
        assert_eq!(classify_gen(&z, Gen(1), CoxType::B, 2), GenClass::WeakAsc);
        // s_0 is a strict descent whenever z(1) < 0.
        let z = sp("-2,-1,4,3");
        assert_eq!(classify_gen(&z, Gen(0), CoxType::B, 2), GenClass::StrictDes);
    }

    #[test]
    fn classification_case_list_agrees() {
        for n in 1..=3 {
            for (t, _) in [(CoxType::B, 0), (CoxType::D, 0)] {
                if t == CoxType::D && n < 2 {
                    continue;
                }
                for z in gelfand_set(n, t, Model::M) {
                    for g in generators(t, n) {
                        assert_eq!(
                            classify_gen(&z, g, t, n),
                            classify_gen_cases(&z, g, t, n),
                            "mismatch at z={z} g={g} type {t:?} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_dichotomy() {
        // Weak => szs = z; strict => lengths differ by exactly 2.
        for n in 1..=3 {
            for t in [CoxType::B, CoxType::D] {
                if t == CoxType::D && n < 2 {
                    continue;
                }
                for model in [Model::M, Model::N] {
                    for z in gelfand_set(n, t, model) {
                        for g in generators(t, n) {
                            let c = conjugate_by_gen(&z, g);
                            match classify_gen(&z, g, t, n) {
                                GenClass::WeakDes => assert_eq!(c, z),
                                GenClass::StrictAsc => {
                                    assert_eq!(c.length(t), z.length(t) + 2)
                                }
                                GenClass::StrictDes => {
                                    assert_eq!(c.length(t) + 2, z.length(t))
                                }
                                GenClass::WeakAsc => {
                                    assert!(c == z || c.length(t).abs_diff(z.length(t)) == 2)
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["-3,4,-1,2", "1,2,3", "-1"] {
            assert_eq!(sp(s).to_string(), s);
        }
        let z = SignedPerm::parse("(1,3)(2,5)", None).unwrap();
        assert_eq!(z.rank(), 5);
        assert_eq!(z.apply(1), 3);
        assert_eq!(z.apply(2), 5);
        assert_eq!(z.apply(4), 4);
    }

    #[test]
    fn parts_roundtrip() {
        let z = sp("3,-2,1,-4");
        let plus = z.plus_part().unwrap();
        let minus = z.minus_part().unwrap();
        assert_eq!(plus.word(), vec![3, 1]);
        assert_eq!(minus.word(), vec![2, 4]);
        assert_eq!(SignedPerm::from_parts(4, &plus, &minus).unwrap(), z);
    }
}
