//! The Gelfand Iwahori-Hecke modules: generator actions on the vertex
//! basis, the bar operator, and canonical bases computed two independent
//! ways (the ascent recurrence and a direct triangular fixed-point solve).

use std::collections::{BTreeMap, HashMap};

use crate::coxeter::{
    classify_gen, conjugate_by_gen, gelfand_set, generators, CoxType, Gen, GenClass, Model,
    SignedPerm,
};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// An element of the module: a finite Laurent-coefficient combination of
/// Gelfand vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    pub model: Model,
    pub cox: CoxType,
    pub rank: usize,
    pub terms: BTreeMap<SignedPerm, LaurentPoly>,
}

/// Which strict descent to resolve at each recurrence step; used to check
/// that the canonical basis does not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoicePolicy {
    SmallestDescent,
    LargestDescent,
}

/// Precomputed context for one Gelfand module: the vertex set in a fixed
/// order, the classification of every generator at every vertex, and the
/// conjugation targets for the strict classes.
pub struct GelfandModule {
    cox: CoxType,
    model: Model,
    rank: usize,
    vertices: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    lengths: Vec<usize>,
    gens: Vec<Gen>,
    class: Vec<Vec<GenClass>>,
    conj: Vec<Vec<Option<usize>>>,
}

/// Is the generator in the tau set of the model (the ascent-like classes
/// whose action is not the plain x eigenvalue)?
pub fn in_tau(class: GenClass, model: Model) -> bool {
    match model {
        Model::M => matches!(class, GenClass::StrictAsc | GenClass::WeakAsc),
        Model::N => matches!(class, GenClass::StrictAsc | GenClass::WeakDes),
    }
}

impl GelfandModule {
    pub fn new(rank: usize, cox: CoxType, model: Model) -> Result<Self> {
        let vertices = gelfand_set(rank, cox, model);
        let index: HashMap<SignedPerm, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, z)| (z.clone(), i))
            .collect();
        let lengths: Vec<usize> = vertices.iter().map(|z| z.length(cox)).collect();
        let gens = generators(cox, rank);
        let mut class = Vec::with_capacity(vertices.len());
        let mut conj = Vec::with_capacity(vertices.len());
        for z in &vertices {
            let mut row_class = Vec::with_capacity(gens.len());
            let mut row_conj = Vec::with_capacity(gens.len());
            for &g in &gens {
                let c = classify_gen(z, g, cox, rank);
                row_class.push(c);
                if c.is_weak() {
                    row_conj.push(None);
                } else {
                    let target = conjugate_by_gen(z, g);
                    let idx = index.get(&target).copied().ok_or_else(|| {
                        Error::Basis(format!(
                            "conjugate {target} of vertex {z} leaves the vertex set"
                        ))
                    })?;
                    row_conj.push(Some(idx));
                }
            }
            class.push(row_class);
            conj.push(row_conj);
        }
        Ok(GelfandModule {
            cox,
            model,
            rank,
            vertices,
            index,
            lengths,
            gens,
            class,
            conj,
        })
    }

    pub fn cox_type(&self) -> CoxType {
        self.cox
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[SignedPerm] {
        &self.vertices
    }

    pub fn generator_list(&self) -> &[Gen] {
        &self.gens
    }

    pub fn vertex_index(&self, z: &SignedPerm) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn length_of(&self, idx: usize) -> usize {
        self.lengths[idx]
    }

    pub fn classification(&self, idx: usize, g: Gen) -> GenClass {
        let gi = self.gen_pos(g);
        self.class[idx][gi]
    }

    /// Strict conjugation target, when the class at g is strict.
    pub fn conjugate_index(&self, idx: usize, g: Gen) -> Option<usize> {
        self.conj[idx][self.gen_pos(g)]
    }

    fn gen_pos(&self, g: Gen) -> usize {
        self.gens
            .iter()
            .position(|&h| h == g)
            .expect("generator belongs to the acting group")
    }

    /// Weak-class eigenvalue of the model action.
    fn weak_scalar(&self, class: GenClass) -> LaurentPoly {
        let x = LaurentPoly::x_pow(1);
        let neg_inv = -&LaurentPoly::x_pow(-1);
        match (self.model, class) {
            (Model::M, GenClass::WeakAsc) => neg_inv,
            (Model::M, GenClass::WeakDes) => x,
            (Model::N, GenClass::WeakAsc) => x,
            (Model::N, GenClass::WeakDes) => neg_inv,
            _ => unreachable!("strict class has no scalar"),
        }
    }

    /// H_g applied to the basis vector at `idx`, as a sparse combination.
    fn act_on_basis(&self, g: Gen, idx: usize) -> Vec<(usize, LaurentPoly)> {
        let gi = self.gen_pos(g);
        let delta = &LaurentPoly::x_pow(1) - &LaurentPoly::x_pow(-1);
        match self.class[idx][gi] {
            GenClass::StrictAsc => vec![(self.conj[idx][gi].unwrap(), LaurentPoly::one())],
            GenClass::StrictDes => vec![
                (self.conj[idx][gi].unwrap(), LaurentPoly::one()),
                (idx, delta),
            ],
            c => vec![(idx, self.weak_scalar(c))],
        }
    }

    /// H_g on a dense coefficient vector.
    pub fn act_dense(&self, g: Gen, e: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); self.vertices.len()];
        for (idx, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, f) in self.act_on_basis(g, idx) {
                let term = &f * c;
                out[j] += &term;
            }
        }
        out
    }

    /// H_g on a module element.
    pub fn act(&self, g: Gen, e: &ModuleElement) -> Result<ModuleElement> {
        if !self.gens.contains(&g) {
            return Err(Error::InvalidGenerator(g.0, self.cox, self.rank));
        }
        let dense = self.to_dense(e)?;
        Ok(self.from_dense(&self.act_dense(g, &dense)))
    }

    pub fn basis_element(&self, z: &SignedPerm) -> Result<ModuleElement> {
        let idx = self
            .vertex_index(z)
            .ok_or_else(|| Error::Domain(format!("{z} is not a vertex")))?;
        let mut e = vec![LaurentPoly::zero(); self.vertices.len()];
        e[idx] = LaurentPoly::one();
        Ok(self.from_dense(&e))
    }

    pub fn to_dense(&self, e: &ModuleElement) -> Result<Vec<LaurentPoly>> {
        if e.model != self.model || e.cox != self.cox || e.rank != self.rank {
            return Err(Error::Domain(
                "element belongs to a different module".into(),
            ));
        }
        let mut out = vec![LaurentPoly::zero(); self.vertices.len()];
        for (z, c) in &e.terms {
            let idx = self
                .vertex_index(z)
                .ok_or_else(|| Error::Domain(format!("{z} is not a vertex")))?;
            out[idx] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(&self, dense: &[LaurentPoly]) -> ModuleElement {
        ModuleElement {
            model: self.model,
            cox: self.cox,
            rank: self.rank,
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.vertices[i].clone(), c.clone()))
                .collect(),
        }
    }

    /// bar(M_z) for every vertex, by induction on length: a vertex without
    /// strict descents is fixed; otherwise M_z = H_s M_{s z s} for a strict
    /// descent s and bar pulls through H_s^{-1} = H_s - (x - x^{-1}).
    pub fn bar_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.vertices.len();
        let delta = &LaurentPoly::x_pow(1) - &LaurentPoly::x_pow(-1);
        let mut cols: Vec<Option<Vec<LaurentPoly>>> = vec![None; n];
        // Vertices are sorted by length, so one pass suffices.
        for idx in 0..n {
            let des = self.strict_descents(idx);
            let col = match des.first() {
                None => {
                    let mut e = vec![LaurentPoly::zero(); n];
                    e[idx] = LaurentPoly::one();
                    e
                }
                Some(&g) => {
                    let gi = self.gen_pos(g);
                    let src = self.conj[idx][gi].unwrap();
                    debug_assert!(src < idx);
                    let prev = cols[src].as_ref().unwrap().clone();
                    let mut out = self.act_dense(g, &prev);
                    for (o, p) in out.iter_mut().zip(prev.iter()) {
                        let sub = &delta * p;
                        *o -= &sub;
                    }
                    out
                }
            };
            cols[idx] = Some(col);
        }
        cols.into_iter().map(Option::unwrap).collect()
    }

    /// The bar involution on a dense element: antilinear over the bar of
    /// coefficients.
    pub fn bar_dense(&self, bar_cols: &[Vec<LaurentPoly>], e: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let n = self.vertices.len();
        let mut out = vec![LaurentPoly::zero(); n];
        for (idx, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cb = c.bar();
            for (j, entry) in bar_cols[idx].iter().enumerate() {
                let term = entry * &cb;
                out[j] += &term;
            }
        }
        out
    }

    pub fn bar(&self, e: &ModuleElement) -> Result<ModuleElement> {
        let cols = self.bar_matrix();
        let dense = self.to_dense(e)?;
        Ok(self.from_dense(&self.bar_dense(&cols, &dense)))
    }

    pub fn strict_descents(&self, idx: usize) -> Vec<Gen> {
        self.gens
            .iter()
            .enumerate()
            .filter(|(gi, _)| self.class[idx][*gi] == GenClass::StrictDes)
            .map(|(_, &g)| g)
            .collect()
    }

    pub fn strict_ascents(&self, idx: usize) -> Vec<Gen> {
        self.gens
            .iter()
            .enumerate()
            .filter(|(gi, _)| self.class[idx][*gi] == GenClass::StrictAsc)
            .map(|(_, &g)| g)
            .collect()
    }

    /// Canonical basis via the ascent recurrence. Every column is checked
    /// to be unitriangular with strictly-negative-exponent entries and
    /// fixed by the bar operator.
    pub fn canonical_basis(&self, policy: ChoicePolicy) -> Result<CanonicalBasis> {
        let n = self.vertices.len();
        let xinv = LaurentPoly::x_pow(-1);
        let mut columns: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for idx in 0..n {
            let des = self.strict_descents(idx);
            let col = if des.is_empty() {
                let mut e = vec![LaurentPoly::zero(); n];
                e[idx] = LaurentPoly::one();
                e
            } else {
                let g = match policy {
                    ChoicePolicy::SmallestDescent => des[0],
                    ChoicePolicy::LargestDescent => *des.last().unwrap(),
                };
                let gi = self.gen_pos(g);
                let src = self.conj[idx][gi].unwrap();
                debug_assert!(src < idx);
                let base = columns[src].clone();
                // (H_g + x^{-1}) applied to the source column.
                let mut col = self.act_dense(g, &base);
                for (o, p) in col.iter_mut().zip(base.iter()) {
                    let term = &xinv * p;
                    *o += &term;
                }
                // Subtract mu-corrections over shorter vertices where g is
                // not in the model tau set.
                for y in 0..n {
                    if self.lengths[y] >= self.lengths[src] || in_tau(self.class[y][gi], self.model)
                    {
                        continue;
                    }
                    let mu = base[y].coeff(-1);
                    if mu == 0 {
                        continue;
                    }
                    let factor = LaurentPoly::constant(mu);
                    let source = columns[y].clone();
                    for (o, p) in col.iter_mut().zip(source.iter()) {
                        let term = &factor * p;
                        *o -= &term;
                    }
                }
                col
            };
            // Unitriangularity with respect to length.
            if col[idx] != LaurentPoly::one() {
                return Err(Error::Basis(format!(
                    "column {} has diagonal {}",
                    self.vertices[idx], col[idx]
                )));
            }
            for (y, entry) in col.iter().enumerate() {
                if y == idx || entry.is_zero() {
                    continue;
                }
                if self.lengths[y] >= self.lengths[idx] || !entry.has_only_negative_exponents() {
                    return Err(Error::Basis(format!(
                        "column {} has a bad entry {} at {}",
                        self.vertices[idx], entry, self.vertices[y]
                    )));
                }
            }
            columns.push(col);
        }
        // Bar invariance of every column.
        let bar_cols = self.bar_matrix();
        for (idx, col) in columns.iter().enumerate() {
            if &self.bar_dense(&bar_cols, col) != col {
                return Err(Error::Basis(format!(
                    "column {} is not bar invariant",
                    self.vertices[idx]
                )));
            }
        }
        Ok(CanonicalBasis {
            vertices: self.vertices.clone(),
            lengths: self.lengths.clone(),
            columns,
        })
    }

    /// Canonical basis via the direct triangular fixed-point solve: each
    /// column of the bar matrix is corrected bottom-up until it is bar
    /// fixed with strictly-negative-exponent off-diagonal entries. Kept
    /// independent of the recurrence as a cross-check.
    pub fn solver_basis(&self) -> Result<CanonicalBasis> {
        let n = self.vertices.len();
        let bar_cols = self.bar_matrix();
        let mut columns: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for idx in 0..n {
            let mut col = vec![LaurentPoly::zero(); n];
            col[idx] = LaurentPoly::one();
            // Determine entries by decreasing length below the diagonal.
            let mut order: Vec<usize> = (0..idx).collect();
            order.sort_by_key(|&y| std::cmp::Reverse(self.lengths[y]));
            for y in order {
                // Residue of the bar-fixed-point equation at y from the
                // already-determined longer entries.
                let mut g = LaurentPoly::zero();
                for yp in 0..n {
                    if col[yp].is_zero() || self.lengths[yp] <= self.lengths[y] {
                        continue;
                    }
                    let term = &bar_cols[yp][y] * &col[yp].bar();
                    g += &term;
                }
                if g.is_zero() {
                    continue;
                }
                if !(&g.bar() + &g).is_zero() {
                    return Err(Error::Basis(format!(
                        "fixed-point residue at {} not antisymmetric: {}",
                        self.vertices[y], g
                    )));
                }
                col[y] = g.negative_part();
            }
            columns.push(col);
        }
        Ok(CanonicalBasis {
            vertices: self.vertices.clone(),
            lengths: self.lengths.clone(),
            columns,
        })
    }
}

/// The canonical basis: unitriangular columns over the vertex basis plus
/// the mu coefficients extracted from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    vertices: Vec<SignedPerm>,
    lengths: Vec<usize>,
    columns: Vec<Vec<LaurentPoly>>,
}

impl CanonicalBasis {
    pub fn vertices(&self) -> &[SignedPerm] {
        &self.vertices
    }

    pub fn column(&self, z: usize) -> &[LaurentPoly] {
        &self.columns[z]
    }

    pub fn entry(&self, y: usize, z: usize) -> &LaurentPoly {
        &self.columns[z][y]
    }

    /// Coefficient of x^{-1} in the (y, z) entry.
    pub fn mu(&self, y: usize, z: usize) -> i64 {
        self.columns[z][y].coeff(-1)
    }

    /// Symmetrized edge weight mu(y,z) + mu(z,y).
    pub fn omega(&self, y: usize, z: usize) -> i64 {
        self.mu(y, z) + self.mu(z, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPerm {
        SignedPerm::parse(s, None).unwrap()
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn weak_eigenvalues() {
        // Weak descent in the M model scales by x.
        let m = GelfandModule::new(2, CoxType::B, Model::M).unwrap();
        let z = sp("2,1,4,3");
        let e = m.basis_element(&z).unwrap();
        let acted = m.act(Gen(1), &e).unwrap();
        assert_eq!(acted.terms[&z], poly("x"));
        // Weak ascent scales by -x^{-1}.
        let z = sp("3,4,1,2");
        let e = m.basis_element(&z).unwrap();
        let acted = m.act(Gen(1), &e).unwrap();
        assert_eq!(acted.terms[&z], poly("-x^-1"));
    }

    #[test]
    fn quadratic_relation_small() {
        for (cox, n) in [(CoxType::B, 2), (CoxType::B, 3), (CoxType::D, 2)] {
            for model in [Model::M, Model::N] {
                let m = GelfandModule::new(n, cox, model).unwrap();
                let delta = &LaurentPoly::x_pow(1) - &LaurentPoly::x_pow(-1);
                for idx in 0..m.vertices().len() {
                    let mut e = vec![LaurentPoly::zero(); m.vertices().len()];
                    e[idx] = LaurentPoly::one();
                    for &g in m.generator_list() {
                        let he = m.act_dense(g, &e);
                        let hhe = m.act_dense(g, &he);
                        // H^2 = (x - x^{-1}) H + 1.
                        for i in 0..e.len() {
                            let expect = &(&delta * &he[i]) + &e[i];
                            assert_eq!(hhe[i], expect, "quadratic at {cox:?} {model:?} idx={idx}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bar_is_involution_small() {
        for (cox, n) in [(CoxType::B, 2), (CoxType::D, 2)] {
            for model in [Model::M, Model::N] {
                let m = GelfandModule::new(n, cox, model).unwrap();
                let cols = m.bar_matrix();
                for idx in 0..m.vertices().len() {
                    let mut e = vec![LaurentPoly::zero(); m.vertices().len()];
                    e[idx] = LaurentPoly::one();
                    let b = m.bar_dense(&cols, &e);
                    let bb = m.bar_dense(&cols, &b);
                    assert_eq!(bb, e, "bar^2 at idx={idx} {cox:?} {model:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_columns_rank2_type_b() {
        // Hand-computed table for the rank-2 row model.
        let m = GelfandModule::new(2, CoxType::B, Model::M).unwrap();
        let cb = m.canonical_basis(ChoicePolicy::SmallestDescent).unwrap();
        let at = |s: &str| m.vertex_index(&sp(s)).unwrap();
        let xinv = poly("x^-1");
        assert_eq!(
            cb.column(at("2,1,4,3"))
                .iter()
                .filter(|c| !c.is_zero())
                .count(),
            1
        );
        assert_eq!(cb.entry(at("2,1,4,3"), at("-2,-1,4,3")), &xinv);
        assert_eq!(cb.entry(at("3,4,1,2"), at("-3,4,-1,2")), &xinv);
        assert_eq!(cb.entry(at("-3,4,-1,2"), at("4,-3,-2,1")), &xinv);
        assert_eq!(cb.entry(at("4,-3,-2,1"), at("-4,-3,-2,-1")), &xinv);
        // Nothing deeper: the longest column has exactly two nonzero
        // entries.
        let long = at("-4,-3,-2,-1");
        assert_eq!(cb.column(long).iter().filter(|c| !c.is_zero()).count(), 2);
        assert_eq!(cb.mu(at("4,-3,-2,1"), long), 1);
        assert_eq!(cb.mu(long, long), 0);
        assert_eq!(cb.omega(at("4,-3,-2,1"), long), 1);
    }

    #[test]
    fn recurrence_matches_solver_small() {
        for (cox, n) in [(CoxType::B, 1), (CoxType::B, 2), (CoxType::D, 2)] {
            for model in [Model::M, Model::N] {
                let m = GelfandModule::new(n, cox, model).unwrap();
                let a = m.canonical_basis(ChoicePolicy::SmallestDescent).unwrap();
                let b = m.canonical_basis(ChoicePolicy::LargestDescent).unwrap();
                let c = m.solver_basis().unwrap();
                assert_eq!(a, b, "policy dependence at {cox:?} {model:?} n={n}");
                assert_eq!(a, c, "solver mismatch at {cox:?} {model:?} n={n}");
            }
        }
    }
}
