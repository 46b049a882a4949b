//! Finitely presented graded modules over a quotient ring and maps between them.
//!
//! A module is given by generator degrees and a relation matrix stored as a
//! list of columns (one entry per generator). Public constructors return
//! minimal presentations; internal constructions such as `F ⊗ N` keep the
//! raw presentation so that maps can be written down blockwise.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{column_degree, minimal_subset, raw_syzygies, GroebnerBasis, Lifter};
use crate::polyring::Poly;
use crate::quotient::{PrimeIdeal, QuotientRing};

/// Columns of a matrix over R.
pub type Columns = Vec<Vec<Poly>>;

#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<QuotientRing>,
    degrees: Vec<i32>,
    relations: Columns,
    rel_gb: OnceLock<GroebnerBasis>,
}

fn reduce_col(ring: &QuotientRing, col: &[Poly]) -> Vec<Poly> {
    col.iter().map(|p| ring.reduce(p)).collect()
}

fn is_zero_col(col: &[Poly]) -> bool {
    col.iter().all(|p| p.is_zero())
}

pub(crate) fn same_ring(a: &Arc<QuotientRing>, b: &Arc<QuotientRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PresentedModule {
    /// Cokernel of a homogeneous relation matrix, minimized.
    pub fn coker(ring: Arc<QuotientRing>, degrees: Vec<i32>, relations: Columns) -> Result<Self> {
        let m = Self::checked_raw(ring, degrees, relations)?;
        Ok(m.minimize().0)
    }

    /// Validated but unminimized presentation.
    pub fn checked_raw(ring: Arc<QuotientRing>, degrees: Vec<i32>, relations: Columns) -> Result<Self> {
        for (k, col) in relations.iter().enumerate() {
            if col.len() != degrees.len() {
                return Err(Error::input(format!(
                    "relation {k} has {} entries for {} generators",
                    col.len(),
                    degrees.len()
                )));
            }
            if col.iter().any(|p| p.support_len() > ring.nvars()) {
                return Err(Error::input("relation uses variables outside the ring"));
            }
            if col.iter().any(|p| !p.is_homogeneous()) {
                return Err(Error::input(format!("relation {k} has an inhomogeneous entry")));
            }
            column_degree(col, &degrees).map_err(|_| Error::input(format!("relation {k} is not homogeneous")))?;
        }
        let relations = relations.iter().map(|c| reduce_col(&ring, c)).filter(|c| !is_zero_col(c)).collect();
        Ok(Self::raw(ring, degrees, relations))
    }

    /// Presentation taken as is; entries must already be reduced and homogeneous.
    pub(crate) fn raw(ring: Arc<QuotientRing>, degrees: Vec<i32>, relations: Columns) -> Self {
        PresentedModule { ring, degrees, relations, rel_gb: OnceLock::new() }
    }

    pub fn free(ring: Arc<QuotientRing>, degrees: Vec<i32>) -> Self {
        Self::raw(ring, degrees, Vec::new())
    }

    /// R/J shifted to start in degree `degree`.
    pub fn cyclic(ring: Arc<QuotientRing>, ideal: &[Poly], degree: i32) -> Result<Self> {
        let rels = ideal.iter().map(|f| vec![f.clone()]).collect();
        Self::coker(ring, vec![degree], rels)
    }

    /// k = R/m.
    pub fn residue_field(ring: Arc<QuotientRing>) -> Self {
        let vars = ring.ambient().variables();
        Self::cyclic(ring, &vars, 0).expect("variables are homogeneous")
    }

    /// The ideal generated by `gens`, as a module.
    pub fn ideal(ring: Arc<QuotientRing>, gens: &[Poly]) -> Result<Self> {
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for g in gens {
            let g = ring.reduce(g);
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree().ok_or_else(|| Error::input("ideal generator is not homogeneous"))?;
            cols.push(vec![g]);
            degs.push(d as i32);
        }
        let (m, _) = subquotient(&ring, &[0], &cols, &degs, &[])?;
        Ok(m)
    }

    /// The irrelevant maximal ideal m as a module.
    pub fn maximal_ideal(ring: Arc<QuotientRing>) -> Self {
        let vars = ring.ambient().variables();
        Self::ideal(ring, &vars).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn relations(&self) -> &Columns {
        &self.relations
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    /// Number of minimal generators (for minimized presentations).
    pub fn mu(&self) -> usize {
        self.minimize().0.ngens()
    }

    pub fn is_free(&self) -> bool {
        self.minimize().0.relations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        if self.degrees.is_empty() {
            return true;
        }
        self.rel_gb().is_everything()
    }

    pub(crate) fn rel_gb(&self) -> &GroebnerBasis {
        self.rel_gb.get_or_init(|| {
            GroebnerBasis::compute(
                self.ring.field(),
                self.ring.nvars(),
                &self.degrees,
                &self.relations,
                self.ring.ideal_gens(),
                None,
            )
            .expect("relations are homogeneous")
        })
    }

    /// Normal form of an element of the free cover.
    pub fn reduce_element(&self, v: &[Poly]) -> Vec<Poly> {
        self.rel_gb().normal_form(v)
    }

    pub fn element_is_zero(&self, v: &[Poly]) -> bool {
        self.rel_gb().contains(v)
    }

    /// dim_k M_d for d = 0..=d_max.
    pub fn hilbert_function(&self, d_max: i32) -> Vec<usize> {
        (0..=d_max).map(|d| self.hilbert_value(d)).collect()
    }

    pub fn hilbert_value(&self, d: i32) -> usize {
        if self.degrees.is_empty() {
            return 0;
        }
        self.rel_gb().quotient_dimension(d)
    }

    /// Minimal presentation, the kept generator indices and, for every old
    /// generator, its expression in the new generators.
    pub fn minimize(&self) -> (PresentedModule, Vec<usize>, Columns) {
        let ring = &self.ring;
        let field = ring.field();
        let n = self.ngens();
        let mut rows: Vec<usize> = (0..n).collect();
        let mut rels: Columns = self.relations.clone();
        let mut from_old: Columns =
            (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect();
        loop {
            let mut pivot = None;
            'search: for (c, col) in rels.iter().enumerate() {
                for (i, p) in col.iter().enumerate() {
                    if let Some(u) = p.as_unit() {
                        pivot = Some((c, i, u));
                        break 'search;
                    }
                }
            }
            let Some((c, i, u)) = pivot else { break };
            let pcol = rels.remove(c);
            let uinv = field.inv(u);
            let eliminate = |v: &mut Vec<Poly>| {
                let a = v[i].clone();
                if !a.is_zero() {
                    let factor = a.scale(uinv, field);
                    for (k, entry) in v.iter_mut().enumerate() {
                        if !pcol[k].is_zero() {
                            *entry = ring.reduce(&entry.sub(&factor.mul(&pcol[k], field), field));
                        }
                    }
                }
                v.remove(i);
            };
            rels.iter_mut().for_each(eliminate);
            from_old.iter_mut().for_each(eliminate);
            rows.remove(i);
            rels.retain(|c| !is_zero_col(c));
        }
        let degrees: Vec<i32> = rows.iter().map(|&r| self.degrees[r]).collect();
        let rel_degs: Vec<i32> = rels.iter().map(|c| column_degree(c, &degrees).unwrap().unwrap()).collect();
        let keep = minimal_subset(field, ring.nvars(), &degrees, &[], &rels, &rel_degs, ring.ideal_gens())
            .expect("relations are homogeneous");
        let rels: Columns = keep.into_iter().map(|k| rels[k].clone()).collect();
        (PresentedModule::raw(self.ring.clone(), degrees, rels), rows, from_old)
    }

    /// Minimal presentation of M together with the isomorphism from M.
    pub fn minimized_with_map(&self) -> (PresentedModule, ModuleMap) {
        let (m, _, from_old) = self.minimize();
        let map = ModuleMap::raw(self.clone(), m.clone(), from_old, 0);
        (m, map)
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        let n1 = self.ngens();
        let n2 = other.ngens();
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut c = r.clone();
            c.resize(n1 + n2, Poly::zero());
            rels.push(c);
        }
        for r in &other.relations {
            let mut c = vec![Poly::zero(); n1];
            c.extend(r.iter().cloned());
            rels.push(c);
        }
        PresentedModule::raw(self.ring.clone(), degrees, rels)
    }

    /// M(s): generator degrees lowered by s.
    pub fn twist(&self, s: i32) -> PresentedModule {
        PresentedModule::raw(self.ring.clone(), self.degrees.iter().map(|d| d - s).collect(), self.relations.clone())
    }

    pub fn render(&self) -> String {
        let cols: Vec<String> = self
            .relations
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|p| self.ring.render(p)).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("coker degrees {:?} [{}]", self.degrees, cols.join(", "))
    }

    /// Summary used in reports.
    pub fn summary(&self) -> ModuleSummary {
        let (m, _, _) = self.minimize();
        ModuleSummary {
            generator_degrees: m.degrees.clone(),
            relations: m.relations.iter().map(|c| c.iter().map(|p| self.ring.render(p)).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuleSummary {
    pub generator_degrees: Vec<i32>,
    pub relations: Vec<Vec<String>>,
}

/// `(span(gens) + span(rels)) / span(rels)` inside a free module with the given
/// twists, with the images of its generators (a subset of `gens`).
pub(crate) fn subquotient(
    ring: &Arc<QuotientRing>,
    ambient_degs: &[i32],
    gens: &[Vec<Poly>],
    gen_degs: &[i32],
    rels: &[Vec<Poly>],
) -> Result<(PresentedModule, Columns)> {
    let field = ring.field();
    let n = ring.nvars();
    let keep = minimal_subset(field, n, ambient_degs, rels, gens, gen_degs, ring.ideal_gens())?;
    let kept: Columns = keep.iter().map(|&i| gens[i].clone()).collect();
    let kept_degs: Vec<i32> = keep.iter().map(|&i| gen_degs[i]).collect();
    if kept.is_empty() {
        return Ok((PresentedModule::free(ring.clone(), Vec::new()), Vec::new()));
    }
    let syz = raw_syzygies(field, n, ambient_degs, &kept, &kept_degs, rels, ring.ideal_gens())?;
    let m = PresentedModule::raw(ring.clone(), kept_degs, syz.into_iter().map(|(c, _)| c).collect());
    let (min, rows, _) = m.minimize();
    if rows.len() != kept.len() {
        return Err(Error::internal("subquotient generators were not minimal"));
    }
    Ok((min, kept))
}

/// Homogeneous map of presented modules; column j is the image of source
/// generator j, of degree `deg_j + shift`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: Columns,
    pub shift: i32,
}

impl ModuleMap {
    /// Checked constructor: homogeneity and well-definedness.
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Columns, shift: i32) -> Result<Self> {
        if !same_ring(&source.ring, &target.ring) {
            return Err(Error::input("map between modules over different rings"));
        }
        if matrix.len() != source.ngens() || matrix.iter().any(|c| c.len() != target.ngens()) {
            return Err(Error::input("map matrix has the wrong shape"));
        }
        for (j, col) in matrix.iter().enumerate() {
            if let Some(d) = column_degree(col, &target.degrees)? {
                if d != source.degrees[j] + shift {
                    return Err(Error::input(format!(
                        "map column {j} has degree {d}, expected {}",
                        source.degrees[j] + shift
                    )));
                }
            }
        }
        let matrix: Columns = matrix.iter().map(|c| reduce_col(&target.ring, c)).collect();
        let map = ModuleMap { source, target, matrix, shift };
        for r in &map.source.relations {
            if !map.target.element_is_zero(&map.apply(r)) {
                return Err(Error::input("map does not respect the source relations"));
            }
        }
        Ok(map)
    }

    pub(crate) fn raw(source: PresentedModule, target: PresentedModule, matrix: Columns, shift: i32) -> Self {
        ModuleMap { source, target, matrix, shift }
    }

    pub fn identity(m: &PresentedModule) -> Self {
        let n = m.ngens();
        let matrix =
            (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect();
        ModuleMap::raw(m.clone(), m.clone(), matrix, 0)
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule, shift: i32) -> Self {
        let matrix = vec![vec![Poly::zero(); target.ngens()]; source.ngens()];
        ModuleMap::raw(source.clone(), target.clone(), matrix, shift)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.source.ring
    }

    /// Image of an element of the source's free cover, in target coordinates.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        let ring = &self.target.ring;
        let field = ring.field();
        let mut out = vec![Poly::zero(); self.target.ngens()];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, e) in self.matrix[j].iter().enumerate() {
                if !e.is_zero() {
                    out[i] = out[i].add(&c.mul(e, field), field);
                }
            }
        }
        reduce_col(ring, &out)
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ModuleMap) -> ModuleMap {
        let matrix = first.matrix.iter().map(|c| self.apply(c)).collect();
        ModuleMap::raw(first.source.clone(), self.target.clone(), matrix, first.shift + self.shift)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|c| self.target.element_is_zero(c))
    }

    fn image_degs(&self) -> Vec<i32> {
        self.source.degrees.iter().map(|d| d + self.shift).collect()
    }

    /// Generators of `{c : Σ c_j φ_j = 0 in target}` in source coordinates.
    fn kernel_generators(&self) -> Result<(Columns, Vec<i32>)> {
        let ring = &self.source.ring;
        if self.source.ngens() == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        let syz = raw_syzygies(
            ring.field(),
            ring.nvars(),
            &self.target.degrees,
            &self.matrix,
            &self.image_degs(),
            &self.target.relations,
            ring.ideal_gens(),
        )?;
        Ok((syz.iter().map(|(c, _)| c.clone()).collect(), syz.iter().map(|(_, d)| d - self.shift).collect()))
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> Result<(PresentedModule, ModuleMap)> {
        let (gens, degs) = self.kernel_generators()?;
        let (k, cols) = subquotient(&self.source.ring, &self.source.degrees, &gens, &degs, &self.source.relations)?;
        let inc = ModuleMap::raw(k.clone(), self.source.clone(), cols, 0);
        Ok((k, inc))
    }

    /// Image as a submodule of the target, with its inclusion.
    pub fn image(&self) -> Result<(PresentedModule, ModuleMap)> {
        let (m, cols) = subquotient(
            &self.source.ring,
            &self.target.degrees,
            &self.matrix,
            &self.image_degs(),
            &self.target.relations,
        )?;
        let inc = ModuleMap::raw(m.clone(), self.target.clone(), cols, 0);
        Ok((m, inc))
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (PresentedModule, ModuleMap) {
        let mut rels = self.target.relations.clone();
        rels.extend(self.matrix.iter().filter(|c| !is_zero_col(c)).cloned());
        let raw = PresentedModule::raw(self.target.ring.clone(), self.target.degrees.clone(), rels);
        let (m, _, from_old) = raw.minimize();
        let proj = ModuleMap::raw(self.target.clone(), m.clone(), from_old, 0);
        (m, proj)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.0.is_zero())
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_surjective() && self.is_injective()?)
    }

    /// Some preimage of `v` (target coordinates) in source coordinates.
    pub fn lift(&self, v: &[Poly]) -> Result<Option<Vec<Poly>>> {
        let ring = &self.source.ring;
        if column_degree(v, &self.target.degrees)?.is_none() {
            return Ok(Some(vec![Poly::zero(); self.source.ngens()]));
        }
        let lifter = Lifter::new(
            ring.field(),
            &self.target.degrees,
            &self.matrix,
            &self.image_degs(),
            &self.target.relations,
            ring.ideal_gens(),
            None,
        )?;
        Ok(lifter.lift(v).map(|c| reduce_col(ring, &c)))
    }

    /// Lifter reusable for many targets.
    pub(crate) fn lifter(&self) -> Result<Lifter> {
        let ring = &self.source.ring;
        Lifter::new(
            ring.field(),
            &self.target.degrees,
            &self.matrix,
            &self.image_degs(),
            &self.target.relations,
            ring.ideal_gens(),
            None,
        )
    }
}

/// Homology `ker g / im f` at the middle of `A --f--> B --g--> C`.
pub fn homology(f: &ModuleMap, g: &ModuleMap) -> Result<PresentedModule> {
    let b = &g.source;
    let (kgens, kdegs) = g.kernel_generators()?;
    let mut rels = b.relations.clone();
    rels.extend(f.matrix.iter().filter(|c| !is_zero_col(c)).cloned());
    Ok(subquotient(&b.ring, &b.degrees, &kgens, &kdegs, &rels)?.0)
}

/// Homology at the middle when there is no incoming map.
pub fn homology_at_start(g: &ModuleMap) -> Result<PresentedModule> {
    Ok(g.kernel()?.0)
}

/// Raw presentation of M ⊗ N; generator (i, j) has index `i * N.ngens() + j`.
pub(crate) fn tensor_raw(m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    let (nm, nn) = (m.ngens(), n.ngens());
    let mut degrees = Vec::with_capacity(nm * nn);
    for &a in &m.degrees {
        for &b in &n.degrees {
            degrees.push(a + b);
        }
    }
    let mut rels = Vec::new();
    for r in &m.relations {
        for j in 0..nn {
            let mut c = vec![Poly::zero(); nm * nn];
            for i in 0..nm {
                c[i * nn + j] = r[i].clone();
            }
            rels.push(c);
        }
    }
    for i in 0..nm {
        for s in &n.relations {
            let mut c = vec![Poly::zero(); nm * nn];
            for j in 0..nn {
                c[i * nn + j] = s[j].clone();
            }
            rels.push(c);
        }
    }
    PresentedModule::raw(m.ring.clone(), degrees, rels)
}

pub fn tensor(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::input("tensor of modules over different rings"));
    }
    Ok(tensor_raw(m, n).minimize().0)
}

/// f ⊗ N between the raw tensor presentations.
pub(crate) fn tensor_map(f: &ModuleMap, n: &PresentedModule) -> ModuleMap {
    let nn = n.ngens();
    let ns = f.source.ngens();
    let nt = f.target.ngens();
    let mut matrix = Vec::with_capacity(ns * nn);
    for s in 0..ns {
        for j in 0..nn {
            let mut c = vec![Poly::zero(); nt * nn];
            for t in 0..nt {
                c[t * nn + j] = f.matrix[s][t].clone();
            }
            matrix.push(c);
        }
    }
    ModuleMap::raw(tensor_raw(&f.source, n), tensor_raw(&f.target, n), matrix, f.shift)
}

/// Hom(F, N) for a free module F = ⊕ R(-a_i), presented as ⊕ N(a_i);
/// generator (i, j) has index `i * N.ngens() + j`.
pub(crate) fn hom_free_raw(f_degs: &[i32], n: &PresentedModule) -> PresentedModule {
    let dual = PresentedModule::free(n.ring.clone(), f_degs.iter().map(|d| -d).collect());
    tensor_raw(&dual, n)
}

/// Hom(φ, N): Hom(F_t, N) → Hom(F_s, N) for a map φ: F_s → F_t of free modules.
pub(crate) fn hom_free_map(phi: &ModuleMap, n: &PresentedModule) -> ModuleMap {
    let nn = n.ngens();
    let ns = phi.source.ngens();
    let nt = phi.target.ngens();
    let src = hom_free_raw(&phi.target.degrees, n);
    let tgt = hom_free_raw(&phi.source.degrees, n);
    let mut matrix = Vec::with_capacity(nt * nn);
    for t in 0..nt {
        for j in 0..nn {
            let mut c = vec![Poly::zero(); ns * nn];
            for s in 0..ns {
                c[s * nn + j] = phi.matrix[s][t].clone();
            }
            matrix.push(c);
        }
    }
    ModuleMap::raw(src, tgt, matrix, -phi.shift)
}

/// The presentation map F_1 → F_0 of M (relations as a map of free modules).
pub(crate) fn presentation_map(m: &PresentedModule) -> ModuleMap {
    let ring = m.ring.clone();
    let rel_degs: Vec<i32> =
        m.relations.iter().map(|c| column_degree(c, &m.degrees).ok().flatten().unwrap_or(0)).collect();
    let f0 = PresentedModule::free(ring.clone(), m.degrees.clone());
    let f1 = PresentedModule::free(ring, rel_degs);
    ModuleMap::raw(f1, f0, m.relations.clone(), 0)
}

/// Hom(M, N) with its inclusion into Hom(F_0(M), N) = ⊕ N(a_i).
pub fn hom_with_inclusion(m: &PresentedModule, n: &PresentedModule) -> Result<(PresentedModule, ModuleMap)> {
    if !same_ring(&m.ring, &n.ring) {
        return Err(Error::input("Hom of modules over different rings"));
    }
    let pres = presentation_map(m);
    hom_free_map(&pres, n).kernel()
}

pub fn hom(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    Ok(hom_with_inclusion(m, n)?.0)
}

/// M* = Hom(M, R) together with the matrix U whose columns express the
/// generators of M* as functionals on the generators of M.
pub fn dual_with_inclusion(m: &PresentedModule) -> Result<(PresentedModule, ModuleMap)> {
    let r = PresentedModule::free(m.ring.clone(), vec![0]);
    hom_with_inclusion(m, &r)
}

pub fn dual(m: &PresentedModule) -> Result<PresentedModule> {
    Ok(dual_with_inclusion(m)?.0)
}

/// The evaluation map M → M**.
pub fn evaluation_map(m: &PresentedModule) -> Result<ModuleMap> {
    let (ms, u) = dual_with_inclusion(m)?;
    let (mss, w) = dual_with_inclusion(&ms)?;
    let lifter = w.lifter()?;
    let ring = m.ring.clone();
    let mut matrix = Vec::with_capacity(m.ngens());
    for i in 0..m.ngens() {
        // ev(e_i) is the functional u_k ↦ u_k(e_i).
        let v: Vec<Poly> = u.matrix.iter().map(|col| col[i].clone()).collect();
        let c = if is_zero_col(&v) {
            vec![Poly::zero(); mss.ngens()]
        } else {
            lifter
                .lift(&v)
                .map(|c| reduce_col(&ring, &c))
                .ok_or_else(|| Error::internal("evaluation does not land in the double dual"))?
        };
        matrix.push(c);
    }
    Ok(ModuleMap::raw(m.clone(), mss, matrix, 0))
}

/// ann(M) = ker(R → ⊕_i M(a_i), 1 ↦ (e_1, ..., e_n)).
pub fn annihilator(m: &PresentedModule) -> Result<Vec<Poly>> {
    let ring = m.ring.clone();
    if m.is_zero() {
        return Ok(vec![Poly::one()]);
    }
    let n = m.ngens();
    let mut target = PresentedModule::free(ring.clone(), Vec::new());
    for i in 0..n {
        target = target.direct_sum(&m.twist(m.degrees[i]));
    }
    let mut col = vec![Poly::zero(); n * n];
    for i in 0..n {
        col[i * n + i] = Poly::one();
    }
    let source = PresentedModule::free(ring.clone(), vec![0]);
    let map = ModuleMap::raw(source, target, vec![col], 0);
    let (gens, _) = map.kernel_generators()?;
    let cols: Columns = gens;
    let degs: Vec<i32> = cols.iter().map(|c| c[0].homogeneous_degree().unwrap_or(0) as i32).collect();
    let keep = minimal_subset(ring.field(), ring.nvars(), &[0], &[], &cols, &degs, ring.ideal_gens())?;
    Ok(keep.into_iter().map(|k| cols[k][0].clone()).collect())
}

/// p ∈ Supp(M) ⟺ ann(M) ⊆ p.
pub fn support_contains(m: &PresentedModule, p: &PrimeIdeal) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let ann = annihilator(m)?;
    m.ring.ideal_contained_in(&ann, p)
}

/// Krull dimension of M (dimension of R/ann M); `None` for the zero module.
pub fn module_dim(m: &PresentedModule) -> Result<Option<usize>> {
    if m.is_zero() {
        return Ok(None);
    }
    m.ring.dim_over(&annihilator(m)?)
}

/// Exactness flag of a short exact sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProperFlag {
    ProperByFinitePd,
    Unchecked,
}

/// 0 → left → middle → right → 0.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
    pub proper: ProperFlag,
}

impl ShortExactSequence {
    /// Checks injectivity, surjectivity and ker = im; fails with an internal
    /// error naming the broken condition.
    pub fn new(inclusion: ModuleMap, projection: ModuleMap) -> Result<Self> {
        let seq = ShortExactSequence { inclusion, projection, proper: ProperFlag::Unchecked };
        seq.verify()?;
        Ok(seq)
    }

    pub fn left(&self) -> &PresentedModule {
        &self.inclusion.source
    }

    pub fn middle(&self) -> &PresentedModule {
        &self.inclusion.target
    }

    pub fn right(&self) -> &PresentedModule {
        &self.projection.target
    }

    pub fn verify(&self) -> Result<()> {
        if !self.inclusion.is_injective()? {
            return Err(Error::internal("left map of the sequence is not injective"));
        }
        if !self.projection.is_surjective() {
            return Err(Error::internal("right map of the sequence is not surjective"));
        }
        if !self.projection.compose_after(&self.inclusion).is_zero() {
            return Err(Error::internal("composite of the sequence maps is nonzero"));
        }
        let (_, kinc) = self.projection.kernel()?;
        for col in &kinc.matrix {
            if self.inclusion.lift(col)?.is_none() {
                return Err(Error::internal("kernel of the projection exceeds the image of the inclusion"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::AmbientRing;

    fn node() -> Arc<QuotientRing> {
        let s = AmbientRing::new(&["x", "y"], 5).unwrap();
        let xy = s.parse("x*y").unwrap();
        Arc::new(QuotientRing::new(s, &[xy], false).unwrap())
    }

    fn poly(r: &QuotientRing, s: &str) -> Poly {
        r.parse(s).unwrap()
    }

    #[test]
    fn hilbert_functions() {
        let r = node();
        let rr = PresentedModule::free(r.clone(), vec![0]);
        assert_eq!(rr.hilbert_function(3), vec![1, 2, 2, 2]);
        assert_eq!(PresentedModule::residue_field(r.clone()).hilbert_function(3), vec![1, 0, 0, 0]);
        assert_eq!(PresentedModule::maximal_ideal(r.clone()).hilbert_function(3), vec![0, 2, 2, 2]);
    }

    #[test]
    fn unit_relations_are_pruned() {
        let r = node();
        let m = PresentedModule::coker(r.clone(), vec![0, 0], vec![vec![Poly::one(), poly(&r, "0")]]).unwrap();
        assert_eq!(m.ngens(), 1);
        assert!(m.relations().is_empty());
        let id = PresentedModule::coker(r.clone(), vec![0], vec![vec![Poly::one()]]).unwrap();
        assert!(id.is_zero());
    }

    #[test]
    fn kernel_of_multiplication_by_x() {
        let r = node();
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let f = ModuleMap::new(rr.clone(), rr.clone(), vec![vec![poly(&r, "x")]], 1).unwrap();
        let (k, inc) = f.kernel().unwrap();
        assert_eq!(k.degrees(), &[1]);
        assert_eq!(k.hilbert_function(4), vec![0, 1, 1, 1, 1]);
        assert_eq!(r.render(&inc.matrix[0][0]), "y");
        let (k, _) = ModuleMap::identity(&rr).kernel().unwrap();
        assert!(k.is_zero());
        let (k, _) = ModuleMap::zero(&rr, &rr, 0).kernel().unwrap();
        assert_eq!(k.hilbert_function(3), rr.hilbert_function(3));
    }

    #[test]
    fn tensor_examples() {
        let r = node();
        let a = PresentedModule::cyclic(r.clone(), &[poly(&r, "x")], 0).unwrap();
        let b = PresentedModule::cyclic(r.clone(), &[poly(&r, "y")], 0).unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.hilbert_function(3), vec![1, 0, 0, 0]);
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(tensor(&k, &k).unwrap().hilbert_function(2), vec![1, 0, 0]);
        let rr = PresentedModule::free(r.clone(), vec![0]);
        assert_eq!(tensor(&rr, &a).unwrap().hilbert_function(4), a.hilbert_function(4));
    }

    #[test]
    fn hom_and_duals() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        assert!(dual(&k).unwrap().is_zero());
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let d = dual(&rr).unwrap();
        assert_eq!(d.hilbert_function(3), rr.hilbert_function(3));
        let m = PresentedModule::maximal_ideal(r.clone());
        let ms = dual(&m).unwrap();
        assert_eq!(ms.mu(), 2);
        let a = PresentedModule::cyclic(r.clone(), &[poly(&r, "x")], 0).unwrap();
        assert_eq!(hom(&rr, &a).unwrap().hilbert_function(4), a.hilbert_function(4));
    }

    #[test]
    fn evaluation_maps() {
        let r = node();
        let rr = PresentedModule::free(r.clone(), vec![0]);
        assert!(evaluation_map(&rr).unwrap().is_isomorphism().unwrap());
        let a = PresentedModule::cyclic(r.clone(), &[poly(&r, "x")], 0).unwrap();
        assert!(evaluation_map(&a).unwrap().is_isomorphism().unwrap());
        let k = PresentedModule::residue_field(r.clone());
        assert!(!evaluation_map(&k).unwrap().is_injective().unwrap());
        let f = PresentedModule::free(r.clone(), vec![0, 2, -1]);
        assert!(evaluation_map(&f).unwrap().is_isomorphism().unwrap());
    }

    #[test]
    fn annihilators_and_support() {
        let r = node();
        let rr = PresentedModule::free(r.clone(), vec![0]);
        assert!(annihilator(&rr).unwrap().is_empty());
        let a = PresentedModule::cyclic(r.clone(), &[poly(&r, "x")], 0).unwrap();
        let ann: Vec<String> = annihilator(&a).unwrap().iter().map(|p| r.render(p)).collect();
        assert_eq!(ann, vec!["x"]);
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(annihilator(&k).unwrap().len(), 2);
        let s = r.ambient().clone();
        let py = PrimeIdeal::declared(&r, "(y)", &[s.parse("y").unwrap()]).unwrap();
        assert!(!support_contains(&a, &py).unwrap());
        assert!(support_contains(&rr, &py).unwrap());
        assert!(support_contains(&k, &r.maximal_ideal()).unwrap());
    }

    #[test]
    fn short_exact_sequence_checks() {
        let r = node();
        // 0 → R/(x)(-1) --y--> R → R/(y) → 0
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let a = PresentedModule::cyclic(r.clone(), &[poly(&r, "x")], 1).unwrap();
        let b = PresentedModule::cyclic(r.clone(), &[poly(&r, "y")], 0).unwrap();
        let inc = ModuleMap::new(a.clone(), rr.clone(), vec![vec![poly(&r, "y")]], 0).unwrap();
        let proj = ModuleMap::new(rr.clone(), b.clone(), vec![vec![Poly::one()]], 0).unwrap();
        let ses = ShortExactSequence::new(inc, proj).unwrap();
        let h = |m: &PresentedModule| m.hilbert_function(5);
        let sum: Vec<usize> = h(ses.left()).iter().zip(h(ses.right())).map(|(a, b)| a + b).collect();
        assert_eq!(sum, h(ses.middle()));
        // The wrong inclusion (by x) is rejected.
        let bad = ModuleMap::new(a, rr, vec![vec![poly(&r, "x")]], 0);
        assert!(bad.is_err());
    }
}
