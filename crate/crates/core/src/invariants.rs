//! The pair invariants q, s, t, the S̃_k condition, and verifiers that
//! evaluate the hypotheses and conclusion of each result on a concrete pair.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgmod::{annihilator, dual, module_dim, support_contains, tensor, PresentedModule};
use crate::gtheory::{
    approximation_les, complete_resolution, cone_homology, gtor_table, tate_les, tate_tor_table,
    tate_vanishing_nonpositive, GAnalysis, TateVanishing,
};
use crate::polyring::Poly;
use crate::quotient::{PrimeIdeal, QuotientRing};
use crate::resolve::{
    certified_projective_dimension, depth, depth_at_prime, q_invariant, tor_table, Certainty, Certified, Extended,
    HomologyTable,
};

/// Bounds that govern how far each computation is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    pub tor_bound: usize,
    pub tate_window: i32,
    pub max_degree: i32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { tor_bound: 12, tate_window: 8, max_degree: 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimeContribution {
    pub prime: String,
    pub declared: bool,
    pub depth_ring: i64,
    pub depth_m: i64,
    pub depth_n: i64,
    pub value: i64,
}

/// t(M, N) over the recorded candidate primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TInvariant {
    pub value: i64,
    pub exactness: Exactness,
    pub primes_used: Vec<String>,
    pub contributions: Vec<PrimeContribution>,
    /// Only homogeneous primes are candidates.
    pub homogeneous_primes_only: bool,
}

fn free_rank_one(ring: &Arc<QuotientRing>) -> PresentedModule {
    PresentedModule::free(ring.clone(), vec![0])
}

/// {m} ∪ minimal primes of I + J ∪ declared primes containing I + J, and
/// whether the minimal primes were enumerated rather than declared.
fn candidate_primes(ring: &QuotientRing, j: &[Poly], declared: &[PrimeIdeal]) -> Result<(Vec<PrimeIdeal>, bool)> {
    let mut out = vec![ring.maximal_ideal()];
    let certified = match ring.minimal_primes_over(j, None) {
        Ok(ps) => {
            out.extend(ps);
            true
        }
        Err(Error::PrimeEnumerationUnavailable(msg)) => {
            if declared.is_empty() {
                return Err(Error::PrimeEnumerationUnavailable(msg));
            }
            false
        }
        Err(e) => return Err(e),
    };
    for p in declared {
        if ring.ideal_contained_in(j, p)? {
            out.push(p.clone());
        }
    }
    let mut unique: Vec<PrimeIdeal> = Vec::new();
    for p in out {
        let same = |q: &PrimeIdeal| {
            q.generators.len() == p.generators.len()
                && ring.ideal_contained_in(&q.generators, &p).unwrap_or(false)
                && ring.ideal_contained_in(&p.generators, q).unwrap_or(false)
        };
        if !unique.iter().any(same) {
            unique.push(p);
        }
    }
    Ok((unique, certified))
}

fn finite_depth(e: Extended, what: &str) -> Result<i64> {
    e.finite().ok_or_else(|| Error::internal(format!("{what} has infinite depth at a prime of its support")))
}

/// t(M, N) = sup{depth R_p − depth M_p − depth N_p : p ∈ Supp(M ⊗ N)}.
pub fn t_invariant(m: &PresentedModule, n: &PresentedModule, declared: &[PrimeIdeal]) -> Result<TInvariant> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::input("t is defined for nonzero modules"));
    }
    let ring = m.ring().clone();
    let mut ann = annihilator(m)?;
    ann.extend(annihilator(n)?);
    let (cands, certified) = candidate_primes(&ring, &ann, declared)?;
    let mn = tensor(m, n)?;
    let r = free_rank_one(&ring);
    let mut contributions = Vec::new();
    for p in &cands {
        if !support_contains(&mn, p)? {
            continue;
        }
        let depth_ring = finite_depth(depth_at_prime(&r, p)?, "R")?;
        let depth_m = finite_depth(depth_at_prime(m, p)?, "M")?;
        let depth_n = finite_depth(depth_at_prime(n, p)?, "N")?;
        contributions.push(PrimeContribution {
            prime: p.label.clone(),
            declared: p.declared,
            depth_ring,
            depth_m,
            depth_n,
            value: depth_ring - depth_m - depth_n,
        });
    }
    let value =
        contributions.iter().map(|c| c.value).max().ok_or_else(|| Error::internal("M ⊗ N has empty support"))?;
    let exact = certified && module_dim(&mn)?.is_some_and(|d| d <= 1);
    Ok(TInvariant {
        value,
        exactness: if exact { Exactness::Exact } else { Exactness::LowerBound },
        primes_used: contributions.iter().map(|c| c.prime.clone()).collect(),
        contributions,
        homogeneous_primes_only: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SerreTilde {
    pub k: i64,
    pub holds: bool,
    pub exactness: Exactness,
    pub primes_used: Vec<String>,
    pub failing_prime: Option<String>,
}

impl SerreTilde {
    /// Certified answer: a failure is always certain, success only when the
    /// candidate primes exhaust the support.
    pub fn certified(&self) -> Option<bool> {
        match (self.holds, self.exactness) {
            (false, _) => Some(false),
            (true, Exactness::Exact) => Some(true),
            (true, Exactness::LowerBound) => None,
        }
    }
}

/// depth M_p ≥ min{k, depth R_p} for the candidate primes of Supp M.
pub fn serre_tilde_check(m: &PresentedModule, k: i64, declared: &[PrimeIdeal]) -> Result<SerreTilde> {
    if k < 0 {
        return Err(Error::input("S̃_k needs k ≥ 0"));
    }
    if m.is_zero() {
        return Err(Error::input("S̃_k of the zero module"));
    }
    let ring = m.ring().clone();
    let (cands, certified) = candidate_primes(&ring, &annihilator(m)?, declared)?;
    let r = free_rank_one(&ring);
    let mut used = Vec::new();
    let mut failing = None;
    for p in &cands {
        if !support_contains(m, p)? {
            continue;
        }
        used.push(p.label.clone());
        let dr = finite_depth(depth_at_prime(&r, p)?, "R")?;
        let dm = finite_depth(depth_at_prime(m, p)?, "M")?;
        if dm < k.min(dr) && failing.is_none() {
            failing = Some(p.label.clone());
        }
    }
    let exact = certified && module_dim(m)?.is_some_and(|d| d <= 1);
    Ok(SerreTilde {
        k,
        holds: failing.is_none(),
        exactness: if exact { Exactness::Exact } else { Exactness::LowerBound },
        primes_used: used,
        failing_prime: failing,
    })
}

/// Depth of a table entry; +∞ for the zero module.
pub fn depth_of_homology_entry(table: &HomologyTable, index: i32) -> Result<Extended> {
    let e = table.entry(index).ok_or_else(|| Error::input(format!("index {index} is not in the table")))?;
    depth(&e.module)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    #[serde(rename = "P1.1")]
    P1_1,
    #[serde(rename = "T1.2-upper")]
    T1_2Upper,
    #[serde(rename = "T1.2-eq")]
    T1_2Eq,
    #[serde(rename = "T1.3")]
    T1_3,
    #[serde(rename = "T1.4A")]
    T1_4A,
    #[serde(rename = "T1.4B")]
    T1_4B,
    #[serde(rename = "P1.5")]
    P1_5,
    #[serde(rename = "AB")]
    AuslanderBridger,
    #[serde(rename = "T2.2b")]
    T2_2b,
    #[serde(rename = "T2.2d")]
    T2_2d,
    #[serde(rename = "T2.2e")]
    T2_2e,
    #[serde(rename = "T2.3")]
    T2_3,
    #[serde(rename = "P2.5")]
    P2_5,
    #[serde(rename = "GolodRemark")]
    GolodRemark,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::P1_1,
        TheoremId::T1_2Upper,
        TheoremId::T1_2Eq,
        TheoremId::T1_3,
        TheoremId::T1_4A,
        TheoremId::T1_4B,
        TheoremId::P1_5,
        TheoremId::AuslanderBridger,
        TheoremId::T2_2b,
        TheoremId::T2_2d,
        TheoremId::T2_2e,
        TheoremId::T2_3,
        TheoremId::P2_5,
        TheoremId::GolodRemark,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::P1_1 => "P1.1",
            TheoremId::T1_2Upper => "T1.2-upper",
            TheoremId::T1_2Eq => "T1.2-eq",
            TheoremId::T1_3 => "T1.3",
            TheoremId::T1_4A => "T1.4A",
            TheoremId::T1_4B => "T1.4B",
            TheoremId::P1_5 => "P1.5",
            TheoremId::AuslanderBridger => "AB",
            TheoremId::T2_2b => "T2.2b",
            TheoremId::T2_2d => "T2.2d",
            TheoremId::T2_2e => "T2.2e",
            TheoremId::T2_3 => "T2.3",
            TheoremId::P2_5 => "P2.5",
            TheoremId::GolodRemark => "GolodRemark",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown result id {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConclusionStatus {
    Holds,
    Fails,
    Vacuous,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HypothesisCheck {
    pub name: String,
    pub status: HypothesisStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictRecord {
    pub theorem_id: TheoremId,
    pub instance: String,
    pub hypotheses_checked: Vec<HypothesisCheck>,
    /// Candidate extra hypotheses recorded alongside, never gating the verdict.
    pub side_conditions: Vec<HypothesisCheck>,
    pub conclusion_status: ConclusionStatus,
    pub witnesses: Vec<Witness>,
}

struct Draft {
    id: TheoremId,
    instance: String,
    hypotheses: Vec<HypothesisCheck>,
    side: Vec<HypothesisCheck>,
    witnesses: Vec<Witness>,
}

fn check(name: &str, r: Result<(bool, String)>) -> HypothesisCheck {
    let (status, detail) = match r {
        Ok((true, d)) => (HypothesisStatus::Holds, d),
        Ok((false, d)) => (HypothesisStatus::Fails, d),
        Err(e) => (HypothesisStatus::Undetermined, e.to_string()),
    };
    HypothesisCheck { name: name.into(), status, detail }
}

fn undetermined(name: &str, detail: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck { name: name.into(), status: HypothesisStatus::Undetermined, detail: detail.into() }
}

impl Draft {
    fn hyp(&mut self, name: &str, r: Result<(bool, String)>) -> bool {
        let c = check(name, r);
        let ok = c.status == HypothesisStatus::Holds;
        self.hypotheses.push(c);
        ok
    }

    fn side(&mut self, name: &str, r: Result<(bool, String)>) {
        self.side.push(check(name, r));
    }

    fn push(&mut self, c: HypothesisCheck) {
        self.hypotheses.push(c);
    }

    fn witness(&mut self, name: &str, value: impl fmt::Display) {
        self.witnesses.push(Witness { name: name.into(), value: value.to_string() });
    }

    fn ready(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status == HypothesisStatus::Holds)
    }

    /// Evaluates the conclusion only when every hypothesis holds.
    fn finish(mut self, conclusion: impl FnOnce(&mut Draft) -> Result<Option<bool>>) -> VerdictRecord {
        let status = if !self.ready() {
            ConclusionStatus::Vacuous
        } else {
            match conclusion(&mut self) {
                Ok(Some(true)) => ConclusionStatus::Holds,
                Ok(Some(false)) => ConclusionStatus::Fails,
                Ok(None) => ConclusionStatus::Undetermined,
                Err(e) => {
                    self.witness("error", e);
                    ConclusionStatus::Undetermined
                }
            }
        };
        VerdictRecord {
            theorem_id: self.id,
            instance: self.instance,
            hypotheses_checked: self.hypotheses,
            side_conditions: self.side,
            conclusion_status: status,
            witnesses: self.witnesses,
        }
    }
}

fn cached<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

fn render_dims(dims: &BTreeMap<i32, usize>) -> String {
    if dims.is_empty() {
        return "0".into();
    }
    dims.iter().map(|(d, v)| format!("{v}@{d}")).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Depths {
    pub ring: i64,
    pub m: Extended,
    pub n: Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProjectiveDimensions {
    pub m: Certified,
    pub n: Certified,
}

/// Everything known about one pair, with certainty flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "N")]
    pub n: String,
    pub q: Certified,
    pub s: Option<i64>,
    pub t: Option<TInvariant>,
    pub t_error: Option<String>,
    pub depths: Depths,
    pub gdim: Option<i64>,
    pub gdim_error: Option<String>,
    pub pd: ProjectiveDimensions,
    pub mu: BTreeMap<String, usize>,
    pub tate_vanishing: TateVanishing,
    /// q = t, when both are certified.
    pub dependency_formula: Option<bool>,
    /// depth M + depth N = depth R + depth GTor_s − s, when its hypotheses are certified.
    pub depth_formula: Option<bool>,
}

/// Lazily computed invariants of a pair (M, N) over one ring.
pub struct PairAnalysis {
    pub m_label: String,
    pub n_label: String,
    m: PresentedModule,
    n: PresentedModule,
    declared: Vec<PrimeIdeal>,
    bounds: Bounds,
    g: GAnalysis,
    gtor: OnceLock<Result<HomologyTable>>,
    q: OnceLock<Result<(Certified, HomologyTable)>>,
    t: OnceLock<Result<TInvariant>>,
    depth_m: OnceLock<Result<Extended>>,
    depth_n: OnceLock<Result<Extended>>,
    pd_m: OnceLock<Result<Certified>>,
    pd_n: OnceLock<Result<Certified>>,
    tate: OnceLock<TateVanishing>,
}

impl PairAnalysis {
    pub fn new(
        (m_label, m): (&str, &PresentedModule),
        (n_label, n): (&str, &PresentedModule),
        declared: &[PrimeIdeal],
        bounds: Bounds,
    ) -> Result<Self> {
        if m.ring() != n.ring() {
            return Err(Error::input(format!("{m_label} and {n_label} live over different rings")));
        }
        if m.is_zero() || n.is_zero() {
            return Err(Error::input("modules of a pair must be nonzero"));
        }
        Ok(PairAnalysis {
            m_label: m_label.into(),
            n_label: n_label.into(),
            m: m.clone(),
            n: n.clone(),
            declared: declared.to_vec(),
            bounds,
            g: GAnalysis::new(m.clone()),
            gtor: OnceLock::new(),
            q: OnceLock::new(),
            t: OnceLock::new(),
            depth_m: OnceLock::new(),
            depth_n: OnceLock::new(),
            pd_m: OnceLock::new(),
            pd_n: OnceLock::new(),
            tate: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.m.ring()
    }

    pub fn m(&self) -> &PresentedModule {
        &self.m
    }

    pub fn n(&self) -> &PresentedModule {
        &self.n
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn analysis(&self) -> &GAnalysis {
        &self.g
    }

    pub fn instance(&self) -> String {
        format!("({}, {})", self.m_label, self.n_label)
    }

    pub fn gdim(&self) -> Result<i64> {
        Ok(self.g.gdim()?.value)
    }

    pub fn gtor(&self) -> Result<&HomologyTable> {
        cached(&self.gtor, || gtor_table(self.g.proper_resolution()?, &self.n, self.bounds.max_degree))
    }

    pub fn s(&self) -> Result<i64> {
        Ok(crate::gtheory::s_invariant(self.gtor()?))
    }

    pub fn q(&self) -> Result<&(Certified, HomologyTable)> {
        cached(&self.q, || q_invariant(&self.m, &self.n, self.bounds.tor_bound, self.bounds.max_degree))
    }

    pub fn t(&self) -> Result<&TInvariant> {
        cached(&self.t, || t_invariant(&self.m, &self.n, &self.declared))
    }

    pub fn depth_m(&self) -> Result<Extended> {
        cached(&self.depth_m, || depth(&self.m)).copied()
    }

    pub fn depth_n(&self) -> Result<Extended> {
        cached(&self.depth_n, || depth(&self.n)).copied()
    }

    pub fn pd_m(&self) -> Result<Certified> {
        cached(&self.pd_m, || Ok(certified_projective_dimension(&self.m)?.0)).copied()
    }

    pub fn pd_n(&self) -> Result<Certified> {
        cached(&self.pd_n, || Ok(certified_projective_dimension(&self.n)?.0)).copied()
    }

    pub fn tate_vanishing(&self) -> &TateVanishing {
        self.tate.get_or_init(|| {
            tate_vanishing_nonpositive(&self.m, &self.n, self.bounds.tate_window, self.bounds.max_degree)
        })
    }

    fn depth_ring(&self) -> i64 {
        self.ring().depth() as i64
    }

    fn draft(&self, id: TheoremId) -> Draft {
        Draft { id, instance: self.instance(), hypotheses: Vec::new(), side: Vec::new(), witnesses: Vec::new() }
    }

    fn gdim_hypothesis(&self, d: &mut Draft) -> bool {
        d.hyp("G-dim M finite", self.gdim().map(|g| (true, format!("G-dim M = {g}"))))
    }

    fn tate_hypothesis(&self) -> Result<(bool, String)> {
        match self.tate_vanishing() {
            TateVanishing::Verified { reason } => Ok((true, reason.clone())),
            TateVanishing::Refuted { witness } => Ok((false, format!("Tate Tor_{witness}(M, N) ≠ 0"))),
            TateVanishing::Unknown { reason } => Err(Error::WindowInsufficient(reason.clone())),
        }
    }

    fn q_finite(&self) -> Result<(bool, String)> {
        let q = self.q()?.0;
        match (q.value, q.certainty) {
            (Extended::Finite(v), Certainty::Exact) => Ok((true, format!("q = {v}"))),
            (Extended::Infinity, Certainty::Exact) => Ok((false, "q = inf".into())),
            (v, _) => Err(Error::WindowInsufficient(format!("q ≥ {v} is not certified"))),
        }
    }

    /// GTor_i(M, N) through the cone of the comparison map, i ≥ 2.
    fn cone_gtor(&self, n: &PresentedModule, i: i32) -> Result<BTreeMap<i32, usize>> {
        let cr = complete_resolution(&self.m, (-1, i + 1))?;
        cone_homology(&cr, n, i, self.bounds.max_degree)
    }

    /// Verdicts for s ≤ t and for the equality reading record whether the
    /// candidate side hypotheses hold.
    fn side_conditions(&self, d: &mut Draft) {
        d.side("Tate Tor_i(M, N) = 0 for all i ≤ 0", self.tate_hypothesis());
        d.side("q(M, N) < ∞", self.q_finite());
    }

    /// Compares a target bound against t; a lower-bound t only certifies
    /// failures.
    fn t_at_most(&self, d: &mut Draft, bound: i64) -> Result<Option<bool>> {
        let t = self.t()?;
        d.witness("t", format!("{} ({:?}, primes {})", t.value, t.exactness, t.primes_used.join(" ")));
        Ok(match t.exactness {
            Exactness::Exact => Some(t.value <= bound),
            Exactness::LowerBound if t.value > bound => Some(false),
            Exactness::LowerBound => None,
        })
    }

    pub fn verify(&self, id: TheoremId, params: &BTreeMap<String, i64>) -> VerdictRecord {
        let mut d = self.draft(id);
        match id {
            TheoremId::P1_1 => {
                self.gdim_hypothesis(&mut d);
                self.side_conditions(&mut d);
                d.finish(|d| {
                    let s = self.s()?;
                    d.witness("s", s);
                    self.t_at_least(d, s)
                })
            }
            TheoremId::T1_2Upper => {
                self.gdim_hypothesis(&mut d);
                d.finish(|d| {
                    let s = self.s()?;
                    d.witness("s", s);
                    self.t_at_most(d, if s == 0 { 1 } else { s })
                })
            }
            TheoremId::T1_2Eq => {
                self.gdim_hypothesis(&mut d);
                self.side_conditions(&mut d);
                d.finish(|d| {
                    let s = self.s()?;
                    let t = self.t()?;
                    d.witness("s", s);
                    d.witness("t", format!("{} ({:?})", t.value, t.exactness));
                    if t.exactness != Exactness::Exact {
                        return Ok(None);
                    }
                    Ok(Some(if t.value == 1 { s == 0 || s == 1 } else { s == t.value }))
                })
            }
            TheoremId::T1_3 => {
                self.gdim_hypothesis(&mut d);
                d.finish(|d| {
                    let r = self.gdim()?;
                    let table = self.gtor()?;
                    let above: Vec<i32> =
                        table.entries.iter().filter(|(&i, e)| i as i64 > r && !e.is_zero()).map(|(&i, _)| i).collect();
                    d.witness("r", r);
                    d.witness("proper resolution length", self.g.proper_resolution()?.length());
                    let i = (r as i32 + 1).max(2);
                    let mut ok = above.is_empty();
                    for j in i..=i + 1 {
                        let h = self.cone_gtor(&self.n, j)?;
                        d.witness(&format!("cone H_{j}"), render_dims(&h));
                        ok &= h.is_empty();
                    }
                    if r == 0 {
                        let top = table.entry(1).map(|e| e.is_zero()).unwrap_or(true);
                        d.witness("GTor_1 from the proper resolution", if top { "0" } else { "nonzero" });
                        ok &= top;
                    }
                    Ok(Some(ok))
                })
            }
            TheoremId::T1_4A => {
                let r = self.gdim();
                let gd_ok = self.gdim_hypothesis(&mut d);
                let k = match params.get("k") {
                    Some(&k) => Some(k),
                    None => r.as_ref().ok().map(|&r| self.largest_serre_k(r)),
                };
                match (k, gd_ok) {
                    (Some(k), true) => {
                        let r = *r.as_ref().unwrap();
                        d.hyp("k ≤ G-dim M", Ok((k <= r, format!("k = {k}, r = {r}"))));
                        let st = serre_tilde_check(&self.n, k, &self.declared);
                        d.hyp(
                            "N satisfies S̃_k",
                            st.and_then(|st| match st.certified() {
                                Some(b) => Ok((b, format!("primes {}", st.primes_used.join(" ")))),
                                None => Err(Error::FinitenessUndetermined(
                                    "candidate primes do not exhaust the support".into(),
                                )),
                            }),
                        );
                        d.witness("k", k);
                        d.finish(|d| {
                            let s = self.s()?;
                            d.witness("s", s);
                            Ok(Some(s <= r - k))
                        })
                    }
                    _ => {
                        d.push(undetermined("N satisfies S̃_k", "G-dim M or k unavailable"));
                        d.finish(|_| Ok(None))
                    }
                }
            }
            TheoremId::T1_4B => {
                if self.gdim_hypothesis(&mut d) {
                    let g = self.gdim().unwrap();
                    d.hyp(
                        "G-dim M ≤ depth N",
                        self.depth_n().map(|dn| (Extended::Finite(g) <= dn, format!("G-dim M = {g}, depth N = {dn}"))),
                    );
                    d.hyp("depth GTor_i ∈ {0, ∞} for 1 ≤ i ≤ G-dim M", self.gtor_depths_extreme(g));
                    d.hyp("Tate Tor_i(M, N) = 0 for all i ≤ 0", self.tate_hypothesis());
                }
                d.finish(|d| {
                    let s = self.s()?;
                    d.witness("s", s);
                    Ok(Some(s == 0))
                })
            }
            TheoremId::P1_5 => {
                let r = params.get("r").copied().unwrap_or(1);
                self.gdim_hypothesis(&mut d);
                d.hyp("r ≥ 1", Ok((r >= 1, format!("r = {r}"))));
                let ring = self.ring().clone();
                let k = PresentedModule::residue_field(ring);
                let sides = (|| -> Result<(bool, bool)> {
                    let g = self.gdim()?;
                    let pr = self.g.proper_resolution()?;
                    let table = gtor_table(pr, &k, self.bounds.max_degree)?;
                    let vanish = table.entry(r as i32 + 1).map(|e| e.is_zero()).unwrap_or(true);
                    Ok((g <= r, vanish))
                })();
                if let Ok((lhs, rhs)) = sides {
                    d.witness("G-dim M ≤ r", lhs);
                    d.witness(&format!("GTor_{}(M, k) = 0", r + 1), rhs);
                }
                d.finish(|d| {
                    let (lhs, rhs) = sides?;
                    if r + 1 >= 2 {
                        let h = self.cone_gtor(&k, r as i32 + 1)?;
                        d.witness(&format!("cone H_{}(M, k)", r + 1), render_dims(&h));
                        if h.is_empty() != rhs {
                            return Err(Error::internal("cone homology disagrees with the proper resolution"));
                        }
                    }
                    Ok(Some(lhs == rhs))
                })
            }
            TheoremId::AuslanderBridger => {
                self.gdim_hypothesis(&mut d);
                d.finish(|d| {
                    let gd = self.g.gdim()?;
                    let dm = self.depth_m()?.finite().expect("nonzero module");
                    d.witness("G-dim M", gd.value);
                    d.witness("depth M", dm);
                    d.witness("depth R", self.depth_ring());
                    if let Some(e) = gd.ext_sup {
                        d.witness("sup{i : Ext^i(M, R) ≠ 0}", e);
                    }
                    Ok(Some(gd.value + dm == self.depth_ring()))
                })
            }
            TheoremId::T2_2b => {
                let pds = self.pd_m().and_then(|a| Ok((a, self.pd_n()?)));
                d.hyp(
                    "min{pd M, pd N} < ∞",
                    pds.map(|(a, b)| {
                        (a.value.is_finite() || b.value.is_finite(), format!("pd M = {}, pd N = {}", a.value, b.value))
                    }),
                );
                self.gdim_hypothesis(&mut d);
                d.finish(|d| self.finite_pd_conclusion(d))
            }
            TheoremId::T2_2d => {
                self.gdim_hypothesis(&mut d);
                d.finish(|d| {
                    let les = approximation_les(self.g.proper_resolution()?, &self.n, self.bounds.max_degree)?;
                    d.witness("nodes checked", les.nodes_checked);
                    for f in &les.failures {
                        d.witness(&f.node, format!("degree {}: {}", f.degree, f.detail));
                    }
                    Ok(Some(les.holds()))
                })
            }
            TheoremId::T2_2e => {
                self.gdim_hypothesis(&mut d);
                d.finish(|d| {
                    let pr = self.g.proper_resolution()?;
                    let cr = complete_resolution(&self.m, (-1, pr.length() as i32 + 3))?;
                    let les = tate_les(&cr, pr, &self.n, self.bounds.max_degree)?;
                    d.witness("nodes checked", les.nodes_checked);
                    for f in &les.failures {
                        d.witness(&f.node, format!("degree {}: {}", f.degree, f.detail));
                    }
                    Ok(Some(les.holds()))
                })
            }
            TheoremId::T2_3 => {
                let ring = self.ring().clone();
                d.hyp(
                    "CI-dim M < ∞",
                    self.pd_m().map(|pd| {
                        if pd.value.is_finite() {
                            (true, "finite projective dimension".into())
                        } else if ring.is_hypersurface() {
                            (true, "hypersurface ring".into())
                        } else {
                            (false, "neither finite pd nor a hypersurface ring".into())
                        }
                    }),
                );
                // Only finite pd or a hypersurface certifies finite CI-dim.
                if let Some(h) = d.hypotheses.last_mut() {
                    if h.status == HypothesisStatus::Fails {
                        h.status = HypothesisStatus::Undetermined;
                    }
                }
                d.hyp("q(M, N) < ∞", self.q_finite());
                d.finish(|d| {
                    let q = self.q()?.0.value.finite().expect("certified finite");
                    d.witness("q", q);
                    let t = self.t()?;
                    d.witness("t", format!("{} ({:?})", t.value, t.exactness));
                    Ok(match t.exactness {
                        Exactness::Exact => Some(q == t.value),
                        Exactness::LowerBound if t.value > q => Some(false),
                        Exactness::LowerBound => None,
                    })
                })
            }
            TheoremId::P2_5 => {
                if self.gdim_hypothesis(&mut d) {
                    d.hyp("Tate Tor_i(M, N) = 0 for all i ≤ 0", self.tate_hypothesis());
                    d.hyp(
                        "s = 0 or depth GTor_s ≤ 1",
                        (|| {
                            let s = self.s()?;
                            if s == 0 {
                                return Ok((true, "s = 0".into()));
                            }
                            let dg = depth_of_homology_entry(self.gtor()?, s as i32)?;
                            Ok((dg <= Extended::Finite(1), format!("depth GTor_{s} = {dg}")))
                        })(),
                    );
                }
                d.finish(|d| self.depth_formula_holds(d))
            }
            TheoremId::GolodRemark => {
                let ring = self.ring().clone();
                d.hyp("Golod ring (declared)", Ok((ring.flags().golod_declared, String::new())));
                d.hyp("not a hypersurface", Ok((!ring.is_hypersurface(), String::new())));
                d.hyp("M admits a proper resolution", self.gdim().map(|g| (true, format!("G-dim M = {g}"))));
                d.finish(|d| {
                    let g = self.gtor()?;
                    let (q, tor) = self.q()?;
                    let s = self.s()?;
                    let mut same = true;
                    for i in 0..=self.bounds.tor_bound as i32 {
                        let a = g.entry(i).map(|e| e.dims.clone()).unwrap_or_default();
                        let b = tor.entry(i).map(|e| e.dims.clone()).unwrap_or_default();
                        if a != b {
                            d.witness(
                                &format!("index {i}"),
                                format!("GTor {} vs Tor {}", render_dims(&a), render_dims(&b)),
                            );
                            same = false;
                        }
                    }
                    d.witness("q", format!("{} ({:?})", q.value, q.certainty));
                    d.witness("s", s);
                    let t = self.t()?;
                    d.witness("t", format!("{} ({:?})", t.value, t.exactness));
                    if !same || q.value != Extended::Finite(s) {
                        return Ok(Some(false));
                    }
                    Ok(match t.exactness {
                        Exactness::Exact => Some(t.value == s),
                        Exactness::LowerBound if t.value > s => Some(false),
                        Exactness::LowerBound => None,
                    })
                })
            }
        }
    }

    fn t_at_least(&self, d: &mut Draft, s: i64) -> Result<Option<bool>> {
        let t = self.t()?;
        d.witness("t", format!("{} ({:?}, primes {})", t.value, t.exactness, t.primes_used.join(" ")));
        // A lower bound for t that already reaches s settles s ≤ t.
        Ok(match t.exactness {
            _ if s <= t.value => Some(true),
            Exactness::Exact => Some(false),
            Exactness::LowerBound => None,
        })
    }

    /// Largest k ≤ r with S̃_k certified for N; S̃_0 always holds.
    fn largest_serre_k(&self, r: i64) -> i64 {
        (1..=r)
            .rev()
            .find(|&k| serre_tilde_check(&self.n, k, &self.declared).ok().and_then(|s| s.certified()) == Some(true))
            .unwrap_or(0)
    }

    fn gtor_depths_extreme(&self, g: i64) -> Result<(bool, String)> {
        let table = self.gtor()?;
        let mut parts = Vec::new();
        let mut ok = true;
        for i in 1..=g as i32 {
            let dg = depth_of_homology_entry(table, i)?;
            ok &= dg == Extended::Finite(0) || dg == Extended::Infinity;
            parts.push(format!("depth GTor_{i} = {dg}"));
        }
        Ok((ok, parts.join(", ")))
    }

    fn finite_pd_conclusion(&self, d: &mut Draft) -> Result<Option<bool>> {
        let dm = self.bounds.max_degree;
        let w = self.bounds.tate_window;
        let cr = complete_resolution(&self.m, (-w, w))?;
        let (tate, _) = tate_tor_table(&cr, &self.n, dm)?;
        let nonzero: Vec<i32> = tate.entries.iter().filter(|(_, e)| !e.is_zero()).map(|(&i, _)| i).collect();
        d.witness("Tate window", format!("[{}, {}]", -w, w));
        let mut ok = nonzero.is_empty();
        if !ok {
            d.witness("nonzero Tate indices", format!("{nonzero:?}"));
        }
        let g = self.gtor()?;
        let tor = tor_table(&self.m, &self.n, self.bounds.tor_bound, dm)?;
        let mut compared = 0;
        for i in 0..=self.bounds.tor_bound as i32 {
            let a = g.entry(i).map(|e| e.dims.clone()).unwrap_or_default();
            let b = tor.entry(i).map(|e| e.dims.clone()).unwrap_or_default();
            compared += 1;
            if a != b {
                d.witness(&format!("index {i}"), format!("GTor {} vs Tor {}", render_dims(&a), render_dims(&b)));
                ok = false;
            }
        }
        d.witness("indices compared", compared);
        Ok(Some(ok))
    }

    fn depth_formula_holds(&self, d: &mut Draft) -> Result<Option<bool>> {
        let s = self.s()?;
        let dg = depth_of_homology_entry(self.gtor()?, s as i32)?.finite().expect("GTor_s is nonzero");
        let dm = self.depth_m()?.finite().expect("nonzero module");
        let dn = self.depth_n()?.finite().expect("nonzero module");
        let dr = self.depth_ring();
        d.witness("depth M + depth N", dm + dn);
        d.witness("depth R + depth GTor_s − s", dr + dg - s);
        Ok(Some(dm + dn == dr + dg - s))
    }

    pub fn report(&self) -> Result<InvariantReport> {
        let ring = self.ring().clone();
        let (q, _) = self.q()?.clone();
        let (s, gdim, gdim_error) = match self.gdim() {
            Ok(g) => (Some(self.s()?), Some(g), None),
            Err(e @ Error::FinitenessUndetermined(_)) => (None, None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        let (t, t_error) = match self.t() {
            Ok(t) => (Some(t.clone()), None),
            Err(e @ Error::PrimeEnumerationUnavailable(_)) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        let mut mu = BTreeMap::new();
        let mm = PresentedModule::maximal_ideal(ring.clone());
        for (label, module) in [(&self.m_label, &self.m), (&self.n_label, &self.n), (&"m".to_string(), &mm)] {
            mu.insert(label.clone(), module.mu());
            mu.insert(format!("{label}*"), dual(module)?.mu());
        }
        let dependency_formula = match (q.value, q.certainty, &t) {
            (Extended::Finite(v), Certainty::Exact, Some(t)) if t.exactness == Exactness::Exact => Some(v == t.value),
            _ => None,
        };
        let p25 = self.verify(TheoremId::P2_5, &BTreeMap::new());
        let depth_formula = match p25.conclusion_status {
            ConclusionStatus::Holds => Some(true),
            ConclusionStatus::Fails => Some(false),
            _ => None,
        };
        Ok(InvariantReport {
            m: self.m_label.clone(),
            n: self.n_label.clone(),
            q,
            s,
            t,
            t_error,
            depths: Depths { ring: self.depth_ring(), m: self.depth_m()?, n: self.depth_n()? },
            gdim,
            gdim_error,
            pd: ProjectiveDimensions { m: self.pd_m()?, n: self.pd_n()? },
            mu,
            tate_vanishing: self.tate_vanishing().clone(),
            dependency_formula,
            depth_formula,
        })
    }
}

/// Convenience wrapper around [`PairAnalysis::verify`].
pub fn verify_theorem(
    id: TheoremId,
    m: (&str, &PresentedModule),
    n: (&str, &PresentedModule),
    params: &BTreeMap<String, i64>,
    bounds: Bounds,
) -> Result<VerdictRecord> {
    Ok(PairAnalysis::new(m, n, &[], bounds)?.verify(id, params))
}

/// Convenience wrapper around [`PairAnalysis::report`].
pub fn dependency_report(
    m: (&str, &PresentedModule),
    n: (&str, &PresentedModule),
    declared: &[PrimeIdeal],
    bounds: Bounds,
) -> Result<InvariantReport> {
    PairAnalysis::new(m, n, declared, bounds)?.report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::AmbientRing;

    fn ring(vars: &[&str], ideal: &[&str], golod: bool) -> Arc<QuotientRing> {
        let s = AmbientRing::new(vars, 5).unwrap();
        let gens: Vec<Poly> = ideal.iter().map(|t| s.parse(t).unwrap()).collect();
        Arc::new(QuotientRing::new(s, &gens, golod).unwrap())
    }

    fn node() -> Arc<QuotientRing> {
        ring(&["x", "y"], &["x*y"], false)
    }

    fn cyc(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
        let g: Vec<Poly> = gens.iter().map(|t| r.parse(t).unwrap()).collect();
        PresentedModule::cyclic(r.clone(), &g, 0).unwrap()
    }

    fn small() -> Bounds {
        Bounds { tor_bound: 6, tate_window: 4, max_degree: 8 }
    }

    fn verdict(id: TheoremId, m: &PresentedModule, n: &PresentedModule, params: &[(&str, i64)]) -> VerdictRecord {
        let p = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        verify_theorem(id, ("M", m), ("N", n), &p, small()).unwrap()
    }

    #[test]
    fn t_values_over_the_node() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        let t = t_invariant(&k, &k, &[]).unwrap();
        assert_eq!((t.value, t.exactness), (1, Exactness::Exact));
        let t = t_invariant(&cyc(&r, &["x"]), &cyc(&r, &["y"]), &[]).unwrap();
        assert_eq!((t.value, t.exactness), (-1, Exactness::Exact));
        assert_eq!(t.primes_used, vec!["m".to_string()]);
        let free = PresentedModule::free(r.clone(), vec![0]);
        let t = t_invariant(&free, &free, &[]).unwrap();
        assert_eq!((t.value, t.exactness), (0, Exactness::Exact));
        assert_eq!(t.contributions.len(), 3);
    }

    #[test]
    fn serre_tilde_examples() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        assert!(serre_tilde_check(&k, 0, &[]).unwrap().holds);
        let st = serre_tilde_check(&k, 1, &[]).unwrap();
        assert_eq!(st.certified(), Some(false));
        let st = serre_tilde_check(&cyc(&r, &["y"]), 1, &[]).unwrap();
        assert_eq!(st.certified(), Some(true));
    }

    #[test]
    fn homology_entry_depths() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        let pr = crate::gtheory::proper_resolution(&k).unwrap();
        let t = gtor_table(&pr, &k, 8).unwrap();
        assert_eq!(depth_of_homology_entry(&t, 0).unwrap(), Extended::Finite(0));
        assert_eq!(depth_of_homology_entry(&t, 1).unwrap(), Extended::Infinity);
        let t = gtor_table(&pr, &cyc(&r, &["x^2 + y^2"]), 8).unwrap();
        assert_eq!(depth_of_homology_entry(&t, 1).unwrap(), Extended::Finite(0));
    }

    #[test]
    fn reports_over_the_node_and_the_plane() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        let rep = dependency_report(("k", &k), ("k", &k), &[], small()).unwrap();
        assert_eq!((rep.s, rep.gdim), (Some(0), Some(1)));
        assert_eq!(rep.t.as_ref().unwrap().value, 1);
        assert_eq!(rep.q.value, Extended::Infinity);
        assert_eq!(rep.mu["m*"], 2);
        let rep = dependency_report(("A", &cyc(&r, &["x"])), ("B", &cyc(&r, &["y"])), &[], small()).unwrap();
        assert_eq!((rep.s, rep.t.unwrap().value, rep.q.value), (Some(0), -1, Extended::Infinity));
        let s = ring(&["x", "y"], &[], false);
        let k = PresentedModule::residue_field(s);
        let rep = dependency_report(("k", &k), ("k", &k), &[], small()).unwrap();
        assert_eq!((rep.q.value, rep.s, rep.t.unwrap().value), (Extended::Finite(2), Some(2), 2));
        assert_eq!(rep.dependency_formula, Some(true));
    }

    #[test]
    fn verdicts_on_fixtures() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        let a = cyc(&r, &["x"]);
        let b = cyc(&r, &["y"]);
        let status = |v: VerdictRecord| v.conclusion_status;
        assert_eq!(status(verdict(TheoremId::T1_3, &a, &k, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T1_3, &k, &b, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::P1_5, &k, &k, &[("r", 1)])), ConclusionStatus::Holds);
        let zero = verdict(TheoremId::P1_5, &k, &k, &[("r", 0)]);
        assert_eq!(zero.conclusion_status, ConclusionStatus::Vacuous);
        assert!(zero.witnesses.iter().any(|w| w.name == "GTor_1(M, k) = 0" && w.value == "true"));
        assert!(zero.witnesses.iter().any(|w| w.name == "G-dim M ≤ r" && w.value == "false"));
        assert_eq!(status(verdict(TheoremId::T1_2Upper, &k, &k, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T1_2Eq, &a, &b, &[])), ConclusionStatus::Fails);
        assert_eq!(status(verdict(TheoremId::P1_1, &a, &b, &[])), ConclusionStatus::Fails);
        assert_eq!(status(verdict(TheoremId::AuslanderBridger, &k, &k, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T1_4A, &a, &b, &[("k", 0)])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T1_4B, &a, &b, &[])), ConclusionStatus::Vacuous);
        let n = cyc(&r, &["x^2 + y^2"]);
        assert_eq!(status(verdict(TheoremId::P2_5, &k, &n, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T2_2b, &k, &n, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T2_2d, &k, &n, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T2_2e, &k, &n, &[])), ConclusionStatus::Holds);
        assert_eq!(status(verdict(TheoremId::T2_3, &k, &n, &[])), ConclusionStatus::Holds);
    }

    #[test]
    fn golod_remark_on_a_declared_ring() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"], true);
        let free = PresentedModule::free(r.clone(), vec![0]);
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(verdict(TheoremId::GolodRemark, &free, &k, &[]).conclusion_status, ConclusionStatus::Holds);
        let v = verdict(TheoremId::GolodRemark, &k, &k, &[]);
        assert_eq!(v.conclusion_status, ConclusionStatus::Vacuous);
        assert_eq!(v.hypotheses_checked[2].status, HypothesisStatus::Undetermined);
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("T9.9".parse::<TheoremId>().is_err());
    }
}
