//! Minimal graded free resolutions, chain complexes, Tor and Ext tables,
//! depth, projective dimension and q(M, N).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fgmod::{
    hom_free_map, homology, presentation_map, support_contains, tensor_map, Columns, ModuleMap, PresentedModule,
};
use crate::groebner::raw_syzygies;
use crate::polyring::Poly;
use crate::quotient::{PrimeIdeal, QuotientRing};

/// Integer or +∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(i64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<i64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_i64(*v),
            Extended::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Exact,
    AtLeast,
    BoundedWindow,
}

/// A value together with how far it is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certified {
    pub value: Extended,
    pub certainty: Certainty,
}

impl Certified {
    pub fn exact(value: Extended) -> Self {
        Certified { value, certainty: Certainty::Exact }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum ResolutionEnd {
    /// The last computed free module is the last nonzero one.
    Finite,
    /// `d_{start+2} = d_start` with all twists raised by `shift`.
    Periodic { start: usize, shift: i32 },
    /// Stopped at the length bound.
    Truncated,
}

/// Minimal graded free resolution F of a module, possibly truncated.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: PresentedModule,
    twists: Vec<Vec<i32>>,
    maps: Vec<Columns>,
    end: ResolutionEnd,
}

impl Resolution {
    /// Resolution up to homological degree `length` (or to its end).
    pub fn compute(m: &PresentedModule, length: usize) -> Result<Self> {
        let (module, _, _) = m.minimize();
        let ring = module.ring().clone();
        let mut twists = vec![module.degrees().to_vec()];
        let mut maps: Vec<Columns> = Vec::new();
        let mut end = ResolutionEnd::Truncated;
        if module.ngens() == 0 {
            return Ok(Resolution { module, twists, maps, end: ResolutionEnd::Finite });
        }
        let pres = presentation_map(&module);
        if pres.matrix.is_empty() {
            end = ResolutionEnd::Finite;
        } else if length >= 1 {
            twists.push(pres.source.degrees().to_vec());
            maps.push(pres.matrix.clone());
        }
        while end == ResolutionEnd::Truncated && maps.len() < length {
            let i = maps.len(); // resolving d_i
            let syz = raw_syzygies(
                ring.field(),
                ring.nvars(),
                &twists[i - 1],
                &maps[i - 1],
                &twists[i],
                &[],
                ring.ideal_gens(),
            )?;
            if syz.is_empty() {
                end = ResolutionEnd::Finite;
                break;
            }
            twists.push(syz.iter().map(|(_, d)| *d).collect());
            maps.push(syz.into_iter().map(|(c, _)| c).collect());
            let i = maps.len();
            if i >= 3 {
                if let Some(shift) = periodic_shift(&twists, &maps, i) {
                    end = ResolutionEnd::Periodic { start: i - 2, shift };
                }
            }
        }
        let mut res = Resolution { module, twists, maps, end };
        if let ResolutionEnd::Periodic { .. } = res.end {
            while res.maps.len() < length {
                let i = res.maps.len() + 1;
                res.twists.push(res.twists_at(i));
                res.maps.push(res.map_at(i).clone());
            }
        }
        if res.end == ResolutionEnd::Truncated && res.maps.len() < length {
            return Err(Error::internal("resolution stopped early"));
        }
        Ok(res)
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.module.ring()
    }

    pub fn end(&self) -> ResolutionEnd {
        self.end
    }

    /// Highest index with an explicitly stored free module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Twists of F_i; periodic resolutions extend indefinitely.
    pub fn twists_at(&self, i: usize) -> Vec<i32> {
        if i < self.twists.len() {
            return self.twists[i].clone();
        }
        match self.end {
            ResolutionEnd::Periodic { start, shift } => {
                let base = start + (i - start) % 2;
                let k = ((i - base) / 2) as i32;
                self.twists[base].iter().map(|d| d + k * shift).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Matrix of d_i: F_i → F_{i-1}.
    fn map_at(&self, i: usize) -> &Columns {
        if i <= self.maps.len() {
            return &self.maps[i - 1];
        }
        match self.end {
            ResolutionEnd::Periodic { start, .. } => &self.maps[start + (i - start) % 2 - 1],
            _ => panic!("differential beyond a finite or truncated resolution"),
        }
    }

    /// Whether F_i is known (computed, beyond a finite end, or periodic).
    pub fn covers(&self, i: usize) -> bool {
        i <= self.maps.len() || !matches!(self.end, ResolutionEnd::Truncated)
    }

    /// d_i as a map of free modules; zero beyond a finite end.
    pub fn differential(&self, i: usize) -> ModuleMap {
        assert!(i >= 1);
        let ring = self.ring().clone();
        let src = PresentedModule::free(ring.clone(), self.twists_at(i));
        let tgt = PresentedModule::free(ring, self.twists_at(i - 1));
        if src.ngens() == 0 || tgt.ngens() == 0 {
            return ModuleMap::zero(&src, &tgt, 0);
        }
        ModuleMap::raw(src, tgt, self.map_at(i).clone(), 0)
    }

    /// Ranks of F_0, ..., F_len.
    pub fn betti_numbers(&self, len: usize) -> Vec<usize> {
        (0..=len).map(|i| self.twists_at(i).len()).collect()
    }

    pub fn projective_dimension(&self) -> Certified {
        match self.end {
            ResolutionEnd::Finite => {
                let pd = (0..self.twists.len()).rev().find(|&i| !self.twists[i].is_empty());
                Certified::exact(Extended::Finite(pd.map_or(-1, |p| p as i64)))
            }
            ResolutionEnd::Periodic { .. } => Certified::exact(Extended::Infinity),
            ResolutionEnd::Truncated => {
                Certified { value: Extended::Finite(self.maps.len() as i64), certainty: Certainty::AtLeast }
            }
        }
    }

    /// F_0 ← F_1 ← ... ← F_len as a complex of free modules.
    pub fn complex(&self, len: usize) -> Complex {
        let ring = self.ring().clone();
        let terms = (0..=len).map(|i| PresentedModule::free(ring.clone(), self.twists_at(i))).collect();
        let differentials = (1..=len).map(|i| self.differential(i)).collect();
        let period = match self.end {
            ResolutionEnd::Periodic { .. } => Some(2),
            _ => None,
        };
        Complex {
            lo: 0,
            terms,
            differentials,
            flags: ComplexFlags { minimal: true, exact_checked: false, totally_acyclic: false, period },
        }
    }

    /// d_i ∘ d_{i+1} = 0 and all entries in m, for every stored index.
    pub fn check(&self) -> Result<()> {
        for i in 1..=self.maps.len() {
            let d = self.differential(i);
            if d.matrix.iter().flatten().any(|p| p.as_unit().is_some()) {
                return Err(Error::internal(format!("differential d_{i} has a unit entry")));
            }
            if i >= 2 && !self.differential(i - 1).compose_after(&d).is_zero() {
                return Err(Error::internal(format!("d_{} ∘ d_{i} is nonzero", i - 1)));
            }
        }
        Ok(())
    }
}

fn periodic_shift(twists: &[Vec<i32>], maps: &[Columns], i: usize) -> Option<i32> {
    if maps[i - 1] != maps[i - 3] {
        return None;
    }
    let (a, b) = (&twists[i], &twists[i - 2]);
    let (c, d) = (&twists[i - 1], &twists[i - 3]);
    if a.len() != b.len() || c.len() != d.len() || a.is_empty() {
        return None;
    }
    let shift = a[0] - b[0];
    let uniform = a.iter().zip(b).all(|(x, y)| x - y == shift) && c.iter().zip(d).all(|(x, y)| x - y == shift);
    uniform.then_some(shift)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexFlags {
    pub minimal: bool,
    pub exact_checked: bool,
    pub totally_acyclic: bool,
    pub period: Option<usize>,
}

/// Homologically indexed complex C_lo ← ... ← C_hi with d_i: C_i → C_{i-1}.
#[derive(Clone, Debug)]
pub struct Complex {
    pub lo: i32,
    pub terms: Vec<PresentedModule>,
    /// `differentials[k]` is d_{lo+k+1}.
    pub differentials: Vec<ModuleMap>,
    pub flags: ComplexFlags,
}

impl Complex {
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn term(&self, i: i32) -> &PresentedModule {
        &self.terms[(i - self.lo) as usize]
    }

    /// d_i for lo < i ≤ hi.
    pub fn differential(&self, i: i32) -> &ModuleMap {
        &self.differentials[(i - self.lo - 1) as usize]
    }

    /// H_i, treating the complex as zero outside its window.
    pub fn homology(&self, i: i32) -> Result<PresentedModule> {
        let c = self.term(i);
        let ring = c.ring().clone();
        let zero = PresentedModule::free(ring, Vec::new());
        let outgoing = if i > self.lo { self.differential(i).clone() } else { ModuleMap::zero(c, &zero, 0) };
        let incoming = if i < self.hi() { self.differential(i + 1).clone() } else { ModuleMap::zero(&zero, c, 0) };
        homology(&incoming, &outgoing)
    }

    /// C ⊗ N, termwise on raw presentations.
    pub fn tensor(&self, n: &PresentedModule) -> Complex {
        let differentials: Vec<ModuleMap> = self.differentials.iter().map(|d| tensor_map(d, n)).collect();
        let terms = if differentials.is_empty() {
            vec![crate::fgmod::tensor_raw(&self.terms[0], n)]
        } else {
            let mut t: Vec<PresentedModule> = differentials.iter().map(|d| d.target.clone()).collect();
            t.push(differentials.last().unwrap().source.clone());
            t
        };
        Complex { lo: self.lo, terms, differentials, flags: ComplexFlags { minimal: false, ..self.flags } }
    }

    /// Hom(C, N) for a complex of free modules, reindexed homologically:
    /// Hom(C_i, N) sits at index -i.
    pub fn hom_into(&self, n: &PresentedModule) -> Complex {
        let mut differentials: Vec<ModuleMap> = Vec::new();
        // Hom(d_{i}, N): Hom(C_{i-1}, N) → Hom(C_i, N) is the differential at index -(i-1).
        for i in (self.lo + 1..=self.hi()).rev() {
            differentials.push(hom_free_map(self.differential(i), n));
        }
        let terms = if differentials.is_empty() {
            vec![crate::fgmod::hom_free_raw(self.terms[0].degrees(), n)]
        } else {
            let mut t: Vec<PresentedModule> = differentials.iter().map(|d| d.target.clone()).collect();
            t.push(differentials.last().unwrap().source.clone());
            t
        };
        Complex { lo: -self.hi(), terms, differentials, flags: ComplexFlags::default() }
    }

    /// d ∘ d = 0 on the window.
    pub fn check_square_zero(&self) -> bool {
        (self.lo + 2..=self.hi()).all(|i| self.differential(i - 1).compose_after(self.differential(i)).is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theory {
    Tor,
    Ext,
    GTor,
    TateTor,
}

/// One homology module with its graded dimensions.
#[derive(Clone, Debug)]
pub struct HomologyEntry {
    pub index: i32,
    pub module: PresentedModule,
    /// Nonzero graded dimensions for degrees up to the table's degree bound.
    pub dims: BTreeMap<i32, usize>,
}

impl HomologyEntry {
    pub fn new(index: i32, module: PresentedModule, d_max: i32) -> Self {
        let (module, _, _) = module.minimize();
        let dims = graded_dims(&module, d_max);
        HomologyEntry { index, module, dims }
    }

    pub fn is_zero(&self) -> bool {
        self.module.ngens() == 0
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Nonzero dim_k M_d for min generator degree ≤ d ≤ d_max.
pub fn graded_dims(m: &PresentedModule, d_max: i32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let Some(&lo) = m.degrees().iter().min() else { return out };
    for d in lo..=d_max {
        let v = m.hilbert_value(d);
        if v > 0 {
            out.insert(d, v);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HomologyTable {
    pub theory: Theory,
    pub d_max: i32,
    pub entries: BTreeMap<i32, HomologyEntry>,
    pub top_nonvanishing: Option<Certified>,
    /// Complex the entries were computed from; for cohomological tables
    /// entry i is the homology at index -i.
    pub complex: Option<Complex>,
    pub cohomological: bool,
}

impl HomologyTable {
    pub fn entry(&self, i: i32) -> Option<&HomologyEntry> {
        self.entries.get(&i)
    }

    pub fn is_zero_at(&self, i: i32) -> Option<bool> {
        self.entries.get(&i).map(|e| e.is_zero())
    }

    pub fn dims(&self) -> BTreeMap<i32, BTreeMap<i32, usize>> {
        self.entries.iter().map(|(&i, e)| (i, e.dims.clone())).collect()
    }

    /// Largest window index with nonzero homology.
    pub fn top_in_window(&self) -> Option<i32> {
        self.entries.iter().rev().find(|(_, e)| !e.is_zero()).map(|(&i, _)| i)
    }

    pub fn record(&self) -> TableRecord {
        TableRecord {
            theory: self.theory,
            degree_bound: self.d_max,
            entries: self
                .entries
                .values()
                .map(|e| EntryRecord { index: e.index, dims: e.dims.iter().map(|(&d, &v)| (d, v)).collect() })
                .collect(),
            top_nonvanishing: self.top_nonvanishing,
        }
    }
}

/// Serializable form of a homology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRecord {
    pub theory: Theory,
    pub degree_bound: i32,
    pub entries: Vec<EntryRecord>,
    pub top_nonvanishing: Option<Certified>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryRecord {
    pub index: i32,
    /// (degree, dimension) pairs with nonzero dimension.
    pub dims: Vec<(i32, usize)>,
}

pub fn minimal_free_resolution(m: &PresentedModule, length_bound: usize) -> Result<Resolution> {
    Resolution::compute(m, length_bound)
}

/// Tor_i(M, N) for 0 ≤ i ≤ i_bound from a resolution of M reaching i_bound + 1.
pub fn tor_table_from(res: &Resolution, n: &PresentedModule, i_bound: usize, d_max: i32) -> Result<HomologyTable> {
    let c = res.complex(i_bound + 1).tensor(n);
    let mut entries = BTreeMap::new();
    for i in 0..=i_bound as i32 {
        entries.insert(i, HomologyEntry::new(i, c.homology(i)?, d_max));
    }
    let mut table = HomologyTable {
        theory: Theory::Tor,
        d_max,
        entries,
        top_nonvanishing: None,
        complex: Some(c),
        cohomological: false,
    };
    table.top_nonvanishing = Some(top_from_resolution(&table, res, i_bound));
    Ok(table)
}

pub fn tor_table(m: &PresentedModule, n: &PresentedModule, i_bound: usize, d_max: i32) -> Result<HomologyTable> {
    let res = Resolution::compute(m, i_bound + 1)?;
    tor_table_from(&res, n, i_bound, d_max)
}

/// Ext^i(M, N) for 0 ≤ i ≤ i_bound; entry i holds Ext^i.
pub fn ext_table_from(res: &Resolution, n: &PresentedModule, i_bound: usize, d_max: i32) -> Result<HomologyTable> {
    let c = res.complex(i_bound + 1).hom_into(n);
    let mut entries = BTreeMap::new();
    for i in 0..=i_bound as i32 {
        entries.insert(i, HomologyEntry::new(i, c.homology(-i)?, d_max));
    }
    let mut table = HomologyTable {
        theory: Theory::Ext,
        d_max,
        entries,
        top_nonvanishing: None,
        complex: Some(c),
        cohomological: true,
    };
    table.top_nonvanishing = Some(top_from_resolution(&table, res, i_bound));
    Ok(table)
}

pub fn ext_table(m: &PresentedModule, n: &PresentedModule, i_bound: usize, d_max: i32) -> Result<HomologyTable> {
    let res = Resolution::compute(m, i_bound + 1)?;
    ext_table_from(&res, n, i_bound, d_max)
}

/// Top nonvanishing index of a Tor or Ext table given the resolution shape.
fn top_from_resolution(table: &HomologyTable, res: &Resolution, i_bound: usize) -> Certified {
    let top = table.top_in_window().map_or(-1, |i| i as i64);
    match res.end() {
        ResolutionEnd::Finite => {
            if res.projective_dimension().value.finite().is_some_and(|pd| pd <= i_bound as i64) {
                return Certified::exact(Extended::Finite(top));
            }
        }
        ResolutionEnd::Periodic { start, .. } => {
            // H_i for i ≥ max(start, 1) repeats with period two.
            let j = start.max(1);
            if j < i_bound {
                let nonzero = |i: usize| table.is_zero_at(i as i32) == Some(false);
                if nonzero(j) || nonzero(j + 1) {
                    return Certified::exact(Extended::Infinity);
                }
                return Certified::exact(Extended::Finite(top));
            }
        }
        ResolutionEnd::Truncated => {}
    }
    Certified { value: Extended::Finite(top), certainty: Certainty::AtLeast }
}

/// q(M, N) = sup{i : Tor_i(M, N) ≠ 0}.
pub fn q_invariant(
    m: &PresentedModule,
    n: &PresentedModule,
    i_bound: usize,
    d_max: i32,
) -> Result<(Certified, HomologyTable)> {
    let res_m = Resolution::compute(m, i_bound + 1)?;
    let table = tor_table_from(&res_m, n, i_bound, d_max)?;
    let q = q_from_table(&table, &res_m, n, i_bound)?;
    Ok((q, table))
}

pub(crate) fn q_from_table(
    table: &HomologyTable,
    res_m: &Resolution,
    n: &PresentedModule,
    i_bound: usize,
) -> Result<Certified> {
    let from_m = table.top_nonvanishing.expect("tor tables carry a top index");
    if from_m.certainty == Certainty::Exact {
        return Ok(from_m);
    }
    let top = table.top_in_window().map_or(-1, |i| i as i64);
    // Finite pd of N also bounds q.
    let res_n = Resolution::compute(n, i_bound + 1)?;
    if let Some(pd) = res_n.projective_dimension().value.finite() {
        if res_n.projective_dimension().certainty == Certainty::Exact && pd <= i_bound as i64 {
            return Ok(Certified::exact(Extended::Finite(top)));
        }
    }
    // Rigidity over hypersurfaces: two consecutive vanishing Tor past depth R.
    let ring = res_m.ring();
    if ring.is_hypersurface() {
        let d = ring.depth() as i32;
        for i in (d + 1)..(i_bound as i32) {
            if table.is_zero_at(i) == Some(true) && table.is_zero_at(i + 1) == Some(true) {
                let last = table.entries.range(..i).rev().find(|(_, e)| !e.is_zero()).map_or(-1, |(&k, _)| k as i64);
                return Ok(Certified::exact(Extended::Finite(last)));
            }
        }
    }
    Ok(Certified { value: Extended::Finite(top.max(i_bound as i64)), certainty: Certainty::AtLeast })
}

pub fn projective_dimension(m: &PresentedModule, search_bound: usize) -> Result<Certified> {
    Ok(Resolution::compute(m, search_bound)?.projective_dimension())
}

/// Exact pd: a finite pd is at most depth R, so a nonzero F_{depth R + 1}
/// certifies pd = ∞.
pub fn certified_projective_dimension(m: &PresentedModule) -> Result<(Certified, Resolution)> {
    let bound = m.ring().depth() + 1;
    let res = Resolution::compute(m, bound)?;
    let pd = match res.end() {
        ResolutionEnd::Truncated => Certified::exact(Extended::Infinity),
        _ => res.projective_dimension(),
    };
    Ok((pd, res))
}

/// depth M = min{i : Ext^i(k, M) ≠ 0}; +∞ for the zero module.
pub fn depth(m: &PresentedModule) -> Result<Extended> {
    let ring = m.ring().clone();
    if m.is_zero() {
        return Ok(Extended::Infinity);
    }
    let k = PresentedModule::residue_field(ring.clone());
    depth_via(&k, m, &ring.maximal_ideal())
}

/// depth of M_p via min{i : p ∈ Supp Ext^i(R/p, M)}.
pub fn depth_at_prime(m: &PresentedModule, p: &PrimeIdeal) -> Result<Extended> {
    let ring = m.ring().clone();
    if !support_contains(m, p)? {
        return Err(Error::input(format!("{p} is not in the support of the module")));
    }
    let gens: Vec<Poly> = p.generators.iter().map(|g| ring.reduce(g)).collect();
    let rp = PresentedModule::cyclic(ring.clone(), &gens, 0)?;
    depth_via(&rp, m, p)
}

fn depth_via(rp: &PresentedModule, m: &PresentedModule, p: &PrimeIdeal) -> Result<Extended> {
    let ring = m.ring().clone();
    let bound = ring.krull_dim();
    let res = Resolution::compute(rp, bound + 1)?;
    let c = res.complex(bound + 1).hom_into(m);
    let is_max = p.is_maximal_ideal(ring.nvars());
    for i in 0..=bound as i32 {
        let e = c.homology(-i)?;
        if e.is_zero() {
            continue;
        }
        if is_max || support_contains(&e, p)? {
            return Ok(Extended::Finite(i as i64));
        }
    }
    Err(Error::internal("no nonvanishing Ext up to the Krull dimension for a module in the support"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::AmbientRing;

    fn ring(ideal: &[&str]) -> Arc<QuotientRing> {
        let s = AmbientRing::new(&["x", "y"], 5).unwrap();
        let gens: Vec<Poly> = ideal.iter().map(|t| s.parse(t).unwrap()).collect();
        Arc::new(QuotientRing::new(s, &gens, false).unwrap())
    }

    fn cyc(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
        let g: Vec<Poly> = gens.iter().map(|t| r.parse(t).unwrap()).collect();
        PresentedModule::cyclic(r.clone(), &g, 0).unwrap()
    }

    fn tor_total(t: &HomologyTable) -> Vec<usize> {
        t.entries.values().map(|e| e.total_dim()).collect()
    }

    #[test]
    fn koszul_resolution() {
        let r = ring(&[]);
        let k = PresentedModule::residue_field(r.clone());
        let res = Resolution::compute(&k, 5).unwrap();
        assert_eq!(res.end(), ResolutionEnd::Finite);
        assert_eq!(res.betti_numbers(3), vec![1, 2, 1, 0]);
        assert_eq!(res.projective_dimension(), Certified::exact(Extended::Finite(2)));
        res.check().unwrap();
    }

    #[test]
    fn periodic_resolutions_over_the_node() {
        let r = ring(&["x*y"]);
        let k = PresentedModule::residue_field(r.clone());
        let res = Resolution::compute(&k, 8).unwrap();
        assert!(matches!(res.end(), ResolutionEnd::Periodic { start: 2, shift: 2 }));
        assert_eq!(res.betti_numbers(6), vec![1, 2, 2, 2, 2, 2, 2]);
        res.check().unwrap();
        let a = cyc(&r, &["x"]);
        let res = Resolution::compute(&a, 6).unwrap();
        assert_eq!(res.betti_numbers(5), vec![1, 1, 1, 1, 1, 1]);
        assert_eq!(res.projective_dimension().value, Extended::Infinity);
        let render = |i: usize| r.render(&res.differential(i).matrix[0][0]);
        assert_eq!((render(1), render(2), render(3), render(4)), ("x".into(), "y".into(), "x".into(), "y".into()));
    }

    #[test]
    fn tor_examples() {
        let r = ring(&["x*y"]);
        let a = cyc(&r, &["x"]);
        let b = cyc(&r, &["y"]);
        let t = tor_table(&a, &b, 8, 12).unwrap();
        assert_eq!(tor_total(&t), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let k = PresentedModule::residue_field(r.clone());
        let t = tor_table(&k, &k, 3, 10).unwrap();
        assert_eq!(t.entry(1).unwrap().total_dim(), 2);
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let t = tor_table(&rr, &a, 4, 10).unwrap();
        assert!((1..=4).all(|i| t.is_zero_at(i) == Some(true)));
    }

    #[test]
    fn ext_examples() {
        let r = ring(&["x*y"]);
        let k = PresentedModule::residue_field(r.clone());
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let t = ext_table(&k, &rr, 2, 10).unwrap();
        assert!(t.entry(0).unwrap().is_zero());
        assert_eq!(t.entry(1).unwrap().total_dim(), 1);
        let a = cyc(&r, &["x"]);
        let t = ext_table(&a, &rr, 6, 10).unwrap();
        assert!((1..=6).all(|i| t.is_zero_at(i) == Some(true)));
    }

    #[test]
    fn depth_examples() {
        let r = ring(&["x*y"]);
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(depth(&k).unwrap(), Extended::Finite(0));
        let rr = PresentedModule::free(r.clone(), vec![0]);
        assert_eq!(depth(&rr).unwrap(), Extended::Finite(1));
        assert_eq!(depth(&cyc(&r, &["x"])).unwrap(), Extended::Finite(1));
        let zero = PresentedModule::coker(r.clone(), vec![0], vec![vec![Poly::one()]]).unwrap();
        assert_eq!(depth(&zero).unwrap(), Extended::Infinity);
        let s = r.ambient().clone();
        let px = PrimeIdeal::declared(&r, "(x)", &[s.parse("x").unwrap()]).unwrap();
        assert_eq!(depth_at_prime(&rr, &px).unwrap(), Extended::Finite(0));
        assert_eq!(depth_at_prime(&cyc(&r, &["x"]), &px).unwrap(), Extended::Finite(0));
        assert_eq!(depth_at_prime(&rr, &r.maximal_ideal()).unwrap(), Extended::Finite(1));
        let py = PrimeIdeal::declared(&r, "(y)", &[s.parse("y").unwrap()]).unwrap();
        assert_eq!(depth_at_prime(&cyc(&r, &["y"]), &py).unwrap(), Extended::Finite(0));
        assert_eq!(depth_at_prime(&cyc(&r, &["y"]), &r.maximal_ideal()).unwrap(), Extended::Finite(1));
        assert!(depth_at_prime(&cyc(&r, &["x"]), &py).is_err());
        let fat = ring(&["x^2", "x*y", "y^2"]);
        let ff = PresentedModule::free(fat.clone(), vec![0]);
        assert_eq!(depth(&ff).unwrap(), Extended::Finite(0));
    }

    #[test]
    fn q_examples() {
        let r = ring(&["x*y"]);
        let (q, _) = q_invariant(&cyc(&r, &["x"]), &cyc(&r, &["y"]), 8, 10).unwrap();
        assert_eq!(q, Certified::exact(Extended::Infinity));
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let (q, _) = q_invariant(&rr, &cyc(&r, &["x"]), 6, 10).unwrap();
        assert_eq!(q, Certified::exact(Extended::Finite(0)));
        let s = ring(&[]);
        let k = PresentedModule::residue_field(s.clone());
        let (q, _) = q_invariant(&k, &k, 6, 10).unwrap();
        assert_eq!(q, Certified::exact(Extended::Finite(2)));
        // (x) and (y) are rigid partners: R/(x) ⊗ ... vanishes for i ≥ 1 against R/(x + y).
        let (q, _) = q_invariant(&cyc(&r, &["x"]), &cyc(&r, &["x + y"]), 6, 10).unwrap();
        assert_eq!(q, Certified::exact(Extended::Finite(0)));
    }

    #[test]
    fn pd_of_free_module() {
        let r = ring(&["x*y"]);
        let f = PresentedModule::free(r, vec![0, 1, 1]);
        assert_eq!(projective_dimension(&f, 4).unwrap(), Certified::exact(Extended::Finite(0)));
    }
}
