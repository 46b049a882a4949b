//! Buchberger's algorithm for graded submodules of free modules over the
//! ambient polynomial ring, normal forms, lifting and syzygies.
//!
//! Computations over a quotient R = S/I happen in the ambient free module
//! with the multiples `f * e_i` (f a generator of I) adjoined to every
//! generating set.
//!
//! Module terms are ordered term-over-position: total degree (monomial
//! degree plus the twist of its position) first, then grevlex on the
//! monomial, then the lower position wins. Elimination orders put a "top"
//! block of positions above every other position; they back lifting and
//! syzygy computations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactlin::{EchelonSpace, PrimeField};
use crate::polyring::{monomials_of_degree, AmbientRing, Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MTerm {
    pub pos: u32,
    pub mon: Monomial,
    pub coeff: u32,
}

/// Module monomial order. Positions below `top` form the eliminated block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ModuleOrder {
    shifts: Vec<i32>,
    top: usize,
}

impl ModuleOrder {
    pub fn graded(shifts: Vec<i32>) -> Self {
        let top = shifts.len();
        ModuleOrder { shifts, top }
    }

    pub fn elimination(shifts: Vec<i32>, top: usize) -> Self {
        ModuleOrder { shifts, top }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn degree(&self, pos: u32, mon: &Monomial) -> i32 {
        self.shifts[pos as usize] + mon.degree() as i32
    }

    #[inline]
    fn in_top(&self, pos: u32) -> bool {
        (pos as usize) < self.top
    }

    #[inline]
    pub fn cmp(&self, pa: u32, ma: &Monomial, pb: u32, mb: &Monomial) -> Ordering {
        let (ta, tb) = (self.in_top(pa), self.in_top(pb));
        if ta != tb {
            return if ta { Ordering::Greater } else { Ordering::Less };
        }
        self.degree(pa, ma).cmp(&self.degree(pb, mb)).then_with(|| ma.cmp(mb)).then_with(|| pb.cmp(&pa))
    }
}

/// Element of a free module, terms sorted decreasingly for a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Vector {
    pub terms: Vec<MTerm>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&MTerm> {
        self.terms.first()
    }

    pub fn from_columns(col: &[Poly], offset: u32, order: &ModuleOrder) -> Vector {
        let mut terms: Vec<MTerm> = col
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |&(mon, coeff)| MTerm { pos: i as u32 + offset, mon, coeff }))
            .collect();
        terms.sort_by(|a, b| order.cmp(b.pos, &b.mon, a.pos, &a.mon));
        Vector { terms }
    }

    /// Splits into polynomial components for positions `lo..hi`, re-indexed from zero.
    pub fn to_columns(&self, lo: usize, hi: usize, field: PrimeField) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); hi - lo];
        for t in &self.terms {
            let p = t.pos as usize;
            if p >= lo && p < hi {
                buckets[p - lo].push((t.mon, t.coeff));
            }
        }
        buckets.into_iter().map(|b| Poly::from_terms(b, field)).collect()
    }

    pub fn scale(&mut self, c: u32, field: PrimeField) {
        for t in self.terms.iter_mut() {
            t.coeff = field.mul(t.coeff, c);
        }
    }

    pub fn make_monic(&mut self, field: PrimeField) {
        if let Some(l) = self.terms.first() {
            if l.coeff != 1 {
                let inv = field.inv(l.coeff);
                self.scale(inv, field);
            }
        }
    }

    /// Degree of the leading term.
    pub fn degree(&self, order: &ModuleOrder) -> Option<i32> {
        self.lead().map(|t| order.degree(t.pos, &t.mon))
    }
}

/// `a - c * m * b` where `a` and `b` are sorted term lists.
fn sub_mul(a: &[MTerm], c: u32, m: &Monomial, b: &[MTerm], order: &ModuleOrder, f: PrimeField) -> Vec<MTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let negc = f.neg(c);
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<MTerm> = b.first().map(|t| MTerm { pos: t.pos, mon: t.mon.mul(m), coeff: t.coeff });
    while i < a.len() {
        let Some(tb) = bj else { break };
        match order.cmp(a[i].pos, &a[i].mon, tb.pos, &tb.mon) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(MTerm { coeff: f.mul(negc, tb.coeff), ..tb });
                j += 1;
                bj = b.get(j).map(|t| MTerm { pos: t.pos, mon: t.mon.mul(m), coeff: t.coeff });
            }
            Ordering::Equal => {
                let v = f.add(a[i].coeff, f.mul(negc, tb.coeff));
                if v != 0 {
                    out.push(MTerm { coeff: v, ..a[i] });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| MTerm { pos: t.pos, mon: t.mon.mul(m), coeff: t.coeff });
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        let t = b[j];
        out.push(MTerm { pos: t.pos, mon: t.mon.mul(m), coeff: f.mul(negc, t.coeff) });
        j += 1;
    }
    out
}

/// A Gröbner basis (monic, sorted by lead term) indexed by lead position.
#[derive(Clone, Debug)]
pub(crate) struct Gb {
    pub order: ModuleOrder,
    pub field: PrimeField,
    pub elems: Vec<Vector>,
    by_pos: HashMap<u32, Vec<usize>>,
}

impl Gb {
    fn new(order: ModuleOrder, field: PrimeField) -> Self {
        Gb { order, field, elems: Vec::new(), by_pos: HashMap::new() }
    }

    fn push(&mut self, v: Vector) {
        let pos = v.lead().expect("nonzero basis element").pos;
        self.by_pos.entry(pos).or_default().push(self.elems.len());
        self.elems.push(v);
    }

    fn find_divisor(&self, t: &MTerm) -> Option<(usize, Monomial)> {
        let cands = self.by_pos.get(&t.pos)?;
        for &i in cands {
            let l = self.elems[i].lead().unwrap();
            if let Some(q) = l.mon.quotient_of(&t.mon) {
                return Some((i, q));
            }
        }
        None
    }

    /// Full normal form.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let f = self.field;
        let mut rem: Vec<MTerm> = Vec::new();
        let mut cur: Vec<MTerm> = v.terms.clone();
        let mut start = 0;
        while start < cur.len() {
            let t = cur[start];
            match self.find_divisor(&t) {
                Some((i, q)) => {
                    let g = &self.elems[i].terms;
                    cur = sub_mul(&cur[start + 1..], t.coeff, &q, &g[1..], &self.order, f);
                    start = 0;
                }
                None => {
                    rem.push(t);
                    start += 1;
                }
            }
        }
        Vector { terms: rem }
    }

    /// Reduces leading terms while they lie in the top block. Returns `None`
    /// as soon as a top-block leading term is irreducible.
    pub fn reduce_top(&self, v: &Vector) -> Option<Vector> {
        let f = self.field;
        let mut cur = v.terms.clone();
        while let Some(&t) = cur.first() {
            if !self.order.in_top(t.pos) {
                break;
            }
            let (i, q) = self.find_divisor(&t)?;
            let g = &self.elems[i].terms;
            cur = sub_mul(&cur[1..], t.coeff, &q, &g[1..], &self.order, f);
        }
        Some(Vector { terms: cur })
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i32,
}

/// Homogeneous Buchberger algorithm processed degree by degree, with the
/// Gebauer–Möller pair criteria. With `cap` set the result is a Gröbner basis
/// for all elements of degree at most `cap`.
pub(crate) fn buchberger(input: Vec<Vector>, order: &ModuleOrder, field: PrimeField, cap: Option<i32>) -> Gb {
    let mut pending: Vec<Vector> = input.into_iter().filter(|v| !v.is_zero()).collect();
    for v in pending.iter_mut() {
        v.make_monic(field);
    }
    pending.sort_by_key(|v| v.degree(order).unwrap());
    pending.reverse(); // pop from the back in increasing degree

    let mut gb = Gb::new(order.clone(), field);
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        let next_in = pending.last().map(|v| v.degree(order).unwrap());
        let next_pair = pairs.iter().map(|p| p.deg).min();
        let d = match (next_in, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if cap.is_some_and(|c| d > c) {
            break;
        }
        // S-pairs of this degree first, then new generators of this degree.
        let mut batch: Vec<Pair> = Vec::new();
        pairs.retain(|p| {
            if p.deg == d {
                batch.push(p.clone());
                false
            } else {
                true
            }
        });
        batch.sort_by_key(|a| (a.i, a.j));
        let mut work: Vec<WorkItem> = batch.into_iter().map(WorkItem::Pair).collect();
        while pending.last().is_some_and(|v| v.degree(order) == Some(d)) {
            work.push(WorkItem::Gen(pending.pop().unwrap()));
        }
        for item in work {
            let v = match item {
                WorkItem::Pair(p) => {
                    // A pair may have been discarded by a criterion applied
                    // after the batch was formed; recheck liveness.
                    if !alive[p.i] || !alive[p.j] {
                        continue;
                    }
                    spoly(&gb, p.i, p.j, &p.lcm)
                }
                WorkItem::Gen(v) => v,
            };
            let mut h = gb.reduce(&v);
            if h.is_zero() {
                continue;
            }
            h.make_monic(field);
            update_pairs(&gb, &alive, &mut pairs, &h, order);
            // Elements whose lead becomes divisible stay in the basis for
            // pair generation; the final pass removes them.
            gb.push(h);
            alive.push(true);
        }
    }
    finalize(gb, field)
}

enum WorkItem {
    Pair(Pair),
    Gen(Vector),
}

fn spoly(gb: &Gb, i: usize, j: usize, lcm: &Monomial) -> Vector {
    let (a, b) = (&gb.elems[i], &gb.elems[j]);
    let la = a.lead().unwrap();
    let lb = b.lead().unwrap();
    let qa = la.mon.quotient_of(lcm).unwrap();
    let qb = lb.mon.quotient_of(lcm).unwrap();
    let f = gb.field;
    let a_scaled: Vec<MTerm> =
        a.terms[1..].iter().map(|t| MTerm { pos: t.pos, mon: t.mon.mul(&qa), coeff: t.coeff }).collect();
    Vector { terms: sub_mul(&a_scaled, 1, &qb, &b.terms[1..], &gb.order, f) }
}

fn update_pairs(gb: &Gb, alive: &[bool], pairs: &mut Vec<Pair>, h: &Vector, order: &ModuleOrder) {
    let hl = *h.lead().unwrap();
    let hidx = gb.elems.len();
    let hdeg_shift = order.shifts[hl.pos as usize];
    // Criterion B on old pairs.
    pairs.retain(|p| {
        let lp = gb.elems[p.i].lead().unwrap().pos;
        if lp != hl.pos || !hl.mon.divides(&p.lcm) {
            return true;
        }
        let li = gb.elems[p.i].lead().unwrap().mon.lcm(&hl.mon);
        let lj = gb.elems[p.j].lead().unwrap().mon.lcm(&hl.mon);
        li == p.lcm || lj == p.lcm
    });
    let mut cands: Vec<Pair> = Vec::new();
    if let Some(idx) = gb.by_pos.get(&hl.pos) {
        for &i in idx {
            if !alive[i] {
                continue;
            }
            let lcm = gb.elems[i].lead().unwrap().mon.lcm(&hl.mon);
            cands.push(Pair { i, j: hidx, lcm, deg: hdeg_shift + lcm.degree() as i32 });
        }
    }
    // Criterion M: drop pairs whose lcm is a proper multiple of another's.
    let keep: Vec<bool> =
        cands.iter().map(|p| !cands.iter().any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm))).collect();
    let mut seen: Vec<Monomial> = Vec::new();
    for (p, k) in cands.into_iter().zip(keep) {
        if !k || seen.contains(&p.lcm) {
            continue;
        }
        seen.push(p.lcm);
        // Criterion F on a lone generator pair: coprime leads in the same
        // position do not give a free reduction for modules, so no product
        // criterion here.
        pairs.push(p);
    }
}

fn finalize(gb: Gb, field: PrimeField) -> Gb {
    let order = gb.order.clone();
    let n = gb.elems.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let li = gb.elems[i].lead().unwrap();
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let lj = gb.elems[j].lead().unwrap();
            if li.pos == lj.pos && lj.mon.divides(&li.mon) && (lj.mon != li.mon || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Vector> = gb.elems.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
    minimal.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        order
            .degree(la.pos, &la.mon)
            .cmp(&order.degree(lb.pos, &lb.mon))
            .then_with(|| order.cmp(lb.pos, &lb.mon, la.pos, &la.mon))
    });
    // Tail reduction against the other elements.
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, v) in minimal.iter().enumerate() {
        let mut others = Gb::new(order.clone(), field);
        for (j, w) in minimal.iter().enumerate() {
            if j != i {
                others.push(w.clone());
            }
        }
        let lead = v.terms[0];
        let tail = others.reduce(&Vector { terms: v.terms[1..].to_vec() });
        let mut terms = vec![lead];
        terms.extend(tail.terms);
        reduced.push(Vector { terms });
    }
    let mut res = Gb::new(order, field);
    for v in reduced {
        res.push(v);
    }
    res
}

/// Checks that a column is homogeneous of degree `deg` for the given twists.
pub(crate) fn column_degree(col: &[Poly], shifts: &[i32]) -> Result<Option<i32>> {
    let mut deg: Option<i32> = None;
    for (i, p) in col.iter().enumerate() {
        for &(m, _) in p.terms() {
            let d = m.degree() as i32 + shifts[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::input("inhomogeneous module element")),
                _ => {}
            }
        }
    }
    Ok(deg)
}

fn ideal_vectors(ideal: &[Poly], rank: usize, offset: u32, order: &ModuleOrder) -> Vec<Vector> {
    let mut out = Vec::with_capacity(ideal.len() * rank);
    for i in 0..rank {
        for f in ideal {
            let terms =
                f.terms().iter().map(|&(mon, coeff)| MTerm { pos: offset + i as u32, mon, coeff }).collect::<Vec<_>>();
            let mut v = Vector { terms };
            v.terms.sort_by(|a, b| order.cmp(b.pos, &b.mon, a.pos, &a.mon));
            out.push(v);
        }
    }
    out
}

/// Gröbner basis of the submodule of a twisted free module generated by
/// `gens` together with `ideal * F`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    gb: Gb,
    nvars: usize,
}

impl GroebnerBasis {
    pub fn compute(
        field: PrimeField,
        nvars: usize,
        shifts: &[i32],
        gens: &[Vec<Poly>],
        ideal: &[Poly],
        cap: Option<i32>,
    ) -> Result<Self> {
        let order = ModuleOrder::graded(shifts.to_vec());
        let mut input = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != shifts.len() {
                return Err(Error::input("generator length does not match module rank"));
            }
            column_degree(g, shifts)?;
            input.push(Vector::from_columns(g, 0, &order));
        }
        input.extend(ideal_vectors(ideal, shifts.len(), 0, &order));
        Ok(GroebnerBasis { gb: buchberger(input, &order, field, cap), nvars })
    }

    pub fn rank(&self) -> usize {
        self.gb.order.rank()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.gb.order.shifts
    }

    pub fn field(&self) -> PrimeField {
        self.gb.field
    }

    pub fn len(&self) -> usize {
        self.gb.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gb.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<Vec<Poly>> {
        self.gb.elems.iter().map(|v| v.to_columns(0, self.rank(), self.gb.field)).collect()
    }

    /// True when the basis contains a unit multiple of every basis vector.
    pub fn is_everything(&self) -> bool {
        (0..self.rank() as u32).all(|p| {
            self.gb.by_pos.get(&p).is_some_and(|idx| idx.iter().any(|&i| self.gb.elems[i].lead().unwrap().mon.is_one()))
        })
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        let vec = Vector::from_columns(v, 0, &self.gb.order);
        self.gb.reduce(&vec).to_columns(0, self.rank(), self.gb.field)
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        let vec = Vector::from_columns(v, 0, &self.gb.order);
        self.gb.reduce(&vec).is_zero()
    }

    /// Lead monomials per position.
    pub fn lead_monomials(&self, pos: usize) -> Vec<Monomial> {
        self.gb.elems.iter().filter_map(|v| v.lead()).filter(|t| t.pos as usize == pos).map(|t| t.mon).collect()
    }

    /// Dimension of the degree-`d` part of the quotient module, counted by
    /// standard monomials.
    pub fn quotient_dimension(&self, d: i32) -> usize {
        let mut count = 0;
        for pos in 0..self.rank() {
            let e = d - self.shifts()[pos];
            if e < 0 {
                continue;
            }
            let leads = self.lead_monomials(pos);
            count += monomials_of_degree(self.nvars, e as u32)
                .iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .count();
        }
        count
    }

    /// Reduces a single polynomial (rank-one bases only).
    pub fn reduce_poly(&self, f: &Poly) -> Poly {
        debug_assert_eq!(self.rank(), 1);
        self.normal_form(std::slice::from_ref(f)).pop().unwrap()
    }
}

/// Augmented basis over an elimination order: positions `0..top` carry the
/// ambient module, the following positions track cofactors of `gens`.
#[derive(Clone, Debug)]
pub(crate) struct Lifter {
    gb: Gb,
    top: usize,
    ngens: usize,
}

impl Lifter {
    /// `gens` are the elements to lift through, `extra` are relations that
    /// may be used freely (their cofactors are not tracked), `ideal` is
    /// adjoined in both blocks.
    pub fn new(
        field: PrimeField,
        shifts: &[i32],
        gens: &[Vec<Poly>],
        gen_degs: &[i32],
        extra: &[Vec<Poly>],
        ideal: &[Poly],
        cap: Option<i32>,
    ) -> Result<Self> {
        let top = shifts.len();
        let ngens = gens.len();
        let mut all_shifts = shifts.to_vec();
        all_shifts.extend_from_slice(gen_degs);
        let order = ModuleOrder::elimination(all_shifts, top);
        let mut input = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(d) = column_degree(g, shifts)? {
                if d != gen_degs[i] {
                    return Err(Error::input(format!("generator {i} has degree {d}, declared {}", gen_degs[i])));
                }
            }
            let mut col = g.clone();
            col.resize(top + ngens, Poly::zero());
            col[top + i] = Poly::one();
            input.push(Vector::from_columns(&col, 0, &order));
        }
        for e in extra {
            column_degree(e, shifts)?;
            input.push(Vector::from_columns(e, 0, &order));
        }
        input.extend(ideal_vectors(ideal, top, 0, &order));
        input.extend(ideal_vectors(ideal, ngens, top as u32, &order));
        Ok(Lifter { gb: buchberger(input, &order, field, cap), top, ngens })
    }

    /// Coefficients `c` with `sum c_i gens_i = v` modulo `extra` and the ideal.
    pub fn lift(&self, v: &[Poly]) -> Option<Vec<Poly>> {
        let vec = Vector::from_columns(v, 0, &self.gb.order);
        let r = self.gb.reduce_top(&vec)?;
        // The cofactor block holds minus the coefficients; reduce it fully
        // so the answer is canonical.
        let r = self.gb.reduce(&r);
        let f = self.gb.field;
        Some(r.to_columns(self.top, self.top + self.ngens, f).iter().map(|p| p.neg(f)).collect())
    }

    /// Generators of all syzygies (modulo the ideal) with their degrees.
    pub fn syzygies(&self) -> Vec<(Vec<Poly>, i32)> {
        let f = self.gb.field;
        self.gb
            .elems
            .iter()
            .filter(|v| !self.gb.order.in_top(v.lead().unwrap().pos))
            .map(|v| (v.to_columns(self.top, self.top + self.ngens, f), v.degree(&self.gb.order).unwrap()))
            .collect()
    }
}

/// Selects, degree by degree, a minimal subset of `cands` generating
/// `span(base) + span(cands) + ideal * F` modulo `span(base) + ideal * F`.
/// Zero candidates and candidates already in the base are dropped.
pub(crate) fn minimal_subset(
    field: PrimeField,
    nvars: usize,
    shifts: &[i32],
    base: &[Vec<Poly>],
    cands: &[Vec<Poly>],
    cand_degs: &[i32],
    ideal: &[Poly],
) -> Result<Vec<usize>> {
    let mut by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, c) in cands.iter().enumerate() {
        if c.iter().all(|p| p.is_zero()) {
            continue;
        }
        by_deg.entry(cand_degs[i]).or_default().push(i);
    }
    let mut kept: Vec<usize> = Vec::new();
    for (&d, idxs) in &by_deg {
        let mut gens: Vec<Vec<Poly>> = base.to_vec();
        gens.extend(kept.iter().map(|&k| cands[k].clone()));
        let gb = GroebnerBasis::compute(field, nvars, shifts, &gens, ideal, Some(d))?;
        let nfs: Vec<Vec<Poly>> = idxs.iter().map(|&i| gb.normal_form(&cands[i])).collect();
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        for nf in &nfs {
            for (pos, p) in nf.iter().enumerate() {
                for &(m, _) in p.terms() {
                    let n = index.len();
                    index.entry((pos, m)).or_insert(n);
                }
            }
        }
        let mut space = EchelonSpace::new(field, index.len());
        for (k, nf) in idxs.iter().zip(&nfs) {
            let mut coords = vec![0u32; index.len()];
            for (pos, p) in nf.iter().enumerate() {
                for &(m, c) in p.terms() {
                    coords[index[&(pos, m)]] = c;
                }
            }
            if space.insert(&coords) {
                kept.push(*k);
            }
        }
    }
    kept.sort_unstable();
    Ok(kept)
}

/// Element of a twisted free module `S(-d_1) ⊕ ... ⊕ S(-d_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    pub components: Vec<Poly>,
    pub position_degrees: Vec<i32>,
}

impl FreeModuleElement {
    pub fn new(components: Vec<Poly>, position_degrees: Vec<i32>) -> Self {
        assert_eq!(components.len(), position_degrees.len());
        FreeModuleElement { components, position_degrees }
    }

    /// Element of the rank-one free module S.
    pub fn scalar(f: Poly) -> Self {
        FreeModuleElement { components: vec![f], position_degrees: vec![0] }
    }

    pub fn degree(&self) -> Result<Option<i32>> {
        column_degree(&self.components, &self.position_degrees)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }
}

fn common_twists(gens: &[FreeModuleElement]) -> Result<Vec<i32>> {
    let first = gens.first().ok_or_else(|| Error::input("empty generator list"))?;
    if gens.iter().any(|g| g.position_degrees != first.position_degrees) {
        return Err(Error::input("generators live in different free modules"));
    }
    for g in gens {
        g.degree()?;
    }
    Ok(first.position_degrees.clone())
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger_basis(ring: &AmbientRing, gens: &[FreeModuleElement]) -> Result<GroebnerBasis> {
    let twists = common_twists(gens)?;
    let cols: Vec<Vec<Poly>> = gens.iter().map(|g| g.components.clone()).collect();
    GroebnerBasis::compute(ring.field(), ring.nvars(), &twists, &cols, &[], None)
}

/// Degree-bounded variant: a basis valid for all elements of degree at most `cap`.
pub fn buchberger_truncated(ring: &AmbientRing, gens: &[FreeModuleElement], cap: i32) -> Result<GroebnerBasis> {
    let twists = common_twists(gens)?;
    let cols: Vec<Vec<Poly>> = gens.iter().map(|g| g.components.clone()).collect();
    GroebnerBasis::compute(ring.field(), ring.nvars(), &twists, &cols, &[], Some(cap))
}

pub fn normal_form(v: &FreeModuleElement, basis: &GroebnerBasis) -> Result<FreeModuleElement> {
    if v.position_degrees != basis.shifts() {
        return Err(Error::input("element and basis live in different free modules"));
    }
    Ok(FreeModuleElement::new(basis.normal_form(&v.components), v.position_degrees.clone()))
}

/// Minimal generators of the syzygies `{c : sum c_i gens_i = 0}` over S.
/// Each returned element lives in the free module twisted by the generator degrees.
pub fn syzygy_module(ring: &AmbientRing, gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
    syzygies_over_quotient(ring, gens, &[])
}

/// Syzygies over S/I, computed with `I * e_i` adjoined in both blocks.
pub fn syzygies_over_quotient(
    ring: &AmbientRing,
    gens: &[FreeModuleElement],
    ideal: &[Poly],
) -> Result<Vec<FreeModuleElement>> {
    let twists = common_twists(gens)?;
    let mut degs = Vec::with_capacity(gens.len());
    for g in gens {
        degs.push(g.degree()?.ok_or_else(|| Error::input("zero generator has no degree"))?);
    }
    let cols: Vec<Vec<Poly>> = gens.iter().map(|g| g.components.clone()).collect();
    let syz = raw_syzygies(ring.field(), ring.nvars(), &twists, &cols, &degs, &[], ideal)?;
    Ok(syz.into_iter().map(|(c, _)| FreeModuleElement::new(c, degs.clone())).collect())
}

/// Minimal homogeneous generators of `{c : sum c_i cols_i ∈ span(extra) + ideal * F}`
/// modulo `ideal`, sorted by degree, with entries reduced modulo the ideal.
pub(crate) fn raw_syzygies(
    field: PrimeField,
    nvars: usize,
    shifts: &[i32],
    cols: &[Vec<Poly>],
    col_degs: &[i32],
    extra: &[Vec<Poly>],
    ideal: &[Poly],
) -> Result<Vec<(Vec<Poly>, i32)>> {
    let lifter = Lifter::new(field, shifts, cols, col_degs, extra, ideal, None)?;
    let raw = lifter.syzygies();
    let ideal_gb = if ideal.is_empty() {
        None
    } else {
        Some(GroebnerBasis::compute(
            field,
            nvars,
            &[0],
            &ideal.iter().map(|f| vec![f.clone()]).collect::<Vec<_>>(),
            &[],
            None,
        )?)
    };
    let reduce = |c: &Vec<Poly>| -> Vec<Poly> {
        match &ideal_gb {
            Some(g) => c.iter().map(|p| g.reduce_poly(p)).collect(),
            None => c.clone(),
        }
    };
    let vecs: Vec<Vec<Poly>> = raw.iter().map(|(c, _)| reduce(c)).collect();
    let degs: Vec<i32> = raw.iter().map(|(_, d)| *d).collect();
    let keep = minimal_subset(field, nvars, col_degs, &[], &vecs, &degs, ideal)?;
    let mut out: Vec<(Vec<Poly>, i32)> = keep.into_iter().map(|i| (vecs[i].clone(), degs[i])).collect();
    out.sort_by_key(|(_, d)| *d);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> AmbientRing {
        AmbientRing::new(&["x", "y"], 5).unwrap()
    }

    fn el(r: &AmbientRing, s: &str) -> FreeModuleElement {
        FreeModuleElement::scalar(r.parse(s).unwrap())
    }

    fn basis_strings(r: &AmbientRing, gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|v| r.render(&v[0])).collect()
    }

    #[test]
    fn single_and_variable_generators() {
        let r = s();
        let gb = buchberger_basis(&r, &[el(&r, "x*y")]).unwrap();
        assert_eq!(basis_strings(&r, &gb), vec!["x*y"]);
        let gb = buchberger_basis(&r, &[el(&r, "x"), el(&r, "y")]).unwrap();
        assert_eq!(basis_strings(&r, &gb), vec!["x", "y"]);
    }

    #[test]
    fn completion_adds_cubic() {
        let r = s();
        let gb = buchberger_basis(&r, &[el(&r, "x^2"), el(&r, "x*y + y^2")]).unwrap();
        assert_eq!(basis_strings(&r, &gb), vec!["x^2", "x*y + y^2", "y^3"]);
        let y4 = el(&r, "y^4");
        assert!(normal_form(&y4, &gb).unwrap().is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let r = s();
        let gb = buchberger_basis(&r, &[el(&r, "x*y")]).unwrap();
        assert!(normal_form(&el(&r, "x^2*y"), &gb).unwrap().is_zero());
        let gb = buchberger_basis(&r, &[el(&r, "x")]).unwrap();
        let nf = normal_form(&el(&r, "x + y"), &gb).unwrap();
        assert_eq!(r.render(&nf.components[0]), "y");
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let r = s();
        assert!(buchberger_basis(&r, &[el(&r, "x + y^2")]).is_err());
    }

    #[test]
    fn koszul_syzygy() {
        let r = s();
        let syz = syzygy_module(&r, &[el(&r, "x"), el(&r, "y")]).unwrap();
        assert_eq!(syz.len(), 1);
        let c = &syz[0].components;
        // c0 * x + c1 * y = 0 with c = ±(y, -x)
        let f = r.field();
        let combo = c[0].mul(&r.var(0), f).add(&c[1].mul(&r.var(1), f), f);
        assert!(combo.is_zero());
        assert_eq!(c[0].homogeneous_degree(), Some(1));
    }

    #[test]
    fn regular_element_has_no_syzygies() {
        let r = s();
        assert!(syzygy_module(&r, &[el(&r, "x")]).unwrap().is_empty());
    }

    #[test]
    fn syzygies_over_the_node() {
        let r = s();
        let xy = r.parse("x*y").unwrap();
        let syz = syzygies_over_quotient(&r, &[el(&r, "x"), el(&r, "y")], &[xy]).unwrap();
        let rendered: Vec<(String, String)> =
            syz.iter().map(|s| (r.render(&s.components[0]), r.render(&s.components[1]))).collect();
        assert_eq!(rendered.len(), 2);
        assert!(rendered.contains(&("y".into(), "0".into())));
        assert!(rendered.contains(&("0".into(), "x".into())));
    }

    #[test]
    fn lifting_recovers_cofactors() {
        let r = s();
        let f = r.field();
        let gens = vec![vec![r.parse("x").unwrap()], vec![r.parse("y").unwrap()]];
        let lifter = Lifter::new(f, &[0], &gens, &[1, 1], &[], &[], None).unwrap();
        let target = r.parse("x^2 + 3*x*y + y^2").unwrap();
        let c = lifter.lift(std::slice::from_ref(&target)).unwrap();
        let back = c[0].mul(&r.var(0), f).add(&c[1].mul(&r.var(1), f), f);
        assert_eq!(back, target);
        assert!(lifter.lift(&[Poly::one()]).is_none());
    }

    #[test]
    fn minimal_subset_drops_redundant() {
        let r = s();
        let f = r.field();
        let cands = vec![
            vec![r.parse("x").unwrap()],
            vec![r.parse("x^2").unwrap()],
            vec![r.parse("2*x").unwrap()],
            vec![r.parse("y^2").unwrap()],
        ];
        let keep = minimal_subset(f, 2, &[0], &[], &cands, &[1, 2, 1, 2], &[]).unwrap();
        assert_eq!(keep, vec![0, 3]);
    }
}
