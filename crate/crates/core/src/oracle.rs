//! Degree-truncated linear-algebra evaluator.
//!
//! Every graded piece of a presented module is built by brute force: all
//! monomial multiples of relations and of the defining equations are listed
//! in the degree-d piece of the free cover and row reduced. Nothing here
//! touches Gröbner bases, so agreement with the main code path is evidence
//! rather than tautology.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::exactlin::{Matrix, PrimeField};
use crate::fgmod::{ModuleMap, PresentedModule};
use crate::polyring::{monomials_of_degree, Monomial, Poly};
use crate::resolve::{Complex, HomologyTable, Theory};

/// Degree-d piece of a module: coordinates of the free cover, the row-reduced
/// relation span and the standard (non-pivot) basis of the quotient.
#[derive(Clone, Debug)]
struct Piece {
    index: HashMap<(usize, Monomial), usize>,
    span: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    quotient: Vec<usize>,
}

impl Piece {
    fn reduce(&self, field: PrimeField, v: &mut [u32]) {
        for (row, &pc) in self.span.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = field.sub(*x, field.mul(c, r));
                    }
                }
            }
        }
    }

    /// Quotient coordinates of a free-cover vector.
    fn coordinates(&self, field: PrimeField, mut v: Vec<u32>) -> Vec<u32> {
        self.reduce(field, &mut v);
        self.quotient.iter().map(|&c| v[c]).collect()
    }
}

/// A module truncated to degrees `lo..=hi`, with multiplication by each variable.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    field: PrimeField,
    nvars: usize,
    lo: i32,
    hi: i32,
    pieces: Vec<Piece>,
    /// `actions[v][d - lo]`: multiplication by variable v from degree d to d + 1.
    actions: Vec<Vec<Matrix>>,
}

/// Basis of a free module in one degree: (generator, monomial) pairs and their positions.
type PieceIndex = (HashMap<(usize, Monomial), usize>, Vec<(usize, Monomial)>);

fn free_piece_index(nvars: usize, degrees: &[i32], d: i32) -> PieceIndex {
    let mut index = HashMap::new();
    let mut list = Vec::new();
    for (j, &a) in degrees.iter().enumerate() {
        if d - a < 0 {
            continue;
        }
        for m in monomials_of_degree(nvars, (d - a) as u32) {
            index.insert((j, m), list.len());
            list.push((j, m));
        }
    }
    (index, list)
}

fn add_scaled_column(
    field: PrimeField,
    out: &mut [u32],
    index: &HashMap<(usize, Monomial), usize>,
    col: &[Poly],
    mult: &Monomial,
    coeff: u32,
) {
    for (j, p) in col.iter().enumerate() {
        for &(m, c) in p.terms() {
            let pos = index[&(j, m.mul(mult))];
            out[pos] = field.add(out[pos], field.mul(c, coeff));
        }
    }
}

/// Truncates M to degrees from its lowest generator degree up to `d_max`.
pub fn truncate(m: &PresentedModule, d_max: i32) -> TruncatedModule {
    let lo = m.degrees().iter().copied().min().unwrap_or(0).min(d_max);
    truncate_range(m, lo, d_max)
}

pub fn truncate_range(m: &PresentedModule, lo: i32, hi: i32) -> TruncatedModule {
    let ring = m.ring();
    let field = ring.field();
    let n = ring.nvars();
    let degrees = m.degrees().to_vec();
    let rel_degs: Vec<Option<i32>> = m
        .relations()
        .iter()
        .map(|c| c.iter().enumerate().find_map(|(j, p)| p.homogeneous_degree().map(|e| e as i32 + degrees[j])))
        .collect();
    let mut pieces = Vec::new();
    for d in lo..=hi + 1 {
        let (index, list) = free_piece_index(n, &degrees, d);
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (col, rd) in m.relations().iter().zip(&rel_degs) {
            let Some(e) = rd else { continue };
            if d < *e {
                continue;
            }
            for mult in monomials_of_degree(n, (d - e) as u32) {
                let mut v = vec![0u32; list.len()];
                add_scaled_column(field, &mut v, &index, col, &mult, 1);
                rows.push(v);
            }
        }
        for f in ring.ideal_gens() {
            let e = f.homogeneous_degree().unwrap() as i32;
            for (j, &a) in degrees.iter().enumerate() {
                if d - a - e < 0 {
                    continue;
                }
                for mult in monomials_of_degree(n, (d - a - e) as u32) {
                    let mut v = vec![0u32; list.len()];
                    for &(t, c) in f.terms() {
                        let pos = index[&(j, t.mul(&mult))];
                        v[pos] = field.add(v[pos], c);
                    }
                    rows.push(v);
                }
            }
        }
        let (span, pivots) = if rows.is_empty() || list.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let mat = Matrix::from_raw(field, rows.len(), list.len(), rows.concat());
            let rr = mat.row_reduce();
            let span: Vec<Vec<u32>> = (0..rr.rank).map(|r| rr.reduced.row(r).to_vec()).collect();
            (span, rr.pivots)
        };
        let quotient: Vec<usize> = (0..list.len()).filter(|c| !pivots.contains(c)).collect();
        pieces.push(Piece { index, span, pivots, quotient });
    }
    let mut actions = vec![Vec::new(); n];
    for (v, acts) in actions.iter_mut().enumerate() {
        let x = Monomial::var(v);
        for d in lo..=hi {
            let (src, tgt) = (&pieces[(d - lo) as usize], &pieces[(d - lo + 1) as usize]);
            let mut data = vec![0u32; tgt.quotient.len() * src.quotient.len()];
            let src_list: Vec<(usize, Monomial)> = {
                let mut l: Vec<((usize, Monomial), usize)> = src.index.iter().map(|(k, &i)| (*k, i)).collect();
                l.sort_by_key(|(_, i)| *i);
                l.into_iter().map(|(k, _)| k).collect()
            };
            for (qi, &c) in src.quotient.iter().enumerate() {
                let (j, m) = src_list[c];
                let mut w = vec![0u32; tgt.index.len()];
                w[tgt.index[&(j, m.mul(&x))]] = 1;
                let coords = tgt.coordinates(field, w);
                for (r, &val) in coords.iter().enumerate() {
                    data[r * src.quotient.len() + qi] = val;
                }
            }
            acts.push(Matrix::from_raw(field, tgt.quotient.len(), src.quotient.len(), data));
        }
    }
    pieces.pop();
    TruncatedModule { field, nvars: n, lo, hi, pieces, actions }
}

impl TruncatedModule {
    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.lo || d > self.hi {
            return 0;
        }
        self.pieces[(d - self.lo) as usize].quotient.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (self.lo..=self.hi).map(|d| self.dim(d)).collect()
    }

    /// Multiplication by variable `v` from degree d to d + 1.
    pub fn action(&self, v: usize, d: i32) -> &Matrix {
        &self.actions[v][(d - self.lo) as usize]
    }

    /// Variables commute on every piece where both composites are defined.
    pub fn actions_commute(&self) -> bool {
        for d in self.lo..self.hi {
            for u in 0..self.nvars {
                for v in 0..u {
                    let a = self.action(v, d + 1).mul(self.action(u, d)).unwrap();
                    let b = self.action(u, d + 1).mul(self.action(v, d)).unwrap();
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every polynomial of `ideal` acts as zero wherever its action stays in range.
    pub fn satisfies(&self, ideal: &[Poly]) -> bool {
        for f in ideal {
            let Some(e) = f.homogeneous_degree() else { return false };
            for d in self.lo..=self.hi - e as i32 {
                let mut total = Matrix::zeros(self.field, self.dim(d + e as i32), self.dim(d));
                for &(m, c) in f.terms() {
                    let mut cur = Matrix::identity(self.field, self.dim(d));
                    let mut deg = d;
                    for v in 0..self.nvars {
                        for _ in 0..m.exponent(v) {
                            cur = self.action(v, deg).mul(&cur).unwrap();
                            deg += 1;
                        }
                    }
                    for r in 0..total.rows() {
                        for col in 0..total.cols() {
                            let val = self.field.add(total.get(r, col), self.field.mul(c, cur.get(r, col)));
                            total.set(r, col, val);
                        }
                    }
                }
                if !total.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient coordinates in degree `d` of an element of the free cover.
    pub fn coordinates(&self, v: &[Poly], d: i32) -> Vec<u32> {
        let piece = &self.pieces[(d - self.lo) as usize];
        let mut w = vec![0u32; piece.index.len()];
        add_scaled_column(self.field, &mut w, &piece.index, v, &Monomial::ONE, 1);
        piece.coordinates(self.field, w)
    }

    /// Membership of a homogeneous element of degree `d` in the relation span.
    pub fn element_is_zero(&self, v: &[Poly], d: i32) -> bool {
        self.coordinates(v, d).iter().all(|&c| c == 0)
    }
}

/// Matrix of a module map in degree d between truncations.
fn map_matrix(f: &ModuleMap, src: &TruncatedModule, tgt: &TruncatedModule, d: i32) -> Matrix {
    let field = src.field;
    let rows = tgt.dim(d + f.shift);
    let cols = src.dim(d);
    let mut data = vec![0u32; rows * cols];
    if rows > 0 && cols > 0 {
        let sp = &src.pieces[(d - src.lo) as usize];
        let tp = &tgt.pieces[(d + f.shift - tgt.lo) as usize];
        let mut src_list = vec![(0usize, Monomial::ONE); sp.index.len()];
        for (k, &i) in &sp.index {
            src_list[i] = *k;
        }
        for (qi, &c) in sp.quotient.iter().enumerate() {
            let (j, m) = src_list[c];
            let mut w = vec![0u32; tp.index.len()];
            add_scaled_column(field, &mut w, &tp.index, &f.matrix[j], &m, 1);
            let coords = tp.coordinates(field, w);
            for (r, &val) in coords.iter().enumerate() {
                data[r * cols + qi] = val;
            }
        }
    }
    Matrix::from_raw(field, rows, cols, data)
}

/// Rank of f: A → B in source degree d.
pub fn map_rank(f: &ModuleMap, d: i32) -> usize {
    let src = truncate_range(&f.source, d, d);
    let tgt = truncate_range(&f.target, d + f.shift, d + f.shift);
    column_rank(&map_matrix(f, &src, &tgt, d))
}

/// dim_k M_d from the truncation.
pub fn dim_at(m: &PresentedModule, d: i32) -> usize {
    truncate_range(m, d, d).dim(d)
}

/// Graded dimensions of H_i(C) for degrees up to `d_max`, nonzero entries only.
pub fn oracle_homology(c: &Complex, i: i32, d_max: i32) -> BTreeMap<i32, usize> {
    let term = c.term(i);
    let lo = term.degrees().iter().copied().min().unwrap_or(0).min(d_max);
    let mid = truncate_range(term, lo, d_max);
    let mut out = BTreeMap::new();
    let outgoing = (i > c.lo).then(|| c.differential(i));
    let incoming = (i < c.hi()).then(|| c.differential(i + 1));
    let tgt = outgoing.map(|f| truncate_range(&f.target, lo + f.shift, d_max + f.shift));
    let src = incoming.map(|g| truncate_range(&g.source, lo - g.shift, d_max - g.shift));
    for d in lo..=d_max {
        let dim = mid.dim(d);
        if dim == 0 {
            continue;
        }
        let rank_out = match (outgoing, &tgt) {
            (Some(f), Some(t)) => map_matrix(f, &mid, t, d).rank(),
            _ => 0,
        };
        let rank_in = match (incoming, &src) {
            (Some(g), Some(s)) => map_matrix(g, s, &mid, d - g.shift).rank(),
            _ => 0,
        };
        let h = dim - rank_out - rank_in;
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}

/// Cycles and boundaries of C at index i in one internal degree, as column
/// spans in the quotient coordinates of the truncated term.
struct HomologyPiece {
    term: TruncatedModule,
    cycles: Matrix,
    boundaries: Matrix,
}

fn homology_piece(c: &Complex, i: i32, d: i32) -> HomologyPiece {
    let term = truncate_range(c.term(i), d, d);
    let field = term.field;
    let dim = term.dim(d);
    let cycles = if i > c.lo && dim > 0 {
        let f = c.differential(i);
        let tgt = truncate_range(&f.target, d + f.shift, d + f.shift);
        let m = map_matrix(f, &term, &tgt, d);
        if m.rows() == 0 {
            Matrix::identity(field, dim)
        } else {
            m.kernel_basis()
        }
    } else {
        Matrix::identity(field, dim)
    };
    let boundaries = if i < c.hi() && dim > 0 {
        let g = c.differential(i + 1);
        let e = d - g.shift;
        let src = truncate_range(&g.source, e, e);
        map_matrix(g, &src, &term, e)
    } else {
        Matrix::zeros(field, dim, 0)
    };
    HomologyPiece { term, cycles, boundaries }
}

fn column_rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

/// dim_k H_i(C)_d.
pub fn homology_dim_at(c: &Complex, i: i32, d: i32) -> usize {
    let p = homology_piece(c, i, d);
    column_rank(&p.cycles) - column_rank(&p.boundaries)
}

/// Rank in degree d of the map H_i(A) → H_j(B) induced by the component
/// f: A_i → B_j of a chain map.
pub fn induced_rank(a: &Complex, i: i32, b: &Complex, j: i32, f: &ModuleMap, d: i32) -> usize {
    let pa = homology_piece(a, i, d);
    let pb = homology_piece(b, j, d + f.shift);
    if pa.cycles.cols() == 0 || pb.term.dim(d + f.shift) == 0 {
        return 0;
    }
    let fm = map_matrix(f, &pa.term, &pb.term, d);
    let image = fm.mul(&pa.cycles).expect("shapes agree");
    column_rank(&image.hstack(&pb.boundaries)) - column_rank(&pb.boundaries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub theory: Theory,
    pub index: i32,
    pub degree: i32,
    pub groebner: usize,
    pub oracle: usize,
}

/// Compares every entry of a table with the oracle on its source complex.
pub fn cross_check(table: &HomologyTable, d_max: i32) -> Vec<Discrepancy> {
    let Some(c) = &table.complex else { return Vec::new() };
    let mut out = Vec::new();
    let bound = d_max.min(table.d_max);
    for (&i, entry) in &table.entries {
        let ci = if table.cohomological { -i } else { i };
        if ci < c.lo || ci > c.hi() {
            continue;
        }
        let oracle = oracle_homology(c, ci, bound);
        let mut degrees: Vec<i32> = oracle.keys().copied().collect();
        degrees.extend(entry.dims.keys().copied().filter(|&d| d <= bound));
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let g = entry.dims.get(&d).copied().unwrap_or(0);
            let o = oracle.get(&d).copied().unwrap_or(0);
            if g != o {
                out.push(Discrepancy { theory: table.theory, index: i, degree: d, groebner: g, oracle: o });
            }
        }
    }
    out
}

/// Hilbert function of M checked against its truncation.
pub fn hilbert_agrees(m: &PresentedModule, d_max: i32) -> bool {
    let t = truncate(m, d_max);
    (t.lo..=d_max).all(|d| t.dim(d) == m.hilbert_value(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::AmbientRing;
    use crate::quotient::QuotientRing;
    use crate::resolve::{tor_table, Resolution};
    use std::sync::Arc;

    fn node() -> Arc<QuotientRing> {
        let s = AmbientRing::new(&["x", "y"], 5).unwrap();
        let xy = s.parse("x*y").unwrap();
        Arc::new(QuotientRing::new(s, &[xy], false).unwrap())
    }

    #[test]
    fn truncation_dimensions() {
        let r = node();
        let rr = PresentedModule::free(r.clone(), vec![0]);
        let t = truncate(&rr, 3);
        assert_eq!(t.dims(), vec![1, 2, 2, 2]);
        assert!(t.actions_commute());
        assert!(t.satisfies(r.ideal_gens()));
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(truncate(&k, 3).dims(), vec![1, 0, 0, 0]);
        let shifted = PresentedModule::free(r.clone(), vec![1]);
        assert_eq!(truncate_range(&shifted, 0, 3).dims(), vec![0, 1, 2, 2]);
    }

    #[test]
    fn resolution_is_exact_to_the_oracle() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        let c = Resolution::compute(&k, 5).unwrap().complex(5);
        for i in 1..5 {
            assert!(oracle_homology(&c, i, 10).is_empty(), "H_{i}");
        }
        assert_eq!(oracle_homology(&c, 0, 10), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn tor_table_agrees_and_corruption_is_caught() {
        let r = node();
        let k = PresentedModule::residue_field(r.clone());
        let mut t = tor_table(&k, &k, 3, 8).unwrap();
        assert!(cross_check(&t, 8).is_empty());
        t.entries.get_mut(&1).unwrap().dims.insert(1, 7);
        let d = cross_check(&t, 8);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].index, d[0].degree, d[0].groebner, d[0].oracle), (1, 1, 7, 2));
    }

    #[test]
    fn membership_matches_groebner() {
        let s = AmbientRing::new(&["x", "y"], 5).unwrap();
        let r = Arc::new(QuotientRing::polynomial(s.clone()).unwrap());
        let gens = vec![vec![s.parse("x^2").unwrap()], vec![s.parse("x*y + y^2").unwrap()]];
        let m = PresentedModule::coker(r.clone(), vec![0], gens).unwrap();
        let t = truncate(&m, 6);
        assert!(t.element_is_zero(&[s.parse("y^3").unwrap()], 3));
        assert!(t.element_is_zero(&[s.parse("y^4").unwrap()], 4));
        assert!(!t.element_is_zero(&[s.parse("y^2").unwrap()], 2));
        assert!(hilbert_agrees(&m, 6));
    }
}
