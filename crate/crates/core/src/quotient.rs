//! Graded quotient rings R = S/I and their homogeneous primes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::PrimeField;
use crate::groebner::{minimal_subset, raw_syzygies, GroebnerBasis};
use crate::polyring::{AmbientRing, Monomial, Poly};

/// Structural flags of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RingFlags {
    pub regular: bool,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub hypersurface: bool,
    pub golod_declared: bool,
}

/// R = S/I for a homogeneous proper ideal I of the ambient ring S.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ambient: AmbientRing,
    ideal_gens: Vec<Poly>,
    ideal_gb: GroebnerBasis,
    krull_dim: usize,
    depth: usize,
    flags: RingFlags,
    hilbert_numerator: Vec<i64>,
    ambient_betti: Vec<Vec<i32>>,
}

impl QuotientRing {
    /// The ambient ring itself (I = 0).
    pub fn polynomial(ambient: AmbientRing) -> Result<Self> {
        Self::new(ambient, &[], false)
    }

    pub fn new(ambient: AmbientRing, ideal: &[Poly], golod_declared: bool) -> Result<Self> {
        let field = ambient.field();
        let n = ambient.nvars();
        let mut cands = Vec::new();
        let mut degs = Vec::new();
        for f in ideal {
            if f.support_len() > n {
                return Err(Error::input("ideal generator uses variables outside the ring"));
            }
            if f.is_zero() {
                continue;
            }
            let d = f
                .homogeneous_degree()
                .ok_or_else(|| Error::input(format!("ideal generator {} is not homogeneous", ambient.render(f))))?;
            if d == 0 {
                return Err(Error::input("the defining ideal is the unit ideal"));
            }
            cands.push(vec![f.monic(field)]);
            degs.push(d as i32);
        }
        let keep = minimal_subset(field, n, &[0], &[], &cands, &degs, &[])?;
        let ideal_gens: Vec<Poly> = keep.iter().map(|&i| cands[i][0].clone()).collect();
        let gen_degs: Vec<i32> = keep.iter().map(|&i| degs[i]).collect();
        let cols: Vec<Vec<Poly>> = ideal_gens.iter().map(|f| vec![f.clone()]).collect();
        let ideal_gb = GroebnerBasis::compute(field, n, &[0], &cols, &[], None)?;

        // Minimal free resolution of S/I over S; finite by the syzygy theorem.
        let mut ambient_betti: Vec<Vec<i32>> = vec![vec![0]];
        let mut cur_cols = cols;
        let mut cur_degs = gen_degs;
        let mut prev_shifts = vec![0];
        while !cur_cols.is_empty() {
            ambient_betti.push(cur_degs.clone());
            let syz = raw_syzygies(field, n, &prev_shifts, &cur_cols, &cur_degs, &[], &[])?;
            prev_shifts = cur_degs;
            cur_degs = syz.iter().map(|(_, d)| *d).collect();
            cur_cols = syz.into_iter().map(|(c, _)| c).collect();
            if ambient_betti.len() > n + 2 {
                return Err(Error::internal("ambient resolution longer than the number of variables"));
            }
        }
        let mut numerator: Vec<i64> = Vec::new();
        for (i, ds) in ambient_betti.iter().enumerate() {
            for &d in ds {
                let d = d as usize;
                if numerator.len() <= d {
                    numerator.resize(d + 1, 0);
                }
                numerator[d] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        let mult = root_multiplicity_at_one(&numerator);
        let krull_dim = n - mult;
        let pd = ambient_betti.len() - 1;
        let depth = n - pd;
        let codim = n - krull_dim;
        let cohen_macaulay = pd == codim;
        let gorenstein = cohen_macaulay && ambient_betti[pd].len() == 1;
        let hypersurface = ideal_gens.len() == 1;
        let linear_forms = ideal_gens.iter().filter(|f| f.homogeneous_degree() == Some(1)).count();
        let regular = n - linear_forms == krull_dim;
        Ok(QuotientRing {
            ambient,
            ideal_gens,
            ideal_gb,
            krull_dim,
            depth,
            flags: RingFlags { regular, cohen_macaulay, gorenstein, hypersurface, golod_declared },
            hilbert_numerator: numerator,
            ambient_betti,
        })
    }

    pub fn ambient(&self) -> &AmbientRing {
        &self.ambient
    }

    pub fn field(&self) -> PrimeField {
        self.ambient.field()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// Minimal homogeneous generators of I.
    pub fn ideal_gens(&self) -> &[Poly] {
        &self.ideal_gens
    }

    pub fn ideal_basis(&self) -> &GroebnerBasis {
        &self.ideal_gb
    }

    pub fn krull_dim(&self) -> usize {
        self.krull_dim
    }

    pub fn codim(&self) -> usize {
        self.nvars() - self.krull_dim
    }

    /// Depth of R at the irrelevant ideal, from the length of the ambient
    /// resolution (Auslander–Buchsbaum over S).
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn flags(&self) -> RingFlags {
        self.flags
    }

    pub fn is_gorenstein(&self) -> bool {
        self.flags.gorenstein
    }

    pub fn is_hypersurface(&self) -> bool {
        self.flags.hypersurface
    }

    pub fn hilbert_numerator(&self) -> &[i64] {
        &self.hilbert_numerator
    }

    /// Twists of the free modules in the minimal resolution of R over S.
    pub fn ambient_betti(&self) -> &[Vec<i32>] {
        &self.ambient_betti
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        self.ideal_gb.reduce_poly(f)
    }

    pub fn render(&self, f: &Poly) -> String {
        self.ambient.render(f)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        let f = self.ambient.parse(text)?;
        Ok(self.reduce(&f))
    }

    /// dim_k R_d.
    pub fn hilbert_function(&self, d: i32) -> usize {
        self.ideal_gb.quotient_dimension(d)
    }

    pub fn maximal_ideal(&self) -> PrimeIdeal {
        PrimeIdeal { generators: self.ambient.variables(), label: "m".into(), declared: false }
    }

    /// Minimal primes of I.
    pub fn minimal_primes(&self, declared: Option<&[PrimeIdeal]>) -> Result<Vec<PrimeIdeal>> {
        self.minimal_primes_over(&[], declared)
    }

    /// Minimal primes of I + J for homogeneous J. Covered cases are certified
    /// combinatorially; otherwise the declared list is returned.
    pub fn minimal_primes_over(&self, extra: &[Poly], declared: Option<&[PrimeIdeal]>) -> Result<Vec<PrimeIdeal>> {
        let mut gens = self.ideal_gens.clone();
        gens.extend(extra.iter().filter(|f| !f.is_zero()).cloned());
        match min_primes(&self.ambient, &gens) {
            Ok(ps) => Ok(ps.into_iter().map(|g| PrimeIdeal::certified(&self.ambient, g)).collect()),
            Err(Error::PrimeEnumerationUnavailable(msg)) => match declared {
                Some(list) if !list.is_empty() => {
                    Ok(list.iter().filter(|p| p.contains_ideal(self, &gens)).cloned().collect())
                }
                _ => Err(Error::PrimeEnumerationUnavailable(msg)),
            },
            Err(e) => Err(e),
        }
    }

    /// Krull dimension of S/(I + J), read off the leading monomials.
    pub fn dim_over(&self, extra: &[Poly]) -> Result<Option<usize>> {
        let mut gens = self.ideal_gens.clone();
        gens.extend(extra.iter().filter(|f| !f.is_zero()).cloned());
        let gb = ideal_gb(&self.ambient, &gens)?;
        Ok(dim_from_basis(self.nvars(), &gb))
    }

    /// True when every generator of J lies in I + (gens of p).
    pub fn ideal_contained_in(&self, j: &[Poly], p: &PrimeIdeal) -> Result<bool> {
        let mut gens = self.ideal_gens.clone();
        gens.extend(p.generators.iter().cloned());
        let gb = ideal_gb(&self.ambient, &gens)?;
        Ok(j.iter().all(|f| gb.reduce_poly(f).is_zero()))
    }

    pub fn properties(&self) -> RingProperties {
        RingProperties {
            variables: self.ambient.variable_names().to_vec(),
            characteristic: self.ambient.characteristic(),
            ideal: self.ideal_gens.iter().map(|f| self.render(f)).collect(),
            krull_dim: self.krull_dim,
            codim: self.codim(),
            depth: self.depth,
            regular: self.flags.regular,
            cohen_macaulay: self.flags.cohen_macaulay,
            gorenstein: self.flags.gorenstein,
            hypersurface: self.flags.hypersurface,
            golod_declared: self.flags.golod_declared,
            hilbert_numerator: self.hilbert_numerator.clone(),
        }
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.ideal_gb.elements() == other.ideal_gb.elements()
    }
}

/// Readable summary of a quotient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RingProperties {
    pub variables: Vec<String>,
    pub characteristic: u32,
    pub ideal: Vec<String>,
    pub krull_dim: usize,
    pub codim: usize,
    pub depth: usize,
    pub regular: bool,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub hypersurface: bool,
    pub golod_declared: bool,
    pub hilbert_numerator: Vec<i64>,
}

/// A homogeneous prime of S containing I, viewed as a prime of R.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    /// Reduced Gröbner basis of the prime in S (or the declared generators).
    pub generators: Vec<Poly>,
    pub label: String,
    /// Primeness was asserted by the user rather than certified.
    pub declared: bool,
}

impl PrimeIdeal {
    fn certified(ambient: &AmbientRing, generators: Vec<Poly>) -> Self {
        let label =
            if generators.len() == ambient.nvars() && generators.iter().all(|g| g.homogeneous_degree() == Some(1)) {
                "m".to_string()
            } else {
                format!("({})", generators.iter().map(|g| ambient.render(g)).collect::<Vec<_>>().join(", "))
            };
        PrimeIdeal { generators, label, declared: false }
    }

    /// A user-declared prime of R; must be homogeneous, proper and contain I.
    pub fn declared(ring: &QuotientRing, label: &str, gens: &[Poly]) -> Result<Self> {
        for g in gens {
            if !g.is_zero() && g.homogeneous_degree().is_none_or(|d| d == 0) {
                return Err(Error::input(format!(
                    "prime {label}: generator {} is not homogeneous of positive degree",
                    ring.render(g)
                )));
            }
        }
        let gb = ideal_gb(ring.ambient(), gens)?;
        if !ring.ideal_gens().iter().all(|f| gb.reduce_poly(f).is_zero()) {
            return Err(Error::input(format!("prime {label} does not contain the defining ideal")));
        }
        let generators = gb.elements().into_iter().map(|mut v| v.remove(0)).collect();
        Ok(PrimeIdeal { generators, label: label.to_string(), declared: true })
    }

    pub fn is_maximal_ideal(&self, nvars: usize) -> bool {
        self.generators.len() == nvars && self.generators.iter().all(|g| g.homogeneous_degree() == Some(1))
    }

    fn contains_ideal(&self, ring: &QuotientRing, gens: &[Poly]) -> bool {
        ring.ideal_contained_in(gens, self).unwrap_or(false)
    }

    /// Krull dimension of R/p.
    pub fn dim(&self, ring: &QuotientRing) -> Result<usize> {
        Ok(ring.dim_over(&self.generators)?.unwrap_or(0))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn root_multiplicity_at_one(p: &[i64]) -> usize {
    let mut cur = p.to_vec();
    let mut mult = 0;
    while !cur.is_empty() && cur.iter().sum::<i64>() == 0 {
        // Divide by (1 - t): q_k = sum_{j<=k} p_j.
        let mut q = Vec::with_capacity(cur.len() - 1);
        let mut acc = 0;
        for &c in &cur[..cur.len() - 1] {
            acc += c;
            q.push(acc);
        }
        cur = q;
        mult += 1;
    }
    mult
}

fn ideal_gb(ambient: &AmbientRing, gens: &[Poly]) -> Result<GroebnerBasis> {
    let cols: Vec<Vec<Poly>> = gens.iter().filter(|f| !f.is_zero()).map(|f| vec![f.clone()]).collect();
    GroebnerBasis::compute(ambient.field(), ambient.nvars(), &[0], &cols, &[], None)
}

/// Dimension of S/J from the leading monomials of a basis of J; `None` for the unit ideal.
fn dim_from_basis(n: usize, gb: &GroebnerBasis) -> Option<usize> {
    let leads = gb.lead_monomials(0);
    if leads.iter().any(|m| m.is_one()) {
        return None;
    }
    Some(n - min_cover_size(n, &leads))
}

fn covers(mask: u32, leads: &[Monomial]) -> bool {
    leads.iter().all(|m| m.support().iter().any(|&v| mask & (1 << v) != 0))
}

fn min_cover_size(n: usize, leads: &[Monomial]) -> usize {
    (0u32..1 << n).filter(|&m| covers(m, leads)).map(|m| m.count_ones() as usize).min().unwrap_or(n)
}

fn minimal_covers(n: usize, leads: &[Monomial]) -> Vec<u32> {
    let all: Vec<u32> = (0u32..1 << n).filter(|&m| covers(m, leads)).collect();
    let mut out: Vec<u32> = all.iter().copied().filter(|&m| !all.iter().any(|&o| o != m && o & m == o)).collect();
    out.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
    out
}

fn mask_gens(mask: u32, n: usize) -> Vec<Poly> {
    (0..n).filter(|&v| mask & (1 << v) != 0).map(Poly::var).collect()
}

/// Minimal primes of the homogeneous ideal generated by `gens` in S, each as
/// a reduced Gröbner basis. Empty for the unit ideal.
pub(crate) fn min_primes(ambient: &AmbientRing, gens: &[Poly]) -> Result<Vec<Vec<Poly>>> {
    let mut found = min_primes_rec(ambient, gens, 0)?;
    let mut canon: Vec<(Vec<Poly>, GroebnerBasis)> = Vec::new();
    for p in found.drain(..) {
        let gb = ideal_gb(ambient, &p)?;
        let g: Vec<Poly> = gb.elements().into_iter().map(|mut v| v.remove(0)).collect();
        if !canon.iter().any(|(c, _)| *c == g) {
            canon.push((g, gb));
        }
    }
    // Keep primes minimal under inclusion.
    let mut out = Vec::new();
    for (i, (p, _)) in canon.iter().enumerate() {
        let contains_other = canon
            .iter()
            .enumerate()
            .any(|(j, (q, _))| j != i && q.iter().all(|f| canon[i].1.reduce_poly(f).is_zero()) && q != p);
        if !contains_other {
            out.push(p.clone());
        }
    }
    out.sort_by_cached_key(|p| (p.len(), p.iter().map(|f| ambient.render(f)).collect::<Vec<_>>()));
    Ok(out)
}

fn min_primes_rec(ambient: &AmbientRing, gens: &[Poly], depth: usize) -> Result<Vec<Vec<Poly>>> {
    let n = ambient.nvars();
    if depth > 4 * n + 4 {
        return Err(Error::PrimeEnumerationUnavailable("recursion limit".into()));
    }
    let gb = ideal_gb(ambient, gens)?;
    let elems: Vec<Poly> = gb.elements().into_iter().map(|mut v| v.remove(0)).collect();
    if elems.iter().any(|f| f.as_unit().is_some()) {
        return Ok(Vec::new());
    }
    let (vars, rest): (Vec<Poly>, Vec<Poly>) =
        elems.iter().cloned().partition(|f| f.is_monomial() && f.homogeneous_degree() == Some(1));
    if rest.is_empty() {
        return Ok(vec![vars]);
    }
    if rest.iter().all(|f| f.is_monomial()) {
        let leads: Vec<Monomial> = elems.iter().map(|f| f.lead().unwrap().0).collect();
        return Ok(minimal_covers(n, &leads).into_iter().map(|m| mask_gens(m, n)).collect());
    }
    if elems.iter().all(|f| f.homogeneous_degree() == Some(1)) {
        return Ok(vec![elems]);
    }
    if dim_from_basis(n, &gb) == Some(0) {
        return Ok(vec![ambient.variables()]);
    }
    let pivot_primes = rest
        .iter()
        .filter(|f| f.is_monomial())
        .chain(rest.iter().filter(|f| !f.is_monomial()))
        .find_map(|f| principal_primes(ambient, f).ok())
        .ok_or_else(|| {
            Error::PrimeEnumerationUnavailable(format!(
                "no generator of ({}) has combinatorially known primes",
                elems.iter().map(|f| ambient.render(f)).collect::<Vec<_>>().join(", ")
            ))
        })?;
    let mut out = Vec::new();
    for q in pivot_primes {
        let mut combined = q.clone();
        combined.extend(elems.iter().cloned());
        if q.iter().all(|f| f.is_monomial()) {
            out.extend(min_primes_rec(ambient, &combined, depth + 1)?);
            continue;
        }
        let qgb = ideal_gb(ambient, &q)?;
        if elems.iter().all(|f| qgb.reduce_poly(f).is_zero()) {
            out.push(q);
            continue;
        }
        let cgb = ideal_gb(ambient, &combined)?;
        match dim_from_basis(n, &cgb) {
            None => {}
            Some(0) => out.push(ambient.variables()),
            Some(_) => {
                return Err(Error::PrimeEnumerationUnavailable(format!(
                    "positive-dimensional intersection with the prime ({})",
                    q.iter().map(|f| ambient.render(f)).collect::<Vec<_>>().join(", ")
                )))
            }
        }
    }
    Ok(out)
}

/// Minimal primes of a principal ideal (f): monomial content, linear forms
/// and binomials are covered.
fn principal_primes(ambient: &AmbientRing, f: &Poly) -> Result<Vec<Vec<Poly>>> {
    let field = ambient.field();
    let content = f.terms().iter().map(|t| t.0).reduce(|a, b| a.gcd(&b)).unwrap_or(Monomial::ONE);
    let mut primes: Vec<Vec<Poly>> = content.support().into_iter().map(|v| vec![Poly::var(v)]).collect();
    let rest = Poly::from_terms(f.terms().iter().map(|&(m, c)| (content.quotient_of(&m).unwrap(), c)).collect(), field)
        .monic(field);
    match rest.len() {
        0 => return Err(Error::input("zero polynomial has no primes")),
        1 => {}
        _ if rest.homogeneous_degree() == Some(1) => primes.push(vec![rest]),
        2 => primes.extend(binomial_primes(field, &rest)?),
        _ => {
            return Err(Error::PrimeEnumerationUnavailable(format!(
                "{} is neither monomial, binomial nor linear",
                ambient.render(f)
            )))
        }
    }
    Ok(primes)
}

/// Primes of a monic binomial a + c*b with coprime monomials a, b:
/// writing a = A^d, b = B^d with d maximal, the primes correspond to the
/// irreducible factors h of t^d + c over F_p, via B^deg(h) * h(A/B).
fn binomial_primes(field: PrimeField, f: &Poly) -> Result<Vec<Vec<Poly>>> {
    let (a, _) = f.terms()[0];
    let (b, c) = f.terms()[1];
    let mut d = 0u32;
    for v in 0..crate::polyring::MAX_VARS {
        for e in [a.exponent(v), b.exponent(v)] {
            d = gcd(d, e);
        }
    }
    let root = |m: &Monomial| {
        let e: Vec<u32> = (0..crate::polyring::MAX_VARS).map(|v| m.exponent(v) / d).collect();
        Monomial::from_exponents(&e).expect("exponents shrink")
    };
    let (ra, rb) = (root(&a), root(&b));
    let lambda = field.neg(c);
    let factors = factor_binomial(field, d, lambda)?;
    Ok(factors
        .into_iter()
        .map(|h| {
            // h has coefficients h[i] for t^i, degree k
            let k = h.len() - 1;
            let terms: Vec<(Monomial, u32)> = h
                .iter()
                .enumerate()
                .filter(|(_, &co)| co != 0)
                .map(|(i, &co)| (pow_mono(&ra, i as u32).mul(&pow_mono(&rb, (k - i) as u32)), co))
                .collect();
            vec![Poly::from_terms(terms, field).monic(field)]
        })
        .collect())
}

fn pow_mono(m: &Monomial, e: u32) -> Monomial {
    (0..e).fold(Monomial::ONE, |acc, _| acc.mul(m))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct monic irreducible factors of t^d - lambda over F_p (coefficient
/// vectors, lowest degree first).
fn factor_binomial(field: PrimeField, d: u32, lambda: u32) -> Result<Vec<Vec<u32>>> {
    let p = field.modulus();
    let mut poly = vec![0u32; d as usize + 1];
    poly[0] = field.neg(lambda);
    poly[d as usize] = 1;
    let mut factors = Vec::new();
    if p <= 1 << 16 {
        for r in 0..p {
            let mut found = false;
            while poly.len() > 1 && eval(field, &poly, r) == 0 {
                poly = divide_linear(field, &poly, r);
                found = true;
            }
            if found {
                factors.push(vec![field.neg(r), 1]);
            }
        }
    } else if d > 1 {
        return Err(Error::PrimeEnumerationUnavailable(format!("root search in characteristic {p}")));
    }
    match poly.len() - 1 {
        0 => {}
        1..=3 => factors.push(poly),
        k => return Err(Error::PrimeEnumerationUnavailable(format!("rootless factor of degree {k} of a binomial"))),
    }
    Ok(factors)
}

fn eval(field: PrimeField, poly: &[u32], x: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

fn divide_linear(field: PrimeField, poly: &[u32], r: u32) -> Vec<u32> {
    // Synthetic division by (t - r).
    let n = poly.len() - 1;
    let mut q = vec![0u32; n];
    let mut carry = 0;
    for i in (0..n).rev() {
        carry = field.add(poly[i + 1], field.mul(carry, r));
        q[i] = carry;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(ideal: &[&str]) -> QuotientRing {
        let s = AmbientRing::new(&["x", "y"], 5).unwrap();
        let gens: Vec<Poly> = ideal.iter().map(|t| s.parse(t).unwrap()).collect();
        QuotientRing::new(s, &gens, false).unwrap()
    }

    fn labels(ps: &[PrimeIdeal]) -> Vec<String> {
        ps.iter().map(|p| p.label.clone()).collect()
    }

    #[test]
    fn node_flags() {
        let r = ring(&["x*y"]);
        assert_eq!(r.krull_dim(), 1);
        assert_eq!(r.depth(), 1);
        let f = r.flags();
        assert!(f.hypersurface && f.gorenstein && f.cohen_macaulay && !f.regular);
        assert_eq!(r.hilbert_numerator(), &[1, 0, -1]);
        assert_eq!((0..4).map(|d| r.hilbert_function(d)).collect::<Vec<_>>(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn polynomial_ring_is_regular() {
        let r = ring(&[]);
        assert_eq!(r.krull_dim(), 2);
        assert_eq!(r.depth(), 2);
        assert!(r.flags().regular && r.flags().gorenstein);
    }

    #[test]
    fn square_of_maximal_ideal_is_not_gorenstein() {
        let r = ring(&["x^2", "x*y", "y^2"]);
        assert_eq!(r.krull_dim(), 0);
        assert_eq!(r.depth(), 0);
        assert!(r.flags().cohen_macaulay);
        assert!(!r.flags().gorenstein);
        assert_eq!(r.ambient_betti()[2].len(), 2);
    }

    #[test]
    fn unit_and_inhomogeneous_ideals_rejected() {
        let s = AmbientRing::new(&["x", "y"], 5).unwrap();
        assert!(QuotientRing::new(s.clone(), &[Poly::one()], false).is_err());
        assert!(QuotientRing::new(s.clone(), &[s.parse("x^2 + y^3").unwrap()], false).is_err());
    }

    #[test]
    fn monomial_minimal_primes() {
        assert_eq!(labels(&ring(&["x*y"]).minimal_primes(None).unwrap()), vec!["(x)", "(y)"]);
        assert_eq!(labels(&ring(&["x^2"]).minimal_primes(None).unwrap()), vec!["(x)"]);
    }

    #[test]
    fn three_term_form_needs_declaration() {
        let s = AmbientRing::new(&["x", "y", "z"], 5).unwrap();
        let r = QuotientRing::new(s.clone(), &[s.parse("x^2 + y^2 + z^2").unwrap()], false).unwrap();
        let err = r.minimal_primes(None).unwrap_err();
        assert!(matches!(err, Error::PrimeEnumerationUnavailable(_)));
        let p = PrimeIdeal::declared(&r, "P", &[s.parse("x^2 + y^2 + z^2").unwrap()]).unwrap();
        let got = r.minimal_primes(Some(std::slice::from_ref(&p))).unwrap();
        assert_eq!(got, vec![p]);
    }

    #[test]
    fn binomial_primes_split_over_f5() {
        // -1 = 2^2 in F_5, so x^2 + y^2 = (x + 2y)(x - 2y).
        let r = ring(&["x^2 + y^2"]);
        let ps = r.minimal_primes(None).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|p| p.generators[0].homogeneous_degree() == Some(1)));
        // x^2 - 2 y^2 has no root: 2 is not a square mod 5.
        let r = ring(&["x^2 + 3*y^2"]);
        let ps = r.minimal_primes(None).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].generators[0].homogeneous_degree(), Some(2));
    }

    #[test]
    fn mixed_binomial_with_content() {
        let s = AmbientRing::new(&["x", "y", "z"], 5).unwrap();
        let r = QuotientRing::new(s.clone(), &[s.parse("x^2*y - y^3").unwrap()], false).unwrap();
        let ps = r.minimal_primes(None).unwrap();
        assert_eq!(ps.len(), 3);
    }

    #[test]
    fn primes_over_extra_generators() {
        let r = ring(&["x*y"]);
        let x = r.ambient().var(0);
        assert_eq!(labels(&r.minimal_primes_over(std::slice::from_ref(&x), None).unwrap()), vec!["(x)"]);
        let y2 = r.parse("y^2").unwrap();
        assert_eq!(labels(&r.minimal_primes_over(&[x, y2], None).unwrap()), vec!["m"]);
        let r = ring(&["x^2 + 3*y^2"]);
        assert_eq!(labels(&r.minimal_primes_over(&[r.parse("x").unwrap()], None).unwrap()), vec!["m"]);
    }

    #[test]
    fn dimension_agrees_with_cover_count_on_monomial_ideals() {
        let s = AmbientRing::new(&["x", "y", "z"], 5).unwrap();
        for ideal in [vec!["x*y", "y*z"], vec!["x*y*z"], vec!["x^2", "y^3"], vec!["x*y", "x*z", "y*z"]] {
            let gens: Vec<Poly> = ideal.iter().map(|t| s.parse(t).unwrap()).collect();
            let r = QuotientRing::new(s.clone(), &gens, false).unwrap();
            let height = r.minimal_primes(None).unwrap().iter().map(|p| p.generators.len()).min().unwrap();
            assert_eq!(r.krull_dim(), 3 - height, "{ideal:?}");
        }
    }

    #[test]
    fn flag_implications_hold() {
        for ideal in [vec!["x*y"], vec![], vec!["x^2", "x*y", "y^2"], vec!["x^2", "y^2"], vec!["x^3"]] {
            let r = ring(&ideal);
            let f = r.flags();
            assert!(!f.hypersurface || f.gorenstein);
            assert!(!f.regular || f.gorenstein);
            assert!(!f.gorenstein || f.cohen_macaulay);
            if f.cohen_macaulay {
                assert_eq!(r.codim(), 2 - r.krull_dim());
                assert_eq!(r.depth(), r.krull_dim());
            }
        }
    }
}
