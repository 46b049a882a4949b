//! Graded polynomials over F_p in the degree-reverse-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::PrimeField;

/// Upper bound on the number of variables of an ambient ring.
pub const MAX_VARS: usize = 8;

/// A monomial in at most [`MAX_VARS`] variables; all variables have degree one.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0 };

    pub fn var(i: usize) -> Monomial {
        let mut exps = [0; MAX_VARS];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn from_exponents(e: &[u32]) -> Result<Monomial> {
        if e.len() > MAX_VARS {
            return Err(Error::input("too many variables in monomial"));
        }
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0;
        for (i, &x) in e.iter().enumerate() {
            exps[i] = u8::try_from(x).map_err(|_| Error::input("exponent too large"))?;
            deg += x;
        }
        Ok(Monomial { exps, deg })
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, &b) in exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(b).expect("monomial exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (a, &b) in exps.iter_mut().zip(&self.exps) {
            *a -= b;
        }
        Some(Monomial { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0;
        for (e, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(&other.exps)) {
            *e = (*a).max(*b);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0;
        for (e, (a, b)) in exps.iter_mut().zip(self.exps.iter().zip(&other.exps)) {
            *e = (*a).min(*b);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&i| self.exps[i] > 0).collect()
    }
}

impl Ord for Monomial {
    /// Degree first, then reverse lexicographic: the monomial with the smaller
    /// exponent in the last differing variable is the larger one.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len().max(1);
        write!(f, "m{:?}", &self.exps[..n])
    }
}

/// All monomials of degree `d` in `n` variables, in decreasing order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps).expect("degree fits"));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Sparse polynomial: terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Poly {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn monomial(m: Monomial, c: u32) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        Poly::monomial(Monomial::var(i), 1)
    }

    /// Collects arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, u32)>, f: PrimeField) -> Poly {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c % f.modulus()),
                _ => out.push((m, c % f.modulus())),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    /// Nonzero constant value, if this is a unit.
    pub fn as_unit(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|t| t.0.support_len()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, f: PrimeField) -> Poly {
        self.combine(other, 1, f)
    }

    pub fn sub(&self, other: &Poly, f: PrimeField) -> Poly {
        self.combine(other, f.neg(1), f)
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Poly, c: u32, f: PrimeField) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, f.mul(c, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(c, b[j].1));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, v)| (m, f.mul(c, v))));
        Poly { terms: out }
    }

    pub fn scale(&self, c: u32, f: PrimeField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, v)| (m, f.mul(c, v))).collect() }
    }

    pub fn neg(&self, f: PrimeField) -> Poly {
        self.scale(f.neg(1), f)
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, f: PrimeField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(u, v)| (u.mul(m), f.mul(c, v))).collect() }
    }

    pub fn mul(&self, other: &Poly, f: PrimeField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero();
        for &(m, c) in &small.terms {
            acc = acc.add(&big.mul_term(&m, c, f), f);
        }
        acc
    }

    pub fn pow(&self, e: u32, f: PrimeField) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self, f);
        }
        r
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self, f: PrimeField) -> Poly {
        match self.lead() {
            Some((_, c)) if c != 1 => self.scale(f.inv(c), f),
            _ => self.clone(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.binary_search_by(|t| m.cmp(&t.0)).map(|i| self.terms[i].1).unwrap_or(0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|i| format!("x{i}")).collect();
        write!(f, "{}", render_poly(self, &names))
    }
}

/// Canonical text form, e.g. `x^2*y + 3*y^3`; coefficients are residues in [0, p).
pub fn render_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::with_capacity(p.len());
    for &(m, c) in p.terms() {
        let mut factors = Vec::new();
        for (i, name) in names.iter().enumerate().take(MAX_VARS) {
            match m.exponent(i) {
                0 => {}
                1 => factors.push(name.clone()),
                e => factors.push(format!("{name}^{e}")),
            }
        }
        let s = if factors.is_empty() {
            c.to_string()
        } else if c == 1 {
            factors.join("*")
        } else {
            format!("{c}*{}", factors.join("*"))
        };
        parts.push(s);
    }
    parts.join(" + ")
}

/// The ambient polynomial ring S = F_p[x_1, ..., x_n] with the grevlex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientRing {
    names: Vec<String>,
    field: PrimeField,
}

impl AmbientRing {
    pub fn new<S: AsRef<str>>(names: &[S], p: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if names.is_empty() {
            return Err(Error::input("an ambient ring needs at least one variable"));
        }
        if names.len() > MAX_VARS {
            return Err(Error::input(format!("at most {MAX_VARS} variables are supported")));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::input(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::input(format!("duplicate variable name {n}")));
            }
        }
        Ok(AmbientRing { names, field })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars());
        Poly::var(i)
    }

    pub fn variables(&self) -> Vec<Poly> {
        (0..self.nvars()).map(Poly::var).collect()
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if f.support_len() > self.nvars() {
            return Err(Error::input("polynomial does not belong to this ring"));
        }
        Ok(())
    }

    /// Exact product, rejecting polynomials that use variables outside the ring.
    pub fn multiply(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check(f)?;
        self.check(g)?;
        Ok(f.mul(g, self.field))
    }

    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.cmp(b)
    }

    pub fn render(&self, f: &Poly) -> String {
        render_poly(f, &self.names)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut p = PolyParser { ring: self, chars: text.chars().collect(), pos: 0 };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::input(format!("unexpected character {:?} in polynomial {text:?}", p.chars[p.pos])));
        }
        Ok(poly)
    }
}

struct PolyParser<'a> {
    ring: &'a AmbientRing,
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let f = self.ring.field;
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, f);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?, f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let f = self.ring.field;
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?, f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg(self.ring.field));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| Error::input("exponent too large"))?;
            return Ok(base.pow(e, self.ring.field));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::input(format!("expected integer at offset {start}")))
    }

    fn atom(&mut self) -> Result<Poly> {
        let f = self.ring.field;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::input("missing closing parenthesis in polynomial"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant((v % f.modulus() as u64) as u32))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = self
                    .ring
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::input(format!("unknown variable {name}")))?;
                Ok(Poly::var(idx))
            }
            Some(c) => Err(Error::input(format!("unexpected character {c:?} in polynomial"))),
            None => Err(Error::input("unexpected end of polynomial")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s() -> AmbientRing {
        AmbientRing::new(&["x", "y"], 5).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let r = s();
        let f = r.parse("x^2 + 3*y").unwrap();
        assert_eq!(r.multiply(&Poly::one(), &f).unwrap(), f);
        let xy = r.multiply(&r.var(0), &r.var(1)).unwrap();
        assert_eq!(r.render(&xy), "x*y");
        let sq = r.parse("(x+y)^2").unwrap();
        assert_eq!(r.render(&sq), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let big = AmbientRing::new(&["x", "y", "z"], 5).unwrap();
        let z = big.var(2);
        assert!(s().multiply(&z, &Poly::one()).is_err());
    }

    #[test]
    fn grevlex_examples() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert_eq!(x.cmp(&x), Ordering::Equal);
        assert_eq!(x.mul(&x).cmp(&x.mul(&y)), Ordering::Greater);
        assert_eq!(x.cmp(&y), Ordering::Greater);
        // grevlex, not lex: x*z < y^2
        let z = Monomial::var(2);
        assert_eq!(x.mul(&z).cmp(&y.mul(&y)), Ordering::Less);
    }

    #[test]
    fn render_and_parse_negative_coefficients() {
        let r = s();
        let f = r.parse("x - y").unwrap();
        assert_eq!(r.render(&f), "x + 4*y");
        assert_eq!(r.parse(&r.render(&f)).unwrap(), f);
        assert!(r.parse("x + w").is_err());
        assert!(r.parse("x +").is_err());
    }

    #[test]
    fn homogeneity() {
        let r = s();
        assert_eq!(r.parse("x*y + y^2").unwrap().homogeneous_degree(), Some(2));
        assert_eq!(r.parse("x + y^2").unwrap().homogeneous_degree(), None);
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        let ms = monomials_of_degree(3, 4);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(|e| Monomial::from_exponents(&e).unwrap())
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((arb_mono(), 0u32..5), 0..5)
            .prop_map(|t| Poly::from_terms(t, PrimeField::new(5).unwrap()))
    }

    proptest! {
        #[test]
        fn order_is_total_and_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            if a > b {
                prop_assert!(a.mul(&c) > b.mul(&c));
                prop_assert!(b < a);
            }
            if a.degree() > b.degree() {
                prop_assert!(a > b);
            }
            prop_assert_eq!(a == b, a.cmp(&b) == Ordering::Equal);
        }

        #[test]
        fn multiplication_is_associative_and_commutative(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let k = PrimeField::new(5).unwrap();
            prop_assert_eq!(f.mul(&g, k), g.mul(&f, k));
            prop_assert_eq!(f.mul(&g, k).mul(&h, k), f.mul(&g.mul(&h, k), k));
        }
    }
}
