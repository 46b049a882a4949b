//! Arithmetic in the prime field F_p and dense matrix algebra over it.
//!
//! Row reduction pivots on the leftmost nonzero column and the first row
//! carrying it, so every result is reproducible bit for bit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Modulus used by fixtures unless a session picks another one.
pub const DEFAULT_MODULUS: u32 = 5;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::input(format!("characteristic {p} is not an odd prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::input(format!("characteristic {p} is too large")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn scalar(self, v: i64) -> Scalar {
        Scalar { value: self.from_i64(v), field: self }
    }
}

/// An element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: PrimeField,
}

impl Scalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Scalar> {
        (self.value != 0).then(|| Scalar { value: self.field.inv(self.value), field: self.field })
    }

    fn check(self, other: Scalar) {
        assert_eq!(self.field, other.field, "scalars from different fields");
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.check(o);
        Scalar { value: self.field.add(self.value, o.value), field: self.field }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.check(o);
        Scalar { value: self.field.sub(self.value, o.value), field: self.field }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.check(o);
        Scalar { value: self.field.mul(self.value, o.value), field: self.field }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { value: self.field.neg(self.value), field: self.field }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`Matrix::row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged matrix rows"));
        }
        let data = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    pub fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::input("vector length does not match column count"));
        }
        let f = self.field;
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect())
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { field: self.field, rows: self.rows, cols, data }
    }

    /// Reduced row-echelon form with deterministic pivoting.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        RowReduction { reduced: m, rank, pivots }
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let cur = self.get(i, j);
                        self.set(i, j, f.sub(cur, f.mul(factor, v)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Columns form a basis of the null space {v : Av = 0}.
    pub fn kernel_basis(&self) -> Matrix {
        let red = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let f = self.field;
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in red.pivots.iter().enumerate() {
                k.set(pc, j, f.neg(red.reduced.get(i, fc)));
            }
        }
        k
    }

    /// Some solution of Av = b, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::input(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let bm = Matrix::from_raw(self.field, self.rows, 1, b.to_vec());
        let aug = self.hstack(&bm);
        let red = aug.row_reduce();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.reduced.get(i, self.cols);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(F_{}, {}x{}) [", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", self.row(r))?;
            if r + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

/// Incremental rank tracker: keeps an echelon basis of the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonSpace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        EchelonSpace { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored basis; returns the remainder.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        v
    }

    /// Inserts `v`; returns true when it was independent of the stored vectors.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn identity_reduces_to_itself() {
        let id = Matrix::identity(f5(), 2);
        let red = id.row_reduce();
        assert_eq!(red.reduced, id);
        assert_eq!(red.rank, 2);
        assert_eq!(red.pivots, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let z = Matrix::zeros(f5(), 3, 2);
        let red = z.row_reduce();
        assert_eq!(red.reduced, z);
        assert_eq!(red.rank, 0);
        assert!(red.pivots.is_empty());
    }

    #[test]
    fn dependent_rows() {
        let a = Matrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(a.row_reduce().rank, 1);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![3, 1]);
    }

    #[test]
    fn kernel_examples() {
        let a = Matrix::from_rows(f5(), &[vec![1, 0]]).unwrap();
        assert_eq!(a.kernel_basis().column(0), vec![0, 1]);
        let inv = Matrix::from_rows(f5(), &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(inv.kernel_basis().cols(), 0);
    }

    #[test]
    fn solve_examples() {
        let f = f5();
        let id = Matrix::identity(f, 3);
        assert_eq!(id.solve(&[1, 4, 2]).unwrap(), Some(vec![1, 4, 2]));
        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let two = Matrix::from_rows(f, &[vec![2]]).unwrap();
        assert_eq!(two.solve(&[1]).unwrap(), Some(vec![3]));
        assert!(two.solve(&[1, 2]).is_err());
    }

    #[test]
    fn field_rejects_non_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn scalar_ops() {
        let f = f5();
        let a = f.scalar(2);
        let b = f.scalar(-1);
        assert_eq!((a * b).value(), 3);
        assert_eq!((a + b).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 3);
        assert!(f.scalar(10).inv().is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..5, r * c)
                .prop_map(move |d| Matrix::from_raw(PrimeField::new(5).unwrap(), r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in arb_matrix()) {
            let once = a.row_reduce();
            let twice = once.reduced.row_reduce();
            prop_assert_eq!(&once.reduced, &twice.reduced);
        }

        #[test]
        fn rank_nullity(a in arb_matrix()) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            let prod = a.mul(&k).unwrap();
            prop_assert!(prod.is_zero());
        }

        #[test]
        fn echelon_space_tracks_rank(a in arb_matrix()) {
            let mut space = EchelonSpace::new(a.field(), a.cols());
            for r in 0..a.rows() {
                space.insert(a.row(r));
            }
            prop_assert_eq!(space.rank(), a.rank());
        }
    }
}
