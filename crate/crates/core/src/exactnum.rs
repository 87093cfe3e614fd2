//! Exact Gaussian-rational scalars and dense matrices over them.

use std::collections::BTreeMap;
use std::sync::LazyLock;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `re + im·i` with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: rat(0), im: rat(1) }
    }

    pub fn int(n: i64) -> Self {
        GaussianRational { re: rat(n), im: rat(0) }
    }

    pub fn complex_int(re: i64, im: i64) -> Self {
        GaussianRational { re: rat(re), im: rat(im) }
    }

    pub fn frac(p: i64, q: i64) -> Self {
        GaussianRational { re: ratio(p, q), im: rat(0) }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: rat(0) }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::int(1),
            1 => Self::i(),
            2 => Self::int(-1),
            _ => -Self::i(),
        }
    }

    /// `(-1)^k`.
    pub fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::int(1)
        } else {
            Self::int(-1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Lowest common denominator of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rat(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let m = self.im.abs();
                if m.is_one() {
                    write!(f, "({}{}i)", fmt_rat(&self.re), sign)
                } else {
                    write!(f, "({}{}{}i)", fmt_rat(&self.re), sign, fmt_rat(&m))
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

// Integer operands skip the gcd normalization of general rationals.
fn radd(a: &Rational, b: &Rational) -> Rational {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn rsub(a: &Rational, b: &Rational) -> Rational {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        -b
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn rmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: radd(&self.re, &o.re), im: radd(&self.im, &o.im) }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: rsub(&self.re, &o.re), im: rsub(&self.im, &o.im) }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.is_zero() || o.is_zero() {
            return GaussianRational::zero();
        }
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(rmul(&self.re, &o.re));
        }
        if self.re.is_zero() && o.re.is_zero() {
            return GaussianRational::real(-rmul(&self.im, &o.im));
        }
        if self.im.is_zero() {
            return GaussianRational::new(rmul(&self.re, &o.re), rmul(&self.re, &o.im));
        }
        if o.im.is_zero() {
            return GaussianRational::new(rmul(&self.re, &o.re), rmul(&self.im, &o.re));
        }
        GaussianRational {
            re: rsub(&rmul(&self.re, &o.re), &rmul(&self.im, &o.im)),
            im: radd(&rmul(&self.re, &o.im), &rmul(&self.im, &o.re)),
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re = radd(&self.re, &o.re);
        self.im = radd(&self.im, &o.im);
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: GaussianRational) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re = rsub(&self.re, &o.re);
        self.im = rsub(&self.im, &o.im);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_rat(&self.re), fmt_rat(&self.im)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        let p = |t: &str| Rational::from_str(t).map_err(serde::de::Error::custom);
        Ok(GaussianRational { re: p(&re)?, im: p(&im)? })
    }
}

/// Matrix of Gaussian rationals, stored sparsely by row. Only nonzero entries
/// are kept; gamma matrices and their products have one per row.
#[derive(Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, GaussianRational>>,
}

static ZERO: LazyLock<GaussianRational> = LazyLock::new(GaussianRational::zero);

impl PartialEq for ExactMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| {
                let mut x = a.iter().filter(|(_, v)| !v.is_zero());
                let mut y = b.iter().filter(|(_, v)| !v.is_zero());
                loop {
                    match (x.next(), y.next()) {
                        (None, None) => return true,
                        (Some(p), Some(q)) if p == q => continue,
                        _ => return false,
                    }
                }
            })
    }
}

impl Eq for ExactMatrix {}

impl std::hash::Hash for ExactMatrix {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.rows.hash(h);
        self.cols.hash(h);
        for (r, c, v) in self.nonzeros() {
            (r, c, v).hash(h);
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)].to_string()).collect())
            .collect();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{:>w$}", s, w = w)).collect();
            writeln!(f, "[ {} ]", padded.join(" "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        assert!(c < self.cols, "column {} out of range", c);
        self.data[r].get(&c).unwrap_or(&ZERO)
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        assert!(c < self.cols, "column {} out of range", c);
        self.data[r].entry(c).or_insert_with(GaussianRational::zero)
    }
}

fn sparse_row(row: impl IntoIterator<Item = GaussianRational>) -> BTreeMap<usize, GaussianRational> {
    row.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussianRational::one())
    }

    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.data[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        let mut it = data.into_iter();
        let data = (0..rows).map(|_| sparse_row(it.by_ref().take(cols))).collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().map(sparse_row).collect() }
    }

    /// Gaussian-integer entries given as `(re, im)` pairs.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| GaussianRational::complex_int(a, b)).collect())
                .collect(),
        )
    }

    pub fn column(v: Vec<GaussianRational>) -> Self {
        let n = v.len();
        Self::from_vec(n, 1, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> Vec<GaussianRational> {
        (0..self.rows).flat_map(|r| self.row(r)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<GaussianRational> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }

    /// Nonzero entries of row `r` as `(col, value)`.
    pub fn row_nonzeros(&self, r: usize) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.data[r].iter().filter(|(_, v)| !v.is_zero()).map(|(&c, v)| (c, v))
    }

    pub fn col_vec(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|row| row.values().all(|x| x.is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.is_square()
    }

    /// `Some(c)` when the matrix equals `c·Id`.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { GaussianRational::zero() } else { self[(0, 0)].clone() };
        (*self == Self::scalar(self.rows, c.clone())).then_some(c)
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros().len()
    }

    /// Applies `f` entrywise; `f` must send zero to zero.
    fn map_nonzero(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(&c, v)| (c, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        if f(&GaussianRational::zero()).is_zero() {
            return self.map_nonzero(f);
        }
        let data = (0..self.rows).map(|r| sparse_row((0..self.cols).map(|c| f(&self[(r, c)])))).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.nonzeros() {
            m.data[c].insert(r, v.clone());
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map_nonzero(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_nonzero(|x| x * c)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> Vec<(usize, usize, &GaussianRational)> {
        (0..self.rows).flat_map(|r| self.row_nonzeros(r).map(move |(c, v)| (r, c, v))).collect()
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn try_mul(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (&k, a) in row {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in o.row_nonzeros(k) {
                    let p = a * b;
                    match acc.entry(j) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(p);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += &p,
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    fn zip(&self, o: &ExactMatrix, sub: bool) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = self.clone();
        for (acc, row) in out.data.iter_mut().zip(&o.data) {
            for (&c, v) in row {
                match acc.entry(c) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(if sub { -v } else { v.clone() });
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        if sub {
                            *e.get_mut() -= v;
                        } else {
                            *e.get_mut() += v;
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &ExactMatrix) -> Result<Self> {
        self.zip(o, false)
    }

    pub fn try_sub(&self, o: &ExactMatrix) -> Result<Self> {
        self.zip(o, true)
    }

    /// `AB − BA`.
    pub fn commutator(&self, o: &ExactMatrix) -> ExactMatrix {
        &(self * o) - &(o * self)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, o: &ExactMatrix) -> ExactMatrix {
        &(self * o) + &(o * self)
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &ExactMatrix) -> ExactMatrix {
        let mut m = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m[(i * o.rows + k, j * o.cols + l)] = a * &o[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// `[[a, b], [c, d]]` from four equally shaped blocks.
    pub fn block2(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> ExactMatrix {
        let (r, k) = (a.rows, a.cols);
        for m in [b, c, d] {
            assert!(m.rows == r && m.cols == k, "block shape mismatch");
        }
        let mut out = Self::zeros(2 * r, 2 * k);
        for (blk, (ro, co)) in [(a, (0, 0)), (b, (0, k)), (c, (r, 0)), (d, (r, k))] {
            for i in 0..r {
                for j in 0..k {
                    out[(ro + i, co + j)] = blk[(i, j)].clone();
                }
            }
        }
        out
    }

    pub fn vstack(parts: &[ExactMatrix]) -> ExactMatrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        assert!(parts.iter().all(|m| m.cols == cols), "vstack column mismatch");
        let rows = parts.iter().map(|m| m.rows).sum();
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn hstack(parts: &[ExactMatrix]) -> ExactMatrix {
        let ts: Vec<ExactMatrix> = parts.iter().map(|m| m.transpose()).collect();
        Self::vstack(&ts).transpose()
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        mat_rank(self)
    }

    pub fn null_space(&self) -> Vec<ExactMatrix> {
        null_space(self)
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(&[self.clone(), Self::identity(n)]);
        let (rref, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = rref[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Solves `A x = b` for a column `b`; the solution must exist and be unique.
    pub fn solve_unique(&self, b: &ExactMatrix) -> Result<ExactMatrix> {
        if b.rows != self.rows || b.cols != 1 {
            return Err(Error::Shape("right-hand side must be a matching column".into()));
        }
        let n = self.cols;
        let aug = Self::hstack(&[self.clone(), b.clone()]);
        let (rref, pivots) = rref(&aug);
        if pivots.contains(&n) {
            return Err(Error::Singular("system is inconsistent".into()));
        }
        if pivots.len() < n {
            return Err(Error::Singular("solution is not unique".into()));
        }
        Ok(ExactMatrix::column((0..n).map(|r| rref[(r, n)].clone()).collect()))
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, o: &ExactMatrix) -> ExactMatrix {
        self.try_mul(o).expect("matrix shape mismatch")
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, o: &ExactMatrix) -> ExactMatrix {
        self.try_add(o).expect("matrix shape mismatch")
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, o: &ExactMatrix) -> ExactMatrix {
        self.try_sub(o).expect("matrix shape mismatch")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.map_nonzero(|x| -x)
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<GaussianRational>>::deserialize(d)?;
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(ExactMatrix::from_rows(rows))
    }
}

/// Exact rank. Rows are cleared of denominators, then eliminated with
/// Bareiss' fraction-free recurrence so entries stay Gaussian integers.
pub fn mat_rank(a: &ExactMatrix) -> usize {
    let mut m: Vec<Vec<GaussianRational>> = a.to_rows();
    for row in m.iter_mut() {
        let l = row.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, &x.denom_lcm()));
        let s = Rational::from_integer(l);
        for x in row.iter_mut() {
            *x = x.scale(&s);
        }
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut prev = GaussianRational::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in rank + 1..rows {
            let f = m[r][c].clone();
            for k in c + 1..cols {
                let v = &(&piv * &m[r][k]) - &(&f * &m[rank][k]);
                m[r][k] = &v / &prev;
            }
            m[r][c] = GaussianRational::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form and pivot columns (Gauss-Jordan over Q(i)).
pub fn rref(a: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
        if p != r {
            for k in 0..cols {
                let t = m[(p, k)].clone();
                m[(p, k)] = m[(r, k)].clone();
                m[(r, k)] = t;
            }
        }
        let inv = m[(r, c)].inv().expect("nonzero pivot");
        for k in c..cols {
            m[(r, k)] = &m[(r, k)] * &inv;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for k in c..cols {
                if m[(r, k)].is_zero() {
                    continue;
                }
                let v = &f * &m[(r, k)];
                m[(i, k)] -= &v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Sparse row: `(column, value)` pairs with strictly increasing columns.
pub type SparseRow = Vec<(usize, GaussianRational)>;

/// Incremental sparse row-echelon reducer. Each stored row is keyed by its
/// leading column; kernels are read off by back substitution.
#[derive(Debug, Clone)]
pub struct SparseReducer {
    cols: usize,
    pivot_rows: BTreeMap<usize, SparseRow>,
}

fn sparse_axpy(x: &SparseRow, f: &GaussianRational, y: &SparseRow) -> SparseRow {
    // x - f*y
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(usize::MAX, |e| e.0);
        let cj = y.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(x[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(f * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - &(f * &y[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseReducer {
    pub fn new(cols: usize) -> Self {
        SparseReducer { cols, pivot_rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces a row against the stored pivots; the result has no pivot columns.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_by_key(|e| e.0);
        let mut from = 0usize;
        loop {
            let hit = row.iter().find(|(c, _)| *c >= from && self.pivot_rows.contains_key(c)).cloned();
            match hit {
                Some((c, f)) => {
                    row = sparse_axpy(&row, &f, &self.pivot_rows[&c]);
                    from = c + 1;
                }
                None => return row,
            }
        }
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn push(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((pc, pv)) = row.first().cloned() else { return false };
        let inv = pv.inv().expect("nonzero pivot");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivot_rows.insert(pc, row);
        true
    }

    /// Kernel basis, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<GaussianRational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivot_rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (&p, row) in self.pivot_rows.iter().rev() {
                    let mut acc = GaussianRational::zero();
                    for (c, x) in row.iter().skip(1) {
                        if !v[*c].is_zero() {
                            acc += &(x * &v[*c]);
                        }
                    }
                    v[p] = -acc;
                }
                v
            })
            .collect()
    }
}

/// Exact kernel basis of `a`, as column vectors.
pub fn null_space(a: &ExactMatrix) -> Vec<ExactMatrix> {
    let mut red = SparseReducer::new(a.cols());
    for r in 0..a.rows() {
        let row: SparseRow = a
            .row(r)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        red.push(row);
    }
    red.kernel().into_iter().map(ExactMatrix::column).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::complex_int(a, b)
    }

    #[test]
    fn field_operations() {
        let x = g(3, -2);
        let y = GaussianRational::new(ratio(1, 2), ratio(5, 3));
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(&x * &x.inv().unwrap(), GaussianRational::one());
        assert_eq!(GaussianRational::i() * GaussianRational::i(), g(-1, 0));
        assert_eq!(x.conj().conj(), x);
        assert_eq!(GaussianRational::i_pow(7), g(0, -1));
    }

    #[test]
    fn lowest_terms() {
        let x = GaussianRational::new(ratio(6, -4), ratio(0, 5));
        assert_eq!(x.re.numer(), &BigInt::from(-3));
        assert_eq!(x.re.denom(), &BigInt::from(2));
        assert!(x.im.is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(0, 1).to_string(), "i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(GaussianRational::frac(-1, 2).to_string(), "-1/2");
        assert_eq!(g(1, -2).to_string(), "(1-2i)");
    }

    #[test]
    fn json_roundtrip() {
        let x = GaussianRational::new(ratio(-7, 3), ratio(1, 2));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["-7/3","1/2"]"#);
        let y: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let m = ExactMatrix::from_int_pairs(&[&[(1, 0), (0, 1)], &[(0, 0), (-2, 0)]]);
        let t = serde_json::to_string(&m).unwrap();
        assert_eq!(t, r#"[[["1","0"],["0","1"]],[["0","0"],["-2","0"]]]"#);
        assert_eq!(serde_json::from_str::<ExactMatrix>(&t).unwrap(), m);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(ExactMatrix::zeros(3, 5).rank(), 0);
        let m = ExactMatrix::from_int_pairs(&[&[(1, 0), (0, 1)], &[(0, 1), (-1, 0)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn null_space_examples() {
        assert!(ExactMatrix::identity(2).null_space().is_empty());
        let a = ExactMatrix::from_int_pairs(&[&[(1, 0), (-1, 0)]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], ExactMatrix::column(vec![g(1, 0), g(1, 0)]));
    }

    #[test]
    fn inverse_and_solve() {
        let a = ExactMatrix::from_int_pairs(&[&[(2, 0), (0, 1)], &[(1, 0), (3, -1)]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let b = ExactMatrix::column(vec![g(1, 1), g(0, 2)]);
        let x = a.solve_unique(&b).unwrap();
        assert_eq!(&a * &x, b);
        let sing = ExactMatrix::from_int_pairs(&[&[(1, 0), (2, 0)], &[(2, 0), (4, 0)]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn kron_and_blocks() {
        let s1 = ExactMatrix::from_int_pairs(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]);
        let id = ExactMatrix::identity(2);
        let k = s1.kron(&id);
        let z = ExactMatrix::zeros(2, 2);
        assert_eq!(k, ExactMatrix::block2(&z, &id, &id, &z));
    }
}

/// Basis of `{X : X·L_a = R_a·X for all a}`, solved as one sparse system.
pub fn intertwiners(left: &[ExactMatrix], right: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let n = left[0].rows();
    let var = |i: usize, j: usize| i * n + j;
    let mut red = SparseReducer::new(n * n);
    for (l, r) in left.iter().zip(right) {
        // (XL − RX)_{ij} = Σ_k X_ik L_kj − R_ik X_kj
        for i in 0..n {
            for j in 0..n {
                let mut row: BTreeMap<usize, GaussianRational> = BTreeMap::new();
                for k in 0..n {
                    let a = &l[(k, j)];
                    if !a.is_zero() {
                        *row.entry(var(i, k)).or_default() += a;
                    }
                    let b = &r[(i, k)];
                    if !b.is_zero() {
                        *row.entry(var(k, j)).or_default() -= b;
                    }
                }
                let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    red.push(row);
                }
            }
        }
    }
    red.kernel().into_iter().map(|v| ExactMatrix::from_vec(n, n, v)).collect()
}
