//! Exact linear algebra over ℚ and 𝔽₂.
//!
//! Everything here is exact: rationals are arbitrary precision and there is
//! no floating point. Ranks and kernels are computed by sparse column
//! reduction (the usual "lowest pivot" elimination used for boundary
//! matrices), which keeps fill-in small on the very sparse matrices that
//! appear in simplicial and poset cochain complexes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient field selector used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    /// The rationals.
    #[serde(rename = "q")]
    Rational,
    /// The field with two elements.
    #[serde(rename = "f2")]
    Mod2,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "q"),
            Coefficients::Mod2 => write!(f, "f2"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "q" | "Q" => Ok(Coefficients::Rational),
            "f2" | "F2" | "z2" | "Z2" => Ok(Coefficients::Mod2),
            other => Err(format!("unknown coefficient field `{other}` (expected q or f2)")),
        }
    }
}

/// Minimal field interface needed by the elimination routines.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

/// Exact rational numbers.
pub type Rational = BigRational;

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Exact rational with an `i64` fast path; values that do not fit fall
/// back to big integers. The representation is canonical: a reduced
/// fraction with positive denominator, small whenever it fits.
#[derive(Clone, Debug)]
pub enum FastRational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FastRational {
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => FastRational::Small(n, d),
            _ => FastRational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        use num_traits::ToPrimitive;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => FastRational::Small(n, d),
            _ => FastRational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            FastRational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            FastRational::Big(r) => r.clone(),
        }
    }

    fn combine(&self, other: &Self, small: impl Fn(i128, i128, i128, i128) -> (i128, i128), big: impl Fn(BigRational, BigRational) -> BigRational) -> Self {
        match (self, other) {
            (FastRational::Small(a, b), FastRational::Small(c, d)) => {
                let (n, m) = small(*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(n, m)
            }
            _ => Self::from_big(big(self.to_big(), other.to_big())),
        }
    }
}

impl PartialEq for FastRational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FastRational::Small(a, b), FastRational::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Field for FastRational {
    fn zero() -> Self {
        FastRational::Small(0, 1)
    }
    fn one() -> Self {
        FastRational::Small(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, FastRational::Small(0, _))
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b, c, d| (a * d + c * b, b * d), |x, y| x + y)
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b, c, d| (a * d - c * b, b * d), |x, y| x - y)
    }
    fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b, c, d| (a * c, b * d), |x, y| x * y)
    }
    fn neg(&self) -> Self {
        match self {
            FastRational::Small(n, d) => Self::from_i128(-(*n as i128), *d as i128),
            FastRational::Big(r) => Self::from_big(-r),
        }
    }
    fn inv(&self) -> Self {
        match self {
            FastRational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            FastRational::Big(r) => Self::from_big(r.recip()),
        }
    }
    fn from_i64(n: i64) -> Self {
        FastRational::Small(n, 1)
    }
}

/// An element of 𝔽₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf2(pub bool);

impl Field for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
    fn from_i64(n: i64) -> Self {
        Gf2(n.rem_euclid(2) == 1)
    }
}

/// Sparse vector: `(index, value)` pairs sorted by index, no explicit zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_from_entries<F: Field>(mut entries: Vec<(usize, F)>) -> SparseVec<F> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = w.add(&v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + c·b` for sparse vectors.
fn axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = c.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Result of reducing a list of columns.
#[derive(Clone, Debug)]
pub struct ColumnReduction<F> {
    pub rank: usize,
    /// Basis of the kernel (as combinations of the input columns), present
    /// only when tracking was requested.
    pub kernel: Vec<SparseVec<F>>,
}

/// Column-reduces `cols`; returns the rank and optionally a kernel basis.
pub fn reduce_columns<F: Field>(cols: Vec<SparseVec<F>>, track_kernel: bool) -> ColumnReduction<F> {
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<SparseVec<F>> = Vec::with_capacity(cols.len());
    let mut combos: Vec<SparseVec<F>> = Vec::new();
    let mut kernel = Vec::new();

    for (j, mut col) in cols.into_iter().enumerate() {
        let mut combo: SparseVec<F> = if track_kernel { vec![(j, F::one())] } else { Vec::new() };
        while let Some((low, val)) = col.last().cloned() {
            match pivot_owner.get(&low) {
                Some(&owner) => {
                    let other = &reduced[owner];
                    let factor = val.mul(&other.last().expect("pivot column is nonzero").1.inv()).neg();
                    col = axpy(&col, &factor, other);
                    if track_kernel {
                        combo = axpy(&combo, &factor, &combos[owner]);
                    }
                }
                None => {
                    pivot_owner.insert(low, j);
                    break;
                }
            }
        }
        if col.is_empty() && track_kernel {
            kernel.push(combo.clone());
        }
        reduced.push(col);
        if track_kernel {
            combos.push(combo);
        }
    }

    ColumnReduction { rank: pivot_owner.len(), kernel }
}

/// Row indices of the pivots (lowest nonzero entries) after reduction;
/// their count is the rank.
pub fn pivot_rows<F: Field>(cols: Vec<SparseVec<F>>) -> Vec<usize> {
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<SparseVec<F>> = Vec::with_capacity(cols.len());
    for (j, mut col) in cols.into_iter().enumerate() {
        while let Some((low, val)) = col.last().cloned() {
            match pivot_owner.get(&low) {
                Some(&owner) => {
                    let other = &reduced[owner];
                    let factor = val.mul(&other.last().expect("pivot column is nonzero").1.inv()).neg();
                    col = axpy(&col, &factor, other);
                }
                None => {
                    pivot_owner.insert(low, j);
                    break;
                }
            }
        }
        reduced.push(col);
    }
    let mut rows: Vec<usize> = pivot_owner.into_keys().collect();
    rows.sort_unstable();
    rows
}

/// Pivot rows of the first `split` columns, and the rank of all columns,
/// from one reduction.
pub fn prefix_pivots<F: Field>(cols: Vec<SparseVec<F>>, split: usize) -> (Vec<usize>, usize) {
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<SparseVec<F>> = Vec::with_capacity(cols.len());
    for (j, mut col) in cols.into_iter().enumerate() {
        while let Some((low, val)) = col.last().cloned() {
            match pivot_owner.get(&low) {
                Some(&owner) => {
                    let other = &reduced[owner];
                    let factor = val.mul(&other.last().expect("pivot column is nonzero").1.inv()).neg();
                    col = axpy(&col, &factor, other);
                }
                None => {
                    pivot_owner.insert(low, j);
                    break;
                }
            }
        }
        reduced.push(col);
    }
    let total = pivot_owner.len();
    let mut prefix: Vec<usize> = pivot_owner.into_iter().filter(|&(_, j)| j < split).map(|(row, _)| row).collect();
    prefix.sort_unstable();
    (prefix, total)
}

/// Rank of the matrix whose columns are `cols`.
pub fn rank<F: Field>(cols: Vec<SparseVec<F>>) -> usize {
    reduce_columns(cols, false).rank
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![<Rational as Zero>::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = <Rational as One>::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, values: Vec<Vec<Rational>>) -> Option<Self> {
        if values.len() != rows || values.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix { rows, cols, data: values.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(values: &[&[i64]]) -> Self {
        let rows = values.len();
        let cols = values.first().map_or(0, |r| r.len());
        let data = values
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&v| Rational::from_i64(v))
            })
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if Zero::is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !Zero::is_zero(b) {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        out
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec<Rational> {
        (0..self.rows)
            .filter_map(|r| {
                let v = self.get(r, c);
                (!Zero::is_zero(v)).then(|| (r, v.clone()))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank((0..self.cols).map(|c| self.column(c)).collect())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Entries rendered as `"p/q"` (or `"p"` for integers), row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect()).collect()
    }

    /// Parses string rows; `rows`/`cols` give the expected shape (needed
    /// when one side is zero-dimensional).
    pub fn parse(rows: usize, cols: usize, values: &[Vec<String>]) -> Result<Matrix, String> {
        if rows == 0 || cols == 0 {
            let empty = values.is_empty() || values.iter().all(|r| r.is_empty());
            return if empty && (values.len() == rows || values.is_empty()) {
                Ok(Matrix::zeros(rows, cols))
            } else {
                Err(format!("expected an empty {rows}x{cols} matrix"))
            };
        }
        if values.len() != rows || values.iter().any(|r| r.len() != cols) {
            return Err(format!("expected a {rows}x{cols} matrix"));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for v in values.iter().flatten() {
            data.push(parse_rational(v)?);
        }
        Ok(Matrix { rows, cols, data })
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            let q: BigInt = q.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| format!("bad rational `{s}`"))?),
    };
    Ok(parsed)
}

/// True when `r` is ±1; handy for sign checks in tests and reports.
pub fn is_unit_sign(r: &Rational) -> bool {
    r.abs() == <Rational as One>::one()
}
