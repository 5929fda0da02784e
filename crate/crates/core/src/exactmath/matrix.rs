//! Dense square matrices over the rationals and fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, format_rational, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
    symmetric: bool,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, entries: vec![Rational::zero(); n * n], symmetric: true }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Self::zero(n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
            entries.extend(r);
        }
        Ok(RationalMatrix { n, entries, symmetric: false })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    /// Marks the matrix symmetric after checking every entry pair.
    pub fn into_symmetric(mut self) -> Result<Self> {
        self.check_symmetric()?;
        self.symmetric = true;
        Ok(self)
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self[(i, j)] != self[(j, i)] {
                    return Err(Error::NotSymmetricMatrix { i, j });
                }
            }
        }
        Ok(())
    }

    /// The symmetric flag: set only when symmetry was verified.
    pub fn is_flagged_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
        self.symmetric = false;
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        t.symmetric = self.symmetric;
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| &self.entries[i * self.n + i]).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut out = Self::zero(n);
        out.symmetric = false;
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.n, other.n);
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
            symmetric: self.symmetric && other.symmetric,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
            symmetric: self.symmetric,
        }
    }

    /// `A^1, …, A^m`.
    pub fn powers(&self, m: usize) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::with_capacity(m);
        for i in 0..m {
            let next = if i == 0 { self.clone() } else { out[i - 1].mul(self) };
            out.push(next);
        }
        out
    }

    /// `Tr(A^1), …, Tr(A^m)`.
    pub fn power_traces(&self, m: usize) -> Vec<Rational> {
        self.powers(m).iter().map(Self::trace).collect()
    }

    pub fn det(&self) -> Rational {
        det(&self.rows())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Coefficients `(c_0, …, c_{n-1}, 1)` of the monic characteristic
    /// polynomial, by the Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> Vec<Rational> {
        char_poly(self)
    }
}

// the symmetric flag is metadata, not part of the value
impl PartialEq for RationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for RationalMatrix {}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.n + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Faddeev–LeVerrier: `M_1 = I`, `c_{n-k} = -Tr(A M_k)/k`,
/// `M_{k+1} = A M_k + c_{n-k} I`. Divides only by the integers `1..n`.
pub fn char_poly(a: &RationalMatrix) -> Vec<Rational> {
    let n = a.n();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = RationalMatrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let c = -am.trace() / int(k as i64);
        coeffs[n - k] = c.clone();
        m = am.add(&RationalMatrix::scalar(n, c));
    }
    coeffs
}

/// Rows scaled by their common denominators, so elimination can stay in the
/// integers.
fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let d = common_denominator(row.iter());
            row.iter().map(|v| (v * Rational::from_integer(d.clone())).to_integer()).collect()
        })
        .collect()
}

/// Exact determinant (Bareiss fraction-free elimination).
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "det needs a square matrix");
    let scale: BigInt = m.iter().map(|r| common_denominator(r.iter())).product();
    let mut a = integer_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

/// Exact rank of a rectangular grid. Rows are cleared to integers and reduced
/// by fraction-free row operations with content normalization.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let rows: Vec<Vec<(usize, BigInt)>> = integer_rows(m)
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    sparse_rank(rows)
}

/// Rank of a matrix given as sparse integer rows of `(column, value)` pairs
/// sorted by column.
pub fn sparse_rank(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    row_echelon(rows).len()
}

/// Reduces sparse integer rows to echelon form; returns the nonzero rows, each
/// with a distinct leading column.
pub fn row_echelon(rows: Vec<Vec<(usize, BigInt)>>) -> Vec<Vec<(usize, BigInt)>> {
    let mut pivots: std::collections::BTreeMap<usize, Vec<(usize, BigInt)>> = Default::default();
    for mut row in rows {
        loop {
            let Some((lead, _)) = row.first() else { break };
            let lead = *lead;
            let Some(p) = pivots.get(&lead) else { break };
            row = eliminate(&row, p);
        }
        if let Some((lead, _)) = row.first() {
            pivots.insert(*lead, row);
        }
    }
    pivots.into_values().collect()
}

/// `p_lead * row - row_lead * p`, with the leading column cancelled and the
/// result divided by its content.
fn eliminate(row: &[(usize, BigInt)], p: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let g = row[0].1.gcd(&p[0].1);
    let a = &p[0].1 / &g;
    let b = &row[0].1 / &g;
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < p.len() {
        let ci = row.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, &a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&b * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &a * &row[i - 1].1 - &b * &p[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    let content = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for (_, v) in out.iter_mut() {
            *v = &*v / &content;
        }
    }
    if out.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in out.iter_mut() {
            *v = -&*v;
        }
    }
    out
}

/// Basis of the left null space `{v : v M = 0}` of an `r x c` rational matrix.
pub fn left_kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let r = m.len();
    if r == 0 {
        return Vec::new();
    }
    let c = m[0].len();
    // reduce [M | I]; rows whose M-part vanishes span the left kernel
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            v
        })
        .collect();
    let mut lead_row = 0;
    for col in 0..c {
        let Some(p) = (lead_row..r).find(|&i| !aug[i][col].is_zero()) else { continue };
        aug.swap(lead_row, p);
        let pv = aug[lead_row][col].clone();
        for i in 0..r {
            if i == lead_row || aug[i][col].is_zero() {
                continue;
            }
            let f = &aug[i][col] / &pv;
            for j in col..c + r {
                let t = &f * &aug[lead_row][j];
                aug[i][j] -= t;
            }
        }
        lead_row += 1;
        if lead_row == r {
            break;
        }
    }
    aug.into_iter().skip(lead_row).map(|row| row[c..].to_vec()).collect()
}
