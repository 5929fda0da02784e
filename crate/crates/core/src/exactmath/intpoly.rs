//! Integer-coefficient polynomial kernel used for the heavy symbolic work
//! (matrix powers in entry variables, Plücker minors, identity checks).
//!
//! Monomials are packed into a `u128`, six bits per exponent, with variable 0
//! in the most significant field. Numeric comparison of two keys of equal
//! degree is then lexicographic comparison of their exponent vectors, and
//! multiplying monomials is adding keys. Coefficients are `i128` with checked
//! arithmetic; any overflow surfaces as [`Error::Overflow`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::modp;
use super::poly::{Monomial, MultiPoly, VarSet};
use super::rational::Rational;
use crate::error::{Error, Result};

const BITS: u32 = 6;
const FIELD: u128 = (1 << BITS) - 1;
pub const MAX_VARS: usize = 21;
pub const MAX_DEGREE: u32 = FIELD as u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: FxHashMap<u128, i128>,
}

fn shift(nvars: usize, i: usize) -> u32 {
    BITS * (nvars - 1 - i) as u32
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        IntPoly { nvars, terms: FxHashMap::default() }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(1u128 << shift(nvars, i), 1);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pack(&self, exps: &[u32]) -> u128 {
        debug_assert_eq!(exps.len(), self.nvars);
        exps.iter().enumerate().fold(0u128, |acc, (i, &e)| {
            assert!(e <= MAX_DEGREE, "exponent {e} too large for packed monomial");
            acc | ((e as u128) << shift(self.nvars, i))
        })
    }

    pub fn unpack(&self, key: u128) -> Vec<u32> {
        (0..self.nvars)
            .map(|i| ((key >> shift(self.nvars, i)) & FIELD) as u32)
            .collect()
    }

    fn key_degree(&self, key: u128) -> u32 {
        (0..self.nvars)
            .map(|i| ((key >> shift(self.nvars, i)) & FIELD) as u32)
            .sum()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&k| self.key_degree(k)).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|&k| self.key_degree(k) == d)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u128, i128)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff_of(&self, exps: &[u32]) -> i128 {
        self.terms.get(&self.pack(exps)).copied().unwrap_or(0)
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(u128, i128)> {
        self.terms
            .iter()
            .max_by_key(|(&k, _)| (self.key_degree(k), k))
            .map(|(&k, &c)| (k, c))
    }

    pub fn add_term(&mut self, key: u128, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c).ok_or(Error::Overflow)?;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &IntPoly, factor: i128) -> Result<()> {
        assert_eq!(self.nvars, other.nvars);
        if factor == 0 {
            return Ok(());
        }
        for (&k, &c) in &other.terms {
            self.add_term(k, c.checked_mul(factor).ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &IntPoly) -> Result<IntPoly> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn sub(&self, other: &IntPoly) -> Result<IntPoly> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }

    pub fn scale(&self, factor: i128) -> Result<IntPoly> {
        let mut out = IntPoly::zero(self.nvars);
        out.add_scaled(self, factor)?;
        Ok(out)
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = IntPoly::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        if self.degree().unwrap() + other.degree().unwrap() > MAX_DEGREE {
            return Err(Error::Overflow);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        out.terms.reserve(large.len() * 2);
        for (&ka, &ca) in &small.terms {
            for (&kb, &cb) in &large.terms {
                out.add_term(ka + kb, ca.checked_mul(cb).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// `self += sign · a · b` without materializing the product.
    pub fn add_mul(&mut self, a: &IntPoly, b: &IntPoly, sign: i128) -> Result<()> {
        assert!(self.nvars == a.nvars && a.nvars == b.nvars);
        if a.is_zero() || b.is_zero() {
            return Ok(());
        }
        if a.degree().unwrap() + b.degree().unwrap() > MAX_DEGREE {
            return Err(Error::Overflow);
        }
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        self.terms.reserve(large.len());
        for (&ka, &ca) in &small.terms {
            let ca = ca.checked_mul(sign).ok_or(Error::Overflow)?;
            for (&kb, &cb) in &large.terms {
                self.add_term(ka + kb, ca.checked_mul(cb).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(())
    }

    pub fn pow(&self, e: u32) -> Result<IntPoly> {
        let mut acc = IntPoly::constant(self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Converts a rational polynomial to `(integer polynomial, d)` with
    /// `p = integer / d`, `d` the least common denominator.
    pub fn from_multipoly(p: &MultiPoly) -> Result<(IntPoly, BigInt)> {
        let d = p.denominator();
        let mut out = IntPoly::zero(p.nvars());
        for (m, c) in p.terms() {
            let scaled = c * Rational::from_integer(d.clone());
            let v = scaled.to_integer().to_i128().ok_or(Error::Overflow)?;
            let key = out.pack(m.exponents());
            out.add_term(key, v)?;
        }
        Ok((out, d))
    }

    /// `self * factor` as a rational polynomial over `vars`.
    pub fn to_multipoly(&self, vars: VarSet, factor: &Rational) -> MultiPoly {
        assert_eq!(vars.len(), self.nvars);
        let mut terms = BTreeMap::new();
        if !factor.is_zero() {
            for (&k, &c) in &self.terms {
                terms.insert(Monomial(self.unpack(k)), Rational::from_integer(BigInt::from(c)) * factor);
            }
        }
        MultiPoly::from_map_unchecked(vars, terms)
    }

    pub fn eval_big(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let maxdeg = self.terms.keys().map(|&k| self.key_degree(k)).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .map(|x| {
                let mut v = vec![BigInt::one()];
                for j in 0..maxdeg {
                    let next = &v[j] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BigInt::zero();
        for (&k, &c) in &self.terms {
            let mut t = BigInt::from(c);
            for (i, pw) in powers.iter().enumerate() {
                let e = ((k >> shift(self.nvars, i)) & FIELD) as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact value at an integer point, or `None` if an intermediate
    /// Values at several integer points in one pass over the terms. Uses plain
    /// `i128` arithmetic when `Σ|c| · max|x|^deg` provably fits, `BigInt` otherwise.
    pub fn eval_many(&self, points: &[Vec<i128>]) -> Vec<BigInt> {
        let np = points.len();
        assert!(points.iter().all(|p| p.len() == self.nvars));
        let deg = self.degree().unwrap_or(0) as usize;
        let max_abs = points.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        let coeff_sum: BigInt = self.terms.values().map(|c| BigInt::from(c.unsigned_abs())).sum();
        let bound = coeff_sum * num_traits::pow::pow(BigInt::from(max_abs), deg);
        if bound.bits() > 126 {
            return points
                .iter()
                .map(|p| self.eval_big(&p.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()))
                .collect();
        }
        // powers[(var · (deg+1) + e) · np + point]
        let mut powers = vec![0i128; self.nvars * (deg + 1) * np];
        for i in 0..self.nvars {
            for (p, pt) in points.iter().enumerate() {
                let mut v = 1i128;
                for e in 0..=deg {
                    powers[(i * (deg + 1) + e) * np + p] = v;
                    v = v.wrapping_mul(pt[i]);
                }
            }
        }
        let mut acc = vec![0i128; np];
        let mut term = vec![0i128; np];
        for (&key, &c) in &self.terms {
            term.fill(c);
            let mut rest = key;
            while rest != 0 {
                let field = rest.trailing_zeros() / BITS;
                let e = ((rest >> (field * BITS)) & FIELD) as usize;
                rest &= !(FIELD << (field * BITS));
                let var = self.nvars - 1 - field as usize;
                let row = &powers[(var * (deg + 1) + e) * np..][..np];
                for (t, &x) in term.iter_mut().zip(row) {
                    *t *= x;
                }
            }
            for (a, &t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
        }
        acc.into_iter().map(BigInt::from).collect()
    }

    /// Values modulo `2⁶¹ − 1` at several points (coordinates already reduced).
    pub fn eval_many_mod(&self, points: &[Vec<u64>]) -> Vec<u64> {
        let np = points.len();
        assert!(points.iter().all(|p| p.len() == self.nvars));
        let deg = self.degree().unwrap_or(0) as usize;
        let mut powers = vec![0u64; self.nvars * (deg + 1) * np];
        for i in 0..self.nvars {
            for (p, pt) in points.iter().enumerate() {
                let mut v = 1;
                for e in 0..=deg {
                    powers[(i * (deg + 1) + e) * np + p] = v;
                    v = modp::mul(v, pt[i]);
                }
            }
        }
        let mut acc = vec![0u64; np];
        let mut term = vec![0u64; np];
        for (&key, &c) in &self.terms {
            term.fill(modp::from_i128(c));
            let mut rest = key;
            while rest != 0 {
                let field = rest.trailing_zeros() / BITS;
                let e = ((rest >> (field * BITS)) & FIELD) as usize;
                rest &= !(FIELD << (field * BITS));
                let var = self.nvars - 1 - field as usize;
                let row = &powers[(var * (deg + 1) + e) * np..][..np];
                for (t, &x) in term.iter_mut().zip(row) {
                    *t = modp::mul(*t, x);
                }
            }
            for (a, &t) in acc.iter_mut().zip(&term) {
                *a = modp::add(*a, t);
            }
        }
        acc
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i128 {
        self.terms.values().fold(0i128, |g, &c| num_integer::Integer::gcd(&g, &c))
    }

    /// Divides every coefficient exactly by `d`.
    pub fn divide_exact(&self, d: i128) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        out.terms = self
            .terms
            .iter()
            .map(|(&k, &c)| {
                debug_assert_eq!(c % d, 0);
                (k, c / d)
            })
            .collect();
        out
    }

    /// Sorted (descending graded-lex) list of `(exponents, coefficient)`.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, i128)> {
        let mut v: Vec<(u32, u128, i128)> =
            self.terms.iter().map(|(&k, &c)| (self.key_degree(k), k, c)).collect();
        v.sort_unstable_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        v.into_iter().map(|(_, k, c)| (self.unpack(k), c)).collect()
    }
}

/// Determinant of a square matrix of integer polynomials by cofactor expansion
/// along the first row, memoizing sub-minors on column subsets.
pub fn poly_det(m: &[Vec<IntPoly>]) -> Result<IntPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let nvars = m[0][0].nvars();
    // minors of the bottom `r` rows indexed by column bitmask
    let mut prev: FxHashMap<u32, IntPoly> = FxHashMap::default();
    prev.insert(0, IntPoly::constant(nvars, 1));
    for r in (0..n).rev() {
        let mut next: FxHashMap<u32, IntPoly> = FxHashMap::default();
        for (&mask, minor) in &prev {
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                // sign from the position of c among the chosen columns
                let pos = (mask & ((1u32 << c) - 1)).count_ones();
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let term = m[r][c].mul(minor)?;
                let entry = next.entry(mask | (1 << c)).or_insert_with(|| IntPoly::zero(nvars));
                entry.add_scaled(&term, sign)?;
            }
        }
        prev = next;
    }
    Ok(prev.remove(&((1u32 << n) - 1)).unwrap_or_else(|| IntPoly::zero(nvars)))
}
