//! Weighted sum-of-squares certificates `c·sDisc_k = Σ_S w_S g_S²`, where
//! `g_S` runs over the Plücker coordinates of `T_k(A)` in the trace-zero basis
//! and `w_S = ∏_{b ∈ S} norm_b`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::basis::trace_zero_basis;
use super::sample::random_symmetric;
use super::symbolic::{diagonal_norm_product, entry_count, entry_index, entry_vars, scaled_plucker, sdisc_entries};
use super::wedge::{check_covariant_k, proportionality_constant};
use crate::error::{Error, Result};
use crate::exactmath::intpoly;
use crate::exactmath::rational::{binomial, common_denominator, format_rational, Rational};
use crate::exactmath::{modp, IntPoly, MultiPoly, RationalMatrix, VarSet};
use crate::subdisc::sdisc_of_matrix;

/// Largest matrix size accepted for certificate emission.
pub const MAX_CERTIFICATE_N: usize = 6;

/// Ceiling on `binom(dim N, s) · #(monomials of degree s(s+1)/2)`, the worst-case
/// number of stored terms. `(5, 0)` sits just under it (about 2·10⁹, 29 million
/// actual terms); `(6, 1)` and `(6, 0)` are far above.
pub const CERTIFICATE_BUDGET: u128 = 4_000_000_000;

pub fn certificate_cost(n: usize, k: usize) -> u128 {
    let s = (n - k - 1) as u64;
    let dim = (entry_count(n) - 1) as u64;
    let nv = entry_count(n) as u64;
    let degree = s * (s + 1) / 2;
    binomial(dim, s).saturating_mul(binomial(nv + degree - 1, degree))
}

pub(crate) fn check_budget(n: usize, k: usize) -> Result<()> {
    if n > MAX_CERTIFICATE_N {
        return Err(Error::SizeGuard(format!("n = {n} exceeds the limit n ≤ {MAX_CERTIFICATE_N}")));
    }
    let cost = certificate_cost(n, k);
    if cost > CERTIFICATE_BUDGET {
        return Err(Error::SizeGuard(format!(
            "(n, k) = ({n}, {k}) would need up to {cost} polynomial terms (budget {CERTIFICATE_BUDGET})"
        )));
    }
    Ok(())
}

/// `numerator / denominator` with integer coefficients, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertPoly {
    numerator: IntPoly,
    denominator: BigInt,
}

impl CertPoly {
    pub fn new(numerator: IntPoly, denominator: BigInt) -> Result<Self> {
        if !denominator.is_positive() {
            return Err(Error::InvalidArgument("denominator must be positive".into()));
        }
        let g = BigInt::from(numerator.content()).gcd(&denominator);
        if g.is_zero() || g.is_one() {
            let denominator = if numerator.is_zero() { BigInt::one() } else { denominator };
            return Ok(CertPoly { numerator, denominator });
        }
        let gi = g.to_i128().ok_or(Error::Overflow)?;
        Ok(CertPoly { numerator: numerator.divide_exact(gi), denominator: denominator / g })
    }

    pub fn from_multipoly(p: &MultiPoly) -> Result<Self> {
        let (num, den) = IntPoly::from_multipoly(p)?;
        Self::new(num, den)
    }

    /// Builds `Σ c·x^e` from explicit `(exponents, coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: &[(Vec<u32>, Rational)]) -> Result<Self> {
        let den = common_denominator(terms.iter().map(|(_, c)| c));
        let mut num = IntPoly::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::InvalidArgument(format!("exponent vector {exps:?} needs {nvars} entries")));
            }
            if let Some(e) = exps.iter().find(|&&e| e > intpoly::MAX_DEGREE) {
                return Err(Error::InvalidArgument(format!("exponent {e} exceeds {}", intpoly::MAX_DEGREE)));
            }
            let scaled = (c * Rational::from_integer(den.clone())).to_integer();
            num.add_term(num.pack(exps), scaled.to_i128().ok_or(Error::Overflow)?)?;
        }
        Self::new(num, den)
    }

    /// `(exponents, coefficient)` pairs in descending graded-lex order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.numerator
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| (e, Rational::new(BigInt::from(c), self.denominator.clone())))
            .collect()
    }

    pub fn to_multipoly(&self, vars: VarSet) -> MultiPoly {
        self.numerator.to_multipoly(vars, &Rational::new(BigInt::one(), self.denominator.clone()))
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn len(&self) -> usize {
        self.numerator.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerator.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosTerm {
    pub weight: Rational,
    pub poly: CertPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosCertificate {
    pub n: usize,
    pub k: usize,
    pub c: Rational,
    pub terms: Vec<SosTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Symbolic,
    /// Exact values at independent random integer matrices.
    Sampled { points: usize },
    /// Random points modulo `2⁶¹ − 1`.
    Modular { points: usize },
}

/// Symbolic verification expands `Σ w g²`, a form of degree `2·deg` in the
/// entry variables; it is attempted only when the number of such monomials is
/// at most this. `(5, 1)` is the largest pair inside (about 9.7 million, half a
/// minute); `(5, 0)` would need up to 1.4 billion.
pub const MAX_SYMBOLIC_MONOMIALS: u128 = 20_000_000;

/// Beyond this the power-sum substitution for the right-hand side dominates.
pub const MAX_SYMBOLIC_N: usize = 5;

/// Emits the certificate for `(n, k)`, with subsets in lexicographic order.
pub fn emit_certificate(n: usize, k: usize) -> Result<SosCertificate> {
    check_covariant_k(n, k)?;
    check_budget(n, k)?;
    let basis = trace_zero_basis(n)?;
    let c = proportionality_constant(n, k)?;
    let plucker = scaled_plucker(n, k, &basis)?;
    let terms = plucker
        .subsets
        .into_iter()
        .zip(plucker.minors)
        .map(|(subset, minor)| {
            let weight: Rational = subset.iter().map(|&b| basis.norms()[b].clone()).product();
            let poly = CertPoly::new(minor, diagonal_norm_product(&basis, &subset))?;
            Ok(SosTerm { weight, poly })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SosCertificate { n, k, c, terms })
}

/// Entry vector of a symmetric integer matrix in [`entry_vars`] order.
fn entry_point(a: &RationalMatrix) -> Option<Vec<i128>> {
    let n = a.n();
    let mut out = vec![0i128; entry_count(n)];
    for i in 0..n {
        for j in i..n {
            let v = &a[(i, j)];
            if !v.is_integer() {
                return None;
            }
            out[entry_index(n, i, j)] = v.to_integer().to_i128()?;
        }
    }
    Some(out)
}

impl SosCertificate {
    pub fn vars(&self) -> VarSet {
        entry_vars(self.n)
    }

    /// `(n−k)(n−k−1)/2`, the degree of every term.
    pub fn degree(&self) -> u32 {
        ((self.n - self.k) * (self.n - self.k - 1) / 2) as u32
    }

    pub fn expected_term_count(&self) -> u128 {
        binomial((entry_count(self.n) - 1) as u64, (self.n - self.k - 1) as u64)
    }

    /// Weights and `c` positive, variables and degrees as declared.
    pub fn check_shape(&self) -> Result<()> {
        check_covariant_k(self.n, self.k)?;
        if !self.c.is_positive() {
            return Err(Error::IdentityFailed(format!("c = {} is not positive", self.c)));
        }
        let nv = entry_count(self.n);
        for (i, t) in self.terms.iter().enumerate() {
            if !t.weight.is_positive() {
                return Err(Error::IdentityFailed(format!("term {i} has weight {}", t.weight)));
            }
            if t.poly.numerator.nvars() != nv {
                return Err(Error::VariableMismatch);
            }
            if !t.poly.numerator.is_homogeneous_of(self.degree()) {
                return Err(Error::IdentityFailed(format!("term {i} is not homogeneous of degree {}", self.degree())));
            }
        }
        Ok(())
    }

    /// `Σ w_S g_S(A)²` at a symmetric matrix.
    pub fn sum_of_squares_at(&self, a: &RationalMatrix) -> Result<Rational> {
        if a.n() != self.n {
            return Err(Error::InvalidArgument("matrix size differs from certificate".into()));
        }
        let Some(point) = entry_point(a) else {
            // clear denominators: g(A) = g(qA) / q^degree
            let q = crate::exactmath::rational::common_denominator(a.rows().iter().flatten());
            let qr = Rational::from_integer(q);
            let scaled = a.scale(&qr);
            let value = self.sum_of_squares_at(&scaled)?;
            return Ok(value / num_traits::pow::pow(qr, 2 * self.degree() as usize));
        };
        Ok(self.sum_at_point(&point))
    }

    fn sum_at_point(&self, point: &[i128]) -> Rational {
        self.sums_at_points(&[point.to_vec()]).pop().expect("one point")
    }

    fn sums_at_points(&self, points: &[Vec<i128>]) -> Vec<Rational> {
        self.terms
            .par_iter()
            .filter(|t| !t.poly.is_empty())
            .map(|t| {
                let den2 = &t.poly.denominator * &t.poly.denominator;
                t.poly
                    .numerator
                    .eval_many(points)
                    .into_iter()
                    .map(|v| &t.weight * Rational::new(&v * &v, den2.clone()))
                    .collect::<Vec<_>>()
            })
            .reduce(
                || vec![Rational::zero(); points.len()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }

    /// Whether [`verify_symbolic`](Self::verify_symbolic) is within budget.
    pub fn symbolic_feasible(&self) -> bool {
        self.n <= MAX_SYMBOLIC_N
            && binomial((entry_count(self.n) + 2 * self.degree() as usize - 1) as u64, 2 * self.degree() as u64)
                <= MAX_SYMBOLIC_MONOMIALS
    }

    /// Exact polynomial identity in the entry variables, for the pairs
    /// accepted by [`symbolic_feasible`](Self::symbolic_feasible).
    pub fn verify_symbolic(&self) -> Result<()> {
        self.check_shape()?;
        if !self.symbolic_feasible() {
            return Err(Error::SizeGuard(format!(
                "symbolic verification of (n, k) = ({}, {}) exceeds the expansion budget",
                self.n, self.k
            )));
        }
        let nv = entry_count(self.n);
        // Σ w g² = Σ_f f · (Σ N²) grouped by f = w / den²
        let mut groups: BTreeMap<Rational, IntPoly> = BTreeMap::new();
        for t in &self.terms {
            let f = &t.weight / Rational::from_integer(&t.poly.denominator * &t.poly.denominator);
            let acc = groups.entry(f).or_insert_with(|| IntPoly::zero(nv));
            acc.add_mul(&t.poly.numerator, &t.poly.numerator, 1)?;
        }
        let (sdisc, l) = sdisc_entries(self.n, self.k)?;
        let rhs_factor = &self.c / Rational::from_integer(l);
        let m = groups.keys().chain(std::iter::once(&rhs_factor)).fold(BigInt::one(), |acc, f| acc.lcm(f.denom()));
        let to_i128 = |r: Rational| -> Result<i128> { r.to_integer().to_i128().ok_or(Error::Overflow) };
        let mut lhs = IntPoly::zero(nv);
        for (f, sum) in &groups {
            lhs.add_scaled(sum, to_i128(f * Rational::from_integer(m.clone()))?)?;
        }
        let rhs = sdisc.scale(to_i128(rhs_factor * Rational::from_integer(m))?)?;
        if lhs != rhs {
            let diff = lhs.sub(&rhs)?;
            let (exps, coeff) = diff.sorted_terms().into_iter().next().expect("nonzero difference");
            return Err(Error::IdentityFailed(format!(
                "c·sDisc_{} ≠ Σ w·g² for n = {}: coefficients differ at exponents {exps:?} by {coeff}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    /// Checks the identity exactly at `samples` random integer symmetric
    /// matrices with entries in `-9..=9`.
    pub fn verify_sampled(&self, samples: usize, seed: u64) -> Result<usize> {
        self.check_shape()?;
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats: Vec<RationalMatrix> = (0..samples).map(|_| random_symmetric(n, &mut rng, 9)).collect();
        let pts: Vec<Vec<i128>> = mats.iter().map(|a| entry_point(a).expect("integer samples")).collect();
        let lhs = self.sums_at_points(&pts);
        for (a, lhs) in mats.iter().zip(lhs) {
            let rhs = &self.c * sdisc_of_matrix(a, self.k)?;
            if lhs != rhs {
                let rows: Vec<Vec<String>> = a.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
                return Err(Error::IdentityFailed(format!(
                    "c·sDisc_{} = {} but Σ w·g² = {} at A = {rows:?}",
                    self.k,
                    format_rational(&rhs),
                    format_rational(&lhs)
                )));
            }
        }
        Ok(samples)
    }

    /// Randomized identity test at `points` uniform points of `F_p^{entries}`,
    /// `p = 2⁶¹ − 1`, with `sDisc_k` taken from the Hankel determinant of
    /// power traces `det [Tr A^{i+j}]_{i,j < n−k}`. A false identity survives
    /// each point with probability at most `(n−k)(n−k−1) / p`.
    pub fn verify_modular(&self, points: usize, seed: u64) -> Result<usize> {
        self.check_shape()?;
        let n = self.n;
        let m = n - self.k;
        let nv = entry_count(n);
        let field = |q: &Rational| {
            modp::from_rational(q).ok_or_else(|| Error::InvalidArgument(format!("{q} has no image mod 2⁶¹ − 1")))
        };
        let c = field(&self.c)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Vec<u64>> = (0..points).map(|_| (0..nv).map(|_| rng.gen_range(0..modp::P61)).collect()).collect();
        let factors: Vec<u64> = self
            .terms
            .iter()
            .map(|t| field(&(&t.weight / Rational::from_integer(&t.poly.denominator * &t.poly.denominator))))
            .collect::<Result<_>>()?;
        let lhs = self
            .terms
            .par_iter()
            .zip(&factors)
            .map(|(t, &f)| t.poly.numerator.eval_many_mod(&pts).into_iter().map(|v| modp::mul(f, modp::mul(v, v))).collect())
            .reduce(
                || vec![0u64; points],
                |a: Vec<u64>, b| a.into_iter().zip(b).map(|(x, y)| modp::add(x, y)).collect(),
            );
        for (pt, lhs) in pts.iter().zip(lhs) {
            let a: Vec<Vec<u64>> =
                (0..n).map(|i| (0..n).map(|j| pt[entry_index(n, i.min(j), i.max(j))]).collect()).collect();
            let traces = power_traces_mod(&a, 2 * m - 1);
            let hankel = (0..m).map(|i| (0..m).map(|j| traces[i + j]).collect()).collect();
            let rhs = modp::mul(c, modp::det(hankel));
            if lhs != rhs {
                return Err(Error::IdentityFailed(format!(
                    "c·sDisc_{} ≢ Σ w·g² mod 2⁶¹ − 1 at entries {pt:?}: {rhs} vs {lhs}",
                    self.k
                )));
            }
        }
        Ok(points)
    }

    /// Symbolic when feasible, otherwise eight random points mod `2⁶¹ − 1`.
    pub fn verify(&self, seed: u64) -> Result<Verification> {
        if self.symbolic_feasible() {
            self.verify_symbolic()?;
            Ok(Verification::Symbolic)
        } else {
            let points = self.verify_modular(8, seed)?;
            Ok(Verification::Modular { points })
        }
    }
}

/// `Tr A⁰, …, Tr A^{count−1}` over the field.
fn power_traces_mod(a: &[Vec<u64>], count: usize) -> Vec<u64> {
    let n = a.len();
    let mut power: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push((0..n).fold(0, |acc, i| modp::add(acc, power[i][i])));
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, l| modp::add(acc, modp::mul(power[i][l], a[l][j]))))
                    .collect()
            })
            .collect();
    }
    out
}
