//! Graded pieces of the vanishing ideal of
//! `D_k = {x ∈ Q^n : at most n−k−1 distinct coordinates}` and their
//! symmetric-group invariants.
//!
//! The ideal is taken to be generated by the Vandermonde products `δ(x_S)`,
//! `|S| = n−k` (a cited input fact). Every degree-`d` element is then a
//! combination of `δ(x_S)·m` with `m` a monomial of degree
//! `d − binom(n−k, 2)`, so the invariants of degree `d` are spanned by the
//! images of those products under the Reynolds operator.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::matrix::sparse_rank;
use crate::exactmath::rational::{common_denominator, Rational};
use crate::exactmath::{Monomial, MultiPoly};
use crate::subdisc::check_k;
use crate::symfun::{delta_nk, reynolds, vandermonde_delta, x_vars};

/// Largest `n` for the invariant sweeps.
pub const MAX_IDEAL_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpanReport {
    pub n: usize,
    pub k: usize,
    pub degree: usize,
    /// Number of products `δ(x_S)·m` of exactly this degree.
    pub generator_count: usize,
    /// Dimension of the span of their symmetrizations.
    pub invariant_rank: usize,
    /// The span is the line through `Δ_{n,k}`; only meaningful at degree
    /// `(n−k)(n−k−1)`.
    pub spans_delta: bool,
}

/// Degree of each generator `δ(x_S)`.
pub fn generator_degree(n: usize, k: usize) -> usize {
    (n - k) * (n - k - 1) / 2
}

fn monomials_of_degree(n: usize, d: usize) -> Vec<MultiPoly> {
    let vars = x_vars(n);
    let mut out: Vec<Monomial> = (0..n)
        .combinations_with_replacement(d)
        .map(|idx| {
            let mut e = vec![0u32; n];
            for i in idx {
                e[i] += 1;
            }
            Monomial(e)
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.into_iter()
        .map(|m| MultiPoly::from_terms(vars.clone(), [(m, Rational::from_integer(1.into()))]))
        .collect()
}

fn products_of_degree(n: usize, k: usize, d: usize) -> Result<Vec<MultiPoly>> {
    let g = generator_degree(n, k);
    if d < g {
        return Ok(Vec::new());
    }
    let monomials = monomials_of_degree(n, d - g);
    let mut out = Vec::new();
    for subset in (0..n).combinations(n - k) {
        let delta = vandermonde_delta(n, &subset)?;
        out.extend(monomials.iter().map(|m| &delta * m));
    }
    Ok(out)
}

/// All `δ(x_S)·m` with `|S| = n−k` and total degree at most `d`, by subset
/// (lexicographic) and then monomial (graded lexicographic).
pub fn kl_generators(n: usize, k: usize, d: usize) -> Result<Vec<MultiPoly>> {
    check_k(n, k)?;
    let g = generator_degree(n, k);
    if d < g {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for subset in (0..n).combinations(n - k) {
        let delta = vandermonde_delta(n, &subset)?;
        for e in 0..=d - g {
            out.extend(monomials_of_degree(n, e).iter().map(|m| &delta * m));
        }
    }
    Ok(out)
}

/// Integer coefficient rows of `polys` over a shared graded-lex monomial index.
fn coefficient_rows(polys: &[MultiPoly]) -> Vec<Vec<(usize, BigInt)>> {
    let index: BTreeMap<&Monomial, usize> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    polys
        .iter()
        .map(|p| {
            let d = Rational::from_integer(common_denominator(p.terms().map(|(_, c)| c)));
            p.terms().map(|(m, c)| (index[m], (c * &d).to_integer())).collect()
        })
        .collect()
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_IDEAL_N {
        return Err(Error::SizeGuard(format!("invariant sweeps are limited to n ≤ {MAX_IDEAL_N}, got {n}")));
    }
    Ok(())
}

/// Rank of the symmetrized degree-`d` piece, and whether it is the line
/// through `Δ_{n,k}`.
pub fn invariant_component(n: usize, k: usize, d: usize) -> Result<GradedSpanReport> {
    check_k(n, k)?;
    check_size(n)?;
    let products = products_of_degree(n, k, d)?;
    let invariants: Vec<MultiPoly> = products.par_iter().map(reynolds).collect::<Result<_>>()?;
    let nonzero: Vec<MultiPoly> = invariants.into_iter().filter(|p| !p.is_zero()).collect();
    let invariant_rank = sparse_rank(coefficient_rows(&nonzero));
    let target = (n - k) * (n - k - 1);
    let spans_delta = d == target && invariant_rank == 1 && {
        let mut with_delta = nonzero.clone();
        with_delta.push(delta_nk(n, k)?);
        sparse_rank(coefficient_rows(&with_delta)) == 1
    };
    Ok(GradedSpanReport { n, k, degree: d, generator_count: products.len(), invariant_rank, spans_delta })
}

/// Reports for every degree from the generator degree up to `(n−k)(n−k−1)`.
pub fn invariant_sweep(n: usize, k: usize) -> Result<Vec<GradedSpanReport>> {
    check_k(n, k)?;
    let target = (n - k) * (n - k - 1);
    (generator_degree(n, k)..=target).map(|d| invariant_component(n, k, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowExponentReport {
    pub checked: usize,
    /// Exponent vectors whose symmetrization did not vanish.
    pub failures: Vec<Vec<u32>>,
}

/// Checks `τ(x^α · δ(x_1, …, x_{n−k})) = 0` for every `α` whose first `n−k`
/// entries sum to less than `binom(n−k, 2)`.
///
/// The head of `α` is enumerated completely. The last `k` exponents range over
/// `0..=tail_bound`: they sit on variables outside the Vandermonde product and
/// do not enter the cancellation, so a small bound exercises every pattern.
pub fn low_exponent_vanishing(n: usize, k: usize, tail_bound: u32) -> Result<LowExponentReport> {
    check_k(n, k)?;
    check_size(n)?;
    let m = n - k;
    let limit = generator_degree(n, k) as u32;
    let delta = vandermonde_delta(n, &(0..m).collect::<Vec<_>>())?;
    let heads: Vec<Vec<u32>> = (0..m)
        .map(|_| 0..limit.max(1))
        .multi_cartesian_product()
        .filter(|h| h.iter().sum::<u32>() < limit)
        .collect();
    let tails: Vec<Vec<u32>> = (0..k).map(|_| 0..=tail_bound).multi_cartesian_product().collect();
    let tails = if k == 0 { vec![Vec::new()] } else { tails };
    let exponents: Vec<Vec<u32>> =
        heads.iter().cartesian_product(&tails).map(|(h, t)| h.iter().chain(t).copied().collect()).collect();
    let vars = x_vars(n);
    let results: Vec<Result<Option<Vec<u32>>>> = exponents
        .par_iter()
        .map(|alpha| {
            let mono = MultiPoly::from_terms(vars.clone(), [(Monomial(alpha.clone()), Rational::from_integer(1.into()))]);
            let tau = reynolds(&(&mono * &delta))?;
            Ok((!tau.is_zero()).then(|| alpha.clone()))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(alpha) = r? {
            failures.push(alpha);
        }
    }
    Ok(LowExponentReport { checked: exponents.len(), failures })
}

/// `τ(x^ρ · δ(x_1..x_{n−k}))` for the staircase `ρ = (0, 1, …, n−k−1, 0, …)`,
/// which is a nonzero multiple of `Δ_{n,k}`; returns that multiple.
pub fn staircase_multiple(n: usize, k: usize) -> Result<Option<Rational>> {
    check_k(n, k)?;
    check_size(n)?;
    let m = n - k;
    let mut rho = vec![0u32; n];
    for (i, r) in rho.iter_mut().take(m).enumerate() {
        *r = i as u32;
    }
    let mono = MultiPoly::from_terms(x_vars(n), [(Monomial(rho), Rational::from_integer(1.into()))]);
    let delta = vandermonde_delta(n, &(0..m).collect::<Vec<_>>())?;
    let tau = reynolds(&(&mono * &delta))?;
    let target = delta_nk(n, k)?;
    let Some((lead, c)) = target.leading_term() else { return Ok(None) };
    let ratio = tau.coeff(lead) / c;
    Ok((!ratio.is_zero() && tau == target.scale(&ratio)).then_some(ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{factorial, rat};
    use crate::symfun::eval_at_ints;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(x_vars(n), i)
    }

    #[test]
    fn generator_examples() {
        let g = kl_generators(2, 0, 2).unwrap();
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!(g, vec![d.clone(), &d * &x(2, 0), &d * &x(2, 1)]);
        let g = kl_generators(3, 1, 1).unwrap();
        assert_eq!(g, vec![&x(3, 0) - &x(3, 1), &x(3, 0) - &x(3, 2), &x(3, 1) - &x(3, 2)]);
        assert!(kl_generators(4, 0, 5).unwrap().is_empty());
        assert!(kl_generators(4, 0, 6).unwrap().iter().all(|p| p.total_degree() == Some(6)));
    }

    #[test]
    fn generators_vanish_on_degenerate_points() {
        for (n, k) in [(3, 0), (3, 1), (4, 1), (4, 2)] {
            let gens = kl_generators(n, k, generator_degree(n, k) + 1).unwrap();
            let distinct = n - k - 1;
            for pattern in (0..distinct.max(1)).combinations_with_replacement(n) {
                for perm in pattern.iter().permutations(n).take(6) {
                    let point: Vec<i64> = perm.iter().map(|&&v| 3 * v as i64 - 2).collect();
                    assert!(gens.iter().all(|g| eval_at_ints(g, &point).is_zero()));
                }
            }
        }
    }

    #[test]
    fn component_examples() {
        let r = invariant_component(3, 1, 1).unwrap();
        assert_eq!((r.generator_count, r.invariant_rank, r.spans_delta), (3, 0, false));
        let r = invariant_component(3, 1, 2).unwrap();
        assert_eq!((r.invariant_rank, r.spans_delta), (1, true));
        let r = invariant_component(2, 0, 2).unwrap();
        assert_eq!((r.generator_count, r.invariant_rank, r.spans_delta), (2, 1, true));
        assert!(matches!(invariant_component(6, 2, 6), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn lower_degrees_have_no_invariants() {
        for (n, k) in [(3, 0), (4, 2)] {
            let sweep = invariant_sweep(n, k).unwrap();
            let (last, lower) = sweep.split_last().unwrap();
            assert!(lower.iter().all(|r| r.invariant_rank == 0));
            assert!(last.spans_delta && last.invariant_rank == 1);
        }
    }

    #[test]
    fn low_exponents_vanish() {
        for (n, k) in [(2, 0), (3, 0), (3, 1), (4, 1)] {
            let r = low_exponent_vanishing(n, k, 2).unwrap();
            assert!(r.checked > 0 && r.failures.is_empty(), "{n} {k}: {r:?}");
        }
        // (3, 0): exponent heads with sum < 3
        assert_eq!(low_exponent_vanishing(3, 0, 0).unwrap().checked, 10);
    }

    /// The staircase exponent gives `±k!/n!·Δ_{n,k}`: the head permutations
    /// contribute `±δ²` and each `(n−k)`-subset arises from `k!` cosets.
    #[test]
    fn staircase_gives_delta() {
        for (n, k) in [(2, 0), (3, 0), (3, 1), (4, 1), (4, 2)] {
            let r = staircase_multiple(n, k).unwrap().expect("multiple of Δ");
            let expect = Rational::new(factorial(k as u64), factorial(n as u64));
            assert!(r == expect || r == -expect.clone(), "{n} {k}: {r}");
        }
        // τ(x2·(x1 − x2)) = x1x2 − (x1² + x2²)/2
        assert_eq!(staircase_multiple(2, 0).unwrap(), Some(rat(-1, 2)));
    }
}
