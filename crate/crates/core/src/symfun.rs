//! Symmetric polynomials: Vandermonde products, the invariants `Δ_{n,k}`,
//! conversions to the elementary and power-sum bases, and the Reynolds
//! (averaging) operator of the symmetric group.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exactmath::intpoly::IntPoly;
use crate::exactmath::rational::{factorial, int, Rational};
use crate::exactmath::{indexed_vars, Monomial, MultiPoly, VarSet};

/// The Reynolds operator sums over all of `S_n`; beyond this size the
/// `n!` group elements make it impractical.
pub const MAX_REYNOLDS_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymBasis {
    Monomial,
    Elementary,
    PowerSum,
}

impl SymBasis {
    pub fn var_prefix(self) -> &'static str {
        match self {
            SymBasis::Monomial => "x",
            SymBasis::Elementary => "e",
            SymBasis::PowerSum => "p",
        }
    }
}

/// A symmetric polynomial in `n` underlying variables, written in one of the
/// three standard bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPolyInBasis {
    pub n: usize,
    pub basis: SymBasis,
    pub poly: MultiPoly,
}

impl SymPolyInBasis {
    /// Expands back into `x_1..x_n`.
    pub fn expand(&self) -> MultiPoly {
        match self.basis {
            SymBasis::Monomial => self.poly.clone(),
            SymBasis::Elementary => {
                let images: Vec<MultiPoly> = (1..=self.n).map(|j| elementary_poly(self.n, j)).collect();
                self.poly.substitute(&images)
            }
            SymBasis::PowerSum => {
                let images: Vec<MultiPoly> = (1..=self.n).map(|j| power_sum_poly(self.n, j)).collect();
                self.poly.substitute(&images)
            }
        }
    }

    /// Evaluates with the basis variables set to `values` (e.g. power sums).
    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.poly.eval(values)
    }
}

pub fn x_vars(n: usize) -> VarSet {
    indexed_vars("x", n)
}

/// `e_j(x_1..x_n)`.
pub fn elementary_poly(n: usize, j: usize) -> MultiPoly {
    let vars = x_vars(n);
    let terms = (0..n).combinations(j).map(|s| {
        let mut e = vec![0; n];
        for i in s {
            e[i] = 1;
        }
        (Monomial(e), Rational::one())
    });
    MultiPoly::from_terms(vars, terms)
}

/// `p_j = x_1^j + … + x_n^j`.
pub fn power_sum_poly(n: usize, j: usize) -> MultiPoly {
    let vars = x_vars(n);
    let terms = (0..n).map(|i| {
        let mut e = vec![0; n];
        e[i] = j as u32;
        (Monomial(e), Rational::one())
    });
    MultiPoly::from_terms(vars, terms)
}

fn int_elementary(n: usize, j: usize) -> IntPoly {
    let mut p = IntPoly::zero(n);
    for s in (0..n).combinations(j) {
        let mut e = vec![0; n];
        for i in s {
            e[i] = 1;
        }
        let k = p.pack(&e);
        p.add_term(k, 1).expect("small coefficients");
    }
    p
}

fn int_vandermonde(nvars: usize, subset: &[usize]) -> Result<IntPoly> {
    let mut acc = IntPoly::constant(nvars, 1);
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            let diff = IntPoly::var(nvars, i).sub(&IntPoly::var(nvars, j))?;
            acc = acc.mul(&diff)?;
        }
    }
    Ok(acc)
}

fn check_subset(nvars: usize, subset: &[usize]) -> Result<()> {
    for (a, &i) in subset.iter().enumerate() {
        if i >= nvars {
            return Err(Error::InvalidArgument(format!("variable index {i} out of range")));
        }
        if subset[a + 1..].contains(&i) {
            return Err(Error::InvalidArgument(format!("repeated variable index {i}")));
        }
    }
    Ok(())
}

/// `δ(x_{i_1}, …, x_{i_m}) = ∏_{a<b} (x_{i_a} − x_{i_b})` over `x_1..x_nvars`
/// (indices are 0-based). Empty and singleton subsets give the constant 1.
pub fn vandermonde_delta(nvars: usize, subset: &[usize]) -> Result<MultiPoly> {
    check_subset(nvars, subset)?;
    Ok(int_vandermonde(nvars, subset)?.to_multipoly(x_vars(nvars), &Rational::one()))
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k, min: 0, max: n.saturating_sub(1) });
    }
    Ok(())
}

/// `Δ_{n,k} = Σ_{|S| = n−k} δ(x_S)²`, homogeneous of degree `(n−k)(n−k−1)`.
pub fn delta_nk(n: usize, k: usize) -> Result<MultiPoly> {
    check_k(n, k)?;
    Ok(int_delta_nk(n, k)?.to_multipoly(x_vars(n), &Rational::one()))
}

pub(crate) fn int_delta_nk(n: usize, k: usize) -> Result<IntPoly> {
    let subsets: Vec<Vec<usize>> = (0..n).combinations(n - k).collect();
    subsets
        .par_iter()
        .map(|s| {
            let d = int_vandermonde(n, s)?;
            d.mul(&d)
        })
        .try_reduce(|| IntPoly::zero(n), |a, b| a.add(&b))
}

/// Checks invariance under the adjacent transpositions `(x_i x_{i+1})`, which
/// generate `S_n`. Reports the first violating transposition.
pub fn check_symmetric(f: &MultiPoly) -> Result<()> {
    let n = f.nvars();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        if &f.permute_vars(&perm) != f {
            return Err(Error::NotSymmetric(i));
        }
    }
    Ok(())
}

/// Rewrites a symmetric polynomial in `e_1..e_n` by repeatedly cancelling the
/// graded-lex leading term `c·x^α` with `c·e_1^{α_1−α_2}⋯e_n^{α_n}`.
pub fn to_elementary_basis(f: &MultiPoly) -> Result<SymPolyInBasis> {
    check_symmetric(f)?;
    let n = f.nvars();
    let (mut rest, denom) = IntPoly::from_multipoly(f)?;
    let mut powers: FxHashMap<(usize, u32), IntPoly> = FxHashMap::default();
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((key, c)) = rest.leading() {
        let alpha = rest.unpack(key);
        let mut beta = vec![0u32; n];
        for j in 0..n {
            let next = if j + 1 < n { alpha[j + 1] } else { 0 };
            beta[j] = alpha[j]
                .checked_sub(next)
                .ok_or_else(|| Error::IdentityFailed("leading exponent not non-increasing".into()))?;
        }
        let mut prod = IntPoly::constant(n, 1);
        for (j, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let pw = match powers.get(&(j, b)) {
                Some(p) => p.clone(),
                None => {
                    let p = int_elementary(n, j + 1).pow(b)?;
                    powers.insert((j, b), p.clone());
                    p
                }
            };
            prod = prod.mul(&pw)?;
        }
        rest.add_scaled(&prod, -c)?;
        out.push((Monomial(beta), Rational::new(BigInt::from(c), denom.clone())));
    }
    Ok(SymPolyInBasis {
        n,
        basis: SymBasis::Elementary,
        poly: MultiPoly::from_terms(indexed_vars("e", n), out),
    })
}

/// `e_j` as a polynomial in `p_1..p_n`, from Newton's identities
/// `j·e_j = Σ_{i=1}^{j} (−1)^{i−1} e_{j−i} p_i`.
pub fn elementary_in_power_sums(n: usize) -> Vec<MultiPoly> {
    let pv = indexed_vars("p", n);
    let mut e: Vec<MultiPoly> = vec![MultiPoly::one(pv.clone())];
    for j in 1..=n {
        let mut acc = MultiPoly::zero(pv.clone());
        for i in 1..=j {
            let term = &e[j - i] * &MultiPoly::var(pv.clone(), i - 1);
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(j))));
    }
    e.remove(0);
    e
}

/// Rewrites a symmetric polynomial in `p_1..p_n` (elementary reduction, then
/// Newton's identities); indices above `n` never appear.
pub fn to_power_sum_basis(f: &MultiPoly) -> Result<SymPolyInBasis> {
    let elem = to_elementary_basis(f)?;
    let n = elem.n;
    let poly = if n == 0 {
        elem.poly.clone()
    } else {
        elem.poly.substitute(&elementary_in_power_sums(n))
    };
    Ok(SymPolyInBasis { n, basis: SymBasis::PowerSum, poly })
}

/// `τ(f) = (1/n!) Σ_{g∈S_n} g·f`, summed over the whole group. Cost is
/// `n!·|f|`, so `n` is capped at [`MAX_REYNOLDS_N`].
pub fn reynolds(f: &MultiPoly) -> Result<MultiPoly> {
    let n = f.nvars();
    if n > MAX_REYNOLDS_N {
        return Err(Error::SizeGuard(format!(
            "Reynolds operator over S_{n} ({} elements)",
            factorial(n as u64)
        )));
    }
    let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
    for perm in (0..n).permutations(n) {
        for (m, c) in f.terms() {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[perm[i]] = x;
            }
            *acc.entry(Monomial(e)).or_insert_with(Rational::zero) += c;
        }
    }
    let scale = Rational::new(BigInt::one(), factorial(n as u64));
    Ok(MultiPoly::from_terms(
        f.vars().clone(),
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, c * &scale)),
    ))
}

/// Evaluates `f(x_1..x_n)` at integer coordinates.
pub fn eval_at_ints(f: &MultiPoly, point: &[i64]) -> Rational {
    f.eval(&point.iter().map(|&v| int(v)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(x_vars(n), i)
    }

    fn parse_basis(n: usize, basis: SymBasis, pairs: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            indexed_vars(basis.var_prefix(), n),
            pairs.iter().map(|(e, c)| (Monomial(e.to_vec()), int(*c))),
        )
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_delta(2, &[0, 1]).unwrap(), &x(2, 0) - &x(2, 1));
        let d3 = vandermonde_delta(3, &[0, 1, 2]).unwrap();
        let expect = &(&(&x(3, 0) - &x(3, 1)) * &(&x(3, 0) - &x(3, 2))) * &(&x(3, 1) - &x(3, 2));
        assert_eq!(d3, expect);
        assert_eq!(d3.total_degree(), Some(3));
        assert!(eval_at_ints(&d3, &[4, 4, 1]).is_zero());
        assert_eq!(vandermonde_delta(3, &[]).unwrap().as_constant(), Some(int(1)));
        assert_eq!(vandermonde_delta(3, &[2]).unwrap().as_constant(), Some(int(1)));
        assert!(vandermonde_delta(3, &[1, 1]).is_err());
    }

    #[test]
    fn delta_nk_examples() {
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!(delta_nk(2, 0).unwrap(), &d * &d);
        let sq = |a: usize, b: usize| {
            let d = &x(3, a) - &x(3, b);
            &d * &d
        };
        let expect = &(&sq(0, 1) + &sq(0, 2)) + &sq(1, 2);
        assert_eq!(delta_nk(3, 1).unwrap(), expect);
        for n in 1..=6 {
            assert_eq!(delta_nk(n, n - 1).unwrap().as_constant(), Some(int(n as i64)));
        }
        assert!(delta_nk(3, 3).is_err());
    }

    #[test]
    fn delta_nk_is_symmetric_and_homogeneous() {
        for n in 2..=5 {
            for k in 0..n {
                let d = delta_nk(n, k).unwrap();
                check_symmetric(&d).unwrap();
                assert!(d.is_homogeneous());
                let deg = ((n - k) * (n - k - 1)) as u32;
                assert_eq!(d.total_degree().unwrap_or(0), deg);
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        let d = &x(2, 0) - &x(2, 1);
        let r = to_power_sum_basis(&(&d * &d)).unwrap();
        assert_eq!(r.poly, parse_basis(2, SymBasis::PowerSum, &[(&[0, 1], 2), (&[2, 0], -1)]));
        let r = to_power_sum_basis(&delta_nk(3, 1).unwrap()).unwrap();
        assert_eq!(r.poly, parse_basis(3, SymBasis::PowerSum, &[(&[0, 1, 0], 3), (&[2, 0, 0], -1)]));
        let r = to_power_sum_basis(&elementary_poly(4, 1)).unwrap();
        assert_eq!(r.poly, parse_basis(4, SymBasis::PowerSum, &[(&[1, 0, 0, 0], 1)]));
    }

    #[test]
    fn elementary_examples() {
        let d = &x(2, 0) - &x(2, 1);
        let r = to_elementary_basis(&(&d * &d)).unwrap();
        assert_eq!(r.poly, parse_basis(2, SymBasis::Elementary, &[(&[2, 0], 1), (&[0, 1], -4)]));
        let r = to_elementary_basis(&delta_nk(3, 1).unwrap()).unwrap();
        assert_eq!(r.poly, parse_basis(3, SymBasis::Elementary, &[(&[2, 0, 0], 2), (&[0, 1, 0], -6)]));
        let r = to_elementary_basis(&MultiPoly::constant(x_vars(3), int(3))).unwrap();
        assert_eq!(r.poly.as_constant(), Some(int(3)));
    }

    #[test]
    fn elementary_output_is_integral_for_integer_input() {
        for n in 2..=5 {
            for k in 0..n {
                let r = to_elementary_basis(&delta_nk(n, k).unwrap()).unwrap();
                assert!(r.poly.terms().all(|(_, c)| c.is_integer()), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        let f = &x(3, 0) - &x(3, 2);
        assert_eq!(to_power_sum_basis(&f), Err(Error::NotSymmetric(0)));
        let g = &(&x(3, 0) + &x(3, 1)) + &x(3, 2).scale(&int(2));
        assert_eq!(to_elementary_basis(&g), Err(Error::NotSymmetric(1)));
    }

    #[test]
    fn round_trip_through_both_bases() {
        for n in 2..=5 {
            for k in 0..n {
                let d = delta_nk(n, k).unwrap();
                assert_eq!(to_power_sum_basis(&d).unwrap().expand(), d, "p-basis n={n} k={k}");
                assert_eq!(to_elementary_basis(&d).unwrap().expand(), d, "e-basis n={n} k={k}");
            }
        }
    }

    #[test]
    fn reynolds_examples() {
        let r = reynolds(&x(2, 0)).unwrap();
        assert_eq!(r, (&x(2, 0) + &x(2, 1)).scale(&rat(1, 2)));
        let sym = delta_nk(3, 1).unwrap();
        assert_eq!(reynolds(&sym).unwrap(), sym);
        assert!(reynolds(&(&x(2, 0) - &x(2, 1))).unwrap().is_zero());
        assert!(reynolds(&MultiPoly::zero(x_vars(9))).is_err());
    }

    #[test]
    fn delta_vanishes_on_degenerate_points() {
        // points with at most n-k-1 distinct coordinates
        for (n, k) in [(3, 0), (4, 1), (5, 2), (5, 0)] {
            let d = delta_nk(n, k).unwrap();
            let distinct = n - k - 1;
            // symmetric, so sorted coordinate patterns suffice
            for pattern in (0..distinct.max(1)).combinations_with_replacement(n) {
                let point: Vec<i64> = pattern.iter().map(|&c| 3 * c as i64 - 2).collect();
                assert!(eval_at_ints(&d, &point).is_zero(), "n={n} k={k} {point:?}");
            }
        }
    }

    fn arb_poly3() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(x_vars(3), ts.into_iter().map(|((a, b, c), k)| (Monomial(vec![a, b, c]), int(k))))
        })
    }

    proptest! {
        #[test]
        fn reynolds_is_idempotent_symmetric_linear(f in arb_poly3(), g in arb_poly3(), a in -3i64..4) {
            let tf = reynolds(&f).unwrap();
            prop_assert_eq!(reynolds(&tf).unwrap(), tf.clone());
            prop_assert!(check_symmetric(&tf).is_ok());
            let lhs = reynolds(&(&f.scale(&int(a)) + &g)).unwrap();
            let rhs = &tf.scale(&int(a)) + &reynolds(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn symmetrized_polys_round_trip(f in arb_poly3()) {
            let s = reynolds(&f).unwrap();
            prop_assert_eq!(to_power_sum_basis(&s).unwrap().expand(), s.clone());
            prop_assert_eq!(to_elementary_basis(&s).unwrap().expand(), s);
        }
    }
}
