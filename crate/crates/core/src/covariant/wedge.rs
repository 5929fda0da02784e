use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::basis::{trace_zero_basis, TraceZeroBasis};
use super::minors::maximal_minors;
use super::sample::random_symmetric;
use super::symbolic::symbolic_proportionality;
use crate::error::{Error, Result};
use crate::exactmath::rational::{common_denominator, int, Rational};
use crate::exactmath::{det, RationalMatrix};
use crate::subdisc::{check_k, sdisc_of_matrix};

/// Element of the `s`-th exterior power of a `dim`-dimensional based space,
/// stored as its nonzero Plücker coordinates keyed by sorted index subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    s: usize,
    dim: usize,
    coords: BTreeMap<Vec<usize>, Rational>,
}

impl WedgeVector {
    pub fn zero(s: usize, dim: usize) -> Self {
        WedgeVector { s, dim, coords: BTreeMap::new() }
    }

    /// The basis wedge `e_{i_1} ∧ … ∧ e_{i_s}` for a strictly increasing subset.
    pub fn basis_element(subset: &[usize], dim: usize) -> Self {
        assert!(subset.windows(2).all(|w| w[0] < w[1]) && subset.iter().all(|&i| i < dim));
        let mut w = Self::zero(subset.len(), dim);
        w.coords.insert(subset.to_vec(), Rational::one());
        w
    }

    /// `v_1 ∧ … ∧ v_s` for coordinate vectors of equal length.
    pub fn from_vectors(vectors: &[Vec<Rational>]) -> Self {
        assert!(!vectors.is_empty());
        let dim = vectors[0].len();
        let s = vectors.len();
        // scale rows to integers; minors then pick up the product of the scales
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), dim);
                let d = common_denominator(v.iter());
                let r = v.iter().map(|x| (x * Rational::from_integer(d.clone())).to_integer()).collect();
                scale *= d;
                r
            })
            .collect();
        let mut w = Self::zero(s, dim);
        if s > dim {
            return w;
        }
        for (cols, m) in maximal_minors(&rows).expect("integer minors cannot overflow") {
            if !m.is_zero() {
                w.coords.insert(cols, Rational::new(m, scale.clone()));
            }
        }
        w
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, subset: &[usize]) -> Rational {
        self.coords.get(subset).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.coords
    }

    /// Squared norm for the inner product induced by a trace-orthogonal basis:
    /// `Σ_S (∏_{b ∈ S} norm_b) · coord_S²`.
    pub fn norm_squared(&self, basis: &TraceZeroBasis) -> Rational {
        self.coords
            .iter()
            .map(|(subset, c)| subset.iter().map(|&b| basis.norms()[b].clone()).product::<Rational>() * c * c)
            .sum()
    }
}

pub(crate) fn check_covariant_k(n: usize, k: usize) -> Result<()> {
    check_k(n, k)?;
    if n < 2 || k > n - 2 {
        return Err(Error::KOutOfRange { n, k, min: 0, max: n.saturating_sub(2) });
    }
    Ok(())
}

/// `B_i = A^i − Tr(A^i)/n·I` for `i = 1..=s`.
pub fn trace_adjusted_powers(a: &RationalMatrix, s: usize) -> Vec<RationalMatrix> {
    let n = a.n();
    a.powers(s)
        .into_iter()
        .map(|p| {
            let shift = p.trace() / int(n as i64);
            p.sub(&RationalMatrix::scalar(n, shift))
        })
        .collect()
}

/// `T_k(A)` in the standard trace-zero basis.
pub fn compute_tk(a: &RationalMatrix, k: usize) -> Result<WedgeVector> {
    compute_tk_in(a, k, &trace_zero_basis(a.n().max(2))?)
}

/// `T_k(A)` in a prebuilt basis of matching size.
pub fn compute_tk_in(a: &RationalMatrix, k: usize, basis: &TraceZeroBasis) -> Result<WedgeVector> {
    let n = a.n();
    check_covariant_k(n, k)?;
    a.check_symmetric()?;
    if basis.n() != n {
        return Err(Error::InvalidArgument(format!("basis is for n = {}, matrix is {n} × {n}", basis.n())));
    }
    let vectors: Vec<Vec<Rational>> =
        trace_adjusted_powers(a, n - k - 1).iter().map(|b| basis.coordinates(b)).collect();
    Ok(WedgeVector::from_vectors(&vectors))
}

/// True iff `T_k(A) = 0`, i.e. `A` has at most `n − k − 1` distinct eigenvalues.
pub fn vanishing_test(a: &RationalMatrix, k: usize) -> Result<bool> {
    Ok(compute_tk(a, k)?.is_zero())
}

/// `det [Tr(B_i B_j)]`, the squared trace-form norm of `T_k(A)`.
pub fn gram_sos_value(a: &RationalMatrix, k: usize) -> Result<Rational> {
    let n = a.n();
    check_covariant_k(n, k)?;
    a.check_symmetric()?;
    let b = trace_adjusted_powers(a, n - k - 1);
    let g: Vec<Vec<Rational>> = b.iter().map(|x| b.iter().map(|y| x.mul(y).trace()).collect()).collect();
    let value = det(&g);
    #[cfg(debug_assertions)]
    if n <= 5 {
        let basis = trace_zero_basis(n)?;
        debug_assert_eq!(value, compute_tk_in(a, k, &basis)?.norm_squared(&basis));
    }
    Ok(value)
}

/// `c_{n,k}` with `gram_sos_value = c_{n,k} · sDisc_k` on symmetric matrices.
///
/// The ratio is taken at seeded random symmetric integer matrices and must be
/// identical on `samples` points where `sDisc_k ≠ 0`; for `n ≤ 4` it must also
/// agree with the symbolic identity in the entries.
pub fn proportionality_constant_with(n: usize, k: usize, samples: usize, seed: u64) -> Result<Rational> {
    check_covariant_k(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constant: Option<Rational> = None;
    let mut found = 0;
    let mut attempts = 0;
    while found < samples.max(1) {
        attempts += 1;
        if attempts > 100 * samples.max(1) {
            return Err(Error::IdentityFailed(format!("no generic samples found for n = {n}, k = {k}")));
        }
        let a = random_symmetric(n, &mut rng, 4);
        let sdisc = sdisc_of_matrix(&a, k)?;
        if sdisc.is_zero() {
            continue;
        }
        let ratio = gram_sos_value(&a, k)? / sdisc;
        match &constant {
            None => constant = Some(ratio),
            Some(c) if *c != ratio => {
                return Err(Error::IdentityFailed(format!(
                    "det Gram / sDisc_{k} not constant for n = {n}: {c} vs {ratio} at {a:?}"
                )))
            }
            _ => {}
        }
        found += 1;
    }
    let c = constant.expect("at least one sample");
    if n <= 4 {
        let symbolic = symbolic_proportionality(n, k)?;
        if symbolic != c {
            return Err(Error::IdentityFailed(format!("sampled constant {c} differs from symbolic {symbolic}")));
        }
    }
    Ok(c)
}

pub fn proportionality_constant(n: usize, k: usize) -> Result<Rational> {
    proportionality_constant_with(n, k, 20, 0x5d15c)
}
