//! Explicit highest-weight vector for the image of `T_k*`.
//!
//! With `l = ⌊n/2⌋`, the form `J` pairs `e_i` with `e_{l+i}` (and fixes the last
//! basis vector when `n` is odd). The maximal torus `diag(t, t⁻¹[, 1])` preserves
//! `J`, and the first-column entry functionals `x_{r,1}` have weights
//! `t_1/t_r` (`r ≤ l`), `t_1 t_{r−l}` (`l < r ≤ 2l`) and `t_1` (`r = 2l+1`).
//! A cyclic permutation matrix sends `e_1` through the rows read by
//! `x_1, …, x_s`, so the pairing of `x_1∧…∧x_s` with `T_k(A)` is `±1`.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sample::random_symmetric;
use super::wedge::{check_covariant_k, trace_adjusted_powers};
use crate::error::{Error, Result};
use crate::exactmath::det;
use crate::exactmath::rational::{int, Rational};
use crate::exactmath::RationalMatrix;

#[derive(Clone, Debug)]
pub struct HighestWeightWitness {
    pub n: usize,
    pub k: usize,
    /// The symmetric form `J`.
    pub form: RationalMatrix,
    /// The cyclic permutation matrix the pairing is evaluated at.
    pub cyclic: RationalMatrix,
    /// 0-based rows of the first-column functionals `x_1, …, x_s`.
    pub functional_rows: Vec<usize>,
    pub pairing: Rational,
    /// Highest weight padded to length `l`.
    pub weight: Vec<i64>,
}

/// `J` for size `n`.
pub fn orthogonal_form(n: usize) -> RationalMatrix {
    let l = n / 2;
    let mut j = RationalMatrix::zero(n);
    for i in 0..l {
        j.set(i, l + i, Rational::one());
        j.set(l + i, i, Rational::one());
    }
    if n % 2 == 1 {
        j.set(n - 1, n - 1, Rational::one());
    }
    j
}

/// Rows `l+1, …, n, l, l−1, …, 2` (1-based), the orbit of `e_1` after the first step.
fn cycle_rows(n: usize) -> Vec<usize> {
    let l = n / 2;
    (l..n).chain((1..l).rev()).collect()
}

/// The permutation matrix of `e_1 → e_{l+1} → … → e_n → e_l → … → e_2 → e_1`.
pub fn cyclic_matrix(n: usize) -> RationalMatrix {
    let mut order = vec![0];
    order.extend(cycle_rows(n));
    let mut a = RationalMatrix::zero(n);
    for (t, &from) in order.iter().enumerate() {
        let to = order[(t + 1) % n];
        a.set(to, from, Rational::one());
    }
    a
}

/// `(s+1, 1^{s−1})` for `s ≤ l`, else `(s+1, 1^{n−s−1})`, padded to length `l`.
pub fn witness_weight(n: usize, s: usize) -> Vec<i64> {
    let l = n / 2;
    let ones = if s <= l { s - 1 } else { n - s - 1 };
    let mut w = vec![0i64; l];
    w[0] = s as i64 + 1;
    for x in w.iter_mut().skip(1).take(ones) {
        *x = 1;
    }
    w
}

/// Torus weight of the functional `x_{r,1}` (0-based row `r ≥ 1`).
pub fn functional_weight(n: usize, row: usize) -> Vec<i64> {
    let l = n / 2;
    let mut w = vec![0i64; l];
    w[0] += 1;
    if row < l {
        w[row] -= 1;
    } else if row < 2 * l {
        w[row - l] += 1;
    }
    w
}

pub fn is_j_selfadjoint(a: &RationalMatrix, form: &RationalMatrix) -> bool {
    form.mul(a).is_symmetric()
}

fn pairing_matrix(rows: &[usize], mats: &[RationalMatrix]) -> Vec<Vec<Rational>> {
    rows.iter().map(|&r| mats.iter().map(|m| m[(r, 0)].clone()).collect()).collect()
}

pub fn highest_weight_witness(n: usize, k: usize) -> Result<HighestWeightWitness> {
    check_covariant_k(n, k)?;
    let s = n - k - 1;
    let form = orthogonal_form(n);
    let cyclic = cyclic_matrix(n);
    if !is_j_selfadjoint(&cyclic, &form) {
        return Err(Error::IdentityFailed(format!("cyclic matrix for n = {n} is not J-selfadjoint")));
    }
    if !cyclic.trace().is_zero() {
        return Err(Error::IdentityFailed(format!("cyclic matrix for n = {n} has nonzero trace")));
    }
    let functional_rows: Vec<usize> = cycle_rows(n).into_iter().take(s).collect();
    let b = trace_adjusted_powers(&cyclic, s);
    let pairing = det(&pairing_matrix(&functional_rows, &b));
    if pairing.abs() != Rational::one() {
        return Err(Error::IdentityFailed(format!("pairing is {pairing}, expected ±1")));
    }
    Ok(HighestWeightWitness { n, k, form, cyclic, functional_rows, pairing, weight: witness_weight(n, s) })
}

/// Checks `F(t⁻¹ X t) = t^λ F(X)` for `F = det[x_i(X_j)]` at random
/// `J`-selfadjoint trace-zero `X_1..X_s`, with `λ` the witness weight.
pub fn torus_weight_check(n: usize, s: usize, t: &[Rational], seed: u64) -> Result<bool> {
    if n < 2 || s == 0 || s > n - 1 {
        return Err(Error::InvalidArgument(format!("need 1 ≤ s ≤ n − 1, got n = {n}, s = {s}")));
    }
    let l = n / 2;
    if t.len() != l {
        return Err(Error::InvalidArgument(format!("torus element needs {l} entries")));
    }
    if t.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidArgument("torus entries must be nonzero".into()));
    }
    let weight = witness_weight(n, s);
    let form = orthogonal_form(n);
    let mut diag: Vec<Rational> = t.to_vec();
    diag.extend(t.iter().map(|x| x.recip()));
    if n % 2 == 1 {
        diag.push(Rational::one());
    }
    let torus = RationalMatrix::diag(&diag);
    let torus_inv = RationalMatrix::diag(&diag.iter().map(|x| x.recip()).collect::<Vec<_>>());
    let scale: Rational = t.iter().zip(&weight).map(|(x, &e)| num_traits::pow::pow(x.clone(), e as usize)).product();
    let rows: Vec<usize> = cycle_rows(n).into_iter().take(s).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let xs: Vec<RationalMatrix> = (0..s)
            .map(|_| {
                let x = form.mul(&random_symmetric(n, &mut rng, 3));
                let shift = x.trace() / int(n as i64);
                x.sub(&RationalMatrix::scalar(n, shift))
            })
            .collect();
        debug_assert!(xs.iter().all(|x| is_j_selfadjoint(x, &form) && x.trace().is_zero()));
        let value = det(&pairing_matrix(&rows, &xs));
        if value.is_zero() {
            continue;
        }
        let moved: Vec<RationalMatrix> = xs.iter().map(|x| torus_inv.mul(x).mul(&torus)).collect();
        let moved_value = det(&pairing_matrix(&rows, &moved));
        return Ok(moved_value == scale * value);
    }
    Err(Error::IdentityFailed("no test matrices with nonzero pairing found".into()))
}
