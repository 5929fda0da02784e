//! The commutator map `γ: ⋀^m N → so_n ⊗ ⋀^{m−2} N`,
//! `a_1∧…∧a_m ↦ Σ_{i<j} (−1)^{i+j} [a_i, a_j] ⊗ a_1∧…â_i…â_j…∧a_m`,
//! and the comparison of its dual image with the kernel of `T_k*`.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::basis::{trace_zero_basis, TraceZeroBasis};
use super::certificate::check_budget;
use super::symbolic::{diagonal_norm_product, scaled_plucker};
use super::wedge::{check_covariant_k, WedgeVector};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{left_kernel, rank, sparse_rank};
use crate::exactmath::rational::{common_denominator, Rational};

/// Number of skew basis matrices `F_pq = E_pq − E_qp`, `p < q`.
pub fn skew_dim(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Index of `F_pq` (0-based, `p < q`) in lexicographic order.
pub fn skew_index(n: usize, p: usize, q: usize) -> usize {
    assert!(p < q && q < n);
    p * n - p * (p + 1) / 2 + (q - p - 1)
}

/// `(skew index, subset) ↦ coefficient`, nonzero entries only.
pub type GammaImage = BTreeMap<(usize, Vec<usize>), Rational>;

/// `[b_i, b_j]` for all pairs of basis matrices, as integer skew coordinates.
struct Commutators(Vec<Vec<Vec<(usize, i64)>>>);

impl Commutators {
    fn new(basis: &TraceZeroBasis) -> Self {
        let n = basis.n();
        let ms = basis.basis_matrices();
        let table = ms
            .iter()
            .map(|x| {
                ms.iter()
                    .map(|y| {
                        let c = x.mul(y).sub(&y.mul(x));
                        (0..n)
                            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                            .filter(|&(p, q)| !c[(p, q)].is_zero())
                            .map(|(p, q)| {
                                let v = c[(p, q)].to_integer().to_i64().expect("integral commutator");
                                (skew_index(n, p, q), v)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Commutators(table)
    }
}

fn apply_with(w: &WedgeVector, comm: &Commutators) -> GammaImage {
    // integer numerators over one common denominator, subsets as bitmasks
    let den = common_denominator(w.coords().values());
    let mut acc: FxHashMap<(usize, u128), BigInt> = FxHashMap::default();
    for (subset, coeff) in w.coords() {
        let c = (coeff * Rational::from_integer(den.clone())).to_integer();
        let mask = subset.iter().fold(0u128, |m, &i| m | 1 << i);
        for (a, b) in (0..subset.len()).tuple_combinations() {
            let rest = mask & !(1 << subset[a]) & !(1 << subset[b]);
            let sign = if (a + b) % 2 == 1 { -1 } else { 1 };
            for &(skew, v) in &comm.0[subset[a]][subset[b]] {
                *acc.entry((skew, rest)).or_default() += &c * (sign * v);
            }
        }
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((skew, mask), v)| {
            let rest = (0..128).filter(|i| mask >> i & 1 == 1).collect();
            ((skew, rest), Rational::new(v, den.clone()))
        })
        .collect()
}

/// `γ(w)` for a wedge of degree `m ≥ 2` written in `basis`.
pub fn gamma_apply(w: &WedgeVector, basis: &TraceZeroBasis) -> Result<GammaImage> {
    if w.s() < 2 {
        return Err(Error::InvalidArgument(format!("γ needs exterior degree at least 2, got {}", w.s())));
    }
    if w.dim() != basis.dim() {
        return Err(Error::InvalidArgument("wedge and basis dimensions differ".into()));
    }
    if basis.dim() > 128 {
        return Err(Error::SizeGuard(format!("γ supports at most 128 basis elements, got {}", basis.dim())));
    }
    Ok(apply_with(w, &Commutators::new(basis)))
}

/// Ranks relating `T_k*` and the dual of `γ` on `⋀^{n−k−1} N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub n: usize,
    pub k: usize,
    /// Dimension of `(⋀^s N)*`.
    pub domain_dim: usize,
    pub rank_tk_star: usize,
    pub kernel_dim: usize,
    pub gamma_image_dim: usize,
    /// Rank of the kernel basis stacked with the `γ*` image.
    pub stacked_rank: usize,
    pub contained: bool,
}

/// Monomial-coefficient rows of the Plücker coordinate polynomials, scaled to
/// integers row by row.
fn integer_rows(n: usize, k: usize, basis: &TraceZeroBasis) -> Result<(Vec<Vec<(usize, BigInt)>>, Vec<Vec<usize>>, Vec<BigInt>)> {
    let p = scaled_plucker(n, k, basis)?;
    let mut keys: Vec<u128> = p.minors.iter().flat_map(|m| m.terms().map(|(key, _)| key)).collect();
    keys.sort_unstable();
    keys.dedup();
    let index: HashMap<u128, usize> = keys.iter().enumerate().map(|(i, &key)| (key, i)).collect();
    let rows = p
        .minors
        .iter()
        .map(|m| {
            let mut row: Vec<(usize, BigInt)> = m.terms().map(|(key, c)| (index[&key], BigInt::from(c))).collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect();
    let scales = p.subsets.iter().map(|s| diagonal_norm_product(basis, s)).collect();
    Ok((rows, p.subsets, scales))
}

/// Rank over `Q` of the span of the Plücker coordinate polynomials of `T_k`,
/// i.e. the dimension of the image of `T_k*`.
pub fn rank_of_tk_star(n: usize, k: usize) -> Result<usize> {
    check_covariant_k(n, k)?;
    check_budget(n, k)?;
    let basis = trace_zero_basis(n)?;
    let (rows, _, _) = integer_rows(n, k, &basis)?;
    Ok(sparse_rank(rows))
}

/// Compares `image(γ*)` with `kernel(T_k*)` inside `(⋀^s N)*`, `s = n − k − 1 ≥ 2`.
///
/// The kernel is the left kernel of the matrix whose rows are the Plücker
/// coordinate polynomials; `γ*` sends the dual basis vector of `F ⊗ e_R` to the
/// functional `e_S ↦ coefficient of F ⊗ e_R in γ(e_S)`.
pub fn kernel_containment(n: usize, k: usize) -> Result<KernelReport> {
    check_covariant_k(n, k)?;
    check_budget(n, k)?;
    let s = n - k - 1;
    if s < 2 {
        return Err(Error::InvalidArgument("γ needs n − k − 1 ≥ 2".into()));
    }
    let basis = trace_zero_basis(n)?;
    let (rows, subsets, scales) = integer_rows(n, k, &basis)?;
    let ncols = rows.iter().flat_map(|r| r.iter().map(|e| e.0 + 1)).max().unwrap_or(0);
    let dense: Vec<Vec<Rational>> = rows
        .iter()
        .zip(&scales)
        .map(|(row, d)| {
            let mut v = vec![Rational::zero(); ncols];
            for (i, c) in row {
                v[*i] = Rational::new(c.clone(), d.clone());
            }
            v
        })
        .collect();
    let rank_tk_star = rank(&dense);
    let kernel = left_kernel(&dense);

    let comm = Commutators::new(&basis);
    let mut gamma_rows: BTreeMap<(usize, Vec<usize>), Vec<Rational>> = BTreeMap::new();
    for (col, subset) in subsets.iter().enumerate() {
        for (key, v) in apply_with(&WedgeVector::basis_element(subset, basis.dim()), &comm) {
            gamma_rows.entry(key).or_insert_with(|| vec![Rational::zero(); subsets.len()])[col] = v;
        }
    }
    let gamma_rows: Vec<Vec<Rational>> = gamma_rows.into_values().collect();
    let gamma_image_dim = rank(&gamma_rows);
    let stacked: Vec<Vec<Rational>> = kernel.iter().chain(&gamma_rows).cloned().collect();
    let stacked_rank = rank(&stacked);
    debug_assert!(scales.iter().all(|d| d.is_positive()));
    Ok(KernelReport {
        n,
        k,
        domain_dim: subsets.len(),
        rank_tk_star,
        kernel_dim: kernel.len(),
        gamma_image_dim,
        stacked_rank,
        contained: stacked_rank == kernel.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::wedge::compute_tk_in;
    use crate::exactmath::rational::int;
    use crate::exactmath::RationalMatrix;

    #[test]
    fn skew_indexing() {
        let n = 5;
        let got: Vec<usize> = (0..n).flat_map(|p| (p + 1..n).map(move |q| skew_index(n, p, q))).collect();
        assert_eq!(got, (0..skew_dim(n)).collect::<Vec<_>>());
    }

    #[test]
    fn negative_control_pair() {
        let basis = trace_zero_basis(3).unwrap();
        // E12 + E21 and E13 + E31 are the first two basis elements
        let w = WedgeVector::basis_element(&[0, 1], basis.dim());
        let image = gamma_apply(&w, &basis).unwrap();
        let expect: GammaImage = [((skew_index(3, 1, 2), vec![]), int(-1))].into_iter().collect();
        assert_eq!(image, expect);
    }

    #[test]
    fn dependent_vectors_and_degree_check() {
        let basis = trace_zero_basis(3).unwrap();
        let v = vec![int(1), int(2), int(0), int(1), int(-1)];
        let w = WedgeVector::from_vectors(&[v.clone(), v]);
        assert!(gamma_apply(&w, &basis).unwrap().is_empty());
        let w1 = WedgeVector::basis_element(&[0], basis.dim());
        assert!(gamma_apply(&w1, &basis).is_err());
    }

    #[test]
    fn gamma_kills_covariant() {
        let a = RationalMatrix::from_i64(&[&[1, 2, 0, -1], &[2, 0, 3, 1], &[0, 3, -2, 2], &[-1, 1, 2, 1]]).unwrap();
        let basis = trace_zero_basis(4).unwrap();
        for k in 0..2 {
            let w = compute_tk_in(&a, k, &basis).unwrap();
            assert!(!w.is_zero());
            assert!(gamma_apply(&w, &basis).unwrap().is_empty());
        }
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_of_tk_star(2, 0).unwrap(), 2);
        assert_eq!(rank_of_tk_star(3, 1).unwrap(), 5);
    }

    #[test]
    fn containment_for_four_by_four() {
        let r = kernel_containment(4, 1).unwrap();
        assert_eq!((r.domain_dim, r.rank_tk_star, r.kernel_dim), (36, 30, 6));
        assert_eq!(r.gamma_image_dim, 6);
        assert!(r.contained);
    }
}
