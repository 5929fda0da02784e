//! Highest weights of `SO_n`, the Weyl dimension formula, and the resulting
//! upper bounds on the number of squares needed for `sDisc_k`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::{binomial, Rational};

/// A dominant weight `λ = (λ_1, …, λ_l)` of `SO_n`, `l = ⌊n/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight {
    n: usize,
    lambda: Vec<i64>,
}

impl HighestWeight {
    /// Zero-pads `lambda` to length `l` and checks dominance:
    /// `λ_1 ≥ … ≥ λ_l ≥ 0` for odd `n`, `λ_1 ≥ … ≥ λ_{l−1} ≥ |λ_l|` for even `n`.
    pub fn new(n: usize, mut lambda: Vec<i64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionOutOfRange { n, min: 2, max: usize::MAX });
        }
        let l = n / 2;
        if lambda.len() > l {
            return Err(Error::InvalidArgument(format!("weight {lambda:?} is longer than {l} for SO_{n}")));
        }
        lambda.resize(l, 0);
        let dominant = if n % 2 == 1 {
            lambda.windows(2).all(|w| w[0] >= w[1]) && lambda[l - 1] >= 0
        } else {
            lambda[..l - 1].windows(2).all(|w| w[0] >= w[1]) && (l == 1 || lambda[l - 2] >= lambda[l - 1].abs())
        };
        if !dominant {
            return Err(Error::InvalidArgument(format!("{lambda:?} is not a dominant weight of SO_{n}")));
        }
        Ok(HighestWeight { n, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }
}

impl std::fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Complex dimension of the irreducible `SO_n`-module with highest weight `w`.
pub fn weyl_dim(w: &HighestWeight) -> BigInt {
    let n = w.n as i64;
    let l = w.lambda.len();
    let lam = |i: usize| w.lambda[i - 1];
    let frac = |p: i64, q: i64| Rational::new(BigInt::from(p), BigInt::from(q));
    let mut d = Rational::one();
    for i in 1..=l {
        for j in i + 1..=l {
            let (ii, jj) = (i as i64, j as i64);
            d *= frac(lam(i) - lam(j) + jj - ii, jj - ii);
            d *= frac(lam(i) + lam(j) + n - ii - jj, n - ii - jj);
        }
        if w.n % 2 == 1 {
            let ii = i as i64;
            d *= frac(2 * lam(i) + n - 2 * ii, n - 2 * ii);
        }
    }
    assert!(d.is_integer() && d > Rational::zero(), "Weyl dimension {d} is not a positive integer for {w}");
    d.to_integer()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuBoundReport {
    pub n: usize,
    pub k: usize,
    pub weight_used: HighestWeight,
    /// The weight is not self-conjugate and the real module has twice the
    /// complex dimension.
    pub doubled: bool,
    pub bound: BigInt,
    /// `binom(n(n+1)/2, n−k)`, the number of squares in the older presentation.
    pub roy_count: BigInt,
}

/// Upper bound on the number of squares needed to write `sDisc_k` of an
/// `n × n` symmetric matrix.
pub fn mu_bound(n: usize, k: usize) -> Result<MuBoundReport> {
    if n < 2 || k > n - 2 {
        return Err(Error::KOutOfRange { n, k, min: 0, max: n.saturating_sub(2) });
    }
    let l = n / 2;
    let ones = |first: usize, count: usize| -> Vec<i64> {
        std::iter::once(first as i64).chain(std::iter::repeat(1).take(count)).collect()
    };
    let doubled = (n - 2) % 4 == 0 && k + 1 == l;
    let lambda = if doubled {
        ones(n - l + 1, l - 1)
    } else if k + 1 < n - l {
        ones(n - k, k)
    } else {
        ones(n - k, n - k - 2)
    };
    let weight_used = HighestWeight::new(n, lambda)?;
    let dim = weyl_dim(&weight_used);
    let bound = if doubled { dim * 2 } else { dim };
    let roy_count = BigInt::from(binomial((n * (n + 1) / 2) as u64, (n - k) as u64));
    Ok(MuBoundReport { n, k, weight_used, doubled, bound, roy_count })
}

/// Dimension of degree-`n` harmonic polynomials in `n` variables,
/// `binom(2n−1, n) − binom(2n−3, n−2)`.
pub fn harmonic_dimension(n: usize) -> BigInt {
    let n = n as u64;
    BigInt::from(binomial(2 * n - 1, n)) - BigInt::from(binomial(2 * n - 3, n - 2))
}

/// Whether the `k = 0` bound, when it comes from the weight `(n, 0, …, 0)`,
/// equals the dimension of degree-`n` spherical harmonics.
pub fn harmonic_dim_crosscheck(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::DimensionOutOfRange { n, min: 3, max: usize::MAX });
    }
    let report = mu_bound(n, 0)?;
    let standard = !report.doubled && report.weight_used.lambda()[1..].iter().all(|&x| x == 0);
    Ok(standard && report.weight_used.lambda()[0] == n as i64 && report.bound == harmonic_dimension(n))
}

/// Every dominant weight of `SO_n` with entries in `-max_entry..=max_entry`.
pub fn all_dominant_weights(n: usize, max_entry: i64) -> Vec<HighestWeight> {
    let l = n / 2;
    itertools::repeat_n(-max_entry..=max_entry, l)
        .multi_cartesian_product()
        .filter_map(|v| HighestWeight::new(n, v).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Oracle: `∏_{α > 0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩` over the positive roots of
    /// `D_l` (`e_i ± e_j`) or `B_l` (`e_i ± e_j`, `e_i`), in half-integers.
    fn root_system_dim(n: usize, lambda: &[i64]) -> Rational {
        let l = n / 2;
        // doubled coordinates keep everything integral
        let rho2: Vec<i64> = (0..l)
            .map(|i| if n % 2 == 0 { 2 * (l - 1 - i) as i64 } else { (2 * (l - i) - 1) as i64 })
            .collect();
        let lr2: Vec<i64> = (0..l).map(|i| 2 * lambda[i] + rho2[i]).collect();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..l {
            for j in i + 1..l {
                num *= (lr2[i] - lr2[j]) * (lr2[i] + lr2[j]);
                den *= (rho2[i] - rho2[j]) * (rho2[i] + rho2[j]);
            }
            if n % 2 == 1 {
                num *= lr2[i];
                den *= rho2[i];
            }
        }
        Rational::new(num, den)
    }

    fn hw(n: usize, v: &[i64]) -> HighestWeight {
        HighestWeight::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn known_dimensions() {
        assert_eq!(weyl_dim(&hw(4, &[3, 1])), BigInt::from(15));
        assert_eq!(weyl_dim(&hw(4, &[3, -1])), BigInt::from(15));
        assert_eq!(weyl_dim(&hw(4, &[1, 1])), BigInt::from(3));
        for m in 0..10 {
            assert_eq!(weyl_dim(&hw(3, &[m])), BigInt::from(2 * m + 1));
        }
        // vector representation
        for n in 3..=10 {
            assert_eq!(weyl_dim(&hw(n, &[1])), BigInt::from(n));
        }
    }

    #[test]
    fn weight_validation() {
        assert_eq!(hw(6, &[2]).lambda(), &[2, 0, 0]);
        assert!(HighestWeight::new(5, vec![1, 2]).is_err());
        assert!(HighestWeight::new(5, vec![1, -1]).is_err());
        assert!(HighestWeight::new(6, vec![2, 1, -1]).is_ok());
        assert!(HighestWeight::new(6, vec![2, 1, -2]).is_err());
        assert!(HighestWeight::new(4, vec![1, 1, 1]).is_err());
    }

    #[test]
    fn bound_examples() {
        let r = mu_bound(4, 1).unwrap();
        assert_eq!((r.weight_used.lambda(), r.bound.clone(), r.roy_count.clone()), (&[3i64, 1][..], 15.into(), 120.into()));
        let r = mu_bound(4, 2).unwrap();
        assert_eq!((r.weight_used.lambda(), r.bound.clone(), r.roy_count.clone()), (&[2i64, 0][..], 9.into(), 45.into()));
        assert!(!r.doubled);
        // SO_6, (4,1,1): oracle value 280, doubled
        let r = mu_bound(6, 2).unwrap();
        assert!(r.doubled);
        assert_eq!(r.weight_used.lambda(), &[4, 1, 1]);
        assert_eq!(root_system_dim(6, &[4, 1, 1]), Rational::from_integer(280.into()));
        assert_eq!(r.bound, BigInt::from(560));
        let r = mu_bound(3, 1).unwrap();
        assert_eq!(r.roy_count, BigInt::from(15));
        assert!(mu_bound(4, 3).is_err());
        // 2 × 2: (a − b)² + 4c², two squares
        assert_eq!(mu_bound(2, 0).unwrap().bound, BigInt::from(2));
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_dimension(3), BigInt::from(7));
        assert_eq!(harmonic_dimension(4), BigInt::from(25));
        for n in 3..=8 {
            assert!(harmonic_dim_crosscheck(n).unwrap());
        }
        assert!(harmonic_dim_crosscheck(2).is_err());
    }

    #[test]
    fn bound_never_exceeds_roy_count() {
        for n in 2..=8 {
            for k in 0..=n - 2 {
                let r = mu_bound(n, k).unwrap();
                assert!(r.bound <= r.roy_count, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn sweep_matches_root_system() {
        for n in 2..=8 {
            for w in all_dominant_weights(n, 4) {
                assert_eq!(Rational::from_integer(weyl_dim(&w)), root_system_dim(n, w.lambda()), "{w}");
            }
        }
    }

    fn dominant(n: usize) -> impl Strategy<Value = HighestWeight> {
        let l = n / 2;
        prop::collection::vec(0i64..6, l).prop_map(move |mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            HighestWeight::new(n, v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn even_dimension_ignores_last_sign(l in 1usize..5, w in prop::collection::vec(0i64..6, 1..5)) {
            let n = 2 * l;
            let mut v = w;
            v.resize(l, 0);
            v.sort_unstable_by(|a, b| b.cmp(a));
            let mut flipped = v.clone();
            flipped[l - 1] = -flipped[l - 1];
            prop_assert_eq!(weyl_dim(&hw(n, &v)), weyl_dim(&hw(n, &flipped)));
        }

        #[test]
        fn integral_and_matches_oracle(w in (3usize..11).prop_flat_map(dominant)) {
            prop_assert_eq!(Rational::from_integer(weyl_dim(&w)), root_system_dim(w.n(), w.lambda()));
        }
    }
}
