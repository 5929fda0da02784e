//! Subdiscriminants from roots, as symmetric functions, and of matrices, plus
//! classification of matrices by their number of distinct eigenvalues.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::{format_rational, int, Rational};
use crate::exactmath::RationalMatrix;
use crate::symfun::{delta_nk, to_elementary_basis, to_power_sum_basis, SymBasis, SymPolyInBasis};

/// Roots `λ_1, …, λ_n` of a monic polynomial (at least one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootList(Vec<Rational>);

impl RootList {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("root list must be non-empty".into()));
        }
        Ok(RootList(values))
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| int(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `sDisc_0, …, sDisc_{n−1}`; the last entry is always `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdiscVector(pub Vec<Rational>);

impl SubdiscVector {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// Least `k` with `sDisc_k ≠ 0`.
    pub fn first_nonzero(&self) -> usize {
        self.0.iter().position(|v| !v.is_zero()).expect("sDisc_{n-1} = n is never zero")
    }
}

impl std::fmt::Display for SubdiscVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Number of distinct complex eigenvalues.
    pub distinct: usize,
    pub certificate: SubdiscVector,
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k, min: 0, max: n.saturating_sub(1) });
    }
    Ok(())
}

/// `Σ_{|S|=n−k} ∏_{i<j ∈ S} (λ_i − λ_j)²`, summed directly over subsets.
pub fn sdisc_from_roots(roots: &RootList, k: usize) -> Result<Rational> {
    let n = roots.len();
    check_k(n, k)?;
    let v = roots.values();
    let mut total = Rational::zero();
    for s in (0..n).combinations(n - k) {
        let mut prod = Rational::one();
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                let d = &v[i] - &v[j];
                prod *= &d * &d;
            }
        }
        total += prod;
    }
    Ok(total)
}

type Table = Mutex<HashMap<(usize, usize, SymBasis), Arc<SymPolyInBasis>>>;

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// `Δ_{n,k}` written in the power-sum or elementary basis. Results are
/// memoized per `(n, k, basis)`; building a table for `n = 6, k = 0` takes a
/// while, everything smaller is quick.
pub fn sdisc_symbolic(n: usize, k: usize, basis: SymBasis) -> Result<Arc<SymPolyInBasis>> {
    check_k(n, k)?;
    if basis == SymBasis::Monomial {
        return Err(Error::InvalidArgument("use symfun::delta_nk for the monomial basis".into()));
    }
    if let Some(hit) = table().lock().unwrap().get(&(n, k, basis)) {
        return Ok(hit.clone());
    }
    // built outside the lock; a concurrent duplicate build is harmless
    let delta = delta_nk(n, k)?;
    let rep = match basis {
        SymBasis::PowerSum => to_power_sum_basis(&delta)?,
        _ => to_elementary_basis(&delta)?,
    };
    let rep = Arc::new(rep);
    table().lock().unwrap().entry((n, k, basis)).or_insert_with(|| rep.clone());
    Ok(rep)
}

/// `sDisc_k(A) = sDisc_k(p_A)`, evaluated through the power-sum table at
/// `p_j = Tr(A^j)`. Any square matrix is accepted.
pub fn sdisc_of_matrix(a: &RationalMatrix, k: usize) -> Result<Rational> {
    let n = a.n();
    check_k(n, k)?;
    let table = sdisc_symbolic(n, k, SymBasis::PowerSum)?;
    Ok(table.eval(&a.power_traces(n)))
}

/// All subdiscriminants of `A` and the number of distinct eigenvalues they
/// certify: `n − k*` with `k*` the first nonzero index.
pub fn classify(a: &RationalMatrix) -> Result<Classification> {
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let traces = a.power_traces(n);
    let values = (0..n)
        .map(|k| Ok(sdisc_symbolic(n, k, SymBasis::PowerSum)?.eval(&traces)))
        .collect::<Result<Vec<_>>>()?;
    let certificate = SubdiscVector(values);
    Ok(Classification { distinct: n - certificate.first_nonzero(), certificate })
}

/// `sDisc_k(tA) = t^{(n−k)(n−k−1)} sDisc_k(A)`, checked exactly.
pub fn homogeneity_check(a: &RationalMatrix, k: usize, t: &Rational) -> Result<bool> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("scaling factor must be nonzero".into()));
    }
    let n = a.n();
    check_k(n, k)?;
    let degree = ((n - k) * (n - k - 1)) as i32;
    let lhs = sdisc_of_matrix(&a.scale(t), k)?;
    let rhs = num_traits::pow::pow(t.clone(), degree as usize) * sdisc_of_matrix(a, k)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::indexed_vars;
    use crate::exactmath::{det, Monomial, MultiPoly};
    use proptest::prelude::*;

    fn diag(v: &[i64]) -> RationalMatrix {
        RationalMatrix::diag(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    /// Independent route: `sDisc_k = det [p_{i+j}]_{0 ≤ i,j < n−k}` with `p_0 = n`.
    fn hankel_oracle(a: &RationalMatrix, k: usize) -> Rational {
        let n = a.n();
        let m = n - k;
        let mut p = vec![int(n as i64)];
        p.extend(a.power_traces(2 * m));
        let h: Vec<Vec<Rational>> = (0..m).map(|i| (0..m).map(|j| p[i + j].clone()).collect()).collect();
        det(&h)
    }

    #[test]
    fn from_roots_examples() {
        let r = RootList::from_i64(&[1, 2, 3]).unwrap();
        assert_eq!(sdisc_from_roots(&r, 0).unwrap(), int(4));
        assert_eq!(sdisc_from_roots(&r, 1).unwrap(), int(6));
        let r = RootList::from_i64(&[5, 5, 5]).unwrap();
        assert_eq!(sdisc_from_roots(&r, 2).unwrap(), int(3));
        assert!(matches!(sdisc_from_roots(&r, 3), Err(Error::KOutOfRange { .. })));
        assert!(RootList::new(vec![]).is_err());
    }

    #[test]
    fn symbolic_examples() {
        let e = sdisc_symbolic(2, 0, SymBasis::Elementary).unwrap();
        let expect = MultiPoly::from_terms(
            indexed_vars("e", 2),
            [(Monomial(vec![2, 0]), int(1)), (Monomial(vec![0, 1]), int(-4))],
        );
        assert_eq!(e.poly, expect);
        let p = sdisc_symbolic(3, 1, SymBasis::PowerSum).unwrap();
        let expect = MultiPoly::from_terms(
            indexed_vars("p", 3),
            [(Monomial(vec![0, 1, 0]), int(3)), (Monomial(vec![2, 0, 0]), int(-1))],
        );
        assert_eq!(p.poly, expect);
        for n in 2..=6 {
            for basis in [SymBasis::PowerSum, SymBasis::Elementary] {
                let t = sdisc_symbolic(n, n - 1, basis).unwrap();
                assert_eq!(t.poly.as_constant(), Some(int(n as i64)));
            }
        }
    }

    #[test]
    fn of_matrix_examples() {
        assert_eq!(sdisc_of_matrix(&diag(&[1, 2, 3]), 1).unwrap(), int(6));
        for n in 2..=5 {
            for k in 0..n - 1 {
                assert!(sdisc_of_matrix(&RationalMatrix::identity(n), k).unwrap().is_zero());
            }
        }
        let swap = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(sdisc_of_matrix(&swap, 0).unwrap(), int(4));
        assert!(sdisc_of_matrix(&swap, 2).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&diag(&[1, 1, 2])).unwrap();
        assert_eq!(c.distinct, 2);
        assert_eq!(c.certificate, SubdiscVector(vec![int(0), int(2), int(3)]));
        assert_eq!(c.certificate.to_string(), "[0, 2, 3]");
        assert_eq!(classify(&RationalMatrix::identity(4)).unwrap().distinct, 1);
        let c = classify(&diag(&[1, 2, 3, 4])).unwrap();
        assert_eq!(c.distinct, 4);
        assert_eq!(c.certificate.values()[0], int(144));
    }

    #[test]
    fn homogeneity_examples() {
        assert!(homogeneity_check(&diag(&[3, -1, 4]), 0, &int(1)).unwrap());
        assert!(homogeneity_check(&diag(&[1, 2]), 0, &int(2)).unwrap());
        assert_eq!(sdisc_of_matrix(&diag(&[2, 4]), 0).unwrap(), int(4));
        assert!(homogeneity_check(&diag(&[1, 2, 3]), 1, &int(3)).unwrap());
        assert_eq!(sdisc_of_matrix(&diag(&[3, 6, 9]), 1).unwrap(), int(54));
        assert!(homogeneity_check(&diag(&[1, 2]), 0, &int(0)).is_err());
    }

    #[test]
    fn non_symmetric_matrices_are_accepted() {
        // Jordan-like block with eigenvalues 1, 1, 3
        let a = RationalMatrix::from_i64(&[&[1, 5, 0], &[0, 1, 2], &[0, 0, 3]]).unwrap();
        let c = classify(&a).unwrap();
        assert_eq!(c.distinct, 2);
        assert_eq!(c.certificate.values()[1], sdisc_from_roots(&RootList::from_i64(&[1, 1, 3]).unwrap(), 1).unwrap());
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
        prop::collection::vec(-3i64..4, n * n).prop_map(move |v| {
            RationalMatrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matrix_route_matches_hankel_oracle(a in small_matrix(4), k in 0usize..4) {
            prop_assert_eq!(sdisc_of_matrix(&a, k).unwrap(), hankel_oracle(&a, k));
        }

        #[test]
        fn roots_agree_with_diagonal_matrix(roots in prop::collection::vec(-4i64..5, 1..6)) {
            let r = RootList::from_i64(&roots).unwrap();
            let d = diag(&roots);
            let distinct = roots.iter().collect::<std::collections::BTreeSet<_>>().len();
            for k in 0..roots.len() {
                let v = sdisc_from_roots(&r, k).unwrap();
                prop_assert_eq!(&v, &sdisc_of_matrix(&d, k).unwrap());
                prop_assert!(v >= Rational::zero());
                prop_assert_eq!(v.is_zero(), distinct < roots.len() - k);
            }
        }

        #[test]
        fn classify_is_similarity_invariant(a in small_matrix(3), q in small_matrix(3)) {
            prop_assume!(!q.det().is_zero());
            let b = q.mul(&a).mul(&q.inverse().unwrap());
            prop_assert_eq!(classify(&a).unwrap(), classify(&b).unwrap());
        }

        #[test]
        fn homogeneous_of_expected_degree(a in small_matrix(3), k in 0usize..3, t in -5i64..6) {
            prop_assume!(t != 0);
            prop_assert!(homogeneity_check(&a, k, &int(t)).unwrap());
        }
    }
}
