use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::{common_denominator, int, Rational};
use crate::exactmath::RationalMatrix;

/// One element of the trace-orthogonal basis of trace-zero symmetric matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisElement {
    /// `E_pq + E_qp` with `p < q` (0-based); squared norm 2.
    OffDiagonal(usize, usize),
    /// Diagonal matrix with these integer entries.
    Diagonal(Vec<i64>),
}

/// Trace-orthogonal basis of the trace-zero symmetric `n × n` matrices:
/// off-diagonal generators in lexicographic order, then the diagonal part.
#[derive(Clone, Debug)]
pub struct TraceZeroBasis {
    n: usize,
    elements: Vec<BasisElement>,
    basis_matrices: Vec<RationalMatrix>,
    norms: Vec<Rational>,
}

/// Builds the basis. The diagonal part is Gram–Schmidt applied to
/// `e_j − e_{j+1}` without normalization, each vector then rescaled to a
/// primitive integer vector, which gives `e_1 + … + e_j − j·e_{j+1}`.
pub fn trace_zero_basis(n: usize) -> Result<TraceZeroBasis> {
    if n < 2 {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: usize::MAX });
    }
    let mut elements = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            elements.push(BasisElement::OffDiagonal(p, q));
        }
    }
    let dot = |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut ortho: Vec<Vec<Rational>> = Vec::new();
    for j in 0..n - 1 {
        let mut v = vec![Rational::zero(); n];
        v[j] = int(1);
        v[j + 1] = int(-1);
        for u in &ortho {
            let f = dot(&v, u) / dot(u, u);
            for (x, y) in v.iter_mut().zip(u) {
                *x -= &f * y;
            }
        }
        let scale = Rational::from_integer(common_denominator(v.iter()));
        let ints: Vec<Rational> = v.iter().map(|x| x * &scale).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x.numer()));
        let g = Rational::from_integer(g);
        let prim: Vec<Rational> = ints.iter().map(|x| x / &g).collect();
        ortho.push(prim);
    }
    for v in &ortho {
        elements.push(BasisElement::Diagonal(
            v.iter().map(|x| i64::try_from(x.to_integer()).expect("small diagonal entry")).collect(),
        ));
    }
    let basis_matrices: Vec<RationalMatrix> = elements.iter().map(|e| element_matrix(n, e)).collect();
    let norms = basis_matrices.iter().map(|b| b.mul(b).trace()).collect();
    Ok(TraceZeroBasis { n, elements, basis_matrices, norms })
}

fn element_matrix(n: usize, e: &BasisElement) -> RationalMatrix {
    match e {
        BasisElement::OffDiagonal(p, q) => {
            let mut m = RationalMatrix::zero(n);
            m.set(*p, *q, Rational::one());
            m.set(*q, *p, Rational::one());
            m
        }
        BasisElement::Diagonal(d) => RationalMatrix::diag(&d.iter().map(|&x| int(x)).collect::<Vec<_>>()),
    }
}

impl TraceZeroBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn basis_matrices(&self) -> &[RationalMatrix] {
        &self.basis_matrices
    }

    pub fn norms(&self) -> &[Rational] {
        &self.norms
    }

    /// `Tr(X b)` for every basis element `b`.
    pub fn pairings(&self, x: &RationalMatrix) -> Vec<Rational> {
        self.elements
            .iter()
            .map(|e| match e {
                BasisElement::OffDiagonal(p, q) => &x[(*p, *q)] + &x[(*q, *p)],
                BasisElement::Diagonal(d) => d.iter().enumerate().map(|(i, &c)| &x[(i, i)] * int(c)).sum(),
            })
            .collect()
    }

    /// Coordinates of a trace-zero symmetric matrix in this basis.
    pub fn coordinates(&self, x: &RationalMatrix) -> Vec<Rational> {
        self.pairings(x).into_iter().zip(&self.norms).map(|(t, w)| t / w).collect()
    }

    /// `Σ c_b b`.
    pub fn combine(&self, coords: &[Rational]) -> RationalMatrix {
        assert_eq!(coords.len(), self.dim());
        let mut acc = RationalMatrix::zero(self.n);
        for (c, b) in coords.iter().zip(&self.basis_matrices) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let b = trace_zero_basis(2).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.elements()[1], BasisElement::Diagonal(vec![1, -1]));
        assert_eq!(b.norms()[1], int(2));
        assert_eq!(trace_zero_basis(3).unwrap().dim(), 5);
        assert!(trace_zero_basis(1).is_err());
    }

    #[test]
    fn basis_is_trace_orthogonal() {
        for n in 2..=6 {
            let b = trace_zero_basis(n).unwrap();
            assert_eq!(b.dim(), n * (n + 1) / 2 - 1);
            let ms = b.basis_matrices();
            for (i, x) in ms.iter().enumerate() {
                assert!(x.trace().is_zero());
                assert!(x.is_symmetric());
                assert!(b.norms()[i] > Rational::zero());
                for y in &ms[i + 1..] {
                    assert!(x.mul(y).trace().is_zero());
                }
            }
        }
        let d = trace_zero_basis(4).unwrap();
        assert_eq!(d.elements()[8], BasisElement::Diagonal(vec![1, 1, 1, -3]));
        assert_eq!(d.norms()[8], int(12));
    }

    #[test]
    fn coordinates_round_trip() {
        let b = trace_zero_basis(3).unwrap();
        let x = RationalMatrix::from_i64(&[&[1, 2, -1], &[2, 3, 5], &[-1, 5, -4]]).unwrap();
        assert_eq!(b.combine(&b.coordinates(&x)), x);
    }
}
