use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::rational::int;
use crate::exactmath::RationalMatrix;

/// Symmetric matrix with independent entries uniform in `-bound..=bound`.
pub fn random_symmetric<R: Rng>(n: usize, rng: &mut R, bound: i64) -> RationalMatrix {
    let mut m = RationalMatrix::zero(n);
    for i in 0..n {
        for j in i..n {
            let v = int(rng.gen_range(-bound..=bound));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Skew-symmetric matrix with entries uniform in `-bound..=bound`.
pub fn random_skew<R: Rng>(n: usize, rng: &mut R, bound: i64) -> RationalMatrix {
    let mut m = RationalMatrix::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = int(rng.gen_range(-bound..=bound));
            m.set(j, i, -v.clone());
            m.set(i, j, v);
        }
    }
    m
}

/// `(I − S)(I + S)⁻¹`, a rational orthogonal matrix for skew-symmetric `S`.
pub fn cayley(skew: &RationalMatrix) -> Result<RationalMatrix> {
    let id = RationalMatrix::identity(skew.n());
    Ok(id.sub(skew).mul(&id.add(skew).inverse()?))
}

/// Random rational orthogonal matrix from a seeded Cayley transform.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> RationalMatrix {
    cayley(&random_skew(n, rng, 2)).expect("I + S is invertible for real skew S")
}

/// Symmetric matrix whose eigenvalue multiplicities are the parts of
/// `multiplicities`, with distinct integer eigenvalues, conjugated by a random
/// rational orthogonal matrix.
pub fn sample_ek(n: usize, multiplicities: &[usize], seed: u64) -> Result<RationalMatrix> {
    if multiplicities.iter().any(|&p| p == 0) || multiplicities.iter().sum::<usize>() != n {
        return Err(Error::InvalidArgument(format!("{multiplicities:?} is not a partition of {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eigenvalues: Vec<i64> = Vec::new();
    while eigenvalues.len() < multiplicities.len() {
        let v = rng.gen_range(-9..=9);
        if !eigenvalues.contains(&v) {
            eigenvalues.push(v);
        }
    }
    let diagonal: Vec<_> = multiplicities
        .iter()
        .zip(&eigenvalues)
        .flat_map(|(&m, &v)| std::iter::repeat(int(v)).take(m))
        .collect();
    let q = random_orthogonal(n, &mut rng);
    let a = q.mul(&RationalMatrix::diag(&diagonal)).mul(&q.transpose());
    a.into_symmetric()
}

/// All partitions of `n` as non-increasing part lists.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
