//! The covariant with the entries of `A` left as indeterminates `a_ij`, `i ≤ j`,
//! ordered row-major over the upper triangle.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::basis::{BasisElement, TraceZeroBasis};
use super::minors::maximal_minors;
use crate::error::{Error, Result};
use crate::exactmath::intpoly::{poly_det, MAX_VARS};
use crate::exactmath::rational::Rational;
use crate::exactmath::{IntPoly, VarSet};
use crate::subdisc::{check_k, sdisc_symbolic};
use crate::symfun::SymBasis;

pub type PolyMatrix = Vec<Vec<IntPoly>>;

pub fn entry_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Names `a11, a12, …, ann`; an underscore separates indices once `n ≥ 10`.
pub fn entry_vars(n: usize) -> VarSet {
    let mut names = Vec::with_capacity(entry_count(n));
    for i in 1..=n {
        for j in i..=n {
            names.push(if n < 10 { format!("a{i}{j}") } else { format!("a{i}_{j}") });
        }
    }
    names.into()
}

/// Position of `a_ij` (0-based `i, j` in either order) in [`entry_vars`].
pub fn entry_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + j - i
}

/// Generic symmetric matrix of indeterminates.
pub fn symbolic_matrix(n: usize) -> Result<PolyMatrix> {
    let nv = entry_count(n);
    if nv > MAX_VARS {
        return Err(Error::SizeGuard(format!("n = {n} needs {nv} entry variables, at most {MAX_VARS} supported")));
    }
    Ok((0..n).map(|i| (0..n).map(|j| IntPoly::var(nv, entry_index(n, i, j))).collect()).collect())
}

/// `A, A², …, A^m` for the generic symmetric matrix. Only the upper triangle
/// is multiplied out; powers of a symmetric matrix are symmetric.
pub fn symbolic_powers(n: usize, m: usize) -> Result<Vec<PolyMatrix>> {
    let a = symbolic_matrix(n)?;
    let mut out = vec![a.clone()];
    for _ in 1..m {
        let prev = out.last().unwrap();
        let upper: Vec<Result<((usize, usize), IntPoly)>> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, j)| {
                let mut acc = IntPoly::zero(entry_count(n));
                for t in 0..n {
                    acc = acc.add(&prev[i][t].mul(&a[t][j])?)?;
                }
                Ok(((i, j), acc))
            })
            .collect();
        let mut next = vec![vec![IntPoly::zero(entry_count(n)); n]; n];
        for item in upper {
            let ((i, j), p) = item?;
            next[j][i] = p.clone();
            next[i][j] = p;
        }
        out.push(next);
    }
    Ok(out)
}

fn trace(m: &PolyMatrix) -> Result<IntPoly> {
    let mut acc = IntPoly::zero(m[0][0].nvars());
    for (i, row) in m.iter().enumerate() {
        acc = acc.add(&row[i])?;
    }
    Ok(acc)
}

/// `Tr(XY)` for symmetric `X, Y`.
fn trace_product(x: &PolyMatrix, y: &PolyMatrix) -> Result<IntPoly> {
    let mut acc = IntPoly::zero(x[0][0].nvars());
    for (xr, yr) in x.iter().zip(y) {
        for (p, q) in xr.iter().zip(yr) {
            acc = acc.add(&p.mul(q)?)?;
        }
    }
    Ok(acc)
}

/// Symbolic Plücker coordinates of `T_k`, in integer-scaled form.
///
/// Row `i` of the coefficient matrix holds `(A^i)_pq` against `E_pq + E_qp`
/// and `Σ_t d_t (A^i)_tt` against a diagonal element `d`; the true coordinate
/// of `B_i` is that value divided by `norm(d)` in the diagonal case. Hence the
/// coordinate `g_S` equals the returned minor divided by `∏_{diagonal b ∈ S} norm_b`.
pub struct ScaledPlucker {
    pub subsets: Vec<Vec<usize>>,
    pub minors: Vec<IntPoly>,
}

pub fn scaled_plucker(n: usize, k: usize, basis: &TraceZeroBasis) -> Result<ScaledPlucker> {
    check_k(n, k)?;
    if k > n - 2 {
        return Err(Error::KOutOfRange { n, k, min: 0, max: n - 2 });
    }
    let s = n - k - 1;
    let powers = symbolic_powers(n, s)?;
    let nv = entry_count(n);
    let rows: Vec<Vec<IntPoly>> = powers
        .iter()
        .map(|p| {
            basis
                .elements()
                .iter()
                .map(|e| match e {
                    BasisElement::OffDiagonal(a, b) => Ok(p[*a][*b].clone()),
                    BasisElement::Diagonal(d) => {
                        let mut acc = IntPoly::zero(nv);
                        for (t, &c) in d.iter().enumerate() {
                            acc.add_scaled(&p[t][t], c as i128)?;
                        }
                        Ok(acc)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // Expanding from the highest power down keeps the last, largest level a
    // product with linear entries. Reversing s rows flips the sign when
    // s(s−1)/2 is odd.
    let reversed: Vec<Vec<IntPoly>> = rows.into_iter().rev().collect();
    let flip = (s * (s - 1) / 2) % 2 == 1;
    let (subsets, minors) = maximal_minors(&reversed)?
        .into_iter()
        .map(|(cols, m)| Ok((cols, if flip { m.scale(-1)? } else { m })))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok(ScaledPlucker { subsets, minors })
}

/// Product of the diagonal-element norms in `subset` (an integer).
pub fn diagonal_norm_product(basis: &TraceZeroBasis, subset: &[usize]) -> BigInt {
    subset
        .iter()
        .filter(|&&b| matches!(basis.elements()[b], BasisElement::Diagonal(_)))
        .map(|&b| basis.norms()[b].to_integer())
        .product()
}

/// `sDisc_k` of the generic symmetric matrix as `(P, L)` with `sDisc_k = P / L`,
/// obtained by substituting `p_j = Tr(A^j)` into the power-sum table.
pub fn sdisc_entries(n: usize, k: usize) -> Result<(IntPoly, BigInt)> {
    check_k(n, k)?;
    let table = sdisc_symbolic(n, k, SymBasis::PowerSum)?;
    let (table_int, l) = IntPoly::from_multipoly(&table.poly)?;
    let powers = symbolic_powers(n, n)?;
    let traces: Vec<IntPoly> = powers.iter().map(trace).collect::<Result<_>>()?;
    let terms: Vec<(Vec<u32>, i128)> = table_int.sorted_terms();
    let parts: Vec<Result<IntPoly>> = terms
        .par_iter()
        .map(|(exps, c)| {
            let mut acc = IntPoly::constant(entry_count(n), *c);
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&traces[j].pow(e)?)?;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut out = IntPoly::zero(entry_count(n));
    for p in parts {
        out = out.add(&p?)?;
    }
    Ok((out, l))
}

/// `det Gram(B_1..B_s)` of the generic symmetric matrix as `(P, n^s)` with
/// the determinant equal to `P / n^s`; entries `n·Tr(A^{i+j}) − Tr(A^i)Tr(A^j)`.
pub fn gram_entries(n: usize, k: usize) -> Result<(IntPoly, BigInt)> {
    check_k(n, k)?;
    if k > n - 2 {
        return Err(Error::KOutOfRange { n, k, min: 0, max: n - 2 });
    }
    let s = n - k - 1;
    let powers = symbolic_powers(n, s)?;
    let traces: Vec<IntPoly> = powers.iter().map(trace).collect::<Result<_>>()?;
    let mut g = vec![Vec::with_capacity(s); s];
    for i in 0..s {
        for j in 0..s {
            let entry = trace_product(&powers[i], &powers[j])?.scale(n as i128)?.sub(&traces[i].mul(&traces[j])?)?;
            g[i].push(entry);
        }
    }
    Ok((poly_det(&g)?, BigInt::from(n).pow(s as u32)))
}

/// The `r` with `x = r·y`, if there is one.
pub fn exact_ratio(x: &IntPoly, y: &IntPoly) -> Result<Option<Rational>> {
    let Some((key, cy)) = y.leading() else {
        return Ok(if x.is_zero() { Some(Rational::zero()) } else { None });
    };
    let cx = x.terms().find(|&(k, _)| k == key).map(|(_, c)| c).unwrap_or(0);
    let r = Rational::new(BigInt::from(cx), BigInt::from(cy));
    let (num, den) = (r.numer().to_i128(), r.denom().to_i128());
    let (Some(num), Some(den)) = (num, den) else { return Err(Error::Overflow) };
    Ok((x.scale(den)? == y.scale(num)?).then_some(r))
}

/// `c` with `det Gram = c·sDisc_k` as a polynomial identity in the entries of a
/// generic symmetric matrix, or an error if no such constant exists.
pub fn symbolic_proportionality(n: usize, k: usize) -> Result<Rational> {
    let (gram, gram_den) = gram_entries(n, k)?;
    let (sdisc, sdisc_den) = sdisc_entries(n, k)?;
    let ratio = exact_ratio(&gram, &sdisc)?
        .ok_or_else(|| Error::IdentityFailed(format!("det Gram is not a multiple of sDisc_{k} for n = {n}")))?;
    Ok(ratio * Rational::new(sdisc_den, gram_den))
}

/// All `s`-subsets of `0..d` in lexicographic order.
pub fn subsets(d: usize, s: usize) -> Vec<Vec<usize>> {
    (0..d).combinations(s).collect()
}
