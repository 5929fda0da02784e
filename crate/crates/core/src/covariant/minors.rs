//! All maximal minors of an `s × d` matrix, built one row at a time: the minors
//! on rows `0..r` are Laplace expansions along row `r − 1` of those on rows
//! `0..r−1`. Each level is computed in parallel.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::exactmath::IntPoly;

pub(crate) trait MinorRing: Clone + Send + Sync {
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// `acc += sign · a · b`.
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self, negate: bool) -> Result<()>;
}

impl MinorRing for BigInt {
    fn one_like(&self) -> Self {
        BigInt::from(1)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self, negate: bool) -> Result<()> {
        let t = a * b;
        if negate {
            *acc -= t;
        } else {
            *acc += t;
        }
        Ok(())
    }
}

impl MinorRing for IntPoly {
    fn one_like(&self) -> Self {
        IntPoly::constant(self.nvars(), 1)
    }
    fn zero_like(&self) -> Self {
        IntPoly::zero(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self, negate: bool) -> Result<()> {
        acc.add_mul(a, b, if negate { -1 } else { 1 })
    }
}

fn mask_of(cols: &[usize]) -> u64 {
    cols.iter().fold(0u64, |m, &c| m | (1 << c))
}

/// Returns `(columns, minor)` for every `s`-subset of columns in lexicographic
/// order. Requires at least one row and at most 64 columns.
pub(crate) fn maximal_minors<T: MinorRing>(rows: &[Vec<T>]) -> Result<Vec<(Vec<usize>, T)>> {
    let s = rows.len();
    let d = rows[0].len();
    assert!(s >= 1 && s <= d && d <= 64);
    let zero = rows[0][0].zero_like();
    let one = rows[0][0].one_like();
    let mut prev: FxHashMap<u64, T> = FxHashMap::default();
    prev.insert(0, one);
    for r in 1..=s {
        let row = &rows[r - 1];
        let subsets: Vec<Vec<usize>> = (0..d).combinations(r).collect();
        let computed: Vec<Result<(u64, Vec<usize>, T)>> = subsets
            .into_par_iter()
            .map(|cols| {
                let mut acc = zero.clone();
                let mask = mask_of(&cols);
                for (pos, &c) in cols.iter().enumerate() {
                    if row[c].is_zero_elem() {
                        continue;
                    }
                    if let Some(sub) = prev.get(&(mask & !(1 << c))) {
                        T::mul_acc(&mut acc, &row[c], sub, (r - 1 + pos) % 2 == 1)?;
                    }
                }
                Ok((mask, cols, acc))
            })
            .collect();
        if r == s {
            return computed.into_iter().map(|x| x.map(|(_, cols, v)| (cols, v))).collect();
        }
        let mut next = FxHashMap::default();
        for item in computed {
            let (mask, _, v) = item?;
            if !v.is_zero_elem() {
                next.insert(mask, v);
            }
        }
        prev = next;
    }
    unreachable!("loop returns at the top level")
}
