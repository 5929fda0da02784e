//! Arithmetic modulo the Mersenne prime `2⁶¹ − 1`, for randomized identity
//! tests on polynomials too large to evaluate exactly many times.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rational::Rational;

pub const P61: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P61 {
        s - P61
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P61 - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    let z = a as u128 * b as u128;
    add((z as u64) & P61, (z >> 61) as u64)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; `None` for zero.
pub fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, P61 - 2))
}

pub fn from_i128(v: i128) -> u64 {
    v.rem_euclid(P61 as i128) as u64
}

pub fn from_bigint(v: &BigInt) -> u64 {
    v.mod_floor(&BigInt::from(P61)).to_u64().expect("reduced residue fits in u64")
}

/// Image of `q` in the field; `None` when the denominator vanishes mod p.
pub fn from_rational(q: &Rational) -> Option<u64> {
    Some(mul(from_bigint(q.numer()), inv(from_bigint(q.denom()))?))
}

/// Determinant by Gaussian elimination over the field.
pub fn det(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut d = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            d = sub(0, d);
        }
        d = mul(d, m[c][c]);
        let iv = inv(m[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = mul(m[r][c], iv);
            for j in c..n {
                let t = mul(f, m[c][j]);
                m[r][j] = sub(m[r][j], t);
            }
        }
    }
    d
}
