//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic over the declared variable order. Iteration therefore
//! runs from the smallest monomial up, and the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::rational::{format_rational, Rational};

/// Shared, ordered list of variable names.
pub type VarSet = Arc<[String]>;

/// `prefix1, …, prefixN`.
pub fn indexed_vars(prefix: &str, n: usize) -> VarSet {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Multivariate polynomial over the rationals. No stored coefficient is zero.
#[derive(Clone)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = align(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: VarSet) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let m = Monomial::one(p.nvars());
            p.terms.insert(m, c);
        }
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The `i`-th variable (0-based).
    pub fn var(vars: VarSet, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        let mut p = Self::zero(vars);
        let m = Monomial::var(p.nvars(), i);
        p.terms.insert(m, Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(vars: VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), p.nvars(), "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_map_unchecked(vars: VarSet, terms: BTreeMap<Monomial, Rational>) -> Self {
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// All terms share one total degree (the zero polynomial counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a point given in variable order. Works over the integers
    /// after putting the point on a common denominator.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        use num_bigint::BigInt;
        assert_eq!(point.len(), self.nvars(), "point has wrong dimension");
        let Some(maxdeg) = self.total_degree() else {
            return Rational::zero();
        };
        let den = super::rational::common_denominator(point.iter());
        let nums: Vec<BigInt> = point
            .iter()
            .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(nums.len());
        for (i, x) in nums.iter().enumerate() {
            let d = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(BigInt::one());
            for j in 0..d {
                let next = &v[j] * x;
                v.push(next);
            }
            powers.push(v);
        }
        let den_powers: Vec<BigInt> = {
            let mut v = vec![BigInt::one()];
            for j in 0..maxdeg as usize {
                let next = &v[j] * &den;
                v.push(next);
            }
            v
        };
        // sum of c * X^e * den^(maxdeg - deg), grouped by coefficient denominator
        let cden = self.denominator();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = (c * Rational::from_integer(cden.clone())).to_integer();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            t *= &den_powers[(maxdeg - m.degree()) as usize];
            acc += t;
        }
        Rational::new(acc, cden * &den_powers[maxdeg as usize])
    }

    /// Replaces variable `i` by `images[i]`; all images must share one variable set.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable required");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        if target.len() <= super::intpoly::MAX_VARS {
            if let Ok(p) = self.substitute_int(images, &target) {
                return p;
            }
        }
        self.substitute_rational(images, target)
    }

    /// Integer-kernel substitution: images are written as `I_i / d_i`, every
    /// term is scaled to a common denominator and the sum is formed in `i128`.
    fn substitute_int(&self, images: &[MultiPoly], target: &VarSet) -> crate::error::Result<MultiPoly> {
        use super::intpoly::IntPoly;
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        let ints: Vec<(IntPoly, BigInt)> =
            images.iter().map(IntPoly::from_multipoly).collect::<crate::error::Result<_>>()?;
        // per-term rational factor c / prod d_i^e_i
        let factors: Vec<Rational> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let den: BigInt = m
                    .0
                    .iter()
                    .zip(&ints)
                    .map(|(&e, (_, d))| num_traits::pow::pow(d.clone(), e as usize))
                    .product();
                c / Rational::from_integer(den)
            })
            .collect();
        let lcm = super::rational::common_denominator(factors.iter());
        let mut cache: FxHashMap<(usize, u32), IntPoly> = FxHashMap::default();
        let mut acc = IntPoly::zero(target.len());
        for ((m, _), f) in self.terms.iter().zip(&factors) {
            let scaled = (f * Rational::from_integer(lcm.clone())).to_integer();
            let scaled = scaled.to_i128().ok_or(crate::error::Error::Overflow)?;
            let mut t = IntPoly::constant(target.len(), 1);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache.contains_key(&(i, e)) {
                    let p = ints[i].0.pow(e)?;
                    cache.insert((i, e), p);
                }
                t = t.mul(&cache[&(i, e)])?;
            }
            acc.add_scaled(&t, scaled)?;
        }
        Ok(acc.to_multipoly(target.clone(), &Rational::new(BigInt::from(1), lcm)))
    }

    fn substitute_rational(&self, images: &[MultiPoly], target: VarSet) -> MultiPoly {
        let mut cache: FxHashMap<(usize, u32), MultiPoly> = FxHashMap::default();
        let mut acc = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Renames variables by the permutation `perm`: variable `i` is sent to
    /// variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; m.0.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, vars: &VarSet) -> Option<MultiPoly> {
        let map: Option<Vec<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let map = map?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Some(MultiPoly { vars: vars.clone(), terms })
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator(&self) -> num_bigint::BigInt {
        super::rational::common_denominator(self.terms.values())
    }
}

/// Brings two polynomials onto a common variable set (the union, in order of
/// first appearance).
pub fn align(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if a.vars == b.vars {
        return (a.clone(), b.clone());
    }
    let mut names: Vec<String> = a.vars.to_vec();
    for v in b.vars.iter() {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    let vars: VarSet = names.into();
    (a.embed(&vars).unwrap(), b.embed(&vars).unwrap())
}

/// Exact `a op b`; operands over different variable sets are aligned first.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> MultiPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

fn add_impl(a: &MultiPoly, b: &MultiPoly, negate_b: bool) -> MultiPoly {
    if a.vars != b.vars {
        let (a, b) = align(a, b);
        return add_impl(&a, &b, negate_b);
    }
    let mut out = a.clone();
    for (m, c) in &b.terms {
        let c = if negate_b { -c } else { c.clone() };
        out.add_term(m.clone(), c);
    }
    out
}

fn mul_impl(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.vars != b.vars {
        let (a, b) = align(a, b);
        return mul_impl(&a, &b);
    }
    let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let m = ma.mul(mb);
            let c = ca * cb;
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
    }
    let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    MultiPoly { vars: a.vars.clone(), terms }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        mul_impl(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
