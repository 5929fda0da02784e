//! Exact rational scalars, multivariate polynomials and linear algebra.

pub mod intpoly;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod rational;

pub use intpoly::IntPoly;
pub use matrix::{char_poly, det, rank, RationalMatrix};
pub use poly::{indexed_vars, poly_arith, Monomial, MultiPoly, PolyOp, VarSet};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
