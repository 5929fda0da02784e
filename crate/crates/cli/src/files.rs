//! JSON schemas for matrices and certificates. Every rational is a string
//! `"p"` or `"p/q"`, never a JSON number.

use std::path::Path;

use serde::{Deserialize, Serialize};
use subdisc_core::covariant::symbolic::entry_vars;
use subdisc_core::covariant::{CertPoly, SosCertificate, SosTerm};
use subdisc_core::exactmath::{format_rational, parse_rational, Rational, RationalMatrix};

use crate::error::{CliError, CliResult};

pub const TERM_ORDER: &str = "graded lexicographic, descending";
pub const VARIABLE_ORDER: &str = "upper-triangular row-major: a_ij with i <= j, listed in `variables`";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermEntry {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareEntry {
    pub weight: String,
    pub poly: Vec<PolyTermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub term_order: String,
    pub variable_order: String,
    pub variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub n: usize,
    pub k: usize,
    pub c: String,
    pub terms: Vec<SquareEntry>,
    pub metadata: Metadata,
}

pub fn parse_scalar(s: &str) -> CliResult<Rational> {
    parse_rational(s).ok_or_else(|| CliError::Parse(format!("not a rational number: {s:?}")))
}

impl MatrixFile {
    pub fn from_matrix(a: &RationalMatrix) -> Self {
        MatrixFile {
            n: a.n(),
            entries: a.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            symmetric: a.is_symmetric(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<RationalMatrix> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(CliError::Parse(format!("entries must form a {0}×{0} grid", self.n)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        let a = RationalMatrix::from_rows(rows)?;
        if self.symmetric {
            return a.into_symmetric().map_err(|e| CliError::Parse(format!("file declares a symmetric matrix: {e}")));
        }
        Ok(a)
    }
}

impl CertificateFile {
    pub fn from_certificate(cert: &SosCertificate) -> Self {
        let terms = cert
            .terms
            .iter()
            .map(|t| SquareEntry {
                weight: format_rational(&t.weight),
                poly: t
                    .poly
                    .terms()
                    .into_iter()
                    .map(|(exponents, c)| PolyTermEntry { exponents, coeff: format_rational(&c) })
                    .collect(),
            })
            .collect();
        CertificateFile {
            n: cert.n,
            k: cert.k,
            c: format_rational(&cert.c),
            terms,
            metadata: Metadata {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                term_order: TERM_ORDER.to_string(),
                variable_order: VARIABLE_ORDER.to_string(),
                variables: entry_vars(cert.n).to_vec(),
            },
        }
    }

    pub fn to_certificate(&self) -> CliResult<SosCertificate> {
        if self.n < 2 {
            return Err(CliError::Parse(format!("certificate needs n ≥ 2, got {}", self.n)));
        }
        let vars = entry_vars(self.n);
        if self.metadata.variables[..] != vars[..] {
            return Err(CliError::Parse("variable list does not match the canonical entry order".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let pairs = t
                    .poly
                    .iter()
                    .map(|e| Ok((e.exponents.clone(), parse_scalar(&e.coeff)?)))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(SosTerm { weight: parse_scalar(&t.weight)?, poly: CertPoly::from_terms(vars.len(), &pairs)? })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(SosCertificate { n: self.n, k: self.k, c: parse_scalar(&self.c)?, terms })
    }

    /// Number of stored monomial terms across all squares.
    pub fn monomial_count(cert: &SosCertificate) -> usize {
        cert.terms.iter().map(|t| t.poly.len()).sum()
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let file = std::fs::File::create(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))?;
    let mut writer = std::io::BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, value).map_err(|e| CliError::Other(e.to_string()))?;
    std::io::Write::flush(&mut writer).map_err(|e| CliError::Other(e.to_string()))
}
