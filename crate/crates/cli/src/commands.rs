use std::fmt::Write as _;
use std::path::Path;

use subdisc_core::covariant::{emit_certificate, Verification};
use subdisc_core::exactmath::{format_rational, RationalMatrix};
use subdisc_core::repdim::mu_bound;
use subdisc_core::subdisc::{classify, sdisc_from_roots, sdisc_of_matrix, RootList};

use crate::error::{CliError, CliResult};
use crate::files::{parse_scalar, read_json, write_json, CertificateFile, MatrixFile};

/// Certificates with more stored monomials than this are not written to disk;
/// `(5, 0)` has about 29 million and would produce a multi-gigabyte file.
pub const MAX_FILE_TERMS: usize = 5_000_000;

pub fn parse_roots(text: &str) -> CliResult<RootList> {
    let values = text.split(',').map(parse_scalar).collect::<CliResult<Vec<_>>>()?;
    Ok(RootList::new(values)?)
}

pub fn load_matrix(path: &Path) -> CliResult<RationalMatrix> {
    read_json::<MatrixFile>(path)?.to_matrix()
}

pub enum Source<'a> {
    Roots(&'a str),
    Matrix(&'a Path),
}

pub fn compute(source: Source<'_>, k: usize) -> CliResult<String> {
    let value = match source {
        Source::Roots(text) => sdisc_from_roots(&parse_roots(text)?, k)?,
        Source::Matrix(path) => sdisc_of_matrix(&load_matrix(path)?, k)?,
    };
    Ok(format_rational(&value))
}

pub fn classify_matrix(path: &Path) -> CliResult<String> {
    let c = classify(&load_matrix(path)?)?;
    Ok(format!("distinct={}; sdisc={}", c.distinct, c.certificate))
}

pub fn sos(n: usize, k: usize, out: &Path) -> CliResult<String> {
    let cert = emit_certificate(n, k)?;
    let monomials = CertificateFile::monomial_count(&cert);
    if monomials > MAX_FILE_TERMS {
        return Err(CliError::Range(format!(
            "certificate for (n, k) = ({n}, {k}) has {monomials} monomials, above the file limit of {MAX_FILE_TERMS}"
        )));
    }
    write_json(out, &CertificateFile::from_certificate(&cert))?;
    Ok(format!("c={}; terms={}; monomials={monomials}", format_rational(&cert.c), cert.terms.len()))
}

pub enum VerifyMode {
    /// Symbolic when within the expansion budget, random points mod a prime otherwise.
    Auto,
    Symbolic,
    Samples(usize),
    Modular(usize),
}

pub fn sos_verify(path: &Path, mode: VerifyMode, seed: u64) -> CliResult<String> {
    let cert = read_json::<CertificateFile>(path)?.to_certificate()?;
    let how = match mode {
        VerifyMode::Auto => cert.verify(seed)?,
        VerifyMode::Symbolic => {
            cert.verify_symbolic()?;
            Verification::Symbolic
        }
        VerifyMode::Samples(s) => Verification::Sampled { points: cert.verify_sampled(s, seed)? },
        VerifyMode::Modular(p) => Verification::Modular { points: cert.verify_modular(p, seed)? },
    };
    let how = match how {
        Verification::Symbolic => "symbolic".to_string(),
        Verification::Sampled { points } => format!("samples={points}"),
        Verification::Modular { points } => format!("modular={points}"),
    };
    Ok(format!("verified; c={}; terms={}; {how}", format_rational(&cert.c), cert.terms.len()))
}

pub fn bounds(n: usize) -> CliResult<String> {
    if n < 2 {
        return Err(CliError::Range(format!("bounds need n ≥ 2, got {n}")));
    }
    let mut out = String::from("k\tweight\tdoubled\tbound\troy_count\n");
    for k in 0..=n - 2 {
        let r = mu_bound(n, k)?;
        let doubled = if r.doubled { "yes" } else { "no" };
        writeln!(out, "{k}\t{}\t{doubled}\t{}\t{}", r.weight_used, r.bound, r.roy_count).expect("write to string");
    }
    Ok(out.trim_end().to_string())
}
