//! The `verify` command: batches of exact checks reported one line each as
//! `PASS|FAIL <suite> n=<n> k=<k> <detail>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use subdisc_core::covariant::witness::witness_weight;
use subdisc_core::covariant::{
    compute_tk_in, emit_certificate, gamma_apply, highest_weight_witness, kernel_containment, partitions,
    proportionality_constant, random_symmetric, sample_ek, torus_weight_check, trace_zero_basis, vanishing_test,
    GammaImage, WedgeVector,
};
use subdisc_core::exactmath::{format_rational, Rational};
use subdisc_core::idealcheck::{generator_degree, invariant_sweep, low_exponent_vanishing, staircase_multiple, MAX_IDEAL_N};
use subdisc_core::subdisc::classify;
use subdisc_core::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Lemma,
    Covariant,
    Witness,
    Gamma,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::Covariant => "covariant",
            Suite::Witness => "witness",
            Suite::Gamma => "gamma",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub suite: &'static str,
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for CheckLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} n={} k={} {}", self.suite, self.n, self.k, self.detail)
    }
}

/// Largest `n` each suite visits; the caps keep a run at desk scale.
pub const LEMMA_MAX_N: usize = MAX_IDEAL_N;
pub const COVARIANT_MAX_N: usize = 5;
pub const GAMMA_MAX_N: usize = 6;
pub const WITNESS_MAX_N: usize = 12;

/// Lemma checks cover the pairs whose top degree `(n−k)(n−k−1)` is at most this.
pub const LEMMA_MAX_DEGREE: usize = 6;

type Check = Box<dyn Fn() -> Result<(bool, String)> + Send + Sync>;

fn line(suite: &'static str, n: usize, k: usize, check: &Check) -> CheckLine {
    let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckLine { suite, n, k, pass, detail }
}

fn pairs(min_n: usize, max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (min_n.max(2)..=max_n).flat_map(|n| (0..=n - 2).map(move |k| (n, k)))
}

fn lemma_checks(max_n: usize) -> Vec<(usize, usize, Check)> {
    pairs(2, max_n.min(LEMMA_MAX_N))
        .filter(|&(n, k)| (n - k) * (n - k - 1) <= LEMMA_MAX_DEGREE)
        .map(|(n, k)| {
            let check: Check = Box::new(move || {
                let sweep = invariant_sweep(n, k)?;
                let (top, lower) = sweep.split_last().expect("nonempty degree range");
                let ranks: Vec<String> = sweep.iter().map(|r| r.invariant_rank.to_string()).collect();
                let low = low_exponent_vanishing(n, k, generator_degree(n, k) as u32)?;
                let staircase = staircase_multiple(n, k)?;
                let pass = lower.iter().all(|r| r.invariant_rank == 0)
                    && top.invariant_rank == 1
                    && top.spans_delta
                    && low.failures.is_empty()
                    && staircase.is_some();
                Ok((
                    pass,
                    format!(
                        "ranks=[{}] spans_delta={} low_exponents={}/{} staircase={}",
                        ranks.join(","),
                        top.spans_delta,
                        low.checked - low.failures.len(),
                        low.checked,
                        staircase.map_or("none".into(), |r| format_rational(&r))
                    ),
                ))
            });
            (n, k, check)
        })
        .collect()
}

fn covariant_checks(max_n: usize, seed: u64) -> Vec<(usize, usize, Check)> {
    pairs(2, max_n.min(COVARIANT_MAX_N))
        .map(|(n, k)| {
            let check: Check = Box::new(move || {
                let c = proportionality_constant(n, k)?;
                let expect = Rational::new(1.into(), (n as i64).into());
                let mut agree = true;
                for part in partitions(n) {
                    let a = sample_ek(n, &part, seed ^ (n * 31 + part.len()) as u64)?;
                    agree &= classify(&a)?.distinct == part.len();
                    agree &= vanishing_test(&a, k)? == (part.len() < n - k);
                }
                let cert = emit_certificate(n, k)?;
                let shape = cert.check_shape().is_ok();
                let verified = cert.verify(seed)?;
                Ok((
                    c == expect && agree && shape,
                    format!(
                        "c={} classify_vanishing_agree={agree} terms={} verified={verified:?}",
                        format_rational(&c),
                        cert.terms.len()
                    ),
                ))
            });
            (n, k, check)
        })
        .collect()
}

fn witness_checks(max_n: usize, seed: u64) -> Vec<(usize, usize, Check)> {
    pairs(2, max_n.min(WITNESS_MAX_N))
        .map(|(n, k)| {
            let check: Check = Box::new(move || {
                let w = highest_weight_witness(n, k)?;
                let s = n - k - 1;
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n * 100 + k) as u64);
                let mut torus_ok = true;
                for trial in 0..2 {
                    let t: Vec<Rational> = (0..n / 2)
                        .map(|_| {
                            let p: i64 = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
                            Rational::new(p.into(), rng.gen_range(1i64..=5).into())
                        })
                        .collect();
                    torus_ok &= torus_weight_check(n, s, &t, seed + trial)?;
                }
                let weight: Vec<String> = w.weight.iter().map(i64::to_string).collect();
                Ok((
                    w.weight == witness_weight(n, s) && torus_ok,
                    format!("pairing={} weight=({}) torus={torus_ok}", format_rational(&w.pairing), weight.join(",")),
                ))
            });
            (n, k, check)
        })
        .collect()
}

fn gamma_checks(max_n: usize, seed: u64) -> Vec<(usize, usize, Check)> {
    let mut checks: Vec<(usize, usize, Check)> = pairs(3, max_n.min(GAMMA_MAX_N))
        .filter(|&(n, k)| n - k - 1 >= 2)
        .map(|(n, k)| {
            let check: Check = Box::new(move || {
                let basis = trace_zero_basis(n)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n * 100 + k) as u64);
                let mut killed = 0;
                for _ in 0..5 {
                    let w = compute_tk_in(&random_symmetric(n, &mut rng, 3), k, &basis)?;
                    if gamma_apply(&w, &basis)?.is_empty() {
                        killed += 1;
                    }
                }
                let mut detail = format!("gamma_kills_tk={killed}/5");
                let mut pass = killed == 5;
                if n <= 4 {
                    let r = kernel_containment(n, k)?;
                    pass &= r.contained;
                    detail += &format!(
                        " rank_tk_star={} kernel_dim={} gamma_image_dim={} contained={}",
                        r.rank_tk_star, r.kernel_dim, r.gamma_image_dim, r.contained
                    );
                }
                Ok((pass, detail))
            });
            (n, k, check)
        })
        .collect();
    if max_n >= 3 {
        let control: Check = Box::new(|| {
            let basis = trace_zero_basis(3)?;
            let image: GammaImage = gamma_apply(&WedgeVector::basis_element(&[0, 1], basis.dim()), &basis)?;
            Ok((!image.is_empty(), format!("negative_control_terms={}", image.len())))
        });
        checks.push((3, 1, control));
    }
    checks
}

/// Runs the selected suites; checks execute in parallel and come back in a
/// fixed order.
pub fn run_suite(suite: Suite, max_n: usize, seed: u64) -> Vec<CheckLine> {
    let selected = match suite {
        Suite::All => vec![Suite::Lemma, Suite::Covariant, Suite::Witness, Suite::Gamma],
        s => vec![s],
    };
    let mut jobs: Vec<(&'static str, usize, usize, Check)> = Vec::new();
    for s in selected {
        let checks = match s {
            Suite::Lemma => lemma_checks(max_n),
            Suite::Covariant => covariant_checks(max_n, seed),
            Suite::Witness => witness_checks(max_n, seed),
            Suite::Gamma => gamma_checks(max_n, seed),
            Suite::All => unreachable!(),
        };
        jobs.extend(checks.into_iter().map(|(n, k, c)| (s.name(), n, k, c)));
    }
    jobs.par_iter().map(|(suite, n, k, check)| line(suite, *n, *k, check)).collect()
}
