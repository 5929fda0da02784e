//! Acceptance criteria 1–10, one PASS/FAIL line each with the elapsed time
//! against the stated limit. Runs without the libtest harness so the report is
//! always printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subdisc_core::covariant::symbolic::symbolic_proportionality;
use subdisc_core::covariant::witness::{is_j_selfadjoint, witness_weight};
use subdisc_core::covariant::{
    compute_tk_in, emit_certificate, gamma_apply, gram_sos_value, highest_weight_witness, kernel_containment,
    partitions, random_symmetric, rank_of_tk_star, sample_ek, torus_weight_check, trace_zero_basis, vanishing_test,
    Verification, WedgeVector,
};
use subdisc_core::exactmath::rational::binomial;
use subdisc_core::exactmath::{int, rat, MultiPoly, Rational};
use subdisc_core::idealcheck::{invariant_sweep, low_exponent_vanishing};
use subdisc_core::repdim::{harmonic_dim_crosscheck, mu_bound, weyl_dim, HighestWeight};
use subdisc_core::subdisc::{classify, homogeneity_check, sdisc_from_roots, sdisc_of_matrix, sdisc_symbolic, RootList};
use subdisc_core::symfun::{delta_nk, SymBasis};
use subdisc_core::Result;

const SEED: u64 = 20_240_601;

type Outcome = Result<std::result::Result<String, String>>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// `c_{n,k}` fixed before the build: the Gram determinant of the trace-adjusted
/// powers equals `det[Tr A^{i+j}]_{i,j<n−k} / n`, i.e. `1/n · sDisc_k`.
fn fixture_constant(n: usize, k: usize) -> Rational {
    let table: [((usize, usize), (i64, i64)); 10] = [
        ((2, 0), (1, 2)),
        ((3, 0), (1, 3)),
        ((3, 1), (1, 3)),
        ((4, 0), (1, 4)),
        ((4, 1), (1, 4)),
        ((4, 2), (1, 4)),
        ((5, 0), (1, 5)),
        ((5, 1), (1, 5)),
        ((5, 2), (1, 5)),
        ((5, 3), (1, 5)),
    ];
    let (_, (p, q)) = table.iter().find(|(key, _)| *key == (n, k)).expect("fixture present");
    rat(*p, *q)
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 2..=6usize {
        let expect = int(n as i64);
        let k = n - 1;
        let roots: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
        let from_roots = sdisc_from_roots(&RootList::from_i64(&roots)?, k)?;
        let power_sum = sdisc_symbolic(n, k, SymBasis::PowerSum)?;
        let elementary = sdisc_symbolic(n, k, SymBasis::Elementary)?;
        let monomial = delta_nk(n, k)?;
        let from_matrix = sdisc_of_matrix(&random_symmetric(n, &mut rng, 9), k)?;
        let constant = |p: &MultiPoly| p.as_constant() == Some(expect.clone());
        if let Err(e) = ensure(
            from_roots == expect
                && from_matrix == expect
                && constant(&power_sum.poly)
                && constant(&elementary.poly)
                && constant(&monomial),
            || format!("n = {n}: roots {from_roots}, matrix {from_matrix}"),
        ) {
            return Ok(Err(e));
        }
    }
    Ok(Ok("sDisc_{n-1} = n for n = 2..6 from roots, symbolic tables (p, e, x) and matrices".into()))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for trial in 0..100 {
        let n = rng.gen_range(2..=5usize);
        let k = rng.gen_range(0..n);
        let a = random_symmetric(n, &mut rng, 6);
        let t = Rational::new(
            BigInt::from(rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 }),
            BigInt::from(rng.gen_range(1..=7i64)),
        );
        if !homogeneity_check(&a, k, &t)? {
            return Ok(Err(format!("triple {trial}: n = {n}, k = {k}, t = {t}")));
        }
    }
    Ok(Ok("100 seeded (A, t, k) triples, n <= 5".into()))
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for n in 2..=5usize {
        for part in partitions(n) {
            for seed in 0..5u64 {
                let a = sample_ek(n, &part, SEED ^ (seed * 1009 + n as u64 * 31 + part.len() as u64))?;
                let distinct = classify(&a)?.distinct;
                if distinct != part.len() {
                    return Ok(Err(format!("partition {part:?}: classify gave {distinct}")));
                }
                for k in 0..=n - 2 {
                    if vanishing_test(&a, k)? != (part.len() <= n - k - 1) {
                        return Ok(Err(format!("partition {part:?}, k = {k}: vanishing test disagrees")));
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(Ok(format!("{cases} sampled matrices over all partitions of n = 2..5")))
}

/// Gram determinant at `diag(0, 1, 2)` computed by hand-rolled arithmetic,
/// divided by `sDisc_0 = 4`.
fn brute_force_three_zero() -> Rational {
    let d = [int(0), int(1), int(2)];
    let mean = |v: &[Rational]| v.iter().cloned().sum::<Rational>() / int(3);
    let p1: Vec<Rational> = d.to_vec();
    let p2: Vec<Rational> = d.iter().map(|x| x * x).collect();
    let b1: Vec<Rational> = p1.iter().map(|x| x - mean(&p1)).collect();
    let b2: Vec<Rational> = p2.iter().map(|x| x - mean(&p2)).collect();
    let dot = |u: &[Rational], v: &[Rational]| u.iter().zip(v).map(|(a, b)| a * b).sum::<Rational>();
    let gram = dot(&b1, &b1) * dot(&b2, &b2) - dot(&b1, &b2) * dot(&b1, &b2);
    gram / int(4)
}

fn criterion_4() -> Outcome {
    if brute_force_three_zero() != fixture_constant(3, 0) {
        return Ok(Err("brute-force oracle at diag(0,1,2) disagrees with the fixture".into()));
    }
    if fixture_constant(2, 0) != rat(1, 2) || fixture_constant(3, 1) != rat(1, 3) {
        return Ok(Err("hand-derived constants".into()));
    }
    for n in 2..=4usize {
        for k in 0..=n - 2 {
            let c = symbolic_proportionality(n, k)?;
            if c != fixture_constant(n, k) {
                return Ok(Err(format!("symbolic c_{{{n},{k}}} = {c}")));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for k in 0..=3usize {
        for _ in 0..50 {
            let a = random_symmetric(5, &mut rng, 5);
            let lhs = gram_sos_value(&a, k)?;
            let rhs = fixture_constant(5, k) * sdisc_of_matrix(&a, k)?;
            if lhs != rhs {
                return Ok(Err(format!("n = 5, k = {k}: {lhs} vs {rhs}")));
            }
        }
    }
    Ok(Ok("symbolic identity for all (n,k), n <= 4; 50 exact samples per k for n = 5; c = 1/n".into()))
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for n in 2..=5usize {
        for k in 0..=n - 2 {
            let cert = emit_certificate(n, k)?;
            let dim_n = n * (n + 1) / 2 - 1;
            let expected = binomial(dim_n as u64, (n - k - 1) as u64);
            if cert.terms.len() as u128 != expected {
                return Ok(Err(format!("({n},{k}): {} terms, expected {expected}", cert.terms.len())));
            }
            let degree = ((n - k) * (n - k - 1) / 2) as u32;
            if !cert.terms.iter().all(|t| t.poly.numerator().is_homogeneous_of(degree) && t.weight.is_positive()) {
                return Ok(Err(format!("({n},{k}): a term is not homogeneous of degree {degree}")));
            }
            if (n, k) == (4, 1) && cert.terms.len() != 36 {
                return Ok(Err("(4,1) must have 36 terms".into()));
            }
            let how = cert.verify(SEED)?;
            if how != Verification::Symbolic {
                cert.verify_sampled(2, SEED)?;
            }
            let tag = match how {
                Verification::Symbolic => "sym",
                Verification::Modular { .. } => "mod+exact",
                Verification::Sampled { .. } => "exact",
            };
            summary.push(format!("({n},{k}):{}:{tag}", cert.terms.len()));
        }
    }
    Ok(Ok(summary.join(" ")))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut checked = 0;
    for n in 3..=6usize {
        let basis = trace_zero_basis(n)?;
        // s = n − k − 1 = 1 has nothing to commute
        for k in 0..n - 2 {
            for _ in 0..20 {
                let a = random_symmetric(n, &mut rng, 4);
                let w = compute_tk_in(&a, k, &basis)?;
                if !gamma_apply(&w, &basis)?.is_empty() {
                    return Ok(Err(format!("γ(T_{k}(A)) ≠ 0 for n = {n}")));
                }
                checked += 1;
            }
        }
    }
    let basis = trace_zero_basis(3)?;
    let control = gamma_apply(&WedgeVector::basis_element(&[0, 1], basis.dim()), &basis)?;
    if control.is_empty() {
        return Ok(Err("negative control (E12+E21) ∧ (E13+E31) was annihilated".into()));
    }
    Ok(Ok(format!("{checked} covariants annihilated; negative control has {} terms", control.len())))
}

fn criterion_7() -> Outcome {
    let rank = rank_of_tk_star(4, 1)?;
    let r = kernel_containment(4, 1)?;
    let ok = rank == 30 && r.rank_tk_star == 30 && r.kernel_dim == 6 && r.contained && r.domain_dim == 36;
    let detail = format!(
        "rank T_1* = {rank}, kernel dim {}, γ* image dim {}, stacked rank {}",
        r.kernel_dim, r.gamma_image_dim, r.stacked_rank
    );
    Ok(if ok { Ok(detail) } else { Err(detail) })
}

/// `∏_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩` in doubled coordinates.
fn root_system_dim(n: usize, lambda: &[i64]) -> Rational {
    let l = n / 2;
    let rho2: Vec<i64> =
        (0..l).map(|i| if n % 2 == 0 { 2 * (l - 1 - i) as i64 } else { (2 * (l - i) - 1) as i64 }).collect();
    let lr2: Vec<i64> = (0..l).map(|i| 2 * lambda[i] + rho2[i]).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..l {
        for j in i + 1..l {
            num *= (lr2[i] - lr2[j]) * (lr2[i] + lr2[j]);
            den *= (rho2[i] - rho2[j]) * (rho2[i] + rho2[j]);
        }
        if n % 2 == 1 {
            num *= lr2[i];
            den *= rho2[i];
        }
    }
    Rational::new(num, den)
}

fn criterion_8() -> Outcome {
    let hw = |n: usize, v: &[i64]| HighestWeight::new(n, v.to_vec());
    let dim = |n: usize, v: &[i64]| -> Result<BigInt> { Ok(weyl_dim(&hw(n, v)?)) };
    if dim(4, &[3, 1])? != BigInt::from(15) || dim(4, &[1, 1])? != BigInt::from(3) {
        return Ok(Err("SO_4 examples".into()));
    }
    for m in 0..20i64 {
        if dim(3, &[m])? != BigInt::from(2 * m + 1) {
            return Ok(Err(format!("SO_3 ({m})")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    for _ in 0..200 {
        let n = rng.gen_range(3..=10usize);
        let l = n / 2;
        let mut v: Vec<i64> = (0..l).map(|_| rng.gen_range(0..=8)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        if n % 2 == 0 && rng.gen_bool(0.5) {
            v[l - 1] = -v[l - 1];
        }
        let d = dim(n, &v)?;
        if !d.is_positive() || Rational::from_integer(d.clone()) != root_system_dim(n, &v) {
            return Ok(Err(format!("SO_{n} {v:?}: {d}")));
        }
    }
    let r = mu_bound(4, 1)?;
    let s = mu_bound(4, 2)?;
    if (r.bound.clone(), r.roy_count.clone()) != (15.into(), 120.into())
        || (s.bound.clone(), s.roy_count.clone()) != (9.into(), 45.into())
    {
        return Ok(Err(format!("mu_bound(4,1) = {:?}, mu_bound(4,2) = {:?}", r, s)));
    }
    for n in 3..=6 {
        if !harmonic_dim_crosscheck(n)? {
            return Ok(Err(format!("harmonic crosscheck n = {n}")));
        }
    }
    for n in 2..=8usize {
        for k in 0..=n - 2 {
            let b = mu_bound(n, k)?;
            if b.bound > b.roy_count {
                return Ok(Err(format!("bound above roy count at n = {n}, k = {k}")));
            }
        }
    }
    Ok(Ok("SO_4/SO_3 values, 200 random weights n <= 10, bounds (15,120) and (9,45), sweep n <= 8".into()))
}

fn criterion_9() -> Outcome {
    let mut summary = Vec::new();
    for (n, k) in [(2, 0), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 3)] {
        let sweep = invariant_sweep(n, k)?;
        let (top, lower) = sweep.split_last().expect("nonempty degree range");
        let low_degree = (n - k) * (n - k - 1) / 2;
        if sweep[0].degree != low_degree || top.degree != (n - k) * (n - k - 1) {
            return Ok(Err(format!("({n},{k}): degree range")));
        }
        if !lower.iter().all(|r| r.invariant_rank == 0) || top.invariant_rank != 1 || !top.spans_delta {
            let ranks: Vec<usize> = sweep.iter().map(|r| r.invariant_rank).collect();
            return Ok(Err(format!("({n},{k}): ranks {ranks:?}, spans Δ: {}", top.spans_delta)));
        }
        // tail exponents up to binom(n−k, 2) reach every α with x^α·δ inside the degree range
        let low = low_exponent_vanishing(n, k, low_degree as u32)?;
        if !low.failures.is_empty() {
            return Ok(Err(format!("({n},{k}): τ(x^α δ) ≠ 0 for {:?}", low.failures)));
        }
        summary.push(format!("({n},{k}):{}", low.checked));
    }
    Ok(Ok(format!("ranks 0…0,1 spanning Δ; low-exponent checks {}", summary.join(" "))))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut cases = 0;
    for n in 2..=7usize {
        let l = n / 2;
        for k in 0..=n - 2 {
            let w = highest_weight_witness(n, k)?;
            let s = n - k - 1;
            let mut expect = vec![0i64; l];
            expect[0] = s as i64 + 1;
            let ones = if s <= l { s - 1 } else { n - s - 1 };
            expect[1..=ones].iter_mut().for_each(|x| *x = 1);
            let ok = is_j_selfadjoint(&w.cyclic, &w.form)
                && w.cyclic.trace().is_zero()
                && (w.pairing == Rational::one() || w.pairing == -Rational::one())
                && w.weight == expect
                && witness_weight(n, s) == expect;
            if !ok {
                return Ok(Err(format!("({n},{k}): pairing {}, weight {:?}", w.pairing, w.weight)));
            }
            for trial in 0..5u64 {
                let t: Vec<Rational> = (0..l)
                    .map(|_| {
                        let p = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                        Rational::new(p.into(), rng.gen_range(1..=6i64).into())
                    })
                    .collect();
                if !torus_weight_check(n, s, &t, SEED + trial)? {
                    return Ok(Err(format!("({n},{k}): torus check failed at {t:?}")));
                }
            }
            cases += 1;
        }
    }
    Ok(Ok(format!("{cases} cases, n <= 7, pairing ±1, 5 torus elements each")))
}

fn main() {
    let criteria: [(usize, &str, Duration, fn() -> Outcome); 10] = [
        (1, "constant subdiscriminant", Duration::from_secs(1), criterion_1),
        (2, "homogeneity", Duration::from_secs(10), criterion_2),
        (3, "classification and covariant vanishing", Duration::from_secs(60), criterion_3),
        (4, "Gram proportionality", Duration::from_secs(300), criterion_4),
        (5, "sum-of-squares certificates", Duration::from_secs(300), criterion_5),
        (6, "γ annihilates T_k", Duration::from_secs(60), criterion_6),
        (7, "rank of T_1* and kernel containment", Duration::from_secs(60), criterion_7),
        (8, "representation numbers", Duration::from_secs(10), criterion_8),
        (9, "invariants of the vanishing ideal", Duration::from_secs(600), criterion_9),
        (10, "highest-weight witness", Duration::from_secs(60), criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(Ok(d)) if elapsed <= limit => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; exceeded the time limit")),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        let status = if pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {id:>2} ({name}) [{:.2?} / {:?}]: {detail}", elapsed, limit);
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
