//! Acceptance gate: every primary verification target runs here, at full
//! scale, printing one pass/fail line each (visible with --nocapture).

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linkmap::{
    basis_sphere_lambda, certify_nf, expand_relation, gen_random, hand_fixtures, lambda_sum, nf,
    surgery_pushoff, verify_certificate, window_report, DiskPoint, GroupElem, IntersectionRecord,
    LaurentPoly, RelationInstance, Sign, SurgeryConfig,
};

fn report(name: &str, ok: bool, detail: &str) {
    let status = if ok { "pass" } else { "FAIL" };
    println!("acceptance {name}: {status} ({detail})");
    assert!(ok, "{name}: {detail}");
}

#[test]
fn criterion_normal_form_certification_sweep() {
    // All 289 targets in [-8,8]^2 certify and verify exactly, under 5s.
    let start = Instant::now();
    let mut verified = 0;
    let mut total = 0;
    for n in -8..=8 {
        for m in -8..=8 {
            total += 1;
            let ok = certify_nf(n, m).is_ok_and(|cert| {
                let bit = ((n.rem_euclid(2) + n.rem_euclid(2) * m.rem_euclid(2) + m.rem_euclid(2))
                    % 2) as u8;
                cert.nf_bit == bit && verify_certificate(&cert)
            });
            verified += usize::from(ok);
        }
    }
    let elapsed = start.elapsed();
    report(
        "normal_form_certification_sweep",
        verified == total && total == 289 && elapsed < Duration::from_secs(5),
        &format!("{verified}/{total} certificates verified in {elapsed:?}"),
    );
}

#[test]
fn criterion_relation_soundness() {
    // nf kills every relation instance: T1 over [-64,64], T2-T4 over [-32,32]^2.
    let mut killed = 0;
    let mut total = 0;
    for n in -64..=64 {
        total += 1;
        killed += usize::from(nf(&expand_relation(RelationInstance::t1(n))).is_zero());
    }
    for n in -32..=32 {
        for m in -32..=32 {
            for inst in [
                RelationInstance::t2(n, m),
                RelationInstance::t3(n, m),
                RelationInstance::t4(n, m),
            ] {
                total += 1;
                killed += usize::from(nf(&expand_relation(inst)).is_zero());
            }
        }
    }
    report(
        "relation_soundness",
        killed == total,
        &format!("{killed}/{total} relation instances map to 0"),
    );
}

#[test]
fn criterion_main_lemma_reproduction() {
    // phi(tau_raw) = (1+t)*omega on 10^4 seeded certificates plus the hand
    // fixtures, under 10s.
    let start = Instant::now();
    let mut held = 0;
    let mut total = 0;
    for seed in 0..10_000u64 {
        total += 1;
        let cert = gen_random(seed, 6, 8, 20);
        let r = cert.theorem_check();
        held += usize::from(r.valid && r.theorem_holds && r.phi_tau == r.tau);
    }
    for cert in hand_fixtures() {
        total += 1;
        held += usize::from(cert.theorem_check().theorem_holds);
    }
    let elapsed = start.elapsed();
    report(
        "main_lemma_reproduction",
        held == total && elapsed < Duration::from_secs(10),
        &format!("{held}/{total} certificates satisfy the identity in {elapsed:?}"),
    );
}

#[test]
fn criterion_parity_constraint() {
    // The same population has even augmentation; odd mutants are flagged
    // invalid and strict mode errors on them.
    let mut ok_count = 0;
    let total = 10_000;
    for seed in 0..total as u64 {
        let cert = gen_random(seed, 6, 8, 20);
        let even = cert.tau_raw().augment().rem_euclid(2) == 0;
        let mut mutant = cert.clone();
        mutant.disks[0].points.push(DiskPoint {
            sign: Sign::Plus,
            m: 0,
        });
        let flagged = mutant
            .validate(false)
            .is_ok_and(|r| !r.valid && !r.parity_ok)
            && mutant.validate(true).is_err();
        ok_count += usize::from(even && flagged);
    }
    report(
        "parity_constraint",
        ok_count == total,
        &format!("{ok_count}/{total} populations even, mutants flagged"),
    );
}

#[test]
fn criterion_surgery_conservation() {
    // lambda(pushoff) = (1-g) lambda(input) for 10^4 random (P, g) under
    // both conventions; every surgered sum has augmentation 0.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut conserved = 0;
    let total = 10_000;
    for _ in 0..total {
        let len = rng.random_range(0..=8);
        let points: Vec<IntersectionRecord> = (0..len)
            .map(|_| {
                let sign = if rng.random_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                IntersectionRecord::new(sign, rng.random_range(-12..=12))
            })
            .collect();
        let g = rng.random_range(-8..=8);
        let ok = [false, true].into_iter().all(|inverse_dual| {
            let cfg = SurgeryConfig {
                dual_elem: GroupElem(g),
                inverse_dual,
            };
            let out = surgery_pushoff(&points, &cfg);
            let factor = LaurentPoly::from_terms([(0, 1), (cfg.effective_dual().0, -1)]);
            lambda_sum(&out) == factor.mul(&lambda_sum(&points)) && lambda_sum(&out).augment() == 0
        });
        conserved += usize::from(ok);
    }
    report(
        "surgery_conservation",
        conserved == total,
        &format!("{conserved}/{total} pushoffs conserved under both conventions"),
    );
}

#[test]
fn criterion_basis_sphere_divisibility() {
    // extract_q inverts basis_sphere_lambda for 10^3 random q, and q = 1
    // gives lambda = (1-s)^2 with lk = 1.
    let one_minus_s_sq = LaurentPoly::one_minus_s().mul(&LaurentPoly::one_minus_s());
    let unit = basis_sphere_lambda(&LaurentPoly::one(), GroupElem(1)).unwrap();
    let unit_ok = lambda_sum(&unit) == one_minus_s_sq
        && lambda_sum(&unit).extract_q().unwrap() == (LaurentPoly::one(), 1);

    let mut rng = ChaCha8Rng::seed_from_u64(0xBA5155);
    let mut recovered = 0;
    let total = 1_000;
    for _ in 0..total {
        let len = rng.random_range(0..=5);
        let q = LaurentPoly::from_terms(
            (0..len).map(|_| (rng.random_range(-8..=8), rng.random_range(-5..=5i64))),
        );
        let ok = basis_sphere_lambda(&q, GroupElem(1))
            .is_ok_and(|recs| lambda_sum(&recs).extract_q().ok() == Some((q.clone(), q.augment())));
        recovered += usize::from(ok);
    }
    report(
        "basis_sphere_divisibility",
        unit_ok && recovered == total,
        &format!("{recovered}/{total} random q recovered, unit case exact"),
    );
}

#[test]
fn criterion_window_diagnostic() {
    // Soundness and independence at N in {2,3,4}; the N=4 Smith normal
    // form completes under 30s.
    let mut all_ok = true;
    let mut details = Vec::new();
    for n_win in 2..=4 {
        let start = Instant::now();
        let r = window_report(n_win).unwrap();
        let elapsed = start.elapsed();
        all_ok &= r.soundness && r.independence;
        if n_win == 4 {
            all_ok &= elapsed < Duration::from_secs(30);
            details.push(format!("N=4 in {elapsed:?}"));
        }
        details.push(format!(
            "N={n_win} sound={} indep={}",
            u8::from(r.soundness),
            u8::from(r.independence)
        ));
    }
    report("window_diagnostic", all_ok, &details.join(", "));
}

#[test]
fn criterion_selftest_determinism() {
    // Two runs of `selftest --seed 42` are byte-identical and pass.
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_linkmap"))
            .args(["selftest", "--seed", "42"])
            .output()
            .expect("selftest runs")
    };
    let a = run();
    let b = run();
    let passed = String::from_utf8_lossy(&a.stdout).contains("all_passed: true");
    let ok =
        a.status.code() == Some(0) && b.status.code() == Some(0) && a.stdout == b.stdout && passed;
    report(
        "selftest_determinism",
        ok,
        &format!("{} output bytes, identical across runs", a.stdout.len()),
    );
}
