//! The full property suite as a library call: every check the test suite
//! runs, re-runnable from the installed binary against a chosen seed.
//!
//! Reports are pure functions of (seed, trials); they carry no timings or
//! environment data, so two runs with the same configuration are
//! byte-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::algebra::{BiLaurent, GroupElem};
use crate::intersection::{
    basis_sphere_lambda, lambda_sum, surgery_pushoff, IntersectionRecord, Sign, SurgeryConfig,
};
use crate::invariants::{gen_random, hand_fixtures, DiskPoint};
use crate::quotient::{
    certify_nf, expand_relation, nf, phi, verify_certificate, window_report, PiElement,
    RelationInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl std::fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "trials: {}", self.trials)?;
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "check {}: {} ({})", c.name, status, c.detail)?;
        }
        writeln!(f, "all_passed: {}", self.all_passed)
    }
}

fn check(name: &str, passed: usize, total: usize, what: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: passed == total,
        detail: format!("{passed}/{total} {what}"),
    }
}

fn relation_soundness() -> CheckResult {
    let mut passed = 0;
    let mut total = 0;
    for n in -64..=64 {
        total += 1;
        passed += usize::from(nf(&expand_relation(RelationInstance::t1(n))).is_zero());
    }
    for n in -32..=32 {
        for m in -32..=32 {
            for inst in [
                RelationInstance::t2(n, m),
                RelationInstance::t3(n, m),
                RelationInstance::t4(n, m),
            ] {
                total += 1;
                passed += usize::from(nf(&expand_relation(inst)).is_zero());
            }
        }
    }
    check(
        "relation_soundness",
        passed,
        total,
        "relations killed by nf",
    )
}

fn parity_symmetry() -> CheckResult {
    // The one bit of freedom in nf must be T2-stable:
    // (n + nm + m) and (-n + (-n)(m-n) + (m-n)) agree mod 2.
    let bit = |n: i64, m: i64| {
        let (np, mp) = (n.rem_euclid(2), m.rem_euclid(2));
        (np + np * mp + mp) % 2
    };
    let mut passed = 0;
    let mut total = 0;
    for n in -32i64..=32 {
        for m in -32i64..=32 {
            total += 1;
            passed += usize::from(bit(n, m) == bit(-n, m - n));
        }
    }
    check(
        "parity_formula_t2_symmetry",
        passed,
        total,
        "exponent pairs consistent",
    )
}

fn nf_phi_agreement() -> CheckResult {
    let mut passed = 0;
    let mut total = 0;
    for n in -16..=16 {
        for m in -16..=16 {
            let p = BiLaurent::monomial(n, m, 1);
            total += 1;
            passed += usize::from(nf(&p) == phi(&p));
        }
    }
    check("nf_phi_agreement", passed, total, "monomials agree")
}

fn certify_sweep() -> CheckResult {
    let mut passed = 0;
    let mut total = 0;
    for n in -8..=8 {
        for m in -8..=8 {
            total += 1;
            let ok = certify_nf(n, m).is_ok_and(|cert| verify_certificate(&cert));
            passed += usize::from(ok);
        }
    }
    check("certify_nf_sweep", passed, total, "certificates verified")
}

fn window_diagnostics() -> CheckResult {
    let mut passed = 0;
    let mut total = 0;
    for n_win in 2..=4 {
        total += 1;
        let ok = window_report(n_win).is_ok_and(|r| r.soundness && r.independence);
        passed += usize::from(ok);
    }
    check(
        "window_diagnostics",
        passed,
        total,
        "windows sound and independent",
    )
}

fn surgery_conservation(seed: u64, trials: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5052_4753);
    let mut passed = 0;
    for _ in 0..trials {
        let len = rng.random_range(0..=6);
        let points: Vec<IntersectionRecord> = (0..len)
            .map(|_| {
                let sign = if rng.random_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                IntersectionRecord::new(sign, rng.random_range(-10..=10))
            })
            .collect();
        let g = rng.random_range(-6..=6);
        let ok = [false, true].into_iter().all(|inverse_dual| {
            let cfg = SurgeryConfig {
                dual_elem: GroupElem(g),
                inverse_dual,
            };
            let out = surgery_pushoff(&points, &cfg);
            let factor = LaurentPoly::from_terms([(0, 1), (cfg.effective_dual().0, -1)]);
            lambda_sum(&out) == factor.mul(&lambda_sum(&points)) && lambda_sum(&out).augment() == 0
        });
        passed += usize::from(ok);
    }
    check(
        "surgery_conservation",
        passed,
        trials,
        "pushoffs conserved, both conventions",
    )
}

fn basis_sphere_divisibility(seed: u64, trials: usize) -> CheckResult {
    let runs = trials.min(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4241_5349);
    let mut passed = 0;
    for i in 0..runs {
        // Trial 0 pins the canonical case q = 1, lambda = (1-s)^2, lk = 1.
        let q = if i == 0 {
            LaurentPoly::one()
        } else {
            let len = rng.random_range(0..=4);
            LaurentPoly::from_terms(
                (0..len).map(|_| (rng.random_range(-6..=6), rng.random_range(-4..=4i64))),
            )
        };
        let ok = basis_sphere_lambda(&q, GroupElem(1)).is_ok_and(|recs| {
            let sq = LaurentPoly::one_minus_s().mul(&LaurentPoly::one_minus_s());
            lambda_sum(&recs) == sq.mul(&q)
                && lambda_sum(&recs).extract_q().ok() == Some((q.clone(), q.augment()))
        });
        passed += usize::from(ok);
    }
    check(
        "basis_sphere_divisibility",
        passed,
        runs,
        "double surgeries recovered q",
    )
}

fn main_lemma(seed: u64, trials: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4c45_4d41);
    let mut passed = 0;
    let mut total = 0;
    for _ in 0..trials {
        total += 1;
        let cert = gen_random(rng.random(), 6, 8, 20);
        let report = cert.theorem_check();
        passed += usize::from(report.theorem_holds && report.valid);
    }
    for cert in hand_fixtures() {
        total += 1;
        passed += usize::from(cert.theorem_check().theorem_holds);
    }
    check(
        "main_lemma",
        passed,
        total,
        "certificates satisfy phi(tau) = (1+t)*omega",
    )
}

fn parity_constraint(seed: u64, trials: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5041_5249);
    let mut passed = 0;
    for _ in 0..trials {
        let mut cert = gen_random(rng.random(), 6, 8, 20);
        let even = cert.tau_raw().augment().rem_euclid(2) == 0
            && cert.validate(false).is_ok_and(|r| r.valid);
        cert.disks[0].points.push(DiskPoint {
            sign: Sign::Plus,
            m: 1,
        });
        let flagged = cert.validate(false).is_ok_and(|r| !r.valid)
            && cert.validate(true).is_err()
            && cert.theorem_check().phi_tau != PiElement::one_plus_t_times(cert.omega_plus());
        passed += usize::from(even && flagged);
    }
    check(
        "parity_constraint",
        passed,
        trials,
        "even populations, odd mutants flagged",
    )
}

fn fixtures_check() -> CheckResult {
    let fixtures = hand_fixtures();
    let total = fixtures.len();
    let passed = fixtures
        .iter()
        .filter(|c| {
            let r = c.theorem_check();
            r.valid && r.theorem_holds && r.tau == r.phi_tau
        })
        .count();
    check(
        "hand_fixtures",
        passed,
        total,
        "fixtures pass the theorem check",
    )
}

/// Runs every check; deterministic for fixed (seed, trials).
pub fn run_selftest(seed: u64, trials: usize) -> SelftestReport {
    let checks = vec![
        relation_soundness(),
        parity_symmetry(),
        nf_phi_agreement(),
        certify_sweep(),
        window_diagnostics(),
        surgery_conservation(seed, trials),
        basis_sphere_divisibility(seed, trials),
        main_lemma(seed, trials),
        parity_constraint(seed, trials),
        fixtures_check(),
    ];
    let all_passed = checks.iter().all(|c| c.passed);
    SelftestReport {
        seed,
        trials,
        checks,
        all_passed,
    }
}
