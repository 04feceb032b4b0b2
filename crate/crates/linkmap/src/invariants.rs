//! Good-link-map certificates and the invariants computed from them.
//!
//! A certificate lists, for each Whitney disk, the primary multiplicity `n`
//! and the signed interior intersection points with their secondary
//! multiplicities `m`. From this data the crate evaluates
//!
//! * `omega`: the XOR over all points of the bit `(n + n*m + m) mod 2`,
//! * `tau_raw`: the signed monomial sum `sum sign(x) * s^n t^m`, and
//! * `tau`: its class in Pi(X-, f+),
//!
//! and checks the identity `phi(tau_raw) = (1 + t) * omega` certificate by
//! certificate. Only the algebraic shadow of the geometry is stored;
//! realizability as an actual link map is not checked beyond the parity
//! constraint, and `sigma_plus_zero` is an asserted input assumption, never
//! computed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::BiLaurent;
use crate::intersection::Sign;
use crate::quotient::{nf, phi, PiElement};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("unreadable certificate: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed certificate: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid certificate {label:?}: {reason}")]
    Invalid { label: String, reason: String },
}

/// One interior intersection point of the plus sphere with a Whitney disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskPoint {
    pub sign: Sign,
    /// Secondary multiplicity: the point's group element is s^m.
    pub m: i64,
}

/// One Whitney disk: its primary multiplicity and interior intersections.
/// Only the plus-side multiplicity is stored; the minus side is determined
/// as its negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhitneyDiskRecord {
    pub n: i64,
    pub points: Vec<DiskPoint>,
}

/// The combinatorial certificate of a good link map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkMapCertificate {
    #[serde(default)]
    pub label: String,
    /// Asserted vanishing of the primary obstruction; the invariants are
    /// only defined under it.
    pub sigma_plus_zero: bool,
    pub disks: Vec<WhitneyDiskRecord>,
}

/// What `validate` found. The parity bit is the augmentation of tau_raw
/// mod 2, which equals the total point count mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub total_points: usize,
    pub parity_ok: bool,
    pub sigma_plus_zero: bool,
    pub valid: bool,
}

/// Everything the theorem check produces for one certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub label: String,
    pub valid: bool,
    pub omega: u8,
    pub tau_raw: BiLaurent,
    pub tau: PiElement,
    pub phi_tau: PiElement,
    pub theorem_holds: bool,
}

impl LinkMapCertificate {
    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self, CertificateError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn total_points(&self) -> usize {
        self.disks.iter().map(|d| d.points.len()).sum()
    }

    /// Checks the certificate against the constraints a genuine link map
    /// must satisfy: an even number of interior intersections (the image of
    /// tau in Pi(S^4, f+) = Z2 must vanish) and the asserted sigma bit. In
    /// strict mode an invalid certificate is an error; otherwise the report
    /// is returned and downstream computation may proceed on the
    /// (geometrically unrealizable) data.
    pub fn validate(&self, strict: bool) -> Result<ValidityReport, CertificateError> {
        let total_points = self.total_points();
        let parity_ok = self.tau_raw().augment().rem_euclid(2) == 0;
        debug_assert_eq!(parity_ok, total_points.is_multiple_of(2));
        let report = ValidityReport {
            total_points,
            parity_ok,
            sigma_plus_zero: self.sigma_plus_zero,
            valid: parity_ok && self.sigma_plus_zero,
        };
        if strict && !report.valid {
            let reason = if !parity_ok {
                format!("odd intersection count {total_points}")
            } else {
                "sigma_plus_zero not asserted".to_string()
            };
            return Err(CertificateError::Invalid {
                label: self.label.clone(),
                reason,
            });
        }
        Ok(report)
    }

    /// omega: the XOR over all disks i and points x of the bit
    /// `(n_i + n_i*m_x + m_x) mod 2`, parities taken before the product.
    pub fn omega_plus(&self) -> u8 {
        let mut acc = 0u8;
        for disk in &self.disks {
            let np = disk.n.rem_euclid(2);
            for p in &disk.points {
                let mp = p.m.rem_euclid(2);
                acc ^= ((np + np * mp + mp) % 2) as u8;
            }
        }
        acc
    }

    /// The raw integral invariant: `sum sign(x) * s^n t^m` over all points.
    pub fn tau_raw(&self) -> BiLaurent {
        let mut p = BiLaurent::zero();
        for disk in &self.disks {
            for pt in &disk.points {
                p.add_term(disk.n, pt.m, pt.sign.as_i64());
            }
        }
        p
    }

    /// tau in the quotient: the normal form of tau_raw.
    pub fn tau(&self) -> PiElement {
        nf(&self.tau_raw())
    }

    /// Evaluates both sides of the identity `phi(tau_raw) = (1 + t) * omega`
    /// and reports whether they agree. On a valid certificate a mismatch
    /// would signal an implementation bug, not a mathematical discovery.
    pub fn theorem_check(&self) -> InvariantReport {
        let omega = self.omega_plus();
        let tau_raw = self.tau_raw();
        let tau = nf(&tau_raw);
        let phi_tau = phi(&tau_raw);
        let theorem_holds = phi_tau == PiElement::one_plus_t_times(omega);
        InvariantReport {
            label: self.label.clone(),
            valid: self
                .validate(false)
                .expect("non-strict validate cannot fail")
                .valid,
            omega,
            tau_raw,
            tau,
            phi_tau,
            theorem_holds,
        }
    }
}

/// Deterministic seeded certificate generator for property runs. The point
/// total is trimmed to even so the result is always valid; exponents are
/// uniform in `[-exp_range, exp_range]`.
pub fn gen_random(
    seed: u64,
    max_disks: usize,
    max_points_per_disk: usize,
    exp_range: i64,
) -> LinkMapCertificate {
    assert!(max_disks >= 1, "max_disks must be positive");
    assert!(
        max_points_per_disk >= 1,
        "max_points_per_disk must be positive"
    );
    assert!(exp_range >= 1, "exp_range must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disks = Vec::new();
    for _ in 0..rng.random_range(1..=max_disks) {
        let n = rng.random_range(-exp_range..=exp_range);
        let mut points = Vec::new();
        for _ in 0..rng.random_range(0..=max_points_per_disk) {
            points.push(DiskPoint {
                sign: if rng.random_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                },
                m: rng.random_range(-exp_range..=exp_range),
            });
        }
        disks.push(WhitneyDiskRecord { n, points });
    }
    let total: usize = disks.iter().map(|d| d.points.len()).sum();
    if total % 2 == 1 {
        let disk = disks
            .iter_mut()
            .rev()
            .find(|d| !d.points.is_empty())
            .expect("odd total implies a nonempty disk");
        disk.points.pop();
    }
    LinkMapCertificate {
        label: format!("seed-{seed}"),
        sigma_plus_zero: true,
        disks,
    }
}

/// Small worked certificates with hand-computed invariants; used by the
/// examples, the self test, and the acceptance suite.
pub fn hand_fixtures() -> Vec<LinkMapCertificate> {
    let disk = |n: i64, pts: &[(i64, i64)]| WhitneyDiskRecord {
        n,
        points: pts
            .iter()
            .map(|&(sgn, m)| DiskPoint {
                sign: Sign::from_i64(sgn).expect("fixture sign"),
                m,
            })
            .collect(),
    };
    vec![
        LinkMapCertificate {
            label: "empty".into(),
            sigma_plus_zero: true,
            disks: vec![],
        },
        // tau_raw = t + 1, omega = 1: the nontrivial class.
        LinkMapCertificate {
            label: "omega-one".into(),
            sigma_plus_zero: true,
            disks: vec![disk(0, &[(1, 1), (1, 0)])],
        },
        // tau_raw = s^2 t^3 - s^2 t^5, both bits odd, omega = 0.
        LinkMapCertificate {
            label: "omega-zero".into(),
            sigma_plus_zero: true,
            disks: vec![disk(2, &[(1, 3), (-1, 5)])],
        },
        // A canceling pair on one disk: tau_raw = 0 on the nose.
        LinkMapCertificate {
            label: "canceling-pair".into(),
            sigma_plus_zero: true,
            disks: vec![disk(1, &[(1, 0), (-1, 0)])],
        },
        LinkMapCertificate {
            label: "two-disks".into(),
            sigma_plus_zero: true,
            disks: vec![
                disk(1, &[(1, 0), (-1, 2)]),
                disk(-3, &[(1, 1), (1, 1), (-1, 0), (1, 4)]),
            ],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bl(s: &str) -> BiLaurent {
        s.parse().unwrap()
    }

    fn fixture(label: &str) -> LinkMapCertificate {
        hand_fixtures()
            .into_iter()
            .find(|c| c.label == label)
            .unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(fixture("empty").omega_plus(), 0);
        // J bits: 0+0+1 = 1 and 0+0+0 = 0.
        assert_eq!(fixture("omega-one").omega_plus(), 1);
        // J bits: 2+6+3 = 11 and 2+10+5 = 17, both odd.
        assert_eq!(fixture("omega-zero").omega_plus(), 0);
    }

    #[test]
    fn tau_examples() {
        assert!(fixture("empty").tau_raw().is_zero());
        assert_eq!(fixture("empty").tau(), PiElement::ZERO);
        assert_eq!(fixture("omega-one").tau_raw(), bl("s^0*t^0 + s^0*t^1"));
        assert_eq!(fixture("omega-one").tau(), PiElement::ONE_PLUS_T);
        assert_eq!(fixture("omega-zero").tau_raw(), bl("s^2*t^3 - s^2*t^5"));
        assert_eq!(fixture("omega-zero").tau(), PiElement::ZERO);
        assert!(fixture("canceling-pair").tau_raw().is_zero());
    }

    #[test]
    fn theorem_on_fixtures() {
        for cert in hand_fixtures() {
            let report = cert.theorem_check();
            assert!(report.valid, "{} should be valid", cert.label);
            assert!(report.theorem_holds, "theorem failed on {}", cert.label);
            assert_eq!(report.tau, report.phi_tau);
        }
        let two = fixture("two-disks").theorem_check();
        assert_eq!(two.omega, 0);
        assert_eq!(two.tau, PiElement::ZERO);
    }

    #[test]
    fn validate_parity() {
        let odd = LinkMapCertificate {
            label: "odd".into(),
            sigma_plus_zero: true,
            disks: vec![WhitneyDiskRecord {
                n: 0,
                points: vec![DiskPoint {
                    sign: Sign::Plus,
                    m: 0,
                }],
            }],
        };
        let report = odd.validate(false).unwrap();
        assert!(!report.valid);
        assert!(!report.parity_ok);
        assert!(matches!(
            odd.validate(true),
            Err(CertificateError::Invalid { .. })
        ));

        let unsigned_sigma = LinkMapCertificate {
            sigma_plus_zero: false,
            ..fixture("empty")
        };
        assert!(!unsigned_sigma.validate(false).unwrap().valid);
        assert!(unsigned_sigma.validate(true).is_err());

        assert!(fixture("omega-one").validate(true).is_ok());
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let text = r#"{"label":"demo","sigma_plus_zero":true,"disks":[{"n":2,"points":[{"sign":1,"m":3},{"sign":-1,"m":5}]}]}"#;
        let cert = LinkMapCertificate::from_json(text).unwrap();
        assert_eq!(cert, fixture("omega-zero").clone_with_label("demo"));
        let back: LinkMapCertificate =
            serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        assert_eq!(back, cert);

        for bad in [
            // Unknown field.
            r#"{"label":"x","sigma_plus_zero":true,"disks":[],"extra":1}"#,
            // Sign outside {1,-1}.
            r#"{"label":"x","sigma_plus_zero":true,"disks":[{"n":0,"points":[{"sign":2,"m":0}]}]}"#,
            // Float where an integer is required.
            r#"{"label":"x","sigma_plus_zero":true,"disks":[{"n":0,"points":[{"sign":1,"m":1.5}]}]}"#,
            r#"{"label":"x","sigma_plus_zero":true,"disks":[{"n":1.0,"points":[]}]}"#,
            // Not JSON at all.
            "certificate?",
        ] {
            assert!(
                matches!(
                    LinkMapCertificate::from_json(bad),
                    Err(CertificateError::Parse(_))
                ),
                "accepted: {bad}"
            );
        }
    }

    #[test]
    fn gen_random_is_deterministic_and_valid() {
        for seed in 0..50 {
            let a = gen_random(seed, 6, 8, 20);
            let b = gen_random(seed, 6, 8, 20);
            assert_eq!(a, b);
            assert!(a.validate(false).unwrap().valid);
            assert_eq!(a.label, format!("seed-{seed}"));
        }
        assert_ne!(gen_random(1, 6, 8, 20), gen_random(2, 6, 8, 20));
    }

    #[test]
    fn theorem_on_seeded_population() {
        for seed in 0..500 {
            let cert = gen_random(seed, 6, 8, 20);
            let report = cert.theorem_check();
            assert!(report.theorem_holds, "theorem failed on seed {seed}");
            assert_eq!(report.tau_raw.augment().rem_euclid(2), 0);
        }
    }

    proptest! {
        #[test]
        fn relabeling_invariance(seed in 0u64..5000, swap in any::<bool>()) {
            let cert = gen_random(seed, 4, 5, 12);
            let mut shuffled = cert.clone();
            shuffled.disks.reverse();
            if swap {
                for d in &mut shuffled.disks {
                    d.points.reverse();
                }
            }
            prop_assert_eq!(shuffled.omega_plus(), cert.omega_plus());
            prop_assert_eq!(shuffled.tau_raw(), cert.tau_raw());
            prop_assert_eq!(shuffled.tau(), cert.tau());
        }

        #[test]
        fn orientation_convention_invariance(seed in 0u64..5000) {
            // Negating every n, or every m, preserves the parity bits.
            let cert = gen_random(seed, 4, 5, 12);
            let mut neg_n = cert.clone();
            for d in &mut neg_n.disks {
                d.n = -d.n;
            }
            let mut neg_m = cert.clone();
            for d in &mut neg_m.disks {
                for p in &mut d.points {
                    p.m = -p.m;
                }
            }
            prop_assert_eq!(neg_n.omega_plus(), cert.omega_plus());
            prop_assert_eq!(neg_m.omega_plus(), cert.omega_plus());
            prop_assert_eq!(neg_n.tau(), cert.tau());
            prop_assert_eq!(neg_m.tau(), cert.tau());
        }

        #[test]
        fn disk_split_neutrality(seed in 0u64..5000) {
            // Splitting a disk's points across two disks with the same n
            // changes nothing.
            let cert = gen_random(seed, 3, 6, 12);
            let mut split = cert.clone();
            let first = &mut split.disks[0];
            let half = first.points.len() / 2;
            let tail = first.points.split_off(half);
            let n = first.n;
            split.disks.push(WhitneyDiskRecord { n, points: tail });
            prop_assert_eq!(split.omega_plus(), cert.omega_plus());
            prop_assert_eq!(split.tau_raw(), cert.tau_raw());
        }

        #[test]
        fn mutated_odd_certificates_flagged(seed in 0u64..2000) {
            let mut cert = gen_random(seed, 6, 8, 20);
            cert.disks[0].points.push(DiskPoint { sign: Sign::Plus, m: 1 });
            let report = cert.validate(false).unwrap();
            prop_assert!(!report.valid);
            prop_assert!(cert.validate(true).is_err());
            // The theorem identity cannot hold on odd data: phi(tau_raw)
            // has odd bit-sum while (1+t)*omega has even bit-sum.
            prop_assert!(!cert.theorem_check().theorem_holds);
        }
    }

    impl LinkMapCertificate {
        fn clone_with_label(&self, label: &str) -> Self {
            LinkMapCertificate {
                label: label.into(),
                ..self.clone()
            }
        }
    }
}
