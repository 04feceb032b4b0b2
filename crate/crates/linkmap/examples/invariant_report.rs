//! The invariants omega and tau on worked certificates.
//!
//! Every bundled hand fixture is evaluated: omega (the pointwise mod-2
//! invariant), tau_raw (the signed monomial sum), its class tau in
//! Pi(X-, f+), and the identity phi(tau_raw) = (1 + t) * omega. A mutated
//! odd-point certificate shows the parity constraint rejecting data that no
//! genuine link map can produce.
//!
//! ```text
//! cargo run --example invariant_report
//! ```

use linkmap::{hand_fixtures, DiskPoint, Sign};

fn main() {
    for cert in hand_fixtures() {
        let report = cert.theorem_check();
        println!("certificate {}:", report.label);
        println!("  disks         = {}", cert.disks.len());
        println!("  points        = {}", cert.total_points());
        println!("  omega         = {}", report.omega);
        println!("  tau_raw       = {}", report.tau_raw);
        println!("  tau           = {}", report.tau);
        println!("  phi(tau_raw)  = {}", report.phi_tau);
        println!("  theorem_holds = {}", report.theorem_holds);
        assert!(report.theorem_holds);
    }

    // Knock one point off a valid certificate: the parity constraint fires.
    let mut odd = hand_fixtures().remove(1);
    odd.label = "omega-one-mutated".into();
    odd.disks[0].points.push(DiskPoint {
        sign: Sign::Minus,
        m: 7,
    });
    let validity = odd.validate(false).unwrap();
    println!("certificate {}:", odd.label);
    println!("  points        = {}", validity.total_points);
    println!("  valid         = {}", validity.valid);
    println!("  strict mode   = {}", odd.validate(true).unwrap_err());
}
