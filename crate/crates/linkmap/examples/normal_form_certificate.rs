//! Constructive normal-form certificates for the quotient ring.
//!
//! Every monomial s^n t^m is congruent to t^((n + nm + m) mod 2) modulo the
//! relations T1-T4. `certify_nf` proves this constructively: it emits an
//! integer combination of relation instances whose expansions telescope
//! exactly to s^n t^m - t^bit, and `verify_certificate` re-checks that by
//! exact polynomial arithmetic. Tampering with a single coefficient breaks
//! the check.
//!
//! ```text
//! cargo run --example normal_form_certificate
//! ```

use linkmap::{certify_nf, expand_relation, nf, verify_certificate, BiLaurent};

fn main() {
    for (n, m) in [(1, 0), (0, 2), (-3, 5)] {
        let cert = certify_nf(n, m).unwrap();
        println!("-- s^{n} t^{m} is congruent to t^{} --", cert.nf_bit);
        print!("{cert}");
        println!("verified: {}", verify_certificate(&cert));
        assert!(verify_certificate(&cert));

        // The checker's contract, spelled out: the combo sums to the target.
        let mut sum = BiLaurent::zero();
        for (c, inst) in &cert.combo {
            sum = sum.add(&expand_relation(*inst).scale(*c));
        }
        println!("combo expands to: {sum}");
        assert_eq!(nf(&sum), linkmap::PiElement::ZERO);
        println!();
    }

    let mut tampered = certify_nf(-3, 5).unwrap();
    tampered.combo[0].0 += 1;
    println!(
        "tampered certificate verifies: {}",
        verify_certificate(&tampered)
    );
    assert!(!verify_certificate(&tampered));
}
