//! Basis spheres realize lambda = (1-s)^2 q(s) with q(1) the linking number.
//!
//! Starting from any cofactor q, two successive surgeries along a meridinal
//! dual produce an intersection pattern whose group-ring sum is exactly
//! (1-s)^2 q(s); `extract_q` then recovers q and the modeled linking number
//! q(1) from the raw records. The identity meridian is rejected, since its
//! surgery factor (1 - 1) destroys the pattern.
//!
//! ```text
//! cargo run --example basis_spheres
//! ```

use linkmap::{basis_sphere_lambda, lambda_sum, GroupElem, LaurentPoly};

fn main() {
    let meridian = GroupElem(1);
    for q_text in ["s^0", "2 + s^-1", "s^2 - 3*s^5"] {
        let q: LaurentPoly = q_text.parse().unwrap();
        let records = basis_sphere_lambda(&q, meridian).unwrap();
        let lambda = lambda_sum(&records);
        let (back, lk) = lambda.extract_q().unwrap();
        println!("q           = {q}");
        println!("records     = {} points", records.len());
        println!("lambda      = {lambda}");
        println!("recovered q = {back}");
        println!("linking     = {lk}");
        assert_eq!(back, q);
        assert_eq!(lk, q.augment());
        println!();
    }

    match basis_sphere_lambda(&LaurentPoly::one(), GroupElem::IDENTITY) {
        Ok(_) => unreachable!("identity meridian must be rejected"),
        Err(e) => println!("identity meridian: {e}"),
    }
}
