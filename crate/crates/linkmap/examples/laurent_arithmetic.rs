//! Exact group-ring arithmetic: the (1-s)^2 divisibility structure.
//!
//! Intersection polynomials of surgered spheres are always divisible by
//! (1-s) once per surgery. This example multiplies a cofactor q up by
//! (1-s)^2, strips the factors back off with `extract_q`, and shows how a
//! failed division reports its remainder.
//!
//! ```text
//! cargo run --example laurent_arithmetic
//! ```

use linkmap::LaurentPoly;

fn main() {
    let one_minus_s = LaurentPoly::one_minus_s();
    let sq = one_minus_s.mul(&one_minus_s);
    println!("(1 - s)^2            = {sq}");

    let q: LaurentPoly = "s^-1 + 2".parse().unwrap();
    let p = sq.mul(&q);
    println!("q                    = {q}");
    println!("(1 - s)^2 * q        = {p}");
    println!("augment((1-s)^2 * q) = {}", p.augment());

    let (back, lk) = p.extract_q().unwrap();
    println!("extract_q            = ({back}, lk = {lk})");
    assert_eq!(back, q);
    assert_eq!(lk, q.augment());

    // Division is exact or it is an error; the remainder names the obstruction.
    let bad: LaurentPoly = "s^0 + s^1".parse().unwrap();
    println!("dividing {bad} by 1 - s:");
    match bad.divide_one_minus_s() {
        Ok(_) => unreachable!("1 + s has augmentation 2"),
        Err(e) => println!("  {e}"),
    }
}
