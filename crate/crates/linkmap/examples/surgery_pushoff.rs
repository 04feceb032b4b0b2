//! The surgery conservation law lambda(S, B) = (1 - g) lambda(D, B).
//!
//! Surgering a disk along a dual curve of class g pushes every intersection
//! point off into a nearby pair with opposite signs, multiplying the
//! group-ring intersection number by (1 - g). Both orientation conventions
//! are shown: the pushoff partner carries g, or g^-1 under `inverse_dual`.
//!
//! ```text
//! cargo run --example surgery_pushoff
//! ```

use linkmap::{
    format_records, lambda_sum, surgery_pushoff, GroupElem, IntersectionRecord, LaurentPoly, Sign,
    SurgeryConfig,
};

fn main() {
    let disk = vec![
        IntersectionRecord::new(Sign::Plus, 1),
        IntersectionRecord::new(Sign::Minus, 2),
    ];
    println!("disk records:\n{}", format_records(&disk));
    println!("lambda(D, B) = {}", lambda_sum(&disk));

    for inverse_dual in [false, true] {
        let cfg = SurgeryConfig {
            dual_elem: GroupElem(1),
            inverse_dual,
        };
        let g = cfg.effective_dual();
        let pushed = surgery_pushoff(&disk, &cfg);
        println!("-- surgery with dual class {g} --");
        println!("surgered records:\n{}", format_records(&pushed));
        let factor = LaurentPoly::from_terms([(0, 1), (g.0, -1)]);
        println!("lambda(S, B)       = {}", lambda_sum(&pushed));
        println!("(1 - {g}) lambda(D) = {}", factor.mul(&lambda_sum(&disk)));
        assert_eq!(lambda_sum(&pushed), factor.mul(&lambda_sum(&disk)));
        assert_eq!(lambda_sum(&pushed).augment(), 0);
        println!();
    }
}
