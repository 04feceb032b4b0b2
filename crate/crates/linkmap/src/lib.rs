//! Link-homotopy invariants of two-component link maps in the 4-sphere.
//!
//! A link map `f = f+ ∪ f-` of two 2-spheres can be encoded, up to the moves
//! this library cares about, by a finite combinatorial certificate: a list of
//! Whitney disks, each carrying a sheet-intersection exponent `n`, together
//! with the signed intersection points on that disk, each carrying an
//! exponent `m`. From such a certificate the crate computes
//!
//! * `omega`, a Z/2 invariant read off the disk data pointwise, and
//! * `tau`, the Kirk-style invariant, first as an integral polynomial in
//!   `Z[s^±1, t^±1]` and then reduced to its class in the quotient group
//!   `Π ≅ Z/2⟨t : t^2 = 1⟩`,
//!
//! and machine-checks the identity relating them, `phi(tau_raw) =
//! (1 + t) * omega`, certificate by certificate.
//!
//! The supporting machinery is exposed as well: exact Laurent-polynomial
//! arithmetic ([`algebra`]), the quotient-ring normal form with constructive
//! membership certificates and finite-window diagnostics ([`quotient`]), and
//! the surgery/pushoff calculus for intersection polynomials
//! ([`intersection`]).
//!
//! # Running the examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example invariant_report
//! cargo run --example normal_form_certificate
//! cargo run --example surgery_pushoff
//! cargo run --example basis_spheres
//! cargo run --example window_report
//! cargo run --example laurent_arithmetic
//! ```
//!
//! A thin command-line front end over the same entry points ships as the
//! `linkmap` binary; see `linkmap --help`.

pub mod algebra;
pub mod intersection;
pub mod invariants;
pub mod quotient;
pub mod selftest;
mod snf;

pub use algebra::{AlgebraError, BiLaurent, GroupElem, LaurentPoly, ParsePolyError};
pub use intersection::{
    basis_sphere_lambda, format_records, lambda_sum, parse_records, relative_elem, surgery_pushoff,
    IntersectionError, IntersectionRecord, Sign, SurgeryConfig,
};
pub use invariants::{
    gen_random, hand_fixtures, CertificateError, DiskPoint, InvariantReport, LinkMapCertificate,
    ValidityReport, WhitneyDiskRecord,
};
pub use quotient::{
    certify_nf, expand_relation, nf, phi, verify_certificate, window_report, NFCertificate,
    PiElement, QuotientError, RelationInstance, RelationKind, WindowDiagnostics, CERT_RANGE_LIMIT,
    WINDOW_LIMIT,
};
pub use selftest::{run_selftest, CheckResult, SelftestReport};
