//! Ruling out automorphisms of prime-power order on curves over finite
//! fields, given only the Frobenius characteristic polynomial.
//!
//! An automorphism of order `N^m` permutes the points of the curve defined
//! over each `F_{q^n}`. Counting points of exact degree `n` (from the zeta
//! function) and reducing modulo `N^m` gives a lower bound on the number of
//! fixed points of the automorphism; once that bound exceeds what
//! Riemann–Hurwitz allows, the automorphism cannot exist.
//!
//! * [`algebra`]: Weil polynomials, Newton's identities, base change and
//!   assembly from Hecke polynomials.
//! * [`zeta`]: point counts and new-point counts.
//! * [`criterion`]: the exclusion test itself.
//! * [`ingest`]: text formats for Hecke datasets and Weil polynomials.
//! * [`oracle`]: brute-force counts for explicit curves.

pub mod algebra;
pub mod arith;
pub mod criterion;
pub mod ingest;
pub mod oracle;
pub mod ring;
pub mod zeta;

pub use algebra::{PrimePower, WeilPolynomial};
pub use criterion::{exclude, ExclusionReport, Verdict};

pub type ExactSeries = zeta::PointCountSeries<ring::Exact>;
pub type ModularSeries = zeta::PointCountSeries<ring::Modular>;
pub type ExactNewPoints = zeta::NewPointSeries<ring::Exact>;
pub type ModularNewPoints = zeta::NewPointSeries<ring::Modular>;
