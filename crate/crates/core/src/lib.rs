//! Exact-arithmetic canonical heights for endomorphisms of projective space
//! over the rational function field Q(t).

pub mod endo;
pub mod error;
pub mod fingerprint;
pub mod forms;
pub mod height;
pub mod isotriviality;
pub(crate) mod modp;
pub mod ntt;
pub mod parse;
pub mod poly;
pub mod projective;
pub mod ratfunc;
pub mod rational;
pub mod resultant;
pub mod scan;

pub use endo::{endo_build, morphism_check, Endomorphism, Mobius, ResultantCertificate};
pub use height::{
    canonical_height_interval, classify, functional_gap_data, HeightInterval, Orbit, Verdict,
};
pub use isotriviality::{
    fixed_point_data, isotriviality_verdict, multiplier_invariants, IsotrivialityVerdict,
    MultiplierInvariants,
};
pub use scan::{enumerate_points, scan, PointEnumSpec, ScanReport};
pub use error::{Error, Result};
pub use forms::{HomogeneousForm, XPoly};
pub use poly::{content_and_primitive, UniPoly};
pub use projective::ProjectivePoint;
pub use ratfunc::RationalFunc;
pub use rational::Rational;
