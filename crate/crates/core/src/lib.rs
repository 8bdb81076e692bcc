//! cartankit: exact Gaussian-rational linear algebra and Lie theory.
//!
//! Everything is computed over Q(i) with arbitrary-precision rationals; no
//! floating point anywhere. The crate provides:
//!
//! - the scalar field and polynomial arithmetic, including complete root
//!   extraction over Q(i) ([`scalar`], [`poly`]);
//! - exact dense linear algebra: echelon forms, kernels, characteristic
//!   polynomials, primary decomposition, Jordan-Chevalley ([`mat`],
//!   [`subspace`], [`linalg`]);
//! - matrix Lie algebras: structure constants, series, Cartan subalgebras,
//!   root space decompositions, ranks, restricted algebraic hulls
//!   ([`liealg`]);
//! - matrix group computations: the adjoint representation, shifted
//!   characteristic coefficients, regularity, normalizer/centralizer and
//!   C-Cartan membership ([`group`], [`corpus`]);
//! - a seeded, reproducible verification harness ([`verify`]) and JSON wire
//!   formats ([`json`]).

pub mod corpus;
pub mod error;
pub(crate) mod gaussint;
pub mod group;
pub mod json;
pub mod liealg;
pub mod linalg;
pub mod mat;
pub mod poly;
pub mod scalar;
pub(crate) mod seeded;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result, SplitFailure};
pub use mat::Mat;
pub use poly::Poly;
pub use scalar::Scalar;
pub use subspace::Subspace;

#[cfg(test)]
mod tests {
    // the concurrency contract: everything is immutable after construction
    // and safe to share and send between threads
    #[test]
    fn core_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::Scalar>();
        check::<crate::Poly>();
        check::<crate::Mat>();
        check::<crate::Subspace>();
        check::<crate::liealg::LieAlgebra>();
        check::<crate::liealg::RootDatum>();
        check::<crate::group::GroupContext>();
        check::<crate::verify::CheckReport>();
    }
}
