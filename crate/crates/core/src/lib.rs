//! Separability analysis of 3-qubit states in Pauli (Hilbert-Schmidt) form.
//!
//! The core is generic over the floating-point scalar through [`Real`];
//! the aliases at the crate root fix it to `f64`.
//!
//! ```
//! use mdsep::{criteria, fixtures, MdsTensor};
//!
//! let t = MdsTensor::from_dense(&fixtures::EXAMPLE_1).unwrap();
//! let best = criteria::l1_svd_best(&t);
//! assert!(best.satisfied);
//! ```

pub mod criteria;
pub mod ensembles;
pub mod error;
pub mod fixtures;
pub mod hosvd;
pub mod hs;
pub mod input;
pub mod numerics;
pub mod report;
pub mod scalar;
pub mod states;
pub mod unfolding;

pub use error::{Error, Result};
pub use hs::Qubit;
pub use scalar::Real;

pub type RealMatrix = numerics::RealMatrix<f64>;
pub type ComplexMatrix = numerics::ComplexMatrix<f64>;
pub type SvdResult = numerics::SvdResult<f64>;
pub type MdsTensor = hs::MdsTensor<f64>;
pub type GeneralHsTensor = hs::GeneralHsTensor<f64>;
pub type DensityMatrix = hs::DensityMatrix<f64>;
pub type ValidityReport = hs::ValidityReport<f64>;
pub type Unfolded = unfolding::Unfolded<f64>;
pub type CriterionResult = criteria::CriterionResult<f64>;
pub type HosvdResult = hosvd::HosvdResult<f64>;
pub type SeparableEnsemble = ensembles::SeparableEnsemble<f64>;
pub type EnsembleTerm = ensembles::EnsembleTerm<f64>;
pub type QubitFactor = ensembles::QubitFactor<f64>;
pub type BellFactor = ensembles::BellFactor<f64>;
