//! Exact computation of quasitriangular structures, infinitesimal R-matrices
//! (pre-Cartier structures), Cartier subspaces and low-degree cobar
//! cohomology for explicit finite-dimensional Hopf algebras.

pub mod error;
pub mod families;
pub mod hochschild;
pub mod hopf;
pub mod linalg;
pub mod precartier;
pub mod quantize;
pub mod quasitriangular;
pub mod scalars;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use families::{build, FamilyKind, FamilySpec};
pub use hopf::{Elem, HopfData, Leg, Tensor, Tensor2, Tensor3};
pub use linalg::{SparseMat, SparseVec, Subspace};
pub use precartier::{classify, BlockTag, ClassificationReport};
pub use quantize::{PolyTensor, PolyTensor2};
pub use quasitriangular::{build_r, RSpec};
pub use scalars::{FieldSpec, Rational, Scalar};
