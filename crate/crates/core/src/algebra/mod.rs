//! Exact linear algebra over ℤ and ℤ/p.

pub mod complex;
pub mod homology;
pub mod ring;
pub mod snf;
pub mod sparse;
pub mod submodule;

pub use complex::{mapping_cone, ChainComplex, ChainComplexPresentation, Grading};
pub use homology::{homology, induced_map, Homology, HomologyGroup, HomologySummary};
pub use ring::{CoefficientRing, Ring};
pub use snf::{smith_normal_form, Smith};
pub use sparse::{DenseMatrix, SparseMatrix, SparseVec};
pub use submodule::{saturated_submodule_basis, ColumnEchelon, Submodule};
