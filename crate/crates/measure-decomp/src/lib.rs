//! Exact-arithmetic decompositions of signed, vector and spectral measures
//! relative to families of sets closed under (countable, hence finite)
//! unions, on finite measurable spaces.
//!
//! The central operation splits a measure into the part concentrated on a
//! family's atomic support and the part annihilating every member of the
//! family. The classical decompositions arise as instances: Lebesgue (null
//! sets of a reference measure), Hahn-Jordan (positive sets), atomic/diffuse
//! and topological support (on the line model). The [`order`] module exposes
//! the two halves as band projections on the lattice of signed measures, and
//! [`oracle`] provides independent brute-force references for all of it.
//!
//! All scalar arithmetic is exact rational; floating point appears only on
//! the numeric construction path for spectral measures, with stated
//! tolerances. Every type is immutable after construction and all operations
//! are pure, so values can be shared freely across threads.

pub mod decompose;
pub mod error;
pub mod line;
pub mod measure;
pub mod oracle;
pub mod order;
pub mod space;
pub mod spectral;
pub mod vector;

pub use decompose::{
    dellacherie_decompose, g_atomic_support, lebesgue_decompose, null_family,
    radon_nikodym_density, Decomposition,
};
pub use error::{Error, Result};
pub use line::{cell_index, LineAtom, LineMeasure, LineSet, SupportSet};
pub use measure::{
    find_positive_subset, hahn_jordan, lattice_inf, lattice_sup, relation, Rational, SignedMeasure,
};
pub use oracle::{brute_g_support, brute_hahn, brute_nearest, brute_sup};
pub use order::{band_membership, band_project, BandMembership};
pub use space::{family_join, family_meet, sigma_close, AtomSet, FiniteSpace, SetFamily};
pub use spectral::{
    from_normal_matrix, spectral_control, spectral_decompose, CMatrix, ComplexRat, SpectralMeasure,
    SpectralPart,
};
pub use vector::{control_measure, vector_decompose, VectorMeasure};
