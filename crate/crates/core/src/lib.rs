//! Entanglement of superposed tripartite pure states.
//!
//! Generator-sum negativities, concurrences and their GME versions for
//! three-party qudit states, upper and lower bounds on the negativity of a
//! two-component superposition, and a dense partial-transpose path used to
//! cross-check the generator sums.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! `*64` / `*32` aliases below fix the scalar.

pub mod bounds;
pub mod error;
pub mod io;
pub mod library;
pub mod matrix;
pub mod measures;
pub mod oracle;
pub mod scalar;
pub mod state;

pub use bounds::{
    bounds_report, cross_terms, fit_z_curve, min_combine_lower, min_combine_upper, theorem1_bounds,
    theorem2_bounds, z_family_sweep, BoundTriple, BoundsReport, CrossTermTable, CurveFit,
    SuperpositionSpec, SweepRow,
};
pub use error::{Error, Result};
pub use library::{
    ghz, haar_random, random_biseparable, w_state, z_family, NamedState, ZFamilyParams,
};
pub use matrix::CMatrix;
pub use measures::{
    bilinear_form, concurrence_sq, cross_sum, generator_pairs, gme_concurrence, gme_negativity,
    is_biseparable, measure_report, multipartite_concurrence_sq, multipartite_negativity,
    negativity_schmidt, negativity_so, GeneratorPair, GeneratorScale, MeasureReport,
};
pub use oracle::{
    density_matrix, hermitian_eigenvalues, negativity_minors, negativity_pt_oracle,
    partial_transpose, HermitianMatrix,
};
pub use scalar::Real;
pub use state::{
    conjugate, matricize, normalize, reduced_density, schmidt_spectrum, superpose, Bipartition,
    Party, PureState, SchmidtSpectrum,
};

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;
pub type PureState64 = PureState<f64>;
pub type PureState32 = PureState<f32>;
pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type SuperpositionSpec64 = SuperpositionSpec<f64>;
pub type SuperpositionSpec32 = SuperpositionSpec<f32>;
pub type MeasureReport64 = MeasureReport<f64>;
pub type BoundsReport64 = BoundsReport<f64>;
pub type CrossTermTable64 = CrossTermTable<f64>;
