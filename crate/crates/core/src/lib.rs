//! Exact computations with MacMahon symmetric functions of vertex-weighted
//! graphs: the chromatic MacMahon function (CMF) in the power-sum basis, the
//! extended generalized degree polynomial (EGDP), the Hopf structure on
//! power sums, and two routes that rebuild a forest's EGDP from its CMF.

pub mod algebra;
pub mod bases;
pub mod chromatic;
pub mod error;
pub mod graphs;
pub mod hopf;
pub mod recovery;

pub use algebra::{
    binomial, truncation_variables, vp_binomial, vp_canonicalize, vp_enumerate, Coeff,
    LaurentPolynomial, MacMahonElement, PartMode, TensorElement, VectorPartition, VectorVec,
};
pub use bases::{basis_matrix, check_chromatic_basis, star_family, BasisMatrix};
pub use chromatic::{
    beta_table, cmf, coloring_oracle, csf_specialize, egdp, egdp_specialize, GdpKind, Keep, Limits,
};
pub use error::{Error, Result};
pub use graphs::{parse_graph, random_forest, serialize_graph, WeightedGraph};
pub use hopf::{antipode, coproduct, gamma, phi, recover_egdp_hopf, recover_stats, ForestStats};
pub use recovery::{explicit_coefficients, omega, recover_egdp_explicit};
