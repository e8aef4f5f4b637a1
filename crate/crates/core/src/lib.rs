//! Burgers-class viscoelastic constitutive models.
//!
//! * [`tensor`]: symmetric 3×3 tensor algebra, SPD square roots.
//! * [`kinematics`]: prescribed isochoric flows and the matched 1D strain drive.
//! * [`models`]: the four 3D models as ODE systems in two left Cauchy–Green
//!   tensors, with stress, stored energy and dissipation.
//! * [`burgers`]: the 1D law `σ + p₁σ̇ + p₂σ̈ = q₁ε̇ + q₂ε̈`, its coefficient maps
//!   and element-network integrators.
//! * [`netcomp`]: spring-dashpot network parsing and reduction to transfer functions.
//! * [`compare`]: 3D-versus-1D comparison and oscillatory moduli extraction.
//! * [`cli`]: the `rheolab` command-line front end.

pub mod burgers;
pub mod cli;
pub mod compare;
pub mod fit;
pub mod kinematics;
pub mod models;
pub mod netcomp;
pub mod ode;
pub mod tensor;

pub use burgers::{
    coeffs_from_model, complex_modulus, creep_response, element_network_sim, integrate_burgers,
    BurgersCoeffs, BurgersInit,
};
pub use kinematics::{Drive, FlowProtocol};
pub use models::{simulate, MaterialParams, ModelKind, ModelState, SimConfig, SimRecord};
pub use netcomp::{
    canonical_network, parse, to_burgers, transfer_function, NetworkExpr, RationalTF,
};
pub use ode::TimeGrid;
pub use tensor::{SymTensor3, Tensor3};
