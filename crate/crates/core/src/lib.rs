//! Mellin-plane contour methods for the DGLAP moment evolution equation with
//! the toy anomalous dimension 1/(N+1).
//!
//! The solution phi(x, u) = x I0(2 sqrt(ln u ln(1/x))) is computed four ways:
//! by direct inverse-Mellin quadrature along a vertical line
//! ([`mellin_inversion::invert_direct`]), by the mapped contour collapsed onto
//! the cut [-1, 1] ([`mellin_inversion::invert_mapped`]), by residues of the
//! dual representation ([`dual_representation::eval_dual`]) and by the
//! closed-form series ([`kinematics::phi_closed_form`]).

pub mod dual_representation;
pub mod error;
pub mod evolution;
pub mod kinematics;
pub mod mellin_inversion;
pub mod moment_kernels;
pub mod quadrature;
pub mod report;
pub mod running_coupling;
pub mod special_functions;

pub use error::{Error, Result};
pub use kinematics::{phi_closed_form, EvolutionPoint};
pub use num_complex::Complex64;
pub use report::{Method, MethodReport};
pub use special_functions::{LambertBranch, SeriesResult};
