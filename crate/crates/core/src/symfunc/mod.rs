//! The colored Fock space: Schur bases, scalar product, Cauchy kernels.

mod characters;
mod colored;
mod xpoly;

pub use characters::{chi, z_factor};
pub use colored::{
    cauchy_kernel, colored_schur, dual_schur, scalar_product, scalar_product_diff, schur,
    total_parts, z_multi, ColoredPoly,
};
pub use xpoly::{powersum_x, to_xpoly, XPoly, XVars};
