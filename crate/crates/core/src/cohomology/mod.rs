//! Hochschild cochains with coefficients in W^e: the explicit coboundary
//! construction in degree 4 under a smoothness certificate, and the
//! E₁^{12} reduction that identifies Ext³(W, W^e) with a twist of W.

pub mod coboundary;
pub mod e12;

pub use coboundary::{build_n, cochain_d3, is_cocycle4, is_cocycle4_generic, Cochain3, Cochain4, CochainComplex};
pub use e12::{bimodule_action, canonicalize_e12, phi_map, E12Class, Side};
