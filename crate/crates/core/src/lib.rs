//! Explicit generators of rectangular affine W-algebras of type A.
//!
//! The crate builds the generators `W_ij^(r)` of `W^k(gl_N, f)` for a
//! nilpotent `f` of Jordan type `(l^n)` as column-determinant coefficients,
//! checks them against the BRST operator inside `V^k(a)`, and computes their
//! Miura images and the Virasoro data of the `n = l = 2` conformal vector.

pub mod brst;
pub mod cli;
pub mod coeff;
pub mod liealg;
pub mod pbw;
pub mod vertex;
pub mod walgebra;
