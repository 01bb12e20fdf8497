//! Rank-two non-abelian zeta functions for Q and quadratic fields.
//!
//! The crate computes xi_{K,2}(s) = Lambda_K(2s)/(s-1) - Lambda_K(2s-1)/s
//! and its T-truncated variant at arbitrary working precision, certifies
//! that their zeros lie on the critical line over finite boxes, and verifies
//! the supporting lattice-theoretic machinery (theta-sum cohomology and
//! Riemann-Roch, semistability vs distance to cusps, Eisenstein/Epstein
//! identities) against independent numerical oracles.
//!
//! Layout mirrors the pipeline:
//! * [`hpnum`] - multiprecision arithmetic and special functions;
//! * [`zetalib`] - Riemann/Hurwitz/Dirichlet/Dedekind zetas and completions;
//! * [`epstein`] - Epstein zetas of Gram matrices (theta-split);
//! * [`rank2`] - the rank-two zetas, residues, Suzuki identity;
//! * [`zeros`] - critical-line scanning and argument-principle certification;
//! * [`lattice`] - rank-two O_K-lattices, h0/h1, stability, cusps;
//! * [`eisenstein`] - Fourier expansions, the lattice/point bridge,
//!   Mellin and Rankin-Selberg quadrature checks;
//! * [`verify`] - the seeded invariant suites run by the CLI and tests.

pub mod epstein;
pub mod error;
pub mod hpnum;
pub mod lattice;
pub mod rank2;
pub mod verify;
pub mod zeros;
pub mod zetalib;

pub mod eisenstein;

pub use error::{Error, Result};
pub use hpnum::{Cplx, Prec, Real};
