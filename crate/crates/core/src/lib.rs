//! Exact Ehrhart polynomials of lattice polytopes and Galois groups of
//! rational polynomials by resolvent descent.
//!
//! The crate is organized bottom-up:
//!
//! - [`polyalg`]: exact univariate polynomials over ℚ and ℤ, factorization.
//! - [`permgrp`]: permutation groups, stabilizer chains, the transitive table.
//! - [`roots`]: certified complex root enclosures in ball arithmetic.
//! - [`polytope`]: lattice polytopes, facets, lattice-point counting.
//! - [`ehrhart`]: Ehrhart polynomials by count-and-interpolate.
//! - [`galois`]: the resolvent descent and the self-reciprocal wreath path.

pub mod ehrhart;
pub mod galois;
pub mod permgrp;
pub mod polyalg;
pub mod polytope;
pub mod roots;

pub use ehrhart::{ehrhart_polynomial, EhrhartPolynomial};
pub use galois::{galois_group, GaloisOptions, GaloisResult};
pub use permgrp::{Perm, PermGroup};
pub use polyalg::{QPoly, ZPoly};
pub use polytope::LatticePolytope;
