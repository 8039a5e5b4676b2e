//! Exact computer algebra for Clifford quantum cellular automata.
//!
//! Everything here is computed over the Laurent polynomial ring
//! Z_d[x_1^±, .., x_D^±]: sparse ring arithmetic ([`ring`]), polynomial
//! matrices and the symplectic formalism for Pauli operator families
//! ([`matrix`], [`symplectic`]), coboundary and higher cup-product matrices on
//! hypercubic lattices ([`cochain`]), the QCA and invertible-subalgebra
//! constructions built from them ([`qca`], [`isa`]), order/equivalence
//! certificates ([`equivalence`]), and finite-torus instantiation
//! ([`lattice`]).
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the whole crate is safe for unrestricted concurrent use.
//!
//! # Quick start
//!
//! ```
//! use cupqca::qca::{build_3f_3d, build_zp_alpha};
//! use cupqca::symplectic::SymplecticMap;
//!
//! // the 3-fermion QCA is an exact involution
//! let alpha = build_3f_3d();
//! assert!(alpha.is_symplectic());
//! assert_eq!(alpha.compose(&alpha)?, SymplecticMap::identity(2, 3, 6));
//!
//! // the Z_5 QCA composes with its conjugate into an X/Z-separated map
//! let a = build_zp_alpha(5, 1)?;
//! let am = build_zp_alpha(5, -1)?;
//! let (_, xz, zx, _) = am.compose(&a)?.blocks();
//! assert!(xz.is_zero() && zx.is_zero());
//! # Ok::<(), cupqca::Error>(())
//! ```

pub mod cochain;
pub mod equivalence;
pub mod error;
pub mod isa;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod qca;
pub mod render;
pub mod ring;
pub mod symplectic;

pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use ring::{is_prime, mod_inverse, LaurentPoly, Monomial, TorusShape};
pub use symplectic::{lambda, pair_matrix, symplectic_pair, PauliColumn, SymplecticMap};
