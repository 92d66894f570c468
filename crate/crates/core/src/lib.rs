//! drinfeld-forge: exact arithmetic for Drinfeld modules over `F_q[T]`.
//!
//! The crate provides, in dependency order:
//!
//! - [`fq`], [`poly`], [`ratfunc`]: the base field `F_q`, the polynomial
//!   ring `A = F_q[T]` with ideals and factorization, and `K = F_q(T)`.
//! - [`field`], [`extfield`]: coefficient-field abstractions and quotient
//!   field towers.
//! - [`skew`]: the twisted polynomial ring `L{tau}` with `tau b = b^q tau`.
//! - [`finmod`]: Smith normal form over `A`, finite `A`-module counting and
//!   the cyclic-submodule degree function `psi_r`.
//! - [`drinfeld`]: rank-r Drinfeld modules, torsion, restriction of scalars
//!   and j-invariants.
//! - [`isogeny`]: cyclic isogeny enumeration, Hecke images, isogeny graphs
//!   and degree bounds.
//! - [`cm`]: imaginary quadratic extensions, orders, class groups, CM
//!   heights and the class-group action.
//! - [`matk`]: exact matrices over `K` and the explicit translation
//!   generators of the Hecke orbit.
//! - [`cheb`]: prime-splitting counts and the effective degree search.
//!
//! All arithmetic is exact; no floating point anywhere.

pub mod budget;
pub mod cheb;
pub mod cm;
pub mod drinfeld;
pub mod error;
pub mod extfield;
pub mod field;
pub mod finmod;
pub mod fq;
pub mod isogeny;
pub mod matk;
pub mod poly;
pub mod polyops;
pub mod ratfunc;
pub mod skew;
pub mod text;

pub use cheb::{ChebBound, ChebParams, SplitCounts};
pub use cm::{CmHeight, ImaginaryQuadExt, MumfordDiv, OrderR, PicGroup, SplitType};
pub use error::{ForgeError, Result};
pub use extfield::ExtField;
pub use field::{AExt, Field, FiniteField};
pub use fq::{Fq, FqEl};
pub use matk::{AffinePoint, MatK};
pub use poly::{IdealA, PolyA};
pub use ratfunc::{KField, RatFunc};
pub use skew::SkewPoly;
