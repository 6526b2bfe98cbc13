//! Exact construction and verification of the tautological ring of the
//! moduli space of smooth curves in small genus.
//!
//! The crate is organised bottom-up:
//!
//! - [`rational`], [`partition`], [`kappa`], [`series`]: exact scalars, kappa
//!   monomials and polynomials, Bernoulli numbers and the lambda classes.
//! - [`pointed`]: monomials in `K_i` and `D_ij` on fibre powers of the
//!   universal curve, the substitution rules and push-forward to `M_g`.
//! - [`jet`]: Chern classes of the pointed jet bundles and of `F_d - E`,
//!   merging along diagonals, Porteous determinants.
//! - [`stratum`]: a diagonal-stratum normal form used by the fast relation
//!   engine.
//! - [`relations`]: the relation generator and the relation cache.
//! - [`linalg`], [`ring`]: exact linear algebra and the graded quotient ring
//!   with its Gorenstein, Hard Lefschetz and Hodge positivity checks.
//! - [`socle`]: bracket recipes and proportionalities in the top degree.
//! - [`tau`]: Witten–Kontsevich intersection numbers.

pub mod cache;
pub mod error;
pub mod jet;
pub mod kappa;
pub mod linalg;
pub mod par;
pub mod partition;
pub mod pointed;
pub mod rational;
pub mod relations;
pub mod ring;
pub mod series;
pub mod socle;
pub mod stratum;
pub mod tau;

pub use error::{Error, Result};
pub use kappa::KappaPoly;
pub use par::Execution;
pub use partition::Partition;
pub use rational::Rational;

/// Version string embedded in cache documents; bump when an engine changes
/// its output.
pub const ENGINE_VERSION: &str = concat!("tautring-", env!("CARGO_PKG_VERSION"));
