//! Arithmetic for the twisted degree-6 L-function of Hermitian cusp forms of
//! degree 2 over `Q(i)`.
//!
//! - [`gaussian`]: exact `Z[i]` arithmetic, prime splitting, factorization
//! - [`characters`]: the unit group of `Z[i]/N` and its exact Dirichlet characters
//! - [`series`]: truncated Dirichlet series, Euler expansion, lattice Dedekind series
//! - [`hecke`]: the local polynomials `Q_p(t)` over numeric or symbolic eigenvalues
//! - [`lfun`]: truncated Euler product, completion prefactors, Gamma
//! - [`verify`]: exact checks of the Euler-product identities behind the local comparison
//! - [`cli`]: the command-line surface

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod gaussian;
pub mod hecke;
pub mod lfun;
mod par;
pub mod primes;
pub mod ring;
pub mod series;
pub mod verify;

pub use cyclotomic::Cyclo;
pub use gaussian::{GaussianInt, PrimeKind, SplittingType};
pub use ring::{MultiPoly, Poly, Ring, Scalar};
