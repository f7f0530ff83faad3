//! Exact computations around complex supergrassmannians and the supergroups
//! acting on them.
//!
//! The crate is organised in layers:
//!
//! - [`exactnum`]: dense matrices over an exact field, Pfaffians, and the
//!   α-invariant of an odd operator with compact square.
//! - [`rootsys`]: root data of contragredient Lie superalgebras and `q(n)`,
//!   isotropy, defect and defect-subgroup roots.
//! - [`sympair`]: restricted-root data of the symmetric pairs used for the
//!   defect-one groups, Casimir eigenvalues and the `D(2,1;α)` weight test.
//! - [`grassvol`]: dimensions and exact symbolic volumes of `Gr(r|s, m|n)`.
//! - [`qlocal`]: finite localization sums, `C(r, n)` and Q-grassmannian volumes.
//! - [`splitting`]: splitting criteria for Levi subgroups and certified chains
//!   down to defect subgroups.
//! - [`verify`]: the identity sweeps behind the `verify` command.
//!
//! Linear algebra and root data are generic over [`Scalar`]; the aliases below
//! fix the exact rational instantiation used everywhere results are reported.

pub mod exactnum;
pub mod grassvol;
pub mod qlocal;
pub mod rootsys;
pub mod scalar;
pub mod serde_exact;
pub mod splitting;
pub mod sympair;
pub mod verify;

pub use scalar::Scalar;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integer.
pub type Integer = num_bigint::BigInt;

pub type Matrix = exactnum::Matrix<Rational>;
pub type SkewMatrix = exactnum::SkewMatrix<Rational>;
pub type AlphaInput = exactnum::AlphaInput<Rational>;
pub type WeightVector = rootsys::WeightVector<Rational>;
pub type Root = rootsys::Root<Rational>;
pub type RootSystem = rootsys::RootSystem<Rational>;
pub type RestrictedPair = sympair::RestrictedPair<Rational>;

/// Floating point instantiations, for quick numerical sanity checks only.
pub type MatrixF64 = exactnum::Matrix<f64>;
pub type SkewMatrixF64 = exactnum::SkewMatrix<f64>;

pub use grassvol::{GrassSpec, SuperDim, VolumeExpr};
pub use qlocal::{LocalizationReport, ParamVector};
pub use splitting::{ChainStep, GroupDesc, SubgroupChain};

/// Builds an exact rational from a numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an exact rational integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
