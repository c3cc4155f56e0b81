//! Exact reconstruction of the quartic tangent cones `F_W` attached to nets of
//! canonical divisors on genus 4 and 5 curves, over a word-sized prime field.
//!
//! Everything is generic over the scalar: the linear-algebra and polynomial
//! kernels need only [`Field`], the geometric modules need [`PrimeField`]. The
//! aliases at the bottom of this file fix the default prime.

pub mod bivariate;
pub mod bundle;
pub mod canring;
pub mod cone;
pub mod curve;
pub mod error;
pub mod field;
pub mod forms;
pub mod matrix;
pub mod net;
pub mod pencil;
pub mod poly;
pub mod report;
pub mod rng;
pub mod spanlab;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeField};
pub use forms::Form;
pub use matrix::DenseMatrix;
pub use poly::UniPoly;

/// The default prime, 1 000 003.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Primes a run may select at runtime; see [`with_prime!`].
pub const SUPPORTED_PRIMES: [u64; 6] = [
    1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 2_147_483_647,
];

/// The default scalar field.
pub type Fq = Fp<DEFAULT_PRIME>;
pub type Matrix = DenseMatrix<Fq>;
pub type Poly = UniPoly<Fq>;
pub type Context = canring::CurveContext<Fq>;
pub type Cone = cone::QuarticCone<Fq>;

/// Runs `$body` with the type alias `$F` bound to the field of the runtime
/// prime `$p`; evaluates to `Err(Error::UnsupportedPrime)` otherwise.
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $F:ident => $body:expr) => {{
        match $p {
            1_000_003 => { type $F = $crate::Fp<1_000_003>; Ok($body) }
            1_000_033 => { type $F = $crate::Fp<1_000_033>; Ok($body) }
            1_000_037 => { type $F = $crate::Fp<1_000_037>; Ok($body) }
            1_000_039 => { type $F = $crate::Fp<1_000_039>; Ok($body) }
            1_000_081 => { type $F = $crate::Fp<1_000_081>; Ok($body) }
            2_147_483_647 => { type $F = $crate::Fp<2_147_483_647>; Ok($body) }
            other => Err($crate::Error::UnsupportedPrime(other)),
        }
    }};
}
