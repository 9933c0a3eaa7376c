//! Exact symbolic computation for the q-deformed Berezin star-product on the
//! quantum disc.
//!
//! The algebra `Pol(C)_q` is generated by `z`, `z*` subject to
//! `z* z = q^2 z z* + 1 - q^2`. Everything is computed over the field Q(s)
//! with `q = s^2`, and series in the deformation parameter `t` are truncated
//! at a fixed order, so every identity checked here is an exact equality.
//!
//! Module map:
//! - [`scalar`]: Q(s), q-Pochhammer symbols, truncated t-series.
//! - [`qpoly`]: normal-ordered polynomials, tensors, windowed formal series.
//! - [`qcalc`]: partial derivatives, the Laplace-Beltrami operator and its
//!   tensor lift.
//! - [`star`]: the polynomials `p_k`, the bidifferential operators `C_k`, and
//!   the star product on `Pol(C)_q[[t]]`.
//! - [`fockrep`]: the operator representation used as an independent oracle,
//!   covariant symbols and the Berezin transform.
//! - [`uqsl2`]: the quantum group action and its equivariance checks.
//! - [`expr`]: the expression language used by the CLI.
//! - [`verify`]: named verification suites behind a common trait.
//!
//! The star product agrees with composition of the represented operators:
//!
//! ```
//! use qstar::{expr::parse_poly, fockrep::{i_op_poly, q_map}, StarEngine};
//!
//! let (f1, f2) = (parse_poly("zs").unwrap(), parse_poly("z^2").unwrap());
//! let psi = StarEngine::new(3).star(&f1, &f2);
//! let lhs = q_map(&psi, 16);
//! let rhs = i_op_poly(&f1, 16, 3).mul(&i_op_poly(&f2, 16, 3)).unwrap();
//! assert!(lhs.agrees_with(&rhs).unwrap());
//! ```

pub mod error;
pub mod expr;
pub mod fockrep;
pub mod json;
pub mod latex;
pub mod qcalc;
pub mod qpoly;
pub mod scalar;
pub mod star;
pub mod uqsl2;
pub mod verify;

pub use error::{Error, Result};
pub use qpoly::{Exp, NCPoly, TensorPoly, WindowedSeries};
pub use scalar::{QScalar, TSeries};
pub use star::{StarEngine, StarSeries};
