//! Calculus on bounded time scales.
//!
//! The crate covers the jump operators and graininess of a time scale, the
//! delta, nabla and diamond-alpha derivatives, four integrals (delta, nabla,
//! diamond-alpha and the gamma-weighted diamond integral), and checkers for
//! the integral inequalities the diamond integral satisfies.
//!
//! ```
//! use diamond_core::{expr, quadrature};
//!
//! let ts = expr::parse_scale("[0,1] u {2,4}").unwrap();
//! let f = expr::parse_func("1").unwrap();
//! let r = quadrature::diamond_integral(&ts, &f, 0.0, 4.0, &Default::default()).unwrap();
//! assert!((r.value - 17.0 / 3.0).abs() < 1e-12);
//! ```

pub mod calculus;
pub mod error;
pub mod expr;
pub mod properties;
pub mod quadrature;
pub mod random;
pub mod timescale;

pub use error::{Error, Result};
pub use expr::{parse_func, parse_scale, FuncExpr, RealFn};
pub use quadrature::{IntegralKind, IntegralResult, QuadConfig};
pub use timescale::{PointClass, TimeScale};
