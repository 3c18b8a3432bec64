//! Complex vector and matrix algebra over exact-rational and binary64
//! backends, with a plane-wave interface solver built on top.
//!
//! Module map:
//! - [`scalar`]: the [`Real`](scalar::Real) backends, complex scalars, `ccos`/`cacs`
//! - [`vector`]: componentwise combinators, vector-space arithmetic, flatten/unflatten
//! - [`geometry`]: cross/inner products, norms, orthogonality, collinearity, angle, basis
//! - [`matrix`]: complex matrices as vectors of rows
//! - [`series`]: summability and infinite sums of vector sequences, linearity checks
//! - [`optics`]: plane waves, interfaces, boundary conditions, reflection/refraction
//! - [`rng`]: the documented seeded generator behind every randomized run
//! - [`suites`]: randomized property suites runnable outside the test harness
//! - [`cli`]: scene/report files and the `cxvec` subcommands
//!
//! ```
//! use cxvec::geometry::cdot;
//! use cxvec::scalar::{exact, Exact};
//! use cxvec::vector::{cvector_add, flatten, unflatten, Vector};
//!
//! let u = Vector::new(vec![exact((1, 2), (0, 1)), exact((-3, 1), (2, 5))])?;
//! let v = Vector::new(vec![exact((0, 1), (1, 1)), exact((1, 1), (1, 3))])?;
//! let s = cvector_add(&u, &v)?;
//! assert_eq!(unflatten::<Exact>(&flatten(&s))?, s);
//! let d = cdot(&u, &v)?; // exact, conjugate-linear in v
//! assert_eq!(d, exact((-43, 15), (9, 10)));
//! # Ok::<(), cxvec::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod optics;
pub mod rng;
pub mod scalar;
pub mod series;
pub mod suites;
pub mod vector;

pub use error::{Error, Result};
