//! Comparison geometry for complete surfaces with curvature bounded below.
//!
//! The crate assembles, in one place, the closed-form side of low-curvature
//! surface geometry — hyperbolic trigonometry, collar and crossing-length
//! bounds, triangle comparison — together with the numerical side needed to
//! exercise those bounds on synthesized surfaces: metric kernels in
//! geodesic polar form, geodesic integration, boundary distance fields, and
//! the level-set diagnostics built on top of them.
//!
//! Module map:
//!
//! * [`scalar`] — validated scalar vocabulary (`Length`, `Angle`,
//!   `CurvatureScale`) and guarded inverse trig;
//! * [`plane`] — the curvature −1 plane: hyperboloid-model points,
//!   geodesics and rays, the right-triangle solver, and the closed-form
//!   trigonometric identities everything else leans on;
//! * [`collar`] — collar widths, crossing-length bounds, the stable
//!   `sinh`-product inequality kernel, and the side-excess constant;
//! * [`comparison`] — model-triangle constructors, right-triangle
//!   comparison wrappers, the open-ended angle bound, and the flip-flop
//!   perpendicular-foot procedure.
//!
//! All angles are radians; all lengths are in units of the curvature scale
//! unless a function takes an explicit scale parameter.

pub mod collar;
pub mod comparison;
pub mod plane;
pub mod scalar;
pub mod surface;

pub use plane::{solve_right_triangle, HypTriangle, PlaneError, RightPair};
pub use scalar::{Angle, CurvatureScale, Length, ScalarError};
pub use surface::{FermiMetric, SurfaceError};
