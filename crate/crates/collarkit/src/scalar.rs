//! Shared scalar types and guarded inverse-trigonometric helpers.
//!
//! Every quantity in this crate is a plain `f64` underneath, but the public
//! types encode the two invariants that matter everywhere:
//!
//! * a [`Length`] is non-negative and *finite unless explicitly tagged
//!   infinite* — infinity is a first-class geometric outcome (open-ended
//!   triangles, divergent heights), never a large float smuggled through
//!   arithmetic;
//! * an [`Angle`] lives in `[0, π]` radians. Degrees do not appear anywhere.
//!
//! Inverse trig and hyperbolic functions are evaluated through guarded
//! wrappers: an argument outside the mathematical domain is clamped only when
//! the overshoot is at most [`CLAMP_SLACK`] (attributable to rounding in a
//! well-posed computation); anything larger is reported as a domain error
//! instead of being silently flattened.

use thiserror::Error;

/// Largest domain overshoot that is clamped instead of rejected.
///
/// Residuals up to `1e-8` are what healthy double-precision evaluations of
/// the formulas in this crate produce near domain edges (e.g. `cos` of an
/// angle of a degenerate triangle landing at `1 + 4e-16`). Violations above
/// this are evidence of a bad input or a broken caller, not of rounding.
pub const CLAMP_SLACK: f64 = 1e-8;

/// Scalar-level failure: an argument left the domain of an inverse function
/// by more than [`CLAMP_SLACK`], or a constructor received an invalid float.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    /// `acosh`, `asin`, `acos`, or `atanh` received an argument outside its
    /// domain by more than the permitted rounding slack.
    #[error("{function}({argument}) is outside the domain by {residual:.3e} (> {CLAMP_SLACK:.0e} slack)")]
    OutOfDomain {
        function: &'static str,
        argument: f64,
        residual: f64,
    },
    /// A `Length` was constructed from a negative, NaN, or non-finite float.
    #[error("invalid length {0}: must be a finite non-negative float (use the infinite tag for ∞)")]
    BadLength(f64),
    /// An `Angle` was constructed outside `[0, π]` radians.
    #[error("invalid angle {0} rad: must lie in [0, π]")]
    BadAngle(f64),
    /// A curvature scale was constructed from a non-positive or non-finite
    /// float.
    #[error("invalid curvature scale {0}: must be a finite positive float")]
    BadCurvatureScale(f64),
}

// ═══════════════════════════════════════════════════════════════════════════
// Length
// ═══════════════════════════════════════════════════════════════════════════

/// A non-negative geodesic length, finite or explicitly infinite.
///
/// The infinite state is a tag, not `f64::INFINITY` in disguise: comparison
/// constructions legitimately produce open-ended sides, and callers must
/// decide consciously what to do with them instead of feeding `inf` into the
/// next formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Length {
    /// A finite length `≥ 0`.
    Finite(f64),
    /// An explicitly open-ended (infinite) length.
    Infinite,
}

impl Length {
    /// Zero length.
    pub const ZERO: Length = Length::Finite(0.0);

    /// Validating constructor for untrusted input.
    pub fn new(value: f64) -> Result<Length, ScalarError> {
        if value.is_finite() && value >= 0.0 {
            Ok(Length::Finite(value))
        } else {
            Err(ScalarError::BadLength(value))
        }
    }

    /// Constructor for values the caller has already established to be
    /// finite and non-negative. Panics (debug) on violation.
    #[must_use]
    pub fn finite(value: f64) -> Length {
        debug_assert!(
            value.is_finite() && value >= 0.0,
            "Length::finite({value}) violates the length invariant"
        );
        Length::Finite(value)
    }

    /// The finite value, if there is one.
    #[must_use]
    pub fn value(self) -> Option<f64> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    /// The finite value; panics with `context` if the length is infinite.
    ///
    /// Use only where the surrounding logic has already excluded the
    /// open-ended case.
    #[must_use]
    pub fn expect_finite(self, context: &str) -> f64 {
        match self {
            Length::Finite(v) => v,
            Length::Infinite => panic!("infinite length where finite was required: {context}"),
        }
    }

    /// Whether this is the tagged infinite state.
    #[must_use]
    pub fn is_infinite(self) -> bool {
        matches!(self, Length::Infinite)
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Length) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        match (self, other) {
            (Length::Infinite, Length::Infinite) => Some(Ordering::Equal),
            (Length::Infinite, Length::Finite(_)) => Some(Ordering::Greater),
            (Length::Finite(_), Length::Infinite) => Some(Ordering::Less),
            (Length::Finite(a), Length::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Angle
// ═══════════════════════════════════════════════════════════════════════════

/// An angle in radians, constrained to `[0, π]`.
///
/// All angles in this crate are unsigned angles between directions at a
/// point, so the upper half-turn range is exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    /// The zero angle.
    pub const ZERO: Angle = Angle(0.0);
    /// A right angle, π/2.
    pub const RIGHT: Angle = Angle(std::f64::consts::FRAC_PI_2);
    /// A straight angle, π.
    pub const STRAIGHT: Angle = Angle(std::f64::consts::PI);

    /// Validating constructor; clamps rounding-level overshoot of the
    /// `[0, π]` range (up to [`CLAMP_SLACK`]) and rejects anything worse.
    pub fn new(radians: f64) -> Result<Angle, ScalarError> {
        if !radians.is_finite() {
            return Err(ScalarError::BadAngle(radians));
        }
        if radians < 0.0 {
            return if radians >= -CLAMP_SLACK {
                Ok(Angle(0.0))
            } else {
                Err(ScalarError::BadAngle(radians))
            };
        }
        if radians > std::f64::consts::PI {
            return if radians <= std::f64::consts::PI + CLAMP_SLACK {
                Ok(Angle(std::f64::consts::PI))
            } else {
                Err(ScalarError::BadAngle(radians))
            };
        }
        Ok(Angle(radians))
    }

    /// Constructor for values already established to be in range.
    /// Panics (debug) on violation.
    #[must_use]
    pub fn rad_unchecked(radians: f64) -> Angle {
        debug_assert!(
            (-CLAMP_SLACK..=std::f64::consts::PI + CLAMP_SLACK).contains(&radians),
            "Angle::rad_unchecked({radians}) outside [0, π]"
        );
        Angle(radians.clamp(0.0, std::f64::consts::PI))
    }

    /// The value in radians.
    #[must_use]
    pub fn rad(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Curvature scale
// ═══════════════════════════════════════════════════════════════════════════

/// The scale `k > 0` of a curvature lower bound `K ≥ -k²`.
///
/// All closed-form bounds in this crate are stated for `K ≥ -1` and rescaled
/// through this factor: lengths multiply by `k` going into a formula and the
/// result divides by `k` coming out.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CurvatureScale(f64);

impl CurvatureScale {
    /// The normalized scale `k = 1` (curvature bound `K ≥ -1`).
    pub const UNIT: CurvatureScale = CurvatureScale(1.0);

    /// Validating constructor: `k` must be finite and strictly positive.
    pub fn new(k: f64) -> Result<CurvatureScale, ScalarError> {
        if k.is_finite() && k > 0.0 {
            Ok(CurvatureScale(k))
        } else {
            Err(ScalarError::BadCurvatureScale(k))
        }
    }

    /// The scale factor.
    #[must_use]
    pub fn get(self) -> f64 {
        self.0
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Guarded inverse functions
// ═══════════════════════════════════════════════════════════════════════════

/// `acosh` with clamping of arguments in `[1 - CLAMP_SLACK, 1)`.
pub fn guarded_acosh(x: f64) -> Result<f64, ScalarError> {
    if x >= 1.0 {
        Ok(x.acosh())
    } else if x >= 1.0 - CLAMP_SLACK {
        Ok(0.0)
    } else {
        Err(ScalarError::OutOfDomain {
            function: "acosh",
            argument: x,
            residual: 1.0 - x,
        })
    }
}

/// `acos` with clamping of arguments overshooting `[-1, 1]` by at most
/// [`CLAMP_SLACK`].
pub fn guarded_acos(x: f64) -> Result<f64, ScalarError> {
    if x.abs() <= 1.0 {
        Ok(x.acos())
    } else if x.abs() <= 1.0 + CLAMP_SLACK {
        Ok(x.clamp(-1.0, 1.0).acos())
    } else {
        Err(ScalarError::OutOfDomain {
            function: "acos",
            argument: x,
            residual: x.abs() - 1.0,
        })
    }
}

/// `asin` with clamping of arguments overshooting `[-1, 1]` by at most
/// [`CLAMP_SLACK`].
pub fn guarded_asin(x: f64) -> Result<f64, ScalarError> {
    if x.abs() <= 1.0 {
        Ok(x.asin())
    } else if x.abs() <= 1.0 + CLAMP_SLACK {
        Ok(x.clamp(-1.0, 1.0).asin())
    } else {
        Err(ScalarError::OutOfDomain {
            function: "asin",
            argument: x,
            residual: x.abs() - 1.0,
        })
    }
}

/// `atanh` for arguments strictly inside `(-1, 1)`; no clamping, because an
/// argument at or beyond ±1 means a genuinely divergent quantity that the
/// caller must classify (e.g. an open-ended triangle), not a rounding issue.
pub fn guarded_atanh(x: f64) -> Result<f64, ScalarError> {
    if x.abs() < 1.0 {
        Ok(x.atanh())
    } else {
        Err(ScalarError::OutOfDomain {
            function: "atanh",
            argument: x,
            residual: x.abs() - 1.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn length_rejects_bad_floats() {
        assert!(Length::new(-0.1).is_err());
        assert!(Length::new(f64::NAN).is_err());
        assert!(Length::new(f64::INFINITY).is_err());
        assert_eq!(Length::new(2.5).unwrap().value(), Some(2.5));
    }

    #[test]
    fn length_ordering_puts_infinite_on_top() {
        assert!(Length::Infinite > Length::finite(1e12));
        assert!(Length::finite(1.0) < Length::finite(2.0));
        assert_eq!(
            Length::Infinite.partial_cmp(&Length::Infinite),
            Some(std::cmp::Ordering::Equal)
        );
    }

    #[test]
    fn angle_clamps_rounding_overshoot_only() {
        assert_eq!(Angle::new(-1e-12).unwrap().rad(), 0.0);
        assert_eq!(Angle::new(PI + 1e-12).unwrap().rad(), PI);
        assert!(Angle::new(-1e-3).is_err());
        assert!(Angle::new(PI + 1e-3).is_err());
    }

    #[test]
    fn guarded_acosh_clamps_small_undershoot() {
        assert_eq!(guarded_acosh(1.0 - 1e-9).unwrap(), 0.0);
        assert!(guarded_acosh(1.0 - 1e-6).is_err());
        assert!((guarded_acosh(2.0).unwrap() - 2.0f64.acosh()).abs() == 0.0);
    }

    #[test]
    fn guarded_acos_clamps_small_overshoot() {
        assert_eq!(guarded_acos(1.0 + 1e-9).unwrap(), 0.0);
        assert_eq!(guarded_acos(-1.0 - 1e-9).unwrap(), PI);
        assert!(guarded_acos(1.0 + 1e-6).is_err());
    }

    #[test]
    fn guarded_atanh_never_clamps() {
        assert!(guarded_atanh(1.0).is_err());
        assert!(guarded_atanh(1.0 - 1e-12).is_ok());
    }
}
