//! Exact hyperbolic plane (curvature −1): points, geodesics, rays, and the
//! closed-form trigonometry used by every comparison argument in this crate.
//!
//! Points live on the upper sheet of the unit hyperboloid in Minkowski
//! 3-space with signature `(−,+,+)`:
//!
//! ```text
//! ⟨u, v⟩ = −u₀v₀ + u₁v₁ + u₂v₂,   points: ⟨p, p⟩ = −1, p₀ > 0.
//! ```
//!
//! Distances are `arccosh(−⟨p, q⟩)`, a complete geodesic is the zero set of
//! `⟨·, n⟩` for a unit spacelike normal `n`, and the perpendicular foot of a
//! point on a geodesic has the closed form used in [`HypGeodesic::foot_of`].
//! This representation keeps every construction (feet, intersections,
//! angles) a few dot products away from the defining data, with no model
//! distortion to compensate for. The Poincaré disk appears only as a
//! rendering chart ([`HypPoint::to_disk`]); independent disk-model formulas
//! serve as the test oracle for this module, not as its implementation.
//!
//! All formulas are for curvature exactly −1; callers handle curvature
//! scales `K ≥ −k²` by rescaling lengths with `k` at the boundary of this
//! module.

use crate::scalar::{
    guarded_acos, guarded_acosh, guarded_asin, guarded_atanh, Angle, Length, ScalarError,
    CLAMP_SLACK,
};
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

/// Failures of plane-geometry constructions and closed-form solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlaneError {
    /// Propagated scalar/domain failure.
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    /// A point constructor received coordinates too far off the hyperboloid
    /// to be attributed to rounding.
    #[error("coordinates ({0}, {1}, {2}) are off the unit hyperboloid by more than {CLAMP_SLACK:.0e}")]
    OffShell(f64, f64, f64),
    /// Two coincident (or numerically indistinguishable) points cannot span
    /// a geodesic.
    #[error("cannot span a geodesic: the points are {separation:.3e} apart")]
    CoincidentPoints { separation: f64 },
    /// A perpendicular of the requested height does not exist: the launched
    /// ray diverges from the base line instead of returning to it.
    #[error("divergent height: tan({phi}) · sinh({x}) = {product} ≥ 1")]
    DivergentHeight { phi: f64, x: f64, product: f64 },
    /// A solver input pair violates a feasibility constraint of the
    /// requested figure.
    #[error("infeasible input: {constraint} (got {detail})")]
    Infeasible {
        constraint: &'static str,
        detail: String,
    },
    /// Side lengths that violate the strict triangle inequality.
    #[error("triangle inequality violated: sides ({0}, {1}, {2})")]
    NotATriangle(f64, f64, f64),
}

// ═══════════════════════════════════════════════════════════════════════════
// Minkowski linear algebra
// ═══════════════════════════════════════════════════════════════════════════

/// Minkowski inner product with signature `(−,+,+)`.
#[inline]
#[must_use]
pub fn mdot(u: [f64; 3], v: [f64; 3]) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Minkowski-orthogonal analogue of the cross product: `⟨jcross(u,v), u⟩ =
/// ⟨jcross(u,v), v⟩ = 0`. Obtained by flipping the time component of the
/// Euclidean cross product.
#[inline]
#[must_use]
fn jcross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [
        -(u[1] * v[2] - u[2] * v[1]),
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

#[inline]
fn axpy(a: f64, x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2]]
}

#[inline]
fn scale(a: f64, x: [f64; 3]) -> [f64; 3] {
    [a * x[0], a * x[1], a * x[2]]
}

// ═══════════════════════════════════════════════════════════════════════════
// Points
// ═══════════════════════════════════════════════════════════════════════════

/// A point of the hyperbolic plane on the upper hyperboloid sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypPoint {
    x: [f64; 3],
}

impl HypPoint {
    /// The base point `(1, 0, 0)`.
    #[must_use]
    pub fn origin() -> HypPoint {
        HypPoint { x: [1.0, 0.0, 0.0] }
    }

    /// Validating constructor: renormalizes coordinates whose Minkowski norm
    /// drifted from −1 by at most the rounding slack, rejects anything
    /// farther off shell or on the lower sheet.
    pub fn new(x: [f64; 3]) -> Result<HypPoint, PlaneError> {
        let q = mdot(x, x);
        if !(q + 1.0).abs().is_finite() || (q + 1.0).abs() > CLAMP_SLACK * (1.0 + q.abs()) {
            return Err(PlaneError::OffShell(x[0], x[1], x[2]));
        }
        if x[0] <= 0.0 {
            return Err(PlaneError::OffShell(x[0], x[1], x[2]));
        }
        Ok(Self::renormalized(x))
    }

    /// Projects nearly-on-shell coordinates back onto the hyperboloid.
    /// Used internally after linear combinations of on-shell data.
    #[must_use]
    fn renormalized(x: [f64; 3]) -> HypPoint {
        let q = mdot(x, x);
        debug_assert!(q < 0.0, "renormalizing a non-timelike vector {x:?}");
        let inv = 1.0 / (-q).sqrt();
        let mut y = scale(inv, x);
        if y[0] < 0.0 {
            y = scale(-1.0, y);
        }
        HypPoint { x: y }
    }

    /// The point at distance `s ≥ 0` from the origin in the direction making
    /// angle `bearing` with the first spatial axis.
    #[must_use]
    pub fn from_polar(s: f64, bearing: f64) -> HypPoint {
        HypPoint {
            x: [s.cosh(), s.sinh() * bearing.cos(), s.sinh() * bearing.sin()],
        }
    }

    /// Raw hyperboloid coordinates.
    #[must_use]
    pub fn coords(self) -> [f64; 3] {
        self.x
    }

    /// Geodesic distance to `q`.
    ///
    /// `−⟨p, q⟩ ≥ 1` holds exactly for on-shell points, so a sub-slack
    /// undershoot is clamped to distance 0 and anything worse is an error.
    pub fn distance_to(self, q: HypPoint) -> Result<f64, PlaneError> {
        Ok(guarded_acosh(-mdot(self.x, q.x))?)
    }

    /// Unit tangent vector at `self` pointing toward `q`.
    ///
    /// Errors when the points are closer than `1e-12` (no stable direction).
    pub fn direction_to(self, q: HypPoint) -> Result<[f64; 3], PlaneError> {
        let c = mdot(self.x, q.x); // = -cosh(distance)
        let unnormalized = axpy(c, self.x, q.x); // q + ⟨p,q⟩ p, spacelike
        let norm_sq = mdot(unnormalized, unnormalized); // = cosh²d − 1 = sinh²d
        if norm_sq < 1e-24 {
            return Err(PlaneError::CoincidentPoints {
                separation: norm_sq.max(0.0).sqrt(),
            });
        }
        Ok(scale(1.0 / norm_sq.sqrt(), unnormalized))
    }

    /// Angle at `self` between the directions toward `q` and toward `r`.
    pub fn angle_between(self, q: HypPoint, r: HypPoint) -> Result<Angle, PlaneError> {
        let tq = self.direction_to(q)?;
        let tr = self.direction_to(r)?;
        Ok(Angle::new(guarded_acos(mdot(tq, tr))?)?)
    }

    /// Chart map to the Poincaré disk, for rendering only.
    #[must_use]
    pub fn to_disk(self) -> [f64; 2] {
        let d = 1.0 + self.x[0];
        [self.x[1] / d, self.x[2] / d]
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Geodesics and rays
// ═══════════════════════════════════════════════════════════════════════════

/// A complete geodesic, represented by a unit spacelike Minkowski normal:
/// the geodesic is `{p : ⟨p, n⟩ = 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypGeodesic {
    n: [f64; 3],
}

impl HypGeodesic {
    /// The geodesic through two distinct points.
    pub fn through(p: HypPoint, q: HypPoint) -> Result<HypGeodesic, PlaneError> {
        let w = jcross(p.x, q.x);
        let norm_sq = mdot(w, w); // = sinh²(dist) for unit timelike p, q
        if norm_sq < 1e-24 {
            return Err(PlaneError::CoincidentPoints {
                separation: norm_sq.max(0.0).sqrt(),
            });
        }
        Ok(HypGeodesic {
            n: scale(1.0 / norm_sq.sqrt(), w),
        })
    }

    /// The geodesic carrying a ray (same orientation convention as
    /// [`HypRay::geodesic`]).
    #[must_use]
    pub fn of_ray(ray: &HypRay) -> HypGeodesic {
        ray.geodesic()
    }

    /// The unit normal.
    #[must_use]
    pub fn normal(self) -> [f64; 3] {
        self.n
    }

    /// Signed offset `⟨p, n⟩` of a point: zero on the geodesic, and equal to
    /// `±sinh(dist(p, geodesic))` off it. The sign distinguishes the two
    /// half-planes.
    #[must_use]
    pub fn signed_offset(self, p: HypPoint) -> f64 {
        mdot(p.x, self.n)
    }

    /// Distance from `p` to the geodesic: `arcsinh |⟨p, n⟩|`.
    #[must_use]
    pub fn distance_to(self, p: HypPoint) -> f64 {
        self.signed_offset(p).abs().asinh()
    }

    /// Perpendicular foot of `p` on the geodesic, with the distance.
    ///
    /// Writing `c = ⟨p, n⟩`, the combination `p − c·n` is timelike with
    /// norm `−(1 + c²)` and Minkowski-orthogonal to `n`, so its
    /// renormalization is the unique closest point.
    #[must_use]
    pub fn foot_of(self, p: HypPoint) -> (HypPoint, f64) {
        let c = mdot(p.x, self.n);
        let foot = HypPoint::renormalized(axpy(-c, self.n, p.x));
        (foot, c.abs().asinh())
    }

    /// Intersection point of two geodesics, `None` when they are disjoint
    /// (ultraparallel or asymptotic). Two geodesics meet exactly when
    /// `|⟨n₁, n₂⟩| < 1`, and the meeting point is the timelike
    /// cross-direction of the normals.
    #[must_use]
    pub fn intersect(self, other: HypGeodesic) -> Option<HypPoint> {
        let w = jcross(self.n, other.n);
        let q = mdot(w, w);
        if q >= -1e-24 {
            return None;
        }
        Some(HypPoint::renormalized(w))
    }
}

/// A geodesic ray: a base point plus a unit tangent, parametrized by arc
/// length `s ≥ 0` as `cosh(s)·origin + sinh(s)·dir`.
#[derive(Debug, Clone, Copy)]
pub struct HypRay {
    origin: HypPoint,
    dir: [f64; 3],
}

impl HypRay {
    /// Builds a ray, re-orthogonalizing and normalizing the tangent against
    /// the base point (tolerating rounding-level drift only).
    pub fn new(origin: HypPoint, dir: [f64; 3]) -> Result<HypRay, PlaneError> {
        // Remove any timelike component along the origin, then normalize.
        let lambda = mdot(origin.x, dir);
        let perp = axpy(lambda, origin.x, dir);
        let norm_sq = mdot(perp, perp);
        if !(norm_sq.is_finite() && norm_sq > 1e-24) {
            return Err(PlaneError::Infeasible {
                constraint: "ray direction must be spacelike and independent of the base point",
                detail: format!("residual tangent norm² = {norm_sq:.3e}"),
            });
        }
        Ok(HypRay {
            origin,
            dir: scale(1.0 / norm_sq.sqrt(), perp),
        })
    }

    /// The ray from `p` toward `q` (of which `q` is an interior point).
    pub fn toward(p: HypPoint, q: HypPoint) -> Result<HypRay, PlaneError> {
        Ok(HypRay {
            origin: p,
            dir: p.direction_to(q)?,
        })
    }

    /// The ray from the origin point of the plane at the given bearing.
    #[must_use]
    pub fn from_base(bearing: f64) -> HypRay {
        HypRay {
            origin: HypPoint::origin(),
            dir: [0.0, bearing.cos(), bearing.sin()],
        }
    }

    /// Base point.
    #[must_use]
    pub fn origin(&self) -> HypPoint {
        self.origin
    }

    /// Unit tangent at the base point.
    #[must_use]
    pub fn dir(&self) -> [f64; 3] {
        self.dir
    }

    /// Point at arc length `s` (negative `s` walks the opposite half of the
    /// same geodesic).
    #[must_use]
    pub fn point_at(&self, s: f64) -> HypPoint {
        HypPoint::renormalized(axpy(s.sinh(), self.dir, scale(s.cosh(), self.origin.x)))
    }

    /// Unit tangent at arc length `s`, pointing forward.
    #[must_use]
    pub fn tangent_at(&self, s: f64) -> [f64; 3] {
        axpy(s.cosh(), self.dir, scale(s.sinh(), self.origin.x))
    }

    /// Signed arc-length parameter of a point already known to lie on the
    /// ray's geodesic (e.g. a perpendicular foot).
    #[must_use]
    pub fn param_of(&self, p: HypPoint) -> f64 {
        // p = cosh(s)·o + sinh(s)·dir  ⟹  ⟨p, dir⟩ = sinh(s).
        mdot(p.x, self.dir).asinh()
    }

    /// The carrying geodesic. Its normal is `jcross(origin, dir)`
    /// normalized, so `signed_offset` is positive on the left-hand side of
    /// the ray.
    #[must_use]
    pub fn geodesic(&self) -> HypGeodesic {
        let w = jcross(self.origin.x, self.dir);
        let norm_sq = mdot(w, w);
        debug_assert!(norm_sq > 0.0);
        HypGeodesic {
            n: scale(1.0 / norm_sq.sqrt(), w),
        }
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Closed-form trigonometry
// ═══════════════════════════════════════════════════════════════════════════

/// Height over the base line reached at horizontal run `x` by a geodesic
/// launched at angle `phi`: `arctanh(tan φ · sinh x)`.
///
/// Equivalently: in the right triangle with base leg `x` and angle `phi`
/// adjacent to it, the length of the opposite leg. The height diverges —
/// the launched geodesic never returns over the point at run `x` — exactly
/// when `tan φ · sinh x ≥ 1`, reported as [`PlaneError::DivergentHeight`].
///
/// Domain: `phi ∈ [0, π/2)`, `x ≥ 0` finite.
pub fn perpendicular_height(phi: f64, x: f64) -> Result<f64, PlaneError> {
    if !(0.0..FRAC_PI_2).contains(&phi) {
        return Err(PlaneError::Infeasible {
            constraint: "launch angle must lie in [0, π/2)",
            detail: format!("phi = {phi}"),
        });
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(ScalarError::BadLength(x).into());
    }
    let product = phi.tan() * x.sinh();
    if product >= 1.0 {
        return Err(PlaneError::DivergentHeight { phi, x, product });
    }
    Ok(product.atanh())
}

/// Angle of parallelism at distance `x` from a geodesic:
/// `arctan(1 / sinh x)`.
///
/// This is the infimum of angles under which a ray from a point at distance
/// `x` still escapes without meeting the geodesic, and the limit value of
/// the angle bound for open-ended right triangles with finite side `x`.
/// `x = 0` returns exactly π/2, the continuous boundary value.
pub fn angle_of_parallelism(x: f64) -> Result<Angle, PlaneError> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(ScalarError::BadLength(x).into());
    }
    if x == 0.0 {
        return Ok(Angle::RIGHT);
    }
    Ok(Angle::rad_unchecked((1.0 / x.sinh()).atan()))
}

/// Third side from two sides and the included angle:
/// `c = arccosh(cosh a · cosh b − sinh a · sinh b · cos γ)`.
pub fn law_of_cosines(a: f64, b: f64, gamma: Angle) -> Result<f64, PlaneError> {
    for &s in &[a, b] {
        if !(s.is_finite() && s >= 0.0) {
            return Err(ScalarError::BadLength(s).into());
        }
    }
    let g = gamma.rad();
    // Rewritten as cosh(a−b) + sinh a sinh b (1 − cos γ): both terms are
    // non-negative, so no catastrophic cancellation for small angles.
    let arg = (a - b).cosh() + a.sinh() * b.sinh() * (1.0 - g.cos());
    Ok(guarded_acosh(arg)?)
}

/// Angles `[α, β, γ]` (opposite sides `a`, `b`, `c`) of the plane triangle
/// with the given side lengths.
///
/// Requires all sides positive and the strict triangle inequality; each
/// angle is `arccos((cosh·cosh − cosh_opp)/(sinh·sinh))` over its adjacent
/// sides.
pub fn angles_from_sides(a: f64, b: f64, c: f64) -> Result<[Angle; 3], PlaneError> {
    for &s in &[a, b, c] {
        if !(s.is_finite() && s > 0.0) {
            return Err(ScalarError::BadLength(s).into());
        }
    }
    if a + b <= c || b + c <= a || c + a <= b {
        return Err(PlaneError::NotATriangle(a, b, c));
    }
    let angle_opp = |opp: f64, u: f64, v: f64| -> Result<Angle, PlaneError> {
        let cosv = (u.cosh() * v.cosh() - opp.cosh()) / (u.sinh() * v.sinh());
        Ok(Angle::new(guarded_acos(cosv)?)?)
    };
    Ok([
        angle_opp(a, b, c)?,
        angle_opp(b, c, a)?,
        angle_opp(c, a, b)?,
    ])
}

/// Side of a four-right-angle geodesic pentagon.
///
/// In a pentagon with four right angles and one angle `alpha` at vertex
/// `A`, with `a1`, `a2` the two sides not adjacent to `A`, the relation
/// `sinh a₁ · sinh a₂ = cosh a₄ · sin α` determines the side `a₄` opposite
/// `a₂`. Feasibility requires `sinh a₁ sinh a₂ > sin α`.
pub fn four_right_pentagon_side(a1: f64, a2: f64, alpha: Angle) -> Result<f64, PlaneError> {
    for &s in &[a1, a2] {
        if !(s.is_finite() && s > 0.0) {
            return Err(ScalarError::BadLength(s).into());
        }
    }
    let s = alpha.rad().sin();
    if s <= 0.0 {
        return Err(PlaneError::Infeasible {
            constraint: "pentagon angle must have positive sine",
            detail: format!("alpha = {}", alpha.rad()),
        });
    }
    let ratio = a1.sinh() * a2.sinh() / s;
    if ratio < 1.0 - CLAMP_SLACK {
        return Err(PlaneError::Infeasible {
            constraint: "sinh(a1)·sinh(a2) must be at least sin(alpha)",
            detail: format!("sinh product / sin = {ratio}"),
        });
    }
    Ok(guarded_acosh(ratio)?)
}

// ═══════════════════════════════════════════════════════════════════════════
// Right-triangle solver
// ═══════════════════════════════════════════════════════════════════════════

/// A solved triangle with a right angle between legs `a` and `b`; `alpha`,
/// `beta` are opposite `a`, `b`, and `c` is the hypotenuse.
///
/// `open_ended = true` marks an asymptotic solution: the vertex opposite
/// the finite data escaped to infinity, infinite sides carry the tagged
/// state, and the angle at infinity is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypTriangle {
    pub a: Length,
    pub b: Length,
    pub c: Length,
    pub alpha: Angle,
    pub beta: Angle,
    pub gamma: Angle,
    pub open_ended: bool,
}

/// A pair of known quantities determining a right triangle. Names follow
/// the [`HypTriangle`] conventions: `alpha` is opposite leg `a`, `beta`
/// opposite leg `b`, and the right angle sits between the legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RightPair {
    /// Both legs.
    Legs { a: f64, b: f64 },
    /// Leg `a` and the hypotenuse.
    LegAHyp { a: f64, c: f64 },
    /// Leg `b` and the hypotenuse.
    LegBHyp { b: f64, c: f64 },
    /// Leg `a` and its opposite angle `alpha`.
    LegAOpposite { a: f64, alpha: f64 },
    /// Leg `a` and its adjacent acute angle `beta` (the one opposite `b`).
    LegAAdjacent { a: f64, beta: f64 },
    /// Leg `b` and its opposite angle `beta`.
    LegBOpposite { b: f64, beta: f64 },
    /// Leg `b` and its adjacent acute angle `alpha` (the one opposite `a`).
    LegBAdjacent { b: f64, alpha: f64 },
    /// Hypotenuse and `alpha`.
    HypAlpha { c: f64, alpha: f64 },
    /// Hypotenuse and `beta`.
    HypBeta { c: f64, beta: f64 },
    /// The two acute angles.
    Angles { alpha: f64, beta: f64 },
}

fn check_len(name: &'static str, v: f64) -> Result<f64, PlaneError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(PlaneError::Infeasible {
            constraint: "side lengths must be finite and non-negative",
            detail: format!("{name} = {v}"),
        })
    }
}

/// Acute-triangle angle inputs must lie in `[0, π/2)`; π/2 and above is a
/// named constraint violation (the non-right angles of a right triangle are
/// strictly acute, and exactly-π/2 inputs describe no triangle at all).
fn check_acute(name: &'static str, v: f64) -> Result<f64, PlaneError> {
    if v.is_finite() && (0.0..FRAC_PI_2).contains(&v) {
        Ok(v)
    } else {
        Err(PlaneError::Infeasible {
            constraint: "non-right angles of a right triangle must lie in [0, π/2)",
            detail: format!("{name} = {v}"),
        })
    }
}

fn closed(a: f64, b: f64, c: f64, alpha: f64, beta: f64) -> Result<HypTriangle, PlaneError> {
    Ok(HypTriangle {
        a: Length::new(a)?,
        b: Length::new(b)?,
        c: Length::new(c)?,
        alpha: Angle::new(alpha)?,
        beta: Angle::new(beta)?,
        gamma: Angle::RIGHT,
        open_ended: false,
    })
}

/// Solves a right triangle from any two known quantities.
///
/// The solver is total over its feasible domain and explicit about the rest:
///
/// * degenerate data (a zero leg) produces the collapsed triangle rather
///   than an error, as the continuous limit;
/// * data forcing the far vertex to infinity — `LegAAdjacent` with
///   `tan β · sinh a ≥ 1`, its mirror, or a zero opposite angle — yields an
///   `open_ended` triangle with tagged infinite sides and angle 0 at
///   infinity;
/// * genuinely inconsistent pairs (angle ≥ π/2, hypotenuse shorter than a
///   leg, `α + β ≥ π/2`) produce [`PlaneError::Infeasible`] naming the
///   violated constraint.
///
/// Together with the cross-identities this makes re-solving from any other
/// pair of a solved triangle's quantities reproduce it; the test suite
/// drives all 10 × 10 round trips.
pub fn solve_right_triangle(known: RightPair) -> Result<HypTriangle, PlaneError> {
    use RightPair::*;
    match known {
        Legs { a, b } => {
            let a = check_len("a", a)?;
            let b = check_len("b", b)?;
            if a == 0.0 && b == 0.0 {
                return Err(PlaneError::Infeasible {
                    constraint: "at least one leg must be positive",
                    detail: "a = b = 0".into(),
                });
            }
            let c = guarded_acosh(a.cosh() * b.cosh())?;
            // tan α = tanh a / sinh b; a zero denominator correctly gives
            // atan(+∞) = π/2 for the collapsed triangle.
            let alpha = (a.tanh() / b.sinh()).atan();
            let beta = (b.tanh() / a.sinh()).atan();
            closed(a, b, c, alpha, beta)
        }
        LegAHyp { a, c } => {
            let a = check_len("a", a)?;
            let c = check_len("c", c)?;
            if c == 0.0 {
                return Err(PlaneError::Infeasible {
                    constraint: "hypotenuse must be positive",
                    detail: "c = 0".into(),
                });
            }
            let cosh_b = c.cosh() / a.cosh();
            if cosh_b < 1.0 - CLAMP_SLACK {
                return Err(PlaneError::Infeasible {
                    constraint: "hypotenuse must be at least as long as each leg",
                    detail: format!("a = {a}, c = {c}"),
                });
            }
            let b = guarded_acosh(cosh_b)?;
            let alpha = guarded_asin(a.sinh() / c.sinh())?;
            let beta = (b.tanh() / a.sinh()).atan();
            closed(a, b, c, alpha, beta)
        }
        LegBHyp { b, c } => {
            let t = solve_right_triangle(LegAHyp { a: b, c })?;
            Ok(swap_legs(t))
        }
        LegAOpposite { a, alpha } => {
            let a = check_len("a", a)?;
            let alpha = check_acute("alpha", alpha)?;
            if alpha == 0.0 {
                if a == 0.0 {
                    return Err(PlaneError::Infeasible {
                        constraint: "a = 0 with alpha = 0 determines no triangle",
                        detail: "both zero".into(),
                    });
                }
                // Far vertex at infinity: the asymptotic right triangle over
                // leg a, whose finite angle is the angle of parallelism.
                return Ok(HypTriangle {
                    a: Length::finite(a),
                    b: Length::Infinite,
                    c: Length::Infinite,
                    alpha: Angle::ZERO,
                    beta: angle_of_parallelism(a)?,
                    gamma: Angle::RIGHT,
                    open_ended: true,
                });
            }
            let c = (a.sinh() / alpha.sin()).asinh();
            let cosh_b = c.cosh() / a.cosh();
            let b = guarded_acosh(cosh_b)?;
            let beta = guarded_asin(alpha.cos() / a.cosh())?;
            closed(a, b, c, alpha, beta)
        }
        LegBOpposite { b, beta } => {
            let t = solve_right_triangle(LegAOpposite { a: b, alpha: beta })?;
            Ok(swap_legs(t))
        }
        LegAAdjacent { a, beta } => {
            let a = check_len("a", a)?;
            let beta = check_acute("beta", beta)?;
            let product = beta.tan() * a.sinh();
            if product >= 1.0 {
                // The perpendicular over leg a at angle β never closes up:
                // open-ended triangle, vertex at infinity.
                return Ok(HypTriangle {
                    a: Length::finite(a),
                    b: Length::Infinite,
                    c: Length::Infinite,
                    alpha: Angle::ZERO,
                    beta: Angle::rad_unchecked(beta),
                    gamma: Angle::RIGHT,
                    open_ended: true,
                });
            }
            let b = product.atanh();
            let c = guarded_acosh(a.cosh() * b.cosh())?;
            let alpha = guarded_acos(a.cosh() * beta.sin())?;
            closed(a, b, c, alpha, beta)
        }
        LegBAdjacent { b, alpha } => {
            let t = solve_right_triangle(LegAAdjacent { a: b, beta: alpha })?;
            Ok(swap_legs(t))
        }
        HypAlpha { c, alpha } => {
            let c = check_len("c", c)?;
            let alpha = check_acute("alpha", alpha)?;
            let a = (alpha.sin() * c.sinh()).asinh();
            let b = guarded_atanh(alpha.cos() * c.tanh())?;
            let beta = (b.tanh() / a.sinh()).atan();
            closed(a, b, c, alpha, beta)
        }
        HypBeta { c, beta } => {
            let t = solve_right_triangle(HypAlpha { c, alpha: beta })?;
            Ok(swap_legs(t))
        }
        Angles { alpha, beta } => {
            let alpha = check_acute("alpha", alpha)?;
            let beta = check_acute("beta", beta)?;
            if alpha == 0.0 && beta == 0.0 {
                return Err(PlaneError::Infeasible {
                    constraint: "at least one angle must be positive",
                    detail: "alpha = beta = 0".into(),
                });
            }
            if alpha == 0.0 || beta == 0.0 {
                // One vertex at infinity: the asymptotic right triangle with
                // the remaining finite angle φ has finite leg the inverse
                // angle of parallelism, sinh(leg) = cot φ.
                let (finite_angle, alpha_is_zero) =
                    if alpha == 0.0 { (beta, true) } else { (alpha, false) };
                let leg = (1.0 / finite_angle.tan()).asinh();
                let (a, b, al, be) = if alpha_is_zero {
                    // β finite ⟹ its opposite leg b infinite, leg a finite.
                    (Length::finite(leg), Length::Infinite, 0.0, finite_angle)
                } else {
                    (Length::Infinite, Length::finite(leg), finite_angle, 0.0)
                };
                return Ok(HypTriangle {
                    a,
                    b,
                    c: Length::Infinite,
                    alpha: Angle::rad_unchecked(al),
                    beta: Angle::rad_unchecked(be),
                    gamma: Angle::RIGHT,
                    open_ended: true,
                });
            }
            if alpha + beta >= FRAC_PI_2 {
                return Err(PlaneError::Infeasible {
                    constraint: "acute angles of a hyperbolic right triangle satisfy α + β < π/2",
                    detail: format!("alpha + beta = {}", alpha + beta),
                });
            }
            let c = guarded_acosh(1.0 / (alpha.tan() * beta.tan()))?;
            let a = guarded_acosh(alpha.cos() / beta.sin())?;
            let b = guarded_acosh(beta.cos() / alpha.sin())?;
            closed(a, b, c, alpha, beta)
        }
    }
}

/// Swaps the roles of the two legs (and their opposite angles).
fn swap_legs(t: HypTriangle) -> HypTriangle {
    HypTriangle {
        a: t.b,
        b: t.a,
        c: t.c,
        alpha: t.beta,
        beta: t.alpha,
        gamma: t.gamma,
        open_ended: t.open_ended,
    }
}
