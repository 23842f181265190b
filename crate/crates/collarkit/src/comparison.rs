//! Triangle comparison against the curvature −1 model, and the flip-flop
//! perpendicular-foot procedure for open-ended triangles.
//!
//! On a complete surface with `K ≥ −1`, a geodesic triangle compares
//! against model triangles in the hyperbolic plane two ways:
//!
//! * same three side lengths → the model angles are *lower* bounds for the
//!   measured angles ([`plane_angles`]);
//! * two sides and the included angle → the model third side is an *upper*
//!   bound for the measured one ([`plane_third_side`]).
//!
//! The right-triangle wrappers expose the same comparisons specialized to a
//! right angle, where the model solution is closed-form and each known pair
//! carries its own comparison direction (documented per function). The
//! entire module computes **model** quantities; the inequalities against a
//! measured surface triangle are asserted by the sampling harnesses built
//! on the surface engine, not here.
//!
//! The flip-flop procedure ([`run_flip_flop`]) iterates perpendicular feet
//! between the two infinite sides of an open-ended triangle, executed
//! exactly in the hyperbolic plane: dropping a perpendicular alternately
//! from the latest foot to the other ray. The outward angles `φ_j` at the
//! feet converge to π/2, and two per-step certified bounds hold in the
//! plane unconditionally: `sin φ_j = sinh L(s_{j+1}) / sinh L(s_j)` (a
//! right-triangle identity between consecutive segments) and
//! `φ_j ≥ arctan(1 / sinh L(s_j))` (the angle of parallelism at the
//! segment's length).

use crate::plane::{
    angles_from_sides, angle_of_parallelism, law_of_cosines, mdot, solve_right_triangle,
    HypPoint, HypRay, HypTriangle, PlaneError, RightPair,
};
use crate::scalar::{guarded_acos, Angle, ScalarError};
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

/// Failures of comparison constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComparisonError {
    /// Propagated plane-geometry failure.
    #[error(transparent)]
    Plane(#[from] PlaneError),
    /// Propagated scalar failure.
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    /// The open-triangle configuration is invalid (rays meet, a foot misses
    /// its ray, or a parameter is out of range).
    #[error("invalid open-triangle configuration: {0}")]
    BadConfig(String),
}

// ═══════════════════════════════════════════════════════════════════════════
// Model triangles from measured data
// ═══════════════════════════════════════════════════════════════════════════

/// A model triangle with prescribed side lengths: its angles are the
/// comparison *lower* bounds for any surface triangle with `K ≥ −1` and
/// the same sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Angle opposite `a`.
    pub alpha: Angle,
    /// Angle opposite `b`.
    pub beta: Angle,
    /// Angle opposite `c`.
    pub gamma: Angle,
}

/// Model angles of the hyperbolic triangle with sides `a`, `b`, `c`
/// (strict triangle inequality required).
pub fn plane_angles(a: f64, b: f64, c: f64) -> Result<ModelAngles, ComparisonError> {
    let [alpha, beta, gamma] = angles_from_sides(a, b, c)?;
    Ok(ModelAngles {
        a,
        b,
        c,
        alpha,
        beta,
        gamma,
    })
}

/// A model triangle with two prescribed sides and the included angle: its
/// third side is the comparison *upper* bound for any surface triangle
/// with `K ≥ −1`, the same two sides, and the same included angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelThirdSide {
    pub a: f64,
    pub b: f64,
    pub gamma: Angle,
    /// The model third side, an upper bound for the measured one.
    pub c_bar: f64,
}

/// Model third side of the hyperbolic triangle with sides `a`, `b` and
/// included angle `gamma`.
pub fn plane_third_side(a: f64, b: f64, gamma: Angle) -> Result<ModelThirdSide, ComparisonError> {
    let c_bar = law_of_cosines(a, b, gamma)?;
    Ok(ModelThirdSide { a, b, gamma, c_bar })
}

// ═══════════════════════════════════════════════════════════════════════════
// Right-triangle comparisons
// ═══════════════════════════════════════════════════════════════════════════

/// Model right triangle from the two legs.
///
/// Against a surface right triangle (`K ≥ −1`) with the same legs, the
/// model angles are lower bounds (`α′ ≤ α`, `β′ ≤ β`) and the model
/// hypotenuse is an upper bound (`c′ ≥ c`).
pub fn right_from_legs(a: f64, b: f64) -> Result<HypTriangle, ComparisonError> {
    Ok(solve_right_triangle(RightPair::Legs { a, b })?)
}

/// Model right triangle from leg `a` and its *adjacent* acute angle `beta`
/// (the one opposite the other leg).
///
/// Against a surface right triangle with the same `a` and `β`, the model
/// satisfies `α′ ≤ α`, `b′ ≥ b`, `c′ ≥ c`. When `tan β · sinh a ≥ 1` the
/// model triangle is open-ended (`b′ = c′ = ∞`, `α′ = 0`): the
/// perpendicular erected over `a` at angle `β` never returns to the other
/// side, and the surface inequalities hold vacuously-strongly (`b`, `c`
/// may be anything finite).
pub fn right_from_leg_and_adjacent_angle(
    a: f64,
    beta: f64,
) -> Result<HypTriangle, ComparisonError> {
    Ok(solve_right_triangle(RightPair::LegAAdjacent { a, beta })?)
}

/// Model right triangle from leg `b` and its *opposite* acute angle `beta`.
///
/// Against a surface right triangle with the same `b` and `β`, the model
/// satisfies `α′ ≤ α` and `a′ ≤ a`. There is **no general comparison for
/// the hypotenuse** under this hypothesis pair — callers must not read one
/// out of the returned model value `c′`; only the pairings of
/// [`right_from_opposite_angle`] license `c` comparisons.
pub fn right_from_leg_and_opposite_angle(
    b: f64,
    beta: f64,
) -> Result<HypTriangle, ComparisonError> {
    Ok(solve_right_triangle(RightPair::LegBOpposite { b, beta })?)
}

/// The given side in [`right_from_opposite_angle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GivenSide {
    /// The hypotenuse is prescribed; comparison yields `b′ ≥ b`, `a′ ≤ a`.
    Hypotenuse(f64),
    /// The leg opposite the given angle is prescribed; comparison yields
    /// `c′ ≤ c`.
    OppositeLeg(f64),
}

/// Model right triangle from an acute angle `beta` and one more side,
/// either the hypotenuse or the leg opposite `beta`.
///
/// Against a surface right triangle with the same `β`: prescribing the
/// hypotenuse gives `b′ ≥ b` and `a′ ≤ a`; prescribing the opposite leg
/// gives `c′ ≤ c`. The two cases invert each other.
pub fn right_from_opposite_angle(
    beta: f64,
    given: GivenSide,
) -> Result<HypTriangle, ComparisonError> {
    let pair = match given {
        GivenSide::Hypotenuse(c) => RightPair::HypBeta { c, beta },
        GivenSide::OppositeLeg(b) => RightPair::LegBOpposite { b, beta },
    };
    Ok(solve_right_triangle(pair)?)
}

// ═══════════════════════════════════════════════════════════════════════════
// Open-ended triangle angle bound
// ═══════════════════════════════════════════════════════════════════════════

/// Certified lower bound for the acute angle of an open-ended triangle
/// (`K ≥ −1`) with finite side `a_len` and a right angle at the other
/// finite vertex: the angle of parallelism `arctan(1 / sinh a_len)`.
pub fn open_triangle_angle_bound(a_len: f64) -> Result<Angle, ComparisonError> {
    if !(a_len.is_finite() && a_len > 0.0) {
        return Err(ScalarError::BadLength(a_len).into());
    }
    Ok(angle_of_parallelism(a_len)?)
}

/// Finite-height form of the open-ended angle bound: when the far vertex
/// sits at distance `t > a_len` instead of at infinity, the acute angle is
/// at least `arctan(tanh(t − a_len) / sinh a_len)`.
///
/// Strictly increasing in `t` with limit [`open_triangle_angle_bound`];
/// the gap to the limit is below `1e−6` by `t = a_len + 8`.
pub fn open_triangle_angle_bound_finite(a_len: f64, t: f64) -> Result<Angle, ComparisonError> {
    if !(a_len.is_finite() && a_len > 0.0) {
        return Err(ScalarError::BadLength(a_len).into());
    }
    if !(t.is_finite() && t > a_len) {
        return Err(ComparisonError::BadConfig(format!(
            "far-vertex distance must exceed the finite side (t = {t}, a = {a_len})"
        )));
    }
    Ok(Angle::rad_unchecked(
        ((t - a_len).tanh() / a_len.sinh()).atan(),
    ))
}

// ═══════════════════════════════════════════════════════════════════════════
// Flip-flop procedure
// ═══════════════════════════════════════════════════════════════════════════

/// An open-ended triangle in the hyperbolic plane: a finite side of length
/// `a_len` from vertex `q` to vertex `r`, with a ray leaving `q` at
/// interior angle `angle_q` and a ray leaving `r` at interior angle
/// `angle_r`, both on the same side of the base and both acute. The
/// configuration is open-ended when the two rays do not meet.
///
/// Canonical placement: `q` at the model base point, `r` along the first
/// spatial axis, rays opening into the upper half.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenTriangleConfig {
    pub a_len: f64,
    pub angle_q: f64,
    pub angle_r: f64,
}

impl OpenTriangleConfig {
    /// Validates ranges (`a_len > 0`, both angles in `(0, π/2)`).
    pub fn new(a_len: f64, angle_q: f64, angle_r: f64) -> Result<Self, ComparisonError> {
        if !(a_len.is_finite() && a_len > 0.0) {
            return Err(ComparisonError::BadConfig(format!(
                "finite side must be positive (a_len = {a_len})"
            )));
        }
        for (name, v) in [("angle_q", angle_q), ("angle_r", angle_r)] {
            if !(v.is_finite() && 0.0 < v && v < FRAC_PI_2) {
                return Err(ComparisonError::BadConfig(format!(
                    "ray angles must lie strictly inside (0, π/2) ({name} = {v})"
                )));
            }
        }
        Ok(OpenTriangleConfig {
            a_len,
            angle_q,
            angle_r,
        })
    }

    /// The two rays in canonical placement: `(ray at q, ray at r)`.
    pub fn rays(&self) -> Result<(HypRay, HypRay), ComparisonError> {
        let q = HypPoint::origin();
        let r = HypPoint::from_polar(self.a_len, 0.0);
        // At q the base direction q→r has bearing 0; rotate by angle_q
        // toward the upper half.
        let ray_q = HypRay::new(
            q,
            [0.0, self.angle_q.cos(), self.angle_q.sin()],
        )?;
        // At r, rotate the direction r→q by angle_r toward the upper half.
        // The quarter-turn of the back-pointing direction lands in the lower
        // half, so flip it.
        let e1 = r.direction_to(q)?;
        let e2 = rotate_quarter(r, e1).map(|v| -v);
        let dir = [
            self.angle_r.cos() * e1[0] + self.angle_r.sin() * e2[0],
            self.angle_r.cos() * e1[1] + self.angle_r.sin() * e2[1],
            self.angle_r.cos() * e1[2] + self.angle_r.sin() * e2[2],
        ];
        let ray_r = HypRay::new(r, dir)?;
        Ok((ray_q, ray_r))
    }

    /// Whether the two rays (not just their geodesics) meet; a
    /// configuration with meeting rays is a closed triangle, not an
    /// open-ended one.
    pub fn rays_intersect(&self) -> Result<bool, ComparisonError> {
        let (ray_q, ray_r) = self.rays()?;
        let Some(x) = ray_q.geodesic().intersect(ray_r.geodesic()) else {
            return Ok(false);
        };
        Ok(ray_q.param_of(x) >= 0.0 && ray_r.param_of(x) >= 0.0)
    }
}

/// The quarter-turn of a unit tangent `e1` at `p`, oriented so that at the
/// base point the turn maps the first spatial axis onto the second.
fn rotate_quarter(p: HypPoint, e1: [f64; 3]) -> [f64; 3] {
    let x = p.coords();
    // Minkowski cross of the point and the tangent: orthogonal to both,
    // spacelike and unit for unit inputs.
    [
        -(x[1] * e1[2] - x[2] * e1[1]),
        x[2] * e1[0] - x[0] * e1[2],
        x[0] * e1[1] - x[1] * e1[0],
    ]
}

/// One recorded flip-flop step: the perpendicular segment `s_j` dropped
/// from `p_j` to the opposite ray, its foot `p_{j+1}`, and the outward
/// angle `φ_j` at `p_j` between the segment and the ray through `p_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipFlopStep {
    /// Step index `j ≥ 1`.
    pub index: usize,
    /// `L(s_j)`.
    pub seg_len: f64,
    /// `φ_j`, the angle at `p_j` between `s_j` and the outward ray
    /// direction.
    pub phi: Angle,
    /// The foot `p_{j+1}` on the target ray.
    pub foot: HypPoint,
    /// Arc-length parameter of the foot along its ray.
    pub foot_param: f64,
}

/// Why a flip-flop run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipFlopStatus {
    /// `|φ_j − π/2|` dropped below the tolerance at the given step.
    Converged { at_step: usize },
    /// The step budget ran out first. Not an error: slow convergence is
    /// data (asymptotic ray pairs approach π/2 at a polynomial rate).
    MaxStepsReached,
}

/// A completed flip-flop run.
#[derive(Debug, Clone, PartialEq)]
pub struct FlipFlopRun {
    pub config: OpenTriangleConfig,
    pub steps: Vec<FlipFlopStep>,
    pub status: FlipFlopStatus,
}

/// Runs the flip-flop procedure on an open-ended triangle: starting from
/// `r`, drop a perpendicular to the ray at `q`, then from its foot a
/// perpendicular back to the ray at `r`, alternating; record each segment
/// length and outward angle. Stops when `|φ_j − π/2| < tol` or after
/// `max_steps` steps.
///
/// Errors if the rays meet (the triangle is not open-ended) or a foot
/// falls behind a ray origin.
pub fn run_flip_flop(
    config: OpenTriangleConfig,
    max_steps: usize,
    tol: f64,
) -> Result<FlipFlopRun, ComparisonError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(ComparisonError::BadConfig(format!(
            "tolerance must be positive (tol = {tol})"
        )));
    }
    if config.rays_intersect()? {
        return Err(ComparisonError::BadConfig(
            "the rays meet: the configuration is a closed triangle".into(),
        ));
    }
    let (ray_q, ray_r) = config.rays()?;
    // p_1 = r, which is the origin of the ray at r.
    let mut here = ray_r.origin();
    let mut here_param = 0.0;
    let mut on_q_ray = false;
    let mut steps = Vec::new();
    let mut status = FlipFlopStatus::MaxStepsReached;
    for index in 1..=max_steps {
        let (current, target) = if on_q_ray {
            (&ray_q, &ray_r)
        } else {
            (&ray_r, &ray_q)
        };
        let (foot, seg_len) = target.geodesic().foot_of(here);
        if seg_len < 1e-14 {
            return Err(ComparisonError::BadConfig(format!(
                "degenerate configuration: point {index} lies on the opposite ray"
            )));
        }
        let foot_param = target.param_of(foot);
        if foot_param < 0.0 {
            return Err(ComparisonError::BadConfig(format!(
                "perpendicular foot at step {index} falls behind the ray origin \
                 (parameter {foot_param:.3e})"
            )));
        }
        let outward = current.tangent_at(here_param);
        let toward_foot = here.direction_to(foot)?;
        let phi = Angle::new(guarded_acos(mdot(outward, toward_foot))?)?;
        steps.push(FlipFlopStep {
            index,
            seg_len,
            phi,
            foot,
            foot_param,
        });
        if (phi.rad() - FRAC_PI_2).abs() < tol {
            status = FlipFlopStatus::Converged { at_step: index };
            break;
        }
        here = foot;
        here_param = foot_param;
        on_q_ray = !on_q_ray;
    }
    Ok(FlipFlopRun {
        config,
        steps,
        status,
    })
}

// ═══════════════════════════════════════════════════════════════════════════
// Reference configurations
// ═══════════════════════════════════════════════════════════════════════════

/// Named flip-flop configurations covering the three convergence regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipFlopPreset {
    /// Mirror-symmetric ray pair with a substantial common perpendicular:
    /// the feet converge geometrically onto it.
    Symmetric,
    /// A ray pair just past the asymptotic threshold: the common
    /// perpendicular is microscopic, and through the long transient the
    /// segment lengths shrink with the parallelism-angle bound active.
    NearParallel,
    /// Strongly divergent rays: segment lengths stay bounded away from
    /// zero and the consecutive-segment sine identity governs the
    /// (geometric) convergence.
    Divergent,
}

impl FlipFlopPreset {
    /// All presets, in declaration order.
    pub const ALL: [FlipFlopPreset; 3] = [
        FlipFlopPreset::Symmetric,
        FlipFlopPreset::NearParallel,
        FlipFlopPreset::Divergent,
    ];

    /// Stable name (used by the command-line front end).
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            FlipFlopPreset::Symmetric => "symmetric",
            FlipFlopPreset::NearParallel => "parallel-rays",
            FlipFlopPreset::Divergent => "divergent-rays",
        }
    }

    /// Looks a preset up by its stable name.
    #[must_use]
    pub fn from_name(name: &str) -> Option<FlipFlopPreset> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// The concrete configuration. `NearParallel` and the others place
    /// their second angle relative to the asymptotic threshold computed by
    /// [`asymptotic_threshold`], so the regime is guaranteed by
    /// construction rather than by magic constants.
    pub fn config(self) -> Result<OpenTriangleConfig, ComparisonError> {
        match self {
            FlipFlopPreset::Symmetric => {
                let thr = symmetric_threshold(1.0)?;
                OpenTriangleConfig::new(1.0, thr + 0.2, thr + 0.2)
            }
            FlipFlopPreset::NearParallel => {
                let thr = asymptotic_threshold(1.0, 0.8)?;
                OpenTriangleConfig::new(1.0, 0.8, thr + 2e-3)
            }
            FlipFlopPreset::Divergent => {
                // Well past the threshold, but still inside (0, π/2): take
                // 80% of the remaining room.
                let thr = asymptotic_threshold(1.5, 1.0)?;
                OpenTriangleConfig::new(1.5, 1.0, thr + 0.8 * (FRAC_PI_2 - thr))
            }
        }
    }
}

/// The smallest `angle_r` (to bisection accuracy `1e−12`) for which the
/// rays of `OpenTriangleConfig { a_len, angle_q, angle_r }` no longer
/// meet: configurations at the threshold are asymptotic, above it
/// ultraparallel. Errors when even `angle_r` near π/2 still meets the
/// other ray.
pub fn asymptotic_threshold(a_len: f64, angle_q: f64) -> Result<f64, ComparisonError> {
    let probe = |angle_r: f64| -> Result<bool, ComparisonError> {
        OpenTriangleConfig::new(a_len, angle_q, angle_r)?.rays_intersect()
    };
    let mut lo = 1e-6; // meets: the ray at r points back across the base
    let mut hi = FRAC_PI_2 - 1e-6;
    if probe(lo)? != true {
        return Err(ComparisonError::BadConfig(
            "no intersection even at grazing angle; threshold search needs a steeper base angle"
                .into(),
        ));
    }
    if probe(hi)? {
        return Err(ComparisonError::BadConfig(format!(
            "rays still meet at angle_r ≈ π/2 for a_len = {a_len}, angle_q = {angle_q}; \
             no ultraparallel regime in range"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if probe(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// The symmetric asymptotic threshold: the common angle at which the
/// mirror-symmetric configuration over a base of length `a_len` becomes
/// ultraparallel.
pub fn symmetric_threshold(a_len: f64) -> Result<f64, ComparisonError> {
    let probe = |angle: f64| -> Result<bool, ComparisonError> {
        OpenTriangleConfig::new(a_len, angle, angle)?.rays_intersect()
    };
    let mut lo = 1e-6;
    let mut hi = FRAC_PI_2 - 1e-6;
    if probe(hi)? {
        return Err(ComparisonError::BadConfig(format!(
            "symmetric rays still meet near π/2 for a_len = {a_len}"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if probe(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_angles_and_third_side_invert_each_other() {
        let m = plane_angles(0.8, 1.1, 1.5).unwrap();
        let back = plane_third_side(0.8, 1.1, m.gamma).unwrap();
        assert!((back.c_bar - 1.5).abs() < 1e-10);
    }

    #[test]
    fn right_wrappers_agree_with_the_solver() {
        let t1 = right_from_legs(1.0, 1.0).unwrap();
        assert!((t1.c.value().unwrap() - (1f64.cosh() * 1f64.cosh()).acosh()).abs() < 1e-12);
        // Reference: tan(π/8)·sinh 1 ≈ 0.48684, b′ = arctanh of that.
        let t2 = right_from_leg_and_adjacent_angle(1.0, std::f64::consts::FRAC_PI_8).unwrap();
        let expected = (std::f64::consts::FRAC_PI_8.tan() * 1f64.sinh()).atanh();
        assert!((t2.b.value().unwrap() - expected).abs() < 1e-12);
        // Reference: arcsinh(tanh 0.5 / tan(π/6)).
        let t3 = right_from_leg_and_opposite_angle(0.5, std::f64::consts::FRAC_PI_6).unwrap();
        let expected = (0.5f64.tanh() / std::f64::consts::FRAC_PI_6.tan()).asinh();
        assert!((t3.a.value().unwrap() - expected).abs() < 1e-12);
        // Hypotenuse case: b′ = arcsinh(sin β sinh c).
        let t4 = right_from_opposite_angle(
            std::f64::consts::FRAC_PI_4,
            GivenSide::Hypotenuse(1.0),
        )
        .unwrap();
        let expected = (std::f64::consts::FRAC_PI_4.sin() * 1f64.sinh()).asinh();
        assert!((t4.b.value().unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn opposite_angle_cases_invert_each_other() {
        let beta = 0.6;
        let via_hyp = right_from_opposite_angle(beta, GivenSide::Hypotenuse(1.3)).unwrap();
        let back =
            right_from_opposite_angle(beta, GivenSide::OppositeLeg(via_hyp.b.value().unwrap()))
                .unwrap();
        assert!((back.c.value().unwrap() - 1.3).abs() < 1e-10);
        assert!((back.a.value().unwrap() - via_hyp.a.value().unwrap()).abs() < 1e-10);
    }

    #[test]
    fn leg_pairs_invert_each_other() {
        // Solving from (a, β) and then from the resulting (b, β) recovers a.
        let t = right_from_leg_and_adjacent_angle(0.8, 0.5).unwrap();
        let back = right_from_leg_and_opposite_angle(t.b.value().unwrap(), 0.5).unwrap();
        assert!((back.a.value().unwrap() - 0.8).abs() < 1e-10);
    }

    #[test]
    fn open_bound_finite_height_is_monotone_with_the_right_limit() {
        let a = 0.5;
        let limit = open_triangle_angle_bound(a).unwrap().rad();
        let mut prev = 0.0;
        for i in 1..=16 {
            let t = a + 0.5 * i as f64;
            let v = open_triangle_angle_bound_finite(a, t).unwrap().rad();
            assert!(v > prev);
            assert!(v < limit);
            prev = v;
        }
        assert!(limit - prev < 1e-6, "gap {} at t = a + 8", limit - prev);
        assert!(open_triangle_angle_bound_finite(a, a).is_err());
    }

    #[test]
    fn thresholds_bracket_the_regimes() {
        let thr = asymptotic_threshold(1.0, 0.8).unwrap();
        assert!(0.0 < thr && thr < FRAC_PI_2);
        let below = OpenTriangleConfig::new(1.0, 0.8, thr - 1e-6).unwrap();
        assert!(below.rays_intersect().unwrap());
        let above = OpenTriangleConfig::new(1.0, 0.8, thr + 1e-6).unwrap();
        assert!(!above.rays_intersect().unwrap());
        // The ultraparallel regime needs the base ray steep enough to clear
        // the perpendicular at r: tan(angle_q)·sinh(a_len) > 1.
        assert!(asymptotic_threshold(1.0, 0.7).is_err());
        // Closed form for the symmetric case: rays become asymptotic at the
        // parallelism angle of half the base, arctan(1/sinh(a/2)).
        let sym = symmetric_threshold(1.0).unwrap();
        assert!((sym - (1.0 / 0.5f64.sinh()).atan()).abs() < 1e-10);
    }

    #[test]
    fn flip_flop_rejects_closed_triangles() {
        // Steep angles over a short base meet: a closed triangle.
        let cfg = OpenTriangleConfig::new(0.3, 0.4, 0.4).unwrap();
        assert!(cfg.rays_intersect().unwrap());
        assert!(matches!(
            run_flip_flop(cfg, 100, 1e-6),
            Err(ComparisonError::BadConfig(_))
        ));
    }

    #[test]
    fn flip_flop_converges_on_the_presets() {
        for preset in FlipFlopPreset::ALL {
            let cfg = preset.config().unwrap();
            let run = run_flip_flop(cfg, 10_000, 1e-6).unwrap();
            assert!(
                matches!(run.status, FlipFlopStatus::Converged { .. }),
                "{} did not converge",
                preset.name()
            );
            // Monotone non-increasing segment lengths.
            for w in run.steps.windows(2) {
                assert!(
                    w[1].seg_len <= w[0].seg_len + 1e-12,
                    "segment grew at step {} of {}",
                    w[1].index,
                    preset.name()
                );
            }
        }
    }

    #[test]
    fn flip_flop_per_step_bounds_hold() {
        for preset in FlipFlopPreset::ALL {
            let run = run_flip_flop(preset.config().unwrap(), 10_000, 1e-6).unwrap();
            for w in run.steps.windows(2) {
                let phi = w[0].phi.rad();
                // Consecutive-segment sine identity (exact in the plane).
                // Compared as sines: the arcsin form amplifies rounding
                // without bound as the ratio approaches 1.
                let ratio = (w[1].seg_len.sinh() / w[0].seg_len.sinh()).min(1.0);
                assert!(
                    phi.sin() >= ratio - 1e-9,
                    "sine bound failed at step {} of {}",
                    w[0].index,
                    preset.name()
                );
                // Parallelism-angle bound.
                let beta_inf = angle_of_parallelism(w[0].seg_len).unwrap().rad();
                assert!(
                    phi >= beta_inf - 1e-9,
                    "parallelism bound failed at step {} of {}",
                    w[0].index,
                    preset.name()
                );
            }
        }
    }
}
