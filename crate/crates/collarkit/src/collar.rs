//! Closed-form collar, crossing-length, and side-excess bounds for complete
//! surfaces with curvature `K ≥ −k²`.
//!
//! Everything here is scalar arithmetic: the geometry enters only through
//! the statements being evaluated. A closed geodesic of length `L` on such
//! a surface has an embedded collar of half-width at least
//!
//! ```text
//! w(L, k) = (1/k)·arccosh(coth(kL/2)) = (1/k)·arcsinh(1 / sinh(kL/2)),
//! ```
//!
//! two disjoint such geodesics have disjoint collars (so their distance is
//! at least the sum of the two widths), and intersecting, freely
//! non-homotopic closed geodesics obey lower bounds on products of
//! `sinh`-halves of their lengths. The scalar engine behind the crossing
//! bounds is a two-variable `sinh`-product inequality exposed here in both
//! its shifted ([`shifted_product_gap`]) and midpoint
//! ([`midpoint_product_gap`]) forms, with exact equality classification.
//!
//! These functions evaluate necessary conditions; they do not decide
//! geometry. A caller holding a configuration certifies it *impossible*
//! when a bound that the configuration would have to satisfy comes back
//! unsatisfied.

use crate::scalar::{CurvatureScale, ScalarError};
use thiserror::Error;

/// Failures of the scalar bound evaluators (domain violations only; the
/// bounds themselves are total over their domains).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    /// Propagated scalar validation failure.
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    /// Inputs outside the inequality's stated domain.
    #[error("outside the inequality domain: {constraint} (got {detail})")]
    OutsideDomain {
        constraint: &'static str,
        detail: String,
    },
}

fn positive_length(name: &'static str, v: f64) -> Result<f64, BoundError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(BoundError::OutsideDomain {
            constraint: "length must be finite and positive",
            detail: format!("{name} = {v}"),
        })
    }
}

// ═══════════════════════════════════════════════════════════════════════════
// Collar widths
// ═══════════════════════════════════════════════════════════════════════════

/// Which statement a collar width certifies. The numeric value is the same
/// in all three roles; the label records what the caller is claiming.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollarVariant {
    /// Half-width of the embedded collar around a closed geodesic.
    FullCollar,
    /// Width of the half-collar on one side of a boundary geodesic.
    HalfCollar,
    /// Base distance of a funnel measured from its bounding geodesic.
    FunnelBase,
}

/// A collar width together with the data it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollarBoundReport {
    /// Length of the closed geodesic.
    pub geodesic_length: f64,
    /// Curvature scale (`K ≥ −k²`).
    pub k: CurvatureScale,
    /// The width bound.
    pub width: f64,
    /// Role label; see [`CollarVariant`].
    pub variant: CollarVariant,
    /// Absolute disagreement between the two independent evaluations of the
    /// closed form (the `arccosh∘coth` and `arcsinh∘cosech` routes). A
    /// healthy evaluation keeps this below `1e−12` over the whole working
    /// range.
    pub identity_residual: f64,
}

impl CollarBoundReport {
    /// Relabels the same numeric bound for a different statement.
    #[must_use]
    pub fn as_variant(mut self, variant: CollarVariant) -> CollarBoundReport {
        self.variant = variant;
        self
    }
}

/// Collar half-width bound `w = (1/k)·arccosh(coth(kL/2))` for a closed
/// geodesic of length `L > 0`.
///
/// The two textbook closed forms are the same function; both are evaluated
/// by independent routes and cross-checked. The `arccosh∘coth` route is
/// algebraically simplified to `ln(coth(kL/4))` — evaluating the naive
/// composition would round `coth` to 1 beyond `kL ≈ 36` and destroy the
/// digits the cross-check is supposed to witness. The returned width uses
/// the `arcsinh` route, which is uniformly accurate.
///
/// Exact scaling law: `width(L, k) = width(kL, 1)/k`.
pub fn collar_width_bound(l: f64, k: CurvatureScale) -> Result<CollarBoundReport, BoundError> {
    let l = positive_length("L", l)?;
    let x = k.get() * l / 2.0;
    // Route A: arccosh(coth x) = ln((cosh x + 1)/sinh x) = ln(coth(x/2)).
    let via_acosh = ((x / 2.0).cosh() / (x / 2.0).sinh()).ln();
    // Route B: arcsinh(cosech x), stable as written.
    let via_asinh = (1.0 / x.sinh()).asinh();
    let identity_residual = (via_acosh - via_asinh).abs();
    debug_assert!(identity_residual < 1e-12);
    Ok(CollarBoundReport {
        geodesic_length: l,
        k,
        width: via_asinh / k.get(),
        variant: CollarVariant::FullCollar,
        identity_residual,
    })
}

/// Lower bound on the distance between two disjoint, freely non-homotopic
/// closed geodesics: the sum of their collar widths (the collars are
/// disjoint).
pub fn collar_distance_bound(
    l_gamma: f64,
    l_mu: f64,
    k: CurvatureScale,
) -> Result<f64, BoundError> {
    Ok(collar_width_bound(l_gamma, k)?.width + collar_width_bound(l_mu, k)?.width)
}

/// Shortest length of a geodesic loop based at a point of a cactus arm
/// (an arm pinched off by level sets of the boundary distance):
/// `2·arcsinh(1)/k`.
///
/// `arcsinh(1)` is the self-dual point of the collar width: it is the
/// unique `w` with `sinh(w)·sinh(w) = 1`, so this bound coincides with
/// twice the collar width of a geodesic of length `2·arcsinh(1)`.
#[must_use]
pub fn arm_loop_bound(k: CurvatureScale) -> f64 {
    2.0 * std::f64::consts::SQRT_2.ln_1p() / k.get() // arcsinh(1) = ln(1+√2)
}

// ═══════════════════════════════════════════════════════════════════════════
// Crossing-length bounds
// ═══════════════════════════════════════════════════════════════════════════

/// Which crossing-length inequality to evaluate. All variants concern a
/// pair of intersecting, freely non-homotopic closed geodesics `γ`, `η`
/// on a complete orientable surface with `K ≥ −k²`; the stronger variants
/// add hypotheses on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionVariant {
    /// No extra hypotheses: `sinh(kL(γ)/2)·sinh(kL(η)/2) ≥ 1`.
    General,
    /// `γ` separates the surface (η must cross its collar twice):
    /// `sinh(kL(γ)/2)·sinh(kL(η)/4) ≥ 1`.
    Separating,
    /// Genus-zero surface, both geodesics simple — every simple closed
    /// curve separates, so the separating bound holds both ways:
    /// `min{sinh(kL(γ)/2)·sinh(kL(η)/4), sinh(kL(γ)/4)·sinh(kL(η)/2)} ≥ 1`.
    GenusZero,
    /// Genus-zero surface, both geodesics simple; midpoint form of the
    /// previous bound, and strict:
    /// `sinh(3kL(γ)/8)·sinh(3kL(η)/8) > 1`.
    GenusZeroStrict,
}

/// Outcome of a crossing-length inequality evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionCheck {
    /// Left-hand side minus 1 (for [`IntersectionVariant::GenusZero`], the
    /// smaller of the two products minus 1).
    pub residual: f64,
    /// Whether the necessary condition holds. `false` certifies that no
    /// surface of the hypothesis class carries such an intersecting pair.
    pub satisfied: bool,
}

/// Evaluates the selected crossing-length inequality for geodesic lengths
/// `l_gamma`, `l_eta` on a surface with `K ≥ −k²`.
pub fn intersection_bound(
    l_gamma: f64,
    l_eta: f64,
    k: CurvatureScale,
    variant: IntersectionVariant,
) -> Result<IntersectionCheck, BoundError> {
    let lg = k.get() * positive_length("L(gamma)", l_gamma)?;
    let le = k.get() * positive_length("L(eta)", l_eta)?;
    let product = |fg: f64, fe: f64| (fg * lg).sinh() * (fe * le).sinh();
    let lhs = match variant {
        IntersectionVariant::General => product(0.5, 0.5),
        IntersectionVariant::Separating => product(0.5, 0.25),
        IntersectionVariant::GenusZero => product(0.5, 0.25).min(product(0.25, 0.5)),
        IntersectionVariant::GenusZeroStrict => product(0.375, 0.375),
    };
    let residual = lhs - 1.0;
    Ok(IntersectionCheck {
        residual,
        satisfied: residual >= 0.0,
    })
}

// ═══════════════════════════════════════════════════════════════════════════
// The sinh-product inequality kernel
// ═══════════════════════════════════════════════════════════════════════════

/// Gap of the shifted `sinh`-product inequality
///
/// ```text
/// sinh x · sinh y  ≥  min{ sinh(x+δ)·sinh(y−t),  sinh(x−δ)·sinh(y+t) }
/// ```
///
/// for `0 ≤ |δ| ≤ x`, `0 ≤ t ≤ y`: returns the left side minus the min.
/// The gap is 0 when `δ·t = 0` and strictly positive otherwise.
///
/// Each branch difference is evaluated in product-to-sum form,
///
/// ```text
/// sinh x sinh y − sinh(x+δ)sinh(y−t)
///   = sinh(x+y+(δ−t)/2)·sinh((t−δ)/2) + sinh(x−y+(δ+t)/2)·sinh((δ+t)/2),
/// ```
///
/// rather than as a difference of two nearly equal products; the naive form
/// loses ~`e^{x+y}·ε` absolutely (already `10⁻⁸` at `x+y = 20`), which
/// would swamp the sign of the gap near the equality set.
pub fn shifted_product_gap(x: f64, y: f64, delta: f64, t: f64) -> Result<f64, BoundError> {
    for (name, v) in [("x", x), ("y", y), ("delta", delta), ("t", t)] {
        if !v.is_finite() {
            return Err(BoundError::OutsideDomain {
                constraint: "all arguments must be finite",
                detail: format!("{name} = {v}"),
            });
        }
    }
    if x < 0.0 || delta.abs() > x {
        return Err(BoundError::OutsideDomain {
            constraint: "shift must satisfy 0 ≤ |delta| ≤ x",
            detail: format!("x = {x}, delta = {delta}"),
        });
    }
    if t < 0.0 || t > y {
        return Err(BoundError::OutsideDomain {
            constraint: "shift must satisfy 0 ≤ t ≤ y",
            detail: format!("y = {y}, t = {t}"),
        });
    }
    let branch = |d: f64, s: f64| -> f64 {
        // sinh x sinh y − sinh(x+d)sinh(y−s), in cancellation-free form.
        (x + y + (d - s) / 2.0).sinh() * ((s - d) / 2.0).sinh()
            + (x - y + (d + s) / 2.0).sinh() * ((d + s) / 2.0).sinh()
    };
    Ok(branch(delta, t).max(branch(-delta, -t)))
}

/// Equality classification for [`midpoint_product_gap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityCase {
    /// `u₁ = u₂ = 0`.
    UZero,
    /// `v₁ = v₂ = 0`.
    VZero,
    /// `u₁ = u₂` and `v₁ = v₂`.
    Matched,
    /// Off the equality set: the gap is strictly positive.
    None,
}

/// Gap of the midpoint `sinh`-product inequality
///
/// ```text
/// sinh((u₁+u₂)/2)·sinh((v₁+v₂)/2)  ≥  min{ sinh u₁ sinh v₁, sinh u₂ sinh v₂ }
/// ```
///
/// for non-negative inputs, with classification of the equality set.
/// Equality holds exactly when `u₁ = u₂ = 0`, or `v₁ = v₂ = 0`, or
/// (`u₁ = u₂` and `v₁ = v₂`).
///
/// The gap is the shifted-product gap at `x = (u₁+u₂)/2`, `y = (v₁+v₂)/2`,
/// `δ = (u₁−u₂)/2`, `t = (v₂−v₁)/2` (shifting the midpoints outward by
/// `(δ, −t)` gives one branch product and by `(−δ, t)` the other); the
/// preconditions of [`shifted_product_gap`] hold automatically.
///
/// Classification: a gap above `1e−12` absolute is [`EqualityCase::None`];
/// at or below it the inputs are within rounding of the equality set, and
/// the returned case is the structurally nearest of the three (ties broken
/// in the declared order).
pub fn midpoint_product_gap(
    u1: f64,
    u2: f64,
    v1: f64,
    v2: f64,
) -> Result<(f64, EqualityCase), BoundError> {
    for (name, v) in [("u1", u1), ("u2", u2), ("v1", v1), ("v2", v2)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(BoundError::OutsideDomain {
                constraint: "all arguments must be finite and non-negative",
                detail: format!("{name} = {v}"),
            });
        }
    }
    // Swapping the pairs (u1,v1) ↔ (u2,v2) leaves both sides unchanged;
    // normalize so the t-shift is non-negative.
    let (u1, u2, v1, v2) = if v2 >= v1 {
        (u1, u2, v1, v2)
    } else {
        (u2, u1, v2, v1)
    };
    let gap = shifted_product_gap(
        (u1 + u2) / 2.0,
        (v1 + v2) / 2.0,
        (u1 - u2) / 2.0,
        (v2 - v1) / 2.0,
    )?;
    const EQ_TOL: f64 = 1e-12;
    let case = if gap > EQ_TOL {
        EqualityCase::None
    } else {
        let dev_u_zero = u1.max(u2);
        let dev_v_zero = v1.max(v2);
        let dev_matched = (u1 - u2).abs().max((v1 - v2).abs());
        if dev_u_zero <= dev_v_zero && dev_u_zero <= dev_matched {
            EqualityCase::UZero
        } else if dev_v_zero <= dev_matched {
            EqualityCase::VZero
        } else {
            EqualityCase::Matched
        }
    };
    Ok((gap, case))
}

// ═══════════════════════════════════════════════════════════════════════════
// Side-excess bound for almost-right triangles
// ═══════════════════════════════════════════════════════════════════════════

/// The explicit constant bounding the side excess `c − a` of nearly-right
/// hyperbolic triangles; see [`side_excess_constant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideExcessBound {
    /// Cap on side `a`.
    pub a0: f64,
    /// Cap on side `b`.
    pub b0: f64,
    /// Floor on side `c`.
    pub c0: f64,
    /// Curvature scale the caps are measured in. The constant is assembled
    /// at `k = 1`; apply it to `k`-scaled side lengths.
    pub k: CurvatureScale,
    /// The constant `C`.
    pub constant: f64,
}

impl SideExcessBound {
    /// The right-hand side `C·(b·sin ζ + b²)` of the excess bound.
    #[must_use]
    pub fn excess_bound(&self, b: f64, zeta: f64) -> f64 {
        self.constant * (b * zeta.sin() + b * b)
    }
}

/// Constant `C = C(a₀, b₀, c₀)` such that every hyperbolic triangle with
/// sides `a ≤ a₀`, `b ≤ b₀`, `c ≥ c₀` and angle `γ ≤ π/2 + ζ` between `a`
/// and `b` (any `ζ ∈ [0, π/2)`) satisfies `c − a ≤ C·(b·sin ζ + b²)`.
///
/// The constant is assembled exactly from the three monotone estimates that
/// prove the bound:
///
/// ```text
/// cosh c − cosh a ≥ (c − a)·sinh(c₀/2),
/// cosh c − cosh a = cosh a (cosh b − 1) + sinh a sinh b·(−cos γ) ≤ cosh a₀·(cosh b₀ − 1)·(b/b₀)² + sinh a₀·(sinh b₀/b₀)·b sin ζ,
/// ```
///
/// using that `(cosh t − 1)/t²` and `sinh t / t` are increasing, whence
///
/// ```text
/// C = [cosh a₀·(cosh b₀ − 1)/b₀² + sinh a₀·sinh b₀/b₀] / sinh(c₀/2).
/// ```
///
/// It is the citable constant of that proof, not the optimal one.
pub fn side_excess_constant(a0: f64, b0: f64, c0: f64) -> Result<SideExcessBound, BoundError> {
    let a0 = positive_length("a0", a0)?;
    let b0 = positive_length("b0", b0)?;
    let c0 = positive_length("c0", c0)?;
    let numerator = a0.cosh() * (b0.cosh() - 1.0) / (b0 * b0) + a0.sinh() * b0.sinh() / b0;
    let constant = numerator / (c0 / 2.0).sinh();
    Ok(SideExcessBound {
        a0,
        b0,
        c0,
        k: CurvatureScale::UNIT,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{angles_from_sides, law_of_cosines};
    use crate::scalar::Angle;

    const ASINH_1: f64 = 0.881_373_587_019_543; // arcsinh(1) = ln(1+√2)

    #[test]
    fn collar_width_fixed_point_and_reference() {
        let k = CurvatureScale::UNIT;
        // At L = 2·arcsinh(1) the width equals L/2: sinh(w)² = 1.
        let fixed = collar_width_bound(2.0 * ASINH_1, k).unwrap();
        assert!((fixed.width - ASINH_1).abs() < 1e-14);
        // L = 2 → arcsinh(1/sinh 1).
        let w2 = collar_width_bound(2.0, k).unwrap();
        assert!((w2.width - (1.0 / 1f64.sinh()).asinh()).abs() < 1e-15);
        assert!((w2.width - 0.771_936_832_905_304_8).abs() < 1e-12);
    }

    #[test]
    fn collar_width_scaling_law() {
        let l = 0.73;
        let k2 = CurvatureScale::new(2.0).unwrap();
        let w_scaled = collar_width_bound(l, k2).unwrap().width;
        let w_unit = collar_width_bound(2.0 * l, CurvatureScale::UNIT).unwrap().width;
        assert!((w_scaled - w_unit / 2.0).abs() < 1e-15);
    }

    #[test]
    fn collar_width_closed_forms_agree_over_the_working_range() {
        let k = CurvatureScale::UNIT;
        for i in 0..=1000 {
            // log grid for L/2 from 1e-3 to 20.
            let x = 1e-3 * (20.0f64 / 1e-3).powf(i as f64 / 1000.0);
            let rep = collar_width_bound(2.0 * x, k).unwrap();
            assert!(
                rep.identity_residual < 1e-12,
                "residual {} at x = {x}",
                rep.identity_residual
            );
        }
    }

    #[test]
    fn collar_distance_bound_is_the_sum_of_widths() {
        let k = CurvatureScale::UNIT;
        let d = collar_distance_bound(2.0, 2.0 * ASINH_1, k).unwrap();
        let expected = collar_width_bound(2.0, k).unwrap().width + ASINH_1;
        assert!((d - expected).abs() < 1e-15);
        assert!((d - 1.653_310_419_924_847_8).abs() < 1e-12);
    }

    #[test]
    fn collar_threshold_meets_the_crossing_bound() {
        // sinh(width(L))·sinh(L/2) = 1 exactly: the collar width is the
        // threshold of the crossing inequality.
        for l in [0.3, 1.0, 2.0, 7.0] {
            let w = collar_width_bound(l, CurvatureScale::UNIT).unwrap().width;
            let residual = w.sinh() * (l / 2.0).sinh() - 1.0;
            assert!(residual.abs() < 1e-12, "residual {residual} at L = {l}");
        }
    }

    #[test]
    fn intersection_bound_variants_and_thresholds() {
        let k = CurvatureScale::UNIT;
        // General variant threshold: lengths with sinh(L/2)² = 1.
        let at = intersection_bound(2.0 * ASINH_1, 2.0 * ASINH_1, k, IntersectionVariant::General)
            .unwrap();
        assert!(at.residual.abs() < 1e-12 && at.satisfied);
        // Strict variant threshold at L = (8/3)·arcsinh(1).
        let l43 = 8.0 / 3.0 * ASINH_1;
        let s = intersection_bound(l43, l43, k, IntersectionVariant::GenusZeroStrict).unwrap();
        assert!(s.residual.abs() < 1e-12);
        // Genus-zero example: min(sinh²1, sinh(1/2)·sinh 2).
        let g = intersection_bound(2.0, 4.0, k, IntersectionVariant::GenusZero).unwrap();
        let expected = (1f64.sinh() * 1f64.sinh()).min(0.5f64.sinh() * 2f64.sinh()) - 1.0;
        assert!((g.residual - expected).abs() < 1e-14);
        // An impossible configuration is flagged.
        let bad = intersection_bound(0.1, 0.1, k, IntersectionVariant::General).unwrap();
        assert!(!bad.satisfied);
    }

    #[test]
    fn shifted_gap_vanishes_without_shift_and_matches_brute_force() {
        assert_eq!(shifted_product_gap(1.0, 1.0, 0.0, 0.0).unwrap(), 0.0);
        let (x, y, d, t) = (1.0f64, 1.0f64, 0.5f64, 0.5f64);
        let brute = x.sinh() * y.sinh()
            - ((x + d).sinh() * (y - t).sinh()).min((x - d).sinh() * (y + t).sinh());
        let gap = shifted_product_gap(x, y, d, t).unwrap();
        assert!((gap - brute).abs() < 1e-14);
        assert!(gap > 0.0);
    }

    #[test]
    fn shifted_gap_is_accurate_where_the_naive_form_cancels() {
        // At x + y = 20 the naive difference of products carries ~1e−8 of
        // rounding; the stable form must still resolve a genuinely tiny gap.
        let gap = shifted_product_gap(10.0, 10.0, 1e-10, 1e-10).unwrap();
        assert!(gap > 0.0 && gap < 1e-10, "gap = {gap}");
    }

    #[test]
    fn shifted_gap_rejects_out_of_domain_shifts() {
        assert!(shifted_product_gap(1.0, 1.0, 1.5, 0.0).is_err());
        assert!(shifted_product_gap(1.0, 1.0, 0.0, 1.5).is_err());
        assert!(shifted_product_gap(1.0, 1.0, 0.0, -0.1).is_err());
    }

    #[test]
    fn midpoint_gap_equality_cases() {
        let (g, c) = midpoint_product_gap(0.0, 0.0, 1.0, 2.0).unwrap();
        assert_eq!(g, 0.0);
        assert_eq!(c, EqualityCase::UZero);
        let (g, c) = midpoint_product_gap(1.0, 2.0, 0.0, 0.0).unwrap();
        assert_eq!(g, 0.0);
        assert_eq!(c, EqualityCase::VZero);
        let (g, c) = midpoint_product_gap(1.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(g, 0.0);
        assert_eq!(c, EqualityCase::Matched);
        let (g, c) = midpoint_product_gap(1.0, 2.0, 1.0, 1.0).unwrap();
        assert!(g > 1e-12);
        assert_eq!(c, EqualityCase::None);
    }

    #[test]
    fn midpoint_gap_is_order_insensitive() {
        // v2 < v1 exercises the pair-swap normalization.
        let (g1, _) = midpoint_product_gap(0.8, 1.7, 2.0, 0.4).unwrap();
        let (g2, _) = midpoint_product_gap(1.7, 0.8, 0.4, 2.0).unwrap();
        assert!((g1 - g2).abs() < 1e-15);
        assert!(g1 > 0.0);
    }

    #[test]
    fn arm_loop_bound_matches_the_self_dual_collar_width() {
        let k = CurvatureScale::UNIT;
        assert!((arm_loop_bound(k) - 2.0 * ASINH_1).abs() < 1e-15);
        let w = collar_width_bound(2.0 * ASINH_1, k).unwrap().width;
        assert!((arm_loop_bound(k) - 2.0 * w).abs() < 1e-14);
        let k2 = CurvatureScale::new(2.0).unwrap();
        assert!((arm_loop_bound(k2) - ASINH_1).abs() < 1e-15);
    }

    #[test]
    fn side_excess_constant_bounds_near_right_triangles() {
        let bound = side_excess_constant(1.0, 1.0, 0.5).unwrap();
        // Right-angle case ζ = 0: c − a ≤ C b² as b ↓ 0.
        for &b in &[0.5, 0.1, 0.01] {
            let a = 0.9;
            let c = law_of_cosines(a, b, Angle::RIGHT).unwrap();
            assert!(c >= 0.5, "test setup: c must clear the floor");
            let excess = c - a;
            assert!(
                excess <= bound.excess_bound(b, 0.0) + 1e-12,
                "excess {excess} vs bound {} at b = {b}",
                bound.excess_bound(b, 0.0)
            );
        }
        // Obtuse case with ζ > 0.
        let zeta = 0.3;
        let gamma = Angle::new(std::f64::consts::FRAC_PI_2 + zeta).unwrap();
        let c = law_of_cosines(0.9, 0.8, gamma).unwrap();
        let excess = c - 0.9;
        assert!(excess <= bound.excess_bound(0.8, zeta) + 1e-12);
        // Sanity: the triangle actually exists with these sides.
        assert!(angles_from_sides(0.9, 0.8, c).is_ok());
    }
}
