//! Boundary-normal (Fermi) metrics on a half-open cylinder, their Gaussian
//! curvature, sampled curvature lower bounds, and the collar-flattening
//! smoothing construction.
//!
//! Coordinates are `(r, theta)`: `r >= 0` is the coordinate height above the
//! boundary circle and `theta` runs along the boundary with period
//! [`FermiMetric::boundary_length`].  The line element is
//!
//! ```text
//! ds^2 = E(r, theta)^2 dr^2 + G(r, theta)^2 dtheta^2,
//! ```
//!
//! normalized so that `G(0, .) = 1`, `dG/dr(0, .) = 0`, and `E(0, .) = 1`.
//! Those pins make the boundary circle a unit-speed closed geodesic of the
//! surface.  The built-in families keep `E == 1` identically, in which case
//! `r` is the exact distance to the boundary; the cactus family raises
//! `E > 1` on annular ridges, so regions behind a ridge are genuinely
//! farther from the boundary than their height — which is what produces
//! arm-like pockets in the distance field.
//!
//! All engine computations use analytic partial derivatives supplied by the
//! [`MetricKernel`]; finite differences appear only in test oracles.

use std::sync::Arc;

use thiserror::Error;

use crate::scalar::CurvatureScale;

pub mod geodesic;

/// Default radial extent of the modeled collar region.
pub const DEFAULT_R_MAX: f64 = 12.0;

/// Floor applied to the comparison scale when the sampled curvature infimum
/// is non-negative; results using the floor are flagged.
pub const CURVATURE_SCALE_FLOOR: f64 = 1e-6;

/// Tolerance for the boundary normalization `G(0,.) = 1`, `dG/dr(0,.) = 0`,
/// `E(0,.) = 1` checked at construction.
const BOUNDARY_TOL: f64 = 1e-9;

/// A metric counts as having `E == 1` when the sampled radial factor never
/// strays from one by more than this.
const UNIT_RADIAL_TOL: f64 = 1e-12;

/// Things that can go wrong constructing or interrogating a metric.
#[derive(Debug, Error)]
pub enum SurfaceError {
    /// A structural requirement on the metric failed at a sampled point.
    #[error("invalid metric: {invariant} violated at (r, theta) = ({r:.6}, {theta:.6}), value {value:.6e}")]
    InvalidMetric {
        invariant: String,
        r: f64,
        theta: f64,
        value: f64,
    },
    /// A constructor argument is outside its allowed range.
    #[error("bad surface parameter {name}: {detail}")]
    BadParameter { name: &'static str, detail: String },
    /// A named requirement of the smoothing construction does not hold.
    #[error("smoothing precondition failed: {constraint} ({detail})")]
    SmoothingPrecondition {
        constraint: &'static str,
        detail: String,
    },
    /// The adaptive integrator could not complete a requested path.
    #[error("geodesic integration failed: {detail}")]
    IntegrationFailure { detail: String },
    /// Shooting failed to produce a connecting geodesic.
    #[error("no connecting geodesic found: {detail}")]
    NoConnection { detail: String },
}

/// Analytic description of one metric: both factors of
/// `ds^2 = E^2 dr^2 + G^2 dtheta^2` together with every partial derivative
/// the curvature formula and the geodesic equations consume.
///
/// Implementations must be periodic in `theta` (period = the boundary length
/// they are constructed for) and defined for all `r >= 0`; the wrapper
/// [`FermiMetric`] enforces the boundary normalization by sampling.
pub trait MetricKernel: Send + Sync {
    /// Circumferential factor `G`.
    fn g(&self, r: f64, theta: f64) -> f64;
    /// `dG/dr`.
    fn g_r(&self, r: f64, theta: f64) -> f64;
    /// `d2G/dr2`.
    fn g_rr(&self, r: f64, theta: f64) -> f64;
    /// `dG/dtheta`.
    fn g_theta(&self, r: f64, theta: f64) -> f64;

    /// Radial factor `E` (defaults to the unit factor).
    fn e(&self, _r: f64, _theta: f64) -> f64 {
        1.0
    }
    /// `dE/dr`.
    fn e_r(&self, _r: f64, _theta: f64) -> f64 {
        0.0
    }
    /// `dE/dtheta`.
    fn e_theta(&self, _r: f64, _theta: f64) -> f64 {
        0.0
    }
    /// `d2E/dtheta2`.
    fn e_thetatheta(&self, _r: f64, _theta: f64) -> f64 {
        0.0
    }

    /// True when both factors are independent of `theta`.  Enables the
    /// angular-momentum conservation check along geodesics.
    fn rotationally_symmetric(&self) -> bool {
        false
    }

    /// Family label used in reports and error messages.
    fn family(&self) -> &'static str {
        "custom"
    }
}

/// `G = cosh(scale * r)`, `E = 1`: the rotationally symmetric collar of
/// constant curvature `-scale^2` (flat for `scale = 0`).
#[derive(Clone, Copy, Debug)]
pub struct ConstantCurvatureKernel {
    scale: f64,
}

impl ConstantCurvatureKernel {
    /// A constant-curvature collar kernel; `scale >= 0` is required.
    pub fn new(scale: f64) -> Result<Self, SurfaceError> {
        if !scale.is_finite() || scale < 0.0 {
            return Err(SurfaceError::BadParameter {
                name: "scale",
                detail: format!("must be finite and non-negative, got {scale}"),
            });
        }
        Ok(Self { scale })
    }
}

impl MetricKernel for ConstantCurvatureKernel {
    fn g(&self, r: f64, _theta: f64) -> f64 {
        (self.scale * r).cosh()
    }
    fn g_r(&self, r: f64, _theta: f64) -> f64 {
        self.scale * (self.scale * r).sinh()
    }
    fn g_rr(&self, r: f64, _theta: f64) -> f64 {
        self.scale * self.scale * (self.scale * r).cosh()
    }
    fn g_theta(&self, _r: f64, _theta: f64) -> f64 {
        0.0
    }
    fn rotationally_symmetric(&self) -> bool {
        true
    }
    fn family(&self) -> &'static str {
        "constant-curvature"
    }
}

/// One localized term added to the circumferential factor:
///
/// ```text
/// amplitude * r^2 * exp(-(r - center)^2 / (2 width^2)) * c(theta),
/// c(theta) = exp(angular_sharpness * (cos(omega (theta - angular_center)) - 1)),
/// ```
///
/// with `omega = 2 pi / period`.  The `r^2` prefactor keeps the boundary
/// normalization intact regardless of placement; `angular_sharpness = 0`
/// gives a rotationally symmetric annular term, and a negative amplitude
/// carves a waist instead of raising a bump.
#[derive(Clone, Copy, Debug)]
pub struct RadialBump {
    /// Signed strength of the term.
    pub amplitude: f64,
    /// Radial center of the Gaussian envelope.
    pub center: f64,
    /// Radial standard deviation of the envelope (must be positive).
    pub width: f64,
    /// Angular concentration; zero spreads the term over the whole circle.
    pub angular_sharpness: f64,
    /// Angular position of the term's crest.
    pub angular_center: f64,
}

impl RadialBump {
    fn validate(&self) -> Result<(), SurfaceError> {
        let ok = self.amplitude.is_finite()
            && self.center.is_finite()
            && self.center >= 0.0
            && self.width.is_finite()
            && self.width > 0.0
            && self.angular_sharpness.is_finite()
            && self.angular_sharpness >= 0.0
            && self.angular_center.is_finite();
        if ok {
            Ok(())
        } else {
            Err(SurfaceError::BadParameter {
                name: "bump",
                detail: format!("{self:?} has an out-of-range field"),
            })
        }
    }

    /// Radial profile `B(r) = r^2 exp(-(r - center)^2 / (2 width^2))` and its
    /// first two derivatives.
    fn radial(&self, r: f64) -> (f64, f64, f64) {
        let s2 = self.width * self.width;
        let d = r - self.center;
        let x = (-d * d / (2.0 * s2)).exp();
        let b = r * r * x;
        let b_r = (2.0 * r - r * r * d / s2) * x;
        let b_rr = (2.0 - 4.0 * r * d / s2 - r * r / s2 + r * r * d * d / (s2 * s2)) * x;
        (b, b_r, b_rr)
    }

    /// Angular profile `c(theta)` and its derivative.
    fn angular(&self, omega: f64, theta: f64) -> (f64, f64) {
        if self.angular_sharpness == 0.0 {
            return (1.0, 0.0);
        }
        let arg = omega * (theta - self.angular_center);
        let c = (self.angular_sharpness * (arg.cos() - 1.0)).exp();
        let c_t = -self.angular_sharpness * omega * arg.sin() * c;
        (c, c_t)
    }
}

/// `G = cosh(base_scale * r) + sum of bumps`, `E = 1`.
///
/// The workhorse family for curvature experiments: the cosh backbone fixes
/// the large-scale collar shape while each [`RadialBump`] perturbs curvature
/// in a controlled annulus/sector.
#[derive(Clone, Debug)]
pub struct BumpKernel {
    base_scale: f64,
    omega: f64,
    bumps: Vec<RadialBump>,
    symmetric: bool,
}

impl BumpKernel {
    /// Build the kernel for a boundary of length `period`.
    pub fn new(base_scale: f64, period: f64, bumps: Vec<RadialBump>) -> Result<Self, SurfaceError> {
        if !base_scale.is_finite() || base_scale < 0.0 {
            return Err(SurfaceError::BadParameter {
                name: "base_scale",
                detail: format!("must be finite and non-negative, got {base_scale}"),
            });
        }
        if !period.is_finite() || period <= 0.0 {
            return Err(SurfaceError::BadParameter {
                name: "period",
                detail: format!("must be finite and positive, got {period}"),
            });
        }
        for b in &bumps {
            b.validate()?;
        }
        let symmetric = bumps.iter().all(|b| b.angular_sharpness == 0.0);
        Ok(Self {
            base_scale,
            omega: std::f64::consts::TAU / period,
            bumps,
            symmetric,
        })
    }
}

impl MetricKernel for BumpKernel {
    fn g(&self, r: f64, theta: f64) -> f64 {
        let mut g = (self.base_scale * r).cosh();
        for b in &self.bumps {
            g += b.amplitude * b.radial(r).0 * b.angular(self.omega, theta).0;
        }
        g
    }
    fn g_r(&self, r: f64, theta: f64) -> f64 {
        let mut v = self.base_scale * (self.base_scale * r).sinh();
        for b in &self.bumps {
            v += b.amplitude * b.radial(r).1 * b.angular(self.omega, theta).0;
        }
        v
    }
    fn g_rr(&self, r: f64, theta: f64) -> f64 {
        let mut v = self.base_scale * self.base_scale * (self.base_scale * r).cosh();
        for b in &self.bumps {
            v += b.amplitude * b.radial(r).2 * b.angular(self.omega, theta).0;
        }
        v
    }
    fn g_theta(&self, r: f64, theta: f64) -> f64 {
        let mut v = 0.0;
        for b in &self.bumps {
            v += b.amplitude * b.radial(r).0 * b.angular(self.omega, theta).1;
        }
        v
    }
    fn rotationally_symmetric(&self) -> bool {
        self.symmetric
    }
    fn family(&self) -> &'static str {
        "gaussian-bump"
    }
}

/// Parameters of the radial-cost ridges that grow cactus arms.
///
/// The radial factor becomes
///
/// ```text
/// E = 1 + height * u(r) * window(r) * C(theta),
/// u(r)      = exp(-(r - center)^2 / (2 radial_width^2)),
/// window(r) = 1 - exp(-(r / onset)^2),
/// C(theta)  = sum over arms of exp(angular_sharpness * (cos(omega (theta - theta_arm)) - 1)),
/// ```
///
/// with one term per arm at evenly spaced angular positions.  The window
/// keeps `E(0,.) = 1` and `dE/dr(0,.) = 0` exactly, so the boundary stays a
/// unit-speed geodesic and the distance field still grows off the boundary at
/// unit rate.
#[derive(Clone, Copy, Debug)]
pub struct ArmRidgeParams {
    /// Peak extra radial cost (the ridge raises `E` to about `1 + height`).
    pub height: f64,
    /// Radial center of the ridge annulus.
    pub center: f64,
    /// Radial standard deviation of the ridge (must be positive).
    pub radial_width: f64,
    /// Length scale of the boundary window (must be positive).
    pub onset: f64,
    /// Angular concentration of each arm sector.
    pub angular_sharpness: f64,
    /// Number of evenly spaced arms (at least one).
    pub arm_count: usize,
}

impl ArmRidgeParams {
    fn validate(&self) -> Result<(), SurfaceError> {
        let ok = self.height.is_finite()
            && self.height >= 0.0
            && self.center.is_finite()
            && self.center > 0.0
            && self.radial_width.is_finite()
            && self.radial_width > 0.0
            && self.onset.is_finite()
            && self.onset > 0.0
            && self.angular_sharpness.is_finite()
            && self.angular_sharpness >= 0.0
            && self.arm_count >= 1;
        if ok {
            Ok(())
        } else {
            Err(SurfaceError::BadParameter {
                name: "ridge",
                detail: format!("{self:?} has an out-of-range field"),
            })
        }
    }

    /// Angular centers of the arms for a boundary of length `period`.
    pub fn centers(&self, period: f64) -> Vec<f64> {
        (0..self.arm_count)
            .map(|k| period * (k as f64 + 0.5) / self.arm_count as f64)
            .collect()
    }
}

/// Cactus family: a cosh backbone with optional waist terms in `G` plus
/// radial-cost ridges in `E` that pocket off arm regions of the distance
/// field.
#[derive(Clone, Debug)]
pub struct CactusKernel {
    trunk: BumpKernel,
    ridge: ArmRidgeParams,
    omega: f64,
    centers: Vec<f64>,
}

impl CactusKernel {
    /// Build the kernel for a boundary of length `period`; `waist` terms are
    /// added to `G` exactly as in [`BumpKernel`].
    pub fn new(
        base_scale: f64,
        period: f64,
        waist: Vec<RadialBump>,
        ridge: ArmRidgeParams,
    ) -> Result<Self, SurfaceError> {
        ridge.validate()?;
        let trunk = BumpKernel::new(base_scale, period, waist)?;
        let centers = ridge.centers(period);
        Ok(Self {
            trunk,
            ridge,
            omega: std::f64::consts::TAU / period,
            centers,
        })
    }

    /// Ridge parameters (used by distance-field oracles).
    pub fn ridge(&self) -> &ArmRidgeParams {
        &self.ridge
    }

    /// `u(r) * window(r)` and its derivative.
    fn radial_ridge(&self, r: f64) -> (f64, f64) {
        let p = &self.ridge;
        let s2 = p.radial_width * p.radial_width;
        let d = r - p.center;
        let u = (-d * d / (2.0 * s2)).exp();
        let u_r = -(d / s2) * u;
        let q = (r / p.onset) * (r / p.onset);
        let w = 1.0 - (-q).exp();
        let w_r = (2.0 * r / (p.onset * p.onset)) * (-q).exp();
        (u * w, u_r * w + u * w_r)
    }

    /// `C(theta)` with its first and second derivatives.
    fn angular_ridge(&self, theta: f64) -> (f64, f64, f64) {
        let kc = self.ridge.angular_sharpness;
        let (mut c, mut c_t, mut c_tt) = (0.0, 0.0, 0.0);
        for &tk in &self.centers {
            let arg = self.omega * (theta - tk);
            let m = kc * (arg.cos() - 1.0);
            let m_t = -kc * self.omega * arg.sin();
            let m_tt = -kc * self.omega * self.omega * arg.cos();
            let term = m.exp();
            c += term;
            c_t += m_t * term;
            c_tt += (m_tt + m_t * m_t) * term;
        }
        (c, c_t, c_tt)
    }
}

impl MetricKernel for CactusKernel {
    fn g(&self, r: f64, theta: f64) -> f64 {
        self.trunk.g(r, theta)
    }
    fn g_r(&self, r: f64, theta: f64) -> f64 {
        self.trunk.g_r(r, theta)
    }
    fn g_rr(&self, r: f64, theta: f64) -> f64 {
        self.trunk.g_rr(r, theta)
    }
    fn g_theta(&self, r: f64, theta: f64) -> f64 {
        self.trunk.g_theta(r, theta)
    }
    fn e(&self, r: f64, theta: f64) -> f64 {
        1.0 + self.ridge.height * self.radial_ridge(r).0 * self.angular_ridge(theta).0
    }
    fn e_r(&self, r: f64, theta: f64) -> f64 {
        self.ridge.height * self.radial_ridge(r).1 * self.angular_ridge(theta).0
    }
    fn e_theta(&self, r: f64, theta: f64) -> f64 {
        self.ridge.height * self.radial_ridge(r).0 * self.angular_ridge(theta).1
    }
    fn e_thetatheta(&self, r: f64, theta: f64) -> f64 {
        self.ridge.height * self.radial_ridge(r).0 * self.angular_ridge(theta).2
    }
    fn rotationally_symmetric(&self) -> bool {
        false
    }
    fn family(&self) -> &'static str {
        "multi-bump-cactus"
    }
}

/// Result of scanning the Gaussian curvature for its infimum.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureBound {
    /// Sampled infimum of the curvature.
    pub inf_curvature: f64,
    /// Comparison scale `sqrt(max(floor^2, -inf))`.
    pub k: f64,
    /// True when the infimum was non-negative and the floor engaged.
    pub floored: bool,
    /// Location of the sampled minimizer.
    pub at: (f64, f64),
}

impl CurvatureBound {
    /// The comparison scale as a checked quantity.
    pub fn scale(&self) -> CurvatureScale {
        CurvatureScale::new(self.k).expect("floored scale is positive")
    }
}

/// A validated metric on the half-open cylinder `[0, r_max] x circle`.
///
/// Construction samples the kernel to enforce the boundary normalization
/// (`G(0,.) = 1`, `dG/dr(0,.) = 0`, `E(0,.) = 1`) and positivity of both
/// factors; all later machinery may then assume a well-formed collar chart.
#[derive(Clone)]
pub struct FermiMetric {
    kernel: Arc<dyn MetricKernel>,
    boundary_length: f64,
    r_max: f64,
    unit_radial: bool,
    sup_radial_factor: f64,
}

impl std::fmt::Debug for FermiMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FermiMetric")
            .field("family", &self.kernel.family())
            .field("boundary_length", &self.boundary_length)
            .field("r_max", &self.r_max)
            .field("unit_radial", &self.unit_radial)
            .finish()
    }
}

impl FermiMetric {
    /// Wrap and validate an arbitrary kernel.
    pub fn from_kernel(
        kernel: Arc<dyn MetricKernel>,
        boundary_length: f64,
        r_max: f64,
    ) -> Result<Self, SurfaceError> {
        if !boundary_length.is_finite() || boundary_length <= 0.0 {
            return Err(SurfaceError::BadParameter {
                name: "boundary_length",
                detail: format!("must be finite and positive, got {boundary_length}"),
            });
        }
        if !r_max.is_finite() || r_max <= 0.0 {
            return Err(SurfaceError::BadParameter {
                name: "r_max",
                detail: format!("must be finite and positive, got {r_max}"),
            });
        }
        let (unit_radial, sup_radial_factor) =
            validate_kernel(kernel.as_ref(), boundary_length, r_max)?;
        Ok(Self {
            kernel,
            boundary_length,
            r_max,
            unit_radial,
            sup_radial_factor,
        })
    }

    /// Constant-curvature collar `G = cosh(scale r)`.
    pub fn constant_curvature(
        scale: f64,
        boundary_length: f64,
        r_max: f64,
    ) -> Result<Self, SurfaceError> {
        let kernel = ConstantCurvatureKernel::new(scale)?;
        Self::from_kernel(Arc::new(kernel), boundary_length, r_max)
    }

    /// Cosh backbone plus localized bump/waist terms in `G`.
    pub fn gaussian_bump(
        base_scale: f64,
        bumps: Vec<RadialBump>,
        boundary_length: f64,
        r_max: f64,
    ) -> Result<Self, SurfaceError> {
        let kernel = BumpKernel::new(base_scale, boundary_length, bumps)?;
        Self::from_kernel(Arc::new(kernel), boundary_length, r_max)
    }

    /// Cactus: cosh backbone, optional waists in `G`, radial-cost ridges in `E`.
    pub fn cactus(
        base_scale: f64,
        waist: Vec<RadialBump>,
        ridge: ArmRidgeParams,
        boundary_length: f64,
        r_max: f64,
    ) -> Result<Self, SurfaceError> {
        let kernel = CactusKernel::new(base_scale, boundary_length, waist, ridge)?;
        Self::from_kernel(Arc::new(kernel), boundary_length, r_max)
    }

    /// The underlying kernel.
    pub fn kernel(&self) -> &Arc<dyn MetricKernel> {
        &self.kernel
    }

    /// Period of the `theta` coordinate = length of the boundary geodesic.
    pub fn boundary_length(&self) -> f64 {
        self.boundary_length
    }

    /// Radial extent of the modeled region.
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// True when the sampled radial factor is identically one, i.e. `r` is
    /// the exact distance to the boundary.
    pub fn unit_radial(&self) -> bool {
        self.unit_radial
    }

    /// Sampled upper bound for the radial factor (used to cap path lengths).
    pub fn sup_radial_factor(&self) -> f64 {
        self.sup_radial_factor
    }

    /// Reduce `theta` into `[0, boundary_length)`.
    pub fn wrap_theta(&self, theta: f64) -> f64 {
        let w = theta.rem_euclid(self.boundary_length);
        if w == self.boundary_length {
            0.0
        } else {
            w
        }
    }

    /// Circumferential factor `G`.
    pub fn g(&self, r: f64, theta: f64) -> f64 {
        self.kernel.g(r, theta)
    }
    /// `dG/dr`.
    pub fn g_r(&self, r: f64, theta: f64) -> f64 {
        self.kernel.g_r(r, theta)
    }
    /// `d2G/dr2`.
    pub fn g_rr(&self, r: f64, theta: f64) -> f64 {
        self.kernel.g_rr(r, theta)
    }
    /// `dG/dtheta`.
    pub fn g_theta(&self, r: f64, theta: f64) -> f64 {
        self.kernel.g_theta(r, theta)
    }
    /// Radial factor `E`.
    pub fn e(&self, r: f64, theta: f64) -> f64 {
        self.kernel.e(r, theta)
    }
    /// `dE/dr`.
    pub fn e_r(&self, r: f64, theta: f64) -> f64 {
        self.kernel.e_r(r, theta)
    }
    /// `dE/dtheta`.
    pub fn e_theta(&self, r: f64, theta: f64) -> f64 {
        self.kernel.e_theta(r, theta)
    }
    /// `d2E/dtheta2`.
    pub fn e_thetatheta(&self, r: f64, theta: f64) -> f64 {
        self.kernel.e_thetatheta(r, theta)
    }

    /// Gaussian curvature from the analytic partials:
    ///
    /// ```text
    /// K = -( d/dr (G_r / E) + d/dtheta (E_theta / G) ) / (E G).
    /// ```
    pub fn gauss_curvature(&self, r: f64, theta: f64) -> f64 {
        let k = self.kernel.as_ref();
        let e = k.e(r, theta);
        let g = k.g(r, theta);
        let radial = (k.g_rr(r, theta) * e - k.g_r(r, theta) * k.e_r(r, theta)) / (e * e);
        let angular =
            (k.e_thetatheta(r, theta) * g - k.e_theta(r, theta) * k.g_theta(r, theta)) / (g * g);
        -(radial + angular) / (e * g)
    }

    /// Sampled curvature infimum over the default `2048 x 1024` grid with
    /// local refinement around the minimizer.
    pub fn curvature_lower_bound(&self) -> CurvatureBound {
        self.curvature_lower_bound_with(2048, 1024)
    }

    /// Sampled curvature infimum over an `nr x ntheta` grid (radial rows
    /// include both endpoints, angular columns cover one period) followed by
    /// three rounds of local grid refinement around the minimizer.
    pub fn curvature_lower_bound_with(&self, nr: usize, ntheta: usize) -> CurvatureBound {
        let nr = nr.max(2);
        let ntheta = ntheta.max(1);
        let dr = self.r_max / (nr - 1) as f64;
        let dt = self.boundary_length / ntheta as f64;
        let mut best = (f64::INFINITY, (0.0, 0.0));
        for i in 0..nr {
            let r = i as f64 * dr;
            for j in 0..ntheta {
                let t = j as f64 * dt;
                let k = self.gauss_curvature(r, t);
                if k < best.0 {
                    best = (k, (r, t));
                }
            }
        }
        let mut span_r = dr;
        let mut span_t = dt;
        for _ in 0..3 {
            let (r0, t0) = best.1;
            for i in 0..33 {
                let r = (r0 + span_r * (i as f64 / 16.0 - 1.0)).clamp(0.0, self.r_max);
                for j in 0..33 {
                    let t = t0 + span_t * (j as f64 / 16.0 - 1.0);
                    let k = self.gauss_curvature(r, t);
                    if k < best.0 {
                        best = (k, (r, t));
                    }
                }
            }
            span_r /= 8.0;
            span_t /= 8.0;
        }
        let (inf_curvature, at) = best;
        let floored = -inf_curvature < CURVATURE_SCALE_FLOOR * CURVATURE_SCALE_FLOOR;
        let k = (-inf_curvature)
            .max(CURVATURE_SCALE_FLOOR * CURVATURE_SCALE_FLOOR)
            .sqrt();
        CurvatureBound {
            inf_curvature,
            k,
            floored,
            at: (at.0, self.wrap_theta(at.1)),
        }
    }
}

/// Sample the kernel on a grid: boundary normalization, positivity, radial
/// factor classification.  Returns `(unit_radial, sup E)`.
fn validate_kernel(
    kernel: &dyn MetricKernel,
    boundary_length: f64,
    r_max: f64,
) -> Result<(bool, f64), SurfaceError> {
    let nt = 257;
    for j in 0..nt {
        let t = boundary_length * j as f64 / nt as f64;
        let g0 = kernel.g(0.0, t);
        if !((g0 - 1.0).abs() <= BOUNDARY_TOL) {
            return Err(SurfaceError::InvalidMetric {
                invariant: "G(0, theta) = 1".into(),
                r: 0.0,
                theta: t,
                value: g0,
            });
        }
        let gr0 = kernel.g_r(0.0, t);
        if !(gr0.abs() <= BOUNDARY_TOL) {
            return Err(SurfaceError::InvalidMetric {
                invariant: "dG/dr(0, theta) = 0".into(),
                r: 0.0,
                theta: t,
                value: gr0,
            });
        }
        let e0 = kernel.e(0.0, t);
        if !((e0 - 1.0).abs() <= BOUNDARY_TOL) {
            return Err(SurfaceError::InvalidMetric {
                invariant: "E(0, theta) = 1".into(),
                r: 0.0,
                theta: t,
                value: e0,
            });
        }
    }
    let nr = 257;
    let mut sup_e: f64 = 1.0;
    let mut max_dev: f64 = 0.0;
    for i in 0..nr {
        let r = r_max * i as f64 / (nr - 1) as f64;
        for j in 0..nt {
            let t = boundary_length * j as f64 / nt as f64;
            let g = kernel.g(r, t);
            if !(g > 0.0) || !g.is_finite() {
                return Err(SurfaceError::InvalidMetric {
                    invariant: "G > 0".into(),
                    r,
                    theta: t,
                    value: g,
                });
            }
            let e = kernel.e(r, t);
            if !(e > 0.0) || !e.is_finite() {
                return Err(SurfaceError::InvalidMetric {
                    invariant: "E > 0".into(),
                    r,
                    theta: t,
                    value: e,
                });
            }
            sup_e = sup_e.max(e);
            max_dev = max_dev.max((e - 1.0).abs());
        }
    }
    Ok((max_dev <= UNIT_RADIAL_TOL, sup_e))
}

/// Exact bound for the first two derivatives of the rescaled smoothstep used
/// in the taper: `max |chi''| = 40 / sqrt(3)` (the `|chi'|` maximum, `15/4`,
/// is smaller).
fn chi_derivative_bound() -> f64 {
    40.0 / 3.0_f64.sqrt()
}

/// Radial taper of the smoothing construction.
///
/// With `chi` the quintic smoothstep rescaled to ramp on `[1/4, 3/4]` and
/// `v = delta^(1/delta)`, the taper is
///
/// ```text
/// phi(x) = chi(x/v) x^delta + chi(x/w) (1 - x^delta),
/// ```
///
/// identically `0` for `x <= v/4` and identically `1` for `x >= 3w/4`.
/// Derivatives are exposed premultiplied by `x` and `x^2`: the bare
/// derivatives blow up like `x^(delta-1)` near the inner ramp, but every
/// place they are consumed pairs them with a factor vanishing at least as
/// fast, so the premultiplied forms keep all intermediates finite even when
/// `v` is subnormal-range tiny.
#[derive(Clone, Copy, Debug)]
struct TaperProfile {
    delta: f64,
    v: f64,
    w: f64,
}

/// Quintic smoothstep on `[0, 1]` and derivatives.
fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}
fn smoothstep_p(t: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return 0.0;
    }
    30.0 * t * t * (1.0 - t) * (1.0 - t)
}
fn smoothstep_pp(t: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return 0.0;
    }
    60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)
}

/// Multiply, treating an exactly-zero left factor as absorbing even when the
/// right factor overflowed to infinity (the ramps are disjoint, so a zero
/// cutoff always accompanies the huge ratio).
fn gated(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * b
    }
}

impl TaperProfile {
    fn chi(u: f64) -> f64 {
        smoothstep(2.0 * (u - 0.25))
    }
    fn chi_p(u: f64) -> f64 {
        2.0 * smoothstep_p(2.0 * (u - 0.25))
    }
    fn chi_pp(u: f64) -> f64 {
        4.0 * smoothstep_pp(2.0 * (u - 0.25))
    }

    fn phi(&self, x: f64) -> f64 {
        if x <= self.v / 4.0 {
            return 0.0;
        }
        let p = x.powf(self.delta);
        let cv = Self::chi(x / self.v);
        let cw = Self::chi(x / self.w);
        cv * p + cw * (1.0 - p)
    }

    /// `phi'(x) * x`.
    fn phi_p_x(&self, x: f64) -> f64 {
        if x <= self.v / 4.0 {
            return 0.0;
        }
        let p = x.powf(self.delta);
        let uv = x / self.v;
        let uw = x / self.w;
        gated(Self::chi_p(uv), uv) * p + Self::chi(uv) * self.delta * p
            + Self::chi_p(uw) * uw * (1.0 - p)
            - Self::chi(uw) * self.delta * p
    }

    /// `phi''(x) * x^2`.
    fn phi_pp_xx(&self, x: f64) -> f64 {
        if x <= self.v / 4.0 {
            return 0.0;
        }
        let p = x.powf(self.delta);
        let uv = x / self.v;
        let uw = x / self.w;
        let d = self.delta;
        gated(Self::chi_pp(uv), uv * uv) * p
            + 2.0 * gated(Self::chi_p(uv), uv) * d * p
            + Self::chi(uv) * d * (d - 1.0) * p
            + Self::chi_pp(uw) * uw * uw * (1.0 - p)
            - 2.0 * Self::chi_p(uw) * uw * d * p
            - Self::chi(uw) * d * (d - 1.0) * p
    }
}

/// Kernel of the smoothed metric `G~ = 1 + phi(r) (G - 1)`, `E = 1`.
struct SmoothedKernel {
    base: Arc<dyn MetricKernel>,
    taper: TaperProfile,
}

impl MetricKernel for SmoothedKernel {
    fn g(&self, r: f64, theta: f64) -> f64 {
        1.0 + self.taper.phi(r) * (self.base.g(r, theta) - 1.0)
    }
    fn g_r(&self, r: f64, theta: f64) -> f64 {
        if r <= self.taper.v / 4.0 {
            return 0.0;
        }
        let gb = self.base.g(r, theta) - 1.0;
        self.taper.phi_p_x(r) * (gb / r) + self.taper.phi(r) * self.base.g_r(r, theta)
    }
    fn g_rr(&self, r: f64, theta: f64) -> f64 {
        if r <= self.taper.v / 4.0 {
            return 0.0;
        }
        let gb = self.base.g(r, theta) - 1.0;
        let gb_r = self.base.g_r(r, theta);
        self.taper.phi_pp_xx(r) * ((gb / r) / r)
            + 2.0 * self.taper.phi_p_x(r) * (gb_r / r)
            + self.taper.phi(r) * self.base.g_rr(r, theta)
    }
    fn g_theta(&self, r: f64, theta: f64) -> f64 {
        self.taper.phi(r) * self.base.g_theta(r, theta)
    }
    fn rotationally_symmetric(&self) -> bool {
        self.base.rotationally_symmetric()
    }
    fn family(&self) -> &'static str {
        "smoothed"
    }
}

/// Certificate accompanying a smoothed metric.
///
/// `kappa` is derived from the taper's shape constant `chi_bound` and the
/// boundary-zone Hessian bound `hessian_bound`; the three sampled suprema are
/// each reported next to the bound they must stay under, and the headline
/// guarantee is `inf K~ >= inf K - curvature_drop_bound`.
#[derive(Clone, Copy, Debug)]
pub struct SmoothingReport {
    /// Taper exponent.
    pub delta: f64,
    /// Outer taper radius: the metric is untouched beyond `3w/4`.
    pub w: f64,
    /// Inner taper radius `delta^(1/delta)`: the metric is exactly flat
    /// below `v/4`.
    pub v: f64,
    /// Bound for the first two derivatives of the taper's cutoff.
    pub chi_bound: f64,
    /// `sup |d2G/dr2|` over the taper zone `[0, w]`.
    pub hessian_bound: f64,
    /// Derived constant controlling the curvature perturbation.
    pub kappa: f64,
    /// Sampled `sup G / G~` over the taper zone.
    pub sup_metric_ratio: f64,
    /// Its guarantee: `1 + delta * hessian_bound / 2`.
    pub metric_ratio_bound: f64,
    /// Sampled `sup |phi' dG/dr|`.
    pub sup_first_order: f64,
    /// Sampled `sup |phi'' (G - 1)|`.
    pub sup_second_order: f64,
    /// Guarantee for both derivative terms: `delta * kappa`.
    pub derivative_bound: f64,
    /// Sampled curvature infimum of the base metric.
    pub inf_curvature_base: f64,
    /// Sampled curvature infimum of the smoothed metric (taper zone scanned
    /// at high radial resolution).
    pub inf_curvature_smoothed: f64,
    /// Headline allowance: `10 * delta * kappa`.
    pub curvature_drop_bound: f64,
}

/// Flatten a collar of the boundary.
///
/// Returns a metric identical to the input for `r >= 3w/4`, exactly flat
/// (`G~ = 1`) for `r <= delta^(1/delta)/4`, interpolated by the taper in
/// between, together with a report certifying that the construction lowered
/// the curvature infimum by at most `10 * delta * kappa`.
///
/// Preconditions (each rejected by name): the metric must have `E == 1`;
/// `w < 1/4`; `|G - 1| < 1/2` throughout the taper zone; and the taper
/// ramps must stay disjoint, `delta^(1/delta) < w/3`.
pub fn smoothing_transform(
    metric: &FermiMetric,
    delta: f64,
    w: f64,
) -> Result<(FermiMetric, SmoothingReport), SurfaceError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(SurfaceError::BadParameter {
            name: "delta",
            detail: format!("must lie in (0, 1), got {delta}"),
        });
    }
    if !(w > 0.0 && w < 0.25) {
        return Err(SurfaceError::SmoothingPrecondition {
            constraint: "w < 1/4",
            detail: format!("got w = {w}"),
        });
    }
    if !metric.unit_radial() {
        return Err(SurfaceError::SmoothingPrecondition {
            constraint: "E == 1",
            detail: format!(
                "the {} metric has a non-unit radial factor",
                metric.kernel().family()
            ),
        });
    }
    let v = delta.powf(1.0 / delta);
    if !v.is_normal() {
        return Err(SurfaceError::BadParameter {
            name: "delta",
            detail: format!("delta^(1/delta) underflows for delta = {delta}"),
        });
    }
    if !(v < w / 3.0) {
        return Err(SurfaceError::SmoothingPrecondition {
            constraint: "delta^(1/delta) < w/3",
            detail: format!("got v = {v:.3e} against w = {w}"),
        });
    }

    // Taper-zone scan grid: linear coverage of [0, w] plus logarithmic
    // coverage down to the inner ramp, which can sit hundreds of decades
    // below w.
    let nt = 129;
    let thetas: Vec<f64> = (0..nt)
        .map(|j| metric.boundary_length() * j as f64 / nt as f64)
        .collect();
    let mut radii: Vec<f64> = (0..=1024).map(|i| w * i as f64 / 1024.0).collect();
    let lo = (v / 8.0).log10();
    let hi = w.log10();
    for i in 0..=1024 {
        radii.push(10.0_f64.powf(lo + (hi - lo) * i as f64 / 1024.0));
    }
    for i in 0..=256 {
        radii.push(v * (0.25 + 0.5 * i as f64 / 256.0));
    }

    let mut sup_g: f64 = 0.0;
    let mut b: f64 = 0.0;
    for &r in &radii {
        for &t in &thetas {
            sup_g = sup_g.max((metric.g(r, t) - 1.0).abs());
            b = b.max(metric.g_rr(r, t).abs());
        }
    }
    if !(sup_g < 0.5) {
        return Err(SurfaceError::SmoothingPrecondition {
            constraint: "|G - 1| < 1/2 on [0, w]",
            detail: format!("sampled sup |G - 1| = {sup_g:.6}"),
        });
    }

    let a = chi_derivative_bound();
    let e = std::f64::consts::E;
    let kappa = b * (a + 1.0)
        .max((3.0 * a + 1.0) / 2.0)
        .max(2.0 + a / (w * e))
        .max(1.0 + a * (1.0 + 1.0 / (2.0 * e)) / w);

    let taper = TaperProfile { delta, v, w };
    let smoothed_kernel = Arc::new(SmoothedKernel {
        base: Arc::clone(metric.kernel()),
        taper,
    });
    let smoothed = FermiMetric::from_kernel(
        smoothed_kernel,
        metric.boundary_length(),
        metric.r_max(),
    )?;

    // Sampled suprema of the three certified quantities.
    let mut sup_metric_ratio: f64 = 1.0;
    let mut sup_first_order: f64 = 0.0;
    let mut sup_second_order: f64 = 0.0;
    for &r in &radii {
        for &t in &thetas {
            let ratio = metric.g(r, t) / smoothed.g(r, t);
            sup_metric_ratio = sup_metric_ratio.max(ratio);
            if r > v / 4.0 {
                let gb = metric.g(r, t) - 1.0;
                let gb_r = metric.g_r(r, t);
                sup_first_order = sup_first_order.max((taper.phi_p_x(r) * (gb_r / r)).abs());
                sup_second_order =
                    sup_second_order.max((taper.phi_pp_xx(r) * ((gb / r) / r)).abs());
            }
        }
    }

    let base_bound = metric.curvature_lower_bound();
    let smoothed_bound = smoothed.curvature_lower_bound();
    // The default scan cannot resolve the taper zone, so rescan it densely.
    let mut inf_smoothed = smoothed_bound.inf_curvature;
    for &r in &radii {
        for &t in &thetas {
            inf_smoothed = inf_smoothed.min(smoothed.gauss_curvature(r, t));
        }
    }

    let report = SmoothingReport {
        delta,
        w,
        v,
        chi_bound: a,
        hessian_bound: b,
        kappa,
        sup_metric_ratio,
        metric_ratio_bound: 1.0 + delta * b / 2.0,
        sup_first_order,
        sup_second_order,
        derivative_bound: delta * kappa,
        inf_curvature_base: base_bound.inf_curvature,
        inf_curvature_smoothed: inf_smoothed,
        curvature_drop_bound: 10.0 * delta * kappa,
    };
    Ok((smoothed, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sample_points() -> Vec<(f64, f64)> {
        let mut pts = Vec::new();
        for &r in &[0.05, 0.4, 1.1, 1.9, 2.4, 3.2, 5.0] {
            for &t in &[0.1, 1.0, 2.2, 3.9, 5.5] {
                pts.push((r, t));
            }
        }
        pts
    }

    fn test_bump_kernel() -> BumpKernel {
        BumpKernel::new(
            1.0,
            TAU,
            vec![
                RadialBump {
                    amplitude: 0.4,
                    center: 2.0,
                    width: 0.6,
                    angular_sharpness: 2.0,
                    angular_center: 1.0,
                },
                RadialBump {
                    amplitude: -0.15,
                    center: 1.2,
                    width: 0.5,
                    angular_sharpness: 0.0,
                    angular_center: 0.0,
                },
            ],
        )
        .unwrap()
    }

    fn test_cactus_kernel() -> CactusKernel {
        CactusKernel::new(
            1.0,
            TAU,
            vec![RadialBump {
                amplitude: -0.1,
                center: 3.0,
                width: 0.8,
                angular_sharpness: 0.0,
                angular_center: 0.0,
            }],
            ArmRidgeParams {
                height: 2.5,
                center: 2.0,
                radial_width: 0.4,
                onset: 0.7,
                angular_sharpness: 6.0,
                arm_count: 3,
            },
        )
        .unwrap()
    }

    #[test]
    fn constant_curvature_matches_the_model() {
        let m = FermiMetric::constant_curvature(1.3, TAU, DEFAULT_R_MAX).unwrap();
        for (r, t) in sample_points() {
            assert!((m.gauss_curvature(r, t) + 1.69).abs() < 1e-10);
        }
        let bound = m.curvature_lower_bound_with(64, 32);
        assert!((bound.inf_curvature + 1.69).abs() < 1e-9);
        assert!((bound.k - 1.3).abs() < 1e-9);
        assert!(!bound.floored);

        let flat = FermiMetric::constant_curvature(0.0, TAU, DEFAULT_R_MAX).unwrap();
        let fb = flat.curvature_lower_bound_with(64, 32);
        assert!(fb.floored);
        assert_eq!(fb.k, CURVATURE_SCALE_FLOOR);
        assert_eq!(fb.scale().get(), CURVATURE_SCALE_FLOOR);
    }

    struct ShiftedKernel;
    impl MetricKernel for ShiftedKernel {
        fn g(&self, r: f64, _t: f64) -> f64 {
            r.cosh() + 0.1
        }
        fn g_r(&self, r: f64, _t: f64) -> f64 {
            r.sinh()
        }
        fn g_rr(&self, r: f64, _t: f64) -> f64 {
            r.cosh()
        }
        fn g_theta(&self, _r: f64, _t: f64) -> f64 {
            0.0
        }
    }

    struct TiltedKernel;
    impl MetricKernel for TiltedKernel {
        fn g(&self, r: f64, _t: f64) -> f64 {
            r.exp()
        }
        fn g_r(&self, r: f64, _t: f64) -> f64 {
            r.exp()
        }
        fn g_rr(&self, r: f64, _t: f64) -> f64 {
            r.exp()
        }
        fn g_theta(&self, _r: f64, _t: f64) -> f64 {
            0.0
        }
    }

    #[test]
    fn boundary_normalization_is_enforced() {
        let err = FermiMetric::from_kernel(Arc::new(ShiftedKernel), TAU, 4.0).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::InvalidMetric { ref invariant, .. } if invariant.contains("G(0")
        ));
        let err = FermiMetric::from_kernel(Arc::new(TiltedKernel), TAU, 4.0).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::InvalidMetric { ref invariant, .. } if invariant.contains("dG/dr")
        ));
    }

    /// Central finite difference in the first argument.
    fn fd_r(f: &dyn Fn(f64, f64) -> f64, r: f64, t: f64) -> f64 {
        let h = 1e-5;
        (f(r + h, t) - f(r - h, t)) / (2.0 * h)
    }
    /// Central finite difference in the second argument.
    fn fd_t(f: &dyn Fn(f64, f64) -> f64, r: f64, t: f64) -> f64 {
        let h = 1e-5;
        (f(r, t + h) - f(r, t - h)) / (2.0 * h)
    }

    fn check_partials(k: &dyn MetricKernel) {
        for (r, t) in sample_points() {
            let cases: Vec<(f64, f64, &str)> = vec![
                (fd_r(&|r, t| k.g(r, t), r, t), k.g_r(r, t), "g_r"),
                (fd_r(&|r, t| k.g_r(r, t), r, t), k.g_rr(r, t), "g_rr"),
                (fd_t(&|r, t| k.g(r, t), r, t), k.g_theta(r, t), "g_theta"),
                (fd_r(&|r, t| k.e(r, t), r, t), k.e_r(r, t), "e_r"),
                (fd_t(&|r, t| k.e(r, t), r, t), k.e_theta(r, t), "e_theta"),
                (
                    fd_t(&|r, t| k.e_theta(r, t), r, t),
                    k.e_thetatheta(r, t),
                    "e_thetatheta",
                ),
            ];
            for (fd, an, name) in cases {
                assert!(
                    (fd - an).abs() <= 1e-6 * (1.0 + an.abs()),
                    "{name} at ({r}, {t}): fd {fd} vs analytic {an}"
                );
            }
        }
    }

    #[test]
    fn bump_partials_match_finite_differences() {
        check_partials(&test_bump_kernel());
    }

    #[test]
    fn cactus_partials_match_finite_differences() {
        check_partials(&test_cactus_kernel());
    }

    #[test]
    fn curvature_assembly_matches_finite_differences() {
        let kernel = test_cactus_kernel();
        let m = FermiMetric::from_kernel(Arc::new(test_cactus_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        for (r, t) in sample_points() {
            let radial = fd_r(&|r, t| kernel.g_r(r, t) / kernel.e(r, t), r, t);
            let angular = fd_t(&|r, t| kernel.e_theta(r, t) / kernel.g(r, t), r, t);
            let k_fd = -(radial + angular) / (kernel.e(r, t) * kernel.g(r, t));
            let k_an = m.gauss_curvature(r, t);
            assert!(
                (k_fd - k_an).abs() <= 1e-6 * (1.0 + k_an.abs()),
                "curvature at ({r}, {t}): fd {k_fd} vs analytic {k_an}"
            );
        }
    }

    #[test]
    fn small_radius_metric_sandwich_holds() {
        let m = FermiMetric::from_kernel(Arc::new(test_bump_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        let mut kappa2: f64 = 0.0;
        for i in 0..=64 {
            let r = 0.1 * i as f64 / 64.0;
            for j in 0..64 {
                let t = TAU * j as f64 / 64.0;
                kappa2 = kappa2.max(m.gauss_curvature(r, t).abs());
            }
        }
        for i in 0..=64 {
            let r = 0.1 * i as f64 / 64.0;
            for j in 0..64 {
                let t = TAU * j as f64 / 64.0;
                let g = m.g(r, t);
                assert!(g >= 1.0 - kappa2 * r * r - 1e-9);
                assert!(g <= 1.0 + kappa2 * r * r + 1e-9);
            }
        }
    }

    #[test]
    fn curvature_lower_bound_finds_the_bump_dip() {
        let m = FermiMetric::from_kernel(Arc::new(test_bump_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        let bound = m.curvature_lower_bound_with(512, 256);
        // The backbone alone has K = -1; the bump terms must push below it.
        assert!(bound.inf_curvature < -1.05);
        // An independent coarse scan can never beat the refined bound.
        let mut coarse = f64::INFINITY;
        for i in 0..256 {
            let r = DEFAULT_R_MAX * i as f64 / 255.0;
            for j in 0..128 {
                let t = TAU * j as f64 / 128.0;
                coarse = coarse.min(m.gauss_curvature(r, t));
            }
        }
        assert!(bound.inf_curvature <= coarse + 1e-12);
    }

    #[test]
    fn smoothing_is_the_identity_on_the_flat_cylinder() {
        let flat = FermiMetric::constant_curvature(0.0, TAU, DEFAULT_R_MAX).unwrap();
        let (sm, report) = smoothing_transform(&flat, 0.1, 0.1).unwrap();
        assert_eq!(report.hessian_bound, 0.0);
        assert_eq!(report.kappa, 0.0);
        assert_eq!(report.sup_first_order, 0.0);
        assert_eq!(report.sup_second_order, 0.0);
        for (r, t) in sample_points() {
            assert_eq!(sm.g(r, t), 1.0);
            assert!(sm.gauss_curvature(r, t).abs() < 1e-15);
        }
    }

    #[test]
    fn smoothing_is_exact_outside_the_taper() {
        let m = FermiMetric::from_kernel(Arc::new(test_bump_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        let delta = 0.1;
        let w = 0.1;
        let (sm, report) = smoothing_transform(&m, delta, w).unwrap();
        // Exactly flat below the inner ramp.
        for &r in &[0.0, report.v / 8.0, report.v / 4.0] {
            assert_eq!(sm.g(r, 0.3), 1.0);
            assert_eq!(sm.g_r(r, 0.3), 0.0);
        }
        // Identical to the input beyond 3w/4.
        for &r in &[0.075 + 1e-9, 0.1, 0.5, 2.0, 8.0] {
            for &t in &[0.0, 1.5, 4.0] {
                let (a, b) = (sm.g(r, t), m.g(r, t));
                assert!((a - b).abs() <= 1e-13 * (1.0 + b.abs()), "at r = {r}");
                assert!((sm.g_r(r, t) - m.g_r(r, t)).abs() <= 1e-12 * (1.0 + m.g_r(r, t).abs()));
            }
        }
    }

    #[test]
    fn smoothing_certificate_bounds_hold() {
        let m = FermiMetric::from_kernel(Arc::new(test_bump_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        for &delta in &[0.1, 0.05] {
            let (_, report) = smoothing_transform(&m, delta, 0.1).unwrap();
            assert!(report.sup_metric_ratio < report.metric_ratio_bound);
            assert!(report.sup_first_order < report.derivative_bound);
            assert!(report.sup_second_order < report.derivative_bound);
            assert!(
                report.inf_curvature_smoothed
                    >= report.inf_curvature_base - report.curvature_drop_bound
            );
        }
    }

    #[test]
    fn smoothing_preconditions_are_rejected_by_name() {
        let m = FermiMetric::from_kernel(Arc::new(test_bump_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        let err = smoothing_transform(&m, 0.1, 0.3).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::SmoothingPrecondition { constraint, .. } if constraint == "w < 1/4"
        ));

        let cactus = FermiMetric::from_kernel(Arc::new(test_cactus_kernel()), TAU, DEFAULT_R_MAX)
            .unwrap();
        let err = smoothing_transform(&cactus, 0.1, 0.1).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::SmoothingPrecondition { constraint, .. } if constraint == "E == 1"
        ));

        // A violent term right at the boundary breaks |G - 1| < 1/2 there.
        let spiky = FermiMetric::gaussian_bump(
            1.0,
            vec![RadialBump {
                amplitude: 300.0,
                center: 0.06,
                width: 0.05,
                angular_sharpness: 0.0,
                angular_center: 0.0,
            }],
            TAU,
            DEFAULT_R_MAX,
        )
        .unwrap();
        let err = smoothing_transform(&spiky, 0.1, 0.1).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::SmoothingPrecondition { constraint, .. }
                if constraint.contains("|G - 1|")
        ));
    }
}
