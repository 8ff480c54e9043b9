//! Floating-point elliptic billiard: elliptic integrals, rotation numbers,
//! the action-angle map and the billiard map itself.
//!
//! The boundary is `(a cos φ, b sin φ)` and the confocal caustic with
//! parameter `λ` is `x²/(a²-λ²) + y²/(b²-λ²) = 1`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use thiserror::Error;

use crate::coeff_engine::phi_series;
use crate::exact_core::SeriesTrig;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("eccentricity must lie in [0, 1), got {0}")]
    BadEccentricity(f64),
    #[error("semi-major axis must be positive, got {0}")]
    BadAxis(f64),
    #[error("modulus must lie in [0, 1), got {0}")]
    BadModulus(f64),
    #[error("caustic parameter {lambda} outside (0, {b})")]
    LambdaOutOfRange { lambda: f64, b: f64 },
    #[error("rotation number {0} outside (0, 1/2)")]
    BadOmega(f64),
    #[error("chord direction vanishes")]
    DegenerateChord,
    #[error("line meets no confocal ellipse (λ² = {0})")]
    NegativeRadicand(f64),
    #[error("ray is tangent to the boundary or points outward")]
    TangentRay,
    #[error("propagation failed: {0}")]
    Propagation(String),
    #[error("rotation number {0} needs a caustic closer to the axis than f64 resolves")]
    Unresolved(f64),
}

pub type Point = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    a: f64,
    e: f64,
}

impl EllipseParams {
    pub fn new(a: f64, e: f64) -> Result<Self, GeomError> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(GeomError::BadAxis(a));
        }
        if !(0.0..1.0).contains(&e) {
            return Err(GeomError::BadEccentricity(e));
        }
        Ok(EllipseParams { a, e })
    }

    /// Unit semi-major axis.
    pub fn unit(e: f64) -> Result<Self, GeomError> {
        EllipseParams::new(1.0, e)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn b(&self) -> f64 {
        self.a * (1.0 - self.e * self.e).sqrt()
    }

    pub fn c_lin(&self) -> f64 {
        self.a * self.e
    }

    pub fn point(&self, phi: f64) -> Point {
        [self.a * phi.cos(), self.b() * phi.sin()]
    }

    /// Outward unit normal at the boundary point with angle `phi`.
    pub fn normal(&self, phi: f64) -> Point {
        let p = self.point(phi);
        normalize([p[0] / (self.a * self.a), p[1] / (self.b() * self.b())])
    }

    /// Elliptic angle of a point on (or near) the boundary.
    pub fn angle_of(&self, p: Point) -> f64 {
        wrap(f64::atan2(p[1] / self.b(), p[0] / self.a))
    }

    pub fn caustic(&self, lambda: f64) -> Result<CausticParam, GeomError> {
        CausticParam::new(self, lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausticParam {
    lambda: f64,
    k_mod: f64,
}

impl CausticParam {
    pub fn new(ell: &EllipseParams, lambda: f64) -> Result<Self, GeomError> {
        let b = ell.b();
        if !(lambda > 0.0 && lambda < b) {
            return Err(GeomError::LambdaOutOfRange { lambda, b });
        }
        let a2 = ell.a * ell.a;
        let k_mod = ((a2 - b * b) / (a2 - lambda * lambda)).sqrt();
        Ok(CausticParam { lambda, k_mod })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn k_mod(&self) -> f64 {
        self.k_mod
    }

    /// `s = k_λ²`, the expansion parameter.
    pub fn s(&self) -> f64 {
        self.k_mod * self.k_mod
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayState {
    pub phi: f64,
    pub direction: Point,
}

fn wrap(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn normalize(v: Point) -> Point {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

fn dot(u: Point, v: Point) -> f64 {
    u[0] * v[0] + u[1] * v[1]
}

fn cross(u: Point, v: Point) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..64 {
        let a = (x + y + z) / 3.0;
        let dx = 1.0 - x / a;
        let dy = 1.0 - y / a;
        let dz = 1.0 - z / a;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / a.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let l = sx * sy + sy * sz + sz * sx;
        x = (x + l) / 4.0;
        y = (y + l) / 4.0;
        z = (z + l) / 4.0;
    }
    1.0 / ((x + y + z) / 3.0).sqrt()
}

/// Arithmetic-geometric mean.
pub fn agm(mut x: f64, mut y: f64) -> f64 {
    for _ in 0..64 {
        if (x - y).abs() <= 1e-16 * x.abs() {
            break;
        }
        (x, y) = ((x + y) / 2.0, (x * y).sqrt());
    }
    (x + y) / 2.0
}

fn check_modulus(k: f64) -> Result<(), GeomError> {
    if (0.0..1.0).contains(&k) {
        Ok(())
    } else {
        Err(GeomError::BadModulus(k))
    }
}

fn f_principal(phi: f64, k: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)
}

/// Complete integral `K(k)`.
pub fn elliptic_k(k: f64) -> Result<f64, GeomError> {
    check_modulus(k)?;
    Ok(carlson_rf(0.0, 1.0 - k * k, 1.0))
}

/// Complete integral via the AGM, `K = π / (2 AGM(1, √(1-k²)))`.
pub fn elliptic_k_agm(k: f64) -> Result<f64, GeomError> {
    check_modulus(k)?;
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - k * k).sqrt()))
}

/// `F(φ, k) = ∫₀^φ dτ / √(1 - k² sin²τ)` for any real `φ`, using
/// `F(φ + nπ) = F(φ) + 2nK`.
pub fn elliptic_f(phi: f64, k: f64) -> Result<f64, GeomError> {
    check_modulus(k)?;
    if k == 0.0 {
        return Ok(phi);
    }
    let n = (phi / PI).round();
    let r = phi - n * PI;
    let base = f_principal(r, k);
    if n == 0.0 {
        Ok(base)
    } else {
        Ok(base + 2.0 * n * elliptic_k(k)?)
    }
}

/// `ω(λ, e) = F(arcsin(λ/b), k_λ) / (2 K(k_λ))`.
pub fn rotation_number(lambda: f64, ell: &EllipseParams) -> Result<f64, GeomError> {
    let c = ell.caustic(lambda)?;
    let k = c.k_mod();
    let x = (lambda / ell.b()).clamp(-1.0, 1.0).asin();
    Ok(elliptic_f(x, k)? / (2.0 * elliptic_k(k)?))
}

/// Inverse of [`rotation_number`] by bisection on `(0, b)`.
///
/// `1/2 - ω` decays only like `1 / ln(1/(b - λ))`, so close to `1/2` the
/// caustic sits closer to `b` than `f64` resolves; that case is an error.
pub fn lambda_of_omega(omega: f64, ell: &EllipseParams) -> Result<f64, GeomError> {
    if !(omega > 0.0 && omega < 0.5) {
        return Err(GeomError::BadOmega(omega));
    }
    let b = ell.b();
    let (mut lo, mut hi) = (0.0_f64, b);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rotation_number(mid, ell)? < omega {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    match rotation_number(lambda, ell) {
        Ok(w) if (w - omega).abs() <= 1e-10 => Ok(lambda),
        _ => Err(GeomError::Unresolved(omega)),
    }
}

/// `θ = (π/2) F(φ, k_λ) / K(k_λ)`, valid for every real `φ`.
pub fn theta_of_phi(phi: f64, lambda: f64, ell: &EllipseParams) -> Result<f64, GeomError> {
    let k = ell.caustic(lambda)?.k_mod();
    Ok(FRAC_PI_2 * elliptic_f(phi, k)? / elliptic_k(k)?)
}

/// Action-angle coordinate of the boundary point with elliptic angle `phi`
/// along orbits tangent to `C_λ`: the defining ratio measured from the
/// minor-axis vertex, `θ(φ + π/2) - π/2`.
pub fn action_angle(phi: f64, lambda: f64, ell: &EllipseParams) -> Result<f64, GeomError> {
    Ok(theta_of_phi(phi + FRAC_PI_2, lambda, ell)? - FRAC_PI_2)
}

/// Inverse of [`theta_of_phi`] by Newton's method.
pub fn phi_of_theta(theta: f64, lambda: f64, ell: &EllipseParams) -> Result<f64, GeomError> {
    let k = ell.caustic(lambda)?.k_mod();
    let kk = elliptic_k(k)?;
    let mut phi = theta;
    for _ in 0..50 {
        let th = FRAC_PI_2 * elliptic_f(phi, k)? / kk;
        let s = phi.sin();
        let d = FRAC_PI_2 / (kk * (1.0 - k * k * s * s).sqrt());
        let step = (th - theta) / d;
        phi -= step;
        if step.abs() <= 1e-16 * (1.0 + phi.abs()) {
            break;
        }
    }
    Ok(phi)
}

/// One bounce: the next boundary hit along the ray, with specular reflection.
pub fn billiard_step(ray: RayState, ell: &EllipseParams) -> Result<RayState, GeomError> {
    let (a, b) = (ell.a(), ell.b());
    let p = ell.point(ray.phi);
    let d = normalize(ray.direction);
    if dot(d, ell.normal(ray.phi)) >= -1e-14 {
        return Err(GeomError::TangentRay);
    }
    let qa = d[0] * d[0] / (a * a) + d[1] * d[1] / (b * b);
    let qb = p[0] * d[0] / (a * a) + p[1] * d[1] / (b * b);
    let t = -2.0 * qb / qa;
    if t.is_nan() || t <= 0.0 {
        return Err(GeomError::TangentRay);
    }
    let q = [p[0] + t * d[0], p[1] + t * d[1]];
    let psi = polish_hit(ell.angle_of(q), p, d, ell)?;
    let n = ell.normal(psi);
    let dn = dot(d, n);
    let out = normalize([d[0] - 2.0 * dn * n[0], d[1] - 2.0 * dn * n[1]]);
    Ok(RayState {
        phi: wrap(psi),
        direction: out,
    })
}

/// Refines a root of `g(ψ) = cross(d, X(ψ) - p)` near `psi0`, keeping
/// Newton steps inside a sign-change bracket.
fn polish_hit(psi0: f64, p: Point, d: Point, ell: &EllipseParams) -> Result<f64, GeomError> {
    let g = |psi: f64| {
        let x = ell.point(psi);
        cross(d, [x[0] - p[0], x[1] - p[1]])
    };
    let dg = |psi: f64| cross(d, [-ell.a() * psi.sin(), ell.b() * psi.cos()]);
    let h = 1e-6;
    let (mut lo, mut hi) = (psi0 - h, psi0 + h);
    let (glo, ghi) = (g(lo), g(hi));
    if glo * ghi > 0.0 {
        return Ok(psi0);
    }
    let rising = ghi > glo;
    let mut psi = psi0;
    for _ in 0..60 {
        let gv = g(psi);
        if gv == 0.0 {
            return Ok(psi);
        }
        if (gv > 0.0) == rising {
            hi = psi;
        } else {
            lo = psi;
        }
        let slope = dg(psi);
        let mut next = psi - gv / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - psi).abs() <= 1e-17 * (1.0 + psi.abs()) || hi - lo <= 1e-16 {
            return Ok(next);
        }
        psi = next;
    }
    if (hi - lo) < 1e-12 {
        Ok(psi)
    } else {
        Err(GeomError::Propagation(
            "hit refinement did not converge".into(),
        ))
    }
}

/// The confocal `λ` of the caustic tangent to the line through `p1`, `p2`.
pub fn caustic_of_chord(p1: Point, p2: Point, ell: &EllipseParams) -> Result<f64, GeomError> {
    let u = p2[1] - p1[1];
    let v = p1[0] - p2[0];
    let w = u * p1[0] + v * p1[1];
    caustic_of_line(u, v, w, ell)
}

/// Same as [`caustic_of_chord`] for the line `u x + v y = w`.
pub fn caustic_of_line(u: f64, v: f64, w: f64, ell: &EllipseParams) -> Result<f64, GeomError> {
    let den = u * u + v * v;
    if den == 0.0 {
        return Err(GeomError::DegenerateChord);
    }
    let (a, b) = (ell.a(), ell.b());
    let l2 = (a * a * u * u + b * b * v * v - w * w) / den;
    if l2 < 0.0 {
        return Err(GeomError::NegativeRadicand(l2));
    }
    Ok(l2.sqrt())
}

/// Launches a counter-clockwise ray from boundary angle `phi` tangent to `C_λ`.
pub fn tangent_launch(phi: f64, lambda: f64, ell: &EllipseParams) -> Result<RayState, GeomError> {
    ell.caustic(lambda)?;
    let l2 = lambda * lambda;
    let aa = ell.a() * ell.a() - l2;
    let bb = ell.b() * ell.b() - l2;
    let p = ell.point(phi);
    // Line normals n with A² n₁² + B² n₂² = (n·p)².
    let m11 = aa - p[0] * p[0];
    let m12 = -p[0] * p[1];
    let m22 = bb - p[1] * p[1];
    let disc = (m12 * m12 - m11 * m22).max(0.0);
    let r = disc.sqrt();
    let normals: [Point; 2] = if m11.abs() >= m22.abs() {
        [[-m12 + r, m11], [-m12 - r, m11]]
    } else {
        [[m22, -m12 + r], [m22, -m12 - r]]
    };
    let outward = ell.normal(phi);
    for n in normals {
        let mut d = normalize([-n[1], n[0]]);
        if dot(d, outward) > 0.0 {
            d = [-d[0], -d[1]];
        }
        if cross(p, d) > 0.0 && dot(d, outward) < 0.0 {
            return Ok(RayState {
                phi: wrap(phi),
                direction: d,
            });
        }
    }
    Err(GeomError::TangentRay)
}

/// Boundary angles of `steps` successive hits, starting with the launch point.
pub fn orbit(ray: RayState, steps: usize, ell: &EllipseParams) -> Result<Vec<RayState>, GeomError> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = ray;
    out.push(cur);
    for _ in 0..steps {
        cur = billiard_step(cur, ell)?;
        out.push(cur);
    }
    Ok(out)
}

/// Max drift of `caustic_of_chord` from `λ` along a tangent orbit.
pub fn caustic_drift(lambda: f64, ell: &EllipseParams, steps: usize) -> Result<f64, GeomError> {
    let rays = orbit(tangent_launch(0.3, lambda, ell)?, steps, ell)?;
    let mut worst = 0.0_f64;
    for w in rays.windows(2) {
        let l = caustic_of_chord(ell.point(w[0].phi), ell.point(w[1].phi), ell)?;
        worst = worst.max((l - lambda).abs());
    }
    Ok(worst)
}

/// Max over steps of `|Δθ - 2πω|` for an orbit launched tangent to `C_λ`.
pub fn verify_theta_rotation(
    lambda: f64,
    ell: &EllipseParams,
    steps: usize,
) -> Result<f64, GeomError> {
    let omega = rotation_number(lambda, ell)?;
    let rays = orbit(tangent_launch(0.3, lambda, ell)?, steps, ell)?;
    let mut worst = 0.0_f64;
    let mut prev = action_angle(rays[0].phi, lambda, ell)?;
    for r in &rays[1..] {
        let th = action_angle(r.phi, lambda, ell)?;
        let delta = (th - prev).rem_euclid(TAU);
        worst = worst.max((delta - TAU * omega).abs());
        prev = th;
    }
    Ok(worst)
}

/// Boundary distance between the launch point and the `q`-th hit for the
/// caustic of rotation number `1/q`.
pub fn orbit_closure(q: u32, ell: &EllipseParams) -> Result<f64, GeomError> {
    if q < 3 {
        return Err(GeomError::BadOmega(1.0 / q as f64));
    }
    let lambda = lambda_of_omega(1.0 / q as f64, ell)?;
    let rays = orbit(tangent_launch(0.3, lambda, ell)?, q as usize, ell)?;
    let (p0, pq) = (ell.point(rays[0].phi), ell.point(rays[q as usize].phi));
    Ok((p0[0] - pq[0]).hypot(p0[1] - pq[1]))
}

/// Max over an `m`-point grid in `θ` of `|φ(θ) - θ - Σ_{j≤N} s^j φ_j(θ)|`.
pub fn phi_residual(
    series: &SeriesTrig,
    lambda: f64,
    ell: &EllipseParams,
    m: usize,
) -> Result<f64, GeomError> {
    let s = ell.caustic(lambda)?.s();
    let mut worst = 0.0_f64;
    for i in 0..m {
        let theta = TAU * i as f64 / m as f64;
        let phi = phi_of_theta(theta, lambda, ell)?;
        let mut approx = 0.0;
        let mut sp = 1.0;
        for c in series.coeffs() {
            approx += sp * c.eval(theta);
            sp *= s;
        }
        worst = worst.max((phi - approx).abs());
    }
    Ok(worst)
}

/// Residual ratio `r(e_big) / r(e_small)` for the order-`n` truncation.
pub fn residual_ratio(n: usize, lambda: f64, e_big: f64, e_small: f64) -> Result<f64, GeomError> {
    let series = phi_series(n);
    let big = phi_residual(&series, lambda, &EllipseParams::unit(e_big)?, 256)?;
    let small = phi_residual(&series, lambda, &EllipseParams::unit(e_small)?, 256)?;
    Ok(big / small)
}

/// `sin(2lθ)` coefficient of `φ(θ) - θ` by the trapezoid rule on `m` nodes.
pub fn phi_sine_coefficient(
    l: u32,
    lambda: f64,
    ell: &EllipseParams,
    m: usize,
) -> Result<f64, GeomError> {
    let mut acc = 0.0;
    for i in 0..m {
        let theta = TAU * i as f64 / m as f64;
        let phi = phi_of_theta(theta, lambda, ell)?;
        acc += (phi - theta) * (2.0 * l as f64 * theta).sin();
    }
    Ok(2.0 * acc / m as f64)
}

/// Numeric estimate of `β_{2,1}`: `(b₁ - s/8)/s²` at `e`, `2e`, `3e`,
/// extrapolated to `s = 0` by a quadratic fit.
pub fn beta21_numeric(e: f64, lambda: f64) -> Result<f64, GeomError> {
    let mut pts = Vec::new();
    for mult in [1.0, 2.0, 3.0] {
        let ell = EllipseParams::unit(e * mult)?;
        let s = ell.caustic(lambda)?.s();
        let b1 = phi_sine_coefficient(1, lambda, &ell, 64)?;
        pts.push((s, (b1 - s / 8.0) / (s * s)));
    }
    let mut v = 0.0;
    for (i, &(si, yi)) in pts.iter().enumerate() {
        let mut w = 1.0;
        for (j, &(sj, _)) in pts.iter().enumerate() {
            if i != j {
                w *= sj / (sj - si);
            }
        }
        v += w * yi;
    }
    Ok(v)
}

/// `sup |λ(e, ω) - b sin πω| / e²` over `n` equispaced `ω` in `[lo, hi]`.
pub fn lemma_constant(e: f64, lo: f64, hi: f64, n: usize) -> Result<f64, GeomError> {
    let ell = EllipseParams::unit(e)?;
    let b = ell.b();
    let mut worst = 0.0_f64;
    for i in 0..n {
        let omega = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let lambda = lambda_of_omega(omega, &ell)?;
        worst = worst.max((lambda - b * (PI * omega).sin()).abs());
    }
    Ok(worst / (e * e))
}
