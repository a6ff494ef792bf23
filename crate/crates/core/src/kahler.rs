//! The character-sum potential and its symplectic package in log-polar
//! coordinates.
//!
//! Points of the complex torus are written z_k = exp(s_k + iα_k). In these
//! coordinates the potential is F(s) = log Σ_m exp(2⟨m,s⟩) over the lattice
//! points of the section polytope, the moment map is the weight-averaged
//! lattice point, the primitive one-form is θ = ⟨μ(s), dα⟩ and the symplectic
//! form is ω = 2 Σ C_hk ds_h ∧ dα_k with C the weighted covariance of the
//! lattice points. Weight sums always subtract the maximal exponent first,
//! so the formulas stay finite far into the ends of the torus.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::fan::LatticeVector;
use crate::linalg::{cholesky_solve, dot, mat_vec};
use crate::polytope::SectionPolytope;
use crate::rational::ratvec_from_f64;

/// Point of the complex torus in log-polar coordinates.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    s: Vec<f64>,
    alpha: Vec<f64>,
}

impl TorusPoint {
    /// Angles are normalized into [0, 2π) on construction.
    pub fn new(s: Vec<f64>, alpha: Vec<f64>) -> Self {
        assert_eq!(s.len(), alpha.len());
        let alpha = alpha.into_iter().map(|a| a.rem_euclid(TAU)).collect();
        TorusPoint { s, alpha }
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
}

/// Tangent vector (ṡ, α̇) at a torus point.
#[derive(Clone, Debug, PartialEq)]
pub struct Tangent {
    pub s_dot: Vec<f64>,
    pub alpha_dot: Vec<f64>,
}

/// A one-form value at a point, split into ds- and dα-components.
#[derive(Clone, Debug)]
pub struct Covector {
    pub ds: Vec<f64>,
    pub dalpha: Vec<f64>,
}

impl Covector {
    pub fn pair(&self, t: &Tangent) -> f64 {
        dot(&self.ds, &t.s_dot) + dot(&self.dalpha, &t.alpha_dot)
    }
}

/// The coefficient matrix C of ω = 2 Σ C_hk ds_h ∧ dα_k; symmetric positive
/// definite wherever the lattice points affinely span.
#[derive(Clone, Debug)]
pub struct TwoForm {
    c: Vec<Vec<f64>>,
}

impl TwoForm {
    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.c
    }

    /// Evaluate ω(x, y) = 2 (ṡᵀ C α̇' − ṡ'ᵀ C α̇).
    pub fn eval(&self, x: &Tangent, y: &Tangent) -> f64 {
        let cx = mat_vec(&self.c, &y.alpha_dot);
        let cy = mat_vec(&self.c, &x.alpha_dot);
        2.0 * (dot(&x.s_dot, &cx) - dot(&y.s_dot, &cy))
    }
}

/// Normalized lattice weights exp(2⟨m,s⟩ − max), plus log Σ exp(2⟨m,s⟩).
fn lattice_weights(p: &SectionPolytope, s: &[f64]) -> (Vec<f64>, f64) {
    let pts = p.lattice_f64();
    let mut exps: Vec<f64> = pts.iter().map(|m| 2.0 * dot(m, s)).collect();
    let max = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for e in exps.iter_mut() {
        *e = (*e - max).exp();
        sum += *e;
    }
    let logsum = max + sum.ln();
    for e in exps.iter_mut() {
        *e /= sum;
    }
    (exps, logsum)
}

/// Kähler potential F(s) = log Σ_m exp(2⟨m,s⟩).
pub fn potential(p: &SectionPolytope, s: &[f64]) -> f64 {
    lattice_weights(p, s).1
}

/// Moment map μ(s): the weight-averaged lattice point. Lands in the
/// interior of the polytope for every finite s.
pub fn moment_map(p: &SectionPolytope, s: &[f64]) -> Vec<f64> {
    let (w, _) = lattice_weights(p, s);
    let n = p.dim();
    let mut mu = vec![0.0; n];
    for (wm, m) in w.iter().zip(p.lattice_f64()) {
        for k in 0..n {
            mu[k] += wm * m[k];
        }
    }
    mu
}

/// Weighted covariance of the lattice points: C_hk = E\[m_h m_k\] − E\[m_h\]E\[m_k\].
/// Equals a quarter of the Hessian of F.
pub fn covariance(p: &SectionPolytope, s: &[f64]) -> Result<TwoForm> {
    let (w, _) = lattice_weights(p, s);
    let n = p.dim();
    let mut mu = vec![0.0; n];
    let mut second = vec![vec![0.0; n]; n];
    for (wm, m) in w.iter().zip(p.lattice_f64()) {
        for h in 0..n {
            mu[h] += wm * m[h];
            for k in 0..=h {
                second[h][k] += wm * m[h] * m[k];
            }
        }
    }
    let mut c = vec![vec![0.0; n]; n];
    for h in 0..n {
        for k in 0..=h {
            let v = second[h][k] - mu[h] * mu[k];
            c[h][k] = v;
            c[k][h] = v;
        }
    }
    // section polytopes constructed in this crate are full-dimensional, so C
    // is positive definite in exact arithmetic; a failed pivot downstream
    // reports as DegenerateLattice with the offending value
    Ok(TwoForm { c })
}

/// θ at a point: ⟨μ(s), dα⟩ with vanishing ds-part. Depends only on s.
pub fn theta_at(p: &SectionPolytope, pt: &TorusPoint) -> Covector {
    let n = pt.dim();
    Covector {
        ds: vec![0.0; n],
        dalpha: moment_map(p, pt.s()),
    }
}

/// ω at a point, as the covariance coefficient matrix. Independent of α.
pub fn omega_at(p: &SectionPolytope, pt: &TorusPoint) -> Result<TwoForm> {
    covariance(p, pt.s())
}

/// Infinitesimal action of the circle subgroup for a lattice direction u:
/// angles rotate at rate u, log-radii stay put.
pub fn infinitesimal_action(u: &LatticeVector, pt: &TorusPoint) -> Tangent {
    let n = pt.dim();
    debug_assert_eq!(u.dim(), n);
    Tangent {
        s_dot: vec![0.0; n],
        alpha_dot: u.to_f64(),
    }
}

/// Hamiltonian vector field of an α-independent function with s-gradient
/// `grad_s`: solves −dH = ω(X, ·), giving X = (0, ½ C(s)⁻¹ grad_s).
pub fn hamiltonian_field(p: &SectionPolytope, pt: &TorusPoint, grad_s: &[f64]) -> Result<Tangent> {
    let c = covariance(p, pt.s())?;
    let half: Vec<f64> = grad_s.iter().map(|g| 0.5 * g).collect();
    let alpha_dot = cholesky_solve(c.matrix(), &half)?;
    Ok(Tangent {
        s_dot: vec![0.0; pt.dim()],
        alpha_dot,
    })
}

/// Invert the moment map by Newton iteration on the strictly convex function
/// F(s)/2 − ⟨target, s⟩. The target must be strictly inside the polytope,
/// which is checked exactly on the rational facet data.
pub fn invert_moment_map(p: &SectionPolytope, target: &[f64]) -> Result<Vec<f64>> {
    let target_rat = ratvec_from_f64(target)?;
    if !p.contains_strictly(&target_rat) {
        return Err(Error::NotInterior);
    }
    let n = p.dim();
    let mut s = vec![0.0; n];
    let objective = |s: &[f64]| 0.5 * potential(p, s) - dot(target, s);
    let mut f_cur = objective(&s);
    const MAX_ITER: usize = 200;
    for _ in 0..MAX_ITER {
        let mu = moment_map(p, &s);
        let grad: Vec<f64> = mu.iter().zip(target).map(|(m, t)| m - t).collect();
        let residual = grad.iter().fold(0.0f64, |a, g| a.max(g.abs()));
        if residual < 1e-11 {
            return Ok(s);
        }
        let c = covariance(p, &s)?;
        let half_grad: Vec<f64> = grad.iter().map(|g| 0.5 * g).collect();
        let step = cholesky_solve(c.matrix(), &half_grad)?;
        if residual < 1e-6 {
            // inside the quadratic basin the objective is flat to rounding,
            // so line search would stall; take the plain Newton step
            for (x, d) in s.iter_mut().zip(&step) {
                *x -= d;
            }
            continue;
        }
        // damped update: halve until the convex objective decreases
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = s.iter().zip(&step).map(|(x, d)| x - lambda * d).collect();
            let f_trial = objective(&trial);
            if f_trial <= f_cur || lambda < 1e-12 {
                s = trial;
                f_cur = f_trial;
                break;
            }
            lambda *= 0.5;
        }
    }
    let mu = moment_map(p, &s);
    let residual = mu
        .iter()
        .zip(target)
        .fold(0.0f64, |a, (m, t)| a.max((m - t).abs()));
    Err(Error::NoConvergence {
        iterations: MAX_ITER,
        residual,
    })
}

/// The point λ_u(t) for t = modulus·e^{i·angle}: s = log(modulus)·u,
/// α = angle·u.
pub fn one_param_point(u: &LatticeVector, modulus: f64, angle: f64) -> Result<TorusPoint> {
    if !(modulus > 0.0) {
        return Err(Error::NonpositiveModulus { modulus });
    }
    let log_r = modulus.ln();
    let s: Vec<f64> = u.coords().iter().map(|&c| log_r * c as f64).collect();
    let alpha: Vec<f64> = u.coords().iter().map(|&c| angle * c as f64).collect();
    Ok(TorusPoint::new(s, alpha))
}

/// Evaluation of θ through the literal complex-coordinate formula. This path
/// builds z and the tangent as complex numbers and forms the character
/// moduli by direct products, so it shares no code with the log-polar
/// evaluator; the verification layer uses it to make identity checks
/// non-vacuous.
pub mod complex_chart {
    use num_complex::Complex64;

    use super::{SectionPolytope, Tangent, TorusPoint};

    fn point_to_z(pt: &TorusPoint) -> Vec<Complex64> {
        pt.s()
            .iter()
            .zip(pt.alpha())
            .map(|(&s, &a)| Complex64::from_polar(s.exp(), a))
            .collect()
    }

    /// |χ^m(z)|² by direct products of coordinate moduli.
    fn char_sq(z: &[Complex64], m: &[f64]) -> f64 {
        z.iter()
            .zip(m)
            .map(|(zk, &mk)| zk.norm().powi(2 * mk as i32))
            .product()
    }

    /// Moment map through plain (unshifted) weight sums in the z-chart.
    pub fn moment_map_literal(p: &SectionPolytope, pt: &TorusPoint) -> Vec<f64> {
        let z = point_to_z(pt);
        let n = pt.dim();
        let mut num = vec![0.0; n];
        let mut den = 0.0;
        for m in p.lattice_f64() {
            let w = char_sq(&z, m);
            den += w;
            for k in 0..n {
                num[k] += w * m[k];
            }
        }
        num.iter().map(|x| x / den).collect()
    }

    /// Pair θ with a tangent vector, both expressed in the z-chart:
    /// θ(v) = −(i/2) Σ_k μ_k (ż_k/z_k − conj(ż_k)/conj(z_k)).
    pub fn theta_pairing(p: &SectionPolytope, pt: &TorusPoint, v: &Tangent) -> f64 {
        let z = point_to_z(pt);
        let zdot: Vec<Complex64> = z
            .iter()
            .zip(v.s_dot.iter().zip(&v.alpha_dot))
            .map(|(zk, (&sd, &ad))| zk * Complex64::new(sd, ad))
            .collect();
        let mu = moment_map_literal(p, pt);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..pt.dim() {
            let ratio = zdot[k] / z[k];
            acc += mu[k] * (ratio - ratio.conj());
        }
        (Complex64::new(0.0, -0.5) * acc).re
    }

    /// The infinitesimal action X_u in the z-chart: ż_k = i u_k z_k, mapped
    /// back to log-polar components.
    pub fn action_tangent(u: &crate::fan::LatticeVector) -> Tangent {
        Tangent {
            s_dot: vec![0.0; u.dim()],
            alpha_dot: u.to_f64(),
        }
    }
}
