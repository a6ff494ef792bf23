//! Independent numerical verification of the analytic identities: the
//! wrapping-averaging formula, the a → 0 wrapping limit, the vanishing
//! distortion constant, positivity of θ on the Hamiltonian field along level
//! sets (contact type), and exactness of the central moment fiber.
//!
//! Each check pits two genuinely different evaluation routes against each
//! other: circle quadrature against weighted lattice sums, the literal
//! complex-coordinate formula against the log-polar one, and the stratum
//! field formula against the ω-inverse linear solve.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kahler::{
    complex_chart, covariance, infinitesimal_action, invert_moment_map, moment_map, theta_at,
    TorusPoint,
};
use crate::linalg::{cholesky_solve, dot, mat_vec};
use crate::polytope::SectionPolytope;
use crate::rational::{rat_from_f64, rat_to_f64, Rat};
use crate::smoothing::{bump_d1, radial_level_solve, smoothing_grad, sphere_directions, BumpParams};

/// Wrapping number of the circle |t| = a in the one-parameter subgroup of a
/// ray, by trapezoid quadrature of θ along the circle.
pub fn wrapping_numeric(p: &SectionPolytope, ray: usize, a: f64, n_quad: usize) -> f64 {
    let u = p.fan().ray(ray);
    let mut acc = 0.0;
    for i in 0..n_quad {
        let beta = TAU * i as f64 / n_quad as f64;
        let pt = crate::kahler::one_param_point(u, a, beta).expect("positive radius");
        let tangent = infinitesimal_action(u, &pt);
        acc += theta_at(p, &pt).pair(&tangent);
    }
    acc * TAU / n_quad as f64
}

/// Lattice average with weights a^{2⟨m,u_ρ⟩}, computed in log space.
pub fn lattice_average(p: &SectionPolytope, ray: usize, a: f64) -> Vec<f64> {
    let u = p.fan().ray(ray);
    let log_a = a.ln();
    let exps: Vec<f64> = p
        .lattice_points()
        .iter()
        .map(|m| 2.0 * u.dot(m.coords()) as f64 * log_a)
        .collect();
    let max = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exps.iter().map(|e| (e - max).exp()).collect();
    let total: f64 = weights.iter().sum();
    let n = p.dim();
    let mut avg = vec![0.0; n];
    for (w, m) in weights.iter().zip(p.lattice_f64()) {
        for k in 0..n {
            avg[k] += w * m[k];
        }
    }
    avg.iter().map(|x| x / total).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WrappingReport {
    pub ray: usize,
    pub radii: Vec<f64>,
    pub numeric: Vec<f64>,
    pub closed_form: Vec<f64>,
    pub gaps: Vec<f64>,
    pub tol: f64,
}

/// Quadrature against the closed form 2π⟨m̄_ρ(a), u_ρ⟩ over a list of radii.
pub fn check_wrapping_average(
    p: &SectionPolytope,
    ray: usize,
    radii: &[f64],
    tol: f64,
) -> Result<WrappingReport> {
    let u = p.fan().ray(ray);
    let mut numeric = Vec::with_capacity(radii.len());
    let mut closed_form = Vec::with_capacity(radii.len());
    let mut gaps = Vec::with_capacity(radii.len());
    let mut worst: (f64, f64) = (0.0, 0.0);
    for &a in radii {
        let w = wrapping_numeric(p, ray, a, 128);
        let avg = lattice_average(p, ray, a);
        let cf = TAU * u.dot_f64(&avg);
        let gap = (w - cf).abs();
        if gap > worst.1 {
            worst = (a, gap);
        }
        numeric.push(w);
        closed_form.push(cf);
        gaps.push(gap);
    }
    if worst.1 >= tol {
        return Err(Error::ToleranceExceeded {
            check: format!("wrapping-averaging at ray {ray}, radius {}", worst.0),
            worst: worst.1,
            tol,
        });
    }
    Ok(WrappingReport {
        ray,
        radii: radii.to_vec(),
        numeric,
        closed_form,
        gaps,
        tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinitesimalWrappingReport {
    pub ray: usize,
    pub a_small: f64,
    pub numeric: f64,
    pub target: f64,
    pub gap: f64,
    pub tol: f64,
    /// the exact statement: min over lattice points of ⟨m, u_ρ⟩ equals the
    /// scaled offset r·φ(u_ρ), decided in rational arithmetic
    pub lattice_minimum_exact: bool,
}

/// The a → 0 limit of the wrapping recovers 2π·rφ(u_ρ).
pub fn infinitesimal_wrapping(
    p: &SectionPolytope,
    ray: usize,
    a_small: f64,
    tol: f64,
) -> Result<InfinitesimalWrappingReport> {
    if !(a_small > 0.0 && a_small <= 1e-2) {
        return Err(Error::InvalidInput(format!(
            "a_small must be in (0, 1e-2], got {a_small}"
        )));
    }
    let u = p.fan().ray(ray);
    let target = TAU * rat_to_f64(&p.offsets()[ray]);
    let numeric = wrapping_numeric(p, ray, a_small, 128);
    let gap = (numeric - target).abs();

    let min_pairing: Rat = p
        .lattice_points()
        .iter()
        .map(|m| Rat::from_integer(u.dot(m.coords()).into()))
        .min()
        .ok_or(Error::EmptyInterior)?;
    let lattice_minimum_exact = min_pairing == p.offsets()[ray];

    if !lattice_minimum_exact {
        return Err(Error::ToleranceExceeded {
            check: format!("exact lattice minimum at ray {ray}"),
            worst: f64::INFINITY,
            tol: 0.0,
        });
    }
    if gap >= tol {
        return Err(Error::ToleranceExceeded {
            check: format!("infinitesimal wrapping at ray {ray}"),
            worst: gap,
            tol,
        });
    }
    Ok(InfinitesimalWrappingReport {
        ray,
        a_small,
        numeric,
        target,
        gap,
        tol,
        lattice_minimum_exact,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub ray: usize,
    pub n_samples: usize,
    pub mean_abs: f64,
    pub max_abs: f64,
    pub std_dev: f64,
    pub tol: f64,
}

/// θ(X_{u_ρ}) − ⟨μ, u_ρ⟩ over random points. In log-polar coordinates the
/// identity is structural, so the θ side runs through the literal
/// complex-coordinate evaluator to keep the check meaningful.
pub fn distortion_constant(
    p: &SectionPolytope,
    ray: usize,
    n_samples: usize,
    seed: u64,
) -> Result<DistortionReport> {
    let tol = 1e-9;
    let n = p.dim();
    let u = p.fan().ray(ray);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deviations = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let s: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let pt = TorusPoint::new(s.clone(), alpha);
        let theta_side = complex_chart::theta_pairing(p, &pt, &complex_chart::action_tangent(u));
        let mu_side = u.dot_f64(&moment_map(p, &s));
        deviations.push(theta_side - mu_side);
    }
    let max_abs = deviations.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    let mean = deviations.iter().sum::<f64>() / n_samples as f64;
    let mean_abs = deviations.iter().map(|d| d.abs()).sum::<f64>() / n_samples as f64;
    let var = deviations
        .iter()
        .map(|d| (d - mean) * (d - mean))
        .sum::<f64>()
        / n_samples as f64;
    let std_dev = var.sqrt();
    if max_abs >= tol || mean_abs >= tol {
        return Err(Error::ToleranceExceeded {
            check: format!("distortion constant at ray {ray}"),
            worst: max_abs,
            tol,
        });
    }
    Ok(DistortionReport {
        ray,
        n_samples,
        mean_abs,
        max_abs,
        std_dev,
        tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactLevelResult {
    pub delta: f64,
    pub n_samples: usize,
    pub min_theta_xh: f64,
    pub worst_route_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactReport {
    pub deltas: Vec<ContactLevelResult>,
    pub seed: u64,
    pub identity_tol: f64,
    pub admissible: bool,
    pub positive: bool,
}

/// Contact-type check along level sets of the polyhedral Hamiltonian:
/// samples H⁻¹(δ), evaluates θ(X_H) through the active-ray formula and
/// dH(X_θ) through the ω-inverse, requires the two to agree, and the common
/// value to be strictly positive. The smoothing widths must satisfy
/// ε_ρ < −rφ(u_ρ) (which forces φ(u_ρ) < 0).
pub fn contact_check(
    p: &SectionPolytope,
    eps: &BumpParams,
    deltas: &[f64],
    n_samples: usize,
    seed: u64,
) -> Result<ContactReport> {
    let identity_tol = 1e-8;
    for ray in 0..p.n_rays() {
        let bound = -p.offsets()[ray].clone();
        if rat_from_f64(eps.eps(ray))? >= bound {
            return Err(Error::InadmissibleEpsilon {
                ray,
                eps: eps.eps(ray),
                bound: bound.to_string(),
            });
        }
    }
    let n = p.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let dirs = sphere_directions(n, n_samples);
        let mut min_value = f64::INFINITY;
        let mut min_point: Vec<f64> = vec![];
        let mut worst_gap = 0.0f64;
        let mut count = 0;
        for v in &dirs {
            let Some(t) = radial_level_solve(p, eps, v, delta)? else {
                continue;
            };
            let m: Vec<f64> = v.iter().map(|&c| t * c).collect();
            let s = invert_moment_map(p, &m)?;
            let alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
            let pt = TorusPoint::new(s.clone(), alpha);
            count += 1;

            // route 1: θ(X_H) = Σ_ρ q′(r_ρ(μ)) θ(X_{u_ρ})
            let mu = moment_map(p, &s);
            let theta = theta_at(p, &pt);
            let mut theta_xh = 0.0;
            for ray in 0..p.n_rays() {
                let qp = bump_d1(eps.eps(ray), p.radial_f64(ray, &mu).max(0.0))?;
                if qp != 0.0 {
                    theta_xh +=
                        qp * theta.pair(&infinitesimal_action(p.fan().ray(ray), &pt));
                }
            }

            // route 2: dH(X_θ) with X_θ = (½ C⁻¹ μ, 0) and ∇_s H = 2C ∇h(μ)
            let c = covariance(p, &s)?;
            let x_theta_s = cholesky_solve(c.matrix(), &mu.iter().map(|x| 0.5 * x).collect::<Vec<_>>())?;
            let grad_h = smoothing_grad(p, eps, &mu)?;
            let grad_s: Vec<f64> = mat_vec(c.matrix(), &grad_h).iter().map(|x| 2.0 * x).collect();
            let dh_x_theta = dot(&grad_s, &x_theta_s);

            let gap = (theta_xh - dh_x_theta).abs();
            worst_gap = worst_gap.max(gap);
            if gap >= identity_tol {
                return Err(Error::ToleranceExceeded {
                    check: format!("θ(X_H) vs dH(X_θ) at δ = {delta}"),
                    worst: gap,
                    tol: identity_tol,
                });
            }
            if theta_xh < min_value {
                min_value = theta_xh;
                min_point = m.clone();
            }
        }
        if count == 0 {
            return Err(Error::PreconditionFailed {
                detail: format!("no level-set samples found at δ = {delta}"),
            });
        }
        if min_value <= 0.0 {
            return Err(Error::NonPositive {
                value: min_value,
                point: min_point,
            });
        }
        results.push(ContactLevelResult {
            delta,
            n_samples: count,
            min_theta_xh: min_value,
            worst_route_gap: worst_gap,
        });
    }
    Ok(ContactReport {
        deltas: results,
        seed,
        identity_tol,
        admissible: true,
        positive: true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactTorusReport {
    pub s_star: Vec<f64>,
    pub max_theta_component: f64,
    pub tol: f64,
}

/// θ restricts to zero on the central moment fiber μ⁻¹(0): after Newton
/// inversion the dα-components at (s*, α) must vanish below `tol`.
/// The origin must lie strictly inside the polytope (exact check).
pub fn exact_torus_check(p: &SectionPolytope, tol: f64) -> Result<ExactTorusReport> {
    let n = p.dim();
    let zero_rat: Vec<Rat> = vec![Rat::from_integer(0.into()); n];
    if !p.contains_strictly(&zero_rat) {
        return Err(Error::NotInterior);
    }
    let s_star = invert_moment_map(p, &vec![0.0; n])?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let pt = TorusPoint::new(s_star.clone(), alpha);
        let theta = theta_at(p, &pt);
        for c in &theta.dalpha {
            worst = worst.max(c.abs());
        }
    }
    if worst >= tol {
        return Err(Error::ToleranceExceeded {
            check: "exact central torus".into(),
            worst,
            tol,
        });
    }
    Ok(ExactTorusReport {
        s_star,
        max_theta_component: worst,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::polytope::PlData;
    use crate::rational::rat_int;

    fn square_polytope() -> SectionPolytope {
        let fan = Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
        .fan;
        PlData::from_ray_values(fan, &vec![rat_int(-1); 4], None)
            .unwrap()
            .section_polytope()
            .unwrap()
    }

    fn triangle_polytope() -> SectionPolytope {
        let fan = Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
        .fan;
        PlData::from_ray_values(fan, &vec![rat_int(-1); 3], None)
            .unwrap()
            .section_polytope()
            .unwrap()
    }

    fn skewed_polytope() -> SectionPolytope {
        let fan = Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
        .fan;
        let values = vec![rat_int(-1), rat_int(-1), rat_int(-2), rat_int(-1)];
        PlData::from_ray_values(fan, &values, None)
            .unwrap()
            .section_polytope()
            .unwrap()
    }

    fn segment_polytope() -> SectionPolytope {
        let fan = Fan::build(1, vec![vec![1], vec![-1]], &[vec![0], vec![1]])
            .unwrap()
            .fan;
        PlData::from_ray_values(fan, &vec![rat_int(-1); 2], None)
            .unwrap()
            .section_polytope()
            .unwrap()
    }

    #[test]
    fn wrapping_vanishes_by_symmetry() {
        let sq = square_polytope();
        for ray in 0..4 {
            assert!(wrapping_numeric(&sq, ray, 1.0, 128).abs() < 1e-12);
        }
        let tri = triangle_polytope();
        assert!(wrapping_numeric(&tri, 0, 1.0, 128).abs() < 1e-12);
    }

    #[test]
    fn wrapping_skewed_average() {
        // skewed rectangle has average lattice point (1/2, 0)
        let p = skewed_polytope();
        let w = wrapping_numeric(&p, 0, 1.0, 128);
        assert!((w - TAU * 0.5).abs() < 1e-12);
    }

    #[test]
    fn quadrature_converges_spectrally() {
        let p = skewed_polytope();
        for a in [0.3, 0.7, 1.0, 1.5] {
            let w64 = wrapping_numeric(&p, 0, a, 64);
            let w128 = wrapping_numeric(&p, 0, a, 128);
            assert!((w64 - w128).abs() < 1e-12);
        }
    }

    #[test]
    fn lattice_average_examples() {
        let sq = square_polytope();
        let avg = lattice_average(&sq, 0, 1.0);
        assert!(avg[0].abs() < 1e-15 && avg[1].abs() < 1e-15);

        // same weights as the moment map at s = log(a)·u
        let seg = segment_polytope();
        let avg = lattice_average(&seg, 0, 0.5f64.exp());
        assert!((avg[0] - 0.5752103826).abs() < 1e-9);
    }

    #[test]
    fn wrapping_average_identity_on_fixtures() {
        let radii = [0.3, 0.7, 1.0, 1.5];
        for p in [square_polytope(), triangle_polytope(), skewed_polytope()] {
            for ray in 0..p.n_rays() {
                let report = check_wrapping_average(&p, ray, &radii, 1e-8).unwrap();
                assert!(report.gaps.iter().all(|&g| g < 1e-8));
            }
        }
    }

    #[test]
    fn zero_tolerance_rejected() {
        let p = skewed_polytope();
        // quadrature and closed form agree to rounding but not to zero
        let result = check_wrapping_average(&p, 0, &[0.3, 0.7, 1.0, 1.5], 0.0);
        assert!(matches!(result, Err(Error::ToleranceExceeded { .. })));
    }

    #[test]
    fn infinitesimal_wrapping_targets() {
        // φ ≡ −1 on the triangle: every ray's limit is −2π
        let tri = triangle_polytope();
        for ray in 0..3 {
            let rep = infinitesimal_wrapping(&tri, ray, 1e-3, 1e-2).unwrap();
            assert!((rep.target + TAU).abs() < 1e-12);
            assert!(rep.lattice_minimum_exact);
        }
        // mixed offsets: each ray recovers its own value
        let skew = skewed_polytope();
        for (ray, expected) in [(0usize, -1.0f64), (1, -1.0), (2, -2.0), (3, -1.0)] {
            let rep = infinitesimal_wrapping(&skew, ray, 1e-3, 1e-2).unwrap();
            assert!((rep.target - TAU * expected).abs() < 1e-12);
            assert!(rep.lattice_minimum_exact);
        }
        assert!(infinitesimal_wrapping(&tri, 0, 0.5, 1e-2).is_err());
    }

    #[test]
    fn distortion_constant_vanishes() {
        for p in [square_polytope(), triangle_polytope(), skewed_polytope()] {
            for ray in 0..p.n_rays() {
                let rep = distortion_constant(&p, ray, 100, 1234).unwrap();
                assert!(rep.max_abs < 1e-9);
                assert!(rep.mean_abs < 1e-9);
                assert!(rep.std_dev < 1e-10, "std {}", rep.std_dev);
            }
        }
        // a single sample is already within tolerance
        let p = triangle_polytope();
        let rep = distortion_constant(&p, 0, 1, 99).unwrap();
        assert!(rep.max_abs < 1e-9);
    }

    #[test]
    fn contact_check_positive_on_triangle() {
        let p = triangle_polytope();
        let eps = BumpParams::uniform(3, 0.5).unwrap();
        let report = contact_check(&p, &eps, &[0.25, 0.5, 0.9], 100, 7).unwrap();
        assert!(report.positive && report.admissible);
        for level in &report.deltas {
            assert!(level.min_theta_xh > 0.0);
            assert!(level.worst_route_gap < 1e-8);
            assert!(level.n_samples == 100);
        }
    }

    #[test]
    fn contact_check_rejects_inadmissible_eps() {
        let p = triangle_polytope();
        let eps = BumpParams::uniform(3, 1.2).unwrap();
        assert!(matches!(
            contact_check(&p, &eps, &[0.5], 50, 7),
            Err(Error::InadmissibleEpsilon { .. })
        ));
    }

    #[test]
    fn contact_check_refuses_positive_ray_value() {
        // segment [1, 3]: φ(1) = 1 > 0, so no ε is admissible
        let fan = Fan::build(1, vec![vec![1], vec![-1]], &[vec![0], vec![1]])
            .unwrap()
            .fan;
        let p = PlData::from_ray_values(fan, &[rat_int(1), rat_int(-3)], None)
            .unwrap()
            .section_polytope()
            .unwrap();
        let eps = BumpParams::uniform(2, 0.5).unwrap();
        assert!(matches!(
            contact_check(&p, &eps, &[0.5], 50, 7),
            Err(Error::InadmissibleEpsilon { .. })
        ));
    }

    #[test]
    fn exact_torus_on_fixtures() {
        let sq = square_polytope();
        let rep = exact_torus_check(&sq, 1e-10).unwrap();
        assert!(rep.s_star.iter().all(|&x| x.abs() < 1e-12));
        assert!(rep.max_theta_component < 1e-10);

        // triangle: the average lattice point happens to be the origin too
        let tri = triangle_polytope();
        let rep = exact_torus_check(&tri, 1e-10).unwrap();
        assert!(rep.max_theta_component < 1e-10);

        // skewed rectangle: s* is genuinely nonzero
        let skew = skewed_polytope();
        let rep = exact_torus_check(&skew, 1e-10).unwrap();
        assert!(rep.s_star[0].abs() > 1e-3);
        assert!(rep.max_theta_component < 1e-10);
    }

    #[test]
    fn exact_torus_requires_interior_origin() {
        // square translated to [2,4] × [−1,1]
        let fan = Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
        .fan;
        let values = vec![rat_int(2), rat_int(-1), rat_int(-4), rat_int(-1)];
        let p = PlData::from_ray_values(fan, &values, None)
            .unwrap()
            .section_polytope()
            .unwrap();
        assert!(matches!(
            exact_torus_check(&p, 1e-10),
            Err(Error::NotInterior)
        ));
        // after origin normalization the check passes
        let q = p.normalized_to_origin(None).unwrap();
        assert!(exact_torus_check(&q, 1e-10).is_ok());
    }

    #[test]
    fn wrapping_small_radius_approaches_offset() {
        let tri = triangle_polytope();
        let w = wrapping_numeric(&tri, 0, 1e-3, 128);
        assert!((w + TAU).abs() < 1e-2, "w = {w}");
    }
}
