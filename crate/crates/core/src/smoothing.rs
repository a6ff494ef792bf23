//! Bump functions of the radial coordinates, the boundary smoothing function
//! h(m) = Σ_ρ q_{ε_ρ}(r_ρ(m)), its level sets, the collar strata, and the
//! polyhedral Hamiltonian H = h ∘ μ.

use crate::error::{Error, Result};
use crate::kahler::{moment_map, TorusPoint};
use crate::polytope::SectionPolytope;
use crate::rational::{rat_from_f64, rat_to_f64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-ray smoothing widths ε_ρ > 0.
#[derive(Clone, Debug)]
pub struct BumpParams {
    eps: Vec<f64>,
}

impl BumpParams {
    pub fn per_ray(eps: Vec<f64>) -> Result<Self> {
        for &e in &eps {
            if !(e > 0.0) {
                return Err(Error::NonpositiveEpsilon { eps: e });
            }
        }
        Ok(BumpParams { eps })
    }

    pub fn uniform(n_rays: usize, e: f64) -> Result<Self> {
        Self::per_ray(vec![e; n_rays])
    }

    pub fn eps(&self, ray: usize) -> f64 {
        self.eps[ray]
    }

    pub fn values(&self) -> &[f64] {
        &self.eps
    }

    /// ε_ρ < −r·φ(u_ρ) for every ray, decided exactly on the rational data.
    pub fn is_contact_admissible(&self, p: &SectionPolytope) -> Result<bool> {
        for (ray, &e) in self.eps.iter().enumerate() {
            let bound = -p.offsets()[ray].clone();
            if rat_from_f64(e)? >= bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// ε_ρ ≤ −r·φ(u_ρ) for every ray; exactly when this holds the origin
    /// lies in the zero set of the smoothing function.
    pub fn zero_set_covers_origin(&self, p: &SectionPolytope) -> Result<bool> {
        for (ray, &e) in self.eps.iter().enumerate() {
            let bound = -p.offsets()[ray].clone();
            if rat_from_f64(e)? > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The bump q_ε(x) = exp(−x² / (ε²(ε²−x²))) on [0, ε), zero beyond.
pub fn bump(eps: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::NegativeInput { x });
    }
    if x >= eps {
        return Ok(0.0);
    }
    let e2 = eps * eps;
    Ok((-(x * x) / (e2 * (e2 - x * x))).exp())
}

/// q′_ε(x) = −q_ε(x) · 2x (ε²−x²)^{−2}.
pub fn bump_d1(eps: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::NegativeInput { x });
    }
    if x >= eps {
        return Ok(0.0);
    }
    let d = eps * eps - x * x;
    Ok(-bump(eps, x)? * 2.0 * x / (d * d))
}

/// q″_ε(x) = 2 q_ε(x) g_ε(x) (ε²−x²)^{−4} with g_ε(x) = 3x⁴ + (2−2ε²)x² − ε⁴.
pub fn bump_d2(eps: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::NegativeInput { x });
    }
    if x >= eps {
        return Ok(0.0);
    }
    let d = eps * eps - x * x;
    Ok(2.0 * bump(eps, x)? * bump_g(eps, x) / d.powi(4))
}

/// The biquadratic whose unique positive root is the inflection point.
fn bump_g(eps: f64, x: f64) -> f64 {
    let e2 = eps * eps;
    3.0 * x.powi(4) + (2.0 - 2.0 * e2) * x * x - e2 * e2
}

/// The inflection point x_ε ∈ (0, ε) of the bump: q″ changes sign there and
/// q′ attains its minimum. For ε < 1 the root comes from the quadratic
/// formula in x²; for ε ≥ 1 (outside the range covered by the monotonicity
/// argument backing that expression) it falls back to bisection on g.
pub fn inflection_point(eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::NonpositiveEpsilon { eps });
    }
    if eps < 1.0 {
        let e2 = eps * eps;
        let y = (2.0 * e2 - 2.0 + (16.0 * e2 * e2 - 8.0 * e2 + 4.0).sqrt()) / 6.0;
        Ok(y.sqrt())
    } else {
        Ok(inflection_point_bisect(eps))
    }
}

/// Bisection on g over (0, ε); g(0) = −ε⁴ < 0 and g(ε) = 2ε² > 0.
pub fn inflection_point_bisect(eps: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, eps);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if bump_g(eps, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The smoothing function h(m) = Σ_ρ q_{ε_ρ}(r_ρ(m)). Radial coordinates
/// must be nonnegative up to a small slack (points weakly inside P);
/// tiny negative values from rounding are clamped.
pub fn smoothing_h(p: &SectionPolytope, eps: &BumpParams, m: &[f64]) -> Result<f64> {
    let mut h = 0.0;
    for ray in 0..p.n_rays() {
        let r = p.radial_f64(ray, m);
        if r < -1e-9 {
            return Err(Error::NegativeInput { x: r });
        }
        h += bump(eps.eps(ray), r.max(0.0))?;
    }
    Ok(h)
}

/// Gradient ∇h(m) = Σ_ρ q′_{ε_ρ}(r_ρ(m)) u_ρ.
pub fn smoothing_grad(p: &SectionPolytope, eps: &BumpParams, m: &[f64]) -> Result<Vec<f64>> {
    let n = p.dim();
    let mut grad = vec![0.0; n];
    for ray in 0..p.n_rays() {
        let r = p.radial_f64(ray, m);
        if r < -1e-9 {
            return Err(Error::NegativeInput { x: r });
        }
        let qp = bump_d1(eps.eps(ray), r.max(0.0))?;
        if qp != 0.0 {
            for (k, g) in grad.iter_mut().enumerate() {
                *g += qp * p.fan().ray(ray).coords()[k] as f64;
            }
        }
    }
    Ok(grad)
}

/// Exit radius of the ray t ↦ t·v from the polytope (largest t with tv ∈ P).
pub fn exit_radius(p: &SectionPolytope, v: &[f64]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for ray in 0..p.n_rays() {
        let pairing = p.fan().ray(ray).dot_f64(v);
        if pairing < 0.0 {
            let bound = rat_to_f64(&p.offsets()[ray]) / pairing;
            best = best.min(bound);
        }
    }
    if !best.is_finite() {
        return Err(Error::PreconditionFailed {
            detail: "direction does not exit the polytope".into(),
        });
    }
    Ok(best)
}

/// Radius t with h(t·v) = δ along a unit direction v, by bisection on
/// [0, L_v]. Requires the origin to lie in the zero set of h. Returns None
/// when h never reaches δ along the ray (possible for δ ≥ 1, where level
/// sets may be non-compact).
pub fn radial_level_solve(
    p: &SectionPolytope,
    eps: &BumpParams,
    v: &[f64],
    delta: f64,
) -> Result<Option<f64>> {
    if !(delta > 0.0) {
        return Err(Error::PreconditionFailed {
            detail: format!("level must be positive, got {delta}"),
        });
    }
    if !eps.zero_set_covers_origin(p)? {
        return Err(Error::PreconditionFailed {
            detail: "origin is not in the zero set of h (need ε_ρ ≤ −rφ(u_ρ))".into(),
        });
    }
    let l_v = exit_radius(p, v)?;
    // the level equation lives on the open segment (0, L_v): keep a strict
    // interior margin so a supremum attained only at the boundary (e.g.
    // δ = 1 along a facet normal) reports Absent instead of a boundary point
    let t_hi = l_v * (1.0 - 1e-7);
    let point = |t: f64| -> Vec<f64> { v.iter().map(|&c| t * c).collect() };
    if smoothing_h(p, eps, &point(t_hi))? < delta {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0f64, t_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if smoothing_h(p, eps, &point(mid))? < delta {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// A sampled level set of the smoothing function.
#[derive(Clone, Debug)]
pub struct LevelSetSample {
    pub delta: f64,
    pub directions: Vec<Vec<f64>>,
    pub radii: Vec<Option<f64>>,
    pub points: Vec<Option<Vec<f64>>>,
}

/// Quasi-uniform unit directions in canonical order: ±1 in one dimension,
/// equally spaced angles in the plane, a golden-angle spiral on the
/// 2-sphere, and seeded normalized Gaussians beyond that.
pub fn sphere_directions(n: usize, n_dirs: usize) -> Vec<Vec<f64>> {
    match n {
        0 => vec![],
        1 => [vec![1.0], vec![-1.0]].into_iter().take(n_dirs).collect(),
        2 => (0..n_dirs)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n_dirs as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
            (0..n_dirs)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / n_dirs as f64;
                    let r = (1.0 - z * z).sqrt();
                    let a = golden * i as f64;
                    vec![r * a.cos(), r * a.sin(), z]
                })
                .collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..n_dirs)
                .map(|_| {
                    loop {
                        let v: Vec<f64> = (0..n)
                            .map(|_| {
                                // Box-Muller pairs, one coordinate at a time
                                let u1: f64 = rng.gen_range(1e-12..1.0);
                                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                                (-2.0 * u1.ln()).sqrt() * u2.cos()
                            })
                            .collect();
                        let norm = crate::linalg::norm(&v);
                        if norm > 1e-6 {
                            return v.iter().map(|x| x / norm).collect();
                        }
                    }
                })
                .collect()
        }
    }
}

/// Solve the level equation along a set of quasi-uniform directions.
pub fn sample_level_set(
    p: &SectionPolytope,
    eps: &BumpParams,
    delta: f64,
    n_dirs: usize,
) -> Result<LevelSetSample> {
    let directions = sphere_directions(p.dim(), n_dirs);
    let mut radii = Vec::with_capacity(directions.len());
    let mut points = Vec::with_capacity(directions.len());
    for v in &directions {
        let t = radial_level_solve(p, eps, v, delta)?;
        points.push(t.map(|t| v.iter().map(|&c| t * c).collect()));
        radii.push(t);
    }
    Ok(LevelSetSample {
        delta,
        directions,
        radii,
        points,
    })
}

/// Stratum of the collar at infinity to which a point of int(P) belongs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumLabel {
    /// Index of the fan cone whose rays are exactly the active set.
    Cone(usize),
    /// The active set spans no cone of the fan (ε outside the partition
    /// regime); reported rather than masked.
    NoStratum(Vec<usize>),
}

/// Active rays {ρ : 0 < r_ρ(m) < ε_ρ} matched against the fan's cones.
/// The empty active set maps to the trivial cone (the zero set of H).
pub fn classify_stratum(p: &SectionPolytope, eps: &BumpParams, m: &[f64]) -> StratumLabel {
    let active: std::collections::BTreeSet<usize> = (0..p.n_rays())
        .filter(|&ray| {
            let r = p.radial_f64(ray, m);
            r > 0.0 && r < eps.eps(ray)
        })
        .collect();
    match p.fan().cone_by_rays(&active) {
        Some(idx) => StratumLabel::Cone(idx),
        None => StratumLabel::NoStratum(active.into_iter().collect()),
    }
}

/// Polyhedral Hamiltonian H(z) = h(μ(s)); independent of the angles.
pub fn polyhedral_h(p: &SectionPolytope, eps: &BumpParams, pt: &TorusPoint) -> Result<f64> {
    let mu = moment_map(p, pt.s());
    smoothing_h(p, eps, &mu)
}

/// Membership in the sublevel domain {H ≤ δ}.
pub fn in_domain(p: &SectionPolytope, eps: &BumpParams, delta: f64, pt: &TorusPoint) -> Result<bool> {
    Ok(polyhedral_h(p, eps, pt)? <= delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::kahler::invert_moment_map;
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

    #[test]
    fn bump_basic_properties() {
        for eps in [0.3, 0.5, 1.0, 1.7] {
            assert_eq!(bump(eps, 0.0).unwrap(), 1.0);
            assert_eq!(bump(eps, eps).unwrap(), 0.0);
            assert_eq!(bump(eps, eps + 0.5).unwrap(), 0.0);
            assert_eq!(bump_d1(eps, 0.0).unwrap(), 0.0);
            assert_eq!(bump_d1(eps, eps + 0.1).unwrap(), 0.0);
        }
        assert!((bump(1.0, 0.5).unwrap() - (-1.0f64 / 3.0).exp()).abs() < 1e-15);
        assert!((bump(0.5, 0.25).unwrap() - (-4.0f64 / 3.0).exp()).abs() < 1e-15);
        assert!(matches!(bump(0.5, -0.1), Err(Error::NegativeInput { .. })));
    }

    #[test]
    fn bump_derivatives_match_finite_differences() {
        let h = 1e-6;
        for eps in [0.5f64, 0.9] {
            for i in 0..1000 {
                let x = eps * (i as f64 + 0.5) / 1000.0;
                let fd1 = (bump(eps, x + h).unwrap() - bump(eps, (x - h).max(0.0)).unwrap())
                    / (if x - h < 0.0 { x + h } else { 2.0 * h });
                assert!(
                    (bump_d1(eps, x).unwrap() - fd1).abs() < 1e-7,
                    "q' mismatch at eps={eps} x={x}"
                );
                if x > h {
                    let fd2 = (bump_d1(eps, x + h).unwrap() - bump_d1(eps, x - h).unwrap())
                        / (2.0 * h);
                    assert!(
                        (bump_d2(eps, x).unwrap() - fd2).abs() < 1e-6,
                        "q'' mismatch at eps={eps} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn bump_derivative_sign_pattern() {
        let eps = 0.7;
        assert_eq!(bump_d1(eps, 0.0).unwrap(), 0.0);
        assert_eq!(bump_d1(eps, eps).unwrap(), 0.0);
        let mut x = 1e-9;
        while x < eps - 1e-9 {
            assert!(bump_d1(eps, x).unwrap() < 0.0, "q' not negative at {x}");
            x += eps / 500.0;
        }
    }

    #[test]
    fn inflection_point_values_and_oracle() {
        // frozen from the quadratic formula, cross-checked by bisection on g
        let x = inflection_point(0.5).unwrap();
        assert!((x - 0.196659946595).abs() < 1e-10);
        let x1 = inflection_point(1.0).unwrap();
        assert!((x1 - 0.759835685652).abs() < 1e-10);
        assert!((x1 - 3.0f64.powf(-0.25)).abs() < 1e-12);

        for eps in [0.1, 0.3, 0.5, 0.77, 0.99, 1.0, 1.3, 2.0] {
            let closed = inflection_point(eps).unwrap();
            let bisect = inflection_point_bisect(eps);
            assert!(
                (closed - bisect).abs() < 1e-10,
                "closed {closed} vs bisect {bisect} at eps={eps}"
            );
            // q'' changes sign at x_eps
            assert!(bump_d2(eps, closed - 1e-4).unwrap() < 0.0);
            assert!(bump_d2(eps, closed + 1e-4).unwrap() > 0.0);
            // q'(x_eps) ≤ −1/ε
            assert!(bump_d1(eps, closed).unwrap() <= -1.0 / eps + 1e-12);
        }
        assert!(inflection_point(0.0).is_err());
        assert!(inflection_point(-0.5).is_err());
    }

    #[test]
    fn smoothing_values() {
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        // deep inside: all radial coordinates ≥ ε
        assert_eq!(smoothing_h(&p, &eps, &[0.0, 0.0]).unwrap(), 0.0);
        // worked example: only the facet m1 = 1 is active at (0.75, 0)
        let h = smoothing_h(&p, &eps, &[0.75, 0.0]).unwrap();
        assert!((h - (-4.0f64 / 3.0).exp()).abs() < 1e-14);
        assert!((h - 0.2635971381).abs() < 1e-9);
        // far outside: negative radial coordinate
        assert!(smoothing_h(&p, &eps, &[2.0, 0.0]).is_err());
    }

    #[test]
    fn face_points_bound_h_from_below() {
        // h ≥ |σ(1)| on the face dual to σ
        let p = triangle_polytope();
        let eps = BumpParams::uniform(3, 0.5).unwrap();
        for v in p.vertices() {
            let vf: Vec<f64> = v.iter().map(crate::rational::rat_to_f64).collect();
            assert!(smoothing_h(&p, &eps, &vf).unwrap() >= 2.0);
        }
        // facet-interior samples have h ≥ 1
        let sq = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        for m in [[1.0, 0.3], [-1.0, -0.4], [0.2, 1.0], [-0.6, -1.0]] {
            assert!(smoothing_h(&sq, &eps, &m).unwrap() >= 1.0);
        }
    }

    #[test]
    fn radial_monotonicity() {
        let p = triangle_polytope();
        let eps = BumpParams::uniform(3, 0.5).unwrap();
        let dirs = sphere_directions(2, 500);
        for v in dirs {
            let l = exit_radius(&p, &v).unwrap();
            let mut prev = 0.0;
            for i in 0..=200 {
                let t = l * i as f64 / 200.0;
                let m: Vec<f64> = v.iter().map(|&c| t * c).collect();
                let h = smoothing_h(&p, &eps, &m).unwrap();
                assert!(h - prev > -1e-12, "h not monotone along {v:?} at t={t}");
                prev = h;
            }
        }
    }

    #[test]
    fn level_solve_worked_example() {
        // square, ε ≡ 0.5, δ = 0.5 along (1,0): q_{0.5}(1−t) = 0.5
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        let t = radial_level_solve(&p, &eps, &[1.0, 0.0], 0.5)
            .unwrap()
            .unwrap();
        assert!((t - 0.8078454610).abs() < 1e-9, "t = {t}");
        // δ close to one still solvable strictly inside
        let t = radial_level_solve(&p, &eps, &[1.0, 0.0], 0.999)
            .unwrap()
            .unwrap();
        assert!(t < exit_radius(&p, &[1.0, 0.0]).unwrap());
    }

    #[test]
    fn level_solve_above_one_can_be_absent() {
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        // toward a facet interior h tops out at 1
        assert_eq!(radial_level_solve(&p, &eps, &[1.0, 0.0], 1.5).unwrap(), None);
        // toward the corner two bumps stack up to 2
        let d = std::f64::consts::FRAC_1_SQRT_2;
        let t = radial_level_solve(&p, &eps, &[d, d], 1.5).unwrap();
        assert!(t.is_some());
    }

    #[test]
    fn level_solve_precondition() {
        let p = square_polytope();
        // ε = 1.5 > 1 = −rφ: origin not in the zero set
        let eps = BumpParams::uniform(4, 1.5).unwrap();
        assert!(matches!(
            radial_level_solve(&p, &eps, &[1.0, 0.0], 0.5),
            Err(Error::PreconditionFailed { .. })
        ));
        assert!(matches!(
            radial_level_solve(&p, &BumpParams::uniform(4, 0.5).unwrap(), &[1.0, 0.0], 0.0),
            Err(Error::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn level_set_sampling() {
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        let sample = sample_level_set(&p, &eps, 0.5, 64).unwrap();
        assert_eq!(sample.directions.len(), 64);
        assert!(sample.radii.iter().all(|r| r.is_some()));
        // four-fold symmetry of the square: radii repeat every quarter turn
        for i in 0..16 {
            let a = sample.radii[i].unwrap();
            let b = sample.radii[i + 16].unwrap();
            assert!((a - b).abs() < 1e-9);
        }
        let empty = sample_level_set(&p, &eps, 0.5, 0).unwrap();
        assert!(empty.directions.is_empty());
    }

    #[test]
    fn stratum_classification() {
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        // center: trivial cone
        let label = classify_stratum(&p, &eps, &[0.0, 0.0]);
        assert_eq!(label, StratumLabel::Cone(p.fan().trivial_cone()));
        // near the facet m1 = 1: the ray u = (−1,0) is active
        let label = classify_stratum(&p, &eps, &[0.75, 0.0]);
        let expected = p.fan().cone_by_rays(&[2].into_iter().collect()).unwrap();
        assert_eq!(label, StratumLabel::Cone(expected));
        // oversized ε: the active set spans opposite rays, matching no cone
        let eps_big = BumpParams::uniform(4, 1.9).unwrap();
        let label = classify_stratum(&p, &eps_big, &[0.5, 0.5]);
        assert_eq!(label, StratumLabel::NoStratum(vec![0, 1, 2, 3]));
    }

    #[test]
    fn trivial_stratum_is_exactly_the_zero_set_region() {
        // sweep the interior: the trivial cone appears exactly where every
        // radial coordinate reaches ε (direct inequality cross-check)
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        let trivial = p.fan().trivial_cone();
        for i in 0..40 {
            for j in 0..40 {
                let m = [-0.99 + 1.98 * i as f64 / 39.0, -0.99 + 1.98 * j as f64 / 39.0];
                let in_zero_region = (0..4).all(|ray| p.radial_f64(ray, &m) >= 0.5);
                let label = classify_stratum(&p, &eps, &m);
                assert_eq!(
                    label == StratumLabel::Cone(trivial),
                    in_zero_region,
                    "mismatch at {m:?}"
                );
            }
        }
    }

    #[test]
    fn polyhedral_hamiltonian_composition() {
        let p = square_polytope();
        let eps = BumpParams::uniform(4, 0.5).unwrap();
        let s = invert_moment_map(&p, &[0.75, 0.0]).unwrap();
        let pt = TorusPoint::new(s.clone(), vec![0.0, 0.0]);
        let h = polyhedral_h(&p, &eps, &pt).unwrap();
        assert!((h - 0.2635971381).abs() < 1e-8);
        // α-independence
        let pt2 = TorusPoint::new(s, vec![2.5, 4.0]);
        assert_eq!(h, polyhedral_h(&p, &eps, &pt2).unwrap());
        // domain membership
        assert!(in_domain(&p, &eps, 0.3, &pt).unwrap());
        assert!(!in_domain(&p, &eps, 0.2, &pt).unwrap());
    }
}
