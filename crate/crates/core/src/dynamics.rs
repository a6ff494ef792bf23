//! Dynamics of the polyhedral Hamiltonian: the stratum vector field, orbit
//! families of prescribed slope, dynamical supports, and periods.
//!
//! On a stratum the field is the lattice combination Σ q′(r_ρ∘μ)·X_{u_ρ},
//! tangent to the moment fibers, so each fiber carries a linear torus flow.
//! Time is normalized so that a flow of integral slope c has first return
//! 1/|gcd c|: one unit of time advances the angles by 2π times the slope.
//! `field_analytic` itself reports the radian rate used by the ω-identities.

use std::f64::consts::TAU;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::LatticeVector;
use crate::kahler::{invert_moment_map, moment_map, Tangent, TorusPoint};
use crate::linalg::{kernel_basis, solve_any};
use crate::polytope::SectionPolytope;
use crate::rational::{rat_from_f64, rat_int, rat_to_f64, Rat, RatVec};
use crate::simplex::{Cmp, LpBuilder};
use crate::slope::lattice_period;
use crate::smoothing::{bump_d1, classify_stratum, inflection_point, BumpParams, StratumLabel};

/// The Hamiltonian vector field at a stratum point, directly from the
/// active-ray formula: (0, Σ_{ρ∈σ(1)} q′_{ε_ρ}(r_ρ(μ(s))) u_ρ).
pub fn field_analytic(
    p: &SectionPolytope,
    eps: &BumpParams,
    pt: &TorusPoint,
) -> Result<Tangent> {
    let mu = moment_map(p, pt.s());
    let cone = match classify_stratum(p, eps, &mu) {
        StratumLabel::Cone(c) => c,
        StratumLabel::NoStratum(active) => return Err(Error::NoStratumPoint { active }),
    };
    let n = p.dim();
    let mut alpha_dot = vec![0.0; n];
    for &ray in p.fan().cone(cone).ray_indices() {
        let qp = bump_d1(eps.eps(ray), p.radial_f64(ray, &mu))?;
        for (k, a) in alpha_dot.iter_mut().enumerate() {
            *a += qp * p.fan().ray(ray).coords()[k] as f64;
        }
    }
    Ok(Tangent {
        s_dot: vec![0.0; n],
        alpha_dot,
    })
}

/// Solutions of q′_ε(x) = −d on (0, ε).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlopePair {
    /// d exceeds −q′(x_ε); no solution.
    Absent,
    /// d equals the extremal slope; the double root x_ε.
    Double(f64),
    /// The two solutions a < x_ε < b.
    Pair { a: f64, b: f64 },
}

/// Solve q′_ε(x) = −d by bisection on the two monotone branches around the
/// inflection point.
pub fn solve_slope_pair(eps: f64, d: f64) -> Result<SlopePair> {
    if !(d > 0.0) {
        return Err(Error::InvalidInput(format!("slope must be positive, got {d}")));
    }
    let x_eps = inflection_point(eps)?;
    let d_max = -bump_d1(eps, x_eps)?;
    if d > d_max * (1.0 + 1e-12) {
        return Ok(SlopePair::Absent);
    }
    if (d - d_max).abs() <= 1e-9 * d_max.max(1.0) {
        return Ok(SlopePair::Double(x_eps));
    }
    let bisect = |mut lo: f64, mut hi: f64, decreasing: bool| -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let qp = bump_d1(eps, mid).expect("domain is nonnegative");
            let go_right = if decreasing { qp > -d } else { qp < -d };
            if go_right {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-16 {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    // q′ decreases from 0 to −d_max on [0, x_ε], then increases back to 0
    let a = bisect(0.0, x_eps, true);
    let b = bisect(x_eps, eps, false);
    Ok(SlopePair::Pair { a, b })
}

/// Which solution a choice function picks for a ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairChoice {
    Lower,
    Upper,
}

/// One connected component of an orbit family: a choice of radial value per
/// active ray together with an exact feasibility certificate.
#[derive(Clone, Debug)]
pub struct FamilyComponent {
    pub choice: Vec<PairChoice>,
    /// a point of the component's moment image
    pub witness: Vec<f64>,
    /// slack of the strict constraints at the witness
    pub margin: f64,
}

/// Prescribed slope data: exact rationals or floats recovered from a point.
#[derive(Clone, Debug)]
pub enum SlopeSpec {
    Exact(RatVec),
    Approx(Vec<f64>),
}

impl SlopeSpec {
    fn to_f64(&self) -> Vec<f64> {
        match self {
            SlopeSpec::Exact(v) => v.iter().map(rat_to_f64).collect(),
            SlopeSpec::Approx(v) => v.clone(),
        }
    }

    fn len(&self) -> usize {
        match self {
            SlopeSpec::Exact(v) => v.len(),
            SlopeSpec::Approx(v) => v.len(),
        }
    }
}

/// The orbit family of slope d over a cone: per-ray solution pairs, the
/// nonempty components among the choice functions, and the orbit period
/// when the lattice image Σ d_ρ u_ρ is integral.
#[derive(Clone, Debug)]
pub struct OrbitFamily {
    pub cone: usize,
    pub rays: Vec<usize>,
    pub slope: Vec<f64>,
    pub pairs: Vec<SlopePair>,
    pub components: Vec<FamilyComponent>,
    /// dimension of each component's moment image, n − dim σ
    pub component_dim: usize,
    pub lattice_image: Option<LatticeVector>,
    pub period: Option<Rat>,
}

impl OrbitFamily {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Construct the family B_σ^ε(d). The trivial cone yields the zero-set
/// description (constant orbits, no period). An all-components-empty result
/// is valid and reported as such rather than as an error.
pub fn family(
    p: &SectionPolytope,
    eps: &BumpParams,
    cone: usize,
    slope: &SlopeSpec,
) -> Result<OrbitFamily> {
    let rays: Vec<usize> = p.fan().cone(cone).ray_indices().iter().copied().collect();
    let n = p.dim();
    let component_dim = n - p.fan().cone(cone).dim();

    if rays.is_empty() {
        // zero set {m : r_ρ(m) ≥ ε_ρ for all ρ}
        let mut lp = LpBuilder::new();
        let m = lp.add_vars(n, false);
        for ray in 0..p.n_rays() {
            let terms: Vec<(usize, Rat)> = m
                .iter()
                .enumerate()
                .map(|(k, &v)| (v, rat_int(p.fan().ray(ray).coords()[k])))
                .collect();
            let rhs = &p.offsets()[ray] + rat_from_f64(eps.eps(ray))?;
            lp.constraint(&terms, Cmp::Ge, rhs);
        }
        let components = match lp.feasible() {
            Some(sol) => vec![FamilyComponent {
                choice: vec![],
                witness: sol[..n].iter().map(rat_to_f64).collect(),
                margin: 0.0,
            }],
            None => vec![],
        };
        return Ok(OrbitFamily {
            cone,
            rays,
            slope: vec![],
            pairs: vec![],
            components,
            component_dim,
            lattice_image: None,
            period: None,
        });
    }

    if slope.len() != rays.len() {
        return Err(Error::InvalidInput(format!(
            "slope has {} entries for {} active rays",
            slope.len(),
            rays.len()
        )));
    }
    let d_f64 = slope.to_f64();
    let pairs: Vec<SlopePair> = rays
        .iter()
        .zip(&d_f64)
        .map(|(&ray, &d)| solve_slope_pair(eps.eps(ray), d))
        .collect::<Result<_>>()?;

    // lattice image c_σ(d) and period
    let (lattice_image, period) = lattice_image_of(p, &rays, slope)?;

    if pairs.iter().any(|pr| matches!(pr, SlopePair::Absent)) {
        return Ok(OrbitFamily {
            cone,
            rays,
            slope: d_f64,
            pairs,
            components: vec![],
            component_dim,
            lattice_image,
            period,
        });
    }

    // enumerate choice functions; Double roots contribute a single choice
    let free: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter_map(|(i, pr)| matches!(pr, SlopePair::Pair { .. }).then_some(i))
        .collect();
    let mut components = Vec::new();
    for mask in 0..(1usize << free.len()) {
        let mut choice = vec![PairChoice::Lower; rays.len()];
        for (bit, &i) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                choice[i] = PairChoice::Upper;
            }
        }
        let values: Vec<f64> = pairs
            .iter()
            .zip(&choice)
            .map(|(pr, ch)| match (pr, ch) {
                (SlopePair::Double(x), _) => *x,
                (SlopePair::Pair { a, .. }, PairChoice::Lower) => *a,
                (SlopePair::Pair { b, .. }, PairChoice::Upper) => *b,
                (SlopePair::Absent, _) => unreachable!(),
            })
            .collect();
        if let Some((witness, margin)) = component_feasible(p, eps, &rays, &values)? {
            components.push(FamilyComponent {
                choice,
                witness,
                margin,
            });
        }
    }

    Ok(OrbitFamily {
        cone,
        rays,
        slope: d_f64,
        pairs,
        components,
        component_dim,
        lattice_image,
        period,
    })
}

fn lattice_image_of(
    p: &SectionPolytope,
    rays: &[usize],
    slope: &SlopeSpec,
) -> Result<(Option<LatticeVector>, Option<Rat>)> {
    let n = p.dim();
    match slope {
        SlopeSpec::Exact(d) => {
            let mut c = vec![Rat::zero(); n];
            for (&ray, dv) in rays.iter().zip(d) {
                if !dv.is_positive() {
                    return Err(Error::InvalidInput("slope entries must be positive".into()));
                }
                for (k, ck) in c.iter_mut().enumerate() {
                    *ck += dv * rat_int(p.fan().ray(ray).coords()[k]);
                }
            }
            if c.iter().all(crate::rational::is_integral) {
                let v = LatticeVector::new(
                    c.iter()
                        .map(|x| {
                            use num_traits::ToPrimitive;
                            x.to_integer().to_i64().expect("lattice image fits i64")
                        })
                        .collect(),
                );
                let t = lattice_period(&v).ok();
                Ok((Some(v), t))
            } else {
                Ok((None, None))
            }
        }
        SlopeSpec::Approx(d) => {
            let mut c = vec![0.0; n];
            for (&ray, &dv) in rays.iter().zip(d) {
                if !(dv > 0.0) {
                    return Err(Error::InvalidInput("slope entries must be positive".into()));
                }
                for (k, ck) in c.iter_mut().enumerate() {
                    *ck += dv * p.fan().ray(ray).coords()[k] as f64;
                }
            }
            let rounded: Vec<i64> = c.iter().map(|x| x.round() as i64).collect();
            let integral = c
                .iter()
                .zip(&rounded)
                .all(|(x, &r)| (x - r as f64).abs() < 1e-8);
            if integral {
                let v = LatticeVector::new(rounded);
                let t = lattice_period(&v).ok();
                Ok((Some(v), t))
            } else {
                Ok((None, None))
            }
        }
    }
}

/// Decide nonemptiness of {m : r_ρ(m) = value_ρ on σ(1)} inside the open
/// region where all other radial coordinates strictly exceed ε. The data is
/// rationalized exactly and the strict constraints require a positive slack
/// above the interval-width guard 1e−9.
fn component_feasible(
    p: &SectionPolytope,
    eps: &BumpParams,
    rays: &[usize],
    values: &[f64],
) -> Result<Option<(Vec<f64>, f64)>> {
    const WIDTH: f64 = 1e-9;
    let n = p.dim();
    let mut lp = LpBuilder::new();
    let m = lp.add_vars(n, false);
    let t = lp.add_var(true);
    lp.set_objective(t, rat_int(1));
    for (&ray, &val) in rays.iter().zip(values) {
        let terms: Vec<(usize, Rat)> = m
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, rat_int(p.fan().ray(ray).coords()[k])))
            .collect();
        lp.constraint(&terms, Cmp::Eq, &p.offsets()[ray] + rat_from_f64(val)?);
    }
    for ray in 0..p.n_rays() {
        if rays.contains(&ray) {
            continue;
        }
        let mut terms: Vec<(usize, Rat)> = m
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, rat_int(p.fan().ray(ray).coords()[k])))
            .collect();
        terms.push((t, rat_int(-1)));
        let rhs = &p.offsets()[ray] + rat_from_f64(eps.eps(ray))?;
        lp.constraint(&terms, Cmp::Ge, rhs);
    }
    lp.constraint(&[(t, rat_int(1))], Cmp::Le, rat_int(1));
    match lp.solve().optimal() {
        Some((sol, value)) => {
            let margin = rat_to_f64(&value);
            if margin > WIDTH {
                Ok(Some((sol[..n].iter().map(rat_to_f64).collect(), margin)))
            } else {
                Ok(None)
            }
        }
        None => Ok(None),
    }
}

/// Lattice points of the relative interior of a cone realized by nonempty
/// orbit families, with the norm bound used for the enumeration.
#[derive(Clone, Debug)]
pub struct DynamicalSupport {
    pub cone: usize,
    pub rays: Vec<usize>,
    pub norm_bound: f64,
    /// realized lattice points together with a slope certificate
    pub points: Vec<(LatticeVector, RatVec)>,
}

/// Enumerate the dynamical support of a nontrivial cone: candidates are the
/// lattice points of int(σ) within the bound Σ_ρ (−q′(x_{ε_ρ})) |u_ρ|, and
/// each is kept when some admissible slope in c_σ⁻¹(v) yields a nonempty
/// family. For non-simplicial cones the slope fiber is sampled at the
/// vertices, edge midpoints toward the centroid, and centroid of the
/// admissible polytope, so membership certificates are exact while absence
/// means the sampled slopes failed.
pub fn dynamical_support(
    p: &SectionPolytope,
    eps: &BumpParams,
    cone: usize,
) -> Result<DynamicalSupport> {
    let rays: Vec<usize> = p.fan().cone(cone).ray_indices().iter().copied().collect();
    if rays.is_empty() {
        return Err(Error::InvalidInput(
            "dynamical support is defined for nontrivial cones".into(),
        ));
    }
    let n = p.dim();
    let d_max: Vec<f64> = rays
        .iter()
        .map(|&ray| -> Result<f64> {
            let x = inflection_point(eps.eps(ray))?;
            Ok(-bump_d1(eps.eps(ray), x)?)
        })
        .collect::<Result<_>>()?;
    let norm_bound: f64 = rays
        .iter()
        .zip(&d_max)
        .map(|(&ray, dm)| dm * p.fan().ray(ray).norm())
        .sum();
    // coordinate box |v_k| ≤ Σ_ρ d_max_ρ |u_ρ^(k)|
    let box_bound: Vec<i64> = (0..n)
        .map(|k| {
            rays.iter()
                .zip(&d_max)
                .map(|(&ray, dm)| dm * (p.fan().ray(ray).coords()[k].abs() as f64))
                .sum::<f64>()
                .floor() as i64
        })
        .collect();

    let mut points = Vec::new();
    let mut v = box_bound.iter().map(|&b| -b).collect::<Vec<i64>>();
    'outer: loop {
        let candidate = LatticeVector::new(v.clone());
        if !candidate.is_zero() {
            let norm = candidate.norm();
            if norm <= norm_bound + 1e-9 {
                if let Some(d0) = p
                    .fan()
                    .relative_interior_coefficients(cone, &candidate.to_rat())
                {
                    if let Some(d) =
                        admissible_slope(p, eps, cone, &rays, &candidate, &d0, &d_max)?
                    {
                        points.push((candidate, d));
                    }
                }
            }
        }
        for k in 0..n {
            v[k] += 1;
            if v[k] <= box_bound[k] {
                continue 'outer;
            }
            v[k] = -box_bound[k];
        }
        break;
    }
    points.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(DynamicalSupport {
        cone,
        rays,
        norm_bound,
        points,
    })
}

/// Search c_σ⁻¹(v) ∩ {0 < d_ρ ≤ d_max_ρ} for a slope whose family is
/// nonempty; returns the successful slope.
fn admissible_slope(
    p: &SectionPolytope,
    eps: &BumpParams,
    cone: usize,
    rays: &[usize],
    v: &LatticeVector,
    d0: &RatVec,
    d_max: &[f64],
) -> Result<Option<RatVec>> {
    let k = rays.len();
    let d_max_rat: Vec<Rat> = d_max
        .iter()
        .map(|&x| rat_from_f64(x))
        .collect::<Result<_>>()?;

    // kernel of the ray matrix gives the degrees of freedom in d
    let rows: Vec<RatVec> = (0..p.dim())
        .map(|coord| {
            rays.iter()
                .map(|&r| rat_int(p.fan().ray(r).coords()[coord]))
                .collect()
        })
        .collect();
    let kernel = kernel_basis(&rows);

    let mut candidates: Vec<RatVec> = Vec::new();
    if kernel.is_empty() {
        candidates.push(d0.clone());
    } else {
        // vertices of {d0 + K t : 0 ≤ d ≤ d_max} in the t-parameters
        let f = kernel.len();
        let vertices = fiber_polytope_vertices(d0, &kernel, &d_max_rat, f, k);
        if vertices.is_empty() {
            candidates.push(d0.clone());
        } else {
            let count = rat_int(vertices.len() as i64);
            let centroid: RatVec = (0..k)
                .map(|i| {
                    let mut s = Rat::zero();
                    for vtx in &vertices {
                        s += &vtx[i];
                    }
                    s / &count
                })
                .collect();
            candidates.push(centroid.clone());
            for vtx in &vertices {
                let mid: RatVec = vtx
                    .iter()
                    .zip(&centroid)
                    .map(|(a, b)| (a + b) / rat_int(2))
                    .collect();
                candidates.push(mid);
                candidates.push(vtx.clone());
            }
        }
    }

    for d in candidates {
        let ok = d
            .iter()
            .zip(&d_max_rat)
            .all(|(di, dm)| di.is_positive() && di <= dm);
        if !ok {
            continue;
        }
        let fam = family(p, eps, cone, &SlopeSpec::Exact(d.clone()))?;
        if !fam.is_empty() {
            debug_assert_eq!(fam.lattice_image.as_ref(), Some(v));
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Vertices of {d = d0 + K t : 0 ≤ d_i ≤ d_max_i} by exhausting f-subsets of
/// the active bound constraints.
fn fiber_polytope_vertices(
    d0: &RatVec,
    kernel: &[RatVec],
    d_max: &[Rat],
    f: usize,
    k: usize,
) -> Vec<RatVec> {
    // constraint rows in t-space: for each coordinate i, K_i · t ≥ −d0_i and
    // K_i · t ≤ d_max_i − d0_i
    let eval_d = |t: &RatVec| -> RatVec {
        (0..k)
            .map(|i| {
                let mut x = d0[i].clone();
                for (tj, kj) in t.iter().zip(kernel) {
                    x += tj * &kj[i];
                }
                x
            })
            .collect()
    };
    let mut vertices: Vec<RatVec> = Vec::new();
    let constraints: Vec<(RatVec, Rat)> = (0..k)
        .flat_map(|i| {
            let row: RatVec = kernel.iter().map(|kj| kj[i].clone()).collect();
            let neg_row: RatVec = row.iter().map(|x| -x.clone()).collect();
            [
                (neg_row, d0[i].clone()),                  // −K_i t ≤ d0_i  (d_i ≥ 0)
                (row, &d_max[i] - &d0[i]),                 // K_i t ≤ d_max_i − d0_i
            ]
        })
        .collect();
    let nc = constraints.len();
    let mut subset: Vec<usize> = (0..f).collect();
    loop {
        let a: Vec<RatVec> = subset.iter().map(|&i| constraints[i].0.clone()).collect();
        let b: RatVec = subset.iter().map(|&i| constraints[i].1.clone()).collect();
        if crate::linalg::rank(&a) == f {
            if let Some(t) = solve_any(&a, &b) {
                let feasible = constraints
                    .iter()
                    .all(|(row, rhs)| crate::rational::rat_dot(row, &t) <= *rhs);
                if feasible {
                    let d = eval_d(&t);
                    if !vertices.contains(&d) {
                        vertices.push(d);
                    }
                }
            }
        }
        // next f-subset
        let mut pos = f;
        loop {
            if pos == 0 {
                subset.clear();
                break;
            }
            pos -= 1;
            if subset[pos] < nc - (f - pos) {
                subset[pos] += 1;
                for j in pos + 1..f {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                subset.clear();
                break;
            }
        }
        if subset.is_empty() {
            break;
        }
    }
    vertices
}

/// Result of flowing a point: normalized angles plus the unwrapped ones
/// (needed for period measurement).
#[derive(Clone, Debug)]
pub struct FlowResult {
    pub point: TorusPoint,
    pub alpha_unwrapped: Vec<f64>,
}

/// Closed-form flow for time t (in units where unit slope makes one full
/// turn per unit time): s is constant, α(t) = α(0) + 2π t ν with ν the
/// stratum slope.
pub fn flow(p: &SectionPolytope, eps: &BumpParams, pt: &TorusPoint, t: f64) -> Result<FlowResult> {
    let field = field_analytic(p, eps, pt)?;
    let alpha_unwrapped: Vec<f64> = pt
        .alpha()
        .iter()
        .zip(&field.alpha_dot)
        .map(|(a, v)| a + TAU * t * v)
        .collect();
    Ok(FlowResult {
        point: TorusPoint::new(pt.s().to_vec(), alpha_unwrapped.clone()),
        alpha_unwrapped,
    })
}

#[derive(Clone, Debug)]
pub struct PeriodMeasurement {
    pub lattice_image: LatticeVector,
    pub period: Rat,
    /// distance of α(T) − α(0) from 2πℤⁿ after flowing the gcd-formula period
    pub residual: f64,
}

/// Recover the slope at a point, require it to be integral within 1e−8, and
/// confirm the gcd-formula period by a measured first return.
pub fn measure_period(
    p: &SectionPolytope,
    eps: &BumpParams,
    pt: &TorusPoint,
) -> Result<PeriodMeasurement> {
    let field = field_analytic(p, eps, pt)?;
    let nu = &field.alpha_dot;
    let rounded: Vec<i64> = nu.iter().map(|x| x.round() as i64).collect();
    let worst = nu
        .iter()
        .zip(&rounded)
        .fold(0.0f64, |acc, (x, &r)| acc.max((x - r as f64).abs()));
    if worst >= 1e-8 {
        return Err(Error::NotOnFamily {
            detail: format!("slope {nu:?} is {worst:.3e} away from the lattice"),
        });
    }
    let c = LatticeVector::new(rounded.iter().map(|&r| -r).collect());
    if c.is_zero() {
        return Err(Error::NotOnFamily {
            detail: "constant orbit (zero slope)".into(),
        });
    }
    let period = lattice_period(&c)?;
    let t = rat_to_f64(&period);
    let moved = flow(p, eps, pt, t)?;
    let residual = moved
        .alpha_unwrapped
        .iter()
        .zip(pt.alpha())
        .fold(0.0f64, |acc, (after, before)| {
            let turns = (after - before) / TAU;
            acc.max((turns - turns.round()).abs() * TAU)
        });
    Ok(PeriodMeasurement {
        lattice_image: c,
        period,
        residual,
    })
}

/// A torus point over a family component's witness, at zero angles.
pub fn point_on_component(
    p: &SectionPolytope,
    fam: &OrbitFamily,
    component: usize,
) -> Result<TorusPoint> {
    let comp = fam
        .components
        .get(component)
        .ok_or_else(|| Error::InvalidInput("component index out of range".into()))?;
    let s = invert_moment_map(p, &comp.witness)?;
    let n = s.len();
    Ok(TorusPoint::new(s, vec![0.0; n]))
}
