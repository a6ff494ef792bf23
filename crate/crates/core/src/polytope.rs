//! Strictly concave PL functions on complete fans and their section polytopes.
//!
//! A PL function is determined by exact rational values on the primitive ray
//! generators; per maximal cone it restricts to a unique linear function m_σ.
//! The section polytope of the scaled function has the r·m_σ as vertices and
//! is full-dimensional with integral vertices.

use num_bigint::BigInt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::{Fan, LatticeVector};
use crate::linalg::{rank, solve_square};
use crate::rational::{denominator_lcm, is_integral, rat_int, rat_to_f64, Rat, RatVec};

/// Strictly concave rational PL function on a complete fan.
#[derive(Clone, Debug)]
pub struct PlData {
    fan: Fan,
    ray_values: Vec<Rat>,
    /// linear data m_σ, aligned with `fan.maximal_cone_indices()`
    cone_linear: Vec<RatVec>,
    scale: BigInt,
}

impl PlData {
    /// Solve for the per-cone linear data from ray values, verify strict
    /// concavity, and determine the scale making all vertices integral.
    ///
    /// When `scale` is absent the minimal one (the lcm of all denominators
    /// of the m_σ) is computed; when given it is validated.
    pub fn from_ray_values(fan: Fan, values: &[Rat], scale: Option<u64>) -> Result<Self> {
        if !fan.is_complete() {
            return Err(Error::NotComplete {
                witness: fan
                    .completeness_witness()
                    .map(|w| w.iter().map(|r| r.to_string()).collect())
                    .unwrap_or_default(),
            });
        }
        if values.len() != fan.n_rays() {
            return Err(Error::InvalidInput(format!(
                "{} ray values for {} rays",
                values.len(),
                fan.n_rays()
            )));
        }
        let n = fan.dim();
        let mut cone_linear = Vec::with_capacity(fan.maximal_cone_indices().len());
        for &ci in fan.maximal_cone_indices() {
            let cone = fan.cone(ci);
            let ray_list: Vec<usize> = cone.ray_indices().iter().copied().collect();
            // pick n linearly independent rays to pin m_σ down
            let mut chosen: Vec<usize> = Vec::with_capacity(n);
            for &r in &ray_list {
                let mut trial: Vec<RatVec> = chosen
                    .iter()
                    .map(|&c| fan.ray(c).to_rat())
                    .collect();
                trial.push(fan.ray(r).to_rat());
                if rank(&trial) == trial.len() {
                    chosen.push(r);
                    if chosen.len() == n {
                        break;
                    }
                }
            }
            if chosen.len() != n {
                return Err(Error::InconsistentConeData {
                    rays: ray_list.clone(),
                });
            }
            let a: Vec<RatVec> = chosen.iter().map(|&r| fan.ray(r).to_rat()).collect();
            let b: RatVec = chosen.iter().map(|&r| values[r].clone()).collect();
            let m_sigma = solve_square(&a, &b).map_err(|_| Error::InconsistentConeData {
                rays: ray_list.clone(),
            })?;
            // remaining rays of the cone must satisfy the same linear function
            for &r in &ray_list {
                if fan.ray(r).dot_rat(&m_sigma) != values[r] {
                    return Err(Error::InconsistentConeData { rays: ray_list });
                }
            }
            cone_linear.push(m_sigma);
        }

        // strict concavity: ⟨m_σ, u_ρ⟩ > φ(u_ρ) exactly for every ρ ∉ σ(1)
        for (pos, &ci) in fan.maximal_cone_indices().iter().enumerate() {
            let cone = fan.cone(ci);
            for r in 0..fan.n_rays() {
                if cone.ray_indices().contains(&r) {
                    continue;
                }
                if fan.ray(r).dot_rat(&cone_linear[pos]) <= values[r] {
                    return Err(Error::NotStrictlyConcave {
                        cone_rays: cone.ray_indices().iter().copied().collect(),
                        ray: r,
                    });
                }
            }
        }

        let minimal = denominator_lcm(cone_linear.iter().flatten());
        let scale = match scale {
            None => minimal,
            Some(r) => {
                let r = BigInt::from(r);
                if r.is_zero() || !(&r % &minimal).is_zero() {
                    return Err(Error::NonIntegralScale {
                        scale: r.to_string(),
                    });
                }
                r
            }
        };
        Ok(PlData {
            fan,
            ray_values: values.to_vec(),
            cone_linear,
            scale,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ray_value(&self, ray: usize) -> &Rat {
        &self.ray_values[ray]
    }

    pub fn ray_values(&self) -> &[Rat] {
        &self.ray_values
    }

    /// Linear data m_σ by position in the maximal cone list.
    pub fn cone_linear(&self) -> &[RatVec] {
        &self.cone_linear
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn scale_u64(&self) -> u64 {
        self.scale.to_u64().expect("scale fits in u64 at desk scale")
    }

    /// The scaled offset r·φ(u_ρ), an integer for every ray.
    pub fn scaled_offset(&self, ray: usize) -> Rat {
        &self.ray_values[ray] * Rat::from_integer(self.scale.clone())
    }

    pub fn section_polytope(self) -> Result<SectionPolytope> {
        SectionPolytope::from_pl(self)
    }
}

/// The polytope {m : ⟨m, u_ρ⟩ ≥ r·φ(u_ρ) for all rays ρ}, with exact
/// vertices, facets and enumerated lattice points.
#[derive(Clone, Debug)]
pub struct SectionPolytope {
    pl: PlData,
    /// scaled facet offsets r·φ(u_ρ), aligned with the fan rays
    offsets: Vec<Rat>,
    /// vertices r·m_σ, aligned with the maximal cone list
    vertices: Vec<RatVec>,
    lattice_points: Vec<LatticeVector>,
    lattice_f64: Vec<Vec<f64>>,
    translation: Option<LatticeVector>,
}

impl SectionPolytope {
    fn from_pl(pl: PlData) -> Result<Self> {
        let fan = pl.fan();
        let n = fan.dim();
        let scale = Rat::from_integer(pl.scale().clone());
        let offsets: Vec<Rat> = (0..fan.n_rays()).map(|r| pl.scaled_offset(r)).collect();
        let vertices: Vec<RatVec> = pl
            .cone_linear()
            .iter()
            .map(|m| m.iter().map(|x| x * &scale).collect())
            .collect();
        for v in &vertices {
            debug_assert!(v.iter().all(is_integral), "scaled vertices are integral");
        }

        // vertices must affinely span the ambient space
        if vertices.len() < 2 {
            return Err(Error::EmptyInterior);
        }
        let diffs: Vec<RatVec> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
            .collect();
        if rank(&diffs) != n {
            return Err(Error::EmptyInterior);
        }

        // integer bounding box of the vertices
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &vertices {
            for k in 0..n {
                let f = v[k].floor().to_integer().to_i64().ok_or_else(|| {
                    Error::InvalidInput("vertex coordinate out of i64 range".into())
                })?;
                let c = v[k].ceil().to_integer().to_i64().unwrap();
                lo[k] = lo[k].min(f);
                hi[k] = hi[k].max(c);
            }
        }

        // exact half-space test over the box, in integer arithmetic
        let int_offsets: Vec<i64> = offsets
            .iter()
            .map(|o| o.to_integer().to_i64().expect("offset fits i64"))
            .collect();
        let mut lattice_points = Vec::new();
        let mut point = lo.clone();
        'outer: loop {
            let inside = (0..fan.n_rays())
                .all(|r| fan.ray(r).dot(&point) >= int_offsets[r]);
            if inside {
                lattice_points.push(LatticeVector::new(point.clone()));
            }
            for k in 0..n {
                point[k] += 1;
                if point[k] <= hi[k] {
                    continue 'outer;
                }
                point[k] = lo[k];
            }
            break;
        }
        lattice_points.sort();
        let lattice_f64: Vec<Vec<f64>> = lattice_points.iter().map(|m| m.to_f64()).collect();

        Ok(SectionPolytope {
            pl,
            offsets,
            vertices,
            lattice_points,
            lattice_f64,
            translation: None,
        })
    }

    pub fn pl(&self) -> &PlData {
        &self.pl
    }

    pub fn fan(&self) -> &Fan {
        self.pl.fan()
    }

    pub fn dim(&self) -> usize {
        self.pl.fan().dim()
    }

    pub fn n_rays(&self) -> usize {
        self.pl.fan().n_rays()
    }

    /// Facet data for a ray: inward normal u_ρ and scaled offset r·φ(u_ρ).
    pub fn facet(&self, ray: usize) -> (&LatticeVector, &Rat) {
        (self.pl.fan().ray(ray), &self.offsets[ray])
    }

    pub fn offsets(&self) -> &[Rat] {
        &self.offsets
    }

    /// Vertices r·m_σ, aligned with the maximal cones of the normal fan.
    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn lattice_points(&self) -> &[LatticeVector] {
        &self.lattice_points
    }

    pub fn lattice_f64(&self) -> &[Vec<f64>] {
        &self.lattice_f64
    }

    pub fn translation(&self) -> Option<&LatticeVector> {
        self.translation.as_ref()
    }

    /// Radial coordinate ⟨m, u_ρ⟩ − r·φ(u_ρ), exact.
    pub fn radial(&self, ray: usize, m: &[Rat]) -> Rat {
        self.pl.fan().ray(ray).dot_rat(m) - &self.offsets[ray]
    }

    /// Radial coordinate in floats, for the analytic layers.
    pub fn radial_f64(&self, ray: usize, m: &[f64]) -> f64 {
        self.pl.fan().ray(ray).dot_f64(m) - rat_to_f64(&self.offsets[ray])
    }

    /// Exact strict interior test.
    pub fn contains_strictly(&self, m: &[Rat]) -> bool {
        (0..self.n_rays()).all(|r| self.radial(r, m).is_positive())
    }

    pub fn contains(&self, m: &[Rat]) -> bool {
        (0..self.n_rays()).all(|r| !self.radial(r, m).is_negative())
    }

    /// Exact average of the lattice points (Euclidean mean, one value for
    /// the whole polytope).
    pub fn average_lattice_point(&self) -> RatVec {
        let n = self.dim();
        let count = rat_int(self.lattice_points.len() as i64);
        let mut acc = vec![Rat::zero(); n];
        for m in &self.lattice_points {
            for (k, a) in acc.iter_mut().enumerate() {
                *a += rat_int(m.coords()[k]);
            }
        }
        acc.into_iter().map(|a| a / &count).collect()
    }

    /// Largest pairwise vertex distance, as a float.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let d2: f64 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| {
                        let d = rat_to_f64(x) - rat_to_f64(y);
                        d * d
                    })
                    .sum();
                best = best.max(d2.sqrt());
            }
        }
        best
    }

    /// Translate so that a chosen lattice point moves to the origin. With no
    /// point given, the zero vector is kept if it is already a lattice point;
    /// otherwise the lattice point nearest to the vertex centroid is used
    /// (ties broken lexicographically). The translation is recorded so
    /// downstream results can be mapped back.
    pub fn normalized_to_origin(&self, point: Option<&LatticeVector>) -> Result<SectionPolytope> {
        let n = self.dim();
        let zero = LatticeVector::new(vec![0; n]);
        let t = match point {
            Some(p) => {
                if !self.lattice_points.contains(p) {
                    return Err(Error::InvalidInput(
                        "translation target is not a lattice point of the polytope".into(),
                    ));
                }
                p.clone()
            }
            None => {
                if self.lattice_points.contains(&zero) {
                    zero.clone()
                } else {
                    let count = rat_int(self.vertices.len() as i64);
                    let centroid: RatVec = (0..n)
                        .map(|k| {
                            let mut s = Rat::zero();
                            for v in &self.vertices {
                                s += &v[k];
                            }
                            s / &count
                        })
                        .collect();
                    self.lattice_points
                        .iter()
                        .min_by_key(|m| {
                            let d2: Rat = m
                                .coords()
                                .iter()
                                .zip(&centroid)
                                .map(|(&c, x)| {
                                    let d = rat_int(c) - x;
                                    &d * &d
                                })
                                .sum();
                            (d2, (*m).clone())
                        })
                        .expect("polytope has lattice points")
                        .clone()
                }
            }
        };
        if t == zero {
            let mut out = self.clone();
            out.translation = Some(zero);
            return Ok(out);
        }

        // translate the PL data: φ'(u_ρ) = φ(u_ρ) − ⟨t, u_ρ⟩ / r
        let fan = self.pl.fan().clone();
        let r = Rat::from_integer(self.pl.scale().clone());
        let values: Vec<Rat> = (0..fan.n_rays())
            .map(|i| {
                let shift = Rat::from_integer(BigInt::from(fan.ray(i).dot(t.coords()))) / &r;
                self.pl.ray_value(i) - shift
            })
            .collect();
        let scale = self.pl.scale_u64();
        let pl = PlData::from_ray_values(fan, &values, Some(scale))?;
        let mut out = SectionPolytope::from_pl(pl)?;
        let total = match &self.translation {
            None => t,
            Some(prev) => LatticeVector::new(
                prev.coords()
                    .iter()
                    .zip(t.coords())
                    .map(|(a, b)| a + b)
                    .collect(),
            ),
        };
        out.translation = Some(total);
        Ok(out)
    }
}

/// Reconstruct (fan, PL data) from an H-representation: inward primitive
/// normals and rational offsets. Vertices are enumerated by exhaustive
/// n-subsets of facets, and the active facet sets become the maximal cones
/// of the normal fan. Intended for desk-scale inputs (≤ ~20 facets).
pub fn pl_from_hrep(normals: Vec<Vec<i64>>, offsets: Vec<Rat>) -> Result<PlData> {
    if normals.is_empty() || normals.len() != offsets.len() {
        return Err(Error::InvalidInput(
            "H-representation needs matching nonempty normals and offsets".into(),
        ));
    }
    let n = normals[0].len();
    let mut prim: Vec<LatticeVector> = Vec::with_capacity(normals.len());
    let mut prim_offsets: Vec<Rat> = Vec::with_capacity(normals.len());
    for (i, coords) in normals.into_iter().enumerate() {
        if coords.len() != n {
            return Err(Error::InvalidInput(format!("normal {i} has wrong dimension")));
        }
        let v = LatticeVector::new(coords);
        if v.is_zero() {
            return Err(Error::ZeroRay { index: i });
        }
        let (p, factor) = v.primitivized();
        prim_offsets.push(&offsets[i] / rat_int(factor));
        prim.push(p);
    }

    // enumerate candidate vertices over n-subsets of facets
    let nf = prim.len();
    let mut vertices: Vec<RatVec> = Vec::new();
    let mut active_sets: Vec<Vec<usize>> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let a: Vec<RatVec> = subset.iter().map(|&i| prim[i].to_rat()).collect();
        if rank(&a) == n {
            let b: RatVec = subset.iter().map(|&i| prim_offsets[i].clone()).collect();
            if let Ok(v) = solve_square(&a, &b) {
                let feasible = (0..nf).all(|i| prim[i].dot_rat(&v) >= prim_offsets[i]);
                if feasible && !vertices.contains(&v) {
                    let active: Vec<usize> = (0..nf)
                        .filter(|&i| prim[i].dot_rat(&v) == prim_offsets[i])
                        .collect();
                    vertices.push(v);
                    active_sets.push(active);
                }
            }
        }
        // next n-subset of 0..nf in lexicographic order
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if subset[k] < nf - (n - k) {
                subset[k] += 1;
                for j in k + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
            if k == 0 {
                subset.clear();
                break;
            }
        }
        if subset.is_empty() {
            break;
        }
    }
    if vertices.is_empty() {
        return Err(Error::EmptyInterior);
    }
    let mut unused: Vec<usize> = (0..nf)
        .filter(|i| !active_sets.iter().any(|s| s.contains(i)))
        .collect();
    if !unused.is_empty() {
        unused.sort_unstable();
        return Err(Error::InvalidInput(format!(
            "redundant halfspaces (never active at a vertex): {unused:?}"
        )));
    }

    let ray_coords: Vec<Vec<i64>> = prim.iter().map(|p| p.coords().to_vec()).collect();
    let build = Fan::build(n, ray_coords, &active_sets)?;
    PlData::from_ray_values(build.fan, &prim_offsets, None)
}
