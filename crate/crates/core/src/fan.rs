//! Complete fans of strongly convex rational polyhedral cones.
//!
//! Cones are given by generating rays with primitive integer coordinates.
//! Validation (strong convexity, pairwise intersection in a common face,
//! completeness) is decided exactly with small rational LPs, never floats.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int_rat_dot, rat_int, rat_to_f64, Rat, RatVec};
use crate::simplex::{Cmp, LpBuilder};

/// Integer lattice vector. Primitive means the gcd of the coordinates is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn gcd(&self) -> i64 {
        self.coords.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// Divide by the gcd of the coordinates; returns the factor removed.
    pub fn primitivized(&self) -> (LatticeVector, i64) {
        let g = self.gcd();
        if g <= 1 {
            return (self.clone(), 1);
        }
        (
            LatticeVector::new(self.coords.iter().map(|&c| c / g).collect()),
            g,
        )
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.coords.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &[Rat]) -> Rat {
        int_rat_dot(&self.coords, other)
    }

    pub fn to_rat(&self) -> RatVec {
        self.coords.iter().map(|&c| rat_int(c)).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|&c| c as f64).collect()
    }

    pub fn dot_f64(&self, other: &[f64]) -> f64 {
        self.coords
            .iter()
            .zip(other)
            .map(|(&a, &b)| a as f64 * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        (self.dot(&self.coords) as f64).sqrt()
    }
}

/// A cone of the fan, recorded by the indices of its generating rays.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    rays: BTreeSet<usize>,
    dim: usize,
}

impl Cone {
    pub fn ray_indices(&self) -> &BTreeSet<usize> {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildWarning {
    /// An input ray was not primitive and was divided by its gcd.
    NonPrimitiveRay { index: usize, factor: i64 },
}

#[derive(Debug)]
pub struct FanBuild {
    pub fan: Fan,
    pub warnings: Vec<BuildWarning>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Completeness {
    Complete,
    Incomplete { witness: Option<RatVec> },
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        matches!(self, Completeness::Complete)
    }
}

/// A fan: rays plus a cone collection closed under faces and intersections.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Cone>,
    maximal: Vec<usize>,
    /// faces_of_maximal[k] lists cone indices that are faces of maximal cone k
    faces_of_maximal: Vec<Vec<usize>>,
    complete: bool,
    witness: Option<RatVec>,
}

impl Fan {
    /// Build and validate a fan from rays and maximal cone index sets.
    pub fn build(dim: usize, rays: Vec<Vec<i64>>, maximal_cones: &[Vec<usize>]) -> Result<FanBuild> {
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be ≥ 1".into()));
        }
        let mut warnings = Vec::new();
        let mut prim_rays: Vec<LatticeVector> = Vec::with_capacity(rays.len());
        for (index, coords) in rays.into_iter().enumerate() {
            if coords.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "ray {index} has dimension {} (expected {dim})",
                    coords.len()
                )));
            }
            let v = LatticeVector::new(coords);
            if v.is_zero() {
                return Err(Error::ZeroRay { index });
            }
            let (p, factor) = v.primitivized();
            if factor > 1 {
                warnings.push(BuildWarning::NonPrimitiveRay { index, factor });
            }
            if prim_rays.contains(&p) {
                return Err(Error::InvalidInput(format!(
                    "duplicate ray {:?} at index {index}",
                    p.coords()
                )));
            }
            prim_rays.push(p);
        }

        let nrays = prim_rays.len();
        let mut max_sets: Vec<BTreeSet<usize>> = Vec::with_capacity(maximal_cones.len());
        for set in maximal_cones {
            let mut s = BTreeSet::new();
            for &index in set {
                if index >= nrays {
                    return Err(Error::RayIndexOutOfRange {
                        index,
                        count: nrays,
                    });
                }
                s.insert(index);
            }
            if s.is_empty() {
                return Err(Error::InvalidInput("empty maximal cone".into()));
            }
            if max_sets.contains(&s) {
                return Err(Error::InvalidInput("duplicate maximal cone".into()));
            }
            max_sets.push(s);
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for s in &max_sets {
            used.extend(s.iter().copied());
        }
        if used.len() != nrays {
            return Err(Error::InvalidInput(
                "every ray must appear in some maximal cone".into(),
            ));
        }
        for (i, a) in max_sets.iter().enumerate() {
            for (j, b) in max_sets.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return Err(Error::InvalidInput(format!(
                        "maximal cone {i} is contained in maximal cone {j}"
                    )));
                }
            }
        }

        // strong convexity and extremality of listed rays, per maximal cone
        for s in &max_sets {
            if s.len() > 16 {
                return Err(Error::InvalidInput(format!(
                    "cone with {} rays exceeds the exhaustive face-enumeration budget",
                    s.len()
                )));
            }
            let gens: Vec<&LatticeVector> = s.iter().map(|&i| &prim_rays[i]).collect();
            if !strongly_convex(dim, &gens) {
                return Err(Error::NotStronglyConvex {
                    rays: s.iter().copied().collect(),
                });
            }
            for &r in s {
                let singleton: BTreeSet<usize> = [r].into();
                if support_functional(dim, &prim_rays, s, &singleton).is_none() {
                    return Err(Error::InvalidInput(format!(
                        "ray {r} is not extreme in cone {:?}",
                        s.iter().collect::<Vec<_>>()
                    )));
                }
            }
        }

        // pairwise intersections must be common faces
        for i in 0..max_sets.len() {
            for j in i + 1..max_sets.len() {
                validate_pair(dim, &prim_rays, &max_sets[i], &max_sets[j])?;
            }
        }

        // face closure
        let mut cones: Vec<Cone> = Vec::new();
        let mut faces_of_maximal: Vec<Vec<usize>> = vec![Vec::new(); max_sets.len()];
        let mut maximal: Vec<usize> = Vec::with_capacity(max_sets.len());
        for (k, s) in max_sets.iter().enumerate() {
            for subset in subsets(s) {
                let is_face = if subset.len() == s.len() {
                    true
                } else {
                    support_functional(dim, &prim_rays, s, &subset).is_some()
                };
                if !is_face {
                    continue;
                }
                let idx = match cones.iter().position(|c| c.rays == subset) {
                    Some(idx) => idx,
                    None => {
                        let gens: Vec<RatVec> =
                            subset.iter().map(|&i| prim_rays[i].to_rat()).collect();
                        let d = if gens.is_empty() {
                            0
                        } else {
                            crate::linalg::rank(&transpose(dim, &gens))
                        };
                        cones.push(Cone {
                            rays: subset.clone(),
                            dim: d,
                        });
                        cones.len() - 1
                    }
                };
                faces_of_maximal[k].push(idx);
                if subset.len() == s.len() {
                    maximal.push(idx);
                }
            }
        }

        // canonical order: by (dim, ray set); remap indices
        let mut order: Vec<usize> = (0..cones.len()).collect();
        order.sort_by(|&a, &b| {
            (cones[a].dim, &cones[a].rays).cmp(&(cones[b].dim, &cones[b].rays))
        });
        let mut remap = vec![0usize; cones.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let mut sorted: Vec<Option<Cone>> = vec![None; cones.len()];
        for (old, cone) in cones.into_iter().enumerate() {
            sorted[remap[old]] = Some(cone);
        }
        let cones: Vec<Cone> = sorted.into_iter().map(|c| c.unwrap()).collect();
        let maximal: Vec<usize> = maximal.into_iter().map(|i| remap[i]).collect();
        let faces_of_maximal: Vec<Vec<usize>> = faces_of_maximal
            .into_iter()
            .map(|v| {
                let mut f: Vec<usize> = v.into_iter().map(|i| remap[i]).collect();
                f.sort_unstable();
                f
            })
            .collect();

        let mut fan = Fan {
            dim,
            rays: prim_rays,
            cones,
            maximal,
            faces_of_maximal,
            complete: false,
            witness: None,
        };
        match fan.check_complete() {
            Completeness::Complete => fan.complete = true,
            Completeness::Incomplete { witness } => {
                fan.complete = false;
                fan.witness = witness;
            }
        }
        Ok(FanBuild { fan, warnings })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, index: usize) -> &LatticeVector {
        &self.rays[index]
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, index: usize) -> &Cone {
        &self.cones[index]
    }

    pub fn maximal_cone_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn completeness_witness(&self) -> Option<&RatVec> {
        self.witness.as_ref()
    }

    /// Index of the cone with exactly this ray set, if present.
    pub fn cone_by_rays(&self, rays: &BTreeSet<usize>) -> Option<usize> {
        self.cones.iter().position(|c| &c.rays == rays)
    }

    pub fn trivial_cone(&self) -> usize {
        self.cone_by_rays(&BTreeSet::new())
            .expect("face closure always contains the trivial cone")
    }

    /// Exact membership x ∈ σ (a nonnegative combination of the generators).
    pub fn cone_contains(&self, cone: usize, x: &[Rat]) -> bool {
        let gens: Vec<&LatticeVector> = self.cones[cone]
            .rays
            .iter()
            .map(|&i| &self.rays[i])
            .collect();
        let mut lp = LpBuilder::new();
        let lambdas = lp.add_vars(gens.len(), true);
        for k in 0..self.dim {
            let terms: Vec<(usize, Rat)> = lambdas
                .iter()
                .zip(&gens)
                .map(|(&v, g)| (v, rat_int(g.coords()[k])))
                .collect();
            lp.constraint(&terms, Cmp::Eq, x[k].clone());
        }
        lp.feasible().is_some()
    }

    /// Exact relative-interior test: x = Σ d_ρ u_ρ with every d_ρ > 0.
    /// Returns the coefficients (in ray-set order) when x ∈ relint σ.
    pub fn relative_interior_coefficients(&self, cone: usize, x: &[Rat]) -> Option<RatVec> {
        let c = &self.cones[cone];
        if c.is_trivial() {
            return if x.iter().all(|v| v.is_zero()) {
                Some(vec![])
            } else {
                None
            };
        }
        let gens: Vec<&LatticeVector> = c.rays.iter().map(|&i| &self.rays[i]).collect();
        let mut lp = LpBuilder::new();
        let d = lp.add_vars(gens.len(), true);
        let t = lp.add_var(true);
        lp.set_objective(t, rat_int(1));
        for k in 0..self.dim {
            let terms: Vec<(usize, Rat)> = d
                .iter()
                .zip(&gens)
                .map(|(&v, g)| (v, rat_int(g.coords()[k])))
                .collect();
            lp.constraint(&terms, Cmp::Eq, x[k].clone());
        }
        for &dv in &d {
            lp.constraint(&[(dv, rat_int(1)), (t, rat_int(-1))], Cmp::Ge, rat_int(0));
        }
        // cap keeps the LP bounded without affecting the sign of the optimum
        lp.constraint(&[(t, rat_int(1))], Cmp::Le, rat_int(1));
        let (sol, value) = lp.solve().optimal()?;
        if value.is_positive() {
            Some(sol[..gens.len()].to_vec())
        } else {
            None
        }
    }

    /// Completeness of the fan: every wall is shared by exactly two maximal
    /// cones and the wall-adjacency graph is connected. On failure a rational
    /// direction outside the support is produced when one can be constructed.
    pub fn check_complete(&self) -> Completeness {
        let incomplete_with_search = |fan: &Fan| Completeness::Incomplete {
            witness: fan.search_uncovered_direction(),
        };
        if self.maximal.is_empty() {
            let mut w = vec![Rat::zero(); self.dim];
            w[0] = rat_int(1);
            return Completeness::Incomplete { witness: Some(w) };
        }
        for &m in &self.maximal {
            if self.cones[m].dim != self.dim {
                return incomplete_with_search(self);
            }
        }
        // walls: cones of dimension n-1, counted over maximal face lists
        let mut wall_owners: Vec<(usize, Vec<usize>)> = Vec::new();
        for (k, faces) in self.faces_of_maximal.iter().enumerate() {
            for &f in faces {
                if self.cones[f].dim + 1 == self.dim {
                    match wall_owners.iter_mut().find(|(w, _)| *w == f) {
                        Some((_, owners)) => owners.push(k),
                        None => wall_owners.push((f, vec![k])),
                    }
                }
            }
        }
        for (wall, owners) in &wall_owners {
            if owners.len() != 2 {
                let witness = self.witness_beyond_wall(*wall, owners[0]);
                return Completeness::Incomplete {
                    witness: witness.or_else(|| self.search_uncovered_direction()),
                };
            }
        }
        // connectivity of the wall adjacency graph
        let nmax = self.maximal.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nmax];
        for (_, owners) in &wall_owners {
            adj[owners[0]].push(owners[1]);
            adj[owners[1]].push(owners[0]);
        }
        let mut seen = vec![false; nmax];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(k) = queue.pop_front() {
            for &next in &adj[k] {
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Completeness::Complete
        } else {
            incomplete_with_search(self)
        }
    }

    /// Point just beyond `wall` seen from maximal cone `owner` (by position in
    /// the maximal list), verified exactly to lie in no maximal cone.
    fn witness_beyond_wall(&self, wall: usize, owner: usize) -> Option<RatVec> {
        let owner_cone = &self.cones[self.maximal[owner]];
        let mut center = vec![Rat::zero(); self.dim];
        for &r in &owner_cone.rays {
            for (k, c) in center.iter_mut().enumerate() {
                *c += rat_int(self.rays[r].coords()[k]);
            }
        }
        let mut g = vec![Rat::zero(); self.dim];
        for &r in &self.cones[wall].rays {
            for (k, c) in g.iter_mut().enumerate() {
                *c += rat_int(self.rays[r].coords()[k]);
            }
        }
        let mut t = rat_int(1);
        for _ in 0..50 {
            let x: RatVec = g
                .iter()
                .zip(&center)
                .map(|(gi, ci)| gi + &t * (gi - ci))
                .collect();
            if x.iter().any(|v| !v.is_zero()) && !self.covered(&x) {
                return Some(x);
            }
            t /= rat_int(2);
        }
        None
    }

    fn covered(&self, x: &[Rat]) -> bool {
        self.maximal.iter().any(|&m| self.cone_contains(m, x))
    }

    /// Bounded scan over small rational directions for one outside the support.
    fn search_uncovered_direction(&self) -> Option<RatVec> {
        for radius in 1..=2i64 {
            let mut point = vec![-radius; self.dim];
            loop {
                if point.iter().any(|&c| c != 0) {
                    let x: RatVec = point.iter().map(|&c| rat_int(c)).collect();
                    if !self.covered(&x) {
                        return Some(x);
                    }
                }
                let mut carry = true;
                for c in point.iter_mut() {
                    if carry {
                        *c += 1;
                        if *c > radius {
                            *c = -radius;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
            }
        }
        None
    }
}

/// All subsets of a ray index set, the full set included.
fn subsets(s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let items: Vec<usize> = s.iter().copied().collect();
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0..(1usize << items.len()) {
        let mut sub = BTreeSet::new();
        for (bit, &item) in items.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                sub.insert(item);
            }
        }
        out.push(sub);
    }
    out
}

fn transpose(dim: usize, cols: &[RatVec]) -> Vec<RatVec> {
    (0..dim)
        .map(|k| cols.iter().map(|c| c[k].clone()).collect())
        .collect()
}

/// A cone is strongly convex iff 0 is not a convex combination of its
/// generators, i.e. the only nonnegative combination summing to zero is zero.
fn strongly_convex(dim: usize, gens: &[&LatticeVector]) -> bool {
    if gens.is_empty() {
        return true;
    }
    let mut lp = LpBuilder::new();
    let lambdas = lp.add_vars(gens.len(), true);
    for k in 0..dim {
        let terms: Vec<(usize, Rat)> = lambdas
            .iter()
            .zip(gens)
            .map(|(&v, g)| (v, rat_int(g.coords()[k])))
            .collect();
        lp.constraint(&terms, Cmp::Eq, rat_int(0));
    }
    let ones: Vec<(usize, Rat)> = lambdas.iter().map(|&v| (v, rat_int(1))).collect();
    lp.constraint(&ones, Cmp::Eq, rat_int(1));
    lp.feasible().is_none()
}

/// Supporting functional exhibiting `face` as a face of the cone on `rays`:
/// w with ⟨w,u⟩ = 0 on the face rays and ⟨w,u⟩ ≥ 1 on the remaining ones.
fn support_functional(
    dim: usize,
    all_rays: &[LatticeVector],
    cone_rays: &BTreeSet<usize>,
    face: &BTreeSet<usize>,
) -> Option<RatVec> {
    let mut lp = LpBuilder::new();
    let w = lp.add_vars(dim, false);
    for &r in cone_rays {
        let terms: Vec<(usize, Rat)> = w
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, rat_int(all_rays[r].coords()[k])))
            .collect();
        if face.contains(&r) {
            lp.constraint(&terms, Cmp::Eq, rat_int(0));
        } else {
            lp.constraint(&terms, Cmp::Ge, rat_int(1));
        }
    }
    lp.feasible().map(|sol| sol[..dim].to_vec())
}

/// Two maximal cones must intersect exactly in the cone spanned by their
/// common rays, and that cone must be a face of both.
fn validate_pair(
    dim: usize,
    rays: &[LatticeVector],
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
) -> Result<()> {
    let overlap_err = || Error::OverlappingCones {
        a: a.iter().copied().collect(),
        b: b.iter().copied().collect(),
    };
    let common: BTreeSet<usize> = a.intersection(b).copied().collect();
    let wa = support_functional(dim, rays, a, &common).ok_or_else(overlap_err)?;
    support_functional(dim, rays, b, &common).ok_or_else(overlap_err)?;

    // any x in both cones with ⟨w_a, x⟩ ≥ 1 would lie outside the common face
    let mut lp = LpBuilder::new();
    let la = lp.add_vars(a.len(), true);
    let lb = lp.add_vars(b.len(), true);
    for k in 0..dim {
        let mut terms: Vec<(usize, Rat)> = Vec::new();
        for (&v, &r) in la.iter().zip(a.iter()) {
            terms.push((v, rat_int(rays[r].coords()[k])));
        }
        for (&v, &r) in lb.iter().zip(b.iter()) {
            terms.push((v, rat_int(-rays[r].coords()[k])));
        }
        lp.constraint(&terms, Cmp::Eq, rat_int(0));
    }
    let mut wterms: Vec<(usize, Rat)> = Vec::new();
    for (&v, &r) in la.iter().zip(a.iter()) {
        wterms.push((v, rays[r].dot_rat(&wa)));
    }
    lp.constraint(&wterms, Cmp::Ge, rat_int(1));
    if lp.feasible().is_some() {
        return Err(overlap_err());
    }
    Ok(())
}

/// Float view of a rational direction, for diagnostics.
pub fn direction_to_f64(v: &[Rat]) -> Vec<f64> {
    v.iter().map(rat_to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    pub fn projective_plane_fan() -> Fan {
        Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
        .fan
    }

    pub fn square_fan() -> Fan {
        Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
        .fan
    }

    #[test]
    fn projective_plane_fan_is_complete() {
        let fan = projective_plane_fan();
        assert!(fan.is_complete());
        // 3 maximal + 3 rays + trivial cone
        assert_eq!(fan.cones().len(), 7);
        assert_eq!(fan.maximal_cone_indices().len(), 3);
    }

    #[test]
    fn square_fan_is_complete() {
        let fan = square_fan();
        assert!(fan.is_complete());
        assert_eq!(fan.cones().len(), 9);
    }

    #[test]
    fn line_in_cone_rejected() {
        let err = Fan::build(2, vec![vec![1, 0], vec![-1, 0]], &[vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotStronglyConvex { .. }));
    }

    #[test]
    fn non_primitive_ray_fixed_with_warning() {
        let FanBuild { fan, warnings } =
            Fan::build(1, vec![vec![2], vec![-1]], &[vec![0], vec![1]]).unwrap();
        assert_eq!(fan.ray(0).coords(), &[1]);
        assert_eq!(
            warnings,
            vec![BuildWarning::NonPrimitiveRay {
                index: 0,
                factor: 2
            }]
        );
        assert!(fan.is_complete());
    }

    #[test]
    fn missing_sector_detected_with_witness() {
        let FanBuild { fan, .. } = Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            &[vec![0, 1], vec![2, 0]],
        )
        .unwrap();
        assert!(!fan.is_complete());
        let w = fan.completeness_witness().expect("witness direction");
        assert!(!fan.covered(w));
    }

    #[test]
    fn half_line_fan_incomplete() {
        let FanBuild { fan, .. } = Fan::build(1, vec![vec![1]], &[vec![0]]).unwrap();
        assert!(!fan.is_complete());
        let w = fan.completeness_witness().unwrap();
        assert!(w[0] < Rat::zero());
    }

    #[test]
    fn overlapping_cones_rejected() {
        // cone((1,0),(-1,1)) strictly contains the ray (0,1) of the other cone
        let err = Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 1]],
            &[vec![0, 1], vec![0, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::OverlappingCones { .. }));
    }

    #[test]
    fn zero_ray_rejected() {
        let err = Fan::build(2, vec![vec![0, 0]], &[vec![0]]).unwrap_err();
        assert!(matches!(err, Error::ZeroRay { index: 0 }));
    }

    #[test]
    fn non_extreme_generator_rejected() {
        // (1,1) is interior to cone((1,0),(0,1))
        let err = Fan::build(
            2,
            vec![vec![1, 0], vec![1, 1], vec![0, 1]],
            &[vec![0, 1, 2], vec![2, 0]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn pyramid_fan_with_non_simplicial_top() {
        let FanBuild { fan, .. } = Fan::build(
            3,
            vec![
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![-1, 0, 1],
                vec![0, -1, 1],
                vec![0, 0, -1],
            ],
            &[
                vec![0, 1, 2, 3],
                vec![0, 1, 4],
                vec![1, 2, 4],
                vec![2, 3, 4],
                vec![3, 0, 4],
            ],
        )
        .unwrap();
        assert!(fan.is_complete());
        // 5 maximal + 8 walls + 5 rays + trivial
        assert_eq!(fan.cones().len(), 19);
        let top = fan
            .cone_by_rays(&[0, 1, 2, 3].into_iter().collect())
            .unwrap();
        assert_eq!(fan.cone(top).dim(), 3);
    }

    #[test]
    fn relative_interior_membership() {
        let fan = square_fan();
        let quadrant = fan.cone_by_rays(&[0, 1].into_iter().collect()).unwrap();
        let inside = vec![rat(2, 1), rat(3, 1)];
        let coeffs = fan
            .relative_interior_coefficients(quadrant, &inside)
            .unwrap();
        assert_eq!(coeffs, vec![rat_int(2), rat_int(3)]);
        // boundary point
        let boundary = vec![rat_int(1), rat_int(0)];
        assert!(fan
            .relative_interior_coefficients(quadrant, &boundary)
            .is_none());
        // outside the span of the ray cone
        let ray0 = fan.cone_by_rays(&[0].into_iter().collect()).unwrap();
        assert!(fan
            .relative_interior_coefficients(ray0, &[rat_int(1), rat_int(1)])
            .is_none());
        assert!(fan
            .relative_interior_coefficients(ray0, &[rat_int(3), rat_int(0)])
            .is_some());
    }

    #[test]
    fn trivial_cone_present() {
        let fan = square_fan();
        let t = fan.trivial_cone();
        assert_eq!(fan.cone(t).dim(), 0);
        assert!(fan.cone_contains(t, &[rat_int(0), rat_int(0)]));
        assert!(!fan.cone_contains(t, &[rat_int(1), rat_int(0)]));
    }
}
