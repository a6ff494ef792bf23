//! Slope semigroups: positive rational combinations of cone rays hitting
//! lattice points, and the periods of the induced linear torus flows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{Fan, LatticeVector};
use crate::linalg::kernel_basis;
use crate::rational::{Rat, RatVec};

/// The set {d : Σ_ρ d_ρ u_ρ = v, d_ρ > 0} for a cone σ and target v in its
/// relative interior, described as a particular solution plus a kernel basis.
#[derive(Clone, Debug)]
pub struct SlopeSolutionSet {
    cone: usize,
    rays: Vec<usize>,
    target: LatticeVector,
    particular: RatVec,
    kernel: Vec<RatVec>,
}

impl SlopeSolutionSet {
    pub fn cone(&self) -> usize {
        self.cone
    }

    /// The cone's ray indices, in the order used by the coefficient vectors.
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn target(&self) -> &LatticeVector {
        &self.target
    }

    /// A solution with every coefficient strictly positive.
    pub fn particular(&self) -> &RatVec {
        &self.particular
    }

    pub fn kernel(&self) -> &[RatVec] {
        &self.kernel
    }

    /// Simplicial cones admit exactly one solution.
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }

    /// The solution d0 + Σ t_i k_i, or None when a coefficient leaves the
    /// positive orthant.
    pub fn sample(&self, params: &[Rat]) -> Option<RatVec> {
        debug_assert_eq!(params.len(), self.kernel.len());
        let mut d = self.particular.clone();
        for (t, k) in params.iter().zip(&self.kernel) {
            for (di, ki) in d.iter_mut().zip(k) {
                *di += t * ki;
            }
        }
        if d.iter().all(|x| x.is_positive()) {
            Some(d)
        } else {
            None
        }
    }
}

/// Decompose a lattice point of the relative interior of a cone as a
/// positive combination of the cone's primitive ray generators.
pub fn slope_solutions(fan: &Fan, cone: usize, v: &LatticeVector) -> Result<SlopeSolutionSet> {
    let target = v.to_rat();
    let particular = fan
        .relative_interior_coefficients(cone, &target)
        .ok_or(Error::NotInteriorPoint)?;
    let rays: Vec<usize> = fan.cone(cone).ray_indices().iter().copied().collect();
    // kernel of the ray matrix (rows = coordinates, columns = rays)
    let rows: Vec<RatVec> = (0..fan.dim())
        .map(|k| {
            rays.iter()
                .map(|&r| crate::rational::rat_int(fan.ray(r).coords()[k]))
                .collect()
        })
        .collect();
    let kernel = kernel_basis(&rows);
    Ok(SlopeSolutionSet {
        cone,
        rays,
        target: v.clone(),
        particular,
        kernel,
    })
}

/// Period of the linear flow t ↦ t·v on the unit torus (ℝ/ℤ)ⁿ:
/// lcm of the denominators over the gcd of the numerators.
pub fn rational_slope_period(v: &[Rat]) -> Result<Rat> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroSlope);
    }
    let mut den_lcm = BigInt::from(1);
    let mut num_gcd = BigInt::zero();
    for x in v {
        if x.is_zero() {
            continue; // contributes denominator 1 and is excluded from the gcd
        }
        den_lcm = den_lcm.lcm(&x.denom().abs());
        num_gcd = num_gcd.gcd(&x.numer().abs());
    }
    Ok(Rat::new(den_lcm, num_gcd))
}

/// Period for an integral slope: 1 / |gcd of the coordinates|. Equals one
/// exactly when the lattice vector is primitive.
pub fn lattice_period(v: &LatticeVector) -> Result<Rat> {
    if v.is_zero() {
        return Err(Error::ZeroSlope);
    }
    Ok(Rat::new(BigInt::from(1), BigInt::from(v.gcd())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::rational::{rat, rat_dot, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square_fan() -> Fan {
        Fan::build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
        .fan
    }

    fn pyramid_fan() -> Fan {
        Fan::build(
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
        .unwrap()
        .fan
    }

    #[test]
    fn simplicial_cone_unique_solution() {
        let fan = square_fan();
        let quadrant = fan.cone_by_rays(&[0, 1].into_iter().collect()).unwrap();
        let sol = slope_solutions(&fan, quadrant, &LatticeVector::new(vec![2, 3])).unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.particular(), &vec![rat_int(2), rat_int(3)]);
    }

    #[test]
    fn boundary_point_rejected() {
        let fan = square_fan();
        let quadrant = fan.cone_by_rays(&[0, 1].into_iter().collect()).unwrap();
        let err = slope_solutions(&fan, quadrant, &LatticeVector::new(vec![1, 0])).unwrap_err();
        assert!(matches!(err, Error::NotInteriorPoint));
    }

    #[test]
    fn non_simplicial_one_parameter_family() {
        let fan = pyramid_fan();
        let top = fan
            .cone_by_rays(&[0, 1, 2, 3].into_iter().collect())
            .unwrap();
        let sol = slope_solutions(&fan, top, &LatticeVector::new(vec![0, 0, 2])).unwrap();
        assert_eq!(sol.kernel().len(), 1);
        // solutions have the form (a, b, a, b) with a + b = 1
        let d = sol.particular();
        assert_eq!(d[0], d[2]);
        assert_eq!(d[1], d[3]);
        assert_eq!(&d[0] + &d[1], rat_int(1));
    }

    #[test]
    fn sampled_solutions_reproduce_target() {
        let fan = pyramid_fan();
        let top = fan
            .cone_by_rays(&[0, 1, 2, 3].into_iter().collect())
            .unwrap();
        let v = LatticeVector::new(vec![1, 0, 3]);
        let sol = slope_solutions(&fan, top, &v).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut accepted = 0;
        while accepted < 100 {
            let params: Vec<Rat> = (0..sol.kernel().len())
                .map(|_| rat(rng.gen_range(-1000..=1000), 1000))
                .collect();
            let Some(d) = sol.sample(&params) else {
                continue;
            };
            accepted += 1;
            for k in 0..fan.dim() {
                let col: Vec<Rat> = sol
                    .rays()
                    .iter()
                    .map(|&r| rat_int(fan.ray(r).coords()[k]))
                    .collect();
                assert_eq!(rat_dot(&col, &d), rat_int(v.coords()[k]));
            }
        }
    }

    #[test]
    fn rational_periods() {
        assert_eq!(
            rational_slope_period(&[rat(1, 2), rat(1, 3)]).unwrap(),
            rat_int(6)
        );
        assert_eq!(
            rational_slope_period(&[rat_int(2), rat_int(4)]).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            rational_slope_period(&[rat_int(1), rat_int(0), rat_int(0)]).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            rational_slope_period(&[rat(3, 2), rat_int(3)]).unwrap(),
            rat(2, 3)
        );
        assert!(matches!(
            rational_slope_period(&[rat_int(0), rat_int(0)]),
            Err(Error::ZeroSlope)
        ));
    }

    #[test]
    fn lattice_periods() {
        assert_eq!(
            lattice_period(&LatticeVector::new(vec![3, 6, 9])).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            lattice_period(&LatticeVector::new(vec![1, 1])).unwrap(),
            rat_int(1)
        );
        assert!(lattice_period(&LatticeVector::new(vec![0, 0])).is_err());
    }

    #[test]
    fn period_formulas_agree_on_integral_slopes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            let v = LatticeVector::new(coords.clone());
            let as_rat: Vec<Rat> = coords.iter().map(|&c| rat_int(c)).collect();
            assert_eq!(
                lattice_period(&v).unwrap(),
                rational_slope_period(&as_rat).unwrap()
            );
        }
    }
}
