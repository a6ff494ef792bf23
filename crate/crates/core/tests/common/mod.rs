#![allow(dead_code)] // each test target uses its own subset of the fixtures

//! Shared desk-scale fixtures: the complete fans of the projective line,
//! the product of lines, the projective plane, a skewed-offset variant, and
//! a 3D fan with a non-simplicial maximal cone.

use polyham::fan::Fan;
use polyham::polytope::{PlData, SectionPolytope};
use polyham::rational::{rat_int, Rat};

pub fn segment() -> SectionPolytope {
    let fan = Fan::build(1, vec![vec![1], vec![-1]], &[vec![0], vec![1]])
        .unwrap()
        .fan;
    PlData::from_ray_values(fan, &vec![rat_int(-1); 2], None)
        .unwrap()
        .section_polytope()
        .unwrap()
}

pub fn square() -> SectionPolytope {
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

pub fn triangle() -> SectionPolytope {
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

pub fn skewed() -> SectionPolytope {
    let fan = Fan::build(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
    .fan;
    let values: Vec<Rat> = vec![rat_int(-1), rat_int(-1), rat_int(-2), rat_int(-1)];
    PlData::from_ray_values(fan, &values, None)
        .unwrap()
        .section_polytope()
        .unwrap()
}

pub fn pyramid() -> SectionPolytope {
    let fan = Fan::build(
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
    .fan;
    PlData::from_ray_values(fan, &vec![rat_int(-1); 5], None)
        .unwrap()
        .section_polytope()
        .unwrap()
}

pub fn all_fixtures() -> Vec<(&'static str, SectionPolytope)> {
    vec![
        ("segment", segment()),
        ("square", square()),
        ("triangle", triangle()),
        ("skewed", skewed()),
        ("pyramid", pyramid()),
    ]
}
