//! Small catalog of standard Delzant polytopes used in tests, docs, and the
//! bundled data files.

use crate::lattice::Int;
use crate::polytope::{DelzantPolytope, Halfspace, Rational};

fn halfspace(normal: Vec<i64>, offset: i64) -> Halfspace {
    Halfspace::new(normal, Rational::from_integer(Int::from(offset))).unwrap()
}

/// Triangle with vertices (0,0), (2,0), (0,2); the moment polytope of CP^2.
pub fn cp2() -> DelzantPolytope {
    DelzantPolytope::validate(
        2,
        vec![
            halfspace(vec![1, 0], 0),
            halfspace(vec![0, 1], 0),
            halfspace(vec![-1, -1], -2),
        ],
    )
    .unwrap()
}

/// Unit square [0,1]^2; the moment polytope of CP^1 x CP^1.
pub fn unit_square() -> DelzantPolytope {
    DelzantPolytope::validate(
        2,
        vec![
            halfspace(vec![1, 0], 0),
            halfspace(vec![0, 1], 0),
            halfspace(vec![-1, 0], -1),
            halfspace(vec![0, -1], -1),
        ],
    )
    .unwrap()
}

/// Trapezoid with vertices (0,0), (2,0), (1,1), (0,1); first Hirzebruch
/// surface.
pub fn hirzebruch1() -> DelzantPolytope {
    DelzantPolytope::validate(
        2,
        vec![
            halfspace(vec![1, 0], 0),
            halfspace(vec![0, 1], 0),
            halfspace(vec![0, -1], -1),
            halfspace(vec![-1, -1], -2),
        ],
    )
    .unwrap()
}

/// Standard 3-simplex scaled to edge offset 2; the moment polytope of CP^3.
pub fn cp3() -> DelzantPolytope {
    DelzantPolytope::validate(
        3,
        vec![
            halfspace(vec![1, 0, 0], 0),
            halfspace(vec![0, 1, 0], 0),
            halfspace(vec![0, 0, 1], 0),
            halfspace(vec![-1, -1, -1], -2),
        ],
    )
    .unwrap()
}

/// The four polytopes above, with names.
pub fn all() -> Vec<(&'static str, DelzantPolytope)> {
    vec![
        ("cp2", cp2()),
        ("unit_square", unit_square()),
        ("hirzebruch1", hirzebruch1()),
        ("cp3", cp3()),
    ]
}
