//! Named presentations with base arcs, shared by tests, examples and the
//! bundled input files.

use std::sync::Arc;

use crate::algebra::{Field, TestRing};
use crate::arcspace::{ArcProblem, BaseArc, VarietyPresentation};
use crate::oracle::ExampleFixture;

/// Precision to which the bundled arcs are given.
pub const FIXTURE_PRECISION: usize = 64;

/// A presentation together with a base arc on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub pres: VarietyPresentation,
    pub arc: BaseArc,
}

impl Fixture {
    fn new(name: &str, field: Field, n: usize, l: usize, p: &[&str], x0: &[&[i64]], y0: &[&[i64]]) -> Fixture {
        Fixture {
            name: format!("{name} over {field}"),
            pres: VarietyPresentation::parse(field, n, l, p).expect("fixture equations parse"),
            arc: BaseArc::from_ints(field, x0, y0, FIXTURE_PRECISION).expect("fixture arc is well-formed"),
        }
    }

    fn from_example(name: &str, fix: &ExampleFixture) -> Fixture {
        Fixture {
            name: format!("{name} over {}", fix.field),
            pres: fix.presentation(),
            arc: fix.arc(FIXTURE_PRECISION),
        }
    }

    /// The fixture as an input file.
    pub fn problem(&self) -> ArcProblem {
        ArcProblem { pres: self.pres.clone(), arc: self.arc.clone() }
    }
}

/// `y1·x2 + x1² = 0` with the arc `(0, t, 0)`; defect 1.
pub fn example_square(field: Field) -> Fixture {
    Fixture::from_example("hypersurface y*x2 + x1^2", &ExampleFixture::new(field, 1, "x1^2").expect("parses"))
}

/// `y1·x3 + x1³ + x1·x2 = 0` with the arc `(0, 0, t, 0)`; defect 1.
pub fn example_cubic(field: Field) -> Fixture {
    Fixture::from_example(
        "hypersurface y*x3 + x1^3 + x1*x2",
        &ExampleFixture::new(field, 2, "x1^3 + x1*x2").expect("parses"),
    )
}

/// The cusp `y1² = x1³` with the arc `(t², t³)`; defect 3 in characteristic
/// other than 2.
pub fn cusp(field: Field) -> Fixture {
    Fixture::new("cusp y^2 = x^3", field, 1, 1, &["y1^2 - x1^3"], &[&[0, 0, 1]], &[&[0, 0, 0, 1]])
}

/// Two equations `y1·y2 = x1`, `y1 + y2 = x2` with the arc
/// `x = (0, t)`, `y = (0, t)`; defect 1.
pub fn complete_intersection(field: Field) -> Fixture {
    Fixture::new(
        "complete intersection y1*y2 = x1, y1 + y2 = x2",
        field,
        2,
        2,
        &["y1*y2 - x1", "y1 + y2 - x2"],
        &[&[], &[0, 1]],
        &[&[], &[0, 1]],
    )
}

/// The graph `y1 = x1²` with the arc `(t, t²)`; defect 0.
pub fn graph(field: Field) -> Fixture {
    Fixture::new("graph y = x^2", field, 1, 1, &["y1 - x1^2"], &[&[0, 1]], &[&[0, 0, 1]])
}

/// Every fixture over `field`.
pub fn all(field: Field) -> Vec<Fixture> {
    vec![
        example_square(field),
        example_cubic(field),
        cusp(field),
        complete_intersection(field),
        graph(field),
    ]
}

fn rings(field: Field, powers: &[u32]) -> Vec<Arc<TestRing>> {
    powers
        .iter()
        .map(|&a| Arc::new(TestRing::maximal_power(field, &["e"], a).expect("valid ring")))
        .collect()
}

/// The fixtures and test rings (nilpotency 2 and 3) of the roundtrip suite.
pub fn roundtrip_suite() -> Vec<(Fixture, Vec<Arc<TestRing>>)> {
    let q = Field::Rationals;
    let f5 = Field::prime(5).expect("5 is prime");
    vec![
        (example_square(q), rings(q, &[2, 3])),
        (example_cubic(q), rings(q, &[2, 3])),
        (cusp(q), rings(q, &[2, 3])),
        (cusp(f5), rings(f5, &[2, 3])),
        (complete_intersection(q), rings(q, &[2, 3])),
    ]
}
