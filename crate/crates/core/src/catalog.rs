//! Built-in reference data for the Z2,2 grading of u(1,1).
//!
//! The coefficient matrices and the bracket table are transcribed by hand
//! and kept independent of each other, so that `assemble` on the former can
//! be cross-checked against the latter.

use crate::algebra::{Generator, GradedAlgebra, LinComb};
use crate::grading::Degree;
use crate::matrix::RatMatrix;
use crate::rational::{frac, int, Rational};
use crate::structure::{CoefficientParts, CoefficientSet, StructureConstants};

/// u(1,1): `[X1,X2] = X2`, `[X1,X3] = -X3`, `[X2,X3] = -2 X1`, `X4` central.
pub fn u11_structure_constants() -> StructureConstants {
    let mut c = StructureConstants::new(4);
    for (mu, nu, la, x) in [
        (1, 2, 2, 1),
        (2, 1, 2, -1),
        (1, 3, 3, -1),
        (3, 1, 3, 1),
        (2, 3, 1, -2),
        (3, 2, 1, 2),
    ] {
        c.set(mu - 1, nu - 1, la - 1, int(x)).expect("indices in range");
    }
    c
}

fn m4(factor: Rational, rows: [[i64; 4]; 4]) -> RatMatrix {
    let r: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    RatMatrix::from_ints(factor, &r)
}

fn m2(factor: Rational, rows: [[i64; 2]; 2]) -> RatMatrix {
    RatMatrix::from_ints(factor, &[&rows[0], &rows[1]])
}

fn z2() -> RatMatrix {
    RatMatrix::zeros(2, 2)
}

/// The published grading of u(1,1) with `dim L01 = 4`, `dim L10 = 2`.
pub fn u11_z22_coefficients() -> CoefficientSet {
    let half = frac(1, 2);
    let parts = CoefficientParts {
        dim_l01: 4,
        dim_l10: 2,
        c: u11_structure_constants(),
        k: vec![
            m4(half.clone(), [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
            m4(int(1), [[0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, -1, 0, 0]]),
            m4(int(1), [[0, 0, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 0, 0]]),
            m4(half.clone(), [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
        ],
        h: vec![
            m4(int(2), [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
            m4(int(2), [[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 0]]),
            m4(int(2), [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]),
            m4(int(2), [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        ],
        s: vec![
            m2(int(4), [[0, 1], [1, 0]]),
            m2(int(4), [[1, 0], [0, 0]]),
            m2(int(4), [[0, 0], [0, 1]]),
            z2(),
        ],
        t: vec![z2(), z2(), z2(), m2(int(4), [[0, 1], [-1, 0]])],
        u: vec![
            m2(half.clone(), [[1, 0], [0, -1]]),
            m2(int(1), [[0, 0], [-1, 0]]),
            m2(int(1), [[0, 1], [0, 0]]),
            z2(),
        ],
        v: vec![z2(), z2(), z2(), m2(half, [[1, 0], [0, -1]])],
        l: vec![
            m2(int(1), [[0, 1], [0, 0]]),
            m2(int(1), [[0, 0], [-1, 0]]),
            m2(int(1), [[0, 0], [0, -1]]),
            m2(int(1), [[1, 0], [0, 0]]),
        ],
        m: vec![
            m2(int(1), [[0, 1], [0, 0]]),
            m2(int(1), [[0, 0], [1, 0]]),
            m2(int(1), [[1, 0], [0, 0]]),
            m2(int(1), [[0, 0], [0, 1]]),
        ],
        n: vec![
            m2(int(2), [[0, 0], [0, 1]]),
            m2(int(2), [[1, 0], [0, 0]]),
            m2(int(2), [[0, 1], [0, 0]]),
            m2(int(2), [[0, 0], [1, 0]]),
        ],
    };
    CoefficientSet::try_from(parts).expect("built-in coefficient set is well shaped")
}

pub const U11_Z22_NAME: &str = "u11-z22";

/// The 12-generator algebra, listed bracket by bracket. Only one order of
/// each pair is given; the other follows from graded antisymmetry.
pub fn u11_z22_algebra() -> GradedAlgebra {
    let names = [
        ("X1", Degree::D00),
        ("X2", Degree::D00),
        ("X3", Degree::D00),
        ("X4", Degree::D00),
        ("Q1", Degree::D01),
        ("Q2", Degree::D01),
        ("Q3", Degree::D01),
        ("Q4", Degree::D01),
        ("Y1", Degree::D10),
        ("Y2", Degree::D10),
        ("Z1", Degree::D11),
        ("Z2", Degree::D11),
    ];
    let idx = |n: &str| names.iter().position(|(g, _)| *g == n).expect("known name");
    let h = frac(1, 2);
    let mh = frac(-1, 2);
    let table: Vec<(&str, &str, Vec<(&str, Rational)>)> = vec![
        ("X1", "X2", vec![("X2", int(1))]),
        ("X1", "X3", vec![("X3", int(-1))]),
        ("X2", "X3", vec![("X1", int(-2))]),
        ("Q1", "Q2", vec![("X1", int(2)), ("X4", int(-2))]),
        ("Q1", "Q4", vec![("X3", int(2))]),
        ("Q3", "Q4", vec![("X1", int(2)), ("X4", int(2))]),
        ("Q2", "Q3", vec![("X2", int(2))]),
        ("Y1", "Y1", vec![("X2", int(4))]),
        ("Y1", "Y2", vec![("X1", int(4))]),
        ("Y2", "Y2", vec![("X3", int(4))]),
        ("Z1", "Z2", vec![("X4", int(4))]),
        ("X1", "Q1", vec![("Q1", mh.clone())]),
        ("X1", "Q2", vec![("Q2", h.clone())]),
        ("X1", "Q3", vec![("Q3", h.clone())]),
        ("X1", "Q4", vec![("Q4", mh.clone())]),
        ("X2", "Q1", vec![("Q3", int(-1))]),
        ("X2", "Q4", vec![("Q2", int(-1))]),
        ("X3", "Q2", vec![("Q4", int(1))]),
        ("X3", "Q3", vec![("Q1", int(1))]),
        ("X4", "Q1", vec![("Q1", mh.clone())]),
        ("X4", "Q2", vec![("Q2", h.clone())]),
        ("X4", "Q3", vec![("Q3", mh.clone())]),
        ("X4", "Q4", vec![("Q4", h.clone())]),
        ("X1", "Y1", vec![("Y1", h.clone())]),
        ("X1", "Y2", vec![("Y2", mh.clone())]),
        ("X2", "Y2", vec![("Y1", int(-1))]),
        ("X3", "Y1", vec![("Y2", int(1))]),
        ("X4", "Z1", vec![("Z1", h)]),
        ("X4", "Z2", vec![("Z2", mh)]),
        ("Q1", "Y1", vec![("Z2", int(1))]),
        ("Q2", "Y2", vec![("Z1", int(-1))]),
        ("Q3", "Y2", vec![("Z2", int(-1))]),
        ("Q4", "Y1", vec![("Z1", int(1))]),
        ("Q1", "Z1", vec![("Y2", int(1))]),
        ("Q2", "Z2", vec![("Y1", int(1))]),
        ("Q3", "Z1", vec![("Y1", int(1))]),
        ("Q4", "Z2", vec![("Y2", int(1))]),
        ("Y1", "Z1", vec![("Q2", int(2))]),
        ("Y1", "Z2", vec![("Q3", int(2))]),
        ("Y2", "Z1", vec![("Q4", int(2))]),
        ("Y2", "Z2", vec![("Q1", int(2))]),
    ];
    let gens = names.iter().map(|&(n, d)| Generator::new(n, d)).collect();
    let products = table.into_iter().map(|(a, b, terms)| {
        let lc: LinComb = terms.into_iter().map(|(g, c)| (idx(g), c)).collect();
        (idx(a), idx(b), lc)
    });
    GradedAlgebra::from_products(U11_Z22_NAME, gens, products).expect("built-in table is well formed")
}

/// The `L00 ⊕ L01` part of [`u11_z22_algebra`], an ordinary Lie superalgebra.
pub fn u11_z2_subalgebra() -> GradedAlgebra {
    u11_z22_algebra()
        .restrict(&[Degree::D00, Degree::D01], "u11-z2")
        .expect("even and odd blocks close")
}

#[derive(Clone, Debug)]
pub enum Payload {
    Algebra(GradedAlgebra),
    Coefficients(CoefficientSet),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    pub provenance: &'static str,
    pub payload: Payload,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: U11_Z22_NAME,
            aliases: &[],
            description: "12-generator Z2,2 graded algebra over u(1,1)",
            provenance: "published bracket table, transcribed by hand",
            payload: Payload::Algebra(u11_z22_algebra()),
        },
        CatalogEntry {
            id: "u11-z22-coefficients",
            aliases: &["paper-solution"],
            description: "structure constants of u(1,1) with the nine coefficient families of its Z2,2 grading",
            provenance: "published solution matrices, transcribed by hand",
            payload: Payload::Coefficients(u11_z22_coefficients()),
        },
        CatalogEntry {
            id: "u11-z2",
            aliases: &[],
            description: "the L00 + L01 block of u11-z22",
            provenance: "restriction of u11-z22",
            payload: Payload::Algebra(u11_z2_subalgebra()),
        },
    ]
}

pub fn lookup(id: &str) -> Option<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.id == id || e.aliases.contains(&id))
}
