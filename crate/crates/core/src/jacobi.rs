//! Generalized Jacobi identities.
//!
//! For homogeneous `u, v, w` the identity reads
//!
//! ```text
//! (-1)^{g(u)·g(w)} u∘(v∘w) + (-1)^{g(v)·g(u)} v∘(w∘u) + (-1)^{g(w)·g(v)} w∘(u∘v) = 0
//! ```
//!
//! Its three terms are each an outer bracket of an inner bracket, and each
//! bracket is a commutator or an anticommutator. Up to relabelling only four
//! patterns arise; see [`JacobiShape`].

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::format::TermDto;
use crate::grading::{bracket_kind, BracketKind, Degree};
use crate::rational;

/// Left-hand side of the generalized Jacobi identity, by generator index.
pub fn jacobiator_idx(alg: &GradedAlgebra, u: usize, v: usize, w: usize) -> LinComb {
    let (gu, gv, gw) = (alg.degree(u), alg.degree(v), alg.degree(w));
    let single = |i| LinComb::single(i, rational::one());
    let (u_, v_, w_) = (single(u), single(v), single(w));
    let mut out = LinComb::zero();
    let terms = [
        (&u_, &v_, &w_, gu.dot(gw)),
        (&v_, &w_, &u_, gv.dot(gu)),
        (&w_, &u_, &v_, gw.dot(gv)),
    ];
    for (outer, left, right, parity) in terms {
        let inner = alg.product(left, right);
        out.add_scaled(&alg.product(outer, &inner), &rational::sign(parity));
    }
    out
}

pub fn jacobiator(alg: &GradedAlgebra, u: &str, v: &str, w: &str) -> Result<LinComb> {
    Ok(jacobiator_idx(
        alg,
        alg.index_of(u)?,
        alg.index_of(v)?,
        alg.index_of(w)?,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiReport {
    pub algebra: String,
    pub checked: usize,
    pub failures: Vec<JacobiFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    pub residual: Vec<TermDto>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Unordered generator triples with repetition, `a <= b <= c`, in
/// lexicographic order.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) * (n + 2) / 6);
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                out.push((a, b, c));
            }
        }
    }
    out
}

pub fn check_all_jacobi(alg: &GradedAlgebra) -> JacobiReport {
    check_all_jacobi_with(alg, 1).expect("a single worker always builds")
}

/// Sweeps every unordered triple. With more than one worker the sweep is
/// sharded over a dedicated thread pool; the report is identical either way.
pub fn check_all_jacobi_with(alg: &GradedAlgebra, workers: usize) -> Result<JacobiReport> {
    let all = triples(alg.len());
    let eval = |&(a, b, c): &(usize, usize, usize)| {
        let r = jacobiator_idx(alg, a, b, c);
        (!r.is_zero()).then(|| JacobiFailure {
            triple: [a, b, c].map(|i| alg.generator_name(i).to_string()),
            residual: alg.render(&r),
        })
    };
    let failures: Vec<JacobiFailure> = if workers <= 1 {
        all.iter().filter_map(eval).collect()
    } else {
        thread_pool(workers)?.install(|| all.par_iter().filter_map(eval).collect())
    };
    Ok(JacobiReport {
        algebra: alg.name().to_string(),
        checked: all.len(),
        failures,
    })
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start {workers} workers: {e}")))
}

/// The four commutator/anticommutator patterns a Jacobi-like identity on
/// three elements can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JacobiShape {
    /// `[u,[v,w]] + [v,[w,u]] + [w,[u,v]] = 0`
    CommComm,
    /// `[u,{v,w}] + [v,{w,u}] + [w,{u,v}] = 0`
    CommAnti,
    /// `[u,{v,w}] + {v,[w,u]} - {w,[u,v]} = 0`
    MixedAntiInComm,
    /// `[u,[v,w]] + {v,{w,u}} - {w,{u,v}} = 0`
    AntiAnti,
}

impl JacobiShape {
    pub const ALL: [JacobiShape; 4] = [
        JacobiShape::CommComm,
        JacobiShape::CommAnti,
        JacobiShape::MixedAntiInComm,
        JacobiShape::AntiAnti,
    ];

    /// 1-based position in the conventional listing.
    pub fn ordinal(self) -> usize {
        self as usize + 1
    }
}

/// The bracket kinds of one term `outer(x, inner(y, z))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TermShape {
    pub outer: BracketKind,
    pub inner: BracketKind,
}

/// A multiset of three degrees, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdentityClass {
    pub degrees: [Degree; 3],
}

impl IdentityClass {
    pub fn new(mut degrees: [Degree; 3]) -> Self {
        degrees.sort();
        IdentityClass { degrees }
    }
}

/// All multisets of three degrees drawn from `pool`.
pub fn identity_classes_over(pool: &[Degree]) -> Vec<IdentityClass> {
    let mut out = Vec::new();
    for a in 0..pool.len() {
        for b in a..pool.len() {
            for c in b..pool.len() {
                out.push(IdentityClass::new([pool[a], pool[b], pool[c]]));
            }
        }
    }
    out
}

pub fn identity_classes() -> Vec<IdentityClass> {
    identity_classes_over(&Degree::ALL)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub degrees: [Degree; 3],
    pub terms: [TermShape; 3],
    pub shape: JacobiShape,
}

/// Classifies the identity on elements of the given degrees.
///
/// Term `u∘(v∘w)` has inner kind from `g(v)·g(w)` and outer kind from
/// `g(u)·(g(v)+g(w))`. The identity shape depends only on how many of the
/// three pairwise dot products are odd: none, one, two or three give the
/// comm-comm, mixed, anti-anti and comm-anti shapes respectively.
pub fn classify_shapes(degrees: [Degree; 3]) -> Classification {
    let [u, v, w] = degrees;
    let term = |x: Degree, y: Degree, z: Degree| TermShape {
        outer: bracket_kind(x, y.add(z)),
        inner: bracket_kind(y, z),
    };
    let odd_pairs = u.dot(v) + v.dot(w) + w.dot(u);
    let shape = match odd_pairs {
        0 => JacobiShape::CommComm,
        1 => JacobiShape::MixedAntiInComm,
        2 => JacobiShape::AntiAnti,
        _ => JacobiShape::CommAnti,
    };
    Classification {
        degrees,
        terms: [term(u, v, w), term(v, w, u), term(w, u, v)],
        shape,
    }
}

pub fn census() -> Vec<Classification> {
    identity_classes()
        .into_iter()
        .map(|c| classify_shapes(c.degrees))
        .collect()
}
