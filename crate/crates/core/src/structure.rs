//! Coefficient-matrix description of a Z2,2 grading over a given even part.
//!
//! With generators `X_μ` (degree 00), `Q_α` (01), `Y_i` (10) and `Z_i` (11),
//! every product is fixed by the structure constants `C` of the even part
//! and nine matrix families:
//!
//! ```text
//! {Q_α, Q_β} = (H_μ)_{αβ} X_μ     {Y_i, Y_j} = (s_μ)_{ij} X_μ     [Z_i, Z_j] = (t_μ)_{ij} X_μ
//! [X_μ, Q_α] = (K_μ)_{αβ} Q_β     [X_μ, Y_i] = (u_μ)_{ij} Y_j     [X_μ, Z_i] = (v_μ)_{ij} Z_j
//! [Q_α, Y_i] = (l_α)_{ij} Z_j     {Q_α, Z_i} = (m_α)_{ij} Y_j     {Y_i, Z_j} = (n_α)_{ij} Q_α
//! ```
//!
//! The generalized Jacobi identities translate into one relation family per
//! class of degree triples; [`Relation`] lists all twenty.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Generator, GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};
use crate::report::{Failure, Residual, VerificationReport};

/// Structure constants `[X_μ, X_ν] = C_{μνλ} X_λ`, 0-based and sparse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

impl StructureConstants {
    pub fn new(dim: usize) -> Self {
        StructureConstants {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, mu: usize, nu: usize, lambda: usize, value: Rational) -> Result<()> {
        if mu.max(nu).max(lambda) >= self.dim {
            return Err(Error::Shape(format!(
                "structure constant index ({mu},{nu},{lambda}) outside 0..{}",
                self.dim
            )));
        }
        if value.is_zero() {
            self.entries.remove(&(mu, nu, lambda));
        } else {
            self.entries.insert((mu, nu, lambda), value);
        }
        Ok(())
    }

    pub fn get(&self, mu: usize, nu: usize, lambda: usize) -> Rational {
        self.entries
            .get(&(mu, nu, lambda))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }
}

/// One of the nine matrix families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    K,
    H,
    S,
    T,
    U,
    V,
    L,
    M,
    N,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::K,
        Family::H,
        Family::S,
        Family::T,
        Family::U,
        Family::V,
        Family::L,
        Family::M,
        Family::N,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::K => "K",
            Family::H => "H",
            Family::S => "s",
            Family::T => "t",
            Family::U => "u",
            Family::V => "v",
            Family::L => "l",
            Family::M => "m",
            Family::N => "n",
        }
    }
}

/// Unvalidated components of a [`CoefficientSet`].
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientParts {
    pub dim_l01: usize,
    pub dim_l10: usize,
    pub c: StructureConstants,
    pub k: Vec<RatMatrix>,
    pub h: Vec<RatMatrix>,
    pub s: Vec<RatMatrix>,
    pub t: Vec<RatMatrix>,
    pub u: Vec<RatMatrix>,
    pub v: Vec<RatMatrix>,
    pub l: Vec<RatMatrix>,
    pub m: Vec<RatMatrix>,
    pub n: Vec<RatMatrix>,
}

impl CoefficientParts {
    pub fn family(&self, f: Family) -> &Vec<RatMatrix> {
        match f {
            Family::K => &self.k,
            Family::H => &self.h,
            Family::S => &self.s,
            Family::T => &self.t,
            Family::U => &self.u,
            Family::V => &self.v,
            Family::L => &self.l,
            Family::M => &self.m,
            Family::N => &self.n,
        }
    }

    pub fn family_mut(&mut self, f: Family) -> &mut Vec<RatMatrix> {
        match f {
            Family::K => &mut self.k,
            Family::H => &mut self.h,
            Family::S => &mut self.s,
            Family::T => &mut self.t,
            Family::U => &mut self.u,
            Family::V => &mut self.v,
            Family::L => &mut self.l,
            Family::M => &mut self.m,
            Family::N => &mut self.n,
        }
    }
}

/// A shape-checked set of coefficient matrices.
///
/// Invariants: `H_μ` and `s_μ` are symmetric, `t_μ` antisymmetric, the
/// `L10` and `L11` blocks have equal dimension, and every family has the
/// right count and size.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSet {
    parts: CoefficientParts,
}

impl TryFrom<CoefficientParts> for CoefficientSet {
    type Error = Error;

    fn try_from(parts: CoefficientParts) -> Result<Self> {
        let n00 = parts.c.dim();
        let (n01, n10) = (parts.dim_l01, parts.dim_l10);
        if n00 == 0 || n01 == 0 || n10 == 0 {
            return Err(Error::Shape(format!(
                "dimensions must be positive, got L00={n00} L01={n01} L10={n10}"
            )));
        }
        for f in Family::ALL {
            let (count, size) = match f {
                Family::K | Family::H => (n00, n01),
                Family::S | Family::T | Family::U | Family::V => (n00, n10),
                Family::L | Family::M | Family::N => (n01, n10),
            };
            let mats = parts.family(f);
            if mats.len() != count {
                return Err(Error::Shape(format!(
                    "family {} has {} matrices, expected {count}",
                    f.symbol(),
                    mats.len()
                )));
            }
            for (i, m) in mats.iter().enumerate() {
                if m.shape() != (size, size) {
                    return Err(Error::Shape(format!(
                        "{}{} is {}x{}, expected {size}x{size}",
                        f.symbol(),
                        i + 1,
                        m.rows(),
                        m.cols()
                    )));
                }
                let ok = match f {
                    Family::H | Family::S => m.is_symmetric(),
                    Family::T => m.is_antisymmetric(),
                    _ => true,
                };
                if !ok {
                    let want = if f == Family::T { "antisymmetric" } else { "symmetric" };
                    return Err(Error::Shape(format!("{}{} must be {want}", f.symbol(), i + 1)));
                }
            }
        }
        Ok(CoefficientSet { parts })
    }
}

impl CoefficientSet {
    /// All nine families zero: the trivial grading over `c`.
    pub fn zero(c: StructureConstants, dim_l01: usize, dim_l10: usize) -> Result<Self> {
        let n00 = c.dim();
        let sq = |n| RatMatrix::zeros(n, n);
        CoefficientSet::try_from(CoefficientParts {
            dim_l01,
            dim_l10,
            c,
            k: vec![sq(dim_l01); n00],
            h: vec![sq(dim_l01); n00],
            s: vec![sq(dim_l10); n00],
            t: vec![sq(dim_l10); n00],
            u: vec![sq(dim_l10); n00],
            v: vec![sq(dim_l10); n00],
            l: vec![sq(dim_l10); dim_l01],
            m: vec![sq(dim_l10); dim_l01],
            n: vec![sq(dim_l10); dim_l01],
        })
    }

    pub fn parts(&self) -> &CoefficientParts {
        &self.parts
    }

    pub fn into_parts(self) -> CoefficientParts {
        self.parts
    }

    pub fn dim_l00(&self) -> usize {
        self.parts.c.dim()
    }

    pub fn dim_l01(&self) -> usize {
        self.parts.dim_l01
    }

    pub fn dim_l10(&self) -> usize {
        self.parts.dim_l10
    }

    pub fn c(&self) -> &StructureConstants {
        &self.parts.c
    }

    pub fn family(&self, f: Family) -> &[RatMatrix] {
        self.parts.family(f)
    }

    /// Sets one independent entry of a family. For symmetric families the
    /// mirrored entry follows; for `t` the mirrored entry is negated.
    pub fn with_entry(
        &self,
        f: Family,
        index: usize,
        row: usize,
        col: usize,
        value: Rational,
    ) -> Result<Self> {
        let mut parts = self.parts.clone();
        let mats = parts.family_mut(f);
        let m = mats
            .get_mut(index)
            .ok_or_else(|| Error::Shape(format!("{}{} does not exist", f.symbol(), index + 1)))?;
        if row >= m.rows() || col >= m.cols() {
            return Err(Error::Shape(format!(
                "entry ({row},{col}) outside {}{}",
                f.symbol(),
                index + 1
            )));
        }
        match f {
            Family::H | Family::S => m[(col, row)] = value.clone(),
            Family::T => m[(col, row)] = -value.clone(),
            _ => {}
        }
        m[(row, col)] = value;
        CoefficientSet::try_from(parts)
    }

    /// The same grading in the rescaled basis `Q'_α = q_α Q_α`,
    /// `Y'_i = y_i Y_i`, `Z'_j = z_j Z_j` with the even part fixed.
    pub fn rescaled(&self, q: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Self> {
        if q.len() != self.dim_l01() || y.len() != self.dim_l10() || z.len() != self.dim_l10() {
            return Err(Error::Shape("rescaling vector lengths do not match the blocks".into()));
        }
        if q.iter().chain(y).chain(z).any(Zero::is_zero) {
            return Err(Error::Parameter("rescaling factors must be nonzero".into()));
        }
        let p = &self.parts;
        let conj = |mats: &[RatMatrix], left: &[Rational], right: &[Rational], inv_right: bool| {
            mats.iter()
                .map(|m| {
                    let mut out = m.clone();
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            let r = if inv_right { right[j].recip() } else { right[j].clone() };
                            out[(i, j)] = &m[(i, j)] * &left[i] * r;
                        }
                    }
                    out
                })
                .collect::<Vec<_>>()
        };
        let mut parts = p.clone();
        parts.k = conj(&p.k, q, q, true);
        parts.u = conj(&p.u, y, y, true);
        parts.v = conj(&p.v, z, z, true);
        parts.h = conj(&p.h, q, q, false);
        parts.s = conj(&p.s, y, y, false);
        parts.t = conj(&p.t, z, z, false);
        for a in 0..self.dim_l01() {
            parts.l[a] = conj(&p.l[a..=a], y, z, true).remove(0).scale(&q[a]);
            parts.m[a] = conj(&p.m[a..=a], z, y, true).remove(0).scale(&q[a]);
            parts.n[a] = conj(&p.n[a..=a], y, z, false).remove(0).scale(&q[a].recip());
        }
        CoefficientSet::try_from(parts)
    }

    /// The same grading in the basis `Q' = P_q Q`, `Y' = P_y Y`, `Z' = P_z Z`
    /// for signed permutation matrices `P_q`, `P_y`, `P_z`.
    pub fn signed_permuted(&self, pq: &RatMatrix, py: &RatMatrix, pz: &RatMatrix) -> Result<Self> {
        for (label, m, n) in [("Q", pq, self.dim_l01()), ("Y", py, self.dim_l10()), ("Z", pz, self.dim_l10())] {
            if m.rows() != n || !m.is_signed_permutation() {
                return Err(Error::Shape(format!("{label} transform is not a signed permutation of size {n}")));
            }
        }
        // Signed permutations are orthogonal, so every block transforms as P M P^T.
        let congruent = |mats: &[RatMatrix], a: &RatMatrix, b: &RatMatrix| {
            let bt = b.transpose();
            mats.iter().map(|m| &(a * m) * &bt).collect::<Vec<_>>()
        };
        let mix = |mats: Vec<RatMatrix>| {
            (0..pq.rows())
                .map(|a| {
                    let b = (0..pq.cols()).find(|&b| !pq[(a, b)].is_zero()).unwrap();
                    mats[b].scale(&pq[(a, b)])
                })
                .collect::<Vec<_>>()
        };
        let p = &self.parts;
        let mut parts = p.clone();
        parts.k = congruent(&p.k, pq, pq);
        parts.h = congruent(&p.h, pq, pq);
        parts.u = congruent(&p.u, py, py);
        parts.s = congruent(&p.s, py, py);
        parts.v = congruent(&p.v, pz, pz);
        parts.t = congruent(&p.t, pz, pz);
        parts.l = mix(congruent(&p.l, py, pz));
        parts.m = mix(congruent(&p.m, pz, py));
        parts.n = mix(congruent(&p.n, py, pz));
        CoefficientSet::try_from(parts)
    }
}

/// The relation families, one per class of degree triples `(X|Q|Y|Z)^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    /// XXX: `C` antisymmetric with vanishing Jacobiator.
    EvenJacobi,
    /// XXQ: `[K_μ, K_ν] = -C_{μνλ} K_λ`
    KRepresentation,
    /// XXY: `[u_μ, u_ν] = -C_{μνλ} u_λ`
    URepresentation,
    /// XXZ: `[v_μ, v_ν] = -C_{μνλ} v_λ`
    VRepresentation,
    /// XQQ: `K_μ H_ν + (K_μ H_ν)^T = C_{μλν} H_λ`
    KH,
    /// XYY: `u_μ s_ν + (u_μ s_ν)^T = C_{μλν} s_λ`
    US,
    /// XZZ: `v_μ t_ν + t_ν v_μ^T = -C_{μλν} t_λ^T`
    VT,
    /// XQY: `l_α v_μ - u_μ l_α = (K_μ)_{αβ} l_β`
    LIntertwiner,
    /// XQZ: `m_α u_μ - v_μ m_α = (K_μ)_{αβ} m_β`
    MIntertwiner,
    /// XYZ: `u_μ n_α + n_α v_μ^T = (K_μ)_{βα} n_β`
    NIntertwiner,
    /// QQQ: `(H_μ)_{αβ}(K_μ)_{γδ} + (H_μ)_{βγ}(K_μ)_{αδ} + (H_μ)_{γα}(K_μ)_{βδ} = 0`
    HK,
    /// QQY: `l_α m_β + l_β m_α = (H_μ)_{αβ} u_μ`
    LM,
    /// QQZ: `m_β l_α + m_α l_β = (H_μ)_{αβ} v_μ`
    ML,
    /// QYY: `l_α n_β^T + n_β l_α^T = -(K_μ)_{αβ} s_μ`
    LN,
    /// QYZ: `s_μ m_α^T + l_α t_μ = (H_μ)_{αβ} n_β`
    SMLT,
    /// QZZ: `m_α n_β - (m_α n_β)^T = -(K_μ)_{αβ} t_μ`
    MN,
    /// YYY: `(s_μ)_{ij}(u_μ)_{kl} + (s_μ)_{jk}(u_μ)_{il} + (s_μ)_{ki}(u_μ)_{jl} = 0`
    SU,
    /// YYZ: `(n_α)_{ji}(l_α)_{kl} + (n_α)_{ki}(l_α)_{jl} = -(s_μ)_{jk}(v_μ)_{il}`
    NL,
    /// YZZ: `(n_α)_{ji}(m_α)_{kl} - (n_α)_{jk}(m_α)_{il} = (t_μ)_{ki}(u_μ)_{jl}`
    NM,
    /// ZZZ: `(t_μ)_{ij}(v_μ)_{kl} + (t_μ)_{jk}(v_μ)_{il} + (t_μ)_{ki}(v_μ)_{jl} = 0`
    TV,
}

impl Relation {
    pub const ALL: [Relation; 20] = [
        Relation::EvenJacobi,
        Relation::KRepresentation,
        Relation::URepresentation,
        Relation::VRepresentation,
        Relation::KH,
        Relation::US,
        Relation::VT,
        Relation::LIntertwiner,
        Relation::MIntertwiner,
        Relation::NIntertwiner,
        Relation::HK,
        Relation::LM,
        Relation::ML,
        Relation::LN,
        Relation::SMLT,
        Relation::MN,
        Relation::SU,
        Relation::NL,
        Relation::NM,
        Relation::TV,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            Relation::EvenJacobi => "C_{munulambda} = -C_{numulambda}; Jacobi identity of C",
            Relation::KRepresentation => "[K_mu, K_nu] = -C_{munulambda} K_lambda",
            Relation::URepresentation => "[u_mu, u_nu] = -C_{munulambda} u_lambda",
            Relation::VRepresentation => "[v_mu, v_nu] = -C_{munulambda} v_lambda",
            Relation::KH => "K_mu H_nu + (K_mu H_nu)^T = C_{mulambdanu} H_lambda",
            Relation::US => "u_mu s_nu + (u_mu s_nu)^T = C_{mulambdanu} s_lambda",
            Relation::VT => "v_mu t_nu + t_nu v_mu^T = -C_{mulambdanu} t_lambda^T",
            Relation::LIntertwiner => "l_alpha v_mu - u_mu l_alpha = (K_mu)_{alphabeta} l_beta",
            Relation::MIntertwiner => "m_alpha u_mu - v_mu m_alpha = (K_mu)_{alphabeta} m_beta",
            Relation::NIntertwiner => "u_mu n_alpha + n_alpha v_mu^T = (K_mu)_{betaalpha} n_beta",
            Relation::HK => {
                "(H_mu)_{ab}(K_mu)_{gd} + (H_mu)_{bg}(K_mu)_{ad} + (H_mu)_{ga}(K_mu)_{bd} = 0"
            }
            Relation::LM => "l_alpha m_beta + l_beta m_alpha = (H_mu)_{alphabeta} u_mu",
            Relation::ML => "m_beta l_alpha + m_alpha l_beta = (H_mu)_{alphabeta} v_mu",
            Relation::LN => "l_alpha n_beta^T + n_beta l_alpha^T = -(K_mu)_{alphabeta} s_mu",
            Relation::SMLT => "s_mu m_alpha^T + l_alpha t_mu = (H_mu)_{alphabeta} n_beta",
            Relation::MN => "m_alpha n_beta - (m_alpha n_beta)^T = -(K_mu)_{alphabeta} t_mu",
            Relation::SU => "(s_mu)_{ij}(u_mu)_{kl} + (s_mu)_{jk}(u_mu)_{il} + (s_mu)_{ki}(u_mu)_{jl} = 0",
            Relation::NL => "(n_a)_{ji}(l_a)_{kl} + (n_a)_{ki}(l_a)_{jl} = -(s_mu)_{jk}(v_mu)_{il}",
            Relation::NM => "(n_a)_{ji}(m_a)_{kl} - (n_a)_{jk}(m_a)_{il} = (t_mu)_{ki}(u_mu)_{jl}",
            Relation::TV => "(t_mu)_{ij}(v_mu)_{kl} + (t_mu)_{jk}(v_mu)_{il} + (t_mu)_{ki}(v_mu)_{jl} = 0",
        }
    }

    /// Degree-triple class the relation comes from, e.g. `"XQZ"`.
    pub fn class(self) -> &'static str {
        match self {
            Relation::EvenJacobi => "XXX",
            Relation::KRepresentation => "XXQ",
            Relation::URepresentation => "XXY",
            Relation::VRepresentation => "XXZ",
            Relation::KH => "XQQ",
            Relation::US => "XYY",
            Relation::VT => "XZZ",
            Relation::LIntertwiner => "XQY",
            Relation::MIntertwiner => "XQZ",
            Relation::NIntertwiner => "XYZ",
            Relation::HK => "QQQ",
            Relation::LM => "QQY",
            Relation::ML => "QQZ",
            Relation::LN => "QYY",
            Relation::SMLT => "QYZ",
            Relation::MN => "QZZ",
            Relation::SU => "YYY",
            Relation::NL => "YYZ",
            Relation::NM => "YZZ",
            Relation::TV => "ZZZ",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.class(), self.formula())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidualValue {
    Matrix(RatMatrix),
    Scalar(Rational),
}

/// A nonzero residual of one relation at one assignment of its free indices
/// (1-based, named).
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintResidual {
    pub relation: Relation,
    pub indices: Vec<(&'static str, usize)>,
    pub residual: ResidualValue,
}

#[derive(Clone, Debug, Default)]
pub struct ConstraintEvaluation {
    pub checked: usize,
    pub residuals: Vec<ConstraintResidual>,
    only: Option<Vec<Relation>>,
    record: bool,
    values: Vec<Rational>,
}

impl ConstraintEvaluation {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn failing_relations(&self) -> Vec<Relation> {
        let mut out: Vec<_> = self.residuals.iter().map(|r| r.relation).collect();
        out.dedup();
        out
    }

    fn wants(&self, relation: Relation) -> bool {
        self.only.as_ref().is_none_or(|o| o.contains(&relation))
    }

    fn matrix(&mut self, relation: Relation, indices: Vec<(&'static str, usize)>, m: RatMatrix) {
        if !self.wants(relation) {
            return;
        }
        self.checked += 1;
        if self.record {
            self.values.extend(m.as_slice().iter().cloned());
        }
        if !m.is_zero() {
            self.residuals.push(ConstraintResidual {
                relation,
                indices: indices.into_iter().map(|(n, i)| (n, i + 1)).collect(),
                residual: ResidualValue::Matrix(m),
            });
        }
    }

    fn scalar(&mut self, relation: Relation, indices: Vec<(&'static str, usize)>, x: Rational) {
        if !self.wants(relation) {
            return;
        }
        self.checked += 1;
        if self.record {
            self.values.push(x.clone());
        }
        if !x.is_zero() {
            self.residuals.push(ConstraintResidual {
                relation,
                indices: indices.into_iter().map(|(n, i)| (n, i + 1)).collect(),
                residual: ResidualValue::Scalar(x),
            });
        }
    }
}

fn combo(coeffs: impl IntoIterator<Item = Rational>, mats: &[RatMatrix], size: usize) -> RatMatrix {
    let mut out = RatMatrix::zeros(size, size);
    for (c, m) in coeffs.into_iter().zip(mats) {
        if !c.is_zero() {
            out = &out + &m.scale(&c);
        }
    }
    out
}

/// Evaluates every relation family over its full free-index range.
pub fn evaluate_constraints(cs: &CoefficientSet) -> ConstraintEvaluation {
    evaluate(cs, ConstraintEvaluation::default())
}

/// Every residual entry of the chosen relations, zeros included, in a fixed
/// order. Used to set up linear systems in the unknown families.
pub fn relation_values(cs: &CoefficientSet, relations: &[Relation]) -> Vec<Rational> {
    let ev = evaluate(
        cs,
        ConstraintEvaluation {
            only: Some(relations.to_vec()),
            record: true,
            ..Default::default()
        },
    );
    ev.values
}

fn evaluate(cs: &CoefficientSet, mut ev: ConstraintEvaluation) -> ConstraintEvaluation {
    let p = cs.parts();
    let c = &p.c;
    let (nx, nq, ny) = (cs.dim_l00(), cs.dim_l01(), cs.dim_l10());
    let xs = 0..nx;

    // XXX
    let even = ev.wants(Relation::EvenJacobi);
    for mu in xs.clone().filter(|_| even) {
        for nu in xs.clone() {
            for la in xs.clone() {
                let anti = c.get(mu, nu, la) + c.get(nu, mu, la);
                ev.scalar(
                    Relation::EvenJacobi,
                    vec![("mu", mu), ("nu", nu), ("lambda", la)],
                    anti,
                );
            }
        }
    }
    for mu in xs.clone().filter(|_| even) {
        for nu in xs.clone() {
            for rho in xs.clone() {
                for sg in xs.clone() {
                    let mut acc = Rational::zero();
                    for la in xs.clone() {
                        acc += c.get(nu, rho, la) * c.get(mu, la, sg)
                            + c.get(rho, mu, la) * c.get(nu, la, sg)
                            + c.get(mu, nu, la) * c.get(rho, la, sg);
                    }
                    ev.scalar(
                        Relation::EvenJacobi,
                        vec![("mu", mu), ("nu", nu), ("rho", rho), ("sigma", sg)],
                        acc,
                    );
                }
            }
        }
    }

    // XX*: representations of -C
    for (rel, mats, size) in [
        (Relation::KRepresentation, &p.k, nq),
        (Relation::URepresentation, &p.u, ny),
        (Relation::VRepresentation, &p.v, ny),
    ] {
        for mu in xs.clone() {
            for nu in xs.clone() {
                let lhs = mats[mu].commutator(&mats[nu]);
                let rhs = combo(xs.clone().map(|la| -c.get(mu, nu, la)), mats, size);
                ev.matrix(rel, vec![("mu", mu), ("nu", nu)], &lhs - &rhs);
            }
        }
    }

    // XQQ, XYY, XZZ
    for mu in xs.clone() {
        for nu in xs.clone() {
            let idx = vec![("mu", mu), ("nu", nu)];
            let kh = &p.k[mu] * &p.h[nu];
            let rhs = combo(xs.clone().map(|la| c.get(mu, la, nu)), &p.h, nq);
            ev.matrix(Relation::KH, idx.clone(), &(&kh + &kh.transpose()) - &rhs);

            let us = &p.u[mu] * &p.s[nu];
            let rhs = combo(xs.clone().map(|la| c.get(mu, la, nu)), &p.s, ny);
            ev.matrix(Relation::US, idx.clone(), &(&us + &us.transpose()) - &rhs);

            let lhs = &(&p.v[mu] * &p.t[nu]) + &(&p.t[nu] * &p.v[mu].transpose());
            let tt: Vec<_> = p.t.iter().map(RatMatrix::transpose).collect();
            let rhs = combo(xs.clone().map(|la| -c.get(mu, la, nu)), &tt, ny);
            ev.matrix(Relation::VT, idx, &lhs - &rhs);
        }
    }

    // XQY, XQZ, XYZ
    for a in 0..nq {
        for mu in xs.clone() {
            let idx = vec![("alpha", a), ("mu", mu)];
            let lhs = &(&p.l[a] * &p.v[mu]) - &(&p.u[mu] * &p.l[a]);
            let rhs = combo((0..nq).map(|b| p.k[mu][(a, b)].clone()), &p.l, ny);
            ev.matrix(Relation::LIntertwiner, idx.clone(), &lhs - &rhs);

            let lhs = &(&p.m[a] * &p.u[mu]) - &(&p.v[mu] * &p.m[a]);
            let rhs = combo((0..nq).map(|b| p.k[mu][(a, b)].clone()), &p.m, ny);
            ev.matrix(Relation::MIntertwiner, idx.clone(), &lhs - &rhs);

            let lhs = &(&p.u[mu] * &p.n[a]) + &(&p.n[a] * &p.v[mu].transpose());
            let rhs = combo((0..nq).map(|b| p.k[mu][(b, a)].clone()), &p.n, ny);
            ev.matrix(Relation::NIntertwiner, idx, &lhs - &rhs);
        }
    }

    // QQQ
    let hk = ev.wants(Relation::HK);
    for a in (0..nq).filter(|_| hk) {
        for b in 0..nq {
            for g in 0..nq {
                for d in 0..nq {
                    let mut acc = Rational::zero();
                    for mu in xs.clone() {
                        let (h, k) = (&p.h[mu], &p.k[mu]);
                        acc += &h[(a, b)] * &k[(g, d)]
                            + &h[(b, g)] * &k[(a, d)]
                            + &h[(g, a)] * &k[(b, d)];
                    }
                    ev.scalar(
                        Relation::HK,
                        vec![("alpha", a), ("beta", b), ("gamma", g), ("delta", d)],
                        acc,
                    );
                }
            }
        }
    }

    // QQY, QQZ, QYY, QZZ
    for a in 0..nq {
        for b in 0..nq {
            let idx = vec![("alpha", a), ("beta", b)];
            let h_ab = |mats: &[RatMatrix]| combo(xs.clone().map(|mu| p.h[mu][(a, b)].clone()), mats, ny);
            let k_ab = |mats: &[RatMatrix]| combo(xs.clone().map(|mu| p.k[mu][(a, b)].clone()), mats, ny);

            let lhs = &(&p.l[a] * &p.m[b]) + &(&p.l[b] * &p.m[a]);
            ev.matrix(Relation::LM, idx.clone(), &lhs - &h_ab(&p.u));

            let lhs = &(&p.m[b] * &p.l[a]) + &(&p.m[a] * &p.l[b]);
            ev.matrix(Relation::ML, idx.clone(), &lhs - &h_ab(&p.v));

            let ln = &p.l[a] * &p.n[b].transpose();
            let nl = &p.n[b] * &p.l[a].transpose();
            ev.matrix(Relation::LN, idx.clone(), &(&ln + &nl) + &k_ab(&p.s));

            let mn = &p.m[a] * &p.n[b];
            ev.matrix(Relation::MN, idx, &(&mn - &mn.transpose()) + &k_ab(&p.t));
        }
    }

    // QYZ
    for mu in xs.clone() {
        for a in 0..nq {
            let lhs = &(&p.s[mu] * &p.m[a].transpose()) + &(&p.l[a] * &p.t[mu]);
            let rhs = combo((0..nq).map(|b| p.h[mu][(a, b)].clone()), &p.n, ny);
            ev.matrix(Relation::SMLT, vec![("mu", mu), ("alpha", a)], &lhs - &rhs);
        }
    }

    // YYY, YYZ, YZZ, ZZZ
    let ys = 0..ny;
    let four_index = [Relation::SU, Relation::NL, Relation::NM, Relation::TV]
        .iter()
        .any(|&r| ev.wants(r));
    for i in ys.clone().filter(|_| four_index) {
        for j in ys.clone() {
            for k in ys.clone() {
                for l in ys.clone() {
                    let idx = vec![("i", i), ("j", j), ("k", k), ("l", l)];
                    let mut su = Rational::zero();
                    let mut tv = Rational::zero();
                    let mut sv = Rational::zero();
                    let mut tu = Rational::zero();
                    for mu in xs.clone() {
                        let (s, u, t, v) = (&p.s[mu], &p.u[mu], &p.t[mu], &p.v[mu]);
                        su += &s[(i, j)] * &u[(k, l)] + &s[(j, k)] * &u[(i, l)] + &s[(k, i)] * &u[(j, l)];
                        tv += &t[(i, j)] * &v[(k, l)] + &t[(j, k)] * &v[(i, l)] + &t[(k, i)] * &v[(j, l)];
                        sv += &s[(j, k)] * &v[(i, l)];
                        tu += &t[(k, i)] * &u[(j, l)];
                    }
                    let mut nl = Rational::zero();
                    let mut nm = Rational::zero();
                    for a in 0..nq {
                        let (n, l_, m) = (&p.n[a], &p.l[a], &p.m[a]);
                        nl += &n[(j, i)] * &l_[(k, l)] + &n[(k, i)] * &l_[(j, l)];
                        nm += &n[(j, i)] * &m[(k, l)] - &n[(j, k)] * &m[(i, l)];
                    }
                    ev.scalar(Relation::SU, idx.clone(), su);
                    ev.scalar(Relation::NL, idx.clone(), nl + sv);
                    ev.scalar(Relation::NM, idx.clone(), nm - tu);
                    ev.scalar(Relation::TV, idx, tv);
                }
            }
        }
    }

    ev.residuals.sort_by_key(|r| r.relation);
    ev
}

pub fn check_constraints(cs: &CoefficientSet, subject: &str) -> VerificationReport {
    let ev = evaluate_constraints(cs);
    let mut report = VerificationReport::new("constraints", subject);
    report.checked = ev.checked;
    report.failures = ev
        .residuals
        .iter()
        .map(|r| {
            let mut location = vec![r.relation.to_string()];
            location.extend(r.indices.iter().map(|(n, i)| format!("{n}={i}")));
            Failure {
                location,
                residual: match &r.residual {
                    ResidualValue::Matrix(m) => Residual::Matrix(crate::format::matrix_dto(m)),
                    ResidualValue::Scalar(x) => Residual::Scalar(rational::render(x)),
                },
            }
        })
        .collect();
    report
}

/// Generator naming for assembled algebras: `X1..`, `Q1..`, `Y1..`, `Z1..`
/// by default.
#[derive(Clone, Debug)]
pub struct NamingScheme {
    pub algebra: String,
    pub even: String,
    pub odd: String,
    pub parabose: String,
    pub parafermi: String,
}

impl Default for NamingScheme {
    fn default() -> Self {
        NamingScheme {
            algebra: "assembled".into(),
            even: "X".into(),
            odd: "Q".into(),
            parabose: "Y".into(),
            parafermi: "Z".into(),
        }
    }
}

impl NamingScheme {
    pub fn named(algebra: impl Into<String>) -> Self {
        NamingScheme {
            algebra: algebra.into(),
            ..Default::default()
        }
    }
}

/// Builds the algebra without checking the constraint relations. The
/// result is always closed and graded antisymmetric, but satisfies the
/// Jacobi identities only if the relations hold.
pub fn assemble_unchecked(cs: &CoefficientSet, names: &NamingScheme) -> GradedAlgebra {
    let p = cs.parts();
    let (nx, nq, ny) = (cs.dim_l00(), cs.dim_l01(), cs.dim_l10());
    let (x0, q0, y0, z0) = (0, nx, nx + nq, nx + nq + ny);
    let mut gens = Vec::with_capacity(nx + nq + 2 * ny);
    for (prefix, count, deg) in [
        (&names.even, nx, Degree::D00),
        (&names.odd, nq, Degree::D01),
        (&names.parabose, ny, Degree::D10),
        (&names.parafermi, ny, Degree::D11),
    ] {
        gens.extend((1..=count).map(|i| Generator::new(format!("{prefix}{i}"), deg)));
    }

    let mut products = Vec::new();
    let mut push = |a: usize, b: usize, terms: LinComb| {
        if !terms.is_zero() {
            products.push((a, b, terms));
        }
    };
    let row = |m: &RatMatrix, i: usize, offset: usize| -> LinComb {
        (0..m.cols()).map(|j| (offset + j, m[(i, j)].clone())).collect()
    };

    for mu in 0..nx {
        for nu in 0..nx {
            push(
                x0 + mu,
                x0 + nu,
                (0..nx).map(|la| (x0 + la, p.c.get(mu, nu, la))).collect(),
            );
        }
        for a in 0..nq {
            push(x0 + mu, q0 + a, row(&p.k[mu], a, q0));
        }
        for i in 0..ny {
            push(x0 + mu, y0 + i, row(&p.u[mu], i, y0));
            push(x0 + mu, z0 + i, row(&p.v[mu], i, z0));
        }
    }
    for a in 0..nq {
        for b in 0..nq {
            push(
                q0 + a,
                q0 + b,
                (0..nx).map(|mu| (x0 + mu, p.h[mu][(a, b)].clone())).collect(),
            );
        }
        for i in 0..ny {
            push(q0 + a, y0 + i, row(&p.l[a], i, z0));
            push(q0 + a, z0 + i, row(&p.m[a], i, y0));
        }
    }
    for i in 0..ny {
        for j in 0..ny {
            push(
                y0 + i,
                y0 + j,
                (0..nx).map(|mu| (x0 + mu, p.s[mu][(i, j)].clone())).collect(),
            );
            push(
                z0 + i,
                z0 + j,
                (0..nx).map(|mu| (x0 + mu, p.t[mu][(i, j)].clone())).collect(),
            );
            push(
                y0 + i,
                z0 + j,
                (0..nq).map(|a| (q0 + a, p.n[a][(i, j)].clone())).collect(),
            );
        }
    }
    GradedAlgebra::from_products(names.algebra.clone(), gens, products)
        .expect("assembled generator names are unique and indices in range")
}

/// Builds the algebra, refusing coefficient sets that violate a relation.
pub fn assemble(cs: &CoefficientSet, names: &NamingScheme) -> Result<GradedAlgebra> {
    let ev = evaluate_constraints(cs);
    if !ev.passed() {
        return Err(Error::ConstraintsFailed {
            failures: ev.residuals.len(),
        });
    }
    Ok(assemble_unchecked(cs, names))
}

/// Reads the structure constants and coefficient matrices off an algebra.
///
/// Generators are grouped by degree in their listed order. The algebra must
/// be closed under the grading and graded antisymmetric, and its `L10` and
/// `L11` blocks must have equal dimension.
pub fn decompose(alg: &GradedAlgebra) -> Result<CoefficientSet> {
    let mut blocks: [Vec<usize>; 4] = Default::default();
    for i in 0..alg.len() {
        blocks[alg.degree(i).index()].push(i);
    }
    let [xs, qs, ys, zs] = &blocks;
    if ys.len() != zs.len() {
        return Err(Error::Shape(format!(
            "L10 has {} generators but L11 has {}",
            ys.len(),
            zs.len()
        )));
    }
    if let Some(f) = alg.check_closure().failures.first() {
        return Err(Error::Shape(format!(
            "product {} ∘ {} leaves its degree subspace",
            f.location[0], f.location[1]
        )));
    }
    if let Some(f) = alg.check_antisymmetry().failures.first() {
        return Err(Error::Shape(format!(
            "products of {} and {} are not graded antisymmetric",
            f.location[0], f.location[1]
        )));
    }
    let (nx, nq, ny) = (xs.len(), qs.len(), ys.len());
    let coeff = |a: usize, b: usize, k: usize| -> Rational {
        alg.product_of(a, b).map(|lc| lc.coeff(k)).unwrap_or_else(Rational::zero)
    };
    let mat = |n: usize, f: &dyn Fn(usize, usize) -> Rational| {
        RatMatrix::from_rows((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    };

    let mut c = StructureConstants::new(nx);
    for (mu, &xm) in xs.iter().enumerate() {
        for (nu, &xn) in xs.iter().enumerate() {
            for (la, &xl) in xs.iter().enumerate() {
                c.set(mu, nu, la, coeff(xm, xn, xl))?;
            }
        }
    }
    let parts = CoefficientParts {
        dim_l01: nq,
        dim_l10: ny,
        k: xs.iter().map(|&x| mat(nq, &|a, b| coeff(x, qs[a], qs[b]))).collect(),
        h: (0..nx).map(|mu| mat(nq, &|a, b| coeff(qs[a], qs[b], xs[mu]))).collect(),
        s: (0..nx).map(|mu| mat(ny, &|i, j| coeff(ys[i], ys[j], xs[mu]))).collect(),
        t: (0..nx).map(|mu| mat(ny, &|i, j| coeff(zs[i], zs[j], xs[mu]))).collect(),
        u: xs.iter().map(|&x| mat(ny, &|i, j| coeff(x, ys[i], ys[j]))).collect(),
        v: xs.iter().map(|&x| mat(ny, &|i, j| coeff(x, zs[i], zs[j]))).collect(),
        l: qs.iter().map(|&q| mat(ny, &|i, j| coeff(q, ys[i], zs[j]))).collect(),
        m: qs.iter().map(|&q| mat(ny, &|i, j| coeff(q, zs[i], ys[j]))).collect(),
        n: (0..nq).map(|a| mat(ny, &|i, j| coeff(ys[i], zs[j], qs[a]))).collect(),
        c,
    };
    CoefficientSet::try_from(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::jacobi::check_all_jacobi;
    use crate::rational::{frac, int};

    #[test]
    fn published_solution_satisfies_every_relation() {
        let ev = evaluate_constraints(&catalog::u11_z22_coefficients());
        assert!(ev.passed(), "{:?}", ev.failing_relations());
        assert_eq!(ev.checked, 864);
    }

    #[test]
    fn scaling_k1_breaks_the_representation_relation() {
        let cs = catalog::u11_z22_coefficients();
        let mut parts = cs.into_parts();
        parts.k[0] = parts.k[0].scale(&int(2));
        let bad = CoefficientSet::try_from(parts).unwrap();
        let ev = evaluate_constraints(&bad);
        assert!(ev.failing_relations().contains(&Relation::KRepresentation));
    }

    #[test]
    fn trivial_grading_passes() {
        let zero = CoefficientSet::zero(catalog::u11_structure_constants(), 4, 2).unwrap();
        assert!(evaluate_constraints(&zero).passed());
        let alg = assemble(&zero, &NamingScheme::default()).unwrap();
        for ((a, b), _) in alg.entries() {
            assert_eq!(alg.degree(a), Degree::D00);
            assert_eq!(alg.degree(b), Degree::D00);
        }
        assert_eq!(alg.entry_count(), 6);
        assert_eq!(decompose(&alg).unwrap(), zero);
    }

    #[test]
    fn shape_rules_enforced() {
        let cs = catalog::u11_z22_coefficients();
        let mut parts = cs.parts().clone();
        parts.h[0][(0, 1)] = int(7);
        assert!(matches!(CoefficientSet::try_from(parts), Err(Error::Shape(_))));

        let mut parts = cs.parts().clone();
        parts.t[3][(0, 0)] = int(1);
        assert!(CoefficientSet::try_from(parts).is_err());

        let mut parts = cs.parts().clone();
        parts.l.pop();
        assert!(CoefficientSet::try_from(parts).is_err());

        assert!(cs.with_entry(Family::T, 3, 1, 1, int(1)).is_err());
        let h = cs.with_entry(Family::H, 1, 0, 3, frac(1, 2)).unwrap();
        assert_eq!(h.family(Family::H)[1][(3, 0)], frac(1, 2));
    }

    #[test]
    fn assemble_examples() {
        let alg = assemble(
            &catalog::u11_z22_coefficients(),
            &NamingScheme::default(),
        )
        .unwrap();
        assert_eq!(alg.len(), 12);
        assert_eq!(
            alg.product_named("Z1", "Z2").unwrap(),
            alg.combination([("X4", int(4))]).unwrap()
        );
        assert_eq!(
            alg.product_named("Q2", "Q3").unwrap(),
            alg.combination([("X2", int(2))]).unwrap()
        );
    }

    #[test]
    fn assemble_refuses_invalid_sets() {
        let cs = catalog::u11_z22_coefficients()
            .with_entry(Family::L, 0, 0, 1, int(2))
            .unwrap();
        assert!(matches!(
            assemble(&cs, &NamingScheme::default()),
            Err(Error::ConstraintsFailed { .. })
        ));
    }

    #[test]
    fn decompose_inverts_assemble() {
        let cs = catalog::u11_z22_coefficients();
        let alg = assemble(&cs, &NamingScheme::named("u11-z22")).unwrap();
        let back = decompose(&alg).unwrap();
        assert_eq!(back, cs);
        assert_eq!(assemble(&back, &NamingScheme::named("u11-z22")).unwrap(), alg);
    }

    #[test]
    fn decompose_rejects_out_of_shape_products() {
        let alg = catalog::u11_z22_algebra();
        let y1 = alg.generator("Y1").unwrap();
        let bad = alg.with_product("X1", "Q1", y1).unwrap();
        assert!(matches!(decompose(&bad), Err(Error::Shape(_))));
    }

    /// Permuting the Q basis by `π` conjugates K and H and permutes l, m, n.
    #[test]
    fn decompose_tracks_a_permuted_odd_basis() {
        let alg = catalog::u11_z22_algebra();
        let perm = [2usize, 0, 3, 1]; // new Q_a is old Q_{perm[a]}
        let mut order: Vec<usize> = (0..4).collect();
        order.extend(perm.iter().map(|&p| 4 + p));
        order.extend(8..12);
        let permuted = alg.select(&order, "permuted").unwrap();
        let cs = decompose(&permuted).unwrap();
        let orig = catalog::u11_z22_coefficients();

        let mut pm = RatMatrix::zeros(4, 4);
        for (a, &p) in perm.iter().enumerate() {
            pm[(a, p)] = int(1);
        }
        let conj = |m: &RatMatrix| &(&pm * m) * &pm.transpose();
        for mu in 0..4 {
            assert_eq!(cs.family(Family::K)[mu], conj(&orig.family(Family::K)[mu]));
            assert_eq!(cs.family(Family::H)[mu], conj(&orig.family(Family::H)[mu]));
        }
        for (a, &p) in perm.iter().enumerate() {
            for f in [Family::L, Family::M, Family::N] {
                assert_eq!(cs.family(f)[a], orig.family(f)[p]);
            }
        }
        assert!(evaluate_constraints(&cs).passed());
        let id2 = RatMatrix::identity(2);
        assert_eq!(orig.signed_permuted(&pm, &id2, &id2).unwrap(), cs);
    }

    #[test]
    fn signed_permutation_examples() {
        let cs = catalog::u11_z22_coefficients();
        let flip = |signs: &[i64]| {
            let mut d = RatMatrix::zeros(signs.len(), signs.len());
            for (i, &x) in signs.iter().enumerate() {
                d[(i, i)] = int(x);
            }
            d
        };
        // Diagonal signs agree with the rescaling path.
        let (q, y, z) = ([1, -1, -1, 1], [-1, 1], [1, -1]);
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(
            cs.signed_permuted(&flip(&q), &flip(&y), &flip(&z)).unwrap(),
            cs.rescaled(&ints(&q), &ints(&y), &ints(&z)).unwrap()
        );
        // Swapping Y1, Y2 together with Z1, Z2 is a basis change, so validity survives.
        let swap = RatMatrix::from_ints(int(1), &[&[0, 1], &[1, 0]]);
        let swapped = cs.signed_permuted(&RatMatrix::identity(4), &swap, &swap).unwrap();
        assert!(evaluate_constraints(&swapped).passed());
        assert_ne!(swapped, cs);
        assert!(cs.signed_permuted(&flip(&[1, 2, 1, 1]), &swap, &swap).is_err());
        assert!(cs.signed_permuted(&RatMatrix::identity(3), &swap, &swap).is_err());
    }

    #[test]
    fn rescaling_preserves_validity() {
        let cs = catalog::u11_z22_coefficients();
        let q = [int(2), frac(-1, 3), int(5), int(1)];
        let y = [frac(1, 2), int(-3)];
        let z = [int(7), frac(2, 5)];
        let r = cs.rescaled(&q, &y, &z).unwrap();
        assert!(evaluate_constraints(&r).passed());
        assert!(check_all_jacobi(&assemble(&r, &NamingScheme::default()).unwrap()).passed());
        assert!(cs.rescaled(&q, &y, &[int(0), int(1)]).is_err());
    }
}
