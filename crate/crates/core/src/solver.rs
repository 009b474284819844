//! Staged search for coefficient sets.
//!
//! 1. Representation: keep candidate tuples that represent `-C`.
//! 2. Linear: with `K`, `u`, `v` fixed, the relations on `H`, `s`, `t` are
//!    linear; compute their exact solution spaces.
//! 3. Bilinear: with `K, H, s, t, u, v` fixed, each of `l`, `n`, `m` has a
//!    relation linear in that family alone. `l` and `n` are enumerated from
//!    their solution spaces over the entry pool, pairs are filtered by the
//!    relations coupling `l` and `n`, and `m` is then solved linearly.
//!
//! Every emitted solution is re-verified with the full constraint check.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::format::{coefficients_to_dto, parse_json, CoefficientSetDto};
use crate::jacobi::thread_pool;
use crate::matrix::{AffineSolution, RatMatrix};
use crate::rational::{self, frac, int, Rational};
use crate::structure::{
    evaluate_constraints, relation_values, CoefficientParts, CoefficientSet, Family, Relation,
    StructureConstants,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stages {
    pub representation: bool,
    pub linear: bool,
    pub bilinear: bool,
}

impl Default for Stages {
    fn default() -> Self {
        Stages {
            representation: true,
            linear: true,
            bilinear: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub dim_l01: usize,
    pub dim_l10: usize,
    /// Distinct values, in enumeration order.
    pub entry_pool: Vec<Rational>,
    /// Maximum number of nonzero entries in any single `l`, `m` or `n` matrix.
    pub sparsity_budget: usize,
    pub stages: Stages,
    /// Largest number of candidates any single enumeration may visit.
    pub cap: u128,
    /// Drop solutions equal to an earlier one up to the sign flip
    /// `(l, m, n) -> (-l, -m, -n)`.
    pub canonicalize: bool,
    pub workers: usize,
}

pub const DEFAULT_CAP: u128 = 10_000_000;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dim_l01: 4,
            dim_l10: 2,
            entry_pool: vec![int(-2), int(-1), frac(-1, 2), int(0), frac(1, 2), int(1), int(2)],
            sparsity_budget: 2,
            stages: Stages::default(),
            cap: DEFAULT_CAP,
            canonicalize: false,
            workers: 1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim_l01 == 0 || self.dim_l10 == 0 {
            return Err(Error::Parameter("dimL01 and dimL10 must be positive".into()));
        }
        if self.entry_pool.is_empty() {
            return Err(Error::Parameter("entry pool must be nonempty".into()));
        }
        let distinct: HashSet<_> = self.entry_pool.iter().collect();
        if distinct.len() != self.entry_pool.len() {
            return Err(Error::Parameter("entry pool has repeated values".into()));
        }
        if self.workers == 0 {
            return Err(Error::Parameter("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

/// JSON form of [`SolverConfig`]; every field is optional.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SolverConfigDto {
    #[serde(rename = "dimL01")]
    pub dim_l01: Option<usize>,
    #[serde(rename = "dimL10")]
    pub dim_l10: Option<usize>,
    pub entry_pool: Option<Vec<String>>,
    pub sparsity_budget: Option<usize>,
    pub stages: Option<Stages>,
    pub cap: Option<u128>,
    pub canonicalize: Option<bool>,
}

impl SolverConfigDto {
    pub fn into_config(self) -> Result<SolverConfig> {
        let d = SolverConfig::default();
        let entry_pool = match self.entry_pool {
            Some(pool) => pool
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    rational::parse(s).map_err(|e| Error::Json {
                        path: format!("entryPool[{i}]"),
                        message: e.to_string(),
                    })
                })
                .collect::<Result<_>>()?,
            None => d.entry_pool,
        };
        let cfg = SolverConfig {
            dim_l01: self.dim_l01.unwrap_or(d.dim_l01),
            dim_l10: self.dim_l10.unwrap_or(d.dim_l10),
            entry_pool,
            sparsity_budget: self.sparsity_budget.unwrap_or(d.sparsity_budget),
            stages: self.stages.unwrap_or(d.stages),
            cap: self.cap.unwrap_or(d.cap),
            canonicalize: self.canonicalize.unwrap_or(d.canonicalize),
            workers: d.workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn parse_config(text: &str) -> Result<SolverConfig> {
    parse_json::<SolverConfigDto>(text)?.into_config()
}

/// Parses a comma-separated pool such as `-1,0,1/2,2`.
pub fn parse_pool(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|s| rational::parse(s.trim())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: &'static str,
    pub quantity: String,
    pub value: u64,
}

#[derive(Clone, Debug, Default)]
pub struct SolverOutput {
    pub solutions: Vec<CoefficientSet>,
    pub stage_log: Vec<StageRecord>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolverOutputDto {
    pub solutions: Vec<CoefficientSetDto>,
    pub stage_log: Vec<StageRecord>,
}

impl SolverOutput {
    pub fn to_dto(&self) -> SolverOutputDto {
        SolverOutputDto {
            solutions: self.solutions.iter().map(coefficients_to_dto).collect(),
            stage_log: self.stage_log.clone(),
        }
    }

    fn log(&mut self, stage: &'static str, quantity: impl Into<String>, value: usize) {
        self.stage_log.push(StageRecord {
            stage,
            quantity: quantity.into(),
            value: value as u64,
        });
    }
}

/// How a family's matrices are packed into an unknown vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Packing {
    General,
    Symmetric,
    Antisymmetric,
}

impl Packing {
    fn for_family(f: Family) -> Packing {
        match f {
            Family::H | Family::S => Packing::Symmetric,
            Family::T => Packing::Antisymmetric,
            _ => Packing::General,
        }
    }

    /// Independent `(row, col)` slots of one matrix, row-major.
    fn slots(self, size: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..size {
            for j in 0..size {
                let keep = match self {
                    Packing::General => true,
                    Packing::Symmetric => i <= j,
                    Packing::Antisymmetric => i < j,
                };
                if keep {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Linear space of tuples of `count` square matrices of size `size`.
#[derive(Clone, Debug)]
pub struct FamilySpace {
    pub family: Family,
    pub count: usize,
    pub size: usize,
    packing: Packing,
    slots: Vec<(usize, usize)>,
}

impl FamilySpace {
    pub fn new(family: Family, count: usize, size: usize) -> Self {
        let packing = Packing::for_family(family);
        FamilySpace {
            family,
            count,
            size,
            packing,
            slots: packing.slots(size),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.count * self.slots.len()
    }

    /// Which matrix of the tuple an unknown belongs to.
    fn matrix_of(&self, unknown: usize) -> usize {
        unknown / self.slots.len()
    }

    pub fn unpack(&self, x: &[Rational]) -> Vec<RatMatrix> {
        x.chunks(self.slots.len())
            .map(|chunk| {
                let mut m = RatMatrix::zeros(self.size, self.size);
                for (&(i, j), v) in self.slots.iter().zip(chunk) {
                    m[(i, j)] = v.clone();
                    match self.packing {
                        Packing::Symmetric => m[(j, i)] = v.clone(),
                        Packing::Antisymmetric => m[(j, i)] = -v.clone(),
                        Packing::General => {}
                    }
                }
                m
            })
            .collect()
    }

    pub fn pack(&self, mats: &[RatMatrix]) -> Vec<Rational> {
        mats.iter()
            .flat_map(|m| self.slots.iter().map(move |&(i, j)| m[(i, j)].clone()))
            .collect()
    }
}

/// `residual(x) = A x + b` for a residual map affine in `x`, recovered by
/// probing the origin and the unit vectors.
fn linearize(n: usize, residual: impl Fn(&[Rational]) -> Vec<Rational>) -> (RatMatrix, Vec<Rational>) {
    let mut x = vec![Rational::zero(); n];
    let b = residual(&x);
    let mut a = RatMatrix::zeros(b.len(), n);
    for j in 0..n {
        x[j] = Rational::one();
        let col = residual(&x);
        x[j] = Rational::zero();
        for (i, (cj, bi)) in col.iter().zip(&b).enumerate() {
            a[(i, j)] = cj - bi;
        }
    }
    (a, b)
}

fn with_family(cs: &CoefficientSet, f: Family, mats: Vec<RatMatrix>) -> CoefficientSet {
    let mut parts = cs.parts().clone();
    *parts.family_mut(f) = mats;
    CoefficientSet::try_from(parts).expect("packing preserves family shapes")
}

/// Solution set of the chosen relations in family `f`, other families fixed.
fn affine_space(cs: &CoefficientSet, f: Family, relations: &[Relation]) -> (FamilySpace, Option<AffineSolution>) {
    let space = FamilySpace::new(f, cs.family(f).len(), cs.family(f)[0].rows());
    let (a, b) = linearize(space.unknowns(), |x| {
        relation_values(&with_family(cs, f, space.unpack(x)), relations)
    });
    let rhs: Vec<Rational> = b.into_iter().map(|v| -v).collect();
    let sol = AffineSolution::solve(&a, &rhs);
    (space, sol)
}

// ---------------------------------------------------------------------------
// Stage 1

pub fn is_representation(c: &StructureConstants, mats: &[RatMatrix]) -> bool {
    let Some(first) = mats.first() else {
        return false;
    };
    let dim = first.rows();
    if mats.len() != c.dim() || mats.iter().any(|m| m.shape() != (dim, dim)) {
        return false;
    }
    (0..c.dim()).all(|mu| {
        (0..c.dim()).all(|nu| {
            let mut rhs = RatMatrix::zeros(dim, dim);
            for (la, m) in mats.iter().enumerate() {
                rhs = &rhs - &m.scale(&c.get(mu, nu, la));
            }
            mats[mu].commutator(&mats[nu]) == rhs
        })
    })
}

/// Keeps exactly the tuples that represent `-C` on `dim`-dimensional space.
pub fn representation_stage(
    c: &StructureConstants,
    dim: usize,
    candidates: &[Vec<RatMatrix>],
) -> Vec<Vec<RatMatrix>> {
    candidates
        .iter()
        .filter(|t| t.first().is_some_and(|m| m.rows() == dim) && is_representation(c, t))
        .cloned()
        .collect()
}

fn direct_sum(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.rows() + b.rows();
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m[(a.rows() + i, a.rows() + j)] = b[(i, j)].clone();
        }
    }
    m
}

/// Low-dimensional candidate tuples: always the zero tuple; for u(1,1) also
/// the published `K`, `u`, `v` and direct sums of two-dimensional blocks
/// (the doublet with an `X4` charge, or two `X4` charges).
pub fn builtin_representation_candidates(c: &StructureConstants, dim: usize) -> Vec<Vec<RatMatrix>> {
    let mut out = vec![vec![RatMatrix::zeros(dim, dim); c.dim()]];
    if *c != catalog::u11_structure_constants() {
        return out;
    }
    let published = catalog::u11_z22_coefficients();
    for f in [Family::K, Family::U, Family::V] {
        if published.family(f)[0].rows() == dim {
            out.push(published.family(f).to_vec());
        }
    }
    let charges = [frac(-1, 2), int(0), frac(1, 2)];
    let doublet = published.family(Family::U);
    let mut blocks: Vec<Vec<RatMatrix>> = Vec::new();
    for q in &charges {
        let mut b = doublet[..3].to_vec();
        b.push(RatMatrix::identity(2).scale(q));
        blocks.push(b);
    }
    for q1 in &charges {
        for q2 in &charges {
            let mut b = vec![RatMatrix::zeros(2, 2); 3];
            let mut x4 = RatMatrix::zeros(2, 2);
            x4[(0, 0)] = q1.clone();
            x4[(1, 1)] = q2.clone();
            b.push(x4);
            blocks.push(b);
        }
    }
    match dim {
        2 => out.extend(blocks),
        4 => {
            for a in &blocks {
                for b in &blocks {
                    out.push(a.iter().zip(b).map(|(x, y)| direct_sum(x, y)).collect());
                }
            }
        }
        _ => {}
    }
    out
}

// ---------------------------------------------------------------------------
// Stage 2

/// Exact basis of a homogeneous solution space inside a family's packing.
#[derive(Clone, Debug)]
pub struct Nullspace {
    pub space: FamilySpace,
    pub basis: Vec<Vec<Rational>>,
}

impl Nullspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrices(&self) -> Vec<Vec<RatMatrix>> {
        self.basis.iter().map(|v| self.space.unpack(v)).collect()
    }

    /// Exact membership: the packed tuple lies in the span of the basis and
    /// has the packing's symmetry.
    pub fn contains(&self, mats: &[RatMatrix]) -> bool {
        if mats.len() != self.space.count {
            return false;
        }
        let packed = self.space.pack(mats);
        if self.space.unpack(&packed) != mats {
            return false;
        }
        let n = self.space.unknowns();
        let mut rows: Vec<Vec<Rational>> = self.basis.clone();
        let before = RatMatrix::from_rows(rows.clone()).rank();
        rows.push(packed);
        let stacked = if self.basis.is_empty() {
            RatMatrix::from_rows(vec![rows.pop().unwrap()])
        } else {
            RatMatrix::from_rows(rows)
        };
        debug_assert_eq!(stacked.cols(), n);
        stacked.rank() == before
    }
}

#[derive(Clone, Debug)]
pub struct LinearStage {
    pub h: Nullspace,
    pub s: Nullspace,
    pub t: Nullspace,
}

/// Solution spaces for `H` (from the XQQ and QQQ relations), `s` (XYY,
/// YYY) and `t` (XZZ, ZZZ) with `C`, `K`, `u`, `v` fixed.
pub fn linear_stage(
    c: &StructureConstants,
    k: &[RatMatrix],
    u: &[RatMatrix],
    v: &[RatMatrix],
) -> Result<LinearStage> {
    let (nq, ny) = (
        k.first().map_or(0, RatMatrix::rows),
        u.first().map_or(0, RatMatrix::rows),
    );
    let mut base = CoefficientSet::zero(c.clone(), nq, ny)?.into_parts();
    base.k = k.to_vec();
    base.u = u.to_vec();
    base.v = v.to_vec();
    let base = CoefficientSet::try_from(base)?;
    let null = |f: Family, rels: &[Relation]| -> Nullspace {
        let space = FamilySpace::new(f, base.family(f).len(), base.family(f)[0].rows());
        let (a, _) = linearize(space.unknowns(), |x| {
            relation_values(&with_family(&base, f, space.unpack(x)), rels)
        });
        Nullspace {
            basis: a.nullspace(),
            space,
        }
    };
    Ok(LinearStage {
        h: null(Family::H, &[Relation::KH, Relation::HK]),
        s: null(Family::S, &[Relation::US, Relation::SU]),
        t: null(Family::T, &[Relation::VT, Relation::TV]),
    })
}

// ---------------------------------------------------------------------------
// Stage 3

struct Enumeration<'a> {
    space: &'a FamilySpace,
    sol: &'a AffineSolution,
    pool: &'a [Rational],
    budget: usize,
    out: Vec<Vec<RatMatrix>>,
    visited: usize,
}

impl Enumeration<'_> {
    /// Depth-first over the free unknowns in index order, values in pool
    /// order, pruning on per-matrix nonzero counts.
    fn run(&mut self, values: &mut Vec<Rational>, nonzero: &mut Vec<usize>) {
        let depth = values.len();
        if depth == self.sol.free.len() {
            self.visited += 1;
            let x = self.sol.evaluate(values);
            let pivots_ok = self.sol.pivots.iter().all(|&p| self.pool.contains(&x[p]));
            if !pivots_ok {
                return;
            }
            let mats = self.space.unpack(&x);
            if mats.iter().all(|m| m.nonzero_count() <= self.budget) {
                self.out.push(mats);
            }
            return;
        }
        let mat = self.space.matrix_of(self.sol.free[depth]);
        for value in self.pool {
            let nz = !value.is_zero();
            if nz && nonzero[mat] + 1 > self.budget {
                continue;
            }
            if nz {
                nonzero[mat] += 1;
            }
            values.push(value.clone());
            self.run(values, nonzero);
            values.pop();
            if nz {
                nonzero[mat] -= 1;
            }
        }
    }
}

fn estimate(pool: usize, free: usize) -> u128 {
    (pool as u128).checked_pow(free as u32).unwrap_or(u128::MAX)
}

fn enumerate_family(
    space: &FamilySpace,
    sol: &AffineSolution,
    config: &SolverConfig,
    stage: &str,
) -> Result<(Vec<Vec<RatMatrix>>, usize)> {
    let estimated = estimate(config.entry_pool.len(), sol.free.len());
    if estimated > config.cap {
        return Err(Error::SearchCap {
            stage: stage.to_string(),
            estimated,
            cap: config.cap,
        });
    }
    let mut e = Enumeration {
        space,
        sol,
        pool: &config.entry_pool,
        budget: config.sparsity_budget,
        out: Vec::new(),
        visited: 0,
    };
    e.run(&mut Vec::new(), &mut vec![0; space.count]);
    Ok((e.out, e.visited))
}

#[derive(Default)]
struct PairOutcome {
    pairs_surviving: usize,
    m_enumerated: usize,
    m_candidates: usize,
    solutions: Vec<CoefficientSet>,
}

const PAIR_RELATIONS: [Relation; 2] = [Relation::LN, Relation::NL];
const M_RELATIONS: [Relation; 6] = [
    Relation::MIntertwiner,
    Relation::LM,
    Relation::ML,
    Relation::SMLT,
    Relation::MN,
    Relation::NM,
];

fn process_l(
    base: &CoefficientSet,
    l: &[RatMatrix],
    ns: &[Vec<RatMatrix>],
    config: &SolverConfig,
) -> Result<PairOutcome> {
    let mut out = PairOutcome::default();
    let with_l = with_family(base, Family::L, l.to_vec());
    for n in ns {
        let cs = with_family(&with_l, Family::N, n.clone());
        if relation_values(&cs, &PAIR_RELATIONS).iter().any(|x| !x.is_zero()) {
            continue;
        }
        out.pairs_surviving += 1;
        let (space, sol) = affine_space(&cs, Family::M, &M_RELATIONS);
        let Some(sol) = sol else { continue };
        let (ms, visited) = enumerate_family(&space, &sol, config, "bilinear: m")?;
        out.m_enumerated += visited;
        out.m_candidates += ms.len();
        for m in ms {
            let full = with_family(&cs, Family::M, m);
            if evaluate_constraints(&full).passed() {
                out.solutions.push(full);
            }
        }
    }
    Ok(out)
}

/// Enumerates `l`, `m`, `n` for fixed `C, K, H, s, t, u, v` (the `l`, `m`,
/// `n` of `partial` are ignored). Errors if an enumeration would exceed the
/// configured cap.
pub fn bilinear_stage(partial: &CoefficientSet, config: &SolverConfig) -> Result<SolverOutput> {
    config.validate()?;
    let mut output = SolverOutput::default();
    let mut base = partial.parts().clone();
    for f in [Family::L, Family::M, Family::N] {
        for m in base.family_mut(f) {
            *m = RatMatrix::zeros(m.rows(), m.cols());
        }
    }
    let base = CoefficientSet::try_from(base)?;

    let mut lists = Vec::new();
    for (f, rel, label) in [
        (Family::L, Relation::LIntertwiner, "l"),
        (Family::N, Relation::NIntertwiner, "n"),
    ] {
        let (space, sol) = affine_space(&base, f, &[rel]);
        let found = match sol {
            Some(sol) => {
                output.log("bilinear", format!("{label} free unknowns"), sol.free.len());
                let (found, visited) = enumerate_family(&space, &sol, config, &format!("bilinear: {label}"))?;
                output.log("bilinear", format!("{label} candidates enumerated"), visited);
                found
            }
            None => Vec::new(),
        };
        output.log("bilinear", format!("{label} candidates surviving"), found.len());
        lists.push(found);
    }
    let (ls, ns) = (&lists[0], &lists[1]);
    let pairs = ls.len() * ns.len();
    if pairs as u128 > config.cap {
        return Err(Error::SearchCap {
            stage: "bilinear: l x n pairs".into(),
            estimated: pairs as u128,
            cap: config.cap,
        });
    }
    output.log("bilinear", "l,n pairs enumerated", pairs);

    let outcomes: Vec<Result<PairOutcome>> = thread_pool(config.workers)?.install(|| {
        ls.par_iter()
            .map(|l| process_l(&base, l, ns, config))
            .collect()
    });
    let mut pairs_surviving = 0;
    let mut m_enumerated = 0;
    let mut m_candidates = 0;
    for o in outcomes {
        let o = o?;
        pairs_surviving += o.pairs_surviving;
        m_enumerated += o.m_enumerated;
        m_candidates += o.m_candidates;
        output.solutions.extend(o.solutions);
    }
    output.log("bilinear", "l,n pairs surviving", pairs_surviving);
    output.log("bilinear", "m candidates enumerated", m_enumerated);
    output.log("bilinear", "m candidates surviving", m_candidates);
    output.log("bilinear", "verified solutions", output.solutions.len());

    if config.canonicalize {
        let before = output.solutions.len();
        output.solutions = canonical_dedupe(partial, output.solutions, config.cap)?;
        output.log("canonicalize", "solutions removed", before - output.solutions.len());
    }
    Ok(output)
}

/// All `n! 2^n` signed permutation matrices of size `n`, in a fixed order.
fn signed_permutations(n: usize) -> Vec<RatMatrix> {
    fn perms(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            perms(rest, prefix, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut all = Vec::new();
    perms(&mut (0..n).collect(), &mut Vec::new(), &mut all);
    let mut out = Vec::new();
    for perm in all {
        for signs in 0..1u32 << n {
            let mut m = RatMatrix::zeros(n, n);
            for (row, &col) in perm.iter().enumerate() {
                m[(row, col)] = if signs >> row & 1 == 1 { int(-1) } else { int(1) };
            }
            out.push(m);
        }
    }
    out
}

fn factorial_signs(n: usize) -> u128 {
    (1..=n as u128).product::<u128>() << n
}

/// Signed permutations of the Q, Y and Z bases that fix `K, H, s, t, u, v`.
/// The blocks do not interact, so each is found separately.
fn partial_stabilizer(partial: &CoefficientSet) -> Result<Vec<[RatMatrix; 3]>> {
    let fixed = partial_of(partial);
    let (n01, n10) = (partial.dim_l01(), partial.dim_l10());
    let (iq, iy) = (RatMatrix::identity(n01), RatMatrix::identity(n10));
    let keep = |g: &RatMatrix, slot: usize| -> Result<bool> {
        let t = match slot {
            0 => fixed.signed_permuted(g, &iy, &iy)?,
            1 => fixed.signed_permuted(&iq, g, &iy)?,
            _ => fixed.signed_permuted(&iq, &iy, g)?,
        };
        Ok(t == fixed)
    };
    let mut blocks: Vec<Vec<RatMatrix>> = Vec::new();
    for (slot, n) in [n01, n10, n10].into_iter().enumerate() {
        let mut kept = Vec::new();
        for g in signed_permutations(n) {
            if keep(&g, slot)? {
                kept.push(g);
            }
        }
        blocks.push(kept);
    }
    let mut group = Vec::new();
    for q in &blocks[0] {
        for y in &blocks[1] {
            for z in &blocks[2] {
                group.push([q.clone(), y.clone(), z.clone()]);
            }
        }
    }
    Ok(group)
}

fn lmn_key(cs: &CoefficientSet) -> Vec<Rational> {
    [Family::L, Family::M, Family::N]
        .iter()
        .flat_map(|&f| cs.family(f).iter().flat_map(|m| m.as_slice().iter().cloned()))
        .collect()
}

/// Keeps the first solution of each orbit under the signed permutations that
/// fix the partial set. Solutions are reported as found, not in canonical form.
fn canonical_dedupe(
    partial: &CoefficientSet,
    solutions: Vec<CoefficientSet>,
    cap: u128,
) -> Result<Vec<CoefficientSet>> {
    let estimated = factorial_signs(partial.dim_l01()) + 2 * factorial_signs(partial.dim_l10());
    if estimated > cap {
        return Err(Error::SearchCap {
            stage: "canonicalize".into(),
            estimated,
            cap,
        });
    }
    let group = partial_stabilizer(partial)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for cs in solutions {
        let mut key: Option<Vec<Rational>> = None;
        for [q, y, z] in &group {
            let k = lmn_key(&cs.signed_permuted(q, y, z)?);
            if key.as_ref().is_none_or(|best| k < *best) {
                key = Some(k);
            }
        }
        if seen.insert(key.unwrap_or_default()) {
            out.push(cs);
        }
    }
    Ok(out)
}

/// Runs the enabled stages against `partial` (its `l`, `m`, `n` ignored).
///
/// Stage 1 confirms that the given `K`, `u`, `v` are representations and
/// logs how many built-in candidates pass; stage 2 confirms that the given
/// `H`, `s`, `t` lie in the computed solution spaces. A failed check ends the
/// search with no solutions.
pub fn solve(config: &SolverConfig, partial: &CoefficientSet) -> Result<SolverOutput> {
    config.validate()?;
    if partial.dim_l01() != config.dim_l01 || partial.dim_l10() != config.dim_l10 {
        return Err(Error::Parameter(format!(
            "partial set has dimensions ({}, {}), config asks for ({}, {})",
            partial.dim_l01(),
            partial.dim_l10(),
            config.dim_l01,
            config.dim_l10
        )));
    }
    let c = partial.c();
    let mut log = SolverOutput::default();

    if config.stages.representation {
        for (f, dim) in [
            (Family::K, config.dim_l01),
            (Family::U, config.dim_l10),
            (Family::V, config.dim_l10),
        ] {
            let candidates = builtin_representation_candidates(c, dim);
            let kept = representation_stage(c, dim, &candidates);
            let name = f.symbol();
            log.log("representation", format!("{name} built-in candidates"), candidates.len());
            log.log("representation", format!("{name} built-in candidates accepted"), kept.len());
            let ok = is_representation(c, partial.family(f));
            log.log("representation", format!("given {name} accepted"), ok as usize);
            if !ok {
                return Ok(log);
            }
        }
    }

    if config.stages.linear {
        let lin = linear_stage(c, partial.family(Family::K), partial.family(Family::U), partial.family(Family::V))?;
        for (ns, f) in [(&lin.h, Family::H), (&lin.s, Family::S), (&lin.t, Family::T)] {
            let name = f.symbol();
            log.log("linear", format!("{name} unknowns"), ns.space.unknowns());
            log.log("linear", format!("{name} solution dimension"), ns.dim());
            let ok = ns.contains(partial.family(f));
            log.log("linear", format!("given {name} in solution space"), ok as usize);
            if !ok {
                return Ok(log);
            }
        }
    }

    if config.stages.bilinear {
        let out = bilinear_stage(partial, config)?;
        log.stage_log.extend(out.stage_log);
        log.solutions = out.solutions;
    }
    Ok(log)
}

/// Default partial set: the built-in u(1,1) grading.
pub fn default_partial() -> CoefficientSet {
    catalog::u11_z22_coefficients()
}

/// A partial set with only `C`, `K`, `H`, `s`, `t`, `u`, `v` taken from `cs`.
pub fn partial_of(cs: &CoefficientSet) -> CoefficientSet {
    let p = cs.parts();
    let zeros = |mats: &[RatMatrix]| {
        mats.iter()
            .map(|m| RatMatrix::zeros(m.rows(), m.cols()))
            .collect::<Vec<_>>()
    };
    CoefficientSet::try_from(CoefficientParts {
        l: zeros(&p.l),
        m: zeros(&p.m),
        n: zeros(&p.n),
        ..p.clone()
    })
    .expect("zeroing l, m, n keeps shapes")
}
