//! Parabose and parafermi operators of order `p` on truncated Fock spaces,
//! and a numerical check that they realize a graded algebra.
//!
//! The combined system is built from `p` boson and `p` fermion components
//! (Green's ansatz). Components live on slots ordered `b1, c1, b2, c2, ...`
//! and carry Klein signs from earlier slots:
//!
//! ```text
//! b^k = b~_k · Π_{l<k} P_B(l) P_F(l)
//! c^k = c~_k · Π_{l<k} P_B(l)
//! ```
//!
//! where `P_B(l) = (-1)^{N_b(l)}` and `P_F(l) = (-1)^{N_c(l)}`. Then `a = Σ b^k`
//! and `f = Σ c^k`. Boson modes are cut off at a maximum occupation, so
//! identities are compared only on states whose total boson number stays at
//! least `margin` below the cutoff.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::grading::BracketKind;
use crate::jacobi::thread_pool;
use crate::rational;

pub const DEFAULT_DIMENSION_CAP: usize = 100_000;
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Square complex matrix in sparse row storage.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, Complex64>>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| 1.0))
    }

    pub fn diagonal(values: impl IntoIterator<Item = f64>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        let mut m = Self::zeros(values.len());
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i].get(&j).copied().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i < self.dim && j < self.dim, "index ({i},{j}) out of bounds");
        if value == Complex64::default() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, value);
        }
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            for v in row.values_mut() {
                *v *= factor;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                out.rows[j].insert(i, v.conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut out = Self::zeros(dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, a) in row {
                for (k, orow) in other.rows.iter().enumerate() {
                    for (&l, b) in orow {
                        out.rows[i * other.dim + k].insert(j * other.dim + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn bracket(&self, other: &Self, kind: BracketKind) -> Self {
        match kind {
            BracketKind::Commutator => self.commutator(other),
            BracketKind::Anticommutator => self.anticommutator(other),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.values())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `P M P` for the projector onto `keep`.
    pub fn max_abs_on(&self, keep: &[bool]) -> f64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .flat_map(|(_, r)| r.iter().filter(|(j, _)| keep[**j]).map(|(_, v)| v.norm()))
            .fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (row, orow) in out.rows.iter_mut().zip(&other.rows) {
            for (&j, v) in orow {
                let e = row.entry(j).or_default();
                *e += v * sign;
                if *e == Complex64::default() {
                    row.remove(&j);
                }
            }
        }
        out
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let mut out = OperatorMatrix::zeros(self.dim);
        for (row, orow) in self.rows.iter().zip(&mut out.rows) {
            for (&k, a) in row {
                for (&j, b) in &rhs.rows[k] {
                    *orow.entry(j).or_default() += a * b;
                }
            }
            orow.retain(|_, v| *v != Complex64::default());
        }
        out
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_order(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Parameter("parastatistics order p must be at least 1".into()));
    }
    Ok(())
}

/// Single-mode parabose annihilator of order `p` on occupations `0..=cutoff`:
/// `a|2k> = √(2k)|2k-1>`, `a|2k+1> = √(2k+p)|2k>`. Returns `(a, a†)`.
pub fn parabose_single(p: usize, cutoff: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    check_order(p)?;
    if cutoff < p + 4 {
        return Err(Error::Parameter(format!(
            "cutoff {cutoff} too small for order {p}; need at least {}",
            p + 4
        )));
    }
    let a = ladder(cutoff, p);
    let ad = a.adjoint();
    Ok((a, ad))
}

fn ladder(cutoff: usize, p: usize) -> OperatorMatrix {
    let mut a = OperatorMatrix::zeros(cutoff + 1);
    for n in 1..=cutoff {
        let w = if n % 2 == 0 { n } else { n - 1 + p };
        a.set(n - 1, n, real((w as f64).sqrt()));
    }
    a
}

/// Parafermi annihilator of order `p` on `p + 1` levels:
/// `f|k> = √(k(p-k+1))|k-1>`. Returns `(f, f†)`.
pub fn parafermi_single(p: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    check_order(p)?;
    let mut f = OperatorMatrix::zeros(p + 1);
    for k in 1..=p {
        f.set(k - 1, k, real(((k * (p - k + 1)) as f64).sqrt()));
    }
    let fd = f.adjoint();
    Ok((f, fd))
}

/// Boson-number mask of states at most `cutoff - margin`.
#[derive(Clone, Debug)]
pub struct SafeSubspace {
    pub cutoff: usize,
    pub margin: usize,
    pub keep: Vec<bool>,
}

impl SafeSubspace {
    pub fn new(boson_numbers: &[usize], cutoff: usize, margin: usize) -> Result<Self> {
        if margin < 3 {
            return Err(Error::Parameter(format!("margin must be at least 3, got {margin}")));
        }
        if margin > cutoff {
            return Err(Error::Parameter(format!(
                "margin {margin} exceeds cutoff {cutoff}; the safe subspace would be empty"
            )));
        }
        Ok(SafeSubspace {
            cutoff,
            margin,
            keep: boson_numbers.iter().map(|&n| n + margin <= cutoff).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }

    pub fn residual(&self, m: &OperatorMatrix) -> f64 {
        m.max_abs_on(&self.keep)
    }
}

/// Basis of the combined Fock space: per-slot occupations `(n_b, n_c)` for
/// each component, first component most significant.
#[derive(Clone, Debug)]
pub struct FockBasis {
    pub p: usize,
    pub cutoff: usize,
    pub occupations: Vec<Vec<(usize, usize)>>,
}

impl FockBasis {
    pub fn dim(&self) -> usize {
        self.occupations.len()
    }

    pub fn boson_numbers(&self) -> Vec<usize> {
        self.occupations
            .iter()
            .map(|occ| occ.iter().map(|&(b, _)| b).sum())
            .collect()
    }

    pub fn label(&self, index: usize) -> String {
        let occ = &self.occupations[index];
        let b: Vec<String> = occ.iter().map(|(n, _)| n.to_string()).collect();
        let c: Vec<String> = occ.iter().map(|(_, m)| m.to_string()).collect();
        format!("b=({}) c=({})", b.join(","), c.join(","))
    }
}

/// Combined parabose/parafermi system of equal order.
#[derive(Clone, Debug)]
pub struct GreenSystem {
    pub a: OperatorMatrix,
    pub ad: OperatorMatrix,
    pub f: OperatorMatrix,
    pub fd: OperatorMatrix,
    pub basis: FockBasis,
    /// Largest violation of the pairwise component relations.
    pub component_residual: f64,
}

pub const KLEIN_CONVENTION: &str = "slots ordered b1,c1,b2,c2,...; b^k carries (-1)^(N_b+N_c) of all earlier slots, \
c^k carries (-1)^N_b of earlier boson slots; same-index b,c commute, different-index b,b anticommute, \
c,c commute, b,c anticommute";

pub fn green_combined(p: usize, cutoff: usize, dimension_cap: usize) -> Result<GreenSystem> {
    check_order(p)?;
    let nb = cutoff + 1;
    let required = nb
        .checked_pow(p as u32)
        .and_then(|x| x.checked_mul(1usize.checked_shl(p as u32)?))
        .unwrap_or(usize::MAX);
    if required > dimension_cap {
        return Err(Error::DimensionCap {
            required,
            cap: dimension_cap,
        });
    }
    let boson = ladder(cutoff, 1);
    let fermion = {
        let mut c = OperatorMatrix::zeros(2);
        c.set(0, 1, real(1.0));
        c
    };
    let pb = OperatorMatrix::diagonal((0..nb).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }));
    let pf = OperatorMatrix::diagonal([1.0, -1.0]);
    let id_b = OperatorMatrix::identity(nb);
    let id_f = OperatorMatrix::identity(2);

    // Slot operators, composed left to right by Kronecker product.
    let build = |slots: Vec<&OperatorMatrix>| -> OperatorMatrix {
        slots
            .into_iter()
            .fold(OperatorMatrix::identity(1), |acc, s| acc.kron(s))
    };
    let mut bs = Vec::with_capacity(p);
    let mut cs = Vec::with_capacity(p);
    for k in 0..p {
        let mut b_slots = Vec::with_capacity(2 * p);
        let mut c_slots = Vec::with_capacity(2 * p);
        for l in 0..p {
            match l.cmp(&k) {
                std::cmp::Ordering::Less => {
                    b_slots.extend([&pb, &pf]);
                    c_slots.extend([&pb, &id_f]);
                }
                std::cmp::Ordering::Equal => {
                    b_slots.extend([&boson, &id_f]);
                    c_slots.extend([&id_b, &fermion]);
                }
                std::cmp::Ordering::Greater => {
                    b_slots.extend([&id_b, &id_f]);
                    c_slots.extend([&id_b, &id_f]);
                }
            }
        }
        bs.push(build(b_slots));
        cs.push(build(c_slots));
    }

    let component_residual = component_relations_residual(&bs, &cs);
    if component_residual > 1e-12 {
        return Err(Error::Parameter(format!(
            "Green components violate their pairwise relations (residual {component_residual:e})"
        )));
    }

    let dim = required;
    let sum = |ops: &[OperatorMatrix]| {
        ops.iter()
            .fold(OperatorMatrix::zeros(dim), |acc, o| &acc + o)
    };
    let a = sum(&bs);
    let f = sum(&cs);
    let mut occupations = Vec::with_capacity(dim);
    for idx in 0..dim {
        let mut rest = idx;
        let mut occ = vec![(0, 0); p];
        for k in (0..p).rev() {
            let c = rest % 2;
            rest /= 2;
            let b = rest % nb;
            rest /= nb;
            occ[k] = (b, c);
        }
        occupations.push(occ);
    }
    Ok(GreenSystem {
        ad: a.adjoint(),
        fd: f.adjoint(),
        a,
        f,
        basis: FockBasis { p, cutoff, occupations },
        component_residual,
    })
}

/// Max residual of the pairwise relations between Green components, with
/// every combination of daggers.
fn component_relations_residual(bs: &[OperatorMatrix], cs: &[OperatorMatrix]) -> f64 {
    let with_adj = |ops: &[OperatorMatrix]| -> Vec<[OperatorMatrix; 2]> {
        ops.iter().map(|o| [o.clone(), o.adjoint()]).collect()
    };
    let (bs, cs) = (with_adj(bs), with_adj(cs));
    let mut worst: f64 = 0.0;
    for k in 0..bs.len() {
        for l in 0..bs.len() {
            for x in 0..2 {
                for y in 0..2 {
                    let (b_k, b_l, c_k, c_l) = (&bs[k][x], &bs[l][y], &cs[k][x], &cs[l][y]);
                    if k == l {
                        worst = worst.max(b_k.commutator(&cs[l][y]).max_abs());
                    } else {
                        worst = worst.max(b_k.anticommutator(b_l).max_abs());
                        worst = worst.max(c_k.commutator(c_l).max_abs());
                        worst = worst.max(b_k.anticommutator(&cs[l][y]).max_abs());
                    }
                }
            }
        }
    }
    worst
}

/// Operators for the twelve generators.
#[derive(Clone, Debug)]
pub struct RealizationMap {
    pub operators: Vec<(String, OperatorMatrix)>,
}

impl RealizationMap {
    pub fn get(&self, name: &str) -> Option<&OperatorMatrix> {
        self.operators.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn replace(&mut self, name: &str, op: OperatorMatrix) -> Result<()> {
        let slot = self
            .operators
            .iter_mut()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        slot.1 = op;
        Ok(())
    }
}

/// Bilinear expressions of `a`, `a†`, `f`, `f†` for the twelve generators.
pub fn realization_from(a: &OperatorMatrix, ad: &OperatorMatrix, f: &OperatorMatrix, fd: &OperatorMatrix) -> RealizationMap {
    let ops = vec![
        ("X1", ad.anticommutator(a).scale(0.25)),
        ("X2", (ad * ad).scale(0.5)),
        ("X3", (a * a).scale(0.5)),
        ("X4", fd.commutator(f).scale(0.25)),
        ("Q1", a.anticommutator(f).scale(0.5)),
        ("Q2", ad.anticommutator(fd).scale(0.5)),
        ("Q3", ad.anticommutator(f).scale(0.5)),
        ("Q4", a.anticommutator(fd).scale(0.5)),
        ("Y1", ad.clone()),
        ("Y2", a.clone()),
        ("Z1", fd.clone()),
        ("Z2", f.clone()),
    ];
    RealizationMap {
        operators: ops.into_iter().map(|(n, m)| (n.to_string(), m)).collect(),
    }
}

pub struct Realization {
    pub system: GreenSystem,
    pub map: RealizationMap,
    pub safe: SafeSubspace,
}

pub fn realize(p: usize, cutoff: usize, margin: usize, dimension_cap: usize) -> Result<Realization> {
    let system = green_combined(p, cutoff, dimension_cap)?;
    let safe = SafeSubspace::new(&system.basis.boson_numbers(), cutoff, margin)?;
    let map = realization_from(&system.a, &system.ad, &system.f, &system.fd);
    Ok(Realization { system, map, safe })
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedResidual {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl NamedResidual {
    fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        NamedResidual {
            name: name.into(),
            residual,
            tol,
            passed: residual <= tol,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResidual {
    pub a: String,
    pub b: String,
    pub kind: BracketKind,
    pub residual: f64,
    pub passed: bool,
}

/// Checks every ordered generator pair of `alg`, including pairs whose
/// product is zero, on the safe subspace.
pub fn verify_realization(
    map: &RealizationMap,
    alg: &GradedAlgebra,
    safe: &SafeSubspace,
    tol: f64,
    workers: usize,
) -> Result<Vec<EntryResidual>> {
    let ops: Vec<&OperatorMatrix> = alg
        .generators()
        .iter()
        .map(|g| {
            map.get(&g.name).ok_or_else(|| Error::Parameter(format!(
                "generator {} has no operator in the realization",
                g.name
            )))
        })
        .collect::<Result<_>>()?;
    let n = alg.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let eval = |&(a, b): &(usize, usize)| {
        let kind = alg.degree(a).bracket_kind(alg.degree(b));
        let mut diff = ops[a].bracket(ops[b], kind);
        if let Some(lc) = alg.product_of(a, b) {
            for (k, c) in lc.iter() {
                diff = &diff - &ops[k].scale(rational::to_f64(c));
            }
        }
        let residual = safe.residual(&diff);
        EntryResidual {
            a: alg.generator_name(a).to_string(),
            b: alg.generator_name(b).to_string(),
            kind,
            residual,
            passed: residual <= tol,
        }
    };
    Ok(thread_pool(workers)?.install(|| pairs.par_iter().map(eval).collect()))
}

/// The standard trilinear parabose relations.
pub fn parabose_relations(a: &OperatorMatrix, ad: &OperatorMatrix) -> Vec<(&'static str, OperatorMatrix)> {
    let n = ad.anticommutator(a);
    vec![
        ("[{a+,a},a+] = 2a+", &n.commutator(ad) - &ad.scale(2.0)),
        ("[{a+,a},a] = -2a", &n.commutator(a) + &a.scale(2.0)),
        ("[a+^2,a] = -2a+", &(ad * ad).commutator(a) + &ad.scale(2.0)),
        ("[a^2,a+] = 2a", &(a * a).commutator(ad) - &a.scale(2.0)),
    ]
}

/// The trilinear parafermi relations. The second follows from the first by
/// taking adjoints.
pub fn parafermi_relations(f: &OperatorMatrix, fd: &OperatorMatrix) -> Vec<(&'static str, OperatorMatrix)> {
    let n = fd.commutator(f);
    vec![
        ("[[f+,f],f+] = 2f+", &n.commutator(fd) - &fd.scale(2.0)),
        ("[[f+,f],f] = -2f", &n.commutator(f) + &f.scale(2.0)),
    ]
}

/// Mixed relations between a parabose and a parafermi of the same order,
/// with their adjoints.
pub fn relative_relations(
    a: &OperatorMatrix,
    ad: &OperatorMatrix,
    f: &OperatorMatrix,
    fd: &OperatorMatrix,
) -> Vec<(&'static str, OperatorMatrix)> {
    vec![
        ("[{a,f},a+] = 2f", &a.anticommutator(f).commutator(ad) - &f.scale(2.0)),
        ("[{a+,f},a] = -2f", &ad.anticommutator(f).commutator(a) + &f.scale(2.0)),
        ("{{a,f},f+} = 2a", &a.anticommutator(f).anticommutator(fd) - &a.scale(2.0)),
        ("{{a,f+},f} = 2a", &a.anticommutator(fd).anticommutator(f) - &a.scale(2.0)),
        ("[{a+,f+},a] = -2f+", &ad.anticommutator(fd).commutator(a) + &fd.scale(2.0)),
        ("[{a,f+},a+] = 2f+", &a.anticommutator(fd).commutator(ad) - &fd.scale(2.0)),
        ("{{a+,f+},f} = 2a+", &ad.anticommutator(fd).anticommutator(f) - &ad.scale(2.0)),
        ("{{a+,f},f+} = 2a+", &ad.anticommutator(f).anticommutator(fd) - &ad.scale(2.0)),
    ]
}

/// `X1`, `X4` self-adjoint; `X2† = X3`, `Q1† = Q2`, `Q3† = Q4`, `Y1† = Y2`,
/// `Z1† = Z2`. Compared on the full truncated space.
pub fn hermiticity(map: &RealizationMap) -> Result<Vec<(String, f64)>> {
    let get = |n: &str| map.get(n).ok_or_else(|| Error::UnknownGenerator(n.to_string()));
    let mut out = Vec::new();
    for (x, y) in [
        ("X1", "X1"),
        ("X4", "X4"),
        ("X2", "X3"),
        ("Q1", "Q2"),
        ("Q3", "Q4"),
        ("Y1", "Y2"),
        ("Z1", "Z2"),
    ] {
        let r = (&get(x)?.adjoint() - get(y)?).max_abs();
        out.push((format!("{x}^dagger = {y}"), r));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct OscillatorParameters {
    pub p: usize,
    pub cutoff: usize,
    pub margin: usize,
    pub tol: f64,
    pub dimension: usize,
    pub safe_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub check: &'static str,
    pub algebra: String,
    pub parameters: OscillatorParameters,
    pub convention: &'static str,
    pub component_residual: f64,
    pub relations: Vec<NamedResidual>,
    pub hermiticity: Vec<NamedResidual>,
    pub entries: Vec<EntryResidual>,
    pub max_entry_residual: f64,
    pub failures: usize,
    pub passed: bool,
}

/// Full check: parastatistics relations of the combined system, hermiticity
/// of the generator map, and every bracket of `alg`.
pub fn verify_parastatistics(
    alg: &GradedAlgebra,
    p: usize,
    cutoff: usize,
    margin: usize,
    tol: f64,
    workers: usize,
) -> Result<RealizationReport> {
    let r = realize(p, cutoff, margin, DEFAULT_DIMENSION_CAP)?;
    let sys = &r.system;
    let mut relations = Vec::new();
    for (name, m) in parabose_relations(&sys.a, &sys.ad)
        .into_iter()
        .chain(parafermi_relations(&sys.f, &sys.fd))
        .chain(relative_relations(&sys.a, &sys.ad, &sys.f, &sys.fd))
    {
        relations.push(NamedResidual::new(name, r.safe.residual(&m), tol));
    }
    let herm = hermiticity(&r.map)?
        .into_iter()
        .map(|(n, x)| NamedResidual::new(n, x, HERMITICITY_TOL))
        .collect::<Vec<_>>();
    let entries = verify_realization(&r.map, alg, &r.safe, tol, workers)?;
    let max_entry_residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    let failures = entries.iter().filter(|e| !e.passed).count()
        + relations.iter().filter(|x| !x.passed).count()
        + herm.iter().filter(|x| !x.passed).count();
    Ok(RealizationReport {
        check: "realization",
        algebra: alg.name().to_string(),
        parameters: OscillatorParameters {
            p,
            cutoff,
            margin,
            tol,
            dimension: sys.basis.dim(),
            safe_dimension: r.safe.dim(),
        },
        convention: KLEIN_CONVENTION,
        component_residual: sys.component_residual,
        relations,
        hermiticity: herm,
        entries,
        max_entry_residual,
        failures,
        passed: failures == 0,
    })
}
