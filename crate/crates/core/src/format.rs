//! JSON interchange for algebras and coefficient sets.
//!
//! Rationals travel as strings `"p/q"` or `"p"`. Matrices are row-major
//! arrays of such strings. Structure constants are listed sparsely as
//! `[mu, nu, lambda, value]` with 1-based indices. Parse errors carry the
//! JSON path of the offending element.

use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{Generator, GradedAlgebra, LinComb};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};
use crate::structure::{CoefficientParts, CoefficientSet, StructureConstants};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDto {
    pub gen: String,
    pub coeff: String,
}

pub type MatrixDto = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDto {
    pub name: String,
    pub degree: Degree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDto {
    pub a: String,
    pub b: String,
    pub terms: Vec<TermDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDto {
    pub name: String,
    pub generators: Vec<GeneratorDto>,
    #[serde(default)]
    pub brackets: Vec<BracketDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSetDto {
    #[serde(rename = "dimL01")]
    pub dim_l01: usize,
    #[serde(rename = "dimL10")]
    pub dim_l10: usize,
    #[serde(rename = "dimL00", default, skip_serializing_if = "Option::is_none")]
    pub dim_l00: Option<usize>,
    #[serde(rename = "C")]
    pub c: Vec<(usize, usize, usize, String)>,
    #[serde(rename = "K")]
    pub k: Vec<MatrixDto>,
    #[serde(rename = "H")]
    pub h: Vec<MatrixDto>,
    pub s: Vec<MatrixDto>,
    pub t: Vec<MatrixDto>,
    pub u: Vec<MatrixDto>,
    pub v: Vec<MatrixDto>,
    pub l: Vec<MatrixDto>,
    pub m: Vec<MatrixDto>,
    pub n: Vec<MatrixDto>,
}

/// Deserializes `text`, reporting the JSON path of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Json {
            path,
            message: e.into_inner().to_string(),
        }
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("DTOs always serialize");
    s.push('\n');
    s
}

fn at(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Json {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_rational_at(path: &str, s: &str) -> Result<Rational> {
    rational::parse(s).map_err(|e| at(path, e.to_string()))
}

pub fn matrix_dto(m: &RatMatrix) -> MatrixDto {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rational::render).collect())
        .collect()
}

fn matrix_from_dto(path: &str, dto: &MatrixDto) -> Result<RatMatrix> {
    let cols = dto.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(dto.len());
    for (i, row) in dto.iter().enumerate() {
        if row.len() != cols {
            return Err(at(format!("{path}[{i}]"), format!("row has {} entries, expected {cols}", row.len())));
        }
        rows.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| parse_rational_at(&format!("{path}[{i}][{j}]"), x))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(RatMatrix::from_rows(rows))
}

pub fn algebra_to_dto(alg: &GradedAlgebra) -> AlgebraDto {
    AlgebraDto {
        name: alg.name().to_string(),
        generators: alg
            .generators()
            .iter()
            .map(|g| GeneratorDto {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect(),
        brackets: alg
            .entries()
            .map(|((a, b), lc)| BracketDto {
                a: alg.generator_name(a).to_string(),
                b: alg.generator_name(b).to_string(),
                terms: alg.render(lc),
            })
            .collect(),
    }
}

pub fn algebra_from_dto(dto: &AlgebraDto) -> Result<GradedAlgebra> {
    let gens: Vec<Generator> = dto
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    let shell = GradedAlgebra::new(dto.name.clone(), gens.clone())?;
    let lookup = |path: String, name: &str| {
        shell
            .index_of(name)
            .map_err(|_| at(path, format!("unknown generator {name:?}")))
    };
    let mut products = Vec::with_capacity(dto.brackets.len());
    for (bi, br) in dto.brackets.iter().enumerate() {
        let a = lookup(format!("brackets[{bi}].a"), &br.a)?;
        let b = lookup(format!("brackets[{bi}].b"), &br.b)?;
        let mut lc = LinComb::zero();
        for (ti, term) in br.terms.iter().enumerate() {
            let k = lookup(format!("brackets[{bi}].terms[{ti}].gen"), &term.gen)?;
            let c = parse_rational_at(&format!("brackets[{bi}].terms[{ti}].coeff"), &term.coeff)?;
            lc.add_term(k, c);
        }
        products.push((a, b, lc));
    }
    GradedAlgebra::from_products(dto.name.clone(), gens, products)
}

pub fn parse_algebra(text: &str) -> Result<GradedAlgebra> {
    algebra_from_dto(&parse_json(text)?)
}

pub fn algebra_to_json(alg: &GradedAlgebra) -> String {
    to_json(&algebra_to_dto(alg))
}

pub fn coefficients_to_dto(cs: &CoefficientSet) -> CoefficientSetDto {
    let fam = |mats: &[RatMatrix]| mats.iter().map(matrix_dto).collect::<Vec<_>>();
    let p = cs.parts();
    CoefficientSetDto {
        dim_l01: cs.dim_l01(),
        dim_l10: cs.dim_l10(),
        dim_l00: None,
        c: p.c
            .iter()
            .map(|((mu, nu, la), x)| (mu + 1, nu + 1, la + 1, rational::render(x)))
            .collect(),
        k: fam(&p.k),
        h: fam(&p.h),
        s: fam(&p.s),
        t: fam(&p.t),
        u: fam(&p.u),
        v: fam(&p.v),
        l: fam(&p.l),
        m: fam(&p.m),
        n: fam(&p.n),
    }
}

pub fn coefficients_from_dto(dto: &CoefficientSetDto) -> Result<CoefficientSet> {
    let dim00 = match dto.dim_l00 {
        Some(d) => d,
        None => dto.k.len(),
    };
    let mut c = StructureConstants::new(dim00);
    for (i, (mu, nu, la, x)) in dto.c.iter().enumerate() {
        let path = format!("C[{i}]");
        if [*mu, *nu, *la].iter().any(|&k| k == 0 || k > dim00) {
            return Err(at(path, format!("indices must lie in 1..={dim00}")));
        }
        let value = parse_rational_at(&format!("{path}[3]"), x)?;
        if !c.get(mu - 1, nu - 1, la - 1).is_zero() {
            return Err(at(path, "structure constant listed twice"));
        }
        c.set(mu - 1, nu - 1, la - 1, value)?;
    }
    let fam = |name: &str, mats: &[MatrixDto]| {
        mats.iter()
            .enumerate()
            .map(|(i, m)| matrix_from_dto(&format!("{name}[{i}]"), m))
            .collect::<Result<Vec<_>>>()
    };
    CoefficientSet::try_from(CoefficientParts {
        dim_l01: dto.dim_l01,
        dim_l10: dto.dim_l10,
        c,
        k: fam("K", &dto.k)?,
        h: fam("H", &dto.h)?,
        s: fam("s", &dto.s)?,
        t: fam("t", &dto.t)?,
        u: fam("u", &dto.u)?,
        v: fam("v", &dto.v)?,
        l: fam("l", &dto.l)?,
        m: fam("m", &dto.m)?,
        n: fam("n", &dto.n)?,
    })
}

pub fn parse_coefficients(text: &str) -> Result<CoefficientSet> {
    coefficients_from_dto(&parse_json(text)?)
}

pub fn coefficients_to_json(cs: &CoefficientSet) -> String {
    to_json(&coefficients_to_dto(cs))
}
