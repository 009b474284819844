//! Graded algebras with exact structure constants.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::format::TermDto;
use crate::grading::Degree;
use crate::rational::{self, Rational};
use crate::report::{Failure, Residual, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: Degree) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// A finite linear combination of generators, keyed by generator index.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<usize, Rational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn single(index: usize, coeff: Rational) -> Self {
        let mut lc = LinComb::zero();
        lc.add_term(index, coeff);
        lc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.terms.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn add_term(&mut self, index: usize, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(index).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k, v * factor);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn negated(&self) -> LinComb {
        self.scaled(&-rational::one())
    }
}

impl FromIterator<(usize, Rational)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        let mut lc = LinComb::zero();
        for (k, v) in iter {
            lc.add_term(k, v);
        }
        lc
    }
}

/// Generators with degrees plus a sparse table of products `a ∘ b`.
///
/// The table is keyed by ordered generator pairs; a missing entry is a zero
/// product. Both orders are stored so that an inconsistent table can be
/// detected by [`GradedAlgebra::check_antisymmetry`] rather than silently
/// repaired.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra {
    name: String,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    table: BTreeMap<(usize, usize), LinComb>,
}

impl GradedAlgebra {
    /// An algebra with the given generators and every product zero.
    pub fn new(name: impl Into<String>, generators: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::Shape("generator names must be nonempty".into()));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(GradedAlgebra {
            name: name.into(),
            generators,
            index,
            table: BTreeMap::new(),
        })
    }

    /// Builds an algebra from listed ordered products. Where only one order
    /// of a pair is listed, the other is filled in by graded antisymmetry;
    /// where both are listed they are stored as given.
    pub fn from_products(
        name: impl Into<String>,
        generators: Vec<Generator>,
        products: impl IntoIterator<Item = (usize, usize, LinComb)>,
    ) -> Result<Self> {
        let mut alg = GradedAlgebra::new(name, generators)?;
        let n = alg.generators.len();
        let mut listed = BTreeMap::new();
        for (a, b, lc) in products {
            if a >= n || b >= n {
                return Err(Error::Shape(format!(
                    "product ({a}, {b}) refers to a generator outside 0..{n}"
                )));
            }
            if let Some(&k) = lc.terms.keys().find(|&&k| k >= n) {
                return Err(Error::Shape(format!(
                    "product ({a}, {b}) has a term on generator index {k} outside 0..{n}"
                )));
            }
            if listed.insert((a, b), lc).is_some() {
                return Err(Error::Shape(format!(
                    "product ({}, {}) listed twice",
                    alg.generators[a].name, alg.generators[b].name
                )));
            }
        }
        for (&(a, b), lc) in &listed {
            if !listed.contains_key(&(b, a)) && a != b {
                let reverse = alg.reverse_of(a, b, lc);
                if !reverse.is_zero() {
                    alg.table.insert((b, a), reverse);
                }
            }
        }
        for ((a, b), lc) in listed {
            if !lc.is_zero() {
                alg.table.insert((a, b), lc);
            }
        }
        Ok(alg)
    }

    /// Sets `a ∘ b` and `b ∘ a` consistently with graded antisymmetry.
    pub fn with_product(mut self, a: &str, b: &str, value: LinComb) -> Result<Self> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        let reverse = self.reverse_of(ia, ib, &value);
        self.put(ia, ib, value);
        if ia != ib {
            self.put(ib, ia, reverse);
        }
        Ok(self)
    }

    /// Sets the single ordered entry `a ∘ b`, leaving `b ∘ a` untouched.
    pub fn with_raw_product(mut self, a: &str, b: &str, value: LinComb) -> Result<Self> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        self.put(ia, ib, value);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn put(&mut self, a: usize, b: usize, value: LinComb) {
        if value.is_zero() {
            self.table.remove(&(a, b));
        } else {
            self.table.insert((a, b), value);
        }
    }

    /// `b ∘ a = -(-1)^{g(a)·g(b)} a ∘ b`.
    fn reverse_of(&self, a: usize, b: usize, value: &LinComb) -> LinComb {
        let parity = self.degree(a).dot(self.degree(b));
        value.scaled(&-rational::sign(parity))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, index: usize) -> Degree {
        self.generators[index].degree
    }

    pub fn generator_name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Stored nonzero entries in `(a, b)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &LinComb)> {
        self.table.iter().map(|(&k, v)| (k, v))
    }

    pub fn entry_count(&self) -> usize {
        self.table.len()
    }

    pub fn product_of(&self, a: usize, b: usize) -> Option<&LinComb> {
        self.table.get(&(a, b))
    }

    /// Bilinear extension of the table.
    pub fn product(&self, x: &LinComb, y: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if let Some(p) = self.table.get(&(a, b)) {
                    out.add_scaled(p, &(ca * cb));
                }
            }
        }
        out
    }

    pub fn product_named(&self, a: &str, b: &str) -> Result<LinComb> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.table.get(&(ia, ib)).cloned().unwrap_or_default())
    }

    pub fn generator(&self, name: &str) -> Result<LinComb> {
        Ok(LinComb::single(self.index_of(name)?, rational::one()))
    }

    /// Builds a combination from `(name, coefficient)` pairs.
    pub fn combination<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<LinComb> {
        let mut lc = LinComb::zero();
        for (name, c) in terms {
            lc.add_term(self.index_of(name)?, c);
        }
        Ok(lc)
    }

    pub fn render(&self, lc: &LinComb) -> Vec<TermDto> {
        lc.iter()
            .map(|(k, c)| TermDto {
                gen: self.generators[k].name.clone(),
                coeff: rational::render(c),
            })
            .collect()
    }

    /// Restriction to the generators whose degree is in `degrees`. Fails if
    /// some product among them leaves the restricted span.
    pub fn restrict(&self, degrees: &[Degree], name: impl Into<String>) -> Result<Self> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| degrees.contains(&self.degree(i)))
            .collect();
        self.select(&keep, name)
    }

    /// The same algebra with generators listed in `order` (a permutation of
    /// a subset of indices). Products must stay within the selection.
    pub fn select(&self, order: &[usize], name: impl Into<String>) -> Result<Self> {
        let mut remap = vec![None; self.len()];
        for (new, &old) in order.iter().enumerate() {
            if old >= self.len() || remap[old].is_some() {
                return Err(Error::Shape(format!("invalid generator selection {order:?}")));
            }
            remap[old] = Some(new);
        }
        let gens = order.iter().map(|&i| self.generators[i].clone()).collect();
        let mut out = GradedAlgebra::new(name, gens)?;
        for (&(a, b), lc) in &self.table {
            let (Some(na), Some(nb)) = (remap[a], remap[b]) else {
                continue;
            };
            let mut mapped = LinComb::zero();
            for (k, c) in lc.iter() {
                let nk = remap[k].ok_or_else(|| {
                    Error::Shape(format!(
                        "{} ∘ {} has a term on {}, outside the selection",
                        self.generators[a].name, self.generators[b].name, self.generators[k].name
                    ))
                })?;
                mapped.add_term(nk, c.clone());
            }
            out.put(na, nb, mapped);
        }
        Ok(out)
    }

    /// Every stored product must lie in the subspace of degree
    /// `g(a) + g(b)`; failures list the offending terms.
    pub fn check_closure(&self) -> VerificationReport {
        let mut report = VerificationReport::new("closure", &self.name);
        for (&(a, b), lc) in &self.table {
            report.checked += 1;
            let expected = self.degree(a).add(self.degree(b));
            let wrong: LinComb = lc
                .iter()
                .filter(|&(k, _)| self.degree(k) != expected)
                .map(|(k, c)| (k, c.clone()))
                .collect();
            if !wrong.is_zero() {
                report.failures.push(Failure {
                    location: vec![self.generator_name(a).into(), self.generator_name(b).into()],
                    residual: Residual::Terms(self.render(&wrong)),
                });
            }
        }
        report
    }

    /// Checks `b ∘ a + (-1)^{g(a)·g(b)} a ∘ b = 0` over every unordered
    /// pair, including `a = b`, where an even dot forces a zero product.
    pub fn check_antisymmetry(&self) -> VerificationReport {
        let mut report = VerificationReport::new("antisymmetry", &self.name);
        let n = self.len();
        for a in 0..n {
            for b in a..n {
                report.checked += 1;
                let sign = rational::sign(self.degree(a).dot(self.degree(b)));
                let mut residual = self.table.get(&(b, a)).cloned().unwrap_or_default();
                if let Some(ab) = self.table.get(&(a, b)) {
                    residual.add_scaled(ab, &sign);
                }
                if !residual.is_zero() {
                    report.failures.push(Failure {
                        location: vec![self.generator_name(a).into(), self.generator_name(b).into()],
                        residual: Residual::Terms(self.render(&residual)),
                    });
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{frac, int};

    fn toy() -> GradedAlgebra {
        GradedAlgebra::new(
            "toy",
            vec![
                Generator::new("X1", Degree::D00),
                Generator::new("X2", Degree::D00),
                Generator::new("Y1", Degree::D10),
                Generator::new("Z1", Degree::D11),
            ],
        )
        .unwrap()
    }

    #[test]
    fn product_examples() {
        let alg = catalog::u11_z22_algebra();
        assert_eq!(
            alg.product(&alg.generator("X2").unwrap(), &alg.generator("X3").unwrap()),
            alg.combination([("X1", int(-2))]).unwrap()
        );
        assert_eq!(
            alg.product(&alg.generator("Y1").unwrap(), &alg.generator("Y2").unwrap()),
            alg.combination([("X1", int(4))]).unwrap()
        );
        assert!(alg
            .product(&alg.generator("Q1").unwrap(), &LinComb::zero())
            .is_zero());
    }

    #[test]
    fn product_is_bilinear() {
        let alg = catalog::u11_z22_algebra();
        let x = alg
            .combination([("X1", frac(1, 3)), ("Q2", int(-2)), ("Y1", int(5))])
            .unwrap();
        let y = alg.combination([("Q1", int(7)), ("Z2", frac(-1, 2))]).unwrap();
        let mut expected = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let p = alg.product_of(a, b).cloned().unwrap_or_default();
                expected.add_scaled(&p, &(ca * cb));
            }
        }
        assert_eq!(alg.product(&x, &y), expected);
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let alg = toy();
        assert!(matches!(
            alg.product_named("X1", "W"),
            Err(Error::UnknownGenerator(ref n)) if n == "W"
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let gens = vec![
            Generator::new("A", Degree::D00),
            Generator::new("A", Degree::D01),
        ];
        assert!(matches!(
            GradedAlgebra::new("dup", gens),
            Err(Error::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn closure_examples() {
        assert!(catalog::u11_z22_algebra().check_closure().passed());
        assert!(toy().check_closure().passed());

        let alg = catalog::u11_z22_algebra();
        let z1 = alg.generator("Z1").unwrap();
        let bad = alg.with_product("Y1", "Y1", z1).unwrap();
        let report = bad.check_closure();
        assert!(!report.passed());
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].location, vec!["Y1", "Y1"]);
    }

    #[test]
    fn antisymmetry_examples() {
        assert!(catalog::u11_z22_algebra().check_antisymmetry().passed());

        let alg = toy();
        let x2 = alg.generator("X2").unwrap();
        let bad = alg
            .with_raw_product("X1", "X2", x2.clone())
            .unwrap()
            .with_raw_product("X2", "X1", x2)
            .unwrap();
        let report = bad.check_antisymmetry();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].location, vec!["X1", "X2"]);
    }

    #[test]
    fn odd_diagonal_may_be_nonzero_even_diagonal_may_not() {
        let alg = GradedAlgebra::new(
            "diag",
            vec![
                Generator::new("X2", Degree::D00),
                Generator::new("Y1", Degree::D10),
            ],
        )
        .unwrap();
        let four_x2 = alg.combination([("X2", int(4))]).unwrap();
        let ok = alg.clone().with_product("Y1", "Y1", four_x2.clone()).unwrap();
        assert!(ok.check_antisymmetry().passed());
        let bad = alg.with_product("X2", "X2", four_x2).unwrap();
        assert!(!bad.check_antisymmetry().passed());
    }

    #[test]
    fn from_products_fills_reverse_order() {
        let gens = toy().generators().to_vec();
        let alg = GradedAlgebra::from_products(
            "t",
            gens,
            [(2, 3, LinComb::single(2, int(1))), (0, 1, LinComb::single(1, int(1)))],
        )
        .unwrap();
        // Y∘Z has odd dot, so the reverse equals the forward product.
        assert_eq!(alg.product_of(3, 2), Some(&LinComb::single(2, int(1))));
        assert_eq!(alg.product_of(1, 0), Some(&LinComb::single(1, int(-1))));
    }

    #[test]
    fn restriction_to_z2_sector_is_closed() {
        let alg = catalog::u11_z22_algebra();
        let sub = alg.restrict(&[Degree::D00, Degree::D01], "z2").unwrap();
        assert_eq!(sub.len(), 8);
        assert!(sub.check_closure().passed());
        assert!(alg.restrict(&[Degree::D00, Degree::D10], "bad").is_ok());
        assert!(alg.restrict(&[Degree::D01, Degree::D10], "bad").is_err());
    }

    #[test]
    fn even_block_is_an_ordinary_lie_bracket() {
        let alg = catalog::u11_z22_algebra();
        let xs = ["X1", "X2", "X3", "X4"];
        for a in xs {
            for b in xs {
                let ab = alg.product_named(a, b).unwrap();
                let ba = alg.product_named(b, a).unwrap();
                assert_eq!(ab, ba.negated(), "[{a},{b}]");
            }
        }
    }
}
