//! Degree arithmetic for the (Z2)^2 grading.
//!
//! A degree is a pair of bits `(i, j)`. Degrees add componentwise mod 2 and
//! pair through the GF(2) dot product `i·m + j·n`; the parity of that dot
//! product decides whether the product of two homogeneous elements is a
//! commutator or an anticommutator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 2]", into = "[u8; 2]")]
pub struct Degree {
    i: u8,
    j: u8,
}

impl Degree {
    pub const D00: Degree = Degree { i: 0, j: 0 };
    pub const D01: Degree = Degree { i: 0, j: 1 };
    pub const D10: Degree = Degree { i: 1, j: 0 };
    pub const D11: Degree = Degree { i: 1, j: 1 };

    /// All four degrees in lexicographic order.
    pub const ALL: [Degree; 4] = [Self::D00, Self::D01, Self::D10, Self::D11];

    pub fn new(i: u8, j: u8) -> Result<Self> {
        for bit in [i, j] {
            if bit > 1 {
                return Err(Error::InvalidDegree(bit));
            }
        }
        Ok(Degree { i, j })
    }

    pub fn i(self) -> u8 {
        self.i
    }

    pub fn j(self) -> u8 {
        self.j
    }

    /// Parity of `i·m + j·n`.
    pub fn dot(self, other: Degree) -> u8 {
        (self.i * other.i + self.j * other.j) % 2
    }

    /// Componentwise sum, reduced mod 2.
    pub fn add(self, other: Degree) -> Degree {
        Degree {
            i: (self.i + other.i) % 2,
            j: (self.j + other.j) % 2,
        }
    }

    /// `(-1)^{dot}` as `±1`.
    pub fn sign(self, other: Degree) -> i32 {
        if self.dot(other) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn bracket_kind(self, other: Degree) -> BracketKind {
        bracket_kind(self, other)
    }

    /// Position in [`Degree::ALL`].
    pub fn index(self) -> usize {
        (2 * self.i + self.j) as usize
    }
}

impl TryFrom<[u8; 2]> for Degree {
    type Error = Error;

    fn try_from([i, j]: [u8; 2]) -> Result<Self> {
        Degree::new(i, j)
    }
}

impl From<Degree> for [u8; 2] {
    fn from(d: Degree) -> Self {
        [d.i, d.j]
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub fn dot(a: Degree, b: Degree) -> u8 {
    a.dot(b)
}

pub fn add(a: Degree, b: Degree) -> Degree {
    a.add(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

impl BracketKind {
    /// `[u,v]` or `{u,v}` with the operand names filled in.
    pub fn render(self, u: &str, v: &str) -> String {
        match self {
            BracketKind::Commutator => format!("[{u}, {v}]"),
            BracketKind::Anticommutator => format!("{{{u}, {v}}}"),
        }
    }
}

pub fn bracket_kind(a: Degree, b: Degree) -> BracketKind {
    if a.dot(b) == 0 {
        BracketKind::Commutator
    } else {
        BracketKind::Anticommutator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn degree() -> impl Strategy<Value = Degree> {
        (0u8..2, 0u8..2).prop_map(|(i, j)| Degree::new(i, j).unwrap())
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(Degree::D00, Degree::D11), 0);
        assert_eq!(dot(Degree::D01, Degree::D11), 1);
        assert_eq!(dot(Degree::D11, Degree::D11), 0);
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(Degree::D01, Degree::D10), Degree::D11);
        assert_eq!(add(Degree::D10, Degree::D11), Degree::D01);
        assert_eq!(add(Degree::D00, Degree::D00), Degree::D00);
    }

    #[test]
    fn bracket_kind_examples() {
        assert_eq!(
            bracket_kind(Degree::D01, Degree::D10),
            BracketKind::Commutator
        );
        assert_eq!(
            bracket_kind(Degree::D10, Degree::D11),
            BracketKind::Anticommutator
        );
        assert_eq!(
            bracket_kind(Degree::D11, Degree::D11),
            BracketKind::Commutator
        );
    }

    #[test]
    fn rejects_non_bits() {
        assert!(Degree::new(2, 0).is_err());
        assert!(serde_json::from_str::<Degree>("[0,3]").is_err());
        assert_eq!(
            serde_json::from_str::<Degree>("[1,0]").unwrap(),
            Degree::D10
        );
        assert_eq!(serde_json::to_string(&Degree::D01).unwrap(), "[0,1]");
    }

    /// The ten unordered pairs of degrees give the ten product forms:
    /// anticommutators exactly on (01,01), (10,10), (01,11) and (10,11).
    #[test]
    fn table_has_ten_product_forms() {
        let mut pairs = Vec::new();
        for (x, &a) in Degree::ALL.iter().enumerate() {
            for &b in &Degree::ALL[x..] {
                pairs.push((a, b, bracket_kind(a, b)));
            }
        }
        assert_eq!(pairs.len(), 10);
        let anti: Vec<_> = pairs
            .iter()
            .filter(|p| p.2 == BracketKind::Anticommutator)
            .map(|p| (p.0, p.1))
            .collect();
        assert_eq!(
            anti,
            vec![
                (Degree::D01, Degree::D01),
                (Degree::D01, Degree::D11),
                (Degree::D10, Degree::D10),
                (Degree::D10, Degree::D11),
            ]
        );
    }

    #[test]
    fn z2_subsector_is_ordinary_superalgebra_rule() {
        let z2 = [Degree::D00, Degree::D01];
        for a in z2 {
            for b in z2 {
                let both_odd = a == Degree::D01 && b == Degree::D01;
                assert_eq!(
                    bracket_kind(a, b) == BracketKind::Anticommutator,
                    both_odd
                );
            }
        }
    }

    proptest! {
        #[test]
        fn dot_symmetric_and_bilinear(a in degree(), b in degree(), c in degree()) {
            prop_assert_eq!(a.dot(b), b.dot(a));
            prop_assert_eq!(a.add(b).dot(c), (a.dot(c) + b.dot(c)) % 2);
        }

        #[test]
        fn add_is_elementary_abelian(a in degree(), b in degree(), c in degree()) {
            prop_assert_eq!(a.add(b), b.add(a));
            prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
            prop_assert_eq!(a.add(Degree::D00), a);
            prop_assert_eq!(a.add(a), Degree::D00);
        }

        #[test]
        fn anticommutator_iff_odd_dot(a in degree(), b in degree()) {
            prop_assert_eq!(bracket_kind(a, b) == BracketKind::Anticommutator, a.dot(b) == 1);
            prop_assert_eq!(a.sign(b), if a.dot(b) == 1 { -1 } else { 1 });
        }
    }
}
