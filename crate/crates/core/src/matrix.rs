//! Dense matrices over the rationals with exact row reduction.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>, // row-major
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rational::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience for integer tables scaled by a common rational factor.
    pub fn from_ints(factor: Rational, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rational::int(x) * &factor).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols && *self == -self.transpose()
    }

    /// Square, with exactly one `±1` in every row and column and zeros elsewhere.
    pub fn is_signed_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let unit = |x: &Rational| x.abs().is_one();
        let mut col_used = vec![false; self.cols];
        for i in 0..self.rows {
            let nz: Vec<usize> = (0..self.cols).filter(|&j| !self[(i, j)].is_zero()).collect();
            match nz.as_slice() {
                [j] if unit(&self[(i, *j)]) && !col_used[*j] => col_used[*j] = true,
                _ => return false,
            }
        }
        true
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &f;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column, each with
    /// a 1 in its own free slot.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        free_columns(self.cols, &pivots)
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

pub(crate) fn free_columns(cols: usize, pivots: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..cols).filter(move |c| !pivots.contains(c))
}

/// Affine solution set of `A x = b` in reduced form: each pivot unknown is
/// `offset[p] - Σ_f coeff[p][f]·x_f` over the free unknowns.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub unknowns: usize,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    /// For each pivot row: the reduced row restricted to unknown columns.
    reduced: RatMatrix,
    offsets: Vec<Rational>,
}

impl AffineSolution {
    /// Returns `None` when the system is inconsistent.
    pub fn solve(a: &RatMatrix, b: &[Rational]) -> Option<Self> {
        assert_eq!(a.rows(), b.len());
        let n = a.cols();
        let mut aug = RatMatrix::zeros(a.rows(), n + 1);
        for i in 0..a.rows() {
            for j in 0..n {
                aug[(i, j)] = a[(i, j)].clone();
            }
            aug[(i, n)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let free = free_columns(n, &pivots).collect();
        let offsets = (0..pivots.len()).map(|r| aug[(r, n)].clone()).collect();
        Some(AffineSolution {
            unknowns: n,
            pivots,
            free,
            reduced: aug,
            offsets,
        })
    }

    /// Full unknown vector for the given values of the free unknowns.
    pub fn evaluate(&self, free_values: &[Rational]) -> Vec<Rational> {
        assert_eq!(free_values.len(), self.free.len());
        let mut x = vec![Rational::zero(); self.unknowns];
        for (&f, v) in self.free.iter().zip(free_values) {
            x[f] = v.clone();
        }
        for (row, &p) in self.pivots.iter().enumerate() {
            let mut value = self.offsets[row].clone();
            for (&f, v) in self.free.iter().zip(free_values) {
                value -= &self.reduced[(row, f)] * v;
            }
            x[p] = value;
        }
        x
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for RatMatrix {
    type Output = RatMatrix;

    fn neg(mut self) -> RatMatrix {
        for x in &mut self.data {
            *x = -x.clone();
        }
        self
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(rational::render).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn nullspace_of_rank_one() {
        let m = RatMatrix::from_ints(int(1), &[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn affine_solve_and_inconsistency() {
        let a = RatMatrix::from_ints(int(1), &[&[1, 1], &[1, -1]]);
        let sol = AffineSolution::solve(&a, &[int(3), int(1)]).unwrap();
        assert!(sol.free.is_empty());
        assert_eq!(sol.evaluate(&[]), vec![int(2), int(1)]);

        let singular = RatMatrix::from_ints(int(1), &[&[1, 1], &[2, 2]]);
        assert!(AffineSolution::solve(&singular, &[int(1), int(3)]).is_none());
        let sol = AffineSolution::solve(&singular, &[int(1), int(2)]).unwrap();
        assert_eq!(sol.free, vec![1]);
        assert_eq!(sol.evaluate(&[frac(1, 2)]), vec![frac(1, 2), frac(1, 2)]);
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                RatMatrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| int(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn transpose_reverses_products(a in small_matrix()) {
            let b = a.transpose();
            prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
            prop_assert!((&a * &b).is_symmetric());
        }
    }
}
