//! Dense square matrices over a [`Field`], 1-based accessors.

use std::fmt;

use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct SingularMatrix {
    pub row: usize,
}

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zero pivot in row {}", self.row)
    }
}

impl std::error::Error for SingularMatrix {}

impl<T: Field> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from `f(row, col)` with 1-based indices.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (1..=n).fold(T::zero(), |acc, k| {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        })
    }

    pub fn is_lower_triangular(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.get(i, j).is_zero()))
    }

    /// Inverse of a lower-triangular matrix by forward substitution, column by column.
    pub fn invert_lower_triangular(&self) -> Result<Self, SingularMatrix> {
        let n = self.n;
        let mut inv = Self::zeros(n);
        for i in 1..=n {
            if self.get(i, i).is_zero() {
                return Err(SingularMatrix { row: i });
            }
        }
        for j in 1..=n {
            inv.set(j, j, T::one() / self.get(j, j).clone());
            for i in j + 1..=n {
                let s = (j..i).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * inv.get(k, j).clone());
                inv.set(i, j, -s / self.get(i, i).clone());
            }
        }
        Ok(inv)
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.n.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    proptest! {
        #[test]
        fn lower_triangular_inverse(entries in prop::collection::vec(-9i64..=9, 21), diag in prop::collection::vec(1i64..=9, 6)) {
            let mut it = entries.into_iter();
            let m = Matrix::from_fn(6, |i, j| {
                if i == j { q(diag[i - 1]) } else if j < i { q(it.next().unwrap()) } else { q(0) }
            });
            let inv = m.invert_lower_triangular().unwrap();
            prop_assert!(inv.is_lower_triangular());
            prop_assert_eq!(m.mul(&inv), Matrix::identity(6));
            prop_assert_eq!(inv.mul(&m), Matrix::identity(6));
        }
    }

    #[test]
    fn singular_is_reported() {
        let m = Matrix::from_fn(3, |i, j| if i == j && i != 2 { q(1) } else { q(0) });
        assert_eq!(m.invert_lower_triangular(), Err(SingularMatrix { row: 2 }));
    }

    #[test]
    fn f64_instantiation() {
        let m = Matrix::from_fn(2, |i, j| if j <= i { (i + j) as f64 } else { 0.0 });
        let inv = m.invert_lower_triangular().unwrap();
        let id = m.mul(&inv);
        assert!((id.get(2, 1) - 0.0).abs() < 1e-15 && (id.get(2, 2) - 1.0).abs() < 1e-15);
    }
}
