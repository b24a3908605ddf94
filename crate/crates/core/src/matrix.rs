//! Square matrices of rational functions: the shared exact linear algebra
//! layer under (1,1)-tensors, metrics and block operators.

use std::fmt;

use crate::error::{Error, Result};
use crate::numberfield::FieldElem;
use crate::symfunc::RationalFn;

/// Row-major n x n matrix with `RationalFn` entries of a common arity.
#[derive(Debug, Clone, PartialEq)]
pub struct FnMatrix {
    n: usize,
    arity: usize,
    entries: Vec<RationalFn>,
}

impl FnMatrix {
    pub fn zero(n: usize, arity: usize) -> Self {
        FnMatrix {
            n,
            arity,
            entries: vec![RationalFn::zero(arity); n * n],
        }
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut m = FnMatrix::zero(n, arity);
        for i in 0..n {
            *m.at_mut(i, i) = RationalFn::one(arity);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>) -> Result<Self> {
        let n = rows.len();
        let arity = rows
            .first()
            .and_then(|r| r.first())
            .map(|e| e.arity())
            .unwrap_or(0);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for e in row {
                if e.arity() != arity {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        got: e.arity(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(FnMatrix { n, arity, entries })
    }

    pub fn from_fn(n: usize, arity: usize, mut f: impl FnMut(usize, usize) -> RationalFn) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        FnMatrix { n, arity, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn at(&self, i: usize, j: usize) -> &RationalFn {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut RationalFn {
        &mut self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[RationalFn] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> FnMatrix {
        FnMatrix::from_fn(self.n, self.arity, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, rhs: &FnMatrix) -> FnMatrix {
        debug_assert_eq!(self.n, rhs.n);
        FnMatrix::from_fn(self.n, self.arity, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &FnMatrix) -> FnMatrix {
        debug_assert_eq!(self.n, rhs.n);
        FnMatrix::from_fn(self.n, self.arity, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn neg(&self) -> FnMatrix {
        FnMatrix::from_fn(self.n, self.arity, |i, j| -self.at(i, j))
    }

    pub fn mul(&self, rhs: &FnMatrix) -> FnMatrix {
        debug_assert_eq!(self.n, rhs.n);
        FnMatrix::from_fn(self.n, self.arity, |i, j| {
            let mut acc = RationalFn::zero(self.arity);
            for k in 0..self.n {
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        })
    }

    pub fn scale(&self, k: &RationalFn) -> FnMatrix {
        FnMatrix::from_fn(self.n, self.arity, |i, j| self.at(i, j) * k)
    }

    pub fn scale_elem(&self, k: &FieldElem) -> FnMatrix {
        FnMatrix::from_fn(self.n, self.arity, |i, j| self.at(i, j).scale(k))
    }

    /// Matrix-vector product (column vector of length n).
    pub fn apply(&self, v: &[RationalFn]) -> Vec<RationalFn> {
        debug_assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = RationalFn::zero(self.arity);
                for j in 0..self.n {
                    acc = &acc + &(self.at(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    /// Determinant by Laplace expansion; the supported sizes are small.
    pub fn det(&self) -> RationalFn {
        match self.n {
            0 => RationalFn::one(self.arity),
            1 => self.at(0, 0).clone(),
            2 => &(self.at(0, 0) * self.at(1, 1)) - &(self.at(0, 1) * self.at(1, 0)),
            _ => {
                let mut acc = RationalFn::zero(self.arity);
                for j in 0..self.n {
                    let m = self.minor(0, j).det();
                    let term = self.at(0, j) * &m;
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> FnMatrix {
        let n = self.n - 1;
        FnMatrix::from_fn(n, self.arity, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.at(si, sj).clone()
        })
    }

    /// Adjugate (transposed cofactor matrix); `self * adj = det * I`.
    pub fn adjugate(&self) -> FnMatrix {
        if self.n == 1 {
            return FnMatrix::identity(1, self.arity);
        }
        FnMatrix::from_fn(self.n, self.arity, |i, j| {
            // cofactor C_{j,i}
            let m = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                m
            } else {
                -&m
            }
        })
    }

    /// Exact inverse via adjugate/determinant.
    pub fn inverse(&self) -> Result<FnMatrix> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::DegenerateMetric);
        }
        let inv_det = det.recip()?;
        Ok(self.adjugate().scale(&inv_det))
    }

    /// Evaluate Σ c_k M^k by Horner's scheme (c listed lowest power first).
    pub fn poly_eval(&self, coeffs: &[FieldElem]) -> FnMatrix {
        let mut acc = FnMatrix::zero(self.n, self.arity);
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc);
            for i in 0..self.n {
                let diag = &acc.at(i, i).clone() + &RationalFn::constant(self.arity, c.clone());
                *acc.at_mut(i, i) = diag;
            }
        }
        acc
    }
}

impl fmt::Display for FnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.at(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]], arity: usize) -> FnMatrix {
        FnMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| RationalFn::parse(s, arity).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_times_self_is_identity() {
        let a = m(&[&["x1 + 2", "1"], &["0", "x2^2 + 1"]], 2);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FnMatrix::identity(2, 2));
        assert_eq!(inv.mul(&a), FnMatrix::identity(2, 2));
    }

    #[test]
    fn det_of_3x3() {
        let a = m(
            &[
                &["1", "0", "2"],
                &["0", "x1", "0"],
                &["3", "0", "1"],
            ],
            1,
        );
        assert_eq!(a.det(), RationalFn::parse("-5*x1", 1).unwrap());
    }

    #[test]
    fn poly_eval_matches_powers() {
        let a = m(&[&["0", "1"], &["1", "0"]], 1);
        // a^2 + 3a + 2
        let out = a.poly_eval(&[
            FieldElem::from_int(2),
            FieldElem::from_int(3),
            FieldElem::from_int(1),
        ]);
        let direct = a
            .mul(&a)
            .add(&a.scale_elem(&FieldElem::from_int(3)))
            .add(&FnMatrix::identity(2, 1).scale_elem(&FieldElem::from_int(2)));
        assert_eq!(out, direct);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = m(&[&["x1", "x1"], &["1", "1"]], 1);
        assert!(a.inverse().is_err());
    }
}
