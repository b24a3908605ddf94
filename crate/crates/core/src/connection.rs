//! Affine connections via Christoffel symbols, covariant derivatives of
//! every tensor type in play, torsion, the Lie bracket, the Nijenhuis
//! tensor and the quasi-statistical condition.
//!
//! Index convention, fixed once for the whole engine:
//! `gamma(i, j, k)` is the k-th component of ∇_{∂_i} ∂_j, i.e. Γ^k_{ij}.
//! No symmetry in (i, j) is assumed; torsion is allowed everywhere.

use crate::chart::{Metric, OneForm, Tensor11, TwoTensor, VectorField};
use crate::error::{Error, Result};
use crate::matrix::FnMatrix;
use crate::symfunc::RationalFn;

#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    dim: usize,
    // flattened [i][j][k] with k the upper index
    gamma: Vec<RationalFn>,
}

impl Connection {
    /// All Christoffel symbols zero.
    pub fn flat(dim: usize) -> Connection {
        Connection {
            dim,
            gamma: vec![RationalFn::zero(dim); dim * dim * dim],
        }
    }

    /// Build from nested components `coeffs[i][j][k]` = Γ^k_{ij}.
    pub fn from_components(coeffs: Vec<Vec<Vec<RationalFn>>>) -> Result<Connection> {
        let dim = coeffs.len();
        if dim == 0 {
            return Err(Error::EmptyChart);
        }
        let mut gamma = Vec::with_capacity(dim * dim * dim);
        for plane in &coeffs {
            if plane.len() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: plane.len(),
                });
            }
            for row in plane {
                if row.len() != dim {
                    return Err(Error::DimMismatch {
                        expected: dim,
                        got: row.len(),
                    });
                }
                for e in row {
                    if e.arity() != dim {
                        return Err(Error::ArityMismatch {
                            expected: dim,
                            got: e.arity(),
                        });
                    }
                    gamma.push(e.clone());
                }
            }
        }
        Ok(Connection { dim, gamma })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Γ^k_{ij}, the k-th component of ∇_{∂_i} ∂_j.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &RationalFn {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_gamma(&mut self, i: usize, j: usize, k: usize, v: RationalFn) {
        self.gamma[(i * self.dim + j) * self.dim + k] = v;
    }

    /// The matrix (Γ_i)^k_j = Γ^k_{ij} of ∇_{∂_i}.
    pub fn gamma_matrix(&self, i: usize) -> FnMatrix {
        FnMatrix::from_fn(self.dim, self.dim, |k, j| self.gamma(i, j, k).clone())
    }

    pub fn is_torsion_free(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in 0..self.dim {
                    if self.gamma(i, j, k) != self.gamma(j, i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// (∇_X Y)^k = Σ_i X^i ∂_i Y^k + Σ_{i,j} Γ^k_{ij} X^i Y^j.
    pub fn deriv_vector(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.dim;
        let comps = (0..n)
            .map(|k| {
                let mut acc = RationalFn::zero(n);
                for i in 0..n {
                    acc = &acc + &(x.component(i) * &y.component(k).partial(i).unwrap());
                    for j in 0..n {
                        acc = &acc + &(&(self.gamma(i, j, k) * x.component(i)) * y.component(j));
                    }
                }
                acc
            })
            .collect();
        VectorField::new(comps).expect("dimension preserved")
    }

    /// (∇_X β)_j = Σ_i X^i ∂_i β_j - Σ_{i,k} Γ^k_{ij} X^i β_k, the unique
    /// extension with (∇_X β)(Y) = X(β(Y)) - β(∇_X Y).
    pub fn deriv_oneform(&self, x: &VectorField, beta: &OneForm) -> OneForm {
        let n = self.dim;
        let comps = (0..n)
            .map(|j| {
                let mut acc = RationalFn::zero(n);
                for i in 0..n {
                    acc = &acc + &(x.component(i) * &beta.component(j).partial(i).unwrap());
                    for k in 0..n {
                        acc = &acc - &(&(self.gamma(i, j, k) * x.component(i)) * beta.component(k));
                    }
                }
                acc
            })
            .collect();
        OneForm::new(comps).expect("dimension preserved")
    }

    /// The (1,1)-tensor (∇_X J)Y = ∇_X(JY) - J(∇_X Y).
    pub fn deriv_tensor11(&self, x: &VectorField, j: &Tensor11) -> Tensor11 {
        let n = self.dim;
        Tensor11::new(FnMatrix::from_fn(n, n, |k, m| {
            let mut acc = RationalFn::zero(n);
            for i in 0..n {
                acc = &acc + &(x.component(i) * &j.entry(k, m).partial(i).unwrap());
                for s in 0..n {
                    acc = &acc + &(&(self.gamma(i, s, k) * x.component(i)) * j.entry(s, m));
                    acc = &acc - &(&(self.gamma(i, m, s) * x.component(i)) * j.entry(k, s));
                }
            }
            acc
        }))
    }

    /// (∇_X g)(Y,Z) = X(g(Y,Z)) - g(∇_X Y, Z) - g(Y, ∇_X Z), componentwise.
    pub fn deriv_metric(&self, x: &VectorField, g: &Metric) -> TwoTensor {
        let n = self.dim;
        TwoTensor::new(FnMatrix::from_fn(n, n, |j, k| {
            let mut acc = RationalFn::zero(n);
            for i in 0..n {
                acc = &acc + &(x.component(i) * &g.matrix().at(j, k).partial(i).unwrap());
                for m in 0..n {
                    acc = &acc - &(&(self.gamma(i, j, m) * x.component(i)) * g.matrix().at(m, k));
                    acc = &acc - &(&(self.gamma(i, k, m) * x.component(i)) * g.matrix().at(j, m));
                }
            }
            acc
        }))
    }

    /// ∇J = 0, checked on coordinate directions (sufficient by
    /// tensoriality of the direction slot).
    pub fn is_parallel_tensor(&self, j: &Tensor11) -> bool {
        (0..self.dim).all(|i| self.deriv_tensor11(&VectorField::basis(self.dim, i), j).is_zero())
    }

    pub fn is_parallel_metric(&self, g: &Metric) -> bool {
        (0..self.dim).all(|i| self.deriv_metric(&VectorField::basis(self.dim, i), g).is_zero())
    }

    /// T(X,Y) = ∇_X Y - ∇_Y X - [X,Y].
    pub fn torsion(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.deriv_vector(x, y)
            .sub(&self.deriv_vector(y, x))
            .sub(&lie_bracket(x, y))
    }
}

/// [X,Y]^k = Σ_i (X^i ∂_i Y^k - Y^i ∂_i X^k).
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let n = x.dim();
    let comps = (0..n)
        .map(|k| {
            let mut acc = RationalFn::zero(n);
            for i in 0..n {
                acc = &acc + &(x.component(i) * &y.component(k).partial(i).unwrap());
                acc = &acc - &(y.component(i) * &x.component(k).partial(i).unwrap());
            }
            acc
        })
        .collect();
    VectorField::new(comps).expect("dimension preserved")
}

/// N(J)(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] + J^2 [X,Y].
pub fn nijenhuis(j: &Tensor11, x: &VectorField, y: &VectorField) -> VectorField {
    let jx = j.apply(x);
    let jy = j.apply(y);
    lie_bracket(&jx, &jy)
        .sub(&j.apply(&lie_bracket(&jx, y)))
        .sub(&j.apply(&lie_bracket(x, &jy)))
        .add(&j.apply(&j.apply(&lie_bracket(x, y))))
}

/// N(J) = 0, checked on coordinate pairs (sufficient: N(J) is tensorial).
pub fn is_integrable(j: &Tensor11) -> bool {
    let n = j.n();
    for i in 0..n {
        for k in (i + 1)..n {
            if !nijenhuis(j, &VectorField::basis(n, i), &VectorField::basis(n, k)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The quasi-statistical condition
/// (∇_X g)(Y,Z) - (∇_Y g)(X,Z) + g(T(X,Y),Z) = 0
/// on all coordinate triples (multilinearity covers the general case).
pub fn quasi_statistical_check(g: &Metric, conn: &Connection) -> bool {
    let n = conn.dim();
    let basis: Vec<VectorField> = (0..n).map(|i| VectorField::basis(n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let dg_i = conn.deriv_metric(&basis[i], g);
            let dg_j = conn.deriv_metric(&basis[j], g);
            let t = conn.torsion(&basis[i], &basis[j]);
            let gt = g.flat(&t);
            for k in 0..n {
                let lhs = &(dg_i.entry(j, k) - dg_j.entry(i, k)) + gt.component(k);
                if !lhs.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
