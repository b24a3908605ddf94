//! Tensor fields on a single polynomial coordinate chart (M = R^n with
//! global coordinates). Vector fields, 1-forms, (1,1)-tensors,
//! pseudo-Riemannian metrics and the musical isomorphisms.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::FnMatrix;
use crate::numberfield::FieldElem;
use crate::symfunc::RationalFn;

/// A coordinate chart: dimension plus coordinate names.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    dim: usize,
    coords: Vec<String>,
}

impl Chart {
    /// Canonical chart with coordinates x1..xn.
    pub fn new(dim: usize) -> Result<Chart> {
        let coords = (1..=dim).map(|i| format!("x{i}")).collect();
        Chart::with_coords(dim, coords)
    }

    pub fn with_coords(dim: usize, coords: Vec<String>) -> Result<Chart> {
        if dim == 0 {
            return Err(Error::EmptyChart);
        }
        if coords.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: coords.len(),
            });
        }
        Ok(Chart { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }
}

/// X = Σ X^i ∂_i with rational-function components.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    components: Vec<RationalFn>,
}

/// η = Σ η_i dx^i with rational-function components.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    components: Vec<RationalFn>,
}

macro_rules! covector_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(components: Vec<RationalFn>) -> Result<$ty> {
                let dim = components.len();
                if dim == 0 {
                    return Err(Error::EmptyChart);
                }
                let arity = components[0].arity();
                for c in &components {
                    if c.arity() != arity {
                        return Err(Error::ArityMismatch {
                            expected: arity,
                            got: c.arity(),
                        });
                    }
                }
                Ok($ty { components })
            }

            pub fn zero(dim: usize) -> $ty {
                $ty {
                    components: vec![RationalFn::zero(dim); dim],
                }
            }

            /// The i-th coordinate basis element (0-based).
            pub fn basis(dim: usize, i: usize) -> $ty {
                let mut v = $ty::zero(dim);
                v.components[i] = RationalFn::one(dim);
                v
            }

            pub fn dim(&self) -> usize {
                self.components.len()
            }

            pub fn component(&self, i: usize) -> &RationalFn {
                &self.components[i]
            }

            pub fn components(&self) -> &[RationalFn] {
                &self.components
            }

            pub fn is_zero(&self) -> bool {
                self.components.iter().all(|c| c.is_zero())
            }

            pub fn add(&self, rhs: &$ty) -> $ty {
                $ty {
                    components: self
                        .components
                        .iter()
                        .zip(&rhs.components)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }

            pub fn sub(&self, rhs: &$ty) -> $ty {
                $ty {
                    components: self
                        .components
                        .iter()
                        .zip(&rhs.components)
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }

            pub fn neg(&self) -> $ty {
                $ty {
                    components: self.components.iter().map(|a| -a).collect(),
                }
            }

            pub fn scale(&self, f: &RationalFn) -> $ty {
                $ty {
                    components: self.components.iter().map(|a| a * f).collect(),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> =
                    self.components.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    };
}

covector_impl!(VectorField);
covector_impl!(OneForm);

impl OneForm {
    /// η(X) = Σ η_i X^i.
    pub fn pair(&self, x: &VectorField) -> RationalFn {
        let arity = self.components[0].arity();
        let mut acc = RationalFn::zero(arity);
        for (e, c) in self.components.iter().zip(x.components()) {
            acc = &acc + &(e * c);
        }
        acc
    }
}

/// (1,1)-tensor field: (JX)^i = Σ_j J^i_j X^j.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor11 {
    mat: FnMatrix,
}

impl Tensor11 {
    pub fn new(mat: FnMatrix) -> Tensor11 {
        Tensor11 { mat }
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>) -> Result<Tensor11> {
        Ok(Tensor11 {
            mat: FnMatrix::from_rows(rows)?,
        })
    }

    /// Constant tensor from a square matrix of field elements.
    pub fn from_const(entries: &[Vec<FieldElem>], arity: usize) -> Tensor11 {
        let n = entries.len();
        Tensor11 {
            mat: FnMatrix::from_fn(n, arity, |i, j| {
                RationalFn::constant(arity, entries[i][j].clone())
            }),
        }
    }

    pub fn identity(n: usize, arity: usize) -> Tensor11 {
        Tensor11 {
            mat: FnMatrix::identity(n, arity),
        }
    }

    pub fn zero(n: usize, arity: usize) -> Tensor11 {
        Tensor11 {
            mat: FnMatrix::zero(n, arity),
        }
    }

    /// rho * I, the trivial plastic structure.
    pub fn scalar(n: usize, arity: usize, k: &FieldElem) -> Tensor11 {
        Tensor11 {
            mat: FnMatrix::identity(n, arity).scale_elem(k),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn arity(&self) -> usize {
        self.mat.arity()
    }

    pub fn matrix(&self) -> &FnMatrix {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFn {
        self.mat.at(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        VectorField {
            components: self.mat.apply(x.components()),
        }
    }

    /// Dual action on forms: (J* η)_j = Σ_i η_i J^i_j.
    pub fn dual_apply(&self, eta: &OneForm) -> OneForm {
        OneForm {
            components: self.mat.transpose().apply(eta.components()),
        }
    }

    pub fn compose(&self, rhs: &Tensor11) -> Tensor11 {
        Tensor11 {
            mat: self.mat.mul(&rhs.mat),
        }
    }

    pub fn add(&self, rhs: &Tensor11) -> Tensor11 {
        Tensor11 {
            mat: self.mat.add(&rhs.mat),
        }
    }

    pub fn sub(&self, rhs: &Tensor11) -> Tensor11 {
        Tensor11 {
            mat: self.mat.sub(&rhs.mat),
        }
    }

    pub fn neg(&self) -> Tensor11 {
        Tensor11 { mat: self.mat.neg() }
    }

    pub fn scale_elem(&self, k: &FieldElem) -> Tensor11 {
        Tensor11 {
            mat: self.mat.scale_elem(k),
        }
    }

    /// Σ c_k J^k with exact coefficients (lowest power first).
    pub fn poly(&self, coeffs: &[FieldElem]) -> Tensor11 {
        Tensor11 {
            mat: self.mat.poly_eval(coeffs),
        }
    }

    /// J^3 - J - sign*I; `sign = 1` tests the plastic cubic, `sign = -1`
    /// the dual cubic x^3 - x + 1.
    pub fn cubic_residual(&self, sign: i64) -> Tensor11 {
        self.poly(&[
            FieldElem::from_int(-sign),
            FieldElem::from_int(-1),
            FieldElem::zero(),
            FieldElem::one(),
        ])
    }

    pub fn inverse(&self) -> Result<Tensor11> {
        Ok(Tensor11 {
            mat: self.mat.inverse()?,
        })
    }
}

impl fmt::Display for Tensor11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

/// (0,2)-tensor field, e.g. a covariant derivative of a metric. Not
/// required to be symmetric or non-degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTensor {
    mat: FnMatrix,
}

impl TwoTensor {
    pub fn new(mat: FnMatrix) -> TwoTensor {
        TwoTensor { mat }
    }

    pub fn matrix(&self) -> &FnMatrix {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFn {
        self.mat.at(i, j)
    }

    /// t(X, Y) = Σ t_ij X^i Y^j.
    pub fn pair(&self, x: &VectorField, y: &VectorField) -> RationalFn {
        let arity = self.mat.arity();
        let mut acc = RationalFn::zero(arity);
        for i in 0..self.mat.n() {
            for j in 0..self.mat.n() {
                acc = &acc + &(&(self.mat.at(i, j) * x.component(i)) * y.component(j));
            }
        }
        acc
    }

    /// The 1-form t(X, ·).
    pub fn contract_left(&self, x: &VectorField) -> OneForm {
        OneForm {
            components: self.mat.transpose().apply(x.components()),
        }
    }
}

/// Pseudo-Riemannian metric: symmetric, non-degenerate as a rational
/// function (det g is not the zero polynomial). The inverse is computed
/// once, eagerly, via adjugate/determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    mat: FnMatrix,
    inv: FnMatrix,
    det: RationalFn,
}

impl Metric {
    /// Validates symmetry entrywise and non-degeneracy by expanding
    /// det(g); pointwise degeneracy on a measure-zero set is accepted
    /// (evaluation at such points reports a pole).
    pub fn new(mat: FnMatrix) -> Result<Metric> {
        for i in 0..mat.n() {
            for j in (i + 1)..mat.n() {
                if mat.at(i, j) != mat.at(j, i) {
                    return Err(Error::NonSymmetricMetric { row: i, col: j });
                }
            }
        }
        let det = mat.det();
        if det.is_zero() {
            return Err(Error::DegenerateMetric);
        }
        let inv = mat.inverse()?;
        Ok(Metric { mat, inv, det })
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>) -> Result<Metric> {
        Metric::new(FnMatrix::from_rows(rows)?)
    }

    /// Constant diagonal metric.
    pub fn diag_const(entries: &[FieldElem], arity: usize) -> Result<Metric> {
        let n = entries.len();
        Metric::new(FnMatrix::from_fn(n, arity, |i, j| {
            if i == j {
                RationalFn::constant(arity, entries[i].clone())
            } else {
                RationalFn::zero(arity)
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn arity(&self) -> usize {
        self.mat.arity()
    }

    pub fn matrix(&self) -> &FnMatrix {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &FnMatrix {
        &self.inv
    }

    pub fn det(&self) -> &RationalFn {
        &self.det
    }

    /// g(X, Y).
    pub fn pair(&self, x: &VectorField, y: &VectorField) -> RationalFn {
        TwoTensor::new(self.mat.clone()).pair(x, y)
    }

    /// Musical flat: (♭X)_j = Σ_i g_ij X^i.
    pub fn flat(&self, x: &VectorField) -> OneForm {
        OneForm {
            components: self.mat.transpose().apply(x.components()),
        }
    }

    /// Musical sharp: ♯η = g^{-1} η, inverse to `flat`.
    pub fn sharp(&self, eta: &OneForm) -> VectorField {
        VectorField {
            components: self.inv.transpose().apply(eta.components()),
        }
    }
}

/// g-self-adjointness: g(JX, Y) = g(X, JY) for all X, Y, equivalently
/// gJ = J^T g entrywise (exact).
pub fn gsym_check(g: &Metric, j: &Tensor11) -> bool {
    let gj = g.matrix().mul(j.matrix());
    let jtg = j.matrix().transpose().mul(g.matrix());
    gj == jtg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::rat;
    use crate::parse::parse_field_elem;

    fn fe(s: &str) -> FieldElem {
        parse_field_elem(s).unwrap()
    }

    fn vf(components: &[&str], arity: usize) -> VectorField {
        VectorField::new(
            components
                .iter()
                .map(|s| RationalFn::parse(s, arity).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn form(components: &[&str], arity: usize) -> OneForm {
        OneForm::new(
            components
                .iter()
                .map(|s| RationalFn::parse(s, arity).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn tensor(rows: &[&[&str]], arity: usize) -> Tensor11 {
        Tensor11::from_rows(
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

    /// g = diag(1, 1 - rho^2), the metric making the canonical-form
    /// matrix self-adjoint.
    fn g_plastic() -> Metric {
        Metric::diag_const(&[fe("1"), fe("1 - rho^2")], 2).unwrap()
    }

    /// B = [[-rho, 1 - rho^2], [1, 0]].
    fn b_matrix() -> Tensor11 {
        tensor(&[&["-rho", "1 - rho^2"], &["1", "0"]], 2)
    }

    #[test]
    fn chart_rejects_dim_zero() {
        assert!(Chart::new(0).is_err());
        assert_eq!(Chart::new(2).unwrap().coords(), &["x1", "x2"]);
    }

    #[test]
    fn flat_identity_metric() {
        let g = Metric::diag_const(&[fe("1"), fe("1")], 2).unwrap();
        let out = g.flat(&VectorField::basis(2, 0));
        assert_eq!(out, OneForm::basis(2, 0));
    }

    #[test]
    fn flat_diagonal_metric() {
        let out = g_plastic().flat(&VectorField::basis(2, 1));
        assert_eq!(out, form(&["0", "1 - rho^2"], 2));
    }

    #[test]
    fn flat_of_zero_vanishes() {
        assert!(g_plastic().flat(&VectorField::zero(2)).is_zero());
    }

    #[test]
    fn sharp_identity_metric() {
        let g = Metric::diag_const(&[fe("1"), fe("1")], 2).unwrap();
        assert_eq!(g.sharp(&OneForm::basis(2, 0)), VectorField::basis(2, 0));
    }

    #[test]
    fn sharp_diagonal_metric() {
        // 1/(1 - rho^2) = -rho, worked out by hand from rho^3 = rho + 1
        let out = g_plastic().sharp(&OneForm::basis(2, 1));
        assert_eq!(out, vf(&["0", "-rho"], 2));
    }

    #[test]
    fn sharp_flat_round_trip() {
        let g = Metric::from_rows(vec![
            vec![
                RationalFn::parse("2", 2).unwrap(),
                RationalFn::parse("1", 2).unwrap(),
            ],
            vec![
                RationalFn::parse("1", 2).unwrap(),
                RationalFn::parse("-3", 2).unwrap(),
            ],
        ])
        .unwrap();
        let x = vf(&["x1^2 + rho", "x2 - 1"], 2);
        assert_eq!(g.sharp(&g.flat(&x)), x);
        let eta = form(&["x2", "1 - x1"], 2);
        assert_eq!(g.flat(&g.sharp(&eta)), eta);
    }

    #[test]
    fn dual_of_identity_and_scalar() {
        let eta = form(&["x1", "rho"], 2);
        let id = Tensor11::identity(2, 2);
        assert_eq!(id.dual_apply(&eta), eta);
        let rho_i = Tensor11::scalar(2, 2, &FieldElem::rho());
        assert_eq!(
            rho_i.dual_apply(&eta),
            eta.scale(&RationalFn::constant(2, FieldElem::rho()))
        );
    }

    #[test]
    fn dual_pairs_like_composition() {
        let j = tensor(&[&["x2", "1"], &["rho", "x1"]], 2);
        let eta = form(&["x1 + 1", "x2^2"], 2);
        let x = vf(&["rho", "x1*x2"], 2);
        assert_eq!(j.dual_apply(&eta).pair(&x), eta.pair(&j.apply(&x)));
    }

    #[test]
    fn gsym_examples() {
        let any_g = Metric::from_rows(vec![
            vec![
                RationalFn::parse("x1 + 2", 2).unwrap(),
                RationalFn::parse("1", 2).unwrap(),
            ],
            vec![
                RationalFn::parse("1", 2).unwrap(),
                RationalFn::parse("x2^2 + 3", 2).unwrap(),
            ],
        ])
        .unwrap();
        // rho I is self-adjoint for every metric
        assert!(gsym_check(
            &any_g,
            &Tensor11::scalar(2, 2, &FieldElem::rho())
        ));
        // the canonical-form matrix is self-adjoint for diag(1, 1 - rho^2)
        assert!(gsym_check(&g_plastic(), &b_matrix()));
        // a nilpotent is not self-adjoint for the identity metric
        let g = Metric::diag_const(&[fe("1"), fe("1")], 2).unwrap();
        assert!(!gsym_check(&g, &tensor(&[&["0", "1"], &["0", "0"]], 2)));
    }

    #[test]
    fn gsym_bilinear_form_agrees() {
        // same statement through the quantified form on sample fields
        let g = g_plastic();
        let b = b_matrix();
        let x = vf(&["x1", "rho*x2"], 2);
        let y = vf(&["x2^2", "1"], 2);
        assert_eq!(g.pair(&b.apply(&x), &y), g.pair(&x, &b.apply(&y)));
    }

    #[test]
    fn cubic_residuals_of_known_matrices() {
        let rho_i = Tensor11::scalar(2, 2, &FieldElem::rho());
        assert!(rho_i.cubic_residual(1).is_zero());
        // B satisfies the plastic cubic (its trace satisfies the dual one)
        assert!(b_matrix().cubic_residual(1).is_zero());
        // -B satisfies the dual cubic
        assert!(b_matrix().neg().cubic_residual(-1).is_zero());
        // identity: I^3 - I - I = -I
        let id = Tensor11::identity(2, 2);
        assert_eq!(id.cubic_residual(1), id.neg());
    }

    #[test]
    fn plastic_inverse_is_j_squared_minus_identity() {
        let j = b_matrix();
        let j_inv = j.poly(&[
            FieldElem::from_int(-1),
            FieldElem::zero(),
            FieldElem::one(),
        ]); // J^2 - I
        assert_eq!(j.compose(&j_inv), Tensor11::identity(2, 2));
        // (J^{-1})^3 - J^{-1} - I = -J
        assert_eq!(j_inv.cubic_residual(1), j.neg());
    }

    #[test]
    fn gsym_stable_under_sum_and_commuting_product() {
        let g = g_plastic();
        let b = b_matrix();
        let rho_i = Tensor11::scalar(2, 2, &FieldElem::rho());
        assert!(gsym_check(&g, &b.add(&rho_i)));
        // b and rho I commute, so the product stays self-adjoint
        assert!(gsym_check(&g, &b.compose(&rho_i)));
        let _ = rat(0);
    }

    #[test]
    fn metric_validation_errors() {
        let asym = FnMatrix::from_rows(vec![
            vec![
                RationalFn::parse("1", 2).unwrap(),
                RationalFn::parse("x1", 2).unwrap(),
            ],
            vec![
                RationalFn::parse("0", 2).unwrap(),
                RationalFn::parse("1", 2).unwrap(),
            ],
        ])
        .unwrap();
        assert!(matches!(
            Metric::new(asym),
            Err(Error::NonSymmetricMetric { .. })
        ));
        let degen = FnMatrix::from_rows(vec![
            vec![
                RationalFn::parse("x1", 2).unwrap(),
                RationalFn::parse("x1", 2).unwrap(),
            ],
            vec![
                RationalFn::parse("x1", 2).unwrap(),
                RationalFn::parse("x1", 2).unwrap(),
            ],
        ])
        .unwrap();
        assert!(matches!(Metric::new(degen), Err(Error::DegenerateMetric)));
    }
}
