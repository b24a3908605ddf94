//! The generalized tangent bundle TM ⊕ T*M on a chart: sections X + η,
//! the three natural pairings, the lifted connections, the bracket
//! [·,·]_∇, block-operator generalized structures, their covariant
//! derivatives and the generalized Nijenhuis tensor.

use crate::chart::{Metric, OneForm, Tensor11, VectorField};
use crate::connection::{lie_bracket, nijenhuis, Connection};
use crate::matrix::FnMatrix;
use crate::symfunc::RationalFn;

/// Section σ = X + η of TM ⊕ T*M.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSection {
    pub vec: VectorField,
    pub form: OneForm,
}

impl GenSection {
    pub fn new(vec: VectorField, form: OneForm) -> GenSection {
        debug_assert_eq!(vec.dim(), form.dim());
        GenSection { vec, form }
    }

    pub fn from_vector(vec: VectorField) -> GenSection {
        let dim = vec.dim();
        GenSection {
            vec,
            form: OneForm::zero(dim),
        }
    }

    pub fn from_form(form: OneForm) -> GenSection {
        let dim = form.dim();
        GenSection {
            vec: VectorField::zero(dim),
            form,
        }
    }

    pub fn zero(dim: usize) -> GenSection {
        GenSection {
            vec: VectorField::zero(dim),
            form: OneForm::zero(dim),
        }
    }

    /// Basis sections: index < dim gives ∂_i + 0, index >= dim gives
    /// 0 + dx^{i-dim}.
    pub fn basis(dim: usize, index: usize) -> GenSection {
        if index < dim {
            GenSection::from_vector(VectorField::basis(dim, index))
        } else {
            GenSection::from_form(OneForm::basis(dim, index - dim))
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, rhs: &GenSection) -> GenSection {
        GenSection {
            vec: self.vec.add(&rhs.vec),
            form: self.form.add(&rhs.form),
        }
    }

    pub fn sub(&self, rhs: &GenSection) -> GenSection {
        GenSection {
            vec: self.vec.sub(&rhs.vec),
            form: self.form.sub(&rhs.form),
        }
    }

    pub fn neg(&self) -> GenSection {
        GenSection {
            vec: self.vec.neg(),
            form: self.form.neg(),
        }
    }

    pub fn scale(&self, f: &RationalFn) -> GenSection {
        GenSection {
            vec: self.vec.scale(f),
            form: self.form.scale(f),
        }
    }
}

/// Block endomorphism of TM ⊕ T*M:
///
/// ```text
/// J(X + η) = (TT·X + TF·η) + (FT·X + FF*·η)
/// ```
///
/// `tt` maps vectors to vectors, `tf` forms to vectors, `ft` vectors to
/// forms. The form-to-form block is stored as its *underlying* (1,1)
/// tensor `ff` and acts through the dual (transpose), so the (J*)^T
/// bookkeeping lives in exactly one place: `block`/`from_block`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenOperator {
    tt: FnMatrix,
    tf: FnMatrix,
    ft: FnMatrix,
    ff: FnMatrix,
}

impl GenOperator {
    pub fn new(tt: FnMatrix, tf: FnMatrix, ft: FnMatrix, ff: FnMatrix) -> GenOperator {
        debug_assert_eq!(tt.n(), tf.n());
        debug_assert_eq!(tt.n(), ft.n());
        debug_assert_eq!(tt.n(), ff.n());
        GenOperator { tt, tf, ft, ff }
    }

    /// Diagonal operator with vector block `j1` and dual form block built
    /// on `j2` (no validation; see the structure constructors for the
    /// checked versions).
    pub fn diag(j1: &Tensor11, j2: &Tensor11) -> GenOperator {
        let n = j1.n();
        let arity = j1.arity();
        GenOperator {
            tt: j1.matrix().clone(),
            tf: FnMatrix::zero(n, arity),
            ft: FnMatrix::zero(n, arity),
            ff: j2.matrix().clone(),
        }
    }

    pub fn identity(n: usize, arity: usize) -> GenOperator {
        GenOperator {
            tt: FnMatrix::identity(n, arity),
            tf: FnMatrix::zero(n, arity),
            ft: FnMatrix::zero(n, arity),
            ff: FnMatrix::identity(n, arity),
        }
    }

    pub fn zero(n: usize, arity: usize) -> GenOperator {
        GenOperator {
            tt: FnMatrix::zero(n, arity),
            tf: FnMatrix::zero(n, arity),
            ft: FnMatrix::zero(n, arity),
            ff: FnMatrix::zero(n, arity),
        }
    }

    pub fn n(&self) -> usize {
        self.tt.n()
    }

    pub fn arity(&self) -> usize {
        self.tt.arity()
    }

    pub fn tt(&self) -> &FnMatrix {
        &self.tt
    }

    pub fn tf(&self) -> &FnMatrix {
        &self.tf
    }

    pub fn ft(&self) -> &FnMatrix {
        &self.ft
    }

    /// The underlying tensor of the form-to-form block.
    pub fn ff(&self) -> &FnMatrix {
        &self.ff
    }

    /// The full 2n x 2n matrix [[TT, TF], [FT, FF^T]] acting on stacked
    /// (X; η) columns.
    pub fn block(&self) -> FnMatrix {
        let n = self.n();
        let fft = self.ff.transpose();
        FnMatrix::from_fn(2 * n, self.arity(), |i, j| {
            match (i < n, j < n) {
                (true, true) => self.tt.at(i, j).clone(),
                (true, false) => self.tf.at(i, j - n).clone(),
                (false, true) => self.ft.at(i - n, j).clone(),
                (false, false) => fft.at(i - n, j - n).clone(),
            }
        })
    }

    pub fn from_block(m: &FnMatrix) -> GenOperator {
        let n = m.n() / 2;
        let arity = m.arity();
        let tt = FnMatrix::from_fn(n, arity, |i, j| m.at(i, j).clone());
        let tf = FnMatrix::from_fn(n, arity, |i, j| m.at(i, j + n).clone());
        let ft = FnMatrix::from_fn(n, arity, |i, j| m.at(i + n, j).clone());
        // stored as the underlying tensor, hence the transpose
        let ff = FnMatrix::from_fn(n, arity, |i, j| m.at(j + n, i + n).clone());
        GenOperator { tt, tf, ft, ff }
    }

    pub fn apply(&self, sigma: &GenSection) -> GenSection {
        let vec_from_vec = self.tt.apply(sigma.vec.components());
        let vec_from_form = self.tf.apply(sigma.form.components());
        let form_from_vec = self.ft.apply(sigma.vec.components());
        let form_from_form = self.ff.transpose().apply(sigma.form.components());
        let vec: Vec<RationalFn> = vec_from_vec
            .iter()
            .zip(&vec_from_form)
            .map(|(a, b)| a + b)
            .collect();
        let form: Vec<RationalFn> = form_from_vec
            .iter()
            .zip(&form_from_form)
            .map(|(a, b)| a + b)
            .collect();
        GenSection {
            vec: VectorField::new(vec).expect("dimension preserved"),
            form: OneForm::new(form).expect("dimension preserved"),
        }
    }

    pub fn compose(&self, rhs: &GenOperator) -> GenOperator {
        GenOperator::from_block(&self.block().mul(&rhs.block()))
    }

    pub fn add(&self, rhs: &GenOperator) -> GenOperator {
        GenOperator {
            tt: self.tt.add(&rhs.tt),
            tf: self.tf.add(&rhs.tf),
            ft: self.ft.add(&rhs.ft),
            ff: self.ff.add(&rhs.ff),
        }
    }

    pub fn sub(&self, rhs: &GenOperator) -> GenOperator {
        GenOperator {
            tt: self.tt.sub(&rhs.tt),
            tf: self.tf.sub(&rhs.tf),
            ft: self.ft.sub(&rhs.ft),
            ff: self.ff.sub(&rhs.ff),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tt.is_zero() && self.tf.is_zero() && self.ft.is_zero() && self.ff.is_zero()
    }

    /// J^3 - J - sign·I as a block operator; `sign = 1` for the plastic
    /// cubic, `sign = -1` for the dual cubic x^3 - x + 1.
    pub fn cubic_residual(&self, sign: i64) -> GenOperator {
        let b = self.block();
        let b3 = b.mul(&b).mul(&b);
        let id = FnMatrix::identity(b.n(), b.arity())
            .scale_elem(&crate::numberfield::FieldElem::from_int(sign));
        GenOperator::from_block(&b3.sub(&b).sub(&id))
    }
}

/// Natural indefinite pairing <X+η, Y+β> = -1/2 (η(Y) + β(X)).
pub fn pair_indefinite(sigma: &GenSection, tau: &GenSection) -> RationalFn {
    let half = RationalFn::constant(
        sigma.vec.component(0).arity(),
        crate::numberfield::FieldElem::from_rational(crate::numberfield::rat_frac(-1, 2)),
    );
    &(&sigma.form.pair(&tau.vec) + &tau.form.pair(&sigma.vec)) * &half
}

/// Natural symplectic pairing (X+η, Y+β) = -1/2 (η(Y) - β(X)).
pub fn pair_symplectic(sigma: &GenSection, tau: &GenSection) -> RationalFn {
    let half = RationalFn::constant(
        sigma.vec.component(0).arity(),
        crate::numberfield::FieldElem::from_rational(crate::numberfield::rat_frac(-1, 2)),
    );
    &(&sigma.form.pair(&tau.vec) - &tau.form.pair(&sigma.vec)) * &half
}

/// Metric pairing ǧ(X+η, Y+β) = g(X,Y) + g(♯η, ♯β).
pub fn pair_metric(g: &Metric, sigma: &GenSection, tau: &GenSection) -> RationalFn {
    &g.pair(&sigma.vec, &tau.vec) + &g.pair(&g.sharp(&sigma.form), &g.sharp(&tau.form))
}

/// Lifted connection transporting the form part through the musical
/// isomorphisms: ∇̂_{X+η}(Y+β) = ∇_X Y + ♭(∇_X(♯β)).
pub fn hat_deriv(
    conn: &Connection,
    g: &Metric,
    sigma: &GenSection,
    tau: &GenSection,
) -> GenSection {
    GenSection {
        vec: conn.deriv_vector(&sigma.vec, &tau.vec),
        form: g.flat(&conn.deriv_vector(&sigma.vec, &g.sharp(&tau.form))),
    }
}

/// Lifted connection using the dual connection on forms:
/// ∇̌_{X+η}(Y+β) = ∇_X Y + ∇_X β.
pub fn check_deriv(conn: &Connection, sigma: &GenSection, tau: &GenSection) -> GenSection {
    GenSection {
        vec: conn.deriv_vector(&sigma.vec, &tau.vec),
        form: conn.deriv_oneform(&sigma.vec, &tau.form),
    }
}

/// Whether ∇̂ and ∇̌ agree as operators: checked on basis sections
/// (their difference is tensorial), equivalent to ∇g = 0.
pub fn hat_equals_check(conn: &Connection, g: &Metric) -> bool {
    let n = conn.dim();
    for i in 0..n {
        let dir = GenSection::basis(n, i);
        for c in 0..2 * n {
            let tau = GenSection::basis(n, c);
            if hat_deriv(conn, g, &dir, &tau) != check_deriv(conn, &dir, &tau) {
                return false;
            }
        }
    }
    true
}

/// The bracket [X+η, Y+β]_∇ = [X,Y] + ∇_X β - ∇_Y η.
pub fn gen_bracket(conn: &Connection, sigma: &GenSection, tau: &GenSection) -> GenSection {
    GenSection {
        vec: lie_bracket(&sigma.vec, &tau.vec),
        form: conn
            .deriv_oneform(&sigma.vec, &tau.form)
            .sub(&conn.deriv_oneform(&tau.vec, &sigma.form)),
    }
}

/// Which lifted connection differentiates a generalized operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lift {
    Hat,
    Check,
}

/// (∇̂_{∂_i} J)(τ) = ∇̂_{∂_i}(Jτ) - J(∇̂_{∂_i} τ) assembled on basis
/// sections into a block operator (the derivative is tensorial in τ).
/// The hat variant needs the metric; `Lift::Check` ignores it.
pub fn lifted_deriv_operator(
    lift: Lift,
    conn: &Connection,
    g: &Metric,
    op: &GenOperator,
    direction: usize,
) -> GenOperator {
    let n = conn.dim();
    let dir = GenSection::from_vector(VectorField::basis(n, direction));
    let deriv = |tau: &GenSection| -> GenSection {
        match lift {
            Lift::Hat => hat_deriv(conn, g, &dir, tau),
            Lift::Check => check_deriv(conn, &dir, tau),
        }
    };
    let columns: Vec<GenSection> = (0..2 * n)
        .map(|c| {
            let tau = GenSection::basis(n, c);
            deriv(&op.apply(&tau)).sub(&op.apply(&deriv(&tau)))
        })
        .collect();
    let block = FnMatrix::from_fn(2 * n, op.arity(), |r, c| {
        if r < n {
            columns[c].vec.component(r).clone()
        } else {
            columns[c].form.component(r - n).clone()
        }
    });
    GenOperator::from_block(&block)
}

/// ∇̂J = 0 (or ∇̌J = 0) across all coordinate directions.
pub fn is_lifted_parallel(lift: Lift, conn: &Connection, g: &Metric, op: &GenOperator) -> bool {
    (0..conn.dim()).all(|i| lifted_deriv_operator(lift, conn, g, op, i).is_zero())
}

/// Generalized Nijenhuis tensor of a block operator with respect to ∇:
///
/// ```text
/// N(J)(σ,τ) = [Jσ, Jτ]_∇ - J[Jσ, τ]_∇ - J[σ, Jτ]_∇ + J²[σ, τ]_∇
/// ```
pub fn gen_nijenhuis(
    conn: &Connection,
    op: &GenOperator,
    sigma: &GenSection,
    tau: &GenSection,
) -> GenSection {
    let js = op.apply(sigma);
    let jt = op.apply(tau);
    gen_bracket(conn, &js, &jt)
        .sub(&op.apply(&gen_bracket(conn, &js, tau)))
        .sub(&op.apply(&gen_bracket(conn, sigma, &jt)))
        .add(&op.apply(&op.apply(&gen_bracket(conn, sigma, tau))))
}

/// ∇-integrability: the generalized Nijenhuis tensor vanishes on all
/// basis section pairs (∂_i, ∂_j), (∂_i, dx^j), (dx^i, dx^j). The tensor
/// is C∞-bilinear, so this decides vanishing on all sections; callers
/// that want extra guarding sample random non-basis pairs on top.
pub fn is_nabla_integrable(conn: &Connection, op: &GenOperator) -> bool {
    let n = conn.dim();
    for a in 0..2 * n {
        for b in (a + 1)..2 * n {
            let sigma = GenSection::basis(n, a);
            let tau = GenSection::basis(n, b);
            if !gen_nijenhuis(conn, op, &sigma, &tau).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The quasi-statistical combination as a 1-form:
/// QS(U,V) = (∇_U g)(V,·) - (∇_V g)(U,·) + ♭(T(U,V)).
pub fn qs_form(conn: &Connection, g: &Metric, u: &VectorField, v: &VectorField) -> OneForm {
    conn.deriv_metric(u, g)
        .contract_left(v)
        .sub(&conn.deriv_metric(v, g).contract_left(u))
        .add(&g.flat(&conn.torsion(u, v)))
}

/// Whether the literal or the corrected final term is used in the
/// expanded form-form Nijenhuis display of the dual-tensor structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalTerm {
    /// Final group ends with (∇_W g)(J²W, ·).
    Literal,
    /// Final group ends with (∇_W g)(J²Z, ·), completing a QS group.
    Corrected,
}

/// Expanded component formula for N(J)(X+0, Y+0) of the dual-tensor
/// structure [[J, (I-J²)g⁻¹], [g, 0]]; cross-check against the
/// definitional computation.
pub fn dual_expansion_vec_vec(
    conn: &Connection,
    g: &Metric,
    j: &Tensor11,
    x: &VectorField,
    y: &VectorField,
) -> GenSection {
    let n = j.n();
    let s = Tensor11::identity(n, j.arity()).sub(&j.compose(j));
    let jx = j.apply(x);
    let jy = j.apply(y);
    let qs_yx = qs_form(conn, g, y, x);
    let vec = nijenhuis(j, x, y).add(&s.apply(&g.sharp(&qs_yx)));
    let dyj = conn.deriv_tensor11(y, j);
    let dxj = conn.deriv_tensor11(x, j);
    let form = qs_form(conn, g, &jx, y)
        .add(&qs_form(conn, g, x, &jy))
        .add(&qs_yx)
        .add(&j.dual_apply(&qs_yx))
        .add(&dyj.dual_apply(&g.flat(x)))
        .sub(&dxj.dual_apply(&g.flat(y)));
    GenSection::new(vec, form)
}

/// Expanded component formula for N(J)(X+0, 0+♭Z) of the dual-tensor
/// structure (the display's collapsed quasi-statistical-group form).
pub fn dual_expansion_vec_form(
    conn: &Connection,
    g: &Metric,
    j: &Tensor11,
    x: &VectorField,
    z: &VectorField,
) -> GenSection {
    let n = j.n();
    let s = Tensor11::identity(n, j.arity()).sub(&j.compose(j));
    let sz = s.apply(z);
    let j2z = j.apply(&j.apply(z));
    let jx = j.apply(x);
    let vec = g
        .sharp(&qs_form(conn, g, &jx, &sz))
        .neg()
        .add(&j.apply(&g.sharp(&qs_form(conn, g, x, &sz))));
    let form = qs_form(conn, g, x, z).sub(&qs_form(conn, g, x, &j2z));
    GenSection::new(vec, form)
}

/// Expanded component formula for N(J)(0+♭Z, 0+♭W) of the dual-tensor
/// structure. `FinalTerm::Literal` reproduces the display verbatim
/// (suspected misprint in its last group); `FinalTerm::Corrected`
/// substitutes the argument that completes the quasi-statistical group.
pub fn dual_expansion_form_form(
    conn: &Connection,
    g: &Metric,
    j: &Tensor11,
    z: &VectorField,
    w: &VectorField,
    final_term: FinalTerm,
) -> GenSection {
    let n = j.n();
    let j2z = j.apply(&j.apply(z));
    let j2w = j.apply(&j.apply(w));
    let group4 = match final_term {
        FinalTerm::Corrected => qs_form(conn, g, &j2z, w),
        FinalTerm::Literal => conn
            .deriv_metric(&j2z, g)
            .contract_left(w)
            .sub(&conn.deriv_metric(w, g).contract_left(&j2w))
            .add(&g.flat(&conn.torsion(&j2z, w))),
    };
    let vec = g
        .sharp(&qs_form(conn, g, w, z))
        .add(&g.sharp(&qs_form(conn, g, &j2w, &j2z)))
        .add(&g.sharp(&qs_form(conn, g, z, &j2w)))
        .add(&g.sharp(&group4));
    GenSection::new(vec, OneForm::zero(n))
}

/// Expected ∇̂-derivative of the diagonal structure on (X, Y+β):
/// (∇_X J₁)Y + ♭((∇_X J₂)(♯β)).
pub fn diag_hat_deriv_expected(
    conn: &Connection,
    g: &Metric,
    j1: &Tensor11,
    j2: &Tensor11,
    x: &VectorField,
    tau: &GenSection,
) -> GenSection {
    GenSection {
        vec: conn.deriv_tensor11(x, j1).apply(&tau.vec),
        form: g.flat(&conn.deriv_tensor11(x, j2).apply(&g.sharp(&tau.form))),
    }
}

/// Expected ∇̌-derivative of the diagonal structure on (X, Y+β):
/// (∇_X J₁)Y + (∇_X J₂)*(β).
pub fn diag_check_deriv_expected(
    conn: &Connection,
    j1: &Tensor11,
    j2: &Tensor11,
    x: &VectorField,
    tau: &GenSection,
) -> GenSection {
    GenSection {
        vec: conn.deriv_tensor11(x, j1).apply(&tau.vec),
        form: conn.deriv_tensor11(x, j2).dual_apply(&tau.form),
    }
}
