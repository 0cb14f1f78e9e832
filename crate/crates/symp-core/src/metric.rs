//! Compatible triples `(ω, J, g)`, the Hodge star, the almost-complex
//! weight operator, Hodge adjoints, Laplacians, and their fourth-order
//! elliptic substitutes.
//!
//! `J` acts on coframe coefficient columns; the induced tangent action
//! is its transpose, so the triple identities read `J² = −I`,
//! `J Ω Jᵀ = Ω`, and `g = Ω Jᵀ` symmetric positive definite.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::blade::Blade;
use crate::form::{complexify, Form};
use crate::linalg::Mat;
use crate::scalar::{rint, Gaussian, Rat, Scalar};
use crate::symplectic::{SymplecticContext, SymplecticError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TripleError {
    OmegaNotOrthogonal,
    NotAlmostComplex,
    OmegaNotInvariant,
    MetricNotPositive,
    BadShape,
}

impl fmt::Display for TripleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleError::OmegaNotOrthogonal => write!(
                f,
                "omega's coframe matrix is not orthogonal (Ω^T Ω ≠ I); supply J explicitly"
            ),
            TripleError::NotAlmostComplex => write!(f, "J² ≠ -Identity"),
            TripleError::OmegaNotInvariant => write!(f, "ω(JX, JY) ≠ ω(X, Y) (J Ω Jᵀ ≠ Ω)"),
            TripleError::MetricNotPositive => {
                write!(f, "g = ω(·, J·) is not symmetric positive definite")
            }
            TripleError::BadShape => write!(f, "J matrix has the wrong shape"),
        }
    }
}

impl std::error::Error for TripleError {}

/// Validated compatible triple on a `2n`-dimensional coframe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatibleTriple {
    dim: usize,
    n: usize,
    omega_mat: Mat,
    j_mat: Mat,
    g_mat: Mat,
    g_inv: Mat,
    /// Coefficient of the top blade in `ω^n/n!`; fixes the orientation.
    vol_coeff: Rat,
}

impl CompatibleTriple {
    /// Builds the triple from a symplectic two-form and an optional `J`.
    /// When `J` is omitted, the coframe matrix `Ω` of ω must be
    /// orthogonal; then `J := Ω` and `g` is the identity. A supplied `J`
    /// is validated against all triple identities.
    pub fn build(omega: &Form<Rat>, j: Option<Mat>) -> Result<CompatibleTriple, TripleError> {
        let dim = omega.dim();
        let n = dim / 2;
        let mut omega_mat = Mat::zeros(dim, dim);
        for (blade, c) in omega.terms() {
            let ix = blade.indices();
            omega_mat.set(ix[0] - 1, ix[1] - 1, c.clone());
            omega_mat.set(ix[1] - 1, ix[0] - 1, -c.clone());
        }

        let j_mat = match j {
            None => {
                let gram = omega_mat.transpose().matmul(&omega_mat);
                if gram != Mat::identity(dim) {
                    return Err(TripleError::OmegaNotOrthogonal);
                }
                omega_mat.clone()
            }
            Some(j) => {
                if j.rows() != dim || j.cols() != dim {
                    return Err(TripleError::BadShape);
                }
                j
            }
        };

        if j_mat.matmul(&j_mat) != Mat::identity(dim).neg() {
            return Err(TripleError::NotAlmostComplex);
        }
        if j_mat.matmul(&omega_mat).matmul(&j_mat.transpose()) != omega_mat {
            return Err(TripleError::OmegaNotInvariant);
        }
        let g_mat = omega_mat.matmul(&j_mat.transpose());
        if !g_mat.is_positive_definite() {
            return Err(TripleError::MetricNotPositive);
        }
        let g_inv = g_mat
            .inverse()
            .expect("positive definite matrices are invertible");

        let mut top = Form::unit(dim);
        for _ in 0..n {
            top = top.wedge(omega);
        }
        let vol_coeff = top.coefficient(&Blade::top(dim)) / rint(crate::symplectic::factorial(n));

        Ok(CompatibleTriple {
            dim,
            n,
            omega_mat,
            j_mat,
            g_mat,
            g_inv,
            vol_coeff,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn j_matrix(&self) -> &Mat {
        &self.j_mat
    }

    pub fn g_matrix(&self) -> &Mat {
        &self.g_mat
    }

    pub fn omega_matrix(&self) -> &Mat {
        &self.omega_mat
    }

    pub fn volume_coefficient(&self) -> &Rat {
        &self.vol_coeff
    }

    /// Hodge star for the compatible metric with the `ω^n/n!`
    /// orientation: the coefficient of `*a` on the complement of a
    /// degree-k blade `I` is `ε(I, Iᶜ) · Σ_J det(g⁻¹[I,J]) a_J · vol`.
    pub fn hodge_star<K: Scalar>(&self, a: &Form<K>) -> Form<K> {
        let mut out = Form::zero(self.dim);
        let degrees = a.degrees();
        for k in degrees {
            let part = a.project_degree(k);
            for blade_i in Blade::enumerate(self.dim, k) {
                let rows: Vec<usize> = blade_i.indices().iter().map(|i| i - 1).collect();
                let mut pair = K::zero();
                for (blade_j, c) in part.terms() {
                    let cols: Vec<usize> = blade_j.indices().iter().map(|j| j - 1).collect();
                    let det = self.g_inv.submatrix_det(&rows, &cols);
                    if !Zero::is_zero(&det) {
                        pair = pair.plus(&c.scale(&det));
                    }
                }
                if pair.is_zero() {
                    continue;
                }
                let complement = blade_i.complement(self.dim);
                let sign = blade_i
                    .split_sign(&complement)
                    .expect("complement is disjoint");
                out = out.plus(&Form::term(
                    self.dim,
                    complement,
                    pair.scale(&(&self.vol_coeff * rint(sign as i64))),
                ));
            }
        }
        out
    }

    /// The weight operator `Σ i^{p−q} Π^{p,q}`, realized as the
    /// multiplicative extension of `J` to each blade; real on real forms.
    pub fn jay<K: Scalar>(&self, a: &Form<K>) -> Form<K> {
        let mut out = Form::zero(self.dim);
        for (blade, c) in a.terms() {
            let mut image = Form::constant(self.dim, c.clone());
            for i in blade.indices() {
                // J e_i = Σ_j J[j][i] e_j
                let mut one = Form::zero(self.dim);
                for j in 1..=self.dim {
                    let entry = self.j_mat.get(j - 1, i - 1);
                    if !Zero::is_zero(entry) {
                        one = one.plus(&Form::term(
                            self.dim,
                            Blade::one_form(j, self.dim).unwrap(),
                            K::from_rat(entry),
                        ));
                    }
                }
                image = image.wedge(&one);
            }
            out = out.plus(&image);
        }
        out
    }

    /// Inverse of [`CompatibleTriple::jay`]: `(−1)^k` times `jay` on
    /// degree-k components.
    pub fn jay_inverse<K: Scalar>(&self, a: &Form<K>) -> Form<K> {
        let j = self.jay(a);
        let mut out = Form::zero(self.dim);
        for k in j.degrees() {
            let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
            out = out.plus(&j.project_degree(k).scale_rat(&sign));
        }
        out
    }

    /// Derivation extension of `J` to forms; has eigenvalue `i(p−q)` on
    /// `(p,q)` components and separates them within a fixed degree.
    fn jay_derivation(&self, a: &Form<Gaussian>) -> Form<Gaussian> {
        let mut out = Form::zero(self.dim);
        for (blade, c) in a.terms() {
            let indices = blade.indices();
            for pos in 0..indices.len() {
                let mut image = Form::constant(self.dim, c.clone());
                for (pos2, &s) in indices.iter().enumerate() {
                    let factor = if pos2 == pos {
                        let mut one = Form::zero(self.dim);
                        for j in 1..=self.dim {
                            let entry = self.j_mat.get(j - 1, s - 1);
                            if !Zero::is_zero(entry) {
                                one = one.plus(&Form::term(
                                    self.dim,
                                    Blade::one_form(j, self.dim).unwrap(),
                                    Gaussian::from_rat(entry),
                                ));
                            }
                        }
                        one
                    } else {
                        Form::term(
                            self.dim,
                            Blade::one_form(s, self.dim).unwrap(),
                            Gaussian::one(),
                        )
                    };
                    image = image.wedge(&factor);
                }
                out = out.plus(&image);
            }
        }
        out
    }

    /// Projections onto `(p,q)` components of a homogeneous complexified
    /// form, by exact Lagrange interpolation on the derivation extension
    /// of `J` (eigenvalue `i(p−q)` on the `(p,q)` part).
    pub fn pq_components(
        &self,
        a: &Form<Gaussian>,
    ) -> Result<BTreeMap<(usize, usize), Form<Gaussian>>, SymplecticError> {
        if a.is_zero() {
            return Ok(BTreeMap::new());
        }
        let k = a
            .homogeneous_degree()
            .ok_or(SymplecticError::NonHomogeneous)?;
        let eigen = |p: usize| -> Gaussian {
            // i(p−q) with q = k−p
            let diff = 2 * p as i64 - k as i64;
            Gaussian::i().scale(&rint(diff))
        };
        let mut out = BTreeMap::new();
        for p in 0..=k {
            let mut proj = a.clone();
            for p_other in 0..=k {
                if p_other == p {
                    continue;
                }
                let shift = self
                    .jay_derivation(&proj)
                    .plus(&proj.scale(&eigen(p_other).negate()));
                let denom = eigen(p).minus(&eigen(p_other));
                proj = shift.scale(&denom.inv().expect("distinct eigenvalues"));
            }
            if !proj.is_zero() {
                out.insert((p, k - p), proj);
            }
        }
        debug_assert_eq!(
            out.values()
                .fold(Form::zero(self.dim), |acc, f| acc.plus(f)),
            a.clone(),
            "(p,q) components must sum to the input"
        );
        Ok(out)
    }
}

/// Laplacian selectors. The primitive variants require primitive input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LaplacianKind {
    D,
    DLambda,
    DPlusDLambda,
    DDLambda,
    DCapDLambda,
    PrimDPlusDLambda,
    PrimDDLambda,
    PrimDCapDLambda,
}

/// Fourth-order elliptic substitutes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EllipticKind {
    DPlusDLambda,
    DDLambda,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MetricOpError {
    NonPositiveLambda,
    NonPrimitiveInput,
    Symplectic(SymplecticError),
}

impl fmt::Display for MetricOpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricOpError::NonPositiveLambda => write!(f, "lambda must be positive"),
            MetricOpError::NonPrimitiveInput => {
                write!(f, "primitive Laplacians require primitive input")
            }
            MetricOpError::Symplectic(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MetricOpError {}

impl From<SymplecticError> for MetricOpError {
    fn from(e: SymplecticError) -> Self {
        MetricOpError::Symplectic(e)
    }
}

/// Symplectic context paired with a compatible triple; hosts every
/// operator that needs both the derivative and the metric.
pub struct MetricContext<'a, K: Scalar> {
    pub ctx: &'a SymplecticContext<'a, K>,
    pub triple: &'a CompatibleTriple,
}

impl<'a, K: Scalar> MetricContext<'a, K> {
    pub fn new(ctx: &'a SymplecticContext<'a, K>, triple: &'a CompatibleTriple) -> Self {
        assert_eq!(
            ctx.dim(),
            triple.dim(),
            "context and triple dimensions differ"
        );
        MetricContext { ctx, triple }
    }

    pub fn star(&self, a: &Form<K>) -> Form<K> {
        self.triple.hodge_star(a)
    }

    /// `d* = −*d*`.
    pub fn d_star(&self, a: &Form<K>) -> Form<K> {
        self.star(&self.ctx.d(&self.star(a))).negate()
    }

    /// `dΛ* = *dΛ*`.
    pub fn d_lambda_star(&self, a: &Form<K>) -> Form<K> {
        self.star(&self.ctx.d_lambda(&self.star(a)))
    }

    /// `(ddΛ)* = (−1)^{k+1} * ddΛ *` on degree-k components.
    pub fn dd_lambda_star(&self, a: &Form<K>) -> Form<K> {
        let mut out = Form::zero(self.ctx.dim());
        for k in a.degrees() {
            let part = a.project_degree(k);
            let sign = if (k + 1) % 2 == 0 { rint(1) } else { rint(-1) };
            out = out.plus(
                &self
                    .star(&self.ctx.dd_lambda(&self.star(&part)))
                    .scale_rat(&sign),
            );
        }
        out
    }

    /// `d^c = 𝒥⁻¹ d 𝒥`.
    pub fn d_c(&self, a: &Form<K>) -> Form<K> {
        self.triple.jay_inverse(&self.ctx.d(&self.triple.jay(a)))
    }

    /// The Laplacian of the given kind; `lambda` weighs the second-order
    /// block of the fourth-order kinds.
    pub fn laplacian(
        &self,
        kind: LaplacianKind,
        a: &Form<K>,
        lambda: &Rat,
    ) -> Result<Form<K>, MetricOpError> {
        if !lambda.is_positive() {
            return Err(MetricOpError::NonPositiveLambda);
        }
        let ctx = self.ctx;
        match kind {
            LaplacianKind::D => {
                // d d* + d* d
                Ok(self.d_star(&ctx.d(a)).plus(&ctx.d(&self.d_star(a))))
            }
            LaplacianKind::DLambda => {
                // dΛ* dΛ + dΛ dΛ*
                Ok(self
                    .d_lambda_star(&ctx.d_lambda(a))
                    .plus(&ctx.d_lambda(&self.d_lambda_star(a))))
            }
            LaplacianKind::DPlusDLambda => {
                // ddΛ (ddΛ)* + λ(d* d + dΛ* dΛ)
                let fourth = ctx.dd_lambda(&self.dd_lambda_star(a));
                let second = self
                    .d_star(&ctx.d(a))
                    .plus(&self.d_lambda_star(&ctx.d_lambda(a)));
                Ok(fourth.plus(&second.scale_rat(lambda)))
            }
            LaplacianKind::DDLambda => {
                // (ddΛ)* ddΛ + λ(d d* + dΛ dΛ*)
                let fourth = self.dd_lambda_star(&ctx.dd_lambda(a));
                let second = ctx
                    .d(&self.d_star(a))
                    .plus(&ctx.d_lambda(&self.d_lambda_star(a)));
                Ok(fourth.plus(&second.scale_rat(lambda)))
            }
            LaplacianKind::DCapDLambda => {
                // d d* + d* d + dΛ dΛ* + dΛ* dΛ
                Ok(ctx
                    .d(&self.d_star(a))
                    .plus(&self.d_star(&ctx.d(a)))
                    .plus(&ctx.d_lambda(&self.d_lambda_star(a)))
                    .plus(&self.d_lambda_star(&ctx.d_lambda(a))))
            }
            LaplacianKind::PrimDPlusDLambda => {
                self.require_primitive(a)?;
                // ddΛ (ddΛ)* + λ d* d
                let fourth = ctx.dd_lambda(&self.dd_lambda_star(a));
                Ok(fourth.plus(&self.d_star(&ctx.d(a)).scale_rat(lambda)))
            }
            LaplacianKind::PrimDDLambda => {
                self.require_primitive(a)?;
                // (ddΛ)* ddΛ + λ dΛ dΛ*
                let fourth = self.dd_lambda_star(&ctx.dd_lambda(a));
                Ok(fourth.plus(&ctx.d_lambda(&self.d_lambda_star(a)).scale_rat(lambda)))
            }
            LaplacianKind::PrimDCapDLambda => {
                self.require_primitive(a)?;
                // d* d + dΛ dΛ*
                Ok(self
                    .d_star(&ctx.d(a))
                    .plus(&ctx.d_lambda(&self.d_lambda_star(a))))
            }
        }
    }

    /// The fourth-order self-adjoint operator whose kernel matches the
    /// corresponding Laplacian kernel.
    pub fn elliptic_d(
        &self,
        kind: EllipticKind,
        a: &Form<K>,
        lambda: &Rat,
    ) -> Result<Form<K>, MetricOpError> {
        if !lambda.is_positive() {
            return Err(MetricOpError::NonPositiveLambda);
        }
        let ctx = self.ctx;
        match kind {
            EllipticKind::DPlusDLambda => {
                // (ddΛ)(ddΛ)* + (ddΛ)*(ddΛ) + d* dΛ dΛ* d + dΛ* d d* dΛ
                //   + λ(d* d + dΛ* dΛ)
                let t1 = ctx.dd_lambda(&self.dd_lambda_star(a));
                let t2 = self.dd_lambda_star(&ctx.dd_lambda(a));
                let t3 = self.d_star(&ctx.d_lambda(&self.d_lambda_star(&ctx.d(a))));
                let t4 = self.d_lambda_star(&ctx.d(&self.d_star(&ctx.d_lambda(a))));
                let second = self
                    .d_star(&ctx.d(a))
                    .plus(&self.d_lambda_star(&ctx.d_lambda(a)));
                Ok(t1
                    .plus(&t2)
                    .plus(&t3)
                    .plus(&t4)
                    .plus(&second.scale_rat(lambda)))
            }
            EllipticKind::DDLambda => {
                // (ddΛ)*(ddΛ) + (ddΛ)(ddΛ)* + d dΛ* dΛ d* + dΛ d* d dΛ*
                //   + λ(d d* + dΛ dΛ*)
                let t1 = self.dd_lambda_star(&ctx.dd_lambda(a));
                let t2 = ctx.dd_lambda(&self.dd_lambda_star(a));
                let t3 = ctx.d(&self.d_lambda_star(&ctx.d_lambda(&self.d_star(a))));
                let t4 = ctx.d_lambda(&self.d_star(&ctx.d(&self.d_lambda_star(a))));
                let second = ctx
                    .d(&self.d_star(a))
                    .plus(&ctx.d_lambda(&self.d_lambda_star(a)));
                Ok(t1
                    .plus(&t2)
                    .plus(&t3)
                    .plus(&t4)
                    .plus(&second.scale_rat(lambda)))
            }
        }
    }

    fn require_primitive(&self, a: &Form<K>) -> Result<(), MetricOpError> {
        if self.ctx.is_primitive(a)? {
            Ok(())
        } else {
            Err(MetricOpError::NonPrimitiveInput)
        }
    }
}

/// Real and imaginary `(p,q)` data of a real form, exposed for reports.
pub fn pq_components_of_real(
    triple: &CompatibleTriple,
    a: &Form<Rat>,
) -> Result<BTreeMap<(usize, usize), Form<Gaussian>>, SymplecticError> {
    triple.pq_components(&complexify(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::real_imag;
    use crate::model::InvariantModel;
    use crate::scalar::rat;

    fn kt() -> InvariantModel {
        InvariantModel::builtin("kt").unwrap()
    }

    fn e(ix: &[usize]) -> Form<Rat> {
        Form::term(4, Blade::from_indices(ix, 4).unwrap(), rint(1))
    }

    #[test]
    fn default_triple_on_builtins() {
        let model = kt();
        let t = CompatibleTriple::build(model.omega(), None).unwrap();
        assert_eq!(t.g_matrix(), &Mat::identity(4));
        assert_eq!(t.volume_coefficient(), &rint(1));

        let torus3 = InvariantModel::builtin("torus3").unwrap();
        let t3 = CompatibleTriple::build(torus3.omega(), None).unwrap();
        assert_eq!(t3.g_matrix(), &Mat::identity(6));
    }

    #[test]
    fn non_orthogonal_omega_needs_explicit_j() {
        // ω = 2·e12 + e34: ΩᵀΩ = diag(4,4,1,1) ≠ I.
        let omega = e(&[1, 2]).scale_rat(&rint(2)).plus(&e(&[3, 4]));
        assert_eq!(
            CompatibleTriple::build(&omega, None),
            Err(TripleError::OmegaNotOrthogonal)
        );

        // An explicit J fixes it: J = diag-block [[0,1],[-1,0]] per pair
        // still satisfies JΩJᵀ = Ω and gives g = diag(2,2,1,1).
        let mut j = Mat::zeros(4, 4);
        j.set(0, 1, rint(1));
        j.set(1, 0, rint(-1));
        j.set(2, 3, rint(1));
        j.set(3, 2, rint(-1));
        let t = CompatibleTriple::build(&omega, Some(j)).unwrap();
        assert_eq!(t.g_matrix().get(0, 0), &rint(2));
        assert_eq!(t.g_matrix().get(2, 2), &rint(1));
    }

    #[test]
    fn bad_j_matrices_are_rejected() {
        let model = kt();
        let not_acs = Mat::identity(4);
        assert_eq!(
            CompatibleTriple::build(model.omega(), Some(not_acs)),
            Err(TripleError::NotAlmostComplex)
        );

        // J = -Ω satisfies J² = -I and JΩJᵀ = Ω but flips the metric sign.
        let t = CompatibleTriple::build(model.omega(), None).unwrap();
        let neg_j = t.j_matrix().neg();
        assert_eq!(
            CompatibleTriple::build(model.omega(), Some(neg_j)),
            Err(TripleError::MetricNotPositive)
        );
    }

    #[test]
    fn hodge_star_examples() {
        let model = kt();
        let t = CompatibleTriple::build(model.omega(), None).unwrap();
        assert_eq!(t.hodge_star(&Form::unit(4)), e(&[1, 2, 3, 4]));
        assert_eq!(t.hodge_star(&e(&[1])), e(&[2, 3, 4]));
        // ** = (−1)^k in dimension 4
        for k in 0..=4 {
            for blade in Blade::enumerate(4, k) {
                let a = Form::term(4, blade, rint(1));
                let twice = t.hodge_star(&t.hodge_star(&a));
                let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
                assert_eq!(twice, a.scale_rat(&sign));
            }
        }
    }

    #[test]
    fn jay_examples() {
        let model = kt();
        let t = CompatibleTriple::build(model.omega(), None).unwrap();
        // Functions and ω are fixed.
        assert_eq!(t.jay(&Form::<Rat>::unit(4)), Form::unit(4));
        assert_eq!(t.jay(model.omega()), model.omega().clone());
        // e13 − e24 is the real part of a (2,0)+(0,2) form: factor −1.
        let re_part = e(&[1, 3]).minus(&e(&[2, 4]));
        assert_eq!(t.jay(&re_part), re_part.negate());
        // jay_inverse undoes jay.
        let mixed = e(&[1]).plus(&e(&[2, 3]).scale_rat(&rat(3, 5)));
        assert_eq!(t.jay_inverse(&t.jay(&mixed)), mixed);
    }

    #[test]
    fn pq_components_of_kt_two_forms() {
        let model = kt();
        let t = CompatibleTriple::build(model.omega(), None).unwrap();

        // (e1 + i e2)∧(e3 + i e4) is pure (2,0).
        let omega_20 = complexify(&e(&[1, 3]).minus(&e(&[2, 4])))
            .plus(&complexify(&e(&[1, 4]).plus(&e(&[2, 3]))).scale(&Gaussian::i()));
        let comps = t.pq_components(&omega_20).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps.contains_key(&(2, 0)));

        // ω is (1,1).
        let comps = t.pq_components(&complexify(model.omega())).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps.contains_key(&(1, 1)));

        // Conjugate symmetry of a real form's components.
        let real = e(&[1, 3]);
        let comps = pq_components_of_real(&t, &real).unwrap();
        let c20 = comps.get(&(2, 0)).unwrap();
        let c02 = comps.get(&(0, 2)).unwrap();
        let conj = c20.map_coeffs(|c| c.conj());
        assert_eq!(&conj, c02);
        // Components sum to the complexified input.
        let sum = comps.values().fold(Form::zero(4), |acc, f| acc.plus(f));
        let (re, im) = real_imag(&sum);
        assert_eq!(re, real);
        assert!(im.is_zero());
    }

    #[test]
    fn star_identities_hold_for_non_identity_metric() {
        // omega = 2 e12 + e34 with the standard block J gives
        // g = diag(2,2,1,1) and volume coefficient 2.
        let omega = e(&[1, 2]).scale_rat(&rint(2)).plus(&e(&[3, 4]));
        let mut j = Mat::zeros(4, 4);
        j.set(0, 1, rint(1));
        j.set(1, 0, rint(-1));
        j.set(2, 3, rint(1));
        j.set(3, 2, rint(-1));
        let t = CompatibleTriple::build(&omega, Some(j)).unwrap();
        assert_eq!(t.volume_coefficient(), &rint(2));

        // star∘star = (-1)^k blade by blade.
        for k in 0..=4 {
            for blade in Blade::enumerate(4, k) {
                let a = Form::term(4, blade, rint(1));
                let twice = t.hodge_star(&t.hodge_star(&a));
                let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
                assert_eq!(twice, a.scale_rat(&sign), "blade {blade}");
            }
        }

        // Adjointness against the scaled pairing on a model carrying the
        // same structure constants.
        let model = InvariantModel::new(
            "kt-scaled",
            4,
            {
                let mut d_one = vec![Form::zero(4); 4];
                d_one[3] = e(&[2, 3]);
                d_one
            },
            omega.clone(),
            rint(1),
        )
        .unwrap();
        let ctx = SymplecticContext::new(&model, omega).unwrap();
        let m = MetricContext::new(&ctx, &t);
        let a = e(&[4]).plus(&e(&[2]).scale_rat(&rat(1, 3)));
        let b = e(&[2, 3]).plus(&e(&[1, 2]).scale_rat(&rint(5)));
        let lhs = model.integrate_top(&ctx.d(&a).wedge(&m.star(&b)));
        let rhs = model.integrate_top(&a.wedge(&m.star(&m.d_star(&b))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_examples_on_kt() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();
        let t = CompatibleTriple::build(model.omega(), None).unwrap();
        let m = MetricContext::new(&ctx, &t);

        // Flat model: adjoints of constant-coefficient forms vanish on the torus.
        let torus = InvariantModel::builtin("torus2").unwrap();
        let tctx = SymplecticContext::new(&torus, torus.omega().clone()).unwrap();
        let tt = CompatibleTriple::build(torus.omega(), None).unwrap();
        let tm = MetricContext::new(&tctx, &tt);
        assert!(tm.d_star(&e(&[1])).is_zero());

        // d* e23 = -*d*(e23) = e4, frozen from the star-derivative-star oracle.
        assert_eq!(m.d_star(&e(&[2, 3])), e(&[4]));

        // Adjointness ⟨d a, b⟩ = ⟨a, d* b⟩ with ⟨x,y⟩ = ∫ x∧*y.
        let a = e(&[4]);
        let b = e(&[2, 3]).plus(&e(&[1, 2]).scale_rat(&rat(2, 3)));
        let lhs = model.integrate_top(&ctx.d(&a).wedge(&m.star(&b)));
        let rhs = model.integrate_top(&a.wedge(&m.star(&m.d_star(&b))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laplacian_guards() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();
        let t = CompatibleTriple::build(model.omega(), None).unwrap();
        let m = MetricContext::new(&ctx, &t);

        assert!(matches!(
            m.laplacian(LaplacianKind::DPlusDLambda, &e(&[1]), &rint(0)),
            Err(MetricOpError::NonPositiveLambda)
        ));
        assert!(matches!(
            m.laplacian(LaplacianKind::PrimDPlusDLambda, model.omega(), &rint(1)),
            Err(MetricOpError::NonPrimitiveInput)
        ));
        assert!(matches!(
            m.elliptic_d(EllipticKind::DDLambda, &e(&[1]), &rint(-1)),
            Err(MetricOpError::NonPositiveLambda)
        ));

        // ω is d+dΛ-harmonic on kt.
        let res = m
            .laplacian(LaplacianKind::DPlusDLambda, model.omega(), &rint(1))
            .unwrap();
        assert!(res.is_zero());
        let res = m
            .elliptic_d(EllipticKind::DPlusDLambda, model.omega(), &rint(1))
            .unwrap();
        assert!(res.is_zero());

        // e3 is not d∩dΛ-harmonic on kt.
        let res = m
            .laplacian(LaplacianKind::DCapDLambda, &e(&[3]), &rint(1))
            .unwrap();
        assert!(!res.is_zero());
    }
}
