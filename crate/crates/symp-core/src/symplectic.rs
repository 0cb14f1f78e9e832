//! The sl(2) operator triple, the degree-lowering differential, and the
//! symplectic star, generic over both derivative backends.
//!
//! The operators are `L(a) = ω ∧ a`, `Λ(a) = ½ (ω⁻¹)^{ij} i_i i_j a`,
//! and `H = Σ_k (n−k) Π^k`, normalized so that `Λ L f = n f` on
//! functions. The degree-lowering differential is the commutator
//! `dΛ := d∘Λ − Λ∘d`, and `ddΛ = d∘dΛ = −dΛ∘d` preserves degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::blade::Blade;
use crate::form::{promote, Form};
use crate::linalg::Mat;
use crate::model::Derivative;
use crate::scalar::{rint, Rat, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymplecticError {
    Degenerate,
    NotTwoForm,
    NonHomogeneous,
    NonPrimitiveComponent {
        r: usize,
    },
    DegreeMismatch,
    /// `H⁻¹` hit a middle-degree component, where `n−k = 0`.
    HInverseAtMiddleDegree,
}

impl fmt::Display for SymplecticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymplecticError::Degenerate => write!(f, "two-form is degenerate"),
            SymplecticError::NotTwoForm => write!(f, "expected a homogeneous two-form"),
            SymplecticError::NonHomogeneous => write!(f, "operation requires a homogeneous form"),
            SymplecticError::NonPrimitiveComponent { r } => {
                write!(f, "component at L-power {r} is not primitive")
            }
            SymplecticError::DegreeMismatch => write!(f, "component degrees are inconsistent"),
            SymplecticError::HInverseAtMiddleDegree => {
                write!(f, "H^-1 is undefined on forms of middle degree")
            }
        }
    }
}

impl std::error::Error for SymplecticError {}

/// Symplectic structure bound to a backend derivative. Immutable after
/// construction; every operation is a pure function.
pub struct SymplecticContext<'a, K: Scalar> {
    dim: usize,
    n: usize,
    omega_rat: Form<Rat>,
    omega: Form<K>,
    /// Exact inverse of ω's antisymmetric coefficient matrix.
    omega_inv: Mat,
    deriv: &'a dyn Derivative<K>,
}

impl<'a, K: Scalar> SymplecticContext<'a, K> {
    pub fn new(
        deriv: &'a dyn Derivative<K>,
        omega_rat: Form<Rat>,
    ) -> Result<Self, SymplecticError> {
        let dim = deriv.ambient_dim();
        if omega_rat.dim() != dim || omega_rat.homogeneous_degree() != Some(2) {
            return Err(SymplecticError::NotTwoForm);
        }
        // Antisymmetric coefficient matrix: Ω[i][j] is the coefficient of
        // e_i∧e_j with sign, for i ≠ j.
        let mut omega_mat = Mat::zeros(dim, dim);
        for (blade, c) in omega_rat.terms() {
            let ix = blade.indices();
            let (i, j) = (ix[0] - 1, ix[1] - 1);
            omega_mat.set(i, j, c.clone());
            omega_mat.set(j, i, -c.clone());
        }
        let omega_inv = omega_mat.inverse().ok_or(SymplecticError::Degenerate)?;
        let ctx = SymplecticContext {
            dim,
            n: dim / 2,
            omega: promote(&omega_rat),
            omega_rat,
            omega_inv,
            deriv,
        };
        // Normalization guard: Λ L f = n f on functions.
        debug_assert_eq!(
            ctx.dual_lefschetz(&ctx.lefschetz(&Form::unit(dim))),
            Form::unit(dim).scale_rat(&rint(ctx.n as i64))
        );
        Ok(ctx)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Form<K> {
        &self.omega
    }

    pub fn omega_rat(&self) -> &Form<Rat> {
        &self.omega_rat
    }

    pub fn omega_inverse(&self) -> &Mat {
        &self.omega_inv
    }

    pub fn derivative(&self) -> &dyn Derivative<K> {
        self.deriv
    }

    /// Backend exterior derivative.
    pub fn d(&self, a: &Form<K>) -> Form<K> {
        self.deriv.d(a)
    }

    /// `L(a) = ω ∧ a`.
    pub fn lefschetz(&self, a: &Form<K>) -> Form<K> {
        self.omega.wedge(a)
    }

    /// `Λ(a) = ½ (ω⁻¹)^{ij} i_{∂i} i_{∂j} a`.
    pub fn dual_lefschetz(&self, a: &Form<K>) -> Form<K> {
        let mut out = Form::zero(self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let w = self.omega_inv.get(i - 1, j - 1);
                if Zero::is_zero(w) {
                    continue;
                }
                let half = w / rint(2);
                out = out.plus(&a.contract(j).contract(i).scale_rat(&half));
            }
        }
        out
    }

    /// `H = Σ_k (n−k) Π^k`, extended componentwise.
    pub fn degree_count(&self, a: &Form<K>) -> Form<K> {
        let mut out = Form::zero(self.dim);
        for k in a.degrees() {
            let factor = rint(self.n as i64 - k as i64);
            out = out.plus(&a.project_degree(k).scale_rat(&factor));
        }
        out
    }

    /// `H⁻¹ = Σ_k (n−k)⁻¹ Π^k`; errors on middle-degree components.
    pub fn degree_count_inverse(&self, a: &Form<K>) -> Result<Form<K>, SymplecticError> {
        let mut out = Form::zero(self.dim);
        for k in a.degrees() {
            if k == self.n {
                return Err(SymplecticError::HInverseAtMiddleDegree);
            }
            let factor = rint(1) / rint(self.n as i64 - k as i64);
            out = out.plus(&a.project_degree(k).scale_rat(&factor));
        }
        Ok(out)
    }

    /// `L^r` by iterated wedge.
    pub fn lefschetz_pow(&self, r: usize, a: &Form<K>) -> Form<K> {
        let mut out = a.clone();
        for _ in 0..r {
            out = self.lefschetz(&out);
        }
        out
    }

    pub fn dual_lefschetz_pow(&self, r: usize, a: &Form<K>) -> Form<K> {
        let mut out = a.clone();
        for _ in 0..r {
            out = self.dual_lefschetz(&out);
        }
        out
    }

    /// `dΛ = d∘Λ − Λ∘d`; lowers degree by one and squares to zero.
    pub fn d_lambda(&self, a: &Form<K>) -> Form<K> {
        let left = self.d(&self.dual_lefschetz(a));
        let right = self.dual_lefschetz(&self.d(a));
        left.minus(&right)
    }

    /// `ddΛ = d ∘ dΛ = −dΛ ∘ d`; preserves degree.
    pub fn dd_lambda(&self, a: &Form<K>) -> Form<K> {
        self.d(&self.d_lambda(a))
    }

    /// Primitivity test `Λ b = 0` for homogeneous `b` of degree `k ≤ n`
    /// (degree above `n` is primitive only when zero). Checked builds
    /// also evaluate the equivalent condition `L^{n−k+1} b = 0`.
    pub fn is_primitive(&self, b: &Form<K>) -> Result<bool, SymplecticError> {
        if b.is_zero() {
            return Ok(true);
        }
        let k = b
            .homogeneous_degree()
            .ok_or(SymplecticError::NonHomogeneous)?;
        if k > self.n {
            return Ok(false);
        }
        let by_lambda = self.dual_lefschetz(b).is_zero();
        debug_assert_eq!(
            by_lambda,
            self.lefschetz_pow(self.n - k + 1, b).is_zero(),
            "primitivity conditions disagree"
        );
        Ok(by_lambda)
    }

    /// Unique Lefschetz decomposition `a = Σ_r (1/r!) L^r B_{k−2r}` with
    /// every `B` primitive, found by solving the exact linear system
    /// `{Λ B_{k−2r} = 0, Σ (1/r!) L^r B_{k−2r} = a}` over the blade
    /// basis. The solve runs once over the rationals per module-basis
    /// key of the coefficient ring.
    pub fn lefschetz_decompose(
        &self,
        a: &Form<K>,
    ) -> Result<LefschetzComponents<K>, SymplecticError> {
        let k = match a.homogeneous_degree() {
            Some(k) => k,
            None if a.is_zero() => {
                return Ok(LefschetzComponents {
                    dim: self.dim,
                    degree: 0,
                    parts: Vec::new(),
                })
            }
            None => return Err(SymplecticError::NonHomogeneous),
        };

        let r_min = k.saturating_sub(self.n);
        let r_max = k / 2;
        let mut parts_by_r: BTreeMap<usize, BTreeMap<K::SplitKey, Form<Rat>>> = BTreeMap::new();
        for (key, piece) in a.split_parts() {
            for (r, b) in self.decompose_rational(&piece, k, r_min, r_max) {
                parts_by_r.entry(r).or_default().insert(key.clone(), b);
            }
        }

        let mut parts = Vec::new();
        for r in r_min..=r_max {
            let form = match parts_by_r.get(&r) {
                Some(pieces) => Form::unsplit_parts(self.dim, pieces),
                None => Form::zero(self.dim),
            };
            debug_assert!(self.is_primitive(&form).unwrap_or(false));
            parts.push((r, form));
        }
        Ok(LefschetzComponents {
            dim: self.dim,
            degree: k,
            parts,
        })
    }

    /// Rational core of the decomposition solve.
    fn decompose_rational(
        &self,
        a: &Form<Rat>,
        k: usize,
        r_min: usize,
        r_max: usize,
    ) -> Vec<(usize, Form<Rat>)> {
        let target_blades = Blade::enumerate(self.dim, k);
        let blade_index: BTreeMap<Blade, usize> = target_blades
            .iter()
            .enumerate()
            .map(|(i, b)| (*b, i))
            .collect();

        // Unknown layout: for each r, the coefficients of B_{k-2r} over
        // the degree-(k-2r) blades.
        let mut block_blades: Vec<Vec<Blade>> = Vec::new();
        let mut offsets: Vec<usize> = Vec::new();
        let mut total = 0usize;
        for r in r_min..=r_max {
            let s = k - 2 * r;
            let blades = Blade::enumerate(self.dim, s);
            offsets.push(total);
            total += blades.len();
            block_blades.push(blades);
        }

        let rat_ctx = RationalOps {
            dim: self.dim,
            omega: &self.omega_rat,
            omega_inv: &self.omega_inv,
        };

        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();

        // Recomposition rows: Σ_r (1/r!) L^r B_{k-2r} = a.
        let mut recomposition = vec![vec![rint(0); total]; target_blades.len()];
        for (bi, r) in (r_min..=r_max).enumerate() {
            let inv_fact = rint(1) / rint(factorial(r));
            for (ci, blade) in block_blades[bi].iter().enumerate() {
                let image = rat_ctx.l_pow(r, &Form::term(self.dim, *blade, rint(1)));
                for (tb, c) in image.terms() {
                    let row = blade_index[tb];
                    recomposition[row][offsets[bi] + ci] = c * &inv_fact;
                }
            }
        }
        for (row, blade) in recomposition.into_iter().zip(&target_blades) {
            rows.push(row);
            rhs.push(a.coefficient(blade));
        }

        // Primitivity rows: Λ B_{k-2r} = 0.
        for (bi, r) in (r_min..=r_max).enumerate() {
            let s = k - 2 * r;
            if s < 2 {
                continue;
            }
            let out_blades = Blade::enumerate(self.dim, s - 2);
            let out_index: BTreeMap<Blade, usize> = out_blades
                .iter()
                .enumerate()
                .map(|(i, b)| (*b, i))
                .collect();
            let mut lam_rows = vec![vec![rint(0); total]; out_blades.len()];
            for (ci, blade) in block_blades[bi].iter().enumerate() {
                let image = rat_ctx.lambda(&Form::term(self.dim, *blade, rint(1)));
                for (ob, c) in image.terms() {
                    lam_rows[out_index[ob]][offsets[bi] + ci] = c.clone();
                }
            }
            for row in lam_rows {
                rows.push(row);
                rhs.push(rint(0));
            }
        }

        let system = Mat::from_rows(rows);
        let solution = system
            .solve(&rhs)
            .expect("Lefschetz decomposition system is always consistent");
        debug_assert_eq!(
            system.rank(),
            total,
            "decomposition solution must be unique"
        );

        let mut out = Vec::new();
        for (bi, r) in (r_min..=r_max).enumerate() {
            let form = Form::from_terms(
                self.dim,
                block_blades[bi]
                    .iter()
                    .enumerate()
                    .map(|(ci, b)| (*b, solution[offsets[bi] + ci].clone())),
            );
            if !form.is_zero() {
                out.push((r, form));
            }
        }
        out
    }

    /// Rebuild `Σ_r (1/r!) L^r B_{k−2r}` from primitive components.
    pub fn lefschetz_recompose(
        &self,
        c: &LefschetzComponents<K>,
    ) -> Result<Form<K>, SymplecticError> {
        let mut out = Form::zero(self.dim);
        for (r, b) in &c.parts {
            if b.is_zero() {
                continue;
            }
            if !self.is_primitive(b)? {
                return Err(SymplecticError::NonPrimitiveComponent { r: *r });
            }
            if b.homogeneous_degree() != Some(c.degree.wrapping_sub(2 * r)) {
                return Err(SymplecticError::DegreeMismatch);
            }
            let inv_fact = rint(1) / rint(factorial(*r));
            out = out.plus(&self.lefschetz_pow(*r, b).scale_rat(&inv_fact));
        }
        Ok(out)
    }

    /// Symplectic star, evaluated on Lefschetz components by the closed
    /// rule `*_s (1/r!) L^r B_s = (−1)^{s(s+1)/2} (1/(n−s−r)!) L^{n−s−r} B_s`.
    ///
    /// The factorial normalization of the componentwise rule is pinned
    /// by two requirements: consistency with the defining pairing and
    /// `*_s ∘ *_s = 1`. Checked builds cross-validate every evaluation
    /// against the pairing definition.
    pub fn symplectic_star(&self, a: &Form<K>) -> Result<Form<K>, SymplecticError> {
        if a.is_zero() {
            return Ok(Form::zero(self.dim));
        }
        if a.homogeneous_degree().is_none() {
            return Err(SymplecticError::NonHomogeneous);
        }
        let comps = self.lefschetz_decompose(a)?;
        let mut out = Form::zero(self.dim);
        for (r, b) in &comps.parts {
            if b.is_zero() {
                continue;
            }
            let s = comps.degree - 2 * r;
            let sign = if (s * (s + 1) / 2) % 2 == 0 {
                rint(1)
            } else {
                rint(-1)
            };
            let power = self.n - s - r;
            let coeff = sign / rint(factorial(power));
            out = out.plus(&self.lefschetz_pow(power, b).scale_rat(&coeff));
        }
        debug_assert_eq!(out, self.symplectic_star_pairing(a).unwrap());
        Ok(out)
    }

    /// Symplectic star straight from the defining pairing
    /// `A ∧ *_s A' = (ω⁻¹)^k(A, A') · ω^n/n!`: the coefficient of `*_s a`
    /// on the complement of a degree-k blade `I` is
    /// `ε(I, Iᶜ) · Σ_J det((ω⁻¹)[I,J]) a_J · vol`.
    pub fn symplectic_star_pairing(&self, a: &Form<K>) -> Result<Form<K>, SymplecticError> {
        if a.is_zero() {
            return Ok(Form::zero(self.dim));
        }
        let k = a
            .homogeneous_degree()
            .ok_or(SymplecticError::NonHomogeneous)?;
        let vol = self.volume_coefficient();
        let mut out = Form::zero(self.dim);
        for blade_i in Blade::enumerate(self.dim, k) {
            let rows: Vec<usize> = blade_i.indices().iter().map(|i| i - 1).collect();
            let mut pair = K::zero();
            for (blade_j, c) in a.terms() {
                let cols: Vec<usize> = blade_j.indices().iter().map(|j| j - 1).collect();
                let det = self.omega_inv.submatrix_det(&rows, &cols);
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
            let coeff = pair.scale(&(&vol * rint(sign as i64)));
            out = out.plus(&Form::term(self.dim, complement, coeff));
        }
        Ok(out)
    }

    /// Coefficient of the top blade in `ω^n/n!`.
    pub fn volume_coefficient(&self) -> Rat {
        let mut top = Form::unit(self.dim);
        for _ in 0..self.n {
            top = top.wedge(&self.omega_rat);
        }
        top.coefficient(&Blade::top(self.dim)) / rint(factorial(self.n))
    }

    /// `ω^n/n!` as a form over the coefficient ring.
    pub fn volume_form(&self) -> Form<K> {
        let mut top: Form<K> = Form::unit(self.dim);
        for _ in 0..self.n {
            top = top.wedge(&self.omega);
        }
        top.scale_rat(&(rint(1) / rint(factorial(self.n))))
    }
}

/// Rational-only operator bundle used inside the decomposition solver.
struct RationalOps<'b> {
    dim: usize,
    omega: &'b Form<Rat>,
    omega_inv: &'b Mat,
}

impl RationalOps<'_> {
    fn l_pow(&self, r: usize, a: &Form<Rat>) -> Form<Rat> {
        let mut out = a.clone();
        for _ in 0..r {
            out = self.omega.wedge(&out);
        }
        out
    }

    fn lambda(&self, a: &Form<Rat>) -> Form<Rat> {
        let mut out = Form::zero(self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let w = self.omega_inv.get(i - 1, j - 1);
                if Zero::is_zero(w) {
                    continue;
                }
                out = out.plus(&a.contract(j).contract(i).scale(&(w / rint(2))));
            }
        }
        out
    }
}

/// Primitive components of a Lefschetz decomposition: pairs `(r, B)`
/// with `B` primitive of degree `k − 2r`, including explicit zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LefschetzComponents<K: Scalar> {
    dim: usize,
    degree: usize,
    parts: Vec<(usize, Form<K>)>,
}

impl<K: Scalar> LefschetzComponents<K> {
    pub fn from_parts(dim: usize, degree: usize, parts: Vec<(usize, Form<K>)>) -> Self {
        LefschetzComponents { dim, degree, parts }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[(usize, Form<K>)] {
        &self.parts
    }

    /// The component `B_{k−2r}`, zero when absent.
    pub fn component(&self, r: usize) -> Form<K> {
        self.parts
            .iter()
            .find(|(rr, _)| *rr == r)
            .map(|(_, b)| b.clone())
            .unwrap_or_else(|| Form::zero(self.dim))
    }

    pub fn nonzero_count(&self) -> usize {
        self.parts.iter().filter(|(_, b)| !b.is_zero()).count()
    }
}

pub(crate) fn factorial(r: usize) -> i64 {
    (1..=r as i64).product::<i64>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InvariantModel;
    use crate::scalar::rat;

    fn kt() -> InvariantModel {
        InvariantModel::builtin("kt").unwrap()
    }

    fn e(ix: &[usize]) -> Form<Rat> {
        Form::term(4, Blade::from_indices(ix, 4).unwrap(), rint(1))
    }

    #[test]
    fn sl2_basics_on_kt() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();

        // L(1) = ω
        assert_eq!(ctx.lefschetz(&Form::unit(4)), model.omega().clone());
        // L beyond top degree vanishes
        assert!(ctx
            .lefschetz(&ctx.lefschetz(&model.omega().clone()))
            .is_zero());
        // L(e3) = e123, frozen from the wedge oracle (e12+e34)∧e3.
        assert_eq!(ctx.lefschetz(&e(&[3])), e(&[1, 2, 3]));

        // Λ(ω) = n = 2
        assert_eq!(
            ctx.dual_lefschetz(model.omega()),
            Form::unit(4).scale_rat(&rint(2))
        );
        // Λ on degree 1 vanishes
        assert!(ctx.dual_lefschetz(&e(&[1])).is_zero());
        // Λ(e13) = 0, frozen from the contraction oracle.
        assert!(ctx.dual_lefschetz(&e(&[1, 3])).is_zero());

        // H scaling per degree: n−k.
        assert_eq!(ctx.degree_count(&e(&[1])), e(&[1]));
        assert_eq!(
            ctx.degree_count(&e(&[1, 2, 3, 4])),
            e(&[1, 2, 3, 4]).scale_rat(&rint(-2))
        );
        assert_eq!(
            ctx.degree_count(&Form::unit(4)),
            Form::unit(4).scale_rat(&rint(2))
        );
    }

    #[test]
    fn d_lambda_witnesses_on_kt() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();

        // dΛ e14 = e3
        assert_eq!(ctx.d_lambda(&e(&[1, 4])), e(&[3]));
        // dΛ e124 = e23
        assert_eq!(ctx.d_lambda(&e(&[1, 2, 4])), e(&[2, 3]));
        // dΛ on functions vanishes
        assert!(ctx.d_lambda(&Form::unit(4)).is_zero());
        // ddΛ(ω) = 0 and ddΛ e14 = d e3 = 0
        assert!(ctx.dd_lambda(model.omega()).is_zero());
        assert!(ctx.dd_lambda(&e(&[1, 4])).is_zero());
    }

    #[test]
    fn primitivity_examples() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();

        assert!(ctx.is_primitive(&e(&[1])).unwrap());
        assert!(!ctx.is_primitive(model.omega()).unwrap());
        assert!(ctx.is_primitive(&e(&[1, 2]).minus(&e(&[3, 4]))).unwrap());
        // degree above n: only zero is primitive
        assert!(!ctx.is_primitive(&e(&[1, 2, 3])).unwrap());
        assert!(ctx.is_primitive(&Form::zero(4)).unwrap());
        // non-homogeneous input is rejected
        assert!(ctx.is_primitive(&Form::unit(4).plus(&e(&[1]))).is_err());
    }

    #[test]
    fn decompose_examples() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();

        // ω = L(1): B_2 = 0, B_0 = 1.
        let c = ctx.lefschetz_decompose(model.omega()).unwrap();
        assert!(c.component(0).is_zero());
        assert_eq!(c.component(1), Form::unit(4));

        // Primitive forms decompose as themselves.
        let b = e(&[1, 2]).minus(&e(&[3, 4]));
        let c = ctx.lefschetz_decompose(&b).unwrap();
        assert_eq!(c.component(0), b);
        assert!(c.component(1).is_zero());

        // e12 = (e12−e34)/2 + L(1/2).
        let c = ctx.lefschetz_decompose(&e(&[1, 2])).unwrap();
        assert_eq!(
            c.component(0),
            e(&[1, 2]).minus(&e(&[3, 4])).scale_rat(&rat(1, 2))
        );
        assert_eq!(c.component(1), Form::unit(4).scale_rat(&rat(1, 2)));

        // Round trip.
        let back = ctx.lefschetz_recompose(&c).unwrap();
        assert_eq!(back, e(&[1, 2]));
    }

    #[test]
    fn recompose_rejects_non_primitive() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();
        let comps = LefschetzComponents::from_parts(4, 2, vec![(0, model.omega().clone())]);
        assert!(matches!(
            ctx.lefschetz_recompose(&comps),
            Err(SymplecticError::NonPrimitiveComponent { r: 0 })
        ));
    }

    #[test]
    fn symplectic_star_examples() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();

        // *_s 1 = ω²/2 = e1234
        assert_eq!(
            ctx.symplectic_star(&Form::unit(4)).unwrap(),
            e(&[1, 2, 3, 4])
        );
        // *_s ω = ω
        assert_eq!(
            ctx.symplectic_star(model.omega()).unwrap(),
            model.omega().clone()
        );
        // *_s e1 = -e134, frozen from the pairing oracle.
        assert_eq!(
            ctx.symplectic_star(&e(&[1])).unwrap(),
            e(&[1, 3, 4]).negate()
        );
        // Non-homogeneous input is rejected.
        assert!(ctx.symplectic_star(&Form::unit(4).plus(&e(&[1]))).is_err());
    }

    #[test]
    fn degenerate_omega_is_rejected() {
        let model = InvariantModel::builtin("torus2").unwrap();
        let degenerate = e(&[1, 2]);
        assert!(matches!(
            SymplecticContext::<Rat>::new(&model, degenerate),
            Err(SymplecticError::Degenerate)
        ));
    }

    #[test]
    fn h_inverse_guards_middle_degree() {
        let model = kt();
        let ctx = SymplecticContext::new(&model, model.omega().clone()).unwrap();
        assert!(ctx.degree_count_inverse(&e(&[1])).is_ok());
        assert!(matches!(
            ctx.degree_count_inverse(&e(&[1, 2])),
            Err(SymplecticError::HInverseAtMiddleDegree)
        ));
    }
}
