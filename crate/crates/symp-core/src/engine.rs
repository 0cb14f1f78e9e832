//! Exact cohomology of an invariant-form complex: kernels, images,
//! quotients, harmonic spaces, and Hodge decompositions for every
//! operator kind, over the rational blade basis at each degree.

use std::fmt;

use num_traits::Zero;

use crate::blade::Blade;
use crate::form::Form;
use crate::linalg::Mat;
use crate::metric::{
    CompatibleTriple, EllipticKind, LaplacianKind, MetricContext, MetricOpError, TripleError,
};
use crate::model::InvariantModel;
use crate::scalar::{rint, Rat};
use crate::subspace::{Subspace, SubspaceError};
use crate::symplectic::{SymplecticContext, SymplecticError};

/// Cohomology kinds, including the primitive variants (prefixed `ph:`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Kind {
    D,
    DLambda,
    DPlusDLambda,
    DDLambda,
    DCapDLambda,
    PhD,
    PhDPlusDLambda,
    PhDDLambda,
    PhDCapDLambda,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::D,
        Kind::DLambda,
        Kind::DPlusDLambda,
        Kind::DDLambda,
        Kind::DCapDLambda,
        Kind::PhD,
        Kind::PhDPlusDLambda,
        Kind::PhDDLambda,
        Kind::PhDCapDLambda,
    ];

    pub const FULL: [Kind; 5] = [
        Kind::D,
        Kind::DLambda,
        Kind::DPlusDLambda,
        Kind::DDLambda,
        Kind::DCapDLambda,
    ];

    pub const PRIMITIVE: [Kind; 4] = [
        Kind::PhD,
        Kind::PhDPlusDLambda,
        Kind::PhDDLambda,
        Kind::PhDCapDLambda,
    ];

    pub fn is_primitive(&self) -> bool {
        matches!(
            self,
            Kind::PhD | Kind::PhDPlusDLambda | Kind::PhDDLambda | Kind::PhDCapDLambda
        )
    }

    /// Primitive counterpart of a full kind, when one exists.
    pub fn primitive_counterpart(&self) -> Option<Kind> {
        match self {
            Kind::D => Some(Kind::PhD),
            Kind::DPlusDLambda => Some(Kind::PhDPlusDLambda),
            Kind::DDLambda => Some(Kind::PhDDLambda),
            Kind::DCapDLambda => Some(Kind::PhDCapDLambda),
            _ => None,
        }
    }

    /// Canonical machine name used by the CLI and JSON reports.
    pub fn id(&self) -> &'static str {
        match self {
            Kind::D => "d",
            Kind::DLambda => "dl",
            Kind::DPlusDLambda => "d+dl",
            Kind::DDLambda => "ddl",
            Kind::DCapDLambda => "dcapdl",
            Kind::PhD => "ph:d",
            Kind::PhDPlusDLambda => "ph:d+dl",
            Kind::PhDDLambda => "ph:ddl",
            Kind::PhDCapDLambda => "ph:dcapdl",
        }
    }

    /// Row label for human tables.
    pub fn label(&self) -> &'static str {
        match self {
            Kind::D => "H_d",
            Kind::DLambda => "H_dΛ",
            Kind::DPlusDLambda => "H_d+dΛ",
            Kind::DDLambda => "H_ddΛ",
            Kind::DCapDLambda => "H_d∩dΛ",
            Kind::PhD => "PH_d",
            Kind::PhDPlusDLambda => "PH_d+dΛ",
            Kind::PhDDLambda => "PH_ddΛ",
            Kind::PhDCapDLambda => "PH_d∩dΛ",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "d" => Some(Kind::D),
            "dl" | "dΛ" | "dlambda" => Some(Kind::DLambda),
            "d+dl" | "d+dΛ" | "d+dlambda" => Some(Kind::DPlusDLambda),
            "ddl" | "ddΛ" | "ddlambda" => Some(Kind::DDLambda),
            "dcapdl" | "d∩dl" | "d∩dΛ" | "dcapdlambda" => Some(Kind::DCapDLambda),
            "ph:d" => Some(Kind::PhD),
            "ph:d+dl" | "ph:d+dΛ" => Some(Kind::PhDPlusDLambda),
            "ph:ddl" | "ph:ddΛ" => Some(Kind::PhDDLambda),
            "ph:dcapdl" | "ph:d∩dΛ" => Some(Kind::PhDCapDLambda),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Operators whose degree-k matrix the engine can produce.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OperatorId {
    D,
    DLambda,
    DDLambda,
    LPow(usize),
    LambdaPow(usize),
    DStar,
    DLambdaStar,
    DDLambdaStar,
    SympStar,
    HodgeStar,
    Jay,
    Laplacian(LaplacianKind, Rat),
    EllipticD(EllipticKind, Rat),
}

impl OperatorId {
    /// Degree shift of the operator; star operators are handled apart.
    pub fn shift(&self) -> isize {
        match self {
            OperatorId::D | OperatorId::DLambdaStar => 1,
            OperatorId::DLambda | OperatorId::DStar => -1,
            OperatorId::LPow(j) => 2 * *j as isize,
            OperatorId::LambdaPow(j) => -2 * (*j as isize),
            _ => 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EngineError {
    Symplectic(SymplecticError),
    Subspace(SubspaceError),
    Triple(TripleError),
    MetricOp(MetricOpError),
    DegreeOutOfRange {
        k: usize,
        max: usize,
    },
    PrimitiveDegreeTooHigh {
        k: usize,
        n: usize,
    },
    TripleRequired,
    /// No harmonic theory is defined for the kind (`ph:d`).
    NoHarmonicTheory(Kind),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Symplectic(e) => write!(f, "{e}"),
            EngineError::Subspace(e) => write!(f, "{e}"),
            EngineError::Triple(e) => write!(f, "{e}"),
            EngineError::MetricOp(e) => write!(f, "{e}"),
            EngineError::DegreeOutOfRange { k, max } => {
                write!(f, "degree {k} out of range 0..={max}")
            }
            EngineError::PrimitiveDegreeTooHigh { k, n } => {
                write!(f, "primitive cohomology requires degree {k} <= n = {n}")
            }
            EngineError::TripleRequired => {
                write!(f, "a compatible triple is required for harmonic output")
            }
            EngineError::NoHarmonicTheory(kind) => {
                write!(f, "no harmonic space is defined for kind {}", kind.id())
            }
        }
    }
}

impl std::error::Error for EngineError {}

impl From<SymplecticError> for EngineError {
    fn from(e: SymplecticError) -> Self {
        EngineError::Symplectic(e)
    }
}
impl From<SubspaceError> for EngineError {
    fn from(e: SubspaceError) -> Self {
        EngineError::Subspace(e)
    }
}
impl From<TripleError> for EngineError {
    fn from(e: TripleError) -> Self {
        EngineError::Triple(e)
    }
}
impl From<MetricOpError> for EngineError {
    fn from(e: MetricOpError) -> Self {
        EngineError::MetricOp(e)
    }
}

/// One cohomology group: kind, degree, dimension, canonical class
/// representatives, and optionally a harmonic basis.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub kind: Kind,
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<Form<Rat>>,
    pub harmonic: Option<Vec<Form<Rat>>>,
}

/// Verification report for one orthogonal decomposition.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub kind: Kind,
    pub degree: usize,
    pub harmonic_dim: usize,
    pub exact_dim: usize,
    pub coexact_dim: usize,
    pub total_dim: usize,
    pub dims_sum: bool,
    pub pairwise_orthogonal: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.dims_sum && self.pairwise_orthogonal
    }
}

/// Exact linear-algebra engine bound to a validated invariant model.
pub struct Engine<'a> {
    model: &'a InvariantModel,
    ctx: SymplecticContext<'a, Rat>,
    triple: Option<CompatibleTriple>,
}

impl<'a> Engine<'a> {
    /// Engine without a metric; cohomology works, harmonic output does
    /// not.
    pub fn new(model: &'a InvariantModel) -> Result<Engine<'a>, EngineError> {
        let ctx = SymplecticContext::new(model, model.omega().clone())?;
        Ok(Engine {
            model,
            ctx,
            triple: None,
        })
    }

    /// Engine with the model's compatible triple: the matrix from the
    /// model file when present, otherwise the orthogonal-coframe default.
    pub fn with_triple(model: &'a InvariantModel) -> Result<Engine<'a>, EngineError> {
        let ctx = SymplecticContext::new(model, model.omega().clone())?;
        let triple = CompatibleTriple::build(model.omega(), model.j_matrix().cloned())?;
        Ok(Engine {
            model,
            ctx,
            triple: Some(triple),
        })
    }

    pub fn model(&self) -> &InvariantModel {
        self.model
    }

    pub fn ctx(&self) -> &SymplecticContext<'a, Rat> {
        &self.ctx
    }

    pub fn triple(&self) -> Option<&CompatibleTriple> {
        self.triple.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn half_dim(&self) -> usize {
        self.model.half_dim()
    }

    /// Blade count at degree `k`; zero outside `0..=2n`.
    pub fn space_dim(&self, k: isize) -> usize {
        if k < 0 || k as usize > self.dim() {
            0
        } else {
            Blade::enumerate(self.dim(), k as usize).len()
        }
    }

    pub fn blades(&self, k: usize) -> Vec<Blade> {
        Blade::enumerate(self.dim(), k)
    }

    pub fn form_to_vec(&self, f: &Form<Rat>, k: usize) -> Vec<Rat> {
        self.blades(k).iter().map(|b| f.coefficient(b)).collect()
    }

    pub fn vec_to_form(&self, v: &[Rat], k: usize) -> Form<Rat> {
        Form::from_terms(
            self.dim(),
            self.blades(k).into_iter().zip(v.iter().cloned()),
        )
    }

    pub fn subspace_forms(&self, s: &Subspace, k: usize) -> Vec<Form<Rat>> {
        s.basis_vectors()
            .iter()
            .map(|v| self.vec_to_form(v, k))
            .collect()
    }

    /// Matrix of a linear map from degree `k_src` forms to degree
    /// `k_dst` forms, over the canonical blade bases.
    pub fn matrix_of(
        &self,
        k_src: usize,
        k_dst: usize,
        op: impl Fn(&Form<Rat>) -> Form<Rat>,
    ) -> Mat {
        let src = self.blades(k_src);
        let dst = self.blades(k_dst);
        let mut m = Mat::zeros(dst.len(), src.len());
        for (c, blade) in src.iter().enumerate() {
            let image = op(&Form::term(self.dim(), *blade, rint(1)));
            for (r, dst_blade) in dst.iter().enumerate() {
                let coeff = image.coefficient(dst_blade);
                if !Zero::is_zero(&coeff) {
                    m.set(r, c, coeff);
                }
            }
        }
        m
    }

    fn metric(&self) -> Result<MetricContext<'_, Rat>, EngineError> {
        match &self.triple {
            Some(t) => Ok(MetricContext::new(&self.ctx, t)),
            None => Err(EngineError::TripleRequired),
        }
    }

    /// Matrix of a named operator restricted to degree-`k` forms. Star
    /// operators land in degree `2n−k`, everything else in `k + shift`;
    /// maps out of range land in the zero space.
    pub fn operator_matrix(&self, op: &OperatorId, k: usize) -> Result<Mat, EngineError> {
        if k > self.dim() {
            return Err(EngineError::DegreeOutOfRange { k, max: self.dim() });
        }
        let target: Option<usize> = match op {
            OperatorId::SympStar | OperatorId::HodgeStar => Some(self.dim() - k),
            other => {
                let t = k as isize + other.shift();
                (t >= 0 && t as usize <= self.dim()).then_some(t as usize)
            }
        };
        let Some(target) = target else {
            return Ok(Mat::zeros(0, self.space_dim(k as isize)));
        };
        let ctx = &self.ctx;
        let m = match op {
            OperatorId::D => self.matrix_of(k, target, |f| ctx.d(f)),
            OperatorId::DLambda => self.matrix_of(k, target, |f| ctx.d_lambda(f)),
            OperatorId::DDLambda => self.matrix_of(k, target, |f| ctx.dd_lambda(f)),
            OperatorId::LPow(j) => self.matrix_of(k, target, |f| ctx.lefschetz_pow(*j, f)),
            OperatorId::LambdaPow(j) => {
                self.matrix_of(k, target, |f| ctx.dual_lefschetz_pow(*j, f))
            }
            OperatorId::SympStar => self.matrix_of(k, target, |f| {
                ctx.symplectic_star(f).expect("homogeneous input")
            }),
            OperatorId::DStar => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| mc.d_star(f))
            }
            OperatorId::DLambdaStar => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| mc.d_lambda_star(f))
            }
            OperatorId::DDLambdaStar => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| mc.dd_lambda_star(f))
            }
            OperatorId::HodgeStar => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| mc.star(f))
            }
            OperatorId::Jay => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| mc.triple.jay(f))
            }
            OperatorId::Laplacian(kind, lambda) => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| {
                    mc.laplacian(*kind, f, lambda)
                        .expect("non-primitive Laplacian kinds are total on blade bases")
                })
            }
            OperatorId::EllipticD(kind, lambda) => {
                let mc = self.metric()?;
                self.matrix_of(k, target, |f| {
                    mc.elliptic_d(*kind, f, lambda)
                        .expect("elliptic operators are total")
                })
            }
        };
        Ok(m)
    }

    /// Kernel of an operator at degree `k`.
    pub fn kernel(&self, op: &OperatorId, k: usize) -> Result<Subspace, EngineError> {
        Ok(Subspace::kernel_of(&self.operator_matrix(op, k)?))
    }

    /// Image of an operator applied at degree `k_src`; the zero subspace
    /// when the source degree is out of range.
    pub fn image(&self, op: &OperatorId, k_src: isize) -> Result<Subspace, EngineError> {
        let target_dim = match op {
            OperatorId::SympStar | OperatorId::HodgeStar => {
                self.space_dim(self.dim() as isize - k_src)
            }
            other => self.space_dim(k_src + other.shift()),
        };
        if k_src < 0 || k_src as usize > self.dim() {
            return Ok(Subspace::zero(target_dim));
        }
        Ok(Subspace::image_of(
            &self.operator_matrix(op, k_src as usize)?,
        ))
    }

    /// Image of a subspace of degree-`k_src` forms under a form-level map.
    pub fn map_subspace(
        &self,
        sub: &Subspace,
        k_src: usize,
        k_dst: usize,
        op: impl Fn(&Form<Rat>) -> Form<Rat>,
    ) -> Subspace {
        let vectors: Vec<Vec<Rat>> = sub
            .basis_vectors()
            .iter()
            .map(|v| {
                let image = op(&self.vec_to_form(v, k_src));
                self.form_to_vec(&image, k_dst)
            })
            .collect();
        Subspace::span(self.space_dim(k_dst as isize), &vectors)
    }

    /// Primitive forms of degree `k`: the kernel of `Λ` (zero above `n`).
    pub fn primitive_subspace(&self, k: usize) -> Result<Subspace, EngineError> {
        if k > self.dim() {
            return Err(EngineError::DegreeOutOfRange { k, max: self.dim() });
        }
        self.kernel(&OperatorId::LambdaPow(1), k)
    }

    /// Closed subspace of the kind at degree `k`.
    pub fn closed_subspace(&self, kind: Kind, k: usize) -> Result<Subspace, EngineError> {
        self.check_degree(kind, k)?;
        match kind {
            Kind::D => self.kernel(&OperatorId::D, k),
            Kind::DLambda => self.kernel(&OperatorId::DLambda, k),
            Kind::DPlusDLambda | Kind::DCapDLambda => Ok(self
                .kernel(&OperatorId::D, k)?
                .intersect(&self.kernel(&OperatorId::DLambda, k)?)),
            Kind::DDLambda => self.kernel(&OperatorId::DDLambda, k),
            Kind::PhD | Kind::PhDPlusDLambda | Kind::PhDCapDLambda => Ok(self
                .kernel(&OperatorId::D, k)?
                .intersect(&self.primitive_subspace(k)?)),
            Kind::PhDDLambda => Ok(self
                .kernel(&OperatorId::DDLambda, k)?
                .intersect(&self.primitive_subspace(k)?)),
        }
    }

    /// Exactness subspace of the kind at degree `k`.
    pub fn exact_subspace(&self, kind: Kind, k: usize) -> Result<Subspace, EngineError> {
        self.check_degree(kind, k)?;
        let ambient = self.space_dim(k as isize);
        match kind {
            Kind::D => self.image(&OperatorId::D, k as isize - 1),
            Kind::DLambda => self.image(&OperatorId::DLambda, k as isize + 1),
            Kind::DPlusDLambda => self.image(&OperatorId::DDLambda, k as isize),
            Kind::DDLambda => {
                let im_d = self.image(&OperatorId::D, k as isize - 1)?;
                let im_dl = self.image(&OperatorId::DLambda, k as isize + 1)?;
                Ok(im_d.sum(&im_dl))
            }
            Kind::DCapDLambda => {
                // d(ker ddΛ at k−1) + dΛ(ker ddΛ at k+1)
                let mut out = Subspace::zero(ambient);
                if k >= 1 {
                    let tilde = self.kernel(&OperatorId::DDLambda, k - 1)?;
                    out = out.sum(&self.map_subspace(&tilde, k - 1, k, |f| self.ctx.d(f)));
                }
                if k + 1 <= self.dim() {
                    let tilde = self.kernel(&OperatorId::DDLambda, k + 1)?;
                    out = out.sum(&self.map_subspace(&tilde, k + 1, k, |f| self.ctx.d_lambda(f)));
                }
                Ok(out)
            }
            Kind::PhD => {
                // d of primitive dΛ-closed forms one degree down.
                if k == 0 {
                    return Ok(Subspace::zero(ambient));
                }
                let p_prime = self
                    .primitive_subspace(k - 1)?
                    .intersect(&self.kernel(&OperatorId::DLambda, k - 1)?);
                Ok(self.map_subspace(&p_prime, k - 1, k, |f| self.ctx.d(f)))
            }
            Kind::PhDPlusDLambda => {
                let prim = self.primitive_subspace(k)?;
                Ok(self.map_subspace(&prim, k, k, |f| self.ctx.dd_lambda(f)))
            }
            Kind::PhDDLambda => {
                let below = if k >= 1 {
                    Some(self.primitive_subspace(k - 1)?)
                } else {
                    None
                };
                let above = if k + 1 <= self.dim() {
                    Some(self.primitive_subspace(k + 1)?)
                } else {
                    None
                };
                self.primitive_exactness(k, below, above)
            }
            Kind::PhDCapDLambda => {
                let below = if k >= 1 {
                    Some(
                        self.primitive_subspace(k - 1)?
                            .intersect(&self.kernel(&OperatorId::DDLambda, k - 1)?),
                    )
                } else {
                    None
                };
                let above = if k + 1 <= self.dim() {
                    Some(
                        self.primitive_subspace(k + 1)?
                            .intersect(&self.kernel(&OperatorId::DDLambda, k + 1)?),
                    )
                } else {
                    None
                };
                self.primitive_exactness(k, below, above)
            }
        }
    }

    /// `(d + L H⁻¹ dΛ)(below) + dΛ(above)`: the exactness space shared
    /// by the primitive ddΛ and d∩dΛ kinds.
    fn primitive_exactness(
        &self,
        k: usize,
        below: Option<Subspace>,
        above: Option<Subspace>,
    ) -> Result<Subspace, EngineError> {
        let ambient = self.space_dim(k as isize);
        let mut out = Subspace::zero(ambient);
        if let Some(below) = below {
            out = out.sum(&self.map_subspace(&below, k - 1, k, |f| {
                let first = self.ctx.d(f);
                let inner = self
                    .ctx
                    .degree_count_inverse(&self.ctx.d_lambda(f))
                    .expect("dΛ of a primitive form stays below middle degree");
                first.plus(&self.ctx.lefschetz(&inner))
            }));
        }
        if let Some(above) = above {
            out = out.sum(&self.map_subspace(&above, k + 1, k, |f| self.ctx.d_lambda(f)));
        }
        Ok(out)
    }

    fn check_degree(&self, kind: Kind, k: usize) -> Result<(), EngineError> {
        if k > self.dim() {
            return Err(EngineError::DegreeOutOfRange { k, max: self.dim() });
        }
        if kind.is_primitive() && k > self.half_dim() {
            return Err(EngineError::PrimitiveDegreeTooHigh {
                k,
                n: self.half_dim(),
            });
        }
        Ok(())
    }

    /// Full cohomology computation at one kind and degree. Asserts the
    /// inclusion `exact ⊆ closed` before quotienting; representatives
    /// complete the exact echelon basis inside the closed one, giving
    /// byte-stable output.
    pub fn cohomology(
        &self,
        kind: Kind,
        k: usize,
        with_harmonic: bool,
    ) -> Result<CohomologyResult, EngineError> {
        let closed = self.closed_subspace(kind, k)?;
        let exact = self.exact_subspace(kind, k)?;
        let dim = closed.quotient_dim(&exact)?;
        let reps = closed
            .quotient_representatives(&exact)?
            .iter()
            .map(|v| self.vec_to_form(v, k))
            .collect();
        let harmonic = if with_harmonic {
            let space = self.harmonic_space(kind, k)?;
            Some(self.subspace_forms(&space, k))
        } else {
            None
        };
        Ok(CohomologyResult {
            kind,
            degree: k,
            dim,
            representatives: reps,
            harmonic,
        })
    }

    /// Harmonic space of the kind at degree `k`: the exact intersection
    /// of the defining kernel conditions. Requires a triple.
    pub fn harmonic_space(&self, kind: Kind, k: usize) -> Result<Subspace, EngineError> {
        self.check_degree(kind, k)?;
        if self.triple.is_none() {
            return Err(EngineError::TripleRequired);
        }
        let inter = |ops: &[OperatorId]| -> Result<Subspace, EngineError> {
            let mut out = Subspace::full(self.space_dim(k as isize));
            for op in ops {
                out = out.intersect(&self.kernel(op, k)?);
            }
            Ok(out)
        };
        match kind {
            Kind::D => inter(&[OperatorId::D, OperatorId::DStar]),
            Kind::DLambda => inter(&[OperatorId::DLambda, OperatorId::DLambdaStar]),
            Kind::DPlusDLambda => {
                inter(&[OperatorId::D, OperatorId::DLambda, OperatorId::DDLambdaStar])
            }
            Kind::DDLambda => inter(&[
                OperatorId::DDLambda,
                OperatorId::DStar,
                OperatorId::DLambdaStar,
            ]),
            Kind::DCapDLambda => inter(&[
                OperatorId::D,
                OperatorId::DLambda,
                OperatorId::DStar,
                OperatorId::DLambdaStar,
            ]),
            Kind::PhD => Err(EngineError::NoHarmonicTheory(kind)),
            Kind::PhDPlusDLambda => Ok(self
                .primitive_subspace(k)?
                .intersect(&inter(&[OperatorId::D, OperatorId::DDLambdaStar])?)),
            Kind::PhDDLambda => Ok(self
                .primitive_subspace(k)?
                .intersect(&inter(&[OperatorId::DDLambda, OperatorId::DLambdaStar])?)),
            Kind::PhDCapDLambda => Ok(self
                .primitive_subspace(k)?
                .intersect(&inter(&[OperatorId::D, OperatorId::DLambdaStar])?)),
        }
    }

    /// Inner product `⟨a, b⟩ = ∫ a ∧ *b` on the invariant complex.
    pub fn inner_product(&self, a: &Form<Rat>, b: &Form<Rat>) -> Result<Rat, EngineError> {
        let mc = self.metric()?;
        Ok(self.model.integrate_top(&a.wedge(&mc.star(b))))
    }

    /// Verifies the three-part orthogonal decomposition of degree-`k`
    /// forms for a full kind: harmonic ⊕ exact-type ⊕ coexact-type.
    pub fn hodge_decomposition_check(
        &self,
        kind: Kind,
        k: usize,
    ) -> Result<DecompositionReport, EngineError> {
        if kind.is_primitive() {
            return Err(EngineError::NoHarmonicTheory(kind));
        }
        self.check_degree(kind, k)?;
        let harmonic = self.harmonic_space(kind, k)?;
        let (exact, coexact) = match kind {
            Kind::D => (
                self.image(&OperatorId::D, k as isize - 1)?,
                self.image(&OperatorId::DStar, k as isize + 1)?,
            ),
            Kind::DLambda => (
                self.image(&OperatorId::DLambda, k as isize + 1)?,
                self.image(&OperatorId::DLambdaStar, k as isize - 1)?,
            ),
            Kind::DPlusDLambda => (
                self.image(&OperatorId::DDLambda, k as isize)?,
                self.image(&OperatorId::DStar, k as isize + 1)?
                    .sum(&self.image(&OperatorId::DLambdaStar, k as isize - 1)?),
            ),
            Kind::DDLambda => (
                self.image(&OperatorId::D, k as isize - 1)?
                    .sum(&self.image(&OperatorId::DLambda, k as isize + 1)?),
                self.image(&OperatorId::DDLambdaStar, k as isize)?,
            ),
            Kind::DCapDLambda => (
                self.exact_subspace(Kind::DCapDLambda, k)?,
                self.image(&OperatorId::DStar, k as isize + 1)?
                    .sum(&self.image(&OperatorId::DLambdaStar, k as isize - 1)?),
            ),
            _ => unreachable!("primitive kinds rejected above"),
        };

        let total = self.space_dim(k as isize);
        let dims_sum = harmonic.dim() + exact.dim() + coexact.dim() == total;
        let mut orthogonal = true;
        let spaces = [&harmonic, &exact, &coexact];
        for i in 0..3 {
            for j in i + 1..3 {
                for u in spaces[i].basis_vectors() {
                    for v in spaces[j].basis_vectors() {
                        let fu = self.vec_to_form(&u, k);
                        let fv = self.vec_to_form(&v, k);
                        if !Zero::is_zero(&self.inner_product(&fu, &fv)?) {
                            orthogonal = false;
                        }
                    }
                }
            }
        }
        Ok(DecompositionReport {
            kind,
            degree: k,
            harmonic_dim: harmonic.dim(),
            exact_dim: exact.dim(),
            coexact_dim: coexact.dim(),
            total_dim: total,
            dims_sum,
            pairwise_orthogonal: orthogonal,
        })
    }

    /// Express a form's class in coordinates over the representative
    /// basis modulo the exactness subspace; `None` when the form is not
    /// in the span of representatives and exact terms.
    pub fn class_coordinates(
        &self,
        kind: Kind,
        k: usize,
        f: &Form<Rat>,
        reps: &[Form<Rat>],
    ) -> Result<Option<Vec<Rat>>, EngineError> {
        let exact = self.exact_subspace(kind, k)?;
        let v = self.form_to_vec(f, k);
        let mut cols: Vec<Vec<Rat>> = reps.iter().map(|r| self.form_to_vec(r, k)).collect();
        cols.extend(exact.basis_vectors());
        if cols.is_empty() {
            return Ok(v.iter().all(Zero::is_zero).then(Vec::new));
        }
        let m = Mat::from_rows(cols).transpose();
        Ok(m.solve(&v).map(|sol| sol[..reps.len()].to_vec()))
    }
}
