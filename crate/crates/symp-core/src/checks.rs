//! Named theorem-level verdicts on a model: the dd^Λ-lemma, strong
//! Lefschetz, the canonical map to de Rham classes, Lefschetz
//! decomposition bookkeeping, and the duality pairing.

use std::fmt;

use num_traits::Zero;

use crate::engine::{Engine, EngineError, Kind, OperatorId};
use crate::form::Form;
use crate::linalg::Mat;
use crate::scalar::Rat;
use crate::subspace::Subspace;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
        }
    }
}

/// A witness form with a role label, e.g. the class on which a map drops
/// rank.
#[derive(Clone, Debug)]
pub struct Witness {
    pub role: String,
    pub form: Form<Rat>,
}

/// Per-degree annotation inside a check report.
#[derive(Clone, Debug)]
pub struct DegreeDetail {
    pub degree: usize,
    pub note: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check_name: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub details: Vec<DegreeDetail>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Smallest-degree, echelon-first witness inside `larger` but outside
/// `smaller`.
fn separating_witness(
    engine: &Engine,
    k: usize,
    larger: &Subspace,
    smaller: &Subspace,
) -> Option<Form<Rat>> {
    larger
        .basis_vectors()
        .into_iter()
        .find(|v| !smaller.contains(v))
        .map(|v| engine.vec_to_form(&v, k))
}

/// The dd^Λ-lemma: on forms that are both d- and dΛ-closed, d-exact,
/// dΛ-exact, and ddΛ-exact coincide. Compares the three exactness
/// subspaces intersected with `ker d ∩ ker dΛ` at every degree.
pub fn check_dd_lambda_lemma(engine: &Engine) -> Result<CheckReport, EngineError> {
    let mut details = Vec::new();
    let mut witnesses = Vec::new();
    let mut verdict = Verdict::Holds;

    for k in 0..=engine.dim() {
        let both_closed = engine.closed_subspace(Kind::DPlusDLambda, k)?;
        let d_exact = engine
            .image(&OperatorId::D, k as isize - 1)?
            .intersect(&both_closed);
        let dl_exact = engine
            .image(&OperatorId::DLambda, k as isize + 1)?
            .intersect(&both_closed);
        let ddl_exact = engine.image(&OperatorId::DDLambda, k as isize)?;
        // im ddΛ is automatically d- and dΛ-closed.
        debug_assert!(ddl_exact.is_subspace_of(&both_closed));

        let all_equal = d_exact == dl_exact && dl_exact == ddl_exact;
        details.push(DegreeDetail {
            degree: k,
            note: format!(
                "dims (d-exact, dΛ-exact, ddΛ-exact) ∩ ker(d+dΛ) = ({}, {}, {})",
                d_exact.dim(),
                dl_exact.dim(),
                ddl_exact.dim()
            ),
            passed: all_equal,
        });
        if !all_equal {
            verdict = Verdict::Fails;
            // One witness per failing degree: a form in one exactness
            // subspace but not another.
            let spaces = [
                ("d-exact", &d_exact),
                ("dΛ-exact", &dl_exact),
                ("ddΛ-exact", &ddl_exact),
            ];
            'outer: for (role_a, a) in &spaces {
                for (role_b, b) in &spaces {
                    if let Some(w) = separating_witness(engine, k, a, b) {
                        witnesses.push(Witness {
                            role: format!("{role_a} but not {role_b} at degree {k}"),
                            form: w,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    Ok(CheckReport {
        check_name: "ddl-lemma".into(),
        verdict,
        witnesses,
        details,
    })
}

/// Induced map on cohomology: images of the source representatives,
/// expressed over the target representatives modulo target exactness.
/// `None` when some image is not even a target cycle.
fn induced_map(
    engine: &Engine,
    src_kind: Kind,
    k_src: usize,
    dst_kind: Kind,
    k_dst: usize,
    op: impl Fn(&Form<Rat>) -> Form<Rat>,
) -> Result<Option<Mat>, EngineError> {
    let src = engine.cohomology(src_kind, k_src, false)?;
    let dst = engine.cohomology(dst_kind, k_dst, false)?;
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for rep in &src.representatives {
        let image = op(rep);
        match engine.class_coordinates(dst_kind, k_dst, &image, &dst.representatives)? {
            Some(coords) => cols.push(coords),
            None => return Ok(None),
        }
    }
    let mut m = Mat::zeros(dst.dim, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    Ok(Some(m))
}

/// Strong Lefschetz for the kind: `L^{n−k}: H^k → H^{2n−k}` is an
/// isomorphism for every `k ≤ n`. For the dΛ kind the upward map is not
/// defined on classes (`[dΛ, L] = d` breaks closedness), so the
/// equivalent conjugate map `Λ^{n−k}: H^{2n−k} → H^k` is tested instead
/// (`Λ` commutes with `dΛ`). Fails with a kernel class witness.
pub fn check_strong_lefschetz(engine: &Engine, kind: Kind) -> Result<CheckReport, EngineError> {
    assert!(
        !kind.is_primitive(),
        "strong Lefschetz applies to full kinds"
    );
    let n = engine.half_dim();
    let downward = kind == Kind::DLambda;
    let mut details = Vec::new();
    let mut witnesses = Vec::new();
    let mut all_iso = true;

    for k in 0..=n {
        let power = n - k;
        let (src_degree, op_name) = if downward {
            (2 * n - k, format!("Λ^{power}"))
        } else {
            (k, format!("L^{power}"))
        };
        let dst_degree = 2 * n - src_degree;
        let m = induced_map(engine, kind, src_degree, kind, dst_degree, |f| {
            if downward {
                engine.ctx().dual_lefschetz_pow(power, f)
            } else {
                engine.ctx().lefschetz_pow(power, f)
            }
        })?
        .expect("the Lefschetz-type map preserves cycles and exactness for its kind");
        let src_dim = m.cols();
        let dst_dim = m.rows();
        let rank = m.rank();
        let iso = src_dim == dst_dim && rank == src_dim;
        details.push(DegreeDetail {
            degree: k,
            note: format!(
                "{op_name}: H^{src_degree} (dim {src_dim}) → H^{dst_degree} (dim {dst_dim}), rank {rank}"
            ),
            passed: iso,
        });
        if !iso {
            all_iso = false;
            if rank < src_dim {
                if let Some(coeffs) = m.kernel_basis().first() {
                    let src = engine.cohomology(kind, src_degree, false)?;
                    let mut w = Form::zero(engine.dim());
                    for (c, rep) in coeffs.iter().zip(&src.representatives) {
                        if !Zero::is_zero(c) {
                            w = w.plus(&rep.scale(c));
                        }
                    }
                    witnesses.push(Witness {
                        role: format!("class in the kernel of {op_name} at degree {src_degree}"),
                        form: w,
                    });
                }
            }
        }
    }
    Ok(CheckReport {
        check_name: format!("strong-lefschetz[{}]", kind.id()),
        verdict: if all_iso {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        witnesses,
        details,
    })
}

/// The canonical homomorphism `H^k_{d+dΛ} → H^k_d` per degree, with the
/// equivalence cross-check against the dd^Λ-lemma verdict.
pub fn canonical_map_report(engine: &Engine) -> Result<CheckReport, EngineError> {
    let mut details = Vec::new();
    let mut witnesses = Vec::new();
    let mut iso_everywhere = true;

    for k in 0..=engine.dim() {
        let m = induced_map(engine, Kind::DPlusDLambda, k, Kind::D, k, |f| f.clone())?
            .expect("d+dΛ-closed forms are d-closed");
        let rank = m.rank();
        let injective = rank == m.cols();
        let surjective = rank == m.rows();
        let iso = injective && surjective;
        if !iso {
            iso_everywhere = false;
            if !injective {
                if let Some(coeffs) = m.kernel_basis().first() {
                    let src = engine.cohomology(Kind::DPlusDLambda, k, false)?;
                    let mut w = Form::zero(engine.dim());
                    for (c, rep) in coeffs.iter().zip(&src.representatives) {
                        if !Zero::is_zero(c) {
                            w = w.plus(&rep.scale(c));
                        }
                    }
                    witnesses.push(Witness {
                        role: format!("d+dΛ class that is d-exact at degree {k}"),
                        form: w,
                    });
                }
            }
        }
        details.push(DegreeDetail {
            degree: k,
            note: format!(
                "H^{k}_d+dΛ (dim {}) → H^{k}_d (dim {}): injective {injective}, surjective {surjective}",
                m.cols(),
                m.rows()
            ),
            passed: iso,
        });
    }

    // The canonical map is an isomorphism at all degrees iff the
    // dd^Λ-lemma holds; record the cross-check.
    let lemma = check_dd_lambda_lemma(engine)?;
    let consistent = (lemma.verdict == Verdict::Holds) == iso_everywhere;
    details.push(DegreeDetail {
        degree: engine.dim() + 1,
        note: format!(
            "equivalence cross-check: ddl-lemma {} ⇔ canonical map iso {}",
            lemma.verdict, iso_everywhere
        ),
        passed: consistent,
    });

    Ok(CheckReport {
        check_name: "canonical-map".into(),
        verdict: if iso_everywhere && consistent {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        witnesses,
        details,
    })
}

/// Lefschetz decomposition bookkeeping for one of the three new kinds:
/// `dim H^k = Σ_r dim PH^{k−2r}` at every degree.
pub fn check_lefschetz_decomposition(
    engine: &Engine,
    kind: Kind,
) -> Result<CheckReport, EngineError> {
    let prim = kind
        .primitive_counterpart()
        .filter(|_| kind != Kind::D)
        .unwrap_or_else(|| panic!("no primitive Lefschetz bookkeeping for kind {}", kind.id()));
    let n = engine.half_dim();
    let mut details = Vec::new();
    let mut verdict = Verdict::Holds;

    for k in 0..=engine.dim() {
        let full_dim = engine.cohomology(kind, k, false)?.dim;
        let mut sum = 0usize;
        for r in k.saturating_sub(n)..=(k / 2) {
            sum += engine.cohomology(prim, k - 2 * r, false)?.dim;
        }
        let ok = full_dim == sum;
        if !ok {
            verdict = Verdict::Fails;
        }
        details.push(DegreeDetail {
            degree: k,
            note: format!("dim H^{k} = {full_dim}, Σ_r dim PH^(k−2r) = {sum}"),
            passed: ok,
        });
    }

    Ok(CheckReport {
        check_name: format!("lefschetz-decomp[{}]", kind.id()),
        verdict,
        witnesses: Vec::new(),
        details,
    })
}

/// Pairing data for `H^k_{d+dΛ} × H^{2n−k}_{ddΛ} → Q` by wedge and
/// integration over the top blade.
#[derive(Clone, Debug)]
pub struct PairingReport {
    pub degree: usize,
    pub matrix: Mat,
    pub nondegenerate: bool,
    /// Entries unchanged under exactness shifts of either argument.
    pub well_defined: bool,
}

pub fn pairing_matrix(engine: &Engine, k: usize) -> Result<PairingReport, EngineError> {
    let dim2n = engine.dim();
    let left = engine.cohomology(Kind::DPlusDLambda, k, false)?;
    let right = engine.cohomology(Kind::DDLambda, dim2n - k, false)?;
    let model = engine.model();

    let pair = |a: &Form<Rat>, b: &Form<Rat>| -> Rat { model.integrate_top(&a.wedge(b)) };

    let mut m = Mat::zeros(left.dim, right.dim);
    for (i, a) in left.representatives.iter().enumerate() {
        for (j, b) in right.representatives.iter().enumerate() {
            m.set(i, j, pair(a, b));
        }
    }
    let nondegenerate = left.dim == right.dim && !Zero::is_zero(&m.det());

    // Well-definedness: shifting either representative by an exactness
    // basis vector leaves every entry unchanged.
    let mut well_defined = true;
    let left_exact = engine.exact_subspace(Kind::DPlusDLambda, k)?;
    let right_exact = engine.exact_subspace(Kind::DDLambda, dim2n - k)?;
    for shift in engine.subspace_forms(&left_exact, k) {
        for (i, a) in left.representatives.iter().enumerate() {
            let shifted = a.plus(&shift);
            for (j, b) in right.representatives.iter().enumerate() {
                if pair(&shifted, b) != *m.get(i, j) {
                    well_defined = false;
                }
            }
        }
    }
    for shift in engine.subspace_forms(&right_exact, dim2n - k) {
        for (j, b) in right.representatives.iter().enumerate() {
            let shifted = b.plus(&shift);
            for (i, a) in left.representatives.iter().enumerate() {
                if pair(a, &shifted) != *m.get(i, j) {
                    well_defined = false;
                }
            }
        }
    }

    Ok(PairingReport {
        degree: k,
        matrix: m,
        nondegenerate,
        well_defined,
    })
}

/// `pairing_matrix` wrapped as a named check.
pub fn check_pairing(engine: &Engine, k: usize) -> Result<CheckReport, EngineError> {
    let report = pairing_matrix(engine, k)?;
    let passed = report.nondegenerate && report.well_defined;
    Ok(CheckReport {
        check_name: format!("pairing[k={k}]"),
        verdict: if passed {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        witnesses: Vec::new(),
        details: vec![DegreeDetail {
            degree: k,
            note: format!(
                "{}×{} pairing matrix, det {} 0, shift-invariant {}",
                report.matrix.rows(),
                report.matrix.cols(),
                if report.nondegenerate { "≠" } else { "=" },
                report.well_defined
            ),
            passed,
        }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blade::Blade;
    use crate::model::InvariantModel;
    use crate::scalar::rint;

    #[test]
    fn kt_fails_ddl_lemma_with_witnesses() {
        let model = InvariantModel::builtin("kt").unwrap();
        let engine = Engine::new(&model).unwrap();
        let report = check_dd_lambda_lemma(&engine).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        // Smallest failing degree is 1: e3 = dΛ e14 is dΛ-exact but not
        // d-exact.
        let e3 = Form::term(4, Blade::from_indices(&[3], 4).unwrap(), rint(1));
        assert_eq!(report.witnesses[0].form, e3);
        // Degree 2 carries the e23 class: d-exact (= d e4) but not
        // ddΛ-exact.
        let e23 = Blade::from_indices(&[2, 3], 4).unwrap();
        let degree2 = report
            .witnesses
            .iter()
            .find(|w| w.form.homogeneous_degree() == Some(2))
            .expect("degree-2 witness present");
        let coeff = degree2.form.coefficient(&e23);
        assert!(!Zero::is_zero(&coeff));
        assert_eq!(degree2.form, Form::term(4, e23, coeff));
    }

    #[test]
    fn tori_hold_ddl_lemma() {
        for name in ["torus2", "torus3"] {
            let model = InvariantModel::builtin(name).unwrap();
            let engine = Engine::new(&model).unwrap();
            assert_eq!(
                check_dd_lambda_lemma(&engine).unwrap().verdict,
                Verdict::Holds,
                "{name}"
            );
        }
    }

    #[test]
    fn kt_strong_lefschetz_verdicts() {
        let model = InvariantModel::builtin("kt").unwrap();
        let engine = Engine::new(&model).unwrap();
        // Fails for de Rham at k=1 (ω∧e3 = −d e14 is exact).
        let report = check_strong_lefschetz(&engine, Kind::D).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert!(report.details.iter().any(|d| d.degree == 1 && !d.passed));
        assert!(!report.witnesses.is_empty());
        // Fails for the dΛ kind as well, via the conjugate map: Λ kills
        // the e123-class because Λ(ω∧e3) = e3 = dΛ e14 is exact.
        let report = check_strong_lefschetz(&engine, Kind::DLambda).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let witness = &report.witnesses[0];
        assert_eq!(witness.form.homogeneous_degree(), Some(3));
        // Holds for the three new kinds.
        for kind in [Kind::DPlusDLambda, Kind::DDLambda, Kind::DCapDLambda] {
            let report = check_strong_lefschetz(&engine, kind).unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "kind {}", kind.id());
        }
    }

    #[test]
    fn torus_strong_lefschetz_all_kinds() {
        let model = InvariantModel::builtin("torus2").unwrap();
        let engine = Engine::new(&model).unwrap();
        for kind in Kind::FULL {
            let report = check_strong_lefschetz(&engine, kind).unwrap();
            assert_eq!(report.verdict, Verdict::Holds, "kind {}", kind.id());
        }
    }

    #[test]
    fn canonical_map_matches_lemma() {
        let kt = InvariantModel::builtin("kt").unwrap();
        let engine = Engine::new(&kt).unwrap();
        let report = canonical_map_report(&engine).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        // Degree 2: dims 5 vs 4, not an isomorphism; degree 0 is one.
        assert!(report.details.iter().any(|d| d.degree == 2 && !d.passed));
        assert!(report.details.iter().any(|d| d.degree == 0 && d.passed));

        let torus = InvariantModel::builtin("torus2").unwrap();
        let engine = Engine::new(&torus).unwrap();
        assert_eq!(
            canonical_map_report(&engine).unwrap().verdict,
            Verdict::Holds
        );
    }

    #[test]
    fn pairing_on_kt() {
        let model = InvariantModel::builtin("kt").unwrap();
        let engine = Engine::new(&model).unwrap();
        // k=0: the 1×1 matrix [∫ ω²/2] = [1].
        let p0 = pairing_matrix(&engine, 0).unwrap();
        assert!(p0.nondegenerate);
        assert_eq!(p0.matrix.get(0, 0), &rint(1));
        // k=1: 3×3 with nonzero determinant, shift-invariant.
        let p1 = pairing_matrix(&engine, 1).unwrap();
        assert_eq!((p1.matrix.rows(), p1.matrix.cols()), (3, 3));
        assert!(p1.nondegenerate);
        assert!(p1.well_defined);
        let p2 = pairing_matrix(&engine, 2).unwrap();
        assert!(p2.nondegenerate && p2.well_defined);
    }

    #[test]
    fn lefschetz_bookkeeping_on_kt_and_torus() {
        for name in ["kt", "torus2"] {
            let model = InvariantModel::builtin(name).unwrap();
            let engine = Engine::new(&model).unwrap();
            for kind in [Kind::DPlusDLambda, Kind::DDLambda, Kind::DCapDLambda] {
                let report = check_lefschetz_decomposition(&engine, kind).unwrap();
                assert_eq!(report.verdict, Verdict::Holds, "{name} kind {}", kind.id());
            }
        }
    }

    #[test]
    fn verdict_consistency_chain() {
        // ddl-lemma ⇔ canonical map iso ⇔ strong Lefschetz (kind d).
        for name in ["kt", "torus2", "torus3"] {
            let model = InvariantModel::builtin(name).unwrap();
            let engine = Engine::new(&model).unwrap();
            let lemma = check_dd_lambda_lemma(&engine).unwrap().holds();
            let canonical = canonical_map_report(&engine).unwrap().holds();
            let lefschetz = check_strong_lefschetz(&engine, Kind::D).unwrap().holds();
            assert_eq!(lemma, canonical, "{name}");
            assert_eq!(lemma, lefschetz, "{name}");
        }
    }
}
