//! Structural invariants of the cohomology engine across the built-in
//! models, beyond the acceptance criteria.

use symp_core::engine::{Engine, Kind, OperatorId};
use symp_core::form::Form;
use symp_core::identity::Rng;
use symp_core::model::{Derivative, InvariantModel};
use symp_core::scalar::{rint, Rat};
use symp_core::subspace::Subspace;

fn builtin(name: &str) -> InvariantModel {
    InvariantModel::builtin(name).unwrap()
}

fn random_form(rng: &mut Rng, engine: &Engine, k: usize) -> Form<Rat> {
    let blades = engine.blades(k);
    let mut out = Form::zero(engine.dim());
    for _ in 0..3 {
        let blade = blades[rng.below(blades.len() as u64) as usize];
        out = out.plus(&Form::term(engine.dim(), blade, rng.rat()));
    }
    out
}

/// `dim H^k_d = dim H^{2n−k}_{dΛ}`, and the symplectic star carries
/// d-closed class representatives to dΛ-closed forms.
#[test]
fn star_duality_between_d_and_dlambda() {
    for name in ["kt", "torus2", "torus3"] {
        let model = builtin(name);
        let engine = Engine::new(&model).unwrap();
        for k in 0..=model.dim() {
            let d_dim = engine.cohomology(Kind::D, k, false).unwrap().dim;
            let dl_dim = engine
                .cohomology(Kind::DLambda, model.dim() - k, false)
                .unwrap()
                .dim;
            assert_eq!(d_dim, dl_dim, "{name} degree {k}");

            let reps = engine
                .cohomology(Kind::D, k, false)
                .unwrap()
                .representatives;
            for rep in reps {
                let star = engine.ctx().symplectic_star(&rep).unwrap();
                assert!(
                    engine.ctx().d_lambda(&star).is_zero(),
                    "{name} degree {k}: star of a d-closed class is dΛ-closed"
                );
            }
        }
    }
}

/// `L^{n−k}` induces an isomorphism on the three new cohomologies at
/// the matrix level on every validated builtin.
#[test]
fn lefschetz_property_matrices_invertible() {
    for name in ["kt", "torus2", "torus3"] {
        let model = builtin(name);
        let engine = Engine::new(&model).unwrap();
        let n = model.half_dim();
        for kind in [Kind::DPlusDLambda, Kind::DDLambda, Kind::DCapDLambda] {
            for k in 0..=n {
                let src = engine.cohomology(kind, k, false).unwrap();
                let dst = engine.cohomology(kind, 2 * n - k, false).unwrap();
                assert_eq!(src.dim, dst.dim, "{name} {} degree {k}", kind.id());
                // Rank of the induced map equals the common dimension.
                let mut image_vectors = Vec::new();
                for rep in &src.representatives {
                    let image = engine.ctx().lefschetz_pow(n - k, rep);
                    let coords = engine
                        .class_coordinates(kind, 2 * n - k, &image, &dst.representatives)
                        .unwrap()
                        .expect("image is a cycle");
                    image_vectors.push(coords);
                }
                let rank = Subspace::span(dst.dim, &image_vectors).dim();
                assert_eq!(rank, src.dim, "{name} {} degree {k}", kind.id());
            }
        }
    }
}

/// The Hodge star maps d+dΛ-harmonic forms bijectively onto the
/// ddΛ-harmonic forms of complementary degree.
#[test]
fn hodge_star_swaps_harmonic_spaces() {
    for name in ["kt", "torus2"] {
        let model = builtin(name);
        let engine = Engine::with_triple(&model).unwrap();
        for k in 0..=model.dim() {
            let left = engine.harmonic_space(Kind::DPlusDLambda, k).unwrap();
            let right = engine
                .harmonic_space(Kind::DDLambda, model.dim() - k)
                .unwrap();
            assert_eq!(left.dim(), right.dim(), "{name} degree {k}");
            let starred = engine.map_subspace(&left, k, model.dim() - k, |f| {
                engine.triple().unwrap().hodge_star(f)
            });
            assert_eq!(
                starred, right,
                "{name} degree {k}: star image of harmonic space"
            );
        }
    }
}

/// `dim H^k_{d∩dΛ} ≤ min` over the other four kinds.
#[test]
fn intersection_kind_is_smallest() {
    for name in ["kt", "torus2", "torus3"] {
        let model = builtin(name);
        let engine = Engine::new(&model).unwrap();
        for k in 0..=model.dim() {
            let cap = engine.cohomology(Kind::DCapDLambda, k, false).unwrap().dim;
            for kind in [Kind::D, Kind::DLambda, Kind::DPlusDLambda, Kind::DDLambda] {
                let other = engine.cohomology(kind, k, false).unwrap().dim;
                assert!(
                    cap <= other,
                    "{name} degree {k}: {cap} > {} for {}",
                    other,
                    kind.id()
                );
            }
        }
    }
}

/// Leibniz rule of the model derivative against the wedge, randomized.
#[test]
fn model_derivative_is_an_antiderivation() {
    let mut rng = Rng::new(2024);
    for name in ["kt", "torus2"] {
        let model = builtin(name);
        let engine = Engine::new(&model).unwrap();
        for _ in 0..50 {
            let ka = rng.below(3) as usize;
            let kb = rng.below(3) as usize;
            let a = random_form(&mut rng, &engine, ka);
            let b = random_form(&mut rng, &engine, kb);
            let lhs = model.d(&a.wedge(&b));
            let sign = if ka % 2 == 0 { rint(1) } else { rint(-1) };
            let rhs = model
                .d(&a)
                .wedge(&b)
                .plus(&a.wedge(&model.d(&b)).scale_rat(&sign));
            assert_eq!(lhs, rhs, "{name}: d(a∧b) with a = {a}, b = {b}");
            // d∘d = 0 on the same samples.
            assert!(model.d(&model.d(&a)).is_zero());
        }
    }
}

/// Stokes on the invariant complex: top-degree integrals of exact forms
/// vanish for the unimodular builtins.
#[test]
fn stokes_for_builtin_models() {
    let mut rng = Rng::new(99);
    for name in ["kt", "torus2", "torus3"] {
        let model = builtin(name);
        let engine = Engine::new(&model).unwrap();
        for _ in 0..50 {
            let a = random_form(&mut rng, &engine, model.dim() - 1);
            let integral = model.integrate_top(&model.d(&a));
            assert_eq!(integral, rint(0), "{name}: ∫ d({a})");
        }
    }
}

/// Harmonic self-pairing is positive: `∫ A ∧ *A > 0` for nonzero
/// d+dΛ-harmonic forms.
#[test]
fn harmonic_self_pairing_positive() {
    use num_traits::Signed;
    let model = builtin("kt");
    let engine = Engine::with_triple(&model).unwrap();
    for k in 0..=4 {
        let harmonic = engine.harmonic_space(Kind::DPlusDLambda, k).unwrap();
        for form in engine.subspace_forms(&harmonic, k) {
            let norm = engine.inner_product(&form, &form).unwrap();
            assert!(norm.is_positive(), "degree {k}: ‖{form}‖² = {norm}");
        }
    }
}

/// Torus Betti numbers through every kind at dimension six.
#[test]
fn torus3_dimensions_are_binomials() {
    let model = builtin("torus3");
    let engine = Engine::new(&model).unwrap();
    let binom = [1usize, 6, 15, 20, 15, 6, 1];
    for kind in Kind::FULL {
        for (k, want) in binom.iter().enumerate() {
            assert_eq!(
                engine.cohomology(kind, k, false).unwrap().dim,
                *want,
                "kind {} degree {k}",
                kind.id()
            );
        }
    }
}

/// Dimension-eight sanity: the engine scales to torus4 and still
/// produces binomial rows (spot-checked on the cheapest and the most
/// involved kind).
#[test]
fn torus4_spot_dimensions() {
    let model = builtin("torus4");
    let engine = Engine::new(&model).unwrap();
    let binom = [1usize, 8, 28, 56, 70, 56, 28, 8, 1];
    for (k, want) in binom.iter().enumerate() {
        assert_eq!(
            engine.cohomology(Kind::D, k, false).unwrap().dim,
            *want,
            "degree {k}"
        );
    }
    assert_eq!(
        engine.cohomology(Kind::DCapDLambda, 4, false).unwrap().dim,
        70
    );
    assert_eq!(
        engine
            .cohomology(Kind::PhDPlusDLambda, 3, false)
            .unwrap()
            .dim,
        48
    );
}

/// The subspace-level quotient machinery refuses non-nested quotients.
#[test]
fn quotient_guards_containment() {
    let model = builtin("kt");
    let engine = Engine::new(&model).unwrap();
    // Deliberate mismatch: e4 is not d-closed, so its span is not inside
    // ker d at degree one.
    let ker = engine.kernel(&OperatorId::D, 1).unwrap();
    let e4 = Form::term(4, engine.blades(1)[3], rint(1));
    let not_inside = Subspace::span(4, &[engine.form_to_vec(&e4, 1)]);
    assert!(ker.quotient_dim(&not_inside).is_err());
}
