//! Polynomial differential forms on `R^{2n}` in Darboux coordinates
//! `(p_1, …, p_n, q_1, …, q_n)` with the standard symplectic form
//! `ω = Σ dp_i ∧ dq_i`. This is the local testbed for the operator
//! identities, including Lie derivatives along symplectic vector fields.

use crate::blade::Blade;
use crate::form::Form;
use crate::model::Derivative;
use crate::scalar::{Poly, Rat, Scalar};

/// Global Darboux chart on `R^{2n}`. Frame index `i` (1-based) is `p_i`
/// for `i ≤ n` and `q_{i-n}` for `i > n`; variable `i-1` of [`Poly`] is
/// the matching coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DarbouxChart {
    n: usize,
}

impl DarbouxChart {
    pub fn new(n: usize) -> DarbouxChart {
        assert!(n >= 1 && 2 * n <= crate::blade::MAX_DIM);
        DarbouxChart { n }
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `ω = Σ dp_i ∧ dq_i` as a rational form.
    pub fn omega(&self) -> Form<Rat> {
        let dim = self.dim();
        let mut omega = Form::zero(dim);
        for i in 1..=self.n {
            let blade = Blade::from_indices(&[i, self.n + i], dim).unwrap();
            omega = omega.plus(&Form::term(dim, blade, Rat::from_integer(1.into())));
        }
        omega
    }

    /// The coordinate function for frame index `i` (1-based).
    pub fn coordinate(&self, i: usize) -> Poly {
        assert!(i >= 1 && i <= self.dim());
        Poly::var(i - 1)
    }

    pub fn coordinate_name(&self, i: usize) -> String {
        assert!(i >= 1 && i <= self.dim());
        if i <= self.n {
            format!("p{i}")
        } else {
            format!("q{}", i - self.n)
        }
    }

    /// Renders a polynomial with `p`/`q` coordinate names.
    pub fn render_poly(&self, p: &Poly) -> String {
        let mut s = p.to_string();
        // Replace the generic x-names from highest index down so that
        // x12 is not clobbered by x1.
        for i in (1..=self.dim()).rev() {
            s = s.replace(&format!("x{i}"), &self.coordinate_name(i));
        }
        s
    }
}

impl Derivative<Poly> for DarbouxChart {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    /// `d(Σ c_I e^I) = Σ_i ∂_i c_I · e^i ∧ e^I`.
    fn d(&self, a: &Form<Poly>) -> Form<Poly> {
        let dim = self.dim();
        let mut out = Form::zero(dim);
        for (blade, c) in a.terms() {
            for i in 1..=dim {
                let dc = c.partial(i - 1);
                if dc.is_zero() {
                    continue;
                }
                let one = Form::term(dim, Blade::one_form(i, dim).unwrap(), dc);
                out = out.plus(&one.wedge(&Form::term(dim, *blade, Poly::one())));
            }
        }
        out
    }
}

/// Polynomial vector field `Σ V^i ∂_i` over a chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(chart: &DarbouxChart, components: Vec<Poly>) -> PolyVectorField {
        assert_eq!(
            components.len(),
            chart.dim(),
            "component count must match the chart"
        );
        PolyVectorField { components }
    }

    pub fn zero(chart: &DarbouxChart) -> PolyVectorField {
        PolyVectorField {
            components: vec![Poly::zero(); chart.dim()],
        }
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }
}

/// Interior product `i_V a = Σ_i V^i · contract(i, a)`.
pub fn interior_with_vector(
    chart: &DarbouxChart,
    v: &PolyVectorField,
    a: &Form<Poly>,
) -> Form<Poly> {
    assert_eq!(a.dim(), chart.dim(), "chart mismatch");
    let mut out = Form::zero(chart.dim());
    for i in 1..=chart.dim() {
        let vi = v.component(i);
        if vi.is_zero() {
            continue;
        }
        out = out.plus(&a.contract(i).scale(vi));
    }
    out
}

/// Cartan formula `ℒ_V a = i_V(da) + d(i_V a)`.
pub fn lie_derivative(chart: &DarbouxChart, v: &PolyVectorField, a: &Form<Poly>) -> Form<Poly> {
    assert_eq!(a.dim(), chart.dim(), "chart mismatch");
    let da = chart.d(a);
    let term1 = interior_with_vector(chart, v, &da);
    let term2 = chart.d(&interior_with_vector(chart, v, a));
    term1.plus(&term2)
}

/// The vector field `V` with `i_V ω = dh`: in Darboux coordinates
/// `V = Σ (∂h/∂q_i) ∂_{p_i} − (∂h/∂p_i) ∂_{q_i}`.
pub fn hamiltonian_vector_field(chart: &DarbouxChart, h: &Poly) -> PolyVectorField {
    let n = chart.half_dim();
    let mut components = vec![Poly::zero(); 2 * n];
    for i in 0..n {
        components[i] = h.partial(n + i);
        components[n + i] = h.partial(i).negate();
    }
    PolyVectorField { components }
}

/// The closed one-form `v = i_V ω` attached to a symplectic vector field.
pub fn one_form_of_field(chart: &DarbouxChart, v: &PolyVectorField) -> Form<Poly> {
    interior_with_vector(chart, v, &crate::form::promote(&chart.omega()))
}
