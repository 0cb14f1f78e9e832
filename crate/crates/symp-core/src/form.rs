//! Sparse exterior-algebra elements with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::blade::Blade;
use crate::scalar::{Gaussian, Rat, Scalar};

/// A differential form over a fixed coframe `e_1, …, e_dim`, stored as a
/// sparse blade-to-coefficient map. Zero coefficients are never stored,
/// so equality is map equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form<K: Scalar> {
    dim: usize,
    terms: BTreeMap<Blade, K>,
}

impl<K: Scalar> Form<K> {
    pub fn zero(dim: usize) -> Self {
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The constant function 1.
    pub fn unit(dim: usize) -> Self {
        Form::term(dim, Blade::scalar(), K::one())
    }

    pub fn constant(dim: usize, c: K) -> Self {
        Form::term(dim, Blade::scalar(), c)
    }

    /// Single-term form `c · blade`.
    pub fn term(dim: usize, blade: Blade, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(blade, c);
        }
        Form { dim, terms }
    }

    pub fn from_terms(dim: usize, entries: impl IntoIterator<Item = (Blade, K)>) -> Self {
        let mut form = Form::zero(dim);
        for (b, c) in entries {
            form.accumulate(b, &c);
        }
        form
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: &Blade) -> K {
        self.terms.get(blade).cloned().unwrap_or_else(K::zero)
    }

    fn accumulate(&mut self, blade: Blade, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&blade) {
            None => {
                self.terms.insert(blade, c.clone());
            }
            Some(old) => {
                let sum = old.plus(c);
                if !sum.is_zero() {
                    self.terms.insert(blade, sum);
                }
            }
        }
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.dim, rhs.dim,
            "ambient dimension mismatch: {} vs {}",
            self.dim, rhs.dim
        );
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.accumulate(*b, c);
        }
        out
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    pub fn negate(&self) -> Self {
        Form {
            dim: self.dim,
            terms: self.terms.iter().map(|(b, c)| (*b, c.negate())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Form::zero(self.dim);
        }
        let mut out = Form::zero(self.dim);
        for (b, q) in &self.terms {
            out.accumulate(*b, &q.times(c));
        }
        out
    }

    pub fn scale_rat(&self, q: &Rat) -> Self {
        self.scale(&K::from_rat(q))
    }

    /// Graded wedge product. Blades are re-sorted with the
    /// permutation-parity sign.
    pub fn wedge(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.dim, rhs.dim,
            "ambient dimension mismatch: {} vs {}",
            self.dim, rhs.dim
        );
        let mut out = Form::zero(self.dim);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &rhs.terms {
                if let Some((merged, sign)) = ba.wedge(bb) {
                    let mut c = ca.times(cb);
                    if sign < 0 {
                        c = c.negate();
                    }
                    out.accumulate(merged, &c);
                }
            }
        }
        out
    }

    /// Interior product with the frame vector dual to `e_index`; an
    /// antiderivation of degree −1.
    pub fn contract(&self, index: usize) -> Self {
        assert!(
            index >= 1 && index <= self.dim,
            "frame index {index} out of range for dimension {}",
            self.dim
        );
        let mut out = Form::zero(self.dim);
        for (b, c) in &self.terms {
            if let Some((reduced, sign)) = b.contract(index) {
                let c = if sign < 0 { c.negate() } else { c.clone() };
                out.accumulate(reduced, &c);
            }
        }
        out
    }

    /// Degree-k homogeneous component.
    pub fn project_degree(&self, k: usize) -> Self {
        assert!(
            k <= self.dim,
            "degree {k} out of range for dimension {}",
            self.dim
        );
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(Blade::degree).collect();
        ds.dedup();
        ds
    }

    /// `Some(k)` when all terms share degree `k`; the zero form reports
    /// `None` as it is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Blade::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Exact linear combination `Σ cᵢ · aᵢ` in canonical form.
    pub fn linear_combine(dim: usize, pairs: &[(K, Form<K>)]) -> Self {
        let mut out = Form::zero(dim);
        for (c, a) in pairs {
            assert_eq!(
                a.dim(),
                dim,
                "ambient dimension mismatch: {} vs {}",
                a.dim(),
                dim
            );
            out = out.plus(&a.scale(c));
        }
        out
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Form<L> {
        Form::from_terms(self.dim, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    /// Splits into rational-coefficient pieces over the ring's module
    /// basis. Inverse of [`Form::unsplit_parts`].
    pub fn split_parts(&self) -> BTreeMap<K::SplitKey, Form<Rat>> {
        let mut out: BTreeMap<K::SplitKey, Form<Rat>> = BTreeMap::new();
        for (b, c) in &self.terms {
            for (key, q) in c.split() {
                out.entry(key)
                    .or_insert_with(|| Form::zero(self.dim))
                    .accumulate(*b, &q);
            }
        }
        out
    }

    pub fn unsplit_parts(dim: usize, parts: &BTreeMap<K::SplitKey, Form<Rat>>) -> Self {
        let mut out = Form::zero(dim);
        for (key, piece) in parts {
            for (b, q) in piece.terms() {
                out.accumulate(*b, &K::unsplit(key, q));
            }
        }
        out
    }
}

/// Promote a rational form into any coefficient ring.
pub fn promote<K: Scalar>(f: &Form<Rat>) -> Form<K> {
    f.map_coeffs(|q| K::from_rat(q))
}

/// View a rational form as a Gaussian-rational form.
pub fn complexify(f: &Form<Rat>) -> Form<Gaussian> {
    promote(f)
}

/// Real and imaginary parts of a Gaussian-rational form.
pub fn real_imag(f: &Form<Gaussian>) -> (Form<Rat>, Form<Rat>) {
    let re = f.map_coeffs(|c| c.re.clone());
    let im = f.map_coeffs(|c| c.im.clone());
    (re, im)
}

impl<K: Scalar> fmt::Display for Form<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (blade, c) in &self.terms {
            let (neg, mag) = c.sign_split();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_scalar_blade = blade.degree() == 0;
            if is_scalar_blade {
                if mag.composite_display() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag == K::one() {
                write!(f, "{blade}")?;
            } else if mag.composite_display() {
                write!(f, "({mag}) * {blade}")?;
            } else {
                write!(f, "{mag} * {blade}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};
    use proptest::prelude::*;

    type RForm = Form<Rat>;

    fn e(ix: &[usize]) -> RForm {
        Form::term(4, Blade::from_indices(ix, 4).unwrap(), rint(1))
    }

    #[test]
    fn wedge_examples() {
        // e1 ∧ e2 = e12
        assert_eq!(e(&[1]).wedge(&e(&[2])), e(&[1, 2]));
        // e2 ∧ e1 = -e12
        assert_eq!(e(&[2]).wedge(&e(&[1])), e(&[1, 2]).negate());
        // odd-degree square vanishes
        let a = e(&[1]).plus(&e(&[3]));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn contract_examples() {
        assert_eq!(e(&[1, 2]).contract(1), e(&[2]));
        assert_eq!(e(&[1, 2]).contract(2), e(&[1]).negate());
        assert!(e(&[1, 2]).contract(3).is_zero());
    }

    #[test]
    fn linear_combine_examples() {
        let zero = RForm::linear_combine(4, &[(rint(1), e(&[1])), (rint(-1), e(&[1]))]);
        assert!(zero.is_zero());

        let two_three = RForm::linear_combine(4, &[(rint(2), e(&[1, 2])), (rint(3), e(&[3, 4]))]);
        assert_eq!(
            two_three.coefficient(&Blade::from_indices(&[1, 2], 4).unwrap()),
            rint(2)
        );
        assert_eq!(
            two_three.coefficient(&Blade::from_indices(&[3, 4], 4).unwrap()),
            rint(3)
        );

        // (1/2)·ω² = e1234 for ω = e12 + e34, frozen from the wedge oracle.
        let omega = e(&[1, 2]).plus(&e(&[3, 4]));
        let half_sq = RForm::linear_combine(4, &[(rat(1, 2), omega.wedge(&omega))]);
        assert_eq!(half_sq, e(&[1, 2, 3, 4]));
    }

    #[test]
    fn project_degree_examples() {
        let a = RForm::unit(4).plus(&e(&[1, 2]));
        assert_eq!(a.project_degree(2), e(&[1, 2]));
        assert_eq!(a.project_degree(0), RForm::unit(4));
        assert!(e(&[1]).project_degree(2).is_zero());
    }

    #[test]
    #[should_panic(expected = "ambient dimension mismatch")]
    fn wedge_dimension_mismatch_panics() {
        let a = RForm::unit(4);
        let b = RForm::unit(6);
        let _ = a.wedge(&b);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn contract_index_out_of_range_panics() {
        let _ = e(&[1]).contract(5);
    }

    #[test]
    fn display_grammar() {
        let omega = e(&[1, 2]).plus(&e(&[3, 4]));
        assert_eq!(omega.to_string(), "e1^e2 + e3^e4");
        let mixed = RForm::unit(4)
            .scale(&rat(-1, 2))
            .plus(&e(&[1, 3]).scale(&rint(2)))
            .plus(&e(&[2]).negate());
        assert_eq!(mixed.to_string(), "-1/2 - e2 + 2 * e1^e3");
    }

    // Randomized rational forms for property checks.
    fn arb_form(dim: usize) -> impl Strategy<Value = RForm> {
        let blades = Blade::enumerate(dim, 0)
            .into_iter()
            .chain((1..=dim).flat_map(move |k| Blade::enumerate(dim, k)))
            .collect::<Vec<_>>();
        proptest::collection::vec((0..blades.len(), -6i64..=6, 1i64..=3), 0..6).prop_map(
            move |entries| {
                Form::from_terms(
                    dim,
                    entries
                        .into_iter()
                        .map(|(bi, n, d)| (blades[bi], rat(n, d))),
                )
            },
        )
    }

    fn arb_homogeneous(dim: usize, k: usize) -> impl Strategy<Value = RForm> {
        let blades = Blade::enumerate(dim, k);
        let len = blades.len();
        proptest::collection::vec(-6i64..=6, len).prop_map(move |coeffs| {
            Form::from_terms(dim, blades.iter().zip(coeffs).map(|(b, n)| (*b, rint(n))))
        })
    }

    proptest! {
        #[test]
        fn wedge_graded_anticommutative(
            ka in 0usize..=2, kb in 0usize..=2,
            seed_a in 0u64..u64::MAX, seed_b in 0u64..u64::MAX
        ) {
            // Derive deterministic homogeneous forms from the seeds.
            let mk = |k: usize, seed: u64| {
                let blades = Blade::enumerate(4, k);
                Form::from_terms(4, blades.iter().enumerate().map(|(i, b)| {
                    let c = ((seed >> (4 * (i % 16))) & 0xf) as i64 - 8;
                    (*b, rint(c))
                }))
            };
            let a = mk(ka, seed_a);
            let b = mk(kb, seed_b);
            let lhs = a.wedge(&b);
            let sign = if (ka * kb) % 2 == 0 { rint(1) } else { rint(-1) };
            let rhs = b.wedge(&a).scale_rat(&sign);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn contract_twice_is_zero(a in arb_form(4), i in 1usize..=4) {
            prop_assert!(a.contract(i).contract(i).is_zero());
        }

        #[test]
        fn contract_antiderivation(
            ka in 0usize..=3,
            a in arb_form(4), b in arb_form(4), i in 1usize..=4
        ) {
            let a = a.project_degree(ka);
            let lhs = a.wedge(&b).contract(i);
            let sign = if ka % 2 == 0 { rint(1) } else { rint(-1) };
            let rhs = a.contract(i).wedge(&b).plus(&a.wedge(&b.contract(i)).scale_rat(&sign));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn degree_projections_sum_to_identity(a in arb_form(4)) {
            let mut sum = RForm::zero(4);
            for k in 0..=4 {
                sum = sum.plus(&a.project_degree(k));
            }
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn homogeneous_detection(k in 0usize..=4, a in (0usize..=4).prop_flat_map(|k| arb_homogeneous(4, k))) {
            let _ = k;
            prop_assert!(a.is_homogeneous());
        }
    }
}
