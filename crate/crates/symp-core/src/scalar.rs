//! Exact coefficient rings for differential forms.
//!
//! Three rings are supported: plain rationals, Gaussian rationals
//! (`a + b*i`), and multivariate polynomials with rational coefficients.
//! The ring is a compile-time parameter of every form; mixing rings in
//! one expression is a type error.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact coefficient ring of a [`crate::form::Form`].
///
/// Every implementation is a commutative ring containing the rationals.
/// `split`/`unsplit` expose the ring as a free module over the rationals
/// with a totally ordered basis (`SplitKey`), which lets degree-graded
/// linear solving be done once over the rationals and lifted to every
/// ring.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + 'static {
    /// Basis tag of the underlying rational module: `()` for rationals,
    /// real/imaginary for Gaussians, the monomial for polynomials.
    type SplitKey: Ord + Clone + fmt::Debug;

    /// Human name of the ring, used in error messages.
    const RING_NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rat(q: &Rat) -> Self;

    /// Multiply by a rational constant.
    fn scale(&self, q: &Rat) -> Self {
        self.times(&Self::from_rat(q))
    }

    /// Decompose into rational coordinates over the module basis.
    /// Zero coordinates are omitted.
    fn split(&self) -> Vec<(Self::SplitKey, Rat)>;

    /// Rebuild a single basis coordinate.
    fn unsplit(key: &Self::SplitKey, q: &Rat) -> Self;

    /// `true` when the canonical sign of the value is negative, paired
    /// with the sign-flipped value. Used only for printing.
    fn sign_split(&self) -> (bool, Self) {
        (false, self.clone())
    }

    /// Whether the printed value needs parentheses inside a product.
    fn composite_display(&self) -> bool {
        false
    }
}

impl Scalar for Rat {
    type SplitKey = ();
    const RING_NAME: &'static str = "rational";

    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
    fn split(&self) -> Vec<((), Rat)> {
        if Zero::is_zero(self) {
            vec![]
        } else {
            vec![((), self.clone())]
        }
    }
    fn unsplit(_key: &(), q: &Rat) -> Self {
        q.clone()
    }
    fn sign_split(&self) -> (bool, Self) {
        if self.is_negative() {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gaussian {
    pub re: Rat,
    pub im: Rat,
}

impl Gaussian {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rat) -> Self {
        Gaussian {
            re,
            im: <Rat as Zero>::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gaussian {
            re: <Rat as Zero>::zero(),
            im: <Rat as One>::one(),
        }
    }

    /// Integer power of the imaginary unit; `e` may be negative.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::one().negate(),
            _ => Self::i().negate(),
        }
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if Zero::is_zero(&norm) {
            return None;
        }
        Some(Gaussian {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        })
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", self.re);
        }
        if Zero::is_zero(&self.re) {
            if self.im == <Rat as One>::one() {
                return write!(f, "i");
            }
            if self.im == -<Rat as One>::one() {
                return write!(f, "-i");
            }
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{} - {}*i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

impl Scalar for Gaussian {
    /// `false` tags the real part, `true` the imaginary part.
    type SplitKey = bool;
    const RING_NAME: &'static str = "gaussian-rational";

    fn zero() -> Self {
        Gaussian {
            re: <Rat as Zero>::zero(),
            im: <Rat as Zero>::zero(),
        }
    }
    fn one() -> Self {
        Gaussian {
            re: <Rat as One>::one(),
            im: <Rat as Zero>::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Gaussian {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        Gaussian {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn negate(&self) -> Self {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn from_rat(q: &Rat) -> Self {
        Gaussian::real(q.clone())
    }
    fn split(&self) -> Vec<(bool, Rat)> {
        let mut parts = Vec::new();
        if !Zero::is_zero(&self.re) {
            parts.push((false, self.re.clone()));
        }
        if !Zero::is_zero(&self.im) {
            parts.push((true, self.im.clone()));
        }
        parts
    }
    fn unsplit(key: &bool, q: &Rat) -> Self {
        if *key {
            Gaussian {
                re: <Rat as Zero>::zero(),
                im: q.clone(),
            }
        } else {
            Gaussian::real(q.clone())
        }
    }
    fn sign_split(&self) -> (bool, Self) {
        let negative = (Zero::is_zero(&self.im) && self.re.is_negative())
            || (Zero::is_zero(&self.re) && self.im.is_negative());
        if negative {
            (true, self.negate())
        } else {
            (false, self.clone())
        }
    }
    fn composite_display(&self) -> bool {
        !Zero::is_zero(&self.re) && !Zero::is_zero(&self.im)
    }
}

/// Sparse monomial: variable index (0-based) to positive exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial(pub BTreeMap<usize, u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(index: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(index, 1);
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn times(&self, rhs: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&v, &e) in &rhs.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out)
    }

    /// Derivative with respect to variable `v`: the reduced monomial and
    /// the integer factor. `None` when the variable is absent.
    pub fn partial(&self, v: usize) -> Option<(Monomial, u32)> {
        let e = *self.0.get(&v)?;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(&v);
        } else {
            out.insert(v, e - 1);
        }
        Some((Monomial(out), e))
    }
}

/// Multivariate polynomial with rational coefficients, kept in canonical
/// form: sorted monomials, no zero terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn constant(q: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&q) {
            terms.insert(Monomial::unit(), q);
        }
        Poly { terms }
    }

    pub fn var(index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), <Rat as One>::one());
        Poly { terms }
    }

    pub fn from_terms(entries: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, q) in entries {
            let slot = terms.entry(m).or_insert_with(<Rat as Zero>::zero);
            *slot = &*slot + &q;
        }
        terms.retain(|_, q| !Zero::is_zero(q));
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_empty())
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (reduced, e) = m.partial(v)?;
            Some((reduced, c * rint(e as i64)))
        }))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
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
            let vars: Vec<String> =
                m.0.iter()
                    .map(|(&v, &e)| {
                        if e == 1 {
                            format!("x{}", v + 1)
                        } else {
                            format!("x{}^{}", v + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == <Rat as One>::one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Scalar for Poly {
    type SplitKey = Monomial;
    const RING_NAME: &'static str = "polynomial";

    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Poly::constant(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.terms.clone();
        for (m, q) in &rhs.terms {
            let slot = out.entry(m.clone()).or_insert_with(<Rat as Zero>::zero);
            *slot = &*slot + q;
        }
        out.retain(|_, q| !Zero::is_zero(q));
        Poly { terms: out }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.times(mb);
                let slot = out.entry(m).or_insert_with(<Rat as Zero>::zero);
                *slot = &*slot + ca * cb;
            }
        }
        out.retain(|_, q| !Zero::is_zero(q));
        Poly { terms: out }
    }
    fn negate(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }
    fn from_rat(q: &Rat) -> Self {
        Poly::constant(q.clone())
    }
    fn split(&self) -> Vec<(Monomial, Rat)> {
        self.terms
            .iter()
            .map(|(m, q)| (m.clone(), q.clone()))
            .collect()
    }
    fn unsplit(key: &Monomial, q: &Rat) -> Self {
        Poly::from_terms([(key.clone(), q.clone())])
    }
    fn sign_split(&self) -> (bool, Self) {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if c.is_negative() {
                return (true, Poly::from_terms([(m.clone(), -c)]));
            }
        }
        (false, self.clone())
    }
    fn composite_display(&self) -> bool {
        self.terms.len() > 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let z = Gaussian::new(rint(1), rint(2));
        let w = Gaussian::new(rint(3), rint(-1));
        let p = z.times(&w);
        assert_eq!(p, Gaussian::new(rint(5), rint(5)));
        assert_eq!(z.times(&z.inv().unwrap()), Gaussian::one());
        assert_eq!(Gaussian::i_pow(2), Gaussian::one().negate());
        assert_eq!(Gaussian::i_pow(-1), Gaussian::i().negate());
        assert_eq!(Gaussian::i_pow(-2), Gaussian::one().negate());
    }

    #[test]
    fn poly_arithmetic_and_partial() {
        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        let s = Poly::var(0).plus(&Poly::var(1));
        let sq = s.times(&s);
        assert_eq!(sq.terms().count(), 3);
        let dx0 = sq.partial(0);
        // d/dx1 = 2 x1 + 2 x2
        let expect = Poly::var(0)
            .scale(&rint(2))
            .plus(&Poly::var(1).scale(&rint(2)));
        assert_eq!(dx0, expect);
        assert!(Poly::constant(rint(5)).partial(0).is_zero());
    }

    #[test]
    fn split_roundtrip() {
        let z = Gaussian::new(rat(1, 2), rint(-3));
        let back = z.split().iter().fold(Gaussian::zero(), |acc, (k, q)| {
            acc.plus(&Gaussian::unsplit(k, q))
        });
        assert_eq!(z, back);

        let p = Poly::var(0)
            .times(&Poly::var(1))
            .plus(&Poly::constant(rat(2, 3)));
        let back = p
            .split()
            .iter()
            .fold(Poly::zero(), |acc, (k, q)| acc.plus(&Poly::unsplit(k, q)));
        assert_eq!(p, back);
    }

    #[test]
    fn displays() {
        assert_eq!(Gaussian::new(rint(1), rint(1)).to_string(), "1 + 1*i");
        assert_eq!(Gaussian::new(rint(0), rint(-1)).to_string(), "-i");
        let p = Poly::var(0).times(&Poly::var(0)).scale(&rat(3, 2));
        assert_eq!(p.to_string(), "3/2*x1^2");
    }
}
