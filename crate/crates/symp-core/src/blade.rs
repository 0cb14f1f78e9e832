//! Basis blades of the exterior algebra.
//!
//! A blade is a strictly increasing tuple of frame indices in `1..=2n`,
//! stored as a bitmask. All orientation signs live in the wedge and
//! contraction routines, so the blade itself is always canonical.

use std::cmp::Ordering;
use std::fmt;

/// Maximum supported ambient dimension.
pub const MAX_DIM: usize = 30;

/// Canonical basis blade: bit `i-1` set means frame index `i` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(u32);

impl Blade {
    /// The degree-0 blade (the unit of the algebra).
    pub fn scalar() -> Blade {
        Blade(0)
    }

    /// Blade from strictly increasing indices in `1..=dim`.
    pub fn from_indices(indices: &[usize], dim: usize) -> Result<Blade, BladeError> {
        let mut mask = 0u32;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > dim || dim > MAX_DIM {
                return Err(BladeError::IndexOutOfRange { index: i, dim });
            }
            if i <= prev {
                return Err(BladeError::NotStrictlyIncreasing { index: i });
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Ok(Blade(mask))
    }

    /// Single frame index `i` as a degree-1 blade.
    pub fn one_form(i: usize, dim: usize) -> Result<Blade, BladeError> {
        Blade::from_indices(&[i], dim)
    }

    /// The top blade `e_1 ∧ … ∧ e_dim`.
    pub fn top(dim: usize) -> Blade {
        Blade(if dim == 0 { 0 } else { (1u32 << dim) - 1 })
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && (self.0 >> (index - 1)) & 1 == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut m = self.0;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            out.push(b + 1);
            m &= m - 1;
        }
        out
    }

    /// Complementary blade inside dimension `dim`.
    pub fn complement(&self, dim: usize) -> Blade {
        Blade(Blade::top(dim).0 & !self.0)
    }

    /// Wedge with `rhs`: `None` if a frame index repeats, otherwise the
    /// merged blade and the permutation-parity sign.
    pub fn wedge(&self, rhs: &Blade) -> Option<(Blade, i8)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        // Inversions: pairs (i in self, j in rhs) with i > j.
        let mut inversions = 0u32;
        let mut m = rhs.0;
        while m != 0 {
            let b = m.trailing_zeros();
            // Bits of self strictly above b.
            inversions += (self.0 >> (b + 1)).count_ones();
            m &= m - 1;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((Blade(self.0 | rhs.0), sign))
    }

    /// Interior product with frame index `i`: removes the index with
    /// sign `(-1)^(position-1)`, `None` when the index is absent.
    pub fn contract(&self, index: usize) -> Option<(Blade, i8)> {
        if !self.contains(index) {
            return None;
        }
        let below = (self.0 & ((1u32 << (index - 1)) - 1)).count_ones();
        let sign = if below % 2 == 0 { 1 } else { -1 };
        Some((Blade(self.0 & !(1 << (index - 1))), sign))
    }

    /// Sign `ε` with `self ∧ complement = ε · top`; `self` and `other`
    /// must partition the index set.
    pub fn split_sign(&self, other: &Blade) -> Option<i8> {
        self.wedge(other).map(|(_, s)| s)
    }

    /// All blades of the given degree in ambient dimension `dim`, in
    /// lexicographic order of their index tuples.
    pub fn enumerate(dim: usize, degree: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        if degree > dim {
            return out;
        }
        let mut current = Vec::with_capacity(degree);
        fn rec(
            dim: usize,
            degree: usize,
            start: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Blade>,
        ) {
            if current.len() == degree {
                out.push(Blade::from_indices(current, dim).expect("generated indices are valid"));
                return;
            }
            for i in start..=dim {
                current.push(i);
                rec(dim, degree, i + 1, current, out);
                current.pop();
            }
        }
        rec(dim, degree, 1, &mut current, &mut out);
        out
    }
}

impl Ord for Blade {
    /// Degree first, then lexicographic on the increasing index tuple.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BladeError {
    IndexOutOfRange { index: usize, dim: usize },
    NotStrictlyIncreasing { index: usize },
}

impl fmt::Display for BladeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BladeError::IndexOutOfRange { index, dim } => {
                write!(f, "frame index e{index} out of range for dimension {dim}")
            }
            BladeError::NotStrictlyIncreasing { index } => {
                write!(f, "blade indices must be strictly increasing at e{index}")
            }
        }
    }
}

impl std::error::Error for BladeError {}
