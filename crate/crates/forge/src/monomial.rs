//! Exponent-vector monomials and monomial orders.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::{Error, Result};

/// Exponents are fixed-width small integers; sums are checked so that
/// runaway degrees surface as [`Error::ExponentOverflow`] instead of
/// silent wraparound.
pub type Exp = u16;

type Exps = SmallVec<[Exp; 20]>;

/// A monomial is an exponent vector whose length matches the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: std::iter::repeat(0).take(nvars).collect(),
        }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut m = Self::one(nvars);
        m.exps[idx] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Self> {
        let mut out = Exps::with_capacity(exps.len());
        for &e in exps {
            out.push(Exp::try_from(e).map_err(|_| Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps: out })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.iter().map(|&e| e as u32)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Exponent sum (degree under the all-ones weight).
    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        debug_assert_eq!(weights.len(), self.exps.len());
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut out = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            out.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps: out })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when divisible.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut out = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a > b {
                return None;
            }
            out.push(b - a);
        }
        Some(Monomial { exps: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables appearing with positive exponent.
    /// Rings are capped at 64 variables so this always fits.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1u64 << i;
            }
        }
        m
    }

    /// Rebuilds the monomial in another variable set. `var_map[i]` gives the
    /// target index of source variable `i`; `None` entries must have
    /// exponent zero.
    pub fn map_vars(&self, target_nvars: usize, var_map: &[Option<usize>]) -> Result<Monomial> {
        let mut out = Monomial::one(target_nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match var_map[i] {
                Some(j) => out.exps[j] = e,
                None => {
                    return Err(Error::invalid(
                        "monomial involves a variable dropped by the ring map",
                    ))
                }
            }
        }
        Ok(out)
    }
}

/// Total orders on monomials compatible with multiplication and with 1
/// minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Compare by the weighted degree first, break ties by graded reverse
    /// lexicographic order. With an indicator weight vector this is an
    /// elimination order for the weighted block.
    WeightedGrevLex(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::WeightedGrevLex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| grevlex_cmp(a, b)),
        }
    }

    /// Length-checked comparison for the public surface.
    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LengthMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.cmp(a, b))
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for i in 0..a.nvars() {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // ties: the last variable where they differ, smaller exponent wins
    for i in (0..a.nvars()).rev() {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps).unwrap()
    }

    #[test]
    fn grevlex_breaks_degree_ties_from_the_back() {
        // x^2 y vs x y z in (x, y, z): equal degree, z-exponent decides
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m(&[2, 1, 0]), &m(&[1, 1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 1]), &m(&[1, 1, 1])), Ordering::Equal);
    }

    #[test]
    fn lex_ignores_degree() {
        let o = MonomialOrder::Lex;
        // x vs y^2
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let o = MonomialOrder::GrevLex;
        assert!(o.try_cmp(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 1, 1]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), m(&[2, 1, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert_eq!(m(&[1, 0, 0]).divide_into(&a), Some(m(&[1, 1, 0])));
    }

    #[test]
    fn overflow_detected() {
        let a = m(&[u32::from(Exp::MAX)]);
        assert!(a.checked_mul(&m(&[1])).is_err());
    }
}
