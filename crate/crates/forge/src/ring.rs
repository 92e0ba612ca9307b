//! Polynomial ring contexts and graded sparse multivariate polynomials.
//!
//! A [`RingCtx`] fixes the coefficient field, the named variables, a list of
//! grading weight vectors and the monomial order. Polynomials are canonical:
//! terms are kept strictly decreasing in the ring's order with no zero
//! coefficients, so structural equality is semantic equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::{Error, Result};

/// Immutable description of a polynomial ring. Shared via [`Ring`].
#[derive(Debug)]
pub struct RingCtx<F: Field> {
    field: F,
    vars: Vec<String>,
    index: HashMap<String, usize>,
    gradings: Vec<Vec<u32>>,
    total: Vec<u32>,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<RingCtx<F>>;

impl<F: Field> PartialEq for RingCtx<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.gradings == other.gradings
            && self.order == other.order
    }
}

impl<F: Field> RingCtx<F> {
    /// Builds a ring. `gradings` defaults to the single all-ones vector.
    /// The total grading is the componentwise sum of the grading vectors.
    pub fn new(
        field: F,
        vars: Vec<String>,
        gradings: Option<Vec<Vec<u32>>>,
        order: MonomialOrder,
    ) -> Result<Ring<F>> {
        if vars.is_empty() {
            return Err(Error::invalid("a ring needs at least one variable"));
        }
        if vars.len() > 64 {
            return Err(Error::invalid("at most 64 variables are supported"));
        }
        let mut index = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate variable name {v}")));
            }
        }
        let gradings = gradings.unwrap_or_else(|| vec![vec![1; vars.len()]]);
        if gradings.is_empty() {
            return Err(Error::invalid("at least one grading vector is required"));
        }
        for g in &gradings {
            if g.len() != vars.len() {
                return Err(Error::LengthMismatch(g.len(), vars.len()));
            }
        }
        if let MonomialOrder::WeightedGrevLex(w) = &order {
            if w.len() != vars.len() {
                return Err(Error::LengthMismatch(w.len(), vars.len()));
            }
        }
        let mut total = vec![0u32; vars.len()];
        for g in &gradings {
            for (t, w) in total.iter_mut().zip(g) {
                *t += w;
            }
        }
        Ok(Arc::new(RingCtx {
            field,
            vars,
            index,
            gradings,
            total,
            order,
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn gradings(&self) -> &[Vec<u32>] {
        &self.gradings
    }

    /// Componentwise sum of the grading vectors; the degree used for all
    /// shift bookkeeping on matrices and resolutions.
    pub fn total_weights(&self) -> &[u32] {
        &self.total
    }

    /// Same variables and field, different monomial order.
    pub fn with_order(self: &Ring<F>, order: MonomialOrder) -> Result<Ring<F>> {
        RingCtx::new(
            self.field.clone(),
            self.vars.clone(),
            Some(self.gradings.clone()),
            order,
        )
    }

    /// Extends the ring by fresh variables (appended last, total weight 1).
    pub fn extend(self: &Ring<F>, extra: &[&str]) -> Result<Ring<F>> {
        let mut vars = self.vars.clone();
        for e in extra {
            vars.push((*e).to_string());
        }
        let mut gradings = self.gradings.clone();
        for (gi, g) in gradings.iter_mut().enumerate() {
            for _ in extra {
                // keep the total weight of new variables at 1
                g.push(if gi == 0 { 1 } else { 0 });
            }
        }
        let order = match &self.order {
            MonomialOrder::WeightedGrevLex(w) => {
                let mut w = w.clone();
                w.extend(std::iter::repeat(1).take(extra.len()));
                MonomialOrder::WeightedGrevLex(w)
            }
            o => o.clone(),
        };
        RingCtx::new(self.field.clone(), vars, Some(gradings), order)
    }

    /// A name not colliding with any variable of the ring.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('_');
        }
        name
    }
}

pub fn same_ring<F: Field>(a: &Ring<F>, b: &Ring<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn check_same_ring<F: Field>(a: &Ring<F>, b: &Ring<F>, what: &str) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(what.to_string()))
    }
}

/// Result of [`Poly::multidegree`]: one weighted degree per grading vector
/// when the polynomial is homogeneous under all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multidegree {
    Homogeneous(Vec<u64>),
    Inhomogeneous,
}

/// A sparse polynomial in canonical form: terms strictly decreasing in the
/// ring's monomial order, no zero coefficients. The zero polynomial has an
/// empty term list.
#[derive(Debug, Clone)]
pub struct Poly<F: Field> {
    ring: Ring<F>,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(c, Monomial::one(ring.nvars()))],
        }
    }

    pub fn int(ring: &Ring<F>, n: i64) -> Self {
        Self::constant(ring, ring.field().of_i64(n))
    }

    pub fn var(ring: &Ring<F>, idx: usize) -> Self {
        Poly {
            ring: ring.clone(),
            terms: vec![(ring.field().one(), Monomial::var(ring.nvars(), idx))],
        }
    }

    pub fn var_named(ring: &Ring<F>, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        Ok(Self::var(ring, idx))
    }

    pub fn term(ring: &Ring<F>, c: F::Elem, m: Monomial) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        assert_eq!(m.nvars(), ring.nvars());
        Poly {
            ring: ring.clone(),
            terms: vec![(c, m)],
        }
    }

    /// Normalizes an arbitrary term list into canonical form.
    pub fn from_terms(ring: &Ring<F>, mut terms: Vec<(F::Elem, Monomial)>) -> Self {
        for (_, m) in &terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
        }
        terms.sort_by(|a, b| ring.order().cmp(&b.1, &a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if let Some(last) = out.last_mut() {
                if last.1 == m {
                    last.0 = ring.field().add(&last.0, &c);
                    if ring.field().is_zero(&last.0) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !ring.field().is_zero(&c) {
                out.push((c, m));
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].1.is_one()
            && self.ring.field().is_one(&self.terms[0].0)
    }

    /// Nonzero constant?
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn leading(&self) -> Option<(&F::Elem, &Monomial)> {
        self.terms.first().map(|(c, m)| (c, m))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn assert_same(&self, other: &Poly<F>) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        self.assert_same(other);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.assert_same(other);
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly<F>, negate: bool) -> Poly<F> {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ca, ma) = &self.terms[i];
            let (cb, mb) = &other.terms[j];
            match order.cmp(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ca.clone(), ma.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { field.neg(cb) } else { cb.clone() };
                    out.push((c, mb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        field.sub(ca, cb)
                    } else {
                        field.add(ca, cb)
                    };
                    if !field.is_zero(&c) {
                        out.push((c, ma.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (cb, mb) in &other.terms[j..] {
            let c = if negate { field.neg(cb) } else { cb.clone() };
            out.push((c, mb.clone()));
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly<F> {
        let field = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (field.neg(c), m.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        self.assert_same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = field.add(e.get(), &c);
                        if field.is_zero(&s) {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        if !field.is_zero(&c) {
                            e.insert(c);
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(F::Elem, Monomial)> =
            acc.into_iter().map(|(m, c)| (c, m)).collect();
        terms.sort_by(|a, b| self.ring.order().cmp(&b.1, &a.1));
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self * c * m`. Multiplying by a single term preserves the order.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Poly<F> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(ca, ma)| (field.mul(ca, c), ma.mul(m)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Poly<F> {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    /// `self - c * m * g` via a sorted merge; the workhorse of division.
    pub fn sub_scaled(&self, c: &F::Elem, m: &Monomial, g: &Poly<F>) -> Poly<F> {
        self.merge(&g.mul_term(c, m), true)
    }

    pub fn pow(&self, e: u32) -> Poly<F> {
        let mut result = Self::one(&self.ring);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly<F> {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field().inv(lc).expect("nonzero leading coeff");
                self.scale(&inv)
            }
        }
    }

    /// Canonical generator scaling (monic over a prime field, primitive
    /// integer form over ℚ).
    pub fn canonical_scaled(&self) -> Poly<F> {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs: Vec<F::Elem> = self.terms.iter().map(|(c, _)| c.clone()).collect();
        self.ring.field().scale_canonical(&mut coeffs);
        Poly {
            ring: self.ring.clone(),
            terms: coeffs
                .into_iter()
                .zip(self.terms.iter().map(|(_, m)| m.clone()))
                .collect(),
        }
    }

    /// Degree under the ring's total grading; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        let w = self.ring.total_weights();
        self.terms.iter().map(|(_, m)| m.weighted_degree(w)).max()
    }

    /// True when every term has the same total-grading degree.
    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.total_weights();
        match self.terms.first() {
            None => true,
            Some((_, m0)) => {
                let d = m0.weighted_degree(w);
                self.terms.iter().all(|(_, m)| m.weighted_degree(w) == d)
            }
        }
    }

    /// One weighted degree per grading vector, or the inhomogeneous marker.
    /// The zero polynomial counts as homogeneous of every degree; it reports
    /// the all-zero vector.
    pub fn multidegree(&self) -> Multidegree {
        let gradings = self.ring.gradings();
        if self.terms.is_empty() {
            return Multidegree::Homogeneous(vec![0; gradings.len()]);
        }
        let mut out = Vec::with_capacity(gradings.len());
        for g in gradings {
            let d0 = self.terms[0].1.weighted_degree(g);
            if self.terms.iter().any(|(_, m)| m.weighted_degree(g) != d0) {
                return Multidegree::Inhomogeneous;
            }
            out.push(d0);
        }
        Multidegree::Homogeneous(out)
    }

    /// Applies the ring homomorphism sending variable `i` to `images[&i]`.
    /// Unmapped variables go to the target variable with the same name.
    pub fn substitute(
        &self,
        images: &HashMap<usize, Poly<F>>,
        target: &Ring<F>,
    ) -> Result<Poly<F>> {
        for img in images.values() {
            check_same_ring(img.ring(), target, "substitution image not in target ring")?;
        }
        // identity-or-image table, with lazy power caches
        let mut table: Vec<Poly<F>> = Vec::with_capacity(self.ring.nvars());
        for i in 0..self.ring.nvars() {
            match images.get(&i) {
                Some(img) => table.push(img.clone()),
                None => {
                    let name = &self.ring.var_names()[i];
                    table.push(Poly::var_named(target, name).map_err(|_| {
                        Error::RingMismatch(format!(
                            "target ring lacks unmapped variable {name}"
                        ))
                    })?);
                }
            }
        }
        let mut powers: Vec<Vec<Poly<F>>> = table.iter().map(|p| vec![p.clone()]).collect();
        let mut power = |i: usize, e: u32, powers: &mut Vec<Vec<Poly<F>>>| -> Poly<F> {
            debug_assert!(e >= 1);
            let cache = &mut powers[i];
            while cache.len() < e as usize {
                let next = cache.last().unwrap().mul(&table[i]);
                cache.push(next);
            }
            cache[e as usize - 1].clone()
        };
        let mut out = Poly::zero(target);
        for (c, m) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for i in 0..self.ring.nvars() {
                let e = m.exp(i);
                if e > 0 {
                    term = term.mul(&power(i, e, &mut powers));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Transports the polynomial along a variable renaming into another ring
    /// (same field). `var_map[i]` is the target index of source variable `i`.
    pub fn map_vars(&self, target: &Ring<F>, var_map: &[Option<usize>]) -> Result<Poly<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            terms.push((c.clone(), m.map_vars(target.nvars(), var_map)?));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Transport by matching variable names; requires every variable with
    /// positive exponent to exist in the target.
    pub fn map_to_ring(&self, target: &Ring<F>) -> Result<Poly<F>> {
        let map: Vec<Option<usize>> = self
            .ring
            .var_names()
            .iter()
            .map(|n| target.var_index(n))
            .collect();
        self.map_vars(target, &map)
    }

    /// Coefficient of the constant term.
    pub fn constant_coeff(&self) -> F::Elem {
        self.terms
            .iter()
            .find(|(_, m)| m.is_one())
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = field.is_displayed_negative(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = field.fmt_abs(c);
            let mut wrote_factor = false;
            if mag != "1" || m.is_one() {
                write!(f, "{mag}")?;
                wrote_factor = true;
            }
            for i in 0..m.nvars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.var_names()[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    fn qring(vars: &[&str]) -> Ring<Rationals> {
        RingCtx::new(
            Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
            None,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn add_cancels() {
        let r = qring(&["x", "y"]);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        // (x+y) + (x-y) = 2x
        let s = x.add(&y).add(&x.sub(&y));
        assert_eq!(s, x.scale(&Rationals.of_i64(2)));
        // f + 0 = f
        let f = x.mul(&y).add(&Poly::one(&r));
        assert_eq!(f.add(&Poly::zero(&r)), f);
    }

    #[test]
    fn add_in_characteristic_p() {
        let f = Fp::new(32003).unwrap();
        let r = RingCtx::new(
            f,
            vec!["x".into()],
            None,
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let x = Poly::var(&r, 0);
        let s = x.scale(&32002).add(&x);
        assert!(s.is_zero());
    }

    #[test]
    fn mul_difference_of_squares() {
        let r = qring(&["x", "y"]);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        // (x+1)^2 = x^2 + 2x + 1
        let sq = x.add(&Poly::one(&r)).pow(2);
        let expected = x
            .mul(&x)
            .add(&x.scale(&Rationals.of_i64(2)))
            .add(&Poly::one(&r));
        assert_eq!(sq, expected);
    }

    #[test]
    fn determinant_evaluation() {
        // x12*y34 - x34*y12 at x12=1, y34=2, x34=3, y12=1 gives -1
        let r = qring(&["x12", "x34", "y12", "y34"]);
        let p = Poly::var_named(&r, "x12")
            .unwrap()
            .mul(&Poly::var_named(&r, "y34").unwrap())
            .sub(&Poly::var_named(&r, "x34").unwrap().mul(&Poly::var_named(&r, "y12").unwrap()));
        let images: HashMap<usize, Poly<Rationals>> = [
            (0usize, Poly::int(&r, 1)),
            (1, Poly::int(&r, 3)),
            (2, Poly::int(&r, 1)),
            (3, Poly::int(&r, 2)),
        ]
        .into_iter()
        .collect();
        let v = p.substitute(&images, &r).unwrap();
        assert_eq!(v, Poly::int(&r, -1));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let r = qring(&["x", "y"]);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let sub: HashMap<usize, Poly<Rationals>> = [(0usize, y.clone())].into_iter().collect();
        assert!(x.sub(&y).substitute(&sub, &r).unwrap().is_zero());
    }

    #[test]
    fn multidegree_detects_inhomogeneity() {
        let r = qring(&["x", "y"]);
        let x = Poly::var(&r, 0);
        assert_eq!(
            x.add(&x.mul(&x)).multidegree(),
            Multidegree::Inhomogeneous
        );
        assert_eq!(
            x.mul(&x).multidegree(),
            Multidegree::Homogeneous(vec![2])
        );
    }

    #[test]
    fn ring_rejects_duplicates_and_bad_weights() {
        assert!(RingCtx::new(
            Rationals,
            vec!["x".into(), "x".into()],
            None,
            MonomialOrder::GrevLex
        )
        .is_err());
        assert!(RingCtx::new(
            Rationals,
            vec!["x".into(), "y".into()],
            Some(vec![vec![1]]),
            MonomialOrder::GrevLex
        )
        .is_err());
    }
}
