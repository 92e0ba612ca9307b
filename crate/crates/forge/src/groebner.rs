//! Normal forms, Buchberger's algorithm and reduced Gröbner bases.
//!
//! The implementation is the plain Buchberger loop with the product
//! (coprime leading term) and chain criteria, normal selection strategy
//! (minimal lcm degree, ties by pair index), and a final interreduction
//! pass. The reduced basis is the canonical one: monic, self-reduced,
//! sorted by decreasing leading monomial.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{check_same_ring, Poly, Ring};
use crate::{Error, Result};

/// Division certificate: `input = Σ cofactors[i] * reducers[i] + remainder`,
/// exactly.
#[derive(Debug, Clone)]
pub struct ReductionCertificate<F: Field> {
    pub remainder: Poly<F>,
    pub cofactors: Option<Vec<Poly<F>>>,
}

/// Multivariate division: fully reduces `f` against `reducers` so that no
/// term of the remainder is divisible by any reducer's leading monomial.
/// Reducers are tried in list order, deterministically.
pub fn normal_form<F: Field>(
    f: &Poly<F>,
    reducers: &[Poly<F>],
    with_certificate: bool,
) -> ReductionCertificate<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let lead: Vec<(Monomial, F::Elem)> = reducers
        .iter()
        .map(|g| {
            let (lc, lm) = g.leading().expect("zero reducer");
            (lm.clone(), field.inv(lc).expect("nonzero leading coeff"))
        })
        .collect();
    let mut cofactors = if with_certificate {
        Some(vec![Poly::zero(&ring); reducers.len()])
    } else {
        None
    };
    let mut remainder: Vec<(F::Elem, Monomial)> = Vec::new();
    let mut work = f.clone();
    'outer: while let Some((wc, wm)) = work.leading() {
        for (i, (lm, lc_inv)) in lead.iter().enumerate() {
            if lm.divides(wm) {
                let q = lm.divide_into(wm).unwrap();
                let c = field.mul(wc, lc_inv);
                work = work.sub_scaled(&c, &q, &reducers[i]);
                if let Some(cof) = cofactors.as_mut() {
                    cof[i] = cof[i].add(&Poly::term(&ring, c, q));
                }
                continue 'outer;
            }
        }
        // irreducible leading term: move it to the remainder
        remainder.push((wc.clone(), wm.clone()));
        let t = Poly::term(&ring, wc.clone(), wm.clone());
        work = work.sub(&t);
    }
    // remainder terms were peeled in decreasing order
    let remainder = Poly::from_terms(&ring, remainder);
    ReductionCertificate {
        remainder,
        cofactors,
    }
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let field = f.ring().field();
    let (fc, fm) = f.leading().unwrap();
    let (gc, gm) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = field.inv(fc).unwrap();
    let b = field.inv(gc).unwrap();
    f.mul_term(&a, &fm.divide_into(&l).unwrap())
        .sub(&g.mul_term(&b, &gm.divide_into(&l).unwrap()))
}

/// Outcome of a budgeted basis computation.
pub enum GbOutcome<F: Field> {
    Done(Vec<Poly<F>>),
    BudgetExceeded,
}

/// Buchberger with an optional deterministic effort budget (number of
/// S-pairs treated). `None` never gives up.
pub fn buchberger_budgeted<F: Field>(
    ring: &Ring<F>,
    gens: &[Poly<F>],
    budget: Option<usize>,
) -> GbOutcome<F> {
    let field = ring.field().clone();
    let mut basis: Vec<Poly<F>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.canonical_scaled());
        }
    }
    if basis.is_empty() {
        return GbOutcome::Done(Vec::new());
    }
    if basis.iter().any(|g| g.is_unit_constant()) {
        return GbOutcome::Done(vec![Poly::one(ring)]);
    }

    // (lcm degree, i, j) min-heap; "done" records treated pairs for the
    // chain criterion (popped or skipped by the product criterion).
    let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[Poly<F>],
                      new: usize,
                      queue: &mut BinaryHeap<Reverse<(u64, usize, usize)>>,
                      done: &mut HashSet<(usize, usize)>| {
        let lm_new = basis[new].leading_monomial().unwrap();
        for i in 0..new {
            let lm_i = basis[i].leading_monomial().unwrap();
            if lm_i.coprime(lm_new) {
                // product criterion: the S-pair reduces to zero
                done.insert((i, new));
            } else {
                queue.push(Reverse((lm_i.lcm(lm_new).total_degree(), i, new)));
            }
        }
    };
    for k in 0..basis.len() {
        push_pairs(&basis, k, &mut queue, &mut done);
    }

    let mut treated = 0usize;
    while let Some(Reverse((_, i, j))) = queue.pop() {
        if done.contains(&(i, j)) {
            continue;
        }
        if let Some(b) = budget {
            treated += 1;
            if treated > b {
                return GbOutcome::BudgetExceeded;
            }
        }
        // chain criterion: lcm(i,j) divisible by lm_k with both side pairs done
        let lm_i = basis[i].leading_monomial().unwrap();
        let lm_j = basis[j].leading_monomial().unwrap();
        let lcm = lm_i.lcm(lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        });
        done.insert((i, j));
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis, false).remainder;
        if r.is_zero() {
            continue;
        }
        let r = r.canonical_scaled();
        if r.is_unit_constant() {
            return GbOutcome::Done(vec![Poly::one(ring)]);
        }
        basis.push(r);
        let new = basis.len() - 1;
        push_pairs(&basis, new, &mut queue, &mut done);
        let _ = field;
    }

    GbOutcome::Done(interreduce(ring, basis))
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Turns any basis whose leading terms generate the leading-term ideal into
/// the reduced Gröbner basis: minimal, tail-reduced, monic, sorted by
/// decreasing leading monomial.
fn interreduce<F: Field>(ring: &Ring<F>, mut basis: Vec<Poly<F>>) -> Vec<Poly<F>> {
    basis.retain(|g| !g.is_zero());
    // minimal generating set of the leading-term ideal
    basis.sort_by(|a, b| {
        ring.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    let mut keep: Vec<Poly<F>> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !keep
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            keep.push(g);
        }
    }
    // tail reduction against the others
    let mut reduced: Vec<Poly<F>> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly<F>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = normal_form(&keep[i], &others, false).remainder;
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|a, b| {
        ring.order()
            .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    reduced
}

/// The unique reduced Gröbner basis of `gens` under the ring's order.
pub fn buchberger<F: Field>(ring: &Ring<F>, gens: &[Poly<F>]) -> Vec<Poly<F>> {
    match buchberger_budgeted(ring, gens, None) {
        GbOutcome::Done(gb) => gb,
        GbOutcome::BudgetExceeded => unreachable!("no budget was set"),
    }
}

/// A finitely generated ideal with a lazily computed reduced Gröbner basis
/// cache, keyed by monomial order.
#[derive(Debug)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Poly<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Poly<F>>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().unwrap().clone();
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(cache),
        }
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: Vec<Poly<F>>) -> Result<Self> {
        for g in &gens {
            check_same_ring(g.ring(), ring, "ideal generator in a different ring")?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_strs(ring: &Ring<F>, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| crate::parse::parse_poly(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    /// Reduced Gröbner basis under the ring's own order, cached.
    pub fn groebner(&self) -> Arc<Vec<Poly<F>>> {
        self.groebner_under(self.ring.order().clone()).1
    }

    /// Reduced Gröbner basis under a chosen order. The returned polynomials
    /// live in a ring that carries `order`, so their term lists are sorted
    /// accordingly. Results are cached per order; concurrent callers either
    /// wait or recompute the identical basis.
    pub fn groebner_under(&self, order: MonomialOrder) -> (Ring<F>, Arc<Vec<Poly<F>>>) {
        let target = if order == *self.ring.order() {
            self.ring.clone()
        } else {
            self.ring.with_order(order.clone()).expect("order fits ring")
        };
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return (target, gb.clone());
        }
        let gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.map_to_ring(&target).expect("same variables"))
            .collect();
        let gb = Arc::new(buchberger(&target, &gens));
        self.cache
            .lock()
            .unwrap()
            .entry(order)
            .or_insert_with(|| gb.clone());
        (target, gb)
    }

    /// Ideal membership: `f ∈ I` iff the normal form against the reduced
    /// basis vanishes.
    pub fn contains(&self, f: &Poly<F>) -> Result<bool> {
        check_same_ring(f.ring(), &self.ring, "membership across rings")?;
        let gb = self.groebner();
        if gb.is_empty() {
            return Ok(f.is_zero());
        }
        Ok(normal_form(f, &gb, false).remainder.is_zero())
    }

    /// True iff the reduced basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        let gb = self.groebner();
        gb.len() == 1 && gb[0].is_one()
    }

    /// Radical membership via the Rabinowitsch trick: `f ∈ √I` iff
    /// `1 ∈ I + (1 - w·f)` in the ring extended by a fresh variable `w`.
    /// Small powers of `f` are tried against the cached basis first; a
    /// positive answer there is already a certificate.
    pub fn radical_contains(&self, f: &Poly<F>) -> Result<bool> {
        check_same_ring(f.ring(), &self.ring, "radical membership across rings")?;
        if f.is_zero() {
            return Ok(true);
        }
        let gb = self.groebner();
        if gb.len() == 1 && gb[0].is_one() {
            return Ok(true);
        }
        if !gb.is_empty() {
            // f^k ∈ I for some tried k certifies membership in the radical
            let mut nf = normal_form(f, &gb, false).remainder;
            if nf.is_zero() {
                return Ok(true);
            }
            for _ in 0..8 {
                nf = normal_form(&nf.mul(f), &gb, false).remainder;
                if nf.is_zero() {
                    return Ok(true);
                }
            }
        }
        let wname = self.ring.fresh_name("w");
        let ext = self.ring.extend(&[&wname])?;
        let w = Poly::var_named(&ext, &wname)?;
        let mut gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.map_to_ring(&ext))
            .collect::<Result<_>>()?;
        gens.push(Poly::one(&ext).sub(&w.mul(&f.map_to_ring(&ext)?)));
        let gb = buchberger(&ext, &gens);
        Ok(gb.len() == 1 && gb[0].is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::parse_poly;
    use crate::ring::RingCtx;

    fn ring(vars: &[&str]) -> Ring<Rationals> {
        RingCtx::new(
            Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
            None,
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    fn p(r: &Ring<Rationals>, s: &str) -> Poly<Rationals> {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn normal_form_basics() {
        let r = ring(&["x", "y"]);
        let nf = normal_form(&p(&r, "x^2"), &[p(&r, "x")], true);
        assert!(nf.remainder.is_zero());
        assert_eq!(nf.cofactors.unwrap()[0], p(&r, "x"));

        let nf = normal_form(&p(&r, "y"), &[p(&r, "x")], false);
        assert_eq!(nf.remainder, p(&r, "y"));

        // one division step: x^2 y + y = y*(x^2 - 1) + 2y
        let nf = normal_form(&p(&r, "x^2*y + y"), &[p(&r, "x^2 - 1")], true);
        assert_eq!(nf.remainder, p(&r, "2*y"));
        assert_eq!(nf.cofactors.unwrap()[0], p(&r, "y"));
    }

    #[test]
    fn certificate_identity_holds() {
        let r = ring(&["x", "y"]);
        let f = p(&r, "x^3*y + x*y^2 + y + 3");
        let g1 = p(&r, "x*y - 1");
        let g2 = p(&r, "y^2 - 1");
        let cert = normal_form(&f, &[g1.clone(), g2.clone()], true);
        let cof = cert.cofactors.unwrap();
        let rebuilt = cof[0]
            .mul(&g1)
            .add(&cof[1].mul(&g2))
            .add(&cert.remainder);
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn reduced_basis_examples() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &[p(&r, "x"), p(&r, "y")]);
        assert_eq!(gb, vec![p(&r, "x"), p(&r, "y")]);

        let gb = buchberger(&r, &[p(&r, "x^2 - 1"), p(&r, "x - 1")]);
        assert_eq!(gb, vec![p(&r, "x - 1")]);
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"]);
        let i = Ideal::from_strs(&r, &["x"]).unwrap();
        assert!(i.contains(&p(&r, "x^2 + x*y")).unwrap());
        assert!(!i.contains(&p(&r, "y")).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = ring(&["x", "y"]);
        let i = Ideal::from_strs(&r, &["x^2"]).unwrap();
        assert!(i.radical_contains(&p(&r, "x")).unwrap());
        assert!(!i.radical_contains(&p(&r, "y")).unwrap());
    }

    #[test]
    fn groebner_is_deterministic_under_permutation() {
        let r = ring(&["x", "y", "z"]);
        let gens = vec![
            p(&r, "x^2 + y*z - 1"),
            p(&r, "x*z - y"),
            p(&r, "y^2 + z"),
        ];
        let gb1 = buchberger(&r, &gens);
        let mut permuted = gens.clone();
        permuted.rotate_left(1);
        permuted.swap(0, 1);
        let gb2 = buchberger(&r, &permuted);
        assert_eq!(gb1, gb2);
    }
}
