//! Ideal-level toolbox: elimination, intersection, colon ideals, equality,
//! dimension and codimension, Hilbert functions.

use std::collections::HashMap;

use crate::field::Field;
use crate::groebner::{buchberger, Ideal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{check_same_ring, Poly, Ring};
use crate::{Error, Result};

/// Generators of `I ∩ k[remaining variables]`, computed under an
/// elimination order (indicator weights on the dropped block, grevlex
/// ties). The result lives in the original ring and involves none of the
/// dropped variables.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, drop: &[usize]) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let mut weights = vec![0u32; ring.nvars()];
    for &d in drop {
        if d >= ring.nvars() {
            return Err(Error::invalid("eliminated variable out of range"));
        }
        weights[d] = 1;
    }
    let (_, gb) = ideal.groebner_under(MonomialOrder::WeightedGrevLex(weights));
    let mut drop_mask = 0u64;
    for &d in drop {
        drop_mask |= 1 << d;
    }
    let kept: Vec<Poly<F>> = gb
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(_, m)| m.support_mask() & drop_mask == 0)
        })
        .map(|g| g.map_to_ring(ring).expect("same variables"))
        .collect();
    Ideal::new(ring, kept)
}

/// `I ∩ J` via the auxiliary-variable trick: eliminate `s` from
/// `s·I + (1-s)·J`.
pub fn intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_same_ring(a.ring(), b.ring(), "intersection across rings")?;
    let ring = a.ring();
    let sname = ring.fresh_name("s");
    let ext = ring.extend(&[&sname])?;
    let s = Poly::var_named(&ext, &sname)?;
    let one_minus_s = Poly::one(&ext).sub(&s);
    let mut gens = Vec::with_capacity(a.gens().len() + b.gens().len());
    for g in a.gens() {
        gens.push(s.mul(&g.map_to_ring(&ext)?));
    }
    for g in b.gens() {
        gens.push(one_minus_s.mul(&g.map_to_ring(&ext)?));
    }
    let ext_ideal = Ideal::new(&ext, gens)?;
    let s_idx = ext.var_index(&sname).unwrap();
    let elim = eliminate(&ext_ideal, &[s_idx])?;
    let back: Vec<Poly<F>> = elim
        .gens()
        .iter()
        .map(|g| g.map_to_ring(ring))
        .collect::<Result<_>>()?;
    Ideal::new(ring, back)
}

/// Exact division `f / g`; `None` if `g` does not divide `f`.
pub fn exact_div<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Option<Poly<F>> {
    assert!(!g.is_zero(), "division by the zero polynomial");
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let (glc, glm) = g.leading().unwrap();
    let glc_inv = field.inv(glc).unwrap();
    let mut rem = f.clone();
    let mut quo = Poly::zero(&ring);
    while let Some((rc, rm)) = rem.leading() {
        let q = glm.divide_into(rm)?;
        let c = field.mul(rc, &glc_inv);
        rem = rem.sub_scaled(&c, &q, g);
        quo = quo.add(&Poly::term(&ring, c, q));
    }
    Some(quo)
}

/// The ideal quotient `I : J = {f : f·J ⊆ I}`, computed generator by
/// generator: `I : g = (I ∩ (g)) / g`, intersected over the generators.
pub fn colon<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_same_ring(a.ring(), b.ring(), "colon across rings")?;
    let ring = a.ring();
    let mut acc: Option<Ideal<F>> = None;
    for g in b.gens() {
        if g.is_zero() {
            continue;
        }
        let gi = Ideal::new(ring, vec![g.clone()])?;
        let meet = intersect(a, &gi)?;
        let mut quotient_gens = Vec::with_capacity(meet.gens().len());
        for h in meet.gens() {
            let q = exact_div(h, g).ok_or_else(|| {
                Error::invalid("intersection generator not divisible; kernel bug")
            })?;
            quotient_gens.push(q);
        }
        let colon_g = Ideal::new(ring, quotient_gens)?;
        acc = Some(match acc {
            None => colon_g,
            Some(prev) => intersect(&prev, &colon_g)?,
        });
    }
    // J = (0): every f satisfies f·0 ⊆ I, so the quotient is the unit ideal
    Ok(acc.unwrap_or(Ideal::new(ring, vec![Poly::one(ring)])?))
}

/// Ideal equality via identical reduced Gröbner bases under the ring's
/// order.
pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    check_same_ring(a.ring(), b.ring(), "equality across rings")?;
    Ok(*a.groebner() == *b.groebner())
}

/// Krull dimension of `R/I`, read combinatorially off the leading-term
/// ideal: the largest variable subset touching no leading support entirely.
/// Its complement is a minimum hitting set of the leading supports, so
/// `codim = n - dim` is that minimum.
pub fn dim<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let n = ideal.ring().nvars();
    Ok(n - codim(ideal)?)
}

/// `#vars - dim`; errors on the improper ideal.
pub fn codim<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    let gb = ideal.groebner();
    if gb.len() == 1 && gb[0].is_one() {
        return Err(Error::ImproperIdeal);
    }
    let supports: Vec<u64> = gb
        .iter()
        .map(|g| g.leading_monomial().unwrap().support_mask())
        .collect();
    Ok(min_hitting_set(&supports, ideal.ring().nvars()))
}

/// Minimum number of variables meeting every support mask. Iterative
/// deepening; supports are first pruned to the inclusion-minimal ones.
pub(crate) fn min_hitting_set(supports: &[u64], nvars: usize) -> usize {
    let mut minimal: Vec<u64> = Vec::new();
    for &s in supports {
        debug_assert!(s != 0, "unit leading monomial in a proper ideal");
        if minimal.iter().any(|&m| m & s == m) {
            continue;
        }
        minimal.retain(|&m| s & m != s);
        minimal.push(s);
    }
    if minimal.is_empty() {
        return 0;
    }
    fn dfs(supports: &[u64], chosen: u64, k: usize, nvars: usize) -> bool {
        let Some(&first) = supports.iter().find(|&&s| s & chosen == 0) else {
            return true;
        };
        if k == 0 {
            return false;
        }
        for v in 0..nvars {
            if first & (1 << v) != 0 {
                if dfs(supports, chosen | (1 << v), k - 1, nvars) {
                    return true;
                }
            }
        }
        false
    }
    for k in 1..=nvars {
        if dfs(&minimal, 0, k, nvars) {
            return k;
        }
    }
    nvars
}

/// Values of the Hilbert function of `R/I` in degrees `0..=bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
}

impl HilbertFunction {
    pub fn as_slice(&self) -> &[u64] {
        &self.values
    }
}

/// Hilbert function of `R/I` under the standard grading, by counting
/// standard monomials against the leading-term ideal. Requires the ring's
/// total grading to be the all-ones one. `bound` is capped at 20.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, bound: usize) -> Result<HilbertFunction> {
    if ideal.ring().total_weights().iter().any(|&w| w != 1) {
        return Err(Error::invalid(
            "hilbert_function requires the all-ones total grading",
        ));
    }
    if bound > 20 {
        return Err(Error::invalid("hilbert_function bound capped at 20"));
    }
    let gb = ideal.groebner();
    let lead: Vec<Vec<u32>> = gb
        .iter()
        .map(|g| {
            let m = g.leading_monomial().unwrap();
            (0..m.nvars()).map(|i| m.exp(i)).collect()
        })
        .collect();
    let values = hf_quotient(&lead, ideal.ring().nvars(), bound);
    Ok(HilbertFunction { values })
}

/// Hilbert function of a quotient by a monomial ideal via the pivot
/// recursion `HF(S/I, d) = HF(S/(I:x), d-1) + HF(S'/(I ∩ S'), d)`.
fn hf_quotient(gens: &[Vec<u32>], nvars: usize, bound: usize) -> Vec<u64> {
    let mut gens: Vec<Vec<u32>> = gens.to_vec();
    // inclusion-minimal generators only
    gens.sort_by_key(|g| g.iter().map(|&e| e as u64).sum::<u64>());
    let mut minimal: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if !minimal
            .iter()
            .any(|m| m.iter().zip(&g).all(|(a, b)| a <= b))
        {
            minimal.push(g);
        }
    }
    if minimal.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0; bound + 1];
    }
    if minimal.is_empty() {
        return (0..=bound)
            .map(|d| {
                if nvars == 0 {
                    u64::from(d == 0)
                } else {
                    binom(nvars as u64 - 1 + d as u64, d as u64)
                }
            })
            .collect();
    }
    // pivot: first variable of the first generator
    let pivot = minimal[0].iter().position(|&e| e > 0).unwrap();
    let colon: Vec<Vec<u32>> = minimal
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h[pivot] > 0 {
                h[pivot] -= 1;
            }
            h
        })
        .collect();
    let without: Vec<Vec<u32>> = minimal.iter().filter(|g| g[pivot] == 0).cloned().collect();
    let a = hf_quotient(&colon, nvars, bound);
    // drop the pivot variable for the second branch
    let without: Vec<Vec<u32>> = without
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .filter(|(i, _)| *i != pivot)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect();
    let b = hf_quotient(&without, nvars - 1, bound);
    (0..=bound)
        .map(|d| if d == 0 { b[0] } else { a[d - 1] + b[d] })
        .collect()
}

fn binom(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u128;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    num as u64
}

/// Brute-force standard-monomial count; the independent oracle for
/// [`hilbert_function`] used by the test suites.
pub fn hilbert_by_enumeration<F: Field>(
    ideal: &Ideal<F>,
    bound: usize,
) -> Result<HilbertFunction> {
    if ideal.ring().total_weights().iter().any(|&w| w != 1) {
        return Err(Error::invalid("requires the all-ones total grading"));
    }
    let gb = ideal.groebner();
    let lead: Vec<Monomial> = gb
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    let n = ideal.ring().nvars();
    let mut values = vec![0u64; bound + 1];
    let mut exps = vec![0u32; n];
    enumerate(&mut exps, 0, bound, &lead, &mut values);
    Ok(HilbertFunction { values })
}

fn enumerate(
    exps: &mut Vec<u32>,
    var: usize,
    remaining: usize,
    lead: &[Monomial],
    values: &mut [u64],
) {
    if var == exps.len() {
        let m = Monomial::from_exps(exps).unwrap();
        if !lead.iter().any(|l| l.divides(&m)) {
            let d: u64 = exps.iter().map(|&e| e as u64).sum();
            values[d as usize] += 1;
        }
        return;
    }
    for e in 0..=remaining {
        exps[var] = e as u32;
        enumerate(exps, var + 1, remaining - e, lead, values);
    }
    exps[var] = 0;
}

/// Saturation-free standard toolbox ends here; the linkage chains consume
/// only the operations above.
pub fn ideal_sum<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    check_same_ring(a.ring(), b.ring(), "sum across rings")?;
    let mut gens = a.gens().to_vec();
    gens.extend(b.gens().iter().cloned());
    Ideal::new(a.ring(), gens)
}

/// Reduced basis of the ideal generated by `gens` in a throwaway context;
/// convenience for tests.
pub fn reduced_basis<F: Field>(ring: &Ring<F>, gens: &[Poly<F>]) -> Vec<Poly<F>> {
    buchberger(ring, gens)
}

/// Substitutes variables by polynomials across every generator.
pub fn substitute_ideal<F: Field>(
    ideal: &Ideal<F>,
    images: &HashMap<usize, Poly<F>>,
    target: &Ring<F>,
) -> Result<Ideal<F>> {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(images, target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(target, gens)
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

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::from_strs(r, gens).unwrap()
    }

    #[test]
    fn eliminate_examples() {
        let r = ring(&["w", "x", "y"]);
        let i = ideal(&r, &["w - x", "w - y"]);
        let e = eliminate(&i, &[0]).unwrap();
        assert!(ideal_equal(&e, &ideal(&r, &["x - y"])).unwrap());

        let i = ideal(&r, &["x"]);
        let e = eliminate(&i, &[1]).unwrap();
        assert!(e.gens().is_empty() || e.groebner().is_empty());

        let i = ideal(&r, &["w*x", "w - 1"]);
        let e = eliminate(&i, &[0]).unwrap();
        assert!(ideal_equal(&e, &ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let r = ring(&["x", "y", "z"]);
        let m = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert!(ideal_equal(&m, &ideal(&r, &["x*y"])).unwrap());

        let m = intersect(&ideal(&r, &["x", "y"]), &ideal(&r, &["z"])).unwrap();
        assert!(ideal_equal(&m, &ideal(&r, &["x*z", "y*z"])).unwrap());

        let i = ideal(&r, &["x^2 - y", "y*z"]);
        let m = intersect(&i, &i).unwrap();
        assert!(ideal_equal(&m, &i).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = ring(&["x", "y", "z"]);
        let q = colon(&ideal(&r, &["x^2"]), &ideal(&r, &["x"])).unwrap();
        assert!(ideal_equal(&q, &ideal(&r, &["x"])).unwrap());

        let q = colon(&ideal(&r, &["x*y", "x*z"]), &ideal(&r, &["x"])).unwrap();
        assert!(ideal_equal(&q, &ideal(&r, &["y", "z"])).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring(&["x", "y"]);
        assert!(ideal_equal(&ideal(&r, &["x", "y"]), &ideal(&r, &["y", "x + y"])).unwrap());
        assert!(!ideal_equal(&ideal(&r, &["x"]), &ideal(&r, &["x^2"])).unwrap());
    }

    #[test]
    fn codim_examples() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(codim(&ideal(&r, &["x", "y", "z"])).unwrap(), 3);
        let r2 = ring(&["x", "y"]);
        assert_eq!(codim(&ideal(&r2, &["x*y"])).unwrap(), 1);
        assert!(codim(&ideal(&r2, &["x", "x - 1"])).is_err());
        // subset-of-variables ideals have codim = #variables used
        assert_eq!(codim(&ideal(&r, &["x", "z"])).unwrap(), 2);
    }

    #[test]
    fn hilbert_examples() {
        let r = ring(&["x"]);
        let h = hilbert_function(&ideal(&r, &["x^2"]), 3).unwrap();
        assert_eq!(h.values, vec![1, 1, 0, 0]);

        let r = ring(&["x", "y"]);
        let h = hilbert_function(&ideal(&r, &[]), 3).unwrap();
        assert_eq!(h.values, vec![1, 2, 3, 4]);
    }

    #[test]
    fn hilbert_matches_enumeration_oracle() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["x^2*y", "y^3", "x*z^2"]);
        let fast = hilbert_function(&i, 8).unwrap();
        let slow = hilbert_by_enumeration(&i, 8).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn colon_by_zero_ideal_is_unit() {
        let r = ring(&["x", "y"]);
        let q = colon(&ideal(&r, &["x"]), &Ideal::new(&r, vec![]).unwrap()).unwrap();
        assert!(q.is_unit_ideal());
    }
}
