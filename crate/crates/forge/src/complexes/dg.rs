//! Multiplication lifts on length-≤3 resolutions of cyclic modules and the
//! triviality test for the induced multiplication on Tor.
//!
//! The lift data is the start of the DG-algebra structure: products of
//! F₁-basis classes land in F₂, products F₁·F₂ land in F₃, both solved
//! exactly as module-membership certificates against the next
//! differential's column module. On a minimal resolution the constant
//! terms of the lift coefficients are independent of the lifting choices,
//! so "all structure constants in the maximal ideal" is well defined.

use std::collections::BTreeMap;

use crate::complexes::ChainComplex;
use crate::field::Field;
use crate::modgb::{ColumnModule, ModVec, ReducerStrategy};
use crate::ring::Poly;
use crate::{Error, Result};

/// `m1[(i,j)]` (i<j) is the F₂-vector with d₂(m1) = gᵢeⱼ − gⱼeᵢ;
/// `m2[(i,k)]` is the F₃-vector with d₃(m2) = gᵢfₖ − (eᵢ·d₂(fₖ)) expanded
/// through m1.
#[derive(Debug, Clone)]
pub struct MultiplicationLift<F: Field> {
    pub m1: BTreeMap<(usize, usize), Vec<Poly<F>>>,
    pub m2: BTreeMap<(usize, usize), Vec<Poly<F>>>,
}

impl<F: Field> MultiplicationLift<F> {
    /// All lift coefficients, flattened.
    pub fn coefficients(&self) -> impl Iterator<Item = &Poly<F>> {
        self.m1
            .values()
            .chain(self.m2.values())
            .flat_map(|v| v.iter())
    }
}

/// Solves the degree-(1,1) and (1,2) multiplication lifts on a resolution
/// of a cyclic module (first differential a single row). The complex must
/// compose to zero and be exact for the lifts to exist; infeasibility is
/// reported, never approximated.
pub fn lift_multiplication<F: Field>(
    complex: &ChainComplex<F>,
    strategy: ReducerStrategy,
) -> Result<MultiplicationLift<F>> {
    if complex.differential(1).nrows() != 1 {
        return Err(Error::invalid(
            "multiplication lifts need a resolution of a cyclic module",
        ));
    }
    if !complex.composes_to_zero() {
        return Err(Error::NotAComplex("differentials do not compose".into()));
    }
    if complex.ring().field().characteristic() == 2 {
        return Err(Error::CharacteristicTooSmall(2, 2));
    }
    let ring = complex.ring().clone();
    let d1 = complex.differential(1);
    let f1 = d1.ncols();
    let gens: Vec<Poly<F>> = (0..f1).map(|i| d1.at(0, i).clone()).collect();

    let (f2, cm2) = if complex.len() >= 2 {
        let d2 = complex.differential(2);
        (
            d2.ncols(),
            Some(ColumnModule::new(
                &ring,
                &d2.columns_as_modvecs(),
                d2.nrows(),
            )),
        )
    } else {
        (0, None)
    };
    let (f3, cm3) = if complex.len() >= 3 {
        let d3 = complex.differential(3);
        (
            d3.ncols(),
            Some(ColumnModule::new(
                &ring,
                &d3.columns_as_modvecs(),
                d3.nrows(),
            )),
        )
    } else {
        (0, None)
    };

    // e_i · e_j for i < j
    let mut m1: BTreeMap<(usize, usize), Vec<Poly<F>>> = BTreeMap::new();
    for i in 0..f1 {
        for j in (i + 1)..f1 {
            let mut rhs = vec![Poly::zero(&ring); f1];
            rhs[j] = gens[i].clone();
            rhs[i] = gens[j].neg();
            let rhs_vec = ModVec::from_polys(&ring, &rhs);
            let value = match &cm2 {
                Some(cm) => cm.contains(&rhs_vec, strategy).ok_or_else(|| {
                    Error::LiftFailed(format!("Koszul relation ({i},{j}) not in im(d2)"))
                })?,
                None => {
                    if rhs_vec.is_zero() {
                        Vec::new()
                    } else {
                        return Err(Error::LiftFailed(format!(
                            "Koszul relation ({i},{j}) nonzero but the complex stops at F1"
                        )));
                    }
                }
            };
            m1.insert((i, j), value);
        }
    }

    // e_i · f_k
    let signed_m1 = |i: usize, l: usize| -> Option<(bool, &Vec<Poly<F>>)> {
        use std::cmp::Ordering::*;
        match i.cmp(&l) {
            Less => m1.get(&(i, l)).map(|v| (false, v)),
            Greater => m1.get(&(l, i)).map(|v| (true, v)),
            Equal => None,
        }
    };
    let mut m2: BTreeMap<(usize, usize), Vec<Poly<F>>> = BTreeMap::new();
    if f2 > 0 {
        let d2 = complex.differential(2);
        for i in 0..f1 {
            for k in 0..f2 {
                let mut rhs = vec![Poly::zero(&ring); f2];
                rhs[k] = gens[i].clone();
                for l in 0..f1 {
                    let coeff = d2.at(l, k);
                    if coeff.is_zero() {
                        continue;
                    }
                    if let Some((negated, v)) = signed_m1(i, l) {
                        for (t, entry) in v.iter().enumerate() {
                            let prod = coeff.mul(entry);
                            rhs[t] = if negated {
                                rhs[t].add(&prod)
                            } else {
                                rhs[t].sub(&prod)
                            };
                        }
                    }
                }
                let rhs_vec = ModVec::from_polys(&ring, &rhs);
                let value = match &cm3 {
                    Some(cm) => cm.contains(&rhs_vec, strategy).ok_or_else(|| {
                        Error::LiftFailed(format!("product e{i}·f{k} not in im(d3)"))
                    })?,
                    None => {
                        if rhs_vec.is_zero() {
                            vec![Poly::zero(&ring); f3]
                        } else {
                            return Err(Error::LiftFailed(format!(
                                "product e{i}·f{k} nonzero but the complex stops at F2"
                            )));
                        }
                    }
                };
                m2.insert((i, k), value);
            }
        }
    }

    Ok(MultiplicationLift { m1, m2 })
}

/// True iff every multiplication structure constant lies in the irrelevant
/// maximal ideal, i.e. all lift coefficients have zero constant term.
/// Requires a minimal complex, where this is independent of the lift.
pub fn tor_trivial<F: Field>(complex: &ChainComplex<F>) -> Result<bool> {
    if !complex.is_minimal() {
        return Err(Error::NotMinimal(
            "tor triviality is only defined for minimal resolutions".into(),
        ));
    }
    let lift = lift_multiplication(complex, ReducerStrategy::FirstMatch)?;
    let field = complex.ring().field();
    Ok(lift
        .coefficients()
        .all(|p| field.is_zero(&p.constant_coeff())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_poly;
    use crate::ring::{Ring, RingCtx};

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
    fn koszul_two_variables_has_unit_structure_constant() {
        let r = ring(&["x", "y"]);
        let k = ChainComplex::koszul(&r, &[p(&r, "x"), p(&r, "y")]).unwrap();
        let lift = lift_multiplication(&k, ReducerStrategy::FirstMatch).unwrap();
        let v = &lift.m1[&(0, 1)];
        assert_eq!(v.len(), 1);
        assert!(v[0].is_unit_constant());
    }

    #[test]
    fn koszul_three_variables_is_not_tor_trivial() {
        let r = ring(&["x", "y", "z"]);
        let k = ChainComplex::koszul(&r, &[p(&r, "x"), p(&r, "y"), p(&r, "z")]).unwrap();
        assert!(!tor_trivial(&k).unwrap());
    }

    #[test]
    fn hypersurface_lifts_trivially() {
        let r = ring(&["x", "y"]);
        let i = crate::groebner::Ideal::from_strs(&r, &["x^2"]).unwrap();
        let (c, _) = crate::complexes::free_resolution(&i, true).unwrap();
        let lift = lift_multiplication(&c, ReducerStrategy::FirstMatch).unwrap();
        assert!(lift.m1.is_empty());
        assert!(lift.m2.is_empty());
        assert!(tor_trivial(&c).unwrap());
    }

    #[test]
    fn lifts_agree_mod_m_on_minimal_complexes() {
        let r = ring(&["x", "y", "z"]);
        let k = ChainComplex::koszul(&r, &[p(&r, "x"), p(&r, "y"), p(&r, "z")]).unwrap();
        let a = lift_multiplication(&k, ReducerStrategy::FirstMatch).unwrap();
        let b = lift_multiplication(&k, ReducerStrategy::LastMatch).unwrap();
        for (key, va) in &a.m1 {
            let vb = &b.m1[key];
            for (pa, pb) in va.iter().zip(vb) {
                assert_eq!(pa.constant_coeff(), pb.constant_coeff());
            }
        }
        for (key, va) in &a.m2 {
            let vb = &b.m2[key];
            for (pa, pb) in va.iter().zip(vb) {
                assert_eq!(pa.constant_coeff(), pb.constant_coeff());
            }
        }
    }
}
