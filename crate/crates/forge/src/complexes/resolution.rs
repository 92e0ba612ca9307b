//! Syzygies, iterated free resolutions, Gaussian minimization and Betti
//! tables.

use std::fmt;

use crate::complexes::{ChainComplex, PolyMatrix};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::modgb::ColumnModule;
use crate::ring::{Poly, Ring};
use crate::{Error, Result};

/// Generators of the kernel module `{v : M·v = 0}`, one column per
/// generator. Column shifts are the degrees of the (homogeneous) syzygies
/// when `M` is graded; for ungraded input they are zeros.
pub fn syzygies<F: Field>(m: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
    let ring = m.ring().clone();
    let cols = m.columns_as_modvecs();
    let cm = ColumnModule::new(&ring, &cols, m.nrows());
    let syz = cm.syzygies();
    let mut out_cols: Vec<Vec<Poly<F>>> = Vec::with_capacity(syz.len());
    let mut shifts: Vec<i64> = Vec::with_capacity(syz.len());
    for v in syz {
        let polys = v.to_polys(&ring);
        let mut degree: Option<i64> = None;
        for (j, p) in polys.iter().enumerate() {
            if let Some(d) = p.total_degree() {
                let cand = d as i64 + m.col_shifts()[j];
                match degree {
                    None => degree = Some(cand),
                    Some(prev) => {
                        if prev != cand {
                            degree = Some(prev.max(cand));
                        }
                    }
                }
            }
        }
        shifts.push(degree.unwrap_or(0));
        out_cols.push(polys);
    }
    PolyMatrix::from_columns(
        &ring,
        m.ncols(),
        &out_cols,
        m.col_shifts().to_vec(),
        shifts,
    )
}

/// Graded Betti data: per homological degree the rank and the multiset of
/// shifts of the free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub columns: Vec<BettiColumn>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiColumn {
    pub rank: usize,
    pub shifts: Vec<i64>,
}

impl BettiTable {
    pub fn of(complex: &ChainComplex<impl Field>) -> Self {
        let mut columns = Vec::new();
        for i in 0..=complex.len() {
            let mut shifts = complex.module_shifts(i).to_vec();
            shifts.sort();
            columns.push(BettiColumn {
                rank: shifts.len(),
                shifts,
            });
        }
        while columns.last().map(|c| c.rank == 0).unwrap_or(false) {
            columns.pop();
        }
        BettiTable { columns }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.rank).collect()
    }

    /// Compares against `(rank, shifts)` expectations.
    pub fn matches(&self, expected: &[(usize, &[i64])]) -> bool {
        self.columns.len() == expected.len()
            && self
                .columns
                .iter()
                .zip(expected)
                .all(|(c, (rank, shifts))| {
                    let mut want = shifts.to_vec();
                    want.sort();
                    c.rank == *rank && c.shifts == want
                })
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay-style staircase: row d, column i holds the number of
    /// generators of F_i in shift d + i.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.shifts.iter().map(move |s| s - i as i64))
            .min()
            .unwrap_or(0);
        let hi = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.shifts.iter().map(move |s| s - i as i64))
            .max()
            .unwrap_or(0);
        write!(f, "      ")?;
        for i in 0..self.columns.len() {
            write!(f, "{i:>5}")?;
        }
        writeln!(f)?;
        write!(f, "total:")?;
        for c in &self.columns {
            write!(f, "{:>5}", c.rank)?;
        }
        writeln!(f)?;
        for d in lo..=hi {
            write!(f, "{d:>5}:")?;
            for (i, c) in self.columns.iter().enumerate() {
                let count = c
                    .shifts
                    .iter()
                    .filter(|&&s| s - i as i64 == d)
                    .count();
                if count == 0 {
                    write!(f, "{:>5}", ".")?;
                } else {
                    write!(f, "{count:>5}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Splits off unit (degree-zero invertible) entries by Gaussian
/// cancellation until every differential entry has positive degree.
/// Homotopy equivalence is preserved; scan order is row-major, so the
/// output is deterministic.
pub fn minimize_complex<F: Field>(complex: &ChainComplex<F>) -> Result<ChainComplex<F>> {
    let ring = complex.ring().clone();
    let field = ring.field().clone();
    let mut mats: Vec<Vec<Vec<Poly<F>>>> = complex.maps().iter().map(|m| m.rows()).collect();
    let mut shifts: Vec<Vec<i64>> = (0..=complex.len())
        .map(|i| complex.module_shifts(i).to_vec())
        .collect();

    loop {
        let mut found: Option<(usize, usize, usize)> = None;
        'scan: for (k, mat) in mats.iter().enumerate() {
            for (a, row) in mat.iter().enumerate() {
                for (b, e) in row.iter().enumerate() {
                    if e.is_unit_constant() {
                        found = Some((k, a, b));
                        break 'scan;
                    }
                }
            }
        }
        let Some((k, a, b)) = found else { break };
        let e = mats[k][a][b].clone();
        let e_inv = field.inv(e.leading_coeff().unwrap()).unwrap();
        let e_inv = Poly::constant(&ring, e_inv);

        // corrected map: d'[r][c] = d[r][c] - d[r][b]·e⁻¹·d[a][c]
        let old = std::mem::take(&mut mats[k]);
        let mut new_rows = Vec::with_capacity(old.len().saturating_sub(1));
        for (r, row) in old.iter().enumerate() {
            if r == a {
                continue;
            }
            let mut new_row = Vec::with_capacity(row.len().saturating_sub(1));
            for (c, entry) in row.iter().enumerate() {
                if c == b {
                    continue;
                }
                let corr = row[b].mul(&e_inv).mul(&old[a][c]);
                new_row.push(entry.sub(&corr));
            }
            new_rows.push(new_row);
        }
        mats[k] = new_rows;
        // neighbours: drop column a of d_k, row b of d_{k+2}
        if k >= 1 {
            for row in mats[k - 1].iter_mut() {
                row.remove(a);
            }
        }
        if k + 1 < mats.len() {
            mats[k + 1].remove(b);
        }
        shifts[k].remove(a);
        shifts[k + 1].remove(b);
    }

    // drop trailing zero modules
    while mats
        .last()
        .map(|m| m.first().map(|r| r.is_empty()).unwrap_or(true) && shifts.last().unwrap().is_empty())
        .unwrap_or(false)
        && mats.len() > 1
    {
        mats.pop();
        shifts.pop();
    }

    let mut maps = Vec::with_capacity(mats.len());
    for (k, rows) in mats.into_iter().enumerate() {
        maps.push(PolyMatrix::new(
            &ring,
            rows,
            shifts[k].clone(),
            shifts[k + 1].clone(),
        )?);
    }
    ChainComplex::new(maps)
}

/// Free resolution of `R/I` by iterated syzygies of the generator row.
/// With `minimize` the result is the minimal resolution (all differential
/// entries of positive degree) and its Betti table.
pub fn free_resolution<F: Field>(
    ideal: &Ideal<F>,
    minimize: bool,
) -> Result<(ChainComplex<F>, BettiTable)> {
    let ring: Ring<F> = ideal.ring().clone();
    let gens: Vec<Poly<F>> = ideal.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &gens {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("generator {g}")));
        }
    }
    if gens.iter().any(|g| g.total_degree() == Some(0)) {
        return Err(Error::ImproperIdeal);
    }
    let col_shifts: Vec<i64> = gens
        .iter()
        .map(|g| g.total_degree().unwrap() as i64)
        .collect();
    let d1 = PolyMatrix::new(&ring, vec![gens], vec![0], col_shifts)?;
    let mut maps = vec![d1];
    let mut terminated = false;
    for _ in 0..=ring.nvars() + 1 {
        let syz = syzygies(maps.last().unwrap())?;
        if syz.ncols() == 0 {
            terminated = true;
            break;
        }
        maps.push(syz);
    }
    if !terminated {
        return Err(Error::invalid(
            "resolution did not terminate within the variable bound",
        ));
    }
    let complex = ChainComplex::new(maps)?;
    let complex = if minimize {
        minimize_complex(&complex)?
    } else {
        complex
    };
    let betti = BettiTable::of(&complex);
    Ok((complex, betti))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
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
    fn syzygies_annihilate() {
        let r = ring(&["x", "y"]);
        let m = PolyMatrix::new(
            &r,
            vec![vec![p(&r, "x"), p(&r, "y")]],
            vec![0],
            vec![1, 1],
        )
        .unwrap();
        let s = syzygies(&m).unwrap();
        assert_eq!(s.ncols(), 1);
        assert!(m.mul(&s).unwrap().is_zero());
        // the kernel of [x] is zero
        let single = PolyMatrix::new(&r, vec![vec![p(&r, "x")]], vec![0], vec![1]).unwrap();
        assert_eq!(syzygies(&single).unwrap().ncols(), 0);
    }

    #[test]
    fn koszul_resolution_of_three_variables() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::from_strs(&r, &["x", "y", "z"]).unwrap();
        let (c, betti) = free_resolution(&i, true).unwrap();
        assert!(c.composes_to_zero());
        assert_eq!(betti.ranks(), vec![1, 3, 3, 1]);
        assert!(betti.matches(&[
            (1, &[0]),
            (3, &[1, 1, 1]),
            (3, &[2, 2, 2]),
            (1, &[3]),
        ]));
    }

    #[test]
    fn betti_ranks_ignore_generator_permutation() {
        let r = ring(&["x", "y", "z"]);
        let i1 = Ideal::from_strs(&r, &["x*y", "y*z", "x^2 - y^2"]).unwrap();
        let i2 = Ideal::from_strs(&r, &["x^2 - y^2", "x*y", "y*z"]).unwrap();
        let b1 = free_resolution(&i1, true).unwrap().1;
        let b2 = free_resolution(&i2, true).unwrap().1;
        assert_eq!(b1, b2);
    }

    #[test]
    fn minimization_removes_redundant_generators() {
        let r = ring(&["x", "y"]);
        // y is redundant: (x, x + ... ) with x listed twice
        let i = Ideal::from_strs(&r, &["x", "x", "y"]).unwrap();
        let (c, betti) = free_resolution(&i, true).unwrap();
        assert!(c.is_minimal());
        assert_eq!(betti.ranks(), vec![1, 2, 1]);
    }
}
