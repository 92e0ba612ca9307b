//! Graded matrices over a polynomial ring and chain complexes of free
//! modules.
//!
//! Shifts are stored as generator degrees: the free module is
//! F = ⊕_j A(-col_shifts[j]), so a nonzero graded entry (i,j) is
//! homogeneous of total degree `col_shifts[j] - row_shifts[i]`.

use std::collections::HashMap;

use crate::field::Field;
use crate::groebner::Ideal;
use crate::modgb::ModVec;
use crate::ring::{check_same_ring, Poly, Ring};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct PolyMatrix<F: Field> {
    ring: Ring<F>,
    nrows: usize,
    ncols: usize,
    entries: Vec<Poly<F>>,
    row_shifts: Vec<i64>,
    col_shifts: Vec<i64>,
}

impl<F: Field> PartialEq for PolyMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows && self.ncols == other.ncols && self.entries == other.entries
    }
}

impl<F: Field> PolyMatrix<F> {
    /// Graded matrix; checks every nonzero entry is homogeneous of the
    /// degree dictated by the shifts.
    pub fn new(
        ring: &Ring<F>,
        rows: Vec<Vec<Poly<F>>>,
        row_shifts: Vec<i64>,
        col_shifts: Vec<i64>,
    ) -> Result<Self> {
        let m = Self::raw(ring, rows, row_shifts, col_shifts)?;
        m.check_graded()?;
        Ok(m)
    }

    /// Matrix without grading validation (zero shifts by default).
    pub fn ungraded(ring: &Ring<F>, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        Self::raw(ring, rows, vec![0; nrows], vec![0; ncols])
    }

    fn raw(
        ring: &Ring<F>,
        rows: Vec<Vec<Poly<F>>>,
        row_shifts: Vec<i64>,
        col_shifts: Vec<i64>,
    ) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if row_shifts.len() != nrows || col_shifts.len() != ncols {
            return Err(Error::ShapeMismatch("shift vector lengths".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged matrix rows".into()));
            }
            for e in row {
                check_same_ring(e.ring(), ring, "matrix entry in a different ring")?;
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries,
            row_shifts,
            col_shifts,
        })
    }

    fn check_graded(&self) -> Result<()> {
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let e = self.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let want = self.col_shifts[j] - self.row_shifts[i];
                if !e.is_homogeneous() || e.total_degree() != Some(want.max(0) as u64) || want < 0
                {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({i},{j}) is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.ncols + j]
    }

    pub fn row_shifts(&self) -> &[i64] {
        &self.row_shifts
    }

    pub fn col_shifts(&self) -> &[i64] {
        &self.col_shifts
    }

    pub fn rows(&self) -> Vec<Vec<Poly<F>>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.at(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> PolyMatrix<F> {
        let rows = (0..self.ncols)
            .map(|j| (0..self.nrows).map(|i| self.at(i, j).clone()).collect())
            .collect();
        PolyMatrix::raw(
            &self.ring,
            rows,
            self.col_shifts.iter().map(|s| -s).collect(),
            self.row_shifts.iter().map(|s| -s).collect(),
        )
        .unwrap()
    }

    pub fn mul(&self, other: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(other.ncols);
            for j in 0..other.ncols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.ncols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                row.push(acc);
            }
            rows.push(row);
        }
        PolyMatrix::raw(
            &self.ring,
            rows,
            self.row_shifts.clone(),
            other.col_shifts.clone(),
        )
    }

    /// Entry-wise substitution into a target ring; shifts carried over.
    pub fn specialize(
        &self,
        images: &HashMap<usize, Poly<F>>,
        target: &Ring<F>,
    ) -> Result<PolyMatrix<F>> {
        let rows = (0..self.nrows)
            .map(|i| {
                (0..self.ncols)
                    .map(|j| self.at(i, j).substitute(images, target))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::raw(
            target,
            rows,
            self.row_shifts.clone(),
            self.col_shifts.clone(),
        )
    }

    pub fn columns_as_modvecs(&self) -> Vec<ModVec<F>> {
        (0..self.ncols)
            .map(|j| {
                let col: Vec<Poly<F>> =
                    (0..self.nrows).map(|i| self.at(i, j).clone()).collect();
                ModVec::from_polys(&self.ring, &col)
            })
            .collect()
    }

    pub fn from_columns(
        ring: &Ring<F>,
        nrows: usize,
        cols: &[Vec<Poly<F>>],
        row_shifts: Vec<i64>,
        col_shifts: Vec<i64>,
    ) -> Result<PolyMatrix<F>> {
        let rows = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        PolyMatrix::raw(ring, rows, row_shifts, col_shifts)
    }

    /// Determinant of the square submatrix on `rows` × `cols`, memoized
    /// across overlapping minors.
    fn minor_det(
        &self,
        rows: &[usize],
        cols: &[usize],
        memo: &mut HashMap<(u64, u64), Poly<F>>,
    ) -> Poly<F> {
        debug_assert_eq!(rows.len(), cols.len());
        if rows.is_empty() {
            return Poly::one(&self.ring);
        }
        let rmask = rows.iter().fold(0u64, |m, &r| m | 1 << r);
        let cmask = cols.iter().fold(0u64, |m, &c| m | 1 << c);
        if let Some(d) = memo.get(&(rmask, cmask)) {
            return d.clone();
        }
        let mut det = Poly::zero(&self.ring);
        let r0 = rows[0];
        let rest_rows = &rows[1..];
        for (k, &c) in cols.iter().enumerate() {
            let e = self.at(r0, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &cc)| cc)
                .collect();
            let sub = self.minor_det(rest_rows, &sub_cols, memo);
            let term = e.mul(&sub);
            det = if k % 2 == 0 {
                det.add(&term)
            } else {
                det.sub(&term)
            };
        }
        memo.insert((rmask, cmask), det.clone());
        det
    }

    /// All r×r minors, row subsets outer, column subsets inner, both in
    /// lexicographic order.
    pub fn minors(&self, r: usize) -> Result<Vec<Poly<F>>> {
        if r == 0 || r > self.nrows.min(self.ncols) {
            return Err(Error::invalid("minor size out of range"));
        }
        if self.nrows > 64 || self.ncols > 64 {
            return Err(Error::invalid("matrix too large for minor enumeration"));
        }
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        for rows in subsets(self.nrows, r) {
            for cols in subsets(self.ncols, r) {
                out.push(self.minor_det(&rows, &cols, &mut memo));
            }
        }
        Ok(out)
    }

    /// Ideal generated by the r×r minors.
    pub fn minors_ideal(&self, r: usize) -> Result<Ideal<F>> {
        let minors = self
            .minors(r)?
            .into_iter()
            .filter(|m| !m.is_zero())
            .collect();
        Ideal::new(&self.ring, minors)
    }

    /// Largest r with a nonzero r×r minor (0 for the zero matrix).
    pub fn rank(&self) -> usize {
        let max = self.nrows.min(self.ncols);
        let mut memo = HashMap::new();
        for r in (1..=max).rev() {
            for rows in subsets(self.nrows, r) {
                for cols in subsets(self.ncols, r) {
                    if !self.minor_det(&rows, &cols, &mut memo).is_zero() {
                        return r;
                    }
                }
            }
        }
        0
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// A chain of graded free modules F₀ ← F₁ ← … with maps[i] = d_{i+1}.
/// Adjacent shift vectors must agree.
#[derive(Debug, Clone)]
pub struct ChainComplex<F: Field> {
    maps: Vec<PolyMatrix<F>>,
}

impl<F: Field> ChainComplex<F> {
    pub fn new(maps: Vec<PolyMatrix<F>>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::invalid("a complex needs at least one map"));
        }
        for w in maps.windows(2) {
            if w[0].ncols() != w[1].nrows() {
                return Err(Error::ShapeMismatch(
                    "consecutive maps have incompatible shapes".into(),
                ));
            }
            if w[0].col_shifts() != w[1].row_shifts() {
                return Err(Error::ShapeMismatch(
                    "consecutive maps disagree on module shifts".into(),
                ));
            }
            check_same_ring(w[0].ring(), w[1].ring(), "maps over different rings")?;
        }
        Ok(ChainComplex { maps })
    }

    pub fn ring(&self) -> &Ring<F> {
        self.maps[0].ring()
    }

    pub fn maps(&self) -> &[PolyMatrix<F>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn differential(&self, i: usize) -> &PolyMatrix<F> {
        &self.maps[i - 1]
    }

    /// Ranks of F₀..F_n.
    pub fn module_ranks(&self) -> Vec<usize> {
        let mut out = vec![self.maps[0].nrows()];
        for m in &self.maps {
            out.push(m.ncols());
        }
        out
    }

    /// Shift vector of F_i.
    pub fn module_shifts(&self, i: usize) -> &[i64] {
        if i == 0 {
            self.maps[0].row_shifts()
        } else {
            self.maps[i - 1].col_shifts()
        }
    }

    /// d_i · d_{i+1} = 0 for all i.
    pub fn composes_to_zero(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// Entry-wise substitution of every differential.
    pub fn specialize(
        &self,
        images: &HashMap<usize, Poly<F>>,
        target: &Ring<F>,
    ) -> Result<ChainComplex<F>> {
        let maps = self
            .maps
            .iter()
            .map(|m| m.specialize(images, target))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(maps)
    }

    /// Every differential entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| {
            (0..m.nrows()).all(|i| {
                (0..m.ncols()).all(|j| {
                    let e = m.at(i, j);
                    e.is_zero() || e.total_degree().map(|d| d > 0).unwrap_or(true)
                })
            })
        })
    }

    /// Koszul complex on the given elements (assumed a regular sequence for
    /// exactness, but any elements give a complex). Bases of ⋀^k are the
    /// k-subsets in lexicographic order.
    pub fn koszul(ring: &Ring<F>, elems: &[Poly<F>]) -> Result<ChainComplex<F>> {
        let n = elems.len();
        if n == 0 {
            return Err(Error::invalid("koszul complex needs elements"));
        }
        let degs: Vec<i64> = elems
            .iter()
            .map(|e| {
                e.total_degree()
                    .map(|d| d as i64)
                    .ok_or_else(|| Error::invalid("koszul on a zero element"))
            })
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        let mut prev_shifts = vec![0i64];
        for k in 1..=n {
            let rows_idx = subsets(n, k - 1);
            let cols_idx = subsets(n, k);
            let col_shifts: Vec<i64> = cols_idx
                .iter()
                .map(|s| s.iter().map(|&i| degs[i]).sum())
                .collect();
            let mut rows = vec![vec![Poly::zero(ring); cols_idx.len()]; rows_idx.len()];
            let pos_of: HashMap<Vec<usize>, usize> = rows_idx
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect();
            for (j, s) in cols_idx.iter().enumerate() {
                for (t, &e) in s.iter().enumerate() {
                    let mut sub = s.clone();
                    sub.remove(t);
                    let i = pos_of[&sub];
                    let val = if t % 2 == 0 {
                        elems[e].clone()
                    } else {
                        elems[e].neg()
                    };
                    rows[i][j] = val;
                }
            }
            maps.push(PolyMatrix::new(
                ring,
                rows,
                prev_shifts.clone(),
                col_shifts.clone(),
            )?);
            prev_shifts = col_shifts;
        }
        ChainComplex::new(maps)
    }
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
    fn koszul_composes_to_zero() {
        let r = ring(&["x", "y", "z"]);
        let k = ChainComplex::koszul(&r, &[p(&r, "x"), p(&r, "y"), p(&r, "z")]).unwrap();
        assert!(k.composes_to_zero());
        assert_eq!(k.module_ranks(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn ranks_of_simple_matrices() {
        let r = ring(&["x", "y"]);
        let id2 = PolyMatrix::ungraded(
            &r,
            vec![
                vec![Poly::one(&r), Poly::zero(&r)],
                vec![Poly::zero(&r), Poly::one(&r)],
            ],
        )
        .unwrap();
        assert_eq!(id2.rank(), 2);
        let zero = PolyMatrix::ungraded(&r, vec![vec![Poly::zero(&r); 2]; 2]).unwrap();
        assert_eq!(zero.rank(), 0);
    }

    #[test]
    fn minors_examples() {
        let r = ring(&["x", "y"]);
        let m = PolyMatrix::ungraded(&r, vec![vec![p(&r, "x"), p(&r, "y")]]).unwrap();
        let i1 = m.minors_ideal(1).unwrap();
        assert_eq!(i1.gens().len(), 2);
        let id2 = PolyMatrix::ungraded(
            &r,
            vec![
                vec![Poly::one(&r), Poly::zero(&r)],
                vec![Poly::zero(&r), Poly::one(&r)],
            ],
        )
        .unwrap();
        let i2 = id2.minors_ideal(2).unwrap();
        assert!(i2.is_unit_ideal());
        assert!(m.minors(3).is_err());
    }

    #[test]
    fn graded_validation() {
        let r = ring(&["x", "y"]);
        // [x y] with shifts 0 | 1,1 is graded
        assert!(PolyMatrix::new(
            &r,
            vec![vec![p(&r, "x"), p(&r, "y")]],
            vec![0],
            vec![1, 1]
        )
        .is_ok());
        // wrong shift
        assert!(PolyMatrix::new(
            &r,
            vec![vec![p(&r, "x"), p(&r, "y")]],
            vec![0],
            vec![2, 1]
        )
        .is_err());
        // inhomogeneous entry
        assert!(PolyMatrix::new(
            &r,
            vec![vec![p(&r, "x + 1")]],
            vec![0],
            vec![1]
        )
        .is_err());
    }
}
