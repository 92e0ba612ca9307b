//! Exact transcription of the five-generator family: the bigraded rings,
//! the generators of J and its deformation J(t), the differentials of the
//! length-3 resolutions, and the auxiliary matrices used by the
//! pencils-of-quartics application.
//!
//! Sign conventions (validated by the composite-zero and kernel checks):
//! x_{i,j} with i > j denotes -x_{j,i}; ẑ_i is the z-variable on
//! {1,2,3,4}∖{i} in increasing order; u_j = Σ_{i≠j} (-1)^i x_{i,j} ẑ_i and
//! v_j likewise in y. The coefficient of z234 in the u_{2,3,4} generator is
//! -Δ(12,34)+Δ(13,24)-Δ(14,23): this is the unique sign pattern for which
//! the row of generators spans the left kernel of d₂. Likewise the
//! deformed first differential is the unique (up to scalar) left kernel of
//! d₂(t); its third cubic carries +t·z123 while the others carry -t·z.

use crate::complexes::{ChainComplex, PolyMatrix};
use crate::field::Field;
use crate::fmatrix::FMatrix;
use crate::groebner::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{Poly, Ring, RingCtx};
use crate::{Error, Result};

/// Column labels of the 2×6 matrix of x- and y-coordinates.
pub const PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
pub const TRIPLES: [(u8, u8, u8); 4] = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)];

/// The two corpus rings: A in sixteen variables x_{i,j}, y_{i,j}, z_{i,j,k}
/// and B = A[t], with the bigrading x,y ↦ (1,0), z ↦ (0,1), t ↦ (2,0).
#[derive(Debug, Clone)]
pub struct Corpus<F: Field> {
    pub ring_a: Ring<F>,
    pub ring_b: Ring<F>,
}

pub fn var_names(with_t: bool) -> Vec<String> {
    let mut names = Vec::new();
    for (i, j) in PAIRS {
        names.push(format!("x{i}{j}"));
    }
    for (i, j) in PAIRS {
        names.push(format!("y{i}{j}"));
    }
    for (i, j, k) in TRIPLES {
        names.push(format!("z{i}{j}{k}"));
    }
    if with_t {
        names.push("t".to_string());
    }
    names
}

fn gradings(with_t: bool) -> Vec<Vec<u32>> {
    let n = if with_t { 17 } else { 16 };
    let mut g1 = vec![0u32; n];
    let mut g2 = vec![0u32; n];
    for i in 0..12 {
        g1[i] = 1;
    }
    for i in 12..16 {
        g2[i] = 1;
    }
    if with_t {
        g1[16] = 2;
    }
    vec![g1, g2]
}

impl<F: Field> Corpus<F> {
    /// Requires characteristic ≠ 2 (enforced for prime fields at
    /// construction of the field itself; re-checked here).
    pub fn new(field: F) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::CharacteristicTooSmall(2, 2));
        }
        let ring_a = RingCtx::new(
            field.clone(),
            var_names(false),
            Some(gradings(false)),
            MonomialOrder::GrevLex,
        )?;
        let ring_b = RingCtx::new(
            field,
            var_names(true),
            Some(gradings(true)),
            MonomialOrder::GrevLex,
        )?;
        Ok(Corpus { ring_a, ring_b })
    }

    pub(crate) fn v(&self, ring: &Ring<F>, name: &str) -> Poly<F> {
        Poly::var_named(ring, name).expect("corpus variable")
    }

    /// x_{i,j} with the skew convention for i > j.
    pub fn x(&self, ring: &Ring<F>, i: u8, j: u8) -> Poly<F> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Poly::zero(ring),
            std::cmp::Ordering::Less => self.v(ring, &format!("x{i}{j}")),
            std::cmp::Ordering::Greater => self.v(ring, &format!("x{j}{i}")).neg(),
        }
    }

    pub fn y(&self, ring: &Ring<F>, i: u8, j: u8) -> Poly<F> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Poly::zero(ring),
            std::cmp::Ordering::Less => self.v(ring, &format!("y{i}{j}")),
            std::cmp::Ordering::Greater => self.v(ring, &format!("y{j}{i}")).neg(),
        }
    }

    pub fn z(&self, ring: &Ring<F>, t: (u8, u8, u8)) -> Poly<F> {
        self.v(ring, &format!("z{}{}{}", t.0, t.1, t.2))
    }

    /// ẑ_i: the z-variable on the complement of {i}.
    pub fn z_hat(&self, ring: &Ring<F>, i: u8) -> Poly<F> {
        let rest: Vec<u8> = (1..=4).filter(|&k| k != i).collect();
        self.z(ring, (rest[0], rest[1], rest[2]))
    }

    /// Δ(c1, c2): the 2×2 minor of the x/y matrix on columns c1 and c2.
    pub fn delta(&self, ring: &Ring<F>, c1: (u8, u8), c2: (u8, u8)) -> Result<Poly<F>> {
        for c in [c1, c2] {
            if !PAIRS.contains(&c) {
                return Err(Error::Invalid(format!("invalid column label {c:?}")));
            }
        }
        let x1 = self.v(ring, &format!("x{}{}", c1.0, c1.1));
        let y2 = self.v(ring, &format!("y{}{}", c2.0, c2.1));
        let x2 = self.v(ring, &format!("x{}{}", c2.0, c2.1));
        let y1 = self.v(ring, &format!("y{}{}", c1.0, c1.1));
        Ok(x1.mul(&y2).sub(&x2.mul(&y1)))
    }

    pub(crate) fn d(&self, ring: &Ring<F>, c1: (u8, u8), c2: (u8, u8)) -> Poly<F> {
        self.delta(ring, c1, c2).unwrap()
    }

    pub(crate) fn scaled(&self, p: Poly<F>, n: i64) -> Poly<F> {
        let c = p.ring().field().of_i64(n);
        p.scale(&c)
    }

    /// The four cubic generators of bidegree (2,1).
    pub fn u_cubic(&self, ring: &Ring<F>, triple: (u8, u8, u8)) -> Poly<F> {
        let d1 = self.d(ring, (1, 2), (3, 4));
        let d2 = self.d(ring, (1, 3), (2, 4));
        let d3 = self.d(ring, (1, 4), (2, 3));
        match triple {
            (1, 2, 3) => self
                .scaled(self.z(ring, (2, 3, 4)).mul(&self.d(ring, (1, 2), (1, 3))), -2)
                .add(&self.scaled(self.z(ring, (1, 3, 4)).mul(&self.d(ring, (1, 2), (2, 3))), 2))
                .add(&self.scaled(self.z(ring, (1, 2, 4)).mul(&self.d(ring, (1, 3), (2, 3))), -2))
                .add(&self.z(ring, (1, 2, 3)).mul(&d2.sub(&d1).add(&d3))),
            (1, 2, 4) => self
                .scaled(self.z(ring, (2, 3, 4)).mul(&self.d(ring, (1, 2), (1, 4))), 2)
                .add(&self.scaled(self.z(ring, (1, 3, 4)).mul(&self.d(ring, (1, 2), (2, 4))), -2))
                .add(&self.z(ring, (1, 2, 4)).mul(&d1.add(&d2).add(&d3)))
                .add(&self.scaled(self.z(ring, (1, 2, 3)).mul(&self.d(ring, (1, 4), (2, 4))), -2)),
            (1, 3, 4) => self
                .scaled(self.z(ring, (2, 3, 4)).mul(&self.d(ring, (1, 3), (1, 4))), 2)
                .add(&self.z(ring, (1, 3, 4)).mul(&d3.sub(&d1).sub(&d2)))
                .add(&self.scaled(self.z(ring, (1, 2, 4)).mul(&self.d(ring, (1, 3), (3, 4))), 2))
                .add(&self.scaled(self.z(ring, (1, 2, 3)).mul(&self.d(ring, (1, 4), (3, 4))), -2)),
            // the z234 coefficient here is -Δ(12,34)+Δ(13,24)-Δ(14,23);
            // it is forced by d1·d2 = 0 (left kernel of d2)
            (2, 3, 4) => self
                .z(ring, (2, 3, 4))
                .mul(&d2.sub(&d1).sub(&d3))
                .add(&self.scaled(self.z(ring, (1, 3, 4)).mul(&self.d(ring, (2, 3), (2, 4))), -2))
                .add(&self.scaled(self.z(ring, (1, 2, 4)).mul(&self.d(ring, (2, 3), (3, 4))), 2))
                .add(&self.scaled(self.z(ring, (1, 2, 3)).mul(&self.d(ring, (2, 4), (3, 4))), -2)),
            _ => panic!("invalid triple {triple:?}"),
        }
    }

    /// Pfaffian coefficients of the pencil: u = b² - 4ac is the quartic
    /// generator of bidegree (4,0).
    pub fn pfaffian_a(&self, ring: &Ring<F>) -> Poly<F> {
        self.v(ring, "x12")
            .mul(&self.v(ring, "x34"))
            .sub(&self.v(ring, "x13").mul(&self.v(ring, "x24")))
            .add(&self.v(ring, "x14").mul(&self.v(ring, "x23")))
    }

    pub fn pfaffian_b(&self, ring: &Ring<F>) -> Poly<F> {
        self.v(ring, "x12")
            .mul(&self.v(ring, "y34"))
            .sub(&self.v(ring, "x13").mul(&self.v(ring, "y24")))
            .add(&self.v(ring, "x14").mul(&self.v(ring, "y23")))
            .add(&self.v(ring, "x34").mul(&self.v(ring, "y12")))
            .sub(&self.v(ring, "x24").mul(&self.v(ring, "y13")))
            .add(&self.v(ring, "x23").mul(&self.v(ring, "y14")))
    }

    pub fn pfaffian_c(&self, ring: &Ring<F>) -> Poly<F> {
        self.v(ring, "y12")
            .mul(&self.v(ring, "y34"))
            .sub(&self.v(ring, "y13").mul(&self.v(ring, "y24")))
            .add(&self.v(ring, "y14").mul(&self.v(ring, "y23")))
    }

    pub fn u_quartic(&self, ring: &Ring<F>) -> Poly<F> {
        let a = self.pfaffian_a(ring);
        let b = self.pfaffian_b(ring);
        let c = self.pfaffian_c(ring);
        b.mul(&b).sub(&self.scaled(a.mul(&c), 4))
    }

    /// u_j = Σ_{i≠j} (-1)^i x_{i,j} ẑ_i.
    pub fn u_lin(&self, ring: &Ring<F>, j: u8) -> Poly<F> {
        let mut acc = Poly::zero(ring);
        for i in 1..=4 {
            if i == j {
                continue;
            }
            let term = self.x(ring, i, j).mul(&self.z_hat(ring, i));
            acc = if i % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    pub fn v_lin(&self, ring: &Ring<F>, j: u8) -> Poly<F> {
        let mut acc = Poly::zero(ring);
        for i in 1..=4 {
            if i == j {
                continue;
            }
            let term = self.y(ring, i, j).mul(&self.z_hat(ring, i));
            acc = if i % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// First differential row [u234, u134, u124, u123, u] with the
    /// deformation terms [-tz234, -tz134, -tz124, +tz123, -t²].
    fn d1_row(&self, ring: &Ring<F>, t: &Poly<F>) -> Vec<Poly<F>> {
        let tz = |tr| t.mul(&self.z(ring, tr));
        vec![
            self.u_cubic(ring, (2, 3, 4)).sub(&tz((2, 3, 4))),
            self.u_cubic(ring, (1, 3, 4)).sub(&tz((1, 3, 4))),
            self.u_cubic(ring, (1, 2, 4)).sub(&tz((1, 2, 4))),
            self.u_cubic(ring, (1, 2, 3)).add(&tz((1, 2, 3))),
            self.u_quartic(ring).sub(&t.mul(t)),
        ]
    }

    fn d2_rows(&self, ring: &Ring<F>, t: &Poly<F>) -> Vec<Vec<Poly<F>>> {
        let d1 = self.d(ring, (1, 2), (3, 4));
        let d2 = self.d(ring, (1, 3), (2, 4));
        let d3 = self.d(ring, (1, 4), (2, 3));
        let u: Vec<Poly<F>> = (1..=4).map(|j| self.u_lin(ring, j)).collect();
        let v: Vec<Poly<F>> = (1..=4).map(|j| self.v_lin(ring, j)).collect();
        let two = |p: Poly<F>| self.scaled(p, 2);
        vec![
            vec![
                v[0].clone(),
                u[0].clone(),
                d2.sub(&d1).sub(&d3).add(t),
                two(self.d(ring, (1, 3), (1, 4))),
                two(self.d(ring, (1, 2), (1, 4))).neg(),
                two(self.d(ring, (1, 2), (1, 3))).neg(),
            ],
            vec![
                v[1].neg(),
                u[1].neg(),
                two(self.d(ring, (2, 3), (2, 4))).neg(),
                d3.sub(&d1).sub(&d2).add(t),
                two(self.d(ring, (1, 2), (2, 4))),
                two(self.d(ring, (1, 2), (2, 3))),
            ],
            vec![
                v[2].clone(),
                u[2].clone(),
                two(self.d(ring, (2, 3), (3, 4))),
                two(self.d(ring, (1, 3), (3, 4))),
                d1.add(&d2).add(&d3).add(t).neg(),
                two(self.d(ring, (1, 3), (2, 3))).neg(),
            ],
            vec![
                v[3].clone(),
                u[3].clone(),
                two(self.d(ring, (2, 4), (3, 4))),
                two(self.d(ring, (1, 4), (3, 4))),
                two(self.d(ring, (1, 4), (2, 4))).neg(),
                d1.sub(&d2).sub(&d3).add(t),
            ],
            vec![
                Poly::zero(ring),
                Poly::zero(ring),
                self.z(ring, (2, 3, 4)).neg(),
                self.z(ring, (1, 3, 4)).neg(),
                self.z(ring, (1, 2, 4)),
                self.z(ring, (1, 2, 3)),
            ],
        ]
    }

    fn d3_rows(&self, ring: &Ring<F>, t: &Poly<F>) -> Vec<Vec<Poly<F>>> {
        let a = self.pfaffian_a(ring);
        let b = self.pfaffian_b(ring);
        let c = self.pfaffian_c(ring);
        let u: Vec<Poly<F>> = (1..=4).map(|j| self.u_lin(ring, j)).collect();
        let v: Vec<Poly<F>> = (1..=4).map(|j| self.v_lin(ring, j)).collect();
        vec![
            vec![b.add(t), self.scaled(a, 2)],
            vec![self.scaled(c, 2).neg(), b.neg().add(t)],
            vec![v[0].neg(), u[0].neg()],
            vec![v[1].clone(), u[1].clone()],
            vec![v[2].clone(), u[2].clone()],
            vec![v[3].neg(), u[3].neg()],
        ]
    }

    /// The ideal J over A: four cubics and the Pfaffian discriminant.
    pub fn build_j(&self) -> Ideal<F> {
        let r = &self.ring_a;
        Ideal::new(r, self.d1_row(r, &Poly::zero(r))).unwrap()
    }

    /// The deformed ideal J(t) over B = A[t].
    pub fn build_jt(&self) -> Ideal<F> {
        let r = &self.ring_b;
        let t = Poly::var_named(r, "t").unwrap();
        Ideal::new(r, self.d1_row(r, &t)).unwrap()
    }

    fn complex(&self, ring: &Ring<F>, t: &Poly<F>) -> ChainComplex<F> {
        let f1_shifts = vec![3, 3, 3, 3, 4];
        let f2_shifts = vec![5; 6];
        let f3_shifts = vec![7, 7];
        let d1 = PolyMatrix::new(ring, vec![self.d1_row(ring, t)], vec![0], f1_shifts.clone())
            .expect("d1 graded");
        let d2 = PolyMatrix::new(ring, self.d2_rows(ring, t), f1_shifts, f2_shifts.clone())
            .expect("d2 graded");
        let d3 = PolyMatrix::new(ring, self.d3_rows(ring, t), f2_shifts, f3_shifts)
            .expect("d3 graded");
        ChainComplex::new(vec![d1, d2, d3]).expect("compatible shapes")
    }

    /// The length-3 complex F over A.
    pub fn build_f(&self) -> ChainComplex<F> {
        self.complex(&self.ring_a, &Poly::zero(&self.ring_a))
    }

    /// The deformed complex F(t) over B.
    pub fn build_ft(&self) -> ChainComplex<F> {
        let t = Poly::var_named(&self.ring_b, "t").unwrap();
        self.complex(&self.ring_b, &t)
    }

    /// Third differential of the resolution after specializing one
    /// z-variable to zero (the four-cubics subideal route).
    pub fn build_dg3(&self) -> PolyMatrix<F> {
        let r = &self.ring_a;
        let a = self
            .scaled(
                self.v(r, "x12")
                    .mul(&self.v(r, "z134"))
                    .sub(&self.v(r, "x13").mul(&self.v(r, "z124")))
                    .add(&self.v(r, "x14").mul(&self.v(r, "z123"))),
                2,
            );
        let b = self
            .scaled(
                self.v(r, "y12")
                    .mul(&self.v(r, "z134"))
                    .sub(&self.v(r, "y13").mul(&self.v(r, "z124")))
                    .add(&self.v(r, "y14").mul(&self.v(r, "z123"))),
                2,
            );
        let q = self
            .d(r, (2, 3), (1, 4))
            .sub(&self.d(r, (2, 4), (1, 3)))
            .add(&self.d(r, (3, 4), (1, 2)));
        let rows = vec![
            vec![Poly::zero(r), b.neg(), a.neg()],
            vec![b.clone(), Poly::zero(r), q.neg()],
            vec![a.clone(), q.clone(), Poly::zero(r)],
            vec![self.v(r, "z134").neg(), self.v(r, "y34"), self.v(r, "x34")],
            vec![self.v(r, "z124").neg(), self.v(r, "y24"), self.v(r, "x24")],
            vec![self.v(r, "z123").neg(), self.v(r, "y23"), self.v(r, "x23")],
        ];
        PolyMatrix::ungraded(r, rows).unwrap()
    }
}

/// True iff the six 2×2 minors of a 3×3 matrix of linear forms on the
/// column pairs (1,2) and (1,3) are linearly independent over the field.
pub fn check_minor_independence<F: Field>(m: &PolyMatrix<F>) -> Result<bool> {
    if m.nrows() != 3 || m.ncols() != 3 {
        return Err(Error::ShapeMismatch("expected a 3x3 matrix".into()));
    }
    let ring = m.ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::ShapeMismatch(
            "expected linear forms in three variables".into(),
        ));
    }
    for i in 0..3 {
        for j in 0..3 {
            let e = m.at(i, j);
            if !e.is_zero() && e.total_degree() != Some(1) {
                return Err(Error::ShapeMismatch("entries must be linear forms".into()));
            }
        }
    }
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m.at(r0, c0)
            .mul(m.at(r1, c1))
            .sub(&m.at(r0, c1).mul(m.at(r1, c0)))
    };
    let mut six = Vec::new();
    for cols in [(0usize, 1usize), (0, 2)] {
        for rows in [(0usize, 1usize), (0, 2), (1, 2)] {
            six.push(minor(rows.0, rows.1, cols.0, cols.1));
        }
    }
    // coefficient matrix over the 6 quadric monomials
    let basis: Vec<Monomial> = {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                let mut exps = vec![0u32; 3];
                exps[i] += 1;
                exps[j] += 1;
                out.push(Monomial::from_exps(&exps).unwrap());
            }
        }
        out
    };
    let field = ring.field().clone();
    let rows: Vec<Vec<F::Elem>> = six
        .iter()
        .map(|q| {
            basis
                .iter()
                .map(|mono| {
                    q.terms()
                        .iter()
                        .find(|(_, m)| m == mono)
                        .map(|(c, _)| c.clone())
                        .unwrap_or_else(|| field.zero())
                })
                .collect()
        })
        .collect();
    Ok(FMatrix::from_rows(field, rows).rank() == 6)
}
