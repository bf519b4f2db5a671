//! Torsion of based acyclic complexes, the unit-valued class of an acyclic
//! binary complex, and the independent determinant oracle for double short
//! exact sequences.
//!
//! The torsion convention is pinned by one normalisation: the elementary
//! complex `0 -> k -a-> k -> 0` in degrees 1,0 has torsion `a`. The value is
//! computed as an alternating product of transition determinants, walking
//! from the top degree down with a greedy (first fitting standard vector)
//! choice of complements; the result does not depend on that choice. The
//! class of a binary acyclic complex is `torsion(top) / torsion(bot)`, which
//! cancels every basis- and dimension-dependent sign, kills diagonals, and is
//! additive over short exact sequences on the nose.

use crate::binary::{BinaryComplex, NenashevDses};
use crate::complex::ChainComplex;
use crate::matrix::{MatError, Matrix};
use crate::report::Violation;
use crate::ring::{Elem, Ring};
use std::fmt;

/// A nonzero element of a field (or a unit of `Z`), tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClass {
    ring: Ring,
    value: Elem,
}

impl UnitClass {
    pub fn new(ring: Ring, value: Elem) -> Result<Self, TorsionError> {
        if ring.is_zero(&value) {
            return Err(TorsionError::ZeroUnit);
        }
        Ok(UnitClass { ring, value })
    }

    pub fn one(ring: Ring) -> Self {
        UnitClass { value: ring.one(), ring }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn mul(&self, other: &UnitClass) -> UnitClass {
        UnitClass { ring: self.ring.clone(), value: self.ring.mul(&self.value, &other.value) }
    }

    pub fn inv(&self) -> UnitClass {
        UnitClass {
            ring: self.ring.clone(),
            value: self.ring.inv(&self.value).expect("unit is invertible"),
        }
    }

    pub fn pow(&self, e: i64) -> UnitClass {
        UnitClass {
            ring: self.ring.clone(),
            value: self.ring.pow_i64(&self.value, e).expect("unit is invertible"),
        }
    }
}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.display_value(&self.value))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionError {
    NotAcyclic,
    UnsupportedRing,
    ZeroUnit,
    Invalid(Violation),
    Matrix(MatError),
    InconsistentCalibration,
    Defect(&'static str),
}

impl fmt::Display for TorsionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionError::NotAcyclic => write!(f, "complex is not acyclic"),
            TorsionError::UnsupportedRing => write!(f, "torsion needs a field (or integer units)"),
            TorsionError::ZeroUnit => write!(f, "zero is not a unit"),
            TorsionError::Invalid(v) => write!(f, "invalid input: {v}"),
            TorsionError::Matrix(e) => write!(f, "{e}"),
            TorsionError::InconsistentCalibration => {
                write!(f, "no single exponent matches every sample")
            }
            TorsionError::Defect(msg) => write!(f, "internal defect: {msg}"),
        }
    }
}

impl std::error::Error for TorsionError {}

impl From<MatError> for TorsionError {
    fn from(e: MatError) -> Self {
        TorsionError::Matrix(e)
    }
}

impl From<Violation> for TorsionError {
    fn from(v: Violation) -> Self {
        TorsionError::Invalid(v)
    }
}

// ---------------------------------------------------------------------------
// torsion
// ---------------------------------------------------------------------------

/// Incremental column span with echelon bookkeeping, for greedy complements.
struct Span {
    ring: Ring,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(ring: Ring) -> Self {
        Span { ring, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Reduce `vec` against the span; if independent, absorb it and report
    /// success.
    fn insert(&mut self, mut vec: Vec<Elem>) -> bool {
        let r = self.ring.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r.is_zero(&vec[p]) {
                let c = vec[p].clone();
                for (k, entry) in vec.iter_mut().enumerate() {
                    let sub = r.mul(&c, &row[k]);
                    *entry = r.sub(entry, &sub);
                }
            }
        }
        let Some(p) = vec.iter().position(|e| !r.is_zero(e)) else {
            return false;
        };
        let inv = r.inv(&vec[p]).expect("nonzero over a field");
        for entry in vec.iter_mut() {
            *entry = r.mul(entry, &inv);
        }
        self.rows.push(vec);
        self.pivots.push(p);
        true
    }
}

fn column_vec(m: &Matrix, j: usize) -> Vec<Elem> {
    (0..m.rows()).map(|i| m.at(i, j).clone()).collect()
}

/// Standard basis columns at the given indices.
fn standard_columns(ring: &Ring, dim: usize, idx: &[usize]) -> Matrix {
    Matrix::from_fn(ring.clone(), dim, idx.len(), |i, j| {
        if i == idx[j] {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// Greedy complement of the column span of `v` inside the standard basis of
/// `k^dim`: the first standard vectors that keep extending the span.
fn greedy_complement(v: &Matrix, dim: usize) -> Result<Vec<usize>, TorsionError> {
    let mut span = Span::new(v.ring().clone());
    for j in 0..v.cols() {
        if !span.insert(column_vec(v, j)) {
            return Err(TorsionError::Defect("boundary basis columns are dependent"));
        }
    }
    let mut idx = Vec::with_capacity(dim - v.cols());
    for j in 0..dim {
        if span.rows.len() == dim {
            break;
        }
        let e: Vec<Elem> = (0..dim)
            .map(|i| if i == j { v.ring().one() } else { v.ring().zero() })
            .collect();
        if span.insert(e) {
            idx.push(j);
        }
    }
    if idx.len() + v.cols() != dim {
        return Err(TorsionError::Defect("complement does not fill the degree"));
    }
    Ok(idx)
}

/// Complement over `Z`: complete the (saturated) boundary basis to a basis of
/// `Z^dim` through the Smith form, keeping every transition unimodular.
fn smith_complement(v: &Matrix, dim: usize) -> Result<Matrix, TorsionError> {
    if v.cols() == 0 {
        return Ok(Matrix::identity(Ring::Z, dim));
    }
    let snf = v.snf()?;
    let k = v.cols();
    for d in snf.diagonal() {
        if !num::One::is_one(&d) {
            return Err(TorsionError::Defect("boundary submodule is not a direct summand"));
        }
    }
    let u_inv = snf.u.solve_unimodular(&Matrix::identity(Ring::Z, dim))?;
    Ok(u_inv.select_cols(&(k..dim).collect::<Vec<_>>()))
}

/// Torsion of a based acyclic complex. Over a field the value is a unit of
/// the field; over `Z` the complex must be exact and the value is a sign.
pub fn torsion(c: &ChainComplex) -> Result<UnitClass, TorsionError> {
    let ring = c.ring().clone();
    if !c.is_acyclic() {
        return Err(TorsionError::NotAcyclic);
    }
    if c.is_zero_complex() {
        return Ok(UnitClass::one(ring));
    }
    let field = ring.is_field();
    let (lo, hi) = (c.min_degree().unwrap(), c.max_degree().unwrap());
    let mut value = ring.one();
    let mut boundaries = Matrix::zero(ring.clone(), c.dim(hi), 0);
    for n in (lo..=hi).rev() {
        let dim = c.dim(n);
        let complement = if field {
            standard_columns(&ring, dim, &greedy_complement(&boundaries, dim)?)
        } else {
            smith_complement(&boundaries, dim)?
        };
        let transition = boundaries.hstack(&complement)?;
        let det = transition.det()?;
        if ring.is_zero(&det) {
            return Err(TorsionError::Defect("transition matrix is singular"));
        }
        if !field && ring.inv(&det).is_none() {
            return Err(TorsionError::Defect("integer transition is not unimodular"));
        }
        value = if n.rem_euclid(2) == 0 {
            ring.mul(&value, &det)
        } else {
            let inv = ring.inv(&det).ok_or(TorsionError::UnsupportedRing)?;
            ring.mul(&value, &inv)
        };
        boundaries = c.diff(n).mul(&complement)?;
    }
    if boundaries.cols() != 0 {
        return Err(TorsionError::Defect("boundaries survive below the bottom degree"));
    }
    UnitClass::new(ring, value)
}

/// The class of an acyclic binary complex: `torsion(top) / torsion(bot)`.
pub fn k1_class(n: &BinaryComplex) -> Result<UnitClass, TorsionError> {
    if !n.is_acyclic() {
        return Err(TorsionError::NotAcyclic);
    }
    let top = torsion(&n.top())?;
    let bot = torsion(&n.bot())?;
    Ok(top.mul(&bot.inv()))
}

// ---------------------------------------------------------------------------
// determinant oracle for double short exact sequences
// ---------------------------------------------------------------------------

/// Which standard vectors the section construction tries first. Two distinct
/// strategies exist so that section-independence is testable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionPivot {
    FirstFit,
    LastFit,
}

/// A right inverse of the surjection `m`, built on a greedily chosen set of
/// columns: `s = E_J (m E_J)^{-1}`.
fn section(m: &Matrix, pivot: SectionPivot) -> Result<Matrix, TorsionError> {
    let ring = m.ring().clone();
    let mut span = Span::new(ring.clone());
    let mut chosen = Vec::new();
    let order: Vec<usize> = match pivot {
        SectionPivot::FirstFit => (0..m.cols()).collect(),
        SectionPivot::LastFit => (0..m.cols()).rev().collect(),
    };
    for j in order {
        if chosen.len() == m.rows() {
            break;
        }
        if span.insert(column_vec(m, j)) {
            chosen.push(j);
        }
    }
    if chosen.len() != m.rows() {
        return Err(TorsionError::Defect("section construction needs a surjection"));
    }
    chosen.sort_unstable();
    let e = standard_columns(&ring, m.cols(), &chosen);
    let square = m.mul(&e)?;
    Ok(e.mul(&square.inverse()?)?)
}

/// Determinant oracle: choose sections `s_p`, `s_q` of the two epis, form
/// `P = [i | s_p]` and `Q = [j | s_q]` in `GL(B)`, return `det(Q^-1 P)`.
/// The value does not depend on the chosen sections.
pub fn nenashev_det_oracle(d: &NenashevDses) -> Result<UnitClass, TorsionError> {
    nenashev_det_oracle_with(d, SectionPivot::FirstFit)
}

pub fn nenashev_det_oracle_with(
    d: &NenashevDses,
    pivot: SectionPivot,
) -> Result<UnitClass, TorsionError> {
    if !d.ring.is_field() {
        return Err(TorsionError::UnsupportedRing);
    }
    d.validate()?;
    let sp = section(&d.p, pivot)?;
    let sq = section(&d.q, pivot)?;
    let p_full = d.i.hstack(&sp)?;
    let q_full = d.j.hstack(&sq)?;
    let det_p = p_full.det()?;
    let det_q = q_full.det()?;
    let value = d.ring.exact_div(&det_p, &det_q);
    UnitClass::new(d.ring.clone(), value)
}

/// Find the single exponent in `{+1, -1}` with
/// `k1_class(embed(s)) = oracle(s)^eps` across every sample. Ties break to
/// `+1`; an empty or all-selfinverse sample set is consistent with both.
pub fn calibrate_epsilon(samples: &[NenashevDses]) -> Result<i8, TorsionError> {
    let mut plus = true;
    let mut minus = true;
    for s in samples {
        let class = k1_class(&s.embed()?)?;
        let oracle = nenashev_det_oracle(s)?;
        if class != oracle {
            plus = false;
        }
        if class != oracle.inv() {
            minus = false;
        }
        if !plus && !minus {
            return Err(TorsionError::InconsistentCalibration);
        }
    }
    Ok(if plus { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::diag;
    use crate::complex::ChainMap;
    use crate::ring::Elem;
    use std::collections::BTreeMap;

    fn f5() -> Ring {
        Ring::fp(5).unwrap()
    }

    fn elementary(a: i64) -> ChainComplex {
        ChainComplex::elementary(f5(), 1, f5().from_i64(a))
    }

    #[test]
    fn normalisation_on_elementary_complexes() {
        for a in 1..5 {
            let t = torsion(&elementary(a)).unwrap();
            assert_eq!(t.value(), &f5().from_i64(a));
        }
        assert_eq!(torsion(&ChainComplex::zero(f5())).unwrap(), UnitClass::one(f5()));
        assert_eq!(
            torsion(&ChainComplex::concentrated(f5(), 0, 1)),
            Err(TorsionError::NotAcyclic)
        );
    }

    #[test]
    fn cone_of_identity_has_trivial_torsion() {
        // small direct elimination oracle cases: several shapes of A
        let shapes = [
            elementary(2),
            elementary(3).shift(),
            ChainComplex::concentrated(f5(), 0, 2),
            ChainComplex::concentrated(f5(), 1, 1)
                .direct_sum(&ChainComplex::concentrated(f5(), 0, 2))
                .unwrap(),
            elementary(4).direct_sum(&elementary(2).shift()).unwrap(),
        ];
        for a in shapes {
            let cone = ChainMap::identity(&a).cone();
            let t = torsion(&cone).unwrap();
            assert_eq!(t, UnitClass::one(f5()), "cone(id) on {:?}", a.support());
        }
    }

    #[test]
    fn multiplicative_over_same_degree_sums() {
        for (a, b) in [(1, 2), (2, 3), (4, 4)] {
            let sum = elementary(a).direct_sum(&elementary(b)).unwrap();
            let t = torsion(&sum).unwrap();
            assert_eq!(t.value(), &f5().from_i64(a * b % 5));
        }
    }

    #[test]
    fn shift_inverts_up_to_the_boundary_sign() {
        // the boundary rank of an elementary complex is 1, so the sign flips
        let e = elementary(2);
        let shifted = torsion(&e.shift()).unwrap();
        let expected = f5().neg(&f5().inv(&f5().from_i64(2)).unwrap());
        assert_eq!(shifted.value(), &expected);

        // two elementary summands in the same degrees: boundary rank 2, no flip
        let two = elementary(2).direct_sum(&elementary(3)).unwrap();
        let t = torsion(&two).unwrap();
        let st = torsion(&two.shift()).unwrap();
        assert_eq!(st, t.inv());
    }

    #[test]
    fn integer_torsion_is_a_sign() {
        let z = Ring::Z;
        let plus = ChainComplex::elementary(z.clone(), 1, z.from_i64(1));
        assert_eq!(torsion(&plus).unwrap().value(), &z.from_i64(1));
        let minus = ChainComplex::elementary(z.clone(), 1, z.from_i64(-1));
        assert_eq!(torsion(&minus).unwrap().value(), &z.from_i64(-1));
        // 0 -> Z -2-> Z -> 0 is not exact over Z
        let double = ChainComplex::elementary(z.clone(), 1, z.from_i64(2));
        assert_eq!(torsion(&double), Err(TorsionError::NotAcyclic));
        // a 3-term exact integer complex with mixed entries
        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 2), (2, 1)].into();
        let d2 = Matrix::from_i64(&z, &[&[1], &[3]]);
        let d1 = Matrix::from_i64(&z, &[&[-3, 1]]);
        let diffs: BTreeMap<i64, Matrix> = [(2, d2), (1, d1)].into();
        let c = ChainComplex::new(z.clone(), dims, diffs).unwrap();
        assert!(c.validate().is_ok());
        let t = torsion(&c).unwrap();
        assert!(t.value() == &z.from_i64(1) || t.value() == &z.from_i64(-1));
    }

    #[test]
    fn k1_kills_diagonals_and_ignores_diagonal_summands() {
        let c = elementary(3).direct_sum(&elementary(2).shift()).unwrap();
        assert_eq!(k1_class(&diag(&c)).unwrap(), UnitClass::one(f5()));

        let n = BinaryComplex::elementary(f5(), Elem::Fp(2), Elem::Fp(3));
        let with_diag = n.direct_sum(&diag(&c)).unwrap();
        assert_eq!(k1_class(&with_diag).unwrap(), k1_class(&n).unwrap());
    }

    #[test]
    fn k1_surjects_onto_units() {
        for ring in [f5(), Ring::fq(2, &[1, 1, 1]).unwrap()] {
            for u in ring.units().unwrap() {
                let n = BinaryComplex::elementary(ring.clone(), u.clone(), ring.one());
                assert_eq!(k1_class(&n).unwrap().value(), &u);
            }
        }
    }

    fn r_example(r: i64) -> NenashevDses {
        let f = f5();
        NenashevDses::new(
            f.clone(),
            Matrix::from_i64(&f, &[&[1], &[0]]),
            Matrix::from_i64(&f, &[&[0], &[1]]),
            Matrix::from_i64(&f, &[&[0, 1]]),
            Matrix::from_i64(&f, &[&[r, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn oracle_on_the_permutation_example() {
        // 2x2 determinant by hand: P = I, Q = [[0, 1/r], [1, 0]], so
        // det(Q^-1 P) = -r
        for r in 1..5 {
            let o = nenashev_det_oracle(&r_example(r)).unwrap();
            assert_eq!(o.value(), &f5().from_i64(-r));
        }
        // doubled sequences give 1
        let f = f5();
        let doubled = NenashevDses::doubled(
            f.clone(),
            Matrix::from_i64(&f, &[&[1], &[0]]),
            Matrix::from_i64(&f, &[&[0, 1]]),
        )
        .unwrap();
        assert_eq!(nenashev_det_oracle(&doubled).unwrap(), UnitClass::one(f));
    }

    #[test]
    fn oracle_is_section_independent() {
        for r in 1..5 {
            let d = r_example(r);
            let first = nenashev_det_oracle_with(&d, SectionPivot::FirstFit).unwrap();
            let last = nenashev_det_oracle_with(&d, SectionPivot::LastFit).unwrap();
            assert_eq!(first, last);
        }
    }

    #[test]
    fn oracle_multiplies_over_block_sums() {
        let (a, b) = (r_example(2), r_example(3));
        let f = f5();
        let block = NenashevDses::new(
            f.clone(),
            Matrix::block_diag(&a.i, &b.i),
            Matrix::block_diag(&a.j, &b.j),
            Matrix::block_diag(&a.p, &b.p),
            Matrix::block_diag(&a.q, &b.q),
        )
        .unwrap();
        let oa = nenashev_det_oracle(&a).unwrap();
        let ob = nenashev_det_oracle(&b).unwrap();
        assert_eq!(nenashev_det_oracle(&block).unwrap(), oa.mul(&ob));
    }

    #[test]
    fn class_matches_oracle_with_global_exponent() {
        // k1(embed) = -1/r while the oracle gives -r: the exponent is -1
        for r in 1..5 {
            let d = r_example(r);
            let class = k1_class(&d.embed().unwrap()).unwrap();
            let oracle = nenashev_det_oracle(&d).unwrap();
            assert_eq!(class, oracle.inv());
            let expected = f5().neg(&f5().inv(&f5().from_i64(r)).unwrap());
            assert_eq!(class.value(), &expected);
        }
    }

    #[test]
    fn calibration_examples() {
        // doubled sequences only: both exponents fit, tie-break is +1
        let f = f5();
        let doubled = NenashevDses::doubled(
            f.clone(),
            Matrix::from_i64(&f, &[&[1], &[0]]),
            Matrix::from_i64(&f, &[&[0, 1]]),
        )
        .unwrap();
        assert_eq!(calibrate_epsilon(&[doubled]).unwrap(), 1);

        // r = 2 over F5 pins the exponent: 2 != 3 = 2^-1
        assert_eq!(calibrate_epsilon(&[r_example(2)]).unwrap(), -1);
        assert_eq!(calibrate_epsilon(&[r_example(2), r_example(3), r_example(4)]).unwrap(), -1);
    }
}
