//! Bounded chain complexes of finitely generated free modules, chain maps,
//! and the functorial toolbox: shift, cone, direct sum, naive filtration,
//! homology and the acyclicity / quasi-isomorphism decision procedures.
//!
//! Grading is homological: the differential at degree `n` maps degree `n` to
//! degree `n - 1`. Sign conventions are fixed once: the shift negates the
//! differential and the cone of `f: A -> B` carries `[[d_B, f], [0, -d_A]]`.

use crate::matrix::{MatError, Matrix};
use crate::report::Violation;
use crate::ring::{Elem, Ring};
use num::BigInt;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    dims: BTreeMap<i64, usize>,
    /// Key `n` holds the degree `n -> n-1` differential, `dim(n-1)` rows by
    /// `dim(n)` columns. Degrees without an entry carry the zero map.
    diffs: BTreeMap<i64, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    RingMismatch,
    Shape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    NegativeSupport { degree: i64 },
    EndpointMismatch,
    Matrix(MatError),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::RingMismatch => write!(f, "components live over different rings"),
            ComplexError::Shape { degree, expected, found } => write!(
                f,
                "differential at degree {degree} is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            ComplexError::NegativeSupport { degree } => {
                write!(f, "support below degree 0 (degree {degree}) not allowed here")
            }
            ComplexError::EndpointMismatch => {
                write!(f, "maps do not share the intermediate complex")
            }
            ComplexError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ComplexError {}

impl From<MatError> for ComplexError {
    fn from(e: MatError) -> Self {
        ComplexError::Matrix(e)
    }
}

/// Homology at one degree: a dimension over a field, invariant factors and a
/// free rank over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homology {
    Dim(usize),
    Abelian { free_rank: usize, torsion: Vec<BigInt> },
}

impl Homology {
    pub fn is_trivial(&self) -> bool {
        match self {
            Homology::Dim(d) => *d == 0,
            Homology::Abelian { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
        }
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homology::Dim(d) => write!(f, "dim {d}"),
            Homology::Abelian { free_rank, torsion } => {
                if *free_rank == 0 && torsion.is_empty() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                if *free_rank > 0 {
                    parts.push(format!("Z^{free_rank}"));
                }
                for t in torsion {
                    parts.push(format!("Z/{t}"));
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

impl ChainComplex {
    /// Build a complex from dimensions and differentials. Shapes and rings
    /// are enforced here; `d*d = 0` is checked by [`ChainComplex::validate`]
    /// so that defective data can still be constructed and reported on.
    pub fn new(
        ring: Ring,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ComplexError> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let mut kept = BTreeMap::new();
        for (n, m) in diffs {
            if m.ring() != &ring {
                return Err(ComplexError::RingMismatch);
            }
            let expected = (
                dims.get(&(n - 1)).copied().unwrap_or(0),
                dims.get(&n).copied().unwrap_or(0),
            );
            if (m.rows(), m.cols()) != expected {
                return Err(ComplexError::Shape { degree: n, expected, found: (m.rows(), m.cols()) });
            }
            if !m.is_empty() {
                kept.insert(n, m);
            }
        }
        Ok(ChainComplex { ring, dims, diffs: kept })
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex { ring, dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// The elementary acyclic complex `0 -> k -a-> k -> 0` with its nonzero
    /// object in degrees `top` and `top - 1`.
    pub fn elementary(ring: Ring, top: i64, a: Elem) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(top, 1);
        dims.insert(top - 1, 1);
        let m = Matrix::new(ring.clone(), 1, 1, vec![a]).expect("1x1 entry");
        let mut diffs = BTreeMap::new();
        diffs.insert(top, m);
        ChainComplex { ring, dims, diffs }
    }

    /// A single free module in one degree with zero differentials.
    pub fn concentrated(ring: Ring, degree: i64, dim: usize) -> Self {
        let mut dims = BTreeMap::new();
        if dim > 0 {
            dims.insert(degree, dim);
        }
        ChainComplex { ring, dims, diffs: BTreeMap::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn support(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    /// The differential leaving degree `n`, materialising zeros off support.
    pub fn diff(&self, n: i64) -> Matrix {
        match self.diffs.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.ring.clone(), self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn stored_diffs(&self) -> &BTreeMap<i64, Matrix> {
        &self.diffs
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Check `d*d = 0` degreewise; the report names the first failing degree
    /// (the source of the composed pair).
    pub fn validate(&self) -> Result<(), Violation> {
        for (&n, _) in &self.dims {
            let square = self.diff(n - 1).mul(&self.diff(n)).expect("shapes agree");
            if !square.is_zero() {
                return Err(Violation::new(
                    "d-squared",
                    format!("degree {n}"),
                    format!("d({}) o d({n}) is nonzero", n - 1),
                ));
            }
        }
        Ok(())
    }

    pub fn homology(&self, n: i64) -> Homology {
        if self.ring.is_field() {
            let dim = self.dim(n);
            if dim == 0 {
                return Homology::Dim(0);
            }
            let rank_out = self.diff(n).rank().expect("field rank");
            let rank_in = self.diff(n + 1).rank().expect("field rank");
            Homology::Dim(dim - rank_out - rank_in)
        } else {
            self.homology_z(n)
        }
    }

    /// Homology over the integers: kernel of `d_n` in a Smith basis, then
    /// invariant factors of the incoming boundaries in kernel coordinates.
    fn homology_z(&self, n: i64) -> Homology {
        let dim = self.dim(n);
        if dim == 0 {
            return Homology::Abelian { free_rank: 0, torsion: vec![] };
        }
        let d_out = self.diff(n);
        let d_in = self.diff(n + 1);
        if d_out.is_empty() && d_in.is_empty() {
            return Homology::Abelian { free_rank: dim, torsion: vec![] };
        }
        let snf = d_out.snf().expect("snf over Z");
        let rank_out = snf.rank();
        let kernel_dim = dim - rank_out;
        if kernel_dim == 0 {
            return Homology::Abelian { free_rank: 0, torsion: vec![] };
        }
        if d_in.is_empty() {
            return Homology::Abelian { free_rank: kernel_dim, torsion: vec![] };
        }
        // coordinates of the incoming boundaries in the kernel block of v
        let coords = snf.v.solve_unimodular(&d_in).expect("v is unimodular");
        let rows: Vec<usize> = (rank_out..dim).collect();
        let x = Matrix::from_fn(Ring::Z, rows.len(), coords.cols(), |i, j| {
            coords.at(rows[i], j).clone()
        });
        let xs = x.snf().expect("snf over Z");
        let rank_in = xs.rank();
        let torsion: Vec<BigInt> = xs
            .diagonal()
            .into_iter()
            .filter(|d| !num::Zero::is_zero(d) && !num::One::is_one(d))
            .collect();
        Homology::Abelian { free_rank: kernel_dim - rank_in, torsion }
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.keys().all(|&n| self.homology(n).is_trivial())
    }

    /// Degree shift `[1]`: support moves up one degree, differentials are
    /// negated.
    pub fn shift(&self) -> ChainComplex {
        let dims = self.dims.iter().map(|(&n, &d)| (n + 1, d)).collect();
        let diffs = self.diffs.iter().map(|(&n, m)| (n + 1, m.neg())).collect();
        ChainComplex { ring: self.ring.clone(), dims, diffs }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch);
        }
        let degrees: Vec<i64> = {
            let mut d: Vec<i64> = self.dims.keys().chain(other.dims.keys()).copied().collect();
            d.sort_unstable();
            d.dedup();
            d
        };
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let d = self.dim(n) + other.dim(n);
            if d > 0 {
                dims.insert(n, d);
            }
            let block = Matrix::block_diag(&self.diff(n), &other.diff(n));
            if !block.is_empty() {
                diffs.insert(n, block);
            }
        }
        Ok(ChainComplex { ring: self.ring.clone(), dims, diffs })
    }

    /// Alternating sum of ranks.
    pub fn euler_char(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Naive filtration stage `[0, i]`: the subcomplex of degrees `0..=i`,
    /// its degreewise inclusion, and the quotient complex of degrees above
    /// `i`. Rejects complexes supported below degree 0.
    pub fn truncate(&self, i: i64) -> Result<(ChainComplex, ChainMap, ChainComplex), ComplexError> {
        if let Some(&lo) = self.dims.keys().next() {
            if lo < 0 {
                return Err(ComplexError::NegativeSupport { degree: lo });
            }
        }
        let sub_dims: BTreeMap<i64, usize> =
            self.dims.iter().filter(|&(&n, _)| n <= i).map(|(&n, &d)| (n, d)).collect();
        let sub_diffs: BTreeMap<i64, Matrix> =
            self.diffs.iter().filter(|&(&n, _)| n <= i).map(|(&n, m)| (n, m.clone())).collect();
        let sub = ChainComplex { ring: self.ring.clone(), dims: sub_dims, diffs: sub_diffs };

        let quot_dims: BTreeMap<i64, usize> =
            self.dims.iter().filter(|&(&n, _)| n > i).map(|(&n, &d)| (n, d)).collect();
        let quot_diffs: BTreeMap<i64, Matrix> =
            self.diffs.iter().filter(|&(&n, _)| n > i + 1).map(|(&n, m)| (n, m.clone())).collect();
        let quotient = ChainComplex { ring: self.ring.clone(), dims: quot_dims, diffs: quot_diffs };

        let mut comps = BTreeMap::new();
        for (&n, _) in &sub.dims {
            comps.insert(n, Matrix::identity(self.ring.clone(), self.dim(n)));
        }
        let inclusion = ChainMap { source: sub.clone(), target: self.clone(), comps };
        Ok((sub, inclusion, quotient))
    }
}

// ---------------------------------------------------------------------------
// chain maps
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ComplexError> {
        if source.ring != target.ring {
            return Err(ComplexError::RingMismatch);
        }
        let mut kept = BTreeMap::new();
        for (n, m) in comps {
            if m.ring() != &source.ring {
                return Err(ComplexError::RingMismatch);
            }
            let expected = (target.dim(n), source.dim(n));
            if (m.rows(), m.cols()) != expected {
                return Err(ComplexError::Shape { degree: n, expected, found: (m.rows(), m.cols()) });
            }
            if !m.is_empty() {
                kept.insert(n, m);
            }
        }
        Ok(ChainMap { source, target, comps: kept })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = c
            .dims
            .iter()
            .map(|(&n, &d)| (n, Matrix::identity(c.ring.clone(), d)))
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), comps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self, ComplexError> {
        ChainMap::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn component(&self, n: i64) -> Matrix {
        match self.comps.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.source.ring.clone(), self.target.dim(n), self.source.dim(n)),
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    /// Check the chain map squares `d_target o f = f o d_source`.
    pub fn validate(&self) -> Result<(), Violation> {
        let mut degrees: Vec<i64> =
            self.source.dims.keys().chain(self.comps.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let lhs = self.target.diff(n).mul(&self.component(n)).expect("shapes agree");
            let rhs = self.component(n - 1).mul(&self.source.diff(n)).expect("shapes agree");
            if lhs != rhs {
                return Err(Violation::new(
                    "chain-map-square",
                    format!("degree {n}"),
                    "d o f differs from f o d".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Mapping cone, degree `n` part `target_n + source_{n-1}`, differential
    /// `[[d_target, f], [0, -d_source]]`.
    pub fn cone(&self) -> ChainComplex {
        let ring = self.source.ring.clone();
        let mut degrees: Vec<i64> = self
            .target
            .dims
            .keys()
            .copied()
            .chain(self.source.dims.keys().map(|&n| n + 1))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let d = self.target.dim(n) + self.source.dim(n - 1);
            if d > 0 {
                dims.insert(n, d);
            }
        }
        for &n in &degrees {
            let top_left = self.target.diff(n);
            let top_right = self.component(n - 1);
            let bottom_left =
                Matrix::zero(ring.clone(), self.source.dim(n - 2), self.target.dim(n));
            let bottom_right = self.source.diff(n - 1).neg();
            let block = Matrix::block2x2(&top_left, &top_right, &bottom_left, &bottom_right)
                .expect("consistent cone blocks");
            if !block.is_empty() {
                diffs.insert(n, block);
            }
        }
        ChainComplex { ring, dims, diffs }
    }

    /// A map is a quasi-isomorphism when its cone is acyclic.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_acyclic()
    }

    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap, ComplexError> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let mut degrees: Vec<i64> = source.dims.keys().copied().collect();
        degrees.extend(target.dims.keys());
        degrees.sort_unstable();
        degrees.dedup();
        let mut comps = BTreeMap::new();
        for n in degrees {
            let block = Matrix::from_fn(
                source.ring.clone(),
                target.dim(n),
                source.dim(n),
                |i, j| {
                    let (t1, s1) = (self.target.dim(n), self.source.dim(n));
                    let a = self.component(n);
                    let b = other.component(n);
                    if i < t1 && j < s1 {
                        a.at(i, j).clone()
                    } else if i >= t1 && j >= s1 {
                        b.at(i - t1, j - s1).clone()
                    } else {
                        source.ring.zero()
                    }
                },
            );
            if !block.is_empty() {
                comps.insert(n, block);
            }
        }
        Ok(ChainMap { source, target, comps })
    }

    /// Composition `self o other` (apply `other` first).
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap, ComplexError> {
        if other.target != self.source {
            return Err(ComplexError::EndpointMismatch);
        }
        let mut comps = BTreeMap::new();
        let mut degrees: Vec<i64> = other.source.dims.keys().copied().collect();
        degrees.extend(self.target.dims.keys());
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let m = self.component(n).mul(&other.component(n))?;
            if !m.is_empty() && !m.is_zero() {
                comps.insert(n, m);
            }
        }
        Ok(ChainMap { source: other.source.clone(), target: self.target.clone(), comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Ring {
        Ring::fp(5).unwrap()
    }

    fn elem_f5(top: i64, a: i64) -> ChainComplex {
        ChainComplex::elementary(f5(), top, f5().from_i64(a))
    }

    #[test]
    fn validate_examples() {
        assert!(ChainComplex::zero(f5()).validate().is_ok());
        assert!(elem_f5(1, 1).validate().is_ok());

        // identity differentials in degrees 2,1,0: d*d = 1, fails at degree 2
        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 1), (2, 1)].into();
        let one = Matrix::identity(f5(), 1);
        let diffs: BTreeMap<i64, Matrix> = [(1, one.clone()), (2, one)].into();
        let bad = ChainComplex::new(f5(), dims, diffs).unwrap();
        let err = bad.validate().unwrap_err();
        assert_eq!(err.rule, "d-squared");
        assert_eq!(err.at, "degree 2");
    }

    #[test]
    fn shape_checked_at_construction() {
        let dims: BTreeMap<i64, usize> = [(0, 2), (1, 1)].into();
        let diffs: BTreeMap<i64, Matrix> = [(1, Matrix::identity(f5(), 1))].into();
        assert!(matches!(
            ChainComplex::new(f5(), dims, diffs),
            Err(ComplexError::Shape { degree: 1, .. })
        ));
    }

    #[test]
    fn homology_examples() {
        let e = elem_f5(1, 1);
        for n in -1..3 {
            assert!(e.homology(n).is_trivial(), "H_{n} of an elementary complex");
        }
        assert!(e.is_acyclic());

        let point = ChainComplex::concentrated(f5(), 0, 1);
        assert_eq!(point.homology(0), Homology::Dim(1));
        assert!(!point.is_acyclic());

        // 0 -> Z -2-> Z -> 0: H_0 = Z/2, H_1 = 0
        let z = Ring::Z;
        let c = ChainComplex::elementary(z.clone(), 1, z.from_i64(2));
        assert_eq!(
            c.homology(0),
            Homology::Abelian { free_rank: 0, torsion: vec![BigInt::from(2)] }
        );
        assert_eq!(c.homology(1), Homology::Abelian { free_rank: 0, torsion: vec![] });
        assert!(!c.is_acyclic());
        let unit = ChainComplex::elementary(z.clone(), 1, z.from_i64(-1));
        assert!(unit.is_acyclic());
    }

    #[test]
    fn quasi_iso_examples() {
        let e = elem_f5(1, 2);
        assert!(ChainMap::identity(&e).is_quasi_iso());

        let point = ChainComplex::concentrated(f5(), 0, 1);
        let from_zero = ChainMap::zero(&ChainComplex::zero(f5()), &point).unwrap();
        assert!(!from_zero.is_quasi_iso());

        // elementary -> 0 is a quasi-isomorphism: both sides acyclic
        let to_zero = ChainMap::zero(&e, &ChainComplex::zero(f5())).unwrap();
        assert!(to_zero.cone().is_acyclic());
        assert!(to_zero.is_quasi_iso());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ChainComplex::zero(f5()).shift(), ChainComplex::zero(f5()));

        let point = ChainComplex::concentrated(f5(), 0, 1);
        assert_eq!(point.shift(), ChainComplex::concentrated(f5(), 1, 1));

        let e = elem_f5(1, 2);
        let s = e.shift();
        assert_eq!(s.support(), vec![1, 2]);
        assert_eq!(s.diff(2), Matrix::from_i64(&f5(), &[&[-2]]));
        // invertible: shifting down recovers the original
        let back_dims: BTreeMap<i64, usize> = s.dims.iter().map(|(&n, &d)| (n - 1, d)).collect();
        let back_diffs: BTreeMap<i64, Matrix> =
            s.diffs.iter().map(|(&n, m)| (n - 1, m.neg())).collect();
        assert_eq!(ChainComplex::new(f5(), back_dims, back_diffs).unwrap(), e);
    }

    #[test]
    fn cone_examples() {
        let e = elem_f5(1, 1);
        assert!(ChainMap::identity(&e).cone().is_acyclic());

        let b = elem_f5(2, 3);
        let cone = ChainMap::zero(&ChainComplex::zero(f5()), &b).unwrap().cone();
        assert_eq!(cone, b);
    }

    #[test]
    fn direct_sum_examples() {
        let a = elem_f5(1, 2);
        assert_eq!(a.direct_sum(&ChainComplex::zero(f5())).unwrap(), a);

        let b = elem_f5(2, 3);
        let s = a.direct_sum(&b).unwrap();
        for n in 0..3 {
            assert_eq!(s.dim(n), a.dim(n) + b.dim(n));
        }
        assert!(matches!(
            a.direct_sum(&ChainComplex::zero(Ring::Q)),
            Err(ComplexError::RingMismatch)
        ));
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(elem_f5(1, 1).euler_char(), 0);
        assert_eq!(ChainComplex::concentrated(f5(), 0, 1).euler_char(), 1);
        // k^2 in degree 1 plus k in degree 0
        let c = ChainComplex::concentrated(f5(), 1, 2)
            .direct_sum(&ChainComplex::concentrated(f5(), 0, 1))
            .unwrap();
        assert_eq!(c.euler_char(), -1);
        let sh = c.shift();
        assert_eq!(sh.euler_char(), 1);
    }

    #[test]
    fn truncation_examples() {
        let e = elem_f5(1, 1);

        let (sub, inc, quot) = e.truncate(5).unwrap();
        assert_eq!(sub, e);
        assert!(quot.is_zero_complex());
        assert!(inc.validate().is_ok());

        let (sub, _, quot) = e.truncate(-1).unwrap();
        assert!(sub.is_zero_complex());
        assert_eq!(quot, e);

        let (sub, inc, quot) = e.truncate(0).unwrap();
        assert_eq!(sub, ChainComplex::concentrated(f5(), 0, 1));
        assert_eq!(quot, ChainComplex::concentrated(f5(), 1, 1));
        assert!(inc.validate().is_ok());

        let below = ChainComplex::concentrated(f5(), -2, 1);
        assert!(matches!(below.truncate(0), Err(ComplexError::NegativeSupport { degree: -2 })));
    }

    #[test]
    fn chain_map_validation_catches_bad_squares() {
        let e = elem_f5(1, 2);
        let f = elem_f5(1, 3);
        // identity components do not commute with differentials 2 vs 3
        let comps: BTreeMap<i64, Matrix> =
            [(0, Matrix::identity(f5(), 1)), (1, Matrix::identity(f5(), 1))].into();
        let map = ChainMap::new(e, f, comps).unwrap();
        assert!(map.validate().is_err());
    }
}
