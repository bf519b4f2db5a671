//! Binary chain complexes: one graded object carrying two differentials
//! (top and bottom), projections to plain complexes, the diagonal, the
//! doubling functor `H`, short exact sequences of (binary) complexes, and
//! double short exact sequences with their embedding in degrees 2,1,0.

use crate::complex::{ChainComplex, ChainMap, ComplexError};
use crate::matrix::Matrix;
use crate::report::Violation;
use crate::ring::Ring;
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Debug)]
pub struct BinaryComplex {
    ring: Ring,
    dims: BTreeMap<i64, usize>,
    top: BTreeMap<i64, Matrix>,
    bot: BTreeMap<i64, Matrix>,
    acyclic: OnceLock<bool>,
}

impl Clone for BinaryComplex {
    fn clone(&self) -> Self {
        BinaryComplex {
            ring: self.ring.clone(),
            dims: self.dims.clone(),
            top: self.top.clone(),
            bot: self.bot.clone(),
            acyclic: self.acyclic.clone(),
        }
    }
}

impl PartialEq for BinaryComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.dims == other.dims
            && self.top == other.top
            && self.bot == other.bot
    }
}

impl Eq for BinaryComplex {}

impl BinaryComplex {
    pub fn new(
        ring: Ring,
        dims: BTreeMap<i64, usize>,
        top: BTreeMap<i64, Matrix>,
        bot: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ComplexError> {
        let top_c = ChainComplex::new(ring.clone(), dims.clone(), top)?;
        let bot_c = ChainComplex::new(ring, dims, bot)?;
        Ok(Self::from_rows_unchecked(top_c, bot_c))
    }

    /// Assemble from two complexes already known to share a graded object.
    pub fn from_rows(top: ChainComplex, bot: ChainComplex) -> Result<Self, ComplexError> {
        if top.ring() != bot.ring() {
            return Err(ComplexError::RingMismatch);
        }
        if top.dims() != bot.dims() {
            let degree = top
                .dims()
                .keys()
                .chain(bot.dims().keys())
                .copied()
                .find(|&n| top.dim(n) != bot.dim(n))
                .unwrap_or(0);
            return Err(ComplexError::Shape {
                degree,
                expected: (top.dim(degree), 0),
                found: (bot.dim(degree), 0),
            });
        }
        Ok(Self::from_rows_unchecked(top, bot))
    }

    fn from_rows_unchecked(top: ChainComplex, bot: ChainComplex) -> Self {
        BinaryComplex {
            ring: top.ring().clone(),
            dims: top.dims().clone(),
            top: top.stored_diffs().clone(),
            bot: bot.stored_diffs().clone(),
            acyclic: OnceLock::new(),
        }
    }

    pub fn zero(ring: Ring) -> Self {
        BinaryComplex {
            ring,
            dims: BTreeMap::new(),
            top: BTreeMap::new(),
            bot: BTreeMap::new(),
            acyclic: OnceLock::new(),
        }
    }

    /// Two-term binary complex in degrees 1,0 with the given top and bottom
    /// entries.
    pub fn elementary(ring: Ring, top: crate::ring::Elem, bot: crate::ring::Elem) -> Self {
        let t = ChainComplex::elementary(ring.clone(), 1, top);
        let b = ChainComplex::elementary(ring, 1, bot);
        Self::from_rows_unchecked(t, b)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn top(&self) -> ChainComplex {
        ChainComplex::new(self.ring.clone(), self.dims.clone(), self.top.clone())
            .expect("stored rows are well-shaped")
    }

    pub fn bot(&self) -> ChainComplex {
        ChainComplex::new(self.ring.clone(), self.dims.clone(), self.bot.clone())
            .expect("stored rows are well-shaped")
    }

    pub fn top_diff(&self, n: i64) -> Matrix {
        match self.top.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.ring.clone(), self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn bot_diff(&self, n: i64) -> Matrix {
        match self.bot.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.ring.clone(), self.dim(n - 1), self.dim(n)),
        }
    }

    /// `d*d = 0` for both rows.
    pub fn validate(&self) -> Result<(), Violation> {
        self.top().validate().map_err(|v| Violation::new("top-row", v.at, v.detail))?;
        self.bot().validate().map_err(|v| Violation::new("bottom-row", v.at, v.detail))?;
        Ok(())
    }

    /// Both rows acyclic. The answer is cached; the value is immutable.
    pub fn is_acyclic(&self) -> bool {
        *self.acyclic.get_or_init(|| self.top().is_acyclic() && self.bot().is_acyclic())
    }

    pub fn is_diagonal(&self) -> bool {
        let degrees: Vec<i64> = self.top.keys().chain(self.bot.keys()).copied().collect();
        degrees.iter().all(|&n| self.top_diff(n) == self.bot_diff(n))
    }

    pub fn direct_sum(&self, other: &BinaryComplex) -> Result<BinaryComplex, ComplexError> {
        let top = self.top().direct_sum(&other.top())?;
        let bot = self.bot().direct_sum(&other.bot())?;
        Ok(Self::from_rows_unchecked(top, bot))
    }

    /// The doubling functor: top row `top(a) + bot(a)[1]`, bottom row the
    /// cone of the identity on `bot(a)`, on the shared graded object
    /// `a_n + a_{n-1}`.
    pub fn h_functor(&self) -> BinaryComplex {
        let ring = self.ring.clone();
        let mut degrees: Vec<i64> = self
            .dims
            .keys()
            .copied()
            .chain(self.dims.keys().map(|&n| n + 1))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut dims = BTreeMap::new();
        for &n in &degrees {
            let d = self.dim(n) + self.dim(n - 1);
            if d > 0 {
                dims.insert(n, d);
            }
        }
        let mut top = BTreeMap::new();
        let mut bot = BTreeMap::new();
        for &n in &degrees {
            let zero_bl = Matrix::zero(ring.clone(), self.dim(n - 2), self.dim(n));
            // top: block diagonal d + (-d') of the shifted bottom row
            let t = Matrix::block2x2(
                &self.top_diff(n),
                &Matrix::zero(ring.clone(), self.dim(n - 1), self.dim(n - 1)),
                &zero_bl,
                &self.bot_diff(n - 1).neg(),
            )
            .expect("consistent blocks");
            if !t.is_empty() {
                top.insert(n, t);
            }
            // bottom: cone of the identity on the bottom row
            let b = Matrix::block2x2(
                &self.bot_diff(n),
                &Matrix::identity(ring.clone(), self.dim(n - 1)),
                &zero_bl,
                &self.bot_diff(n - 1).neg(),
            )
            .expect("consistent blocks");
            if !b.is_empty() {
                bot.insert(n, b);
            }
        }
        BinaryComplex { ring, dims, top, bot, acyclic: OnceLock::new() }
    }
}

/// The binary complex with both differentials equal to the differential of
/// `c`.
pub fn diag(c: &ChainComplex) -> BinaryComplex {
    BinaryComplex::from_rows_unchecked(c.clone(), c.clone())
}

// ---------------------------------------------------------------------------
// graded maps and short exact sequences
// ---------------------------------------------------------------------------

/// A degreewise map of graded objects; when used between binary complexes it
/// is required to commute with both differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    comps: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn new(comps: BTreeMap<i64, Matrix>) -> Self {
        let comps = comps.into_iter().filter(|(_, m)| !m.is_empty()).collect();
        GradedMap { comps }
    }

    pub fn identity(ring: &Ring, dims: &BTreeMap<i64, usize>) -> Self {
        GradedMap {
            comps: dims.iter().map(|(&n, &d)| (n, Matrix::identity(ring.clone(), d))).collect(),
        }
    }

    pub fn component(&self, ring: &Ring, rows: usize, cols: usize, n: i64) -> Matrix {
        match self.comps.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(ring.clone(), rows, cols),
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    /// Reinterpret as a chain map between the given complexes; shapes are
    /// checked by the constructor, the squares by `ChainMap::validate`.
    pub fn as_chain_map(
        &self,
        source: &ChainComplex,
        target: &ChainComplex,
    ) -> Result<ChainMap, ComplexError> {
        ChainMap::new(source.clone(), target.clone(), self.comps.clone())
    }
}

/// A candidate short exact sequence `left >-> middle ->> right`.
#[derive(Clone, Debug)]
pub struct Ses<O> {
    pub left: O,
    pub middle: O,
    pub right: O,
    pub mono: GradedMap,
    pub epi: GradedMap,
}

pub type ComplexSes = Ses<ChainComplex>;
pub type BinarySes = Ses<BinaryComplex>;

/// Degreewise exactness of `0 -> L -> M -> R -> 0` given by raw matrices:
/// admissible mono, admissible epi, zero composite, ranks adding up.
pub(crate) fn exact_at_degree(mono: &Matrix, epi: &Matrix, at: String) -> Result<(), Violation> {
    if !mono.is_admissible_mono() {
        return Err(Violation::new("mono-admissible", at, "not an admissible monomorphism"));
    }
    if !epi.is_admissible_epi() {
        return Err(Violation::new("epi-admissible", at, "not an admissible epimorphism"));
    }
    let composite = epi.mul(mono).expect("shapes agree");
    if !composite.is_zero() {
        return Err(Violation::new("zero-composite", at, "epi o mono is nonzero"));
    }
    // rank additivity pins the image of the mono to the kernel of the epi
    let rank_mono = mono.rank_any();
    let rank_epi = epi.rank_any();
    if rank_mono + rank_epi != mono.rows() {
        return Err(Violation::new(
            "middle-exactness",
            at,
            format!("rank {rank_mono} + rank {rank_epi} != middle dimension {}", mono.rows()),
        ));
    }
    Ok(())
}

impl ComplexSes {
    pub fn validate(&self) -> Result<(), Violation> {
        let mono = self.mono.as_chain_map(&self.left, &self.middle).map_err(shape_violation)?;
        let epi = self.epi.as_chain_map(&self.middle, &self.right).map_err(shape_violation)?;
        mono.validate()?;
        epi.validate()?;
        let mut degrees: Vec<i64> = self
            .left
            .dims()
            .keys()
            .chain(self.middle.dims().keys())
            .chain(self.right.dims().keys())
            .copied()
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            exact_at_degree(&mono.component(n), &epi.component(n), format!("degree {n}"))?;
        }
        Ok(())
    }
}

impl BinarySes {
    pub fn validate(&self) -> Result<(), Violation> {
        self.top()
            .validate()
            .map_err(|v| Violation::new(v.rule, format!("top row, {}", v.at), v.detail))?;
        self.bot()
            .validate()
            .map_err(|v| Violation::new(v.rule, format!("bottom row, {}", v.at), v.detail))?;
        Ok(())
    }

    /// Apply the top projection to every object; the maps are shared.
    pub fn top(&self) -> ComplexSes {
        Ses {
            left: self.left.top(),
            middle: self.middle.top(),
            right: self.right.top(),
            mono: self.mono.clone(),
            epi: self.epi.clone(),
        }
    }

    pub fn bot(&self) -> ComplexSes {
        Ses {
            left: self.left.bot(),
            middle: self.middle.bot(),
            right: self.right.bot(),
            mono: self.mono.clone(),
            epi: self.epi.clone(),
        }
    }

    /// Canonical split sequence `a >-> a + b ->> b`.
    pub fn split(a: &BinaryComplex, b: &BinaryComplex) -> Result<BinarySes, ComplexError> {
        let middle = a.direct_sum(b)?;
        let ring = a.ring().clone();
        let mut mono = BTreeMap::new();
        let mut epi = BTreeMap::new();
        for (&n, _) in middle.dims() {
            let (da, db) = (a.dim(n), b.dim(n));
            let inc = Matrix::identity(ring.clone(), da)
                .vstack(&Matrix::zero(ring.clone(), db, da))
                .expect("shapes agree");
            let prj = Matrix::zero(ring.clone(), db, da)
                .hstack(&Matrix::identity(ring.clone(), db))
                .expect("shapes agree");
            if !inc.is_empty() {
                mono.insert(n, inc);
            }
            if !prj.is_empty() {
                epi.insert(n, prj);
            }
        }
        Ok(Ses {
            left: a.clone(),
            middle,
            right: b.clone(),
            mono: GradedMap::new(mono),
            epi: GradedMap::new(epi),
        })
    }
}

fn shape_violation(e: ComplexError) -> Violation {
    Violation::new("map-shape", "construction", e.to_string())
}

/// The two short exact sequences witnessing how `H` relates a binary complex
/// to the diagonal of its shifted bottom row:
/// `n >-> H(n) ->> diag(bot(n)[1])` and the same with `n` replaced by
/// `diag(bot(n))`. Both are validated before being returned; a failure here
/// is a defect, not an input error.
pub fn h_ses_witnesses(n: &BinaryComplex) -> Result<(BinarySes, BinarySes), Violation> {
    let first = h_ses(n)?;
    let second = h_ses(&diag(&n.bot()))?;
    Ok((first, second))
}

fn h_ses(n: &BinaryComplex) -> Result<BinarySes, Violation> {
    let ring = n.ring().clone();
    let middle = n.h_functor();
    let right = diag(&n.bot().shift());
    let mut mono = BTreeMap::new();
    let mut epi = BTreeMap::new();
    for (&k, _) in middle.dims() {
        let (dk, dk1) = (n.dim(k), n.dim(k - 1));
        let inc = Matrix::identity(ring.clone(), dk)
            .vstack(&Matrix::zero(ring.clone(), dk1, dk))
            .expect("shapes agree");
        let prj = Matrix::zero(ring.clone(), dk1, dk)
            .hstack(&Matrix::identity(ring.clone(), dk1))
            .expect("shapes agree");
        if !inc.is_empty() {
            mono.insert(k, inc);
        }
        if !prj.is_empty() {
            epi.insert(k, prj);
        }
    }
    let ses =
        Ses { left: n.clone(), middle, right, mono: GradedMap::new(mono), epi: GradedMap::new(epi) };
    ses.validate()?;
    Ok(ses)
}

// ---------------------------------------------------------------------------
// double short exact sequences
// ---------------------------------------------------------------------------

/// One graded triple `A, B, C` with two short exact sequence structures
/// `(i, p)` and `(j, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NenashevDses {
    pub ring: Ring,
    pub i: Matrix,
    pub j: Matrix,
    pub p: Matrix,
    pub q: Matrix,
}

impl NenashevDses {
    pub fn new(ring: Ring, i: Matrix, j: Matrix, p: Matrix, q: Matrix) -> Result<Self, ComplexError> {
        for m in [&i, &j, &p, &q] {
            if m.ring() != &ring {
                return Err(ComplexError::RingMismatch);
            }
        }
        if (i.rows(), i.cols()) != (j.rows(), j.cols()) {
            return Err(ComplexError::Shape {
                degree: 2,
                expected: (i.rows(), i.cols()),
                found: (j.rows(), j.cols()),
            });
        }
        if (p.rows(), p.cols()) != (q.rows(), q.cols()) {
            return Err(ComplexError::Shape {
                degree: 1,
                expected: (p.rows(), p.cols()),
                found: (q.rows(), q.cols()),
            });
        }
        if p.cols() != i.rows() {
            return Err(ComplexError::Shape {
                degree: 1,
                expected: (p.rows(), i.rows()),
                found: (p.rows(), p.cols()),
            });
        }
        Ok(NenashevDses { ring, i, j, p, q })
    }

    pub fn dim_a(&self) -> usize {
        self.i.cols()
    }

    pub fn dim_b(&self) -> usize {
        self.i.rows()
    }

    pub fn dim_c(&self) -> usize {
        self.p.rows()
    }

    /// Both `(i, p)` and `(j, q)` must be short exact sequences.
    pub fn validate(&self) -> Result<(), Violation> {
        exact_at_degree(&self.i, &self.p, "first structure (i, p)".to_string())?;
        exact_at_degree(&self.j, &self.q, "second structure (j, q)".to_string())?;
        Ok(())
    }

    /// The binary complex supported in degrees 2,1,0 with top row
    /// `A -i-> B -p-> C` and bottom row `A -j-> B -q-> C`.
    pub fn embed(&self) -> Result<BinaryComplex, Violation> {
        self.validate()?;
        let mut dims = BTreeMap::new();
        dims.insert(2, self.dim_a());
        dims.insert(1, self.dim_b());
        dims.insert(0, self.dim_c());
        let top: BTreeMap<i64, Matrix> = [(2, self.i.clone()), (1, self.p.clone())].into();
        let bot: BTreeMap<i64, Matrix> = [(2, self.j.clone()), (1, self.q.clone())].into();
        Ok(BinaryComplex::new(self.ring.clone(), dims, top, bot)
            .expect("validated shapes assemble"))
    }

    /// Doubled genuine short exact sequence: `i = j`, `p = q`.
    pub fn doubled(ring: Ring, i: Matrix, p: Matrix) -> Result<Self, ComplexError> {
        NenashevDses::new(ring, i.clone(), i, p.clone(), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Elem;

    fn f5() -> Ring {
        Ring::fp(5).unwrap()
    }

    fn sample_binary() -> BinaryComplex {
        // degrees 1,0 with top differential 2 and bottom differential 3
        BinaryComplex::elementary(f5(), Elem::Fp(2), Elem::Fp(3))
    }

    #[test]
    fn projections_and_diagonal() {
        let c = ChainComplex::elementary(f5(), 1, Elem::Fp(1));
        let d = diag(&c);
        assert_eq!(d.top(), c);
        assert_eq!(d.bot(), c);
        assert!(d.is_diagonal());
        assert!(diag(&ChainComplex::zero(f5())).is_zero_complex());

        let b = sample_binary();
        assert!(!b.is_diagonal());

        // extensional equality: independently entered equal matrices are diagonal
        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 1)].into();
        let top: BTreeMap<i64, Matrix> = [(1, Matrix::from_i64(&f5(), &[&[2]]))].into();
        let bot: BTreeMap<i64, Matrix> = [(1, Matrix::from_i64(&f5(), &[&[2]]))].into();
        let same = BinaryComplex::new(f5(), dims, top, bot).unwrap();
        assert!(same.is_diagonal());
    }

    #[test]
    fn acyclicity_needs_both_rows() {
        assert!(sample_binary().is_acyclic());
        let t = ChainComplex::elementary(f5(), 1, Elem::Fp(1));
        let b = ChainComplex::concentrated(f5(), 1, 1)
            .direct_sum(&ChainComplex::concentrated(f5(), 0, 1))
            .unwrap();
        let nb = BinaryComplex::from_rows(t, b).unwrap();
        assert!(!nb.is_acyclic());
    }

    #[test]
    fn h_functor_shape() {
        assert!(BinaryComplex::zero(f5()).h_functor().is_zero_complex());

        let h = sample_binary().h_functor();
        assert_eq!(h.support(), vec![0, 1, 2]);
        assert_eq!((h.dim(2), h.dim(1), h.dim(0)), (1, 2, 1));
        assert!(h.validate().is_ok());
        assert!(h.is_acyclic());
    }

    #[test]
    fn h_ses_witnesses_validate() {
        let n = sample_binary();
        let (w1, w2) = h_ses_witnesses(&n).unwrap();
        assert!(w1.validate().is_ok());
        assert!(w2.validate().is_ok());
        assert_eq!(w1.middle, n.h_functor());
        // right hand side is the diagonal of the shifted bottom row
        assert_eq!(w1.right, diag(&n.bot().shift()));
        assert!(w1.right.is_diagonal());

        let z = BinaryComplex::zero(f5());
        let (z1, z2) = h_ses_witnesses(&z).unwrap();
        assert!(z1.middle.is_zero_complex() && z2.middle.is_zero_complex());

        let c = ChainComplex::elementary(f5(), 1, Elem::Fp(4));
        let (d1, _) = h_ses_witnesses(&diag(&c)).unwrap();
        assert_eq!(d1.middle, diag(&c).h_functor());
        assert_eq!(d1.right, diag(&c.shift()));
    }

    #[test]
    fn split_ses_validates() {
        let a = sample_binary();
        let b = BinaryComplex::elementary(f5(), Elem::Fp(1), Elem::Fp(4));
        let ses = BinarySes::split(&a, &b).unwrap();
        assert!(ses.validate().is_ok());
        assert!(ses.top().validate().is_ok());
        assert!(ses.bot().validate().is_ok());

        // break the epi: scale one component
        let mut bad = ses.clone();
        let mut comps = bad.epi.components().clone();
        let m = comps.get(&1).unwrap().scale(&f5().from_i64(2));
        comps.insert(1, m);
        bad.epi = GradedMap::new(comps);
        assert!(bad.validate().is_err());
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
    fn dses_validation() {
        assert!(r_example(2).validate().is_ok());

        let f = f5();
        let doubled = NenashevDses::doubled(
            f.clone(),
            Matrix::from_i64(&f, &[&[1], &[0]]),
            Matrix::from_i64(&f, &[&[0, 1]]),
        )
        .unwrap();
        assert!(doubled.validate().is_ok());
        assert!(doubled.embed().unwrap().is_diagonal());

        // q o j != 0
        let bad = NenashevDses::new(
            f.clone(),
            Matrix::from_i64(&f, &[&[1], &[0]]),
            Matrix::from_i64(&f, &[&[0], &[1]]),
            Matrix::from_i64(&f, &[&[0, 1]]),
            Matrix::from_i64(&f, &[&[0, 2]]),
        )
        .unwrap();
        let err = bad.validate().unwrap_err();
        assert_eq!(err.rule, "zero-composite");
    }

    #[test]
    fn dses_embedding() {
        let e = r_example(3).embed().unwrap();
        assert_eq!(e.support(), vec![0, 1, 2]);
        assert!(e.is_acyclic());
        assert!(!e.is_diagonal());

        // degenerate A = 0: two 2-term acyclic rows
        let f = f5();
        let degenerate = NenashevDses::new(
            f.clone(),
            Matrix::zero(f.clone(), 1, 0),
            Matrix::zero(f.clone(), 1, 0),
            Matrix::from_i64(&f, &[&[2]]),
            Matrix::from_i64(&f, &[&[3]]),
        )
        .unwrap();
        let e = degenerate.embed().unwrap();
        assert_eq!(e.support(), vec![0, 1]);
        assert!(e.is_acyclic());
    }
}
