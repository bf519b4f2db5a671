//! n-dimensional binary multicomplexes: a lattice-graded object with one or
//! two families of differentials per axis, all axes commuting strictly. A
//! complex of complexes, unwound.
//!
//! Validation covers square-zero per axis family, pairwise commutation over
//! every choice of top/bottom, agreement of the axis kinds with a signature,
//! and acyclicity of every lattice line. Relation instances for the
//! presentation generated by these objects are certified, never rewritten.

use crate::binary::{exact_at_degree, BinaryComplex};
use crate::complex::{ChainComplex, ComplexError};
use crate::matrix::Matrix;
use crate::report::Violation;
use crate::ring::Ring;
use std::collections::BTreeMap;

pub type Point = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKind {
    Unary,
    Binary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Top,
    Bot,
}

/// Signature entry for one axis of the presentation: acyclic complexes or
/// acyclic binary complexes along that axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigEntry {
    Cq,
    Bq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature(pub Vec<SigEntry>);

impl Signature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Differential families for one axis: unary axes carry one family, binary
/// axes two. Keys are source points; the matrix at `pt` maps `pt` to
/// `pt - e_axis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxisFamilies {
    Unary(BTreeMap<Point, Matrix>),
    Binary { top: BTreeMap<Point, Matrix>, bot: BTreeMap<Point, Matrix> },
}

impl AxisFamilies {
    pub fn kind(&self) -> AxisKind {
        match self {
            AxisFamilies::Unary(_) => AxisKind::Unary,
            AxisFamilies::Binary { .. } => AxisKind::Binary,
        }
    }

    fn family(&self, variant: Variant) -> &BTreeMap<Point, Matrix> {
        match (self, variant) {
            (AxisFamilies::Unary(f), _) => f,
            (AxisFamilies::Binary { top, .. }, Variant::Top) => top,
            (AxisFamilies::Binary { bot, .. }, Variant::Bot) => bot,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiComplex {
    ring: Ring,
    n: usize,
    dims: BTreeMap<Point, usize>,
    axes: Vec<AxisFamilies>,
}

fn shifted(pt: &Point, axis: usize, delta: i64) -> Point {
    let mut out = pt.clone();
    out[axis] += delta;
    out
}

fn fmt_point(pt: &Point) -> String {
    let inner: Vec<String> = pt.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

impl MultiComplex {
    pub fn new(
        ring: Ring,
        n: usize,
        dims: BTreeMap<Point, usize>,
        axes: Vec<AxisFamilies>,
    ) -> Result<Self, ComplexError> {
        if axes.len() != n {
            return Err(ComplexError::Shape {
                degree: n as i64,
                expected: (n, 0),
                found: (axes.len(), 0),
            });
        }
        let dims: BTreeMap<Point, usize> = dims
            .into_iter()
            .filter(|(pt, d)| pt.len() == n && *d > 0)
            .collect();
        let mc = MultiComplex { ring, n, dims, axes };
        // shape and ring checks for every stored matrix; prune vacuous ones
        let mut pruned = mc.axes.clone();
        for (axis, fams) in mc.axes.iter().enumerate() {
            let variants: Vec<Variant> = match fams.kind() {
                AxisKind::Unary => vec![Variant::Top],
                AxisKind::Binary => vec![Variant::Top, Variant::Bot],
            };
            for variant in variants {
                let mut kept = BTreeMap::new();
                for (pt, m) in fams.family(variant) {
                    if pt.len() != mc.n {
                        return Err(ComplexError::Shape {
                            degree: axis as i64,
                            expected: (mc.n, 0),
                            found: (pt.len(), 0),
                        });
                    }
                    if m.ring() != &mc.ring {
                        return Err(ComplexError::RingMismatch);
                    }
                    let expected = (mc.dim(&shifted(pt, axis, -1)), mc.dim(pt));
                    if (m.rows(), m.cols()) != expected {
                        return Err(ComplexError::Shape {
                            degree: axis as i64,
                            expected,
                            found: (m.rows(), m.cols()),
                        });
                    }
                    if !m.is_empty() {
                        kept.insert(pt.clone(), m.clone());
                    }
                }
                match (&mut pruned[axis], variant) {
                    (AxisFamilies::Unary(f), _) => *f = kept,
                    (AxisFamilies::Binary { top, .. }, Variant::Top) => *top = kept,
                    (AxisFamilies::Binary { bot, .. }, Variant::Bot) => *bot = kept,
                }
            }
        }
        Ok(MultiComplex { axes: pruned, ..mc })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &BTreeMap<Point, usize> {
        &self.dims
    }

    pub fn dim(&self, pt: &Point) -> usize {
        self.dims.get(pt).copied().unwrap_or(0)
    }

    pub fn axis_kind(&self, axis: usize) -> AxisKind {
        self.axes[axis].kind()
    }

    /// The differential on `axis` leaving `pt`, materialising zeros.
    pub fn diff(&self, axis: usize, variant: Variant, pt: &Point) -> Matrix {
        match self.axes[axis].family(variant).get(pt) {
            Some(m) => m.clone(),
            None => {
                Matrix::zero(self.ring.clone(), self.dim(&shifted(pt, axis, -1)), self.dim(pt))
            }
        }
    }

    pub fn axes(&self) -> &[AxisFamilies] {
        &self.axes
    }

    fn variants(&self, axis: usize) -> Vec<Variant> {
        match self.axis_kind(axis) {
            AxisKind::Unary => vec![Variant::Top],
            AxisKind::Binary => vec![Variant::Top, Variant::Bot],
        }
    }

    /// Lattice lines parallel to `axis`: for every choice of the other
    /// coordinates, the 1-dimensional complex along `axis` with the chosen
    /// family.
    pub fn line(&self, axis: usize, variant: Variant, rest: &Point) -> ChainComplex {
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (pt, &d) in &self.dims {
            if strip(pt, axis) == *rest {
                dims.insert(pt[axis], d);
            }
        }
        for (pt, m) in self.axes[axis].family(variant) {
            if strip(pt, axis) == *rest {
                diffs.insert(pt[axis], m.clone());
            }
        }
        ChainComplex::new(self.ring.clone(), dims, diffs).expect("line shapes agree")
    }

    fn line_keys(&self, axis: usize) -> Vec<Point> {
        let mut keys: Vec<Point> = self.dims.keys().map(|pt| strip(pt, axis)).collect();
        keys.sort();
        keys.dedup();
        keys
    }

    /// Full validation against a signature: square-zero per family, strict
    /// commutation across axes for every variant pair, axis kinds matching
    /// the signature, and acyclicity of every line.
    pub fn validate(&self, sig: &Signature) -> Result<(), Violation> {
        if sig.len() != self.n {
            return Err(Violation::new(
                "signature-length",
                format!("dimension {}", self.n),
                format!("signature has {} entries", sig.len()),
            ));
        }
        for (axis, entry) in sig.0.iter().enumerate() {
            let expected = match entry {
                SigEntry::Cq => AxisKind::Unary,
                SigEntry::Bq => AxisKind::Binary,
            };
            if self.axis_kind(axis) != expected {
                return Err(Violation::new(
                    "signature-kind",
                    format!("axis {axis}"),
                    format!("axis is {:?}, signature wants {:?}", self.axis_kind(axis), entry),
                ));
            }
        }
        // square-zero per axis and variant
        for axis in 0..self.n {
            for variant in self.variants(axis) {
                for pt in self.dims.keys() {
                    let first = self.diff(axis, variant, pt);
                    let second = self.diff(axis, variant, &shifted(pt, axis, -1));
                    let square = second.mul(&first).expect("shapes agree");
                    if !square.is_zero() {
                        return Err(Violation::new(
                            "axis-square",
                            format!("axis {axis} at {}", fmt_point(pt)),
                            format!("{variant:?} family does not square to zero"),
                        ));
                    }
                }
            }
        }
        // strict commutation for distinct axes, all variant choices
        for a in 0..self.n {
            for b in a + 1..self.n {
                for va in self.variants(a) {
                    for vb in self.variants(b) {
                        for pt in self.dims.keys() {
                            let one = self
                                .diff(b, vb, &shifted(pt, a, -1))
                                .mul(&self.diff(a, va, pt))
                                .expect("shapes agree");
                            let two = self
                                .diff(a, va, &shifted(pt, b, -1))
                                .mul(&self.diff(b, vb, pt))
                                .expect("shapes agree");
                            if one != two {
                                return Err(Violation::new(
                                    "axis-commutation",
                                    format!("axes {a},{b} at {}", fmt_point(pt)),
                                    format!("({va:?},{vb:?}) squares do not commute"),
                                ));
                            }
                        }
                    }
                }
            }
        }
        // acyclicity of every line, both signatures demand it
        for axis in 0..self.n {
            for variant in self.variants(axis) {
                for rest in self.line_keys(axis) {
                    let line = self.line(axis, variant, &rest);
                    if !line.is_acyclic() {
                        return Err(Violation::new(
                            "line-acyclic",
                            format!("axis {axis}, line {}", fmt_point(&rest)),
                            format!("{variant:?} line has homology"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn with_axis(&self, axis: usize, fams: AxisFamilies) -> MultiComplex {
        let mut axes = self.axes.clone();
        axes[axis] = fams;
        MultiComplex { ring: self.ring.clone(), n: self.n, dims: self.dims.clone(), axes }
    }

    /// Keep only the top family on a binary axis.
    pub fn axis_top(&self, axis: usize) -> Result<MultiComplex, Violation> {
        match &self.axes[axis] {
            AxisFamilies::Binary { top, .. } => {
                Ok(self.with_axis(axis, AxisFamilies::Unary(top.clone())))
            }
            AxisFamilies::Unary(_) => Err(wrong_kind(axis, "binary")),
        }
    }

    /// Keep only the bottom family on a binary axis.
    pub fn axis_bot(&self, axis: usize) -> Result<MultiComplex, Violation> {
        match &self.axes[axis] {
            AxisFamilies::Binary { bot, .. } => {
                Ok(self.with_axis(axis, AxisFamilies::Unary(bot.clone())))
            }
            AxisFamilies::Unary(_) => Err(wrong_kind(axis, "binary")),
        }
    }

    /// Duplicate the family of a unary axis, making it binary.
    pub fn axis_diag(&self, axis: usize) -> Result<MultiComplex, Violation> {
        match &self.axes[axis] {
            AxisFamilies::Unary(f) => Ok(self.with_axis(
                axis,
                AxisFamilies::Binary { top: f.clone(), bot: f.clone() },
            )),
            AxisFamilies::Binary { .. } => Err(wrong_kind(axis, "unary")),
        }
    }

    pub fn is_axis_diagonal(&self, axis: usize) -> Result<bool, Violation> {
        match &self.axes[axis] {
            AxisFamilies::Binary { top, bot } => Ok(top == bot),
            AxisFamilies::Unary(_) => Err(wrong_kind(axis, "binary")),
        }
    }

    pub fn direct_sum(&self, other: &MultiComplex) -> Result<MultiComplex, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch);
        }
        if self.n != other.n
            || (0..self.n).any(|a| self.axis_kind(a) != other.axis_kind(a))
        {
            return Err(ComplexError::Shape {
                degree: 0,
                expected: (self.n, 0),
                found: (other.n, 0),
            });
        }
        let mut points: Vec<Point> = self.dims.keys().chain(other.dims.keys()).cloned().collect();
        points.sort();
        points.dedup();
        let mut dims = BTreeMap::new();
        for pt in &points {
            let d = self.dim(pt) + other.dim(pt);
            if d > 0 {
                dims.insert(pt.clone(), d);
            }
        }
        let mut axes = Vec::with_capacity(self.n);
        for axis in 0..self.n {
            let build = |variant: Variant| {
                let mut fam = BTreeMap::new();
                for pt in &points {
                    let block = Matrix::block_diag(
                        &self.diff(axis, variant, pt),
                        &other.diff(axis, variant, pt),
                    );
                    if !block.is_empty() {
                        fam.insert(pt.clone(), block);
                    }
                }
                fam
            };
            axes.push(match self.axis_kind(axis) {
                AxisKind::Unary => AxisFamilies::Unary(build(Variant::Top)),
                AxisKind::Binary => {
                    AxisFamilies::Binary { top: build(Variant::Top), bot: build(Variant::Bot) }
                }
            });
        }
        Ok(MultiComplex { ring: self.ring.clone(), n: self.n, dims, axes })
    }

    /// A 1-dimensional binary multicomplex is exactly a binary complex.
    pub fn from_binary(b: &BinaryComplex) -> MultiComplex {
        let dims = b.dims().iter().map(|(&n, &d)| (vec![n], d)).collect();
        let top = b
            .dims()
            .keys()
            .filter_map(|&n| {
                let m = b.top_diff(n);
                (!m.is_empty()).then_some((vec![n], m))
            })
            .collect();
        let bot = b
            .dims()
            .keys()
            .filter_map(|&n| {
                let m = b.bot_diff(n);
                (!m.is_empty()).then_some((vec![n], m))
            })
            .collect();
        MultiComplex {
            ring: b.ring().clone(),
            n: 1,
            dims,
            axes: vec![AxisFamilies::Binary { top, bot }],
        }
    }

    /// Inverse of [`MultiComplex::from_binary`] for 1-dimensional binary
    /// objects.
    pub fn to_binary(&self) -> Result<BinaryComplex, Violation> {
        if self.n != 1 {
            return Err(Violation::new("dimension", "conversion", "not 1-dimensional"));
        }
        let AxisFamilies::Binary { top, bot } = &self.axes[0] else {
            return Err(wrong_kind(0, "binary"));
        };
        let dims: BTreeMap<i64, usize> = self.dims.iter().map(|(pt, &d)| (pt[0], d)).collect();
        let top: BTreeMap<i64, Matrix> = top.iter().map(|(pt, m)| (pt[0], m.clone())).collect();
        let bot: BTreeMap<i64, Matrix> = bot.iter().map(|(pt, m)| (pt[0], m.clone())).collect();
        BinaryComplex::new(self.ring.clone(), dims, top, bot)
            .map_err(|e| Violation::new("conversion", "axis 0", e.to_string()))
    }
}

fn strip(pt: &Point, axis: usize) -> Point {
    let mut out = pt.clone();
    out.remove(axis);
    out
}

fn wrong_kind(axis: usize, wanted: &str) -> Violation {
    Violation::new("axis-kind", format!("axis {axis}"), format!("axis is not {wanted}"))
}

// ---------------------------------------------------------------------------
// relation certification
// ---------------------------------------------------------------------------

/// Pointwise map of lattice-graded objects, required to commute with every
/// differential family when used in a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    comps: BTreeMap<Point, Matrix>,
}

impl MultiMap {
    pub fn new(comps: BTreeMap<Point, Matrix>) -> Self {
        MultiMap { comps: comps.into_iter().filter(|(_, m)| !m.is_empty()).collect() }
    }

    pub fn component(&self, ring: &Ring, rows: usize, cols: usize, pt: &Point) -> Matrix {
        match self.comps.get(pt) {
            Some(m) => m.clone(),
            None => Matrix::zero(ring.clone(), rows, cols),
        }
    }

    pub fn components(&self) -> &BTreeMap<Point, Matrix> {
        &self.comps
    }

    fn validate_between(
        &self,
        source: &MultiComplex,
        target: &MultiComplex,
    ) -> Result<(), Violation> {
        let ring = source.ring();
        let mut points: Vec<Point> =
            source.dims().keys().chain(target.dims().keys()).cloned().collect();
        points.extend(self.comps.keys().cloned());
        points.sort();
        points.dedup();
        for pt in &points {
            let f = self.component(ring, target.dim(pt), source.dim(pt), pt);
            if (f.rows(), f.cols()) != (target.dim(pt), source.dim(pt)) {
                return Err(Violation::new(
                    "map-shape",
                    fmt_point(pt),
                    format!("component is {}x{}", f.rows(), f.cols()),
                ));
            }
            for axis in 0..source.dimension() {
                for variant in match source.axis_kind(axis) {
                    AxisKind::Unary => vec![Variant::Top],
                    AxisKind::Binary => vec![Variant::Top, Variant::Bot],
                } {
                    let below = shifted(pt, axis, -1);
                    let f_below =
                        self.component(ring, target.dim(&below), source.dim(&below), &below);
                    let lhs =
                        target.diff(axis, variant, pt).mul(&f).expect("shapes agree");
                    let rhs =
                        f_below.mul(&source.diff(axis, variant, pt)).expect("shapes agree");
                    if lhs != rhs {
                        return Err(Violation::new(
                            "map-square",
                            format!("axis {axis} at {}", fmt_point(pt)),
                            format!("{variant:?} square does not commute"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A relation instance of the presentation: a short exact sequence of
/// multicomplexes, or a diagonal object along one axis. Weak-equivalence
/// relations only arise for relative generators and are certified there.
#[derive(Clone, Debug)]
pub enum MultiRelation {
    Ses {
        left: MultiComplex,
        middle: MultiComplex,
        right: MultiComplex,
        mono: MultiMap,
        epi: MultiMap,
    },
    Diagonal { object: MultiComplex, axis: usize },
}

/// Verify the side condition that makes a relation instance valid:
/// exactness for sequences, entrywise equality of the two families for
/// diagonal instances.
pub fn certify_relation(relation: &MultiRelation, sig: &Signature) -> Result<(), Violation> {
    match relation {
        MultiRelation::Ses { left, middle, right, mono, epi } => {
            left.validate(sig)?;
            middle.validate(sig)?;
            right.validate(sig)?;
            mono.validate_between(left, middle)?;
            epi.validate_between(middle, right)?;
            let ring = middle.ring();
            let mut points: Vec<Point> = left
                .dims()
                .keys()
                .chain(middle.dims().keys())
                .chain(right.dims().keys())
                .cloned()
                .collect();
            points.sort();
            points.dedup();
            for pt in &points {
                let m = mono.component(ring, middle.dim(pt), left.dim(pt), pt);
                let e = epi.component(ring, right.dim(pt), middle.dim(pt), pt);
                exact_at_degree(&m, &e, fmt_point(pt))?;
            }
            Ok(())
        }
        MultiRelation::Diagonal { object, axis } => {
            object.validate(sig)?;
            if !object.is_axis_diagonal(*axis)? {
                return Err(Violation::new(
                    "axis-diagonal",
                    format!("axis {axis}"),
                    "top and bottom families differ",
                ));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::NenashevDses;
    use crate::ring::Elem;

    fn f5() -> Ring {
        Ring::fp(5).unwrap()
    }

    fn sample_binary() -> BinaryComplex {
        BinaryComplex::elementary(f5(), Elem::Fp(2), Elem::Fp(3))
    }

    /// Product of a binary complex (axis 0) and a plain complex (axis 1):
    /// axis-0 differentials act on the first factor, axis-1 on the second.
    fn product(x: &BinaryComplex, y: &ChainComplex) -> MultiComplex {
        let ring = x.ring().clone();
        let mut dims = BTreeMap::new();
        for (&a, &da) in x.dims() {
            for (&b, &db) in y.dims() {
                dims.insert(vec![a, b], da * db);
            }
        }
        let mut top0 = BTreeMap::new();
        let mut bot0 = BTreeMap::new();
        let mut fam1 = BTreeMap::new();
        for (&a, _) in x.dims() {
            for (&b, &db) in y.dims() {
                let idb = Matrix::identity(ring.clone(), db);
                let t = x.top_diff(a).kron(&idb).unwrap();
                if !t.is_empty() {
                    top0.insert(vec![a, b], t);
                }
                let bt = x.bot_diff(a).kron(&idb).unwrap();
                if !bt.is_empty() {
                    bot0.insert(vec![a, b], bt);
                }
                let ida = Matrix::identity(ring.clone(), x.dim(a));
                let d1 = ida.kron(&y.diff(b)).unwrap();
                if !d1.is_empty() {
                    fam1.insert(vec![a, b], d1);
                }
            }
        }
        MultiComplex::new(
            ring,
            2,
            dims,
            vec![AxisFamilies::Binary { top: top0, bot: bot0 }, AxisFamilies::Unary(fam1)],
        )
        .unwrap()
    }

    fn sample_2d() -> MultiComplex {
        let y = ChainComplex::elementary(f5(), 1, Elem::Fp(4));
        product(&sample_binary(), &y)
    }

    #[test]
    fn one_dimensional_agrees_with_binary() {
        let d = NenashevDses::new(
            f5(),
            Matrix::from_i64(&f5(), &[&[1], &[0]]),
            Matrix::from_i64(&f5(), &[&[0], &[1]]),
            Matrix::from_i64(&f5(), &[&[0, 1]]),
            Matrix::from_i64(&f5(), &[&[2, 0]]),
        )
        .unwrap();
        let b = d.embed().unwrap();
        let m = MultiComplex::from_binary(&b);
        assert!(m.validate(&Signature(vec![SigEntry::Bq])).is_ok());
        assert_eq!(m.is_axis_diagonal(0).unwrap(), b.is_diagonal());
        assert_eq!(m.to_binary().unwrap(), b);
        assert_eq!(m.axis_top(0).unwrap().line(0, Variant::Top, &vec![]), b.top());
        assert_eq!(m.axis_bot(0).unwrap().line(0, Variant::Top, &vec![]), b.bot());
    }

    #[test]
    fn product_object_validates() {
        let m = sample_2d();
        assert!(m.validate(&Signature(vec![SigEntry::Bq, SigEntry::Cq])).is_ok());
        let both = m.axis_diag(1).unwrap();
        assert!(both.validate(&Signature(vec![SigEntry::Bq, SigEntry::Bq])).is_ok());
        assert!(both.is_axis_diagonal(1).unwrap());
        assert!(!both.is_axis_diagonal(0).unwrap());
    }

    #[test]
    fn splitting_identities() {
        let m = sample_2d();
        let both = m.axis_diag(1).unwrap();
        assert_eq!(both.axis_bot(1).unwrap(), m);
        assert_eq!(both.axis_top(1).unwrap(), m);
        // axis kind errors
        assert!(m.axis_diag(0).is_err());
        assert!(m.axis_top(1).is_err());
        // distinct differentials: top and bottom restrictions differ
        let b0 = both.axis_bot(0).unwrap();
        let t0 = both.axis_top(0).unwrap();
        assert_ne!(b0, t0);
    }

    #[test]
    fn cross_axis_functors_commute() {
        let both = sample_2d().axis_diag(1).unwrap();
        let ab = both.axis_bot(0).unwrap().axis_bot(1).unwrap();
        let ba = both.axis_bot(1).unwrap().axis_bot(0).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn validation_rejects_broken_commutation() {
        let m = sample_2d();
        // negate one axis-1 matrix: commutation with axis 0 breaks
        let mut axes = m.axes().to_vec();
        if let AxisFamilies::Unary(f) = &mut axes[1] {
            let (pt, mat) = f.iter().next().map(|(p, q)| (p.clone(), q.clone())).unwrap();
            f.insert(pt, mat.neg());
        }
        let bad = MultiComplex::new(m.ring().clone(), 2, m.dims().clone(), axes).unwrap();
        let err = bad.validate(&Signature(vec![SigEntry::Bq, SigEntry::Cq])).unwrap_err();
        assert_eq!(err.rule, "axis-commutation");
    }

    #[test]
    fn validation_rejects_non_acyclic_lines() {
        // zero differentials on a 2-point lattice: lines have homology
        let dims: BTreeMap<Point, usize> = [(vec![0, 0], 1), (vec![1, 0], 1)].into();
        let m = MultiComplex::new(
            f5(),
            2,
            dims,
            vec![
                AxisFamilies::Unary(BTreeMap::new()),
                AxisFamilies::Unary(BTreeMap::new()),
            ],
        )
        .unwrap();
        let err = m.validate(&Signature(vec![SigEntry::Cq, SigEntry::Cq])).unwrap_err();
        assert_eq!(err.rule, "line-acyclic");
    }

    #[test]
    fn certifies_split_sequences_and_diagonals() {
        let x = sample_2d().axis_diag(1).unwrap();
        let z = {
            let y = ChainComplex::elementary(f5(), 1, Elem::Fp(1));
            product(&BinaryComplex::elementary(f5(), Elem::Fp(1), Elem::Fp(2)), &y)
                .axis_diag(1)
                .unwrap()
        };
        let middle = x.direct_sum(&z).unwrap();
        let ring = f5();
        let mut mono = BTreeMap::new();
        let mut epi = BTreeMap::new();
        for (pt, _) in middle.dims() {
            let (dx, dz) = (x.dim(pt), z.dim(pt));
            mono.insert(
                pt.clone(),
                Matrix::identity(ring.clone(), dx)
                    .vstack(&Matrix::zero(ring.clone(), dz, dx))
                    .unwrap(),
            );
            epi.insert(
                pt.clone(),
                Matrix::zero(ring.clone(), dz, dx)
                    .hstack(&Matrix::identity(ring.clone(), dz))
                    .unwrap(),
            );
        }
        let sig = Signature(vec![SigEntry::Bq, SigEntry::Bq]);
        let ses = MultiRelation::Ses {
            left: x.clone(),
            middle: middle.clone(),
            right: z.clone(),
            mono: MultiMap::new(mono.clone()),
            epi: MultiMap::new(epi.clone()),
        };
        assert!(certify_relation(&ses, &sig).is_ok());

        // non-exact middle: project onto the left factor instead
        let broken = MultiRelation::Ses {
            left: x.clone(),
            middle: x.clone(),
            right: z.clone(),
            mono: MultiMap::new(
                x.dims()
                    .iter()
                    .map(|(pt, &d)| (pt.clone(), Matrix::identity(ring.clone(), d)))
                    .collect(),
            ),
            epi: MultiMap::new(BTreeMap::new()),
        };
        assert!(certify_relation(&broken, &sig).is_err());

        let diag_ok = MultiRelation::Diagonal { object: x.clone(), axis: 1 };
        assert!(certify_relation(&diag_ok, &sig).is_ok());
        let diag_bad = MultiRelation::Diagonal { object: x, axis: 0 };
        let err = certify_relation(&diag_bad, &sig).unwrap_err();
        assert_eq!(err.rule, "axis-diagonal");
    }
}
