//! JSON wire formats for every object the command line accepts or emits.
//!
//! Matrices travel as row-major arrays of strings parsed exactly in the
//! declared ring ("2/3" over the rationals, "x+1" in extension fields).
//! Degrees are string keys, omitted degrees are zero. Axis indices of
//! multicomplexes are 0-based.

use crate::binary::{BinaryComplex, GradedMap, NenashevDses};
use crate::complex::{ChainComplex, ChainMap, ComplexError};
use crate::matrix::{MatError, Matrix};
use crate::multicomplex::{AxisFamilies, MultiComplex, Point, SigEntry, Signature};
use crate::relative::{FunctorSpec, RelRelation, RelTriple, TripleMorphism};
use crate::ring::{Elem, Ring, RingError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug)]
pub enum PayloadError {
    Schema(String),
    Ring(RingError),
    Matrix(MatError),
    Complex(ComplexError),
}

impl fmt::Display for PayloadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PayloadError::Schema(s) => write!(f, "schema error: {s}"),
            PayloadError::Ring(e) => write!(f, "ring error: {e}"),
            PayloadError::Matrix(e) => write!(f, "matrix error: {e}"),
            PayloadError::Complex(e) => write!(f, "complex error: {e}"),
        }
    }
}

impl std::error::Error for PayloadError {}

impl From<RingError> for PayloadError {
    fn from(e: RingError) -> Self {
        PayloadError::Ring(e)
    }
}

impl From<MatError> for PayloadError {
    fn from(e: MatError) -> Self {
        PayloadError::Matrix(e)
    }
}

impl From<ComplexError> for PayloadError {
    fn from(e: ComplexError) -> Self {
        PayloadError::Complex(e)
    }
}

fn schema(msg: impl Into<String>) -> PayloadError {
    PayloadError::Schema(msg.into())
}

// ---------------------------------------------------------------------------
// ring and matrix descriptors
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ring")]
pub enum RingDesc {
    Fp { p: u64 },
    Fq { p: u64, modulus: Vec<u64> },
    Q,
    Z,
}

impl RingDesc {
    pub fn to_ring(&self) -> Result<Ring, PayloadError> {
        Ok(match self {
            RingDesc::Fp { p } => Ring::fp(*p)?,
            RingDesc::Fq { p, modulus } => Ring::fq(*p, modulus)?,
            RingDesc::Q => Ring::Q,
            RingDesc::Z => Ring::Z,
        })
    }

    pub fn from_ring(ring: &Ring) -> RingDesc {
        match ring {
            Ring::Fp { p } => RingDesc::Fp { p: *p },
            Ring::Fq { p, modulus } => RingDesc::Fq { p: *p, modulus: modulus.clone() },
            Ring::Q => RingDesc::Q,
            Ring::Z => RingDesc::Z,
        }
    }
}

pub type MatrixRows = Vec<Vec<String>>;

fn parse_matrix(ring: &Ring, rows: &MatrixRows) -> Result<Matrix, PayloadError> {
    let mut data = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(row.len());
        for s in row {
            out.push(ring.parse(s)?);
        }
        data.push(out);
    }
    Ok(Matrix::from_rows(ring.clone(), data)?)
}

fn format_matrix(m: &Matrix) -> MatrixRows {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.ring().format(m.at(i, j))).collect())
        .collect()
}

fn parse_degree(key: &str) -> Result<i64, PayloadError> {
    key.parse().map_err(|_| schema(format!("degree key {key:?} is not an integer")))
}

fn parse_graded_matrices(
    ring: &Ring,
    d: &BTreeMap<String, MatrixRows>,
) -> Result<BTreeMap<i64, Matrix>, PayloadError> {
    let mut out = BTreeMap::new();
    for (key, rows) in d {
        out.insert(parse_degree(key)?, parse_matrix(ring, rows)?);
    }
    Ok(out)
}

fn format_graded_matrices(d: &BTreeMap<i64, Matrix>) -> BTreeMap<String, MatrixRows> {
    d.iter().map(|(n, m)| (n.to_string(), format_matrix(m))).collect()
}

fn parse_degrees(degrees: &BTreeMap<String, usize>) -> Result<BTreeMap<i64, usize>, PayloadError> {
    let mut out = BTreeMap::new();
    for (key, &dim) in degrees {
        out.insert(parse_degree(key)?, dim);
    }
    Ok(out)
}

fn format_degrees(dims: &BTreeMap<i64, usize>) -> BTreeMap<String, usize> {
    dims.iter().map(|(n, &d)| (n.to_string(), d)).collect()
}

// ---------------------------------------------------------------------------
// payload bodies
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexBody {
    pub ring: RingDesc,
    #[serde(default)]
    pub degrees: BTreeMap<String, usize>,
    #[serde(default)]
    pub d: BTreeMap<String, MatrixRows>,
}

impl ComplexBody {
    pub fn to_complex(&self) -> Result<ChainComplex, PayloadError> {
        let ring = self.ring.to_ring()?;
        let dims = parse_degrees(&self.degrees)?;
        let diffs = parse_graded_matrices(&ring, &self.d)?;
        Ok(ChainComplex::new(ring, dims, diffs)?)
    }

    pub fn from_complex(c: &ChainComplex) -> ComplexBody {
        ComplexBody {
            ring: RingDesc::from_ring(c.ring()),
            degrees: format_degrees(c.dims()),
            d: format_graded_matrices(c.stored_diffs()),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RowsBody {
    #[serde(default)]
    pub d: BTreeMap<String, MatrixRows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BinaryBody {
    pub ring: RingDesc,
    #[serde(default)]
    pub degrees: BTreeMap<String, usize>,
    pub top: RowsBody,
    pub bot: RowsBody,
}

impl BinaryBody {
    pub fn to_binary(&self) -> Result<BinaryComplex, PayloadError> {
        let ring = self.ring.to_ring()?;
        let dims = parse_degrees(&self.degrees)?;
        let top = parse_graded_matrices(&ring, &self.top.d)?;
        let bot = parse_graded_matrices(&ring, &self.bot.d)?;
        Ok(BinaryComplex::new(ring, dims, top, bot)?)
    }

    pub fn from_binary(b: &BinaryComplex) -> BinaryBody {
        BinaryBody {
            ring: RingDesc::from_ring(b.ring()),
            degrees: format_degrees(b.dims()),
            top: RowsBody { d: format_graded_matrices(b.top().stored_diffs()) },
            bot: RowsBody { d: format_graded_matrices(b.bot().stored_diffs()) },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DsesBody {
    pub ring: RingDesc,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    #[serde(rename = "C")]
    pub c: usize,
    pub i: MatrixRows,
    pub j: MatrixRows,
    pub p: MatrixRows,
    pub q: MatrixRows,
}

impl DsesBody {
    pub fn to_dses(&self) -> Result<NenashevDses, PayloadError> {
        let ring = self.ring.to_ring()?;
        let i = parse_matrix(&ring, &self.i)?;
        let j = parse_matrix(&ring, &self.j)?;
        let p = parse_matrix(&ring, &self.p)?;
        let q = parse_matrix(&ring, &self.q)?;
        let shape_ok = i.rows() == self.b
            && i.cols() == self.a
            && p.rows() == self.c
            && p.cols() == self.b;
        if !shape_ok {
            return Err(schema("matrix shapes disagree with the stated dimensions A, B, C"));
        }
        Ok(NenashevDses::new(ring, i, j, p, q)?)
    }

    pub fn from_dses(d: &NenashevDses) -> DsesBody {
        DsesBody {
            ring: RingDesc::from_ring(&d.ring),
            a: d.dim_a(),
            b: d.dim_b(),
            c: d.dim_c(),
            i: format_matrix(&d.i),
            j: format_matrix(&d.j),
            p: format_matrix(&d.p),
            q: format_matrix(&d.q),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportEntry {
    pub pt: Vec<i64>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiffEntry {
    pub axis: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub pt: Vec<i64>,
    pub m: MatrixRows,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiBody {
    pub ring: RingDesc,
    pub n: usize,
    pub signature: Vec<String>,
    #[serde(default)]
    pub support: Vec<SupportEntry>,
    #[serde(default)]
    pub d: Vec<DiffEntry>,
}

fn parse_signature(entries: &[String]) -> Result<Signature, PayloadError> {
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        out.push(match e.as_str() {
            "Bq" => SigEntry::Bq,
            "Cq" => SigEntry::Cq,
            other => return Err(schema(format!("signature entry {other:?}, expected Bq or Cq"))),
        });
    }
    Ok(Signature(out))
}

fn format_signature(sig: &Signature) -> Vec<String> {
    sig.0
        .iter()
        .map(|e| match e {
            SigEntry::Bq => "Bq".to_string(),
            SigEntry::Cq => "Cq".to_string(),
        })
        .collect()
}

impl MultiBody {
    pub fn to_multicomplex(&self) -> Result<(MultiComplex, Signature), PayloadError> {
        let ring = self.ring.to_ring()?;
        let sig = parse_signature(&self.signature)?;
        if sig.len() != self.n {
            return Err(schema(format!(
                "signature has {} entries for dimension {}",
                sig.len(),
                self.n
            )));
        }
        let mut dims: BTreeMap<Point, usize> = BTreeMap::new();
        for entry in &self.support {
            if entry.pt.len() != self.n {
                return Err(schema(format!("support point {:?} has wrong arity", entry.pt)));
            }
            dims.insert(entry.pt.clone(), entry.dim);
        }
        // families per axis, kinds from the signature
        let mut tops: Vec<BTreeMap<Point, Matrix>> = vec![BTreeMap::new(); self.n];
        let mut bots: Vec<BTreeMap<Point, Matrix>> = vec![BTreeMap::new(); self.n];
        for entry in &self.d {
            if entry.axis >= self.n {
                return Err(schema(format!("axis {} out of range", entry.axis)));
            }
            if entry.pt.len() != self.n {
                return Err(schema(format!("differential point {:?} has wrong arity", entry.pt)));
            }
            let m = parse_matrix(&ring, &entry.m)?;
            let binary = sig.0[entry.axis] == SigEntry::Bq;
            match (entry.variant.as_deref(), binary) {
                (Some("top") | None, false) => {
                    tops[entry.axis].insert(entry.pt.clone(), m);
                }
                (Some("top"), true) => {
                    tops[entry.axis].insert(entry.pt.clone(), m);
                }
                (Some("bot"), true) => {
                    bots[entry.axis].insert(entry.pt.clone(), m);
                }
                (Some(other), _) => {
                    return Err(schema(format!("variant {other:?}, expected top or bot")));
                }
                (None, true) => {
                    return Err(schema(format!(
                        "axis {} is binary, a variant is required",
                        entry.axis
                    )));
                }
            }
        }
        let mut axes = Vec::with_capacity(self.n);
        for (axis, entry) in sig.0.iter().enumerate() {
            axes.push(match entry {
                SigEntry::Cq => AxisFamilies::Unary(std::mem::take(&mut tops[axis])),
                SigEntry::Bq => AxisFamilies::Binary {
                    top: std::mem::take(&mut tops[axis]),
                    bot: std::mem::take(&mut bots[axis]),
                },
            });
        }
        let mc = MultiComplex::new(ring, self.n, dims, axes)?;
        Ok((mc, sig))
    }

    pub fn from_multicomplex(m: &MultiComplex, sig: &Signature) -> MultiBody {
        let support = m
            .dims()
            .iter()
            .map(|(pt, &dim)| SupportEntry { pt: pt.clone(), dim })
            .collect();
        let mut d = Vec::new();
        for (axis, fams) in m.axes().iter().enumerate() {
            match fams {
                AxisFamilies::Unary(f) => {
                    for (pt, mat) in f {
                        d.push(DiffEntry {
                            axis,
                            variant: None,
                            pt: pt.clone(),
                            m: format_matrix(mat),
                        });
                    }
                }
                AxisFamilies::Binary { top, bot } => {
                    for (pt, mat) in top {
                        d.push(DiffEntry {
                            axis,
                            variant: Some("top".to_string()),
                            pt: pt.clone(),
                            m: format_matrix(mat),
                        });
                    }
                    for (pt, mat) in bot {
                        d.push(DiffEntry {
                            axis,
                            variant: Some("bot".to_string()),
                            pt: pt.clone(),
                            m: format_matrix(mat),
                        });
                    }
                }
            }
        }
        MultiBody {
            ring: RingDesc::from_ring(m.ring()),
            n: m.dimension(),
            signature: format_signature(sig),
            support,
            d,
        }
    }
}

// ---------------------------------------------------------------------------
// functors, triples, relations
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "functor", rename_all = "snake_case")]
pub enum FunctorBody {
    BaseChange { source: RingDesc, target: RingDesc },
    Identity { ring: RingDesc },
}

impl FunctorBody {
    pub fn to_functor(&self) -> Result<FunctorSpec, PayloadError> {
        Ok(match self {
            FunctorBody::BaseChange { source, target } => {
                FunctorSpec::base_change(source.to_ring()?, target.to_ring()?)
            }
            FunctorBody::Identity { ring } => FunctorSpec::identity(ring.to_ring()?),
        })
    }

    pub fn from_functor(f: &FunctorSpec) -> FunctorBody {
        match f {
            FunctorSpec::BaseChange { source, target } => FunctorBody::BaseChange {
                source: RingDesc::from_ring(source),
                target: RingDesc::from_ring(target),
            },
            FunctorSpec::Identity { ring } => {
                FunctorBody::Identity { ring: RingDesc::from_ring(ring) }
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MapBody {
    #[serde(default)]
    pub f: BTreeMap<String, MatrixRows>,
}

impl MapBody {
    fn to_components(&self, ring: &Ring) -> Result<BTreeMap<i64, Matrix>, PayloadError> {
        parse_graded_matrices(ring, &self.f)
    }

    fn from_components(comps: &BTreeMap<i64, Matrix>) -> MapBody {
        MapBody { f: format_graded_matrices(comps) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleCore {
    pub m_plus: ComplexBody,
    pub m_minus: ComplexBody,
    pub n: BinaryBody,
    pub u_plus: MapBody,
    pub u_minus: MapBody,
}

impl TripleCore {
    pub fn to_triple(&self, f: &FunctorSpec) -> Result<RelTriple, PayloadError> {
        let m_plus = self.m_plus.to_complex()?;
        let m_minus = self.m_minus.to_complex()?;
        let n = self.n.to_binary()?;
        let target = f.target();
        let u_plus = ChainMap::new(
            f.apply_complex(&m_plus),
            n.top(),
            self.u_plus.to_components(target)?,
        )?;
        let u_minus = ChainMap::new(
            f.apply_complex(&m_minus),
            n.bot(),
            self.u_minus.to_components(target)?,
        )?;
        Ok(RelTriple { m_plus, m_minus, n, u_plus, u_minus })
    }

    pub fn from_triple(t: &RelTriple) -> TripleCore {
        TripleCore {
            m_plus: ComplexBody::from_complex(&t.m_plus),
            m_minus: ComplexBody::from_complex(&t.m_minus),
            n: BinaryBody::from_binary(&t.n),
            u_plus: MapBody::from_components(t.u_plus.components()),
            u_minus: MapBody::from_components(t.u_minus.components()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleBody {
    pub functor: FunctorBody,
    #[serde(flatten)]
    pub core: TripleCore,
}

impl TripleBody {
    pub fn to_triple(&self) -> Result<(RelTriple, FunctorSpec), PayloadError> {
        let f = self.functor.to_functor()?;
        Ok((self.core.to_triple(&f)?, f))
    }

    pub fn from_triple(t: &RelTriple, f: &FunctorSpec) -> TripleBody {
        TripleBody { functor: FunctorBody::from_functor(f), core: TripleCore::from_triple(t) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismBody {
    #[serde(default)]
    pub phi_plus: MapBody,
    #[serde(default)]
    pub phi_minus: MapBody,
    #[serde(default)]
    pub psi: MapBody,
}

impl MorphismBody {
    pub fn to_morphism(&self, f: &FunctorSpec) -> Result<TripleMorphism, PayloadError> {
        Ok(TripleMorphism {
            phi_plus: GradedMap::new(self.phi_plus.to_components(f.source())?),
            phi_minus: GradedMap::new(self.phi_minus.to_components(f.source())?),
            psi: GradedMap::new(self.psi.to_components(f.target())?),
        })
    }

    pub fn from_morphism(m: &TripleMorphism) -> MorphismBody {
        MorphismBody {
            phi_plus: MapBody::from_components(m.phi_plus.components()),
            phi_minus: MapBody::from_components(m.phi_minus.components()),
            psi: MapBody::from_components(m.psi.components()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum RelationKind {
    Ses {
        left: TripleCore,
        middle: TripleCore,
        right: TripleCore,
        mono: MorphismBody,
        epi: MorphismBody,
    },
    Diagonal { triple: TripleCore },
    WeakEquiv { source: TripleCore, target: TripleCore, map: MorphismBody },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationBody {
    pub functor: FunctorBody,
    #[serde(flatten)]
    pub relation: RelationKind,
}

impl RelationBody {
    pub fn to_relation(&self) -> Result<(RelRelation, FunctorSpec), PayloadError> {
        let f = self.functor.to_functor()?;
        let relation = match &self.relation {
            RelationKind::Ses { left, middle, right, mono, epi } => RelRelation::Ses {
                left: left.to_triple(&f)?,
                middle: middle.to_triple(&f)?,
                right: right.to_triple(&f)?,
                mono: mono.to_morphism(&f)?,
                epi: epi.to_morphism(&f)?,
            },
            RelationKind::Diagonal { triple } => RelRelation::Diagonal(triple.to_triple(&f)?),
            RelationKind::WeakEquiv { source, target, map } => RelRelation::WeakEquiv {
                source: source.to_triple(&f)?,
                target: target.to_triple(&f)?,
                map: map.to_morphism(&f)?,
            },
        };
        Ok((relation, f))
    }

    pub fn from_relation(r: &RelRelation, f: &FunctorSpec) -> RelationBody {
        let relation = match r {
            RelRelation::Ses { left, middle, right, mono, epi } => RelationKind::Ses {
                left: TripleCore::from_triple(left),
                middle: TripleCore::from_triple(middle),
                right: TripleCore::from_triple(right),
                mono: MorphismBody::from_morphism(mono),
                epi: MorphismBody::from_morphism(epi),
            },
            RelRelation::Diagonal(t) => RelationKind::Diagonal { triple: TripleCore::from_triple(t) },
            RelRelation::WeakEquiv { source, target, map } => RelationKind::WeakEquiv {
                source: TripleCore::from_triple(source),
                target: TripleCore::from_triple(target),
                map: MorphismBody::from_morphism(map),
            },
        };
        RelationBody { functor: FunctorBody::from_functor(f), relation }
    }
}

// ---------------------------------------------------------------------------
// the dispatching envelope
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Complex(ComplexBody),
    Binary(BinaryBody),
    Multicomplex(MultiBody),
    Dses(DsesBody),
    Triple(TripleBody),
    Relation(RelationBody),
}

impl Payload {
    pub fn from_json(text: &str) -> Result<Payload, PayloadError> {
        serde_json::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("payloads serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Complex(_) => "complex",
            Payload::Binary(_) => "binary",
            Payload::Multicomplex(_) => "multicomplex",
            Payload::Dses(_) => "dses",
            Payload::Triple(_) => "triple",
            Payload::Relation(_) => "relation",
        }
    }
}

/// Parse an element of the declared ring from a free-standing string, for
/// command line value arguments.
pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem, PayloadError> {
    Ok(ring.parse(s)?)
}
