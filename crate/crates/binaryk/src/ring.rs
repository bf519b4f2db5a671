//! Exact coefficient arithmetic: prime fields, finite field extensions,
//! rationals and integers.
//!
//! A [`Ring`] value carries the full description of the coefficient ring and
//! provides all arithmetic; an [`Elem`] is plain data whose meaning depends on
//! the ring it belongs to. Residues are always stored reduced: `Fp` values in
//! `0..p`, `Fq` polynomials with no trailing zero coefficients, rationals as
//! reduced fractions with positive denominator.

use num::{BigInt, BigRational, One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Prime field of order `p`.
    Fp { p: u64 },
    /// Extension field `F_p[x]/(m)` with `modulus` monic irreducible,
    /// coefficients stored low-to-high (constant term first).
    Fq { p: u64, modulus: Vec<u64> },
    /// Rational numbers.
    Q,
    /// Integers.
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Fp(u64),
    Fq(Vec<u64>),
    Q(BigRational),
    Z(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    NotPrime(u64),
    ReducibleModulus,
    BadModulus(String),
    CharMismatch { expected: u64, found: u64 },
    NotAField,
    NotZ,
    Parse { ring: String, input: String },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::NotPrime(p) => write!(f, "{p} is not prime"),
            RingError::ReducibleModulus => write!(f, "modulus is reducible"),
            RingError::BadModulus(m) => write!(f, "bad modulus: {m}"),
            RingError::CharMismatch { expected, found } => {
                write!(f, "characteristic mismatch: expected {expected}, found {found}")
            }
            RingError::NotAField => write!(f, "operation requires a field"),
            RingError::NotZ => write!(f, "operation requires the integers"),
            RingError::Parse { ring, input } => write!(f, "cannot parse {input:?} in {ring}"),
        }
    }
}

impl std::error::Error for RingError {}

// ---------------------------------------------------------------------------
// polynomial arithmetic over F_p, coefficients low-to-high
// ---------------------------------------------------------------------------

fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pmul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pinv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid in i128; p prime, a != 0 mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "element not invertible mod {p}");
    s0.rem_euclid(p as i128) as u64
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    ptrim(out)
}

fn poly_neg(a: &[u64], p: u64) -> Vec<u64> {
    ptrim(a.iter().map(|&x| (p - x % p) % p).collect())
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + pmul_mod(x, y, p)) % p;
        }
    }
    ptrim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut r = ptrim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &mk) in m.iter().enumerate() {
            let sub = pmul_mod(lead, mk, p);
            let idx = shift + k;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = ptrim(r);
    }
    r
}

/// Inverse of `a` modulo the monic irreducible `m`.
fn poly_inv(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // extended Euclid on polynomials
    let (mut r0, mut r1) = (m.to_vec(), ptrim(a.to_vec()));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut q: Vec<u64> = vec![0; rem.len().saturating_sub(r1.len()) + 1];
        let lead_inv = pinv_mod(*r1.last().unwrap(), p);
        while rem.len() >= r1.len() && !rem.is_empty() {
            let c = pmul_mod(*rem.last().unwrap(), lead_inv, p);
            let shift = rem.len() - r1.len();
            q[shift] = (q[shift] + c) % p;
            for (k, &bk) in r1.iter().enumerate() {
                let sub = pmul_mod(c, bk, p);
                rem[shift + k] = (rem[shift + k] + p - sub) % p;
            }
            rem = ptrim(rem);
        }
        let q = ptrim(q);
        let new_s = poly_add(&s0, &poly_neg(&poly_mul(&q, &s1, p), p), p);
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, new_s);
    }
    // r0 is the gcd, a unit since m is irreducible and a != 0
    assert_eq!(r0.len(), 1, "element not invertible in the extension field");
    let scale = pinv_mod(r0[0], p);
    ptrim(s0.iter().map(|&c| pmul_mod(c, scale, p)).collect())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn fp(p: u64) -> Result<Ring, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Ring::Fp { p })
    }

    /// Build `F_p[x]/(modulus)`. The modulus is reduced mod `p`, normalised to
    /// be monic, and checked for irreducibility by trial division over every
    /// lower-degree monic polynomial.
    pub fn fq(p: u64, modulus: &[u64]) -> Result<Ring, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        let mut m = ptrim(modulus.iter().map(|&c| c % p).collect());
        if m.len() < 2 {
            return Err(RingError::BadModulus(format!(
                "degree must be at least 1, got {modulus:?}"
            )));
        }
        let lead = *m.last().unwrap();
        if lead != 1 {
            let inv = pinv_mod(lead, p);
            m = m.iter().map(|&c| pmul_mod(c, inv, p)).collect();
        }
        let deg = m.len() - 1;
        // trial division by every monic polynomial of lower positive degree
        for d in 1..deg {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    g.push(k % p);
                    k /= p;
                }
                g.push(1);
                if poly_rem(&m, &g, p).is_empty() {
                    return Err(RingError::ReducibleModulus);
                }
            }
        }
        Ok(Ring::Fq { p, modulus: m })
    }

    pub fn rationals() -> Ring {
        Ring::Q
    }

    pub fn integers() -> Ring {
        Ring::Z
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Z)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Fp { p } | Ring::Fq { p, .. } => *p,
            Ring::Q | Ring::Z => 0,
        }
    }

    /// Number of elements for finite rings.
    pub fn order(&self) -> Option<u64> {
        match self {
            Ring::Fp { p } => Some(*p),
            Ring::Fq { p, modulus } => Some(p.pow((modulus.len() - 1) as u32)),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Fp { .. } => Elem::Fp(0),
            Ring::Fq { .. } => Elem::Fq(vec![]),
            Ring::Q => Elem::Q(BigRational::zero()),
            Ring::Z => Elem::Z(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Ring::Fp { .. } => Elem::Fp(1),
            Ring::Fq { .. } => Elem::Fq(vec![1]),
            Ring::Q => Elem::Q(BigRational::one()),
            Ring::Z => Elem::Z(BigInt::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Ring::Fp { p } => Elem::Fp(v.rem_euclid(*p as i64) as u64),
            Ring::Fq { p, .. } => Elem::Fq(ptrim(vec![v.rem_euclid(*p as i64) as u64])),
            Ring::Q => Elem::Q(BigRational::from_integer(BigInt::from(v))),
            Ring::Z => Elem::Z(BigInt::from(v)),
        }
    }

    /// Element of `Fq` from low-to-high coefficients.
    pub fn fq_elem(&self, coeffs: &[i64]) -> Elem {
        match self {
            Ring::Fq { p, modulus } => {
                let raw: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(*p as i64) as u64).collect();
                Elem::Fq(poly_rem(&raw, modulus, *p))
            }
            _ => panic!("fq_elem on a non-extension ring"),
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (Ring::Fp { p }, Elem::Fp(v)) => v < p,
            (Ring::Fq { p, modulus }, Elem::Fq(c)) => {
                c.len() < modulus.len() && c.last() != Some(&0) && c.iter().all(|x| x < p)
            }
            (Ring::Q, Elem::Q(_)) => true,
            (Ring::Z, Elem::Z(_)) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Fp(v) => *v == 0,
            Elem::Fq(c) => c.is_empty(),
            Elem::Q(r) => r.is_zero(),
            Elem::Z(z) => z.is_zero(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Fp { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % p),
            (Ring::Fq { p, .. }, Elem::Fq(x), Elem::Fq(y)) => Elem::Fq(poly_add(x, y, *p)),
            (Ring::Q, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Ring::Z, Elem::Z(x), Elem::Z(y)) => Elem::Z(x + y),
            _ => panic!("element does not belong to ring {self:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Ring::Fp { p }, Elem::Fp(x)) => Elem::Fp((p - x % p) % p),
            (Ring::Fq { p, .. }, Elem::Fq(x)) => Elem::Fq(poly_neg(x, *p)),
            (Ring::Q, Elem::Q(x)) => Elem::Q(-x),
            (Ring::Z, Elem::Z(x)) => Elem::Z(-x),
            _ => panic!("element does not belong to ring {self:?}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Fp { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(pmul_mod(*x, *y, *p)),
            (Ring::Fq { p, modulus }, Elem::Fq(x), Elem::Fq(y)) => {
                Elem::Fq(poly_rem(&poly_mul(x, y, *p), modulus, *p))
            }
            (Ring::Q, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Ring::Z, Elem::Z(x), Elem::Z(y)) => Elem::Z(x * y),
            _ => panic!("element does not belong to ring {self:?}"),
        }
    }

    /// Multiplicative inverse; `None` for zero or for non-units of `Z`.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Ring::Fp { p }, Elem::Fp(x)) => Some(Elem::Fp(pinv_mod(*x, *p))),
            (Ring::Fq { p, modulus }, Elem::Fq(x)) => Some(Elem::Fq(poly_inv(x, modulus, *p))),
            (Ring::Q, Elem::Q(x)) => Some(Elem::Q(x.recip())),
            (Ring::Z, Elem::Z(x)) => {
                if x.magnitude() == &BigInt::one().magnitude().clone() {
                    Some(Elem::Z(x.clone()))
                } else {
                    None
                }
            }
            _ => panic!("element does not belong to ring {self:?}"),
        }
    }

    /// Exact division; panics when the quotient does not lie in the ring.
    /// Used by fraction-free elimination, where exactness is guaranteed.
    pub fn exact_div(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Z, Elem::Z(x), Elem::Z(y)) => {
                let (q, r) = num::Integer::div_rem(x, y);
                assert!(r.is_zero(), "inexact integer division");
                Elem::Z(q)
            }
            _ => {
                let inv = self.inv(b).expect("division by zero");
                self.mul(a, &inv)
            }
        }
    }

    pub fn pow(&self, a: &Elem, mut n: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, a: &Elem, n: i64) -> Option<Elem> {
        if n >= 0 {
            Some(self.pow(a, n as u64))
        } else {
            Some(self.pow(&self.inv(a)?, (-n) as u64))
        }
    }

    /// All nonzero elements, for finite fields only.
    pub fn units(&self) -> Option<Vec<Elem>> {
        match self {
            Ring::Fp { p } => Some((1..*p).map(Elem::Fp).collect()),
            Ring::Fq { p, modulus } => {
                let e = modulus.len() - 1;
                let total = p.pow(e as u32);
                let mut out = Vec::with_capacity(total as usize - 1);
                for idx in 1..total {
                    let mut c = Vec::with_capacity(e);
                    let mut k = idx;
                    for _ in 0..e {
                        c.push(k % p);
                        k /= p;
                    }
                    out.push(Elem::Fq(ptrim(c)));
                }
                Some(out)
            }
            _ => None,
        }
    }

    // -- parsing and printing ------------------------------------------------

    pub fn parse(&self, s: &str) -> Result<Elem, RingError> {
        let s = s.trim();
        let err = || RingError::Parse { ring: self.name(), input: s.to_string() };
        match self {
            Ring::Fp { p } => {
                let v: i64 = s.parse().map_err(|_| err())?;
                Ok(Elem::Fp(v.rem_euclid(*p as i64) as u64))
            }
            Ring::Z => Ok(Elem::Z(s.parse().map_err(|_| err())?)),
            Ring::Q => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| err())?;
                    let d: BigInt = d.trim().parse().map_err(|_| err())?;
                    if d.is_zero() {
                        return Err(err());
                    }
                    Ok(Elem::Q(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().map_err(|_| err())?;
                    Ok(Elem::Q(BigRational::from_integer(n)))
                }
            }
            Ring::Fq { p, modulus } => {
                let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                if compact.is_empty() {
                    return Err(err());
                }
                if compact.starts_with('[') {
                    if !compact.ends_with(']') {
                        return Err(err());
                    }
                    let inner = &compact[1..compact.len() - 1];
                    let mut coeffs = Vec::new();
                    if !inner.is_empty() {
                        for part in inner.split(',') {
                            let v: i64 = part.parse().map_err(|_| err())?;
                            coeffs.push(v.rem_euclid(*p as i64) as u64);
                        }
                    }
                    return Ok(Elem::Fq(poly_rem(&coeffs, modulus, *p)));
                }
                // polynomial expression, terms joined by '+'
                let mut coeffs = vec![0u64; modulus.len() - 1 + 1];
                for term in compact.split('+') {
                    if term.is_empty() {
                        return Err(err());
                    }
                    let (coeff_str, expo) = match term.find('x') {
                        None => (term, None),
                        Some(ix) => {
                            let c = term[..ix].trim_end_matches('*');
                            let rest = &term[ix + 1..];
                            let k = if rest.is_empty() {
                                1usize
                            } else {
                                rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                            };
                            (c, Some(k))
                        }
                    };
                    let c: u64 = if coeff_str.is_empty() {
                        1
                    } else {
                        let v: i64 = coeff_str.parse().map_err(|_| err())?;
                        v.rem_euclid(*p as i64) as u64
                    };
                    let k = expo.unwrap_or(0);
                    if k >= coeffs.len() {
                        coeffs.resize(k + 1, 0);
                    }
                    coeffs[k] = (coeffs[k] + c) % p;
                }
                Ok(Elem::Fq(poly_rem(&coeffs, modulus, *p)))
            }
        }
    }

    /// Compact canonical string, re-parseable by [`Ring::parse`].
    pub fn format(&self, e: &Elem) -> String {
        match e {
            Elem::Fp(v) => v.to_string(),
            Elem::Z(z) => z.to_string(),
            Elem::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Fq(c) => {
                if c.is_empty() {
                    return "0".to_string();
                }
                let mut parts = Vec::new();
                for (k, &coeff) in c.iter().enumerate().rev() {
                    if coeff == 0 {
                        continue;
                    }
                    let part = match (k, coeff) {
                        (0, v) => v.to_string(),
                        (1, 1) => "x".to_string(),
                        (1, v) => format!("{v}*x"),
                        (k, 1) => format!("x^{k}"),
                        (k, v) => format!("{v}*x^{k}"),
                    };
                    parts.push(part);
                }
                parts.join("+")
            }
        }
    }

    /// Human-facing value string; prime-field residues carry their modulus.
    pub fn display_value(&self, e: &Elem) -> String {
        match self {
            Ring::Fp { p } => format!("{} mod {}", self.format(e), p),
            _ => self.format(e),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Fp { p } => format!("F{p}"),
            Ring::Fq { p, modulus } => format!("F{}^{}", p, modulus.len() - 1),
            Ring::Q => "Q".to_string(),
            Ring::Z => "Z".to_string(),
        }
    }
}

/// Image of a prime-field element under the unique unital embedding into an
/// extension field of the same characteristic.
pub fn field_embed(x: &Elem, source: &Ring, target: &Ring) -> Result<Elem, RingError> {
    match (source, target) {
        (Ring::Fp { p }, Ring::Fq { p: q, .. }) => {
            if p != q {
                return Err(RingError::CharMismatch { expected: *q, found: *p });
            }
            match x {
                Elem::Fp(v) => Ok(Elem::Fq(ptrim(vec![*v]))),
                _ => panic!("element does not belong to {source:?}"),
            }
        }
        _ => Err(RingError::CharMismatch {
            expected: target.characteristic(),
            found: source.characteristic(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Ring {
        Ring::fq(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn prime_checked_at_construction() {
        assert!(Ring::fp(5).is_ok());
        assert_eq!(Ring::fp(6), Err(RingError::NotPrime(6)));
        assert_eq!(Ring::fq(4, &[1, 1, 1]), Err(RingError::NotPrime(4)));
    }

    #[test]
    fn modulus_irreducibility_checked() {
        // x^2 + 1 = (x+1)^2 over F2
        assert_eq!(Ring::fq(2, &[1, 0, 1]), Err(RingError::ReducibleModulus));
        assert!(Ring::fq(2, &[1, 1, 1]).is_ok());
        // x^2 + 2 is irreducible over F5
        assert!(Ring::fq(5, &[2, 0, 1]).is_ok());
        // x^2 - 1 is not
        assert_eq!(Ring::fq(5, &[4, 0, 1]), Err(RingError::ReducibleModulus));
    }

    #[test]
    fn f4_multiplication_table() {
        // hand table of F2[x]/(x^2+x+1): 0, 1, x, x+1
        let r = f4();
        let zero = r.zero();
        let one = r.one();
        let x = r.fq_elem(&[0, 1]);
        let x1 = r.fq_elem(&[1, 1]);
        assert_eq!(r.mul(&x, &x), x1); // x^2 = x+1
        assert_eq!(r.mul(&x, &x1), one); // x(x+1) = x^2+x = 1
        assert_eq!(r.mul(&x1, &x1), x); // (x+1)^2 = x^2+1 = x
        assert_eq!(r.mul(&x, &zero), zero);
        assert_eq!(r.add(&x, &x), zero);
        assert_eq!(r.add(&x, &x1), one);
    }

    #[test]
    fn units_satisfy_group_exponent() {
        for ring in [Ring::fp(5).unwrap(), f4(), Ring::fq(3, &[1, 0, 1]).unwrap()] {
            let n = ring.order().unwrap() - 1;
            for u in ring.units().unwrap() {
                assert_eq!(ring.pow(&u, n), ring.one(), "unit {u:?} in {ring:?}");
                let inv = ring.inv(&u).unwrap();
                assert_eq!(ring.mul(&u, &inv), ring.one());
            }
        }
    }

    #[test]
    fn rationals_reduce() {
        let q = Ring::Q;
        let a = q.parse("4/6").unwrap();
        assert_eq!(q.format(&a), "2/3");
        let b = q.parse("-3/-9").unwrap();
        assert_eq!(q.format(&b), "1/3");
        let s = q.add(&a, &b);
        assert_eq!(q.format(&s), "1");
    }

    #[test]
    fn fq_parse_and_format_round_trip() {
        let r = Ring::fq(5, &[2, 0, 1]).unwrap();
        for s in ["0", "1", "x", "x+1", "2*x+3", "4*x", "[3,2]"] {
            let e = r.parse(s).unwrap();
            let printed = r.format(&e);
            assert_eq!(r.parse(&printed).unwrap(), e, "round trip through {printed}");
        }
        assert_eq!(r.format(&r.parse("[3,2]").unwrap()), "2*x+3");
        // reduction happens on parse: x^2 = -2 = 3
        assert_eq!(r.format(&r.parse("x^2").unwrap()), "3");
    }

    #[test]
    fn constant_embedding() {
        let f2 = Ring::fp(2).unwrap();
        let f5 = Ring::fp(5).unwrap();
        let f25 = Ring::fq(5, &[2, 0, 1]).unwrap();
        assert_eq!(field_embed(&Elem::Fp(0), &f2, &f4()).unwrap(), Elem::Fq(vec![]));
        assert_eq!(field_embed(&Elem::Fp(1), &f2, &f4()).unwrap(), Elem::Fq(vec![1]));
        assert_eq!(field_embed(&Elem::Fp(2), &f5, &f25).unwrap(), Elem::Fq(vec![2]));
        assert!(field_embed(&Elem::Fp(1), &f2, &f25).is_err());
    }

    #[test]
    fn z_units() {
        let z = Ring::Z;
        assert_eq!(z.inv(&z.from_i64(1)), Some(z.from_i64(1)));
        assert_eq!(z.inv(&z.from_i64(-1)), Some(z.from_i64(-1)));
        assert_eq!(z.inv(&z.from_i64(2)), None);
    }

    #[test]
    fn display_values() {
        let f5 = Ring::fp(5).unwrap();
        assert_eq!(f5.display_value(&Elem::Fp(3)), "3 mod 5");
        assert_eq!(Ring::Q.display_value(&Ring::Q.parse("2/7").unwrap()), "2/7");
        assert_eq!(f4().display_value(&f4().parse("x+1").unwrap()), "x+1");
    }
}
