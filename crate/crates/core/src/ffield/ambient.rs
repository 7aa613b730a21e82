use std::fmt;

use serde::{Serialize, Serializer};

use super::base::BaseField;
use super::poly::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 256;

/// An element of L, in ambient coordinates.
///
/// `Vector` is the coefficient vector (power of t ascending, length n) of an
/// element of GF(q^n); `Fraction` is a reduced quotient with monic
/// denominator in GF(q)(x).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vector(Vec<u32>),
    Fraction { num: Poly, den: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    degree: usize,
    modulus: Poly,
    /// t^(n+i) mod modulus, for i in 0..n-1.
    reduction: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientKind {
    FiniteExtension(Extension),
    RationalFunctionField { max_degree: usize },
}

/// A field extension K ⊂ L with K = GF(q): either GF(q^n) presented by the
/// canonical modulus, or the rational function field GF(q)(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    base: BaseField,
    kind: AmbientKind,
}

impl Ambient {
    /// GF(q^n) over GF(q).
    pub fn extension(q: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDegree("extension degree must be ≥ 1".into()));
        }
        let base = BaseField::new(q)?;
        let modulus = Poly::canonical_irreducible(&base, n)?;
        let mut reduction = Vec::with_capacity(n.saturating_sub(1));
        // t^n = -(lower coefficients)
        let mut cur: Vec<u32> = modulus.coeffs()[..n].iter().map(|&c| base.neg(c)).collect();
        for _ in 0..n.saturating_sub(1) {
            reduction.push(cur.clone());
            // multiply by t
            let top = cur[n - 1];
            let mut next = vec![0u32; n];
            next[1..n].copy_from_slice(&cur[..(n - 1)]);
            for (i, v) in next.iter_mut().enumerate() {
                *v = base.add(*v, base.mul(top, reduction[0][i]));
            }
            cur = next;
        }
        Ok(Ambient {
            base,
            kind: AmbientKind::FiniteExtension(Extension { degree: n, modulus, reduction }),
        })
    }

    /// GF(q)(x) over GF(q) with a cap on numerator/denominator degrees.
    pub fn rational(q: u64, max_degree: usize) -> Result<Self> {
        if max_degree == 0 {
            return Err(Error::InvalidDegree("degree cap must be ≥ 1".into()));
        }
        Ok(Ambient {
            base: BaseField::new(q)?,
            kind: AmbientKind::RationalFunctionField { max_degree },
        })
    }

    /// Parses `gf:<q>:<n>` or `ratfun:<q>:<maxdeg>`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let bad = || Error::Descriptor(descriptor.to_string());
        let parts: Vec<&str> = descriptor.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let q: u64 = parts[1].parse().map_err(|_| bad())?;
        let n: usize = parts[2].parse().map_err(|_| bad())?;
        match parts[0] {
            "gf" => Self::extension(q, n),
            "ratfun" => Self::rational(q, n),
            _ => Err(bad()),
        }
    }

    pub fn descriptor(&self) -> String {
        match &self.kind {
            AmbientKind::FiniteExtension(e) => format!("gf:{}:{}", self.base.order(), e.degree),
            AmbientKind::RationalFunctionField { max_degree } => {
                format!("ratfun:{}:{}", self.base.order(), max_degree)
            }
        }
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.kind, AmbientKind::FiniteExtension(_))
    }

    /// n = dim_K L for GF(q^n); `None` for the rational function field.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            AmbientKind::FiniteExtension(e) => Some(e.degree),
            AmbientKind::RationalFunctionField { .. } => None,
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match &self.kind {
            AmbientKind::FiniteExtension(e) => Some(&e.modulus),
            AmbientKind::RationalFunctionField { .. } => None,
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        match &self.kind {
            AmbientKind::FiniteExtension(_) => None,
            AmbientKind::RationalFunctionField { max_degree } => Some(*max_degree),
        }
    }

    pub fn var(&self) -> char {
        if self.is_extension() {
            't'
        } else {
            'x'
        }
    }

    pub fn zero(&self) -> Element {
        self.scalar(0)
    }

    pub fn one(&self) -> Element {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> Element {
        match &self.kind {
            AmbientKind::FiniteExtension(e) => {
                let mut v = vec![0; e.degree];
                v[0] = c;
                Element::Vector(v)
            }
            AmbientKind::RationalFunctionField { .. } => Element::Fraction {
                num: Poly::constant(c),
                den: Poly::one(),
            },
        }
    }

    /// t^k reduced in GF(q^n), or x^k in GF(q)(x).
    pub fn monomial(&self, k: usize) -> Result<Element> {
        match &self.kind {
            AmbientKind::FiniteExtension(_) => {
                self.from_poly(&Poly::monomial(k))
            }
            AmbientKind::RationalFunctionField { max_degree } => {
                if k > *max_degree {
                    return Err(Error::DegreeCap { cap: *max_degree, needed: k });
                }
                Ok(Element::Fraction { num: Poly::monomial(k), den: Poly::one() })
            }
        }
    }

    /// The image of a polynomial: reduced mod the modulus, or as a fraction over 1.
    pub fn from_poly(&self, p: &Poly) -> Result<Element> {
        match &self.kind {
            AmbientKind::FiniteExtension(e) => {
                let r = p.rem(&e.modulus, &self.base);
                let mut v = r.into_coeffs();
                v.resize(e.degree, 0);
                Ok(Element::Vector(v))
            }
            AmbientKind::RationalFunctionField { .. } => self.fraction(p.clone(), Poly::one()),
        }
    }

    /// Reduced fraction num/den in the rational ambient.
    pub fn fraction(&self, num: Poly, den: Poly) -> Result<Element> {
        let AmbientKind::RationalFunctionField { max_degree } = self.kind else {
            return Err(Error::Precondition("fractions live in the rational ambient".into()));
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.base;
        let (num, den) = if num.is_zero() {
            (Poly::zero(), Poly::one())
        } else {
            let g = num.gcd(&den, k);
            let (num, den) = (num.exact_div(&g, k), den.exact_div(&g, k));
            let c = k.inv(den.lead());
            (num.scale(c, k), den.scale(c, k))
        };
        let needed = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        if needed > max_degree {
            return Err(Error::DegreeCap { cap: max_degree, needed });
        }
        Ok(Element::Fraction { num, den })
    }

    /// Checks that `e` has the shape of an element of this ambient.
    pub fn check(&self, e: &Element) -> Result<()> {
        let ok = match (&self.kind, e) {
            (AmbientKind::FiniteExtension(x), Element::Vector(v)) => {
                v.len() == x.degree && v.iter().all(|&c| c < self.base.order())
            }
            (AmbientKind::RationalFunctionField { .. }, Element::Fraction { num, den }) => {
                let k = &self.base;
                !den.is_zero()
                    && den.lead() == 1
                    && num.gcd(den, k).is_one()
                    && (!num.is_zero() || den.is_one())
                    && num.coeffs().iter().chain(den.coeffs()).all(|&c| c < k.order())
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ForeignElement(format!("{e:?} in {}", self.descriptor())))
        }
    }

    pub fn is_zero(&self, e: &Element) -> bool {
        match e {
            Element::Vector(v) => v.iter().all(|&c| c == 0),
            Element::Fraction { num, .. } => num.is_zero(),
        }
    }

    /// `Some(c)` when `e` is the scalar c ∈ K.
    pub fn as_scalar(&self, e: &Element) -> Option<u32> {
        match e {
            Element::Vector(v) => v[1..].iter().all(|&c| c == 0).then_some(v[0]),
            Element::Fraction { num, den } => {
                (den.is_one() && num.degree().unwrap_or(0) == 0).then(|| num.coeff(0))
            }
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let k = &self.base;
        match (a, b) {
            (Element::Vector(x), Element::Vector(y)) => {
                Ok(Element::Vector(x.iter().zip(y).map(|(&u, &v)| k.add(u, v)).collect()))
            }
            (Element::Fraction { num: a, den: b }, Element::Fraction { num: c, den: d }) => {
                if b == d {
                    return self.fraction(a.add(c, k), b.clone());
                }
                self.fraction(a.mul(d, k).add(&c.mul(b, k), k), b.mul(d, k))
            }
            _ => Err(Error::MixedAmbients),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.scale(self.base.neg(1), a)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.add(a, &self.neg(b))
    }

    /// c·a for c ∈ K.
    pub fn scale(&self, c: u32, a: &Element) -> Element {
        let k = &self.base;
        match a {
            Element::Vector(v) => Element::Vector(v.iter().map(|&u| k.mul(u, c)).collect()),
            Element::Fraction { num, den } => {
                if c == 0 {
                    self.zero()
                } else {
                    Element::Fraction { num: num.scale(c, k), den: den.clone() }
                }
            }
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let k = &self.base;
        match (&self.kind, a, b) {
            (AmbientKind::FiniteExtension(e), Element::Vector(x), Element::Vector(y)) => {
                Ok(Element::Vector(e.mul(x, y, k)))
            }
            (
                AmbientKind::RationalFunctionField { .. },
                Element::Fraction { num: a, den: b },
                Element::Fraction { num: c, den: d },
            ) => self.fraction(a.mul(c, k), b.mul(d, k)),
            _ => Err(Error::MixedAmbients),
        }
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let k = &self.base;
        match (&self.kind, a) {
            (AmbientKind::FiniteExtension(e), Element::Vector(x)) => {
                let p = Poly::from_coeffs(x.clone());
                let inv = p
                    .inverse_mod(&e.modulus, k)
                    .ok_or_else(|| Error::Invariant("modulus is not irreducible".into()))?;
                let mut v = inv.into_coeffs();
                v.resize(e.degree, 0);
                Ok(Element::Vector(v))
            }
            (AmbientKind::RationalFunctionField { .. }, Element::Fraction { num, den }) => {
                self.fraction(den.clone(), num.clone())
            }
            _ => Err(Error::MixedAmbients),
        }
    }

    pub fn div(&self, a: &Element, b: &Element) -> Result<Element> {
        self.mul(a, &self.inv(b)?)
    }

    pub fn pow(&self, a: &Element, mut e: u128) -> Result<Element> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Element text: comma-separated coefficients, or `num/den`.
    pub fn format_element(&self, e: &Element) -> String {
        match e {
            Element::Vector(v) => v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
            Element::Fraction { num, den } => format!("{}/{}", num.format('x'), den.format('x')),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        match &self.kind {
            AmbientKind::FiniteExtension(x) => {
                let v: Vec<u32> = s
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad coefficient list `{s}`")))?;
                if v.len() != x.degree {
                    return Err(Error::Parse(format!("expected {} coefficients in `{s}`", x.degree)));
                }
                let e = Element::Vector(v);
                self.check(&e)?;
                Ok(e)
            }
            AmbientKind::RationalFunctionField { .. } => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num = Poly::parse(num, 'x', &self.base)?;
                let den = Poly::parse(den, 'x', &self.base)?;
                self.fraction(num, den)
            }
        }
    }
}

impl Extension {
    pub fn degree(&self) -> usize {
        self.degree
    }

    fn mul(&self, x: &[u32], y: &[u32], k: &BaseField) -> Vec<u32> {
        let n = self.degree;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    prod[i + j] = k.add(prod[i + j], k.mul(a, b));
                }
            }
        }
        let (low, high) = prod.split_at_mut(n);
        for (i, &c) in high.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (l, &r) in low.iter_mut().zip(&self.reduction[i]) {
                *l = k.add(*l, k.mul(c, r));
            }
        }
        low.to_vec()
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl Serialize for Ambient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u32]) -> Element {
        Element::Vector(c.to_vec())
    }

    #[test]
    fn descriptors() {
        let a = Ambient::parse("gf:2:1").unwrap();
        assert_eq!(a.modulus().unwrap().coeffs(), &[0, 1]);
        let a = Ambient::parse("gf:2:4").unwrap();
        assert_eq!(a.modulus().unwrap().coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(a.descriptor(), "gf:2:4");
        let r = Ambient::parse("ratfun:2:64").unwrap();
        assert_eq!(r.max_degree(), Some(64));
        assert_eq!(r.descriptor(), "ratfun:2:64");
        assert!(matches!(Ambient::parse("gf:6:2"), Err(Error::NotPrimePower(6))));
        assert!(Ambient::parse("ratfun:2:0").is_err());
        assert!(Ambient::parse("gf:2:0").is_err());
        assert!(Ambient::parse("gf:2").is_err());
        assert!(Ambient::parse("poly:2:3").is_err());
        assert_eq!(Ambient::parse("gf:3:3").unwrap(), Ambient::parse("gf:3:3").unwrap());
    }

    #[test]
    fn gf4_and_gf16_products() {
        let gf4 = Ambient::parse("gf:2:2").unwrap();
        let t = v(&[0, 1]);
        assert_eq!(gf4.mul(&t, &t).unwrap(), v(&[1, 1]));
        assert_eq!(gf4.inv(&t).unwrap(), v(&[1, 1]));
        assert_eq!(gf4.inv(&gf4.one()).unwrap(), gf4.one());

        let gf16 = Ambient::parse("gf:2:4").unwrap();
        let t = v(&[0, 1, 0, 0]);
        assert_eq!(gf16.inv(&t).unwrap(), v(&[1, 0, 0, 1]));
        assert_eq!(gf16.pow(&t, 4).unwrap(), v(&[1, 1, 0, 0]));
        assert_eq!(gf16.pow(&t, 15).unwrap(), gf16.one());
        assert!(matches!(gf16.inv(&gf16.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_products_stay_reduced() {
        let r = Ambient::parse("ratfun:2:64").unwrap();
        let x = r.monomial(1).unwrap();
        let xinv = r.inv(&x).unwrap();
        assert_eq!(r.format_element(&xinv), "1/x");
        assert_eq!(r.mul(&xinv, &x).unwrap(), r.one());
        let e = r.parse_element("x^2+1/x+1").unwrap();
        // (x+1)^2/(x+1) = x+1 in characteristic 2
        assert_eq!(r.format_element(&e), "x+1/1");
        let r3 = Ambient::parse("ratfun:3:8").unwrap();
        let e = r3.parse_element("x/2x+2").unwrap();
        assert_eq!(r3.format_element(&e), "2x/x+1");
        r3.check(&e).unwrap();
    }

    #[test]
    fn rational_degree_cap_fails_loudly() {
        let r = Ambient::parse("ratfun:2:4").unwrap();
        let x = r.monomial(3).unwrap();
        assert!(matches!(r.mul(&x, &x), Err(Error::DegreeCap { cap: 4, needed: 6 })));
        assert!(r.monomial(5).is_err());
    }

    #[test]
    fn element_text_roundtrip() {
        let a = Ambient::parse("gf:3:3").unwrap();
        let e = v(&[2, 0, 1]);
        assert_eq!(a.parse_element(&a.format_element(&e)).unwrap(), e);
        assert!(a.parse_element("1,2").is_err());
        assert!(a.parse_element("1,2,3").is_err());
    }
}
