//! Olson-type certificates for product spans.
//!
//! After reducing (A, B) to a stable pair (E, F), either two cosets Ex₁, Ex₂
//! with x₁, x₂ ∈ F are independent, so dim⟨EF⟩ ≥ 2 dim E, or every quotient
//! of F lies in E_*⁻¹E and D = Fz⁻¹ is a subfield stabilizing ⟨EF⟩.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::Element;
use crate::subspace::Subspace;
use crate::transform::{in_left_quotient, reduce_pair};

use super::fields::is_field_subspace;
use super::report::{TheoremReport, Verdict};

/// Which one-sided product H fixes. In a commutative L both coincide; the
/// tag records which half of the case analysis produced H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// HS = S
    Left,
    /// SH = S
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OlsonCase {
    /// x₁x₂⁻¹ escapes the quotient set of the larger space.
    DistinctCosets { x1: Element, x2: Element },
    /// The quotients of the smaller space form the field H = z⁻¹·(smaller).
    QuotientField { z: Element },
}

impl OlsonCase {
    pub fn tag(&self) -> &'static str {
        match self {
            OlsonCase::DistinctCosets { .. } => "distinct-cosets",
            OlsonCase::QuotientField { .. } => "quotient-field",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OlsonCertificate {
    pub a: Subspace,
    pub b: Subspace,
    pub s: Subspace,
    pub h: Subspace,
    pub side: Side,
    pub case: OlsonCase,
    pub reduced: (Subspace, Subspace),
}

impl OlsonCertificate {
    /// Re-checks the certificate from scratch: H is a subfield containing K,
    /// S ⊆ ⟨AB⟩, S is fixed by H, and dim S ≥ dim A + dim B − dim H.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("Olson certificate: {what}")));
        let amb = self.a.ambient();
        if !is_field_subspace(&self.h)? {
            return fail("H is not a subfield");
        }
        if !Subspace::base_field(amb).is_subspace_of(&self.h)? {
            return fail("K ⊄ H");
        }
        let ab = self.a.product(&self.b)?;
        if !self.s.is_subspace_of(&ab)? {
            return fail("S ⊄ <AB>");
        }
        // commutative ambients: ⟨HS⟩ = ⟨SH⟩
        if self.h.product(&self.s)? != self.s {
            return fail("H does not fix S");
        }
        if self.s.dim() + self.h.dim() < self.a.dim() + self.b.dim() {
            return fail("dim S < dim A + dim B − dim H");
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let amb = self.a.ambient();
        let mut case = json!({ "tag": self.case.tag() });
        match &self.case {
            OlsonCase::DistinctCosets { x1, x2 } => {
                case["x1"] = json!(amb.format_element(x1));
                case["x2"] = json!(amb.format_element(x2));
            }
            OlsonCase::QuotientField { z } => {
                case["z"] = json!(amb.format_element(z));
            }
        }
        json!({
            "S": self.s.to_compact(),
            "H": self.h.to_compact(),
            "side": self.side,
            "case": case,
            "E": self.reduced.0.to_compact(),
            "F": self.reduced.1.to_compact(),
        })
    }
}

/// First (x₁, x₂) in enumeration order with x₁x₂⁻¹ ∉ big_*⁻¹big.
fn escaping_pair(big: &Subspace, small: &Subspace) -> Result<Option<(Element, Element)>> {
    let amb = small.ambient();
    let elems: Vec<Element> = small.enumerate_nonzero()?.collect();
    for x1 in &elems {
        for x2 in &elems {
            let d = amb.div(x1, x2)?;
            if amb.as_scalar(&d).is_some() {
                continue;
            }
            if !in_left_quotient(&d, big)? {
                return Ok(Some((x1.clone(), x2.clone())));
            }
        }
    }
    Ok(None)
}

/// Builds and verifies an Olson certificate for (A, B).
pub fn olson_linear(a: &Subspace, b: &Subspace) -> Result<OlsonCertificate> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("Olson certificate needs nonzero spaces".into()));
    }
    let red = reduce_pair(a, b)?;
    let (e, f) = (red.e, red.f);
    let amb = e.ambient().clone();
    let s = e.product(&f)?;
    // ties go to the dim E ≥ dim F branch
    let (big, small, side) = if e.dim() >= f.dim() { (&e, &f, Side::Right) } else { (&f, &e, Side::Left) };
    let (h, case) = match escaping_pair(big, small)? {
        Some((x1, x2)) => {
            let c1 = big.scale(&x1)?;
            let c2 = big.scale(&x2)?;
            if !c1.intersect(&c2)?.is_zero() {
                return Err(Error::Invariant("escaping pair gives overlapping cosets".into()));
            }
            if s.dim() < 2 * big.dim() {
                return Err(Error::Invariant("dim <EF> < 2·max(dim E, dim F)".into()));
            }
            (Subspace::base_field(&amb), OlsonCase::DistinctCosets { x1, x2 })
        }
        None => {
            let z = small.basis().into_iter().next().expect("nonzero space");
            let h = small.scale(&amb.inv(&z)?)?;
            if !is_field_subspace(&h)? {
                return Err(Error::Invariant("quotient space is not a field".into()));
            }
            (h, OlsonCase::QuotientField { z })
        }
    };
    let cert = OlsonCertificate {
        a: a.clone(),
        b: b.clone(),
        s,
        h,
        side,
        case,
        reduced: (e, f),
    };
    cert.verify()?;
    Ok(cert)
}

/// Report form of [`olson_linear`]; a failed re-verification is a violation.
pub fn check_olson_linear(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    let base = TheoremReport::for_spaces("olson-linear", &[a, b]).dim("A", a.dim()).dim("B", b.dim());
    match olson_linear(a, b) {
        Ok(cert) => Ok(base
            .dim("S", cert.s.dim())
            .dim("H", cert.h.dim())
            .with_bound((a.dim() + b.dim()) as i64 - cert.h.dim() as i64)
            .with_certificate(cert.to_json())),
        Err(Error::Invariant(msg)) => Ok(base
            .with_verdict(Verdict::Violated)
            .with_certificate(json!({ "error": msg }))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ffield::{subfield, Ambient};

    fn gf16() -> Arc<Ambient> {
        Arc::new(Ambient::parse("gf:2:4").unwrap())
    }

    #[test]
    fn singleton_base_field() {
        let a = gf16();
        let k = Subspace::base_field(&a);
        let c = olson_linear(&k, &k).unwrap();
        assert_eq!(c.s, k);
        assert_eq!(c.h, k);
    }

    #[test]
    fn line_pair_takes_the_field_case() {
        let a = gf16();
        let t = a.monomial(1).unwrap();
        let l = Subspace::span(&a, &[a.one(), t.clone()]).unwrap();
        let c = olson_linear(&l, &l).unwrap();
        let t2 = a.mul(&t, &t).unwrap();
        let e = Subspace::span(&a, &[a.one(), t, t2]).unwrap();
        assert_eq!(c.reduced, (e.clone(), Subspace::base_field(&a)));
        assert_eq!(c.case.tag(), "quotient-field");
        assert_eq!(c.h, Subspace::base_field(&a));
        assert_eq!(c.s, e);
    }

    #[test]
    fn subfield_pair() {
        let a = gf16();
        let f4 = subfield(&a, 2).unwrap();
        let c = olson_linear(&f4, &f4).unwrap();
        assert_eq!(c.reduced, (f4.clone(), f4.clone()));
        assert_eq!(c.case.tag(), "quotient-field");
        assert_eq!(c.h, f4);
        assert_eq!(c.s, f4);
    }

    #[test]
    fn rational_pair_has_trivial_h() {
        let r = Arc::new(Ambient::parse("ratfun:2:32").unwrap());
        let x = r.monomial(1).unwrap();
        let x2 = r.monomial(2).unwrap();
        let a = Subspace::span(&r, &[r.one(), x.clone()]).unwrap();
        let b = Subspace::span(&r, &[r.one(), x, x2]).unwrap();
        let c = olson_linear(&a, &b).unwrap();
        assert_eq!(c.h, Subspace::base_field(&r));
        assert!(c.s.dim() >= 4);
        let rep = check_olson_linear(&a, &b).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }
}
