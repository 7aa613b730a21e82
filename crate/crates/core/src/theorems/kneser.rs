//! Kneser-type lower bounds for dim⟨AB⟩ and the full-product criterion.

use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::{Ambient, Element};
use crate::subspace::Subspace;

use super::fields::stabilizer;
use super::olson::olson_linear;
use super::report::{TheoremReport, Verdict};

fn require_nonzero(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        Err(Error::Precondition("A and B must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// dim⟨AB⟩ ≥ dim A + dim B − dim H with H the stabilizer of ⟨AB⟩.
pub fn check_kneser_linear(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    require_nonzero(a, b)?;
    let ab = a.product(b)?;
    let h = stabilizer(&ab)?;
    let bound = (a.dim() + b.dim()) as i64 - h.dim() as i64;
    Ok(TheoremReport::for_spaces("kneser-linear", &[a, b])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .dim("AB", ab.dim())
        .dim("H", h.dim())
        .with_bound(bound)
        .with_verdict(Verdict::from_bool(ab.dim() as i64 >= bound))
        .with_certificate(json!({ "H": h.to_compact() })))
}

/// In GF(q^n) with n prime: ⟨AB⟩ = L or dim⟨AB⟩ ≥ dim A + dim B − 1.
pub fn check_prime_degree(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    require_nonzero(a, b)?;
    let n = a
        .ambient()
        .degree()
        .ok_or_else(|| Error::Precondition("prime-degree check needs a finite extension".into()))?;
    let report = TheoremReport::for_spaces("prime-degree", &[a, b]).dim("A", a.dim()).dim("B", b.dim());
    if n < 2 || (2..n).any(|p| n % p == 0) {
        return Ok(report.with_verdict(Verdict::NotApplicable));
    }
    let ab = a.product(b)?;
    let bound = (a.dim() + b.dim()) as i64 - 1;
    let full = ab.dim() == n;
    Ok(report
        .dim("AB", ab.dim())
        .with_bound(bound)
        .with_verdict(Verdict::from_bool(full || ab.dim() as i64 >= bound))
        .with_certificate(json!({ "full": full })))
}

fn apply(phi: &[u32], x: &Element, amb: &Ambient) -> u32 {
    let k = amb.base();
    match x {
        Element::Vector(v) => v.iter().zip(phi).fold(0, |acc, (&c, &f)| k.add(acc, k.mul(c, f))),
        Element::Fraction { .. } => unreachable!("finite extensions only"),
    }
}

/// (a, b) ∈ A × B with φ(ab) ≠ 0, for a functional φ given by its values on
/// the coordinate basis 1, t, …, t^{n−1}. Basis rows of A are scanned in
/// order, each against the basis rows of B.
pub fn duality_witness(a: &Subspace, b: &Subspace, phi: &[u32]) -> Result<(Element, Element)> {
    let amb = a.ambient();
    let n = amb
        .degree()
        .ok_or_else(|| Error::Precondition("duality witnesses need a finite extension".into()))?;
    if phi.len() != n || phi.iter().all(|&c| c == 0) {
        return Err(Error::Precondition("φ must be a nonzero vector of length n".into()));
    }
    if a.dim() + b.dim() <= n {
        return Err(Error::Precondition("dim A + dim B must exceed n".into()));
    }
    let bs = b.basis();
    for x in a.basis() {
        for y in &bs {
            if apply(phi, &amb.mul(&x, y)?, amb) != 0 {
                return Ok((x, y.clone()));
            }
        }
    }
    Err(Error::Invariant("no duality witness although dim A + dim B > n".into()))
}

/// dim A + dim B > n ⇒ ⟨AB⟩ = L; also finds a duality witness for each of
/// the n coordinate functionals.
pub fn check_full_product(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    require_nonzero(a, b)?;
    let amb = a.ambient();
    let n = amb
        .degree()
        .ok_or_else(|| Error::Precondition("full-product check needs a finite extension".into()))?;
    let report = TheoremReport::for_spaces("full-product", &[a, b])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .with_bound(n as i64);
    if a.dim() + b.dim() <= n {
        return Ok(report.with_verdict(Verdict::NotApplicable));
    }
    let ab = a.product(b)?;
    let mut witnesses = Vec::with_capacity(n);
    let mut ok = ab.dim() == n;
    for i in 0..n {
        let phi: Vec<u32> = (0..n).map(|j| u32::from(i == j)).collect();
        match duality_witness(a, b, &phi) {
            Ok((x, y)) => {
                ok &= apply(&phi, &amb.mul(&x, &y)?, amb) != 0;
                witnesses.push(json!([amb.format_element(&x), amb.format_element(&y)]));
            }
            Err(Error::Invariant(_)) => {
                ok = false;
                witnesses.push(serde_json::Value::Null);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report
        .dim("AB", ab.dim())
        .with_verdict(Verdict::from_bool(ok))
        .with_certificate(json!({ "witnesses": witnesses })))
}

/// In GF(q)(x): dim⟨AB⟩ ≥ dim A + dim B − 1, cross-checked by an Olson
/// certificate whose field must be K.
pub fn check_torsion_free(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    require_nonzero(a, b)?;
    if a.ambient().is_extension() {
        return Err(Error::Precondition("torsion-free check needs a rational function field".into()));
    }
    let ab = a.product(b)?;
    let bound = (a.dim() + b.dim()) as i64 - 1;
    let cert = olson_linear(a, b)?;
    let h_is_k = cert.h == Subspace::base_field(a.ambient());
    Ok(TheoremReport::for_spaces("torsion-free", &[a, b])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .dim("AB", ab.dim())
        .dim("H", cert.h.dim())
        .with_bound(bound)
        .with_verdict(Verdict::from_bool(ab.dim() as i64 >= bound && h_is_k))
        .with_certificate(json!({ "olson_case": cert.case.tag() })))
}
