//! The dichotomy ⟨ABC⟩ = ⟨AB⟩ or dim⟨ABC⟩ ≥ dim A + dim B for C ∋ 1, and
//! its corollary with C = ⟨B_*⁻¹B⟩.

use serde_json::json;

use crate::error::{Error, Result};
use crate::subspace::Subspace;

use super::fields::{h_module_decompose, stabilizer};
use super::report::{TheoremReport, Verdict};

pub fn check_abc_linear(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<TheoremReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("A and B must be nonzero".into()));
    }
    if !c.contains(&c.ambient().one())? {
        return Err(Error::Precondition("1 ∉ C".into()));
    }
    let ab = a.product(b)?;
    let abc = ab.product(c)?;
    let report = TheoremReport::for_spaces("abc-linear", &[a, b, c])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .dim("C", c.dim())
        .dim("AB", ab.dim())
        .dim("ABC", abc.dim())
        .with_bound((a.dim() + b.dim()) as i64);
    if abc == ab {
        return Ok(report.with_verdict(Verdict::DegenerateBranch));
    }
    // H fixes ⟨AB⟩, hence ⟨ABC⟩; both are H-modules and the quotient
    // dimension is a multiple of dim H
    let h = stabilizer(&ab)?;
    let fixed = h.product(&abc)? == abc;
    let divisible = (abc.dim() - ab.dim()) % h.dim() == 0;
    let modules = fixed && h_module_decompose(&abc, &h)?.len() * h.dim() == abc.dim();
    let bound_ok = abc.dim() >= a.dim() + b.dim();
    Ok(report
        .dim("H", h.dim())
        .with_verdict(Verdict::from_bool(bound_ok && divisible && modules))
        .with_certificate(json!({ "H": h.to_compact(), "divisible": divisible, "h_fixes_abc": fixed })))
}

/// ⟨AB·B_*⁻¹B⟩ = ⟨AB⟩ or dim⟨AB²⟩ ≥ dim A + dim B.
pub fn check_cor3(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("A and B must be nonzero".into()));
    }
    let amb = b.ambient();
    let ab = a.product(b)?;
    let ab2 = ab.product(b)?;
    // b₀ and its K*-multiples contribute the same space
    let mut quotient_span = Subspace::zero(amb);
    for b0 in b.enumerate_projective()? {
        quotient_span = quotient_span.sum(&ab2.scale(&amb.inv(&b0)?)?)?;
    }
    let report = TheoremReport::for_spaces("cor3", &[a, b])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .dim("AB", ab.dim())
        .dim("AB2", ab2.dim())
        .with_bound((a.dim() + b.dim()) as i64);
    if quotient_span == ab {
        return Ok(report.with_verdict(Verdict::DegenerateBranch));
    }
    Ok(report.with_verdict(Verdict::from_bool(ab2.dim() >= a.dim() + b.dim())))
}
