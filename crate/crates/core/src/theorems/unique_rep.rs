//! The unique-representation bound dim⟨AB⟩ ≥ dim A + dim B − 1 for
//! A = K ⊕ Ā, B = K ⊕ B̄ with K ∩ (Ā + B̄ + ⟨ĀB̄⟩) = {0}.

use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::Element;
use crate::subspace::Subspace;
use crate::transform::{rise, Variant};

use super::report::TheoremReport;
use super::report::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct UniqueRepInstance {
    a: Subspace,
    b: Subspace,
    a_bar: Subspace,
    b_bar: Subspace,
}

fn cond(a_bar: &Subspace, b_bar: &Subspace) -> Result<()> {
    let amb = a_bar.ambient();
    let k = Subspace::base_field(amb);
    let w = a_bar.sum(b_bar)?.sum(&a_bar.product(b_bar)?)?;
    if !k.intersect(&w)?.is_zero() {
        return Err(Error::ConditionFails("1 ∈ Ā + B̄ + <ĀB̄>".into()));
    }
    Ok(())
}

impl UniqueRepInstance {
    /// A = K ⊕ Ā and B = K ⊕ B̄ from the complements.
    pub fn new(a_bar: &Subspace, b_bar: &Subspace) -> Result<Self> {
        let k = Subspace::base_field(a_bar.ambient());
        Self::from_parts(&k.sum(a_bar)?, &k.sum(b_bar)?, a_bar, b_bar)
    }

    pub fn from_parts(a: &Subspace, b: &Subspace, a_bar: &Subspace, b_bar: &Subspace) -> Result<Self> {
        cond(a_bar, b_bar)?;
        let k = Subspace::base_field(a.ambient());
        for (full, bar) in [(a, a_bar), (b, b_bar)] {
            if k.sum(bar)? != *full || full.dim() != bar.dim() + 1 {
                return Err(Error::ConditionFails("not a direct sum K ⊕ complement".into()));
            }
        }
        Ok(UniqueRepInstance { a: a.clone(), b: b.clone(), a_bar: a_bar.clone(), b_bar: b_bar.clone() })
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn b(&self) -> &Subspace {
        &self.b
    }

    pub fn a_bar(&self) -> &Subspace {
        &self.a_bar
    }

    pub fn b_bar(&self) -> &Subspace {
        &self.b_bar
    }
}

/// dim⟨AB⟩ ≥ dim A + dim B − 1. The certificate records dim(Ā ∩ B̄): zero is
/// the base case of the induction, anything else the transform case.
pub fn check_unique_rep(inst: &UniqueRepInstance) -> Result<TheoremReport> {
    let (a, b) = (&inst.a, &inst.b);
    let ab = a.product(b)?;
    let meet = inst.a_bar.intersect(&inst.b_bar)?;
    let bound = (a.dim() + b.dim()) as i64 - 1;
    Ok(TheoremReport::for_spaces("unique-rep", &[&inst.a_bar, &inst.b_bar])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .dim("AB", ab.dim())
        .dim("meet", meet.dim())
        .with_bound(bound)
        .with_verdict(Verdict::from_bool(ab.dim() as i64 >= bound))
        .with_certificate(json!({ "case": if meet.is_zero() { 1 } else { 2 } })))
}

/// One transform step with d ∈ Ā ∩ B̄; Up-A when rise_A(d) ≥ rise_B(d):
/// (Ā + Ad, B̄ ∩ d⁻¹B̄), otherwise (Ā ∩ Ād⁻¹, B̄ + dB). The condition is
/// re-verified on the result.
pub fn unique_rep_transform_step(inst: &UniqueRepInstance, d: &Element) -> Result<(UniqueRepInstance, Variant)> {
    let amb = inst.a.ambient();
    if amb.is_zero(d) || !inst.a_bar.contains(d)? || !inst.b_bar.contains(d)? {
        return Err(Error::Precondition("d must be a nonzero element of Ā ∩ B̄".into()));
    }
    let d_inv = amb.inv(d)?;
    let variant = if rise(&inst.a, d)? >= rise(&inst.b, d)? { Variant::UpA } else { Variant::UpB };
    let (a_bar, b_bar) = match variant {
        Variant::UpA => (
            inst.a_bar.sum(&inst.a.scale(d)?)?,
            inst.b_bar.intersect(&inst.b_bar.scale(&d_inv)?)?,
        ),
        Variant::UpB => (
            inst.a_bar.intersect(&inst.a_bar.scale(&d_inv)?)?,
            inst.b_bar.sum(&inst.b.scale(d)?)?,
        ),
    };
    let next = UniqueRepInstance::new(&a_bar, &b_bar).map_err(|e| match e {
        Error::ConditionFails(m) => Error::Invariant(format!("condition lost after a transform: {m}")),
        other => other,
    })?;
    Ok((next, variant))
}

#[derive(Clone, Debug)]
pub struct UniqueRepRun {
    pub start: UniqueRepInstance,
    pub steps: Vec<(Element, Variant)>,
    pub end: UniqueRepInstance,
}

/// Transforms with the first nonzero element of Ā ∩ B̄ until the
/// intersection vanishes. At most 2·(dim⟨AB⟩)² steps are allowed.
pub fn unique_rep_reduce(inst: &UniqueRepInstance) -> Result<UniqueRepRun> {
    let ab_dim = inst.a.product(&inst.b)?.dim();
    let safety = 2 * ab_dim * ab_dim;
    let mut cur = inst.clone();
    let mut steps = Vec::new();
    loop {
        let meet = cur.a_bar.intersect(&cur.b_bar)?;
        let Some(d) = meet.basis().into_iter().next() else {
            break;
        };
        if steps.len() >= safety {
            return Err(Error::SafetyBound(safety));
        }
        let (next, variant) = unique_rep_transform_step(&cur, &d)?;
        if !next.a.product(&next.b)?.is_subspace_of(&cur.a.product(&cur.b)?)? {
            return Err(Error::Invariant("product span grew under a transform".into()));
        }
        steps.push((d, variant));
        cur = next;
    }
    Ok(UniqueRepRun { start: inst.clone(), steps, end: cur })
}
