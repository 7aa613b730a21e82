//! Linear Kemperman transforms and the reduction driver.
//!
//! For nonzero x the two transforms of a pair (A, B) are
//! (A + Ax, B ∩ x⁻¹B) and (A ∩ Ax⁻¹, B + xB). The driver repeatedly picks a
//! pivot d in D = A_*⁻¹A ∩ BB_*⁻¹ that moves A or B and applies the transform
//! that does not decrease dim A + dim B, until every element of D fixes both
//! spaces. D is never materialized; membership is tested through
//! dA ∩ A ≠ {0} (resp. dB ∩ B ≠ {0}).

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{Ambient, Element};
use crate::linalg;
use crate::subspace::{embed, same_ambient, Raw, Subspace};

/// The pivot and branch rule used by [`reduce_pair`], as named in reports.
pub const POLICY: &str = "first-pivot, up-a-when-rise-a-ge-rise-b";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// (A + Ad, B ∩ d⁻¹B)
    #[serde(rename = "Up-A")]
    UpA,
    /// (A ∩ Ad⁻¹, B + dB)
    #[serde(rename = "Up-B")]
    UpB,
}

#[derive(Clone, Debug)]
pub struct TransformStep {
    pub pivot: Element,
    pub variant: Variant,
    /// dim (A + Ad)/A
    pub rise_a: usize,
    /// dim (B + dB)/B
    pub rise_b: usize,
    pub dims_before: (usize, usize),
    pub dims_after: (usize, usize),
    pub pair_after: (Subspace, Subspace),
}

#[derive(Clone, Debug)]
pub struct TransformTrace {
    pub initial: (Subspace, Subspace),
    pub steps: Vec<TransformStep>,
}

#[derive(Serialize)]
struct StepRecord {
    pivot: String,
    variant: Variant,
    rise_a: usize,
    rise_b: usize,
    dims_before: (usize, usize),
    dims_after: (usize, usize),
}

/// Result of [`reduce_pair`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub e: Subspace,
    pub f: Subspace,
    pub trace: TransformTrace,
}

fn union_rank(ambient: &Ambient, parts: &[Raw]) -> usize {
    let (_, rows) = embed(ambient, parts);
    let rows: Vec<_> = rows.into_iter().flatten().collect();
    linalg::rank(ambient.base(), &rows)
}

fn require_nonzero(x: &Element, ambient: &Ambient) -> Result<()> {
    ambient.check(x).map_err(|_| Error::MixedAmbients)?;
    if ambient.is_zero(x) {
        Err(Error::Precondition("pivot must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// dim (A + dA) − dim A.
pub fn rise(a: &Subspace, d: &Element) -> Result<usize> {
    let amb = a.ambient();
    require_nonzero(d, amb)?;
    Ok(union_rank(amb, &[a.raw(), a.scaled_raw(d)?]) - a.dim())
}

fn meets_scaled(a: &Subspace, d: &Element) -> Result<bool> {
    let amb = a.ambient();
    require_nonzero(d, amb)?;
    if a.is_zero() {
        return Err(Error::Precondition("quotient set of the zero space".into()));
    }
    // dim(dA ∩ A) = 2 dim A − dim(dA + A)
    Ok(union_rank(amb, &[a.raw(), a.scaled_raw(d)?]) < 2 * a.dim())
}

/// d ∈ A_*⁻¹A, i.e. dA ∩ A ≠ {0}.
pub fn in_left_quotient(d: &Element, a: &Subspace) -> Result<bool> {
    meets_scaled(a, d)
}

/// d ∈ BB_*⁻¹, i.e. dB ∩ B ≠ {0}.
pub fn in_right_quotient(d: &Element, b: &Subspace) -> Result<bool> {
    meets_scaled(b, d)
}

/// The requested Kemperman transform of (A, B) with respect to x.
pub fn transform_pair(
    a: &Subspace,
    b: &Subspace,
    x: &Element,
    variant: Variant,
) -> Result<(Subspace, Subspace)> {
    same_ambient(a.ambient(), b.ambient())?;
    let amb = a.ambient();
    require_nonzero(x, amb)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("transform of a pair with a zero space".into()));
    }
    let x_inv = amb.inv(x)?;
    Ok(match variant {
        Variant::UpA => (a.sum(&a.scale(x)?)?, b.intersect(&b.scale(&x_inv)?)?),
        Variant::UpB => (a.intersect(&a.scale(&x_inv)?)?, b.sum(&b.scale(x)?)?),
    })
}

/// Scalar normalization used as the dedup key: the last nonzero coordinate
/// (resp. the numerator's leading coefficient) becomes 1.
fn projective_key(ambient: &Ambient, x: &Element) -> Element {
    let lead = match x {
        Element::Vector(v) => v.iter().rev().copied().find(|&c| c != 0).unwrap_or(1),
        Element::Fraction { num, .. } => num.lead(),
    };
    if lead == 1 {
        x.clone()
    } else {
        ambient.scale(ambient.base().inv(lead), x)
    }
}

/// The first d ∈ A_*⁻¹A ∩ BB_*⁻¹ with Ad ⊄ A or dB ⊄ B.
///
/// Candidates are quotients x⁻¹y with x, y running over the nonzero elements
/// of the smaller of A and B (A on ties) in enumeration order; scalars and
/// K*-multiples of earlier candidates are skipped, since both leave the
/// outcome unchanged.
pub fn find_pivot(a: &Subspace, b: &Subspace) -> Result<Option<Element>> {
    same_ambient(a.ambient(), b.ambient())?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("pivot search needs nonzero spaces".into()));
    }
    let amb = a.ambient().clone();
    let (generating, other) = if b.dim() < a.dim() { (b, a) } else { (a, b) };
    let mut seen: HashSet<Element> = HashSet::new();
    let members: Vec<Element> = generating.enumerate_nonzero()?.collect();
    for x in generating.enumerate_projective()? {
        let x_inv = amb.inv(&x)?;
        for y in &members {
            let d = amb.mul(&x_inv, y)?;
            if amb.as_scalar(&d).is_some() {
                continue;
            }
            if !seen.insert(projective_key(&amb, &d)) {
                continue;
            }
            if !meets_scaled(other, &d)? {
                continue;
            }
            if rise(a, &d)? > 0 || rise(b, &d)? > 0 {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

/// All elements of D = E_*⁻¹E ∩ FF_*⁻¹, one per K*-orbit (the orbit of
/// each listed u lies in D as well). Candidates are quotients within the
/// smaller of E and F (F on ties); membership in the other quotient set is
/// the test uV ∩ V ≠ {0}.
pub fn quotient_intersection(e: &Subspace, f: &Subspace) -> Result<Vec<Element>> {
    same_ambient(e.ambient(), f.ambient())?;
    let amb = e.ambient();
    let (generating, other) = if e.dim() < f.dim() { (e, f) } else { (f, e) };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let members: Vec<Element> = generating.enumerate_nonzero()?.collect();
    for z in generating.enumerate_projective()? {
        let z_inv = amb.inv(&z)?;
        for y in &members {
            let u = amb.mul(y, &z_inv)?;
            if !seen.insert(projective_key(amb, &u)) {
                continue;
            }
            if meets_scaled(other, &u)? {
                out.push(u);
            }
        }
    }
    Ok(out)
}

/// Exhaustive check that Eu = E and uF = F for every u in E_*⁻¹E ∩ FF_*⁻¹.
pub fn verify_stable(e: &Subspace, f: &Subspace) -> Result<bool> {
    for u in quotient_intersection(e, f)? {
        if e.scale(&u)? != *e || f.scale(&u)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Iterates pivot search and transforms until the pair is stable.
///
/// Policy: Up-A when rise_a ≥ rise_b, otherwise Up-B. Every step must raise
/// (dim A + dim B, dim A) lexicographically; at most 2·(dim⟨AB⟩)² steps are
/// allowed.
pub fn reduce_pair(a: &Subspace, b: &Subspace) -> Result<Reduction> {
    same_ambient(a.ambient(), b.ambient())?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("reduction needs nonzero spaces".into()));
    }
    let ab_dim = a.product(b)?.dim();
    let safety = 2 * ab_dim * ab_dim;
    let (mut cur_a, mut cur_b) = (a.clone(), b.clone());
    let mut steps = Vec::new();
    while let Some(d) = find_pivot(&cur_a, &cur_b)? {
        if steps.len() >= safety {
            return Err(Error::SafetyBound(safety));
        }
        let rise_a = rise(&cur_a, &d)?;
        let rise_b = rise(&cur_b, &d)?;
        let variant = if rise_a >= rise_b { Variant::UpA } else { Variant::UpB };
        let (na, nb) = transform_pair(&cur_a, &cur_b, &d, variant)?;
        let before = (cur_a.dim(), cur_b.dim());
        let after = (na.dim(), nb.dim());
        let accounted = match variant {
            Variant::UpA => after.0 == before.0 + rise_a && after.1 + rise_b == before.1,
            Variant::UpB => after.0 + rise_a == before.0 && after.1 == before.1 + rise_b,
        };
        if !accounted {
            return Err(Error::Invariant(format!(
                "dimension accounting {before:?} -> {after:?} with rises ({rise_a}, {rise_b})"
            )));
        }
        if (after.0 + after.1, after.0) <= (before.0 + before.1, before.0) {
            return Err(Error::Invariant(format!("measure did not increase: {before:?} -> {after:?}")));
        }
        if na.is_zero() || nb.is_zero() {
            return Err(Error::Invariant("transform produced a zero space".into()));
        }
        steps.push(TransformStep {
            pivot: d,
            variant,
            rise_a,
            rise_b,
            dims_before: before,
            dims_after: after,
            pair_after: (na.clone(), nb.clone()),
        });
        cur_a = na;
        cur_b = nb;
    }
    if !verify_stable(&cur_a, &cur_b)? {
        return Err(Error::Invariant("reduced pair is not stabilized by D".into()));
    }
    Ok(Reduction {
        e: cur_a,
        f: cur_b,
        trace: TransformTrace { initial: (a.clone(), b.clone()), steps },
    })
}

impl TransformTrace {
    pub fn ambient(&self) -> &Arc<Ambient> {
        self.initial.0.ambient()
    }

    pub fn final_pair(&self) -> &(Subspace, Subspace) {
        self.steps.last().map_or(&self.initial, |s| &s.pair_after)
    }

    /// Re-checks every per-step invariant from the stored pairs:
    /// ⟨A_iB_i⟩ ⊆ ⟨A_{i−1}B_{i−1}⟩, strict lexicographic increase, the
    /// dimension accounting, and max(dim A_i, dim B_i) ≤ dim⟨AB⟩.
    pub fn verify(&self) -> Result<()> {
        let (a0, b0) = &self.initial;
        let ab = a0.product(b0)?;
        let mut prev = self.initial.clone();
        let mut prev_prod = ab.clone();
        for (i, s) in self.steps.iter().enumerate() {
            let (a, b) = &s.pair_after;
            let fail = |what: &str| Err(Error::Invariant(format!("step {i}: {what}")));
            let prod = a.product(b)?;
            if !prod.is_subspace_of(&prev_prod)? {
                return fail("product span grew");
            }
            let (da, db) = (a.dim(), b.dim());
            let (pa, pb) = (prev.0.dim(), prev.1.dim());
            if (da + db, da) <= (pa + pb, pa) {
                return fail("lexicographic measure did not increase");
            }
            let accounted = match s.variant {
                Variant::UpA => da == pa + s.rise_a && db + s.rise_b == pb,
                Variant::UpB => da + s.rise_a == pa && db == pb + s.rise_b,
            };
            if !accounted || s.dims_before != (pa, pb) || s.dims_after != (da, db) {
                return fail("dimension accounting");
            }
            if (s.variant == Variant::UpA) != (s.rise_a >= s.rise_b) {
                return fail("branch policy");
            }
            if da.max(db) > ab.dim() {
                return fail("dimension exceeds dim<AB>");
            }
            prev = s.pair_after.clone();
            prev_prod = prod;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let amb = self.ambient();
        let records: Vec<StepRecord> = self
            .steps
            .iter()
            .map(|s| StepRecord {
                pivot: amb.format_element(&s.pivot),
                variant: s.variant,
                rise_a: s.rise_a,
                rise_b: s.rise_b,
                dims_before: s.dims_before,
                dims_after: s.dims_after,
            })
            .collect();
        serde_json::to_value(records).expect("trace records serialize")
    }
}
