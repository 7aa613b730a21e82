//! Stabilizers, the field criterion, and H-module decompositions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{Ambient, Element};
use crate::linalg;
use crate::subspace::{embed, Raw, Subspace};

/// H = {x ∈ L : xV ⊆ V}.
///
/// The search runs over a finite-dimensional space W known to contain H:
/// W = L in GF(q^n), and W = v₀⁻¹V in GF(q)(x) (if xV ⊆ V then
/// x = (xv₀)v₀⁻¹ ∈ V v₀⁻¹). The conditions "x·v_j ∈ V" are linear in the
/// coordinates of x over a basis of W; H is their common kernel.
pub fn stabilizer(v: &Subspace) -> Result<Subspace> {
    if v.is_zero() {
        return Err(Error::Precondition("stabilizer of the zero space".into()));
    }
    let amb = v.ambient();
    let search = match amb.degree() {
        Some(_) => Subspace::whole(amb)?,
        None => v.scale(&amb.inv(&v.basis()[0])?)?,
    };
    stabilizer_within(v, &search)
}

/// {x ∈ W : xV ⊆ V}.
pub(crate) fn stabilizer_within(v: &Subspace, search: &Subspace) -> Result<Subspace> {
    let amb = v.ambient();
    let k = amb.base();
    let mut conditions: Vec<Vec<u32>> = vec![Vec::new(); search.dim()];
    for vj in v.basis() {
        // row i of `images` is w_i·v_j
        let images = search.scaled_raw(&vj)?;
        let (_, parts) = embed(amb, &[v.raw(), images]);
        let mut basis = parts[0].clone();
        let pivots = linalg::rref(k, &mut basis);
        for (cond, img) in conditions.iter_mut().zip(&parts[1]) {
            let mut residue = img.clone();
            linalg::reduce(k, &basis, &pivots, &mut residue);
            cond.extend(residue);
        }
    }
    let kernel = linalg::left_kernel(k, &conditions);
    let raw = search.raw();
    let width = raw.rows.first().map_or(0, |r| r.len());
    let rows = kernel
        .iter()
        .map(|c| {
            let mut acc = vec![0u32; width];
            for (&ci, w) in c.iter().zip(&raw.rows) {
                for (a, &x) in acc.iter_mut().zip(w) {
                    *a = k.add(*a, k.mul(ci, x));
                }
            }
            acc
        })
        .collect();
    Subspace::from_raw(amb.clone(), Raw { den: raw.den, rows })
}

/// 1 ∈ V and ⟨VV⟩ ⊆ V; for a finite-dimensional V this characterizes subfields.
pub fn is_field_subspace(v: &Subspace) -> Result<bool> {
    if v.is_zero() || !v.contains(&v.ambient().one())? {
        return Ok(false);
    }
    v.product(v)?.is_subspace_of(v)
}

/// Representatives R with V = ⊕_{r∈R} Hr, picked greedily from the echelon
/// basis of V.
pub fn h_module_decompose(v: &Subspace, h: &Subspace) -> Result<Vec<Element>> {
    if !is_field_subspace(h)? {
        return Err(Error::Precondition("H is not a subfield".into()));
    }
    if h.product(v)? != *v {
        return Err(Error::Precondition("HV ≠ V".into()));
    }
    let amb: &Arc<Ambient> = v.ambient();
    let mut reps = Vec::new();
    let mut covered = Subspace::zero(amb);
    for b in v.basis() {
        if covered.contains(&b)? {
            continue;
        }
        let hb = h.scale(&b)?;
        let next = covered.sum(&hb)?;
        if next.dim() != covered.dim() + h.dim() {
            return Err(Error::Invariant("Hv meets the previous summands".into()));
        }
        covered = next;
        reps.push(b);
    }
    if reps.len() * h.dim() != v.dim() {
        return Err(Error::Invariant("decomposition does not cover V".into()));
    }
    Ok(reps)
}
