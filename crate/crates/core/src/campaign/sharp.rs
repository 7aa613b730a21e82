//! Instances attaining equality in the torsion-free bound and in the
//! power-chain bound.

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::Ambient;
use crate::subspace::{all_subspaces, Subspace};
use crate::theorems::{check_torsion_free, power_chain, TheoremReport, Verdict};

fn monomial_span(amb: &Arc<Ambient>, r: usize) -> Result<Subspace> {
    let gens = (0..r).map(|i| amb.monomial(i)).collect::<Result<Vec<_>>>()?;
    Subspace::span(amb, &gens)
}

/// span{1, …, x^{r−1}} · span{1, …, x^{s−1}} for 1 ≤ r, s ≤ limit; returns
/// the pairs with dim⟨AB⟩ = r + s − 1.
pub fn torsion_free_sharpness(amb: &Arc<Ambient>, limit: usize) -> Result<Vec<TheoremReport>> {
    if amb.is_extension() {
        return Err(Error::Precondition("torsion-free sharpness needs GF(q)(x)".into()));
    }
    let mut out = Vec::new();
    for r in 1..=limit {
        let a = monomial_span(amb, r)?;
        for s in 1..=limit {
            let b = monomial_span(amb, s)?;
            let mut rep = check_torsion_free(&a, &b)?;
            if rep.verdict == Verdict::Holds && rep.bound == Some(rep.dims["AB"]) {
                rep.theorem = "torsion-free-sharp".into();
                rep.certificate = json!({ "family": "monomial", "r": r, "s": s });
                out.push(rep);
            }
        }
    }
    Ok(out)
}

/// Subspaces B of GF(q^n) whose power chain stabilizes exactly at
/// ⌊2n / dim B⌋; complements of K (dim n − 1, 1 ∉ B) are flagged.
pub fn power_chain_sharpness(amb: &Arc<Ambient>) -> Result<Vec<TheoremReport>> {
    let n = amb
        .degree()
        .ok_or_else(|| Error::Precondition("power-chain sharpness needs a finite extension".into()))?;
    let one = amb.one();
    let mut out = Vec::new();
    for b in all_subspaces(amb, None)? {
        if b.is_zero() {
            continue;
        }
        let chain = power_chain(&b, None)?;
        if !chain.holds() || chain.stabilization_n != chain.bound {
            continue;
        }
        let complement = b.dim() + 1 == n && !b.contains(&one)?;
        let mut rep = chain.to_report();
        rep.theorem = "power-chain-sharp".into();
        rep.inputs = vec![b.to_compact()];
        rep.certificate["complement_of_k"] = json!(complement);
        out.push(rep);
    }
    Ok(out)
}
