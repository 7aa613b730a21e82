//! Power chains ⟨B⟩ ⊆ ⟨B²⟩ ⊆ … for B ∋ 1 and their stabilization exponent.

use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::Element;
use crate::subspace::Subspace;

use super::fields::is_field_subspace;
use super::report::{TheoremReport, Verdict};

#[derive(Clone, Debug)]
pub struct PowerChainReport {
    /// The space whose powers were taken (contains 1).
    pub b: Subspace,
    /// b when B was replaced by b⁻¹B.
    pub normalized_by: Option<Element>,
    /// dim⟨B^i⟩ for i = 1, 2, … as far as computed.
    pub dims: Vec<usize>,
    /// Least n with ⟨B^n⟩ = ⟨B^{n+1}⟩.
    pub stabilization_n: Option<usize>,
    pub is_field_at_n: bool,
    /// ⌊2 dim L / dim B⌋ in finite extensions.
    pub bound: Option<usize>,
    /// At every checked i: ⟨B^{i+1}⟩ = ⟨B^i⟩ ⟺ ⟨B^{2i}⟩ = ⟨B^i⟩ ⟺ ⟨B^i⟩ is a field.
    pub equivalences_ok: bool,
    /// ⟨B^{i+1}⟩ = ⟨B^i⟩ or dim⟨B^{i+1}⟩ ≥ dim⟨B^{i−1}⟩ + dim B, with B⁰ = K.
    pub dichotomy_ok: bool,
    /// dims strictly increase up to n and stay constant through 2n.
    pub shape_ok: bool,
}

impl PowerChainReport {
    pub fn holds(&self) -> bool {
        let bound_ok = match (self.bound, self.stabilization_n) {
            (Some(bound), Some(n)) => n <= bound,
            (Some(_), None) => false,
            (None, _) => true,
        };
        self.equivalences_ok && self.dichotomy_ok && self.shape_ok && bound_ok
            && (self.stabilization_n.is_none() || self.is_field_at_n)
    }

    pub fn to_report(&self) -> TheoremReport {
        let amb = self.b.ambient();
        let mut r = TheoremReport::for_spaces("power-chain", &[&self.b]).dim("B", self.b.dim());
        if let Some(n) = self.stabilization_n {
            r = r.dim("n", n);
        }
        if let Some(bound) = self.bound {
            r = r.with_bound(bound as i64);
        }
        let verdict = if self.stabilization_n.is_none() && self.bound.is_none() && self.holds() {
            Verdict::NotApplicable
        } else {
            Verdict::from_bool(self.holds())
        };
        r.with_verdict(verdict).with_certificate(json!({
            "dims": self.dims,
            "normalized_by": self.normalized_by.as_ref().map(|b| amb.format_element(b)),
            "is_field_at_n": self.is_field_at_n,
            "equivalences": self.equivalences_ok,
            "dichotomy": self.dichotomy_ok,
        }))
    }
}

/// Computes ⟨B^i⟩ up to `stop` (default n + 1 in GF(q^n); required in
/// GF(q)(x)) and, once stabilized at n, on through 2n. If 1 ∉ B, B is first
/// replaced by b⁻¹B for its first nonzero element b.
pub fn power_chain(b: &Subspace, stop: Option<usize>) -> Result<PowerChainReport> {
    if b.is_zero() {
        return Err(Error::Precondition("power chain of the zero space".into()));
    }
    let amb = b.ambient().clone();
    let stop = match (stop, amb.degree()) {
        (Some(s), _) if s >= 1 => s,
        (Some(_), _) => return Err(Error::Precondition("stop must be at least 1".into())),
        (None, Some(n)) => n + 1,
        (None, None) => {
            return Err(Error::Precondition("the rational function field needs an explicit stop".into()))
        }
    };
    let (b, normalized_by) = if b.contains(&amb.one())? {
        (b.clone(), None)
    } else {
        let first = b.enumerate_nonzero()?.next().expect("nonzero space");
        (b.scale(&amb.inv(&first)?)?, Some(first))
    };

    // powers[i] = ⟨B^i⟩, powers[0] = K
    let mut powers = vec![Subspace::base_field(&amb), b.clone()];
    let mut stabilization_n = None;
    for i in 1..=stop {
        let next = powers[i].product(&b)?;
        let done = next == powers[i];
        powers.push(next);
        if done {
            stabilization_n = Some(i);
            break;
        }
    }
    if let Some(n) = stabilization_n {
        while powers.len() <= 2 * n {
            let next = powers.last().expect("nonempty").product(&b)?;
            powers.push(next);
        }
    }

    let last = powers.len() - 1;
    let dims: Vec<usize> = powers[1..].iter().map(Subspace::dim).collect();
    let mut equivalences_ok = true;
    for i in 1..last {
        let one = powers[i + 1] == powers[i];
        let field = is_field_subspace(&powers[i])?;
        let two = if 2 * i <= last { Some(powers[2 * i] == powers[i]) } else { None };
        equivalences_ok &= one == field && two.is_none_or(|t| t == one);
    }
    let mut dichotomy_ok = true;
    for i in 1..last {
        dichotomy_ok &= powers[i + 1] == powers[i] || powers[i + 1].dim() >= powers[i - 1].dim() + b.dim();
    }
    let shape_ok = match stabilization_n {
        Some(n) => dims[..n].windows(2).all(|w| w[0] < w[1]) && dims[n - 1..].iter().all(|&d| d == dims[n - 1]),
        None => dims.windows(2).all(|w| w[0] < w[1]),
    };
    let is_field_at_n = match stabilization_n {
        Some(n) => is_field_subspace(&powers[n])?,
        None => false,
    };
    let bound = amb.degree().map(|n| 2 * n / b.dim());
    Ok(PowerChainReport {
        b,
        normalized_by,
        dims,
        stabilization_n,
        is_field_at_n,
        bound,
        equivalences_ok,
        dichotomy_ok,
        shape_ok,
    })
}
