use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::ffield::{Ambient, Element, Poly};
use crate::subspace::{all_subspaces, Subspace};
use crate::theorems::{
    check_abc_linear, check_cor3, check_full_product, check_kneser_linear, check_olson_linear, check_prime_degree,
    check_torsion_free, check_unique_rep, power_chain, unique_rep_reduce, TheoremReport, UniqueRepInstance, Verdict,
};
use crate::transform::reduce_pair;

use super::{check_ceiling, instance_rng, run_indexed, violation, Campaign, Source, Summary};

/// Default random dimension range in GF(q)(x) is 1..=4.
const RATIONAL_DEFAULT_MAX_DIM: usize = 4;
/// Attempts to draw a Cond-valid pair of complements before giving up.
const UNIQUE_REP_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearTheorem {
    KneserLinear,
    OlsonLinear,
    PrimeDegree,
    FullProduct,
    TorsionFree,
    UniqueRep,
    AbcLinear,
    Cor3,
    Transform,
    PowerChain,
}

impl FromStr for LinearTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "kneser-linear" => LinearTheorem::KneserLinear,
            "olson-linear" => LinearTheorem::OlsonLinear,
            "prime-degree" => LinearTheorem::PrimeDegree,
            "full-product" => LinearTheorem::FullProduct,
            "torsion-free" => LinearTheorem::TorsionFree,
            "unique-rep" => LinearTheorem::UniqueRep,
            "abc-linear" => LinearTheorem::AbcLinear,
            "cor3" => LinearTheorem::Cor3,
            "transform" => LinearTheorem::Transform,
            "power-chain" => LinearTheorem::PowerChain,
            _ => return Err(Error::Descriptor(format!("unknown theorem `{s}`"))),
        })
    }
}

impl LinearTheorem {
    pub fn name(self) -> &'static str {
        match self {
            LinearTheorem::KneserLinear => "kneser-linear",
            LinearTheorem::OlsonLinear => "olson-linear",
            LinearTheorem::PrimeDegree => "prime-degree",
            LinearTheorem::FullProduct => "full-product",
            LinearTheorem::TorsionFree => "torsion-free",
            LinearTheorem::UniqueRep => "unique-rep",
            LinearTheorem::AbcLinear => "abc-linear",
            LinearTheorem::Cor3 => "cor3",
            LinearTheorem::Transform => "transform",
            LinearTheorem::PowerChain => "power-chain",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            LinearTheorem::PowerChain => 1,
            LinearTheorem::AbcLinear => 3,
            _ => 2,
        }
    }

    /// The input at `pos` must contain 1 regardless of flags.
    fn forces_one(self, pos: usize) -> bool {
        self == LinearTheorem::AbcLinear && pos == 2
    }

    /// Evaluates one instance. Broken internal invariants become
    /// "violated" reports; bad input stays an error.
    pub fn evaluate(self, spaces: &[Subspace], stop: Option<usize>) -> Result<TheoremReport> {
        let amb = spaces[0].ambient();
        let descriptor = amb.descriptor();
        let inputs = || spaces.iter().map(Subspace::to_compact).collect::<Vec<_>>();
        let not_applicable = || {
            let refs: Vec<&Subspace> = spaces.iter().collect();
            TheoremReport::for_spaces(self.name(), &refs).with_verdict(Verdict::NotApplicable)
        };
        let zero_input = spaces.iter().any(Subspace::is_zero);
        let result = match self {
            LinearTheorem::UniqueRep => evaluate_unique_rep(&spaces[0], &spaces[1]),
            _ if zero_input => return Ok(not_applicable()),
            LinearTheorem::KneserLinear => check_kneser_linear(&spaces[0], &spaces[1]),
            LinearTheorem::OlsonLinear => check_olson_linear(&spaces[0], &spaces[1]),
            LinearTheorem::PrimeDegree => check_prime_degree(&spaces[0], &spaces[1]),
            LinearTheorem::FullProduct => check_full_product(&spaces[0], &spaces[1]),
            LinearTheorem::TorsionFree => check_torsion_free(&spaces[0], &spaces[1]),
            LinearTheorem::AbcLinear => {
                if !spaces[2].contains(&amb.one())? {
                    return Ok(not_applicable());
                }
                check_abc_linear(&spaces[0], &spaces[1], &spaces[2])
            }
            LinearTheorem::Cor3 => check_cor3(&spaces[0], &spaces[1]),
            LinearTheorem::Transform => evaluate_transform(&spaces[0], &spaces[1]),
            LinearTheorem::PowerChain => power_chain(&spaces[0], stop).map(|r| r.to_report()),
        };
        match result {
            Err(e @ (Error::Invariant(_) | Error::SafetyBound(_))) => {
                Ok(violation(self.name(), &descriptor, inputs(), &e))
            }
            other => other,
        }
    }
}

fn evaluate_unique_rep(a_bar: &Subspace, b_bar: &Subspace) -> Result<TheoremReport> {
    let inst = match UniqueRepInstance::new(a_bar, b_bar) {
        Ok(inst) => inst,
        Err(Error::ConditionFails(_)) => {
            return Ok(TheoremReport::for_spaces("unique-rep", &[a_bar, b_bar]).with_verdict(Verdict::NotApplicable))
        }
        Err(e) => return Err(e),
    };
    let mut report = check_unique_rep(&inst)?;
    let run = unique_rep_reduce(&inst)?;
    // the end state is the base case; the bound must hold there as well
    let end = check_unique_rep(&run.end)?;
    if end.verdict == Verdict::Violated || end.dims["meet"] != 0 {
        report.verdict = Verdict::Violated;
    }
    report.certificate["steps"] = json!(run.steps.len());
    Ok(report)
}

fn evaluate_transform(a: &Subspace, b: &Subspace) -> Result<TheoremReport> {
    let red = reduce_pair(a, b)?;
    red.trace.verify()?;
    Ok(TheoremReport::for_spaces("transform", &[a, b])
        .dim("A", a.dim())
        .dim("B", b.dim())
        .dim("E", red.e.dim())
        .dim("F", red.f.dim())
        .dim("steps", red.trace.steps.len())
        .with_certificate(json!({
            "E": red.e.to_compact(),
            "F": red.f.to_compact(),
            "trace": red.trace.to_json(),
            "policy": crate::transform::POLICY,
        })))
}

fn random_vector(q: u32, n: usize, rng: &mut impl Rng) -> Element {
    Element::Vector((0..n).map(|_| rng.gen_range(0..q)).collect())
}

fn random_poly(q: u32, max_deg: usize, rng: &mut impl Rng) -> Poly {
    Poly::from_coeffs((0..=max_deg).map(|_| rng.gen_range(0..q)).collect())
}

/// A random subspace of the given dimension.
///
/// In GF(q^n): `dim` uniform random vectors (after a forced 1 with
/// `contains_one`), redrawn until independent. Every subspace of that
/// dimension (containing 1) is equally likely. In GF(q)(x) the sampling is
/// generator-based and not uniform: numerators of degree ≤ dim + 1, and
/// with probability 1/4 a monic linear denominator.
pub fn random_subspace(amb: &Arc<Ambient>, dim: usize, contains_one: bool, rng: &mut impl Rng) -> Result<Subspace> {
    let q = amb.base().order();
    if contains_one && dim == 0 {
        return Err(Error::Precondition("a space containing 1 has dimension ≥ 1".into()));
    }
    let forced = usize::from(contains_one);
    match amb.degree() {
        Some(n) => {
            if dim > n {
                return Err(Error::Precondition(format!("dimension {dim} exceeds {n}")));
            }
            loop {
                let mut gens: Vec<Element> = Vec::with_capacity(dim);
                if contains_one {
                    gens.push(amb.one());
                }
                gens.extend((forced..dim).map(|_| random_vector(q, n, rng)));
                let v = Subspace::span(amb, &gens)?;
                if v.dim() == dim {
                    return Ok(v);
                }
            }
        }
        None => {
            for _ in 0..1000 {
                let mut gens: Vec<Element> = Vec::with_capacity(dim);
                if contains_one {
                    gens.push(amb.one());
                }
                for _ in forced..dim {
                    let num = random_poly(q, dim + 1, rng);
                    let den = if rng.gen_ratio(1, 4) {
                        Poly::from_coeffs(vec![rng.gen_range(0..q), 1])
                    } else {
                        Poly::one()
                    };
                    gens.push(amb.fraction(num, den)?);
                }
                let v = Subspace::span(amb, &gens)?;
                if v.dim() == dim {
                    return Ok(v);
                }
            }
            Err(Error::Precondition(format!("could not draw a subspace of dimension {dim}")))
        }
    }
}

/// A random span of `dim` polynomials of degree ≤ max_deg in GF(q)(x).
pub fn random_polynomial_subspace(amb: &Arc<Ambient>, dim: usize, max_deg: usize, rng: &mut impl Rng) -> Result<Subspace> {
    if amb.is_extension() || dim > max_deg + 1 {
        return Err(Error::Precondition("need GF(q)(x) and dim ≤ max_deg + 1".into()));
    }
    let q = amb.base().order();
    loop {
        let gens: Vec<Element> = (0..dim)
            .map(|_| amb.from_poly(&random_poly(q, max_deg, rng)))
            .collect::<Result<_>>()?;
        let v = Subspace::span(amb, &gens)?;
        if v.dim() == dim {
            return Ok(v);
        }
    }
}

struct Plan {
    theorem: LinearTheorem,
    ambient: Arc<Ambient>,
    /// Candidate lists per input position (exhaustive mode).
    lists: Vec<Vec<Subspace>>,
    /// Parsed instances (explicit mode).
    explicit: Vec<Vec<Subspace>>,
    dims: Option<Vec<usize>>,
    max_dim: usize,
    contains_one: bool,
    stop: Option<usize>,
}

impl Plan {
    fn exhaustive_instance(&self, mut index: u64) -> Vec<Subspace> {
        let mut out = vec![None; self.lists.len()];
        for (pos, list) in self.lists.iter().enumerate().rev() {
            let m = list.len() as u64;
            out[pos] = Some(list[(index % m) as usize].clone());
            index /= m;
        }
        out.into_iter().map(|s| s.expect("filled")).collect()
    }

    fn random_dim(&self, pos: usize, rng: &mut impl Rng, low: usize) -> usize {
        match &self.dims {
            Some(d) => d[pos.min(d.len() - 1)],
            None => rng.gen_range(low..=self.max_dim.max(low)),
        }
    }

    fn random_instance(&self, seed: u64, index: u64) -> Result<Vec<Subspace>> {
        let mut rng = instance_rng(seed, index);
        let amb = &self.ambient;
        if self.theorem == LinearTheorem::UniqueRep {
            // complements: Cond-valid draws, the last attempt is kept otherwise
            let mut last = Vec::new();
            for _ in 0..UNIQUE_REP_ATTEMPTS {
                let da = self.random_dim(0, &mut rng, 1);
                let db = self.random_dim(1, &mut rng, 1);
                let a_bar = random_subspace(amb, da, false, &mut rng)?;
                let b_bar = random_subspace(amb, db, false, &mut rng)?;
                let valid = UniqueRepInstance::new(&a_bar, &b_bar).is_ok();
                last = vec![a_bar, b_bar];
                if valid {
                    break;
                }
            }
            return Ok(last);
        }
        (0..self.theorem.arity())
            .map(|pos| {
                let one = self.contains_one || self.theorem.forces_one(pos);
                let d = self.random_dim(pos, &mut rng, 1);
                random_subspace(amb, d, one, &mut rng)
            })
            .collect()
    }
}

/// Runs a campaign over subspaces of a field ambient.
pub fn run_linear(c: &Campaign, out: Option<&mut dyn Write>) -> Result<Summary> {
    let theorem: LinearTheorem = c.theorem.parse()?;
    let ambient = Arc::new(Ambient::parse(&c.descriptor)?);
    let arity = theorem.arity();
    if let Some(d) = &c.dims {
        if d.is_empty() || d.len() > arity {
            return Err(Error::Precondition(format!("{} takes {arity} dimension(s)", theorem.name())));
        }
    }
    let max_dim = c.max_dim.unwrap_or_else(|| ambient.degree().unwrap_or(RATIONAL_DEFAULT_MAX_DIM));
    let mut plan = Plan {
        theorem,
        ambient: ambient.clone(),
        lists: Vec::new(),
        explicit: Vec::new(),
        dims: c.dims.clone(),
        max_dim,
        contains_one: c.contains_one,
        stop: c.stop,
    };
    let count = match &c.source {
        Source::Exhaustive => {
            if !ambient.is_extension() {
                return Err(Error::Precondition("exhaustive mode needs a finite extension".into()));
            }
            let n = ambient.degree().expect("finite");
            let q = ambient.base().order() as u128;
            let total: u128 = (0..=n).map(|k| crate::subspace::gaussian_binomial(n, k, q)).sum();
            check_ceiling(total.saturating_pow(arity as u32), c.ceiling)?;
            let all = all_subspaces(&ambient, None)?;
            let one = ambient.one();
            for pos in 0..arity {
                let want_dim = c.dims.as_ref().map(|d| d[pos.min(d.len() - 1)]);
                let need_one = (c.contains_one && theorem != LinearTheorem::UniqueRep) || theorem.forces_one(pos);
                let mut list = Vec::new();
                for s in &all {
                    if want_dim.is_some_and(|d| s.dim() != d) || (need_one && !s.contains(&one)?) {
                        continue;
                    }
                    list.push(s.clone());
                }
                plan.lists.push(list);
            }
            let count = plan.lists.iter().fold(1u128, |acc, l| acc * l.len() as u128);
            check_ceiling(count, c.ceiling)?;
            count as u64
        }
        Source::Explicit(instances) => {
            for (line, tokens) in instances.iter().enumerate() {
                if tokens.len() != arity {
                    return Err(Error::Parse(format!(
                        "instance {}: {} takes {arity} input(s), got {}",
                        line + 1,
                        theorem.name(),
                        tokens.len()
                    )));
                }
                let spaces = tokens
                    .iter()
                    .map(|t| Subspace::from_compact(&ambient, t))
                    .collect::<Result<Vec<_>>>()?;
                plan.explicit.push(spaces);
            }
            instances.len() as u64
        }
        Source::Random { trials, .. } => {
            if let Some(n) = ambient.degree() {
                if plan.max_dim > n || c.dims.as_ref().is_some_and(|d| d.iter().any(|&x| x > n)) {
                    return Err(Error::Precondition(format!("dimensions must not exceed {n}")));
                }
            }
            *trials
        }
    };
    let plan = &plan;
    let eval = move |i: u64| -> Result<TheoremReport> {
        let spaces = match &c.source {
            Source::Exhaustive => plan.exhaustive_instance(i),
            Source::Random { seed, .. } => plan.random_instance(*seed, i)?,
            Source::Explicit(_) => plan.explicit[i as usize].clone(),
        };
        plan.theorem.evaluate(&spaces, plan.stop)
    };
    run_indexed(count, c.jobs, eval, out)
}
