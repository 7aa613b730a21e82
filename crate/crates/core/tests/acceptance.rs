//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero when any criterion fails. Every library verdict is
//! cross-checked against the brute-force oracle in `common`.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::{gf16, gf27, gf32, gf64, poly_mul, poly_rank, SmallField};
use kemperman::campaign::{
    instance_rng, power_chain_sharpness, random_polynomial_subspace, random_subspace, run_group, run_linear,
    torsion_free_sharpness, Campaign, Source,
};
use kemperman::groupsets::{GSet, GroupTable};
use kemperman::subspace::all_subspaces;
use kemperman::theorems::{
    check_abc_linear, check_cor3, check_full_product, check_kneser_linear, check_prime_degree, check_torsion_free,
    check_unique_rep, duality_witness, olson_linear, power_chain, unique_rep_reduce, UniqueRepInstance, Verdict,
};
use kemperman::transform::reduce_pair;
use kemperman::{Ambient, Element, Subspace};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ambient(d: &str) -> Arc<Ambient> {
    Arc::new(Ambient::parse(d).expect("descriptor"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

/// All subspaces with their oracle bitmasks, checked against the oracle's
/// own enumeration.
fn spaces_with_masks(desc: &str, f: &SmallField) -> Result<(Vec<Subspace>, Vec<u64>), String> {
    let amb = ambient(desc);
    let spaces = e(all_subspaces(&amb, None))?;
    let masks: Vec<u64> = spaces.iter().map(|s| f.mask(s)).collect();
    let mut sorted = masks.clone();
    sorted.sort_unstable();
    sorted.dedup();
    ensure(sorted == f.all_subspaces(), || format!("{desc}: subspace enumeration differs from oracle"))?;
    for (s, &m) in spaces.iter().zip(&masks) {
        ensure(s.dim() == f.dim(m), || format!("{desc}: dimension mismatch"))?;
    }
    Ok((spaces, masks))
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for (desc, f, expect) in [("gf:2:4", gf16(), 67), ("gf:3:3", gf27(), 28)] {
        let (spaces, masks) = spaces_with_masks(desc, &f)?;
        ensure(spaces.len() == expect, || format!("{desc}: {} subspaces", spaces.len()))?;
        for (a, &ma) in spaces.iter().zip(&masks) {
            for (b, &mb) in spaces.iter().zip(&masks) {
                total += 1;
                let ab = f.product_span(ma, mb);
                let h = f.dim(f.stabilizer(ab));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let rep = e(check_kneser_linear(a, b))?;
                let (da, db, dab) = (f.dim(ma), f.dim(mb), f.dim(ab));
                ensure(rep.dims["AB"] == dab as i64 && rep.dims["H"] == h as i64, || {
                    format!("{desc}: dims disagree with oracle for {} x {}", a.to_compact(), b.to_compact())
                })?;
                ensure(dab + h >= da + db && rep.verdict == Verdict::Holds, || {
                    format!("{desc}: bound fails for {} x {}", a.to_compact(), b.to_compact())
                })?;
            }
        }
    }
    Ok(format!("{total} pairs"))
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    let mut cases = [0usize; 2];
    for (desc, f) in [("gf:2:4", gf16()), ("gf:3:3", gf27())] {
        let (spaces, masks) = spaces_with_masks(desc, &f)?;
        for (a, &ma) in spaces.iter().zip(&masks) {
            for (b, &mb) in spaces.iter().zip(&masks) {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                total += 1;
                let cert = e(olson_linear(a, b))?;
                e(cert.verify())?;
                let (s, h) = (f.mask(&cert.s), f.mask(&cert.h));
                let fail = || format!("{desc}: certificate for {} x {}", a.to_compact(), b.to_compact());
                ensure(s & !f.product_span(ma, mb) == 0, fail)?;
                ensure(f.is_field(h), fail)?;
                ensure(f.product_span(s, h) == s, fail)?;
                ensure(f.dim(s) + f.dim(h) >= f.dim(ma) + f.dim(mb), fail)?;
                cases[usize::from(cert.case.tag() == "quotient-field")] += 1;
            }
        }
    }
    Ok(format!("{total} certificates ({} distinct-cosets, {} quotient-field)", cases[0], cases[1]))
}

fn criterion_3() -> Outcome {
    let f = gf32();
    let (spaces, masks) = spaces_with_masks("gf:2:5", &f)?;
    ensure(spaces.len() == 374, || format!("{} subspaces", spaces.len()))?;
    let mut total = 0;
    for (a, &ma) in spaces.iter().zip(&masks) {
        for (b, &mb) in spaces.iter().zip(&masks) {
            total += 1;
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = f.product_span(ma, mb);
            let oracle = ab == f.full() || f.dim(ab) + 1 >= f.dim(ma) + f.dim(mb);
            let rep = e(check_prime_degree(a, b))?;
            ensure(oracle && rep.verdict == Verdict::Holds && rep.dims["AB"] == f.dim(ab) as i64, || {
                format!("{} x {}", a.to_compact(), b.to_compact())
            })?;
        }
    }
    Ok(format!("{total} pairs"))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    let mut witnesses = 0;
    for (desc, f) in [("gf:2:4", gf16()), ("gf:2:5", gf32())] {
        let n = f.n;
        let (spaces, masks) = spaces_with_masks(desc, &f)?;
        for (a, &ma) in spaces.iter().zip(&masks) {
            for (b, &mb) in spaces.iter().zip(&masks) {
                if a.dim() + b.dim() <= n {
                    continue;
                }
                total += 1;
                let fail = || format!("{desc}: {} x {}", a.to_compact(), b.to_compact());
                ensure(f.product_span(ma, mb) == f.full(), fail)?;
                ensure(e(check_full_product(a, b))?.verdict == Verdict::Holds, fail)?;
                for i in 0..n {
                    let phi: Vec<u32> = (0..n).map(|j| u32::from(i == j)).collect();
                    let (x, y) = e(duality_witness(a, b, &phi))?;
                    let (xi, yi) = (f.index_of(&x), f.index_of(&y));
                    ensure(ma >> xi & 1 == 1 && mb >> yi & 1 == 1, fail)?;
                    let prod = f.element(f.mul(xi, yi));
                    let Element::Vector(v) = prod else { unreachable!() };
                    ensure(v[i] != 0, fail)?;
                    witnesses += 1;
                }
            }
        }
    }
    Ok(format!("{total} pairs, {witnesses} functional witnesses"))
}

fn monomial_span(amb: &Arc<Ambient>, r: usize) -> Result<Subspace, String> {
    let gens = e((0..r).map(|i| amb.monomial(i)).collect::<Result<Vec<_>, _>>())?;
    e(Subspace::span(amb, &gens))
}

fn numerators(s: &Subspace) -> Result<Vec<Vec<u64>>, String> {
    s.basis()
        .into_iter()
        .map(|b| match b {
            Element::Fraction { num, den } if den.is_one() => Ok(num.coeffs().iter().map(|&c| u64::from(c)).collect()),
            other => Err(format!("expected a polynomial, got {other:?}")),
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let mut random = 0;
    for (desc, p) in [("ratfun:2:64", 2u64), ("ratfun:3:64", 3u64)] {
        let amb = ambient(desc);
        for r in 1..=8 {
            let a = monomial_span(&amb, r)?;
            for s in 1..=8 {
                let b = monomial_span(&amb, s)?;
                let rep = e(check_torsion_free(&a, &b))?;
                let products: Vec<Vec<u64>> = numerators(&a)?
                    .iter()
                    .flat_map(|x| numerators(&b).unwrap().into_iter().map(move |y| poly_mul(p, x, &y)))
                    .collect();
                let oracle = poly_rank(p, &products);
                ensure(rep.verdict == Verdict::Holds && rep.dims["AB"] == (r + s - 1) as i64 && oracle == r + s - 1, || {
                    format!("{desc}: monomial spans r={r}, s={s}")
                })?;
            }
        }
        let sharp = e(torsion_free_sharpness(&amb, 8))?;
        ensure(sharp.len() == 64, || format!("{desc}: {} sharp monomial pairs", sharp.len()))?;
        for i in 0..1000u64 {
            let mut rng = instance_rng(5, i);
            let (da, db) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let a = e(random_polynomial_subspace(&amb, da, 5, &mut rng))?;
            let b = e(random_polynomial_subspace(&amb, db, 5, &mut rng))?;
            let rep = e(check_torsion_free(&a, &b))?;
            let (na, nb) = (numerators(&a)?, numerators(&b)?);
            let products: Vec<Vec<u64>> =
                na.iter().flat_map(|x| nb.iter().map(move |y| poly_mul(p, x, y))).collect();
            let oracle = poly_rank(p, &products);
            ensure(rep.verdict == Verdict::Holds && rep.dims["AB"] == oracle as i64 && oracle + 1 >= da + db, || {
                format!("{desc}: random pair {} x {}", a.to_compact(), b.to_compact())
            })?;
            random += 1;
        }
    }
    Ok(format!("2 x 64 monomial pairs, {random} random polynomial pairs"))
}

fn criterion_6() -> Outcome {
    let mut chains = 0;
    for (desc, f, expect) in [("gf:2:4", gf16(), 16), ("gf:2:6", gf64(), 374)] {
        let (spaces, masks) = spaces_with_masks(desc, &f)?;
        let with_one: Vec<_> = spaces.iter().zip(&masks).filter(|(_, &m)| m >> 1 & 1 == 1).collect();
        ensure(with_one.len() == expect, || format!("{desc}: {} spaces contain 1", with_one.len()))?;
        for (b, &mb) in with_one {
            let rep = e(power_chain(b, None))?;
            let fail = || format!("{desc}: chain of {}", b.to_compact());
            ensure(rep.holds() && rep.equivalences_ok && rep.dichotomy_ok && rep.is_field_at_n, fail)?;
            // oracle chain: ⟨B^i⟩ until it repeats
            let mut powers = vec![mb];
            loop {
                let next = f.product_span(*powers.last().unwrap(), mb);
                if next == *powers.last().unwrap() {
                    break;
                }
                powers.push(next);
            }
            let n = powers.len();
            let top = powers[n - 1];
            ensure(rep.stabilization_n == Some(n) && f.is_field(top), fail)?;
            ensure(rep.dims[..n] == powers.iter().map(|&m| f.dim(m)).collect::<Vec<_>>()[..], fail)?;
            ensure(n <= 2 * f.n / f.dim(mb), fail)?;
            // dichotomy with B⁰ = K
            let mut dims = vec![1];
            dims.extend(powers.iter().map(|&m| f.dim(m)));
            dims.push(f.dim(top));
            for i in 1..dims.len() - 1 {
                ensure(dims[i + 1] == dims[i] || dims[i + 1] >= dims[i - 1] + f.dim(mb), fail)?;
            }
            chains += 1;
        }
    }
    let mut sharp = 0;
    for desc in ["gf:2:4", "gf:2:6"] {
        let w = e(power_chain_sharpness(&ambient(desc)))?;
        ensure(w.iter().any(|r| r.certificate["complement_of_k"] == true), || format!("{desc}: no sharp complement"))?;
        ensure(w.iter().all(|r| r.bound.is_some() && r.dims.get("n").copied() == r.bound), || {
            format!("{desc}: witness misses the bound")
        })?;
        sharp += w.len();
    }
    Ok(format!("{chains} chains, {sharp} sharpness witnesses"))
}

fn criterion_7() -> Outcome {
    let mut steps = 0;
    for (desc, f) in [("gf:2:4", gf16()), ("gf:3:3", gf27()), ("gf:2:6", gf64())] {
        let amb = ambient(desc);
        for i in 0..10_000u64 {
            let mut rng = instance_rng(7, i);
            let (da, db) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let a = e(random_subspace(&amb, da, false, &mut rng))?;
            let b = e(random_subspace(&amb, db, false, &mut rng))?;
            let red = e(reduce_pair(&a, &b))?;
            e(red.trace.verify())?;
            let fail = || format!("{desc}: reduction of {} x {}", a.to_compact(), b.to_compact());
            let ab = f.dim(f.product_span(f.mask(&a), f.mask(&b)));
            ensure(red.trace.steps.len() < (2 * ab * ab).max(1), fail)?;
            let mut prev = (a.dim(), b.dim());
            for s in &red.trace.steps {
                let (x, y) = s.dims_after;
                ensure((x + y, x) > (prev.0 + prev.1, prev.0), fail)?;
                prev = (x, y);
            }
            // every u with uE ∩ E ≠ 0 and uF ∩ F ≠ 0 fixes both
            let (me, mf) = (f.mask(&red.e), f.mask(&red.f));
            for u in 1..f.size {
                let (ue, uf) = (f.scale(u, me), f.scale(u, mf));
                if ue & me != 1 && uf & mf != 1 {
                    ensure(ue == me && uf == mf, fail)?;
                }
            }
            steps += red.trace.steps.len();
        }
    }
    Ok(format!("30000 reductions, {steps} steps"))
}

fn criterion_8() -> Outcome {
    let mut steps = 0;
    let mut draws = 0;
    for (desc, f) in [("gf:2:4", Some(gf16())), ("gf:3:3", Some(gf27())), ("gf:2:6", Some(gf64())), ("ratfun:2:32", None)] {
        let amb = ambient(desc);
        let mut found = 0;
        let mut i = 0u64;
        while found < 1000 {
            let mut rng = instance_rng(8, i);
            i += 1;
            draws += 1;
            let (da, db) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let a_bar = e(random_subspace(&amb, da, false, &mut rng))?;
            let b_bar = e(random_subspace(&amb, db, false, &mut rng))?;
            let Ok(inst) = UniqueRepInstance::new(&a_bar, &b_bar) else { continue };
            found += 1;
            let fail = || format!("{desc}: instance {} / {}", a_bar.to_compact(), b_bar.to_compact());
            let rep = e(check_unique_rep(&inst))?;
            ensure(rep.verdict == Verdict::Holds, fail)?;
            if let Some(f) = &f {
                // Cond and the bound from the oracle
                let (ma, mb) = (f.mask(&a_bar), f.mask(&b_bar));
                let w = f.span(SmallField::members(ma).chain(SmallField::members(mb)).chain(SmallField::members(f.product_span(ma, mb))));
                ensure(w >> 1 & 1 == 0, fail)?;
                let ab = f.dim(f.product_span(f.mask(inst.a()), f.mask(inst.b())));
                ensure(ab + 1 >= da + db + 2, fail)?;
            }
            // each step re-verifies the condition; losing it is an error
            let run = e(unique_rep_reduce(&inst))?;
            ensure(run.end.a_bar().intersect(run.end.b_bar()).map_err(|x| x.to_string())?.is_zero(), fail)?;
            ensure(e(check_unique_rep(&run.end))?.verdict == Verdict::Holds, fail)?;
            steps += run.steps.len();
        }
    }
    Ok(format!("4000 instances from {draws} draws, {steps} transform steps"))
}

fn criterion_9() -> Outcome {
    let f = gf16();
    let (spaces, masks) = spaces_with_masks("gf:2:4", &f)?;
    let mut counts = [0usize; 2];
    for (a, &ma) in spaces.iter().zip(&masks) {
        for (b, &mb) in spaces.iter().zip(&masks) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = f.product_span(ma, mb);
            for (c, &mc) in spaces.iter().zip(&masks) {
                if mc >> 1 & 1 == 0 {
                    continue;
                }
                let abc = f.product_span(ab, mc);
                let rep = e(check_abc_linear(a, b, c))?;
                let fail = || format!("{} x {} x {}", a.to_compact(), b.to_compact(), c.to_compact());
                if abc == ab {
                    ensure(rep.verdict == Verdict::DegenerateBranch, fail)?;
                    counts[0] += 1;
                } else {
                    // H = stabilizer of ⟨AB⟩ also fixes ⟨ABC⟩, so both are H-modules
                    let h = f.stabilizer(ab);
                    ensure(f.dim(abc) >= f.dim(ma) + f.dim(mb), fail)?;
                    ensure(f.product_span(h, abc) == abc, fail)?;
                    ensure(f.dim(abc) % f.dim(h) == 0 && f.dim(ab) % f.dim(h) == 0, fail)?;
                    ensure(rep.dims["H"] == f.dim(h) as i64, fail)?;
                    ensure(rep.verdict == Verdict::Holds, fail)?;
                    counts[1] += 1;
                }
            }
            // Σ_b ⟨AB²⟩ b⁻¹ over nonzero b ∈ B
            let rep = e(check_cor3(a, b))?;
            let ab2 = f.product_span(ab, mb);
            let quot = SmallField::members(mb).filter(|&x| x != 0).fold(1u64, |acc, x| {
                f.span(SmallField::members(acc).chain(SmallField::members(f.scale(f.inv(x), ab2))))
            });
            let expected = if quot == ab {
                Verdict::DegenerateBranch
            } else if f.dim(ab2) >= f.dim(ma) + f.dim(mb) {
                Verdict::Holds
            } else {
                Verdict::Violated
            };
            ensure(rep.verdict == expected && expected != Verdict::Violated && ab & !quot == 0, || {
                format!("cor3 {} x {}", a.to_compact(), b.to_compact())
            })?;
        }
    }
    Ok(format!("{} triples ({} degenerate), 4356 cor3 pairs", counts[0] + counts[1], counts[0]))
}

/// Subgroup count by testing every subset for closure.
fn oracle_subgroups(g: &GroupTable) -> usize {
    let n = g.order();
    (1u64..(1 << n))
        .filter(|&s| {
            let members: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
            s >> g.identity() & 1 == 1 && members.iter().all(|&x| members.iter().all(|&y| s >> g.mul(x, y) & 1 == 1))
        })
        .count()
}

fn criterion_10() -> Outcome {
    let groups = [("cyclic:5", 2), ("cyclic:6", 4), ("cyclic:7", 2), ("cyclic:8", 4), ("sym:3", 6), ("dihedral:4", 10)];
    let mut instances = 0;
    for (desc, subgroups) in groups {
        let g = e(GroupTable::parse(desc))?;
        ensure(g.subgroups().len() == subgroups && oracle_subgroups(&g) == subgroups, || {
            format!("{desc}: subgroup count")
        })?;
        let n = g.order();
        for a in 1u64..(1 << n) {
            for b in 1u64..(1 << n) {
                let naive = (0..n)
                    .filter(|&x| a >> x & 1 == 1)
                    .flat_map(|x| (0..n).filter(move |&y| b >> y & 1 == 1).map(move |y| (x, y)))
                    .fold(0u64, |acc, (x, y)| acc | 1 << g.mul(x, y));
                ensure(g.product_set(GSet::from_bits(a), GSet::from_bits(b)).bits() == naive, || {
                    format!("{desc}: product set")
                })?;
            }
        }
        let mut theorems = vec!["basic", "kemperman", "olson", "thOl2", "thOl3", "abc"];
        if g.is_abelian() {
            theorems.extend(["kneser", "abc-abelian"]);
        }
        for t in theorems {
            let s = e(run_group(&Campaign::new(t, desc, Source::Exhaustive), None))?;
            ensure(s.violated == 0, || format!("{desc} {t}: {} violations", s.violated))?;
            instances += s.instances;
        }
    }
    Ok(format!("{instances} group instances over 6 groups"))
}

fn campaign_bytes(runner: &str, theorem: &str, desc: &str, seed: u64, jobs: usize) -> Result<Vec<u8>, String> {
    let mut c = Campaign::new(theorem, desc, Source::Random { trials: 500, seed });
    c.jobs = jobs;
    c.max_dim = Some(3);
    let mut buf = Vec::new();
    match runner {
        "group" => e(run_group(&c, Some(&mut buf)))?,
        _ => e(run_linear(&c, Some(&mut buf)))?,
    };
    Ok(buf)
}

fn criterion_11() -> Outcome {
    let runs = [
        ("linear", "olson-linear", "gf:2:4"),
        ("linear", "transform", "gf:3:3"),
        ("linear", "unique-rep", "ratfun:2:32"),
        ("linear", "kneser-linear", "gf:2:6"),
        ("group", "olson", "dihedral:4"),
        ("group", "abc-abelian", "cyclic:8"),
    ];
    for (runner, theorem, desc) in runs {
        let first = campaign_bytes(runner, theorem, desc, 11, 1)?;
        let again = campaign_bytes(runner, theorem, desc, 11, 1)?;
        let threaded = campaign_bytes(runner, theorem, desc, 11, 2)?;
        let other = campaign_bytes(runner, theorem, desc, 12, 1)?;
        ensure(!first.is_empty() && first == again && first == threaded, || format!("{theorem} on {desc}: output differs"))?;
        ensure(first != other, || format!("{theorem} on {desc}: seed ignored"))?;
    }
    Ok(format!("{} campaigns byte-identical across repeats and thread counts", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("exhaustive linear Kneser on GF(16) and GF(27)", criterion_1),
        ("Olson certificates on GF(16) and GF(27)", criterion_2),
        ("prime degree on GF(32)", criterion_3),
        ("full product and duality witnesses on GF(16) and GF(32)", criterion_4),
        ("torsion-free bound and monomial sharpness", criterion_5),
        ("power chains on GF(16) and GF(64)", criterion_6),
        ("transform driver on random pairs", criterion_7),
        ("unique representation instances", criterion_8),
        ("ABC dichotomy and divisibility on GF(16)", criterion_9),
        ("group-side theorems on six small groups", criterion_10),
        ("determinism of random campaigns", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
