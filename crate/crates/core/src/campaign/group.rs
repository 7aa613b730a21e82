use std::io::Write;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groupsets::{
    check_abc_abelian, check_abc_sets, check_basic, check_kemperman_unique, check_olson_sets, check_th_ol2,
    check_th_ol3, kneser_check, GSet, GroupTable,
};
use crate::theorems::TheoremReport;

use super::{check_ceiling, instance_rng, run_indexed, Campaign, Source, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTheorem {
    Basic,
    Kemperman,
    Olson,
    ThOl2,
    ThOl3,
    Abc,
    AbcAbelian,
    Kneser,
}

impl FromStr for GroupTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "basic" => GroupTheorem::Basic,
            "kemperman" => GroupTheorem::Kemperman,
            "olson" => GroupTheorem::Olson,
            "thOl2" => GroupTheorem::ThOl2,
            "thOl3" => GroupTheorem::ThOl3,
            "abc" => GroupTheorem::Abc,
            "abc-abelian" => GroupTheorem::AbcAbelian,
            "kneser" => GroupTheorem::Kneser,
            _ => return Err(Error::Descriptor(format!("unknown group theorem `{s}`"))),
        })
    }
}

/// The range of one input position.
enum Family {
    Nonempty,
    ContainsOne,
    /// (B, C) with ∅ ≠ B ⊆ C and 1 ∈ C
    Nested(Vec<(GSet, GSet)>),
    Exponent,
}

/// Inserts a zero bit at position `at`.
fn spread(k: u64, at: usize) -> u64 {
    let low = k & ((1u64 << at) - 1);
    (low | ((k >> at) << (at + 1))) & !(1u64 << at)
}

impl Family {
    fn count(&self, order: usize) -> u128 {
        match self {
            Family::Nonempty => (1u128 << order) - 1,
            Family::ContainsOne => 1u128 << (order - 1),
            Family::Nested(list) => list.len() as u128,
            Family::Exponent => order as u128,
        }
    }

    fn nested_count(order: usize) -> u128 {
        2 * 3u128.pow(order as u32 - 1) - (1u128 << (order - 1))
    }

    fn nested_list(g: &GroupTable) -> Vec<(GSet, GSet)> {
        let order = g.order();
        let e = g.identity();
        let mut out = Vec::new();
        for k in 0..(1u64 << (order - 1)) {
            let c = spread(k, e) | (1u64 << e);
            // nonempty submasks of c, in increasing order
            let mut b = c;
            let mut subs = Vec::new();
            while b != 0 {
                subs.push(b);
                b = (b - 1) & c;
            }
            subs.reverse();
            out.extend(subs.into_iter().map(|b| (GSet::from_bits(b), GSet::from_bits(c))));
        }
        out
    }
}

/// Input value at a given position: a set, a (B, C) pair or an exponent.
#[derive(Clone, Copy)]
enum Item {
    Set(GSet),
    Pair(GSet, GSet),
    Exp(usize),
}

fn draw(family: &Family, g: &GroupTable, k: u64) -> Item {
    match family {
        Family::Nonempty => Item::Set(GSet::from_bits(k + 1)),
        Family::ContainsOne => Item::Set(GSet::from_bits(spread(k, g.identity()) | (1u64 << g.identity()))),
        Family::Nested(list) => {
            let (b, c) = list[k as usize];
            Item::Pair(b, c)
        }
        Family::Exponent => Item::Exp(k as usize + 1),
    }
}

fn draw_random(family: &Family, g: &GroupTable, rng: &mut impl Rng) -> Item {
    let full = g.whole().bits();
    let e = 1u64 << g.identity();
    match family {
        Family::Nonempty => loop {
            let s = rng.gen::<u64>() & full;
            if s != 0 {
                return Item::Set(GSet::from_bits(s));
            }
        },
        Family::ContainsOne => Item::Set(GSet::from_bits((rng.gen::<u64>() & full) | e)),
        Family::Nested(_) => {
            let c = (rng.gen::<u64>() & full) | e;
            loop {
                let b = rng.gen::<u64>() & c;
                if b != 0 {
                    return Item::Pair(GSet::from_bits(b), GSet::from_bits(c));
                }
            }
        }
        Family::Exponent => Item::Exp(rng.gen_range(1..=g.order())),
    }
}

/// Parses one explicit instance: a set per plain position, two sets B C for
/// a nested position, an integer for an exponent.
fn parse_items(fams: &[Family], g: &GroupTable, tokens: &[String]) -> Result<Vec<Item>> {
    let mut rest = tokens.iter();
    let mut next = || rest.next().ok_or_else(|| Error::Parse("too few inputs in an instance".into()));
    let e = g.identity();
    let mut items = Vec::with_capacity(fams.len());
    for f in fams {
        let item = match f {
            Family::Nonempty | Family::ContainsOne => {
                let s = GSet::parse(next()?, g.order())?;
                if s.is_empty() || (matches!(f, Family::ContainsOne) && !s.contains(e)) {
                    return Err(Error::Precondition(format!("set {{{s}}} is empty or misses the identity")));
                }
                Item::Set(s)
            }
            Family::Nested(_) => {
                let b = GSet::parse(next()?, g.order())?;
                let c = GSet::parse(next()?, g.order())?;
                if b.is_empty() || !b.is_subset_of(c) || !c.contains(e) {
                    return Err(Error::Precondition("need ∅ ≠ B ⊆ C ∋ 1".into()));
                }
                Item::Pair(b, c)
            }
            Family::Exponent => {
                let t = next()?;
                let n: usize = t.parse().map_err(|_| Error::Parse(format!("bad exponent `{t}`")))?;
                if n == 0 {
                    return Err(Error::Precondition("exponent must be ≥ 1".into()));
                }
                Item::Exp(n)
            }
        };
        items.push(item);
    }
    if rest.next().is_some() {
        return Err(Error::Parse("too many inputs in an instance".into()));
    }
    Ok(items)
}

fn families(t: GroupTheorem) -> Vec<Family> {
    match t {
        GroupTheorem::Basic | GroupTheorem::Kemperman | GroupTheorem::Olson | GroupTheorem::Kneser => {
            vec![Family::Nonempty, Family::Nonempty]
        }
        GroupTheorem::ThOl2 => vec![Family::Nonempty, Family::ContainsOne],
        GroupTheorem::ThOl3 => vec![Family::Nonempty, Family::Exponent],
        GroupTheorem::Abc => vec![Family::Nonempty, Family::Nested(Vec::new())],
        GroupTheorem::AbcAbelian => vec![Family::Nonempty, Family::Nonempty, Family::ContainsOne],
    }
}

fn evaluate(t: GroupTheorem, g: &GroupTable, subgroups: &[GSet], items: &[Item]) -> Result<TheoremReport> {
    let set = |i: usize| match items[i] {
        Item::Set(s) => s,
        _ => unreachable!("set position"),
    };
    match t {
        GroupTheorem::Basic => check_basic(g, set(0), set(1)),
        GroupTheorem::Kemperman => check_kemperman_unique(g, set(0), set(1)),
        GroupTheorem::Olson => check_olson_sets(g, subgroups, set(0), set(1)),
        GroupTheorem::Kneser => kneser_check(g, set(0), set(1)),
        GroupTheorem::ThOl2 => check_th_ol2(g, set(0), set(1)),
        GroupTheorem::ThOl3 => match items[1] {
            Item::Exp(n) => check_th_ol3(g, set(0), n),
            _ => unreachable!("exponent position"),
        },
        GroupTheorem::Abc => match items[1] {
            Item::Pair(b, c) => check_abc_sets(g, set(0), b, c),
            _ => unreachable!("pair position"),
        },
        GroupTheorem::AbcAbelian => check_abc_abelian(g, set(0), set(1), set(2)),
    }
}

/// Runs a campaign over subsets of a finite group. `dims` filters set sizes
/// per position in exhaustive mode.
pub fn run_group(c: &Campaign, out: Option<&mut dyn Write>) -> Result<Summary> {
    let theorem: GroupTheorem = c.theorem.parse()?;
    let g = GroupTable::parse(&c.descriptor)?;
    if matches!(theorem, GroupTheorem::Kneser | GroupTheorem::AbcAbelian) && !g.is_abelian() {
        return Err(Error::Precondition(format!("{} needs an abelian group", c.theorem)));
    }
    let order = g.order();
    let mut fams = families(theorem);
    let subgroups = if theorem == GroupTheorem::Olson { g.subgroups() } else { Vec::new() };
    let mut explicit = Vec::new();
    let count = match &c.source {
        Source::Exhaustive => {
            if let Some(pos) = fams.iter().position(|f| matches!(f, Family::Nested(_))) {
                check_ceiling(Family::nested_count(order), c.ceiling)?;
                fams[pos] = Family::Nested(Family::nested_list(&g));
            }
            let count = fams.iter().fold(1u128, |acc, f| acc.saturating_mul(f.count(order)));
            check_ceiling(count, c.ceiling)?;
            count as u64
        }
        Source::Random { trials, .. } => *trials,
        Source::Explicit(instances) => {
            explicit = instances.iter().map(|t| parse_items(&fams, &g, t)).collect::<Result<Vec<_>>>()?;
            instances.len() as u64
        }
    };
    let explicit = &explicit;
    let fams = &fams;
    let counts: Vec<u64> = fams.iter().map(|f| f.count(order).min(u64::MAX as u128) as u64).collect();
    let dims = c.dims.clone();
    let g = &g;
    let subgroups = &subgroups;
    let size_ok = |items: &[Item]| -> bool {
        let Some(d) = &dims else { return true };
        items.iter().enumerate().all(|(pos, it)| match (it, d.get(pos)) {
            (Item::Set(s), Some(&want)) => s.len() == want,
            (Item::Pair(b, _), Some(&want)) => b.len() == want,
            _ => true,
        })
    };
    let eval = move |i: u64| -> Result<TheoremReport> {
        let items: Vec<Item> = match &c.source {
            Source::Exhaustive => {
                let mut idx = i;
                let mut items = vec![Item::Exp(0); fams.len()];
                for pos in (0..fams.len()).rev() {
                    items[pos] = draw(&fams[pos], g, idx % counts[pos]);
                    idx /= counts[pos];
                }
                items
            }
            Source::Random { seed, .. } => {
                let mut rng = instance_rng(*seed, i);
                fams.iter().map(|f| draw_random(f, g, &mut rng)).collect()
            }
            Source::Explicit(_) => explicit[i as usize].clone(),
        };
        let mut r = evaluate(theorem, g, subgroups, &items)?;
        if !size_ok(&items) {
            r.verdict = crate::theorems::Verdict::NotApplicable;
        }
        Ok(r)
    };
    run_indexed(count, c.jobs, eval, out)
}
