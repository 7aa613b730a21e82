//! The multiplicative group L^* of a small finite extension as a group
//! table, so that the set-side and linear Olson certificates of the same
//! pair can be compared.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{Ambient, Element};
use crate::subspace::Subspace;
use crate::theorems::{olson_linear, OlsonCertificate};

use super::checks::{olson_find, SetOlsonCertificate};
use super::set::GSet;
use super::table::{GroupTable, MAX_ORDER};

#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub table: GroupTable,
    pub subgroups: Vec<GSet>,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl UnitGroup {
    /// L^* with elements indexed in the enumeration order of L.
    pub fn new(ambient: &Arc<Ambient>) -> Result<Self> {
        let whole = Subspace::whole(ambient)?;
        if whole.nonzero_count() > MAX_ORDER as u128 {
            return Err(Error::Precondition("L^* has more than 64 elements".into()));
        }
        let elements: Vec<Element> = whole.enumerate_nonzero()?.collect();
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut t = Vec::with_capacity(elements.len());
        for x in &elements {
            let row: Result<Vec<usize>> = elements.iter().map(|y| Ok(index[&ambient.mul(x, y)?])).collect();
            t.push(row?);
        }
        let table = GroupTable::from_table(&format!("units:{}", ambient.descriptor()), &t)?;
        let subgroups = table.subgroups();
        Ok(UnitGroup { table, subgroups, elements, index })
    }

    /// V ∖ {0} as a subset of L^*.
    pub fn nonzero_set(&self, v: &Subspace) -> Result<GSet> {
        Ok(GSet::from_indices(v.enumerate_nonzero()?.map(|e| self.index[&e])))
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }
}

/// Both certificates for (A, B); neither is required to match the other.
pub fn bridge_olson(units: &UnitGroup, a: &Subspace, b: &Subspace) -> Result<(OlsonCertificate, SetOlsonCertificate)> {
    let linear = olson_linear(a, b)?;
    let sa = units.nonzero_set(a)?;
    let sb = units.nonzero_set(b)?;
    let set = olson_find(&units.table, &units.subgroups, sa, sb)
        .ok_or_else(|| Error::Invariant("set-side Olson search exhausted".into()))?;
    Ok((linear, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::all_subspaces;

    #[test]
    fn units_of_gf16_are_cyclic_of_order_15() {
        let a = Arc::new(Ambient::parse("gf:2:4").unwrap());
        let u = UnitGroup::new(&a).unwrap();
        assert_eq!(u.table.order(), 15);
        assert!(u.table.is_abelian());
        assert_eq!(u.subgroups.len(), 4);
        assert_eq!(u.element(u.table.identity()), &a.one());
    }

    #[test]
    fn both_certificates_exist_for_small_pairs() {
        let a = Arc::new(Ambient::parse("gf:2:3").unwrap());
        let u = UnitGroup::new(&a).unwrap();
        let spaces: Vec<_> = all_subspaces(&a, None).unwrap().into_iter().filter(|s| !s.is_zero()).collect();
        for x in &spaces {
            for y in &spaces {
                let (lin, set) = bridge_olson(&u, x, y).unwrap();
                lin.verify().unwrap();
                assert!(set.s.len() + set.h.len() >= x.nonzero_count() as usize + y.nonzero_count() as usize);
            }
        }
    }
}
