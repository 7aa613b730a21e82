//! Product sets in small finite groups: Cayley tables, bitmask subsets,
//! subgroup lattices and exhaustive checks of the classical theorems.

mod bridge;
mod checks;
mod set;
mod table;

pub use bridge::{bridge_olson, UnitGroup};
pub use checks::{
    check_abc_abelian, check_abc_sets, check_basic, check_kemperman_unique, check_olson_sets, check_th_ol2,
    check_th_ol3, kneser_check, olson_find, set_kemperman_transform, set_stabilizer, unique_products,
    SetOlsonCertificate,
};
pub use set::GSet;
pub use table::{GroupTable, MAX_ORDER};
