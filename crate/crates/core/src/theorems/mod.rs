//! Certificate constructors and verifiers for the linear addition theorems.

mod abc;
mod fields;
mod kneser;
mod olson;
mod powers;
mod report;
mod unique_rep;

pub use abc::{check_abc_linear, check_cor3};
pub use fields::{h_module_decompose, is_field_subspace, stabilizer};
pub use kneser::{check_full_product, check_kneser_linear, check_prime_degree, check_torsion_free, duality_witness};
pub use olson::{check_olson_linear, olson_linear, OlsonCase, OlsonCertificate, Side};
pub use powers::{power_chain, PowerChainReport};
pub use report::{TheoremReport, Verdict};
pub use unique_rep::{check_unique_rep, unique_rep_reduce, unique_rep_transform_step, UniqueRepInstance, UniqueRepRun};
