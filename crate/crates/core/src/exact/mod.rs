//! Closed-form hitting times, the mutation-only (2:2)-EA CFHT tables, checks
//! of the claimed table inequalities, bit-pair distribution formulas and
//! runtime bounds.

mod bounds;
mod closed_form;
mod distribution;
mod inequalities;
mod table;

pub use bounds::{theorem_bound, BoundReport, TheoremId};
pub use closed_form::{
    cfht_opo_onemax, cfht_strict_opo_leadingones, harmonic, ref_dcfht_leadingones, ref_dcfht_onemax,
};
pub use distribution::{equal_lo_lower_bound, n01_fraction_upper_bound, pair_marginals};
pub use inequalities::{check_cfht_inequalities, check_table, InequalityId, InequalityViolation};
pub use table::{cfht_table, CfhtTable};
