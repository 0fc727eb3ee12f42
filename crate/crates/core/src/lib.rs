//! Construction, verification and search for q-ary codes that correct `t`
//! symmetric errors and detect all unidirectional errors (t-EC-AUED codes).
//!
//! A code is `t`-EC-AUED exactly when every ordered pair of distinct
//! codewords `x, y` has `N(x, y) >= t + 1`, where `N(x, y)` counts positions
//! with `x_i > y_i`.

pub mod bounds;
pub mod catalog;
pub mod code;
pub mod construct;
pub mod designs;
mod error;
pub mod field;
pub mod search;
pub mod simulate;

pub use bounds::{gbt, gbt_value, BoundReport};
pub use code::{
    asymmetric_distance, count_above, hamming_distance, is_t_ec_aued, min_asymmetric_distance, Code,
    DistanceSummary, Word,
};
pub use error::{Error, Result};
pub use field::{field_make, FieldTable};
pub use search::{certify, max_code_size, min_length, shrink, OptimalityCertificate, SearchLimits, Verdict};
