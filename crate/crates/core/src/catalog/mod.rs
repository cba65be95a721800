//! Built-in varieties and orbifold data, and the JSON variety format.

mod builders;
mod json;

pub use builders::{
    blowup_point, build, formal_torus, hypersurface, kummer_datum, product, proj_space,
    proj_space_with, CATALOG_KEYS,
};
pub use json::{
    load_variety, save_variety, variety_from_str, variety_to_string, VarietyJson,
    MAX_CHARACTER_DENOMINATOR,
};
