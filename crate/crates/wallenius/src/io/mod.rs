//! File formats: the long-form dataset CSV, chain CSV export and canonical
//! JSON results.

mod csv_io;
mod json;

pub use csv_io::{parse_dataset, write_chain_csv, write_dataset};
pub use json::{canonical_json, format_float, to_canonical_string, write_results};
