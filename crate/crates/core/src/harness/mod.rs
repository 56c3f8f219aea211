//! Random sampling, timing runs and exhaustive enumeration of small groups.

pub mod bench;
pub mod enumerate;
pub mod sample;

pub use bench::{read_csv, run_bench, write_csv, BenchPlan, BenchRecord};
pub use enumerate::{enumerate_elements, enumerate_small_group, group_order, EnumerationReport};
pub use sample::{sample_element, sample_member, sample_parabolic_word, sample_word};
