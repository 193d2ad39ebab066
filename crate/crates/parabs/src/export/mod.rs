//! Persistence of the aligned corpus: TMX, a relational store, statistics.

mod stats;
mod store;
mod tmx;

pub use stats::{compute_stats, render_table, render_tsv, AreaStats, CorpusStats};
pub use store::{dump_store, pairs_in_area, store_counts, write_store, StoreCounts};
pub use tmx::{read_tmx, validate_tmx, write_tmx, TmxRead};
