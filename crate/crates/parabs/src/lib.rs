pub mod align;
pub mod error;
pub mod ingest;
pub mod langid;
pub mod segment;
pub mod text;

pub use error::{Error, Result};
