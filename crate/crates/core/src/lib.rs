pub mod error;
pub mod exact;
pub mod gf;
pub mod gorenstein;
pub mod quotient;
pub mod rep;
pub mod report;
pub mod subcat;

pub use error::{Error, Result};
