pub mod cli;
pub mod error;
pub mod framework;
pub mod gen;
pub mod oracle;
pub mod spiral;
pub mod tapevm;
pub mod thompson;
pub mod z2wrf2;
pub mod z2wrz2;

pub use error::{Error, Result, TapeError};
pub use gen::Gen;
