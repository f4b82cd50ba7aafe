//! File formats, the command line and the HTTP service.

pub mod cli;
pub mod pipeline;
pub mod service;
pub mod tsv;

pub use cli::dispatch;
pub use pipeline::Annotator;
pub use tsv::{read_corpus, save_corpus, write_corpus, TsvError};
