pub mod config;
pub mod cooccur;
pub mod corpus;
mod ddouble;
pub mod dtm;
pub mod error;
pub mod explore;
pub mod lda;
pub mod network;
pub mod pipeline;
pub mod special;
pub mod svg;
pub mod textprep;

pub use error::{Error, Result};
