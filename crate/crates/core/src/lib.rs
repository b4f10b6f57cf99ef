//! Pool-based active learning simulation for text classification.
//!
//! A [`corpus::Corpus`] is turned into a [`representation::DesignMatrix`],
//! the [`engine`] repeatedly trains a linear SVM and asks one of the
//! [`strategies`] for the next batch to label, and [`stats`] compares the
//! resulting learning curves across datasets.

pub mod classifier;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod report;
pub mod representation;
pub mod stats;
pub mod strategies;

pub use error::{Error, Result};
