//! Std companion to `ptak-core`: JSON file formats, seeded corpora, the
//! invariant suite and the `ptakkit` command-line tool.

pub mod cli;
pub mod corpus;
pub mod formats;
pub mod suite;
