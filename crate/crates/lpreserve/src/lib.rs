//! File formats, the command-line pipeline, reference oracles and the
//! acceptance suite on top of `lpreserve-core`.

pub mod acceptance;
pub mod cli;
pub mod instances;
pub mod mapfile;
pub mod oracle;
