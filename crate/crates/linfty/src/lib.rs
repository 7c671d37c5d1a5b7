//! File formats, golden-table reproduction and the command-line front end
//! for `linfty-core`.

pub mod cli;
pub mod files;
pub mod golden;
pub mod template;
