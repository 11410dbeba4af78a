//! Report formats and table-reproduction campaigns behind the `boxmin`
//! command-line front end.

pub mod report;
pub mod tables;
