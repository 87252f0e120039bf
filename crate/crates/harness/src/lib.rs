//! Verification suites over `tk-core`, one per stated result, with JSON
//! reports and catalog persistence.

pub mod catalogs;
pub mod error;
pub mod pairs;
pub mod params;
pub mod report;
pub mod suites;

pub use error::{HarnessError, Result};
pub use params::{Mode, Params};
pub use report::{Report, Violation, MAX_VIOLATIONS};
pub use suites::{find_suite, run_suite, Suite, SUITES};
