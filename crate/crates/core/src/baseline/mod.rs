//! Reference algorithms: a textbook Buchberger oracle and an SB-style
//! signature algorithm that shares the M5GB main loop but reduces term by
//! term without a reductor cache.

mod buchberger;
mod sb;

pub use buchberger::{buchberger, buchberger_run};
pub use sb::sb_run;
