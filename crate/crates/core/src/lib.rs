//! Exact certificates for infinite p-class field towers via cut Golod-Shafarevich
//! presentations, together with the class-number computations that feed them.
//!
//! * [`arith`]: rationals, cyclotomic field elements, resultant norms, certified
//!   comparisons of huge powers.
//! * [`gs`]: Golod-Shafarevich polynomials, negativity witnesses, minimal cut levels.
//! * [`cohomology`]: presentation data of `G_S`, `Gamma`, `Gamma_k` and the tower pipeline.
//! * [`cyclo_class`]: relative class numbers of prime-power cyclotomic fields.
//! * [`shanks`]: Shanks' simplest cubic fields.
//! * [`report`]: the command layer used by the CLI.

pub mod arith;
pub mod cohomology;
pub mod config;
pub mod cyclo_class;
pub mod error;
pub mod gs;
pub mod primality;
pub mod report;
pub mod serde_util;
pub mod shanks;

pub use config::Config;
pub use error::{Error, Result};
