//! Analysis and design of gyroscopic interconnections between two
//! conservative oscillators.
//!
//! The coupled system is
//!
//! ```text
//! q'' + n z' + q = 0,    z'' - n q' + z = 0
//! ```
//!
//! driven by an impulse `(q, q', z, z')(0) = (0, qdot0, 0, 0)`. The crate
//! covers the closed-form modal solution ([`dynamics`]), resonant pair
//! arithmetic ([`resonance`]), the convex envelope of the `(q, q')`
//! projection ([`envelope`]), the resonant inscribed radius with its
//! certified asymptotic proxy ([`inscribed`]), independent brute-force
//! checks ([`oracle`]) and the absorption/containment design searches
//! ([`design`]). The [`cli`] module backs the `gyroshape` binary.
//!
//! ```
//! use gyroshape::inscribed::{inscribed_radius_exact, ResonantParam};
//! use gyroshape::resonance::ResonantPair;
//!
//! let pair = ResonantPair::new(6, 5).unwrap();
//! let report = inscribed_radius_exact(&ResonantParam::new(pair, 1.0)).unwrap();
//! assert!((report.r_res - 5.075e-2).abs() < 1e-3);
//! ```

pub mod cli;
pub mod design;
pub mod dynamics;
pub mod envelope;
mod error;
pub mod inscribed;
mod numeric;
pub mod oracle;
pub mod resonance;

pub use error::{Error, Result};
