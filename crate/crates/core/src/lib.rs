//! Homological algebra of one-parameter persistence modules.
//!
//! Closed-form tensor, hom, Tor and Ext of interval modules live in
//! [`interval`]; their bilinear extension to barcodes and the Künneth and
//! universal-coefficient pipelines live in [`barcode`]; [`oracle`] recomputes
//! everything from first principles on finite grids over a prime field; and
//! [`complex`] turns filtered cell complexes into barcodes.

pub mod barcode;
pub mod check;
pub mod complex;
pub mod error;
pub mod interval;
pub mod oracle;

pub use barcode::{Barcode, Bifunctor, GradedBarcode, Mode};
pub use error::{Error, Result};
pub use interval::{Endpoint, Interval, IntervalClass, MaybeInterval, Rational, Rectangle, Shape};
