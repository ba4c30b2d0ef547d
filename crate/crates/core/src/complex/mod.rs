//! Filtered cell complexes, their chain complexes of free persistence
//! modules, persistent homology, product filtrations and the two-path
//! Künneth and coefficient-change checks.
//!
//! Complexes built here have free terms and free boundary submodules (the
//! image of a degree-zero map between up-rays is an up-ray), so the flatness
//! hypotheses of the Künneth sequence hold by construction.

mod chain;
mod filtration;
mod persistence;
mod verify;

pub use chain::{chain_complex, product_complex, FreeChainComplex, Generator};
pub use filtration::{Cell, CellId, FilteredComplex, ProductMode, Sign};
pub use persistence::persistence;
pub use verify::{
    coefficient_change, grid_barcodes, grid_persistence, grid_product_homology, verify_kunneth, CoefficientChange, KunnethReport,
    Variance,
};
