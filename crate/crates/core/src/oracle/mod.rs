//! Brute-force persistence modules on finite ℤ and ℤ² grids over a prime
//! field. Everything here is computed from the definitions (colimits,
//! solution spaces of naturality equations, pointwise kernels and
//! cokernels) and serves as the independent check on the closed forms.

mod cells;
mod complex;
mod field;
mod flabby;
mod hom;
mod module;
mod morphism;
mod resolution;
mod tensor;

pub use cells::{CellGrid, IntervalComplex};
pub use complex::{grid_homology, tensor_complex, GridComplex};
pub use field::{FieldElem, Fp, Matrix, Quotient, Subspace, PRIME_ENV};
pub use flabby::{is_flabby, join_closed_downset_injective, DownSet};
pub use hom::{grid_nat_hom_dim, grid_sheaf_hom, grid_underline_hom, HomModule};
pub use module::{
    decompose, random_invertible, realize, realize_rectangle, scramble, GridModule, Layout, Point, Window,
};
pub use morphism::GridMorphism;
pub use resolution::{grid_resolution_ext1, grid_resolution_sh_ext1, grid_resolution_tor1};
pub use tensor::{grid_gr_tensor, grid_sh_tensor, grid_sh_tensor_map, GradedTensor};
