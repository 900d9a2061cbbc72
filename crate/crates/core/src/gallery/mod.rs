//! Constructors for the counterexample families.
//!
//! - [`cayley`]: Cayley tables and the regular representation `f(x, y) = (xy, y)`.
//! - [`checkered`]: the checkered Cartesian product for a fixed-point-free `σ`.
//! - [`lazy`]: finitely described bijections on `ℕ × C` (header block plus
//!   arithmetic tails), used for the infinite counterexamples.
//! - [`gadgets`]: the division-by-three gadgets `f[x,y,z]` and `f[x,y]`.

pub mod cayley;
pub mod checkered;
pub mod gadgets;
pub mod lazy;

pub use cayley::{regular_rep, CayleyTable};
pub use checkered::{checkered_product, Checkered};
pub use gadgets::{gadget_f_xy, gadget_f_xyz};
pub use lazy::{thm4_counterexample, LazyBij, Value};

/// Label for a barred index, e.g. `0̄`.
pub fn barred(j: usize) -> String {
    format!("{j}\u{304}")
}
