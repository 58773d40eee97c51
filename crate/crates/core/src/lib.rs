//! Stability analysis for circulant graphs.
//!
//! A circulant graph `X = Cay(Z_n, S)` is *stable* when the automorphism
//! group of its canonical bipartite double cover `BX = X × K_2` is exactly
//! `Aut X × S_2`, i.e. `|Aut BX| = 2 |Aut X|`. This crate computes exact
//! automorphism groups (individualization–refinement search backed by a
//! stabilizer chain), decides stability, detects the four Wilson instability
//! conditions with explicit witnesses, matches the classified families of
//! unstable graphs of valency 4–7, and exhaustively re-verifies the
//! classification over user-chosen ranges.
//!
//! ```
//! use circulant_stability::stability::is_stable;
//! use circulant_stability::wilson::wilson_types;
//! use circulant_stability::CirculantGraph;
//!
//! // Cay(Z_12, {±2, ±3, 6}): connected, nonbipartite, twin-free...
//! let x = CirculantGraph::new(12, &[2, 3, 6]).unwrap();
//! assert!(x.triviality().all_pass());
//!
//! // ...yet |Aut BX| = 576 > 2 * 48 = 2 |Aut X|, so it is unstable,
//! let verdict = is_stable(&x);
//! assert!(!verdict.stable);
//! assert_eq!(verdict.aut_x_order.to_string(), "48");
//! assert_eq!(verdict.aut_bx_order.to_string(), "576");
//!
//! // which one of its Wilson witnesses certifies arithmetically.
//! assert!(wilson_types(&x)
//!     .iter()
//!     .any(|w| w.validate(&x) && w.kind() == "C1"));
//! ```

pub mod actions;
pub mod circulant;
pub mod dense;
pub mod error;
pub mod families;
pub mod group;
pub mod harness;
pub mod partition;
pub mod perm;
pub mod products;
pub mod search;
pub mod stability;
pub mod wilson;
pub mod zmod;

mod union_find;

pub use crate::circulant::{
    CirculantGraph, ConnectionSet, Triviality, TrivialityClass, TwinQuotient,
};
pub use crate::dense::DenseGraph;
pub use crate::error::{Error, Result};
pub use crate::group::PermGroup;
pub use crate::perm::Perm;
