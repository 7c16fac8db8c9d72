//! Exact computations for the small quantum group `u_q(g)` at an odd root of unity.
//!
//! - [`cyclotomic`]: the coefficient field `Q(zeta_l)` and quantum integers.
//! - [`rootdata`]: simply-laced root systems, Weyl groups, admissibility of `l`.
//! - [`affine_orbits`]: shifted and natural Weyl actions on restricted weights.
//! - [`blocks`]: block dimensions of the central subalgebras.
//! - [`charring`]: the rank-one character ring.
//! - [`uqsl2`]: a complete exact model of `u_q(sl2)`.

pub mod affine_orbits;
pub mod blocks;
pub mod charring;
pub mod cyclotomic;
pub mod error;
pub mod linalg;
pub mod rootdata;
pub mod uqsl2;

pub use cyclotomic::{CycloNum, CyclotomicField};
pub use error::{Error, Result};
pub use rootdata::{Admissibility, RootDatum, RootType, WeylElement};
pub use affine_orbits::{Action, Orbit, OrbitTable, ResWeight};
pub use blocks::{BlockReport, BlockTotals};
pub use charring::{CharElem, CharRing};
pub use uqsl2::{AlgElem, Functional, SmallQuantumGroup, VerifyReport};
