//! Period geometry of the cyclic triple covers w³ = ∏(z − λᵢ) of the projective line:
//! the ball embedding into Siegel space, the Eisenstein reflection group and its
//! symplectic lift, genus-4 theta constants, and the forward and inverse period maps.

pub mod algebra;
pub mod ball;
pub mod config_space;
pub mod error;
pub mod inverse;
pub mod periods;
pub mod reflection;
pub mod sampling;
pub mod suites;
pub mod symplectic;
pub mod theta;

pub use error::{Error, Result};
