//! Exact possible- and necessary-winner solvers for spatial elections with
//! interval-uncertain voter positions.

pub mod error;
pub mod fpt;
pub mod gen;
pub mod io;
pub mod lp;
pub mod model;
pub mod nw;
pub mod oracles;
pub mod pw1;
pub mod segments;
pub mod shapes;
pub mod solve;
pub mod verdict;
pub mod weighted;

pub use error::{Error, Result};
