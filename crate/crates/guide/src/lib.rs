//! Keeps the guide honest: each chapter of `book/` is included as a rustdoc
//! module here, so `cargo test --doc -p guide` compiles and runs every code
//! snippet in the book against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/colorings.md")]
pub mod colorings {}

#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../../book/src/gadgets.md")]
pub mod gadgets {}

#[doc = include_str!("../../../book/src/reduction.md")]
pub mod reduction {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
