// mdBook renders the chapters under book/ but cannot execute their code
// fences, so this shim includes each chapter as module documentation and
// lets `cargo test --doc` run every example. One module per chapter keeps a
// failing snippet attributable to its file.

#[doc = include_str!("../book/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../book/scalars.md")]
pub mod scalars {}

#[doc = include_str!("../book/representations.md")]
pub mod representations {}

#[doc = include_str!("../book/hulls.md")]
pub mod hulls {}

#[doc = include_str!("../book/lattice-points.md")]
pub mod lattice_points {}

#[doc = include_str!("../book/linear-programs.md")]
pub mod linear_programs {}

#[doc = include_str!("../book/cli.md")]
pub mod cli {}

#[doc = include_str!("../book/benchmarks.md")]
pub mod benchmarks {}
