//! The book, compiled. Each chapter of `book/src/` is included as the doc
//! comment of an empty module, so every fenced example in the guide builds
//! and runs under `cargo test --doc`. A failing chapter names its module.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[doc = include_str!("../../../book/src/trinomials.md")]
pub mod trinomials {}

#[doc = include_str!("../../../book/src/expansions.md")]
pub mod expansions {}

#[doc = include_str!("../../../book/src/polygons.md")]
pub mod polygons {}

#[doc = include_str!("../../../book/src/index-bound.md")]
pub mod index_bound {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
