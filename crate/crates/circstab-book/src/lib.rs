//! The chapters of `book/` as doc modules, so `cargo test --doc` runs their code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/circulants.md")]
pub mod circulants {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/two-fold.md")]
pub mod two_fold {}
#[doc = include_str!("../../../book/src/schur-rings.md")]
pub mod schur_rings {}
#[doc = include_str!("../../../book/src/chains.md")]
pub mod chains {}
#[doc = include_str!("../../../book/src/replacement.md")]
pub mod replacement {}
#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
