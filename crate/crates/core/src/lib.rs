pub mod arith;
pub mod bounds;
pub mod curves;
pub mod enumerate;
pub mod error;
pub mod forge;
pub mod sunit;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/clusters.md")]
    mod clusters {}
    #[doc = include_str!("../../../book/src/sunits.md")]
    mod sunits {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
