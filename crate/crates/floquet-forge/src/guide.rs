//! Concept chapters of the book, compiled here so their snippets run as
//! doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fock.md")]
pub mod fock {}

#[doc = include_str!("../../../book/src/sylvester.md")]
pub mod sylvester {}

#[doc = include_str!("../../../book/src/floquet.md")]
pub mod floquet {}

#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod dynamics {}

#[doc = include_str!("../../../book/src/kspace.md")]
pub mod kspace {}

#[doc = include_str!("../../../book/src/gamma.md")]
pub mod gamma {}
