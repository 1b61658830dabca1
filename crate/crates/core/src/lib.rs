//! Conjugacy decisions and boundary dynamics for almost automorphisms of the
//! quasi-regular rooted tree `T_{d,k}`, restricted to Higman–Thompson inputs.

pub mod cli;
pub mod conjugacy;
pub mod dynamics;
pub mod element;
pub mod elliptic;
pub mod error;
pub mod format;
pub mod random;
pub mod strand;
pub mod tree;

pub use element::{make_revealing, make_revealing_from, ChainKind, Direction, Element, MaximalChain, TreePair};
pub use error::{Error, Result};
pub use tree::{Address, ClopenSet, CompleteTree, Subtree, TreeParams};
