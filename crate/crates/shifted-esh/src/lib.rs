//! Evacuation-shuffling on shifted Littlewood–Richardson tableaux.
//!
//! The crate is `no_std` and only needs `alloc`. It provides the shifted
//! alphabet and tableaux ([`shifted_core`]), jeu de taquin ([`jdt`]), the
//! coplactic operators ([`coplactic`]), the evacuation-shuffle `esh` in its
//! several equivalent forms ([`esh`]) and the K-theoretic orbit data
//! ([`ktheory`]).

#![no_std]

extern crate alloc;

mod error;

pub mod coplactic;
pub mod esh;
pub mod jdt;
pub mod ktheory;
pub mod shifted_core;

pub use error::{Error, Result};
