#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;

pub use error::Error;
pub mod blowup;
pub mod constructions;
pub mod duality;
pub mod filtered_complex;
pub mod intersection_chains;
pub mod perversity;
pub mod products;
