//! Reductivities of knot projections (spherical curves) given as Gauss words.
//!
//! A knot projection is handled through its Gauss word. [`realize`] recovers
//! the spherical embedding, [`splice`] resolves crossings, [`reductivity`]
//! searches for the minimal number of splices producing a reducible curve, and
//! [`cut_circle`] finds the small separating circles that characterize low
//! reductivities. [`enumerate`] and [`verify`] run everything over all prime
//! reduced shadows up to a crossing bound.

pub mod cut_circle;
pub mod enumerate;
pub mod error;
pub mod hunt;
pub mod realize;
pub mod reductivity;
pub mod splice;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use word::{ChordPattern, GaussWord};
