//! Numerical toolkit for the unitary almost-Mathieu operator (UAMO): the
//! split-step quantum walk W = S_{λ1} Q_{λ2} with quasi-periodic coins, its
//! CMV form, Szegő cocycles, spectra on the unit circle, gap labels and
//! Aubry–André duality.

pub mod arithmetic;
pub mod cli;
pub mod cocycle;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod model;
pub mod spectrum;

pub use error::{Error, Result};
pub use linalg::{Mat2, C64};
pub use model::{Couplings, Frequency, Phase};
