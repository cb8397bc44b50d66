//! Verification campaigns, JSON certificates, CSV tables and weight files
//! on top of `downset-core`.

pub mod campaign;
pub mod cert;
pub mod error;
pub mod tables;
pub mod weights;

pub use downset_core as core;
pub use error::{AppError, AppResult};
