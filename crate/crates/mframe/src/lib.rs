//! Merge-frame codec for drift-free video stream switching.
//!
//! When a client switches between pre-encoded streams, the destination picture
//! may arrive as any one of several slightly different side-information (SI)
//! reconstructions. A merge frame (M-frame) carries piecewise-constant merge
//! function parameters so that decoding with *any* of the SI frames yields one
//! bit-identical output, eliminating drift in the frames that follow.
//!
//! The crate provides:
//!
//! - [`transform`]: block partitioning, orthonormal 2D DCT, quantization
//! - [`pwc`]: the merge operator, feasibility math, fixed-target parameters
//! - [`rdopt`]: rate-constrained shift distribution fitting and RD shift selection
//! - [`codec`]: the M-frame encoder/decoder and bitstream syntax
//! - [`harness`]: deterministic SI generation and a switching simulator
//! - [`metrics`], [`sweep`], [`plot`]: PSNR / BD-rate evaluation and reports

pub mod bits;
pub mod codec;
pub mod config;
pub mod entropy;
pub mod error;
pub mod frame;
pub mod harness;
pub mod metrics;
pub mod plot;
pub mod pwc;
pub mod rdopt;
pub mod sweep;
pub mod transform;

pub use config::{CodecConfig, MergeMode, ScanOrder, SpikeSweep};
pub use error::{Error, Result};
pub use frame::Frame;
