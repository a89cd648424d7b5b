//! Raw luma frames: an 8-bit grayscale sample grid plus file I/O.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A rectangular grid of 8-bit luma samples.
///
/// Only the Y plane is represented; chroma is out of scope for this codec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: usize,
    height: usize,
    samples: Vec<u8>,
    /// Opaque label carried through reports; not part of equality-sensitive state.
    pub frame_id: String,
}

impl Frame {
    pub fn new(width: usize, height: usize, samples: Vec<u8>, frame_id: impl Into<String>) -> Self {
        assert_eq!(
            samples.len(),
            width * height,
            "sample buffer must hold width*height bytes"
        );
        Self {
            width,
            height,
            samples,
            frame_id: frame_id.into(),
        }
    }

    pub fn filled(width: usize, height: usize, value: u8, frame_id: impl Into<String>) -> Self {
        Self::new(width, height, vec![value; width * height], frame_id)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [u8] {
        &mut self.samples
    }

    pub fn sample(&self, x: usize, y: usize) -> u8 {
        self.samples[y * self.width + x]
    }

    pub fn set_sample(&mut self, x: usize, y: usize, v: u8) {
        self.samples[y * self.width + x] = v;
    }

    pub fn same_dimensions(&self, other: &Frame) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn ensure_same_dimensions(&self, other: &Frame) -> Result<()> {
        if self.same_dimensions(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                w0: self.width,
                h0: self.height,
                w1: other.width,
                h1: other.height,
            })
        }
    }

    /// True when the sample grids are byte-identical (labels ignored).
    pub fn same_samples(&self, other: &Frame) -> bool {
        self.same_dimensions(other) && self.samples == other.samples
    }

    /// Reads a planar 8-bit grayscale file of exactly `width*height` bytes.
    pub fn read_raw(path: impl AsRef<Path>, width: usize, height: usize) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path)?;
        if bytes.len() != width * height {
            return Err(Error::InvalidConfig(format!(
                "{} holds {} bytes, expected {} for {}x{}",
                path.display(),
                bytes.len(),
                width * height,
                width,
                height
            )));
        }
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Self::new(width, height, bytes, id))
    }

    /// Writes the sample grid as a planar 8-bit grayscale file.
    pub fn write_raw(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, &self.samples)?;
        Ok(())
    }
}
