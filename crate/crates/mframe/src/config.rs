//! Codec configuration and the QP-derived parameter policies.

use crate::error::{Error, Result};

/// Coefficient scan order within a block.
///
/// Zig-zag is the default; it concentrates trailing zeros so end-of-block
/// truncation covers more coefficients. Raster is available for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOrder {
    ZigZag,
    Raster,
}

/// The two merge-frame encoding modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeMode {
    /// Reconstruction must equal the pre-chosen target exactly.
    FixedTarget,
    /// Reconstruction and parameters jointly minimize distortion + lambda * rate.
    Optimized,
}

/// Outer-loop policy for the spike-count search when fitting shift distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpikeSweep {
    /// Spike count capped at min(W, 16) with early stop after 3 non-improving counts.
    Capped,
    /// Sweep every representable spike count in [1, min(W, 32)].
    Full,
}

#[derive(Debug, Clone)]
pub struct CodecConfig {
    pub block_edge: usize,
    pub scan: ScanOrder,
    pub mode: MergeMode,
    /// Quality parameter of the side-information frames; drives the default
    /// quantizer and lambda policies.
    pub qp_si: u32,
    /// Explicit quantizer step for the merge frame. `None` selects the policy
    /// default: the SI-derived step in fixed-target mode, 1.0 in optimized mode.
    pub q_override: Option<f64>,
    /// Explicit Lagrange multiplier. `None` derives it from `qp_si`.
    pub lambda_override: Option<f64>,
    pub spike_sweep: SpikeSweep,
}

impl Default for CodecConfig {
    fn default() -> Self {
        Self {
            block_edge: 16,
            scan: ScanOrder::ZigZag,
            mode: MergeMode::Optimized,
            qp_si: 30,
            q_override: None,
            lambda_override: None,
            spike_sweep: SpikeSweep::Capped,
        }
    }
}

impl CodecConfig {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.block_edge, 4 | 8 | 16) {
            return Err(Error::UnsupportedBlockEdge(self.block_edge));
        }
        if self.qp_si < 1 {
            return Err(Error::InvalidConfig("qp_si must be >= 1".into()));
        }
        if let Some(q) = self.q_override {
            if q <= 0.0 {
                return Err(Error::NonPositiveQuantizer(q));
            }
        }
        if let Some(l) = self.lambda_override {
            if !(l >= 0.0) {
                return Err(Error::InvalidConfig(format!("lambda must be >= 0, got {l}")));
            }
        }
        Ok(())
    }

    /// Effective quantizer step for the merge frame.
    pub fn q_step(&self) -> f64 {
        if let Some(q) = self.q_override {
            return q;
        }
        match self.mode {
            MergeMode::FixedTarget => q_from_qp(self.qp_si),
            MergeMode::Optimized => 1.0,
        }
    }

    /// Effective Lagrange multiplier.
    pub fn lambda(&self) -> f64 {
        self.lambda_override
            .unwrap_or_else(|| crate::rdopt::lambda_from_qp(self.qp_si))
    }
}

/// Maps a quality parameter to a uniform quantizer step, clamped to >= 1.
///
/// The step doubles every 6 QP, anchored so QP 4 maps to step 1.
pub fn q_from_qp(qp: u32) -> f64 {
    let q = 2f64.powf((qp as f64 - 4.0) / 6.0);
    q.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_policy_defaults() {
        let opt = CodecConfig::default();
        assert_eq!(opt.q_step(), 1.0);
        let fixed = CodecConfig {
            mode: MergeMode::FixedTarget,
            qp_si: 28,
            ..CodecConfig::default()
        };
        assert!((fixed.q_step() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_bad_edges_and_steps() {
        let mut cfg = CodecConfig::default();
        cfg.block_edge = 12;
        assert!(cfg.validate().is_err());
        cfg.block_edge = 8;
        cfg.q_override = Some(0.0);
        assert!(cfg.validate().is_err());
        cfg.q_override = Some(2.0);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn qp_step_clamps_to_one() {
        assert_eq!(q_from_qp(1), 1.0);
        assert_eq!(q_from_qp(4), 1.0);
        assert!((q_from_qp(10) - 2.0).abs() < 1e-12);
    }
}
