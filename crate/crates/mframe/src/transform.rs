//! Block partitioning, the 2D orthonormal DCT, and uniform scalar quantization.
//!
//! All merging happens on quantized coefficients ("q-coeffs"), so this module
//! defines the exact mapping from pixel blocks to the integer q-coeff domain
//! and back. The transform is the separable orthonormal DCT-II: coefficient
//! energy equals pixel energy, which lets coefficient-domain squared error
//! stand in for pixel-domain distortion.

use crate::config::ScanOrder;
use crate::error::{Error, Result};
use crate::frame::Frame;

/// One square pixel block cut from a frame, in raster order of the grid.
#[derive(Debug, Clone)]
pub struct PixelBlock {
    pub block_index: usize,
    pub edge: usize,
    /// Row-major samples, `edge * edge` of them.
    pub samples: Vec<u8>,
}

/// Real-valued transform coefficients of one block, serialized in scan order.
#[derive(Debug, Clone)]
pub struct CoeffBlock {
    pub block_index: usize,
    pub coeffs: Vec<f64>,
}

/// Quantized transform coefficients of one block.
#[derive(Debug, Clone)]
pub struct QCoeffBlock {
    pub block_index: usize,
    pub qcoeffs: Vec<i32>,
    pub step: f64,
}

/// Splits a frame into raster-ordered square blocks of the given edge length.
pub fn partition(frame: &Frame, edge: usize) -> Result<Vec<PixelBlock>> {
    if !matches!(edge, 4 | 8 | 16) {
        return Err(Error::UnsupportedBlockEdge(edge));
    }
    if frame.width() % edge != 0 {
        return Err(Error::DimensionNotDivisible {
            dim: "width",
            value: frame.width(),
            edge,
        });
    }
    if frame.height() % edge != 0 {
        return Err(Error::DimensionNotDivisible {
            dim: "height",
            value: frame.height(),
            edge,
        });
    }
    let bw = frame.width() / edge;
    let bh = frame.height() / edge;
    let mut blocks = Vec::with_capacity(bw * bh);
    for by in 0..bh {
        for bx in 0..bw {
            let mut samples = Vec::with_capacity(edge * edge);
            for row in 0..edge {
                let y = by * edge + row;
                let x0 = bx * edge;
                samples.extend_from_slice(
                    &frame.samples()[y * frame.width() + x0..y * frame.width() + x0 + edge],
                );
            }
            blocks.push(PixelBlock {
                block_index: by * bw + bx,
                edge,
                samples,
            });
        }
    }
    Ok(blocks)
}

/// Writes a row-major block of real samples back into a frame grid,
/// rounding half away from zero and clipping to [0, 255].
pub fn place_block(frame: &mut Frame, block_index: usize, edge: usize, values: &[f64]) {
    let bw = frame.width() / edge;
    let bx = block_index % bw;
    let by = block_index / bw;
    for row in 0..edge {
        for col in 0..edge {
            let v = clip_u8(round_half_away(values[row * edge + col]));
            frame.set_sample(bx * edge + col, by * edge + row, v);
        }
    }
}

/// Rounds to the nearest integer with ties away from zero.
pub fn round_half_away(x: f64) -> i64 {
    x.round() as i64
}

pub fn clip_u8(v: i64) -> u8 {
    v.clamp(0, 255) as u8
}

/// Generates the scan permutation: `scan[k]` is the row-major index of the
/// k-th coefficient. The DC coefficient is always at k = 0.
pub fn scan_table(edge: usize, order: ScanOrder) -> Vec<usize> {
    match order {
        ScanOrder::Raster => (0..edge * edge).collect(),
        ScanOrder::ZigZag => {
            let mut table = Vec::with_capacity(edge * edge);
            for s in 0..(2 * edge - 1) {
                let lo = s.saturating_sub(edge - 1);
                let hi = s.min(edge - 1);
                if s % 2 == 0 {
                    // even diagonals walk up-right (row decreasing)
                    for i in (lo..=hi).rev() {
                        table.push(i * edge + (s - i));
                    }
                } else {
                    for i in lo..=hi {
                        table.push(i * edge + (s - i));
                    }
                }
            }
            table
        }
    }
}

/// Separable orthonormal 2D DCT-II for one block edge and scan order.
///
/// Forward output and inverse input are in scan order; the pixel side is
/// row-major.
#[derive(Debug, Clone)]
pub struct Dct {
    edge: usize,
    /// `basis[u * edge + x] = c(u) * cos((2x+1) u pi / (2 edge))`
    basis: Vec<f64>,
    scan: Vec<usize>,
}

impl Dct {
    pub fn new(edge: usize, order: ScanOrder) -> Self {
        let n = edge as f64;
        let mut basis = vec![0.0; edge * edge];
        for u in 0..edge {
            let cu = if u == 0 {
                (1.0 / n).sqrt()
            } else {
                (2.0 / n).sqrt()
            };
            for x in 0..edge {
                basis[u * edge + x] =
                    cu * ((2.0 * x as f64 + 1.0) * u as f64 * std::f64::consts::PI / (2.0 * n)).cos();
            }
        }
        Self {
            edge,
            basis,
            scan: scan_table(edge, order),
        }
    }

    pub fn edge(&self) -> usize {
        self.edge
    }

    pub fn coeff_count(&self) -> usize {
        self.edge * self.edge
    }

    /// Forward transform of a row-major pixel block into scan-ordered coefficients.
    pub fn forward(&self, pixels: &[f64]) -> Vec<f64> {
        let e = self.edge;
        debug_assert_eq!(pixels.len(), e * e);
        // rows: tmp[u][y] = sum_x basis[u][x] * p[y][x]  (transform along x)
        let mut tmp = vec![0.0; e * e];
        for y in 0..e {
            for u in 0..e {
                let mut acc = 0.0;
                for x in 0..e {
                    acc += self.basis[u * e + x] * pixels[y * e + x];
                }
                tmp[u * e + y] = acc;
            }
        }
        // columns: out[v][u] = sum_y basis[v][y] * tmp[u][y]
        let mut out = vec![0.0; e * e];
        for u in 0..e {
            for v in 0..e {
                let mut acc = 0.0;
                for y in 0..e {
                    acc += self.basis[v * e + y] * tmp[u * e + y];
                }
                out[v * e + u] = acc;
            }
        }
        self.scan.iter().map(|&i| out[i]).collect()
    }

    pub fn forward_block(&self, block: &PixelBlock) -> CoeffBlock {
        let px: Vec<f64> = block.samples.iter().map(|&s| s as f64).collect();
        CoeffBlock {
            block_index: block.block_index,
            coeffs: self.forward(&px),
        }
    }

    /// Inverse transform of scan-ordered coefficients into a row-major block
    /// of real samples (no rounding or clipping).
    pub fn inverse(&self, coeffs: &[f64]) -> Vec<f64> {
        let e = self.edge;
        debug_assert_eq!(coeffs.len(), e * e);
        let mut grid = vec![0.0; e * e];
        for (k, &i) in self.scan.iter().enumerate() {
            grid[i] = coeffs[k];
        }
        // rows of the coefficient grid: tmp[v][x] = sum_u basis[u][x] * grid[v][u]
        let mut tmp = vec![0.0; e * e];
        for v in 0..e {
            for x in 0..e {
                let mut acc = 0.0;
                for u in 0..e {
                    acc += self.basis[u * e + x] * grid[v * e + u];
                }
                tmp[v * e + x] = acc;
            }
        }
        let mut out = vec![0.0; e * e];
        for y in 0..e {
            for x in 0..e {
                let mut acc = 0.0;
                for v in 0..e {
                    acc += self.basis[v * e + y] * tmp[v * e + x];
                }
                out[y * e + x] = acc;
            }
        }
        out
    }
}

/// Uniform scalar quantization: `X(k) = round(Y(k) / Q)`, ties away from zero.
pub fn quantize(coeffs: &CoeffBlock, step: f64) -> Result<QCoeffBlock> {
    if step <= 0.0 {
        return Err(Error::NonPositiveQuantizer(step));
    }
    Ok(QCoeffBlock {
        block_index: coeffs.block_index,
        qcoeffs: coeffs.coeffs.iter().map(|&y| (y / step).round() as i32).collect(),
        step,
    })
}

/// Reconstruction: `Y(k) = X(k) * Q`.
pub fn dequantize(q: &QCoeffBlock) -> CoeffBlock {
    CoeffBlock {
        block_index: q.block_index,
        coeffs: q.qcoeffs.iter().map(|&x| x as f64 * q.step).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    /// Direct O(K^2) DCT-II double sum, the independent oracle for `Dct::forward`.
    fn dct2_reference(pixels: &[f64], edge: usize) -> Vec<f64> {
        let n = edge as f64;
        let mut out = vec![0.0; edge * edge];
        for u in 0..edge {
            for v in 0..edge {
                let cu = if u == 0 { (1.0 / n).sqrt() } else { (2.0 / n).sqrt() };
                let cv = if v == 0 { (1.0 / n).sqrt() } else { (2.0 / n).sqrt() };
                let mut acc = 0.0;
                for y in 0..edge {
                    for x in 0..edge {
                        let cy = ((2.0 * y as f64 + 1.0) * u as f64 * std::f64::consts::PI
                            / (2.0 * n))
                            .cos();
                        let cx = ((2.0 * x as f64 + 1.0) * v as f64 * std::f64::consts::PI
                            / (2.0 * n))
                            .cos();
                        acc += pixels[y * edge + x] * cy * cx;
                    }
                }
                out[u * edge + v] = cu * cv * acc;
            }
        }
        out
    }

    #[test]
    fn partition_counts_and_errors() {
        let f = Frame::filled(32, 32, 0, "p");
        assert_eq!(partition(&f, 16).unwrap().len(), 4);

        let f = Frame::filled(16, 16, 1, "p");
        let blocks = partition(&f, 16).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].samples.len(), 256);

        let f = Frame::filled(24, 16, 0, "p");
        match partition(&f, 16) {
            Err(Error::DimensionNotDivisible { dim, value, edge }) => {
                assert_eq!(dim, "width");
                assert_eq!(value, 24);
                assert_eq!(edge, 16);
            }
            other => panic!("expected divisibility error, got {other:?}"),
        }
    }

    #[test]
    fn partition_is_a_bijection() {
        // every (block, offset) maps to exactly one sample and back
        let mut f = Frame::filled(32, 16, 0, "b");
        for (i, s) in f.samples_mut().iter_mut().enumerate() {
            *s = (i % 251) as u8;
        }
        let blocks = partition(&f, 8).unwrap();
        let mut seen = vec![false; 32 * 16];
        let bw = 32 / 8;
        for b in &blocks {
            let bx = b.block_index % bw;
            let by = b.block_index / bw;
            for row in 0..8 {
                for col in 0..8 {
                    let x = bx * 8 + col;
                    let y = by * 8 + row;
                    assert_eq!(b.samples[row * 8 + col], f.sample(x, y));
                    assert!(!seen[y * 32 + x]);
                    seen[y * 32 + x] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn constant_block_is_dc_only() {
        for edge in [4usize, 8, 16] {
            let dct = Dct::new(edge, ScanOrder::ZigZag);
            let px = vec![13.0; edge * edge];
            let coeffs = dct.forward(&px);
            assert!((coeffs[0] - 13.0 * edge as f64).abs() < 1e-9);
            for &c in &coeffs[1..] {
                assert!(c.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn zero_block_transforms_to_zero() {
        let dct = Dct::new(8, ScanOrder::ZigZag);
        assert!(dct.forward(&vec![0.0; 64]).iter().all(|&c| c == 0.0));
        assert!(dct.inverse(&vec![0.0; 64]).iter().all(|&c| c == 0.0));
    }

    #[test]
    fn dc_only_inverse_is_constant() {
        let dct = Dct::new(8, ScanOrder::ZigZag);
        let mut coeffs = vec![0.0; 64];
        coeffs[0] = 80.0; // DC of a constant block of value 10
        let px = dct.inverse(&coeffs);
        for &p in &px {
            assert!((p - 10.0).abs() < 1e-9);
        }
    }

    #[test]
    fn forward_matches_brute_force_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for edge in [4usize, 8] {
            let dct = Dct::new(edge, ScanOrder::Raster);
            for _ in 0..20 {
                let px: Vec<f64> = (0..edge * edge).map(|_| rng.gen_range(0..256) as f64).collect();
                let fast = dct.forward(&px);
                let slow = dct2_reference(&px, edge);
                for (k, &i) in scan_table(edge, ScanOrder::Raster).iter().enumerate() {
                    assert!(
                        (fast[k] - slow[i]).abs() < 1e-9,
                        "edge {edge} coeff {k}: {} vs {}",
                        fast[k],
                        slow[i]
                    );
                }
            }
        }
    }

    #[test]
    fn roundtrip_of_seeded_random_blocks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let dct = Dct::new(16, ScanOrder::ZigZag);
        for _ in 0..100 {
            let px: Vec<f64> = (0..256).map(|_| rng.gen_range(0..256) as f64).collect();
            let back = dct.inverse(&dct.forward(&px));
            let max_err = px
                .iter()
                .zip(&back)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(max_err < 1e-6, "round-trip error {max_err}");
        }
    }

    #[test]
    fn zigzag_matches_jpeg_table_for_8x8() {
        // standard JPEG zig-zag: k -> row-major index
        const JPEG: [usize; 64] = [
            0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5, 12, 19, 26, 33, 40, 48, 41,
            34, 27, 20, 13, 6, 7, 14, 21, 28, 35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30,
            37, 44, 51, 58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
        ];
        assert_eq!(scan_table(8, ScanOrder::ZigZag), JPEG.to_vec());
    }

    #[test]
    fn quantize_examples() {
        let cb = CoeffBlock {
            block_index: 0,
            coeffs: vec![7.4, 0.0, 3.0, -3.0],
        };
        let q = quantize(&cb, 2.0).unwrap();
        // 7.4/2 = 3.7 -> 4; ties (1.5) round away from zero
        assert_eq!(q.qcoeffs, vec![4, 0, 2, -2]);
        assert!(matches!(
            quantize(&cb, 0.0),
            Err(Error::NonPositiveQuantizer(_))
        ));
        let back = dequantize(&q);
        assert_eq!(back.coeffs, vec![8.0, 0.0, 4.0, -4.0]);
    }

    proptest! {
        #[test]
        fn parseval_energy_preserved(seed in 0u64..5000) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let dct = Dct::new(8, ScanOrder::ZigZag);
            let px: Vec<f64> = (0..64).map(|_| rng.gen_range(0..256) as f64).collect();
            let coeffs = dct.forward(&px);
            let e_px: f64 = px.iter().map(|v| v * v).sum();
            let e_cf: f64 = coeffs.iter().map(|v| v * v).sum();
            prop_assert!((e_px - e_cf).abs() <= 1e-6 * e_px.max(1.0));
        }

        #[test]
        fn quantization_error_bounded(y in -4096.0f64..4096.0, q in 1.0f64..64.0) {
            let cb = CoeffBlock { block_index: 0, coeffs: vec![y] };
            let qb = quantize(&cb, q).unwrap();
            prop_assert!((y - qb.qcoeffs[0] as f64 * q).abs() <= q / 2.0 + 1e-9);
        }

        #[test]
        fn scan_is_a_permutation(edge in prop::sample::select(vec![4usize, 8, 16])) {
            for order in [ScanOrder::ZigZag, ScanOrder::Raster] {
                let t = scan_table(edge, order);
                let mut sorted = t.clone();
                sorted.sort_unstable();
                prop_assert_eq!(sorted, (0..edge * edge).collect::<Vec<_>>());
                prop_assert_eq!(t[0], 0); // DC first
            }
        }
    }
}
