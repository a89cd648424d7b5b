//! Binary range coder with adaptive and static frequency models.
//!
//! A 32-bit low/high coder with pending-bit renormalization. Frequency totals
//! stay below 2^16 so interval widths never collapse. Structured syntax fields
//! travel through the bypass lane (one bit of output per bit of input); shift
//! symbols use static models built from transmitted distributions; the block
//! mode map uses adaptive binary contexts.

use crate::bits::{BitReader, BitSink, BitSource, BitWriter};

const HALF: u64 = 0x8000_0000;
const QUARTER: u64 = 0x4000_0000;
const THREE_QUARTER: u64 = 0xC000_0000;
const TOP: u64 = 0xFFFF_FFFF;

/// Maximum admissible total frequency of any model.
pub const MAX_TOTAL: u32 = 1 << 16;

#[derive(Debug)]
pub struct ArithEncoder {
    low: u64,
    high: u64,
    pending: u64,
    out: BitWriter,
}

impl ArithEncoder {
    pub fn new() -> Self {
        Self {
            low: 0,
            high: TOP,
            pending: 0,
            out: BitWriter::new(),
        }
    }

    /// Narrows the interval to `[cum_lo, cum_hi) / total` of the current span.
    pub fn encode_interval(&mut self, cum_lo: u32, cum_hi: u32, total: u32) {
        debug_assert!(cum_lo < cum_hi && cum_hi <= total && total <= MAX_TOTAL);
        let span = self.high - self.low + 1;
        self.high = self.low + span * cum_hi as u64 / total as u64 - 1;
        self.low += span * cum_lo as u64 / total as u64;
        debug_assert!(self.low <= self.high);
        loop {
            if self.high < HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTER {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
        }
    }

    pub fn encode_bypass_bit(&mut self, bit: bool) {
        if bit {
            self.encode_interval(1, 2, 2);
        } else {
            self.encode_interval(0, 1, 2);
        }
    }

    fn emit(&mut self, bit: bool) {
        self.out.put_bit(bit);
        for _ in 0..self.pending {
            self.out.put_bit(!bit);
        }
        self.pending = 0;
    }

    /// Approximate number of bits committed so far; exact to within one bit
    /// plus the interval state, which cancels in deltas.
    pub fn tell_bits(&self) -> f64 {
        let span = self.high - self.low + 1;
        let state = 32.0 - (span as f64).log2();
        self.out.len_bits() as f64 + self.pending as f64 + state
    }

    /// Terminates the interval and returns the padded byte stream.
    pub fn finish(mut self) -> Vec<u8> {
        self.pending += 1;
        if self.low < QUARTER {
            self.emit(false);
        } else {
            self.emit(true);
        }
        self.out.into_bytes()
    }
}

impl Default for ArithEncoder {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug)]
pub struct ArithDecoder<'a> {
    low: u64,
    high: u64,
    code: u64,
    src: BitReader<'a>,
}

impl<'a> ArithDecoder<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        let mut src = BitReader::new(bytes);
        let code = src.get_bits(32);
        Self {
            low: 0,
            high: TOP,
            code,
            src,
        }
    }

    /// Cumulative-frequency position of the next symbol under `total`.
    pub fn decode_target(&mut self, total: u32) -> u32 {
        let span = self.high - self.low + 1;
        let t = ((self.code - self.low + 1) * total as u64 - 1) / span;
        (t as u32).min(total - 1)
    }

    /// Consumes the symbol identified by `[cum_lo, cum_hi)`.
    pub fn consume(&mut self, cum_lo: u32, cum_hi: u32, total: u32) {
        let span = self.high - self.low + 1;
        self.high = self.low + span * cum_hi as u64 / total as u64 - 1;
        self.low += span * cum_lo as u64 / total as u64;
        loop {
            if self.high < HALF {
                // nothing to subtract
            } else if self.low >= HALF {
                self.low -= HALF;
                self.high -= HALF;
                self.code -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTER {
                self.low -= QUARTER;
                self.high -= QUARTER;
                self.code -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
            self.code = (self.code << 1) | self.src.get_bit() as u64;
        }
    }

    pub fn decode_bypass_bit(&mut self) -> bool {
        let t = self.decode_target(2);
        let bit = t >= 1;
        if bit {
            self.consume(1, 2, 2);
        } else {
            self.consume(0, 1, 2);
        }
        bit
    }
}

/// Bypass-lane adapters so exp-Golomb helpers work inside the coded stream.
pub struct BypassSink<'e>(pub &'e mut ArithEncoder);

impl BitSink for BypassSink<'_> {
    fn put_bit(&mut self, bit: bool) {
        self.0.encode_bypass_bit(bit);
    }
}

pub struct BypassSource<'d, 'a>(pub &'d mut ArithDecoder<'a>);

impl BitSource for BypassSource<'_, '_> {
    fn get_bit(&mut self) -> bool {
        self.0.decode_bypass_bit()
    }
}

/// Adaptive binary model: two counts, halved when the total reaches 2^13.
#[derive(Debug, Clone)]
pub struct AdaptiveBit {
    zero: u32,
    one: u32,
}

impl AdaptiveBit {
    pub fn new() -> Self {
        Self { zero: 1, one: 1 }
    }

    pub fn encode(&mut self, enc: &mut ArithEncoder, bit: bool) {
        let total = self.zero + self.one;
        if bit {
            enc.encode_interval(self.zero, total, total);
        } else {
            enc.encode_interval(0, self.zero, total);
        }
        self.update(bit);
    }

    pub fn decode(&mut self, dec: &mut ArithDecoder) -> bool {
        let total = self.zero + self.one;
        let t = dec.decode_target(total);
        let bit = t >= self.zero;
        if bit {
            dec.consume(self.zero, total, total);
        } else {
            dec.consume(0, self.zero, total);
        }
        self.update(bit);
        bit
    }

    fn update(&mut self, bit: bool) {
        if bit {
            self.one += 16;
        } else {
            self.zero += 16;
        }
        if self.zero + self.one >= 1 << 13 {
            self.zero = (self.zero + 1) / 2;
            self.one = (self.one + 1) / 2;
        }
    }
}

impl Default for AdaptiveBit {
    fn default() -> Self {
        Self::new()
    }
}

/// Static model over `n` symbols from fixed integer frequencies.
///
/// Symbols with zero frequency cannot be coded; callers only construct such
/// models when those symbols are impossible.
#[derive(Debug, Clone)]
pub struct StaticModel {
    cum: Vec<u32>,
}

impl StaticModel {
    pub fn from_freqs(freqs: &[u32]) -> Self {
        let mut cum = Vec::with_capacity(freqs.len() + 1);
        let mut acc = 0u32;
        cum.push(0);
        for &f in freqs {
            acc += f;
            cum.push(acc);
        }
        assert!(acc >= 1 && acc <= MAX_TOTAL, "total frequency {acc} out of range");
        Self { cum }
    }

    pub fn total(&self) -> u32 {
        *self.cum.last().unwrap()
    }

    pub fn symbol_count(&self) -> usize {
        self.cum.len() - 1
    }

    /// Model probability of a symbol.
    pub fn prob(&self, sym: usize) -> f64 {
        (self.cum[sym + 1] - self.cum[sym]) as f64 / self.total() as f64
    }

    pub fn encode(&self, enc: &mut ArithEncoder, sym: usize) {
        debug_assert!(
            self.cum[sym + 1] > self.cum[sym],
            "encoding zero-frequency symbol {sym}"
        );
        enc.encode_interval(self.cum[sym], self.cum[sym + 1], self.total());
    }

    pub fn decode(&self, dec: &mut ArithDecoder) -> usize {
        let t = dec.decode_target(self.total());
        // last index with cum[idx] <= t
        let sym = match self.cum.binary_search(&t) {
            Ok(mut i) => {
                // skip over zero-frequency symbols sharing this cumulative value
                while self.cum[i + 1] == self.cum[i] {
                    i += 1;
                }
                i
            }
            Err(i) => i - 1,
        };
        dec.consume(self.cum[sym], self.cum[sym + 1], self.total());
        sym
    }
}
