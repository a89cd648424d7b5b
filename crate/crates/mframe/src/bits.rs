//! MSB-first bit I/O and exponential-Golomb codes.
//!
//! The exp-Golomb helpers are generic over [`BitSink`] / [`BitSource`] so the
//! same code paths serve both the plain bit writer and the arithmetic coder's
//! bypass lane.

/// Anything that accepts single bits, most significant first.
pub trait BitSink {
    fn put_bit(&mut self, bit: bool);

    fn put_bits(&mut self, value: u64, count: usize) {
        debug_assert!(count <= 64);
        for i in (0..count).rev() {
            self.put_bit((value >> i) & 1 == 1);
        }
    }
}

/// Anything that yields single bits, most significant first.
///
/// Reads past the end of the underlying data return zero bits; consumers
/// validate streams through checksums and syntax checks instead.
pub trait BitSource {
    fn get_bit(&mut self) -> bool;

    fn get_bits(&mut self, count: usize) -> u64 {
        debug_assert!(count <= 64);
        let mut v = 0u64;
        for _ in 0..count {
            v = (v << 1) | self.get_bit() as u64;
        }
        v
    }
}

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    bytes: Vec<u8>,
    /// Bits already placed in the trailing partial byte.
    used: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len_bits(&self) -> usize {
        if self.used == 0 {
            self.bytes.len() * 8
        } else {
            (self.bytes.len() - 1) * 8 + self.used
        }
    }

    /// Pads the final partial byte with zeros and returns the buffer.
    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

impl BitSink for BitWriter {
    fn put_bit(&mut self, bit: bool) {
        if self.used == 0 || self.used == 8 {
            self.bytes.push(0);
            self.used = 0;
        }
        if bit {
            let last = self.bytes.last_mut().unwrap();
            *last |= 0x80 >> self.used;
        }
        self.used += 1;
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
    overrun: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self {
            bytes,
            pos: 0,
            overrun: 0,
        }
    }

    pub fn bits_consumed(&self) -> usize {
        self.pos
    }

    /// Number of bits requested beyond the end of the data.
    pub fn overrun(&self) -> usize {
        self.overrun
    }
}

impl BitSource for BitReader<'_> {
    fn get_bit(&mut self) -> bool {
        let byte = self.pos / 8;
        if byte >= self.bytes.len() {
            self.overrun += 1;
            return false;
        }
        let bit = (self.bytes[byte] >> (7 - self.pos % 8)) & 1 == 1;
        self.pos += 1;
        bit
    }
}

/// Unsigned exp-Golomb (order 0): `n` leading zeros, a one, then `n` suffix bits,
/// where `n = floor(log2(v + 1))`.
pub fn write_ue<S: BitSink>(sink: &mut S, v: u64) {
    let x = v + 1;
    let n = 63 - x.leading_zeros() as usize;
    sink.put_bits(0, n);
    sink.put_bits(x, n + 1);
}

pub fn read_ue<S: BitSource>(src: &mut S) -> u64 {
    let mut n = 0usize;
    while !src.get_bit() {
        n += 1;
        if n > 63 {
            // corrupt stream; the caller's checksum validation reports it
            return u64::MAX;
        }
    }
    let suffix = src.get_bits(n);
    ((1u64 << n) | suffix) - 1
}

pub fn ue_len(v: u64) -> usize {
    let n = 63 - (v + 1).leading_zeros() as usize;
    2 * n + 1
}

/// Signed exp-Golomb: zero maps to zero, positives to odd codes, negatives to even.
pub fn write_se<S: BitSink>(sink: &mut S, v: i64) {
    write_ue(sink, se_to_ue(v));
}

pub fn read_se<S: BitSource>(src: &mut S) -> i64 {
    ue_to_se(read_ue(src))
}

pub fn se_len(v: i64) -> usize {
    ue_len(se_to_ue(v))
}

fn se_to_ue(v: i64) -> u64 {
    if v > 0 {
        (2 * v - 1) as u64
    } else {
        (-2 * v) as u64
    }
}

fn ue_to_se(u: u64) -> i64 {
    if u % 2 == 1 {
        ((u + 1) / 2) as i64
    } else {
        -((u / 2) as i64)
    }
}
