//! Binary container framing shared by every serialized representation.
//!
//! A container is an ASCII type tag followed by fixed-width little-endian
//! integers. Element ids use `id_width(n)` bytes, the smallest whole number of
//! bytes holding `ceil(log2(n + 1))` bits; group orders and other header
//! fields that must be read before `n` is known are 8 bytes.

use crate::error::{Error, Result};
use crate::space::bits_for;

/// Bytes per element id for a group of order `n`.
pub fn id_width(n: usize) -> usize {
    (bits_for(n as u64) as usize).div_ceil(8).max(1)
}

/// Bytes for a packed field of `bits` bits.
pub fn packed_width(bits: u32) -> usize {
    (bits as usize).div_ceil(8).max(1)
}

#[derive(Default, Debug)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Writer::default()
    }

    pub fn tag(&mut self, tag: &[u8]) {
        self.buf.extend_from_slice(tag);
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    /// Writes the low `width` bytes of `v`.
    pub fn uint(&mut self, v: u64, width: usize) {
        debug_assert!(width >= 8 || v >> (8 * width) == 0, "{v} does not fit {width} bytes");
        self.buf.extend_from_slice(&v.to_le_bytes()[..width]);
    }

    pub fn uints<T: Copy + Into<u64>>(&mut self, values: &[T], width: usize) {
        for &v in values {
            self.uint(v.into(), width);
        }
    }

    pub fn bytes(&mut self, raw: &[u8]) {
        self.buf.extend_from_slice(raw);
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

#[derive(Debug)]
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn peek(&self, len: usize) -> Option<&'a [u8]> {
        self.buf.get(self.pos..self.pos + len)
    }

    pub fn expect_tag(&mut self, tag: &[u8]) -> Result<()> {
        match self.peek(tag.len()) {
            Some(t) if t == tag => {
                self.pos += tag.len();
                Ok(())
            }
            other => Err(Error::format(format!(
                "expected tag {:?}, found {:?}",
                String::from_utf8_lossy(tag),
                other.map(String::from_utf8_lossy)
            ))),
        }
    }

    pub fn u64(&mut self) -> Result<u64> {
        self.uint(8)
    }

    pub fn uint(&mut self, width: usize) -> Result<u64> {
        let raw = self.peek(width).ok_or_else(|| Error::format(format!("truncated at byte {}", self.pos)))?;
        self.pos += width;
        let mut bytes = [0u8; 8];
        bytes[..width].copy_from_slice(raw);
        Ok(u64::from_le_bytes(bytes))
    }

    /// Reads a header count and rejects values above `limit`.
    pub fn count(&mut self, what: &str, limit: u64) -> Result<usize> {
        let v = self.u64()?;
        if v > limit {
            return Err(Error::format(format!("{what} = {v} exceeds {limit}")));
        }
        Ok(v as usize)
    }

    pub fn u32s(&mut self, len: usize, width: usize) -> Result<Vec<u32>> {
        if self.buf.len() - self.pos < len.saturating_mul(width) {
            return Err(Error::format(format!("truncated: need {} bytes for {len} values", len * width)));
        }
        (0..len).map(|_| self.uint(width).map(|v| v as u32)).collect()
    }

    pub fn u64s(&mut self, len: usize, width: usize) -> Result<Vec<u64>> {
        if self.buf.len() - self.pos < len.saturating_mul(width) {
            return Err(Error::format(format!("truncated: need {} bytes for {len} values", len * width)));
        }
        (0..len).map(|_| self.uint(width)).collect()
    }

    /// Element ids, each checked to lie in `1..=n`.
    pub fn ids(&mut self, len: usize, n: usize) -> Result<Vec<u32>> {
        let v = self.u32s(len, id_width(n))?;
        if let Some(bad) = v.iter().find(|&&x| x == 0 || x as usize > n) {
            return Err(Error::format(format!("element id {bad} outside 1..={n}")));
        }
        Ok(v)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn is_empty(&self) -> bool {
        self.pos == self.buf.len()
    }

    pub fn finish(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::format(format!("{} trailing bytes", self.buf.len() - self.pos)))
        }
    }
}

/// Upper bound accepted for any group order read from an artifact.
pub const MAX_ORDER: u64 = 1 << 24;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(id_width(1), 1);
        assert_eq!(id_width(255), 1);
        assert_eq!(id_width(256), 2);
        assert_eq!(id_width(65535), 2);
        assert_eq!(id_width(65536), 3);
        assert_eq!(packed_width(0), 1);
        assert_eq!(packed_width(9), 2);
    }

    #[test]
    fn write_then_read() {
        let mut w = Writer::new();
        w.tag(b"TEST");
        w.u64(300);
        w.uints(&[1u32, 2, 300], 2);
        let bytes = w.into_bytes();
        let mut r = Reader::new(&bytes);
        r.expect_tag(b"TEST").unwrap();
        assert_eq!(r.u64().unwrap(), 300);
        assert_eq!(r.ids(3, 300).unwrap(), vec![1, 2, 300]);
        r.finish().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut r = Reader::new(b"NOPE");
        assert!(r.expect_tag(b"TEST").is_err());
        let mut r = Reader::new(&[1, 0]);
        assert!(r.u64().is_err());
        let mut r = Reader::new(&[0, 5]);
        assert!(r.ids(2, 4).is_err());
        let r = Reader::new(&[0]);
        assert!(r.finish().is_err());
    }
}
