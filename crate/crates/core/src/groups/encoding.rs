//! Canonical byte encodings for group elements.
//!
//! Unsigned integers are a big-endian `u32` length followed by the minimal
//! big-endian magnitude (zero has length 0, no leading zero bytes).
//! Signed integers prepend a sign byte: `0` for non-negative, `1` for
//! negative; negative zero is rejected. Decoders accept exactly the bytes
//! the encoders produce.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

pub(crate) fn put_uint(buf: &mut Vec<u8>, x: &BigUint) {
    let bytes = if x.is_zero() { Vec::new() } else { x.to_bytes_be() };
    let len = u32::try_from(bytes.len()).expect("integer too large to encode");
    buf.extend_from_slice(&len.to_be_bytes());
    buf.extend_from_slice(&bytes);
}

pub(crate) fn put_int(buf: &mut Vec<u8>, x: &BigInt) {
    buf.push(u8::from(x.sign() == Sign::Minus));
    put_uint(buf, x.magnitude());
}

pub(crate) struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes }
    }

    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.bytes.len() < n {
            return None;
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Some(head)
    }

    pub(crate) fn uint(&mut self) -> Option<BigUint> {
        let len = u32::from_be_bytes(self.take(4)?.try_into().ok()?);
        let mag = self.take(usize::try_from(len).ok()?)?;
        if mag.first() == Some(&0) {
            return None;
        }
        Some(BigUint::from_bytes_be(mag))
    }

    pub(crate) fn int(&mut self) -> Option<BigInt> {
        let negative = match self.take(1)?[0] {
            0 => false,
            1 => true,
            _ => return None,
        };
        let mag = self.uint()?;
        if negative && mag.is_zero() {
            return None;
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Some(BigInt::from_biguint(sign, mag))
    }

    /// Succeeds only if every byte was consumed.
    pub(crate) fn finish(self) -> Option<()> {
        self.bytes.is_empty().then_some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_empty_magnitude() {
        let mut buf = Vec::new();
        put_uint(&mut buf, &BigUint::zero());
        assert_eq!(buf, [0, 0, 0, 0]);
    }

    #[test]
    fn signed_layout() {
        let mut buf = Vec::new();
        put_int(&mut buf, &BigInt::from(-258));
        assert_eq!(buf, [1, 0, 0, 0, 2, 1, 2]);
        let mut r = Reader::new(&buf);
        assert_eq!(r.int(), Some(BigInt::from(-258)));
        assert!(r.finish().is_some());
    }

    #[test]
    fn rejects_non_canonical() {
        // leading zero byte
        assert_eq!(Reader::new(&[0, 0, 0, 2, 0, 5]).uint(), None);
        // negative zero
        assert_eq!(Reader::new(&[1, 0, 0, 0, 0]).int(), None);
        // bad sign byte
        assert_eq!(Reader::new(&[2, 0, 0, 0, 0]).int(), None);
        // truncated
        assert_eq!(Reader::new(&[0, 0, 0, 3, 1]).uint(), None);
        assert_eq!(Reader::new(&[0, 0]).uint(), None);
        // trailing bytes
        let mut r = Reader::new(&[0, 0, 0, 0, 9]);
        assert_eq!(r.uint(), Some(BigUint::zero()));
        assert!(r.finish().is_none());
    }
}
