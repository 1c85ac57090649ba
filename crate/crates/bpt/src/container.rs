//! The `.bpt` binary token container.
//!
//! Little-endian layout:
//!
//! ```text
//! magic  4  b"BPT1"
//! bits   1  u8
//! B      2  u16   blocks per axis
//! O      2  u16   offsets per axis
//! kind   1  u8    0 = bpt, 1 = vanilla, 2 = blocked
//! count  8  u64   number of token ids
//! ids    4*count  u32 each
//! ```
//!
//! Readers reject wrong magic, inconsistent headers, out-of-range ids,
//! truncation and trailing bytes.

use std::io::{Read, Write};

use crate::block::BptConfig;
use crate::error::{Error, MalformedSequence, Result};
use crate::tokenizer::{vocab_total, SequenceKind, TokenSequence};

pub const MAGIC: [u8; 4] = *b"BPT1";

/// Serializes a token sequence into the container format.
pub fn write_bpt(seq: &TokenSequence, out: &mut dyn Write) -> std::io::Result<()> {
    out.write_all(&MAGIC)?;
    out.write_all(&[seq.config.bits()])?;
    out.write_all(&(seq.config.blocks() as u16).to_le_bytes())?;
    out.write_all(&(seq.config.offsets() as u16).to_le_bytes())?;
    out.write_all(&[seq.kind.code()])?;
    out.write_all(&(seq.tokens.len() as u64).to_le_bytes())?;
    for &token in &seq.tokens {
        out.write_all(&token.to_le_bytes())?;
    }
    Ok(())
}

/// Serializes to an in-memory buffer.
pub fn to_bytes(seq: &TokenSequence) -> Vec<u8> {
    let mut buf = Vec::with_capacity(18 + 4 * seq.tokens.len());
    write_bpt(seq, &mut buf).expect("writing to memory cannot fail");
    buf
}

/// Parses and validates a container.
pub fn read_bpt(input: &mut dyn Read) -> Result<TokenSequence> {
    let mut magic = [0u8; 4];
    read_exact_or(input, &mut magic, Error::BadMagic)?;
    if magic != MAGIC {
        return Err(Error::BadMagic);
    }

    let mut header = [0u8; 14];
    read_exact_or(input, &mut header, MalformedSequence::Truncated.into())?;
    let bits = header[0];
    let blocks = u16::from_le_bytes([header[1], header[2]]);
    let offsets = u16::from_le_bytes([header[3], header[4]]);
    let kind_code = header[5];
    let count = u64::from_le_bytes(header[6..14].try_into().unwrap());

    let config = BptConfig::new(blocks, offsets, bits)?;
    let kind = SequenceKind::from_code(kind_code)
        .ok_or_else(|| Error::Config(format!("unknown kind byte {kind_code}")))?;

    let count = usize::try_from(count)
        .map_err(|_| Error::Config(format!("token count {count} does not fit in memory")))?;
    let vocab = vocab_total(kind, &config);
    let mut tokens = Vec::with_capacity(count.min(1 << 24));
    let mut word = [0u8; 4];
    for _ in 0..count {
        read_exact_or(input, &mut word, MalformedSequence::Truncated.into())?;
        let id = u32::from_le_bytes(word);
        if id >= vocab {
            return Err(MalformedSequence::TokenOutOfRange { id, vocab }.into());
        }
        tokens.push(id);
    }
    let mut probe = [0u8; 1];
    if input.read(&mut probe)? != 0 {
        return Err(MalformedSequence::TrailingData.into());
    }

    Ok(TokenSequence {
        tokens,
        config,
        kind,
    })
}

/// Parses a container from a byte slice.
pub fn from_bytes(bytes: &[u8]) -> Result<TokenSequence> {
    read_bpt(&mut std::io::Cursor::new(bytes))
}

fn read_exact_or(input: &mut dyn Read, buf: &mut [u8], on_eof: Error) -> Result<()> {
    input.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            on_eof
        } else {
            Error::Io(e)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{canonicalize, Face, QuantizedVertex};
    use crate::tokenizer::encode;

    fn sample_sequence() -> TokenSequence {
        let verts = [
            QuantizedVertex::new(1, 1, 1),
            QuantizedVertex::new(90, 3, 7),
            QuantizedVertex::new(2, 110, 50),
        ];
        let (mesh, _) = canonicalize(&verts, &[Face::new(0, 1, 2)], 7).unwrap();
        encode(&mesh, &BptConfig::default(), SequenceKind::Bpt).unwrap()
    }

    #[test]
    fn header_layout_is_bit_exact() {
        let seq = sample_sequence();
        let bytes = to_bytes(&seq);
        assert_eq!(&bytes[0..4], b"BPT1");
        assert_eq!(bytes[4], 7); // bits
        assert_eq!(u16::from_le_bytes([bytes[5], bytes[6]]), 8); // B
        assert_eq!(u16::from_le_bytes([bytes[7], bytes[8]]), 16); // O
        assert_eq!(bytes[9], 0); // kind = bpt
        let count = u64::from_le_bytes(bytes[10..18].try_into().unwrap());
        assert_eq!(count as usize, seq.tokens.len());
        assert_eq!(bytes.len(), 18 + 4 * seq.tokens.len());
        assert_eq!(
            u32::from_le_bytes(bytes[18..22].try_into().unwrap()),
            seq.tokens[0]
        );
    }

    #[test]
    fn round_trip() {
        let seq = sample_sequence();
        let bytes = to_bytes(&seq);
        let back = from_bytes(&bytes).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn rejects_bad_magic() {
        let mut bytes = to_bytes(&sample_sequence());
        bytes[0] = b'X';
        assert!(matches!(from_bytes(&bytes), Err(Error::BadMagic)));
        assert!(matches!(from_bytes(b"BP"), Err(Error::BadMagic)));
    }

    #[test]
    fn rejects_truncation_and_trailing_data() {
        let bytes = to_bytes(&sample_sequence());
        let cut = &bytes[..bytes.len() - 2];
        assert!(matches!(
            from_bytes(cut),
            Err(Error::Malformed(MalformedSequence::Truncated))
        ));
        let mut extended = bytes.clone();
        extended.push(0);
        assert!(matches!(
            from_bytes(&extended),
            Err(Error::Malformed(MalformedSequence::TrailingData))
        ));
    }

    #[test]
    fn rejects_out_of_range_id() {
        let seq = sample_sequence();
        let mut bytes = to_bytes(&seq);
        let vocab = seq.vocab_total();
        bytes[18..22].copy_from_slice(&vocab.to_le_bytes());
        assert!(matches!(
            from_bytes(&bytes),
            Err(Error::Malformed(MalformedSequence::TokenOutOfRange { .. }))
        ));
    }

    #[test]
    fn rejects_inconsistent_header() {
        let mut bytes = to_bytes(&sample_sequence());
        bytes[5] = 5; // B = 5 does not divide 128
        assert!(matches!(from_bytes(&bytes), Err(Error::Config(_))));
        let mut bytes2 = to_bytes(&sample_sequence());
        bytes2[9] = 9; // unknown kind
        assert!(matches!(from_bytes(&bytes2), Err(Error::Config(_))));
    }
}
