//! IFF chunk framing and big-endian primitive values.
//!
//! A chunk is a four byte identifier, a big-endian `u32` payload size and the
//! payload itself. Chunks with an odd payload size are followed by a single
//! zero pad byte so that every chunk header starts at an even offset. The pad
//! byte is not counted in the declared size.
//!
//! Nothing in this module knows about GMS semantics.

use std::fmt;
use std::io::{self, Read};

use crate::error::{Error, Result};

/// A four byte chunk identifier made of printable ASCII (0x20-0x7E).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChunkId([u8; 4]);

impl ChunkId {
    pub const FORM: ChunkId = ChunkId(*b"FORM");
    pub const VERS: ChunkId = ChunkId(*b"VERS");
    pub const SCEN: ChunkId = ChunkId(*b"SCEN");
    pub const UNIT: ChunkId = ChunkId(*b"UNIT");
    pub const CHAN: ChunkId = ChunkId(*b"CHAN");
    pub const FRAM: ChunkId = ChunkId(*b"FRAM");

    /// Every id this format assigns a meaning to.
    pub const KNOWN: [ChunkId; 6] = [
        Self::FORM,
        Self::VERS,
        Self::SCEN,
        Self::UNIT,
        Self::CHAN,
        Self::FRAM,
    ];

    pub fn new(bytes: [u8; 4]) -> Result<ChunkId> {
        if bytes.iter().all(|b| (0x20..=0x7E).contains(b)) {
            Ok(ChunkId(bytes))
        } else {
            Err(Error::MalformedId { offset: 0, bytes })
        }
    }

    pub fn bytes(&self) -> [u8; 4] {
        self.0
    }

    pub fn is_known(&self) -> bool {
        Self::KNOWN.contains(self)
    }
}

impl TryFrom<&str> for ChunkId {
    type Error = Error;

    fn try_from(s: &str) -> Result<ChunkId> {
        let bytes: [u8; 4] = s.as_bytes().try_into().map_err(|_| Error::Parse {
            what: "chunk id".into(),
            reason: format!("{s:?} is not exactly 4 bytes"),
        })?;
        ChunkId::new(bytes)
    }
}

impl fmt::Display for ChunkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ids are printable ASCII by construction.
        write!(f, "'{}'", String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for ChunkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChunkId({self})")
    }
}

/// One chunk as found in a file: its id and payload, without the pad byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawChunk {
    pub id: ChunkId,
    pub payload: Vec<u8>,
}

impl RawChunk {
    pub fn new(id: ChunkId, payload: Vec<u8>) -> RawChunk {
        RawChunk { id, payload }
    }

    /// Payload length as stored in the size field.
    pub fn declared_size(&self) -> u32 {
        // RawChunks are only built from payloads that fit in a u32.
        self.payload.len() as u32
    }

    /// Bytes this chunk occupies on disk, header and pad byte included.
    pub fn encoded_len(&self) -> u64 {
        encoded_chunk_len(self.payload.len() as u64)
    }
}

/// On-disk length of a chunk with `payload_len` payload bytes.
pub fn encoded_chunk_len(payload_len: u64) -> u64 {
    8 + payload_len + (payload_len & 1)
}

/// Width tag for the fixed-size values a chunk payload is made of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimitiveKind {
    U16,
    I32,
    U32,
    F32,
    F64,
}

impl PrimitiveKind {
    pub fn width(self) -> usize {
        match self {
            PrimitiveKind::U16 => 2,
            PrimitiveKind::I32 | PrimitiveKind::U32 | PrimitiveKind::F32 => 4,
            PrimitiveKind::F64 => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PrimitiveKind::U16 => "unsigned-16",
            PrimitiveKind::I32 => "signed-32",
            PrimitiveKind::U32 => "unsigned-32",
            PrimitiveKind::F32 => "float-32",
            PrimitiveKind::F64 => "float-64",
        }
    }
}

/// A single big-endian encoded value.
///
/// Equality is bitwise for the float variants, so NaN payloads compare equal
/// to themselves and `0.0 != -0.0`.
#[derive(Clone, Copy, Debug)]
pub enum Primitive {
    U16(u16),
    I32(i32),
    U32(u32),
    F32(f32),
    F64(f64),
}

impl PartialEq for Primitive {
    fn eq(&self, other: &Primitive) -> bool {
        use Primitive::*;
        match (*self, *other) {
            (U16(a), U16(b)) => a == b,
            (I32(a), I32(b)) => a == b,
            (U32(a), U32(b)) => a == b,
            (F32(a), F32(b)) => a.to_bits() == b.to_bits(),
            (F64(a), F64(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Eq for Primitive {}

impl Primitive {
    pub fn kind(&self) -> PrimitiveKind {
        match self {
            Primitive::U16(_) => PrimitiveKind::U16,
            Primitive::I32(_) => PrimitiveKind::I32,
            Primitive::U32(_) => PrimitiveKind::U32,
            Primitive::F32(_) => PrimitiveKind::F32,
            Primitive::F64(_) => PrimitiveKind::F64,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.kind().width());
        self.write_to(&mut out);
        out
    }

    pub fn write_to(&self, out: &mut Vec<u8>) {
        match *self {
            Primitive::U16(v) => out.extend_from_slice(&v.to_be_bytes()),
            Primitive::I32(v) => out.extend_from_slice(&v.to_be_bytes()),
            Primitive::U32(v) => out.extend_from_slice(&v.to_be_bytes()),
            Primitive::F32(v) => out.extend_from_slice(&v.to_bits().to_be_bytes()),
            Primitive::F64(v) => out.extend_from_slice(&v.to_bits().to_be_bytes()),
        }
    }

    pub fn decode(bytes: &[u8], kind: PrimitiveKind) -> Result<Primitive> {
        if bytes.len() != kind.width() {
            return Err(Error::LengthMismatch {
                kind: kind.name(),
                expected: kind.width(),
                found: bytes.len(),
            });
        }
        Ok(match kind {
            PrimitiveKind::U16 => Primitive::U16(u16::from_be_bytes([bytes[0], bytes[1]])),
            PrimitiveKind::I32 => Primitive::I32(i32::from_be_bytes(array4(bytes))),
            PrimitiveKind::U32 => Primitive::U32(u32::from_be_bytes(array4(bytes))),
            PrimitiveKind::F32 => Primitive::F32(f32::from_bits(u32::from_be_bytes(array4(bytes)))),
            PrimitiveKind::F64 => {
                let mut b = [0u8; 8];
                b.copy_from_slice(bytes);
                Primitive::F64(f64::from_bits(u64::from_be_bytes(b)))
            }
        })
    }
}

fn array4(bytes: &[u8]) -> [u8; 4] {
    [bytes[0], bytes[1], bytes[2], bytes[3]]
}

/// Converts a payload length to the value of a chunk size field.
pub fn chunk_size(len: u64) -> Result<u32> {
    u32::try_from(len).map_err(|_| Error::Oversize { len })
}

/// Encodes one chunk: id, big-endian size, payload and a pad byte if the
/// payload length is odd.
pub fn write_chunk(id: ChunkId, payload: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(encoded_chunk_len(payload.len() as u64) as usize);
    write_chunk_into(&mut out, id, payload)?;
    Ok(out)
}

pub fn write_chunk_into(out: &mut Vec<u8>, id: ChunkId, payload: &[u8]) -> Result<()> {
    let size = chunk_size(payload.len() as u64)?;
    out.extend_from_slice(&id.bytes());
    out.extend_from_slice(&size.to_be_bytes());
    out.extend_from_slice(payload);
    if payload.len() % 2 == 1 {
        out.push(0);
    }
    Ok(())
}

/// Splits a region of back-to-back chunks into its chunks, in file order.
pub fn scan_chunks(region: &[u8]) -> Result<Vec<RawChunk>> {
    scan_chunks_at(region, 0)
        .map(|located| located.into_iter().map(|(_, chunk)| chunk).collect())
}

/// Like [`scan_chunks`], also returning the absolute offset of every chunk
/// header given the absolute offset of `region`.
pub fn scan_chunks_at(region: &[u8], base_offset: u64) -> Result<Vec<(u64, RawChunk)>> {
    let mut reader = ChunkReader::new(region, base_offset, Some(region.len() as u64));
    let mut chunks = Vec::new();
    while let Some(header) = reader.next_header()? {
        let payload = reader.read_payload(&header)?;
        chunks.push((header.offset, RawChunk::new(header.id, payload)));
    }
    Ok(chunks)
}

/// A chunk header together with the absolute offset it was read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChunkHeader {
    pub id: ChunkId,
    pub size: u32,
    pub offset: u64,
}

impl ChunkHeader {
    /// Absolute offset of the first payload byte.
    pub fn payload_offset(&self) -> u64 {
        self.offset + 8
    }
}

/// Sequential chunk reader over any byte source.
///
/// `limit`, when known, is the number of bytes left in the enclosing region;
/// chunks that claim more than that are reported as truncated before any of
/// their payload is read.
pub struct ChunkReader<R> {
    inner: R,
    offset: u64,
    limit: Option<u64>,
}

impl<R: Read> ChunkReader<R> {
    pub fn new(inner: R, base_offset: u64, limit: Option<u64>) -> ChunkReader<R> {
        ChunkReader {
            inner,
            offset: base_offset,
            limit,
        }
    }

    /// Absolute offset of the next unread byte.
    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn remaining(&self) -> Option<u64> {
        self.limit
    }

    pub fn into_inner(self) -> R {
        self.inner
    }

    /// Reads the next chunk header, or `None` at the clean end of the region.
    pub fn next_header(&mut self) -> Result<Option<ChunkHeader>> {
        if self.limit == Some(0) {
            return Ok(None);
        }
        let offset = self.offset;
        let mut header = [0u8; 8];
        let got = self.read_up_to(&mut header)?;
        if got == 0 && self.limit.is_none() {
            return Ok(None);
        }
        if got < 8 {
            return Err(Error::Truncated {
                context: "chunk header".into(),
                offset,
                needed: 8,
                available: got as u64,
            });
        }
        let id_bytes = array4(&header[..4]);
        let id = ChunkId::new(id_bytes).map_err(|_| Error::MalformedId {
            offset,
            bytes: id_bytes,
        })?;
        let size = u32::from_be_bytes(array4(&header[4..]));
        if let Some(limit) = self.limit {
            if u64::from(size) > limit {
                return Err(Error::Truncated {
                    context: format!("{id} chunk"),
                    offset,
                    needed: u64::from(size),
                    available: limit,
                });
            }
        }
        Ok(Some(ChunkHeader { id, size, offset }))
    }

    /// Reads the payload belonging to `header` and consumes its pad byte.
    pub fn read_payload(&mut self, header: &ChunkHeader) -> Result<Vec<u8>> {
        let mut payload = Vec::new();
        let got = (&mut self.inner)
            .take(u64::from(header.size))
            .read_to_end(&mut payload)?;
        self.advance(got as u64);
        if got < header.size as usize {
            return Err(Error::Truncated {
                context: format!("{} chunk", header.id),
                offset: header.offset,
                needed: u64::from(header.size),
                available: got as u64,
            });
        }
        self.skip_pad(header)?;
        Ok(payload)
    }

    /// Consumes the pad byte after an odd-sized payload. A missing pad at the
    /// very end of the region is tolerated.
    pub fn skip_pad(&mut self, header: &ChunkHeader) -> Result<()> {
        if header.size % 2 == 1 && self.limit != Some(0) {
            let mut pad = [0u8; 1];
            self.read_up_to(&mut pad)?;
        }
        Ok(())
    }

    fn read_up_to(&mut self, buf: &mut [u8]) -> Result<usize> {
        let want = match self.limit {
            Some(limit) => buf.len().min(usize::try_from(limit).unwrap_or(usize::MAX)),
            None => buf.len(),
        };
        let mut filled = 0;
        while filled < want {
            match self.inner.read(&mut buf[filled..want]) {
                Ok(0) => break,
                Ok(n) => filled += n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(e.into()),
            }
        }
        self.advance(filled as u64);
        Ok(filled)
    }

    fn advance(&mut self, n: u64) {
        self.offset += n;
        if let Some(limit) = self.limit.as_mut() {
            *limit = limit.saturating_sub(n);
        }
    }
}

/// Bounds-checked big-endian field reader over a chunk payload.
pub(crate) struct PayloadCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    base_offset: u64,
    id: ChunkId,
}

impl<'a> PayloadCursor<'a> {
    pub(crate) fn new(bytes: &'a [u8], id: ChunkId, base_offset: u64) -> PayloadCursor<'a> {
        PayloadCursor {
            bytes,
            pos: 0,
            base_offset,
            id,
        }
    }

    /// Absolute offset of the next unread byte.
    pub(crate) fn offset(&self) -> u64 {
        self.base_offset + self.pos as u64
    }

    pub(crate) fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let available = self.bytes.len() - self.pos;
        if n > available {
            return Err(Error::Truncated {
                context: format!("{what} in {} chunk", self.id),
                offset: self.offset(),
                needed: n as u64,
                available: available as u64,
            });
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub(crate) fn u16(&mut self, what: &str) -> Result<u16> {
        let b = self.take(2, what)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    pub(crate) fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_be_bytes(array4(self.take(4, what)?)))
    }

    pub(crate) fn f64(&mut self, what: &str) -> Result<f64> {
        match Primitive::decode(self.take(8, what)?, PrimitiveKind::F64)? {
            Primitive::F64(v) => Ok(v),
            _ => unreachable!("decode returns the requested kind"),
        }
    }

    /// A length-prefixed UTF-8 name.
    pub(crate) fn name(&mut self, what: &str) -> Result<String> {
        let offset = self.offset();
        let len = self.u16(&format!("{what} length"))?;
        let raw = self.take(usize::from(len), what)?;
        String::from_utf8(raw.to_vec()).map_err(|_| Error::Structure {
            chunk: self.id,
            offset,
            reason: format!("{what} is not valid UTF-8"),
        })
    }

    pub(crate) fn finish(self) -> Result<()> {
        if self.pos != self.bytes.len() {
            return Err(Error::Structure {
                chunk: self.id,
                offset: self.offset(),
                reason: format!("{} unexpected trailing payload bytes", self.bytes.len() - self.pos),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_vectors() {
        assert_eq!(Primitive::U16(1).encode(), [0x00, 0x01]);
        assert_eq!(Primitive::U32(4).encode(), [0, 0, 0, 4]);
        // 1000 = 1.953125 * 2^9: exponent 1023 + 9 = 0x408, fraction 0xF4 << 44.
        assert_eq!(
            Primitive::F64(1000.0).encode(),
            [0x40, 0x8F, 0x40, 0, 0, 0, 0, 0]
        );
        assert_eq!(Primitive::I32(-1).encode(), [0xFF; 4]);
        assert_eq!(Primitive::F32(1.0).encode(), [0x3F, 0x80, 0, 0]);
    }

    #[test]
    fn primitive_decode() {
        assert_eq!(
            Primitive::decode(&[0, 0, 0, 4], PrimitiveKind::U32).unwrap(),
            Primitive::U32(4)
        );
        assert_eq!(
            Primitive::decode(&[0x40, 0x8F, 0x40, 0, 0, 0, 0, 0], PrimitiveKind::F64).unwrap(),
            Primitive::F64(1000.0)
        );
        assert_eq!(
            Primitive::decode(&[0, 0], PrimitiveKind::U16).unwrap(),
            Primitive::U16(0)
        );
        assert!(matches!(
            Primitive::decode(&[0, 0, 0], PrimitiveKind::U32),
            Err(Error::LengthMismatch { expected: 4, found: 3, .. })
        ));
    }

    #[test]
    fn chunk_vectors() {
        let mut payload = Primitive::U16(0).encode();
        payload.extend(Primitive::U16(1).encode());
        assert_eq!(
            write_chunk(ChunkId::VERS, &payload).unwrap(),
            [0x56, 0x45, 0x52, 0x53, 0, 0, 0, 4, 0, 0, 0, 1]
        );
        assert_eq!(
            write_chunk(ChunkId::UNIT, &[]).unwrap(),
            [0x55, 0x4E, 0x49, 0x54, 0, 0, 0, 0]
        );
        assert_eq!(
            write_chunk(ChunkId::CHAN, &[0xAA, 0xBB, 0xCC]).unwrap(),
            [0x43, 0x48, 0x41, 0x4E, 0, 0, 0, 3, 0xAA, 0xBB, 0xCC, 0]
        );
    }

    #[test]
    fn oversize_payload() {
        assert!(matches!(chunk_size(1 << 32), Err(Error::Oversize { .. })));
        assert_eq!(chunk_size(u64::from(u32::MAX)).unwrap(), u32::MAX);
    }

    #[test]
    fn scan_two_chunks() {
        let mut bytes = write_chunk(ChunkId::VERS, &[0, 0, 0, 1]).unwrap();
        bytes.extend(write_chunk(ChunkId::UNIT, &[]).unwrap());
        let chunks = scan_chunks(&bytes).unwrap();
        assert_eq!(
            chunks,
            vec![
                RawChunk::new(ChunkId::VERS, vec![0, 0, 0, 1]),
                RawChunk::new(ChunkId::UNIT, vec![]),
            ]
        );
        assert_eq!(chunks[0].declared_size(), 4);
        assert!(scan_chunks(&[]).unwrap().is_empty());
    }

    #[test]
    fn scan_truncated() {
        let mut bytes = b"FRAM".to_vec();
        bytes.extend(100u32.to_be_bytes());
        bytes.extend([0u8; 10]);
        match scan_chunks_at(&bytes, 12) {
            Err(Error::Truncated {
                offset,
                needed,
                available,
                ..
            }) => {
                assert_eq!((offset, needed, available), (12, 100, 10));
            }
            other => panic!("expected truncation, got {other:?}"),
        }
        assert!(matches!(
            scan_chunks(&bytes[..5]),
            Err(Error::Truncated { needed: 8, available: 5, .. })
        ));
    }

    #[test]
    fn scan_malformed_id() {
        let bytes = [b'U', b'N', 0x01, b'T', 0, 0, 0, 0];
        assert!(matches!(
            scan_chunks(&bytes),
            Err(Error::MalformedId { offset: 0, .. })
        ));
        assert!(ChunkId::new(*b"ab\x7Fc").is_err());
        assert!(ChunkId::try_from("GMS ").is_ok());
    }

    #[test]
    fn odd_chunk_without_final_pad() {
        let bytes = [0x43, 0x48, 0x41, 0x4E, 0, 0, 0, 1, 0x55];
        let chunks = scan_chunks(&bytes).unwrap();
        assert_eq!(chunks[0].payload, [0x55]);
    }

    #[test]
    fn unbounded_reader_stops_at_eof() {
        let bytes = write_chunk(ChunkId::CHAN, &[1, 2, 3]).unwrap();
        let mut reader = ChunkReader::new(&bytes[..], 0, None);
        let header = reader.next_header().unwrap().unwrap();
        assert_eq!(reader.read_payload(&header).unwrap(), [1, 2, 3]);
        assert_eq!(reader.offset(), 12);
        assert!(reader.next_header().unwrap().is_none());

        let mut short = ChunkReader::new(&bytes[..9], 0, None);
        let header = short.next_header().unwrap().unwrap();
        assert!(matches!(
            short.read_payload(&header),
            Err(Error::Truncated { available: 1, .. })
        ));
    }
}
