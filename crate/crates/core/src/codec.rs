//! Whole-file encoding and decoding, plus sequential frame streaming.
//!
//! A file is one `FORM` chunk whose payload starts with the file type
//! `GMS ` and then holds, in order: `VERS`, `SCEN`, a `UNIT` chunk followed by
//! its `CHAN` chunks for every unit, and a single `FRAM` chunk with the
//! samples. All multi-byte values are big-endian.
//!
//! Frame `f` starts at byte `f * stride` of the `FRAM` payload, where the
//! stride is the frame size rounded up to the scene's block size. Every frame,
//! including the last one, is padded to the full stride with zeros.

use std::fmt;
use std::io::{Read, Seek, SeekFrom, Write};

use log::warn;

use crate::chunk::{
    chunk_size, write_chunk_into, ChunkHeader, ChunkId, ChunkReader, PayloadCursor, RawChunk,
};
use crate::error::{Error, Result};
use crate::scene::{Channel, Dimension, FrameMatrix, SampleType, Scene, Unit, VariableType};
use crate::validate::{validate_scene, Violation};

/// File type written after the `FORM` size field.
pub const FILE_TYPE: [u8; 4] = *b"GMS ";
/// Alternate spelling of the file type, accepted when reading.
pub const LEGACY_FILE_TYPE: [u8; 4] = *b"GSM ";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Version {
    pub major: u16,
    pub minor: u16,
}

impl Version {
    pub const CURRENT: Version = Version { major: 0, minor: 1 };
}

impl Default for Version {
    fn default() -> Version {
        Version::CURRENT
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.major, self.minor)
    }
}

/// A complete file: scene declaration, samples and any chunks this version
/// does not understand, kept verbatim.
#[derive(Clone, Debug, PartialEq)]
pub struct GmsDocument {
    pub version: Version,
    pub scene: Scene,
    pub frames: FrameMatrix,
    /// Written back just before the `FRAM` chunk.
    pub unknown_chunks: Vec<RawChunk>,
}

impl GmsDocument {
    /// Pairs a scene with its samples; `scene.nb_frame` is set from `frames`.
    pub fn new(mut scene: Scene, frames: FrameMatrix) -> GmsDocument {
        scene.nb_frame = u32::try_from(frames.frame_count()).unwrap_or(u32::MAX);
        GmsDocument {
            version: Version::CURRENT,
            scene,
            frames,
            unknown_chunks: Vec::new(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_scene(&self.scene, Some(&self.frames))
    }
}

/// A sample converted to its on-disk representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StoredSample {
    Float32(f32),
    Float64(f64),
    Long(i32),
}

impl StoredSample {
    pub fn write_to(self, out: &mut [u8]) {
        match self {
            StoredSample::Float32(v) => out[..4].copy_from_slice(&v.to_bits().to_be_bytes()),
            StoredSample::Float64(v) => out[..8].copy_from_slice(&v.to_bits().to_be_bytes()),
            StoredSample::Long(v) => out[..4].copy_from_slice(&v.to_be_bytes()),
        }
    }
}

/// Converts a physical value to its stored form: divide by `scale`, then
/// round to nearest (ties to even) for `Long`.
pub fn store_sample(physical: f64, scale: f64, sample_type: SampleType) -> Result<StoredSample> {
    let raw = physical / scale;
    let unrepresentable = || Error::Unrepresentable {
        value: physical,
        sample_type: sample_type.name(),
    };
    if !raw.is_finite() {
        return Err(unrepresentable());
    }
    match sample_type {
        SampleType::Float32 => {
            let v = raw as f32;
            if v.is_finite() {
                Ok(StoredSample::Float32(v))
            } else {
                Err(unrepresentable())
            }
        }
        SampleType::Float64 => Ok(StoredSample::Float64(raw)),
        SampleType::Long => {
            let v = raw.round_ties_even();
            if v >= f64::from(i32::MIN) && v <= f64::from(i32::MAX) {
                Ok(StoredSample::Long(v as i32))
            } else {
                Err(unrepresentable())
            }
        }
    }
}

/// Reads one stored sample and applies `scale`.
pub fn load_sample(bytes: &[u8], sample_type: SampleType, scale: f64) -> f64 {
    let stored = match sample_type {
        SampleType::Float32 => {
            f64::from(f32::from_bits(u32::from_be_bytes([bytes[0], bytes[1], bytes[2], bytes[3]])))
        }
        SampleType::Float64 => {
            let mut b = [0u8; 8];
            b.copy_from_slice(&bytes[..8]);
            f64::from_bits(u64::from_be_bytes(b))
        }
        SampleType::Long => f64::from(i32::from_be_bytes([bytes[0], bytes[1], bytes[2], bytes[3]])),
    };
    stored * scale
}

fn encode_frame(scene: &Scene, frame: &[f64], out: &mut [u8]) -> Result<()> {
    let width = scene.sample_type.byte_width();
    for (i, &v) in frame.iter().enumerate() {
        store_sample(v, scene.scale, scene.sample_type)?.write_to(&mut out[i * width..]);
    }
    Ok(())
}

fn decode_frame(scene: &Scene, bytes: &[u8], out: &mut [f64]) {
    let width = scene.sample_type.byte_width();
    for (i, v) in out.iter_mut().enumerate() {
        *v = load_sample(&bytes[i * width..], scene.sample_type, scene.scale);
    }
}

fn name_bytes(name: &str, out: &mut Vec<u8>) -> Result<()> {
    let len = u16::try_from(name.len()).map_err(|_| Error::Oversize {
        len: name.len() as u64,
    })?;
    out.extend_from_slice(&len.to_be_bytes());
    out.extend_from_slice(name.as_bytes());
    Ok(())
}

/// `FORM` header plus every chunk before `FRAM`. The `FORM` size is left at
/// zero for the caller to patch.
struct Declarations {
    bytes: Vec<u8>,
    /// Byte position of the `nbFrame` field.
    nb_frame_pos: usize,
}

fn encode_declarations(version: Version, scene: &Scene, unknown: &[RawChunk]) -> Result<Declarations> {
    if version.major > 0 {
        return Err(Error::UnsupportedVersion {
            major: version.major,
            minor: version.minor,
        });
    }
    let mut out = Vec::new();
    out.extend_from_slice(&ChunkId::FORM.bytes());
    out.extend_from_slice(&[0; 4]);
    out.extend_from_slice(&FILE_TYPE);

    let mut vers = Vec::with_capacity(4);
    vers.extend_from_slice(&version.major.to_be_bytes());
    vers.extend_from_slice(&version.minor.to_be_bytes());
    write_chunk_into(&mut out, ChunkId::VERS, &vers)?;

    let mut scen = Vec::with_capacity(30 + scene.name.len());
    name_bytes(&scene.name, &mut scen)?;
    let nb_frame_pos = out.len() + 8 + scen.len();
    scen.extend_from_slice(&scene.nb_frame.to_be_bytes());
    scen.extend_from_slice(&scene.freq.to_bits().to_be_bytes());
    scen.extend_from_slice(&scene.sample_type.code().to_be_bytes());
    scen.extend_from_slice(&scene.scale.to_bits().to_be_bytes());
    scen.extend_from_slice(&scene.block_size.to_be_bytes());
    write_chunk_into(&mut out, ChunkId::SCEN, &scen)?;

    let mut payload = Vec::new();
    for unit in &scene.units {
        payload.clear();
        name_bytes(&unit.name, &mut payload)?;
        write_chunk_into(&mut out, ChunkId::UNIT, &payload)?;
        for channel in &unit.channels {
            payload.clear();
            name_bytes(&channel.name, &mut payload)?;
            payload.extend_from_slice(&channel.dimension.code().to_be_bytes());
            payload.extend_from_slice(&channel.var_type.code().to_be_bytes());
            write_chunk_into(&mut out, ChunkId::CHAN, &payload)?;
        }
    }
    for chunk in unknown {
        write_chunk_into(&mut out, chunk.id, &chunk.payload)?;
    }
    Ok(Declarations {
        bytes: out,
        nb_frame_pos,
    })
}

fn fatal_violations(scene: &Scene, frames: Option<&FrameMatrix>) -> Result<()> {
    let fatal: Vec<_> = validate_scene(scene, frames)
        .into_iter()
        .filter(Violation::is_fatal)
        .collect();
    if fatal.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(fatal))
    }
}

/// Serializes a document to the canonical byte layout.
pub fn encode_document(doc: &GmsDocument) -> Result<Vec<u8>> {
    fatal_violations(&doc.scene, Some(&doc.frames))?;
    let scene = &doc.scene;
    let mut out = encode_declarations(doc.version, scene, &doc.unknown_chunks)?.bytes;

    let stride = scene.padded_frame_stride();
    let fram_len = u64::from(scene.nb_frame) * stride;
    let fram_size = chunk_size(fram_len)?;
    out.extend_from_slice(&ChunkId::FRAM.bytes());
    out.extend_from_slice(&fram_size.to_be_bytes());
    let start = out.len();
    out.resize(start + fram_len as usize + (fram_len as usize & 1), 0);
    let stride = stride as usize;
    for (f, frame) in doc.frames.rows().enumerate() {
        let at = start + f * stride;
        encode_frame(scene, frame, &mut out[at..at + stride])?;
    }

    let form_size = chunk_size(out.len() as u64 - 8)?;
    out[4..8].copy_from_slice(&form_size.to_be_bytes());
    Ok(out)
}

/// Tracks where we are in the chunk sequence while reading declarations.
#[derive(Default)]
struct DeclarationParser {
    version: Option<Version>,
    scene: Option<Scene>,
    unknown: Vec<RawChunk>,
    chunks_seen: usize,
}

impl DeclarationParser {
    fn structure(header: &ChunkHeader, reason: impl Into<String>) -> Error {
        Error::Structure {
            chunk: header.id,
            offset: header.offset,
            reason: reason.into(),
        }
    }

    fn note_chunk(&mut self, header: &ChunkHeader) -> Result<()> {
        if self.chunks_seen == 0 && header.id != ChunkId::VERS {
            warn!(
                "no VERS chunk at byte offset {}, assuming version {}",
                header.offset,
                Version::CURRENT
            );
            self.version = Some(Version::CURRENT);
        }
        self.chunks_seen += 1;
        Ok(())
    }

    /// Handles any chunk other than `FRAM`.
    fn accept(&mut self, header: &ChunkHeader, payload: Vec<u8>) -> Result<()> {
        let first = self.chunks_seen == 0;
        self.note_chunk(header)?;
        let mut cursor = PayloadCursor::new(&payload, header.id, header.payload_offset());
        match header.id {
            ChunkId::VERS => {
                if !first {
                    return Err(Self::structure(header, "VERS must be the first chunk"));
                }
                let major = cursor.u16("versNum")?;
                let minor = cursor.u16("subVersNum")?;
                cursor.finish()?;
                if major > 0 {
                    return Err(Error::UnsupportedVersion { major, minor });
                }
                self.version = Some(Version { major, minor });
            }
            ChunkId::SCEN => {
                if self.scene.is_some() {
                    return Err(Self::structure(header, "more than one SCEN chunk"));
                }
                let name = cursor.name("scene name")?;
                let nb_frame = cursor.u32("nbFrame")?;
                let freq = cursor.f64("freq")?;
                let type_offset = cursor.offset();
                let sample_type = SampleType::from_code(cursor.u16("dataType")?)
                    .map_err(|e| with_offset(e, type_offset))?;
                let scale = cursor.f64("scale")?;
                let block_size = cursor.u32("blockSize")?;
                cursor.finish()?;
                self.scene = Some(Scene {
                    name,
                    nb_frame,
                    freq,
                    sample_type,
                    scale,
                    block_size,
                    units: Vec::new(),
                });
            }
            ChunkId::UNIT => {
                let name = cursor.name("unit name")?;
                cursor.finish()?;
                let scene = self
                    .scene
                    .as_mut()
                    .ok_or_else(|| Self::structure(header, format!("unit '{name}' declared before SCEN")))?;
                scene.units.push(Unit::new(name, Vec::new()));
            }
            ChunkId::CHAN => {
                let name = cursor.name("channel name")?;
                let dim_offset = cursor.offset();
                let dimension = Dimension::from_code(cursor.u16("dimension")?)
                    .map_err(|e| with_offset(e, dim_offset))?;
                let type_offset = cursor.offset();
                let var_type = VariableType::from_code(cursor.u16("type")?)
                    .map_err(|e| with_offset(e, type_offset))?;
                cursor.finish()?;
                let unit = self
                    .scene
                    .as_mut()
                    .and_then(|s| s.units.last_mut())
                    .ok_or_else(|| {
                        Self::structure(header, format!("orphan channel '{name}' declared before any UNIT"))
                    })?;
                unit.channels.push(Channel::new(name, dimension, var_type));
            }
            _ => {
                warn!(
                    "skipping unknown chunk {} ({} bytes) at byte offset {}",
                    header.id, header.size, header.offset
                );
                self.unknown.push(RawChunk::new(header.id, payload));
            }
        }
        Ok(())
    }

    /// Checks a `FRAM` header against the declarations and returns the scene.
    fn accept_frames(&mut self, header: &ChunkHeader) -> Result<Scene> {
        self.note_chunk(header)?;
        let scene = self
            .scene
            .take()
            .ok_or_else(|| Self::structure(header, "FRAM before SCEN"))?;
        let expected = u64::from(scene.nb_frame) * scene.padded_frame_stride();
        if u64::from(header.size) != expected {
            return Err(Self::structure(
                header,
                format!(
                    "FRAM size {} does not match nbFrame {} x stride {} = {expected}",
                    header.size,
                    scene.nb_frame,
                    scene.padded_frame_stride()
                ),
            ));
        }
        Ok(scene)
    }
}

fn with_offset(err: Error, at: u64) -> Error {
    match err {
        Error::IllegalCode { field, code, .. } => Error::IllegalCode {
            field,
            code,
            offset: Some(at),
        },
        other => other,
    }
}

/// Reads and checks the 12-byte `FORM` header, returning the `FORM` size.
fn read_form_header(header: &[u8]) -> Result<u32> {
    if header.len() >= 4 && header[..4] != ChunkId::FORM.bytes() {
        return Err(Error::BadMagic {
            offset: 0,
            found: [header[0], header[1], header[2], header[3]],
            expected: "'FORM'",
        });
    }
    if header.len() < 12 {
        return Err(Error::Truncated {
            context: "'FORM' header".into(),
            offset: 0,
            needed: 12,
            available: header.len() as u64,
        });
    }
    let file_type = [header[8], header[9], header[10], header[11]];
    if file_type != FILE_TYPE && file_type != LEGACY_FILE_TYPE {
        return Err(Error::BadMagic {
            offset: 8,
            found: file_type,
            expected: "file type 'GMS '",
        });
    }
    let size = u32::from_be_bytes([header[4], header[5], header[6], header[7]]);
    if size < 4 {
        return Err(Error::Structure {
            chunk: ChunkId::FORM,
            offset: 0,
            reason: format!("FORM size {size} cannot hold the file type"),
        });
    }
    Ok(size)
}

fn missing(what: &str) -> Error {
    Error::Structure {
        chunk: ChunkId::FORM,
        offset: 0,
        reason: format!("no {what} chunk"),
    }
}

/// Parses a complete file.
pub fn decode_document(bytes: &[u8]) -> Result<GmsDocument> {
    let form_size = read_form_header(&bytes[..bytes.len().min(12)])?;
    let declared = u64::from(form_size) - 4;
    let available = (bytes.len() - 12) as u64;
    let region = &bytes[12..12 + declared.min(available) as usize];
    if available > declared {
        warn!(
            "ignoring {} bytes after the FORM chunk",
            available - declared - (declared & 1)
        );
    }

    let mut reader = ChunkReader::new(region, 12, Some(region.len() as u64));
    let mut parser = DeclarationParser::default();
    let mut decoded: Option<(Scene, FrameMatrix)> = None;
    while let Some(header) = reader.next_header()? {
        let payload = reader.read_payload(&header)?;
        if decoded.is_some() {
            if header.id.is_known() && header.id != ChunkId::FORM {
                return Err(DeclarationParser::structure(
                    &header,
                    format!("{} chunk after FRAM", header.id),
                ));
            }
            parser.accept(&header, payload)?;
        } else if header.id == ChunkId::FRAM {
            let scene = parser.accept_frames(&header)?;
            let frames = decode_frames(&scene, &payload);
            decoded = Some((scene, frames));
        } else {
            parser.accept(&header, payload)?;
        }
    }
    if declared > available {
        return Err(Error::Truncated {
            context: "'FORM' chunk".into(),
            offset: 0,
            needed: declared,
            available,
        });
    }

    let (scene, frames) = match decoded {
        Some(d) => d,
        None if parser.scene.is_none() => return Err(missing("SCEN")),
        None => return Err(missing("FRAM")),
    };
    Ok(GmsDocument {
        version: parser.version.unwrap_or(Version::CURRENT),
        scene,
        frames,
        unknown_chunks: parser.unknown,
    })
}

fn decode_frames(scene: &Scene, payload: &[u8]) -> FrameMatrix {
    let tracks = scene.track_count();
    let frames = scene.nb_frame as usize;
    let stride = scene.padded_frame_stride() as usize;
    let mut matrix = FrameMatrix::zeros(frames, tracks);
    for f in 0..frames {
        decode_frame(scene, &payload[f * stride..], matrix.frame_mut(f));
    }
    matrix
}

/// Scene declaration read ahead of a frame stream.
#[derive(Clone, Debug, PartialEq)]
pub struct StreamHeader {
    pub version: Version,
    pub scene: Scene,
    /// Unknown chunks found before `FRAM`.
    pub unknown_chunks: Vec<RawChunk>,
}

/// Lazily decodes frames from the `FRAM` payload of a byte source.
pub struct FrameStream<R> {
    inner: R,
    scene: Scene,
    stride: usize,
    remaining: u64,
    /// Offset of the next frame within the `FRAM` payload.
    position: u64,
    /// Absolute file offset of the `FRAM` payload.
    payload_offset: u64,
    buf: Vec<u8>,
}

/// Reads the declarations of a file and returns a stream positioned at the
/// first frame. No samples are read.
pub fn open_frame_stream<R: Read>(mut reader: R) -> Result<(StreamHeader, FrameStream<R>)> {
    let mut head = [0u8; 12];
    let mut got = 0;
    while got < head.len() {
        match reader.read(&mut head[got..])? {
            0 => break,
            n => got += n,
        }
    }
    let form_size = read_form_header(&head[..got])?;

    let mut chunks = ChunkReader::new(reader, 12, Some(u64::from(form_size) - 4));
    let mut parser = DeclarationParser::default();
    loop {
        let header = chunks.next_header()?.ok_or_else(|| {
            if parser.scene.is_none() {
                missing("SCEN")
            } else {
                missing("FRAM")
            }
        })?;
        if header.id == ChunkId::FRAM {
            let scene = parser.accept_frames(&header)?;
            let stride = scene.padded_frame_stride() as usize;
            let stream = FrameStream {
                inner: chunks.into_inner(),
                stride,
                remaining: u64::from(scene.nb_frame),
                position: 0,
                payload_offset: header.payload_offset(),
                buf: vec![0; stride],
                scene: scene.clone(),
            };
            let header = StreamHeader {
                version: parser.version.unwrap_or(Version::CURRENT),
                scene,
                unknown_chunks: parser.unknown,
            };
            return Ok((header, stream));
        }
        let payload = chunks.read_payload(&header)?;
        parser.accept(&header, payload)?;
    }
}

impl<R: Read> FrameStream<R> {
    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn track_count(&self) -> usize {
        self.scene.track_count()
    }

    /// Offset of the next frame within the `FRAM` payload.
    pub fn next_frame_offset(&self) -> u64 {
        self.position
    }

    /// Reads the next frame into `out`, returning `false` at end of stream.
    pub fn read_next_frame_into(&mut self, out: &mut [f64]) -> Result<bool> {
        if out.len() != self.track_count() {
            return Err(Error::WidthMismatch {
                expected: self.track_count(),
                found: out.len(),
            });
        }
        if self.remaining == 0 {
            return Ok(false);
        }
        let mut filled = 0;
        while filled < self.stride {
            match self.inner.read(&mut self.buf[filled..])? {
                0 => break,
                n => filled += n,
            }
        }
        if filled < self.stride {
            self.remaining = 0;
            return Err(Error::Truncated {
                context: format!("frame at FRAM payload offset {}", self.position),
                offset: self.payload_offset + self.position,
                needed: self.stride as u64,
                available: filled as u64,
            });
        }
        decode_frame(&self.scene, &self.buf, out);
        self.position += self.stride as u64;
        self.remaining -= 1;
        Ok(true)
    }

    /// Reads the next frame, or `None` once every declared frame was read.
    pub fn read_next_frame(&mut self) -> Result<Option<Vec<f64>>> {
        let mut frame = vec![0.0; self.track_count()];
        Ok(self.read_next_frame_into(&mut frame)?.then_some(frame))
    }
}

impl<R: Read> Iterator for FrameStream<R> {
    type Item = Result<Vec<f64>>;

    fn next(&mut self) -> Option<Self::Item> {
        self.read_next_frame().transpose()
    }
}

/// Writes a file frame by frame, fixing up sizes and `nbFrame` on
/// [`finalize`](FrameWriter::finalize).
pub struct FrameWriter<W: Write + Seek> {
    inner: W,
    scene: Scene,
    /// Stream position of the `FORM` id.
    start: u64,
    nb_frame_pos: u64,
    frames: u64,
    bytes: u64,
    buf: Vec<u8>,
    finalized: bool,
}

impl<W: Write + Seek> FrameWriter<W> {
    /// Writes the declarations of `scene` (its `nb_frame` is ignored) and an
    /// empty `FRAM` header.
    pub fn new(inner: W, scene: &Scene) -> Result<FrameWriter<W>> {
        Self::with_unknown_chunks(inner, scene, &[])
    }

    pub fn with_unknown_chunks(mut inner: W, scene: &Scene, unknown: &[RawChunk]) -> Result<FrameWriter<W>> {
        fatal_violations(scene, None)?;
        let mut scene = scene.clone();
        scene.nb_frame = 0;
        let mut decl = encode_declarations(Version::CURRENT, &scene, unknown)?;
        decl.bytes.extend_from_slice(&ChunkId::FRAM.bytes());
        decl.bytes.extend_from_slice(&[0; 4]);
        let start = inner.stream_position()?;
        inner.write_all(&decl.bytes)?;
        let stride = scene.padded_frame_stride() as usize;
        Ok(FrameWriter {
            inner,
            nb_frame_pos: start + decl.nb_frame_pos as u64,
            start,
            frames: 0,
            bytes: decl.bytes.len() as u64,
            buf: vec![0; stride],
            scene,
            finalized: false,
        })
    }

    pub fn frames_written(&self) -> u64 {
        self.frames
    }

    /// Appends one frame of physical values and returns the total number of
    /// bytes written so far. Nothing is written if the frame is rejected.
    pub fn append_frame(&mut self, frame: &[f64]) -> Result<u64> {
        if self.finalized {
            return Err(Error::AlreadyFinalized);
        }
        let tracks = self.scene.track_count();
        if frame.len() != tracks {
            return Err(Error::WidthMismatch {
                expected: tracks,
                found: frame.len(),
            });
        }
        let fram_len = (self.frames + 1) * self.buf.len() as u64;
        if self.frames >= u64::from(u32::MAX) || chunk_size(fram_len).is_err() {
            return Err(Error::Oversize { len: fram_len });
        }
        self.buf.fill(0);
        encode_frame(&self.scene, frame, &mut self.buf)?;
        self.inner.write_all(&self.buf)?;
        self.frames += 1;
        self.bytes += self.buf.len() as u64;
        Ok(self.bytes)
    }

    pub fn append_frames(&mut self, frames: &FrameMatrix) -> Result<u64> {
        if frames.track_count() != self.scene.track_count() {
            return Err(Error::WidthMismatch {
                expected: self.scene.track_count(),
                found: frames.track_count(),
            });
        }
        for frame in frames.rows() {
            self.append_frame(frame)?;
        }
        Ok(self.bytes)
    }

    /// Writes the final pad byte and patches `nbFrame`, the `FRAM` size and
    /// the `FORM` size. Returns the total file length.
    pub fn finalize(&mut self) -> Result<u64> {
        if self.finalized {
            return Err(Error::AlreadyFinalized);
        }
        let fram_len = self.frames * self.buf.len() as u64;
        if fram_len % 2 == 1 {
            self.inner.write_all(&[0])?;
            self.bytes += 1;
        }
        let form_size = chunk_size(self.bytes - 8)?;
        let fram_size_pos = self.start + self.bytes - (fram_len + (fram_len & 1)) - 4;
        self.inner.seek(SeekFrom::Start(self.start + 4))?;
        self.inner.write_all(&form_size.to_be_bytes())?;
        self.inner.seek(SeekFrom::Start(self.nb_frame_pos))?;
        self.inner.write_all(&(self.frames as u32).to_be_bytes())?;
        self.inner.seek(SeekFrom::Start(fram_size_pos))?;
        self.inner.write_all(&(fram_len as u32).to_be_bytes())?;
        self.inner.seek(SeekFrom::Start(self.start + self.bytes))?;
        self.inner.flush()?;
        self.finalized = true;
        Ok(self.bytes)
    }

    pub fn into_inner(self) -> W {
        self.inner
    }
}
