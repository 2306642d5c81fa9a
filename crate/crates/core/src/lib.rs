//! Reading, writing and processing GMS gesture and motion signal files.
//!
//! A GMS file holds one [`Scene`]: units of channels, each channel made of
//! one to three tracks, all sampled at a single frequency. On disk it is an
//! IFF `FORM` container with big-endian fields:
//!
//! ```text
//! FORM <size> "GMS "
//!   VERS  versNum subVersNum
//!   SCEN  name nbFrame freq dataType scale blockSize
//!   UNIT  name            (then the CHAN chunks of that unit)
//!   CHAN  name dimension type
//!   ...
//!   FRAM  nbFrame frames of stride bytes each
//! ```
//!
//! ```
//! use gms::{decode_document, encode_document, Channel, Dimension, FrameMatrix,
//!           GmsDocument, SampleType, Scene, Unit, VariableType};
//!
//! let scene = Scene::new("demo", 1000.0, SampleType::Float32, vec![
//!     Unit::new("hand", vec![Channel::new("tip", Dimension::Space3Dxyz, VariableType::Position)]),
//! ]);
//! let frames = FrameMatrix::from_rows(3, [[0.0, 0.5, 1.0], [0.25, 0.5, 1.0]]).unwrap();
//! let doc = GmsDocument::new(scene, frames);
//! let bytes = encode_document(&doc).unwrap();
//! assert_eq!(decode_document(&bytes).unwrap(), doc);
//! ```

pub mod chunk;
pub mod codec;
mod error;
pub mod example;
pub mod interchange;
pub mod scene;
pub mod signal;
pub mod validate;

pub use chunk::{scan_chunks, write_chunk, ChunkId, Primitive, PrimitiveKind, RawChunk};
pub use codec::{
    decode_document, encode_document, open_frame_stream, FrameStream, FrameWriter, GmsDocument,
    StreamHeader, Version,
};
pub use error::{Error, Result};
pub use example::{example_document, ExampleSpec};
pub use scene::{
    Channel, Dimension, FrameMatrix, SampleType, Scene, Unit, VariableClass, VariableType,
};
pub use signal::{
    classify_rate, decimate, slice_track, smooth_decimate, track_stats, ChannelPath, RateBand,
    TrackSlice, TrackStats,
};
pub use validate::{validate_scene, Severity, Violation, ViolationKind};
