//! Byte-exact checks against hand-assembled vectors in `tests/golden`.

use gms::chunk::scan_chunks;
use gms::{
    decode_document, encode_document, Channel, ChunkId, Dimension, FrameMatrix, GmsDocument,
    SampleType, Scene, Unit, VariableType,
};

fn golden(name: &str) -> Vec<u8> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let hex: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap())
        .collect::<Vec<_>>()
        .join(" ");
    hex.split_whitespace()
        .map(|b| u8::from_str_radix(b, 16).unwrap())
        .collect()
}

fn minimal_scene() -> Scene {
    Scene::new(
        "s",
        1000.0,
        SampleType::Float32,
        vec![Unit::new(
            "u",
            vec![Channel::new("c", Dimension::Scalar0D, VariableType::Position)],
        )],
    )
}

#[test]
fn minimal_document_bytes() {
    let doc = GmsDocument::new(minimal_scene(), FrameMatrix::zeros(0, 1));
    let expected = golden("minimal.hex");
    assert_eq!(expected.len(), 98);
    assert_eq!(encode_document(&doc).unwrap(), expected);
    assert_eq!(decode_document(&expected).unwrap(), doc);
}

#[test]
fn vers_chunk_bytes() {
    let minimal = golden("minimal.hex");
    assert_eq!(
        minimal[12..24],
        [0x56, 0x45, 0x52, 0x53, 0x00, 0x00, 0x00, 0x04, 0x00, 0x00, 0x00, 0x01]
    );
}

#[test]
fn two_frame_payload() {
    let frames = FrameMatrix::from_rows(1, [[1.0], [2.0]]).unwrap();
    let bytes = encode_document(&GmsDocument::new(minimal_scene(), frames)).unwrap();
    let fram = golden("two_frames_fram.hex");
    assert!(bytes.ends_with(&fram));
    // Declarations are unchanged apart from nbFrame and the FORM size.
    let chunks = scan_chunks(&bytes[12..]).unwrap();
    let ids: Vec<ChunkId> = chunks.iter().map(|c| c.id).collect();
    assert_eq!(
        ids,
        [ChunkId::VERS, ChunkId::SCEN, ChunkId::UNIT, ChunkId::CHAN, ChunkId::FRAM]
    );
    assert_eq!(chunks[1].payload[3..7], 2u32.to_be_bytes());
}

#[test]
fn legacy_file_type_is_normalized() {
    let mut bytes = golden("minimal.hex");
    bytes[8..12].copy_from_slice(b"GSM ");
    let doc = decode_document(&bytes).unwrap();
    // Rewrites normalize the file type.
    assert_eq!(encode_document(&doc).unwrap(), golden("minimal.hex"));
}
