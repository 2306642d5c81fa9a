#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use gms::{Channel, Dimension, FrameMatrix, GmsDocument, SampleType, Scene, Unit, VariableType};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `gms` binary; `code` is -1 when it died from a signal.
pub fn gms<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_gms"))
        .args(args)
        .output()
        .expect("gms binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn path_arg(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// Bytes of a commented hex vector from the core crate's golden corpus.
pub fn golden(name: &str) -> Vec<u8> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "golden", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .flat_map(|l| l.split('#').next().unwrap().split_whitespace().map(str::to_owned).collect::<Vec<_>>())
        .map(|b| u8::from_str_radix(&b, 16).unwrap())
        .collect()
}

pub fn scalar_scene(sample_type: SampleType) -> Scene {
    Scene::new(
        "s",
        1000.0,
        sample_type,
        vec![Unit::new(
            "u",
            vec![Channel::new("c", Dimension::Scalar0D, VariableType::Position)],
        )],
    )
}

/// One float32 scalar track holding `values`.
pub fn scalar_document(values: &[f64]) -> GmsDocument {
    let frames = FrameMatrix::new(values.len(), 1, values.to_vec()).unwrap();
    GmsDocument::new(scalar_scene(SampleType::Float32), frames)
}

/// Wraps chunks into a FORM container with the canonical file type.
pub fn assemble(chunks: &[(&[u8; 4], Vec<u8>)]) -> Vec<u8> {
    let mut body = b"GMS ".to_vec();
    for (id, payload) in chunks {
        body.extend(gms::write_chunk(gms::ChunkId::new(**id).unwrap(), payload).unwrap());
    }
    let mut out = b"FORM".to_vec();
    out.extend((body.len() as u32).to_be_bytes());
    out.extend(body);
    out
}

pub fn scen_payload(nb_frame: u32, data_type: u16, block_size: u32) -> Vec<u8> {
    let mut p = vec![0, 1, b's'];
    p.extend(nb_frame.to_be_bytes());
    p.extend(1000.0f64.to_be_bytes());
    p.extend(data_type.to_be_bytes());
    p.extend(1.0f64.to_be_bytes());
    p.extend(block_size.to_be_bytes());
    p
}

pub fn chan_payload(name: &str, dimension: u16, var_type: u16) -> Vec<u8> {
    let mut p = (name.len() as u16).to_be_bytes().to_vec();
    p.extend(name.as_bytes());
    p.extend(dimension.to_be_bytes());
    p.extend(var_type.to_be_bytes());
    p
}
