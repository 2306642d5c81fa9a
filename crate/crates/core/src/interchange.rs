//! CSV interchange.
//!
//! A scene is exported as two text files: a CSV table with one header row of
//! `unit.channel.axis` labels and one row per frame of physical values, and a
//! TOML manifest carrying the scene metadata and unit/channel structure.
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so float data survives a round trip bit for bit.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::codec::GmsDocument;
use crate::error::{Error, Result};
use crate::scene::{Channel, FrameMatrix, Scene, Unit};

const MANIFEST_FORMAT: &str = "gms-csv";

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    format: String,
    scene: SceneEntry,
    #[serde(default)]
    units: Vec<UnitEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SceneEntry {
    name: String,
    frames: u32,
    freq: f64,
    sample_type: String,
    scale: f64,
    block_size: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct UnitEntry {
    name: String,
    #[serde(default)]
    channels: Vec<ChannelEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ChannelEntry {
    name: String,
    dimension: String,
    #[serde(rename = "type")]
    var_type: String,
}

/// Renders the manifest describing `scene`.
pub fn write_manifest(scene: &Scene) -> Result<String> {
    let manifest = Manifest {
        format: MANIFEST_FORMAT.into(),
        scene: SceneEntry {
            name: scene.name.clone(),
            frames: scene.nb_frame,
            freq: scene.freq,
            sample_type: scene.sample_type.name().into(),
            scale: scene.scale,
            block_size: scene.block_size,
        },
        units: scene
            .units
            .iter()
            .map(|u| UnitEntry {
                name: u.name.clone(),
                channels: u
                    .channels
                    .iter()
                    .map(|c| ChannelEntry {
                        name: c.name.clone(),
                        dimension: c.dimension.name().into(),
                        var_type: c.var_type.name().into(),
                    })
                    .collect(),
            })
            .collect(),
    };
    toml::to_string(&manifest).map_err(|e| Error::Parse {
        what: "manifest".into(),
        reason: e.to_string(),
    })
}

/// Parses a manifest back into a scene with no samples attached.
pub fn read_manifest(text: &str) -> Result<Scene> {
    let manifest: Manifest = toml::from_str(text).map_err(|e| Error::Parse {
        what: "manifest".into(),
        reason: e.to_string(),
    })?;
    if manifest.format != MANIFEST_FORMAT {
        return Err(Error::Parse {
            what: "manifest".into(),
            reason: format!("format is {:?}, expected {MANIFEST_FORMAT:?}", manifest.format),
        });
    }
    let units = manifest
        .units
        .into_iter()
        .map(|u| {
            let channels = u
                .channels
                .into_iter()
                .map(|c| Ok(Channel::new(c.name, c.dimension.parse()?, c.var_type.parse()?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Unit::new(u.name, channels))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = manifest.scene;
    Ok(Scene {
        name: s.name,
        nb_frame: s.frames,
        freq: s.freq,
        sample_type: s.sample_type.parse()?,
        scale: s.scale,
        block_size: s.block_size,
        units,
    })
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            what: "CSV".into(),
            reason: format!("{other:?}"),
        },
    }
}

/// Writes the header row and one row per frame.
pub fn write_csv<W: Write>(scene: &Scene, frames: &FrameMatrix, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(scene.track_labels()).map_err(csv_error)?;
    let mut row = Vec::with_capacity(frames.track_count());
    for frame in frames.rows() {
        row.clear();
        row.extend(frame.iter().map(|v| v.to_string()));
        writer.write_record(&row).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a CSV table laid out for `scene` (as returned by [`read_manifest`]).
///
/// The header must equal the scene's track labels and the row count must
/// equal the declared frame count.
pub fn read_csv<R: Read>(mut scene: Scene, input: R) -> Result<GmsDocument> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input);
    let expected = scene.track_labels();
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.len() != expected.len() {
        return Err(Error::ManifestMismatch(format!(
            "CSV has {} columns, manifest declares {} tracks",
            header.len(),
            expected.len()
        )));
    }
    if let Some((i, (found, want))) = header
        .iter()
        .zip(&expected)
        .enumerate()
        .find(|(_, (h, e))| h != e)
    {
        return Err(Error::ManifestMismatch(format!(
            "column {} is {found:?}, manifest expects {want:?}",
            i + 1
        )));
    }

    let tracks = expected.len();
    let mut values = Vec::new();
    let mut frames = 0usize;
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = frames + 2;
        if record.len() != tracks {
            return Err(Error::ManifestMismatch(format!(
                "line {line} has {} values, manifest declares {tracks} tracks",
                record.len()
            )));
        }
        for (col, cell) in record.iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                what: format!("CSV value at line {line} column {}", col + 1),
                reason: format!("{cell:?} is not a number"),
            })?;
            values.push(v);
        }
        frames += 1;
    }
    if frames as u64 != u64::from(scene.nb_frame) {
        return Err(Error::ManifestMismatch(format!(
            "CSV has {frames} rows, manifest declares {} frames",
            scene.nb_frame
        )));
    }
    scene.nb_frame = frames as u32;
    let frames = FrameMatrix::new(frames, tracks, values)?;
    Ok(GmsDocument::new(scene, frames))
}
