//! The gesture scene: tracks grouped into channels, channels into units, units
//! into one scene sampled at a single frequency.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Geometric dimension of a channel, which fixes its number of tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    /// Pure scalar. Also spelled `1D0`.
    Scalar0D,
    Axis1Dx,
    Axis1Dy,
    Axis1Dz,
    Plane2Dxy,
    Plane2Dyz,
    /// The z-x plane. Some descriptions of the format spell it `2Dzy`; that
    /// spelling is accepted as an alias when parsing names.
    Plane2Dzx,
    Space3Dxyz,
}

impl Dimension {
    pub const ALL: [Dimension; 8] = [
        Dimension::Scalar0D,
        Dimension::Axis1Dx,
        Dimension::Axis1Dy,
        Dimension::Axis1Dz,
        Dimension::Plane2Dxy,
        Dimension::Plane2Dyz,
        Dimension::Plane2Dzx,
        Dimension::Space3Dxyz,
    ];

    pub fn code(self) -> u16 {
        self as u16
    }

    pub fn from_code(code: u16) -> Result<Dimension> {
        Dimension::ALL
            .get(usize::from(code))
            .copied()
            .ok_or(Error::IllegalCode {
                field: "dimension",
                code,
                offset: None,
            })
    }

    pub fn track_count(self) -> usize {
        self.axes().len()
    }

    /// Axis labels in storage order.
    pub fn axes(self) -> &'static [&'static str] {
        match self {
            Dimension::Scalar0D => &["v"],
            Dimension::Axis1Dx => &["x"],
            Dimension::Axis1Dy => &["y"],
            Dimension::Axis1Dz => &["z"],
            Dimension::Plane2Dxy => &["x", "y"],
            Dimension::Plane2Dyz => &["y", "z"],
            Dimension::Plane2Dzx => &["z", "x"],
            Dimension::Space3Dxyz => &["x", "y", "z"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Scalar0D => "0D",
            Dimension::Axis1Dx => "1Dx",
            Dimension::Axis1Dy => "1Dy",
            Dimension::Axis1Dz => "1Dz",
            Dimension::Plane2Dxy => "2Dxy",
            Dimension::Plane2Dyz => "2Dyz",
            Dimension::Plane2Dzx => "2Dzx",
            Dimension::Space3Dxyz => "3Dxyz",
        }
    }
}

/// Track count of a raw dimension code.
pub fn track_count_for_code(code: u16) -> Result<usize> {
    Dimension::from_code(code).map(Dimension::track_count)
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dimension> {
        match s {
            "1D0" => return Ok(Dimension::Scalar0D),
            "2Dzy" => return Ok(Dimension::Plane2Dzx),
            _ => {}
        }
        Dimension::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "dimension".into(),
                reason: format!("unknown dimension {s:?}"),
            })
    }
}

/// Extensive variables are homogeneous to spatial quantities, intensive ones
/// to efforts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VariableClass {
    Extensive,
    Intensive,
}

impl fmt::Display for VariableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariableClass::Extensive => "extensive",
            VariableClass::Intensive => "intensive",
        })
    }
}

/// Physical nature of a channel's signal.
///
/// Only `Position` and `Force` are defined by format version 0.1. The other
/// codes are reserved: files using them decode, but validation flags them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableType {
    Position,
    Force,
    Angle,
    Velocity,
    Acceleration,
    Torque,
}

impl VariableType {
    pub const ALL: [VariableType; 6] = [
        VariableType::Position,
        VariableType::Force,
        VariableType::Angle,
        VariableType::Velocity,
        VariableType::Acceleration,
        VariableType::Torque,
    ];

    pub fn code(self) -> u16 {
        self as u16
    }

    pub fn from_code(code: u16) -> Result<VariableType> {
        VariableType::ALL
            .get(usize::from(code))
            .copied()
            .ok_or(Error::IllegalCode {
                field: "variable type",
                code,
                offset: None,
            })
    }

    pub fn class(self) -> VariableClass {
        match self {
            VariableType::Force | VariableType::Torque => VariableClass::Intensive,
            _ => VariableClass::Extensive,
        }
    }

    pub fn is_reserved(self) -> bool {
        !matches!(self, VariableType::Position | VariableType::Force)
    }

    pub fn name(self) -> &'static str {
        match self {
            VariableType::Position => "position",
            VariableType::Force => "force",
            VariableType::Angle => "angle",
            VariableType::Velocity => "velocity",
            VariableType::Acceleration => "acceleration",
            VariableType::Torque => "torque",
        }
    }
}

impl fmt::Display for VariableType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VariableType {
    type Err = Error;

    fn from_str(s: &str) -> Result<VariableType> {
        VariableType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                what: "variable type".into(),
                reason: format!("unknown variable type {s:?}"),
            })
    }
}

/// On-disk representation of each sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleType {
    Float32,
    Float64,
    /// Signed 32-bit integer; physical value is `stored * scale`.
    Long,
}

impl SampleType {
    pub const ALL: [SampleType; 3] = [SampleType::Float32, SampleType::Float64, SampleType::Long];

    pub fn code(self) -> u16 {
        self as u16
    }

    pub fn from_code(code: u16) -> Result<SampleType> {
        SampleType::ALL
            .get(usize::from(code))
            .copied()
            .ok_or(Error::IllegalCode {
                field: "data type",
                code,
                offset: None,
            })
    }

    pub fn byte_width(self) -> usize {
        match self {
            SampleType::Float32 | SampleType::Long => 4,
            SampleType::Float64 => 8,
        }
    }

    pub fn is_float(self) -> bool {
        !matches!(self, SampleType::Long)
    }

    pub fn name(self) -> &'static str {
        match self {
            SampleType::Float32 => "float32",
            SampleType::Float64 => "float64",
            SampleType::Long => "long",
        }
    }
}

impl fmt::Display for SampleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SampleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<SampleType> {
        SampleType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                what: "sample type".into(),
                reason: format!("unknown sample type {s:?}"),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    pub name: String,
    pub dimension: Dimension,
    pub var_type: VariableType,
}

impl Channel {
    pub fn new(name: impl Into<String>, dimension: Dimension, var_type: VariableType) -> Channel {
        Channel {
            name: name.into(),
            dimension,
            var_type,
        }
    }

    pub fn track_count(&self) -> usize {
        self.dimension.track_count()
    }
}

/// A group of channels whose signals are dynamically correlated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub name: String,
    pub channels: Vec<Channel>,
}

impl Unit {
    pub fn new(name: impl Into<String>, channels: Vec<Channel>) -> Unit {
        Unit {
            name: name.into(),
            channels,
        }
    }

    pub fn track_count(&self) -> usize {
        self.channels.iter().map(Channel::track_count).sum()
    }
}

/// Scene metadata: everything in a file except the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub name: String,
    pub nb_frame: u32,
    /// Sampling frequency in Hz, shared by every track.
    pub freq: f64,
    pub sample_type: SampleType,
    /// Physical value = stored value * scale.
    pub scale: f64,
    /// Frame alignment quantum in bytes; 0 means frames are packed.
    pub block_size: u32,
    pub units: Vec<Unit>,
}

impl Scene {
    /// A scene with no frames, scale 1 and packed frames.
    pub fn new(name: impl Into<String>, freq: f64, sample_type: SampleType, units: Vec<Unit>) -> Scene {
        Scene {
            name: name.into(),
            nb_frame: 0,
            freq,
            sample_type,
            scale: 1.0,
            block_size: 0,
            units,
        }
    }

    pub fn track_count(&self) -> usize {
        self.units.iter().map(Unit::track_count).sum()
    }

    pub fn channel_count(&self) -> usize {
        self.units.iter().map(|u| u.channels.len()).sum()
    }

    /// Bytes taken by the samples of one frame.
    pub fn frame_byte_size(&self) -> u64 {
        self.track_count() as u64 * self.sample_type.byte_width() as u64
    }

    /// Bytes from the start of one frame to the start of the next: the frame
    /// size rounded up to a multiple of `block_size`.
    pub fn padded_frame_stride(&self) -> u64 {
        let frame = self.frame_byte_size();
        match u64::from(self.block_size) {
            0 => frame,
            block => frame.div_ceil(block) * block,
        }
    }

    /// Duration of the signal in seconds.
    pub fn duration(&self) -> f64 {
        f64::from(self.nb_frame) / self.freq
    }

    /// Column of the first track of `unit.channel`, with the channel.
    pub fn locate(&self, unit: &str, channel: &str) -> Option<(usize, &Channel)> {
        let mut column = 0;
        for u in &self.units {
            for c in &u.channels {
                if u.name == unit && c.name == channel {
                    return Some((column, c));
                }
                column += c.track_count();
            }
        }
        None
    }

    /// `unit.channel.axis` label of every track, in storage order.
    pub fn track_labels(&self) -> Vec<String> {
        self.units
            .iter()
            .flat_map(|u| {
                u.channels.iter().flat_map(move |c| {
                    c.dimension
                        .axes()
                        .iter()
                        .map(move |axis| format!("{}.{}.{}", u.name, c.name, axis))
                })
            })
            .collect()
    }
}

/// Sampled signal in physical units, stored frame-major: all tracks of frame
/// 0, then all tracks of frame 1, and so on.
///
/// Equality compares samples bitwise.
#[derive(Clone, Debug, Default)]
pub struct FrameMatrix {
    frames: usize,
    tracks: usize,
    values: Vec<f64>,
}

impl FrameMatrix {
    pub fn new(frames: usize, tracks: usize, values: Vec<f64>) -> Result<FrameMatrix> {
        if frames.checked_mul(tracks) != Some(values.len()) {
            return Err(Error::WidthMismatch {
                expected: frames.saturating_mul(tracks),
                found: values.len(),
            });
        }
        Ok(FrameMatrix {
            frames,
            tracks,
            values,
        })
    }

    pub fn zeros(frames: usize, tracks: usize) -> FrameMatrix {
        FrameMatrix {
            frames,
            tracks,
            values: vec![0.0; frames * tracks],
        }
    }

    /// Builds a matrix from rows; every row must have `tracks` values.
    pub fn from_rows<I, R>(tracks: usize, rows: I) -> Result<FrameMatrix>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[f64]>,
    {
        let mut values = Vec::new();
        let mut frames = 0;
        for row in rows {
            let row = row.as_ref();
            if row.len() != tracks {
                return Err(Error::WidthMismatch {
                    expected: tracks,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
            frames += 1;
        }
        Ok(FrameMatrix {
            frames,
            tracks,
            values,
        })
    }

    pub fn frame_count(&self) -> usize {
        self.frames
    }

    pub fn track_count(&self) -> usize {
        self.tracks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn frame(&self, index: usize) -> &[f64] {
        &self.values[index * self.tracks..(index + 1) * self.tracks]
    }

    pub fn frame_mut(&mut self, index: usize) -> &mut [f64] {
        &mut self.values[index * self.tracks..(index + 1) * self.tracks]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.frames).map(move |f| self.frame(f))
    }

    pub fn column(&self, track: usize) -> Vec<f64> {
        self.rows().map(|row| row[track]).collect()
    }

    pub fn get(&self, frame: usize, track: usize) -> f64 {
        self.values[frame * self.tracks + track]
    }
}

impl PartialEq for FrameMatrix {
    fn eq(&self, other: &FrameMatrix) -> bool {
        self.frames == other.frames
            && self.tracks == other.tracks
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_scene(sample_type: SampleType, units: Vec<Unit>) -> Scene {
        Scene::new("s", 1000.0, sample_type, units)
    }

    #[test]
    fn dimension_tracks() {
        assert_eq!(Dimension::Space3Dxyz.track_count(), 3);
        assert_eq!(Dimension::Scalar0D.track_count(), 1);
        assert_eq!(Dimension::Plane2Dxy.track_count(), 2);
        let counts: Vec<_> = Dimension::ALL.iter().map(|d| d.track_count()).collect();
        assert_eq!(counts, [1, 1, 1, 1, 2, 2, 2, 3]);
        for (code, d) in Dimension::ALL.iter().enumerate() {
            assert_eq!(d.code(), code as u16);
            assert_eq!(Dimension::from_code(code as u16).unwrap(), *d);
        }
        assert!(matches!(
            track_count_for_code(8),
            Err(Error::IllegalCode { field: "dimension", code: 8, .. })
        ));
    }

    #[test]
    fn dimension_names() {
        for d in Dimension::ALL {
            assert_eq!(d.name().parse::<Dimension>().unwrap(), d);
        }
        assert_eq!("2Dzy".parse::<Dimension>().unwrap(), Dimension::Plane2Dzx);
        assert_eq!("1D0".parse::<Dimension>().unwrap(), Dimension::Scalar0D);
        assert!("3Drqf".parse::<Dimension>().is_err());
    }

    #[test]
    fn variable_types() {
        assert_eq!(VariableType::Position.class(), VariableClass::Extensive);
        assert_eq!(VariableType::Force.class(), VariableClass::Intensive);
        assert_eq!(VariableType::Torque.class(), VariableClass::Intensive);
        assert_eq!(VariableType::Angle.code(), 2);
        assert_eq!(VariableType::Velocity.code(), 3);
        assert!(VariableType::Velocity.is_reserved());
        assert!(!VariableType::Force.is_reserved());
        assert!(VariableType::from_code(6).is_err());
        assert_eq!(SampleType::from_code(2).unwrap(), SampleType::Long);
        assert!(SampleType::from_code(3).is_err());
    }

    #[test]
    fn scene_track_counts() {
        let one = scalar_scene(
            SampleType::Float64,
            vec![Unit::new(
                "u",
                vec![Channel::new("c", Dimension::Scalar0D, VariableType::Position)],
            )],
        );
        assert_eq!(one.track_count(), 1);
        assert_eq!(one.frame_byte_size(), 8);

        let point = |n: &str| {
            Unit::new(
                n,
                vec![Channel::new("p", Dimension::Space3Dxyz, VariableType::Position)],
            )
        };
        let two = scalar_scene(SampleType::Long, vec![point("a"), point("b")]);
        assert_eq!(two.track_count(), 6);
        assert_eq!(two.frame_byte_size(), 24);
    }

    #[test]
    fn stride_rounding() {
        // 77 Float32 tracks = 308 bytes per frame.
        let mut scene = scalar_scene(
            SampleType::Float32,
            vec![Unit::new(
                "u",
                (0..77)
                    .map(|i| Channel::new(format!("c{i}"), Dimension::Scalar0D, VariableType::Position))
                    .collect(),
            )],
        );
        assert_eq!(scene.frame_byte_size(), 308);
        assert_eq!(scene.padded_frame_stride(), 308);
        scene.block_size = 128;
        assert_eq!(scene.padded_frame_stride(), 384);
        scene.block_size = 512;
        assert_eq!(scene.padded_frame_stride(), 512);
        scene.block_size = 4;
        assert_eq!(scene.padded_frame_stride(), 308);
    }

    #[test]
    fn locate_and_labels() {
        let scene = scalar_scene(
            SampleType::Float32,
            vec![
                Unit::new(
                    "A",
                    vec![
                        Channel::new("c", Dimension::Plane2Dzx, VariableType::Force),
                        Channel::new("d", Dimension::Scalar0D, VariableType::Position),
                    ],
                ),
                Unit::new(
                    "B",
                    vec![Channel::new("c", Dimension::Space3Dxyz, VariableType::Position)],
                ),
            ],
        );
        assert_eq!(scene.locate("B", "c").map(|(col, _)| col), Some(3));
        assert!(scene.locate("B", "d").is_none());
        assert_eq!(
            scene.track_labels(),
            ["A.c.z", "A.c.x", "A.d.v", "B.c.x", "B.c.y", "B.c.z"]
        );
    }

    #[test]
    fn frame_matrix_shape() {
        let m = FrameMatrix::from_rows(2, [[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(m.frame(1), [3.0, 4.0]);
        assert_eq!(m.column(0), [1.0, 3.0]);
        assert!(FrameMatrix::from_rows(2, [vec![1.0]]).is_err());
        assert!(FrameMatrix::new(2, 2, vec![0.0; 3]).is_err());
        let z = FrameMatrix::zeros(0, 5);
        assert_eq!(z.frame_count(), 0);
        assert_ne!(
            FrameMatrix::from_rows(1, [[0.0]]).unwrap(),
            FrameMatrix::from_rows(1, [[-0.0]]).unwrap()
        );
    }
}
