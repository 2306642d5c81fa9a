//! Structural and advisory checks over a scene and its samples.

use std::collections::HashSet;
use std::fmt;

use crate::codec::store_sample;
use crate::scene::{FrameMatrix, Scene};

/// Longest name a length-prefixed name field can hold.
pub const MAX_NAME_BYTES: usize = u16::MAX as usize;

/// Lower edge of the advisory gesture sampling band, in Hz.
pub const GESTURE_BAND_MIN_HZ: f64 = 1.0;
/// Upper edge of the advisory gesture sampling band, in Hz.
pub const GESTURE_BAND_MAX_HZ: f64 = 10_000.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    /// The scene cannot be written.
    Fatal,
    /// Legal but unusual; only fatal under strict validation.
    Advisory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NoUnits,
    EmptyUnit,
    EmptyName,
    NameTooLong,
    DuplicateUnit,
    DuplicateChannel,
    NonPositiveFreq,
    InvalidScale,
    FrameWidth,
    FrameCount,
    NonFiniteSample,
    UnrepresentableSample,
    FreqOutsideGestureBand,
    ReservedVariableType,
}

impl ViolationKind {
    pub fn severity(self) -> Severity {
        match self {
            ViolationKind::FreqOutsideGestureBand | ViolationKind::ReservedVariableType => {
                Severity::Advisory
            }
            _ => Severity::Fatal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The offending element, e.g. `scene`, `unit 'Dancer'`, `frames`.
    pub subject: String,
    pub message: String,
}

impl Violation {
    fn new(kind: ViolationKind, subject: impl Into<String>, message: impl Into<String>) -> Violation {
        Violation {
            kind,
            subject: subject.into(),
            message: message.into(),
        }
    }

    pub fn severity(&self) -> Severity {
        self.kind.severity()
    }

    pub fn is_fatal(&self) -> bool {
        self.severity() == Severity::Fatal
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity() {
            Severity::Fatal => "error",
            Severity::Advisory => "warning",
        };
        write!(f, "{level}: {}: {}", self.subject, self.message)
    }
}

/// Checks every scene invariant, and the samples when given.
///
/// Returns an empty list iff everything holds. Advisory entries (sampling
/// rate outside the gesture band, reserved variable types) are included with
/// [`Severity::Advisory`].
pub fn validate_scene(scene: &Scene, frames: Option<&FrameMatrix>) -> Vec<Violation> {
    use ViolationKind::*;
    let mut out = Vec::new();

    if scene.name.len() > MAX_NAME_BYTES {
        out.push(Violation::new(
            NameTooLong,
            "scene",
            format!("name is {} bytes, at most {MAX_NAME_BYTES} allowed", scene.name.len()),
        ));
    }
    if !(scene.freq.is_finite() && scene.freq > 0.0) {
        out.push(Violation::new(
            NonPositiveFreq,
            "scene",
            format!("freq must be positive and finite, got {}", scene.freq),
        ));
    } else if !(GESTURE_BAND_MIN_HZ..=GESTURE_BAND_MAX_HZ).contains(&scene.freq) {
        out.push(Violation::new(
            FreqOutsideGestureBand,
            "scene",
            format!(
                "freq {} Hz is outside the gesture band {GESTURE_BAND_MIN_HZ}-{GESTURE_BAND_MAX_HZ} Hz",
                scene.freq
            ),
        ));
    }
    if !(scene.scale.is_finite() && scene.scale != 0.0) {
        out.push(Violation::new(
            InvalidScale,
            "scene",
            format!("scale must be finite and nonzero, got {}", scene.scale),
        ));
    }
    if scene.units.is_empty() {
        out.push(Violation::new(NoUnits, "scene", "scene declares no units"));
    }

    let mut unit_names = HashSet::new();
    for unit in &scene.units {
        let subject = format!("unit '{}'", unit.name);
        if unit.name.len() > MAX_NAME_BYTES {
            out.push(Violation::new(NameTooLong, &subject, "name too long"));
        }
        if !unit_names.insert(unit.name.as_str()) {
            out.push(Violation::new(DuplicateUnit, &subject, "unit name is declared twice"));
        }
        if unit.channels.is_empty() {
            out.push(Violation::new(EmptyUnit, &subject, "unit has no channels"));
        }
        let mut channel_names = HashSet::new();
        for channel in &unit.channels {
            let subject = format!("channel '{}.{}'", unit.name, channel.name);
            if channel.name.is_empty() {
                out.push(Violation::new(EmptyName, &subject, "channel name is empty"));
            }
            if channel.name.len() > MAX_NAME_BYTES {
                out.push(Violation::new(NameTooLong, &subject, "name too long"));
            }
            if !channel_names.insert(channel.name.as_str()) {
                out.push(Violation::new(
                    DuplicateChannel,
                    &subject,
                    "channel name is declared twice in its unit",
                ));
            }
            if channel.var_type.is_reserved() {
                out.push(Violation::new(
                    ReservedVariableType,
                    &subject,
                    format!(
                        "variable type {} (code {}) is reserved in version 0.1",
                        channel.var_type,
                        channel.var_type.code()
                    ),
                ));
            }
        }
    }

    if let Some(frames) = frames {
        check_frames(scene, frames, &mut out);
    }
    out
}

fn check_frames(scene: &Scene, frames: &FrameMatrix, out: &mut Vec<Violation>) {
    let tracks = scene.track_count();
    if frames.track_count() != tracks {
        out.push(Violation::new(
            ViolationKind::FrameWidth,
            "frames",
            format!(
                "FrameMatrix width is {} tracks, scene declares {tracks}",
                frames.track_count()
            ),
        ));
    }
    if frames.frame_count() as u64 != u64::from(scene.nb_frame) {
        out.push(Violation::new(
            ViolationKind::FrameCount,
            "frames",
            format!(
                "FrameMatrix holds {} frames, scene declares nbFrame {}",
                frames.frame_count(),
                scene.nb_frame
            ),
        ));
    }
    if !(scene.scale.is_finite() && scene.scale != 0.0) {
        return;
    }

    let mut non_finite = (0usize, None);
    let mut unrepresentable = (0usize, None);
    for (i, &v) in frames.values().iter().enumerate() {
        let position = (i / frames.track_count().max(1), i % frames.track_count().max(1));
        if !v.is_finite() {
            non_finite.0 += 1;
            non_finite.1.get_or_insert((position, v));
        } else if store_sample(v, scene.scale, scene.sample_type).is_err() {
            unrepresentable.0 += 1;
            unrepresentable.1.get_or_insert((position, v));
        }
    }
    for (kind, (count, first)) in [
        (ViolationKind::NonFiniteSample, non_finite),
        (ViolationKind::UnrepresentableSample, unrepresentable),
    ] {
        if let Some(((frame, track), value)) = first {
            let what = match kind {
                ViolationKind::NonFiniteSample => "non-finite".to_string(),
                _ => format!("not representable as {} at scale {}", scene.sample_type, scene.scale),
            };
            out.push(Violation::new(
                kind,
                "frames",
                format!("{count} sample(s) {what}, first {value} at frame {frame} track {track}"),
            ));
        }
    }
}
