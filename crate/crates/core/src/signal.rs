//! Rate reduction, track extraction and simple statistics over decoded scenes.

use std::fmt;

use crate::error::{Error, Result};
use crate::scene::{FrameMatrix, Scene};

/// Keeps frames `0, factor, 2 * factor, ...` and divides the frequency by
/// `factor`. Samples are copied bit for bit.
pub fn decimate(scene: &Scene, frames: &FrameMatrix, factor: usize) -> Result<(Scene, FrameMatrix)> {
    if factor == 0 {
        return Err(Error::ZeroFactor);
    }
    let kept: Vec<&[f64]> = frames.rows().step_by(factor).collect();
    let out = FrameMatrix::from_rows(frames.track_count(), kept)?;
    Ok((resampled_scene(scene, &out, factor), out))
}

/// Like [`decimate`], but every kept sample is the mean of its window
/// `[k * factor, (k + 1) * factor)`, clipped to the end of the signal.
pub fn smooth_decimate(scene: &Scene, frames: &FrameMatrix, factor: usize) -> Result<(Scene, FrameMatrix)> {
    if factor == 0 {
        return Err(Error::ZeroFactor);
    }
    if factor == 1 {
        return Ok((scene.clone(), frames.clone()));
    }
    let tracks = frames.track_count();
    let windows = frames.frame_count().div_ceil(factor);
    let mut out = FrameMatrix::zeros(windows, tracks);
    for k in 0..windows {
        let start = k * factor;
        let end = (start + factor).min(frames.frame_count());
        let row = out.frame_mut(k);
        for f in start..end {
            for (acc, v) in row.iter_mut().zip(frames.frame(f)) {
                *acc += v;
            }
        }
        let n = (end - start) as f64;
        row.iter_mut().for_each(|v| *v /= n);
    }
    Ok((resampled_scene(scene, &out, factor), out))
}

fn resampled_scene(scene: &Scene, frames: &FrameMatrix, factor: usize) -> Scene {
    Scene {
        nb_frame: frames.frame_count() as u32,
        freq: scene.freq / factor as f64,
        ..scene.clone()
    }
}

/// Address of one track: unit name, channel name and axis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChannelPath {
    pub unit: String,
    pub channel: String,
    pub axis: usize,
}

impl ChannelPath {
    pub fn new(unit: impl Into<String>, channel: impl Into<String>, axis: usize) -> ChannelPath {
        ChannelPath {
            unit: unit.into(),
            channel: channel.into(),
            axis,
        }
    }
}

impl fmt::Display for ChannelPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}[{}]", self.unit, self.channel, self.axis)
    }
}

/// One track's samples over time.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackSlice {
    pub path: ChannelPath,
    pub samples: Vec<f64>,
    pub freq: f64,
}

pub fn slice_track(scene: &Scene, frames: &FrameMatrix, path: &ChannelPath) -> Result<TrackSlice> {
    let (column, channel) = scene
        .locate(&path.unit, &path.channel)
        .ok_or_else(|| Error::UnknownPath {
            unit: path.unit.clone(),
            channel: path.channel.clone(),
        })?;
    if path.axis >= channel.track_count() {
        return Err(Error::AxisOutOfRange {
            unit: path.unit.clone(),
            channel: path.channel.clone(),
            axis: path.axis,
            tracks: channel.track_count(),
        });
    }
    Ok(TrackSlice {
        path: path.clone(),
        samples: frames.column(column + path.axis),
        freq: scene.freq,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub rms: f64,
}

/// min, max, mean = Σx/n and rms = sqrt(Σx²/n).
pub fn track_stats(samples: &[f64]) -> Result<TrackStats> {
    if samples.is_empty() {
        return Err(Error::EmptySignal);
    }
    let n = samples.len() as f64;
    let (mut min, mut max, mut sum, mut squares) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0.0);
    for &x in samples {
        min = min.min(x);
        max = max.max(x);
        sum += x;
        squares += x * x;
    }
    Ok(TrackStats {
        min,
        max,
        mean: sum / n,
        rms: (squares / n).sqrt(),
    })
}

/// Frequency ranges typical of each sensory channel. They overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RateBand {
    /// Up to 100 Hz.
    Visual,
    /// 1 Hz to 10 kHz.
    Gesture,
    /// 10 kHz to 40 kHz.
    Audio,
}

impl RateBand {
    pub const ALL: [RateBand; 3] = [RateBand::Visual, RateBand::Gesture, RateBand::Audio];

    pub fn contains(self, freq: f64) -> bool {
        match self {
            RateBand::Visual => freq > 0.0 && freq <= 100.0,
            RateBand::Gesture => (1.0..=10_000.0).contains(&freq),
            RateBand::Audio => (10_000.0..=40_000.0).contains(&freq),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RateBand::Visual => "visual",
            RateBand::Gesture => "gesture",
            RateBand::Audio => "audio",
        }
    }
}

impl fmt::Display for RateBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every band containing `freq`, in [`RateBand::ALL`] order.
pub fn classify_rate(freq: f64) -> Vec<RateBand> {
    RateBand::ALL.into_iter().filter(|b| b.contains(freq)).collect()
}

/// Comma separated band names, or `none`.
pub fn describe_bands(bands: &[RateBand]) -> String {
    if bands.is_empty() {
        return "none".into();
    }
    bands.iter().map(|b| b.name()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{Channel, Dimension, SampleType, Unit, VariableType};

    fn scalar(values: &[f64], freq: f64) -> (Scene, FrameMatrix) {
        let mut scene = Scene::new(
            "s",
            freq,
            SampleType::Float64,
            vec![Unit::new(
                "u",
                vec![Channel::new("c", Dimension::Scalar0D, VariableType::Position)],
            )],
        );
        scene.nb_frame = values.len() as u32;
        let frames = FrameMatrix::new(values.len(), 1, values.to_vec()).unwrap();
        (scene, frames)
    }

    #[test]
    fn decimate_counts() {
        let values: Vec<f64> = (0..7).map(f64::from).collect();
        let (scene, frames) = scalar(&values, 1000.0);
        let (s, f) = decimate(&scene, &frames, 3).unwrap();
        assert_eq!(f.values(), [0.0, 3.0, 6.0]);
        assert_eq!(s.nb_frame, 3);
        assert!((s.freq - 1000.0 / 3.0).abs() < 1e-12);

        let (s, f) = decimate(&scene, &frames, 1).unwrap();
        assert_eq!((s, f), (scene.clone(), frames.clone()));
        assert!(matches!(decimate(&scene, &frames, 0), Err(Error::ZeroFactor)));
    }

    #[test]
    fn gesture_to_visual() {
        let (scene, frames) = scalar(&[0.0; 1000], 1000.0);
        let (s, f) = decimate(&scene, &frames, 10).unwrap();
        assert_eq!(s.freq, 100.0);
        assert_eq!(f.frame_count(), 100);
    }

    #[test]
    fn smooth_windows() {
        let (scene, frames) = scalar(&[0.0, 2.0, 4.0, 6.0], 100.0);
        let (s, f) = smooth_decimate(&scene, &frames, 2).unwrap();
        assert_eq!(f.values(), [1.0, 5.0]);
        assert_eq!(s.freq, 50.0);
        // Last window clipped to the signal end.
        let (scene, frames) = scalar(&[0.0, 2.0, 4.0, 6.0, 9.0], 100.0);
        let (_, f) = smooth_decimate(&scene, &frames, 2).unwrap();
        assert_eq!(f.values(), [1.0, 5.0, 9.0]);
        let (scene, frames) = scalar(&[2.5; 9], 100.0);
        let (_, f) = smooth_decimate(&scene, &frames, 4).unwrap();
        assert_eq!(f.values(), [2.5, 2.5, 2.5]);
        assert_eq!(smooth_decimate(&scene, &frames, 1).unwrap().1, frames);
        assert!(smooth_decimate(&scene, &frames, 0).is_err());
    }

    #[test]
    fn slices() {
        let (scene, frames) = scalar(&[1.0, 2.0], 10.0);
        let slice = slice_track(&scene, &frames, &ChannelPath::new("u", "c", 0)).unwrap();
        assert_eq!(slice.samples, [1.0, 2.0]);
        assert_eq!(slice.freq, 10.0);
        assert!(matches!(
            slice_track(&scene, &frames, &ChannelPath::new("u", "c", 1)),
            Err(Error::AxisOutOfRange { tracks: 1, .. })
        ));
        assert!(matches!(
            slice_track(&scene, &frames, &ChannelPath::new("u", "d", 0)),
            Err(Error::UnknownPath { .. })
        ));
    }

    #[test]
    fn stats() {
        let s = track_stats(&[3.0, 3.0, 3.0]).unwrap();
        assert_eq!((s.min, s.max, s.mean, s.rms), (3.0, 3.0, 3.0, 3.0));
        let s = track_stats(&[-1.0, 1.0]).unwrap();
        assert_eq!((s.min, s.max, s.mean, s.rms), (-1.0, 1.0, 0.0, 1.0));
        let s = track_stats(&[0.0, 0.0, 0.0, 4.0]).unwrap();
        assert_eq!((s.min, s.max, s.mean, s.rms), (0.0, 4.0, 1.0, 2.0));
        assert!(matches!(track_stats(&[]), Err(Error::EmptySignal)));
    }

    #[test]
    fn bands() {
        assert_eq!(classify_rate(50.0), [RateBand::Visual, RateBand::Gesture]);
        assert_eq!(classify_rate(3000.0), [RateBand::Gesture]);
        assert_eq!(classify_rate(20_000.0), [RateBand::Audio]);
        assert_eq!(classify_rate(100.0), [RateBand::Visual, RateBand::Gesture]);
        assert_eq!(classify_rate(10_000.0), [RateBand::Gesture, RateBand::Audio]);
        assert_eq!(classify_rate(0.5), [RateBand::Visual]);
        assert!(classify_rate(50_000.0).is_empty());
        assert_eq!(describe_bands(&classify_rate(50_000.0)), "none");
    }
}
