//! Built-in reference scene: six performers sharing one file.
//!
//! | unit          | channels                     | type     | dimension |
//! |---------------|------------------------------|----------|-----------|
//! | `Pianist`     | `PK1`..`PK8`                 | position | 1Dz       |
//! | `StickSource` | `SS`                         | position | 3Dxyz     |
//! | `Light`       | `LS`                         | force    | 2Dxy      |
//! | `Dancer`      | `DP1`..`DP16`                | position | 3Dxyz     |
//! | `Juggler`     | `BL1`, `BL2`                 | position, angle | 3Dxyz |
//! | `Fluid`       | `FL1`..`FLn`                 | velocity | 0D        |
//!
//! That is 67 tracks plus one per fluid mass. The juggler's ball is carried
//! as two 3D channels (position and rotation) since channels stop at three
//! dimensions; rotation uses the reserved `angle` type, and fluid masses the
//! reserved `velocity` type.
//!
//! Track `k` (0-based, storage order) carries `sin(2π (0.5 + 0.1 k) t)` with
//! `t = frame / freq`, multiplied by 10 on intensive (force-like) channels.

use std::f64::consts::TAU;

use crate::codec::GmsDocument;
use crate::error::{Error, Result};
use crate::scene::{Channel, Dimension, FrameMatrix, SampleType, Scene, Unit, VariableClass, VariableType};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExampleSpec {
    /// Number of `Fluid` channels, at least 1.
    pub fluid_masses: usize,
    pub frames: u32,
    pub freq: f64,
    pub sample_type: SampleType,
}

impl Default for ExampleSpec {
    fn default() -> ExampleSpec {
        ExampleSpec {
            fluid_masses: 10,
            frames: 1000,
            freq: 1000.0,
            sample_type: SampleType::Float64,
        }
    }
}

fn numbered(prefix: &str, count: usize, dimension: Dimension, var_type: VariableType) -> Vec<Channel> {
    (1..=count)
        .map(|i| Channel::new(format!("{prefix}{i}"), dimension, var_type))
        .collect()
}

/// The unit/channel structure alone.
pub fn example_units(fluid_masses: usize) -> Vec<Unit> {
    use Dimension::*;
    use VariableType::*;
    vec![
        Unit::new("Pianist", numbered("PK", 8, Axis1Dz, Position)),
        Unit::new("StickSource", vec![Channel::new("SS", Space3Dxyz, Position)]),
        Unit::new("Light", vec![Channel::new("LS", Plane2Dxy, Force)]),
        Unit::new("Dancer", numbered("DP", 16, Space3Dxyz, Position)),
        Unit::new(
            "Juggler",
            vec![
                Channel::new("BL1", Space3Dxyz, Position),
                Channel::new("BL2", Space3Dxyz, Angle),
            ],
        ),
        Unit::new("Fluid", numbered("FL", fluid_masses, Scalar0D, Velocity)),
    ]
}

/// Builds the reference scene with its deterministic synthetic signal.
pub fn example_document(spec: &ExampleSpec) -> Result<GmsDocument> {
    if spec.fluid_masses == 0 {
        return Err(Error::InvalidArgument("fluid mass count must be at least 1".into()));
    }
    if !(spec.freq.is_finite() && spec.freq > 0.0) {
        return Err(Error::InvalidArgument(format!("freq must be positive, got {}", spec.freq)));
    }
    let scene = Scene::new("gesture-scene", spec.freq, spec.sample_type, example_units(spec.fluid_masses));

    let gains: Vec<f64> = scene
        .units
        .iter()
        .flat_map(|u| &u.channels)
        .flat_map(|c| {
            let gain = match c.var_type.class() {
                VariableClass::Intensive => 10.0,
                VariableClass::Extensive => 1.0,
            };
            std::iter::repeat(gain).take(c.track_count())
        })
        .collect();

    let tracks = gains.len();
    let mut frames = FrameMatrix::zeros(spec.frames as usize, tracks);
    for f in 0..spec.frames as usize {
        let t = f as f64 / spec.freq;
        for (k, (v, gain)) in frames.frame_mut(f).iter_mut().zip(&gains).enumerate() {
            let hz = 0.5 + 0.1 * k as f64;
            *v = gain * (TAU * hz * t).sin();
        }
    }
    Ok(GmsDocument::new(scene, frames))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_counts() {
        let doc = example_document(&ExampleSpec::default()).unwrap();
        let scene = &doc.scene;
        assert_eq!(scene.units.len(), 6);
        assert_eq!(scene.channel_count(), 38);
        assert_eq!(scene.track_count(), 77);
        assert_eq!(doc.frames.track_count(), 77);
        assert_eq!(scene.nb_frame, 1000);

        let one = example_document(&ExampleSpec {
            fluid_masses: 1,
            frames: 4,
            ..ExampleSpec::default()
        })
        .unwrap();
        assert_eq!(one.scene.track_count(), 68);
    }

    #[test]
    fn signal_formula() {
        let doc = example_document(&ExampleSpec {
            frames: 3,
            freq: 100.0,
            ..ExampleSpec::default()
        })
        .unwrap();
        // Track 0 at t = 0.02 s: sin(2π·0.5·0.02)
        assert_eq!(doc.frames.get(2, 0), (TAU * 0.5 * 0.02).sin());
        // The Light channel occupies tracks 11 and 12 and is intensive.
        assert_eq!(doc.frames.get(1, 11), 10.0 * (TAU * (0.5 + 0.1 * 11.0) * 0.01).sin());
        assert!(doc.frames.rows().next().unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_zero_masses() {
        let spec = ExampleSpec {
            fluid_masses: 0,
            ..ExampleSpec::default()
        };
        assert!(example_document(&spec).is_err());
    }
}
