use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use gms::signal::describe_bands;
use gms::{
    classify_rate, decimate, decode_document, encode_document, example_document, smooth_decimate,
    track_stats, validate_scene, ExampleSpec, FrameWriter, GmsDocument, Severity,
};

use crate::Failure;

/// Mismatches listed by `diff` before it stops reporting.
const DIFF_REPORT_LIMIT: usize = 10;

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

fn read_document(path: &Path) -> Result<GmsDocument, Failure> {
    let bytes = read_bytes(path)?;
    decode_document(&bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, err: gms::Error) -> Failure {
    let mut failure = Failure::from(err);
    failure.message = format!("{}: {}", path.display(), failure.message);
    failure
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn write_document(path: &Path, doc: &GmsDocument) -> Result<(), Failure> {
    let bytes = encode_document(doc).map_err(|e| in_file(path, e))?;
    write_bytes(path, &bytes)
}

pub fn info(path: &Path, stats: bool) -> Result<(), Failure> {
    let bytes = read_bytes(path)?;
    // Any decode failure is a failed inspection.
    let doc = decode_document(&bytes)
        .map_err(|e| Failure::semantic(format!("{}: {e}", path.display())))?;
    let scene = &doc.scene;

    let mut out = String::new();
    let _ = writeln!(out, "file:        {}", path.display());
    let _ = writeln!(out, "version:     {}", doc.version);
    let _ = writeln!(out, "scene:       {}", scene.name);
    let _ = writeln!(
        out,
        "frequency:   {} Hz (rate bands: {})",
        scene.freq,
        describe_bands(&classify_rate(scene.freq))
    );
    let _ = writeln!(out, "sample type: {}", scene.sample_type);
    let _ = writeln!(out, "scale:       {}", scene.scale);
    let _ = writeln!(
        out,
        "block size:  {} (frame {} bytes, stride {} bytes)",
        scene.block_size,
        scene.frame_byte_size(),
        scene.padded_frame_stride()
    );
    let _ = writeln!(out, "frames:      {}", scene.nb_frame);
    let _ = writeln!(out, "duration:    {} s", scene.duration());
    let _ = writeln!(out, "units:       {}", scene.units.len());
    let _ = writeln!(out, "channels:    {}", scene.channel_count());
    let _ = writeln!(out, "tracks:      {}", scene.track_count());
    for chunk in &doc.unknown_chunks {
        let _ = writeln!(out, "unknown chunk {} ({} bytes)", chunk.id, chunk.declared_size());
    }
    for unit in &scene.units {
        let _ = writeln!(
            out,
            "unit {} ({} channels, {} tracks)",
            unit.name,
            unit.channels.len(),
            unit.track_count()
        );
        for c in &unit.channels {
            let reserved = if c.var_type.is_reserved() { ", reserved" } else { "" };
            let _ = writeln!(
                out,
                "  channel {} {} {} ({}{reserved})",
                c.name,
                c.dimension,
                c.var_type,
                c.var_type.class()
            );
        }
    }
    if stats && scene.nb_frame > 0 {
        let _ = writeln!(out, "track statistics (min max mean rms):");
        for (track, label) in scene.track_labels().iter().enumerate() {
            let s = track_stats(&doc.frames.column(track))?;
            let _ = writeln!(out, "  {label} {} {} {} {}", s.min, s.max, s.mean, s.rms);
        }
    }
    print!("{out}");
    Ok(())
}

pub fn validate(path: &Path, strict: bool) -> Result<(), Failure> {
    let bytes = read_bytes(path)?;
    let doc = match decode_document(&bytes) {
        Ok(doc) => doc,
        Err(e) if e.is_semantic() => {
            println!("error: {e}");
            return Err(Failure::semantic(format!("{}: invalid", path.display())));
        }
        Err(e) => return Err(in_file(path, e)),
    };
    let violations = validate_scene(&doc.scene, Some(&doc.frames));
    for v in &violations {
        println!("{v}");
    }
    let failing = violations
        .iter()
        .filter(|v| strict || v.severity() == Severity::Fatal)
        .count();
    if failing > 0 {
        let mode = if strict { " (strict)" } else { "" };
        return Err(Failure::semantic(format!(
            "{}: {failing} violation(s){mode}",
            path.display()
        )));
    }
    Ok(())
}

pub fn create_example(spec: &ExampleSpec, out: &Path) -> Result<(), Failure> {
    let doc = example_document(spec)?;
    let file = File::create(out).map_err(|e| Failure::io(format!("cannot create {}: {e}", out.display())))?;
    let mut writer = FrameWriter::new(BufWriter::new(file), &doc.scene)?;
    writer.append_frames(&doc.frames)?;
    writer.finalize()?;
    writer
        .into_inner()
        .into_inner()
        .map_err(|e| Failure::io(format!("cannot write {}: {e}", out.display())))?;
    println!(
        "wrote {}: {} units, {} channels, {} tracks, {} frames at {} Hz",
        out.display(),
        doc.scene.units.len(),
        doc.scene.channel_count(),
        doc.scene.track_count(),
        doc.scene.nb_frame,
        doc.scene.freq
    );
    Ok(())
}

/// Sidecar manifest path of a CSV file.
fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest")
}

fn extension(path: &Path) -> String {
    path.extension()
        .map(|e| e.to_string_lossy().to_ascii_lowercase())
        .unwrap_or_default()
}

pub fn convert(input: &Path, output: &Path) -> Result<(), Failure> {
    match (extension(input).as_str(), extension(output).as_str()) {
        ("gms", "csv") => {
            let doc = read_document(input)?;
            let manifest = gms::interchange::write_manifest(&doc.scene)?;
            let file = File::create(output)
                .map_err(|e| Failure::io(format!("cannot create {}: {e}", output.display())))?;
            gms::interchange::write_csv(&doc.scene, &doc.frames, BufWriter::new(file))
                .map_err(|e| in_file(output, e))?;
            let manifest_out = manifest_path(output);
            fs::write(&manifest_out, manifest)
                .map_err(|e| Failure::io(format!("cannot write {}: {e}", manifest_out.display())))?;
            println!(
                "wrote {} ({} columns, {} rows) and {}",
                output.display(),
                doc.scene.track_count(),
                doc.scene.nb_frame,
                manifest_out.display()
            );
            Ok(())
        }
        ("csv", "gms") => {
            let manifest_in = manifest_path(input);
            let text = fs::read_to_string(&manifest_in)
                .map_err(|e| Failure::io(format!("cannot read {}: {e}", manifest_in.display())))?;
            let scene = gms::interchange::read_manifest(&text).map_err(|e| in_file(&manifest_in, e))?;
            let file = File::open(input)
                .map_err(|e| Failure::io(format!("cannot read {}: {e}", input.display())))?;
            let doc = gms::interchange::read_csv(scene, BufReader::new(file)).map_err(|e| in_file(input, e))?;
            write_document(output, &doc)?;
            println!("wrote {}", output.display());
            Ok(())
        }
        _ => Err(Failure::io(format!(
            "cannot infer conversion from {} to {}: expected .gms -> .csv or .csv -> .gms",
            input.display(),
            output.display()
        ))),
    }
}

pub fn resample(input: &Path, output: &Path, factor: usize, smooth: bool) -> Result<(), Failure> {
    if factor == 0 {
        return Err(gms::Error::ZeroFactor.into());
    }
    let doc = read_document(input)?;
    let (scene, frames) = if smooth {
        smooth_decimate(&doc.scene, &doc.frames, factor)?
    } else {
        decimate(&doc.scene, &doc.frames, factor)?
    };
    let before = classify_rate(doc.scene.freq);
    let after = classify_rate(scene.freq);
    let out = GmsDocument {
        version: doc.version,
        scene,
        frames,
        unknown_chunks: doc.unknown_chunks.clone(),
    };
    write_document(output, &out)?;
    println!("frequency: {} Hz -> {} Hz", doc.scene.freq, out.scene.freq);
    println!("frames:    {} -> {}", doc.scene.nb_frame, out.scene.nb_frame);
    println!(
        "rate band: {} -> {}",
        describe_bands(&before),
        describe_bands(&after)
    );
    for band in after.iter().filter(|b| !before.contains(b)) {
        println!("entered {band} band");
    }
    for band in before.iter().filter(|b| !after.contains(b)) {
        println!("left {band} band");
    }
    Ok(())
}

pub fn diff(a: &Path, b: &Path, tolerance: f64) -> Result<(), Failure> {
    let left = read_document(a)?;
    let right = read_document(b)?;
    let (sa, sb) = (&left.scene, &right.scene);

    let mut mismatches = Vec::new();
    if sa.name != sb.name {
        mismatches.push(format!("scene name: {:?} vs {:?}", sa.name, sb.name));
    }
    if sa.freq.to_bits() != sb.freq.to_bits() {
        mismatches.push(format!("frequency: {} vs {} Hz", sa.freq, sb.freq));
    }
    if sa.nb_frame != sb.nb_frame {
        mismatches.push(format!("frames: {} vs {}", sa.nb_frame, sb.nb_frame));
    }
    if sa.units.len() != sb.units.len() {
        mismatches.push(format!("units: {} vs {}", sa.units.len(), sb.units.len()));
    }
    for (ua, ub) in sa.units.iter().zip(&sb.units) {
        if ua.name != ub.name {
            mismatches.push(format!("unit name: {:?} vs {:?}", ua.name, ub.name));
        }
        if ua.channels.len() != ub.channels.len() {
            mismatches.push(format!(
                "unit {}: {} vs {} channels",
                ua.name,
                ua.channels.len(),
                ub.channels.len()
            ));
        }
        for (ca, cb) in ua.channels.iter().zip(&ub.channels) {
            if ca != cb {
                mismatches.push(format!(
                    "channel {}.{}: {} {} vs {}.{} {} {}",
                    ua.name, ca.name, ca.dimension, ca.var_type, ub.name, cb.name, cb.dimension, cb.var_type
                ));
            }
        }
    }
    // Storage representation may differ between otherwise equal files.
    for (what, x, y) in [
        ("sample type", sa.sample_type.to_string(), sb.sample_type.to_string()),
        ("scale", sa.scale.to_string(), sb.scale.to_string()),
        ("block size", sa.block_size.to_string(), sb.block_size.to_string()),
    ] {
        if x != y {
            println!("note: {what} differs: {x} vs {y}");
        }
    }

    let structural = mismatches.len();
    let mut sample_mismatches = 0usize;
    let mut worst = 0.0f64;
    if structural == 0 {
        let labels = sa.track_labels();
        for (f, (ra, rb)) in left.frames.rows().zip(right.frames.rows()).enumerate() {
            for (t, (x, y)) in ra.iter().zip(rb).enumerate() {
                let d = (x - y).abs();
                worst = worst.max(d);
                if d > tolerance {
                    sample_mismatches += 1;
                    if mismatches.len() < DIFF_REPORT_LIMIT {
                        mismatches.push(format!("frame {f} track {}: {x} vs {y} (|diff| {d})", labels[t]));
                    }
                }
            }
        }
    }

    for m in mismatches.iter().take(DIFF_REPORT_LIMIT) {
        println!("{m}");
    }
    if structural > 0 {
        return Err(Failure::semantic(format!("{structural} structural difference(s)")));
    }
    if sample_mismatches > 0 {
        return Err(Failure::semantic(format!(
            "{sample_mismatches} sample(s) differ by more than {tolerance} (max {worst})"
        )));
    }
    println!("equal within tolerance {tolerance} (max |diff| {worst})");
    Ok(())
}
