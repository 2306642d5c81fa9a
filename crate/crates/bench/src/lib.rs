//! Shared fixtures for the criterion benchmarks.

use gms::{example_document, ExampleSpec, GmsDocument, SampleType};

/// The reference scene (77 tracks) with `frames` frames.
pub fn reference_document(frames: u32, sample_type: SampleType, block_size: u32) -> GmsDocument {
    let mut doc = example_document(&ExampleSpec {
        frames,
        sample_type,
        ..ExampleSpec::default()
    })
    .expect("reference scene is valid");
    doc.scene.block_size = block_size;
    doc
}
