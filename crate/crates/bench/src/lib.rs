//! Shared helpers for the benchmark targets.

use std::path::{Path, PathBuf};

use req2uml_core::Resources;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn shipped_resources() -> Resources {
    Resources::load(&workspace_root().join("resources")).expect("shipped resources load")
}

/// The shipped corpus texts, sorted by file name.
pub fn corpus_texts() -> Vec<String> {
    let dir = workspace_root().join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| std::fs::read_to_string(p).expect("corpus file"))
        .collect()
}
