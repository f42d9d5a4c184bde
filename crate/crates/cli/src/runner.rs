//! Drives the pipeline over input files and directories.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use req2uml_core::{
    emit_diagram, emit_inline_xml, emit_model_xml, process, types, ControlMode, DiagramDialect,
    EmitConfig, Resources,
};

use crate::eval::{parse_gold, EvalReport, Scorer, SpanSets};

/// Expands files and directories into the ordered list of input files.
/// Directories contribute their `*.txt` entries sorted by name.
pub fn collect_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut inputs = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                .with_context(|| format!("reading directory {}", path.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"))
                .collect();
            entries.sort();
            inputs.extend(entries);
        } else if path.is_file() {
            inputs.push(path.clone());
        } else {
            bail!("input {} does not exist", path.display());
        }
    }
    if inputs.is_empty() {
        bail!("no input files");
    }
    Ok(inputs)
}

/// Loads resources, optionally overriding every phase's control mode.
pub fn load_resources(root: &Path, control: Option<ControlMode>) -> Result<Resources> {
    let mut resources = Resources::load(root)?;
    if let Some(control) = control {
        for phase in &mut resources.phases {
            phase.control = control;
        }
    }
    Ok(resources)
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string())
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading input {}", path.display()))
}

/// Runs the pipeline over every input and writes the three output files per
/// input. Returns the written paths.
pub fn run(
    resources: &Resources,
    inputs: &[PathBuf],
    out_dir: &Path,
    dialect: DiagramDialect,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let cfg = EmitConfig {
        diagram_dialect: dialect,
        ..EmitConfig::default()
    };
    let mut written = Vec::new();
    for input in inputs {
        let text = read_input(input)?;
        let (doc, model) = process(&text, resources);
        for diagnostic in &model.diagnostics {
            eprintln!("{}: {diagnostic}", input.display());
        }
        let stem = file_stem(input);
        let file_name = input
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| stem.clone());

        let inline = emit_inline_xml(&doc, &cfg, Some(&file_name))
            .with_context(|| format!("serializing {}", input.display()))?;
        let outputs = [
            (format!("{stem}.annotated.xml"), inline),
            (format!("{stem}.model.xml"), emit_model_xml(&model)),
            (
                format!("{stem}.{}", dialect.extension()),
                emit_diagram(&model, &cfg),
            ),
        ];
        for (name, mut content) in outputs {
            if !content.ends_with('\n') {
                content.push('\n');
            }
            let path = out_dir.join(name);
            std::fs::write(&path, content)
                .with_context(|| format!("writing {}", path.display()))?;
            written.push(path);
        }
        println!(
            "{}: {} classes, {} associations, {} attributes",
            input.display(),
            model.classes.len(),
            model.associations.len(),
            model.attributes.len()
        );
    }
    Ok(written)
}

/// Runs the pipeline and scores it against gold files named
/// `<input stem>.gold.tsv` in `gold_dir`. Inputs without a gold file are
/// skipped, not fatal.
pub fn evaluate(resources: &Resources, inputs: &[PathBuf], gold_dir: &Path) -> Result<EvalReport> {
    let mut scorer = Scorer::new();
    for input in inputs {
        let gold_path = gold_dir.join(format!("{}.gold.tsv", file_stem(input)));
        if !gold_path.is_file() {
            scorer.skip(input.display().to_string());
            continue;
        }
        let gold = parse_gold(
            &std::fs::read_to_string(&gold_path)
                .with_context(|| format!("reading gold file {}", gold_path.display()))?,
        )
        .map_err(|e| anyhow::anyhow!("{}: {e}", gold_path.display()))?;

        let text = read_input(input)?;
        let (doc, _) = process(&text, resources);
        let mut system = SpanSets::new();
        for ty in types::UML_TYPES {
            let set: BTreeSet<(usize, usize)> = doc
                .annotations_of(ty)
                .iter()
                .map(|a| (a.span.start, a.span.end))
                .collect();
            if !set.is_empty() {
                system.insert(ty.to_string(), set);
            }
        }
        scorer.add_document(&gold, &system);
    }
    Ok(scorer.finish())
}
