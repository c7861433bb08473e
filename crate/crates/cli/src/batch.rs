use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use amalgam_core::Spec;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::parse_spec;
use crate::report::{self, QiClass};

/// One row per input file; errors become rows rather than aborting the batch.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Row {
    pub file: String,
    pub family: String,
    pub status: String,
    pub error: Option<String>,
    pub hyperbolic: Option<bool>,
    pub three_manifold: Option<bool>,
    pub case: Option<String>,
    pub qi_class: Option<String>,
    pub qi_key: Option<String>,
    pub model_space_type: Option<String>,
    pub representative: Option<String>,
    pub vector: Option<String>,
    pub tower_pass: Option<bool>,
    pub x5_iso_z2: Option<bool>,
}

/// `*.json` files directly in `dir`, sorted by file name.
pub fn spec_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn row_for(path: &Path, towers: bool) -> Row {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let spec = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .and_then(|text| parse_spec(&text));
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            return Row {
                file,
                status: "error".into(),
                error: Some(format!("{e:#}").replace('\n', " ")),
                ..Row::default()
            }
        }
    };
    let r = report::classify(&spec, 0);
    let c = &r.classification;
    let t = c.model_space_type;
    let mut row = Row {
        file,
        family: match spec {
            Spec::Amalgam(_) => "C".into(),
            Spec::Theta(_) => "W".into(),
        },
        status: "ok".into(),
        hyperbolic: Some(c.hyperbolic),
        three_manifold: c.three_manifold.map(|v| v.is_3manifold),
        case: c.three_manifold.and_then(|v| {
            v.witness
                .map(|w| format!("{w:?}"))
                .or(v.obstruction.map(|o| format!("{o:?}")))
        }),
        qi_class: Some(match &c.qi_class {
            QiClass::C(q) => format!("{q:?}"),
            QiClass::W(q) => format!("{q:?}"),
        }),
        qi_key: Some(format!("{:?}", c.qi_key)),
        model_space_type: Some(format!("({}, {}, {})", t.m, t.n, t.s)),
        representative: c.standard_representative.map(|rep| {
            let t = rep.model;
            format!("({}, {}, {})", t.m, t.n, t.s)
        }),
        vector: Some(match &r.commensurability {
            report::Commensurability::Amalgam { associated, .. } => associated.w.to_string(),
            report::Commensurability::Theta { euler_vector } => euler_vector.to_string(),
        }),
        ..Row::default()
    };
    if let (true, Spec::Amalgam(s)) = (towers, &spec) {
        match report::tower(s, true, 0) {
            Ok(t) => {
                let v = t.verification.expect("verification requested");
                row.tower_pass = Some(v.pass);
                row.x5_iso_z2 = Some(v.x5_iso_z2);
            }
            Err(e) => {
                row.status = "error".into();
                row.error = Some(e.to_string());
            }
        }
    }
    row
}

/// Rows in file-name order; files are processed in parallel.
pub fn run(dir: &Path, towers: bool) -> Result<Vec<Row>> {
    let files = spec_files(dir)?;
    Ok(files.par_iter().map(|p| row_for(p, towers)).collect())
}

pub fn to_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
