//! Scenario documents, the shipped presets and the report writer behind
//! the `skl` binary.

mod presets;
mod run;
mod schema;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub use presets::{list_presets, preset, PRESETS};
pub use run::{build_frame, eval_vector, run_scenario, ScenarioOutput, Table};
pub use schema::*;

use crate::error::Result;

/// Default output root when neither `--out` nor `SKL_OUT` is given.
pub const DEFAULT_OUT: &str = "skl_out";

/// Runs `sc` and writes `report.json`, `meta.json` and the CSV tables under
/// `root/<name>/`. Nothing is left behind when the run fails.
pub fn run_to_dir(sc: &Scenario, root: &Path, seed: Option<u64>) -> Result<PathBuf> {
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let clock = Instant::now();
    let output = run_scenario(sc, seed)?;
    let elapsed_ms = clock.elapsed().as_millis() as u64;

    let target = root.join(&sc.name);
    let staging = root.join(format!(".{}.partial-{}", sc.name, std::process::id()));
    let written = write_outputs(&staging, sc, &output, started, elapsed_ms).and_then(|_| {
        if target.exists() {
            fs::remove_dir_all(&target)?;
        }
        fs::rename(&staging, &target)?;
        Ok(())
    });
    if let Err(e) = written {
        let _ = fs::remove_dir_all(&staging);
        return Err(e);
    }
    Ok(target)
}

fn write_outputs(dir: &Path, sc: &Scenario, output: &ScenarioOutput, started: u64, elapsed_ms: u64) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut report = serde_json::to_string_pretty(&output.report)?;
    report.push('\n');
    fs::write(dir.join("report.json"), report)?;
    let meta = serde_json::json!({
        "scenario": sc.name,
        "version": env!("CARGO_PKG_VERSION"),
        "started_unix": started,
        "elapsed_ms": elapsed_ms,
    });
    fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)? + "\n")?;
    if sc.output.csv {
        for t in &output.tables {
            let mut w = csv::Writer::from_path(dir.join(format!("{}.csv", t.name)))?;
            w.write_record(&t.header)?;
            for row in &t.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
