//! Run a scenario document in-process and read the report back.

use skl::scenario::{preset, run_scenario, Scenario};

fn main() -> skl::Result<()> {
    let sc = Scenario::from_json(
        r#"{"name":"hermite","measure":{"ac":[{"kind":"gaussian","support":[null,null],"nodes":40}]},
            "task":{"kind":"recurrence","k":6}}"#,
    )?;
    let out = run_scenario(&sc, None)?;
    println!("{}", serde_json::to_string_pretty(&out.report["result"]["recurrence"]["beta"])?);

    let sc = preset("uniform12_solve")?;
    let out = run_scenario(&sc, None)?;
    println!("uniform12_solve converged: {}", out.report["result"]["report"]["converged"]);
    println!("tables: {:?}", out.tables.iter().map(|t| &t.name).collect::<Vec<_>>());
    Ok(())
}
