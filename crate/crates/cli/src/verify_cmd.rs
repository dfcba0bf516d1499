//! `verify`: run the oracle suite and print one line per identity.
//! Informational (printed-vs-derived) items never fail the run.

use std::process::ExitCode;

use rhqm::verify::{run as run_suite, Fault, ItemKind, VerifyConfig};

use crate::config::{CliError, CliResult, OutputFormat, RunConfig};
use crate::output::{emit_text, fmt_f64, Table};

pub fn run(config: &RunConfig, fault: Option<&str>) -> CliResult<ExitCode> {
    let fault = fault
        .map(|name| name.parse::<Fault>().map_err(CliError::Usage))
        .transpose()?;
    let suite_config = VerifyConfig {
        seed: config.seed,
        draws: config.draws,
        consts: config.consts,
        fault,
    };
    let report = run_suite(&suite_config);

    let mut lines = String::new();
    for item in &report.items {
        let status = match (item.kind, item.passed) {
            (ItemKind::Info, _) => "INFO",
            (ItemKind::Check, true) => "PASS",
            (ItemKind::Check, false) => "FAIL",
        };
        let threshold = item
            .threshold
            .map(|t| format!(" threshold={t:.1e}"))
            .unwrap_or_default();
        lines.push_str(&format!(
            "{status} {} value={:.3e}{threshold} — {}\n",
            item.name, item.value, item.detail
        ));
    }
    lines.push_str(&format!(
        "{}: {} items, seed {}, {} draws\n",
        if report.all_passed() { "ok" } else { "FAILED" },
        report.items.len(),
        report.seed,
        report.draws
    ));

    match (&config.out, config.format) {
        (Some(_), Some(OutputFormat::Json) | None) => {
            let text = format!(
                "{:#}\n",
                serde_json::to_value(&report)
                    .map_err(|e| CliError::Solver(format!("serialization failed: {e}")))?
            );
            emit_text(config, &text)?;
            print!("{lines}");
        }
        (Some(_), Some(OutputFormat::Csv)) => {
            let table = Table {
                columns: ["name", "kind", "passed", "value", "threshold", "detail"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                rows: report
                    .items
                    .iter()
                    .map(|i| {
                        vec![
                            i.name.clone(),
                            match i.kind {
                                ItemKind::Check => "check".to_string(),
                                ItemKind::Info => "info".to_string(),
                            },
                            i.passed.to_string(),
                            fmt_f64(i.value),
                            i.threshold.map(fmt_f64).unwrap_or_default(),
                            format!("\"{}\"", i.detail.replace('"', "'")),
                        ]
                    })
                    .collect(),
            };
            emit_text(config, &table.to_csv())?;
            print!("{lines}");
        }
        (None, _) => print!("{lines}"),
    }

    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
