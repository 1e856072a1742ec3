//! Table rendering and atomic file output. All numbers go through one
//! 12-significant-digit formatter so identical inputs yield byte-identical
//! files; writes land via a temporary file and rename, so a failed run
//! never leaves a partial table behind.

use std::io::{self, Write};
use std::path::Path;

use catoptric::{ChainOutcome, CycleSnapshot, SweepRow, ToleranceResult};

/// Render a value with 12 significant digits, the fixed dialect for every
/// table and printed metric.
pub fn fmt_sig(value: f64) -> String {
    // fold -0.0 into 0.0 so sign noise never reaches the output
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.11e}")
}

/// Write `contents` to `path` through a same-directory temporary file and
/// an atomic rename.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir)?;
    file.write_all(contents.as_bytes())?;
    file.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// CSV for a one-axis sweep. `axis_label` names the first column.
pub fn sweep_csv(axis_label: &str, rows: &[SweepRow], include_single: bool) -> String {
    let mut text = String::new();
    text.push_str(axis_label);
    text.push_str(",fidelity,effective_fidelity,cattiness,alpha_ef_sq,v_max");
    if include_single {
        text.push_str(",single_fidelity,single_effective_fidelity,single_cattiness");
    }
    text.push('\n');
    for row in rows {
        text.push_str(&fmt_sig(row.axis_value));
        for value in [
            row.fidelity,
            row.effective_fidelity,
            row.cattiness,
            row.alpha_ef_sq,
            row.v_max,
        ] {
            text.push(',');
            text.push_str(&fmt_sig(value));
        }
        if include_single {
            let single = row.single.expect("single-reflection columns requested");
            for value in [single.fidelity, single.effective_fidelity, single.cattiness] {
                text.push(',');
                text.push_str(&fmt_sig(value));
            }
        }
        text.push('\n');
    }
    text
}

/// One requested loss-tolerance row: the inputs that defined it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRequest {
    pub alpha_sq: f64,
    pub m_cycles: u32,
    pub threshold: f64,
}

/// CSV for a loss-tolerance table; `feasible` renders as 0/1 and the search
/// method as its label.
pub fn table_csv(rows: &[(TableRequest, ToleranceResult)]) -> String {
    let mut text = String::from(
        "alpha_sq,m_cycles,threshold,epsilon_star,metric_at_star,alpha_ef_sq_at_star,feasible,method\n",
    );
    for (request, result) in rows {
        text.push_str(&fmt_sig(request.alpha_sq));
        text.push(',');
        text.push_str(&request.m_cycles.to_string());
        text.push(',');
        text.push_str(&fmt_sig(request.threshold));
        for value in [
            result.epsilon_star,
            result.metric_at_star,
            result.alpha_ef_sq_at_star,
        ] {
            text.push(',');
            text.push_str(&fmt_sig(value));
        }
        text.push(',');
        text.push(if result.feasible { '1' } else { '0' });
        text.push(',');
        text.push_str(result.method.label());
        text.push('\n');
    }
    text
}

/// CSV of per-pass amplitude snapshots.
pub fn trace_csv(snapshots: &[CycleSnapshot]) -> String {
    let mut text = String::from(
        "cycle,up_zone0_re,up_zone0_im,up_zone1_re,up_zone1_im,down_zone0_re,down_zone0_im,down_zone1_re,down_zone1_im\n",
    );
    for snap in snapshots {
        text.push_str(&snap.cycle.to_string());
        for value in [
            snap.up.zone0.re,
            snap.up.zone0.im,
            snap.up.zone1.re,
            snap.up.zone1.im,
            snap.down.zone0.re,
            snap.down.zone0.im,
            snap.down.zone1.re,
            snap.down.zone1.im,
        ] {
            text.push(',');
            text.push_str(&fmt_sig(value));
        }
        text.push('\n');
    }
    text
}

/// CSV of a splitter-chain outcome: the surviving zones, then every
/// absorbed amplitude in stage order.
pub fn chain_csv(outcome: &ChainOutcome) -> String {
    let mut text = String::from("item,re,im\n");
    for (label, value) in [
        ("zone0", outcome.state.zone0),
        ("zone1", outcome.state.zone1),
    ] {
        text.push_str(&format!("{label},{},{}\n", fmt_sig(value.re), fmt_sig(value.im)));
    }
    for (index, value) in outcome.absorbed.iter().enumerate() {
        text.push_str(&format!(
            "absorbed_{},{},{}\n",
            index + 1,
            fmt_sig(value.re),
            fmt_sig(value.im)
        ));
    }
    text
}
