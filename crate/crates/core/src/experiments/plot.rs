use std::io::Write;

use super::{ExperimentError, SweepRow};

/// One curve of a plot description.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

fn series_of(rows: &[SweepRow]) -> Vec<PlotSeries> {
    let mut out: Vec<PlotSeries> = Vec::new();
    for r in rows {
        let p = (r.axis_value, r.rate());
        match out.iter_mut().find(|s| s.name == r.name()) {
            Some(s) => s.points.push(p),
            None => out.push(PlotSeries { name: r.name().to_string(), points: vec![p] }),
        }
    }
    out
}

/// Writes one `# series <name>` block of `x y` lines per scheme or bound, in
/// order of first appearance, separated by blank lines. Returns the byte count.
pub fn emit_plot_script<W: Write>(rows: &[SweepRow], mut out: W) -> Result<usize, ExperimentError> {
    if rows.is_empty() {
        return Err(ExperimentError::EmptyRows);
    }
    let mut text = String::new();
    for (i, s) in series_of(rows).iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        text.push_str(&format!("# series {}\n", s.name));
        for (x, y) in &s.points {
            text.push_str(&format!("{x:.9} {y:.9}\n"));
        }
    }
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(text.len())
}

/// Reads a plot description back into its series.
pub fn parse_plot_script(text: &str) -> Result<Vec<PlotSeries>, ExperimentError> {
    let mut out: Vec<PlotSeries> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let err = |message: &str| ExperimentError::Plot { line: i + 1, message: message.into() };
        if line.trim().is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("# series ") {
            out.push(PlotSeries { name: name.to_string(), points: Vec::new() });
            continue;
        }
        let s = out.last_mut().ok_or_else(|| err("point before any series header"))?;
        let mut it = line.split_whitespace().map(str::parse::<f64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(x)), Some(Ok(y)), None) => s.points.push((x, y)),
            _ => return Err(err("expected `x y`")),
        }
    }
    Ok(out)
}
