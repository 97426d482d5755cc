use std::fmt;
use std::str::FromStr;

use adderkit::analysis::MetricsReport;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlotError {
    #[error("unknown metric `{0}` (expected delay, area, power_proxy or pdp)")]
    UnknownMetric(String),
    #[error("report has no rows")]
    Empty,
    #[error("cannot normalize: maximum {0} is not positive")]
    NonPositiveMax(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Delay,
    Area,
    PowerProxy,
    Pdp,
}

impl FromStr for Metric {
    type Err = PlotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delay" => Ok(Metric::Delay),
            "area" => Ok(Metric::Area),
            "power_proxy" | "power" => Ok(Metric::PowerProxy),
            "pdp" => Ok(Metric::Pdp),
            other => Err(PlotError::UnknownMetric(other.to_string())),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Delay => "delay",
            Metric::Area => "area",
            Metric::PowerProxy => "power_proxy",
            Metric::Pdp => "pdp",
        })
    }
}

/// Label/value series in report order, as aligned text and as CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub points: Vec<(String, f64)>,
    pub text: String,
    pub csv: String,
}

pub fn emit_plot_data(
    report: &MetricsReport,
    metric: Metric,
    normalize: bool,
) -> Result<PlotData, PlotError> {
    if report.rows.is_empty() {
        return Err(PlotError::Empty);
    }
    let mut points: Vec<(String, f64)> = report
        .rows
        .iter()
        .map(|r| {
            let v = match metric {
                Metric::Delay => r.delay,
                Metric::Area => r.area,
                Metric::PowerProxy => r.power_proxy as f64,
                Metric::Pdp => r.pdp,
            };
            (r.name.clone(), v)
        })
        .collect();
    if normalize {
        let max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        if max.is_nan() || max <= 0.0 {
            return Err(PlotError::NonPositiveMax(max.to_string()));
        }
        for p in &mut points {
            p.1 = if p.1 == max { 1.0 } else { p.1 / max };
        }
    }

    let label_width = points.iter().map(|p| p.0.len()).max().unwrap_or(0).max(5);
    let column = if normalize {
        format!("{metric} (normalized)")
    } else {
        metric.to_string()
    };
    let mut text = format!("{:<label_width$}  {column}\n", "label");
    for (label, value) in &points {
        text.push_str(&format!("{label:<label_width$}  {value}\n"));
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", metric.to_string().as_str()])
        .expect("in-memory write");
    for (label, value) in &points {
        w.write_record([label.as_str(), value.to_string().as_str()])
            .expect("in-memory write");
    }
    let csv = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    Ok(PlotData { points, text, csv })
}
