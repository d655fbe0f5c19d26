//! Spectrum CSV, metrics text, and sweep table writers.
//!
//! All numbers use Rust's shortest round-trip float formatting, so output is
//! byte-identical for identical input.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::pipeline::RunOutput;
use crate::spectrum::{CombMetrics, CombSpectrum, IoConvention};
use crate::sweep::SweepRow;

pub const SPECTRUM_HEADER: [&str; 9] = [
    "k",
    "order_num",
    "order_den",
    "freq_hz",
    "re_out",
    "im_out",
    "abs_out",
    "abs_out_db",
    "kind",
];

#[derive(Serialize)]
struct SpectrumRecord {
    k: i64,
    order_num: i64,
    order_den: i64,
    freq_hz: f64,
    re_out: f64,
    im_out: f64,
    abs_out: f64,
    abs_out_db: f64,
    kind: &'static str,
}

/// One row per grid line; dB relative to the largest output line.
pub fn write_spectrum_csv<W: Write>(comb: &CombSpectrum<f64>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let top = comb.largest_out();
    for line in &comb.lines {
        let abs = line.amp_out.norm();
        let db = if top > 0.0 { 20.0 * (abs / top).log10() } else { f64::NEG_INFINITY };
        w.serialize(SpectrumRecord {
            k: line.k,
            order_num: *line.class.order.numer(),
            order_den: *line.class.order.denom(),
            freq_hz: comb.frequency(line.k) / TAU,
            re_out: line.amp_out.re,
            im_out: line.amp_out.im,
            abs_out: abs,
            abs_out_db: db,
            kind: line.kind().as_str(),
        })?;
    }
    if comb.lines.is_empty() {
        w.write_record(SPECTRUM_HEADER)?;
    }
    w.flush()?;
    Ok(())
}

pub fn spectrum_csv_string(comb: &CombSpectrum<f64>) -> Result<String> {
    let mut buf = Vec::new();
    write_spectrum_csv(comb, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn convention_name(c: IoConvention) -> &'static str {
    match c {
        IoConvention::FluxNormalized => "flux-normalized",
        IoConvention::Literal => "literal",
    }
}

fn push(s: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(s, "{key} = {value}").unwrap();
}

fn push_metrics(s: &mut String, m: &CombMetrics<f64>, omega_b: f64, n: u32) {
    let orders: Vec<String> = m
        .present
        .iter()
        .map(|&k| num_rational::Ratio::new(k, n as i64).to_string())
        .collect();
    push(s, "status", "ok");
    push(s, "threshold_rel", m.threshold_rel);
    push(s, "largest_abs_out", m.largest);
    push(s, "present_count", m.present.len());
    push(s, "present_orders", orders.join(" "));
    push(s, "cutoff_pos", m.cutoff_pos);
    push(s, "cutoff_neg", m.cutoff_neg);
    let gap = m.present.windows(2).map(|w| w[1] - w[0]).min();
    match gap {
        Some(g) => push(s, "f_rep_order", num_rational::Ratio::new(g, n as i64)),
        None => push(s, "f_rep_order", "none"),
    }
    match m.f_rep {
        Some(f) => {
            push(s, "f_rep_hz", f / TAU);
            push(s, "f_rep_over_omega_b", f / omega_b);
        }
        None => {
            push(s, "f_rep_hz", "none");
            push(s, "f_rep_over_omega_b", "none");
        }
    }
    push(s, "range_lo_hz", m.f_range.0 / TAU);
    push(s, "range_hi_hz", m.f_range.1 / TAU);
    push(s, "range_lo_over_omega_b", m.f_range.0 / omega_b);
    push(s, "range_hi_over_omega_b", m.f_range.1 / omega_b);
    push(s, "uniform_spacing", m.uniform);
}

/// Flat `key = value` summary of one run.
pub fn metrics_text(run: &RunOutput<f64>) -> String {
    let comb = &run.spectrum;
    let mut s = String::new();
    push(&mut s, "n", comb.n);
    push(&mut s, "omega_b_hz", comb.omega_b / TAU);
    push(&mut s, "k_max", comb.k_max());
    push(&mut s, "io_convention", convention_name(comb.convention));
    match &run.metrics {
        Some(m) => push_metrics(&mut s, m, comb.omega_b, comb.n),
        None => push(&mut s, "status", "degenerate"),
    }
    push(&mut s, "mean_intensity", comb.mean_intensity);
    push(&mut s, "parseval_error", comb.parseval_error());
    push(&mut s, "leakage_relative", comb.leakage_relative());
    push(&mut s, "periodicity_deviation", run.periodicity);
    s
}

#[derive(Serialize)]
struct SweepRecord<'a> {
    value: f64,
    status: &'a str,
    cutoff_neg: String,
    cutoff_pos: String,
    f_rep_over_omega_b: String,
    range_lo_over_omega_b: String,
    range_hi_over_omega_b: String,
    largest_abs_out: String,
    error: String,
}

/// One row per axis value, in input order.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        let blank = String::new;
        let mut rec = SweepRecord {
            value: row.value,
            status: "ok",
            cutoff_neg: blank(),
            cutoff_pos: blank(),
            f_rep_over_omega_b: blank(),
            range_lo_over_omega_b: blank(),
            range_hi_over_omega_b: blank(),
            largest_abs_out: blank(),
            error: blank(),
        };
        match &row.outcome {
            Ok(Some(m)) => {
                rec.cutoff_neg = m.cutoff_neg.to_string();
                rec.cutoff_pos = m.cutoff_pos.to_string();
                rec.f_rep_over_omega_b = m.f_rep_over_omega_b.map_or("none".into(), |f| f.to_string());
                rec.range_lo_over_omega_b = m.range_over_omega_b.0.to_string();
                rec.range_hi_over_omega_b = m.range_over_omega_b.1.to_string();
                rec.largest_abs_out = m.largest.to_string();
            }
            Ok(None) => rec.status = "degenerate",
            Err(e) => {
                rec.status = "error";
                rec.error = e.clone();
            }
        }
        w.serialize(rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SystemParams;
    use crate::spectrum::{classify_line, comb_metrics, CombLine};
    use num_complex::Complex;

    fn toy() -> CombSpectrum<f64> {
        let p = SystemParams::<f64>::baseline();
        let n = 2u32;
        let lines = (-2..=2i64)
            .map(|k| {
                let a = Complex::new(10f64.powi(-(k.abs() as i32)), 0.0);
                CombLine { k, amp_alpha: a, amp_out: a, drive: Complex::new(0.0, 0.0), class: classify_line(k, n) }
            })
            .collect();
        CombSpectrum {
            n,
            omega_b: p.omega_b,
            omega_fund: p.omega_b / 2.0,
            lines,
            leakage_floor: 0.0,
            mean_intensity: 1.0202,
            convention: IoConvention::FluxNormalized,
        }
    }

    #[test]
    fn spectrum_csv_layout() {
        let text = spectrum_csv_string(&toy()).unwrap();
        let mut rows = text.lines();
        assert_eq!(rows.next().unwrap(), SPECTRUM_HEADER.join(","));
        let rows: Vec<Vec<&str>> = rows.map(|r| r.split(',').collect()).collect();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[2], ["0", "0", "1", "0.0", "1.0", "0.0", "1.0", "0.0", "control"]);
        assert_eq!(rows[3][..3], ["1", "1", "2"]);
        assert_eq!(rows[3][8], "fraction-order");
        assert_eq!(rows[4][8], "integer-order");
        assert_eq!(rows[4][3].parse::<f64>().unwrap(), 51.8e6);
        assert!((rows[4][7].parse::<f64>().unwrap() + 40.0).abs() < 1e-12);
    }

    #[test]
    fn metrics_text_keys() {
        let comb = toy();
        let m = comb_metrics(&comb, 1e-3).unwrap();
        let run = RunOutput {
            metrics: Some(m),
            settled: crate::dynamics::FieldState::vacuum(),
            periodicity: 0.0,
            spectrum: comb,
        };
        let text = metrics_text(&run);
        let get = |k: &str| {
            text.lines()
                .find_map(|l| l.strip_prefix(&format!("{k} = ")))
                .unwrap_or_else(|| panic!("missing {k}"))
                .to_string()
        };
        assert_eq!(get("status"), "ok");
        assert_eq!(get("present_orders"), "-1 -1/2 0 1/2 1");
        assert_eq!(get("cutoff_pos"), "1");
        assert_eq!(get("cutoff_neg"), "-1");
        assert_eq!(get("f_rep_over_omega_b"), "0.5");
        assert_eq!(get("f_rep_order"), "1/2");
        assert_eq!(get("uniform_spacing"), "true");
        for l in text.lines() {
            assert_eq!(l.matches(" = ").count(), 1, "{l}");
        }
    }
}
