//! Sweep evaluation and CSV output.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use dyncp::correlations::correlation;
use dyncp::potentials::{delta_e_pair, delta_e_sym_total, EnergyBreakdown};
use dyncp::quadrature::QuadratureSpec;
use rayon::prelude::*;

use crate::config::{Quantity, ScenarioConfig};

pub const SCHEMA: &str = "# schema=dyncp-sweep/1";

const AXES: [char; 3] = ['x', 'y', 'z'];

/// Value columns contributed by one quantity.
fn columns(q: Quantity) -> Vec<String> {
    match q {
        Quantity::Corr => {
            let mut c: Vec<String> =
                AXES.iter().flat_map(|l| AXES.iter().map(move |m| format!("corr_{l}{m}"))).collect();
            c.push("corr_imag".into());
            c
        }
        Quantity::Pair => vec!["pair".into()],
        Quantity::PairParts => vec!["pair_nr".into(), "pair_r".into()],
        Quantity::Sym => vec!["sym".into()],
        Quantity::SymParts => vec!["sym_i".into(), "sym_ii".into(), "sym_r".into()],
        Quantity::Regions => vec!["th_alpha".into(), "th_beta".into(), "th_gamma".into(), "near_cone".into()],
    }
}

/// Quantities in declaration order without repeats.
fn distinct(qs: &[Quantity]) -> Vec<Quantity> {
    let mut seen = BTreeSet::new();
    qs.iter().copied().filter(|q| seen.insert(*q)).collect()
}

pub fn header(qs: &[Quantity]) -> Vec<String> {
    let mut h: Vec<String> = ["point", "scale", "t", "region"].map(String::from).to_vec();
    for q in distinct(qs) {
        h.extend(columns(q));
    }
    h.extend(["imag_residual", "converged", "error"].map(String::from));
    h
}

#[derive(Debug, Clone)]
pub struct Row {
    pub scale: f64,
    pub t: f64,
    pub region: String,
    pub values: Vec<f64>,
    pub imag_residual: f64,
    pub converged: bool,
    pub error: Option<String>,
}

struct Acc {
    values: Vec<f64>,
    imag: f64,
    converged: bool,
}

impl Acc {
    fn energy(&mut self, e: &EnergyBreakdown) {
        self.imag = self.imag.max(e.imag_residual);
        self.converged &= e.converged;
    }
}

fn evaluate(cfg: &ScenarioConfig, spec: &QuadratureSpec, scale: f64, t: f64) -> Row {
    let mut row = Row {
        scale,
        t,
        region: String::new(),
        values: Vec::new(),
        imag_residual: 0.0,
        converged: false,
        error: None,
    };
    let result = (|| -> dyncp::Result<Acc> {
        let scene = cfg.scene(scale)?;
        let region = scene.region(t);
        row.region = region.label.as_str().to_string();
        let mut acc = Acc { values: Vec::new(), imag: 0.0, converged: true };
        for q in distinct(&cfg.quantities) {
            match q {
                Quantity::Corr => {
                    let c = correlation(&scene, t, spec)?;
                    acc.values.extend(c.components.iter().flatten());
                    acc.values.push(c.nonresonant.imag_residual);
                    acc.converged &= c.nonresonant.converged;
                }
                Quantity::Pair | Quantity::PairParts => {
                    let e = delta_e_pair(&scene, t, spec)?;
                    acc.energy(&e);
                    if q == Quantity::Pair {
                        acc.values.push(e.total);
                    } else {
                        acc.values.extend([e.de_nr, e.de_r]);
                    }
                }
                Quantity::Sym | Quantity::SymParts => {
                    let e = delta_e_sym_total(&scene, t, spec)?;
                    acc.energy(&e);
                    if q == Quantity::Sym {
                        acc.values.push(e.total);
                    } else {
                        acc.values.extend([e.de_i, e.de_ii, e.de_r_sym]);
                    }
                }
                Quantity::Regions => {
                    let flag = |b: bool| if b { 1.0 } else { 0.0 };
                    acc.values.extend([
                        flag(region.th_alpha),
                        flag(region.th_beta),
                        flag(region.th_gamma),
                        flag(region.near_cone),
                    ]);
                }
            }
        }
        Ok(acc)
    })();
    match result {
        Ok(acc) => {
            row.values = acc.values;
            row.imag_residual = acc.imag;
            row.converged = acc.converged;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Every sweep point in sweep order: geometry outer, time inner.
pub fn sweep(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Vec<Row> {
    let times = cfg.sweep.time.points();
    let points: Vec<(f64, f64)> =
        cfg.scales().into_iter().flat_map(|s| times.iter().map(move |&t| (s, t))).collect();
    points.par_iter().map(|&(s, t)| evaluate(cfg, spec, s, t)).collect()
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_csv(path: &Path, cfg: &ScenarioConfig, rows: &[Row]) -> std::io::Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(file, "{SCHEMA}")?;
    let mut w = csv::Writer::from_writer(file);
    let head = header(&cfg.quantities);
    let width = head.len() - 7;
    w.write_record(&head)?;
    for (i, r) in rows.iter().enumerate() {
        let mut rec = vec![i.to_string(), fmt_f64(r.scale), fmt_f64(r.t), r.region.clone()];
        if r.error.is_some() {
            rec.extend(std::iter::repeat_n(String::new(), width + 1));
        } else {
            rec.extend(r.values.iter().map(|v| fmt_f64(*v)));
            rec.push(fmt_f64(r.imag_residual));
        }
        rec.push(r.converged.to_string());
        rec.push(r.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()
}

/// Human-readable summary for standard output.
pub fn summary(rows: &[Row]) -> String {
    let mut regions: Vec<&str> = Vec::new();
    for r in rows {
        if !r.region.is_empty() && regions.last() != Some(&r.region.as_str()) {
            regions.push(&r.region);
        }
    }
    let failed: Vec<usize> = rows.iter().enumerate().filter(|(_, r)| r.error.is_some()).map(|(i, _)| i).collect();
    let unconverged: Vec<usize> =
        rows.iter().enumerate().filter(|(_, r)| r.error.is_none() && !r.converged).map(|(i, _)| i).collect();
    let mut out = format!("{} points\nregions: {}\n", rows.len(), regions.join(" -> "));
    out += &format!("not converged: {}\n", list(&unconverged));
    out += &format!("errors: {}\n", list(&failed));
    out
}

fn list(idx: &[usize]) -> String {
    if idx.is_empty() {
        "none".into()
    } else {
        idx.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn repeated_quantities_add_columns_once() {
        let h = header(&[Quantity::Sym, Quantity::Pair, Quantity::Sym]);
        assert_eq!(h.iter().filter(|c| *c == "sym").count(), 1);
        assert_eq!(h[4..6], ["sym".to_string(), "pair".to_string()]);
    }
}
