//! CSV tables and gnuplot scripts.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so every
//! value parses back to the identical `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sim::Trace;

/// Column-oriented table; all columns must have the same length.
#[derive(Debug, Default)]
pub struct Table {
    headers: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn column(mut self, header: impl Into<String>, values: &[f64]) -> Self {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.len(), values.len(), "column length mismatch");
        }
        self.headers.push(header.into());
        self.columns.push(values.to_vec());
        self
    }

    pub fn to_csv(&self) -> String {
        let rows = self.columns.first().map_or(0, Vec::len);
        let mut out = String::with_capacity(rows * self.columns.len() * 24);
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for i in 0..rows {
            for (j, col) in self.columns.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{:?}", col[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_csv())
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// `t,V,Vdot,R,I` plus `x` when the trace carries a memristor state.
pub fn trace_table(tr: &Trace) -> Table {
    let t = Table::new()
        .column("t", &tr.times)
        .column("V", &tr.voltage)
        .column("Vdot", &tr.v_dot)
        .column("R", &tr.resistance)
        .column("I", &tr.current);
    match &tr.state_x {
        Some(x) => t.column("x", x),
        None => t,
    }
}

/// Parses a CSV written by [`Table`] back into its header and columns.
pub fn read_csv(text: &str) -> std::result::Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or("empty file")?
        .split(',')
        .map(str::to_string)
        .collect();
    let mut cols = vec![Vec::new(); header.len()];
    for (n, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(format!("row {} has {} fields", n + 1, fields.len()));
        }
        for (col, f) in cols.iter_mut().zip(fields) {
            col.push(f.parse().map_err(|e| format!("row {}: {e}", n + 1))?);
        }
    }
    Ok((header, cols))
}

/// gnuplot script for a resistance-vs-time figure: the drive on top, the
/// three resistance traces below, each shifted up by `offset_ohm` from the
/// previous one.
pub fn resistance_plot_script(csv_name: &str, title: &str, offset_ohm: f64) -> String {
    format!(
        "# gnuplot script: gnuplot -p {stem}.gp\n\
         set datafile separator ','\n\
         set terminal pngcairo size 900,700\n\
         set output '{stem}.png'\n\
         set multiplot layout 2,1 title '{title}'\n\
         set xlabel 't/T'\n\
         set ylabel 'V_M (V)'\n\
         plot '{csv}' using 2:3 with lines title 'V_M'\n\
         set ylabel 'R (Ohm, shifted)'\n\
         plot '{csv}' using 2:9 with lines title 'memristor', \\\n\
         \x20    '' using 2:($7+{o1}) with lines title 'type 2 (+{o1} Ohm)', \\\n\
         \x20    '' using 2:($5+{o2}) with lines title 'type 1 (+{o2} Ohm)'\n\
         unset multiplot\n",
        stem = csv_name.trim_end_matches(".csv"),
        csv = csv_name,
        title = title,
        o1 = offset_ohm,
        o2 = 2.0 * offset_ohm,
    )
}

/// gnuplot script overlaying the I-V loops of one model per panel.
pub fn loops_plot_script(files: &[(f64, String)]) -> String {
    let mut s = String::from(
        "# gnuplot script: gnuplot -p fig2.gp\n\
         set datafile separator ','\n\
         set terminal pngcairo size 1200,400\n\
         set output 'fig2.png'\n\
         set multiplot layout 1,3\n\
         set xlabel 'V (V)'\n\
         set ylabel 'I (A)'\n",
    );
    for (title, col) in [("type 1", 4), ("memristor", 8), ("type 2", 6)] {
        let _ = writeln!(s, "set title '{title}'");
        let plots: Vec<String> = files
            .iter()
            .map(|(f, name)| format!("'{name}' using 2:{col} with lines title 'nu = {f} nu_0'"))
            .collect();
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    }
    s.push_str("unset multiplot\n");
    s
}
