//! Reports and tables, with their JSON and CSV forms.

use serde::{Deserialize, Serialize};

use crate::C64;

/// One checked inequality `lhs ≤ rhs` (or a derived margin) on one sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub case: String,
    pub z: Vec<C64>,
    pub w: Vec<C64>,
    pub lhs: f64,
    pub rhs: f64,
    /// Negative when the inequality fails.
    pub margin: f64,
    /// The row counts as a violation when `margin < -tol`.
    pub tol: f64,
}

impl Row {
    pub fn new(case: &str, z: &[C64], w: &[C64], lhs: f64, rhs: f64, tol: f64) -> Self {
        Row { case: case.into(), z: z.to_vec(), w: w.to_vec(), lhs, rhs, margin: rhs - lhs, tol }
    }

    /// A row whose margin is `tol - |lhs - rhs|`: the two sides must agree
    /// within `tol`.
    pub fn agree(case: &str, z: &[C64], w: &[C64], lhs: f64, rhs: f64, tol: f64) -> Self {
        Row { case: case.into(), z: z.to_vec(), w: w.to_vec(), lhs, rhs, margin: tol - (lhs - rhs).abs(), tol: 0.0 }
    }

    pub fn violated(&self) -> bool {
        !(self.margin >= -self.tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fitted {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub violations: usize,
    /// Smallest margin over all rows; `None` without rows.
    pub worst_margin: Option<f64>,
    pub fitted: Vec<Fitted>,
    pub notes: Vec<String>,
    pub rows: Vec<Row>,
    /// Wall-clock seconds; left out of the JSON so that reports are
    /// byte-identical across runs.
    #[serde(skip)]
    pub runtime: f64,
}

impl BoundReport {
    pub fn new(suite: &str, seed: u64, samples: usize, rows: Vec<Row>) -> Self {
        let mut r = BoundReport {
            schema: 1,
            suite: suite.into(),
            seed,
            samples,
            violations: 0,
            worst_margin: None,
            fitted: Vec::new(),
            notes: Vec::new(),
            rows: Vec::new(),
            runtime: 0.0,
        };
        r.extend(rows);
        r
    }

    pub fn extend(&mut self, rows: Vec<Row>) {
        for row in rows {
            if row.violated() {
                self.violations += 1;
            }
            self.worst_margin = Some(self.worst_margin.map_or(row.margin, |m| m.min(row.margin)));
            self.rows.push(row);
        }
    }

    pub fn fit(&mut self, name: &str, value: f64) {
        self.fitted.push(Fitted { name: name.into(), value });
    }

    pub fn fitted(&self, name: &str) -> Option<f64> {
        self.fitted.iter().find(|f| f.name == name).map(|f| f.value)
    }

    /// Merges another report's rows, constants and notes.
    pub fn absorb(&mut self, other: BoundReport) {
        self.samples += other.samples;
        self.fitted.extend(other.fitted);
        self.notes.extend(other.notes);
        self.extend(other.rows);
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.fitted.iter().all(|f| f.value.is_finite())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `case,z,w,lhs,rhs,margin,tol` per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("case,z,w,lhs,rhs,margin,tol\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.case,
                point(&r.z),
                point(&r.w),
                num(r.lhs),
                num(r.rhs),
                num(r.margin),
                num(r.tol)
            ));
        }
        out
    }
}

/// `a+bi` for one coordinate, space-separated coordinates otherwise.
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{sign}{}i", num(z.re), num(z.im.abs()))
}

fn point(z: &[C64]) -> String {
    z.iter().map(|&c| format_complex(c)).collect::<Vec<_>>().join(" ")
}

/// Shortest round-trip decimal, as in the JSON output.
fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float serializes")
    } else {
        format!("{x}")
    }
}

/// An experiment's rows under fixed column names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema: u32,
    pub experiment: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub summary: Vec<Fitted>,
}

impl Table {
    pub fn new(experiment: &str, columns: &[&str]) -> Self {
        Table {
            schema: 1,
            experiment: experiment.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn last(&self, name: &str) -> Option<f64> {
        self.column(name)?.last().copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|&x| num(x)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_and_worst_margin() {
        let o = [C64::new(0.0, 0.0)];
        let rows = vec![
            Row::new("a", &o, &o, 1.0, 2.0, 1e-8),
            Row::new("b", &o, &o, 1.0, 1.0 - 1e-9, 1e-8),
            Row::new("c", &o, &o, 1.0, 0.5, 1e-8),
        ];
        let r = BoundReport::new("t", 42, 3, rows);
        assert_eq!(r.violations, 1);
        assert_eq!(r.worst_margin, Some(-0.5));
        assert!(!r.passed());
    }

    #[test]
    fn json_has_schema_and_no_runtime() {
        let mut r = BoundReport::new("t", 7, 0, vec![]);
        r.runtime = 1.5;
        r.fit("c", 2.0);
        let j = r.to_json();
        assert!(j.contains("\"schema\": 1") && !j.contains("runtime"), "{j}");
        let back: BoundReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back.fitted("c"), Some(2.0));
    }

    #[test]
    fn csv_layout() {
        let o = [C64::new(0.5, -0.25)];
        let r = BoundReport::new("t", 1, 1, vec![Row::new("x", &o, &o, 0.1, 0.2, 0.0)]);
        let csv = r.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "case,z,w,lhs,rhs,margin,tol");
        assert!(csv.contains("x,0.5-0.25i,0.5-0.25i,0.1,0.2,"), "{csv}");
        let mut t = Table::new("e", &["x", "y"]);
        t.push(vec![1.0, 2.5]);
        assert_eq!(t.to_csv(), "x,y\n1.0,2.5\n");
        assert_eq!(t.last("y"), Some(2.5));
    }
}
