//! Accuracy grids over metadata axes, and differences between two grids.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{align, percent_or_na, Accuracy, EvalError, EvalReport, Percent};
use crate::corpus::{Sentence, Task};
use crate::ingest::{century_label, MetadataTable, PlayMetadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupAxis {
    Century,
    Channel,
}

impl GroupAxis {
    pub fn name(self) -> &'static str {
        match self {
            GroupAxis::Century => "century",
            GroupAxis::Channel => "channel",
        }
    }

    /// Label of the pooled line along this axis.
    pub fn total_label(self) -> &'static str {
        match self {
            GroupAxis::Century => "All cent.",
            GroupAxis::Channel => "Both",
        }
    }

    fn value(self, sample: &str, meta: &PlayMetadata) -> Result<(u32, String), EvalError> {
        let missing = |field| EvalError::MissingMetadata {
            sample: sample.to_string(),
            field,
        };
        match self {
            GroupAxis::Century => {
                let c = meta.century.ok_or_else(|| missing("century"))?;
                Ok((c, century_label(c)))
            }
            GroupAxis::Channel => {
                let c = meta.channel.ok_or_else(|| missing("channel"))?;
                Ok((c as u32, c.label().to_string()))
            }
        }
    }
}

impl FromStr for GroupAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "century" => Ok(GroupAxis::Century),
            "channel" => Ok(GroupAxis::Channel),
            other => Err(format!("unknown group axis {other:?} (expected century or channel)")),
        }
    }
}

/// One evaluated sample: aligned gold and predicted corpora.
#[derive(Debug, Clone, Copy)]
pub struct EvalSample<'a> {
    pub id: &'a str,
    pub gold: &'a [Sentence],
    pub pred: &'a [Sentence],
}

/// Accuracy cells indexed `[row][column]`. The last row and column pool all tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupedReport {
    pub task: Task,
    pub column_axis: String,
    pub row_axis: Option<String>,
    pub columns: Vec<String>,
    pub rows: Vec<String>,
    pub cells: Vec<Vec<Accuracy>>,
}

fn metadata_for<'m>(metadata: &'m MetadataTable, id: &str) -> Option<&'m PlayMetadata> {
    metadata
        .get(id)
        .or_else(|| id.split_once('.').and_then(|(play, _)| metadata.get(play)))
}

/// Accuracy for every combination of `axes` values. The first axis spans the
/// columns, the optional second one the rows; pooled cells are micro-averages.
pub fn grouped_report(
    samples: &[EvalSample<'_>],
    metadata: &MetadataTable,
    task: Task,
    axes: &[GroupAxis],
) -> Result<GroupedReport, EvalError> {
    let (col_axis, row_axis) = match axes {
        [c] => (*c, None),
        [c, r] if c != r => (*c, Some(*r)),
        _ => {
            return Err(EvalError::AxisMismatch {
                what: "axis list",
                left: format!("{axes:?}"),
                right: "one or two distinct axes".to_string(),
            })
        }
    };
    let mut counts: BTreeMap<((u32, String), (u32, String)), Accuracy> = BTreeMap::new();
    for sample in samples {
        let meta = metadata_for(metadata, sample.id)
            .ok_or_else(|| EvalError::UnknownSample(sample.id.to_string()))?;
        let col = col_axis.value(sample.id, meta)?;
        let row = match row_axis {
            Some(axis) => axis.value(sample.id, meta)?,
            None => (0, String::new()),
        };
        let cell = counts.entry((row, col)).or_default();
        for (g, p) in align(sample.gold, sample.pred)? {
            let expected = g.target(task).ok_or_else(|| EvalError::MissingTarget {
                corpus: "gold",
                position: cell.support,
                form: g.form.clone(),
                task,
            })?;
            cell.add(p.target(task).as_deref() == Some(expected.as_str()));
        }
    }
    let mut col_keys: Vec<&(u32, String)> = counts.keys().map(|(_, c)| c).collect();
    col_keys.sort();
    col_keys.dedup();
    let mut row_keys: Vec<&(u32, String)> = counts.keys().map(|(r, _)| r).collect();
    row_keys.sort();
    row_keys.dedup();
    if row_axis.is_none() {
        row_keys.clear();
    }

    let mut cells = vec![vec![Accuracy::default(); col_keys.len() + 1]; row_keys.len() + 1];
    for ((row, col), acc) in &counts {
        let c = col_keys.iter().position(|k| *k == col).expect("collected above");
        let r = row_keys.iter().position(|k| *k == row);
        if let Some(r) = r {
            cells[r][c].merge(*acc);
            cells[r][col_keys.len()].merge(*acc);
        }
        let last = row_keys.len();
        cells[last][c].merge(*acc);
        cells[last][col_keys.len()].merge(*acc);
    }
    let mut columns: Vec<String> = col_keys.iter().map(|(_, l)| l.clone()).collect();
    columns.push(col_axis.total_label().to_string());
    let mut rows: Vec<String> = row_keys.iter().map(|(_, l)| l.clone()).collect();
    rows.push(row_axis.map_or("All", GroupAxis::total_label).to_string());
    Ok(GroupedReport {
        task,
        column_axis: col_axis.name().to_string(),
        row_axis: row_axis.map(|a| a.name().to_string()),
        columns,
        rows,
        cells,
    })
}

impl From<&EvalReport> for GroupedReport {
    /// The token-class report as a single-row grid.
    fn from(report: &EvalReport) -> Self {
        GroupedReport {
            task: report.task,
            column_axis: "class".to_string(),
            row_axis: None,
            columns: report.classes().iter().map(|(n, _)| n.to_string()).collect(),
            rows: vec![report.task.to_string()],
            cells: vec![report.classes().iter().map(|(_, a)| *a).collect()],
        }
    }
}

impl GroupedReport {
    pub fn percent(&self, row: &str, column: &str) -> Option<Percent> {
        let r = self.rows.iter().position(|x| x == row)?;
        let c = self.columns.iter().position(|x| x == column)?;
        self.cells[r][c].percent()
    }

    fn cell_record(&self, r: usize, c: usize) -> Map<String, Value> {
        let mut record = Map::new();
        record.insert("task".into(), json!(self.task));
        record.insert(self.column_axis.clone(), json!(self.columns[c]));
        if let Some(axis) = &self.row_axis {
            record.insert(axis.clone(), json!(self.rows[r]));
        }
        record
    }

    /// One JSON object per cell, labelled with its axis values.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, acc) in row.iter().enumerate() {
                let mut record = self.cell_record(r, c);
                record.insert("accuracy".into(), json!(acc.percent()));
                record.insert("correct".into(), json!(acc.correct));
                record.insert("support".into(), json!(acc.support));
                out.push_str(&Value::Object(record).to_string());
                out.push('\n');
            }
        }
        out
    }

    fn write_table<T>(
        &self,
        f: &mut fmt::Formatter<'_>,
        cells: &[Vec<T>],
        show: impl Fn(&T) -> String,
    ) -> fmt::Result {
        let corner = match &self.row_axis {
            Some(r) => format!("{r} \\ {}", self.column_axis),
            None => self.column_axis.clone(),
        };
        writeln!(f, "{corner}\t{}", self.columns.join("\t"))?;
        for (label, row) in self.rows.iter().zip(cells) {
            let values: Vec<String> = row.iter().map(&show).collect();
            writeln!(f, "{label}\t{}", values.join("\t"))?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task: {}", self.task)?;
        writeln!(f)?;
        writeln!(f, "accuracy")?;
        self.write_table(f, &self.cells, |a| percent_or_na(a.percent()))?;
        writeln!(f)?;
        writeln!(f, "support")?;
        self.write_table(f, &self.cells, |a| a.support.to_string())
    }
}

/// A difference of percentages, printed with an explicit sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SignedPercent(pub i64);

impl fmt::Display for SignedPercent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { '-' } else { '+' };
        let v = self.0.abs();
        write!(f, "{sign}{}.{:02}", v / 100, v % 100)
    }
}

/// Cellwise `b − a` between two grids with the same axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub base: GroupedReport,
    pub cells: Vec<Vec<Option<SignedPercent>>>,
}

impl DeltaReport {
    pub fn delta(&self, row: &str, column: &str) -> Option<SignedPercent> {
        let r = self.base.rows.iter().position(|x| x == row)?;
        let c = self.base.columns.iter().position(|x| x == column)?;
        self.cells[r][c]
    }

    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, d) in row.iter().enumerate() {
                let mut record = self.base.cell_record(r, c);
                record.insert("delta".into(), json!(d.map(|d| d.to_string())));
                out.push_str(&Value::Object(record).to_string());
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task: {}", self.base.task)?;
        writeln!(f)?;
        writeln!(f, "delta")?;
        self.base
            .write_table(f, &self.cells, |d| d.map_or("NA".to_string(), |d| d.to_string()))
    }
}

fn same<T: PartialEq + fmt::Debug>(what: &'static str, a: &T, b: &T) -> Result<(), EvalError> {
    if a == b {
        Ok(())
    } else {
        Err(EvalError::AxisMismatch {
            what,
            left: format!("{a:?}"),
            right: format!("{b:?}"),
        })
    }
}

/// Improvement of `b` over `a`, computed on the rounded percentages.
pub fn delta_report(a: &GroupedReport, b: &GroupedReport) -> Result<DeltaReport, EvalError> {
    same("task", &a.task, &b.task)?;
    same("column axis", &a.column_axis, &b.column_axis)?;
    same("row axis", &a.row_axis, &b.row_axis)?;
    same("columns", &a.columns, &b.columns)?;
    same("rows", &a.rows, &b.rows)?;
    let cells = a
        .cells
        .iter()
        .zip(&b.cells)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| Some(SignedPercent(y.percent()?.0 - x.percent()?.0)))
                .collect()
        })
        .collect();
    Ok(DeltaReport { base: a.clone(), cells })
}
