//! Result rows and their CSV form.

use std::io::{Read, Write};

use crate::error::{GgmError, Result};

pub const CSV_HEADER: [&str; 12] = [
    "graph",
    "n",
    "m",
    "strategy",
    "alpha",
    "trial",
    "seed",
    "rounds",
    "converged",
    "final_blue_ratio",
    "wall_ms",
    "stddev",
];

/// One trial.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub strategy: String,
    pub alpha: f64,
    pub trial: usize,
    pub seed: u64,
    pub rounds: u64,
    pub converged: bool,
    pub final_blue_ratio: f64,
    pub wall_ms: f64,
}

/// Aggregate over the trials of one sweep point.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub strategy: String,
    pub alpha: f64,
    pub master_seed: u64,
    pub trials: usize,
    pub mean_rounds: f64,
    pub median_rounds: f64,
    pub all_converged: bool,
    pub mean_final_blue_ratio: f64,
    pub mean_wall_ms: f64,
    /// Sample standard deviation of the sweep's primary metric: rounds for
    /// convergence sweeps, final blue ratio otherwise.
    pub stddev: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Rounds,
    FinalBlueRatio,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_stddev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

fn median(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

impl SummaryRow {
    /// Summarize the data rows of one point, in trial order.
    pub fn from_rows(rows: &[ResultRow], master_seed: u64, metric: Metric) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| GgmError::EmptyInput("no trials to summarize".into()))?;
        let rounds: Vec<f64> = rows.iter().map(|r| r.rounds as f64).collect();
        let ratios: Vec<f64> = rows.iter().map(|r| r.final_blue_ratio).collect();
        let walls: Vec<f64> = rows.iter().map(|r| r.wall_ms).collect();
        Ok(SummaryRow {
            graph: first.graph.clone(),
            n: first.n,
            m: first.m,
            strategy: first.strategy.clone(),
            alpha: first.alpha,
            master_seed,
            trials: rows.len(),
            mean_rounds: mean(&rounds),
            median_rounds: median(&rounds),
            all_converged: rows.iter().all(|r| r.converged),
            mean_final_blue_ratio: mean(&ratios),
            mean_wall_ms: mean(&walls),
            stddev: match metric {
                Metric::Rounds => sample_stddev(&rounds),
                Metric::FinalBlueRatio => sample_stddev(&ratios),
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Record {
    Data(ResultRow),
    Summary(SummaryRow),
}

impl Record {
    fn fields(&self) -> [String; 12] {
        match self {
            Record::Data(r) => [
                r.graph.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.strategy.clone(),
                r.alpha.to_string(),
                r.trial.to_string(),
                r.seed.to_string(),
                r.rounds.to_string(),
                r.converged.to_string(),
                r.final_blue_ratio.to_string(),
                format!("{:.3}", r.wall_ms),
                String::new(),
            ],
            Record::Summary(s) => [
                s.graph.clone(),
                s.n.to_string(),
                s.m.to_string(),
                s.strategy.clone(),
                s.alpha.to_string(),
                "-1".to_string(),
                s.master_seed.to_string(),
                s.mean_rounds.to_string(),
                s.all_converged.to_string(),
                s.mean_final_blue_ratio.to_string(),
                format!("{:.3}", s.mean_wall_ms),
                s.stddev.to_string(),
            ],
        }
    }
}

/// Output of a sweep: per point, its trial rows followed by its summary.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepOutput {
    pub records: Vec<Record>,
}

impl SweepOutput {
    pub fn data_rows(&self) -> impl Iterator<Item = &ResultRow> {
        self.records.iter().filter_map(|r| match r {
            Record::Data(d) => Some(d),
            Record::Summary(_) => None,
        })
    }

    pub fn summaries(&self) -> impl Iterator<Item = &SummaryRow> {
        self.records.iter().filter_map(|r| match r {
            Record::Summary(s) => Some(s),
            Record::Data(_) => None,
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(CSV_HEADER)?;
        for record in &self.records {
            writer.write_record(record.fields())?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// A CSV table with named columns, used for plotting and checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(input);
        let headers = reader.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            rows.push(record?.iter().map(str::to_string).collect());
        }
        Ok(Table { headers, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Only the summary rows (`trial == -1`), if the table has any.
    pub fn summary_rows(&self) -> Option<Table> {
        let trial = self.column("trial")?;
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .filter(|r| r.get(trial).map(String::as_str) == Some("-1"))
            .cloned()
            .collect();
        (!rows.is_empty()).then(|| Table {
            headers: self.headers.clone(),
            rows,
        })
    }
}
