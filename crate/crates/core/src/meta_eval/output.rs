//! Flat tables of an [`AnalysisReport`]: TSV files with `NA` for absent
//! cells plus long-format CSVs for heatmaps and Williams grids.

use super::{AnalysisReport, CorrCell};
use crate::error::Result;
use crate::scalar::Scalar;

const NA: &str = "NA";

fn num<T: Scalar>(v: T) -> String {
    // Debug keeps full precision and switches to exponent form for tiny p-values
    format!("{:?}", v.as_f64())
}

fn opt<T: Scalar>(v: Option<T>) -> String {
    v.map_or_else(|| NA.to_string(), num)
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

fn corr_cols<T: Scalar>(c: &CorrCell<T>) -> [String; 4] {
    [c.n.to_string(), opt(c.rho), opt(c.p_value), flag(c.significant)]
}

struct Table {
    delimiter: u8,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn tsv(header: &[&'static str]) -> Self {
        Table {
            delimiter: b'\t',
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn csv(header: &[&'static str]) -> Self {
        Table {
            delimiter: b',',
            ..Table::tsv(header)
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn render(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .delimiter(self.delimiter)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("tables are built from UTF-8 strings"))
    }
}

/// Every table as `(relative path, contents)`, in a fixed order.
pub fn render_tables<T: Scalar>(report: &AnalysisReport<T>) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();

    let mut t = Table::tsv(&["scope", "dimension", "model", "items", "icc", "f", "p_value"]);
    for r in &report.reliability {
        for m in &r.models {
            t.push(vec![
                r.scope.clone(),
                r.dimension.map_or("all", |d| d.name()).to_string(),
                m.model.name().to_string(),
                r.items.to_string(),
                num(m.icc),
                num(m.f),
                num(m.p_value),
            ]);
        }
    }
    out.push(("reliability.tsv", t));

    let mut t = Table::tsv(&["dataset", "system", "field", "n", "mean", "sd"]);
    let mut tests = Table::tsv(&["dataset", "field", "u", "p_value", "significant"]);
    for s in &report.system_summaries {
        for sys in &s.systems {
            for f in &sys.fields {
                t.push(vec![
                    s.dataset.clone(),
                    sys.system.clone(),
                    f.field.to_string(),
                    f.n.to_string(),
                    opt(f.mean),
                    opt(f.sd),
                ]);
            }
        }
        for ft in s.tests.iter().flatten() {
            tests.push(vec![
                s.dataset.clone(),
                ft.field.to_string(),
                opt(ft.u),
                opt(ft.p_value),
                flag(ft.significant),
            ]);
        }
    }
    out.push(("system_summary.tsv", t));
    out.push(("system_tests.tsv", tests));

    let mut t = Table::tsv(&[
        "grouping",
        "group",
        "metric",
        "dimension",
        "n",
        "rho",
        "p_value",
        "significant",
        "best",
    ]);
    let mut williams = Table::tsv(&[
        "group",
        "dimension",
        "metric_a",
        "metric_b",
        "n",
        "t",
        "p_value",
        "indistinguishable",
    ]);
    let mut heat = Table::csv(&["group", "metric_a", "metric_b", "rho"]);
    let mut grid = Table::csv(&["group", "dimension", "metric_a", "metric_b", "indistinguishable_flag"]);
    for table in &report.correlation_tables {
        let label = table.group.label();
        for row in &table.metrics {
            for (d, cell) in crate::corpus::Dimension::ALL.iter().zip(&row.dimensions) {
                let mark = table.best.iter().find(|b| b.dimension == *d);
                let best = match mark {
                    Some(b) if b.wbm == Some(row.metric) => "wbm",
                    Some(b) if b.gbm == Some(row.metric) => "gbm",
                    _ => "",
                };
                let [n, rho, p, sig] = corr_cols(cell);
                t.push(vec![
                    table.group.grouping.name().to_string(),
                    label.clone(),
                    row.metric.name().to_string(),
                    d.name().to_string(),
                    n,
                    rho,
                    p,
                    sig,
                    best.to_string(),
                ]);
            }
        }
        for m in table.williams.iter().flatten() {
            for e in &m.entries {
                williams.push(vec![
                    label.clone(),
                    m.dimension.name().to_string(),
                    e.metric_a.name().to_string(),
                    e.metric_b.name().to_string(),
                    e.n.to_string(),
                    opt(e.t),
                    opt(e.p_value),
                    flag(e.indistinguishable),
                ]);
                for (a, b) in [(e.metric_a, e.metric_b), (e.metric_b, e.metric_a)] {
                    grid.push(vec![
                        label.clone(),
                        m.dimension.name().to_string(),
                        a.name().to_string(),
                        b.name().to_string(),
                        flag(e.indistinguishable),
                    ]);
                }
            }
        }
        for p in table.metric_matrix.iter().flatten() {
            for (a, b) in [(p.metric_a, p.metric_b), (p.metric_b, p.metric_a)] {
                heat.push(vec![
                    label.clone(),
                    a.name().to_string(),
                    b.name().to_string(),
                    opt(p.rho),
                ]);
            }
        }
    }
    out.push(("correlations.tsv", t));
    out.push(("williams.tsv", williams));

    let mut t = Table::tsv(&[
        "quantized",
        "dataset",
        "dimension",
        "metric",
        "pairs",
        "correct",
        "accuracy",
        "random_accuracy",
        "p_value",
        "significant",
    ]);
    for table in &report.accuracy_tables {
        let q = table.quantized.map_or("raw", |s| s.name()).to_string();
        for cell in std::iter::once(&table.random).chain(&table.metrics) {
            t.push(vec![
                q.clone(),
                table.dataset.clone(),
                table.dimension.name().to_string(),
                cell.metric.map_or("random", |m| m.name()).to_string(),
                cell.pairs.to_string(),
                cell.correct.to_string(),
                opt(cell.accuracy),
                opt(cell.random_accuracy),
                opt(cell.p_value),
                flag(cell.significant),
            ]);
        }
    }
    out.push(("accuracy.tsv", t));

    let mut shares = Table::tsv(&["scope", "dimension", "bin", "n", "share"]);
    let mut t = Table::tsv(&[
        "scope",
        "dimension",
        "metric",
        "bad_n",
        "bad_rho",
        "bad_p_value",
        "bad_significant",
        "other_n",
        "other_rho",
        "other_p_value",
        "other_significant",
    ]);
    for b in &report.bin_tables {
        for s in &b.shares {
            shares.push(vec![
                b.scope.clone(),
                b.dimension.name().to_string(),
                s.bin.name().to_string(),
                s.n.to_string(),
                num(s.share),
            ]);
        }
        for c in &b.correlations {
            let mut row = vec![
                b.scope.clone(),
                b.dimension.name().to_string(),
                c.metric.name().to_string(),
            ];
            row.extend(corr_cols(&c.bad));
            row.extend(corr_cols(&c.other));
            t.push(row);
        }
    }
    out.push(("bins.tsv", shares));
    out.push(("bin_correlations.tsv", t));

    let mut t = Table::tsv(&[
        "scope",
        "dimension",
        "metric",
        "inform_n",
        "inform_rho",
        "inform_p_value",
        "inform_significant",
        "other_n",
        "other_rho",
        "other_p_value",
        "other_significant",
        "z",
        "p_value",
        "significant",
    ]);
    for s in &report.mr_type_split {
        for r in &s.rows {
            let mut row = vec![
                s.scope.clone(),
                s.dimension.name().to_string(),
                r.metric.name().to_string(),
            ];
            row.extend(corr_cols(&r.inform));
            row.extend(corr_cols(&r.other));
            row.extend([opt(r.z), opt(r.p_value), flag(r.significant)]);
            t.push(row);
        }
    }
    out.push(("mr_split.tsv", t));
    out.push(("plots/metric_heatmap.csv", heat));
    out.push(("plots/williams_grid.csv", grid));

    out.into_iter()
        .map(|(name, table)| Ok((name.to_string(), table.render()?)))
        .collect()
}
