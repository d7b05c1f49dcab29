//! On-disk search results: one `sat_{n}_{k}.g6` file of extremal graphs per
//! run plus a shared summary table.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::graph6::to_graph6;

use super::enumerate::SearchResult;

pub const SUMMARY_FILE: &str = "summary.txt";

const HEADER: &str = "n\tk\tsat\tstatus\tnodes\textremal";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub n: usize,
    pub k: usize,
    pub sat: Option<usize>,
    pub status: String,
    pub nodes: u64,
    pub extremal: usize,
}

impl SummaryRow {
    fn render(&self) -> String {
        let sat = self.sat.map_or("-".to_string(), |s| s.to_string());
        format!(
            "{}\t{}\t{sat}\t{}\t{}\t{}",
            self.n, self.k, self.status, self.nodes, self.extremal
        )
    }

    fn parse(line: &str) -> Option<SummaryRow> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            return None;
        }
        Some(SummaryRow {
            n: f[0].parse().ok()?,
            k: f[1].parse().ok()?,
            sat: f[2].parse().ok(),
            status: f[3].to_string(),
            nodes: f[4].parse().ok()?,
            extremal: f[5].parse().ok()?,
        })
    }
}

pub fn result_file_name(n: usize, k: usize) -> String {
    format!("sat_{n}_{k}.g6")
}

/// Rows of `dir/summary.txt`, or none when the file is missing.
pub fn read_summary(dir: &Path) -> io::Result<Vec<SummaryRow>> {
    match fs::read_to_string(dir.join(SUMMARY_FILE)) {
        Ok(text) => Ok(text.lines().skip(1).filter_map(SummaryRow::parse).collect()),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

/// Writes the extremal graphs and replaces the `(n, k)` row of the summary.
/// Returns the path of the graph file.
pub fn write_result(dir: &Path, r: &SearchResult) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(result_file_name(r.n, r.k));
    let body: String = r.extremal.iter().map(|g| to_graph6(g) + "\n").collect();
    fs::write(&path, body)?;
    let mut rows = read_summary(dir)?;
    rows.retain(|row| (row.n, row.k) != (r.n, r.k));
    rows.push(SummaryRow {
        n: r.n,
        k: r.k,
        sat: r.sat_value,
        status: r.status.to_string(),
        nodes: r.explored,
        extremal: r.extremal.len(),
    });
    rows.sort_by_key(|row| (row.k, row.n));
    let mut text = format!("{HEADER}\n");
    for row in &rows {
        text.push_str(&row.render());
        text.push('\n');
    }
    fs::write(dir.join(SUMMARY_FILE), text)?;
    Ok(path)
}
