//! CSV trajectory ingestion and code dumps.
//!
//! Dataset rows are `traj_id,category,seq,x,y[,...]`. An optional header
//! row starting with `traj_id` is skipped. Rows may appear in any order;
//! trajectories keep the order of their first row and points are sorted by `seq`.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::index::HashIndex;
use crate::trajectory::{Dataset, Points, Trajectory};

struct Pending {
    id: String,
    category: String,
    rows: Vec<(i64, usize, Vec<f64>)>,
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_dataset(file, path)
}

/// Parses dataset CSV from any reader; `path` is only used in error messages.
pub fn read_dataset<R: Read>(reader: R, path: &Path) -> Result<Dataset> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let mut order: Vec<Pending> = Vec::new();
    let mut by_id: HashMap<String, usize> = HashMap::new();
    let mut width: Option<usize> = None;

    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(i + 1, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if i == 0 && record.get(0) == Some("traj_id") {
            continue;
        }
        if record.len() < 4 {
            return Err(parse_err(
                line,
                format!("expected traj_id,category,seq and at least one coordinate, got {} fields", record.len()),
            ));
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(parse_err(line, format!("row has {} fields, earlier rows have {w}", record.len())))
            }
            _ => {}
        }
        let id = &record[0];
        let category = &record[1];
        if id.is_empty() {
            return Err(parse_err(line, "empty traj_id".into()));
        }
        let seq: i64 = record[2]
            .parse()
            .map_err(|_| parse_err(line, format!("seq '{}' is not an integer", &record[2])))?;
        let mut coords = Vec::with_capacity(record.len() - 3);
        for (c, field) in record.iter().skip(3).enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(line, format!("coordinate {c} '{field}' is not a number")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("coordinate {c} '{field}' is not finite")));
            }
            coords.push(v);
        }
        let slot = *by_id.entry(id.to_string()).or_insert_with(|| {
            order.push(Pending {
                id: id.to_string(),
                category: category.to_string(),
                rows: Vec::new(),
            });
            order.len() - 1
        });
        let pending = &mut order[slot];
        if pending.category != category {
            return Err(parse_err(
                line,
                format!("trajectory {id} has category '{category}', earlier rows say '{}'", pending.category),
            ));
        }
        pending.rows.push((seq, line, coords));
    }

    if order.is_empty() {
        return Err(parse_err(0, "file contains no trajectory rows".into()));
    }
    let mut trajectories = Vec::with_capacity(order.len());
    for mut p in order {
        p.rows.sort_by_key(|r| r.0);
        if let Some(w) = p.rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(parse_err(w[1].1, format!("duplicate seq {} in trajectory {}", w[1].0, p.id)));
        }
        let points = Points::from_rows(p.rows.iter().map(|r| &r.2[..]))?;
        trajectories.push(Trajectory::new(p.id, p.category, points)?);
    }
    Dataset::new(trajectories)
}

/// Dataset in the same CSV layout [`load_dataset`] reads, with a header row.
pub fn dataset_to_csv(ds: &Dataset) -> String {
    let mut out = String::from("traj_id,category,seq");
    let axes = ["x", "y", "z"];
    for d in 0..ds.dim() {
        match axes.get(d) {
            Some(a) => out.push_str(&format!(",{a}")),
            None => out.push_str(&format!(",c{d}")),
        }
    }
    out.push('\n');
    for t in ds.trajectories() {
        for (seq, p) in t.points().iter().enumerate() {
            out.push_str(&format!("{},{},{seq}", t.id(), t.category()));
            for c in p {
                // `{}` on f64 prints the shortest string that round-trips
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
    }
    out
}

pub fn save_dataset(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, dataset_to_csv(ds)).map_err(|e| Error::io(path, e))
}

/// One `id,L,hex` line per index entry.
pub fn code_dump(index: &HashIndex) -> String {
    let mut out = String::new();
    for e in index.entries() {
        out.push_str(&format!("{},{},{}\n", e.id, e.code.len(), e.code.to_hex()));
    }
    out
}

pub fn parse_code_dump(text: &str) -> Result<Vec<(String, BinaryCode)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let mut parts = l.rsplitn(3, ',');
            let (hex, len, id) = match (parts.next(), parts.next(), parts.next()) {
                (Some(h), Some(n), Some(id)) => (h, n, id),
                _ => return Err(Error::Input(format!("code dump line {}: expected id,L,hex", i + 1))),
            };
            let len: usize = len
                .parse()
                .map_err(|_| Error::Input(format!("code dump line {}: bad length '{len}'", i + 1)))?;
            Ok((id.to_string(), BinaryCode::from_hex(hex, len)?))
        })
        .collect()
}
