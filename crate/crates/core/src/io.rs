//! CSV ingestion for tables, grouped observations and paired samples.
//!
//! Row numbers in diagnostics are 1-based and count data rows only, so the
//! header line of the grouped and paired formats is not row 1.

use std::collections::HashMap;
use std::io::Read;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::anova::{Group, GroupData};
use crate::contingency::ContingencyTable;
use crate::correlation::PairedSample;
use crate::error::{NbError, Result};

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(input)
}

fn records<R: Read>(input: R) -> Result<Vec<StringRecord>> {
    reader(input)
        .records()
        .enumerate()
        .map(|(i, rec)| rec.map_err(|e| NbError::parse(format!("line {}", i + 1), e.to_string())))
        .collect()
}

fn parse_finite(field: &str, location: impl FnOnce() -> String) -> Result<f64> {
    match field.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(NbError::parse(
            location(),
            format!("value {v} is not finite"),
        )),
        Err(_) => Err(NbError::parse(
            location(),
            format!("'{field}' is not a number"),
        )),
    }
}

/// Reads a headerless grid of nonnegative integer counts.
pub fn parse_table_csv<R: Read>(input: R) -> Result<ContingencyTable> {
    let rows = records(input)?;
    let width = rows.first().map_or(0, StringRecord::len);
    let mut cells = Vec::with_capacity(rows.len());
    for (i, rec) in rows.iter().enumerate() {
        let row_no = i + 1;
        if rec.len() != width {
            return Err(NbError::parse(
                format!("row {row_no}"),
                format!("ragged row: {} cells, expected {width}", rec.len()),
            ));
        }
        let row = rec
            .iter()
            .enumerate()
            .map(|(j, field)| {
                let loc = || format!("row {row_no}, column {}", j + 1);
                if field.starts_with('-') && field[1..].parse::<u64>().is_ok() {
                    return Err(NbError::parse(loc(), format!("negative count '{field}'")));
                }
                field.parse::<u64>().map_err(|_| {
                    NbError::parse(loc(), format!("'{field}' is not a nonnegative integer"))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        cells.push(row);
    }
    if cells.len() < 2 || width < 2 {
        return Err(NbError::parse(
            "table",
            format!(
                "need at least 2 rows and 2 columns, got {}x{width}",
                cells.len()
            ),
        ));
    }
    ContingencyTable::new(cells)
}

fn check_header(rows: &[StringRecord], expected: [&str; 2]) -> Result<()> {
    let header = rows
        .first()
        .ok_or_else(|| NbError::parse("header", "input is empty"))?;
    let matches = header.len() == 2
        && header
            .iter()
            .zip(expected)
            .all(|(got, want)| got.eq_ignore_ascii_case(want));
    if !matches {
        return Err(NbError::parse(
            "header",
            format!(
                "expected '{}', got '{}'",
                expected.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    Ok(())
}

fn require_two_fields(rec: &StringRecord, row_no: usize) -> Result<()> {
    if rec.len() != 2 {
        return Err(NbError::parse(
            format!("row {row_no}"),
            format!("expected 2 fields, got {}", rec.len()),
        ));
    }
    Ok(())
}

/// Reads long-format `group,value` observations, grouped by label in order
/// of first appearance.
pub fn parse_groups_csv<R: Read>(input: R) -> Result<GroupData> {
    let rows = records(input)?;
    check_header(&rows, ["group", "value"])?;

    let mut groups: Vec<Group> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, rec) in rows.iter().enumerate().skip(1) {
        require_two_fields(rec, i)?;
        let label = &rec[0];
        let value = parse_finite(&rec[1], || format!("row {i}, column value"))?;
        let slot = *index.entry(label.to_string()).or_insert_with(|| {
            groups.push(Group {
                label: label.to_string(),
                values: Vec::new(),
            });
            groups.len() - 1
        });
        groups[slot].values.push(value);
    }

    if groups.len() < 2 {
        return Err(NbError::parse(
            "groups",
            format!("need at least 2 groups, got {}", groups.len()),
        ));
    }
    if let Some(g) = groups.iter().find(|g| g.values.len() < 2) {
        return Err(NbError::parse(
            format!("group '{}'", g.label),
            format!("{} observation(s), need at least 2", g.values.len()),
        ));
    }
    GroupData::new(groups)
}

/// Reads `x,y` pairs.
pub fn parse_pairs_csv<R: Read>(input: R) -> Result<PairedSample> {
    let rows = records(input)?;
    check_header(&rows, ["x", "y"])?;

    let mut pairs = Vec::with_capacity(rows.len().saturating_sub(1));
    for (i, rec) in rows.iter().enumerate().skip(1) {
        require_two_fields(rec, i)?;
        let x = parse_finite(&rec[0], || format!("row {i}, column x"))?;
        let y = parse_finite(&rec[1], || format!("row {i}, column y"))?;
        pairs.push((x, y));
    }
    if pairs.len() < 3 {
        return Err(NbError::parse(
            "pairs",
            format!("need at least 3 rows, got {}", pairs.len()),
        ));
    }
    PairedSample::new(pairs)
}
