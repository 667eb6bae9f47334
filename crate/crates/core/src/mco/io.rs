//! Instance CSV (`x,f1,...,fd`) and its optional JSON sidecar.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mco::instance::McoInstance;

/// Sidecar metadata stored next to an instance CSV.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(
        default,
        rename = "labelOffset",
        skip_serializing_if = "Option::is_none"
    )]
    pub label_offset: Option<usize>,
}

impl InstanceMeta {
    pub fn of(inst: &McoInstance<f64>) -> Self {
        Self {
            n: Some(inst.n()),
            d: Some(inst.d()),
            lambda: inst.lambda().map(<[f64]>::to_vec),
            label_offset: (inst.label_offset() != 0).then_some(inst.label_offset()),
        }
    }
}

/// `foo.csv` -> `foo.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Parses the CSV table. Rows must list `x = 0, 1, ..., 2^n - 1` in order.
pub fn parse_instance_csv<R: Read>(reader: R) -> Result<McoInstance<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let d = header.len().saturating_sub(1);
    if d < 2 || &header[0] != "x" {
        return Err(Error::Parse(format!(
            "header must be `x,f1,...,fd` with d >= 2, got `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    for (i, name) in header.iter().skip(1).enumerate() {
        if name != format!("f{}", i + 1) {
            return Err(Error::Parse(format!(
                "column {} must be named f{}, got `{name}`",
                i + 2,
                i + 1
            )));
        }
    }

    let mut values = Vec::new();
    let mut rows = 0usize;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let line = rows + 2;
        if rec.len() != d + 1 {
            return Err(Error::Parse(format!(
                "line {line}: expected {} fields, got {}",
                d + 1,
                rec.len()
            )));
        }
        let x: usize = rec[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {line}: bad index `{}`", &rec[0])))?;
        if x != rows {
            return Err(Error::Parse(if x < rows {
                format!("line {line}: duplicate or out-of-order index {x}")
            } else {
                format!("line {line}: missing index {rows} (found {x})")
            }));
        }
        for field in rec.iter().skip(1) {
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Parse(format!("line {line}: bad value `{field}`")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Parse(format!(
                    "line {line}: value {field} must be finite and nonnegative"
                )));
            }
            values.push(v);
        }
        rows += 1;
    }
    if rows < 2 || !rows.is_power_of_two() {
        return Err(Error::Parse(format!(
            "{rows} rows do not cover a full domain of 2^n elements (n >= 1)"
        )));
    }
    McoInstance::new(rows.trailing_zeros(), d, values).map_err(|e| Error::Parse(e.to_string()))
}

/// Applies sidecar metadata, checking `n` and `d` agree with the table.
pub fn apply_meta(inst: McoInstance<f64>, meta: &InstanceMeta) -> Result<McoInstance<f64>> {
    if let Some(n) = meta.n {
        if n != inst.n() {
            return Err(Error::Parse(format!(
                "sidecar says n = {n}, table has n = {}",
                inst.n()
            )));
        }
    }
    if let Some(d) = meta.d {
        if d != inst.d() {
            return Err(Error::Parse(format!(
                "sidecar says d = {d}, table has d = {}",
                inst.d()
            )));
        }
    }
    let mut inst = inst.with_label_offset(meta.label_offset.unwrap_or(0));
    if let Some(l) = &meta.lambda {
        inst = inst.with_lambda(l.clone())?;
    }
    Ok(inst)
}

/// Reads `path` and, when present, its `.json` sidecar.
pub fn read_instance(path: &Path) -> Result<McoInstance<f64>> {
    let file =
        std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let inst = parse_instance_csv(file)?;
    let side = sidecar_path(path);
    if side.exists() {
        let text = std::fs::read_to_string(&side)?;
        let meta: InstanceMeta = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", side.display())))?;
        return apply_meta(inst, &meta);
    }
    Ok(inst)
}

pub fn write_instance_csv<W: Write>(inst: &McoInstance<f64>, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["x".to_string()];
    header.extend((1..=inst.d()).map(|i| format!("f{i}")));
    w.write_record(&header)
        .map_err(|e| Error::Io(e.to_string()))?;
    for (x, row) in inst.rows().enumerate() {
        let mut rec = vec![x.to_string()];
        rec.extend(row.iter().map(f64::to_string));
        w.write_record(&rec).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the CSV and its sidecar.
pub fn write_instance(inst: &McoInstance<f64>, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_instance_csv(inst, &mut buf)?;
    std::fs::write(path, buf)?;
    let meta = serde_json::to_string_pretty(&InstanceMeta::of(inst))
        .map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(sidecar_path(path), meta)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ascending_table() {
        let inst = parse_instance_csv("x,f1,f2\n0,0,1.5\n1,2,0\n".as_bytes()).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.row(1), &[2.0, 0.0]);
    }

    #[test]
    fn rejects_gaps_duplicates_negatives() {
        let gap = "x,f1,f2\n0,0,1\n2,1,0\n3,1,1\n4,2,2\n";
        assert!(
            matches!(parse_instance_csv(gap.as_bytes()), Err(Error::Parse(m)) if m.contains("missing"))
        );
        let dup = "x,f1,f2\n0,0,1\n0,1,0\n";
        assert!(
            matches!(parse_instance_csv(dup.as_bytes()), Err(Error::Parse(m)) if m.contains("duplicate"))
        );
        let neg = "x,f1,f2\n0,0,1\n1,-1,0\n";
        assert!(parse_instance_csv(neg.as_bytes()).is_err());
        let short = "x,f1,f2\n0,0,1\n1,1,0\n2,3,3\n";
        assert!(parse_instance_csv(short.as_bytes()).is_err());
        let header = "x,a,b\n0,0,1\n1,1,0\n";
        assert!(parse_instance_csv(header.as_bytes()).is_err());
    }

    #[test]
    fn round_trip_with_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.csv");
        let inst = McoInstance::from_rows(&[vec![0.0, 46.139], vec![0.401, 0.0]])
            .unwrap()
            .with_lambda(vec![0.2, 0.4])
            .unwrap()
            .with_label_offset(1);
        write_instance(&inst, &path).unwrap();
        assert_eq!(read_instance(&path).unwrap(), inst);
    }
}
