use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{DatasetError, DatasetRecord, Domain};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DatasetError + '_ {
    move |source| DatasetError::Io { path: path.to_path_buf(), source }
}

/// Writes one JSON object per line.
pub fn write_jsonl(records: &[DatasetRecord], path: &Path) -> Result<(), DatasetError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    for r in records {
        let line = serde_json::to_string(r).expect("records serialize");
        writeln!(w, "{line}").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Reads records written by [`write_jsonl`]; blank lines are skipped.
pub fn read_jsonl(path: &Path) -> Result<Vec<DatasetRecord>, DatasetError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line)
            .map_err(|e| DatasetError::Schema { line: i + 1, msg: e.to_string() })?;
        out.push(r);
    }
    Ok(out)
}

/// Reads `<nl>\t<target>` lines into records with content ids.
pub fn read_tsv_pairs(path: &Path, domain: Domain) -> Result<Vec<DatasetRecord>, DatasetError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 2 {
            return Err(DatasetError::Columns { line: i + 1, found: cols.len() });
        }
        out.push(DatasetRecord::new(domain, cols[0].trim(), cols[1].trim(), BTreeMap::new()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use serde_json::Value;

    use super::*;

    fn fixture() -> Vec<DatasetRecord> {
        let mut meta = BTreeMap::new();
        meta.insert("generator".to_string(), Value::from("ltl-pattern"));
        meta.insert("aps".to_string(), Value::from(vec!["a", "b"]));
        vec![
            DatasetRecord::new(Domain::Ltl, "Globally a holds", "G a", meta),
            DatasetRecord::new(Domain::Regex, "lines with 'dog'", ".*dog.*", BTreeMap::new()),
            DatasetRecord::new(
                Domain::Fol,
                "choose an available port",
                "fol(1,some(A,n1port(A))).",
                BTreeMap::new(),
            ),
        ]
    }

    #[test]
    fn jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        let rs = fixture();
        write_jsonl(&rs, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(read_jsonl(&path).unwrap(), rs);
    }

    #[test]
    fn missing_target_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        let good = serde_json::to_string(&fixture()[0]).unwrap();
        std::fs::write(&path, format!("{good}\n{{\"id\":\"x\",\"domain\":\"ltl\",\"nl\":\"a\"}}\n")).unwrap();
        match read_jsonl(&path) {
            Err(DatasetError::Schema { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("target"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tsv_ingest() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.tsv");
        std::fs::write(
            &path,
            "lines with the string 'dog'\t.*dog.*\nlines ending in a vowel\t(.*)([AEIOUaeiou])\n",
        )
        .unwrap();
        let rs = read_tsv_pairs(&path, Domain::Regex).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[1].target, "(.*)([AEIOUaeiou])");
        assert!(rs.iter().all(|r| r.validate().is_ok()));

        std::fs::write(&path, "").unwrap();
        assert!(read_tsv_pairs(&path, Domain::Regex).unwrap().is_empty());

        std::fs::write(&path, "a\tb\nonly one column\n").unwrap();
        assert!(matches!(
            read_tsv_pairs(&path, Domain::Regex),
            Err(DatasetError::Columns { line: 2, found: 1 })
        ));
    }
}
