//! ICDAR-style annotation files: one `gt_<image_id>.txt` per image, one
//! instance per line as `x1,y1,...,xn,yn` with an optional trailing `,###`
//! marking ignore regions. A sibling `<image_id>.pgm` supplies pixels and the
//! canvas size when present.

use std::fs;
use std::path::{Path, PathBuf};

use super::pgm::read_pgm;
use super::{ImageRecord, TextInstance};
use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon};

pub const IGNORE_TOKEN: &str = "###";

/// Load every `gt_*.txt` under `root` (sorted by file name) into records.
///
/// Canvas size comes from the sibling PGM when present, otherwise from the
/// ceiling of the annotation extent.
pub fn load_annotations(root: &Path) -> Result<Vec<ImageRecord>> {
    let mut files: Vec<PathBuf> = fs::read_dir(root)
        .map_err(|e| Error::io(root, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .map(|n| n.starts_with("gt_") && n.ends_with(".txt"))
                .unwrap_or(false)
        })
        .collect();
    files.sort();

    let mut records = Vec::with_capacity(files.len());
    for file in files {
        let name = file.file_name().unwrap().to_str().unwrap();
        let id = name["gt_".len()..name.len() - ".txt".len()].to_string();
        let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
        let instances = parse_instances(&text, &file)?;

        let pgm_path = root.join(format!("{id}.pgm"));
        let (size, pixels) = if pgm_path.is_file() {
            let (w, h, px) = read_pgm(&pgm_path)?;
            ((w, h), Some(px))
        } else {
            (extent_of(&instances), None)
        };
        records.push(ImageRecord {
            id,
            size,
            instances,
            pixels,
        });
    }
    Ok(records)
}

fn extent_of(instances: &[TextInstance]) -> (u32, u32) {
    let mut w: f64 = 1.0;
    let mut h: f64 = 1.0;
    for inst in instances {
        for v in inst.polygon.vertices() {
            w = w.max(v.x);
            h = h.max(v.y);
        }
    }
    (w.ceil() as u32, h.ceil() as u32)
}

fn parse_instances(text: &str, file: &Path) -> Result<Vec<TextInstance>> {
    let mut instances = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens: Vec<&str> = line.split(',').map(str::trim).collect();
        let ignore = tokens.last() == Some(&IGNORE_TOKEN);
        if ignore {
            tokens.pop();
        }
        let err = |msg: String| Error::Parse {
            file: file.to_path_buf(),
            line: lineno + 1,
            msg,
        };
        if tokens.len() % 2 != 0 {
            return Err(err(format!("odd coordinate count {}", tokens.len())));
        }
        if tokens.len() < 6 {
            return Err(err(format!(
                "need at least 3 vertices, got {} coordinates",
                tokens.len()
            )));
        }
        let mut points = Vec::with_capacity(tokens.len() / 2);
        for pair in tokens.chunks_exact(2) {
            let x: f64 = pair[0]
                .parse()
                .map_err(|_| err(format!("non-numeric token '{}'", pair[0])))?;
            let y: f64 = pair[1]
                .parse()
                .map_err(|_| err(format!("non-numeric token '{}'", pair[1])))?;
            if !x.is_finite() || !y.is_finite() {
                return Err(err(format!("non-finite coordinate '{},{}'", pair[0], pair[1])));
            }
            points.push(Point::new(x, y));
        }
        let polygon = Polygon::new(points).map_err(|e| err(e.to_string()))?;
        instances.push(TextInstance { polygon, ignore });
    }
    Ok(instances)
}

/// Serialize instances in the annotation line format.
pub fn serialize_instances(instances: &[TextInstance]) -> String {
    let mut out = String::new();
    for inst in instances {
        let coords: Vec<String> = inst
            .polygon
            .vertices()
            .iter()
            .flat_map(|p| [fmt_coord(p.x), fmt_coord(p.y)])
            .collect();
        out.push_str(&coords.join(","));
        if inst.ignore {
            out.push(',');
            out.push_str(IGNORE_TOKEN);
        }
        out.push('\n');
    }
    out
}

/// Write `gt_<id>.txt` (and `<id>.pgm` when pixels are present) under `dir`.
pub fn save_annotations(dir: &Path, rec: &ImageRecord) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let gt_path = dir.join(format!("gt_{}.txt", rec.id));
    fs::write(&gt_path, serialize_instances(&rec.instances)).map_err(|e| Error::io(&gt_path, e))?;
    if let Some(pixels) = &rec.pixels {
        let pgm_path = dir.join(format!("{}.pgm", rec.id));
        super::pgm::write_pgm(&pgm_path, rec.size.0, rec.size.1, pixels)?;
    }
    Ok(())
}

// Fixed-point coordinate formatting: up to six decimals, trailing zeros
// trimmed, so serialization is a pure function of the value.
fn fmt_coord(v: f64) -> String {
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::TempDir;

    fn write_gt(dir: &Path, id: &str, body: &str) {
        fs::write(dir.join(format!("gt_{id}.txt")), body).unwrap();
    }

    #[test]
    fn parses_plain_line() {
        let dir = TempDir::new().unwrap();
        write_gt(dir.path(), "a", "0,0,10,0,10,5,0,5\n");
        let recs = load_annotations(dir.path()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].instances.len(), 1);
        assert_eq!(recs[0].instances[0].polygon.vertices().len(), 4);
        assert!(!recs[0].instances[0].ignore);
    }

    #[test]
    fn parses_ignore_token() {
        let dir = TempDir::new().unwrap();
        write_gt(dir.path(), "a", "0,0,10,0,10,5,0,5,###\n");
        let recs = load_annotations(dir.path()).unwrap();
        assert!(recs[0].instances[0].ignore);
    }

    #[test]
    fn odd_coordinate_count_is_an_error_naming_the_line() {
        let dir = TempDir::new().unwrap();
        write_gt(dir.path(), "a", "0,0,10,0,10,5,0,5\n0,0,10\n");
        let err = load_annotations(dir.path()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn non_numeric_token_is_an_error() {
        let dir = TempDir::new().unwrap();
        write_gt(dir.path(), "a", "0,0,abc,0,10,5\n");
        assert!(matches!(
            load_annotations(dir.path()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn empty_file_gives_zero_instances() {
        let dir = TempDir::new().unwrap();
        write_gt(dir.path(), "a", "");
        let recs = load_annotations(dir.path()).unwrap();
        assert_eq!(recs[0].instances.len(), 0);
    }

    #[test]
    fn roundtrip_preserves_vertices_and_flags() {
        let dir = TempDir::new().unwrap();
        write_gt(
            dir.path(),
            "a",
            "1,2,11.5,2,11.5,7.25,1,7.25\n0,0,4,0,4,4,0,4,###\n",
        );
        let recs = load_annotations(dir.path()).unwrap();
        let text = serialize_instances(&recs[0].instances);

        let dir2 = TempDir::new().unwrap();
        write_gt(dir2.path(), "a", &text);
        let recs2 = load_annotations(dir2.path()).unwrap();
        assert_eq!(recs2[0].instances.len(), 2);
        for (a, b) in recs[0].instances.iter().zip(&recs2[0].instances) {
            assert_eq!(a.ignore, b.ignore);
            for (va, vb) in a.polygon.vertices().iter().zip(b.polygon.vertices()) {
                assert!((va.x - vb.x).abs() < 1e-6 && (va.y - vb.y).abs() < 1e-6);
            }
        }
        // second serialization is byte-stable
        assert_eq!(text, serialize_instances(&recs2[0].instances));
    }
}
