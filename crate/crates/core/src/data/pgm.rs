//! Binary PGM (P5, maxval 255) for grayscale grids in [0, 1].

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub fn write_pgm(path: &Path, width: u32, height: u32, pixels: &[f64]) -> Result<()> {
    assert_eq!(pixels.len(), (width * height) as usize);
    let mut buf = format!("P5\n{width} {height}\n255\n").into_bytes();
    buf.extend(
        pixels
            .iter()
            .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8),
    );
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn read_pgm(path: &Path) -> Result<(u32, u32, Vec<f64>)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let err = |msg: &str| Error::Parse {
        file: path.to_path_buf(),
        line: 0,
        msg: msg.into(),
    };
    if !bytes.starts_with(b"P5") {
        return Err(err("not a binary PGM (missing P5 magic)"));
    }
    // header: three whitespace-separated integers after the magic
    let mut pos = 2usize;
    let mut fields = [0u32; 3];
    for field in fields.iter_mut() {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(err("truncated PGM header"));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .unwrap()
            .parse()
            .map_err(|_| err("bad PGM header field"))?;
    }
    let (w, h, maxval) = (fields[0], fields[1], fields[2]);
    if maxval != 255 {
        return Err(err("only maxval 255 is supported"));
    }
    pos += 1; // single whitespace after maxval
    let need = (w * h) as usize;
    if bytes.len() < pos + need {
        return Err(err("truncated PGM payload"));
    }
    let pixels = bytes[pos..pos + need]
        .iter()
        .map(|&b| b as f64 / 255.0)
        .collect();
    Ok((w, h, pixels))
}
