//! Binary PGM (P5) rasters: one byte per cell, 255 in-set, 0 out; row 0 holds
//! the cells with `j = 0`.

use std::fs;
use std::path::Path;

use super::{Adjacency, ComponentLabeling, GridResolution, TorusGridSet};
use crate::error::{Error, Result};

fn encode(n: usize, bytes: impl Iterator<Item = u8>) -> Vec<u8> {
    let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
    out.extend(bytes);
    out
}

pub fn encode_set(s: &TorusGridSet) -> Vec<u8> {
    encode(s.n(), s.mask().iter().map(|&c| if c { 255 } else { 0 }))
}

/// Component labels recolored to `1..=255` (cycling), background 0.
pub fn encode_labels(l: &ComponentLabeling, n: usize) -> Vec<u8> {
    encode(
        n,
        (0..n * n).map(|k| match l.label_index(k) {
            Some(id) => (id % 255) as u8 + 1,
            None => 0,
        }),
    )
}

fn token<'a>(data: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    loop {
        while *pos < data.len() && data[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < data.len() && data[*pos] == b'#' {
            while *pos < data.len() && data[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Raster("truncated header".into()));
    }
    Ok(&data[start..*pos])
}

fn number(data: &[u8], pos: &mut usize) -> Result<usize> {
    let t = token(data, pos)?;
    std::str::from_utf8(t)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Raster(format!("bad header field {:?}", String::from_utf8_lossy(t))))
}

/// Decodes a P5 raster; any nonzero byte counts as in-set.
pub fn decode_set(data: &[u8], adjacency: Adjacency) -> Result<TorusGridSet> {
    let mut pos = 0;
    if token(data, &mut pos)? != b"P5" {
        return Err(Error::Raster("not a binary PGM (P5)".into()));
    }
    let w = number(data, &mut pos)?;
    let h = number(data, &mut pos)?;
    let maxval = number(data, &mut pos)?;
    if w != h {
        return Err(Error::Raster(format!("image is {w}x{h}, not square")));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::Raster(format!("unsupported maxval {maxval}")));
    }
    let res = GridResolution::new(w).map_err(|_| Error::Raster(format!("side {w} is not a power of two >= 8")))?;
    pos += 1;
    let body = data
        .get(pos..pos + w * h)
        .ok_or_else(|| Error::Raster("truncated pixel data".into()))?;
    Ok(TorusGridSet::from_mask(
        res,
        adjacency,
        body.iter().map(|&b| b != 0).collect(),
    ))
}

pub fn write_set(path: &Path, s: &TorusGridSet) -> Result<()> {
    fs::write(path, encode_set(s))?;
    Ok(())
}

pub fn read_set(path: &Path, adjacency: Adjacency) -> Result<TorusGridSet> {
    decode_set(&fs::read(path)?, adjacency)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = GridResolution::new(16).unwrap();
        let s = TorusGridSet::from_fn(r, Adjacency::EIGHT, |i, j| (i * 7 + j * 3) % 5 == 0);
        let back = decode_set(&encode_set(&s), Adjacency::EIGHT).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn row_zero_is_first_row() {
        let r = GridResolution::new(8).unwrap();
        let s = TorusGridSet::from_cells(r, Adjacency::EIGHT, [(3, 0)]);
        let bytes = encode_set(&s);
        let header = b"P5\n8 8\n255\n".len();
        assert_eq!(bytes[header + 3], 255);
        assert_eq!(bytes[header..].iter().filter(|&&b| b == 255).count(), 1);
    }

    #[test]
    fn rejects_bad_shapes() {
        let rect = [b"P5\n8 16\n255\n".as_slice(), &[0u8; 128]].concat();
        assert!(decode_set(&rect, Adjacency::EIGHT).is_err());
        let odd = [b"P5\n12 12\n255\n".as_slice(), &[0u8; 144]].concat();
        assert!(decode_set(&odd, Adjacency::EIGHT).is_err());
        let short = [b"P5\n8 8\n255\n".as_slice(), &[0u8; 10]].concat();
        assert!(decode_set(&short, Adjacency::EIGHT).is_err());
    }
}
