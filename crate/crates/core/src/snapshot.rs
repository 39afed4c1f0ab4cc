//! ZK1 binary snapshots.
//!
//! Layout: magic `ZK1\0`, little-endian `u64 M`, `f64 L`, `f64 t`, then one
//! block of `M` `(re, im)` f64 pairs per stored field, in wavenumber order
//! `j = −M/2 … M/2 − 1`.

use std::io::{ErrorKind, Read, Write};

use num_complex::Complex64 as C64;

use crate::error::{Result, ZakharovError};
use crate::spectral::{Grid, SpectralField};

pub const MAGIC: [u8; 4] = *b"ZK1\0";

/// Header shared by all blocks of one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Header {
    pub grid: Grid,
    pub t: f64,
}

pub fn write_header<W: Write>(w: &mut W, grid: Grid, t: f64) -> Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&(grid.points() as u64).to_le_bytes())?;
    w.write_all(&grid.length().to_le_bytes())?;
    w.write_all(&t.to_le_bytes())?;
    Ok(())
}

pub fn write_block<W: Write>(w: &mut W, f: &SpectralField) -> Result<()> {
    let mut buf = Vec::with_capacity(16 * f.grid().points());
    for c in f.to_wavenumber_order() {
        buf.extend_from_slice(&c.re.to_le_bytes());
        buf.extend_from_slice(&c.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Writes a header followed by one block per field.
pub fn write_record<W: Write>(w: &mut W, t: f64, fields: &[&SpectralField]) -> Result<()> {
    let grid = fields
        .first()
        .map(|f| f.grid())
        .ok_or_else(|| ZakharovError::Format("record needs at least one field".into()))?;
    if fields.iter().any(|f| f.grid() != grid) {
        return Err(ZakharovError::GridMismatch);
    }
    write_header(w, grid, t)?;
    for f in fields {
        write_block(w, f)?;
    }
    Ok(())
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

/// Reads a header; `Ok(None)` at a clean end of stream.
pub fn read_header<R: Read>(r: &mut R) -> Result<Option<Header>> {
    let mut magic = [0u8; 4];
    match r.read_exact(&mut magic) {
        Ok(()) => {}
        Err(e) if e.kind() == ErrorKind::UnexpectedEof => return Ok(None),
        Err(e) => return Err(e.into()),
    }
    if magic != MAGIC {
        return Err(ZakharovError::Format(format!("bad magic {magic:?}")));
    }
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    let m = u64::from_le_bytes(b);
    let m = usize::try_from(m).map_err(|_| ZakharovError::Format(format!("point count {m}")))?;
    let length = read_f64(r)?;
    let t = read_f64(r)?;
    let grid = Grid::new(length, m).map_err(|e| ZakharovError::Format(e.to_string()))?;
    Ok(Some(Header { grid, t }))
}

pub fn read_block<R: Read>(r: &mut R, grid: Grid) -> Result<SpectralField> {
    let m = grid.points();
    let mut raw = vec![0u8; 16 * m];
    r.read_exact(&mut raw)?;
    let coeffs: Vec<C64> = raw
        .chunks_exact(16)
        .map(|ch| {
            let re = f64::from_le_bytes(ch[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(ch[8..].try_into().expect("8 bytes"));
            C64::new(re, im)
        })
        .collect();
    SpectralField::from_wavenumber_order(grid, &coeffs)
}

/// Reads a header and exactly `count` blocks; `Ok(None)` at end of stream.
pub fn read_record<R: Read>(r: &mut R, count: usize) -> Result<Option<(Header, Vec<SpectralField>)>> {
    let Some(h) = read_header(r)? else {
        return Ok(None);
    };
    let fields = (0..count)
        .map(|_| read_block(r, h.grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((h, fields)))
}

/// Reads a header followed by blocks until end of stream.
pub fn read_all_blocks<R: Read>(r: &mut R) -> Result<(Header, Vec<SpectralField>)> {
    let h = read_header(r)?.ok_or_else(|| ZakharovError::Format("empty stream".into()))?;
    let mut out = Vec::new();
    let block = 16 * h.grid.points();
    let mut raw = Vec::new();
    r.read_to_end(&mut raw)?;
    if raw.len() % block != 0 {
        return Err(ZakharovError::Format(format!(
            "trailing {} bytes after last block",
            raw.len() % block
        )));
    }
    for chunk in raw.chunks_exact(block) {
        out.push(read_block(&mut &chunk[..], h.grid)?);
    }
    Ok((h, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_two_blocks() {
        let g = Grid::new(3.0, 8).unwrap();
        let a = SpectralField::from_fn(g, |x| C64::new(x.sin(), x.cos()));
        let b = SpectralField::plane_wave(g, -4, C64::new(2.0, -1.0));
        let mut buf = Vec::new();
        write_record(&mut buf, 0.25, &[&a, &b]).unwrap();
        assert_eq!(buf.len(), 4 + 8 * 3 + 2 * 8 * 16);
        assert_eq!(&buf[..4], b"ZK1\0");
        let (h, fields) = read_record(&mut buf.as_slice(), 2).unwrap().unwrap();
        assert_eq!(h.t, 0.25);
        assert_eq!(h.grid, g);
        assert_eq!(fields[0], a);
        assert_eq!(fields[1], b);
        // first pair is mode −M/2
        let re = f64::from_le_bytes(buf[28..36].try_into().unwrap());
        assert_eq!(re, a.coeff(-4).re);
    }

    #[test]
    fn bad_magic() {
        let buf = b"ZK2\0aaaaaaaaaaaaaaaaaaaaaaaa".to_vec();
        assert!(matches!(read_header(&mut buf.as_slice()), Err(ZakharovError::Format(_))));
    }

    #[test]
    fn truncated_block() {
        let g = Grid::new(1.0, 4).unwrap();
        let mut buf = Vec::new();
        write_record(&mut buf, 0.0, &[&SpectralField::zeros(g)]).unwrap();
        buf.pop();
        assert!(read_record(&mut buf.as_slice(), 1).is_err());
        assert!(read_all_blocks(&mut buf.as_slice()).is_err());
    }
}
