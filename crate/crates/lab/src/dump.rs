//! Trajectory dumps: `key = value` metadata lines, a blank line, then one
//! ZK1 record `(u, n₊, n₋)` per stored state.

use zakharov_core::snapshot::write_record;
use zakharov_core::FirstOrderState;

pub fn trajectory_dump(meta: &[(&str, String)], states: &[FirstOrderState]) -> zakharov_core::Result<Vec<u8>> {
    let mut out = Vec::new();
    for (k, v) in meta {
        out.extend_from_slice(format!("{k} = {v}\n").as_bytes());
    }
    out.push(b'\n');
    for s in states {
        write_record(&mut out, s.t, &[&s.u, &s.n_plus, &s.n_minus])?;
    }
    Ok(out)
}

/// Splits a dump into its metadata pairs and the record bytes.
pub fn split_dump(bytes: &[u8]) -> Option<(Vec<(String, String)>, &[u8])> {
    let pos = bytes.windows(2).position(|w| w == b"\n\n").map(|p| p + 2).or_else(|| {
        (bytes.first() == Some(&b'\n')).then_some(1)
    })?;
    let head = std::str::from_utf8(&bytes[..pos]).ok()?;
    let meta = head
        .lines()
        .filter(|l| !l.is_empty())
        .filter_map(|l| l.split_once(" = ").map(|(k, v)| (k.to_string(), v.to_string())))
        .collect();
    Some((meta, &bytes[pos..]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zakharov_core::snapshot::read_record;
    use zakharov_core::Grid;

    #[test]
    fn round_trip() {
        let g = Grid::new(1.0, 8).unwrap();
        let states = vec![FirstOrderState::zeros(g, 0.0), FirstOrderState::zeros(g, 0.5)];
        let bytes = trajectory_dump(&[("method", "splitting".into()), ("dt", "0.5".into())], &states).unwrap();
        let (meta, mut rest) = split_dump(&bytes).unwrap();
        assert_eq!(meta[0], ("method".to_string(), "splitting".to_string()));
        let (h0, _) = read_record(&mut rest, 3).unwrap().unwrap();
        let (h1, _) = read_record(&mut rest, 3).unwrap().unwrap();
        assert_eq!((h0.t, h1.t), (0.0, 0.5));
        assert!(read_record(&mut rest, 3).unwrap().is_none());
    }
}
