use std::fs;
use std::io;
use std::path::Path;

use conemetric::{rho_eval, ConeDensityQuery, Error, SignatureParam};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::Format;
use crate::numfmt::round_sig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridLayout {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRecord {
    pub re: f64,
    pub im: f64,
    pub rho: f64,
    pub method: String,
    pub est_rel_err: f64,
}

impl GridLayout {
    pub fn validate(&self) -> Result<SignatureParam, Error> {
        let bounds = [self.re_min, self.re_max, self.im_min, self.im_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("grid bounds must be finite".into()));
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(Error::Domain("grid bounds need re_min < re_max and im_min < im_max".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::Domain(format!("grid needs nx, ny >= 2, got {} x {}", self.nx, self.ny)));
        }
        SignatureParam::from_alpha(self.alpha)
    }

    /// Nodes in output order: imaginary part major, real part minor, both
    /// ascending.
    pub fn nodes(&self) -> Vec<Complex64> {
        let axis = |lo: f64, hi: f64, n: usize, k: usize| {
            if k == n - 1 {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        (0..self.ny)
            .flat_map(|j| {
                (0..self.nx).map(move |i| {
                    Complex64::new(axis(self.re_min, self.re_max, self.nx, i), axis(self.im_min, self.im_max, self.ny, j))
                })
            })
            .collect()
    }
}

fn is_puncture(z: Complex64) -> bool {
    z.im == 0.0 && (z.re == 0.0 || z.re == 1.0)
}

/// Evaluates every node except the punctures, which are returned separately.
pub fn evaluate(layout: &GridLayout, digits: u8) -> Result<(Vec<GridRecord>, Vec<Complex64>), Error> {
    let s = layout.validate()?;
    let nodes = layout.nodes();
    let skipped: Vec<Complex64> = nodes.iter().copied().filter(|&z| is_puncture(z)).collect();
    let records = nodes
        .par_iter()
        .filter(|&&z| !is_puncture(z))
        .map(|&z| {
            let r = rho_eval(&ConeDensityQuery::new(s, z)?)?;
            Ok(GridRecord {
                re: z.re,
                im: z.im,
                rho: round_sig(r.value, digits),
                method: format!("{}+{}", r.method, r.method_star),
                est_rel_err: round_sig(r.est_rel_err, 3),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok((records, skipped))
}

pub fn render(records: &[GridRecord], format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if records.is_empty() {
                w.write_record(["re", "im", "rho", "method", "est_rel_err"])?;
            }
            for r in records {
                w.serialize(r)?;
            }
            w.into_inner().map_err(|e| e.into_error())
        }
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(records)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

/// Writes `bytes` to `path`; a partially written file is removed.
pub fn write_output(path: &Path, bytes: &[u8]) -> io::Result<()> {
    fs::write(path, bytes).map_err(|e| {
        let _ = fs::remove_file(path);
        io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(re: (f64, f64), im: (f64, f64), nx: usize, ny: usize) -> GridLayout {
        GridLayout { re_min: re.0, re_max: re.1, im_min: im.0, im_max: im.1, nx, ny, alpha: 0.0 }
    }

    #[test]
    fn node_order_is_im_major() {
        let nodes = layout((-1.0, 2.0), (-1.0, 1.0), 2, 2).nodes();
        let expected = [(-1.0, -1.0), (2.0, -1.0), (-1.0, 1.0), (2.0, 1.0)];
        for (z, (re, im)) in nodes.iter().zip(expected) {
            assert_eq!(*z, Complex64::new(re, im));
        }
    }

    #[test]
    fn punctures_are_skipped() {
        let (records, skipped) = evaluate(&layout((0.0, 2.0), (-1.0, 1.0), 3, 3), 15).unwrap();
        assert_eq!(records.len(), 7);
        assert_eq!(skipped, vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!(records.iter().all(|r| r.rho > 0.0));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(evaluate(&layout((1.0, 0.0), (0.0, 1.0), 2, 2), 15).is_err());
        assert!(evaluate(&layout((0.0, 1.0), (0.0, 1.0), 1, 2), 15).is_err());
        let mut s = layout((0.0, 1.0), (0.0, 1.0), 2, 2);
        s.alpha = 1.0;
        assert!(evaluate(&s, 15).is_err());
    }

    #[test]
    fn csv_and_json_share_keys() {
        let (records, _) = evaluate(&layout((-1.0, 2.0), (-1.0, 1.0), 2, 2), 15).unwrap();
        let csv = String::from_utf8(render(&records, Format::Csv).unwrap()).unwrap();
        assert!(csv.starts_with("re,im,rho,method,est_rel_err\n"));
        assert_eq!(csv.lines().count(), 5);
        let json: serde_json::Value = serde_json::from_slice(&render(&records, Format::Json).unwrap()).unwrap();
        let rows = json.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        for key in ["re", "im", "rho", "method", "est_rel_err"] {
            assert!(rows[0].get(key).is_some());
        }
    }

    #[test]
    fn empty_csv_still_has_header() {
        let bytes = render(&[], Format::Csv).unwrap();
        assert_eq!(bytes, b"re,im,rho,method,est_rel_err\n");
    }
}
