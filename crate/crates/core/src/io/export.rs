use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudFormat {
    Csv,
    /// ASCII PLY with the three listed coordinates as `x, y, z` and the
    /// remaining one as the scalar property `w`.
    Ply { axes: [usize; 3] },
}

/// `%.12g`: twelve significant digits, trailing zeros removed.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..12).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_cloud_csv(points: &[[f64; 4]]) -> String {
    let mut out = String::from("x1,x2,x3,x4\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_g12(p[0]),
            format_g12(p[1]),
            format_g12(p[2]),
            format_g12(p[3])
        );
    }
    out
}

pub fn write_cloud_ply(points: &[[f64; 4]], axes: [usize; 3]) -> String {
    let rest = (0..4).find(|a| !axes.contains(a)).unwrap_or(3);
    let mut out = String::new();
    let _ = write!(
        out,
        "ply\nformat ascii 1.0\ncomment wildknot cloud v1\ncomment axes x{} x{} x{} scalar x{}\n\
         element vertex {}\nproperty double x\nproperty double y\nproperty double z\nproperty double w\nend_header\n",
        axes[0] + 1,
        axes[1] + 1,
        axes[2] + 1,
        rest + 1,
        points.len()
    );
    for p in points {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            format_g12(p[axes[0]]),
            format_g12(p[axes[1]]),
            format_g12(p[axes[2]]),
            format_g12(p[rest])
        );
    }
    out
}

pub fn export_cloud(points: &[[f64; 4]], format: CloudFormat, path: &Path) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let text = match format {
        CloudFormat::Csv => write_cloud_csv(points),
        CloudFormat::Ply { axes } => write_cloud_ply(points, axes),
    };
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_cloud_csv(text: &str) -> Result<Vec<[f64; 4]>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "x1,x2,x3,x4" => {}
        _ => return Err(Error::parse("header", "expected x1,x2,x3,x4")),
    }
    let mut out = Vec::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(crate::error::ParseError {
                line: Some(n + 1),
                field: "point".into(),
                message: e.to_string(),
            }))?;
        if vals.len() != 4 {
            return Err(Error::Parse(crate::error::ParseError {
                line: Some(n + 1),
                field: "point".into(),
                message: format!("expected 4 values, got {}", vals.len()),
            }));
        }
        out.push([vals[0], vals[1], vals[2], vals[3]]);
    }
    Ok(out)
}

/// Points with `|x_axis - value| < thickness`.
pub fn slice_cloud(points: &[[f64; 4]], axis: usize, value: f64, thickness: f64) -> Vec<[f64; 4]> {
    points
        .iter()
        .filter(|p| (p[axis] - value).abs() < thickness)
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12() {
        assert_eq!(format_g12(1.0), "1");
        assert_eq!(format_g12(-0.5), "-0.5");
        assert_eq!(format_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_g12(2426.06421), "2426.06421");
        assert_eq!(format_g12(1e-7), "1e-07");
        assert_eq!(format_g12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_g12(0.0001234), "0.0001234");
    }

    #[test]
    fn one_point_csv() {
        let s = write_cloud_csv(&[[1.0, 2.0, 3.0, 4.0]]);
        assert_eq!(s, "x1,x2,x3,x4\n1,2,3,4\n");
        assert_eq!(read_cloud_csv(&s).unwrap(), vec![[1.0, 2.0, 3.0, 4.0]]);
    }

    #[test]
    fn ply_header() {
        let s = write_cloud_ply(&[[1.0, 2.0, 3.0, 4.0]], [0, 1, 3]);
        assert!(s.contains("element vertex 1"));
        assert!(s.ends_with("1 2 4 3\n"));
    }

    #[test]
    fn slicing() {
        let pts = [[0.0, 0.0, 0.0, 0.05], [0.0, 0.0, 0.0, 0.2]];
        assert_eq!(slice_cloud(&pts, 3, 0.0, 0.1).len(), 1);
    }

    #[test]
    fn empty_cloud_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            export_cloud(&[], CloudFormat::Csv, &dir.path().join("c.csv")),
            Err(Error::EmptyCloud)
        ));
    }
}
