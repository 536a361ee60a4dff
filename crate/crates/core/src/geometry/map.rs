//! Loader for axis-aligned street maps.
//!
//! ```text
//! bbox <width_m> <height_m>
//! H <y_m>        # horizontal street
//! V <x_m>        # vertical street
//! ```
//!
//! Coordinates are measured from the lower-left corner of the bounding box.
//! The loader shifts them so the receiver sits at the origin: x is centred on
//! the box, and the horizontal street nearest the box centre becomes `y = 0`.

use super::{Bounds, GeometryError, Result, StreetLayout, StreetSource};
use std::path::Path;

/// Result of parsing a map file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedMap {
    pub layout: StreetLayout,
    pub width: f64,
    pub height: f64,
    /// Street lines dropped because they repeated an earlier line.
    pub duplicates: usize,
}

impl ParsedMap {
    /// Street intensities fitted from counts over the box extents.
    pub fn densities(&self) -> MapDensities {
        MapDensities {
            lambda_h: self.layout.horizontal_intercepts.len() as f64 / self.height,
            lambda_v: self.layout.vertical_intercepts.len() as f64 / self.width,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapDensities {
    /// Horizontal streets per meter of height.
    pub lambda_h: f64,
    /// Vertical streets per meter of width.
    pub lambda_v: f64,
}

impl MapDensities {
    /// Mean spacing between vertical streets.
    pub fn spacing_h(&self) -> f64 {
        1.0 / self.lambda_v
    }

    /// Mean spacing between horizontal streets.
    pub fn spacing_v(&self) -> f64 {
        1.0 / self.lambda_h
    }
}

pub fn load_street_map(path: impl AsRef<Path>) -> Result<ParsedMap> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GeometryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_street_map(&text)
}

fn parse_number(token: Option<&str>, line: usize, what: &str) -> Result<f64> {
    let token = token.ok_or_else(|| GeometryError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    let v: f64 = token.parse().map_err(|_| GeometryError::Parse {
        line,
        message: format!("{what} {token:?} is not a number"),
    })?;
    if !v.is_finite() {
        return Err(GeometryError::Parse {
            line,
            message: format!("{what} must be finite"),
        });
    }
    Ok(v)
}

pub fn parse_street_map(text: &str) -> Result<ParsedMap> {
    let mut bbox: Option<(f64, f64)> = None;
    let mut horizontal: Vec<f64> = Vec::new();
    let mut vertical: Vec<f64> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().expect("non-empty line has a token");
        match (keyword, bbox) {
            ("bbox", None) => {
                let w = parse_number(tokens.next(), line_no, "bbox width")?;
                let h = parse_number(tokens.next(), line_no, "bbox height")?;
                if !(w > 0.0 && h > 0.0) {
                    return Err(GeometryError::Parse {
                        line: line_no,
                        message: format!("bbox extents must be positive, got {w} x {h}"),
                    });
                }
                bbox = Some((w, h));
            }
            ("bbox", Some(_)) => {
                return Err(GeometryError::Parse {
                    line: line_no,
                    message: "repeated bbox header".into(),
                })
            }
            (_, None) => {
                return Err(GeometryError::Parse {
                    line: line_no,
                    message: "expected `bbox <width> <height>` before any street".into(),
                })
            }
            ("H" | "h", Some((_, h))) => {
                let y = parse_number(tokens.next(), line_no, "y coordinate")?;
                check_inside(y, h, line_no)?;
                horizontal.push(y);
            }
            ("V" | "v", Some((w, _))) => {
                let x = parse_number(tokens.next(), line_no, "x coordinate")?;
                check_inside(x, w, line_no)?;
                vertical.push(x);
            }
            (other, Some(_)) => {
                return Err(GeometryError::Parse {
                    line: line_no,
                    message: format!("unknown record {other:?}; expected H or V"),
                })
            }
        }
        if let Some(extra) = tokens.next() {
            return Err(GeometryError::Parse {
                line: line_no,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
    }

    let (width, height) =
        bbox.ok_or_else(|| GeometryError::Validation("missing bbox header".into()))?;
    if horizontal.is_empty() && vertical.is_empty() {
        return Err(GeometryError::Validation("map declares no streets".into()));
    }
    if horizontal.is_empty() {
        return Err(GeometryError::Validation(
            "map needs at least one horizontal street for the receiver".into(),
        ));
    }

    let raw_count = horizontal.len() + vertical.len();
    horizontal.sort_by(f64::total_cmp);
    horizontal.dedup();
    vertical.sort_by(f64::total_cmp);
    vertical.dedup();
    let duplicates = raw_count - horizontal.len() - vertical.len();
    if duplicates > 0 {
        log::warn!("street map: dropped {duplicates} duplicate street line(s)");
    }

    let y_center = 0.5 * height;
    let y0 = *horizontal
        .iter()
        .min_by(|a, b| (*a - y_center).abs().total_cmp(&(*b - y_center).abs()))
        .expect("at least one horizontal street");
    let x0 = 0.5 * width;

    let bounds = Bounds {
        x_min: -x0,
        x_max: width - x0,
        y_min: -y0,
        y_max: height - y0,
    };
    let horizontal: Vec<f64> = horizontal.iter().map(|y| y - y0).collect();
    let vertical: Vec<f64> = vertical.iter().map(|x| x - x0).collect();
    let layout = StreetLayout::new(horizontal, vertical, bounds, StreetSource::LoadedMap)?;
    Ok(ParsedMap {
        layout,
        width,
        height,
        duplicates,
    })
}

fn check_inside(v: f64, limit: f64, line: usize) -> Result<()> {
    if (0.0..=limit).contains(&v) {
        Ok(())
    } else {
        Err(GeometryError::OutOfBounds {
            line,
            coordinate: v,
            limit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(h: usize, v: usize) -> String {
        let mut s = String::from("# test map\nbbox 1659 2002\n");
        for i in 0..h {
            s.push_str(&format!("H {}\n", 100.0 + 230.0 * i as f64));
        }
        for i in 0..v {
            s.push_str(&format!("V {}  # avenue\n", 50.0 + 105.0 * i as f64));
        }
        s
    }

    #[test]
    fn counts_streets() {
        let m = parse_street_map(&sample(8, 15)).unwrap();
        assert_eq!(m.layout.horizontal_intercepts.len(), 8);
        assert_eq!(m.layout.vertical_intercepts.len(), 15);
        assert_eq!(m.layout.source, StreetSource::LoadedMap);
        assert!(m.layout.horizontal_intercepts.contains(&0.0));
        assert_eq!(m.duplicates, 0);
    }

    #[test]
    fn receiver_street_is_nearest_center() {
        let m = parse_street_map("bbox 100 100\nH 10\nH 45\nH 70\nV 20\n").unwrap();
        assert_eq!(m.layout.horizontal_intercepts, vec![-35.0, 0.0, 25.0]);
        assert_eq!(m.layout.vertical_intercepts, vec![-30.0]);
        assert_eq!(m.layout.bounds.y_min, -45.0);
        assert_eq!(m.layout.bounds.x_max, 50.0);
    }

    #[test]
    fn empty_street_list_is_invalid() {
        let e = parse_street_map("bbox 100 100\n# nothing\n").unwrap_err();
        assert!(matches!(e, GeometryError::Validation(_)));
    }

    #[test]
    fn duplicates_are_counted() {
        let m = parse_street_map("bbox 100 100\nH 10\nH 10\nV 5\nV 5\nV 5\n").unwrap();
        assert_eq!(m.duplicates, 3);
        assert_eq!(m.layout.street_count(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_street_map("bbox 100 100\nH 10\nQ 3\n").unwrap_err();
        assert!(matches!(e, GeometryError::Parse { line: 3, .. }), "{e}");
        let e = parse_street_map("bbox 100 100\n\nH abc\n").unwrap_err();
        assert!(matches!(e, GeometryError::Parse { line: 3, .. }), "{e}");
        let e = parse_street_map("H 10\n").unwrap_err();
        assert!(matches!(e, GeometryError::Parse { line: 1, .. }), "{e}");
        let e = parse_street_map("bbox 100 100\nH 10 20\n").unwrap_err();
        assert!(matches!(e, GeometryError::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn out_of_bbox_is_reported() {
        let e = parse_street_map("bbox 100 100\nH 10\nV 150\n").unwrap_err();
        assert!(
            matches!(e, GeometryError::OutOfBounds { line: 3, .. }),
            "{e}"
        );
    }

    #[test]
    fn densities_from_counts() {
        let m = parse_street_map(&sample(8, 15)).unwrap();
        let d = m.densities();
        assert!((d.lambda_h - 8.0 / 2002.0).abs() < 1e-15);
        assert!((d.lambda_v - 15.0 / 1659.0).abs() < 1e-15);
    }
}
