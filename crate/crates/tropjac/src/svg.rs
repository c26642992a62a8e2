//! SVG rendering of cell complexes whose top cells have dimension at most
//! two.
//!
//! Each top-dimensional cell is drawn in its own quotient coordinates and
//! the cells are laid out left to right. Coordinates are scaled by a fixed
//! factor and rounded to hundredths of a pixel in exact arithmetic, so
//! identical inputs produce identical bytes.

use std::cmp::Ordering;

use tropjac_core::geometry::QuotientCell;
use tropjac_core::rat::{floor_i64, rat, ratio, zero};
use tropjac_core::Rat;

use crate::{CliError, CliResult};

/// Pixels per unit of length.
const SCALE: i64 = 96;
/// Page margin in pixels.
const MARGIN: i64 = 24;
/// Horizontal gap between cells in pixels.
const GAP: i64 = 48;

/// Format a nonnegative pixel coordinate, rounded to hundredths.
fn px(v: &Rat) -> String {
    let cents = floor_i64(&(v * rat(100) + ratio(1, 2)));
    debug_assert!(cents >= 0, "layout keeps coordinates nonnegative");
    if cents % 100 == 0 {
        format!("{}", cents / 100)
    } else {
        format!("{}.{:02}", cents / 100, cents % 100)
    }
}

/// The (x, y) of a quotient point; missing coordinates read as zero so
/// zero- and one-dimensional quotients share the code path.
fn xy(p: &[Rat]) -> (Rat, Rat) {
    let x = p.first().cloned().unwrap_or_else(zero);
    let y = p.get(1).cloned().unwrap_or_else(zero);
    (x, y)
}

/// Order the vertices of a convex polygon counterclockwise around their
/// centroid. Exact: points are compared by half-plane, then by cross product.
fn ring_order(points: &[(Rat, Rat)]) -> Vec<usize> {
    let n = rat(points.len() as i64);
    let cx: Rat = points.iter().map(|(x, _)| x.clone()).sum::<Rat>() / n.clone();
    let cy: Rat = points.iter().map(|(_, y)| y.clone()).sum::<Rat>() / n;
    let lower_half = |i: usize| -> bool {
        let (x, y) = &points[i];
        *y < cy || (*y == cy && *x < cx)
    };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        match lower_half(a).cmp(&lower_half(b)) {
            Ordering::Equal => {}
            other => return other,
        }
        let (ax, ay) = &points[a];
        let (bx, by) = &points[b];
        let cross = (ax - &cx) * (by - &cy) - (ay - &cy) * (bx - &cx);
        if cross > zero() {
            Ordering::Less
        } else if cross < zero() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    order
}

/// Render the given cells side by side. Every cell must be a bounded
/// polytope of dimension at most two.
pub fn render_cells(cells: &[&QuotientCell]) -> CliResult<String> {
    for cell in cells {
        if cell.cone {
            return Err(CliError::Domain(
                "svg output draws bounded cells only, not cones".into(),
            ));
        }
        if cell.dim > 2 {
            return Err(CliError::Domain(format!(
                "svg output needs cells of dimension at most 2, found dimension {}",
                cell.dim
            )));
        }
    }

    // Per-cell bounding boxes in quotient coordinates.
    let mut boxes = Vec::with_capacity(cells.len());
    for cell in cells {
        let pts: Vec<(Rat, Rat)> = cell.points.iter().map(|p| xy(p)).collect();
        assert!(!pts.is_empty(), "cells carry at least one point");
        let min_x = pts.iter().map(|(x, _)| x.clone()).min().expect("nonempty");
        let max_x = pts.iter().map(|(x, _)| x.clone()).max().expect("nonempty");
        let min_y = pts.iter().map(|(_, y)| y.clone()).min().expect("nonempty");
        let max_y = pts.iter().map(|(_, y)| y.clone()).max().expect("nonempty");
        boxes.push((pts, min_x, max_x, min_y, max_y));
    }

    let scale = rat(SCALE);
    let margin = rat(MARGIN);
    let page_h = boxes
        .iter()
        .map(|(_, _, _, min_y, max_y)| (max_y - min_y) * &scale)
        .max()
        .unwrap_or_else(zero)
        + &margin * rat(2);
    let mut body = String::new();
    let mut offset = margin.clone();
    for (cell, (pts, min_x, max_x, _min_y, max_y)) in cells.iter().zip(&boxes) {
        let place = |x: &Rat, y: &Rat| -> (Rat, Rat) {
            ((&offset + (x - min_x) * &scale), (&margin + (max_y - y) * &scale))
        };
        let placed: Vec<(Rat, Rat)> = pts.iter().map(|(x, y)| place(x, y)).collect();
        match cell.dim {
            0 => {
                let (x, y) = &placed[0];
                body.push_str(&format!(
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#2b4a7d\"/>\n",
                    px(x),
                    px(y)
                ));
            }
            1 => {
                assert_eq!(placed.len(), 2, "a segment has two extreme points");
                body.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#2b4a7d\" stroke-width=\"2\"/>\n",
                    px(&placed[0].0),
                    px(&placed[0].1),
                    px(&placed[1].0),
                    px(&placed[1].1)
                ));
            }
            _ => {
                let ring = ring_order(pts);
                let coords: Vec<String> = ring
                    .iter()
                    .map(|&i| format!("{},{}", px(&placed[i].0), px(&placed[i].1)))
                    .collect();
                body.push_str(&format!(
                    "  <polygon points=\"{}\" fill=\"#dbe7f6\" stroke=\"#2b4a7d\" stroke-width=\"2\"/>\n",
                    coords.join(" ")
                ));
            }
        }
        offset = offset + (max_x - min_x) * &scale + rat(GAP);
    }
    let page_w = offset - rat(GAP) + margin;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        px(&page_w),
        px(&page_h),
        px(&page_w),
        px(&page_h)
    ));
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Pick the top-dimensional cells of a complex for rendering.
pub fn top_cells(cells: &[QuotientCell]) -> Vec<&QuotientCell> {
    let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    cells.iter().filter(|c| c.dim == top).collect()
}
