//! Zero contours of the locus functions on 2D slices of a sweep, by
//! marching squares. Output is polyline data for external plotting.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::loci::LocusFn;
use crate::sweep::SweepResult;

/// One segment of a zero contour in parameter coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub function: LocusFn,
    /// Position along the third ranged axis, if there is one.
    pub slice: Option<usize>,
    pub start: (f64, f64),
    pub end: (f64, f64),
}

fn interpolate(p: (f64, f64), q: (f64, f64), vp: f64, vq: f64) -> (f64, f64) {
    let t = vp / (vp - vq);
    (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
}

/// Segments of one grid square with corners listed counter-clockwise.
fn square(corners: [(f64, f64); 4], vals: [f64; 4], out: &mut Vec<((f64, f64), (f64, f64))>) {
    if vals.iter().any(|v| !v.is_finite()) {
        return;
    }
    let inside = vals.map(|v| v > 0.0);
    // edge k joins corners k and k+1
    let crossing = |k: usize| {
        let j = (k + 1) % 4;
        (inside[k] != inside[j]).then(|| interpolate(corners[k], corners[j], vals[k], vals[j]))
    };
    let edges: Vec<(usize, (f64, f64))> =
        (0..4).filter_map(|k| crossing(k).map(|p| (k, p))).collect();
    match edges.len() {
        2 => out.push((edges[0].1, edges[1].1)),
        4 => {
            // saddle: cut off the corners that disagree with the centre
            let centre = vals.iter().sum::<f64>() / 4.0 > 0.0;
            let at = |k: usize| edges.iter().find(|(e, _)| *e == k).unwrap().1;
            for c in 0..4 {
                if inside[c] != centre {
                    out.push((at((c + 3) % 4), at(c)));
                }
            }
        }
        _ => {}
    }
}

/// Zero contours of `f` over the first two ranged axes, one slice per grid
/// value of a third axis.
pub fn zero_contours(result: &SweepResult, f: LocusFn) -> Result<Vec<Segment>> {
    let shape = result.shape();
    if shape.len() < 2 {
        return Err(Error::InvalidSweep(
            "contours need at least two ranged parameters".into(),
        ));
    }
    let xs: Vec<f64> = result.axes[0]
        .values
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::NAN))
        .collect();
    let ys: Vec<f64> = result.axes[1]
        .values
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::NAN))
        .collect();
    let slices = shape.get(2).copied().unwrap_or(1);
    let value = |i: usize, j: usize, k: usize| {
        let mut idx = vec![i, j];
        if shape.len() == 3 {
            idx.push(k);
        }
        let cell = &result.cells[result.flat_index(&idx)];
        cell.loci
            .as_ref()
            .and_then(|l| l.value(f).to_f64())
            .unwrap_or(f64::NAN)
    };
    let mut segments = Vec::new();
    for k in 0..slices {
        let mut raw = Vec::new();
        for i in 0..xs.len() - 1 {
            for j in 0..ys.len() - 1 {
                let corners = [
                    (xs[i], ys[j]),
                    (xs[i + 1], ys[j]),
                    (xs[i + 1], ys[j + 1]),
                    (xs[i], ys[j + 1]),
                ];
                let vals = [
                    value(i, j, k),
                    value(i + 1, j, k),
                    value(i + 1, j + 1, k),
                    value(i, j + 1, k),
                ];
                square(corners, vals, &mut raw);
            }
        }
        segments.extend(raw.into_iter().map(|(start, end)| Segment {
            function: f,
            slice: (shape.len() == 3).then_some(k),
            start,
            end,
        }));
    }
    Ok(segments)
}

/// Zero contours of all three locus functions.
pub fn all_contours(result: &SweepResult) -> Result<Vec<Segment>> {
    let mut out = Vec::new();
    for f in LocusFn::ALL {
        out.extend(zero_contours(result, f)?);
    }
    Ok(out)
}
