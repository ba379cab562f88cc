//! Exact squared Euclidean distance transform on cell centers, with periodic
//! axes handled by unrolling three copies along each wrapped axis.

use super::shape::Shape;

const INF: f64 = 1e30;

/// Lower envelope of parabolas (Felzenszwalb & Huttenlocher), in place.
fn edt_1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n];
    let mut z = vec![0f64; n + 1];
    let mut k = 0usize;
    let mut first = None;
    for q in 0..n {
        if f[q] >= INF {
            continue;
        }
        match first {
            None => {
                first = Some(q);
                v[0] = q;
                z[0] = f64::NEG_INFINITY;
                z[1] = f64::INFINITY;
                k = 0;
            }
            Some(_) => loop {
                let p = v[k];
                let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * q as f64 - 2.0 * p as f64);
                if s <= z[k] {
                    if k == 0 {
                        v[0] = q;
                        z[0] = f64::NEG_INFINITY;
                        z[1] = f64::INFINITY;
                        break;
                    }
                    k -= 1;
                } else {
                    k += 1;
                    v[k] = q;
                    z[k] = s;
                    z[k + 1] = f64::INFINITY;
                    break;
                }
            },
        }
    }
    if first.is_none() {
        out.iter_mut().for_each(|o| *o = INF);
        return;
    }
    let mut k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let d = q as f64 - p as f64;
        out[q] = d * d + f[p];
    }
}

/// Distance transform along one axis of length `len`, sampled at `stride`.
fn pass(data: &mut [f64], len: usize, count: usize, at: impl Fn(usize, usize) -> usize, wrap: bool) {
    let ext = if wrap { 3 * len } else { len };
    let mut f = vec![INF; ext];
    let mut out = vec![INF; ext];
    for line in 0..count {
        for t in 0..ext {
            f[t] = data[at(line, t % len)];
        }
        edt_1d(&f, &mut out);
        let off = if wrap { len } else { 0 };
        for t in 0..len {
            data[at(line, t)] = out[t + off];
        }
    }
}

/// Squared distance (in cell units) from every cell center to the nearest
/// center of a `mask` cell. Cells with no reachable target get `f64::INFINITY`.
pub(crate) fn squared_distance_transform(shape: &Shape, mask: &[bool]) -> Vec<f64> {
    let (w, h) = (shape.width, shape.height);
    let mut data: Vec<f64> = mask.iter().map(|&m| if m { 0.0 } else { INF }).collect();
    pass(&mut data, h, w, |x, y| y * w + x, shape.wrap_y);
    pass(&mut data, w, h, |y, x| y * w + x, shape.wrap_x);
    data.into_iter()
        .map(|d| if d >= INF * 0.5 { f64::INFINITY } else { d })
        .collect()
}

/// Directed sup-inf distance from `from` to `to`, in cell units.
pub(crate) fn directed_distance(shape: &Shape, from: &[bool], to: &[bool]) -> f64 {
    let dt = squared_distance_transform(shape, to);
    from.iter()
        .zip(&dt)
        .filter(|(f, _)| **f)
        .map(|(_, d)| d.sqrt())
        .fold(0.0, f64::max)
}
