//! Small integer linear algebra on ℤ²: 2×2 matrices and subgroups of ℤ² in
//! Hermite normal form.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub type Vec2i = [i64; 2];

/// A 2×2 integer matrix stored row-major: `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    /// Builds the matrix whose columns are `c1` and `c2`.
    pub fn from_columns(c1: Vec2i, c2: Vec2i) -> Self {
        Mat2([[c1[0], c2[0]], [c1[1], c2[1]]])
    }

    pub fn column(&self, k: usize) -> Vec2i {
        [self.0[0][k], self.0[1][k]]
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn apply(&self, v: Vec2i) -> Vec2i {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn apply_f64(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.0;
        [
            m[0][0] as f64 * v[0] + m[0][1] as f64 * v[1],
            m[1][0] as f64 * v[0] + m[1][1] as f64 * v[1],
        ]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = self.0;
        let b = o.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    /// Inverse of a unimodular matrix; `None` when `|det| != 1`.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let [[a, b], [c, e]] = self.0;
        Some(Mat2([[e * d, -b * d], [-c * d, a * d]]))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]
        )
    }
}

pub fn is_primitive(v: Vec2i) -> bool {
    v[0].gcd(&v[1]) == 1
}

/// Normalizes a nonzero vector so that its first nonzero coordinate is positive.
pub fn sign_normalize(v: Vec2i) -> Vec2i {
    if v[0] < 0 || (v[0] == 0 && v[1] < 0) {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Primitive representative of the line through `v`, sign-normalized.
pub fn primitive_part(v: Vec2i) -> Vec2i {
    let g = v[0].gcd(&v[1]);
    if g == 0 {
        return v;
    }
    sign_normalize([v[0] / g, v[1] / g])
}

/// Hermite normal form of the subgroup of ℤ² generated by `gens`.
///
/// Returns the basis rows: empty for the zero group, one sign-normalized
/// vector for rank one, and `[(a, b), (0, d)]` with `a, d > 0`, `0 <= b < d`
/// for rank two.
pub fn hermite_basis<I: IntoIterator<Item = Vec2i>>(gens: I) -> Vec<Vec2i> {
    // Euclid on the first column, then gcd of what is left in the second.
    let mut pivot: Option<Vec2i> = None;
    let mut second: i64 = 0;
    for g in gens {
        if g == [0, 0] {
            continue;
        }
        let mut v = g;
        if let Some(p) = pivot.as_mut() {
            if v[0] != 0 {
                let (gcd, x, y) = ext_gcd(p[0], v[0]);
                let new_pivot = [x * p[0] + y * v[0], x * p[1] + y * v[1]];
                debug_assert_eq!(new_pivot[0], gcd);
                // Row that is killed in the first column.
                let a = p[0] / gcd;
                let b = v[0] / gcd;
                let killed = [0, a * v[1] - b * p[1]];
                *p = new_pivot;
                v = killed;
            }
            second = second.gcd(&v[1]);
        } else if v[0] != 0 {
            pivot = Some(v);
        } else {
            second = second.gcd(&v[1]);
        }
    }
    match pivot {
        None => {
            if second == 0 {
                vec![]
            } else {
                vec![[0, second]]
            }
        }
        Some(mut p) => {
            if p[0] < 0 {
                p = [-p[0], -p[1]];
            }
            if second == 0 {
                vec![p]
            } else {
                p[1] = p[1].rem_euclid(second);
                vec![p, [0, second]]
            }
        }
    }
}

/// Unimodular basis `[[p, r], [q, s]]` (`ps − qr = 1`) completing a primitive
/// vector, with `|r| + |s|` minimal and ties going to the smaller `|r|`.
/// `None` when `(p, q)` is not primitive.
pub fn completing_basis(p: i64, q: i64) -> Option<Mat2> {
    if !is_primitive([p, q]) {
        return None;
    }
    // p x + q y = 1 gives s = x, r = -y; all solutions are (r + t p, s + t q).
    let (_, x, y) = ext_gcd(p, q);
    let (r0, s0) = (-y, x);
    let mut ts = vec![0i64];
    for (c, d) in [(r0, p), (s0, q)] {
        if d != 0 {
            let t = -Integer::div_floor(&c, &d);
            ts.extend([t - 1, t, t + 1]);
        }
    }
    let (r, s) = ts
        .into_iter()
        .map(|t| (r0 + t * p, s0 + t * q))
        .min_by_key(|&(r, s)| (r.abs() + s.abs(), r.abs(), r, s))?;
    Some(Mat2::new(p, r, q, s))
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Whether `v` lies in the lattice spanned by an HNF basis.
pub fn lattice_contains(basis: &[Vec2i], v: Vec2i) -> bool {
    match basis {
        [] => v == [0, 0],
        [b] => {
            // v = t b
            if b[0] != 0 {
                v[0] % b[0] == 0 && v[0] / b[0] * b[1] == v[1]
            } else {
                v[0] == 0 && v[1] % b[1] == 0
            }
        }
        [r1, r2] => {
            if v[0] % r1[0] != 0 {
                return false;
            }
            let t = v[0] / r1[0];
            (v[1] - t * r1[1]) % r2[1] == 0
        }
        _ => false,
    }
}
