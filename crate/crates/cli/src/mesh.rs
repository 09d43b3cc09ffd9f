//! OFF export. Vertices of the original complex sit on the moment curve
//! `t -> (t, t², t³)`; each subdivision vertex sits at the centroid of the
//! simplex (or chain) it stands for.

use std::fmt::Write;

use stratify::complex::{subdivide, SimplicialComplex, Subdivision};

pub type Point = [f64; 3];

fn moment(i: usize, n: usize) -> Point {
    let t = (i + 1) as f64 / n.max(1) as f64;
    [t, t * t, t * t * t]
}

fn centroid(points: impl Iterator<Item = Point>) -> Point {
    let mut sum = [0.0; 3];
    let mut count = 0usize;
    for p in points {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
        count += 1;
    }
    sum.map(|s| s / count as f64)
}

/// Coordinates for a complex and its first two subdivisions.
pub struct Realization {
    pub base: Vec<Point>,
    pub first: Subdivision,
    pub first_points: Vec<Point>,
    pub second: Subdivision,
    pub second_points: Vec<Point>,
}

impl Realization {
    pub fn new(k: &SimplicialComplex) -> Self {
        let n = k.vertices().len();
        let base: Vec<Point> = (0..n).map(|i| moment(i, n)).collect();
        let first = subdivide(k);
        let first_points = lift(&base, k, &first);
        let second = subdivide(&first.complex);
        let second_points = lift(&first_points, &first.complex, &second);
        Realization { base, first, first_points, second, second_points }
    }
}

fn lift(points: &[Point], k: &SimplicialComplex, sd: &Subdivision) -> Vec<Point> {
    sd.origin.iter().map(|&s| centroid(k.simplex_at(s).vertices().iter().map(|&v| points[v]))).collect()
}

/// Positions for the vertices of `part`, looked up by identifier in `ambient`.
pub fn place(part: &SimplicialComplex, ambient: &SimplicialComplex, points: &[Point]) -> Option<Vec<Point>> {
    part.vertices().iter().map(|id| ambient.vertex_index(id).map(|i| points[i])).collect()
}

/// OFF text: every triangle, plus maximal edges as two-vertex faces.
pub fn to_off(k: &SimplicialComplex, points: &[Point]) -> String {
    let maximal: Vec<usize> = k.maximal_simplices();
    let faces: Vec<&[usize]> = (0..k.len())
        .filter(|&i| {
            let s = k.simplex_at(i);
            s.len() == 3 || (s.len() == 2 && maximal.contains(&i))
        })
        .map(|i| k.simplex_at(i).vertices())
        .collect();
    let mut out = String::from("OFF\n");
    writeln!(out, "{} {} 0", points.len(), faces.len()).unwrap();
    for p in points {
        writeln!(out, "{:.6} {:.6} {:.6}", p[0], p[1], p[2]).unwrap();
    }
    for f in &faces {
        let ids: Vec<String> = f.iter().map(ToString::to_string).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
    }
    out
}
