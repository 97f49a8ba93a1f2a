//! Newton polytopes of Laurent polynomials and their interior lattice points.
//!
//! Hulls are computed exactly with integer arithmetic: every facet is the
//! hyperplane through some `k` affinely independent support points (in the
//! `k`-dimensional affine hull) that leaves all support points on one side.
//! Support sets here are tiny, so the exhaustive search is cheap.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Inequality `normal . x <= offset` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    fn value(&self, point: &[i64]) -> i64 {
        dot(&self.normal, point)
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.value(point) <= self.offset
    }

    pub fn strictly_contains(&self, point: &[i64]) -> bool {
        self.value(point) < self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolytope {
    pub dim: usize,
    /// Dimension of the affine hull of the support.
    pub affine_dim: usize,
    /// Hull vertices in lexicographic order.
    pub vertices: Vec<Vec<i64>>,
    /// For lower-dimensional hulls these are the facets of the hull inside
    /// its affine span, lifted to the ambient space; they are valid
    /// inequalities but do not cut out the hull on their own.
    pub facets: Vec<Facet>,
}

impl NewtonPolytope {
    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.facets.iter().all(|f| f.contains(point))
    }
}

pub fn newton_polytope(f: &LaurentPoly) -> Result<NewtonPolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<Vec<i64>> = f
        .support()
        .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(hull(f.dim(), &points))
}

/// Lattice points strictly inside every facet, sorted lexicographically.
/// Empty unless the polytope is full dimensional.
pub fn interior_integral_points(np: &NewtonPolytope) -> Vec<Vec<i64>> {
    if !np.is_full_dimensional() || np.vertices.is_empty() {
        return Vec::new();
    }
    let lo: Vec<i64> = (0..np.dim)
        .map(|i| np.vertices.iter().map(|v| v[i]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..np.dim)
        .map(|i| np.vertices.iter().map(|v| v[i]).max().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut point = lo.clone();
    loop {
        if np.facets.iter().all(|f| f.strictly_contains(&point)) {
            out.push(point.clone());
        }
        // Odometer over the bounding box, last coordinate fastest.
        let mut i = np.dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if point[i] < hi[i] {
                point[i] += 1;
                point[i + 1..np.dim].copy_from_slice(&lo[i + 1..np.dim]);
                break;
            }
        }
    }
}

/// `true` iff the origin is the one and only interior lattice point of the
/// Newton polytope of `f`. Lower-dimensional polytopes have no interior
/// points, so they yield `false`.
pub fn origin_only_interior(f: &LaurentPoly) -> Result<bool> {
    let np = newton_polytope(f)?;
    let pts = interior_integral_points(&np);
    Ok(pts.len() == 1 && pts[0].iter().all(|&c| c == 0))
}

/// `true` iff every exponent lies in `{-1, 0, 1}`.
pub fn support_in_unit_box(f: &LaurentPoly) -> bool {
    f.support().all(|m| m.exponents().iter().all(|e| (-1..=1).contains(e)))
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn hull(dim: usize, points: &[Vec<i64>]) -> NewtonPolytope {
    let base = &points[0];
    let dirs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, base)).collect();
    let k = rank(&dirs, dim);
    if k == 0 {
        return NewtonPolytope {
            dim,
            affine_dim: 0,
            vertices: vec![base.clone()],
            facets: Vec::new(),
        };
    }
    if k == dim {
        let (vertices, facets) = full_hull(dim, points);
        return NewtonPolytope {
            dim,
            affine_dim: dim,
            vertices,
            facets,
        };
    }
    // Project onto k coordinates that remain independent on the affine hull.
    let cols = coordinate_subsets(dim, k)
        .into_iter()
        .find(|cols| {
            let projected: Vec<Vec<i64>> =
                dirs.iter().map(|d| cols.iter().map(|&c| d[c]).collect()).collect();
            rank(&projected, k) == k
        })
        .expect("some coordinate projection has full rank");
    let projected: Vec<Vec<i64>> = points
        .iter()
        .map(|p| cols.iter().map(|&c| p[c]).collect())
        .collect();
    let (pverts, pfacets) = full_hull(k, &projected);
    let mut vertices: Vec<Vec<i64>> = pverts
        .iter()
        .map(|pv| points[projected.iter().position(|q| q == pv).unwrap()].clone())
        .collect();
    vertices.sort();
    let facets = pfacets
        .into_iter()
        .map(|f| {
            let mut normal = vec![0; dim];
            for (j, &c) in cols.iter().enumerate() {
                normal[c] = f.normal[j];
            }
            Facet {
                normal,
                offset: f.offset,
            }
        })
        .collect();
    NewtonPolytope {
        dim,
        affine_dim: k,
        vertices,
        facets,
    }
}

/// Hull of a full-dimensional point set in `dim` dimensions.
fn full_hull(dim: usize, points: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Facet>) {
    let mut facets: BTreeSet<Facet> = BTreeSet::new();
    for subset in index_subsets(points.len(), dim) {
        let anchor = &points[subset[0]];
        let rows: Vec<Vec<i64>> = subset[1..].iter().map(|&i| sub(&points[i], anchor)).collect();
        let normal = cofactor_normal(dim, &rows);
        if normal.iter().all(|&c| c == 0) {
            continue;
        }
        let offset = dot(&normal, anchor);
        let values: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
        let facet = if values.iter().all(|&v| v <= offset) {
            primitive(normal, offset)
        } else if values.iter().all(|&v| v >= offset) {
            primitive(normal.iter().map(|c| -c).collect(), -offset)
        } else {
            continue;
        };
        facets.insert(facet);
    }
    let facets: Vec<Facet> = facets.into_iter().collect();
    let mut vertices: Vec<Vec<i64>> = points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.value(p) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            rank(&tight, dim) == dim
        })
        .cloned()
        .collect();
    vertices.sort();
    (vertices, facets)
}

fn primitive(normal: Vec<i64>, offset: i64) -> Facet {
    let g = normal.iter().fold(0i64, |g, &c| g.gcd(&c));
    Facet {
        normal: normal.iter().map(|c| c / g).collect(),
        offset: offset / g,
    }
}

/// Vector orthogonal to the `dim - 1` given rows, by cofactor expansion.
fn cofactor_normal(dim: usize, rows: &[Vec<i64>]) -> Vec<i64> {
    if dim == 1 {
        return vec![1];
    }
    (0..dim)
        .map(|col| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, &v)| v as i128)
                        .collect()
                })
                .collect();
            let d = det(&minor);
            let sign = if col % 2 == 0 { 1 } else { -1 };
            (sign * d) as i64
        })
        .collect()
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|col| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if col % 2 == 0 { 1 } else { -1 };
                sign * m[0][col] * det(&minor)
            })
            .sum(),
    }
}

/// Rank over the rationals, via fraction-free elimination.
fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let a = m[rank][c];
                let b = m[r][c];
                for j in 0..cols {
                    m[r][j] = m[r][j] * a - m[rank][j] * b;
                }
                let g = m[r].iter().fold(0i128, |g, &v| g.gcd(&v));
                if g > 1 {
                    for v in m[r].iter_mut() {
                        *v /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn coordinate_subsets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    index_subsets(dim, k)
}
