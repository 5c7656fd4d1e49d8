//! Exact rational polytopes in ambient dimension 1 through 6: convex hull,
//! Minkowski sum, volume, and mixed volume.
//!
//! All geometry is exact over `BigRational`; there is no floating point
//! anywhere in the decision paths. Hulls may be lower-dimensional (flat);
//! such polytopes have volume 0 in the ambient space.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fourier_motzkin::{feasible, Constraint, Rel};
use crate::linalg;

pub const MAX_DIM: usize = 6;

pub type Point = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeError {
    EmptyPointSet,
    DimensionOutOfRange(usize),
    DimensionMismatch,
    MixedVolumeArity { expected: usize, got: usize },
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::EmptyPointSet => write!(f, "polytope needs at least one point"),
            PolytopeError::DimensionOutOfRange(d) => {
                write!(f, "ambient dimension {d} outside 1..={MAX_DIM}")
            }
            PolytopeError::DimensionMismatch => write!(f, "ambient dimensions disagree"),
            PolytopeError::MixedVolumeArity { expected, got } => {
                write!(f, "mixed volume in dimension {expected} takes {expected} polytopes, got {got}")
            }
        }
    }
}

impl core::error::Error for PolytopeError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    points: Vec<Point>,
    /// Vertex set of the hull, sorted lexicographically.
    vertices: Vec<Point>,
}

impl Polytope {
    pub fn convex_hull(dim: usize, points: Vec<Point>) -> Result<Self, PolytopeError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(PolytopeError::DimensionOutOfRange(dim));
        }
        if points.is_empty() {
            return Err(PolytopeError::EmptyPointSet);
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(PolytopeError::DimensionMismatch);
        }
        let vertices = hull_vertices(dim, &points);
        Ok(Polytope {
            dim,
            points,
            vertices,
        })
    }

    pub fn from_int_points(dim: usize, points: &[Vec<i64>]) -> Result<Self, PolytopeError> {
        let rats = points
            .iter()
            .map(|p| p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
            .collect();
        Self::convex_hull(dim, rats)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Exact membership test: is `point` a convex combination of the
    /// vertices? Decided by linear-program feasibility on the barycentric
    /// weights.
    pub fn contains_point(&self, point: &[BigRational]) -> bool {
        if point.len() != self.dim {
            return false;
        }
        let nv = self.vertices.len();
        let mut cons = Vec::new();
        for i in 0..nv {
            let mut coeffs = vec![BigRational::zero(); nv];
            coeffs[i] = BigRational::one();
            cons.push(Constraint::new(coeffs, Rel::Ge, BigRational::zero()));
        }
        cons.push(Constraint::new(
            vec![BigRational::one(); nv],
            Rel::Eq,
            BigRational::one(),
        ));
        for k in 0..self.dim {
            let coeffs = self.vertices.iter().map(|v| v[k].clone()).collect();
            cons.push(Constraint::new(coeffs, Rel::Eq, point[k].clone()));
        }
        feasible(&cons, nv)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope, PolytopeError> {
        if self.dim != other.dim {
            return Err(PolytopeError::DimensionMismatch);
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                sums.push(v.iter().zip(w).map(|(a, b)| a + b).collect());
            }
        }
        Polytope::convex_hull(self.dim, sums)
    }

    /// Exact `dim`-dimensional volume; 0 for flat polytopes. Full-dimensional
    /// hulls are star-triangulated from their first vertex, each boundary
    /// simplex contributing `|det| / d!`.
    pub fn volume(&self) -> BigRational {
        let d = self.dim;
        let verts = &self.vertices;
        if verts.len() <= d {
            return BigRational::zero();
        }
        let dirs: Vec<Point> = verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
        if linalg::rank(&dirs, d) < d {
            return BigRational::zero();
        }
        if d == 1 {
            return &verts[verts.len() - 1][0] - &verts[0][0];
        }
        let facets = incremental_hull(verts, d);
        let mut total = BigRational::zero();
        for facet in &facets {
            if facet.verts.contains(&0) {
                continue;
            }
            let rows: Vec<Point> = facet
                .verts
                .iter()
                .map(|&i| sub(&verts[i], &verts[0]))
                .collect();
            total += linalg::determinant(&rows).abs();
        }
        let mut dfact = BigInt::one();
        for k in 2..=d {
            dfact *= BigInt::from(k);
        }
        total / BigRational::from_integer(dfact)
    }
}

/// Mixed volume of `d` polytopes in dimension `d` by inclusion-exclusion:
/// `sum over nonempty S of (-1)^{d-|S|} Vol(sum_{i in S} Z_i)`.
/// With this normalization `MV(Z, ..., Z) = d! Vol(Z)`.
pub fn mixed_volume(zs: &[Polytope]) -> Result<BigRational, PolytopeError> {
    let Some(first) = zs.first() else {
        return Err(PolytopeError::MixedVolumeArity { expected: 0, got: 0 });
    };
    let d = first.dim();
    if zs.iter().any(|z| z.dim() != d) {
        return Err(PolytopeError::DimensionMismatch);
    }
    if zs.len() != d {
        return Err(PolytopeError::MixedVolumeArity {
            expected: d,
            got: zs.len(),
        });
    }

    // Equal polytopes are common (MV(Z,...,Z)); dedupe by vertex set so each
    // distinct Minkowski sum is hulled once.
    let mut classes: Vec<&Polytope> = Vec::new();
    let ids: Vec<usize> = zs
        .iter()
        .map(|z| {
            if let Some(k) = classes.iter().position(|c| c.vertices == z.vertices) {
                k
            } else {
                classes.push(z);
                classes.len() - 1
            }
        })
        .collect();

    let mut sums: BTreeMap<Vec<usize>, Polytope> = BTreeMap::new();
    let mut total = BigRational::zero();
    for mask in 1u32..(1 << d) {
        let mut key: Vec<usize> = (0..d).filter(|&i| mask & (1 << i) != 0).map(|i| ids[i]).collect();
        key.sort_unstable();
        let vol = sum_for_key(&key, &classes, &mut sums).volume();
        if (d - mask.count_ones() as usize) % 2 == 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    Ok(total)
}

fn sum_for_key<'a>(
    key: &[usize],
    classes: &[&Polytope],
    sums: &'a mut BTreeMap<Vec<usize>, Polytope>,
) -> &'a Polytope {
    if !sums.contains_key(key) {
        let value = if key.len() == 1 {
            classes[key[0]].clone()
        } else {
            let (last, prefix) = key.split_last().unwrap();
            let partial = sum_for_key(prefix, classes, sums).clone();
            partial
                .minkowski_sum(classes[*last])
                .expect("dimensions validated by mixed_volume")
        };
        sums.insert(key.to_vec(), value);
    }
    &sums[key]
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(BigRational::zero(), |s, t| s + t)
}

/// Vertex set of `conv(points)`, sorted lexicographically. Flat point sets
/// are projected to pivot coordinates of their direction space first; the
/// projection is injective on the affine hull, so vertices correspond.
fn hull_vertices(dim: usize, points: &[Point]) -> Vec<Point> {
    let unique: Vec<Point> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<Point>>()
        .into_iter()
        .collect();
    if unique.len() == 1 {
        return unique;
    }
    let dirs: Vec<Point> = unique[1..].iter().map(|p| sub(p, &unique[0])).collect();
    let pivots = linalg::pivot_columns(&dirs, dim);
    let r = pivots.len();
    debug_assert!(r >= 1, "distinct points have nonzero direction");
    let proj: Vec<Point> = unique
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let vertex_indices: Vec<usize> = if r == 1 {
        let mut lo = 0usize;
        let mut hi = 0usize;
        for (i, p) in proj.iter().enumerate() {
            if p[0] < proj[lo][0] {
                lo = i;
            }
            if p[0] > proj[hi][0] {
                hi = i;
            }
        }
        vec![lo, hi]
    } else {
        let facets = incremental_hull(&proj, r);
        let mut candidates: BTreeSet<usize> = BTreeSet::new();
        for f in &facets {
            candidates.extend(f.verts.iter().copied());
        }
        // A candidate is a true vertex iff its minimal face is a point, i.e.
        // the normals of its incident facets span the full r dimensions.
        // Simplicial facets triangulating a larger face leave interior
        // candidates with a normal span of lower rank.
        candidates
            .into_iter()
            .filter(|&v| {
                let normals: Vec<Point> = facets
                    .iter()
                    .filter(|f| f.verts.contains(&v))
                    .map(|f| f.normal.clone())
                    .collect();
                linalg::rank(&normals, r) == r
            })
            .collect()
    };
    let mut verts: Vec<Point> = vertex_indices.into_iter().map(|i| unique[i].clone()).collect();
    verts.sort();
    verts.dedup();
    verts
}

struct Facet {
    /// Indices into the point list; simplicial, so exactly `r` of them.
    verts: Vec<usize>,
    normal: Point,
    offset: BigRational,
}

/// Beneath-beyond hull of a full-rank distinct point set in dimension
/// `r >= 2`. Returns simplicial facets with outward normals; coplanar faces
/// appear triangulated.
fn incremental_hull(pts: &[Point], r: usize) -> Vec<Facet> {
    // greedy affinely independent simplex
    let mut simplex = vec![0usize];
    let mut dirs: Vec<Point> = Vec::new();
    for i in 1..pts.len() {
        dirs.push(sub(&pts[i], &pts[0]));
        if linalg::rank(&dirs, r) == simplex.len() {
            simplex.push(i);
        } else {
            dirs.pop();
        }
        if simplex.len() == r + 1 {
            break;
        }
    }
    assert_eq!(simplex.len(), r + 1, "caller guarantees affine rank r");

    let centroid: Point = (0..r)
        .map(|k| {
            simplex
                .iter()
                .map(|&i| pts[i][k].clone())
                .fold(BigRational::zero(), |s, t| s + t)
                / BigRational::from_integer(BigInt::from(r as i64 + 1))
        })
        .collect();

    let make_facet = |verts: Vec<usize>| -> Facet {
        let rows: Vec<Point> = verts[1..]
            .iter()
            .map(|&i| sub(&pts[i], &pts[verts[0]]))
            .collect();
        let mut normal = linalg::kernel_vector(&rows, r)
            .expect("facet spans a hyperplane");
        let mut offset = dot(&normal, &pts[verts[0]]);
        let side = dot(&normal, &centroid);
        debug_assert!(side != offset, "reference point on facet plane");
        if side > offset {
            normal = normal.iter().map(|c| -c.clone()).collect();
            offset = -offset;
        }
        Facet {
            verts,
            normal,
            offset,
        }
    };

    let mut facets: Vec<Facet> = (0..=r)
        .map(|omit| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != omit)
                .map(|(_, &i)| i)
                .collect();
            make_facet(verts)
        })
        .collect();

    for i in 0..pts.len() {
        if simplex.contains(&i) {
            continue;
        }
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| dot(&f.normal, &pts[i]) > f.offset)
            .map(|(k, _)| k)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // horizon ridges belong to exactly one visible facet
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for &k in &visible {
            for omit in 0..r {
                let mut ridge: Vec<usize> = facets[k]
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != omit)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let visible_set: BTreeSet<usize> = visible.iter().copied().collect();
        let mut kept: Vec<Facet> = Vec::new();
        for (k, f) in facets.into_iter().enumerate() {
            if !visible_set.contains(&k) {
                kept.push(f);
            }
        }
        for (ridge, count) in ridge_count {
            if count != 1 {
                continue;
            }
            let mut verts = ridge;
            verts.push(i);
            kept.push(make_facet(verts));
        }
        facets = kept;
    }
    facets
}
