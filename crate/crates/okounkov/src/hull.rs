//! Exact convex geometry: hulls of rational point sets, the
//! Newton-Okounkov body of a graded semigroup and lattice-normalized
//! volumes.
//!
//! Everything is exact rational. Polytopes are handled through an affine
//! coordinate chart of their hull (so lower-dimensional bodies work
//! throughout), facets are enumerated by brute force over spanning point
//! subsets, and volumes come from a deterministic fan triangulation from
//! the lexicographically smallest vertex. Affine dimensions above 4 are
//! rejected; the instances of interest all live in dimension <= 3.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    rat_det, rat_rank, solve_combination, Int, Lattice, Rat,
};
use crate::semigroup::GradedSemigroup;

/// Convex polytope with rational vertices. `dim` is the affine dimension
/// of the vertex set inside `Q^ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPolytope {
    pub ambient: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub dim: usize,
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Affine chart of a point set: a base point and a rational basis of the
/// difference span, with maps in both directions.
struct Chart {
    base: Vec<Rat>,
    basis: Vec<Vec<Rat>>,
}

impl Chart {
    fn build(points: &[Vec<Rat>]) -> Chart {
        let base = points
            .iter()
            .min()
            .expect("chart of empty point set")
            .clone();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in points {
            let d = sub(p, &base);
            if d.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(d.clone());
            if rat_rank(&trial) > basis.len() {
                basis.push(d);
            }
        }
        Chart { base, basis }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `p` in the chart; `None` if `p` is outside the
    /// affine hull.
    fn to_chart(&self, p: &[Rat]) -> Option<Vec<Rat>> {
        solve_combination(&self.basis, &sub(p, &self.base))
    }
}

/// Facet hyperplane `{ x : <normal, x> = offset }` of a full-dimensional
/// point set, oriented so that `<normal, p> <= offset` for all points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Facet {
    normal: Vec<Rat>,
    offset: Rat,
}

/// Enumerate facet hyperplanes of a full-dimensional point set in `Q^q`,
/// `q >= 1`, by checking every spanning `q`-subset.
fn facet_hyperplanes(points: &[Vec<Rat>], q: usize) -> Vec<Facet> {
    let mut out: BTreeSet<Facet> = BTreeSet::new();
    if q == 1 {
        let lo = points.iter().map(|p| p[0].clone()).min().unwrap();
        let hi = points.iter().map(|p| p[0].clone()).max().unwrap();
        out.insert(Facet {
            normal: vec![Rat::one()],
            offset: hi,
        });
        out.insert(Facet {
            normal: vec![-Rat::one()],
            offset: -lo,
        });
        return out.into_iter().collect();
    }
    for subset in (0..points.len()).combinations(q) {
        let p0 = &points[subset[0]];
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| sub(&points[i], p0))
            .collect();
        if rat_rank(&diffs) != q - 1 {
            continue; // degenerate subset
        }
        // normal: solve for the one-dimensional nullspace of the diffs
        let normal = match hyperplane_normal(&diffs, q) {
            Some(n) => n,
            None => continue,
        };
        let offset = dot(&normal, p0);
        // orient so every point is on the <= side, else skip
        let mut pos = false;
        let mut neg = false;
        for p in points {
            let v = dot(&normal, p);
            if v > offset {
                pos = true;
            } else if v < offset {
                neg = true;
            }
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        let (normal, offset) = if pos {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            (normal, offset)
        };
        out.insert(canonicalize(normal, offset));
    }
    out.into_iter().collect()
}

/// Scale the normal so that its entries are coprime integers (stable
/// dedup key across different spanning subsets).
fn canonicalize(normal: Vec<Rat>, offset: Rat) -> Facet {
    use num_integer::Integer;
    let mut denom_lcm = Int::one();
    for x in &normal {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let scaled: Vec<Int> = normal
        .iter()
        .map(|x| (x * Rat::from(denom_lcm.clone())).to_integer())
        .collect();
    let mut g = Int::zero();
    for x in &scaled {
        g = g.gcd(x);
    }
    let factor = Rat::new(denom_lcm, g);
    Facet {
        normal: normal.iter().map(|x| x * &factor).collect(),
        offset: offset * &factor,
    }
}

/// Normal vector of the hyperplane through the origin spanned by `q - 1`
/// independent difference vectors in `Q^q`.
fn hyperplane_normal(diffs: &[Vec<Rat>], q: usize) -> Option<Vec<Rat>> {
    // nullspace of the (q-1) x q matrix: one free column after rref
    let mut m = diffs.to_vec();
    let pivots = crate::exactmath::rref(&mut m);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let free = (0..q).find(|c| !pivot_set.contains(c))?;
    let mut n = vec![Rat::zero(); q];
    n[free] = Rat::one();
    for (row_idx, &col) in pivots.iter().enumerate() {
        n[col] = -m[row_idx][free].clone();
    }
    Some(n)
}

/// Minimal vertex set of the convex hull.
///
/// Rejects inputs whose affine dimension exceeds 4.
pub fn convex_hull(points: &[Vec<Rat>]) -> Result<RatPolytope> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let ambient = points[0].len();
    let dedup: Vec<Vec<Rat>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let chart = Chart::build(&dedup);
    let q = chart.dim();
    if q > 4 {
        return Err(Error::UnsupportedDimension(q));
    }
    if q == 0 {
        return Ok(RatPolytope {
            ambient,
            vertices: vec![chart.base],
            dim: 0,
        });
    }
    let local: Vec<Vec<Rat>> = dedup
        .iter()
        .map(|p| chart.to_chart(p).expect("point in own affine hull"))
        .collect();
    let facets = facet_hyperplanes(&local, q);
    // a point is a vertex iff its active facet normals span Q^q
    let mut vertices = Vec::new();
    for (p, lp) in dedup.iter().zip(&local) {
        let active: Vec<Vec<Rat>> = facets
            .iter()
            .filter(|f| dot(&f.normal, lp) == f.offset)
            .map(|f| f.normal.clone())
            .collect();
        if rat_rank(&active) == q {
            vertices.push(p.clone());
        }
    }
    vertices.sort();
    Ok(RatPolytope {
        ambient,
        vertices,
        dim: q,
    })
}

/// Precomputed exact membership test for the convex hull of a polytope:
/// the affine chart of the hull plus facet inequalities in chart
/// coordinates.
pub struct Membership {
    base: Vec<Rat>,
    basis: Vec<Vec<Rat>>,
    facets: Vec<Facet>,
}

impl Membership {
    pub fn build(p: &RatPolytope) -> Membership {
        let chart = Chart::build(&p.vertices);
        let q = chart.dim();
        let facets = if q == 0 {
            vec![]
        } else {
            let local: Vec<Vec<Rat>> = p
                .vertices
                .iter()
                .map(|v| chart.to_chart(v).expect("vertex in own hull"))
                .collect();
            facet_hyperplanes(&local, q)
        };
        Membership {
            base: chart.base,
            basis: chart.basis,
            facets,
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let Some(local) = solve_combination(&self.basis, &sub(x, &self.base)) else {
            return false; // outside the affine hull
        };
        if self.basis.is_empty() {
            return true; // single point, already matched by the chart solve
        }
        self.facets
            .iter()
            .all(|f| dot(&f.normal, &local) <= f.offset)
    }
}

/// Fan triangulation of a full-dimensional point set in `Q^q`: simplices
/// are returned as `q + 1` points each. Deterministic: the fan apex is
/// always the lex-smallest point.
fn triangulate(points: &[Vec<Rat>], q: usize) -> Vec<Vec<Vec<Rat>>> {
    if q == 0 {
        return vec![vec![points[0].clone()]];
    }
    if q == 1 {
        let lo = points.iter().min().unwrap().clone();
        let hi = points.iter().max().unwrap().clone();
        return vec![vec![lo, hi]];
    }
    let apex = points.iter().min().unwrap().clone();
    let facets = facet_hyperplanes(points, q);
    let mut simplices = Vec::new();
    for f in &facets {
        if dot(&f.normal, &apex) == f.offset {
            continue; // facet contains the apex, contributes no volume
        }
        let on_facet: Vec<Vec<Rat>> = points
            .iter()
            .filter(|p| dot(&f.normal, p) == f.offset)
            .cloned()
            .collect();
        // drop a coordinate where the normal is nonzero: an affine
        // bijection of the facet onto Q^{q-1}
        let drop = f.normal.iter().position(|x| !x.is_zero()).unwrap();
        let projected: Vec<Vec<Rat>> = on_facet
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        for sub_simplex in triangulate(&projected, q - 1) {
            let lifted: Vec<Vec<Rat>> = sub_simplex
                .iter()
                .map(|sp| {
                    let idx = projected.iter().position(|p| p == sp).unwrap();
                    on_facet[idx].clone()
                })
                .collect();
            let mut simplex = vec![apex.clone()];
            simplex.extend(lifted);
            simplices.push(simplex);
        }
    }
    simplices
}

fn volume_fulldim(points: &[Vec<Rat>], q: usize) -> Rat {
    if q == 0 {
        return Rat::one();
    }
    let mut factorial = Rat::one();
    for i in 1..=q {
        factorial *= Rat::from(Int::from(i as i64));
    }
    let mut total = Rat::zero();
    for simplex in triangulate(points, q) {
        let edges: Vec<Vec<Rat>> = simplex[1..]
            .iter()
            .map(|p| sub(p, &simplex[0]))
            .collect();
        total += rat_det(&edges).abs();
    }
    total / factorial
}

/// Volume of `P` measured so that a fundamental cell of the lattice has
/// volume one. The affine hull of `P` must be a translate of the span of
/// the lattice; a zero-dimensional polytope returns 1 by convention.
pub fn normalized_volume(p: &RatPolytope, lattice: &Lattice) -> Result<Rat> {
    if p.dim == 0 {
        return Ok(Rat::one());
    }
    if p.dim > 4 {
        return Err(Error::UnsupportedDimension(p.dim));
    }
    if lattice.rank() != p.dim || lattice.ambient_dim() != p.ambient {
        return Err(Error::DimensionMismatch);
    }
    let basis: Vec<Vec<Rat>> = lattice
        .basis()
        .iter()
        .map(|r| r.iter().map(|x| Rat::from(x.clone())).collect())
        .collect();
    let v0 = p.vertices.iter().min().unwrap();
    let local: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| solve_combination(&basis, &sub(v, v0)).ok_or(Error::DimensionMismatch))
        .collect::<Result<_>>()?;
    // the vertex differences must actually span the lattice's span
    if rat_rank(&local) != p.dim {
        return Err(Error::DimensionMismatch);
    }
    Ok(volume_fulldim(&local, p.dim))
}

/// The Newton-Okounkov body: the level-1 slice of the cone over the
/// semigroup. Generator mode is exact; sampled mode yields the inner
/// approximation from all sampled points.
pub fn nok_body(s: &GradedSemigroup) -> Result<RatPolytope> {
    if s.is_empty() {
        return Err(Error::EmptySemigroup);
    }
    let mut scaled: Vec<Vec<Rat>> = Vec::new();
    for (h, level) in s.generators() {
        let l = Rat::from(Int::from(*level as i64));
        scaled.push(h.iter().map(|x| Rat::from(x.clone()) / &l).collect());
    }
    if let Some(sampled) = s.sampled() {
        for (level, slice) in &sampled.slices {
            if *level == 0 {
                continue;
            }
            let l = Rat::from(Int::from(*level as i64));
            for pt in slice {
                scaled.push(pt.iter().map(|x| Rat::from(x.clone()) / &l).collect());
            }
        }
    }
    convex_hull(&scaled)
}

/// The predicted limit of `#S_{m(S) k} / k^{q(S)}`:
/// `m^q * vol_q(nok_body) / ind` (the cone is sliced at level `m(S)`,
/// which is where the counted slices live).
pub fn body_limit(s: &GradedSemigroup) -> Result<Rat> {
    let body = nok_body(s)?;
    let lattice = s.boundary_lattice_horizontal()?;
    let vol = normalized_volume(&body, &lattice)?;
    let q = s.q()?;
    let m = Rat::from(Int::from(s.level_index()? as i64));
    let ind = Rat::from(s.ind()?);
    let mut mq = Rat::one();
    for _ in 0..q {
        mq *= &m;
    }
    Ok(mq * vol / ind)
}
