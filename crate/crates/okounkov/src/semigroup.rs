//! Graded subsemigroups of `Z^d x N`.
//!
//! A semigroup is known either by finitely many generators with positive
//! levels, or by sampled slices up to a truncation level (the only way a
//! non-finitely-generated value semigroup can be observed). All of the
//! invariants from the limit theorems live here: slices `S_k`, the group
//! closure `G(S)`, the level index `m(S)`, the boundary lattice, `ind(S)`
//! and `q(S)`.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, Signed, Zero};
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::{
    int, left_kernel, subgroup_index, Int, IntMatrix, Lattice, LatticeIndex,
};

/// Horizontal points of one slice.
pub type Slice = BTreeSet<Vec<Int>>;

/// Slices observed by truncation: every level `<= upto` is known, levels
/// absent from the map are known to be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSlices {
    pub upto: u64,
    pub slices: BTreeMap<u64, Slice>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSemigroup {
    d: usize,
    generators: Vec<(Vec<Int>, u64)>,
    sampled: Option<SampledSlices>,
}

/// Result of the strong-nonnegativity check. In sampled mode the
/// exponent is an empirical estimate over the truncated range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongNonnegativity {
    pub strongly_nonnegative: bool,
    pub q_estimate: usize,
    pub empirical: bool,
}

impl GradedSemigroup {
    pub fn from_generators(d: usize, generators: Vec<(Vec<Int>, u64)>) -> Self {
        for (h, level) in &generators {
            assert_eq!(h.len(), d, "generator dimension mismatch");
            assert!(*level >= 1, "generator level must be positive");
        }
        GradedSemigroup {
            d,
            generators,
            sampled: None,
        }
    }

    pub fn from_generators_i64(d: usize, gens: &[(&[i64], u64)]) -> Self {
        GradedSemigroup::from_generators(
            d,
            gens.iter()
                .map(|(h, l)| (h.iter().map(|&x| int(x)).collect(), *l))
                .collect(),
        )
    }

    pub fn from_samples(d: usize, upto: u64, slices: BTreeMap<u64, Slice>) -> Self {
        let mut slices = slices;
        slices.retain(|_, s| !s.is_empty());
        for (level, s) in &slices {
            assert!(*level <= upto);
            for p in s {
                assert_eq!(p.len(), d, "sample dimension mismatch");
            }
        }
        GradedSemigroup {
            d,
            generators: vec![],
            sampled: Some(SampledSlices { upto, slices }),
        }
    }

    /// Generator mode with sampled slices attached (a value semigroup
    /// whose generators are known and whose slices have been computed).
    pub fn with_samples(mut self, upto: u64, slices: BTreeMap<u64, Slice>) -> Self {
        let mut slices = slices;
        slices.retain(|_, s| !s.is_empty());
        self.sampled = Some(SampledSlices { upto, slices });
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[(Vec<Int>, u64)] {
        &self.generators
    }

    pub fn sampled(&self) -> Option<&SampledSlices> {
        self.sampled.as_ref()
    }

    pub fn is_generator_mode(&self) -> bool {
        !self.generators.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
            && self
                .sampled
                .as_ref()
                .map_or(true, |s| s.slices.is_empty())
    }

    /// `S_k`: horizontal parts of all generator sums with levels totaling
    /// `k`. Dynamic programming over levels; `slice(S, 0) = {0}`.
    pub fn slice(&self, k: u64) -> Result<Slice> {
        if k == 0 {
            let mut s = Slice::new();
            s.insert(vec![Int::zero(); self.d]);
            return Ok(s);
        }
        // samples are exact where present (generators of a value
        // semigroup only bound it from below when cancellation occurs)
        if let Some(sampled) = &self.sampled {
            if k <= sampled.upto {
                return Ok(sampled.slices.get(&k).cloned().unwrap_or_default());
            }
        }
        if self.is_generator_mode() {
            let reach = self.slices_up_to(k);
            Ok(reach[k as usize].clone())
        } else {
            let sampled = self.sampled.as_ref().ok_or(Error::EmptySemigroup)?;
            Err(Error::OutOfRange(k, sampled.upto))
        }
    }

    /// All slices `S_0 ..= S_k` at once (generator mode).
    pub fn slices_up_to(&self, k: u64) -> Vec<Slice> {
        let k = k as usize;
        let mut reach: Vec<Slice> = vec![Slice::new(); k + 1];
        reach[0].insert(vec![Int::zero(); self.d]);
        for level in 1..=k {
            let mut out = Slice::new();
            for (h, gl) in &self.generators {
                let gl = *gl as usize;
                if gl <= level {
                    for p in &reach[level - gl] {
                        let sum: Vec<Int> = p.iter().zip(h).map(|(a, b)| a + b).collect();
                        out.insert(sum);
                    }
                }
            }
            reach[level] = out;
        }
        reach
    }

    /// Every known element as a point of `Z^{d+1}` (horizontal, level).
    fn lifted_points(&self) -> Vec<Vec<Int>> {
        let mut pts: Vec<Vec<Int>> = self
            .generators
            .iter()
            .map(|(h, l)| {
                let mut v = h.clone();
                v.push(int(*l as i64));
                v
            })
            .collect();
        if let Some(sampled) = &self.sampled {
            for (level, s) in &sampled.slices {
                for p in s {
                    let mut v = p.clone();
                    v.push(int(*level as i64));
                    pts.push(v);
                }
            }
        }
        pts
    }

    /// `G(S)`: the subgroup of `Z^{d+1}` generated by `S`.
    pub fn group(&self) -> Result<Lattice> {
        let pts = self.lifted_points();
        if pts.is_empty() {
            return Err(Error::EmptySemigroup);
        }
        // reduce in chunks: the HNF transform is quadratic in the row
        // count, and sampled semigroups can carry many points
        let k = self.d + 1;
        let mut basis: Vec<Vec<Int>> = Vec::new();
        for chunk in pts.chunks(64) {
            basis.extend(chunk.iter().cloned());
            basis = Lattice::from_generators(k, basis).basis().to_vec();
        }
        Ok(Lattice::from_generators(k, basis))
    }

    /// `m(S) = [Z : pi(G(S))]`, the gcd of the occurring levels.
    pub fn level_index(&self) -> Result<u64> {
        let levels: Vec<u64> = if self.is_generator_mode() {
            self.generators.iter().map(|(_, l)| *l).collect()
        } else if let Some(sampled) = &self.sampled {
            sampled.slices.keys().copied().collect()
        } else {
            vec![]
        };
        if levels.is_empty() {
            return Err(Error::EmptySemigroup);
        }
        Ok(levels.into_iter().fold(0u64, |a, b| a.gcd(&b)))
    }

    /// The saturated level-zero lattice of the span:
    /// `(Q-span of S) ∩ (Z^d x {0})`, as a lattice in `Z^{d+1}`.
    pub fn boundary_lattice(&self) -> Result<Lattice> {
        let g = self.group()?;
        let k = self.d + 1;
        if g.rank() == 0 {
            return Ok(Lattice::trivial(k));
        }
        // integer orthogonal complement of the span, plus the level axis;
        // the kernel of that stack is span(S) ∩ {level = 0}, saturated
        let basis_t = IntMatrix::new(g.basis().to_vec()).transpose();
        let mut constraints = left_kernel(&basis_t);
        let mut level_axis = vec![Int::zero(); k];
        level_axis[k - 1] = int(1);
        constraints.push(level_axis);
        let sat = left_kernel(&IntMatrix::new(constraints).transpose());
        Ok(Lattice::from_generators(k, sat))
    }

    /// Same lattice with the (zero) level coordinate dropped, for use as
    /// the volume measure on the horizontal space.
    pub fn boundary_lattice_horizontal(&self) -> Result<Lattice> {
        let b = self.boundary_lattice()?;
        let basis = b
            .basis()
            .iter()
            .map(|v| {
                debug_assert!(v[self.d].is_zero());
                v[..self.d].to_vec()
            })
            .collect();
        Ok(Lattice::from_generators(self.d, basis))
    }

    /// `ind(S) = [∂M(S)_Z : G(S) ∩ ∂M(S)_Z]`; 1 when the boundary
    /// lattice is trivial.
    pub fn ind(&self) -> Result<Int> {
        let boundary = self.boundary_lattice()?;
        if boundary.rank() == 0 {
            return Ok(int(1));
        }
        let g = self.group()?;
        // G(S) ∩ {level = 0}: integer combos of G's basis with zero level
        let levels = IntMatrix::new(
            g.basis()
                .iter()
                .map(|v| vec![v[self.d].clone()])
                .collect(),
        );
        let combos = left_kernel(&levels);
        let inter_basis: Vec<Vec<Int>> = combos
            .iter()
            .map(|c| {
                let mut acc = vec![Int::zero(); self.d + 1];
                for (coef, bv) in c.iter().zip(g.basis()) {
                    for (a, b) in acc.iter_mut().zip(bv) {
                        *a += coef * b;
                    }
                }
                acc
            })
            .collect();
        let inter = Lattice::from_generators(self.d + 1, inter_basis);
        match subgroup_index(&inter, &boundary)? {
            LatticeIndex::Finite(n) => Ok(n.abs()),
            LatticeIndex::Infinite => unreachable!("boundary intersection has full rank"),
        }
    }

    /// `q(S) = dim ∂M(S)` = rank of the span of `S` minus one.
    pub fn q(&self) -> Result<usize> {
        let g = self.group()?;
        assert!(g.rank() >= 1);
        Ok(g.rank() - 1)
    }

    /// Strong nonnegativity. Generator mode: always true (finitely many
    /// positive-level generators). Sampled mode: empirical growth
    /// exponent over the truncated range.
    pub fn strongly_nonnegative(&self) -> Result<StrongNonnegativity> {
        if self.is_empty() {
            return Err(Error::EmptySemigroup);
        }
        if self.is_generator_mode() {
            return Ok(StrongNonnegativity {
                strongly_nonnegative: true,
                q_estimate: self.q()?,
                empirical: false,
            });
        }
        let sampled = self.sampled.as_ref().unwrap();
        let nonempty: Vec<(u64, usize)> = sampled
            .slices
            .iter()
            .map(|(k, s)| (*k, s.len()))
            .collect();
        if nonempty.len() < 3 {
            return Err(Error::InsufficientSamples(nonempty.len()));
        }
        let m = self.level_index()?;
        // compare counts at the largest level against one near half of it
        let (k1, c1) = *nonempty.last().unwrap();
        let half = k1 / 2;
        let (k0, c0) = nonempty
            .iter()
            .rev()
            .find(|(k, _)| *k <= half.max(m))
            .copied()
            .unwrap_or(nonempty[0]);
        let q_est = if k0 == k1 || c0 == 0 {
            0
        } else {
            let ratio = (c1 as f64) / (c0 as f64);
            let scale = (k1 as f64) / (k0 as f64);
            (ratio.ln() / scale.ln()).round().max(0.0) as usize
        };
        Ok(StrongNonnegativity {
            strongly_nonnegative: true,
            q_estimate: q_est,
            empirical: true,
        })
    }
}

/// Exact `n`-fold Minkowski sumset `{x_1 + ... + x_n : x_i in A}`.
pub fn sumset(a: &Slice, n: u64) -> Result<Slice> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    assert!(n >= 1, "sumset requires n >= 1");
    let mut acc = a.clone();
    for _ in 1..n {
        let mut next = Slice::new();
        for p in &acc {
            for q in a {
                next.insert(p.iter().zip(q).map(|(x, y)| x + y).collect());
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Apply a horizontal coordinate change `T` (d x d integer matrix) to a
/// generator-mode semigroup; levels are untouched.
pub fn transform_horizontal(s: &GradedSemigroup, t: &IntMatrix) -> GradedSemigroup {
    assert!(s.is_generator_mode());
    let d = s.dim();
    assert_eq!(t.nrows(), d);
    assert_eq!(t.ncols(), d);
    let gens = s
        .generators()
        .iter()
        .map(|(h, l)| {
            let img: Vec<BigInt> = (0..d)
                .map(|i| (0..d).map(|j| t.entry(i, j) * &h[j]).sum())
                .collect();
            (img, *l)
        })
        .collect();
    GradedSemigroup::from_generators(d, gens)
}
