//! Verifiers for the limit theorems: the volume limit of
//! `dim L_{nm} / n^kappa`, the degree (multiplicity) limit, the sumset
//! lower bound, and the additive decomposition of a series on a model of
//! a reduced space with several components.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::{int, rat_rank, Int, Rat};
use crate::hull::body_limit;
use crate::semigroup::{sumset, GradedSemigroup};
use crate::series::{leading_basis, GradedLinearSeries, Poly};

fn pow_rat(base: u64, exp: usize) -> Rat {
    let mut out = Rat::one();
    let b = Rat::from(int(base as i64));
    for _ in 0..exp {
        out *= &b;
    }
    out
}

fn factorial(k: usize) -> Int {
    let mut out = Int::one();
    for i in 1..=k {
        out *= int(i as i64);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitRow {
    pub n: u64,
    pub dim: usize,
    pub ratio: Rat,
}

/// Convergence diagnostics; descriptive only, never a proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergence {
    pub last_delta: Option<Rat>,
    /// Whether the deltas (to the prediction when present, otherwise the
    /// consecutive differences) are nonincreasing over the computed rows.
    pub deltas_nonincreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitReport {
    pub kappa: usize,
    pub kappa_exact: bool,
    pub m: u64,
    pub rows: Vec<LimitRow>,
    pub predicted: Option<Rat>,
    pub convergence: Convergence,
}

fn convergence_of(rows: &[LimitRow], predicted: Option<&Rat>) -> Convergence {
    let deltas: Vec<Rat> = match predicted {
        Some(p) => rows.iter().map(|r| (&r.ratio - p).abs()).collect(),
        None => rows
            .windows(2)
            .map(|w| (&w[1].ratio - &w[0].ratio).abs())
            .collect(),
    };
    Convergence {
        last_delta: deltas.last().cloned(),
        deltas_nonincreasing: deltas.windows(2).all(|w| w[1] <= w[0]),
    }
}

/// The volume limit (the exact predicted value when the semigroup data
/// is exact, plus the computed ratio table).
pub fn volume_limit_report(l: &GradedLinearSeries, n_max: u64) -> Result<LimitReport> {
    let m = match l.index(n_max) {
        Ok(m) => m,
        Err(Error::AllZero) => return Err(Error::KappaUndefined),
        Err(e) => return Err(e),
    };
    let kap = l.kappa(n_max)?;
    let Some(kappa) = kap.kappa else {
        return Err(Error::KappaUndefined);
    };
    let top = l.effective_truncation(n_max);
    let bases = l.bases_up_to(top)?;
    let mut rows = Vec::new();
    let mut n = 1u64;
    while n * m <= top {
        let basis = &bases[(n * m) as usize];
        let (reduced, _) = leading_basis(basis);
        let dim = reduced.len();
        rows.push(LimitRow {
            n,
            dim,
            ratio: Rat::from(int(dim as i64)) / pow_rat(n, kappa),
        });
        n += 1;
    }
    let predicted = match l {
        GradedLinearSeries::Explicit { .. } => None,
        _ => Some(body_limit(&l.value_semigroup(1)?)?),
    };
    let convergence = convergence_of(&rows, predicted.as_ref());
    Ok(LimitReport {
        kappa,
        kappa_exact: kap.exact,
        m,
        rows,
        predicted,
        convergence,
    })
}

/// `dim (L^[p])_n`, the Hilbert function of the subalgebra generated by
/// the degree-`p` piece.
pub fn hilbert_function(l: &GradedLinearSeries, p: u64, n: u64) -> Result<usize> {
    Ok(*hilbert_values(l, p, n)?.last().unwrap())
}

/// `dim (L^[p])_k` for `k = 0 ..= n` in one pass.
pub fn hilbert_values(l: &GradedLinearSeries, p: u64, n: u64) -> Result<Vec<usize>> {
    let ver = l.veronese(p)?;
    let bases = ver.bases_up_to(n)?;
    Ok(bases.iter().map(|b| b.len()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    /// Dimension of the projective model, `q` of the Veronese value
    /// semigroup.
    pub kappa: usize,
    /// Route (a): `kappa! * body_limit` of the Veronese value semigroup.
    pub degree: Int,
    /// Route (b): the stabilized `kappa`-th finite difference of the
    /// Hilbert function; `None` when it did not stabilize.
    pub finite_difference: Option<Int>,
}

/// Multiplicity (projective degree) of the subalgebra generated by the
/// degree-`p` piece, by two independent routes that must agree.
pub fn multiplicity(l: &GradedLinearSeries, p: u64) -> Result<MultiplicityReport> {
    let ver = l.veronese(p)?;
    let s = ver.value_semigroup(1)?;
    let kappa = s.q()?;
    let exact = Rat::from(factorial(kappa)) * body_limit(&s)?;
    if !exact.is_integer() || !exact.is_positive() {
        return Err(Error::Inconsistent {
            exact: exact.to_string(),
            finite_difference: "(route a is not a positive integer)".to_string(),
        });
    }
    let degree = exact.to_integer();

    // route (b): kappa-th finite differences of the Hilbert function,
    // constant across the last three computed values
    let n_max = kappa as u64 + 5;
    let values = hilbert_values(l, p, n_max)?;
    let mut diffs: Vec<Int> = values.iter().map(|&v| int(v as i64)).collect();
    for _ in 0..kappa {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let finite_difference = if diffs.len() >= 3 {
        let tail = &diffs[diffs.len() - 3..];
        if tail[0] == tail[1] && tail[1] == tail[2] {
            Some(tail[2].clone())
        } else {
            None
        }
    } else {
        None
    };
    if let Some(fd) = &finite_difference {
        if *fd != degree {
            return Err(Error::Inconsistent {
                exact: degree.to_string(),
                finite_difference: fd.to_string(),
            });
        }
    }
    Ok(MultiplicityReport {
        kappa,
        degree,
        finite_difference,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLimitRow {
    /// Multiplier: the row concerns the piece of degree `p * m`.
    pub p: u64,
    pub degree: Int,
    /// `degree / (kappa! * p^kappa)`.
    pub ratio: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLimitReport {
    pub kappa: usize,
    pub m: u64,
    pub rows: Vec<DegreeLimitRow>,
    pub volume_prediction: Option<Rat>,
    pub ratios_nondecreasing: bool,
    pub ratios_below_prediction: bool,
}

/// The degree-theorem table: multiplicities of the Veronese subalgebras
/// at degrees `p * m`, normalized to compare against the volume limit.
pub fn degree_limit_report(l: &GradedLinearSeries, p_list: &[u64]) -> Result<DegreeLimitReport> {
    let m = match l.index(1) {
        Ok(m) => m,
        Err(Error::AllZero) => return Err(Error::KappaUndefined),
        Err(e) => return Err(e),
    };
    let kap = l.kappa(8)?;
    let Some(kappa) = kap.kappa else {
        return Err(Error::KappaUndefined);
    };
    let kfact = Rat::from(factorial(kappa));
    let mut rows = Vec::new();
    for &p in p_list {
        assert!(p >= 1, "p multipliers must be positive");
        let rep = multiplicity(l, p * m)?;
        let ratio = Rat::from(rep.degree.clone()) / (&kfact * pow_rat(p, kappa));
        rows.push(DegreeLimitRow {
            p,
            degree: rep.degree,
            ratio,
        });
    }
    let volume_prediction = match l {
        GradedLinearSeries::Explicit { .. } => None,
        _ => Some(body_limit(&l.value_semigroup(1)?)?),
    };
    let ratios_nondecreasing = rows.windows(2).all(|w| w[0].ratio <= w[1].ratio);
    let ratios_below_prediction = match &volume_prediction {
        Some(v) => rows.iter().all(|r| r.ratio <= *v),
        None => true,
    };
    Ok(DegreeLimitReport {
        kappa,
        m,
        rows,
        volume_prediction,
        ratios_nondecreasing,
        ratios_below_prediction,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetRow {
    pub n: u64,
    pub sumset_count: usize,
    /// `#(n * S_{pm}) / (n^q p^q)`.
    pub ratio: Rat,
    /// `#S_{npm}` when the slice is available at this level.
    pub slice_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetReport {
    pub p: u64,
    pub m: u64,
    pub q: usize,
    pub rows: Vec<SumsetRow>,
    pub body_limit: Rat,
    /// `|last ratio - body_limit|`.
    pub final_gap: Option<Rat>,
    /// Sandwich lower side: `#(n*S_{pm}) <= #S_{npm}` at every computed
    /// point where the slice was available.
    pub sandwich_ok: bool,
}

/// Sumset growth of one slice against the slice counts and the volume
/// prediction.
pub fn sumset_report(s: &GradedSemigroup, p: u64, n_max: u64) -> Result<SumsetReport> {
    assert!(p >= 1 && n_max >= 1);
    let m = s.level_index()?;
    let q = s.q()?;
    let bl = body_limit(s)?;
    let base = s.slice(p * m)?;
    if base.is_empty() {
        return Err(Error::EmptySlice(p * m));
    }
    let pq = pow_rat(p, q);
    let mut rows = Vec::new();
    let mut sandwich_ok = true;
    let mut acc = base.clone();
    for n in 1..=n_max {
        if n > 1 {
            let mut next = std::collections::BTreeSet::new();
            for a in &acc {
                for b in &base {
                    next.insert(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<Int>>());
                }
            }
            acc = next;
        }
        debug_assert_eq!(acc, sumset(&base, n)?);
        let count = acc.len();
        let ratio = Rat::from(int(count as i64)) / (pow_rat(n, q) * &pq);
        let slice_count = match s.slice(n * p * m) {
            Ok(sl) => Some(sl.len()),
            Err(Error::OutOfRange(..)) => None,
            Err(e) => return Err(e),
        };
        if let Some(sc) = slice_count {
            if count > sc {
                sandwich_ok = false;
            }
        }
        rows.push(SumsetRow {
            n,
            sumset_count: count,
            ratio,
            slice_count,
        });
    }
    let final_gap = rows.last().map(|r| (&r.ratio - &bl).abs());
    Ok(SumsetReport {
        p,
        m,
        q,
        rows,
        body_limit: bl,
        final_gap,
        sandwich_ok,
    })
}

// ---------------------------------------------------------------------------
// reduced-space model: several components, elements are tuples

/// A graded linear series on a model of a reduced space with `s`
/// irreducible components: elements of positive degree are `s`-tuples of
/// polynomials, the degree-0 piece is the diagonal constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiComponentSeries {
    component_dims: Vec<usize>,
    truncation: u64,
    /// Bases per positive degree; elements are tuples of arity `s`,
    /// linearly independent within each degree.
    bases: BTreeMap<u64, Vec<Vec<Poly>>>,
}

/// Concatenated coefficient vectors of a list of tuples over their joint
/// term support, componentwise.
fn flatten_tuples(elements: &[Vec<Poly>], s: usize) -> Vec<Vec<Rat>> {
    let mut supports: Vec<Vec<Vec<u32>>> = Vec::with_capacity(s);
    for i in 0..s {
        let mut sup: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
        for e in elements {
            sup.extend(e[i].terms().keys().cloned());
        }
        supports.push(sup.into_iter().collect());
    }
    elements
        .iter()
        .map(|e| {
            let mut row = Vec::new();
            for i in 0..s {
                for t in &supports[i] {
                    row.push(e[i].terms().get(t).cloned().unwrap_or_else(Rat::zero));
                }
            }
            row
        })
        .collect()
}

impl MultiComponentSeries {
    /// Build from explicit per-degree tuple bases; dependent tuples
    /// within a degree are discarded.
    pub fn new(
        component_dims: Vec<usize>,
        truncation: u64,
        bases: BTreeMap<u64, Vec<Vec<Poly>>>,
    ) -> Self {
        let s = component_dims.len();
        assert!(s >= 1, "need at least one component");
        let mut cleaned: BTreeMap<u64, Vec<Vec<Poly>>> = BTreeMap::new();
        for (deg, elements) in bases {
            assert!(deg >= 1, "degree-0 piece is implicit (diagonal constants)");
            assert!(deg <= truncation);
            for e in &elements {
                assert_eq!(e.len(), s, "tuple arity mismatch");
                for (i, p) in e.iter().enumerate() {
                    assert_eq!(p.dim(), component_dims[i]);
                }
            }
            // keep a maximal independent subset, in input order
            let mut kept: Vec<Vec<Poly>> = Vec::new();
            for e in elements {
                if e.iter().all(|p| p.is_zero()) {
                    continue;
                }
                let mut trial = kept.clone();
                trial.push(e.clone());
                let rows = flatten_tuples(&trial, s);
                if rat_rank(&rows) == trial.len() {
                    kept = trial;
                }
            }
            if !kept.is_empty() {
                cleaned.insert(deg, kept);
            }
        }
        MultiComponentSeries {
            component_dims,
            truncation,
            bases: cleaned,
        }
    }

    /// The direct-sum model: tuples supported on a single component, one
    /// per basis element of each component series.
    pub fn direct_sum(components: &[GradedLinearSeries], truncation: u64) -> Result<Self> {
        let s = components.len();
        let dims: Vec<usize> = components.iter().map(|c| c.dim()).collect();
        let mut bases: BTreeMap<u64, Vec<Vec<Poly>>> = BTreeMap::new();
        for (i, comp) in components.iter().enumerate() {
            let comp_bases = comp.bases_up_to(comp.effective_truncation(truncation))?;
            for (deg, basis) in comp_bases.iter().enumerate().skip(1) {
                for b in basis {
                    let tuple: Vec<Poly> = (0..s)
                        .map(|j| if j == i { b.clone() } else { Poly::zero(dims[j]) })
                        .collect();
                    bases.entry(deg as u64).or_default().push(tuple);
                }
            }
        }
        Ok(MultiComponentSeries::new(dims, truncation, bases))
    }

    pub fn arity(&self) -> usize {
        self.component_dims.len()
    }

    pub fn component_dims(&self) -> &[usize] {
        &self.component_dims
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn bases(&self) -> &BTreeMap<u64, Vec<Vec<Poly>>> {
        &self.bases
    }

    pub fn dim_at(&self, n: u64) -> usize {
        if n == 0 {
            1
        } else {
            self.bases.get(&n).map_or(0, |b| b.len())
        }
    }

    fn is_zero_positive(&self) -> Option<u64> {
        self.bases.keys().next().copied()
    }

    /// Permute the component order (1-based permutation of `1..=s`).
    pub fn reorder(&self, ordering: &[usize]) -> Result<Self> {
        let s = self.arity();
        let mut seen = vec![false; s];
        for &i in ordering {
            if i < 1 || i > s || seen[i - 1] {
                return Err(Error::IndexOutOfRange(i, s));
            }
            seen[i - 1] = true;
        }
        if ordering.len() != s {
            return Err(Error::IndexOutOfRange(ordering.len(), s));
        }
        let dims: Vec<usize> = ordering.iter().map(|&i| self.component_dims[i - 1]).collect();
        let bases = self
            .bases
            .iter()
            .map(|(deg, els)| {
                (
                    *deg,
                    els.iter()
                        .map(|e| ordering.iter().map(|&i| e[i - 1].clone()).collect())
                        .collect(),
                )
            })
            .collect();
        Ok(MultiComponentSeries {
            component_dims: dims,
            truncation: self.truncation,
            bases,
        })
    }
}

/// Restriction to one component (1-based index): the image of the
/// projection as a single-component series, and the exact kernel as a
/// multi-component series. `dim M_n = dim image_n + dim kernel_n` for
/// every degree.
pub fn restrict(
    m: &MultiComponentSeries,
    i: usize,
) -> Result<(GradedLinearSeries, MultiComponentSeries)> {
    let s = m.arity();
    if i < 1 || i > s {
        return Err(Error::IndexOutOfRange(i, s));
    }
    let ci = i - 1;
    let di = m.component_dims[ci];
    let mut image_bases: BTreeMap<u64, Vec<Poly>> = BTreeMap::new();
    let mut kernel_bases: BTreeMap<u64, Vec<Vec<Poly>>> = BTreeMap::new();
    for (deg, elements) in &m.bases {
        let projections: Vec<Poly> = elements.iter().map(|e| e[ci].clone()).collect();
        let (image, _) = leading_basis(&projections);
        // kernel combos: coefficient rows of the projected component
        let mut support: std::collections::BTreeSet<Vec<u32>> =
            std::collections::BTreeSet::new();
        for p in &projections {
            support.extend(p.terms().keys().cloned());
        }
        let support: Vec<Vec<u32>> = support.into_iter().collect();
        let rows: Vec<Vec<Rat>> = projections
            .iter()
            .map(|p| {
                support
                    .iter()
                    .map(|t| p.terms().get(t).cloned().unwrap_or_else(Rat::zero))
                    .collect()
            })
            .collect();
        let combos = crate::exactmath::left_nullspace(&rows);
        let mut kernel_elements: Vec<Vec<Poly>> = Vec::new();
        for c in combos {
            let mut tuple: Vec<Poly> = m
                .component_dims
                .iter()
                .map(|&dj| Poly::zero(dj))
                .collect();
            for (coef, e) in c.iter().zip(elements) {
                if coef.is_zero() {
                    continue;
                }
                for (j, p) in e.iter().enumerate() {
                    tuple[j] = tuple[j].add(&p.scale(coef));
                }
            }
            kernel_elements.push(tuple);
        }
        // rank-nullity, exact by construction
        debug_assert_eq!(elements.len(), image.len() + kernel_elements.len());
        if !image.is_empty() {
            image_bases.insert(*deg, image);
        }
        if !kernel_elements.is_empty() {
            kernel_bases.insert(*deg, kernel_elements);
        }
    }
    let restricted = GradedLinearSeries::explicit(di, m.truncation, image_bases);
    let kernel = MultiComponentSeries::new(m.component_dims.clone(), m.truncation, kernel_bases);
    Ok((restricted, kernel))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    /// Position in the (possibly reordered) chain, 1-based.
    pub index: usize,
    /// `m` of the restricted series; `None` when it vanishes entirely.
    pub m: Option<u64>,
    pub kappa: Option<usize>,
    pub kappa_stabilized_at: Option<u64>,
    /// `dim (M^{i-1}|X_i)_n` for `n = 1 ..= truncation`.
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    pub residue: u64,
    pub rows: Vec<LimitRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub kappa: usize,
    /// LCM of the component indices achieving the maximal kappa.
    pub r: u64,
    pub components: Vec<ComponentReport>,
    /// `dim L_n` for `n = 1 ..= truncation`.
    pub total_dims: Vec<usize>,
    /// Per-degree additivity `dim L_n = sum_i dim (M^{i-1}|X_i)_n`.
    pub additivity_ok: bool,
    pub residue_tables: Vec<ResidueTable>,
}

/// The reduced-space decomposition: peel off one component at a time via
/// the kernel chain, check exact per-degree additivity, and report the
/// limit tables along every inhabited residue class mod `r`.
pub fn decompose_reduced(
    m: &MultiComponentSeries,
    n_max: u64,
    ordering: Option<&[usize]>,
) -> Result<DecompositionReport> {
    let m = match ordering {
        Some(ord) => m.reorder(ord)?,
        None => m.clone(),
    };
    let s = m.arity();
    let top = m.truncation().min(n_max);
    let total_dims: Vec<usize> = (1..=top).map(|n| m.dim_at(n)).collect();

    let mut current = m.clone();
    let mut components = Vec::new();
    for i in 1..=s {
        let (restricted, kernel) = restrict(&current, i)?;
        let dims: Vec<usize> = (1..=top)
            .map(|n| restricted.degree_piece(n).map(|b| b.len()).unwrap_or(0))
            .collect();
        let m_i = {
            let nonzero: Vec<u64> = (1..=top).filter(|&n| dims[(n - 1) as usize] > 0).collect();
            if nonzero.is_empty() {
                None
            } else {
                Some(nonzero.into_iter().fold(0u64, |a, b| a.gcd(&b)))
            }
        };
        let kap = restricted.kappa(top)?;
        if let (Some(_), Some(st)) = (kap.kappa, kap.stabilized_at) {
            // refuse to build limit tables on an unstabilized estimate
            if st + 3 > top {
                return Err(Error::Unstable);
            }
        }
        components.push(ComponentReport {
            index: i,
            m: m_i,
            kappa: kap.kappa,
            kappa_stabilized_at: kap.stabilized_at,
            dims,
        });
        current = kernel;
    }
    if let Some(first_nonzero) = current.is_zero_positive() {
        return Err(Error::NotInjective(first_nonzero));
    }

    let kappa = components
        .iter()
        .filter_map(|c| c.kappa)
        .max()
        .ok_or(Error::KappaUndefined)?;
    let r = components
        .iter()
        .filter(|c| c.kappa == Some(kappa))
        .filter_map(|c| c.m)
        .fold(1u64, |a, b| a.lcm(&b));

    let additivity_ok = (1..=top).all(|n| {
        let idx = (n - 1) as usize;
        total_dims[idx]
            == components
                .iter()
                .map(|c| c.dims[idx])
                .sum::<usize>()
    });

    let mut residue_tables = Vec::new();
    for a in 0..r {
        let mut rows = Vec::new();
        let mut n = 1u64;
        while a + n * r <= top {
            let dim = m.dim_at(a + n * r);
            rows.push(LimitRow {
                n,
                dim,
                ratio: Rat::from(int(dim as i64)) / pow_rat(n, kappa),
            });
            n += 1;
        }
        if rows.iter().any(|row| row.dim > 0) {
            residue_tables.push(ResidueTable { residue: a, rows });
        }
    }
    Ok(DecompositionReport {
        kappa,
        r,
        components,
        total_dims,
        additivity_ok,
        residue_tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn poly(d: usize, terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(
            d,
            terms
                .iter()
                .map(|(e, n)| (e.to_vec(), Rat::from(int(*n))))
                .collect(),
        )
    }

    fn simplex() -> GradedLinearSeries {
        GradedLinearSeries::toric(
            2,
            vec![
                vec![int(0), int(0)],
                vec![int(1), int(0)],
                vec![int(0), int(1)],
            ],
        )
    }

    fn unit_square() -> GradedLinearSeries {
        GradedLinearSeries::toric(
            2,
            vec![
                vec![int(0), int(0)],
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![int(1), int(1)],
            ],
        )
    }

    fn index_two_series() -> GradedLinearSeries {
        GradedLinearSeries::generated(
            1,
            vec![
                (2, poly(1, &[(&[0], 1)])),
                (2, poly(1, &[(&[1], 1)])),
                (2, poly(1, &[(&[2], 1)])),
            ],
        )
    }

    #[test]
    fn volume_limit_simplex() {
        let rep = volume_limit_report(&simplex(), 12).unwrap();
        assert_eq!(rep.kappa, 2);
        assert_eq!(rep.m, 1);
        assert_eq!(rep.predicted, Some(rat(1, 2)));
        for row in &rep.rows {
            let n = row.n;
            let expect = Rat::from(int(((n + 1) * (n + 2) / 2) as i64)) / pow_rat(n, 2);
            assert_eq!(row.ratio, expect);
        }
    }

    #[test]
    fn volume_limit_unit_square() {
        let rep = volume_limit_report(&unit_square(), 10).unwrap();
        assert_eq!(rep.predicted, Some(rat(1, 1)));
        for row in &rep.rows {
            let expect = Rat::from(int(((row.n + 1) * (row.n + 1)) as i64)) / pow_rat(row.n, 2);
            assert_eq!(row.ratio, expect);
        }
    }

    #[test]
    fn volume_limit_index_two_m_normalization() {
        let rep = volume_limit_report(&index_two_series(), 20).unwrap();
        assert_eq!(rep.m, 2);
        assert_eq!(rep.kappa, 1);
        assert_eq!(rep.predicted, Some(rat(2, 1)));
        for row in &rep.rows {
            // dim L_{2n} = 2n + 1
            assert_eq!(row.dim as u64, 2 * row.n + 1);
        }
    }

    #[test]
    fn volume_limit_all_zero_refused() {
        let l = GradedLinearSeries::explicit(1, 5, BTreeMap::new());
        assert_eq!(volume_limit_report(&l, 5), Err(Error::KappaUndefined));
    }

    #[test]
    fn hilbert_simplex_p1_and_p2() {
        let l = simplex();
        for n in 1..=5u64 {
            assert_eq!(
                hilbert_function(&l, 1, n).unwrap() as u64,
                (n + 1) * (n + 2) / 2
            );
            assert_eq!(
                hilbert_function(&l, 2, n).unwrap() as u64,
                (2 * n + 1) * (n + 1)
            );
        }
        assert_eq!(hilbert_function(&l, 2, 0).unwrap(), 1);
    }

    #[test]
    fn multiplicity_simplex_veronese_squares() {
        let l = simplex();
        for p in 1..=3u64 {
            let rep = multiplicity(&l, p).unwrap();
            assert_eq!(rep.kappa, 2);
            assert_eq!(rep.degree, int((p * p) as i64));
            assert_eq!(rep.finite_difference, Some(int((p * p) as i64)));
        }
    }

    #[test]
    fn multiplicity_unit_square_quadric() {
        let rep = multiplicity(&unit_square(), 1).unwrap();
        assert_eq!(rep.degree, int(2));
        assert_eq!(rep.finite_difference, Some(int(2)));
    }

    #[test]
    fn degree_limit_simplex_flat_ratio() {
        let rep = degree_limit_report(&simplex(), &[1, 2, 3]).unwrap();
        assert_eq!(rep.volume_prediction, Some(rat(1, 2)));
        for row in &rep.rows {
            assert_eq!(row.ratio, rat(1, 2));
        }
        assert!(rep.ratios_nondecreasing);
        assert!(rep.ratios_below_prediction);
    }

    #[test]
    fn degree_limit_index_two_series() {
        let rep = degree_limit_report(&index_two_series(), &[1, 2, 3]).unwrap();
        assert_eq!(rep.m, 2);
        for row in &rep.rows {
            // deg(Y_{2p}) = 2p, ratio = 2p / (1! * p) = 2
            assert_eq!(row.degree, int(2 * row.p as i64));
            assert_eq!(row.ratio, rat(2, 1));
        }
    }

    #[test]
    fn degree_limit_two_generator_series() {
        // generated by 1+y and y in degree 1; limit 1
        let l = GradedLinearSeries::generated(
            1,
            vec![
                (1, poly(1, &[(&[0], 1), (&[1], 1)])),
                (1, poly(1, &[(&[1], 1)])),
            ],
        );
        let rep = degree_limit_report(&l, &[1, 2, 3]).unwrap();
        assert_eq!(rep.volume_prediction, Some(rat(1, 1)));
        for row in &rep.rows {
            assert_eq!(row.ratio, rat(1, 1));
        }
    }

    #[test]
    fn sumset_report_even_shift() {
        let s = GradedSemigroup::from_generators_i64(1, &[(&[0], 1), (&[2], 1)]);
        let rep = sumset_report(&s, 1, 10).unwrap();
        assert_eq!(rep.body_limit, rat(1, 1));
        for row in &rep.rows {
            assert_eq!(row.sumset_count as u64, row.n + 1);
            assert_eq!(row.slice_count, Some(row.sumset_count));
        }
        assert!(rep.sandwich_ok);
    }

    #[test]
    fn sumset_report_simplex() {
        let s = GradedSemigroup::from_generators_i64(
            2,
            &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)],
        );
        let rep = sumset_report(&s, 1, 8).unwrap();
        assert_eq!(rep.body_limit, rat(1, 2));
        for row in &rep.rows {
            let expect = ((row.n + 1) * (row.n + 2) / 2) as usize;
            assert_eq!(row.sumset_count, expect);
        }
        assert!(rep.sandwich_ok);
    }

    #[test]
    fn sumset_gap_shrinks_with_p() {
        // non-normal-flavored example: gap at p = 3 smaller than at p = 1
        let s = GradedSemigroup::from_generators_i64(1, &[(&[0], 1), (&[3], 1)]);
        let r1 = sumset_report(&s, 1, 12).unwrap();
        let r3 = sumset_report(&s, 3, 12).unwrap();
        assert!(r3.final_gap.clone().unwrap() <= r1.final_gap.clone().unwrap());
    }

    fn segment(len: i64) -> GradedLinearSeries {
        GradedLinearSeries::toric(1, vec![vec![int(0)], vec![int(len)]])
    }

    #[test]
    fn restrict_two_monomial_components() {
        // M_1 = {(y, 0), (0, z)}
        let mut bases = BTreeMap::new();
        bases.insert(
            1u64,
            vec![
                vec![poly(1, &[(&[1], 1)]), Poly::zero(1)],
                vec![Poly::zero(1), poly(1, &[(&[1], 1)])],
            ],
        );
        let m = MultiComponentSeries::new(vec![1, 1], 1, bases);
        let (restricted, kernel) = restrict(&m, 1).unwrap();
        assert_eq!(restricted.degree_piece(1).unwrap().len(), 1);
        assert_eq!(kernel.dim_at(1), 1);
        assert!(kernel.bases()[&1][0][0].is_zero());
    }

    #[test]
    fn restrict_diagonal_is_injective() {
        // identical components: the diagonal projects injectively
        let mut bases = BTreeMap::new();
        bases.insert(
            1u64,
            vec![vec![poly(1, &[(&[1], 1)]), poly(1, &[(&[1], 1)])]],
        );
        let m = MultiComponentSeries::new(vec![1, 1], 1, bases);
        let (restricted, kernel) = restrict(&m, 1).unwrap();
        assert_eq!(restricted.degree_piece(1).unwrap().len(), 1);
        assert_eq!(kernel.dim_at(1), 0);
    }

    #[test]
    fn restrict_additivity_random_instance() {
        // mixed tuples over two 1-variable components
        let mut bases = BTreeMap::new();
        bases.insert(
            2u64,
            vec![
                vec![poly(1, &[(&[0], 1), (&[2], 3)]), poly(1, &[(&[1], 2)])],
                vec![poly(1, &[(&[2], 1)]), poly(1, &[(&[1], -2)])],
                vec![poly(1, &[(&[0], 2), (&[2], 7)]), poly(1, &[(&[1], 2)])],
                vec![Poly::zero(1), poly(1, &[(&[0], 5)])],
            ],
        );
        let m = MultiComponentSeries::new(vec![1, 1], 2, bases);
        let total = m.dim_at(2);
        let (restricted, kernel) = restrict(&m, 1).unwrap();
        let image_dim = restricted.degree_piece(2).unwrap().len();
        assert_eq!(total, image_dim + kernel.dim_at(2));
    }

    #[test]
    fn restrict_index_out_of_range() {
        let m = MultiComponentSeries::new(vec![1, 1], 1, BTreeMap::new());
        assert!(matches!(restrict(&m, 3), Err(Error::IndexOutOfRange(3, 2))));
    }

    #[test]
    fn decompose_two_toric_segments() {
        let m = MultiComponentSeries::direct_sum(&[segment(1), segment(2)], 30).unwrap();
        let rep = decompose_reduced(&m, 30, None).unwrap();
        assert_eq!(rep.kappa, 1);
        assert_eq!(rep.r, 1);
        assert!(rep.additivity_ok);
        // dim L_n = (n+1) + (2n+1) = 3n + 2
        for (idx, &dim) in rep.total_dims.iter().enumerate() {
            let n = idx as u64 + 1;
            assert_eq!(dim as u64, 3 * n + 2);
        }
    }

    #[test]
    fn decompose_mixed_indices_lcm() {
        // component 1 lives in even degrees, component 2 in multiples of 3
        let c1 = GradedLinearSeries::generated(
            1,
            vec![(2, poly(1, &[(&[0], 1)])), (2, poly(1, &[(&[1], 1)]))],
        );
        let c2 = GradedLinearSeries::generated(
            1,
            vec![(3, poly(1, &[(&[0], 1)])), (3, poly(1, &[(&[1], 1)]))],
        );
        let m = MultiComponentSeries::direct_sum(&[c1, c2], 30).unwrap();
        let rep = decompose_reduced(&m, 30, None).unwrap();
        assert_eq!(rep.kappa, 1);
        assert_eq!(rep.components[0].m, Some(2));
        assert_eq!(rep.components[1].m, Some(3));
        assert_eq!(rep.r, 6);
        assert!(rep.additivity_ok);
    }

    #[test]
    fn decompose_single_component_matches_volume_report() {
        let m = MultiComponentSeries::direct_sum(&[segment(2)], 20).unwrap();
        let rep = decompose_reduced(&m, 20, None).unwrap();
        assert_eq!(rep.kappa, 1);
        assert_eq!(rep.r, 1);
        let vol = volume_limit_report(&segment(2), 20).unwrap();
        let table = &rep.residue_tables[0];
        for (a, b) in table.rows.iter().zip(&vol.rows) {
            assert_eq!(a.dim, b.dim);
            assert_eq!(a.ratio, b.ratio);
        }
    }

    #[test]
    fn decompose_ordering_preserves_conclusions() {
        let c1 = GradedLinearSeries::generated(
            1,
            vec![(2, poly(1, &[(&[0], 1)])), (2, poly(1, &[(&[1], 1)]))],
        );
        let c2 = GradedLinearSeries::generated(
            1,
            vec![(3, poly(1, &[(&[0], 1)])), (3, poly(1, &[(&[1], 1)]))],
        );
        let m = MultiComponentSeries::direct_sum(&[c1, c2], 30).unwrap();
        let rep = decompose_reduced(&m, 30, Some(&[2, 1])).unwrap();
        assert_eq!(rep.kappa, 1);
        assert_eq!(rep.r, 6);
        assert!(rep.additivity_ok);
    }
}
