//! Graded linear series over a polynomial model of the local ring at a
//! nonsingular point, and the lexicographic flag valuation.
//!
//! Sections are plain polynomials in `y_1 ... y_d` with rational
//! coefficients. The valuation sends a nonzero polynomial to the
//! lex-smallest exponent vector among its terms (first coordinate most
//! significant); the value semigroup of a series collects those values
//! degree by degree, and its slice cardinality equals the dimension of
//! the degree piece.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::{int, rat_rank, Int, Rat};
use crate::hull::{convex_hull, RatPolytope};
use crate::semigroup::{GradedSemigroup, Slice};

/// Sparse multivariate polynomial with rational coefficients. Terms are
/// keyed by exponent vector; the `BTreeMap` order on `Vec<u32>` is
/// exactly the lex order with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    d: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(d: usize) -> Self {
        Poly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Poly::monomial(d, &vec![0; d])
    }

    pub fn monomial(d: usize, exponent: &[u32]) -> Self {
        assert_eq!(exponent.len(), d);
        let mut terms = BTreeMap::new();
        terms.insert(exponent.to_vec(), Rat::one());
        Poly { d, terms }
    }

    pub fn from_terms(d: usize, terms: Vec<(Vec<u32>, Rat)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), d);
            if !c.is_zero() {
                let entry = map.entry(e).or_insert_with(Rat::zero);
                *entry += c;
            }
        }
        map.retain(|_, c: &mut Rat| !c.is_zero());
        Poly { d, terms: map }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.d, other.d);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { d: self.d, terms }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.d);
        }
        Poly {
            d: self.d,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn sub_scaled(&self, other: &Poly, c: &Rat) -> Poly {
        self.add(&other.scale(&-c.clone()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.d, other.d);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { d: self.d, terms }
    }

    /// The flag valuation: the lex-smallest exponent with a nonzero
    /// coefficient.
    pub fn nu(&self) -> Result<Vec<u32>> {
        self.terms.keys().next().cloned().ok_or(Error::ZeroPoly)
    }

    pub fn nu_int(&self) -> Result<Vec<Int>> {
        Ok(self.nu()?.into_iter().map(|x| int(x as i64)).collect())
    }
}

/// Gaussian elimination ordered by lex-min leading exponents: returns a
/// basis of the span with pairwise distinct valuation values, plus the
/// value set. The value count equals the dimension of the span.
pub fn leading_basis(vectors: &[Poly]) -> (Vec<Poly>, BTreeSet<Vec<u32>>) {
    let mut pivots: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for v in vectors {
        let mut f = v.clone();
        loop {
            if f.is_zero() {
                break;
            }
            let lead = f.nu().unwrap();
            match pivots.get(&lead) {
                None => {
                    // normalize so the leading coefficient is 1
                    let lc = f.terms[&lead].clone();
                    let inv = Rat::one() / lc;
                    pivots.insert(lead, f.scale(&inv));
                    break;
                }
                Some(p) => {
                    let c = f.terms[&lead].clone();
                    f = f.sub_scaled(p, &c);
                }
            }
        }
    }
    let values: BTreeSet<Vec<u32>> = pivots.keys().cloned().collect();
    (pivots.into_values().collect(), values)
}

/// Rank of the coefficient matrix of a list of polynomials; an
/// elimination-free route to the dimension of the span, used as the
/// cross-check against the valuation count.
pub fn span_dimension(vectors: &[Poly]) -> usize {
    let support: Vec<Vec<u32>> = {
        let mut s: BTreeSet<Vec<u32>> = BTreeSet::new();
        for v in vectors {
            s.extend(v.terms.keys().cloned());
        }
        s.into_iter().collect()
    };
    if support.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| {
            support
                .iter()
                .map(|e| v.terms.get(e).cloned().unwrap_or_else(Rat::zero))
                .collect()
        })
        .collect();
    rat_rank(&rows)
}

/// A graded linear series, known in one of three ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedLinearSeries {
    /// Full monomial series of a lattice polytope: the degree-`n` piece
    /// is spanned by the monomials with exponents in `nP ∩ Z^d`.
    Toric { d: usize, polytope: Vec<Vec<Int>> },
    /// Subalgebra generated by finitely many homogeneous elements
    /// `(degree, polynomial)`.
    Generated {
        d: usize,
        generators: Vec<(u64, Poly)>,
    },
    /// Arbitrary per-degree bases up to a truncation degree; not
    /// required to be closed under multiplication.
    Explicit {
        d: usize,
        max_degree: u64,
        bases: BTreeMap<u64, Vec<Poly>>,
    },
}

/// Result of the Kodaira-Iitaka dimension computation. `kappa == None`
/// encodes negative infinity (all positive pieces vanish).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaResult {
    pub kappa: Option<usize>,
    /// Exact (generator span) versus truncated lower-bound estimate.
    pub exact: bool,
    /// For estimates: the degree past which the observed span rank no
    /// longer grew.
    pub stabilized_at: Option<u64>,
}

/// Outcome of the multiplicativity validation of an explicit series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraCheck {
    pub ok: bool,
    pub first_violation: Option<(u64, u64)>,
}

impl GradedLinearSeries {
    pub fn toric(d: usize, polytope: Vec<Vec<Int>>) -> Self {
        assert!(!polytope.is_empty(), "polytope needs at least one vertex");
        for v in &polytope {
            assert_eq!(v.len(), d);
            assert!(
                v.iter().all(|x| !x.is_negative()),
                "polytope vertices must be nonnegative to model monomial exponents"
            );
        }
        GradedLinearSeries::Toric { d, polytope }
    }

    pub fn generated(d: usize, generators: Vec<(u64, Poly)>) -> Self {
        for (deg, p) in &generators {
            assert!(*deg >= 1, "generator degrees must be positive");
            assert!(!p.is_zero(), "zero generator");
            assert_eq!(p.dim(), d);
        }
        GradedLinearSeries::Generated { d, generators }
    }

    pub fn explicit(d: usize, max_degree: u64, bases: BTreeMap<u64, Vec<Poly>>) -> Self {
        let mut bases = bases;
        bases.retain(|_, b| !b.is_empty());
        for (deg, basis) in &bases {
            assert!(*deg <= max_degree);
            for p in basis {
                assert_eq!(p.dim(), d);
            }
        }
        GradedLinearSeries::Explicit {
            d,
            max_degree,
            bases,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GradedLinearSeries::Toric { d, .. }
            | GradedLinearSeries::Generated { d, .. }
            | GradedLinearSeries::Explicit { d, .. } => *d,
        }
    }

    /// Lattice points of the `n`-fold dilation of the defining polytope.
    fn dilated_lattice_points(polytope: &[Vec<Int>], d: usize, n: u64) -> Result<Vec<Vec<u32>>> {
        if n == 0 {
            return Ok(vec![vec![0; d]]);
        }
        let n_int = int(n as i64);
        let scaled: Vec<Vec<Rat>> = polytope
            .iter()
            .map(|v| v.iter().map(|x| Rat::from(x * &n_int)).collect())
            .collect();
        let hull = convex_hull(&scaled)?;
        Ok(lattice_points_of(&hull, &scaled))
    }

    /// A basis of the degree-`n` piece. `L_0` is spanned by 1.
    pub fn degree_piece(&self, n: u64) -> Result<Vec<Poly>> {
        Ok(self.bases_up_to(n)?.pop().unwrap())
    }

    /// Bases of `L_0 ..= L_n`, computed in one pass (the generated mode
    /// fills degrees bottom-up, eliminating within each degree as it
    /// goes).
    pub fn bases_up_to(&self, n: u64) -> Result<Vec<Vec<Poly>>> {
        let d = self.dim();
        let mut out: Vec<Vec<Poly>> = Vec::with_capacity(n as usize + 1);
        match self {
            GradedLinearSeries::Toric { polytope, .. } => {
                for k in 0..=n {
                    let pts = Self::dilated_lattice_points(polytope, d, k)?;
                    out.push(pts.iter().map(|e| Poly::monomial(d, e)).collect());
                }
            }
            GradedLinearSeries::Generated { generators, .. } => {
                out.push(vec![Poly::one(d)]);
                for k in 1..=n {
                    let mut products = Vec::new();
                    for (gdeg, g) in generators {
                        if *gdeg <= k {
                            for b in &out[(k - gdeg) as usize] {
                                products.push(g.mul(b));
                            }
                        }
                    }
                    let (basis, _) = leading_basis(&products);
                    out.push(basis);
                }
            }
            GradedLinearSeries::Explicit {
                max_degree, bases, ..
            } => {
                if n > *max_degree {
                    return Err(Error::OutOfRange(n, *max_degree));
                }
                for k in 0..=n {
                    if k == 0 {
                        out.push(vec![Poly::one(d)]);
                    } else {
                        out.push(bases.get(&k).cloned().unwrap_or_default());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Largest degree the series can be sampled to: the explicit
    /// truncation, or the requested bound for toric/generated series.
    pub fn effective_truncation(&self, requested: u64) -> u64 {
        match self {
            GradedLinearSeries::Explicit { max_degree, .. } => requested.min(*max_degree),
            _ => requested,
        }
    }

    /// The value semigroup `S(L)` sampled up to degree `N`. Toric and
    /// generated series also carry semigroup generators (the valuations
    /// of the algebra generators), so the cone data is exact.
    pub fn value_semigroup(&self, n: u64) -> Result<GradedSemigroup> {
        assert!(n >= 1, "degree bound must be positive");
        let d = self.dim();
        let bases = self.bases_up_to(self.effective_truncation(n))?;
        let mut slices: BTreeMap<u64, Slice> = BTreeMap::new();
        for (k, basis) in bases.iter().enumerate().skip(1) {
            let (_, values) = leading_basis(basis);
            let pts: Slice = values
                .into_iter()
                .map(|e| e.into_iter().map(|x| int(x as i64)).collect())
                .collect();
            if !pts.is_empty() {
                slices.insert(k as u64, pts);
            }
        }
        let gens: Vec<(Vec<Int>, u64)> = match self {
            GradedLinearSeries::Toric { polytope, .. } => {
                Self::dilated_lattice_points(polytope, d, 1)?
                    .into_iter()
                    .map(|e| (e.into_iter().map(|x| int(x as i64)).collect(), 1))
                    .collect()
            }
            GradedLinearSeries::Generated { generators, .. } => {
                let mut basis_by_degree: BTreeMap<u64, Vec<Poly>> = BTreeMap::new();
                for (deg, g) in generators {
                    basis_by_degree.entry(*deg).or_default().push(g.clone());
                }
                let mut gens = Vec::new();
                for (deg, polys) in basis_by_degree {
                    let (basis, _) = leading_basis(&polys);
                    for b in basis {
                        gens.push((b.nu_int()?, deg));
                    }
                }
                gens
            }
            GradedLinearSeries::Explicit { .. } => vec![],
        };
        let truncation = self.effective_truncation(n);
        if gens.is_empty() {
            if slices.is_empty() {
                return Err(Error::EmptySemigroup);
            }
            Ok(GradedSemigroup::from_samples(d, truncation, slices))
        } else {
            Ok(GradedSemigroup::from_generators(d, gens).with_samples(truncation, slices))
        }
    }

    /// The index `m(L)`: gcd of the degrees with a nonzero piece.
    pub fn index(&self, n: u64) -> Result<u64> {
        match self {
            GradedLinearSeries::Toric { .. } => Ok(1),
            GradedLinearSeries::Generated { generators, .. } => Ok(generators
                .iter()
                .map(|(deg, _)| *deg)
                .fold(0u64, |a, b| a.gcd(&b))),
            GradedLinearSeries::Explicit { .. } => {
                let bases = self.bases_up_to(self.effective_truncation(n))?;
                let degs: Vec<u64> = (1..bases.len() as u64)
                    .filter(|&k| !bases[k as usize].is_empty())
                    .collect();
                if degs.is_empty() {
                    return Err(Error::AllZero);
                }
                Ok(degs.into_iter().fold(0u64, |a, b| a.gcd(&b)))
            }
        }
    }

    /// Kodaira-Iitaka dimension, equal to the semigroup dimension `q` of
    /// the value semigroup. Exact for toric/generated series; a
    /// truncated lower-bound estimate otherwise.
    pub fn kappa(&self, n: u64) -> Result<KappaResult> {
        match self {
            GradedLinearSeries::Toric { .. } | GradedLinearSeries::Generated { .. } => {
                let s = self.value_semigroup(n.max(1))?;
                Ok(KappaResult {
                    kappa: Some(s.q()?),
                    exact: true,
                    stabilized_at: None,
                })
            }
            GradedLinearSeries::Explicit { .. } => {
                let bases = self.bases_up_to(self.effective_truncation(n))?;
                let mut points: Vec<Vec<Int>> = Vec::new();
                let mut rank = 0usize;
                let mut last_growth = 0u64;
                let mut any = false;
                for (k, basis) in bases.iter().enumerate().skip(1) {
                    let (_, values) = leading_basis(basis);
                    if !values.is_empty() {
                        any = true;
                    }
                    for e in values {
                        let mut v: Vec<Int> =
                            e.into_iter().map(|x| int(x as i64)).collect();
                        v.push(int(k as i64));
                        points.push(v);
                    }
                    let lat = crate::exactmath::Lattice::from_generators(
                        self.dim() + 1,
                        points.clone(),
                    );
                    if lat.rank() > rank {
                        rank = lat.rank();
                        last_growth = k as u64;
                    }
                }
                if !any {
                    return Ok(KappaResult {
                        kappa: None,
                        exact: false,
                        stabilized_at: None,
                    });
                }
                Ok(KappaResult {
                    kappa: Some(rank - 1),
                    exact: false,
                    stabilized_at: Some(last_growth),
                })
            }
        }
    }

    /// The Veronese subalgebra generated by the degree-`p` piece, with
    /// that piece regraded to degree 1.
    pub fn veronese(&self, p: u64) -> Result<GradedLinearSeries> {
        assert!(p >= 1);
        let piece = self.degree_piece(p)?;
        let (basis, _) = leading_basis(&piece);
        if basis.is_empty() {
            return Err(Error::ZeroPiece(p));
        }
        Ok(GradedLinearSeries::generated(
            self.dim(),
            basis.into_iter().map(|b| (1u64, b)).collect(),
        ))
    }

    /// Verify `L_a * L_b ⊆ L_{a+b}` for all `a + b <= n` on an explicit
    /// series, by exact elimination. Returns the first violating pair.
    pub fn subalgebra_check(&self, n: u64) -> Result<SubalgebraCheck> {
        let GradedLinearSeries::Explicit { .. } = self else {
            return Ok(SubalgebraCheck {
                ok: true,
                first_violation: None,
            });
        };
        let bases = self.bases_up_to(self.effective_truncation(n))?;
        let top = bases.len() as u64 - 1;
        for a in 1..=top {
            for b in a..=top {
                if a + b > top {
                    break;
                }
                let target = &bases[(a + b) as usize];
                let target_dim = span_dimension(target);
                for f in &bases[a as usize] {
                    for g in &bases[b as usize] {
                        let prod = f.mul(g);
                        if prod.is_zero() {
                            continue;
                        }
                        let mut extended = target.clone();
                        extended.push(prod);
                        if span_dimension(&extended) > target_dim {
                            return Ok(SubalgebraCheck {
                                ok: false,
                                first_violation: Some((a, b)),
                            });
                        }
                    }
                }
            }
        }
        Ok(SubalgebraCheck {
            ok: true,
            first_violation: None,
        })
    }
}

/// All integer points inside a rational polytope (given with its own
/// vertex list for the bounding box).
fn lattice_points_of(hull: &RatPolytope, points: &[Vec<Rat>]) -> Vec<Vec<u32>> {
    let d = hull.ambient;
    if d == 0 {
        return vec![vec![]];
    }
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for p in points {
        for (i, x) in p.iter().enumerate() {
            let f = x.floor().to_integer();
            let c = x.ceil().to_integer();
            let f: i64 = i64::try_from(&f).expect("desk-scale coordinates");
            let c: i64 = i64::try_from(&c).expect("desk-scale coordinates");
            lo[i] = lo[i].min(f);
            hi[i] = hi[i].max(c);
        }
    }
    let membership = crate::hull::Membership::build(hull);
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'grid: loop {
        let cand: Vec<Rat> = cursor.iter().map(|&x| Rat::from(int(x))).collect();
        if membership.contains(&cand) {
            out.push(
                cursor
                    .iter()
                    .map(|&x| u32::try_from(x).expect("nonnegative exponent"))
                    .collect(),
            );
        }
        // advance odometer
        for i in (0..d).rev() {
            if cursor[i] < hi[i] {
                cursor[i] += 1;
                for j in i + 1..d {
                    cursor[j] = lo[j];
                }
                continue 'grid;
            }
        }
        break;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn poly(d: usize, terms: &[(&[u32], (i64, i64))]) -> Poly {
        Poly::from_terms(
            d,
            terms
                .iter()
                .map(|(e, (n, den))| (e.to_vec(), rat(*n, *den)))
                .collect(),
        )
    }

    #[test]
    fn nu_picks_lex_min() {
        let f = poly(2, &[(&[2, 1], (1, 1)), (&[0, 3], (1, 1))]);
        assert_eq!(f.nu().unwrap(), vec![0, 3]);
    }

    #[test]
    fn nu_of_constant_is_zero() {
        let f = poly(1, &[(&[0], (5, 1))]);
        assert_eq!(f.nu().unwrap(), vec![0]);
    }

    #[test]
    fn nu_unit_plus_higher() {
        let f = poly(2, &[(&[1, 0], (1, 1)), (&[1, 1], (1, 1))]);
        assert_eq!(f.nu().unwrap(), vec![1, 0]);
    }

    #[test]
    fn nu_zero_poly_errors() {
        assert_eq!(Poly::zero(2).nu(), Err(Error::ZeroPoly));
    }

    #[test]
    fn leading_basis_constant_and_linear() {
        let f = poly(1, &[(&[0], (1, 1)), (&[1], (1, 1))]); // 1 + y
        let g = poly(1, &[(&[1], (1, 1))]); // y
        let (basis, values) = leading_basis(&[f.clone(), g.clone()]);
        assert_eq!(values, BTreeSet::from([vec![0], vec![1]]));
        assert_eq!(basis.len(), 2);
        // independent rank oracle
        assert_eq!(span_dimension(&[f, g]), 2);
    }

    #[test]
    fn leading_basis_elimination_isolates() {
        let f = poly(2, &[(&[1, 0], (1, 1)), (&[0, 1], (1, 1))]); // y1 + y2
        let g = poly(2, &[(&[1, 0], (1, 1)), (&[0, 1], (-1, 1))]); // y1 - y2
        let (_, values) = leading_basis(&[f.clone(), g.clone()]);
        assert_eq!(values, BTreeSet::from([vec![1, 0], vec![0, 1]]));
        assert_eq!(span_dimension(&[f, g]), 2);
    }

    #[test]
    fn leading_basis_dependent_set_collapses() {
        let f = poly(1, &[(&[1], (1, 1))]);
        let g = poly(1, &[(&[1], (2, 1))]);
        let (basis, values) = leading_basis(&[f, g]);
        assert_eq!(values, BTreeSet::from([vec![1]]));
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn toric_simplex_degree_pieces() {
        let l = GradedLinearSeries::toric(2, vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        ]);
        assert_eq!(l.degree_piece(2).unwrap().len(), 6);
        assert_eq!(l.degree_piece(0).unwrap().len(), 1);
    }

    #[test]
    fn generated_single_monomial() {
        let l = GradedLinearSeries::generated(1, vec![(1, poly(1, &[(&[1], (1, 1))]))]);
        let p3 = l.degree_piece(3).unwrap();
        assert_eq!(p3.len(), 1);
        assert_eq!(p3[0].nu().unwrap(), vec![3]);
    }

    #[test]
    fn generated_two_gens_degree_two() {
        // generators 1+y and y in degree 1; L_2 has dimension 3
        let l = GradedLinearSeries::generated(1, vec![
            (1, poly(1, &[(&[0], (1, 1)), (&[1], (1, 1))])),
            (1, poly(1, &[(&[1], (1, 1))])),
        ]);
        let p2 = l.degree_piece(2).unwrap();
        assert_eq!(p2.len(), 3);
        // elimination oracle on the raw products
        let gens: Vec<Poly> = vec![
            poly(1, &[(&[0], (1, 1)), (&[1], (1, 1))]),
            poly(1, &[(&[1], (1, 1))]),
        ];
        let mut products = Vec::new();
        for a in &gens {
            for b in &gens {
                products.push(a.mul(b));
            }
        }
        assert_eq!(span_dimension(&products), 3);
    }

    #[test]
    fn value_semigroup_toric_simplex_counts() {
        let l = GradedLinearSeries::toric(2, vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        ]);
        let s = l.value_semigroup(6).unwrap();
        for n in 1..=6u64 {
            let expect = ((n + 1) * (n + 2) / 2) as usize;
            assert_eq!(s.sampled().unwrap().slices[&n].len(), expect);
        }
        assert!(s.is_generator_mode());
    }

    #[test]
    fn value_semigroup_index_two_example() {
        let l = GradedLinearSeries::generated(1, vec![
            (2, poly(1, &[(&[0], (1, 1))])),
            (2, poly(1, &[(&[1], (1, 1))])),
            (2, poly(1, &[(&[2], (1, 1))])),
        ]);
        let s = l.value_semigroup(10).unwrap();
        let sampled = s.sampled().unwrap();
        for k in 1..=5u64 {
            let slice = &sampled.slices[&(2 * k)];
            assert_eq!(slice.len() as u64, 2 * k + 1);
            assert!(!sampled.slices.contains_key(&(2 * k - 1)));
        }
    }

    #[test]
    fn value_semigroup_dependent_explicit_basis() {
        let mut bases = BTreeMap::new();
        bases.insert(1u64, vec![
            poly(1, &[(&[1], (1, 1))]),
            poly(1, &[(&[1], (2, 1))]),
        ]);
        let l = GradedLinearSeries::explicit(1, 3, bases);
        let s = l.value_semigroup(3).unwrap();
        assert_eq!(s.sampled().unwrap().slices[&1].len(), 1);
    }

    #[test]
    fn index_examples() {
        let l = GradedLinearSeries::generated(1, vec![(2, poly(1, &[(&[1], (1, 1))]))]);
        assert_eq!(l.index(10).unwrap(), 2);
        let l = GradedLinearSeries::generated(1, vec![
            (2, poly(1, &[(&[1], (1, 1))])),
            (3, poly(1, &[(&[1], (1, 1))])),
        ]);
        assert_eq!(l.index(10).unwrap(), 1);
        let l = GradedLinearSeries::toric(1, vec![vec![int(0)], vec![int(1)]]);
        assert_eq!(l.index(10).unwrap(), 1);
    }

    #[test]
    fn kappa_toric_simplex() {
        let l = GradedLinearSeries::toric(2, vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        ]);
        let k = l.kappa(4).unwrap();
        assert_eq!(k.kappa, Some(2));
        assert!(k.exact);
    }

    #[test]
    fn kappa_index_two_generated() {
        let l = GradedLinearSeries::generated(1, vec![
            (2, poly(1, &[(&[0], (1, 1))])),
            (2, poly(1, &[(&[1], (1, 1))])),
            (2, poly(1, &[(&[2], (1, 1))])),
        ]);
        assert_eq!(l.kappa(4).unwrap().kappa, Some(1));
    }

    #[test]
    fn kappa_all_zero_explicit() {
        let l = GradedLinearSeries::explicit(1, 5, BTreeMap::new());
        let k = l.kappa(5).unwrap();
        assert_eq!(k.kappa, None);
    }

    #[test]
    fn veronese_simplex_dimensions() {
        let l = GradedLinearSeries::toric(2, vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        ]);
        let v = l.veronese(2).unwrap();
        match &v {
            GradedLinearSeries::Generated { generators, .. } => {
                assert_eq!(generators.len(), 6);
            }
            _ => panic!("veronese must be generated"),
        }
        // dim (L^[2])_n = #(2nP ∩ Z^2) = (2n+1)(n+1)
        for n in 1..=4u64 {
            let dim = v.degree_piece(n).unwrap().len() as u64;
            assert_eq!(dim, (2 * n + 1) * (n + 1));
        }
    }

    #[test]
    fn veronese_idempotent_case() {
        let l = GradedLinearSeries::generated(1, vec![
            (1, poly(1, &[(&[0], (1, 1)), (&[1], (1, 1))])),
            (1, poly(1, &[(&[1], (1, 1))])),
        ]);
        let v = l.veronese(1).unwrap();
        for n in 0..=5u64 {
            assert_eq!(
                l.degree_piece(n).unwrap().len(),
                v.degree_piece(n).unwrap().len()
            );
        }
    }

    #[test]
    fn veronese_zero_piece_errors() {
        let l = GradedLinearSeries::generated(1, vec![(2, poly(1, &[(&[1], (1, 1))]))]);
        assert_eq!(l.veronese(3), Err(Error::ZeroPiece(3)));
    }

    #[test]
    fn subalgebra_check_passes_when_closed() {
        let mut bases = BTreeMap::new();
        bases.insert(1u64, vec![poly(1, &[(&[1], (1, 1))])]);
        bases.insert(2u64, vec![poly(1, &[(&[2], (1, 1))])]);
        let l = GradedLinearSeries::explicit(1, 2, bases);
        assert!(l.subalgebra_check(2).unwrap().ok);
    }

    #[test]
    fn subalgebra_check_detects_missing_square() {
        let mut bases = BTreeMap::new();
        bases.insert(1u64, vec![poly(1, &[(&[1], (1, 1))])]);
        bases.insert(2u64, vec![poly(1, &[(&[1], (1, 1))])]);
        let l = GradedLinearSeries::explicit(1, 2, bases);
        let check = l.subalgebra_check(2).unwrap();
        assert!(!check.ok);
        assert_eq!(check.first_violation, Some((1, 1)));
    }

    #[test]
    fn subalgebra_check_vacuous_on_empty() {
        let l = GradedLinearSeries::explicit(1, 3, BTreeMap::new());
        assert!(l.subalgebra_check(3).unwrap().ok);
    }

    #[test]
    fn valuation_axioms_on_fixed_pairs() {
        let f = poly(2, &[(&[1, 2], (3, 1)), (&[2, 0], (1, 2))]);
        let g = poly(2, &[(&[0, 1], (-1, 1)), (&[1, 1], (5, 1))]);
        let nf = f.nu().unwrap();
        let ng = g.nu().unwrap();
        let sum: Vec<u32> = nf.iter().zip(&ng).map(|(a, b)| a + b).collect();
        assert_eq!(f.mul(&g).nu().unwrap(), sum);
        let h = f.add(&g);
        assert!(h.nu().unwrap() >= nf.clone().min(ng.clone()));
        assert_eq!(h.nu().unwrap(), nf.min(ng));
    }
}
