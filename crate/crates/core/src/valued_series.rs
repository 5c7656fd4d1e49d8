//! Power series over a p-adic field tracked by the valuations of their
//! coefficients, and the Newton polygon of such a series relative to a disk
//! radius exponent m.
//!
//! A series is a finite map from exponent multi-indices to exact rational
//! valuations; infinite valuations (zero coefficients) are normalized away.
//! Series built from a finite prefix of an infinite expansion are unusable
//! for polygon queries until a tail certificate proves the omitted terms can
//! never achieve the minimum; see [`truncate_integrated`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fourier_motzkin::{feasible, Constraint, Rel};
use crate::polytopes::{Polytope, MAX_DIM};
use crate::primes::is_prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    NotPrime(u64),
    NegativeValuation,
    ExponentArity { expected: usize, got: usize },
    TermCollision,
    VariableIndexOutOfRange { index: usize, nvars: usize },
    VariableCollision(usize),
    PartNotSingleVariable,
    NoUnitCoefficient { bound: usize },
    PrefixTooShort { needed: usize, have: usize },
    NonpositiveRadius,
    UncertifiedTruncation,
    CertificateInsufficient,
    CertificateMismatch,
    TooManyVariables(usize),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NotPrime(p) => write!(f, "{p} is not prime"),
            SeriesError::NegativeValuation => {
                write!(f, "pre-integration coefficient valuations must be nonnegative")
            }
            SeriesError::ExponentArity { expected, got } => {
                write!(f, "exponent vector has {got} entries, series has {expected} variables")
            }
            SeriesError::TermCollision => write!(f, "duplicate exponent in term list"),
            SeriesError::VariableIndexOutOfRange { index, nvars } => {
                write!(f, "variable index {index} out of range for {nvars} variables")
            }
            SeriesError::VariableCollision(j) => {
                write!(f, "variable index {j} assigned to more than one summand")
            }
            SeriesError::PartNotSingleVariable => {
                write!(f, "axis summands must be single-variable series")
            }
            SeriesError::NoUnitCoefficient { bound } => {
                write!(f, "no coefficient of valuation zero among the first {bound}; cannot certify a truncation")
            }
            SeriesError::PrefixTooShort { needed, have } => {
                write!(f, "certificate requires the first {needed} coefficients, only {have} given")
            }
            SeriesError::NonpositiveRadius => write!(f, "radius exponent m must be positive"),
            SeriesError::UncertifiedTruncation => {
                write!(f, "series is a truncation without a tail certificate")
            }
            SeriesError::CertificateInsufficient => {
                write!(f, "tail certificate does not cover the requested radius exponent")
            }
            SeriesError::CertificateMismatch => {
                write!(f, "tail certificates disagree on the prime")
            }
            SeriesError::TooManyVariables(d) => {
                write!(f, "polygon computation supports at most {MAX_DIM} variables, got {d}")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// Proof that every term omitted by a truncation has value strictly above the
/// guaranteed minimum for every weight w >= m, hence cannot join the polygon.
/// Valid for any radius exponent >= `m` as well: raising m only widens the
/// gap, since the omitted exponents exceed `unit_index_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCertificate {
    pub p: u64,
    pub m: BigRational,
    pub unit_index_bound: usize,
    /// All exponents above this were discarded; everything in between must be
    /// present in the support (or genuinely zero).
    pub cut: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailStatus {
    /// The support lists every nonzero term.
    Complete,
    Certified(TailCertificate),
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedSeries {
    nvars: usize,
    support: BTreeMap<Vec<u64>, BigRational>,
    status: TailStatus,
}

impl ValuedSeries {
    /// Builds a series whose support is asserted to be the whole expansion.
    /// `None` valuations mean the coefficient is zero and are dropped.
    pub fn complete(
        nvars: usize,
        terms: Vec<(Vec<u64>, Option<BigRational>)>,
    ) -> Result<Self, SeriesError> {
        Self::build(nvars, terms, TailStatus::Complete)
    }

    /// Builds a series known to omit terms, with no proof about them.
    pub fn truncated(
        nvars: usize,
        terms: Vec<(Vec<u64>, Option<BigRational>)>,
    ) -> Result<Self, SeriesError> {
        Self::build(nvars, terms, TailStatus::Uncertified)
    }

    fn build(
        nvars: usize,
        terms: Vec<(Vec<u64>, Option<BigRational>)>,
        status: TailStatus,
    ) -> Result<Self, SeriesError> {
        assert!(nvars >= 1, "series needs at least one variable");
        let mut support = BTreeMap::new();
        for (u, v) in terms {
            if u.len() != nvars {
                return Err(SeriesError::ExponentArity {
                    expected: nvars,
                    got: u.len(),
                });
            }
            let Some(v) = v else { continue };
            if support.insert(u, v).is_some() {
                return Err(SeriesError::TermCollision);
            }
        }
        Ok(ValuedSeries {
            nvars,
            support,
            status,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn support(&self) -> &BTreeMap<Vec<u64>, BigRational> {
        &self.support
    }

    pub fn status(&self) -> &TailStatus {
        &self.status
    }
}

/// The data of a one-variable expansion sum a_i t^i known through a finite
/// prefix of coefficient valuations, before term-by-term integration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegratedSeriesSpec {
    p: u64,
    coeff_valuations: Vec<Option<BigRational>>,
    var_index: usize,
}

impl IntegratedSeriesSpec {
    pub fn new(
        p: u64,
        coeff_valuations: Vec<Option<BigRational>>,
        var_index: usize,
    ) -> Result<Self, SeriesError> {
        if !is_prime(p) {
            return Err(SeriesError::NotPrime(p));
        }
        if coeff_valuations
            .iter()
            .flatten()
            .any(|v| v.is_negative())
        {
            return Err(SeriesError::NegativeValuation);
        }
        Ok(IntegratedSeriesSpec {
            p,
            coeff_valuations,
            var_index,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeff_valuations(&self) -> &[Option<BigRational>] {
        &self.coeff_valuations
    }

    pub fn var_index(&self) -> usize {
        self.var_index
    }
}

fn vp(p: u64, mut n: u64) -> u64 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n % p == 0 {
        v += 1;
        n /= p;
    }
    v
}

/// Term-by-term integration: the coefficient a_i becomes a_i/(i+1) on the
/// exponent i+1, so its valuation drops by v_p(i+1). No constant term is
/// produced. The result is a truncation and starts out uncertified.
pub fn integrate_shape(spec: &IntegratedSeriesSpec) -> ValuedSeries {
    let terms: Vec<(Vec<u64>, Option<BigRational>)> = spec
        .coeff_valuations
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let n = i as u64 + 1;
            let shift = BigRational::from_integer(BigInt::from(vp(spec.p, n)));
            (vec![n], v.as_ref().map(|v| v - shift))
        })
        .collect();
    ValuedSeries::truncated(1, terms).expect("exponents are distinct by construction")
}

/// Finds the least cut N >= n0 such that every omitted exponent n > N
/// satisfies n*m - v_p(n) > n0*m. Some coefficient among the first n0 has
/// valuation 0, so the integrated series always has a term of exponent at
/// most n0 and valuation at most 0; for any weight w >= m an omitted term
/// then sits strictly above that guaranteed minimum:
/// n*w - v_p(n) >= n*m - v_p(n) + n*(w-m) > n0*m + n0*(w-m) = n0*w.
pub fn truncate_integrated(
    spec: &IntegratedSeriesSpec,
    m: &BigRational,
    unit_index_bound: usize,
) -> Result<TailCertificate, SeriesError> {
    if !m.is_positive() {
        return Err(SeriesError::NonpositiveRadius);
    }
    let n0 = unit_index_bound;
    let has_unit = spec
        .coeff_valuations
        .iter()
        .take(n0)
        .flatten()
        .any(|v| v.is_zero());
    if !has_unit {
        return Err(SeriesError::NoUnitCoefficient { bound: n0 });
    }

    // Any failing exponent n satisfies n <= n0 + v_p(n)/m, and v_p(n) = v
    // forces n >= p^v, so valuations with p^v > n0 + v/m cannot occur among
    // failures. That caps the scan range.
    let n0_rat = BigRational::from_integer(BigInt::from(n0 as i64));
    let mut vmax = 0u64;
    loop {
        let cand = vmax + 1;
        let reach = &n0_rat + BigRational::from_integer(BigInt::from(cand)) / m;
        if BigRational::from_integer(BigInt::from(spec.p).pow(cand as u32)) > reach {
            break;
        }
        vmax = cand;
    }
    let reach = &n0_rat + BigRational::from_integer(BigInt::from(vmax)) / m;
    let scan_to = reach.floor().to_integer();
    let mut cut = n0 as u64;
    let mut n = BigInt::from(n0 as u64 + 1);
    while n <= scan_to {
        let n_u64: u64 = n.to_u64_digits().1.first().copied().unwrap_or(0);
        let lhs = BigRational::from_integer(n.clone()) * m
            - BigRational::from_integer(BigInt::from(vp(spec.p, n_u64)));
        let baseline = &n0_rat * m;
        if lhs <= baseline {
            cut = n_u64;
        }
        n += 1;
    }
    Ok(TailCertificate {
        p: spec.p,
        m: m.clone(),
        unit_index_bound: n0,
        cut: cut as usize,
    })
}

/// Integrates the prefix and attaches a tail certificate, verifying the
/// prefix is long enough that every exponent up to the cut is accounted for.
pub fn integrate_certified(
    spec: &IntegratedSeriesSpec,
    m: &BigRational,
    unit_index_bound: usize,
) -> Result<ValuedSeries, SeriesError> {
    let cert = truncate_integrated(spec, m, unit_index_bound)?;
    if spec.coeff_valuations.len() < cert.cut {
        return Err(SeriesError::PrefixTooShort {
            needed: cert.cut,
            have: spec.coeff_valuations.len(),
        });
    }
    let mut series = integrate_shape(spec);
    series.status = TailStatus::Certified(cert);
    Ok(series)
}

/// Places single-variable series on distinct coordinate axes and adds an
/// optional constant term at the zero exponent (`None` means the constant
/// vanishes). Certificates compose: each axis keeps its own omitted terms
/// strictly above that axis's guaranteed minimum, which also dominates the
/// global minimum, so the sum is certified at the weakest summand radius.
pub fn sum_in_distinct_vars(
    nvars: usize,
    parts: &[(usize, &ValuedSeries)],
    constant_valuation: Option<&BigRational>,
) -> Result<ValuedSeries, SeriesError> {
    assert!(nvars >= 1, "series needs at least one variable");
    let mut seen = BTreeSet::new();
    let mut terms: Vec<(Vec<u64>, Option<BigRational>)> = Vec::new();
    let mut status = TailStatus::Complete;
    for &(j, part) in parts {
        if j >= nvars {
            return Err(SeriesError::VariableIndexOutOfRange { index: j, nvars });
        }
        if !seen.insert(j) {
            return Err(SeriesError::VariableCollision(j));
        }
        if part.nvars != 1 {
            return Err(SeriesError::PartNotSingleVariable);
        }
        for (u, v) in &part.support {
            let mut exp = vec![0u64; nvars];
            exp[j] = u[0];
            terms.push((exp, Some(v.clone())));
        }
        status = combine_status(status, &part.status)?;
    }
    if let Some(c) = constant_valuation {
        terms.push((vec![0u64; nvars], Some(c.clone())));
    }
    let mut series = ValuedSeries::build(nvars, terms, TailStatus::Complete)?;
    series.status = status;
    Ok(series)
}

fn combine_status(acc: TailStatus, next: &TailStatus) -> Result<TailStatus, SeriesError> {
    Ok(match (acc, next) {
        (TailStatus::Uncertified, _) | (_, TailStatus::Uncertified) => TailStatus::Uncertified,
        (acc, TailStatus::Complete) => acc,
        (TailStatus::Complete, TailStatus::Certified(c)) => TailStatus::Certified(c.clone()),
        (TailStatus::Certified(a), TailStatus::Certified(b)) => {
            if a.p != b.p {
                return Err(SeriesError::CertificateMismatch);
            }
            // the larger m is the weaker guarantee and governs the sum
            if a.m >= b.m {
                TailStatus::Certified(a)
            } else {
                TailStatus::Certified(b.clone())
            }
        }
    })
}

/// The exponents u of F achieving the minimum of v(a_u) + <w,u> jointly with
/// at least one other exponent, for some weight w with every w_i >= m.
/// Decided exponent by exponent via exact linear feasibility.
pub fn newton_support(f: &ValuedSeries, m: &BigRational) -> Result<Vec<Vec<u64>>, SeriesError> {
    if !m.is_positive() {
        return Err(SeriesError::NonpositiveRadius);
    }
    let d = f.nvars;
    if d > MAX_DIM {
        return Err(SeriesError::TooManyVariables(d));
    }
    match &f.status {
        TailStatus::Complete => {}
        TailStatus::Certified(cert) => {
            if &cert.m > m {
                return Err(SeriesError::CertificateInsufficient);
            }
        }
        TailStatus::Uncertified => return Err(SeriesError::UncertifiedTruncation),
    }

    let entries: Vec<(&Vec<u64>, &BigRational)> = f.support.iter().collect();
    let mut included = Vec::new();
    'next_u: for (u, vu) in &entries {
        for (u2, vu2) in &entries {
            if u2 == u {
                continue;
            }
            let mut cons = Vec::with_capacity(d + 1 + entries.len());
            for i in 0..d {
                let mut coeffs = vec![BigRational::zero(); d];
                coeffs[i] = BigRational::one();
                cons.push(Constraint::new(coeffs, Rel::Ge, m.clone()));
            }
            cons.push(tie_constraint(u, vu, u2, vu2, Rel::Eq));
            for (u3, vu3) in &entries {
                if u3 == u {
                    continue;
                }
                cons.push(tie_constraint(u, vu, u3, vu3, Rel::Le));
            }
            if feasible(&cons, d) {
                included.push((*u).clone());
                continue 'next_u;
            }
        }
    }
    Ok(included)
}

/// v(a_u) + <w,u>  (rel)  v(a_b) + <w,b>, rearranged onto the weight vars.
fn tie_constraint(
    u: &[u64],
    vu: &BigRational,
    b: &[u64],
    vb: &BigRational,
    rel: Rel,
) -> Constraint {
    let coeffs = u
        .iter()
        .zip(b)
        .map(|(&x, &y)| BigRational::from_integer(BigInt::from(x as i128 - y as i128)))
        .collect();
    Constraint::new(coeffs, rel, vb - vu)
}

/// Convex hull of the tied-minimum exponents; `None` when no exponent
/// qualifies (the polygon is empty).
pub fn newton_polygon(
    f: &ValuedSeries,
    m: &BigRational,
) -> Result<Option<Polytope>, SeriesError> {
    let support = newton_support(f, m)?;
    if support.is_empty() {
        return Ok(None);
    }
    let pts: Vec<Vec<BigRational>> = support
        .iter()
        .map(|u| {
            u.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect()
        })
        .collect();
    let hull = Polytope::convex_hull(f.nvars, pts)
        .expect("dimension and nonemptiness already checked");
    Ok(Some(hull))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn spec_from_ints(p: u64, vals: &[i64], var_index: usize) -> IntegratedSeriesSpec {
        IntegratedSeriesSpec::new(
            p,
            vals.iter().map(|&v| Some(rat(v, 1))).collect(),
            var_index,
        )
        .unwrap()
    }

    #[test]
    fn integration_shifts_valuations_by_vp_of_exponent() {
        let s = integrate_shape(&spec_from_ints(3, &[0], 0));
        assert_eq!(s.support().get(&vec![1]), Some(&rat(0, 1)));
        assert_eq!(s.status(), &TailStatus::Uncertified);

        let s = integrate_shape(&spec_from_ints(3, &[0, 0, 0], 0));
        assert_eq!(s.support().get(&vec![3]), Some(&rat(-1, 1)));

        let s = integrate_shape(&spec_from_ints(5, &[0, 0, 0, 0, 0], 0));
        assert_eq!(s.support().get(&vec![5]), Some(&rat(-1, 1)));
        assert_eq!(s.support().get(&vec![4]), Some(&rat(0, 1)));
        assert!(s.support().get(&vec![0]).is_none(), "no constant term");
    }

    #[test]
    fn integration_drops_zero_coefficients() {
        let spec = IntegratedSeriesSpec::new(3, vec![Some(rat(1, 2)), None], 0).unwrap();
        let s = integrate_shape(&spec);
        assert_eq!(s.support().len(), 1);
        assert_eq!(s.support().get(&vec![1]), Some(&rat(1, 2)));
    }

    #[test]
    fn negative_valuations_are_rejected() {
        assert_eq!(
            IntegratedSeriesSpec::new(3, vec![Some(rat(-1, 2))], 0).unwrap_err(),
            SeriesError::NegativeValuation
        );
        assert_eq!(
            IntegratedSeriesSpec::new(4, vec![], 0).unwrap_err(),
            SeriesError::NotPrime(4)
        );
    }

    #[test]
    fn truncation_cuts_where_tail_clears_the_baseline() {
        let spec = spec_from_ints(3, &[0, 1, 0, 2, 1, 0, 3, 0, 1], 0);
        let cert = truncate_integrated(&spec, &rat(1, 2), 3).unwrap();
        assert_eq!(cert.cut, 3);
        let cert = truncate_integrated(&spec, &rat(1, 1), 3).unwrap();
        assert_eq!(cert.cut, 3);
        // small radius: multiples of 3 stay competitive much longer
        let cert = truncate_integrated(&spec, &rat(1, 9), 3).unwrap();
        assert_eq!(cert.cut, 27);
        assert_eq!(cert.p, 3);
        assert_eq!(cert.unit_index_bound, 3);
    }

    #[test]
    fn truncation_needs_a_unit_coefficient() {
        let spec = spec_from_ints(3, &[1, 2, 1], 0);
        assert_eq!(
            truncate_integrated(&spec, &rat(1, 2), 3).unwrap_err(),
            SeriesError::NoUnitCoefficient { bound: 3 }
        );
        // a unit beyond the bound does not help
        let spec = spec_from_ints(3, &[1, 2, 1, 0], 0);
        assert_eq!(
            truncate_integrated(&spec, &rat(1, 2), 3).unwrap_err(),
            SeriesError::NoUnitCoefficient { bound: 3 }
        );
    }

    #[test]
    fn certified_integration_needs_the_whole_prefix() {
        // m = 1/9 needs 27 coefficients, only 9 given
        let spec = spec_from_ints(3, &[0; 9], 0);
        assert_eq!(
            integrate_certified(&spec, &rat(1, 9), 3).unwrap_err(),
            SeriesError::PrefixTooShort { needed: 27, have: 9 }
        );
        let spec = spec_from_ints(3, &[0; 27], 0);
        let s = integrate_certified(&spec, &rat(1, 9), 3).unwrap();
        assert!(matches!(s.status(), TailStatus::Certified(c) if c.cut == 27));
    }

    #[test]
    fn sums_embed_supports_on_axes() {
        let a = integrate_shape(&spec_from_ints(3, &[0, 1], 0));
        let b = integrate_shape(&spec_from_ints(3, &[2], 1));
        let sum = sum_in_distinct_vars(2, &[(0, &a), (1, &b)], None).unwrap();
        assert_eq!(sum.nvars(), 2);
        assert!(sum
            .support()
            .keys()
            .all(|u| u.iter().filter(|&&c| c > 0).count() <= 1));
        assert_eq!(sum.support().len(), 3);
        assert!(sum.support().get(&vec![0, 0]).is_none());

        let with_const = sum_in_distinct_vars(2, &[(0, &a), (1, &b)], Some(&rat(5, 1))).unwrap();
        assert_eq!(with_const.support().get(&vec![0, 0]), Some(&rat(5, 1)));

        let empty = sum_in_distinct_vars(3, &[], Some(&rat(0, 1))).unwrap();
        assert_eq!(empty.support().len(), 1);
        assert_eq!(empty.status(), &TailStatus::Complete);
    }

    #[test]
    fn sum_rejects_collisions_and_bad_indices() {
        let a = integrate_shape(&spec_from_ints(3, &[0], 0));
        assert_eq!(
            sum_in_distinct_vars(2, &[(0, &a), (0, &a)], None).unwrap_err(),
            SeriesError::VariableCollision(0)
        );
        assert_eq!(
            sum_in_distinct_vars(2, &[(2, &a)], None).unwrap_err(),
            SeriesError::VariableIndexOutOfRange { index: 2, nvars: 2 }
        );
        let multi = ValuedSeries::complete(2, vec![(vec![1, 1], Some(rat(0, 1)))]).unwrap();
        assert_eq!(
            sum_in_distinct_vars(2, &[(0, &multi)], None).unwrap_err(),
            SeriesError::PartNotSingleVariable
        );
    }

    #[test]
    fn sum_status_takes_the_weakest_certificate() {
        let a = integrate_certified(&spec_from_ints(3, &[0, 0, 0], 0), &rat(1, 2), 3).unwrap();
        let b = integrate_certified(&spec_from_ints(3, &[0; 9], 1), &rat(1, 3), 3).unwrap();
        let sum = sum_in_distinct_vars(2, &[(0, &a), (1, &b)], None).unwrap();
        assert!(matches!(sum.status(), TailStatus::Certified(c) if c.m == rat(1, 2)));

        let raw = integrate_shape(&spec_from_ints(3, &[0], 1));
        let sum = sum_in_distinct_vars(2, &[(0, &a), (1, &raw)], None).unwrap();
        assert_eq!(sum.status(), &TailStatus::Uncertified);

        // for p = 5 the exponent 5 itself stays competitive at m = 1/2, so
        // the certificate needs a five-term prefix
        let c5 = integrate_certified(&spec_from_ints(5, &[0, 0, 0, 1, 1], 1), &rat(1, 2), 3).unwrap();
        assert_eq!(
            sum_in_distinct_vars(2, &[(0, &a), (1, &c5)], None).unwrap_err(),
            SeriesError::CertificateMismatch
        );
    }

    #[test]
    fn polygon_refuses_uncertified_truncations() {
        let s = integrate_shape(&spec_from_ints(3, &[0, 0, 0], 0));
        assert_eq!(
            newton_polygon(&s, &rat(1, 2)).unwrap_err(),
            SeriesError::UncertifiedTruncation
        );
        let s = integrate_certified(&spec_from_ints(3, &[0, 0, 0], 0), &rat(1, 2), 3).unwrap();
        // certificate covers its own radius and anything larger, nothing smaller
        assert!(newton_polygon(&s, &rat(1, 2)).is_ok());
        assert!(newton_polygon(&s, &rat(1, 1)).is_ok());
        assert_eq!(
            newton_polygon(&s, &rat(1, 4)).unwrap_err(),
            SeriesError::CertificateInsufficient
        );
        assert_eq!(
            newton_polygon(&s, &rat(0, 1)).unwrap_err(),
            SeriesError::NonpositiveRadius
        );
    }

    #[test]
    fn unit_lead_coefficient_gives_empty_polygon_at_radius_one() {
        for vals in [&[0, 1, 2][..], &[0, 0, 0], &[0, 2, 1, 1, 0]] {
            let spec = spec_from_ints(3, vals, 0);
            let s = integrate_certified(&spec, &rat(1, 1), 3).unwrap();
            assert_eq!(newton_polygon(&s, &rat(1, 1)).unwrap(), None, "{vals:?}");
        }
    }

    #[test]
    fn two_unit_coefficients_tie_at_radius_one_half() {
        // exponent 1 at valuation 0 and exponent 3 at valuation -1 tie when
        // the weight is exactly 1/2; everything else sits above
        let spec = spec_from_ints(3, &[0, 1, 0], 0);
        let s = integrate_certified(&spec, &rat(1, 2), 3).unwrap();
        let support = newton_support(&s, &rat(1, 2)).unwrap();
        assert_eq!(support, vec![vec![1], vec![3]]);
        let hull = newton_polygon(&s, &rat(1, 2)).unwrap().unwrap();
        assert_eq!(
            hull.vertices(),
            &[vec![rat(1, 1)], vec![rat(3, 1)]]
        );
    }

    #[test]
    fn equal_valued_pair_cannot_tie_inside_the_disk() {
        // tie between exponents 1 and 2 forces w = 0, outside w >= 1/2
        let s = ValuedSeries::complete(
            1,
            vec![(vec![1], Some(rat(0, 1))), (vec![2], Some(rat(0, 1)))],
        )
        .unwrap();
        assert_eq!(newton_polygon(&s, &rat(1, 2)).unwrap(), None);
    }

    // -------- independent tie-point oracle, d <= 2 --------

    /// All weight candidates that could witness inclusion: pairwise tie lines
    /// intersected with each other and with the boundary w_i = m. The
    /// feasible region always has such a corner because w >= m rules out
    /// lines in the region.
    fn oracle_included(
        support: &BTreeMap<Vec<u64>, BigRational>,
        m: &BigRational,
        u: &[u64],
    ) -> bool {
        let d = u.len();
        let keys: Vec<&Vec<u64>> = support.keys().collect();
        let mut cands: Vec<Vec<BigRational>> = vec![vec![m.clone(); d]];
        match d {
            1 => {
                for (i, a) in keys.iter().enumerate() {
                    for b in &keys[i + 1..] {
                        let da = a[0] as i128 - b[0] as i128;
                        if da == 0 {
                            continue;
                        }
                        let w = (&support[*b] - &support[*a])
                            / BigRational::from_integer(BigInt::from(da));
                        cands.push(vec![w]);
                    }
                }
            }
            2 => {
                // lines c1 w1 + c2 w2 = rhs
                let mut lines = vec![
                    (rat(1, 1), rat(0, 1), m.clone()),
                    (rat(0, 1), rat(1, 1), m.clone()),
                ];
                for (i, a) in keys.iter().enumerate() {
                    for b in &keys[i + 1..] {
                        lines.push((
                            rat(a[0] as i64 - b[0] as i64, 1),
                            rat(a[1] as i64 - b[1] as i64, 1),
                            &support[*b] - &support[*a],
                        ));
                    }
                }
                for (i, la) in lines.iter().enumerate() {
                    for lb in &lines[i + 1..] {
                        let rows = vec![
                            vec![la.0.clone(), la.1.clone()],
                            vec![lb.0.clone(), lb.1.clone()],
                        ];
                        let rhs = vec![la.2.clone(), lb.2.clone()];
                        if let Some(w) = linalg::solve(&rows, &rhs, 2) {
                            cands.push(w);
                        }
                    }
                }
            }
            _ => unreachable!("oracle is sized for one or two variables"),
        }
        for w in &cands {
            if w.iter().any(|wi| wi < m) {
                continue;
            }
            let value = |e: &[u64]| -> BigRational {
                let mut t = support[&e.to_vec()].clone();
                for (wi, &ei) in w.iter().zip(e) {
                    t += wi * BigRational::from_integer(BigInt::from(ei));
                }
                t
            };
            let vu = value(u);
            let minv = keys.iter().map(|k| value(k)).min().unwrap();
            if vu == minv && keys.iter().any(|k| k.as_slice() != u && value(k) == minv) {
                return true;
            }
        }
        false
    }

    fn random_support(
        rng: &mut ChaCha8Rng,
        d: usize,
        max_terms: usize,
    ) -> BTreeMap<Vec<u64>, BigRational> {
        let n = rng.gen_range(2..=max_terms);
        let mut support = BTreeMap::new();
        for _ in 0..n {
            let u: Vec<u64> = (0..d).map(|_| rng.gen_range(0..5)).collect();
            let v = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            support.insert(u, v);
        }
        support
    }

    #[test]
    fn feasibility_decision_matches_tie_point_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for case in 0..120 {
            let d = if case % 2 == 0 { 1 } else { 2 };
            let support = random_support(&mut rng, d, 6);
            let terms: Vec<(Vec<u64>, Option<BigRational>)> = support
                .iter()
                .map(|(u, v)| (u.clone(), Some(v.clone())))
                .collect();
            let s = ValuedSeries::complete(d, terms).unwrap();
            let m = [rat(1, 2), rat(1, 1), rat(1, 3)][case % 3].clone();
            let included = newton_support(&s, &m).unwrap();
            for u in support.keys() {
                assert_eq!(
                    included.contains(u),
                    oracle_included(&support, &m, u),
                    "d={d} m={m} u={u:?} support={support:?}"
                );
            }
        }
    }

    #[test]
    fn polygon_shrinks_as_the_radius_shrinks() {
        // larger m means a smaller disk and fewer attainable ties
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for case in 0..60 {
            let d = if case % 2 == 0 { 1 } else { 2 };
            let support = random_support(&mut rng, d, 6);
            let terms: Vec<(Vec<u64>, Option<BigRational>)> = support
                .iter()
                .map(|(u, v)| (u.clone(), Some(v.clone())))
                .collect();
            let s = ValuedSeries::complete(d, terms).unwrap();
            let wide: BTreeSet<Vec<u64>> =
                newton_support(&s, &rat(1, 2)).unwrap().into_iter().collect();
            let narrow: BTreeSet<Vec<u64>> =
                newton_support(&s, &rat(1, 1)).unwrap().into_iter().collect();
            assert!(narrow.is_subset(&wide), "support={support:?}");
            assert!(wide.iter().all(|u| support.contains_key(u)));
        }
    }

    #[test]
    fn polygon_ignores_a_global_valuation_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for case in 0..40 {
            let d = if case % 2 == 0 { 1 } else { 2 };
            let support = random_support(&mut rng, d, 6);
            let shift = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            let terms = |extra: &BigRational| -> Vec<(Vec<u64>, Option<BigRational>)> {
                support
                    .iter()
                    .map(|(u, v)| (u.clone(), Some(v + extra)))
                    .collect()
            };
            let s0 = ValuedSeries::complete(d, terms(&rat(0, 1))).unwrap();
            let s1 = ValuedSeries::complete(d, terms(&shift)).unwrap();
            let m = rat(1, 2);
            assert_eq!(
                newton_support(&s0, &m).unwrap(),
                newton_support(&s1, &m).unwrap()
            );
        }
    }

    #[test]
    fn unit_prefix_polygons_land_between_one_and_three() {
        // integral prefixes with an early unit coefficient: the polygon at
        // radius 1 is empty when the unit leads, and in every case the
        // polygons at radii 1 and 1/2 fit inside [1, 3]
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let primes = [3u64, 7, 11, 13];
        for case in 0..200 {
            let p = primes[case % primes.len()];
            let unit_at = case % 3;
            let len = rng.gen_range(5..=8usize);
            let mut vals: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=4)).collect();
            for v in vals.iter_mut().take(unit_at) {
                *v = (*v).max(1);
            }
            vals[unit_at] = 0;
            let spec = spec_from_ints(p, &vals, 0);
            let s = integrate_certified(&spec, &rat(1, 2), 3).unwrap();
            for m in [rat(1, 1), rat(1, 2)] {
                let support = newton_support(&s, &m).unwrap();
                assert!(
                    support.iter().all(|u| (1..=3).contains(&u[0])),
                    "p={p} vals={vals:?} m={m}"
                );
                if unit_at == 0 && m == rat(1, 1) {
                    assert!(support.is_empty(), "p={p} vals={vals:?}");
                }
            }
        }
    }

    #[test]
    fn unit_prefix_polygons_at_radius_one_third() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for case in 0..100 {
            let unit_at = case % 3;
            let len = rng.gen_range(9..=12usize);
            let mut vals: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=4)).collect();
            for v in vals.iter_mut().take(unit_at) {
                *v = (*v).max(1);
            }
            vals[unit_at] = 0;
            let spec = spec_from_ints(3, &vals, 0);
            let s = integrate_certified(&spec, &rat(1, 3), 3).unwrap();
            let support = newton_support(&s, &rat(1, 3)).unwrap();
            assert!(
                support.iter().all(|u| (1..=3).contains(&u[0])),
                "vals={vals:?}"
            );
        }
    }
}
