//! Conditional point-count bounds assembled from disk-by-disk zero counts.
//!
//! A degree-d point whose conjugates reduce into a fixed tuple of residue
//! disks is a common zero of d analytic functions on that product of disks,
//! and the number of isolated zeros is bounded by the mixed volume of their
//! Newton polygons. This module enumerates the residue configurations,
//! bounds each disk product through the worst-case polygon its vanishing
//! order allows, distributes the global vanishing budget coming from a rank
//! bound, and totals the result into an explicit point bound.
//!
//! Everything here is conditional on hypotheses the caller must assert
//! (rank at most 1, geometrically simple Jacobian, isolated zeros); reports
//! carry those declarations verbatim.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curves::{CurveError, CurveModel};
use crate::finite_fields::{self, CurvePoint, FFContext, FFElement, FFError};
use crate::polytopes::{self, PolytopeError};
use crate::primes;
use crate::valued_series::{self, IntegratedSeriesSpec, SeriesError, ValuedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundError {
    /// Tuple degree outside the range this machinery supports.
    DegreeOutOfRange(u32),
    /// Vanishing orders are structurally at most 2.
    VanishingOrderTooLarge(u32),
    /// The generic argument needs a prime strictly above d^2 + 3.
    PrimeTooSmall { p: u64, d: u32 },
    /// Hypotheses declare a different reduction prime than the bound uses.
    WrongReductionPrime { declared: u64, required: u64 },
    /// Unverified hypotheses the caller refused to assert.
    HypothesesNotAsserted(Vec<&'static str>),
    /// The degree-d argument needs genus strictly above d.
    GenusTooSmall { genus: usize, d: u32 },
    /// The mod-p point counts do not match the construction's requirements.
    WrongPointCount { field_order: u64, expected: u64, got: u64 },
    Curve(CurveError),
    Series(SeriesError),
    Polytope(PolytopeError),
    Field(FFError),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::DegreeOutOfRange(d) => {
                write!(f, "tuple degree {d} is outside the supported range")
            }
            BoundError::VanishingOrderTooLarge(o) => {
                write!(f, "vanishing order {o} exceeds the structural maximum of 2")
            }
            BoundError::PrimeTooSmall { p, d } => {
                write!(f, "prime {p} is not greater than {d}^2 + 3 = {}", d * d + 3)
            }
            BoundError::WrongReductionPrime { declared, required } => write!(
                f,
                "hypotheses declare good reduction at {declared}, this bound works at {required}"
            ),
            BoundError::HypothesesNotAsserted(missing) => {
                write!(f, "unverified hypotheses must be asserted by the caller:")?;
                for (i, name) in missing.iter().enumerate() {
                    write!(f, "{} {name}", if i == 0 { "" } else { "," })?;
                }
                Ok(())
            }
            BoundError::GenusTooSmall { genus, d } => write!(
                f,
                "genus {genus} is too small for the degree-{d} count (needs genus > {d})"
            ),
            BoundError::WrongPointCount {
                field_order,
                expected,
                got,
            } => write!(
                f,
                "curve has {got} points over the field of order {field_order}, \
                 the construction needs exactly {expected}"
            ),
            BoundError::Curve(e) => e.fmt(f),
            BoundError::Series(e) => e.fmt(f),
            BoundError::Polytope(e) => e.fmt(f),
            BoundError::Field(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for BoundError {}

impl From<CurveError> for BoundError {
    fn from(e: CurveError) -> Self {
        BoundError::Curve(e)
    }
}

impl From<SeriesError> for BoundError {
    fn from(e: SeriesError) -> Self {
        BoundError::Series(e)
    }
}

impl From<PolytopeError> for BoundError {
    fn from(e: PolytopeError) -> Self {
        BoundError::Polytope(e)
    }
}

impl From<FFError> for BoundError {
    fn from(e: FFError) -> Self {
        BoundError::Field(e)
    }
}

/// Caller declarations the bounds are conditional on. None of these is
/// verified here: rank and simplicity are not desk-computable, and the
/// isolated-zero condition concerns the analytic functions themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    /// Mordell-Weil rank of the Jacobian is at most 1.
    pub rank_le_1: bool,
    /// The Jacobian is geometrically simple.
    pub geometrically_simple: bool,
    /// Every vanishing locus in play is zero-dimensional.
    pub condition_dagger: bool,
    /// The curve has good reduction at this prime.
    pub good_reduction_at: u64,
}

impl Hypotheses {
    pub fn all_asserted(p: u64) -> Self {
        Hypotheses {
            rank_le_1: true,
            geometrically_simple: true,
            condition_dagger: true,
            good_reduction_at: p,
        }
    }

    fn require(&self, p: u64) -> Result<(), BoundError> {
        let mut missing = Vec::new();
        if !self.rank_le_1 {
            missing.push("Mordell-Weil rank at most 1");
        }
        if !self.geometrically_simple {
            missing.push("geometrically simple Jacobian");
        }
        if !self.condition_dagger {
            missing.push("zero-dimensional vanishing loci");
        }
        if !missing.is_empty() {
            return Err(BoundError::HypothesesNotAsserted(missing));
        }
        if self.good_reduction_at != p {
            return Err(BoundError::WrongReductionPrime {
                declared: self.good_reduction_at,
                required: p,
            });
        }
        Ok(())
    }
}

/// One class of residue-disk products together with its counted
/// contribution. `ordered_count` bounds the conjugate tuples beyond the
/// center of the product; `unordered_count` is the contribution after the
/// ordered-vs-unordered correction (dividing by `stabilizer` and flooring),
/// or a cap on centers where the note says so.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueConfiguration {
    pub label: String,
    /// Per-coordinate disk radius.
    pub radii: Vec<BigRational>,
    /// Set when the radii differ across coordinates; the polygon bound then
    /// uses the smallest radius, which can only enlarge the count.
    pub mixed_radii: bool,
    pub vanishing_order: u32,
    pub ordered_count: BigInt,
    pub stabilizer: u32,
    pub unordered_count: BigInt,
    /// Whether the vanishing-budget allocation activated this class.
    pub active: bool,
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    /// Human-readable curve equation.
    pub curve: String,
    pub genus: usize,
    pub d: u32,
    pub p: u64,
    pub hypotheses: Hypotheses,
    pub configurations: Vec<ResidueConfiguration>,
    /// The degree-and-prime-only bound, when the generic argument ran.
    pub crude: Option<BigInt>,
    /// Whether curve-specific point counts refined the residue enumeration.
    pub refined: bool,
    /// Unordered conjugate d-tuples.
    pub tuple_bound: BigInt,
    /// Final bound: d points per unordered tuple.
    pub point_bound: BigInt,
    pub notes: Vec<String>,
}

/// Smallest prime strictly greater than d^2 + 3; one exists below
/// 2(d^2 + 3) - 2, so the search always terminates quickly.
pub fn bertrand_prime(d: u32) -> Result<u64, BoundError> {
    if d < 2 {
        return Err(BoundError::DegreeOutOfRange(d));
    }
    let mut n = u64::from(d) * u64::from(d) + 4;
    while !primes::is_prime(n) {
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrudeBound {
    /// (3d(2p^d + 1))^d at the working prime.
    pub bound: BigInt,
    /// The same expression with p replaced by 2d^2 + 3, an upper bound for
    /// the smallest admissible prime, so this depends on d alone.
    pub degree_only_cap: BigInt,
}

/// The crude degree-d bound (3d(2p^d + 1))^d. Requires p > d^2 + 3 (and p
/// prime, which all callers guarantee via `bertrand_prime`).
pub fn crude_bound(d: u32, p: u64) -> Result<CrudeBound, BoundError> {
    if d < 2 {
        return Err(BoundError::DegreeOutOfRange(d));
    }
    if p <= u64::from(d) * u64::from(d) + 3 {
        return Err(BoundError::PrimeTooSmall { p, d });
    }
    let expr = |q: u64| -> BigInt {
        let inner = BigInt::from(2) * BigInt::from(q).pow(d) + BigInt::one();
        (BigInt::from(3 * u64::from(d)) * inner).pow(d)
    };
    Ok(CrudeBound {
        bound: expr(p),
        degree_only_cap: expr(2 * u64::from(d) * u64::from(d) + 3),
    })
}

/// Single-variable antiderivative shape with the largest Newton polygon the
/// vanishing order allows: the first unit coefficient sits at index
/// `order`, another unit sits at index 2 (allowed whenever order < 2), and
/// the index-0 coefficient gets the valuation that ties exponent 1 against
/// the dominant term at weight 1. Tail terms are certified away at radius
/// `m` with the unit known among the first three coefficients.
fn worst_case_axis(
    p: u64,
    order: u32,
    m: &BigRational,
    var: usize,
) -> Result<ValuedSeries, BoundError> {
    let mut vals: Vec<Option<BigRational>> = vec![None; 3];
    vals[order as usize] = Some(BigRational::zero());
    if order > 0 {
        let v0 = if p == 3 { 1 } else { 2 };
        vals[0] = Some(BigRational::from_integer(BigInt::from(v0)));
    }
    if order < 2 {
        vals[2] = Some(BigRational::zero());
    }
    // the tail certificate may demand a longer prefix; absent coefficients
    // only make the polygon smaller, so padding with None stays worst-case
    let probe = IntegratedSeriesSpec::new(p, vals.clone(), var)?;
    let cut = valued_series::truncate_integrated(&probe, m, 3)?.cut;
    if cut > vals.len() {
        vals.resize(cut, None);
    }
    let spec = IntegratedSeriesSpec::new(p, vals, var)?;
    Ok(valued_series::integrate_certified(&spec, m, 3)?)
}

/// Bounds the ordered conjugate d-tuples inside one product of residue
/// disks: the mixed volume of d copies of the worst-case Newton polygon,
/// plus one for the center of the product when the center could itself be
/// such a tuple. The polygon construction keeps every axis inside the
/// segment from exponent 1 to exponent 3, so the result is 3^d - 1 in the
/// ramified worst case and 0 for an unramified disk with vanishing order 0,
/// where a strictly dominant term rules out zeros altogether.
pub fn per_disk_bound(
    d: u32,
    vanishing_order: u32,
    m: &BigRational,
    p: u64,
    center_candidate: bool,
) -> Result<BigInt, BoundError> {
    if d == 0 || d as usize > polytopes::MAX_DIM {
        return Err(BoundError::DegreeOutOfRange(d));
    }
    if vanishing_order > 2 {
        return Err(BoundError::VanishingOrderTooLarge(vanishing_order));
    }
    let center = if center_candidate {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    let axes: Vec<ValuedSeries> = (0..d as usize)
        .map(|i| worst_case_axis(p, vanishing_order, m, i))
        .collect::<Result<_, _>>()?;
    let parts: Vec<(usize, &ValuedSeries)> = axes.iter().enumerate().collect();
    let sum = valued_series::sum_in_distinct_vars(d as usize, &parts, None)?;
    let Some(polygon) = valued_series::newton_polygon(&sum, m)? else {
        return Ok(center);
    };
    let copies = vec![polygon; d as usize];
    let mv = polytopes::mixed_volume(&copies)?;
    debug_assert!(mv.is_integer());
    Ok(mv.to_integer() + center)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllocationGroup {
    pub label: String,
    /// Vanishing budget consumed when the group is activated.
    pub cost: u32,
    pub gain_active: BigInt,
    pub gain_inactive: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    /// Indices of the activated groups, ascending.
    pub active: Vec<usize>,
    pub total: BigInt,
}

/// Exhaustive scan of activation subsets whose total cost stays within the
/// budget, keeping the largest total gain. Ties go to the lexicographically
/// smallest index set, so the result is deterministic.
pub fn allocate_vanishing(groups: &[AllocationGroup], budget: u32) -> Allocation {
    assert!(groups.len() <= 16, "allocation is exhaustive over subsets");
    let mut best: Option<Allocation> = None;
    for mask in 0u32..(1 << groups.len()) {
        let mut cost = 0u32;
        let mut total = BigInt::zero();
        let mut active = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cost += g.cost;
                total += &g.gain_active;
                active.push(i);
            } else {
                total += &g.gain_inactive;
            }
        }
        if cost > budget {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => total > b.total || (total == b.total && active < b.active),
        };
        if better {
            best = Some(Allocation { active, total });
        }
    }
    best.expect("the empty subset is always within budget")
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn fmt_element(e: &FFElement) -> String {
    let mut coeffs: &[u64] = e;
    while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0 {
        coeffs = &coeffs[..coeffs.len() - 1];
    }
    if coeffs.len() == 1 {
        format!("{}", coeffs[0])
    } else {
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => String::from("t"),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

fn pair_label(orbit: &[CurvePoint]) -> String {
    match &orbit[0] {
        CurvePoint::Affine(x, _) => format!("conjugate pair over x = {}", fmt_element(x)),
        CurvePoint::Infinity => String::from("point at infinity"),
    }
}

/// Checks the residue-side preconditions shared by the quadratic and cubic
/// arguments: exactly one point over F_3 (the one at infinity) and seven
/// over F_9, and returns the three conjugate pairs of F_9-points.
fn residue_pairs(curve: &CurveModel) -> Result<Vec<Vec<CurvePoint>>, BoundError> {
    let fbar = curve.reduce_mod(3)?;
    let ctx3 = FFContext::new(3, 1)?;
    let pts3 = finite_fields::curve_points(&fbar, &ctx3)?;
    if pts3.len() != 1 {
        return Err(BoundError::WrongPointCount {
            field_order: 3,
            expected: 1,
            got: pts3.len() as u64,
        });
    }
    let ctx9 = FFContext::new(3, 2)?;
    let pts9 = finite_fields::curve_points(&fbar, &ctx9)?;
    if pts9.len() != 7 {
        return Err(BoundError::WrongPointCount {
            field_order: 9,
            expected: 7,
            got: pts9.len() as u64,
        });
    }
    let pairs: Vec<Vec<CurvePoint>> = finite_fields::frobenius_orbits(&pts9, &ctx9)
        .into_iter()
        .filter(|o| o.len() == 2)
        .collect();
    // 1 rational point and 7 over F_9 force three conjugate pairs
    debug_assert_eq!(pairs.len(), 3);
    Ok(pairs)
}

fn allocation_note(groups: &[AllocationGroup], alloc: &Allocation, budget: u32) -> String {
    let spent: Vec<&str> = alloc
        .active
        .iter()
        .filter(|&&i| groups[i].cost > 0)
        .map(|&i| groups[i].label.as_str())
        .collect();
    if spent.is_empty() {
        format!("vanishing budget {budget} left unspent; ties break to the first subset")
    } else {
        format!(
            "vanishing budget {budget} spent on: {}; ties break to the first subset",
            spent.join(", ")
        )
    }
}

fn curve_equation(curve: &CurveModel) -> String {
    format!("y^2 = {}", curve.f().display("x"))
}

/// Bound on quadratic points for a curve meeting the mod-3 residue
/// conditions. The pair at infinity reduces both coordinates to the same
/// rational point, so its 8 ordered pairs collapse to 4 unordered ones; a
/// conjugate F_9-pair class carries 8 unordered pairs when its common
/// vanishing order is 1 and none when it is 0, and the rank bound lets at
/// most one of the three classes be active. Total: 12 pairs, 24 points.
pub fn quadratic_pipeline(
    curve: &CurveModel,
    hypotheses: &Hypotheses,
) -> Result<BoundReport, BoundError> {
    hypotheses.require(3)?;
    if curve.genus() < 3 {
        return Err(BoundError::GenusTooSmall {
            genus: curve.genus(),
            d: 2,
        });
    }
    let pairs = residue_pairs(curve)?;
    let half = ratio(1, 2);
    let one = BigRational::one();
    let two = BigInt::from(2);

    let inf_ordered = per_disk_bound(2, 2, &half, 3, false)?;
    let inf_unordered = inf_ordered.div_floor(&two);
    let gain = per_disk_bound(2, 1, &one, 3, false)?;
    let idle = per_disk_bound(2, 0, &one, 3, false)?;

    let mut groups = vec![AllocationGroup {
        label: String::from("pair at infinity"),
        cost: 0,
        gain_active: inf_unordered.clone(),
        gain_inactive: inf_unordered.clone(),
    }];
    for orbit in &pairs {
        groups.push(AllocationGroup {
            label: pair_label(orbit),
            cost: 2,
            gain_active: gain.clone(),
            gain_inactive: idle.clone(),
        });
    }
    let budget = 2;
    let alloc = allocate_vanishing(&groups, budget);

    let mut configurations = vec![ResidueConfiguration {
        label: groups[0].label.clone(),
        radii: vec![half.clone(), half],
        mixed_radii: false,
        vanishing_order: 2,
        ordered_count: inf_ordered,
        stabilizer: 2,
        unordered_count: inf_unordered,
        active: true,
        note: Some("both coordinates share one residue disk; ordered pairs double-count"),
    }];
    for (k, orbit) in pairs.iter().enumerate() {
        let active = alloc.active.contains(&(k + 1));
        let count = if active { gain.clone() } else { idle.clone() };
        configurations.push(ResidueConfiguration {
            label: pair_label(orbit),
            radii: vec![one.clone(), one.clone()],
            mixed_radii: false,
            vanishing_order: u32::from(active),
            ordered_count: count.clone(),
            stabilizer: 1,
            unordered_count: count,
            active,
            note: None,
        });
    }

    let tuple_bound = alloc.total.clone();
    let point_bound = &tuple_bound * &two;
    Ok(BoundReport {
        curve: curve_equation(curve),
        genus: curve.genus(),
        d: 2,
        p: 3,
        hypotheses: *hypotheses,
        configurations,
        crude: None,
        refined: true,
        tuple_bound,
        point_bound,
        notes: vec![allocation_note(&groups, &alloc, budget)],
    })
}

/// Bound on cubic points for a curve meeting the mod-3 residue conditions,
/// genus at least 4. The triple at infinity gives floor(26/6) = 4 unordered
/// triples; triples reducing to conjugate F_27-points force a common
/// vanishing order of 0, so only their centers count, capped by the 8
/// degree-3 closed points of the projective line; and a class pairing a
/// conjugate F_9-pair with the infinity disk carries 26 triples when
/// active. Total: 4 + 8 + 26 = 38 triples, 114 points.
pub fn cubic_pipeline(
    curve: &CurveModel,
    hypotheses: &Hypotheses,
) -> Result<BoundReport, BoundError> {
    hypotheses.require(3)?;
    if curve.genus() < 4 {
        return Err(BoundError::GenusTooSmall {
            genus: curve.genus(),
            d: 3,
        });
    }
    let pairs = residue_pairs(curve)?;
    let third = ratio(1, 3);
    let one = BigRational::one();

    let inf_ordered = per_disk_bound(3, 2, &third, 3, false)?;
    let inf_unordered = inf_ordered.div_floor(&BigInt::from(6));
    // the two unramified coordinates would allow radius 1; relaxing them to
    // the ramified coordinate's 1/3 only enlarges the polygons, so this
    // stays an upper bound for the mixed class
    let mixed_gain = per_disk_bound(3, 1, &third, 3, false)?;
    let mixed_idle = per_disk_bound(3, 0, &one, 3, false)?;
    let far_beyond = per_disk_bound(3, 0, &one, 3, false)?;
    let far_centers = BigInt::from(finite_fields::closed_points_p1(3, 3));

    let mut groups = vec![
        AllocationGroup {
            label: String::from("triple at infinity"),
            cost: 0,
            gain_active: inf_unordered.clone(),
            gain_inactive: inf_unordered.clone(),
        },
        AllocationGroup {
            label: String::from("conjugate triples over F_27"),
            cost: 0,
            gain_active: far_centers.clone(),
            gain_inactive: far_centers.clone(),
        },
    ];
    for orbit in &pairs {
        groups.push(AllocationGroup {
            label: format!("{} with infinity", pair_label(orbit)),
            cost: 2,
            gain_active: mixed_gain.clone(),
            gain_inactive: mixed_idle.clone(),
        });
    }
    let budget = 2;
    let alloc = allocate_vanishing(&groups, budget);

    let mut configurations = vec![
        ResidueConfiguration {
            label: groups[0].label.clone(),
            radii: vec![third.clone(), third.clone(), third.clone()],
            mixed_radii: false,
            vanishing_order: 2,
            ordered_count: inf_ordered,
            stabilizer: 6,
            unordered_count: inf_unordered,
            active: true,
            note: Some("all three coordinates share one residue disk; ordered triples overcount sixfold"),
        },
        ResidueConfiguration {
            label: groups[1].label.clone(),
            radii: vec![one.clone(), one.clone(), one.clone()],
            mixed_radii: false,
            vanishing_order: 0,
            ordered_count: far_beyond,
            stabilizer: 1,
            unordered_count: far_centers,
            active: true,
            note: Some(
                "beyond-center count is zero; centers are capped by the degree-3 closed points of the projective line",
            ),
        },
    ];
    for (k, orbit) in pairs.iter().enumerate() {
        let active = alloc.active.contains(&(k + 2));
        let count = if active {
            mixed_gain.clone()
        } else {
            mixed_idle.clone()
        };
        configurations.push(ResidueConfiguration {
            label: format!("{} with infinity", pair_label(orbit)),
            radii: vec![one.clone(), one.clone(), third.clone()],
            mixed_radii: true,
            vanishing_order: u32::from(active),
            ordered_count: count.clone(),
            stabilizer: 1,
            unordered_count: count,
            active,
            note: Some("polygon bound evaluated at the smallest coordinate radius"),
        });
    }

    let tuple_bound = alloc.total.clone();
    let point_bound = &tuple_bound * BigInt::from(3);
    Ok(BoundReport {
        curve: curve_equation(curve),
        genus: curve.genus(),
        d: 3,
        p: 3,
        hypotheses: *hypotheses,
        configurations,
        crude: None,
        refined: true,
        tuple_bound,
        point_bound,
        notes: vec![allocation_note(&groups, &alloc, budget)],
    })
}

/// Frobenius-consistent ordered reductions of a conjugate d-tuple, from
/// actual point counts over F_{p^k}, k <= d. For d = 2: both coordinates
/// rational, or a conjugate quadratic pair. For d = 3: all rational, one
/// rational with a conjugate pair in any of three positions, or a full
/// cubic orbit read off from either generator of its symmetry.
fn refined_reduction_count(d: u32, fbar: &[u64], p: u64) -> Result<BigInt, BoundError> {
    let mut counts = Vec::new();
    for k in 1..=d as usize {
        let ctx = FFContext::new(p, k)?;
        let pts = finite_fields::curve_points(fbar, &ctx)?;
        counts.push(BigInt::from(pts.len() as u64));
    }
    let n1 = counts[0].clone();
    Ok(match d {
        2 => &n1 * &n1 + (&counts[1] - &n1),
        3 => {
            &n1 * &n1 * &n1
                + BigInt::from(3) * &n1 * (&counts[1] - &n1)
                + BigInt::from(2) * (&counts[2] - &n1)
        }
        _ => unreachable!("refined counting is limited to d = 2 and 3"),
    })
}

/// Degree-d bound at the smallest admissible prime. At p = 3 the curve-
/// specific quadratic and cubic arguments apply and are delegated to;
/// otherwise the count multiplies the number of possible reductions by the
/// per-disk worst case 3^d, replacing the crude reduction count with the
/// Frobenius-consistent one whenever the needed fields stay within the
/// enumeration guard. Each orbit of a degree-d point yields d distinct
/// ordered tuples, so unordered tuples are the ordered count divided by d.
pub fn generic_pipeline(
    d: u32,
    curve: &CurveModel,
    hypotheses: &Hypotheses,
) -> Result<BoundReport, BoundError> {
    if d < 2 || d as usize > polytopes::MAX_DIM {
        return Err(BoundError::DegreeOutOfRange(d));
    }
    if hypotheses.good_reduction_at == 3 {
        if d == 2 {
            return quadratic_pipeline(curve, hypotheses);
        }
        if d == 3 {
            return cubic_pipeline(curve, hypotheses);
        }
    }
    let p = bertrand_prime(d)?;
    hypotheses.require(p)?;
    if curve.genus() <= d as usize {
        return Err(BoundError::GenusTooSmall {
            genus: curve.genus(),
            d,
        });
    }
    let fbar = curve.reduce_mod(p)?;
    let crude = crude_bound(d, p)?;
    let m = ratio(1, i64::from(d) * i64::from(d));
    let per_tuple = per_disk_bound(d, 2, &m, p, true)?;

    let refined_count = if d == 2 || d == 3 {
        match refined_reduction_count(d, &fbar, p) {
            Ok(c) => Some(c),
            Err(BoundError::Field(FFError::FieldTooLarge { .. })) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let crude_reductions = {
        let inner = BigInt::from(2) * BigInt::from(p).pow(d) + BigInt::one();
        (BigInt::from(u64::from(d)) * inner).pow(d)
    };
    let (reductions, refined) = match refined_count {
        Some(c) => (c, true),
        None => (crude_reductions, false),
    };

    let ordered = &reductions * &per_tuple;
    let db = BigInt::from(u64::from(d));
    let tuple_bound = ordered.div_floor(&db);
    let point_bound = &tuple_bound * &db;
    let label = if refined {
        String::from("Frobenius-consistent reductions")
    } else {
        String::from("all residue tuples, counted crudely")
    };
    let configurations = vec![ResidueConfiguration {
        label,
        radii: vec![m; d as usize],
        mixed_radii: false,
        vanishing_order: 2,
        ordered_count: ordered,
        stabilizer: d,
        unordered_count: tuple_bound.clone(),
        active: true,
        note: Some("each orbit contributes d rotations of one ordered tuple"),
    }];
    Ok(BoundReport {
        curve: curve_equation(curve),
        genus: curve.genus(),
        d,
        p,
        hypotheses: *hypotheses,
        configurations,
        crude: Some(crude.bound),
        refined,
        tuple_bound,
        point_bound,
        notes: vec![format!(
            "per-disk worst case {per_tuple} ordered tuples, center included"
        )],
    })
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::family::build_family_member;
    use crate::polytopes::Polytope;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family_lift(g: u64) -> CurveModel {
        let member = build_family_member(g).unwrap();
        let coeffs: Vec<BigInt> = member
            .f_descending()
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        CurveModel::new(g as usize, coeffs).unwrap()
    }

    #[test]
    fn bertrand_prime_examples() {
        assert_eq!(bertrand_prime(2).unwrap(), 11);
        assert_eq!(bertrand_prime(3).unwrap(), 13);
        assert_eq!(bertrand_prime(4).unwrap(), 23);
        assert_eq!(bertrand_prime(5).unwrap(), 29);
        assert!(matches!(
            bertrand_prime(1),
            Err(BoundError::DegreeOutOfRange(1))
        ));
    }

    #[test]
    fn bertrand_prime_is_minimal() {
        for d in 2..=12u32 {
            let p = bertrand_prime(d).unwrap();
            let floor = u64::from(d) * u64::from(d) + 3;
            assert!(primes::is_prime(p));
            assert!(p > floor);
            for q in floor + 1..p {
                assert!(!primes::is_prime(q), "missed prime {q} below {p}");
            }
            // the gap guarantee: a prime exists before twice the floor
            assert!(p < 2 * floor);
        }
    }

    #[test]
    fn crude_bound_values() {
        let b = crude_bound(2, 11).unwrap();
        assert_eq!(b.bound, BigInt::from(2125764u64));
        // the smallest admissible prime for d = 2 is also the cap's 2d^2 + 3
        assert_eq!(b.degree_only_cap, BigInt::from(2125764u64));

        assert_eq!(crude_bound(2, 13).unwrap().bound, BigInt::from(4137156u64));

        let c = crude_bound(3, 13).unwrap();
        assert_eq!(c.bound, BigInt::from(61887674878875u64));
        assert_eq!(c.bound, BigInt::from(39555u64).pow(3));
        assert_eq!(c.degree_only_cap, BigInt::from(4632991554195243u64));

        assert!(matches!(
            crude_bound(2, 7),
            Err(BoundError::PrimeTooSmall { p: 7, d: 2 })
        ));
        assert!(matches!(crude_bound(1, 11), Err(BoundError::DegreeOutOfRange(1))));
    }

    #[test]
    fn per_disk_bound_examples() {
        let cases: [(u32, u32, (i64, i64), u64, bool, i64); 8] = [
            (2, 2, (1, 2), 3, false, 8),
            (3, 2, (1, 3), 3, false, 26),
            (2, 1, (1, 1), 3, false, 8),
            (3, 1, (1, 3), 3, false, 26),
            (2, 0, (1, 1), 3, false, 0),
            (3, 0, (1, 1), 3, false, 0),
            (2, 2, (1, 4), 11, true, 9),
            (3, 2, (1, 9), 13, true, 27),
        ];
        for (d, order, (n, den), p, center, want) in cases {
            let got = per_disk_bound(d, order, &ratio(n, den), p, center).unwrap();
            assert_eq!(got, BigInt::from(want), "d={d} order={order} m={n}/{den} p={p}");
        }
        assert!(matches!(
            per_disk_bound(2, 3, &ratio(1, 2), 3, false),
            Err(BoundError::VanishingOrderTooLarge(3))
        ));
        assert!(matches!(
            per_disk_bound(0, 2, &ratio(1, 2), 3, false),
            Err(BoundError::DegreeOutOfRange(0))
        ));
        assert!(matches!(
            per_disk_bound(7, 2, &ratio(1, 2), 3, false),
            Err(BoundError::DegreeOutOfRange(7))
        ));
    }

    #[test]
    fn per_disk_matches_axis_segment_mixed_volume() {
        // independent polytope: conv of e_i and 3e_i across axes
        for (d, p) in [(1u32, 5u64), (2, 11), (3, 13), (4, 23)] {
            let m = ratio(1, i64::from(d) * i64::from(d));
            let got = per_disk_bound(d, 2, &m, p, true).unwrap();
            let mut pts = Vec::new();
            for i in 0..d as usize {
                for scale in [1i64, 3] {
                    let mut v = vec![0i64; d as usize];
                    v[i] = scale;
                    pts.push(v);
                }
            }
            let z = Polytope::from_int_points(d as usize, &pts).unwrap();
            let mv = polytopes::mixed_volume(&vec![z; d as usize]).unwrap();
            assert_eq!(got, mv.to_integer() + 1);
            assert_eq!(got, BigInt::from(3u64).pow(d) - 1 + 1);
        }
    }

    #[test]
    fn allocator_reproduces_the_budgeted_totals() {
        let group = |label: &str, cost, active: i64, inactive: i64| AllocationGroup {
            label: String::from(label),
            cost,
            gain_active: BigInt::from(active),
            gain_inactive: BigInt::from(inactive),
        };
        // one always-on class worth 4 plus three classes worth 8 when active
        let quadratic = vec![
            group("infinity", 0, 4, 4),
            group("pair 0", 2, 8, 0),
            group("pair 1", 2, 8, 0),
            group("pair 2", 2, 8, 0),
        ];
        let a = allocate_vanishing(&quadratic, 2);
        assert_eq!(a.total, BigInt::from(12));
        assert_eq!(a.active, vec![0, 1]);

        let cubic = vec![
            group("infinity", 0, 4, 4),
            group("far classes", 0, 8, 8),
            group("mixed 0", 2, 26, 0),
            group("mixed 1", 2, 26, 0),
            group("mixed 2", 2, 26, 0),
        ];
        assert_eq!(allocate_vanishing(&cubic, 2).total, BigInt::from(38));
        assert_eq!(allocate_vanishing(&cubic, 0).total, BigInt::from(12));

        // equal gains: the lexicographically first subset wins
        let tie = vec![group("a", 2, 5, 0), group("b", 2, 5, 0)];
        assert_eq!(allocate_vanishing(&tie, 2).active, vec![0]);
    }

    #[test]
    fn allocator_matches_knapsack_oracle() {
        fn knapsack(groups: &[AllocationGroup], budget: u32) -> BigInt {
            // 0/1 knapsack over the activation deltas plus the inactive base
            let base: BigInt = groups.iter().map(|g| g.gain_inactive.clone()).sum();
            let mut best = vec![BigInt::zero(); budget as usize + 1];
            for g in groups {
                let delta = &g.gain_active - &g.gain_inactive;
                for b in (g.cost..=budget).rev() {
                    let candidate = &best[(b - g.cost) as usize] + &delta;
                    if candidate > best[b as usize] {
                        best[b as usize] = candidate;
                    }
                }
            }
            base + best[budget as usize].clone()
        }

        let mut rng = ChaCha8Rng::seed_from_u64(57);
        for _ in 0..200 {
            let len = rng.gen_range(0..=8);
            let groups: Vec<AllocationGroup> = (0..len)
                .map(|i| AllocationGroup {
                    label: format!("g{i}"),
                    cost: rng.gen_range(0..=3),
                    gain_active: BigInt::from(rng.gen_range(0..=50i64)),
                    gain_inactive: BigInt::from(rng.gen_range(0..=50i64)),
                })
                .collect();
            let budget = rng.gen_range(0..=6);
            assert_eq!(
                allocate_vanishing(&groups, budget).total,
                knapsack(&groups, budget),
                "groups {groups:?} budget {budget}"
            );
        }
    }

    #[test]
    fn quadratic_pipeline_counts_twenty_four() {
        let curve = family_lift(3);
        let hyp = Hypotheses::all_asserted(3);
        let report = quadratic_pipeline(&curve, &hyp).unwrap();
        assert_eq!(report.point_bound, BigInt::from(24));
        assert_eq!(report.tuple_bound, BigInt::from(12));
        assert_eq!(report.d, 2);
        assert_eq!(report.p, 3);
        assert_eq!(report.configurations.len(), 4);

        let inf = &report.configurations[0];
        assert_eq!(inf.ordered_count, BigInt::from(8));
        assert_eq!(inf.stabilizer, 2);
        assert_eq!(inf.unordered_count, BigInt::from(4));

        let active: Vec<_> = report.configurations[1..]
            .iter()
            .filter(|c| c.active)
            .collect();
        assert_eq!(active.len(), 1);
        assert_eq!(active[0].unordered_count, BigInt::from(8));
        assert_eq!(active[0].vanishing_order, 1);
        for c in report.configurations[1..].iter().filter(|c| !c.active) {
            assert_eq!(c.unordered_count, BigInt::zero());
        }

        // deterministic report assembly
        assert_eq!(report, quadratic_pipeline(&curve, &hyp).unwrap());
    }

    #[test]
    fn quadratic_pipeline_across_the_family() {
        for g in 3..=10 {
            let report =
                quadratic_pipeline(&family_lift(g), &Hypotheses::all_asserted(3)).unwrap();
            assert_eq!(report.point_bound, BigInt::from(24), "genus {g}");
        }
    }

    #[test]
    fn quadratic_pipeline_refusals() {
        let curve = family_lift(3);
        let mut hyp = Hypotheses::all_asserted(3);
        hyp.rank_le_1 = false;
        match quadratic_pipeline(&curve, &hyp) {
            Err(BoundError::HypothesesNotAsserted(missing)) => {
                assert!(missing[0].contains("rank"));
            }
            other => panic!("expected a hypothesis refusal, got {other:?}"),
        }

        let wrong_prime = Hypotheses::all_asserted(5);
        assert!(matches!(
            quadratic_pipeline(&curve, &wrong_prime),
            Err(BoundError::WrongReductionPrime {
                declared: 5,
                required: 3
            })
        ));

        // separable mod 3 but with visible affine F_3-points
        let busy = CurveModel::new(
            3,
            vec![
                BigInt::from(1),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::from(1),
                BigInt::zero(),
                BigInt::from(2),
            ],
        )
        .unwrap();
        match quadratic_pipeline(&busy, &Hypotheses::all_asserted(3)) {
            Err(BoundError::WrongPointCount { field_order: 3, expected: 1, got }) => {
                assert_ne!(got, 1);
            }
            Err(BoundError::Curve(CurveError::BadReduction(3))) => {
                panic!("test curve should have good reduction at 3")
            }
            other => panic!("expected a point-count refusal, got {other:?}"),
        }
    }

    #[test]
    fn cubic_pipeline_counts_one_fourteen() {
        let curve = family_lift(4);
        let hyp = Hypotheses::all_asserted(3);
        let report = cubic_pipeline(&curve, &hyp).unwrap();
        assert_eq!(report.tuple_bound, BigInt::from(38));
        assert_eq!(report.point_bound, BigInt::from(114));
        assert_eq!(report.configurations.len(), 5);

        let inf = &report.configurations[0];
        assert_eq!(inf.ordered_count, BigInt::from(26));
        assert_eq!(inf.stabilizer, 6);
        assert_eq!(inf.unordered_count, BigInt::from(4));

        let far = &report.configurations[1];
        assert_eq!(far.ordered_count, BigInt::zero());
        assert_eq!(far.unordered_count, BigInt::from(8));

        let active: Vec<_> = report.configurations[2..]
            .iter()
            .filter(|c| c.active)
            .collect();
        assert_eq!(active.len(), 1);
        assert_eq!(active[0].unordered_count, BigInt::from(26));
        assert!(active[0].mixed_radii);

        assert_eq!(report, cubic_pipeline(&curve, &hyp).unwrap());
    }

    #[test]
    fn cubic_pipeline_across_the_family() {
        for g in 4..=10 {
            let report = cubic_pipeline(&family_lift(g), &Hypotheses::all_asserted(3)).unwrap();
            assert_eq!(report.point_bound, BigInt::from(114), "genus {g}");
        }
    }

    #[test]
    fn cubic_pipeline_needs_genus_at_least_four() {
        assert!(matches!(
            cubic_pipeline(&family_lift(3), &Hypotheses::all_asserted(3)),
            Err(BoundError::GenusTooSmall { genus: 3, d: 3 })
        ));
    }

    #[test]
    fn generic_pipeline_delegates_at_three() {
        let q = generic_pipeline(2, &family_lift(3), &Hypotheses::all_asserted(3)).unwrap();
        assert_eq!(q.point_bound, BigInt::from(24));
        let c = generic_pipeline(3, &family_lift(4), &Hypotheses::all_asserted(3)).unwrap();
        assert_eq!(c.point_bound, BigInt::from(114));
    }

    #[test]
    fn generic_pipeline_refined_quadratic() {
        let curve = family_lift(3);
        let hyp = Hypotheses::all_asserted(11);
        let report = generic_pipeline(2, &curve, &hyp).unwrap();
        assert!(report.refined);
        assert_eq!(report.crude, Some(BigInt::from(2125764u64)));
        assert!(report.point_bound <= BigInt::from(2125764u64));
        assert_eq!(report.point_bound, &report.tuple_bound * BigInt::from(2));
        assert_eq!(report, generic_pipeline(2, &curve, &hyp).unwrap());
    }

    #[test]
    fn generic_pipeline_refined_cubic() {
        // pick a family curve with good reduction at 13
        let curve = (4..=8)
            .map(family_lift)
            .find(|c| c.good_reduction(13).unwrap())
            .expect("some small family member has good reduction at 13");
        let hyp = Hypotheses::all_asserted(13);
        let report = generic_pipeline(3, &curve, &hyp).unwrap();
        assert!(report.refined);
        assert_eq!(report.crude, Some(BigInt::from(61887674878875u64)));
        assert!(report.point_bound <= BigInt::from(61887674878875u64));
        assert_eq!(report.point_bound, &report.tuple_bound * BigInt::from(3));
    }

    #[test]
    fn generic_pipeline_crude_degree_four() {
        let curve = (5..=9)
            .map(family_lift)
            .find(|c| c.good_reduction(23).unwrap())
            .expect("some small family member has good reduction at 23");
        let hyp = Hypotheses::all_asserted(23);
        let report = generic_pipeline(4, &curve, &hyp).unwrap();
        assert!(!report.refined);
        let crude = report.crude.clone().unwrap();
        assert_eq!(report.point_bound, crude);
        assert_eq!(crude, crude_bound(4, 23).unwrap().bound);
    }

    #[test]
    fn generic_pipeline_refusals() {
        let curve = family_lift(3);
        assert!(matches!(
            generic_pipeline(1, &curve, &Hypotheses::all_asserted(3)),
            Err(BoundError::DegreeOutOfRange(1))
        ));
        // degree 3 needs genus above 3
        assert!(matches!(
            generic_pipeline(3, &curve, &Hypotheses::all_asserted(13)),
            Err(BoundError::GenusTooSmall { genus: 3, d: 3 })
        ));
        // x^7 + 11x + 11 reduces to x^7 mod 11, which is not separable
        let bad = CurveModel::new(
            3,
            vec![
                BigInt::from(1),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::from(11),
                BigInt::from(11),
            ],
        )
        .unwrap();
        assert!(matches!(
            generic_pipeline(2, &bad, &Hypotheses::all_asserted(11)),
            Err(BoundError::Curve(CurveError::BadReduction(11)))
        ));
    }
}
