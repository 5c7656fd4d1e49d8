//! Exact feasibility for systems of rational linear constraints by
//! Fourier-Motzkin elimination.
//!
//! Sized for small systems (few variables, tens of constraints): each
//! elimination step can square the row count, so equalities are first
//! substituted away by Gaussian pivoting, remaining rows are kept in a
//! canonical integer form and deduplicated, and the variable with the
//! cheapest positive-negative pairing is eliminated first.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// `coeffs . w  (rel)  rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rel: Rel, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

/// Row in `a . w <= b` form, scaled to coprime integers for deduplication.
type Row = (Vec<BigInt>, BigInt);

fn canonical_row(coeffs: &[BigRational], rhs: &BigRational) -> Row {
    let mut denom_lcm = BigInt::one();
    for c in coeffs.iter().chain(core::iter::once(rhs)) {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let scale = |c: &BigRational| -> BigInt {
        (c * BigRational::from_integer(denom_lcm.clone()))
            .to_integer()
    };
    let mut ints: Vec<BigInt> = coeffs.iter().map(scale).collect();
    let mut b = scale(rhs);
    let mut g = b.abs();
    for c in &ints {
        g = g.gcd(&c.abs());
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
        b /= &g;
    }
    (ints, b)
}

/// Decides whether some `w` in `Q^nvars` satisfies every constraint.
///
/// Each equality pins one variable, which is substituted out exactly before
/// elimination starts; expanding equalities into inequality pairs instead
/// makes the row count explode.
pub fn feasible(constraints: &[Constraint], nvars: usize) -> bool {
    let mut eqs: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let mut ineqs: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint arity mismatch");
        match c.rel {
            Rel::Le => ineqs.push((c.coeffs.clone(), c.rhs.clone())),
            Rel::Ge => ineqs.push((
                c.coeffs.iter().map(|x| -x.clone()).collect(),
                -c.rhs.clone(),
            )),
            Rel::Eq => eqs.push((c.coeffs.clone(), c.rhs.clone())),
        }
    }

    let mut pinned = vec![false; nvars];
    for k in 0..eqs.len() {
        let Some(j) = (0..nvars).find(|&j| !eqs[k].0[j].is_zero()) else {
            if !eqs[k].1.is_zero() {
                return false;
            }
            continue;
        };
        pinned[j] = true;
        let (pivot, pivot_rhs) = eqs[k].clone();
        let substitute = |row: &mut (Vec<BigRational>, BigRational)| {
            if row.0[j].is_zero() {
                return;
            }
            let factor = &row.0[j] / &pivot[j];
            for (x, p) in row.0.iter_mut().zip(&pivot) {
                *x -= &factor * p;
            }
            row.1 -= factor * &pivot_rhs;
        };
        for row in eqs[k + 1..].iter_mut() {
            substitute(row);
        }
        for row in ineqs.iter_mut() {
            substitute(row);
        }
    }

    let mut rows: BTreeSet<Row> = ineqs
        .iter()
        .map(|(a, b)| canonical_row(a, b))
        .collect();
    let mut active: Vec<usize> = (0..nvars).filter(|&j| !pinned[j]).collect();
    loop {
        // constant rows decide or disappear
        let mut next: BTreeSet<Row> = BTreeSet::new();
        for (a, b) in rows {
            if a.iter().all(|c| c.is_zero()) {
                if b.is_negative() {
                    return false;
                }
            } else {
                next.insert((a, b));
            }
        }
        rows = next;
        if rows.is_empty() || active.is_empty() {
            return true;
        }

        // eliminate the variable with the fewest positive-negative pairings
        let cost = |j: usize, rows: &BTreeSet<Row>| -> usize {
            let pos = rows.iter().filter(|(a, _)| a[j].is_positive()).count();
            let neg = rows.iter().filter(|(a, _)| a[j].is_negative()).count();
            pos * neg
        };
        let (pick, _) = active
            .iter()
            .map(|&j| (j, cost(j, &rows)))
            .min_by_key(|&(_, c)| c)
            .expect("active nonempty");
        active.retain(|&j| j != pick);

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut keep = BTreeSet::new();
        for (a, b) in rows {
            match a[pick].sign() {
                num_bigint::Sign::Plus => pos.push((a, b)),
                num_bigint::Sign::Minus => neg.push((a, b)),
                num_bigint::Sign::NoSign => {
                    keep.insert((a, b));
                }
            }
        }
        // upper bound (from positive row) must exceed lower bound (negative):
        // combine p/|p_j| + n/|n_j| to cancel the variable exactly
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let pj = pa[pick].clone();
                let nj = -na[pick].clone();
                let coeffs: Vec<BigRational> = pa
                    .iter()
                    .zip(na)
                    .map(|(x, y)| {
                        BigRational::new(x * &nj + y * &pj, BigInt::one())
                    })
                    .collect();
                let rhs = BigRational::new(pb * &nj + nb * &pj, BigInt::one());
                keep.insert(canonical_row(&coeffs, &rhs));
            }
        }
        rows = keep;
    }
}
