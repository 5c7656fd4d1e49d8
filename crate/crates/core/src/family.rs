//! Congruence families of odd hyperelliptic models over F_3, one per genus,
//! whose reductions have a single rational point over F_3 and exactly seven
//! points over F_9. Members are built per genus class and then re-verified
//! from scratch: square-freeness, both point counts, the point structure,
//! and the exponent reduction used to keep middle terms below the degree.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::finite_fields::{curve_points, frobenius_orbits, CurvePoint, FFContext};
use crate::modp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    GenusTooSmall(u64),
    BadTrinomialExponents { n: u64, k: u64 },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::GenusTooSmall(g) => {
                write!(f, "family members start at genus 3, got {g}")
            }
            FamilyError::BadTrinomialExponents { n, k } => {
                write!(f, "trinomial x^n + a x^k + b needs 0 < k < n, got n={n} k={k}")
            }
        }
    }
}

impl core::error::Error for FamilyError {}

/// Which congruence class of the genus selects the member's shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyBranch {
    /// g = 1 mod 4: x^(2g+1) + 2x^9 + 2
    G1Mod4,
    /// g = 2 mod 4: x^(2g+1) + 2x^15 + 2, middle exponent reduced by 8
    /// while it would collide with the degree (g = 6 uses x^7)
    G2Mod4,
    /// g = 3 mod 4: x^(2g+1) + 2x^5 + 2
    G3Mod4,
    /// g = 0 mod 4, g = 0 or 1 mod 3: x^(2g+1) + x^3 + x + 2
    G0Mod4Rem01,
    /// g = 0 mod 4, g = 2 mod 3: x^(2g+1) + x^9 + x^3 + 2
    G0Mod4Rem2,
}

impl FamilyBranch {
    pub fn description(self) -> &'static str {
        match self {
            FamilyBranch::G1Mod4 => "g=1 mod 4: x^(2g+1) + 2x^9 + 2",
            FamilyBranch::G2Mod4 => "g=2 mod 4: x^(2g+1) + 2x^15 + 2",
            FamilyBranch::G3Mod4 => "g=3 mod 4: x^(2g+1) + 2x^5 + 2",
            FamilyBranch::G0Mod4Rem01 => "g=0 mod 4, g=0,1 mod 3: x^(2g+1) + x^3 + x + 2",
            FamilyBranch::G0Mod4Rem2 => "g=0 mod 4, g=2 mod 3: x^(2g+1) + x^9 + x^3 + 2",
        }
    }

    pub fn is_trinomial(self) -> bool {
        matches!(
            self,
            FamilyBranch::G1Mod4 | FamilyBranch::G2Mod4 | FamilyBranch::G3Mod4
        )
    }

    /// Middle (exponent, coefficient) pairs as displayed, before any
    /// exponent reduction.
    fn nominal_terms(self) -> &'static [(u64, u64)] {
        match self {
            FamilyBranch::G1Mod4 => &[(9, 2)],
            FamilyBranch::G2Mod4 => &[(15, 2)],
            FamilyBranch::G3Mod4 => &[(5, 2)],
            FamilyBranch::G0Mod4Rem01 => &[(3, 1), (1, 1)],
            FamilyBranch::G0Mod4Rem2 => &[(9, 1), (3, 1)],
        }
    }

    /// Middle terms actually used for genus g. Dropping an exponent by 8
    /// leaves the function on F_9 unchanged (x^8 = 1 for nonzero x, and 0
    /// maps to 0 either way), so exponents are reduced when the nominal one
    /// would reach the degree 2g+1, and once more in the trinomial cases
    /// where both the degree and the middle exponent are divisible by 3:
    /// there x^n + 2x^e + 2 = (x^(n/3) + 2x^(e/3) + 2)^3 in F_3[x], which is
    /// not square-free. The surviving middle exponents are 9 or 1, 15 or 7,
    /// and 5, with nonzero trinomial discriminant for every degree.
    fn reduced_terms(self, g: u64) -> Vec<(u64, u64)> {
        let n = 2 * g + 1;
        self.nominal_terms()
            .iter()
            .map(|&(mut e, c)| {
                while e >= n {
                    e -= 8;
                }
                if self.is_trinomial() && n % 3 == 0 && e % 3 == 0 {
                    e -= 8;
                }
                (e, c)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub genus: u64,
    pub branch: FamilyBranch,
    /// Coefficients of f over F_3, ascending, length 2g+2, leading 1.
    pub f_mod3: Vec<u64>,
}

impl FamilyMember {
    pub fn f_descending(&self) -> Vec<u64> {
        self.f_mod3.iter().rev().copied().collect()
    }
}

pub fn build_family_member(g: u64) -> Result<FamilyMember, FamilyError> {
    if g < 3 {
        return Err(FamilyError::GenusTooSmall(g));
    }
    let branch = match (g % 4, g % 3) {
        (1, _) => FamilyBranch::G1Mod4,
        (2, _) => FamilyBranch::G2Mod4,
        (3, _) => FamilyBranch::G3Mod4,
        (_, 2) => FamilyBranch::G0Mod4Rem2,
        (_, _) => FamilyBranch::G0Mod4Rem01,
    };
    let n = (2 * g + 1) as usize;
    let mut f_mod3 = vec![0u64; n + 1];
    f_mod3[n] = 1;
    f_mod3[0] = 2;
    for (e, c) in branch.reduced_terms(g) {
        f_mod3[e as usize] = c;
    }
    Ok(FamilyMember {
        genus: g,
        branch,
        f_mod3,
    })
}

/// Exact discriminant of the trinomial x^n + a x^k + b: with d = gcd(n, k),
/// n = n1 d, k = k1 d,
///
///   (-1)^(n(n-1)/2) b^(k-1) [n^n1 b^(n1-k1) + (-1)^(n1+1) (n-k)^(n1-k1) k^k1 a^n1]^d
pub fn swan_trinomial_discriminant(
    n: u64,
    k: u64,
    a: &BigInt,
    b: &BigInt,
) -> Result<BigInt, FamilyError> {
    if k == 0 || k >= n {
        return Err(FamilyError::BadTrinomialExponents { n, k });
    }
    let d = n.gcd(&k);
    let n1 = (n / d) as u32;
    let k1 = (k / d) as u32;
    let mut bracket = BigInt::from(n).pow(n1) * b.pow(n1 - k1);
    let cross = BigInt::from(n - k).pow(n1 - k1) * BigInt::from(k).pow(k1) * a.pow(n1);
    if n1 % 2 == 1 {
        bracket += cross;
    } else {
        bracket -= cross;
    }
    let mut disc = b.pow(k as u32 - 1) * bracket.pow(d as u32);
    if (n * (n - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}

/// Outcome of re-deriving every family condition for one member. Failures
/// are recorded, not raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerification {
    pub genus: u64,
    pub branch: FamilyBranch,
    pub squarefree: bool,
    pub points_f3: u64,
    pub points_f9: u64,
    /// The six F_9 points are (x, +-y) with x in F_3, y outside F_3 with
    /// y^2 = 2, in three Frobenius orbits of size two.
    pub f9_structure: bool,
    /// The stored coefficients and the nominal display agree pointwise as
    /// functions on F_9.
    pub exponent_consistent: bool,
}

impl FamilyVerification {
    pub fn passed(&self) -> bool {
        self.squarefree
            && self.points_f3 == 1
            && self.points_f9 == 7
            && self.f9_structure
            && self.exponent_consistent
    }
}

pub fn verify_family_member(member: &FamilyMember) -> FamilyVerification {
    let f_asc = &member.f_mod3;
    let f_desc = member.f_descending();

    // Square-freeness of the stored coefficients: Swan's closed form when
    // they really are a monic trinomial with unit constant, the derivative
    // gcd otherwise (also the fallback for corrupted members).
    let nonzero: Vec<(usize, u64)> = f_asc
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(e, &c)| (e, c))
        .collect();
    let squarefree = match nonzero.as_slice() {
        [(0, b), (k, a), (n, 1)] if *k > 0 => {
            let disc =
                swan_trinomial_discriminant(*n as u64, *k as u64, &BigInt::from(*a), &BigInt::from(*b))
                    .expect("shape guarantees 0 < k < n");
            !disc.mod_floor(&BigInt::from(3)).is_zero()
        }
        _ => {
            let deriv = modp::poly_deriv(f_asc, 3);
            modp::poly_gcd(f_asc.clone(), deriv, 3) == vec![1]
        }
    };

    let ctx3 = FFContext::new(3, 1).expect("F_3 context");
    let ctx9 = FFContext::new(3, 2).expect("F_9 context");
    let points_f3 = curve_points(&f_desc, &ctx3)
        .map(|pts| pts.len() as u64)
        .unwrap_or(0);
    let (points_f9, f9_structure) = match curve_points(&f_desc, &ctx9) {
        Err(_) => (0, false),
        Ok(pts) => {
            let two = ctx9.from_prime_field(2);
            let affine_ok = pts.iter().all(|pt| match pt {
                CurvePoint::Infinity => true,
                CurvePoint::Affine(x, y) => {
                    ctx9.frobenius(x) == *x
                        && ctx9.frobenius(y) == ctx9.neg(y)
                        && !ctx9.is_zero(y)
                        && ctx9.mul(y, y) == two
                }
            });
            let mut sizes: Vec<usize> = frobenius_orbits(&pts, &ctx9)
                .iter()
                .map(|orbit| orbit.len())
                .collect();
            sizes.sort_unstable();
            (
                pts.len() as u64,
                affine_ok && sizes == vec![1, 2, 2, 2],
            )
        }
    };

    let exponent_consistent = {
        let n = (2 * member.genus + 1) as usize;
        let mut nominal = vec![0u64; n.max(15) + 1];
        nominal[n] = 1;
        nominal[0] = 2;
        for &(e, c) in member.branch.nominal_terms() {
            nominal[e as usize] = c;
        }
        let nominal_desc: Vec<u64> = nominal.iter().rev().copied().collect();
        (0..9).all(|i| {
            let x = ctx9.element(i);
            ctx9.eval_descending(&nominal_desc, &x) == ctx9.eval_descending(&f_desc, &x)
        })
    };

    FamilyVerification {
        genus: member.genus,
        branch: member.branch,
        squarefree,
        points_f3,
        points_f9,
        f9_structure,
        exponent_consistent,
    }
}
