//! Quadratic fields at desk scale (`p = 2`).
//!
//! Reduced binary quadratic forms give class groups of imaginary quadratic
//! fields; genus theory gives their 2-ranks; and a direct ramification check
//! enumerates the quadratic fields unramified outside a finite set `S` of
//! odd primes, which is compared with the dimension formula
//! `h1 = dim V_S + |S| - 1` over `Q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pow_mod, FpVec, RowSpace};

/// Largest `|D|` accepted by [`reduced_forms`].
pub const MAX_ABS_DISCRIMINANT: i64 = 10_000_000;

fn factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_squarefree(n: u64) -> bool {
    let mut d = 2;
    let mut n = n;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        if n.is_multiple_of(d) {
            n /= d;
        }
        d += 1;
    }
    true
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A fundamental discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discriminant {
    pub value: i64,
    /// Distinct prime divisors, increasing.
    pub primes: Vec<u64>,
}

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        let err = |msg: &str| Error::Discriminant { d, msg: msg.into() };
        if d == 0 || d == 1 {
            return Err(err("not the discriminant of a quadratic field"));
        }
        let r = d.rem_euclid(4);
        let fundamental = match r {
            1 => is_squarefree(d.unsigned_abs()),
            0 => {
                let m = d / 4;
                matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
            }
            _ => return Err(err("must be 0 or 1 mod 4")),
        };
        if !fundamental {
            return Err(err("not fundamental"));
        }
        Ok(Discriminant {
            value: d,
            primes: factor(d.unsigned_abs()),
        })
    }

    /// Number of distinct prime divisors.
    pub fn t(&self) -> usize {
        self.primes.len()
    }

    /// The field discriminant of `Q(√m)` for squarefree `m != 1`.
    pub fn of_field(m: i64) -> Result<Self> {
        if m.rem_euclid(4) == 1 {
            Discriminant::new(m)
        } else {
            Discriminant::new(4 * m)
        }
    }
}

/// Genus theory: the 2-rank of the narrow class group is `t - 1`.
pub fn genus_two_rank(d: &Discriminant) -> usize {
    d.t() - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormClassData {
    #[serde(rename = "D")]
    pub discriminant: i64,
    /// Reduced forms `(a, b, c)`.
    #[serde(skip)]
    pub forms: Vec<(i64, i64, i64)>,
    pub h: usize,
    pub two_rank: usize,
    #[serde(rename = "genus_rank")]
    pub genus_rank: usize,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All reduced primitive forms of a negative fundamental discriminant:
/// `|b| <= a <= c`, with `b >= 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(d: &Discriminant) -> Result<FormClassData> {
    let dv = d.value;
    if dv >= 0 {
        return Err(Error::Discriminant {
            d: dv,
            msg: "form enumeration needs D < 0".into(),
        });
    }
    if -dv > MAX_ABS_DISCRIMINANT {
        return Err(Error::Discriminant {
            d: dv,
            msg: format!("|D| above {MAX_ABS_DISCRIMINANT}"),
        });
    }
    let mut forms = Vec::new();
    let mut a = 1i64;
    // a <= sqrt(|D| / 3)
    while 3 * a * a <= -dv {
        for b in (-a + 1)..=a {
            if (b - dv).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - dv;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if gcd(gcd(a, b), c) != 1 {
                continue;
            }
            forms.push((a, b, c));
        }
        a += 1;
    }
    let ambiguous = forms
        .iter()
        .filter(|&&(a, b, c)| b == 0 || a == b || a == c)
        .count();
    debug_assert!(ambiguous.is_power_of_two());
    Ok(FormClassData {
        discriminant: dv,
        h: forms.len(),
        two_rank: ambiguous.trailing_zeros() as usize,
        genus_rank: genus_two_rank(d),
        forms,
    })
}

/// Every negative fundamental discriminant in `(lower, 0)`.
pub fn negative_fundamental_discriminants(lower: i64) -> Vec<Discriminant> {
    ((lower + 1)..0).rev().filter_map(|d| Discriminant::new(d).ok()).collect()
}

/// A finite set of odd primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameSetQ {
    primes: Vec<u64>,
}

impl TameSetQ {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        primes.sort_unstable();
        primes.dedup();
        if let Some(&q) = primes.iter().find(|&&q| q == 2 || !is_prime(q)) {
            return Err(Error::Precondition(format!("{q} is not an odd prime")));
        }
        Ok(TameSetQ { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Whether `-1` is a square mod `q`, by Euler's criterion.
    pub fn minus_one_is_local_square(q: u64) -> bool {
        pow_mod(q - 1, (q - 1) / 2, q) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerResult {
    pub dim: usize,
    /// Squarefree `d` with `Q(√d)` unramified outside `S`, increasing.
    pub fields: Vec<i64>,
}

/// Quadratic fields `Q(√d)` ramified only at primes of `S`; with
/// `narrow = false` the real place must stay real (`d > 0`).
pub fn kummer_count(s: &TameSetQ, narrow: bool) -> KummerResult {
    let k = s.primes.len();
    let mut fields = Vec::new();
    for mask in 0u64..(1 << k) {
        let odd: i64 = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| s.primes[i] as i64)
            .product();
        for two in [1i64, 2] {
            for sign in [1i64, -1] {
                let d = sign * two * odd;
                if d == 1 || (d < 0 && !narrow) {
                    continue;
                }
                let disc = Discriminant::of_field(d).expect("squarefree d gives a field discriminant");
                if disc.primes.iter().all(|q| s.primes.contains(q)) {
                    fields.push(d);
                }
            }
        }
    }
    fields.sort_unstable();
    // Exponent vectors over (sign, 2, primes of S) mod 2.
    let mut span = RowSpace::new(2, k + 2);
    for &d in &fields {
        let mut v = vec![(d < 0) as u32, (d % 2 == 0) as u32];
        v.extend(s.primes.iter().map(|&q| (d.unsigned_abs() % q == 0) as u32));
        span.insert(FpVec::from_slice(2, &v));
    }
    KummerResult {
        dim: span.dim(),
        fields,
    }
}

/// `dim V_S + |S| - 1`, with `dim V_S = 1` iff `-1` is a square at every
/// `q ∈ S`.
pub fn h1_formula_q(s: &TameSetQ) -> usize {
    let dim_v = usize::from(s.primes.iter().all(|&q| TameSetQ::minus_one_is_local_square(q)));
    // dim_v = 1 when S is empty, so this never underflows
    dim_v + s.primes.len() - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Report {
    #[serde(rename = "S")]
    pub s: Vec<u64>,
    pub h1_formula: usize,
    pub kummer_dim: usize,
    pub fields: Vec<i64>,
}

impl H1Report {
    pub fn ok(&self) -> bool {
        self.h1_formula == self.kummer_dim && self.fields.len() + 1 == 1 << self.kummer_dim
    }
}

pub fn h1_check(s: &TameSetQ) -> H1Report {
    let k = kummer_count(s, false);
    H1Report {
        s: s.primes.clone(),
        h1_formula: h1_formula_q(s),
        kummer_dim: k.dim,
        fields: k.fields,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact24Report {
    pub q: u64,
    /// The unique quadratic field unramified outside `{q}`, if any.
    pub field: Option<i64>,
    pub two_rank: Option<usize>,
    pub ok: bool,
}

/// For `q ≡ 1 mod 4`, `Q(√q)` is the only quadratic field unramified
/// outside `{q}` and its class number is odd; for `q ≡ 3 mod 4` there is
/// none.
pub fn fact24_instance(q: u64) -> Result<Fact24Report> {
    let s = TameSetQ::new([q])?;
    let k = kummer_count(&s, false);
    if q % 4 == 1 {
        let two_rank = genus_two_rank(&Discriminant::new(q as i64)?);
        Ok(Fact24Report {
            q,
            field: k.fields.first().copied(),
            two_rank: Some(two_rank),
            ok: k.fields == [q as i64] && two_rank == 0,
        })
    } else {
        Ok(Fact24Report {
            q,
            field: None,
            two_rank: None,
            ok: k.fields.is_empty() && h1_formula_q(&s) == 0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(d: i64) -> FormClassData {
        reduced_forms(&Discriminant::new(d).unwrap()).unwrap()
    }

    #[test]
    fn class_numbers() {
        assert_eq!(forms(-23).h, 3);
        assert_eq!(forms(-23).two_rank, 0);
        assert_eq!(forms(-4).h, 1);
        assert_eq!(forms(-3).h, 1);
        assert_eq!(forms(-20).h, 2);
        assert_eq!(forms(-163).h, 1);
        let f = forms(-420);
        assert_eq!(f.two_rank, 3);
        assert_eq!(f.genus_rank, 3);
        assert_eq!(f.h, 8);
    }

    #[test]
    fn discriminant_validation() {
        assert!(Discriminant::new(-8).is_ok());
        assert!(Discriminant::new(5).is_ok());
        assert!(Discriminant::new(-16).is_err());
        assert!(Discriminant::new(-12).is_err());
        assert!(Discriminant::new(-6).is_err());
        assert!(Discriminant::new(-75).is_err());
        assert!(reduced_forms(&Discriminant::new(5).unwrap()).is_err());
    }

    #[test]
    fn genus_rank_examples() {
        assert_eq!(genus_two_rank(&Discriminant::new(-23).unwrap()), 0);
        assert_eq!(genus_two_rank(&Discriminant::new(-420).unwrap()), 3);
        assert_eq!(genus_two_rank(&Discriminant::new(5).unwrap()), 0);
    }

    #[test]
    fn kummer_examples() {
        let k = kummer_count(&TameSetQ::new([5]).unwrap(), false);
        assert_eq!((k.dim, k.fields.clone()), (1, vec![5]));
        assert_eq!(kummer_count(&TameSetQ::new([3]).unwrap(), false).dim, 0);
        let k = kummer_count(&TameSetQ::new([5, 13]).unwrap(), false);
        assert_eq!((k.dim, k.fields), (2, vec![5, 13, 65]));
        // narrow: Q(√-3) is allowed
        assert_eq!(kummer_count(&TameSetQ::new([3]).unwrap(), true).fields, vec![-3]);
    }

    #[test]
    fn formula_examples() {
        for (s, h) in [(vec![5], 1), (vec![3], 0), (vec![5, 13], 2), (vec![], 0), (vec![3, 7], 1)] {
            let s = TameSetQ::new(s).unwrap();
            let rep = h1_check(&s);
            assert_eq!(rep.h1_formula, h);
            assert!(rep.ok(), "{rep:?}");
        }
        assert!(TameSetQ::new([2]).is_err());
        assert!(TameSetQ::new([9]).is_err());
    }

    #[test]
    fn fact24() {
        let r = fact24_instance(5).unwrap();
        assert_eq!((r.field, r.two_rank, r.ok), (Some(5), Some(0), true));
        assert!(fact24_instance(3).unwrap().ok);
        assert_eq!(fact24_instance(13).unwrap().field, Some(13));
    }
}
