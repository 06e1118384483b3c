//! Sparse multivariate polynomial arithmetic over F2, the top Dickson
//! polynomial, and the index certificate it yields for upper bounds on
//! Delta(j,k), plus Lucas/Kummer binomial arithmetic.
//!
//! A polynomial is a set of exponent vectors (every present monomial has
//! coefficient 1). Addition is symmetric difference; squaring doubles each
//! exponent vector since cross terms cancel in characteristic 2.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Exponent vector of a single monomial in `u_1, ..., u_k`.
pub type MonomialF2 = Vec<u64>;

/// Reduction modulo the monomial ideal `<u_1^{d+1}, ..., u_k^{d+1}>`:
/// any monomial with an exponent exceeding `d` is dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerIdealCap {
    pub d: u64,
}

/// Sparse polynomial over F2 in `k` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyF2 {
    k: usize,
    monomials: BTreeSet<MonomialF2>,
}

impl PolyF2 {
    pub fn zero(k: usize) -> Self {
        PolyF2 {
            k,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        let mut p = PolyF2::zero(k);
        p.toggle(vec![0; k]);
        p
    }

    /// The variable `u_{i+1}` (zero-based index).
    pub fn variable(k: usize, i: usize) -> Self {
        assert!(i < k, "variable index out of range");
        let mut exps = vec![0; k];
        exps[i] = 1;
        let mut p = PolyF2::zero(k);
        p.toggle(exps);
        p
    }

    pub fn from_monomials<I: IntoIterator<Item = MonomialF2>>(k: usize, iter: I) -> Result<Self> {
        let mut p = PolyF2::zero(k);
        for m in iter {
            if m.len() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    got: m.len(),
                });
            }
            p.toggle(m);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Monomials in ascending lexicographic order of exponent vectors.
    pub fn monomials(&self) -> impl Iterator<Item = &MonomialF2> {
        self.monomials.iter()
    }

    pub fn contains(&self, m: &[u64]) -> bool {
        self.monomials.contains(m)
    }

    fn toggle(&mut self, m: MonomialF2) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    /// Symmetric-difference sum.
    pub fn add(&self, other: &PolyF2) -> Result<PolyF2> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for m in &other.monomials {
            out.toggle(m.clone());
        }
        Ok(out)
    }

    /// Product, optionally reduced modulo a power ideal after accumulation.
    pub fn mul(&self, other: &PolyF2, cap: Option<PowerIdealCap>) -> Result<PolyF2> {
        self.check_arity(other)?;
        let mut out = PolyF2::zero(self.k);
        for a in &self.monomials {
            for b in &other.monomials {
                let mut m = Vec::with_capacity(self.k);
                for (x, y) in a.iter().zip(b.iter()) {
                    m.push(x.checked_add(*y).ok_or(Error::ExponentOverflow)?);
                }
                if let Some(c) = cap {
                    if m.iter().any(|&e| e > c.d) {
                        continue;
                    }
                }
                out.toggle(m);
            }
        }
        Ok(out)
    }

    /// Frobenius square: each exponent vector doubles, no cross terms.
    pub fn square(&self, cap: Option<PowerIdealCap>) -> Result<PolyF2> {
        let mut out = PolyF2::zero(self.k);
        for m in &self.monomials {
            let mut doubled = Vec::with_capacity(self.k);
            for &e in m {
                doubled.push(e.checked_mul(2).ok_or(Error::ExponentOverflow)?);
            }
            if let Some(c) = cap {
                if doubled.iter().any(|&e| e > c.d) {
                    continue;
                }
            }
            out.toggle(doubled);
        }
        Ok(out)
    }

    /// `self^j` by square-and-multiply, applying the cap after every step.
    pub fn pow(&self, j: u64, cap: Option<PowerIdealCap>) -> Result<PolyF2> {
        if j == 0 {
            return Err(Error::InvalidInput("exponent must be >= 1".into()));
        }
        let mut acc = self.clone();
        if let Some(c) = cap {
            acc = acc.filtered(c);
        }
        let bits = 63 - j.leading_zeros();
        for shift in (0..bits).rev() {
            acc = acc.square(cap)?;
            if (j >> shift) & 1 == 1 {
                acc = acc.mul(self, cap)?;
            }
        }
        Ok(acc)
    }

    /// Drop every monomial with an exponent exceeding the cap.
    pub fn filtered(&self, cap: PowerIdealCap) -> PolyF2 {
        PolyF2 {
            k: self.k,
            monomials: self
                .monomials
                .iter()
                .filter(|m| m.iter().all(|&e| e <= cap.d))
                .cloned()
                .collect(),
        }
    }

    fn check_arity(&self, other: &PolyF2) -> Result<()> {
        if self.k != other.k {
            return Err(Error::ArityMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        Ok(())
    }
}

/// The product of all `2^k - 1` nonzero linear forms in `u_1, ..., u_k`,
/// computed by direct expansion.
pub fn dickson_top(k: usize) -> Result<PolyF2> {
    if k < 1 || k > 6 {
        return Err(Error::GuardViolated(format!(
            "dickson_top requires 1 <= k <= 6, got {k}"
        )));
    }
    let mut p = PolyF2::one(k);
    for mask in 1u64..(1 << k) {
        let mut form = PolyF2::zero(k);
        for i in 0..k {
            if (mask >> i) & 1 == 1 {
                let mut m = vec![0; k];
                m[i] = 1;
                form.toggle(m);
            }
        }
        p = p.mul(&form, None)?;
    }
    Ok(p)
}

/// The same polynomial from its closed form: the sum over all permutations
/// `pi` of `u_{pi(1)}^{2^{k-1}} u_{pi(2)}^{2^{k-2}} ... u_{pi(k)}^{2^0}`.
/// Kept as an independent construction so the two routes can cross-check.
pub fn dickson_top_permutation_sum(k: usize) -> Result<PolyF2> {
    if k < 1 || k > 6 {
        return Err(Error::GuardViolated(format!(
            "dickson_top_permutation_sum requires 1 <= k <= 6, got {k}"
        )));
    }
    let mut p = PolyF2::zero(k);
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut m = vec![0u64; k];
        for (pos, &var) in perm.iter().enumerate() {
            m[var] = 1u64 << (k - 1 - pos);
        }
        p.toggle(m);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(p)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Result of the index certificate computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyResult {
    pub j: u64,
    pub k: usize,
    /// Smallest `d` such that `p^j` has a monomial with all exponents `<= d`,
    /// i.e. `p^j` lies outside `<u_1^{d+1}, ..., u_k^{d+1}>`. This certifies
    /// `Delta(j,k) <= d` for every `d >= d_star`.
    pub d_star: u64,
    /// A monomial attaining `d_star`; ties broken by the lexicographically
    /// smallest exponent vector.
    pub witness: MonomialF2,
}

/// Upper-bound certificate for `Delta(j,k)` from the power of the top
/// Dickson polynomial staying outside the power ideal.
pub fn certify_upper_bound(j: u64, k: usize) -> Result<CertifyResult> {
    if k < 1 || k > 4 {
        return Err(Error::GuardViolated(format!(
            "certify_upper_bound requires 1 <= k <= 4, got {k}"
        )));
    }
    if j < 1 {
        return Err(Error::InvalidInput("j must be >= 1".into()));
    }
    let factors = (1u64 << k) - 1;
    if j.checked_mul(factors).map_or(true, |n| n > 10_000) {
        return Err(Error::GuardViolated(format!(
            "certify_upper_bound requires j*(2^k - 1) <= 10^4, got {j}*{factors}"
        )));
    }
    let p = dickson_top(k)?;
    let q = p.pow(j, None)?;
    let mut best: Option<(u64, MonomialF2)> = None;
    for m in q.monomials() {
        let height = *m.iter().max().expect("k >= 1");
        match &best {
            Some((b, _)) if *b < height => {}
            Some((b, w)) if *b == height && w <= m => {}
            _ => best = Some((height, m.clone())),
        }
    }
    let (d_star, witness) = best.expect("p^j is never the zero polynomial");
    Ok(CertifyResult {
        j,
        k,
        d_star,
        witness,
    })
}

/// Binomial coefficient modulo 2 by Lucas: `C(n,m)` is odd iff every base-2
/// digit of `m` is at most the corresponding digit of `n`.
pub fn binom_mod2(n: u64, m: u64) -> Result<u8> {
    if m > n {
        return Err(Error::InvalidInput(format!("binom_mod2: m={m} > n={n}")));
    }
    Ok(if n & m == m { 1 } else { 0 })
}

/// Number of carries when `m` and `n - m` are added in base `p`; equals the
/// p-adic valuation of `C(n,m)` (Kummer).
pub fn kummer_carries(n: u64, m: u64, p: u64) -> Result<u32> {
    if m > n {
        return Err(Error::InvalidInput(format!(
            "kummer_carries: m={m} > n={n}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "kummer_carries: {p} is not prime"
        )));
    }
    let mut x = m;
    let mut y = n - m;
    let mut carry = 0u64;
    let mut count = 0u32;
    while x > 0 || y > 0 || carry > 0 {
        let s = x % p + y % p + carry;
        carry = if s >= p { 1 } else { 0 };
        count += carry as u32;
        x /= p;
        y /= p;
    }
    Ok(count)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut f = 3;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(k: usize, monomials: &[&[u64]]) -> PolyF2 {
        PolyF2::from_monomials(k, monomials.iter().map(|m| m.to_vec())).unwrap()
    }

    #[test]
    fn dickson_small_cases() {
        assert_eq!(dickson_top(1).unwrap(), poly(1, &[&[1]]));
        assert_eq!(dickson_top(2).unwrap(), poly(2, &[&[2, 1], &[1, 2]]));
        // k=3: all six permutations of exponents (4,2,1).
        let d3 = dickson_top(3).unwrap();
        assert_eq!(d3.len(), 6);
        assert_eq!(d3, dickson_top_permutation_sum(3).unwrap());
    }

    #[test]
    fn dickson_product_equals_permutation_sum() {
        for k in 1..=4 {
            assert_eq!(
                dickson_top(k).unwrap(),
                dickson_top_permutation_sum(k).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn dickson_rejects_out_of_range() {
        assert!(dickson_top(0).is_err());
        assert!(dickson_top(7).is_err());
    }

    #[test]
    fn mul_basics() {
        let u1 = PolyF2::variable(2, 0);
        assert_eq!(u1.mul(&u1, None).unwrap(), poly(2, &[&[2, 0]]));
        // Squaring the k=2 Dickson polynomial: cross terms cancel.
        let d = dickson_top(2).unwrap();
        assert_eq!(d.mul(&d, None).unwrap(), poly(2, &[&[4, 2], &[2, 4]]));
        // With cap d=3 both squared monomials carry an exponent 4 > 3.
        let capped = d.mul(&d, Some(PowerIdealCap { d: 3 })).unwrap();
        assert!(capped.is_zero());
    }

    #[test]
    fn mul_rejects_arity_mismatch() {
        let a = PolyF2::variable(2, 0);
        let b = PolyF2::variable(3, 0);
        assert!(a.mul(&b, None).is_err());
    }

    #[test]
    fn pow_examples() {
        let d = dickson_top(2).unwrap();
        assert_eq!(d.pow(1, None).unwrap(), d);
        assert_eq!(d.pow(2, None).unwrap(), poly(2, &[&[4, 2], &[2, 4]]));
        // Cube: C(3,i) is odd for all i, four monomials survive.
        assert_eq!(
            d.pow(3, None).unwrap(),
            poly(2, &[&[3, 6], &[4, 5], &[5, 4], &[6, 3]])
        );
        assert!(d.pow(0, None).is_err());
    }

    #[test]
    fn certify_single_variable_is_ham_sandwich() {
        for j in [1u64, 2, 5, 33] {
            let c = certify_upper_bound(j, 1).unwrap();
            assert_eq!(c.d_star, j);
            assert_eq!(c.witness, vec![j]);
        }
    }

    #[test]
    fn certify_examples() {
        let c = certify_upper_bound(3, 2).unwrap();
        assert_eq!(c.d_star, 5);
        assert_eq!(c.witness, vec![4, 5]);
        let c = certify_upper_bound(5, 2).unwrap();
        assert_eq!(c.d_star, 9);
    }

    #[test]
    fn certify_guards() {
        assert!(certify_upper_bound(3, 5).is_err());
        assert!(certify_upper_bound(0, 2).is_err());
        assert!(certify_upper_bound(4000, 2).is_err());
    }

    #[test]
    fn binom_mod2_cases() {
        assert_eq!(binom_mod2(3, 1).unwrap(), 1);
        assert_eq!(binom_mod2(7, 3).unwrap(), 1);
        assert_eq!(binom_mod2(4, 2).unwrap(), 0);
        for n in 0..20 {
            assert_eq!(binom_mod2(n, 0).unwrap(), 1);
        }
        assert!(binom_mod2(2, 3).is_err());
    }

    #[test]
    fn kummer_cases() {
        // 2 + 3 in binary is 10 + 11 = 101 with one carry; C(5,2) = 10 = 2*5.
        assert_eq!(kummer_carries(5, 2, 2).unwrap(), 1);
        for (n, p) in [(17u64, 2u64), (100, 3), (250, 5)] {
            assert_eq!(kummer_carries(n, 0, p).unwrap(), 0);
        }
        for t in [2u32, 3, 4] {
            let j = (1u64 << t) + 1;
            assert_eq!(kummer_carries(j, 1 << (t - 1), 2).unwrap(), 1, "t = {t}");
        }
        assert!(kummer_carries(5, 2, 4).is_err());
        assert!(kummer_carries(2, 5, 2).is_err());
    }

    #[test]
    fn pow_capped_agrees_with_filtered_uncapped() {
        let d = dickson_top(3).unwrap();
        for j in 1..=4u64 {
            for cap in [2u64, 5, 9, 40] {
                let cap = PowerIdealCap { d: cap };
                let capped = d.pow(j, Some(cap)).unwrap();
                let filtered = d.pow(j, None).unwrap().filtered(cap);
                assert_eq!(capped, filtered, "j={j} cap={}", cap.d);
            }
        }
    }

    #[test]
    fn serialization_is_sorted_exponent_vectors() {
        let d = dickson_top(2).unwrap();
        assert_eq!(serde_json::to_string(&d.pow(2, None).unwrap()).unwrap(),
            r#"{"k":2,"monomials":[[2,4],[4,2]]}"#);
    }

    fn arb_sparse_poly(k: usize) -> impl Strategy<Value = PolyF2> {
        proptest::collection::vec(proptest::collection::vec(0u64..5, k), 1..6)
            .prop_map(move |ms| PolyF2::from_monomials(k, ms).unwrap())
    }

    proptest! {
        #[test]
        fn pow_matches_repeated_mul(p in arb_sparse_poly(3), j in 1u64..=8) {
            let fast = p.pow(j, None).unwrap();
            let mut slow = p.clone();
            for _ in 1..j {
                slow = slow.mul(&p, None).unwrap();
            }
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn k2_power_matches_lucas_closed_form(j in 1u64..=64) {
            let q = dickson_top(2).unwrap().pow(j, None).unwrap();
            let expected: BTreeSet<Vec<u64>> = (0..=j)
                .filter(|&i| binom_mod2(j, i).unwrap() == 1)
                .map(|i| vec![j + i, 2 * j - i])
                .collect();
            let got: BTreeSet<Vec<u64>> = q.monomials().cloned().collect();
            prop_assert_eq!(got, expected);
        }
    }
}
