//! Finite abelian groups in invariant-factor form, their primary parts and
//! rank functions.
//!
//! A group is stored as its divisibility chain `d_1 | d_2 | ... | d_r`; the
//! empty chain is the trivial group. The ℓ-primary part of a group is a
//! partition `λ_1 ≥ ... ≥ λ_s` meaning `C_{ℓ^λ_1} × ... × C_{ℓ^λ_s}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{big_pow, factorize, is_prime};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::canonicalize(&[n])
    }

    /// Builds the invariant-factor chain of `C_{m_1} × ... × C_{m_r}`.
    ///
    /// Every entry must be at least 2; the trivial group is the empty list.
    pub fn canonicalize(factors: &[u64]) -> Result<Self> {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in factors {
            if m < 2 {
                return invalid(format!(
                    "cyclic factor {m} is not allowed (spell the trivial group as an empty list)"
                ));
            }
            for (l, e) in factorize(m) {
                by_prime.entry(l).or_default().push(e);
            }
        }
        let parts = by_prime
            .into_iter()
            .map(|(l, exps)| PPrimaryType::new(l, exps))
            .collect::<Result<Vec<_>>>()?;
        Self::from_primary_parts(&parts)
    }

    /// Reassembles a group from primary parts at distinct primes.
    pub fn from_primary_parts(parts: &[PPrimaryType]) -> Result<Self> {
        let len = parts.iter().map(|t| t.exponents.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        let mut seen = Vec::new();
        for t in parts {
            if seen.contains(&t.prime) {
                return invalid(format!("prime {} appears twice", t.prime));
            }
            seen.push(t.prime);
            // The largest exponents go into the last (largest) factor.
            for (slot, &e) in factors.iter_mut().rev().zip(&t.exponents) {
                let pk = t
                    .prime
                    .checked_pow(e)
                    .and_then(|pk| slot.checked_mul(pk))
                    .ok_or_else(|| {
                        Error::InvalidInput("invariant factor does not fit in 64 bits".into())
                    })?;
                *slot = pk;
            }
        }
        Ok(Self {
            invariant_factors: factors,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of invariant factors, i.e. the minimal number of generators.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> BigUint {
        self.invariant_factors
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * d)
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Primes dividing the order, increasing.
    pub fn primes(&self) -> Vec<u64> {
        factorize(self.exponent()).into_iter().map(|(l, _)| l).collect()
    }

    /// The ℓ-Sylow subgroup as a partition of exponents.
    pub fn primary_part(&self, prime: u64) -> Result<PPrimaryType> {
        if !is_prime(prime) {
            return invalid(format!("{prime} is not prime"));
        }
        let mut exps = Vec::new();
        for &d in self.invariant_factors.iter().rev() {
            let mut d = d;
            let mut e = 0;
            while d % prime == 0 {
                d /= prime;
                e += 1;
            }
            if e > 0 {
                exps.push(e);
            }
        }
        PPrimaryType::new(prime, exps)
    }

    pub fn primary_parts(&self) -> Vec<PPrimaryType> {
        self.primes()
            .into_iter()
            .map(|l| self.primary_part(l).expect("prime from factorization"))
            .collect()
    }

    /// Splits `G = G_p × G_{p'}`.
    pub fn split_at(&self, p: u64) -> Result<(PPrimaryType, FiniteAbelianGroup)> {
        let gp = self.primary_part(p)?;
        let rest: Vec<_> = self
            .primary_parts()
            .into_iter()
            .filter(|t| t.prime != p)
            .collect();
        Ok((gp, Self::from_primary_parts(&rest)?))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.primes().iter().all(|&l| l == p)
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let mut all = self.invariant_factors.clone();
        all.extend_from_slice(&other.invariant_factors);
        Self::canonicalize(&all).expect("factors of canonical groups are at least 2")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .rev()
            .map(|d| format!("C{d}"))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Parses `"C8xC4xC2"` (case-insensitive) or `"8,4,2"`. `"1"`, `"C1"` and
/// `"trivial"` denote the trivial group.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if matches!(lower.as_str(), "" | "1" | "c1" | "trivial") {
            return Ok(Self::trivial());
        }
        let pieces: Vec<&str> = if lower.contains(',') {
            lower.split(',').collect()
        } else {
            lower.split('x').collect()
        };
        let mut factors = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let piece = piece.trim();
            let digits = piece.strip_prefix('c').unwrap_or(piece).trim();
            let m: u64 = digits
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad cyclic factor {piece:?} in {s:?}")))?;
            factors.push(m);
        }
        Self::canonicalize(&factors)
    }
}

/// `C_{ℓ^λ_1} × ... × C_{ℓ^λ_s}` with `λ_1 ≥ ... ≥ λ_s ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PPrimaryType {
    prime: u64,
    exponents: Vec<u32>,
}

impl PPrimaryType {
    /// Exponents may be given in any order; they are sorted nonincreasing.
    pub fn new(prime: u64, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(prime) {
            return invalid(format!("{prime} is not prime"));
        }
        if exponents.contains(&0) {
            return invalid("primary exponents must be positive");
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { prime, exponents })
    }

    pub fn trivial(prime: u64) -> Result<Self> {
        Self::new(prime, Vec::new())
    }

    /// `(C_ℓ)^r`.
    pub fn elementary(prime: u64, r: usize) -> Result<Self> {
        Self::new(prime, vec![1; r])
    }

    /// `C_{ℓ^r}`.
    pub fn cyclic(prime: u64, r: u32) -> Result<Self> {
        if r == 0 {
            return Self::trivial(prime);
        }
        Self::new(prime, vec![r])
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Number of cyclic factors.
    pub fn generators(&self) -> usize {
        self.exponents.len()
    }

    /// `e` with `exp = ℓ^e`; zero for the trivial group.
    pub fn exponent_index(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    /// `log_ℓ |T|`.
    pub fn log_order(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn order(&self) -> BigUint {
        big_pow(self.prime, self.log_order())
    }

    /// The ℓ^k-rank `r_k = #{i : λ_i ≥ k}` for k ≥ 1.
    pub fn rank(&self, k: u32) -> u64 {
        debug_assert!(k >= 1, "ranks are indexed from 1");
        self.exponents.iter().filter(|&&e| e >= k).count() as u64
    }

    /// `r̃_k = r_k − r_{k+1}`, the number of factors isomorphic to `C_{ℓ^k}`.
    pub fn rank_tilde(&self, k: u32) -> u64 {
        self.rank(k) - self.rank(k + 1)
    }

    pub fn rank_vector(&self) -> RankVector {
        RankVector {
            prime: self.prime,
            ranks: (1..=self.exponent_index()).map(|k| self.rank(k)).collect(),
        }
    }

    pub fn direct_product(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return invalid(format!(
                "cannot multiply primary parts at {} and {}",
                self.prime, other.prime
            ));
        }
        let mut exps = self.exponents.clone();
        exps.extend_from_slice(&other.exponents);
        Self::new(self.prime, exps)
    }

    pub fn to_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_primary_parts(std::slice::from_ref(self))
            .expect("a single primary part is always valid")
    }
}

impl fmt::Display for PPrimaryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&e| format!("C{}", self.prime.pow(e)))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Ranks `(r_1, ..., r_e)` of an ℓ-group; encodes `t = (ℓ^{r_1}, ..., ℓ^{r_e})`.
/// Entries past the end are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankVector {
    prime: u64,
    ranks: Vec<u64>,
}

impl RankVector {
    pub fn new(prime: u64, ranks: Vec<u64>) -> Result<Self> {
        if !is_prime(prime) {
            return invalid(format!("{prime} is not prime"));
        }
        if ranks.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("ranks {ranks:?} are not nonincreasing"));
        }
        Ok(Self { prime, ranks })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn rank(&self, k: u32) -> u64 {
        debug_assert!(k >= 1);
        self.ranks.get(k as usize - 1).copied().unwrap_or(0)
    }

    /// `t_k = ℓ^{r_k}`.
    pub fn t(&self, k: u32) -> BigUint {
        big_pow(self.prime, self.rank(k))
    }
}
