use std::collections::BTreeMap;

use crate::arith::{factorize, gcd, lcm};
use crate::error::{invalid, Error, Result};
use crate::groups::{FiniteAbelianGroup, PPrimaryType};

/// Largest explicit group the oracle will build, whatever the cap.
pub const HARD_LIMIT: u64 = 1 << 24;

/// `Z/m_1 × ... × Z/m_s` with elements stored as mixed-radix indices.
///
/// Element `x` has coordinates `a_i = (x / stride_i) mod m_i`; index 0 is
/// the identity.
#[derive(Debug, Clone)]
pub struct ExplicitGroup {
    orders: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
    element_orders: Vec<u32>,
    /// Coordinates of every element, row by row, when small enough to keep.
    digits: Vec<u32>,
}

/// Largest coordinate table kept, in entries.
const DIGIT_TABLE_LIMIT: usize = 1 << 24;

impl ExplicitGroup {
    pub fn new(orders: &[u64]) -> Result<Self> {
        if let Some(&m) = orders.iter().find(|&&m| m < 2) {
            return invalid(format!("generator order {m} must be at least 2"));
        }
        let mut len: u64 = 1;
        for &m in orders {
            len = len.saturating_mul(m);
        }
        if len > HARD_LIMIT {
            return Err(Error::ResourceLimit {
                order: len.to_string(),
                cap: HARD_LIMIT,
            });
        }
        let orders: Vec<usize> = orders.iter().map(|&m| m as usize).collect();
        let mut strides = Vec::with_capacity(orders.len());
        let mut s = 1usize;
        for &m in &orders {
            strides.push(s);
            s *= m;
        }
        let mut group = Self {
            orders,
            strides,
            len: len as usize,
            element_orders: Vec::new(),
            digits: Vec::new(),
        };
        let k = group.orders.len();
        if group.len * k <= DIGIT_TABLE_LIMIT {
            let mut digits = Vec::with_capacity(group.len * k);
            for x in 0..group.len {
                digits.extend(group.orders.iter().zip(&group.strides).map(|(&m, &s)| ((x / s) % m) as u32));
            }
            group.digits = digits;
        }
        group.element_orders = (0..group.len).map(|x| group.compute_order(x)).collect();
        Ok(group)
    }

    /// The group with cyclic factors given by the invariant factors of `g`.
    pub fn from_group(g: &FiniteAbelianGroup) -> Result<Self> {
        Self::new(g.invariant_factors())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: a group has its identity.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generator_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn coords(&self, x: usize) -> Vec<usize> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| (x / s) % m)
            .collect()
    }

    pub fn from_coords(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&a, &m), &s)| (a % m) * s)
            .sum()
    }

    pub fn add(&self, mut x: usize, mut y: usize) -> usize {
        if !self.digits.is_empty() {
            let k = self.orders.len();
            let dx = &self.digits[x * k..(x + 1) * k];
            let dy = &self.digits[y * k..(y + 1) * k];
            let mut out = x + y;
            for i in 0..k {
                if (dx[i] + dy[i]) as usize >= self.orders[i] {
                    out -= self.orders[i] * self.strides[i];
                }
            }
            return out;
        }
        let mut out = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let a = x % m;
            let b = y % m;
            x /= m;
            y /= m;
            let c = a + b;
            out += if c >= m { c - m } else { c } * s;
        }
        out
    }

    pub fn neg(&self, mut x: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let a = x % m;
            x /= m;
            out += ((m - a) % m) * s;
        }
        out
    }

    /// `k·x`.
    pub fn scale(&self, k: u64, mut x: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.orders.iter().zip(&self.strides) {
            let a = (x % m) as u64;
            x /= m;
            out += ((a * (k % m as u64)) % m as u64) as usize * s;
        }
        out
    }

    fn compute_order(&self, x: usize) -> u32 {
        self.coords(x)
            .iter()
            .zip(&self.orders)
            .map(|(&a, &m)| (m as u64) / gcd(a as u64, m as u64))
            .fold(1, lcm) as u32
    }

    pub fn order_of(&self, x: usize) -> u64 {
        u64::from(self.element_orders[x])
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &m| lcm(acc, m as u64))
    }

    /// The elements `(ord(x)/r)·x` for primes `r | ord(x)`; `<x>` meets a
    /// subgroup trivially iff none of them lies in it.
    pub fn minimal_multiples(&self, x: usize) -> Vec<usize> {
        let ord = self.order_of(x);
        factorize(ord)
            .into_iter()
            .map(|(r, _)| self.scale(ord / r, x))
            .collect()
    }

    pub fn full(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.len);
        for x in 0..self.len {
            s.insert(x);
        }
        s
    }

    pub fn trivial(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.len);
        s.insert(0);
        s
    }

    /// `H + <a>` for a subgroup `H`.
    pub fn extend(&self, h: &ElementSet, a: usize) -> ElementSet {
        if h.contains(a) {
            return h.clone();
        }
        let base: Vec<usize> = h.iter().collect();
        let mut out = h.clone();
        let mut shift = a;
        while !h.contains(shift) {
            for &x in &base {
                out.insert(self.add(x, shift));
            }
            shift = self.add(shift, a);
        }
        out
    }

    pub fn span(&self, gens: &[usize]) -> ElementSet {
        gens.iter()
            .fold(self.trivial(), |h, &g| self.extend(&h, g))
    }

    /// A generating set of the subgroup `h`, chosen greedily.
    pub fn generators_of(&self, h: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        // Prefer high-order elements so the set stays small.
        let mut members: Vec<usize> = h.iter().collect();
        members.sort_by_key(|&x| std::cmp::Reverse(self.order_of(x)));
        for x in members {
            if span.count() == h.count() {
                break;
            }
            if !span.contains(x) {
                span = self.extend(&span, x);
                gens.push(x);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        if !h.contains(0) {
            return false;
        }
        let members: Vec<usize> = h.iter().collect();
        members
            .iter()
            .all(|&x| h.contains(self.neg(x)) && members.iter().all(|&y| h.contains(self.add(x, y))))
    }

    /// Isomorphism type of the subgroup `h` from its element-order census.
    pub fn subgroup_type(&self, h: &ElementSet) -> FiniteAbelianGroup {
        type_from_orders(h.iter().map(|x| self.order_of(x)))
    }

    /// Isomorphism type of `A / u` from the orders of its cosets.
    pub fn quotient_type(&self, u: &ElementSet) -> FiniteAbelianGroup {
        let mut seen = ElementSet::empty(self.len);
        let mut coset_orders = Vec::new();
        let members: Vec<usize> = u.iter().collect();
        for x in 0..self.len {
            if seen.contains(x) {
                continue;
            }
            for &m in &members {
                seen.insert(self.add(x, m));
            }
            let mut k = 1u64;
            let mut y = x;
            while !u.contains(y) {
                y = self.add(y, x);
                k += 1;
            }
            coset_orders.push(k);
        }
        type_from_orders(coset_orders.into_iter())
    }
}

/// Recovers a finite abelian group from the multiset of its element orders:
/// `#{x : ord(x) | ℓ^k} = ℓ^{Σ_i min(λ_i, k)}` determines every partition.
pub fn type_from_orders(orders: impl Iterator<Item = u64>) -> FiniteAbelianGroup {
    // prime -> (ℓ-adic valuation of the order -> count)
    let mut census: BTreeMap<u64, BTreeMap<u32, u64>> = BTreeMap::new();
    let mut total = 0u64;
    for o in orders {
        total += 1;
        for (l, v) in factorize(o) {
            *census.entry(l).or_default().entry(v).or_default() += 1;
        }
    }
    let mut parts = Vec::new();
    for (&l, by_val) in &census {
        let top = *by_val.keys().max().unwrap_or(&0);
        // N_k = #{x : v_ℓ(ord x) ≤ k}
        let below = |k: u32| -> u64 {
            let higher: u64 = by_val.range(k + 1..).map(|(_, c)| c).sum();
            total - higher
        };
        let log = |mut n: u64| -> u64 {
            let mut e = 0;
            while n > 1 {
                debug_assert_eq!(n % l, 0, "census is not a group census");
                n /= l;
                e += 1;
            }
            e
        };
        // N_k = |G_ℓ[ℓ^k]| · |G_ℓ'| and N_0 = |G_ℓ'|.
        let n0 = below(0);
        let mut exps = Vec::new();
        let mut prev = 0u64;
        for k in 1..=top {
            let sum_min = log(below(k) / n0);
            let r_k = sum_min - prev;
            prev = sum_min;
            exps.push((k, r_k));
        }
        // r_k = #{i : λ_i ≥ k}; λ has r_k − r_{k+1} parts equal to k.
        let mut lambda = Vec::new();
        for (idx, &(k, r)) in exps.iter().enumerate() {
            let next = exps.get(idx + 1).map(|&(_, r)| r).unwrap_or(0);
            for _ in 0..(r - next) {
                lambda.push(k);
            }
        }
        parts.push(PPrimaryType::new(l, lambda).expect("census yields a partition"));
    }
    FiniteAbelianGroup::from_primary_parts(&parts).expect("distinct primes")
}

/// A set of group elements as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, x: usize) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// A subgroup of an explicit group, with its order and isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupHandle {
    members: ElementSet,
    order: u64,
    iso_type: FiniteAbelianGroup,
}

impl SubgroupHandle {
    pub fn new(group: &ExplicitGroup, members: ElementSet) -> Self {
        let iso_type = group.subgroup_type(&members);
        Self {
            order: members.count() as u64,
            members,
            iso_type,
        }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn iso_type(&self) -> &FiniteAbelianGroup {
        &self.iso_type
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.members.is_subset(&other.members)
    }
}
