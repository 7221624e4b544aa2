//! Element-level enumeration of homomorphisms between explicit groups.
//!
//! Subgroups isomorphic to `T` are images of injections `T → A`; subgroups
//! with quotient `T` are kernels of surjections `A → T`. Both searches
//! extend one generator image at a time and merge partial maps by the
//! subgroup they generate so far, so the work is proportional to the number
//! of distinct intermediate subgroups rather than the number of maps.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::groups::FiniteAbelianGroup;

use super::explicit::{ElementSet, ExplicitGroup, SubgroupHandle};

/// Default element cap for explicit models.
pub const DEFAULT_CAP: u64 = 1 << 14;

pub(crate) fn check_cap(a: &ExplicitGroup, cap: u64) -> Result<()> {
    if a.len() as u64 > cap {
        return Err(Error::ResourceLimit {
            order: a.len().to_string(),
            cap,
        });
    }
    Ok(())
}

/// Generator orders of `T`, largest first, with the candidate images of
/// each generator and their minimal multiples.
fn injection_candidates(a: &ExplicitGroup, t: &FiniteAbelianGroup) -> Vec<Vec<(usize, Vec<usize>)>> {
    t.invariant_factors()
        .iter()
        .rev()
        .map(|&m| {
            (0..a.len())
                .filter(|&x| a.order_of(x) == m)
                .map(|x| (x, a.minimal_multiples(x)))
                .collect()
        })
        .collect()
}

/// `<x> ∩ H = 0`, which keeps a partial map injective.
fn meets_trivially(h: &ElementSet, minimal: &[usize]) -> bool {
    !minimal.iter().any(|&y| h.contains(y))
}

/// Images of partial injections on all but the last generator, with the
/// number of maps reaching each.
fn prefix_states(a: &ExplicitGroup, cands: &[Vec<(usize, Vec<usize>)>]) -> HashMap<ElementSet, u128> {
    let mut states: HashMap<ElementSet, u128> = HashMap::new();
    states.insert(a.trivial(), 1);
    for level in cands {
        let mut next: HashMap<ElementSet, u128> = HashMap::new();
        for (h, &mult) in &states {
            for (x, minimal) in level {
                if meets_trivially(h, minimal) {
                    *next.entry(a.extend(h, *x)).or_default() += mult;
                }
            }
        }
        states = next;
    }
    states
}

fn injection_search(a: &ExplicitGroup, t: &FiniteAbelianGroup) -> u128 {
    let cands = injection_candidates(a, t);
    let Some((last, init)) = cands.split_last() else {
        return 1;
    };
    prefix_states(a, init)
        .iter()
        .map(|(h, &mult)| {
            let free = last.iter().filter(|(_, m)| meets_trivially(h, m)).count();
            mult * free as u128
        })
        .sum()
}

/// The prefix image a smallest-first search inside `members` settles on:
/// a subgroup of the prefix type admitting a last generator in `members`.
fn canonical_prefix(
    a: &ExplicitGroup,
    members: &[u32],
    orders: &[u64],
    last_order: u64,
    minimal: &[Vec<usize>],
    h: ElementSet,
) -> Option<ElementSet> {
    let Some((&m, rest)) = orders.split_first() else {
        let completes = members
            .iter()
            .any(|&x| a.order_of(x as usize) == last_order && meets_trivially(&h, &minimal[x as usize]));
        return completes.then_some(h);
    };
    for &x in members {
        let x = x as usize;
        if a.order_of(x) == m && meets_trivially(&h, &minimal[x]) {
            if let Some(found) = canonical_prefix(a, members, rest, last_order, minimal, a.extend(&h, x)) {
                return Some(found);
            }
        }
    }
    None
}

/// Calls `visit` once per subgroup of `A` isomorphic to `T`, with its
/// members in increasing order.
///
/// An image is reported only from the prefix image chosen by
/// [`canonical_prefix`]; from any one prefix image, candidates inside an
/// image already built generate that same image and are skipped.
fn for_each_image(a: &ExplicitGroup, t: &FiniteAbelianGroup, mut visit: impl FnMut(&[u32])) {
    let cands = injection_candidates(a, t);
    let Some((last, init)) = cands.split_last() else {
        visit(&[0]);
        return;
    };
    let orders: Vec<u64> = t.invariant_factors().iter().rev().copied().collect();
    let (last_order, init_orders) = orders.split_last().expect("nontrivial");
    let minimal: Vec<Vec<usize>> = (0..a.len()).map(|x| a.minimal_multiples(x)).collect();
    let mut buf: Vec<u32> = Vec::new();
    for h in prefix_states(a, init).into_keys() {
        let base: Vec<usize> = h.iter().collect();
        let mut covered = h.clone();
        for (x, minimal_x) in last {
            if covered.contains(*x) || !meets_trivially(&h, minimal_x) {
                continue;
            }
            buf.clear();
            let mut shift = 0;
            loop {
                for &b in &base {
                    let y = a.add(b, shift);
                    covered.insert(y);
                    buf.push(y as u32);
                }
                shift = a.add(shift, *x);
                if h.contains(shift) {
                    break;
                }
            }
            buf.sort_unstable();
            // An element of maximal order spans a direct summand, so the
            // search never backtracks past its first choice.
            if let Some(&m1) = init_orders.first() {
                let first = buf.iter().find(|&&y| a.order_of(y as usize) == m1);
                if !first.is_some_and(|&y| h.contains(y as usize)) {
                    continue;
                }
            }
            let canon = canonical_prefix(a, &buf, init_orders, *last_order, &minimal, a.trivial());
            if canon.as_ref() == Some(&h) {
                visit(&buf);
            }
        }
    }
}

/// `|Inj(T, A)|` by enumeration.
pub fn count_injections(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<u128> {
    check_cap(a, cap)?;
    Ok(injection_search(a, t))
}

/// `|Aut(T)|` as the number of injective endomorphisms.
pub fn count_automorphisms(t: &FiniteAbelianGroup) -> Result<u128> {
    let tg = ExplicitGroup::from_group(t)?;
    Ok(injection_search(&tg, t))
}

#[derive(Debug, Clone)]
pub struct SubgroupEnumeration {
    /// Distinct subgroups isomorphic to `T`, in canonical order.
    pub subgroups: Vec<SubgroupHandle>,
    pub injections: u128,
}

/// Every subgroup `U ≤ A` with `U ≅ T`.
pub fn enumerate_subgroups(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<SubgroupEnumeration> {
    check_cap(a, cap)?;
    let injections = injection_search(a, t);
    let mut images = Vec::new();
    for_each_image(a, t, |members| {
        let mut set = ElementSet::empty(a.len());
        for &x in members {
            set.insert(x as usize);
        }
        images.push(set);
    });
    images.sort();
    let subgroups = images
        .into_iter()
        .map(|h| SubgroupHandle::new(a, h))
        .collect();
    Ok(SubgroupEnumeration {
        subgroups,
        injections,
    })
}

/// Number of distinct subgroups isomorphic to `T`, found by the same search
/// as [`enumerate_subgroups`] without building handles.
pub fn count_distinct_subgroups(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<u128> {
    check_cap(a, cap)?;
    let mut count = 0u128;
    for_each_image(a, t, |_| count += 1);
    Ok(count)
}

/// Number of subgroups isomorphic to `T`, as `|Inj(T, A)| / |Aut(T)|`
/// with both sides enumerated.
pub fn count_subgroups(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<u128> {
    let inj = count_injections(a, t, cap)?;
    let aut = count_automorphisms(t)?;
    assert_eq!(inj % aut, 0, "Aut({t}) does not act freely on injections");
    Ok(inj / aut)
}

/// Candidate images for each generator of `A`: elements of `T` whose order
/// divides the generator's order.
fn surjection_candidates(a: &ExplicitGroup, tg: &ExplicitGroup) -> Vec<Vec<usize>> {
    a.generator_orders()
        .iter()
        .map(|&m| {
            (0..tg.len())
                .filter(|&y| (m as u64).is_multiple_of(tg.order_of(y)))
                .collect()
        })
        .collect()
}

/// `#{surjections A → T}` by enumeration.
pub fn count_surjections(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<u128> {
    check_cap(a, cap)?;
    let tg = ExplicitGroup::from_group(t)?;
    let candidates = surjection_candidates(a, &tg);
    let orders = a.generator_orders();
    let mut states: HashMap<ElementSet, u128> = HashMap::new();
    states.insert(tg.trivial(), 1);
    for (j, cands) in candidates.iter().enumerate() {
        // the span can grow by at most the order of each remaining generator
        let reach: u128 = orders[j..].iter().map(|&m| m as u128).product();
        let mut next: HashMap<ElementSet, u128> = HashMap::new();
        for (s, &mult) in &states {
            if (s.count() as u128).saturating_mul(reach) < tg.len() as u128 {
                continue;
            }
            let mut inside = 0u128;
            let mut grown: HashMap<ElementSet, u128> = HashMap::new();
            for &y in cands {
                if s.contains(y) {
                    inside += 1;
                } else {
                    *grown.entry(tg.extend(s, y)).or_default() += 1;
                }
            }
            if inside > 0 {
                *next.entry(s.clone()).or_default() += mult * inside;
            }
            for (g, c) in grown {
                *next.entry(g).or_default() += mult * c;
            }
        }
        states = next;
    }
    Ok(states.get(&tg.full()).copied().unwrap_or(0))
}

/// Number of subgroups `U ≤ A` with `A/U ≅ T`, as surjections `A → T`
/// modulo `Aut(T)`.
pub fn count_quotients(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<u128> {
    let surj = count_surjections(a, t, cap)?;
    let aut = count_automorphisms(t)?;
    assert_eq!(surj % aut, 0, "Aut({t}) does not act freely on surjections");
    Ok(surj / aut)
}

/// Every subgroup `U ≤ A` with `A/U ≅ T`, found as kernels of explicit
/// surjections, in canonical order.
pub fn enumerate_quotient_kernels(a: &ExplicitGroup, t: &FiniteAbelianGroup, cap: u64) -> Result<Vec<SubgroupHandle>> {
    check_cap(a, cap)?;
    let tg = ExplicitGroup::from_group(t)?;
    let candidates = surjection_candidates(a, &tg);
    let mut kernels: HashSet<ElementSet> = HashSet::new();
    let mut images = Vec::with_capacity(candidates.len());
    kernel_search(a, &tg, &candidates, &mut images, &tg.trivial(), &mut kernels);
    let mut kernels: Vec<ElementSet> = kernels.into_iter().collect();
    kernels.sort();
    Ok(kernels
        .into_iter()
        .map(|k| SubgroupHandle::new(a, k))
        .collect())
}

fn kernel_search(
    a: &ExplicitGroup,
    tg: &ExplicitGroup,
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    span: &ElementSet,
    out: &mut HashSet<ElementSet>,
) {
    let j = images.len();
    if j == candidates.len() {
        if span.count() == tg.len() {
            out.insert(kernel(a, tg, images));
        }
        return;
    }
    for &y in &candidates[j] {
        let next = tg.extend(span, y);
        images.push(y);
        kernel_search(a, tg, candidates, images, &next, out);
        images.pop();
    }
}

/// Kernel of the homomorphism sending generator `j` of `A` to `images[j]`.
fn kernel(a: &ExplicitGroup, tg: &ExplicitGroup, images: &[usize]) -> ElementSet {
    let orders = a.generator_orders();
    let mut phi = vec![0usize; a.len()];
    let mut ker = ElementSet::empty(a.len());
    ker.insert(0);
    for x in 1..a.len() {
        // Step down along the lowest nonzero coordinate.
        let mut rest = x;
        let mut j = 0;
        while rest % orders[j] == 0 {
            rest /= orders[j];
            j += 1;
        }
        let value = tg.add(phi[x - a.generator(j)], images[j]);
        phi[x] = value;
        if value == 0 {
            ker.insert(x);
        }
    }
    ker
}
