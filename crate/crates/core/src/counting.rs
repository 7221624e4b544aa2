//! Closed-form counts of monomorphisms, automorphisms and subgroups of a
//! given isomorphism type in finite abelian groups.
//!
//! For an ℓ-group `G` of exponent `ℓ^e` the number of injective
//! homomorphisms `G → A` depends on `A` only through its ranks
//! `r_1(A), ..., r_e(A)`:
//!
//! ```text
//! |Inj(G, A)| = f_G(t(A)),   f_G(t) = ∏_k t_k^{r_{k+1}(G)} ∏_{j=r_{k+1}(G)}^{r_k(G)-1} (t_k − ℓ^j)
//! ```
//!
//! with `t_k = ℓ^{r_k(A)}`. The subgroup count follows by dividing by
//! `|Aut(G)| = f_G(t(G))`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::big_pow;
use crate::error::{invalid, Result};
use crate::groups::{FiniteAbelianGroup, PPrimaryType, RankVector};

/// Evaluates `f_G(t_1, ..., t_e)` for arbitrary integer arguments.
///
/// The result may be zero or negative when `t` is not the `t`-vector of a
/// group that `G` embeds into.
pub fn f_g(g: &PPrimaryType, t: &[BigInt]) -> Result<BigInt> {
    let e = g.exponent_index();
    if t.len() != e as usize {
        return invalid(format!(
            "f_G for {g} takes {e} arguments, got {}",
            t.len()
        ));
    }
    let l = BigInt::from(g.prime());
    let mut acc = BigInt::one();
    for (k, tk) in (1..=e).zip(t) {
        let upper = g.rank(k);
        let lower = g.rank(k + 1);
        acc *= num_traits::pow(tk.clone(), lower as usize);
        for j in lower..upper {
            acc *= tk - num_traits::pow(l.clone(), j as usize);
        }
    }
    Ok(acc)
}

fn same_prime(g: &PPrimaryType, a: &RankVector) -> Result<()> {
    if g.prime() != a.prime() {
        return invalid(format!(
            "prime mismatch: group at {} vs target ranks at {}",
            g.prime(),
            a.prime()
        ));
    }
    Ok(())
}

fn embeds(g: &PPrimaryType, a: &RankVector) -> bool {
    (1..=g.exponent_index()).all(|k| g.rank(k) <= a.rank(k))
}

/// `|Inj(G, A)|` from the product form of `f_G`.
pub fn inj_count(g: &PPrimaryType, a: &RankVector) -> Result<BigUint> {
    same_prime(g, a)?;
    if !embeds(g, a) {
        return Ok(BigUint::zero());
    }
    let t: Vec<BigInt> = (1..=g.exponent_index())
        .map(|k| BigInt::from(a.t(k)))
        .collect();
    let value = f_g(g, &t)?;
    debug_assert_eq!(
        BigRational::from_integer(value.clone()),
        inj_count_factored(g, a)?,
        "product and factored forms disagree for {g} into {a:?}"
    );
    let (sign, mag) = value.into_parts();
    assert!(sign != Sign::Minus, "negative injection count for {g}");
    Ok(mag)
}

/// `|Inj(G, A)|` from the factored form
/// `∏_k ℓ^{r_k(A) r_k(G)} ∏_{j=0}^{r̃_k(G)-1} (1 − ℓ^{r_{k+1}(G)+j} / ℓ^{r_k(A)})`,
/// evaluated in exact rationals.
pub fn inj_count_factored(g: &PPrimaryType, a: &RankVector) -> Result<BigRational> {
    same_prime(g, a)?;
    if !embeds(g, a) {
        return Ok(BigRational::zero());
    }
    let l = g.prime();
    let mut acc = BigRational::one();
    for k in 1..=g.exponent_index() {
        let ra = a.rank(k);
        let big = BigInt::from(big_pow(l, ra * g.rank(k)));
        acc *= BigRational::from_integer(big);
        let denom = BigInt::from(big_pow(l, ra));
        for j in 0..g.rank_tilde(k) {
            let num = BigInt::from(big_pow(l, g.rank(k + 1) + j));
            acc *= BigRational::one() - BigRational::new(num, denom.clone());
        }
    }
    Ok(acc)
}

pub fn aut_count(g: &PPrimaryType) -> BigUint {
    inj_count(g, &g.rank_vector()).expect("a group embeds into itself")
}

/// Number of subgroups of `A` isomorphic to `G`.
///
/// # Panics
///
/// If `|Aut(G)|` does not divide `|Inj(G, A)|`, which would mean the
/// formula implementation is broken.
pub fn subgroup_count(g: &PPrimaryType, a: &RankVector) -> Result<BigUint> {
    let inj = inj_count(g, a)?;
    let aut = aut_count(g);
    let (quot, rem) = inj.div_rem(&aut);
    assert!(
        rem.is_zero(),
        "|Aut({g})| = {aut} does not divide |Inj| = {inj}"
    );
    Ok(quot)
}

/// Subgroup count for an arbitrary finite abelian `G`, multiplied over its
/// primary parts. `targets` maps each prime to the rank vector of the
/// target's ℓ-part; a missing prime is the trivial group.
pub fn subgroup_count_general(
    g: &FiniteAbelianGroup,
    targets: &BTreeMap<u64, RankVector>,
) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for part in g.primary_parts() {
        let l = part.prime();
        let count = match targets.get(&l) {
            Some(a) => subgroup_count(&part, a)?,
            None => BigUint::zero(),
        };
        acc *= count;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}
