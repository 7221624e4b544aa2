//! Counting abelian extensions of `F = F_q((t))` by conductor.
//!
//! An extension with Galois group `G` and conductor exponent at most `n`
//! corresponds to a subgroup of
//!
//! ```text
//! X_n = Z/exp(G) × F_q^× × U_n,    U_n = (1 + 𝔭) / (1 + 𝔭^n),
//! ```
//!
//! with quotient `G`, and by duality to a subgroup isomorphic to `G`. All
//! p-ranks of `U_n` are explicit, so the count reduces to the closed forms
//! in [`crate::counting`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_pow, factorize, floor_div_pow, frac, is_prime, rational_pow, to_rational, valuation};
use crate::counting::{aut_count, subgroup_count, subgroup_count_general};
use crate::error::{invalid, Error, Result};
use crate::groups::{FiniteAbelianGroup, PPrimaryType, RankVector};

/// The field `F_q((t))` with `q = p^f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalField {
    p: u64,
    f: u32,
    q: BigUint,
}

impl LocalField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("characteristic {p} is not prime"));
        }
        if f == 0 {
            return invalid("residue degree f must be at least 1");
        }
        let q = big_pow(p, u64::from(f));
        Ok(Self { p, f, q })
    }

    /// Recovers `(p, f)` from a prime power `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        match factorize(q).as_slice() {
            [(p, f)] => Self::new(*p, *f),
            _ => invalid(format!("q = {q} is not a prime power")),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `r_k(U_n) = f (⌊(n−1)/p^{k−1}⌋ − ⌊(n−1)/p^k⌋)`.
    pub fn rank_un(&self, n: u64, k: u32) -> Result<u64> {
        if n < 1 {
            return invalid("conductor bound n must be at least 1");
        }
        if k < 1 {
            return invalid("rank index k must be at least 1");
        }
        let m = n - 1;
        let layer = floor_div_pow(m, self.p, k - 1) - floor_div_pow(m, self.p, k);
        Ok(u64::from(self.f) * layer)
    }

    /// `r_k(X_n) = r_k(U_n) + 1` for `1 ≤ k ≤ e`, where `p^e` is the
    /// p-part of `exp(G)`.
    pub fn rank_xn(&self, e: u32, n: u64, k: u32) -> Result<u64> {
        if k < 1 || k > e {
            return invalid(format!("rank index {k} outside 1..={e}"));
        }
        Ok(self.rank_un(n, k)? + 1)
    }

    /// `(r_1(X_n), ..., r_e(X_n))`.
    pub fn xn_rank_vector(&self, e: u32, n: u64) -> Result<RankVector> {
        if n < 1 {
            return invalid("conductor bound n must be at least 1");
        }
        let ranks = (1..=e)
            .map(|k| self.rank_xn(e, n, k))
            .collect::<Result<Vec<_>>>()?;
        RankVector::new(self.p, ranks)
    }

    /// Rank vectors of every primary part of `X_n` at the primes dividing
    /// `|G|`, where the Z/exp(G) factor is sized for `G`.
    pub fn xn_rank_vectors(
        &self,
        g: &FiniteAbelianGroup,
        n: u64,
    ) -> Result<BTreeMap<u64, RankVector>> {
        let mut out = BTreeMap::new();
        let qm1 = &self.q - 1u32;
        for part in g.primary_parts() {
            let l = part.prime();
            let e = part.exponent_index();
            let rv = if l == self.p {
                self.xn_rank_vector(e, n)?
            } else {
                // ℓ-part of Z/exp(G) × C_{q−1}: C_{ℓ^e} × C_{ℓ^v}.
                let v = valuation(&qm1, l);
                let exps = [e, v].into_iter().filter(|&x| x > 0).collect();
                PPrimaryType::new(l, exps)?.rank_vector()
            };
            out.insert(l, rv);
        }
        Ok(out)
    }

    /// `q^x` for a rational `x` with `f·x` integral.
    pub fn q_power(&self, x: &BigRational) -> Option<BigRational> {
        let fx = x * BigRational::from_integer(BigInt::from(self.f));
        if !fx.is_integer() {
            return None;
        }
        Some(rational_pow(self.p, &fx.to_integer()))
    }
}

/// `δ(n, k) = {n/p^k} − {n/p^{k−1}}`, defined for every integer `n`.
pub fn truncation_defect(p: u64, n: &BigInt, k: u32) -> BigRational {
    let pk = BigInt::from(big_pow(p, u64::from(k)));
    let pk1 = BigInt::from(big_pow(p, u64::from(k - 1)));
    frac(n, &pk) - frac(n, &pk1)
}

/// `α_p(T) = Σ_k (p−1)/p^k · r_k(T)`.
pub fn alpha_p(t: &PPrimaryType) -> BigRational {
    let p = t.prime();
    (1..=t.exponent_index())
        .map(|k| {
            let pk = big_pow(p, u64::from(k));
            BigRational::new(BigInt::from((p - 1) * t.rank(k)), BigInt::from(pk))
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `δ_T(n) = −α_p(T) + Σ_k r̃_k(T) {(n−1)/p^k}`; periodic mod `p^e`.
pub fn delta_g(t: &PPrimaryType, n: i64) -> BigRational {
    let p = t.prime();
    let m = BigInt::from(n) - 1;
    let mut acc = -alpha_p(t);
    for k in 1..=t.exponent_index() {
        let pk = BigInt::from(big_pow(p, u64::from(k)));
        acc += frac(&m, &pk) * BigRational::from_integer(BigInt::from(t.rank_tilde(k)));
    }
    acc
}

/// `ε(T, q, n) = ∏_k ∏_{j<r̃_k} (1 − p^{r_{k+1}(T)+j} / p^{r_k(X_n)})`.
///
/// Each denominator `p^{r_k(X_n)}` equals `p · q^{(p−1)(n−1)/p^k + δ(n−1,k)}`;
/// the two are checked against each other.
pub fn epsilon(t: &PPrimaryType, field: &LocalField, n: u64) -> Result<BigRational> {
    if n < 1 {
        return invalid("conductor bound n must be at least 1");
    }
    check_prime(t, field)?;
    let p = field.p();
    let e = t.exponent_index();
    let m = BigInt::from(n - 1);
    let mut acc = BigRational::one();
    for k in 1..=e {
        let rx = field.rank_xn(e, n, k)?;
        let pk = BigInt::from(big_pow(p, u64::from(k)));
        let growth = BigRational::new(BigInt::from(p - 1) * &m, pk) + truncation_defect(p, &m, k);
        let q_part = field
            .q_power(&growth)
            .expect("f times the layer exponent is an integer");
        let denom = rational_pow(p, &BigInt::from(rx));
        assert_eq!(
            &q_part * BigRational::from_integer(BigInt::from(p)),
            denom,
            "rank of X_{n} at k={k} disagrees with its fractional-exponent form"
        );
        for j in 0..t.rank_tilde(k) {
            let num = rational_pow(p, &BigInt::from(t.rank(k + 1) + j));
            acc *= BigRational::one() - num / &denom;
        }
    }
    Ok(acc)
}

fn check_prime(t: &PPrimaryType, field: &LocalField) -> Result<()> {
    if t.prime() != field.p() {
        return invalid(format!(
            "group is {}-primary but the field has characteristic {}",
            t.prime(),
            field.p()
        ));
    }
    Ok(())
}

/// An exact count `Z(F, G; n)` with its asymptotic decomposition.
///
/// `alpha_p`, `delta`, `epsilon` and `leading_coeff` describe the p-part
/// `G_p`; `tame_factor` is the contribution of the prime-to-p part, so that
///
/// ```text
/// z = tame_factor · leading_coeff · q^{exponent_check} · epsilon.
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBreakdown {
    pub n: u64,
    pub z: BigUint,
    pub alpha_p: BigRational,
    pub delta: BigRational,
    pub epsilon: BigRational,
    /// `|G_p| / |Aut(G_p)|`.
    pub leading_coeff: BigRational,
    /// `n·α_p + δ`.
    pub exponent_check: BigRational,
    pub tame_factor: BigUint,
    pub realizable: bool,
}

impl CountBreakdown {
    /// Recomputes `Z` from the decomposition, given the field it came from.
    pub fn reconstruct(&self, field: &LocalField) -> Option<BigRational> {
        let qpow = field.q_power(&self.exponent_check)?;
        Some(to_rational(&self.tame_factor) * &self.leading_coeff * qpow * &self.epsilon)
    }
}

/// `Σ_k r_k(T) r_k(X_n)`, the exponent in `∏_k p^{r_k(T) r_k(X_n)}`.
pub fn rank_pairing(t: &PPrimaryType, field: &LocalField, n: u64) -> Result<u64> {
    let e = t.exponent_index();
    let mut s = 0;
    for k in 1..=e {
        s += t.rank(k) * field.rank_xn(e, n, k)?;
    }
    Ok(s)
}

/// `Z(F, T; n)` for a p-group `T`, as the number of subgroups of `X_n`
/// isomorphic to `T`.
pub fn count_conductor_p(field: &LocalField, t: &PPrimaryType, n: u64) -> Result<CountBreakdown> {
    if n < 1 {
        return invalid("conductor bound n must be at least 1");
    }
    check_prime(t, field)?;
    let xn = field.xn_rank_vector(t.exponent_index(), n)?;
    let z = subgroup_count(t, &xn)?;

    let alpha = alpha_p(t);
    let n_signed = i64::try_from(n).map_err(|_| Error::InvalidInput("n too large".into()))?;
    let delta = delta_g(t, n_signed);
    let eps = epsilon(t, field, n)?;
    let leading = leading_coeff(t);
    let exponent = BigRational::from_integer(BigInt::from(n)) * &alpha + &delta;

    // f·(nα + δ) + log_p|T| = Σ r_k(T) r_k(X_n)
    let pairing = rank_pairing(t, field, n)?;
    let scaled = &exponent * BigRational::from_integer(BigInt::from(field.f()))
        + BigRational::from_integer(BigInt::from(t.log_order()));
    assert_eq!(
        scaled,
        BigRational::from_integer(BigInt::from(pairing)),
        "exponent decomposition failed for {t} at n={n}"
    );

    let breakdown = CountBreakdown {
        n,
        z,
        alpha_p: alpha,
        delta,
        epsilon: eps,
        leading_coeff: leading,
        exponent_check: exponent,
        tame_factor: BigUint::one(),
        realizable: true,
    };
    assert_eq!(
        breakdown.reconstruct(field),
        Some(to_rational(&breakdown.z)),
        "closed form does not reproduce the subgroup count for {t} at n={n}"
    );
    Ok(breakdown)
}

/// Shapes with a dedicated closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleShape {
    /// `(C_p)^r`
    Elementary(u32),
    /// `C_{p^r}`
    Cyclic(u32),
}

impl ExampleShape {
    pub fn group(&self, p: u64) -> Result<PPrimaryType> {
        match *self {
            ExampleShape::Elementary(r) => PPrimaryType::elementary(p, r as usize),
            ExampleShape::Cyclic(r) => PPrimaryType::cyclic(p, r),
        }
    }
}

/// `Z(F, G; n)` for elementary abelian and cyclic p-groups, from their
/// specialised closed forms, with `|Aut|` written out directly.
pub fn closed_form_example(field: &LocalField, shape: ExampleShape, n: u64) -> Result<BigUint> {
    if n < 1 {
        return invalid("conductor bound n must be at least 1");
    }
    let p = field.p();
    let pi = BigInt::from(p);
    let nn = BigInt::from(n);
    let m = BigInt::from(n - 1);
    let one = BigRational::one();
    let int = |x: BigInt| BigRational::from_integer(x);
    let q_pow = |x: &BigRational| {
        field
            .q_power(x)
            .ok_or_else(|| Error::InvalidInput(format!("q^{x} is not a power of p")))
    };

    let value = match shape {
        ExampleShape::Elementary(r) => {
            if r == 0 {
                return invalid("rank must be positive");
            }
            let order = num_traits::pow(pi.clone(), r as usize);
            // |GL_r(F_p)|
            let aut: BigInt = (0..r)
                .map(|j| &order - num_traits::pow(pi.clone(), j as usize))
                .product();
            let alpha = BigRational::new(BigInt::from(r) * (&pi - 1), pi.clone());
            let delta = if (&nn % &pi).is_zero() {
                BigRational::zero()
            } else {
                int(BigInt::from(r)) * (frac(&nn, &pi) - &one)
            };
            let layer = BigRational::new((&pi - 1) * &m, pi.clone()) + frac(&m, &pi);
            let qlayer = q_pow(&layer)?;
            let eps: BigRational = (0..r)
                .map(|j| &one - rational_pow(p, &(BigInt::from(j) - 1)) / &qlayer)
                .fold(one.clone(), |a, b| a * b);
            BigRational::new(order, aut) * q_pow(&(int(nn.clone()) * alpha + delta))? * eps
        }
        ExampleShape::Cyclic(r) => {
            if r == 0 {
                return invalid("exponent must be positive");
            }
            let pr = num_traits::pow(pi.clone(), r as usize);
            let pr1 = num_traits::pow(pi.clone(), r as usize - 1);
            let aut = &pr - &pr1;
            let alpha = BigRational::new(&pr - 1, pr.clone());
            let delta = if (&nn % &pr).is_zero() {
                BigRational::zero()
            } else {
                frac(&nn, &pr) - &one
            };
            let layer = BigRational::new((&pi - 1) * &m, pr.clone()) + frac(&m, &pr) - frac(&m, &pr1);
            let eps = &one - BigRational::new(BigInt::one(), pi.clone()) / q_pow(&layer)?;
            BigRational::new(pr, aut) * q_pow(&(int(nn.clone()) * alpha + delta))? * eps
        }
    };
    if !value.is_integer() || value.is_negative() {
        panic!("closed form for {shape:?} at n={n} is not a nonnegative integer: {value}");
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

/// Number of subgroups of `C_{ℓ^a} × C_{ℓ^d}` isomorphic to `G_ℓ`, with
/// `d = min(a, v_ℓ(q−1))` and `ℓ^a = exp(G_ℓ)`. This is the factor a
/// prime `ℓ ≠ p` contributes to `Z(F, G; n)`.
pub fn tame_factor(gl: &PPrimaryType, q: &BigUint) -> Result<BigUint> {
    let l = gl.prime();
    if (q % l).is_zero() {
        return invalid(format!("prime {l} divides q = {q}; tame factors need ℓ ≠ p"));
    }
    if gl.is_trivial() {
        return Ok(BigUint::one());
    }
    if gl.generators() > 2 {
        return Ok(BigUint::zero());
    }
    let a = gl.exponents()[0];
    let b = gl.exponents().get(1).copied().unwrap_or(0);
    let v = valuation(&(q - 1u32), l);
    let d = a.min(v);
    if b > d {
        return Ok(BigUint::zero());
    }
    let lp = |x: u32| big_pow(l, u64::from(x));
    Ok(if a == b || d == 0 {
        BigUint::one()
    } else if a > d {
        lp(d - b)
    } else {
        (l + 1) * lp(d - b - 1)
    })
}

/// Whether `G` occurs as a Galois group over `F`: every ℓ-part with
/// `ℓ ≠ p` must be a quotient of `Z × C_{q−1}`, i.e. have at most two
/// generators and a cyclic `(q−1)`-th power.
pub fn realizable(g: &FiniteAbelianGroup, field: &LocalField) -> bool {
    let qm1 = field.q() - 1u32;
    g.primary_parts()
        .iter()
        .filter(|t| t.prime() != field.p())
        .all(|t| {
            let v = valuation(&qm1, t.prime());
            let cyclic_power = t.exponents().iter().filter(|&&x| x > v).count() <= 1;
            t.generators() <= 2 && cyclic_power
        })
}

/// `Z(F, G; n)` for an arbitrary finite abelian `G`.
///
/// The count is computed twice, as the p-part count times the tame factors
/// and as a direct subgroup count in `X_n`, and the results must agree.
pub fn count_conductor(field: &LocalField, g: &FiniteAbelianGroup, n: u64) -> Result<CountBreakdown> {
    if n < 1 {
        return invalid("conductor bound n must be at least 1");
    }
    let (gp, rest) = g.split_at(field.p())?;
    let mut breakdown = count_conductor_p(field, &gp, n)?;
    let zp = breakdown.z.clone();

    let mut tame = BigUint::one();
    for part in rest.primary_parts() {
        tame *= tame_factor(&part, field.q())?;
    }
    let ok = realizable(g, field);
    assert_eq!(ok, !tame.is_zero(), "realizability and tame factor disagree for {g}");

    let z = &zp * &tame;
    let direct = subgroup_count_general(g, &field.xn_rank_vectors(g, n)?)?;
    assert_eq!(z, direct, "product and direct counts differ for {g} at n={n}");
    let q = field.q();
    assert!(
        BigUint::from(2u32) * &z <= (q - 1u32) * q * &zp,
        "tame bound violated for {g} at n={n}"
    );

    breakdown.z = z;
    breakdown.tame_factor = tame;
    breakdown.realizable = ok;
    Ok(breakdown)
}

/// `ρ(T) = Σ_{k=0}^{e−1} p^{−k} (|T^{p^k}| − |T^{p^{k+1}}|)`.
pub fn rho(t: &PPrimaryType) -> BigRational {
    let p = t.prime();
    // |T^{p^k}| = ∏ p^{max(λ_i − k, 0)}
    let power_order = |k: u32| -> BigInt {
        let log: u64 = t.exponents().iter().map(|&x| u64::from(x.saturating_sub(k))).sum();
        BigInt::from(big_pow(p, log))
    };
    (0..t.exponent_index())
        .map(|k| {
            BigRational::new(
                power_order(k) - power_order(k + 1),
                BigInt::from(big_pow(p, u64::from(k))),
            )
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `β_p(T) = α_p(T) / ρ(T)`.
pub fn beta_p(t: &PPrimaryType) -> Result<BigRational> {
    if t.is_trivial() {
        return invalid("β_p is undefined for the trivial group");
    }
    Ok(alpha_p(t) / rho(t))
}

/// `n·ρ(T) + |T| − 1`, bounding the discriminant exponent of any
/// `T`-extension with conductor exponent `n`.
pub fn disc_upper_bound_exact(t: &PPrimaryType, n: u64) -> BigRational {
    let order = BigRational::from_integer(BigInt::from(t.order()));
    BigRational::from_integer(BigInt::from(n)) * rho(t) + order - BigRational::one()
}

/// `⌈n·ρ(T)⌉ + |T| − 1`.
pub fn disc_upper_bound(t: &PPrimaryType, n: u64) -> BigInt {
    disc_upper_bound_exact(t, n).ceil().to_integer()
}

/// Certificate `D(F, T; n) ≥ Z(F, T; ñ)` with `ñ = ⌊(n − |T| + 1)/ρ(T)⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscLowerBound {
    /// `None` when `ñ < 1`, in which case the bound is 0.
    pub n_tilde: Option<u64>,
    pub bound: BigUint,
}

pub fn disc_lower_bound_data(field: &LocalField, t: &PPrimaryType, n: u64) -> Result<DiscLowerBound> {
    check_prime(t, field)?;
    let rho = rho(t);
    if rho.is_zero() {
        return invalid("the discriminant bound needs a nontrivial group");
    }
    let shifted = BigInt::from(n) - BigInt::from(t.order()) + 1;
    let n_tilde = (BigRational::from_integer(shifted) / rho).floor().to_integer();
    if n_tilde < BigInt::one() {
        return Ok(DiscLowerBound {
            n_tilde: None,
            bound: BigUint::zero(),
        });
    }
    let n_tilde = n_tilde.to_u64().expect("ñ ≤ n");
    let z = count_conductor_p(field, t, n_tilde)?.z;
    Ok(DiscLowerBound {
        n_tilde: Some(n_tilde),
        bound: z,
    })
}

/// `|T| / |Aut(T)|` as used in the leading coefficient.
pub fn leading_coeff(t: &PPrimaryType) -> BigRational {
    BigRational::new(BigInt::from(t.order()), BigInt::from(aut_count(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn field(p: u64, f: u32) -> LocalField {
        LocalField::new(p, f).unwrap()
    }

    fn pt(l: u64, e: &[u32]) -> PPrimaryType {
        PPrimaryType::new(l, e.to_vec()).unwrap()
    }

    #[test]
    fn field_construction() {
        assert_eq!(LocalField::from_q(9).unwrap(), field(3, 2));
        assert!(LocalField::from_q(12).is_err());
        assert!(LocalField::from_q(1).is_err());
        assert!(LocalField::new(4, 1).is_err());
        assert!(LocalField::new(2, 0).is_err());
    }

    #[test]
    fn unit_group_ranks() {
        assert_eq!(field(2, 1).rank_un(5, 1).unwrap(), 2);
        assert_eq!(field(3, 2).rank_un(10, 2).unwrap(), 4);
        for k in 1..5 {
            assert_eq!(field(5, 3).rank_un(1, k).unwrap(), 0);
        }
        assert!(field(2, 1).rank_un(0, 1).is_err());
        assert_eq!(field(2, 1).rank_xn(1, 1, 1).unwrap(), 1);
        assert_eq!(field(2, 1).rank_xn(2, 4, 1).unwrap(), 3);
        assert_eq!(field(2, 1).rank_xn(2, 4, 2).unwrap(), 2);
        assert!(field(2, 1).rank_xn(1, 4, 2).is_err());
    }

    #[test]
    fn alpha_values() {
        for p in [2u64, 3, 5] {
            for r in 1..4u32 {
                let el = PPrimaryType::elementary(p, r as usize).unwrap();
                assert_eq!(alpha_p(&el), ratio(u64::from(r) * (p - 1), p));
                let cy = PPrimaryType::cyclic(p, r).unwrap();
                let pr = p.pow(r);
                assert_eq!(alpha_p(&cy), ratio(pr - 1, pr));
            }
        }
        assert!(alpha_p(&PPrimaryType::trivial(2).unwrap()).is_zero());
    }

    #[test]
    fn delta_values() {
        let t = pt(3, &[2, 1]);
        let alpha = alpha_p(&t);
        assert!(delta_g(&t, 0).is_zero());
        assert!(delta_g(&t, 18).is_zero());
        assert_eq!(delta_g(&t, 1), -alpha.clone());
        assert_eq!(delta_g(&t, 10), -alpha);
        // (C_p)^r with p ∤ n: r({n/p} − 1)
        let el = PPrimaryType::elementary(5, 3).unwrap();
        for n in [1i64, 2, 7, 13, -3] {
            let expect = BigRational::from_integer(3.into())
                * (frac(&BigInt::from(n), &BigInt::from(5)) - BigRational::one());
            assert_eq!(delta_g(&el, n), expect);
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(&pt(2, &[1]), &field(2, 1), 2).unwrap(), ratio(3, 4));
        assert!(epsilon(&pt(2, &[1, 1]), &field(2, 1), 1).unwrap().is_zero());
        assert_eq!(
            epsilon(&PPrimaryType::trivial(3).unwrap(), &field(3, 1), 4).unwrap(),
            BigRational::one()
        );
        assert!(epsilon(&pt(3, &[1]), &field(2, 1), 4).is_err());
    }

    #[test]
    fn small_counts() {
        let f2 = field(2, 1);
        let c2 = pt(2, &[1]);
        let z: Vec<u64> = (1..=6)
            .map(|n| count_conductor_p(&f2, &c2, n).unwrap().z.to_u64().unwrap())
            .collect();
        assert_eq!(z, vec![1, 3, 3, 7, 7, 15]);
        assert!(count_conductor_p(&f2, &pt(2, &[1, 1]), 1).unwrap().z.is_zero());
        let triv = PPrimaryType::trivial(2).unwrap();
        for n in 1..6 {
            assert_eq!(count_conductor_p(&f2, &triv, n).unwrap().z, BigUint::one());
        }
        assert!(count_conductor_p(&f2, &c2, 0).is_err());
    }

    #[test]
    fn closed_forms_small() {
        let f2 = field(2, 1);
        assert_eq!(
            closed_form_example(&f2, ExampleShape::Elementary(1), 3).unwrap(),
            3u32.into()
        );
        let c4 = count_conductor_p(&f2, &pt(2, &[2]), 4).unwrap().z;
        assert_eq!(closed_form_example(&f2, ExampleShape::Cyclic(2), 4).unwrap(), c4);
        assert_eq!(
            closed_form_example(&f2, ExampleShape::Elementary(1), 4).unwrap(),
            7u32.into()
        );
    }

    #[test]
    fn tame_factors() {
        let q = |x: u64| BigUint::from(x);
        assert_eq!(tame_factor(&pt(2, &[1]), &q(3)).unwrap(), 3u32.into());
        assert_eq!(tame_factor(&pt(3, &[1]), &q(2)).unwrap(), BigUint::one());
        assert_eq!(tame_factor(&pt(2, &[2]), &q(3)).unwrap(), 2u32.into());
        assert_eq!(tame_factor(&pt(3, &[1, 1, 1]), &q(4)).unwrap(), BigUint::zero());
        assert_eq!(tame_factor(&pt(3, &[1, 1]), &q(2)).unwrap(), BigUint::zero());
        assert!(tame_factor(&pt(2, &[1]), &q(4)).is_err());
    }

    #[test]
    fn realizability() {
        let g33: FiniteAbelianGroup = "C3xC3".parse().unwrap();
        assert!(!realizable(&g33, &field(2, 1)));
        assert!(realizable(&g33, &field(2, 2)));
        let g2222: FiniteAbelianGroup = "C2xC2xC2xC2".parse().unwrap();
        assert!(realizable(&g2222, &field(2, 1)));
        // rank three prime-to-p part: the (q−1)-th power is trivial, yet
        // Z × C_{q−1} has only two generators at ℓ.
        let g333: FiniteAbelianGroup = "C3xC3xC3".parse().unwrap();
        assert!(!realizable(&g333, &field(2, 2)));
        assert!(count_conductor(&field(2, 2), &g333, 3).unwrap().z.is_zero());
    }

    #[test]
    fn general_counts() {
        let c2: FiniteAbelianGroup = "C2".parse().unwrap();
        assert_eq!(count_conductor(&field(3, 1), &c2, 1).unwrap().z, 3u32.into());
        assert_eq!(count_conductor(&field(2, 1), &c2, 2).unwrap().z, 3u32.into());
        let g33: FiniteAbelianGroup = "C3xC3".parse().unwrap();
        for n in 1..6 {
            let b = count_conductor(&field(2, 1), &g33, n).unwrap();
            assert!(b.z.is_zero());
            assert!(!b.realizable);
        }
        assert!(count_conductor(&field(2, 1), &c2, 0).is_err());
    }

    #[test]
    fn discriminant_constants() {
        assert_eq!(rho(&pt(2, &[1])), BigRational::one());
        assert_eq!(beta_p(&pt(2, &[1])).unwrap(), ratio(1, 2));
        assert_eq!(rho(&pt(3, &[1])), ratio(2, 1));
        assert_eq!(beta_p(&pt(3, &[1])).unwrap(), ratio(1, 3));
        assert_eq!(rho(&pt(2, &[1, 1])), ratio(3, 1));
        assert_eq!(beta_p(&pt(2, &[1, 1])).unwrap(), ratio(1, 3));
        assert_eq!(rho(&pt(2, &[2])), ratio(5, 2));
        assert_eq!(beta_p(&pt(2, &[2])).unwrap(), ratio(3, 10));
        assert!(beta_p(&PPrimaryType::trivial(2).unwrap()).is_err());

        assert_eq!(disc_upper_bound(&pt(2, &[1]), 2), BigInt::from(3));
        // C_p with n = 1: (p − 1) + p − 1
        assert_eq!(disc_upper_bound(&pt(5, &[1]), 1), BigInt::from(8));
        assert_eq!(disc_upper_bound(&pt(2, &[2]), 3), BigInt::from(11));
    }

    #[test]
    fn discriminant_lower_bounds() {
        let f2 = field(2, 1);
        let c2 = pt(2, &[1]);
        let lb = disc_lower_bound_data(&f2, &c2, 3).unwrap();
        assert_eq!(lb.n_tilde, Some(2));
        assert_eq!(lb.bound, 3u32.into());
        let lb = disc_lower_bound_data(&f2, &c2, 5).unwrap();
        assert_eq!((lb.n_tilde, lb.bound), (Some(4), 7u32.into()));
        let lb = disc_lower_bound_data(&f2, &c2, 1).unwrap();
        assert_eq!((lb.n_tilde, lb.bound), (None, BigUint::zero()));
    }
}
