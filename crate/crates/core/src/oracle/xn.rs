use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{big_pow, lcm};
use crate::error::{invalid, Error, Result};
use crate::groups::FiniteAbelianGroup;
use crate::local::LocalField;

use super::enumerate::{check_cap, count_quotients, enumerate_quotient_kernels};
use super::explicit::{ElementSet, ExplicitGroup, SubgroupHandle};

/// What a generator of the `X_n` carrier stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// The uniformizer, modulo `exp(G)`.
    Unramified,
    /// A generator of `F_q^×`.
    Tame,
    /// `1 + v_j t^i` with `p ∤ i`, `1 ≤ i < n`.
    Unit { i: u64, j: u32 },
}

/// `X_n = Z/exp(G) × F_q^× × U_n` as an explicit group, with the images of
/// the higher unit groups `1 + 𝔭^m` precomputed.
#[derive(Debug, Clone)]
pub struct XnModel {
    field: LocalField,
    n: u64,
    exp_g: u64,
    carrier: ExplicitGroup,
    labels: Vec<BasisLabel>,
    /// Generators of `W_m`, indexed by `m − 1` for `1 ≤ m ≤ n`.
    filtration_gens: Vec<Vec<usize>>,
    tame_gens: Vec<usize>,
}

/// Smallest `c ≥ 0` with `i·p^c ≥ m`.
fn lift_exponent(i: u64, p: u64, m: u64) -> u32 {
    let mut c = 0;
    let mut v = i;
    while v < m {
        v = v.saturating_mul(p);
        c += 1;
    }
    c
}

impl XnModel {
    /// `|X_n| = exp(G) · (q − 1) · q^{n−1}`.
    pub fn order_of(field: &LocalField, n: u64, exp_g: u64) -> BigUint {
        let q = field.q();
        BigUint::from(exp_g) * (q - 1u32) * num_traits::pow(q.clone(), (n - 1) as usize)
    }

    pub fn new(field: &LocalField, n: u64, exp_g: u64, cap: u64) -> Result<Self> {
        if n < 1 {
            return invalid("conductor bound n must be at least 1");
        }
        if exp_g < 1 {
            return invalid("exponent must be positive");
        }
        let order = Self::order_of(field, n, exp_g);
        if order > BigUint::from(cap) {
            return Err(Error::ResourceLimit {
                order: order.to_string(),
                cap,
            });
        }
        let p = field.p();
        let mut orders = Vec::new();
        let mut labels = Vec::new();
        if exp_g >= 2 {
            orders.push(exp_g);
            labels.push(BasisLabel::Unramified);
        }
        let qm1 = (field.q() - 1u32).to_u64().expect("q is under the cap");
        if qm1 >= 2 {
            orders.push(qm1);
            labels.push(BasisLabel::Tame);
        }
        for i in (1..n).filter(|i| i % p != 0) {
            let c = lift_exponent(i, p, n);
            let ord = big_pow(p, u64::from(c)).to_u64().expect("under the cap");
            for j in 1..=field.f() {
                orders.push(ord);
                labels.push(BasisLabel::Unit { i, j });
            }
        }
        let carrier = ExplicitGroup::new(&orders)?;

        let mut tame_gens = Vec::new();
        let mut units = Vec::new();
        for (idx, label) in labels.iter().enumerate() {
            match *label {
                BasisLabel::Tame => tame_gens.push(carrier.generator(idx)),
                BasisLabel::Unit { i, .. } => units.push((i, carrier.generator(idx))),
                BasisLabel::Unramified => {}
            }
        }
        // (1 + u t^i)^{p^s} = 1 + u^{p^s} t^{i p^s} in characteristic p, so
        // 1 + 𝔭^m is generated by the p^s-th powers of the basis with i p^s ≥ m.
        let filtration_gens = (1..=n)
            .map(|m| {
                units
                    .iter()
                    .map(|&(i, g)| {
                        let s = lift_exponent(i, p, m);
                        carrier.scale(big_pow(p, u64::from(s)).to_u64().unwrap_or(0), g)
                    })
                    .filter(|&x| x != 0)
                    .collect()
            })
            .collect();

        Ok(Self {
            field: field.clone(),
            n,
            exp_g,
            carrier,
            labels,
            filtration_gens,
            tame_gens,
        })
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn exp_g(&self) -> u64 {
        self.exp_g
    }

    pub fn carrier(&self) -> &ExplicitGroup {
        &self.carrier
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// The image `W_m` of `1 + 𝔭^m`, for `1 ≤ m ≤ n`.
    pub fn filtration(&self, m: u64) -> Result<SubgroupHandle> {
        if m < 1 || m > self.n {
            return invalid(format!("filtration level {m} outside 1..={}", self.n));
        }
        let gens = &self.filtration_gens[(m - 1) as usize];
        Ok(SubgroupHandle::new(&self.carrier, self.carrier.span(gens)))
    }

    /// The subgroup generated by the images of `F_q^×` and `1 + 𝔭`.
    pub fn unit_part(&self) -> SubgroupHandle {
        let mut gens = self.tame_gens.clone();
        gens.extend_from_slice(&self.filtration_gens[0]);
        SubgroupHandle::new(&self.carrier, self.carrier.span(&gens))
    }

    fn contains_all(members: &ElementSet, gens: &[usize]) -> bool {
        gens.iter().all(|&g| members.contains(g))
    }

    /// Conductor exponent of the extension cut out by `v`: 0 if `v`
    /// contains all units, otherwise the least `m ≥ 1` with `W_m ⊆ v`.
    pub fn conductor_exponent(&self, v: &SubgroupHandle) -> u64 {
        let members = v.members();
        if Self::contains_all(members, &self.tame_gens)
            && Self::contains_all(members, &self.filtration_gens[0])
        {
            return 0;
        }
        (1..=self.n)
            .find(|&m| Self::contains_all(members, &self.filtration_gens[(m - 1) as usize]))
            .expect("W_n is trivial")
    }

    /// Discriminant exponent of the extension cut out by `v`: the sum of the
    /// conductor exponents of all characters of `X_n / v`.
    pub fn discriminant_exponent(&self, v: &SubgroupHandle) -> u64 {
        let g = &self.carrier;
        let orders = g.generator_orders();
        let modulus = orders.iter().fold(1u64, |acc, &m| lcm(acc, m as u64));
        // χ_u(x) = Σ_i x_i u_i (M / m_i) mod M
        let weights: Vec<u64> = orders.iter().map(|&m| modulus / m as u64).collect();
        let coords = |x: usize| g.coords(x);
        let v_gens: Vec<Vec<usize>> = g.generators_of(v.members()).into_iter().map(coords).collect();
        let tame: Vec<Vec<usize>> = self.tame_gens.iter().map(|&x| coords(x)).collect();
        let levels: Vec<Vec<Vec<usize>>> = self
            .filtration_gens
            .iter()
            .map(|gs| gs.iter().map(|&x| coords(x)).collect())
            .collect();

        let mut total = 0u64;
        let mut u = vec![0usize; orders.len()];
        let eval = |u: &[usize], x: &[usize]| -> u64 {
            x.iter()
                .zip(u)
                .zip(&weights)
                .map(|((&a, &b), &w)| (a as u64 * b as u64 % modulus) * w % modulus)
                .sum::<u64>()
                % modulus
        };
        let kills = |u: &[usize], xs: &[Vec<usize>]| xs.iter().all(|x| eval(u, x) == 0);
        loop {
            if kills(&u, &v_gens) {
                let unramified = kills(&u, &tame) && kills(&u, &levels[0]);
                if !unramified {
                    let c = (1..=self.n)
                        .find(|&m| kills(&u, &levels[(m - 1) as usize]))
                        .expect("W_n is trivial");
                    total += c;
                }
            }
            // next character in mixed radix
            let mut i = 0;
            loop {
                if i == u.len() {
                    return total;
                }
                u[i] += 1;
                if u[i] < orders[i] {
                    break;
                }
                u[i] = 0;
                i += 1;
            }
        }
    }

    /// `U_n[p^j]`, computed element by element.
    pub fn unit_torsion(&self, j: u32) -> SubgroupHandle {
        let g = &self.carrier;
        let units = self.filtration(1).expect("n ≥ 1");
        let pj = big_pow(self.field.p(), u64::from(j)).to_u64().unwrap_or(u64::MAX);
        let mut set = ElementSet::empty(g.len());
        for x in units.members().iter() {
            let ord = g.order_of(x);
            if pj.is_multiple_of(ord) {
                set.insert(x);
            }
        }
        SubgroupHandle::new(g, set)
    }

    /// `U_n[p^j]` together with the unramified and tame directions.
    pub fn pullback_of_unit_torsion(&self, j: u32) -> SubgroupHandle {
        let g = &self.carrier;
        let mut gens: Vec<usize> = self.unit_torsion(j).elements();
        for (idx, label) in self.labels.iter().enumerate() {
            if *label == BasisLabel::Unramified {
                gens.push(g.generator(idx));
            }
        }
        SubgroupHandle::new(g, g.span(&gens))
    }
}

/// An extension with group `G` and conductor exponent at most `n`, as a
/// subgroup of the `X_n` model.
#[derive(Debug, Clone)]
pub struct ExtensionRecord {
    pub kernel: SubgroupHandle,
    pub conductor: u64,
    pub discriminant: u64,
}

/// All `G`-extensions with conductor exponent at most `n`.
pub fn extensions(field: &LocalField, g: &FiniteAbelianGroup, n: u64, cap: u64) -> Result<Vec<ExtensionRecord>> {
    let model = XnModel::new(field, n, g.exponent(), cap)?;
    let kernels = enumerate_quotient_kernels(model.carrier(), g, cap)?;
    Ok(kernels
        .into_iter()
        .map(|kernel| ExtensionRecord {
            conductor: model.conductor_exponent(&kernel),
            discriminant: model.discriminant_exponent(&kernel),
            kernel,
        })
        .collect())
}

/// `Z(F, G; n)` by counting subgroups of the `X_n` model with quotient `G`.
pub fn brute_z(field: &LocalField, g: &FiniteAbelianGroup, n: u64, cap: u64) -> Result<u128> {
    let model = XnModel::new(field, n, g.exponent(), cap)?;
    check_cap(model.carrier(), cap)?;
    count_quotients(model.carrier(), g, cap)
}

/// `D(F, G; n)`: `G`-extensions with discriminant exponent at most `n`.
/// Their conductor exponents are at most `n` too, so `X_n` holds them all.
pub fn brute_d(field: &LocalField, g: &FiniteAbelianGroup, n: u64, cap: u64) -> Result<u128> {
    Ok(extensions(field, g, n, cap)?
        .iter()
        .filter(|e| e.discriminant <= n)
        .count() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate::DEFAULT_CAP;

    fn f2() -> LocalField {
        LocalField::new(2, 1).unwrap()
    }

    fn grp(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn model_shape() {
        let x = XnModel::new(&LocalField::new(3, 2).unwrap(), 4, 3, 1 << 16).unwrap();
        // i ∈ {1, 2}: orders 3^2 and 3, twice each; plus Z/3 and F_9^×.
        assert_eq!(x.carrier().generator_orders(), &[3, 8, 9, 9, 3, 3]);
        assert_eq!(x.filtration(1).unwrap().order(), 9u64.pow(3));
        assert!(matches!(
            XnModel::new(&f2(), 20, 2, DEFAULT_CAP),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn filtration_orders() {
        let x = XnModel::new(&f2(), 5, 2, DEFAULT_CAP).unwrap();
        assert_eq!(x.filtration(1).unwrap().order(), 16);
        assert_eq!(x.filtration(3).unwrap().order(), 4);
        assert_eq!(x.filtration(5).unwrap().order(), 1);
        assert!(x.filtration(0).is_err());
        assert!(x.filtration(6).is_err());
    }

    #[test]
    fn conductors_of_quadratic_extensions() {
        let x = XnModel::new(&f2(), 3, 2, DEFAULT_CAP).unwrap();
        let full = SubgroupHandle::new(x.carrier(), x.carrier().full());
        assert_eq!(x.conductor_exponent(&full), 0);
        assert_eq!(x.discriminant_exponent(&full), 0);
        let kernels = enumerate_quotient_kernels(x.carrier(), &grp("C2"), DEFAULT_CAP).unwrap();
        let mut conductors: Vec<u64> = kernels.iter().map(|k| x.conductor_exponent(k)).collect();
        conductors.sort();
        // unramified, then the two Artin–Schreier extensions of conductor 2
        assert_eq!(conductors, vec![0, 2, 2]);
        for k in &kernels {
            assert_eq!(x.discriminant_exponent(k), x.conductor_exponent(k));
        }
    }

    #[test]
    fn brute_counts() {
        assert_eq!(brute_z(&f2(), &grp("C2"), 4, DEFAULT_CAP).unwrap(), 7);
        assert_eq!(brute_d(&f2(), &grp("C2"), 2, DEFAULT_CAP).unwrap(), 3);
        assert_eq!(brute_z(&f2(), &FiniteAbelianGroup::trivial(), 3, DEFAULT_CAP).unwrap(), 1);
        let f3 = LocalField::new(3, 1).unwrap();
        assert_eq!(brute_z(&f3, &grp("C2"), 1, DEFAULT_CAP).unwrap(), 3);
    }

    #[test]
    fn torsion_conductors() {
        for (p, f, n) in [(2u64, 1u32, 9u64), (3, 1, 10), (2, 2, 6)] {
            let field = LocalField::new(p, f).unwrap();
            let x = XnModel::new(&field, n, 2, 1 << 18).unwrap();
            let mut j = 1;
            while p.pow(j) < n {
                let v = x.pullback_of_unit_torsion(j);
                let expect = n.div_ceil(p.pow(j));
                assert_eq!(x.conductor_exponent(&v), expect, "p={p} f={f} n={n} j={j}");
                j += 1;
            }
        }
    }
}
