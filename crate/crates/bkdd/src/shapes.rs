//! Tame inertial types, gamma digits, shapes and refined shapes, the
//! set P_tau, and the distinguished pairs M(J,r), N(J,r).

use crate::error::{BkError, Result};
use crate::field::Elt;
use crate::params::{least_residue, mod_pow, AmbientParams, TypeKind};
use crate::rank_one::{make_rank_one, RankOneBK};

/// A tame inertial type eta (+) eta', stored through the exponents of
/// the two characters at the embedding index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TameType {
    params: AmbientParams,
    k0: u64,
    k0p: u64,
}

impl TameType {
    pub fn new(params: &AmbientParams, k0: u64, k0p: u64) -> Result<TameType> {
        let e_kk = params.e_kk;
        let (k0, k0p) = (k0 % e_kk, k0p % e_kk);
        match params.kind {
            TypeKind::ScalarPs => {
                if k0 != k0p {
                    return Err(BkError::InvalidSpec("scalar types require k0 = k0p".into()));
                }
            }
            TypeKind::PrincipalSeries => {
                if k0 == k0p {
                    return Err(BkError::InvalidSpec(
                        "non-scalar principal series requires k0 != k0p (use kind scalar)".into(),
                    ));
                }
            }
            TypeKind::Cuspidal => {
                let expected =
                    least_residue(mod_pow(params.p, params.f, e_kk) as i128 * k0 as i128, e_kk);
                if k0p != expected {
                    return Err(BkError::InvalidSpec(format!(
                        "cuspidal types require k0' = p^f k0 = {expected} mod {e_kk}"
                    )));
                }
                if k0p == k0 {
                    return Err(BkError::InvalidSpec(
                        "cuspidal types require eta' != eta; this k0 is fixed by p^f".into(),
                    ));
                }
            }
        }
        Ok(TameType {
            params: params.clone(),
            k0,
            k0p,
        })
    }

    pub fn params(&self) -> &AmbientParams {
        &self.params
    }

    pub fn k0(&self) -> u64 {
        self.k0
    }

    pub fn k0p(&self) -> u64 {
        self.k0p
    }

    /// k_i = p^i k_0 mod e(K'/K).
    pub fn k(&self, i: i64) -> u64 {
        let i = self.params.idx(i) as u32;
        least_residue(
            mod_pow(self.params.p, i, self.params.e_kk) as i128 * self.k0 as i128,
            self.params.e_kk,
        )
    }

    /// k'_i = p^i k'_0 mod e(K'/K).
    pub fn kp(&self, i: i64) -> u64 {
        let i = self.params.idx(i) as u32;
        least_residue(
            mod_pow(self.params.p, i, self.params.e_kk) as i128 * self.k0p as i128,
            self.params.e_kk,
        )
    }

    pub fn is_scalar(&self) -> bool {
        self.k0 == self.k0p
    }

    /// The digit vector (gamma_i): the unique 0 <= gamma_i <= p-1, not
    /// all p-1, with [k_i - k'_i] = sum_j p^j gamma_{i-j}.
    pub fn gamma_digits(&self) -> Vec<u64> {
        let fp = self.params.f_prime as usize;
        let p = self.params.p;
        let mut delta = least_residue(self.k0 as i128 - self.k0p as i128, self.params.e_kk);
        // Base-p digits of [k_0 - k'_0]; digit j sits at index -j mod f'.
        let mut gamma = vec![0u64; fp];
        for j in 0..fp {
            gamma[(fp - j) % fp] = delta % p;
            delta /= p;
        }
        debug_assert!(gamma.iter().any(|&g| g != p - 1) || self.is_scalar());
        if cfg!(debug_assertions) {
            for i in 0..fp as i64 {
                let mut acc: i128 = 0;
                let mut pw: i128 = 1;
                for j in 0..fp as i64 {
                    acc += pw * gamma[self.params.idx(i - j)] as i128;
                    pw *= p as i128;
                }
                let target =
                    least_residue(self.k(i) as i128 - self.kp(i) as i128, self.params.e_kk);
                debug_assert_eq!(acc as u64, target, "digit system solution");
            }
            if self.params.kind.is_cuspidal() {
                let f = self.params.f as usize;
                for i in 0..fp {
                    debug_assert_eq!(gamma[(i + f) % fp], p - 1 - gamma[i]);
                }
            }
        }
        gamma
    }
}

/// A shape: a subset of Z/f'Z; in the cuspidal case i is a member iff
/// i+f is not, and for scalar types only the empty shape exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    members: Vec<bool>,
}

impl Shape {
    pub fn empty(f_prime: u32) -> Shape {
        Shape {
            members: vec![false; f_prime as usize],
        }
    }

    pub fn from_members(members: Vec<bool>) -> Shape {
        Shape { members }
    }

    pub fn f_prime(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: i64) -> bool {
        self.members[i.rem_euclid(self.members.len() as i64) as usize]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .collect()
    }

    /// Whether (i-1, i) is a transition: exactly one endpoint in J.
    pub fn is_transition(&self, i: i64) -> bool {
        self.contains(i - 1) != self.contains(i)
    }
}

/// All shapes for tau, in binary-counter order on {0..f-1}.
pub fn enumerate_shapes(tau: &TameType) -> Vec<Shape> {
    let params = tau.params();
    let f = params.f as usize;
    let fp = params.f_prime as usize;
    if tau.is_scalar() {
        return vec![Shape::empty(params.f_prime)];
    }
    let mut out = Vec::with_capacity(1 << f);
    for mask in 0u32..(1 << f) {
        let mut members = vec![false; fp];
        for i in 0..f {
            let bit = mask >> i & 1 == 1;
            members[i] = bit;
            if params.kind.is_cuspidal() {
                members[i + f] = !bit;
            }
        }
        out.push(Shape::from_members(members));
    }
    out
}

/// The subset P_tau of shapes: gamma_i != p-1 at transitions out of J
/// and gamma_i != 0 at transitions into J.
pub fn p_tau(tau: &TameType) -> Vec<Shape> {
    if tau.is_scalar() {
        return vec![Shape::empty(tau.params().f_prime)];
    }
    let gamma = tau.gamma_digits();
    let p = tau.params().p;
    enumerate_shapes(tau)
        .into_iter()
        .filter(|j| {
            (0..j.f_prime() as i64).all(|i| {
                if j.contains(i - 1) && !j.contains(i) {
                    gamma[i as usize] != p - 1
                } else if !j.contains(i - 1) && j.contains(i) {
                    gamma[i as usize] != 0
                } else {
                    true
                }
            })
        })
        .collect()
}

/// gamma*_i: gamma_i off J-exits, p-1-gamma_i when i-1 is in J.
pub fn gamma_star(tau: &TameType, shape: &Shape) -> Vec<u64> {
    let gamma = tau.gamma_digits();
    let p = tau.params().p;
    (0..shape.f_prime() as i64)
        .map(|i| {
            if shape.contains(i - 1) {
                p - 1 - gamma[i as usize]
            } else {
                gamma[i as usize]
            }
        })
        .collect()
}

/// The residue vectors (c_i, d_i) attached to a shape: c_i = k_i on J
/// and k'_i off J, with d_i complementary.
pub fn cd_vectors(tau: &TameType, shape: &Shape) -> (Vec<u64>, Vec<u64>) {
    let fp = tau.params().f_prime as i64;
    let mut c = Vec::with_capacity(fp as usize);
    let mut d = Vec::with_capacity(fp as usize);
    for i in 0..fp {
        if shape.contains(i) {
            c.push(tau.k(i));
            d.push(tau.kp(i));
        } else {
            c.push(tau.kp(i));
            d.push(tau.k(i));
        }
    }
    (c, d)
}

/// A shape together with the exponent vector r and its y-coordinates:
/// r_i = e(K'/K) y_i off transitions and e(K'/K) y_i - [c_i - d_i] at
/// transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedShape {
    pub shape: Shape,
    pub r: Vec<u64>,
    pub y: Vec<u64>,
}

fn r_from_y(tau: &TameType, shape: &Shape, y: &[u64]) -> Vec<u64> {
    let params = tau.params();
    let (c, d) = cd_vectors(tau, shape);
    let fp = params.f_prime as usize;
    let f = params.f as usize;
    (0..fp)
        .map(|i| {
            let yi = y[i % f];
            if shape.is_transition(i as i64) {
                let bracket = least_residue(c[i] as i128 - d[i] as i128, params.e_kk);
                params.e_kk * yi - bracket
            } else {
                params.e_kk * yi
            }
        })
        .collect()
}

/// All refined shapes refining J, ordered lexicographically in y.
pub fn enumerate_refined(tau: &TameType, shape: &Shape) -> Vec<RefinedShape> {
    let params = tau.params();
    let f = params.f as usize;
    let e = params.e;
    let lo = |i: usize| -> u64 {
        if shape.is_transition(i as i64) {
            1
        } else {
            0
        }
    };
    let mut out = Vec::new();
    let mut y = (0..f).map(lo).collect::<Vec<_>>();
    loop {
        out.push(RefinedShape {
            shape: shape.clone(),
            r: r_from_y(tau, shape, &y),
            y: y.clone(),
        });
        // binary-counter style increment with per-digit lower bounds
        let mut i = f;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if y[i] < e {
                y[i] += 1;
                for j in i + 1..f {
                    y[j] = lo(j);
                }
                break;
            }
        }
    }
}

/// The unique maximal refined shape: every y_i = e.
pub fn maximal_refined(tau: &TameType, shape: &Shape) -> RefinedShape {
    let f = tau.params().f as usize;
    let y = vec![tau.params().e; f];
    RefinedShape {
        shape: shape.clone(),
        r: r_from_y(tau, shape, &y),
        y,
    }
}

/// The distinguished pair M(J,r) = M(r,1,c), N(J,r) = M(s,1,d).
pub fn build_pair(tau: &TameType, rs: &RefinedShape) -> (RankOneBK, RankOneBK) {
    let params = tau.params();
    let fp = params.f_prime as usize;
    let (c, d) = cd_vectors(tau, &rs.shape);
    let ones = vec![Elt::ONE; fp];
    let s: Vec<u64> = rs.r.iter().map(|&ri| params.e_prime - ri).collect();
    let m = make_rank_one(params, rs.r.clone(), ones.clone(), c)
        .expect("M(J,r) always satisfies the module invariants");
    let n =
        make_rank_one(params, s, ones, d).expect("N(J,r) always satisfies the module invariants");
    debug_assert!(pair_has_type(&m, &n, tau));
    (m, n)
}

/// Whether (M, N) has type tau: {c_i, d_i} = {k_i, k'_i} as multisets
/// and r_i + s_i = e' for every i.
pub fn pair_has_type(m: &RankOneBK, n: &RankOneBK, tau: &TameType) -> bool {
    let params = tau.params();
    if m.params() != params || n.params() != params {
        return false;
    }
    (0..params.f_prime as i64).all(|i| {
        let mut lhs = [m.c_at(i), n.c_at(i)];
        let mut rhs = [tau.k(i), tau.kp(i)];
        lhs.sort_unstable();
        rhs.sort_unstable();
        lhs == rhs && m.r_at(i) + n.r_at(i) == params.e_prime
    })
}

/// The shape of a pair of type tau; None if the pair is not of type tau.
pub fn shape_of_pair(m: &RankOneBK, n: &RankOneBK, tau: &TameType) -> Option<Shape> {
    if !pair_has_type(m, n, tau) {
        return None;
    }
    let fp = tau.params().f_prime;
    if tau.is_scalar() {
        return Some(Shape::empty(fp));
    }
    Some(Shape::from_members(
        (0..fp as i64).map(|i| m.c_at(i) == tau.k(i)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn ps_type(p: u64, f: u32, e: u64, k0: u64, k0p: u64) -> TameType {
        let kind = if k0 == k0p {
            TypeKind::ScalarPs
        } else {
            TypeKind::PrincipalSeries
        };
        let params = AmbientParams::new(p, f, e, kind, None).unwrap();
        TameType::new(&params, k0, k0p).unwrap()
    }

    pub fn cusp_type(p: u64, f: u32, e: u64, k0: u64) -> TameType {
        let params = AmbientParams::new(p, f, e, TypeKind::Cuspidal, None).unwrap();
        let k0p = least_residue(mod_pow(p, f, params.e_kk) as i128 * k0 as i128, params.e_kk);
        TameType::new(&params, k0, k0p).unwrap()
    }

    #[test]
    fn gamma_digit_examples() {
        assert_eq!(ps_type(3, 2, 1, 4, 0).gamma_digits(), vec![1, 1]);
        assert_eq!(cusp_type(3, 1, 1, 1).gamma_digits(), vec![0, 2]);
        assert_eq!(ps_type(3, 1, 1, 1, 1).gamma_digits(), vec![0]);
    }

    #[test]
    fn shape_enumeration() {
        let t = ps_type(3, 1, 1, 1, 0);
        let shapes = enumerate_shapes(&t);
        assert_eq!(shapes.len(), 2);
        assert_eq!(shapes[0].indices(), Vec::<usize>::new());
        assert_eq!(shapes[1].indices(), vec![0]);

        let c = cusp_type(3, 1, 1, 1);
        let shapes = enumerate_shapes(&c);
        assert_eq!(shapes.len(), 2);
        assert_eq!(shapes[0].indices(), vec![1]);
        assert_eq!(shapes[1].indices(), vec![0]);

        let s = ps_type(3, 2, 1, 5, 5);
        assert_eq!(enumerate_shapes(&s).len(), 1);
    }

    #[test]
    fn p_tau_examples() {
        // generic gamma = (1,1): all four shapes survive
        let t = ps_type(3, 2, 1, 4, 0);
        assert_eq!(p_tau(&t).len(), 4);

        // cuspidal gamma = (0,2): the shape {0} has a transition into J
        // at i = 0 with gamma_0 = 0
        let c = cusp_type(3, 1, 1, 1);
        let pt = p_tau(&c);
        assert_eq!(pt.len(), 1);
        assert_eq!(pt[0].indices(), vec![1]);

        let s = ps_type(3, 1, 1, 2, 2);
        let pt = p_tau(&s);
        assert_eq!(pt.len(), 1);
        assert!(pt[0].indices().is_empty());
    }

    #[test]
    fn gamma_star_examples() {
        let t = ps_type(3, 2, 1, 4, 0);
        let j = Shape::from_members(vec![true, false]);
        assert_eq!(gamma_star(&t, &j), vec![1, 1]);

        let c = cusp_type(3, 1, 1, 1);
        let j0 = Shape::from_members(vec![true, false]);
        assert_eq!(gamma_star(&c, &j0), vec![0, 0]);
    }

    /// p [d_{i-1} - c_{i-1}] - [c_i - d_i] = gamma*_i (p^f' - 1) at
    /// transitions; with + and gamma*_i + 1 at non-transitions of
    /// non-scalar types.
    #[test]
    fn gamma_star_identities() {
        for tau in [
            ps_type(3, 2, 1, 4, 0),
            ps_type(3, 2, 1, 3, 0),
            ps_type(5, 2, 2, 7, 2),
            cusp_type(3, 1, 1, 1),
            cusp_type(5, 1, 2, 3),
            cusp_type(3, 2, 1, 2),
        ] {
            let params = tau.params();
            for shape in enumerate_shapes(&tau) {
                let gs = gamma_star(&tau, &shape);
                let (c, d) = cd_vectors(&tau, &shape);
                for i in 0..params.f_prime as usize {
                    let prev = (i + params.f_prime as usize - 1) % params.f_prime as usize;
                    let lhs_a = params.p as i128
                        * least_residue(d[prev] as i128 - c[prev] as i128, params.e_kk) as i128;
                    let lhs_b = least_residue(c[i] as i128 - d[i] as i128, params.e_kk) as i128;
                    if shape.is_transition(i as i64) {
                        assert_eq!(lhs_a - lhs_b, gs[i] as i128 * params.e_kk as i128);
                    } else if !tau.is_scalar() {
                        assert_eq!(lhs_a + lhs_b, (gs[i] as i128 + 1) * params.e_kk as i128);
                    }
                }
            }
        }
    }

    #[test]
    fn refined_shape_examples() {
        // f' = 1: J = {0} has no transition; y_0 ranges over {0, 1}
        let t = ps_type(3, 1, 1, 1, 0);
        let j = Shape::from_members(vec![true]);
        let refined = enumerate_refined(&t, &j);
        assert_eq!(refined.len(), 2);
        assert_eq!(maximal_refined(&t, &j).r, vec![2]);

        // f = 2 instance: J = {0} transitions at both indices; y forced
        let t2 = ps_type(3, 2, 1, 4, 0);
        let j2 = Shape::from_members(vec![true, false]);
        let refined = enumerate_refined(&t2, &j2);
        assert_eq!(refined.len(), 1);
        assert_eq!(refined[0].r, vec![4, 4]);

        // count = product of the per-index ranges
        let t3 = ps_type(3, 1, 2, 1, 0);
        let refined = enumerate_refined(&t3, &Shape::from_members(vec![true]));
        assert_eq!(refined.len(), 3); // y_0 in {0,1,2}
    }

    #[test]
    fn build_pair_examples() {
        let t = ps_type(3, 2, 1, 4, 0);
        let j = Shape::from_members(vec![true, false]);
        let (m, n) = build_pair(&t, &maximal_refined(&t, &j));
        assert_eq!(m.r(), &[4, 4]);
        assert_eq!(m.c(), &[4, 0]);
        assert_eq!(n.r(), &[4, 4]);
        assert_eq!(n.c(), &[0, 4]);

        // cuspidal exceptional instance
        let c = cusp_type(3, 1, 1, 1);
        let j0 = Shape::from_members(vec![true, false]);
        let (m, n) = build_pair(&c, &maximal_refined(&c, &j0));
        assert_eq!(m.r(), &[2, 2]);
        assert_eq!(m.c(), &[1, 1]);
        assert_eq!(n.r(), &[6, 6]);
        assert_eq!(n.c(), &[3, 3]);

        // r + s = e' by construction
        assert!(m.r().iter().zip(n.r()).all(|(a, b)| a + b == 8));
    }

    #[test]
    fn pair_type_checks() {
        let t = ps_type(3, 2, 1, 4, 0);
        let j = Shape::from_members(vec![true, false]);
        let (m, n) = build_pair(&t, &maximal_refined(&t, &j));
        assert!(pair_has_type(&m, &n, &t));
        assert_eq!(
            shape_of_pair(&m, &n, &t),
            Some(Shape::from_members(vec![true, false]))
        );
        // swapping c and d wholesale keeps the multiset condition
        assert!(pair_has_type(&n, &m, &t));

        // perturbing r breaks the determinant condition
        let bad = make_rank_one(
            m.params(),
            vec![3, 4],
            m.a().to_vec(),
            vec![least_residue(4 + 1, 8), 0],
        );
        if let Ok(bad) = bad {
            assert!(!pair_has_type(&bad, &n, &t));
        }
    }

    #[test]
    fn cuspidal_transitions_are_symmetric() {
        let c = cusp_type(3, 2, 1, 2);
        for shape in enumerate_shapes(&c) {
            for i in 0..c.params().f_prime as i64 {
                assert_eq!(
                    shape.is_transition(i),
                    shape.is_transition(i + c.params().f as i64)
                );
            }
        }
    }

    #[test]
    fn p_tau_cardinality_bound() {
        for tau in [
            ps_type(3, 2, 1, 4, 0),
            ps_type(5, 2, 1, 7, 0),
            cusp_type(5, 1, 1, 2),
        ] {
            let gamma = tau.gamma_digits();
            let p = tau.params().p;
            let count = p_tau(&tau).len();
            assert!(count <= 1 << tau.params().f);
            if gamma.iter().all(|&g| g != 0 && g != p - 1) {
                assert_eq!(count, 1 << tau.params().f);
            }
        }
    }
}
