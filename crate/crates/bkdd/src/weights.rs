//! Serre weight parameters attached to a shape, the closed form for
//! the character of N(J), and the central character identities.

use crate::error::{BkError, Result};
use crate::field::Elt;
use crate::params::{least_residue, mod_pow, TypeKind};
use crate::rank_one::InertialCharacter;
use crate::shapes::{p_tau, Shape, TameType};

/// A Serre weight: twist/symmetric-power exponents over Z/fZ, with the
/// determinant twist stored as a character of k^x (exponent mod
/// p^f - 1, sigma_0-normalized; unramified part trivial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreWeight {
    pub t: Vec<u64>,
    pub s: Vec<u64>,
    pub twist: InertialCharacter,
}

/// t_{J,i} over Z/f'Z: gamma_i + delta_{J^c}(i) when i-1 lies in J,
/// zero otherwise.
pub fn t_params(tau: &TameType, shape: &Shape) -> Vec<u64> {
    let gamma = tau.gamma_digits();
    (0..shape.f_prime() as i64)
        .map(|i| {
            if shape.contains(i - 1) {
                gamma[i as usize] + u64::from(!shape.contains(i))
            } else {
                0
            }
        })
        .collect()
}

/// s_{J,i} over Z/f'Z, unclamped (negative values signal J outside
/// P_tau): p-1-gamma_i-delta_{J^c}(i) when i-1 in J, else
/// gamma_i - delta_J(i).
pub fn s_params_raw(tau: &TameType, shape: &Shape) -> Vec<i64> {
    let gamma = tau.gamma_digits();
    let p = tau.params().p as i64;
    (0..shape.f_prime() as i64)
        .map(|i| {
            let g = gamma[i as usize] as i64;
            if shape.contains(i - 1) {
                p - 1 - g - i64::from(!shape.contains(i))
            } else {
                g - i64::from(shape.contains(i))
            }
        })
        .collect()
}

/// Exponent of theta for the cuspidal weight: the character
/// eta' prod (sigma'_i)^{t_i} of l^x is trivial on the norm-one
/// subgroup and descends through N_{l/k} to theta of k^x.
fn cuspidal_theta_exponent(tau: &TameType, t: &[u64]) -> Result<u64> {
    let params = tau.params();
    let e_kk = params.e_kk;
    let fp = params.f_prime;
    let mut w = tau.k0p() as i128;
    for (i, &ti) in t.iter().enumerate() {
        w += mod_pow(params.p, fp - i as u32, e_kk) as i128 * ti as i128;
    }
    let w = least_residue(w, e_kk);
    let pf = mod_pow(params.p, params.f, e_kk);
    let k_order = pf - 1; // p^f - 1
    for cand in 0..k_order {
        if least_residue((1 + pf as i128) * cand as i128, e_kk) == w {
            return Ok(cand);
        }
    }
    Err(BkError::InternalInconsistency(
        "cuspidal weight character does not factor through the norm".into(),
    ))
}

/// The Jordan-Holder factor parameters attached to J in P_tau.
pub fn jh_factor(tau: &TameType, shape: &Shape) -> Result<SerreWeight> {
    if !p_tau(tau).contains(shape) {
        return Err(BkError::NotInPTau);
    }
    let params = tau.params();
    let f = params.f as usize;
    let p = params.p;
    let t_raw = t_params(tau, shape);
    let s_raw = s_params_raw(tau, shape);
    for i in 0..params.f_prime as usize {
        if s_raw[i] < 0 || s_raw[i] >= p as i64 || t_raw[i] > p - 1 {
            return Err(BkError::InternalInconsistency(format!(
                "weight parameters out of range for J in P_tau: s = {s_raw:?}, t = {t_raw:?}"
            )));
        }
    }
    let s: Vec<u64> = s_raw[..f].iter().map(|&x| x as u64).collect();
    match params.kind {
        TypeKind::PrincipalSeries | TypeKind::ScalarPs => {
            assert!(
                t_raw.iter().any(|&ti| ti != p - 1),
                "a Serre weight never has every t_i = p - 1"
            );
            Ok(SerreWeight {
                t: t_raw,
                s,
                twist: InertialCharacter {
                    w: tau.k0p(),
                    unram: Elt::ONE,
                },
            })
        }
        TypeKind::Cuspidal => {
            for i in 0..f {
                assert_eq!(
                    s_raw[i],
                    s_raw[i + f],
                    "cuspidal weight parameters satisfy s_i = s_(i+f)"
                );
            }
            let theta = cuspidal_theta_exponent(tau, &t_raw)?;
            Ok(SerreWeight {
                t: vec![0; f],
                s,
                twist: InertialCharacter {
                    w: theta,
                    unram: Elt::ONE,
                },
            })
        }
    }
}

/// Closed form for T(N(J)): eta times the inverse of
/// prod_i (sigma_i . h)^{t_i}, sigma_0-normalized, unramified part 1.
pub fn char_of_nj_formula(tau: &TameType, shape: &Shape) -> InertialCharacter {
    let params = tau.params();
    let e_kk = params.e_kk;
    let t = t_params(tau, shape);
    let mut w = tau.k0() as i128;
    for (i, &ti) in t.iter().enumerate() {
        w -= mod_pow(params.p, params.f_prime - i as u32, e_kk) as i128 * ti as i128;
    }
    InertialCharacter {
        w: least_residue(w, e_kk),
        unram: Elt::ONE,
    }
}

/// Injectivity of J -> T(N(J)) on P_tau, together with the range
/// checks 0 <= t_i <= p-1 and not all t_i = p-1.
pub fn injectivity_check(tau: &TameType) -> bool {
    let p = tau.params().p;
    let shapes = p_tau(tau);
    let mut seen = Vec::new();
    for shape in &shapes {
        let t = t_params(tau, shape);
        if t.iter().any(|&ti| ti > p - 1) || t.iter().all(|&ti| ti == p - 1) {
            return false;
        }
        let ch = char_of_nj_formula(tau, shape);
        if seen.contains(&ch) {
            return false;
        }
        seen.push(ch);
    }
    true
}

/// The central character identity relating eta, eta' and the weight
/// parameters: an exponent congruence mod p^f - 1 in the principal
/// series case and mod p^2f - 1 in the cuspidal case.
pub fn central_char_check(tau: &TameType, shape: &Shape) -> bool {
    let params = tau.params();
    let f = params.f;
    let t = t_params(tau, shape);
    let s = s_params_raw(tau, shape);
    match params.kind {
        TypeKind::PrincipalSeries | TypeKind::ScalarPs => {
            // eta = eta' * prod omega_{sigma_i}^{s_i + 2 t_i} on I_K
            let modulus = params.e_kk; // p^f - 1 here
            let mut rhs = tau.k0p() as i128;
            for i in 0..f {
                rhs += mod_pow(params.p, f - i, modulus) as i128
                    * (s[i as usize] + 2 * t[i as usize] as i64) as i128;
            }
            least_residue(tau.k0() as i128 - rhs, modulus) == 0
        }
        TypeKind::Cuspidal => {
            // eta eta' = (theta~|_{I_K})^2 prod omega_{sigma_i}^{s_i},
            // with k-level characters lifted through the norm (exponent
            // scale 1 + p^f) to the l-level modulus p^2f - 1.
            let modulus = params.e_kk;
            let Ok(theta) = cuspidal_theta_exponent(tau, &t) else {
                return false;
            };
            let pf = mod_pow(params.p, f, modulus);
            let mut rhs = 2 * (1 + pf as i128) * theta as i128;
            for i in 0..f {
                rhs += (1 + pf as i128)
                    * mod_pow(params.p, f - i, modulus) as i128
                    * s[i as usize] as i128;
            }
            least_residue(tau.k0() as i128 + tau.k0p() as i128 - rhs, modulus) == 0
        }
    }
}
