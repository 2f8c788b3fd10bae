//! Rank one Breuil-Kisin modules with tame descent data.
//!
//! A module is the data M(r, a, c): on the i-th embedding component it
//! is F[[u]] m_i, Frobenius sends 1 (x) m_{i-1} to a_i u^{r_i} m_i, and
//! the descent action is through the residue c_i mod e(K'/K). The
//! structure constants are periodic with period dividing f and satisfy
//! p c_{i-1} = c_i + r_i mod e(K'/K).

use crate::error::{BkError, Result};
use crate::field::Elt;
use crate::params::{least_residue, mod_pow, AmbientParams, TypeKind};

#[derive(Debug, Clone, PartialEq)]
pub struct RankOneBK {
    params: AmbientParams,
    r: Vec<u64>,
    a: Vec<Elt>,
    c: Vec<u64>,
}

/// A tame character of inertia in the sigma_0 normalization: the
/// character is sigma_0 . h^w, together with the value of the
/// unramified part on geometric Frobenius.
///
/// For cuspidal ambients the unramified part is stored in the
/// restricted-to-L normalization (the product of the first f structure
/// constants, as in the generic fibre formula).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InertialCharacter {
    pub w: u64,
    pub unram: Elt,
}

impl InertialCharacter {
    /// Whether the inertial part extends to G_K in the cuspidal
    /// setting: (p^f - 1) w = 0 mod (p^f' - 1).
    pub fn extends_to_gk(&self, params: &AmbientParams) -> bool {
        let pf = mod_pow(params.p, params.f, params.e_kk);
        least_residue((pf as i128 - 1) * self.w as i128, params.e_kk) == 0
    }
}

/// Validates and constructs M(r, a, c). Vectors are indexed by Z/f'Z.
pub fn make_rank_one(
    params: &AmbientParams,
    r: Vec<u64>,
    a: Vec<Elt>,
    c: Vec<u64>,
) -> Result<RankOneBK> {
    let fp = params.f_prime as usize;
    if r.len() != fp || a.len() != fp || c.len() != fp {
        return Err(BkError::InvalidSpec(format!(
            "structure vectors must have length f' = {fp}"
        )));
    }
    let f = params.f as usize;
    for i in 0..fp {
        if r[i] > params.e_prime {
            return Err(BkError::OutOfRange(format!(
                "r[{i}] = {} outside 0..={}",
                r[i], params.e_prime
            )));
        }
        if c[i] >= params.e_kk {
            return Err(BkError::OutOfRange(format!(
                "c[{i}] = {} is not a residue mod {}",
                c[i], params.e_kk
            )));
        }
        if a[i].is_zero() {
            return Err(BkError::OutOfRange(format!("a[{i}] must be nonzero")));
        }
        if r[i] != r[(i + f) % fp] || c[i] != c[(i + f) % fp] || a[i] != a[(i + f) % fp] {
            return Err(BkError::NotPeriodic);
        }
    }
    for i in 0..fp {
        let prev = (i + fp - 1) % fp;
        let lhs = least_residue(params.p as i128 * c[prev] as i128, params.e_kk);
        let rhs = least_residue(c[i] as i128 + r[i] as i128, params.e_kk);
        if lhs != rhs {
            return Err(BkError::BadCongruence(format!(
                "p c[{prev}] = {lhs} but c[{i}] + r[{i}] = {rhs} mod {}",
                params.e_kk
            )));
        }
    }
    Ok(RankOneBK {
        params: params.clone(),
        r,
        a,
        c,
    })
}

impl RankOneBK {
    pub fn params(&self) -> &AmbientParams {
        &self.params
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn a(&self) -> &[Elt] {
        &self.a
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    pub fn r_at(&self, i: i64) -> u64 {
        self.r[self.params.idx(i)]
    }

    pub fn a_at(&self, i: i64) -> Elt {
        self.a[self.params.idx(i)]
    }

    pub fn c_at(&self, i: i64) -> u64 {
        self.c[self.params.idx(i)]
    }

    /// The alpha invariants: the unique integer solution of
    /// p alpha_{i-1} - alpha_i = r_i over Z/f'Z.
    pub fn alpha(&self) -> Vec<i64> {
        let fp = self.params.f_prime as usize;
        let p = self.params.p as i128;
        let denom = {
            let mut acc: i128 = 1;
            for _ in 0..fp {
                acc *= p;
            }
            acc - 1
        };
        let alpha: Vec<i64> = (0..fp as i64)
            .map(|i| {
                // p^{f'-1} r_{i-f'+1} + ... + p^0 r_i
                let mut num: i128 = 0;
                for t in 0..fp as i64 {
                    num = num * p + self.r_at(i - (fp as i64) + 1 + t) as i128;
                }
                assert!(
                    num % denom == 0,
                    "alpha integrality is forced by the congruence invariant"
                );
                i64::try_from(num / denom).expect("alpha fits i64 at desk scale")
            })
            .collect();
        for i in 0..fp {
            let prev = (i + fp - 1) % fp;
            debug_assert_eq!(
                p as i64 * alpha[prev] - alpha[i],
                self.r[i] as i64,
                "alpha recurrence"
            );
        }
        alpha
    }

    /// The attached Galois character, sigma_0-normalized: exponent
    /// c_0 - alpha_0 mod e(K'/K) and unramified part prod_{i<f} a_i.
    pub fn galois_char(&self) -> InertialCharacter {
        let alpha = self.alpha();
        let e_kk = self.params.e_kk;
        let w = least_residue(self.c[0] as i128 - alpha[0] as i128, e_kk);
        // The normalized exponent p^{f'-i}(c_i - alpha_i) is independent
        // of the index used to read it off.
        if cfg!(debug_assertions) {
            for i in 0..self.params.f_prime as usize {
                let wi = least_residue(
                    mod_pow(self.params.p, self.params.f_prime - i as u32, e_kk) as i128
                        * (self.c[i] as i128 - alpha[i] as i128),
                    e_kk,
                );
                debug_assert_eq!(wi, w, "character exponent must not depend on the index");
            }
        }
        let f = self.params.f as usize;
        let unram = self.params.field().product(self.a[..f].iter().copied());
        InertialCharacter { w, unram }
    }

    /// Whether the attached characters agree: c_i - alpha_i(M) =
    /// d_i - alpha_i(N) mod e(K'/K) and equal unramified parts.
    pub fn chars_equal(&self, other: &RankOneBK) -> bool {
        assert_eq!(self.params, other.params, "pair must share params");
        self.galois_char() == other.galois_char()
    }

    /// dim Hom(M, N): 1 iff the characters agree and alpha_i(M) >=
    /// alpha_i(N) for every i, else 0.
    pub fn hom_dim(&self, other: &RankOneBK) -> u64 {
        if !self.chars_equal(other) {
            return 0;
        }
        let (am, an) = (self.alpha(), other.alpha());
        if am.iter().zip(&an).all(|(m, n)| m >= n) {
            1
        } else {
            0
        }
    }

    /// Rescales Phi_0 by the unit lambda.
    pub fn unramified_twist(&self, lambda: Elt) -> RankOneBK {
        assert!(!lambda.is_zero(), "twist by zero");
        let mut out = self.clone();
        let f = self.params.f as usize;
        let fp = self.params.f_prime as usize;
        // Keep the period-f invariant: component 0 of every f-block.
        let mut i = 0;
        while i < fp {
            out.a[i] = self.params.field().mul(out.a[i], lambda);
            i += f;
        }
        out
    }

    /// The twist M^(f) by the nontrivial automorphism of L/K:
    /// structure constants shift by f. Cuspidal ambients only.
    pub fn frobenius_twist(&self) -> Result<RankOneBK> {
        if self.params.kind != TypeKind::Cuspidal {
            return Err(BkError::NotCuspidal);
        }
        Ok(self.shift_by_f())
    }

    /// Index shift by f; used for the cuspidal twist and for the
    /// over-L base change analysis.
    pub(crate) fn shift_by_f(&self) -> RankOneBK {
        let fp = self.params.f_prime as usize;
        let f = self.params.f as usize;
        let shift = |k: usize| (k + f) % fp;
        RankOneBK {
            params: self.params.clone(),
            r: (0..fp).map(|i| self.r[shift(i)]).collect(),
            a: (0..fp).map(|i| self.a[shift(i)]).collect(),
            c: (0..fp).map(|i| self.c[shift(i)]).collect(),
        }
    }

    /// Reinterprets a cuspidal-ambient module over L, where the
    /// structure vectors have full period f' = 2f.
    pub fn restrict_to_l(&self) -> Result<RankOneBK> {
        let params_l = self.params.over_l()?;
        make_rank_one(&params_l, self.r.clone(), self.a.clone(), self.c.clone())
    }
}
