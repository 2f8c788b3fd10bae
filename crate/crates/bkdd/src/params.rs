//! The ambient arithmetic context: p, f, e and the derived quantities
//! for the standard choice of tame extension K'/K.

use crate::error::{BkError, Result};
use crate::field::{field_create, FieldCtx};

/// Desk-scale cap on e' = e * (p^f' - 1).
const MAX_E_PRIME: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeKind {
    PrincipalSeries,
    Cuspidal,
    /// Scalar types, handled through the principal series code path.
    ScalarPs,
}

impl TypeKind {
    pub fn is_cuspidal(self) -> bool {
        matches!(self, TypeKind::Cuspidal)
    }
}

/// p, f, e together with f', e(K'/K) = p^f' - 1, e' = e * e(K'/K), and
/// the coefficient field.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientParams {
    pub p: u64,
    pub f: u32,
    pub e: u64,
    pub kind: TypeKind,
    pub f_prime: u32,
    pub e_kk: u64,
    pub e_prime: u64,
    field: FieldCtx,
}

impl AmbientParams {
    /// Builds the context; `m` is the coefficient field degree over F_p
    /// and defaults to f' (the smallest field containing every embedding
    /// of the residue field of K').
    pub fn new(p: u64, f: u32, e: u64, kind: TypeKind, m: Option<u32>) -> Result<AmbientParams> {
        if f == 0 || e == 0 {
            return Err(BkError::InvalidSpec("f and e must be positive".into()));
        }
        let f_prime = match kind {
            TypeKind::Cuspidal => 2 * f,
            _ => f,
        };
        let mut e_kk: u64 = 1;
        for _ in 0..f_prime {
            e_kk = e_kk
                .checked_mul(p)
                .filter(|&x| x <= MAX_E_PRIME)
                .ok_or_else(|| BkError::InvalidSpec("p^f' exceeds the desk-scale cap".into()))?;
        }
        e_kk -= 1;
        let e_prime = e
            .checked_mul(e_kk)
            .filter(|&x| x <= MAX_E_PRIME)
            .ok_or_else(|| BkError::InvalidSpec("e' exceeds the desk-scale cap".into()))?;
        let field = field_create(p, m.unwrap_or(f_prime.min(12)))?;
        Ok(AmbientParams {
            p,
            f,
            e,
            kind,
            f_prime,
            e_kk,
            e_prime,
            field,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// [K : Q_p] = e f.
    pub fn degree_over_qp(&self) -> u64 {
        self.e * self.f as u64
    }

    /// Index reduced into Z/f'Z.
    pub fn idx(&self, i: i64) -> usize {
        i.rem_euclid(self.f_prime as i64) as usize
    }

    /// The same data viewed over the unramified quadratic extension L:
    /// inertial degree doubles, the tame extension K'/L is totally
    /// ramified, and the restricted type is principal series.
    pub fn over_l(&self) -> Result<AmbientParams> {
        if !self.kind.is_cuspidal() {
            return Err(BkError::NotCuspidal);
        }
        Ok(AmbientParams {
            p: self.p,
            f: 2 * self.f,
            e: self.e,
            kind: TypeKind::PrincipalSeries,
            f_prime: self.f_prime,
            e_kk: self.e_kk,
            e_prime: self.e_prime,
            field: self.field.clone(),
        })
    }
}

/// Least non-negative residue of x mod m (the bracket [x]).
pub fn least_residue(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// p^k mod m.
pub fn mod_pow(p: u64, k: u32, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let base = p as u128 % m as u128;
    for _ in 0..k {
        acc = acc * base % m as u128;
    }
    acc as u64
}
