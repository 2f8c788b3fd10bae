//! Truncated Laurent vectors in u over GF(p^m).
//!
//! A value carries an explicit degree window [lo, hi); coefficients
//! outside the window are zero by convention, and any operation whose
//! exact result has support escaping the window fails loudly instead of
//! truncating. Quotients by u-power ideals are taken with the explicit
//! [`TruncLaurent::truncate_at_or_above`] operation.

use crate::error::{BkError, Result};
use crate::field::{Elt, FieldCtx};

/// Representable degree range [lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Window {
        assert!(lo <= hi, "empty-or-negative window");
        Window { lo, hi }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, deg: i64) -> bool {
        deg >= self.lo && deg < self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncLaurent {
    win: Window,
    /// Dense coefficients for degrees win.lo .. win.hi.
    coeffs: Vec<Elt>,
}

impl TruncLaurent {
    pub fn zero(win: Window) -> TruncLaurent {
        TruncLaurent {
            win,
            coeffs: vec![Elt::ZERO; win.len()],
        }
    }

    pub fn monomial(win: Window, deg: i64, c: Elt) -> Result<TruncLaurent> {
        let mut out = TruncLaurent::zero(win);
        out.set(deg, c)?;
        Ok(out)
    }

    pub fn window(&self) -> Window {
        self.win
    }

    /// Coefficient at any degree; zero outside the window.
    pub fn coeff(&self, deg: i64) -> Elt {
        if self.win.contains(deg) {
            self.coeffs[(deg - self.win.lo) as usize]
        } else {
            Elt::ZERO
        }
    }

    pub fn set(&mut self, deg: i64, c: Elt) -> Result<()> {
        if !self.win.contains(deg) {
            if c.is_zero() {
                return Ok(());
            }
            return Err(BkError::WindowOverflow(format!(
                "degree {deg} outside [{}, {})",
                self.win.lo, self.win.hi
            )));
        }
        self.coeffs[(deg - self.win.lo) as usize] = c;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degrees with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.win.lo + i as i64)
            .collect()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn min_deg(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.win.lo + i as i64)
    }

    /// Highest degree with a nonzero coefficient.
    pub fn max_deg(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|i| self.win.lo + i as i64)
    }

    /// Re-windows the value; errors if nonzero support would be lost.
    pub fn resize(&self, win: Window) -> Result<TruncLaurent> {
        let mut out = TruncLaurent::zero(win);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.set(self.win.lo + i as i64, c)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &TruncLaurent, f: &FieldCtx) -> Result<TruncLaurent> {
        let win = Window::new(self.win.lo.min(other.win.lo), self.win.hi.max(other.win.hi));
        let mut out = TruncLaurent::zero(win);
        for deg in win.lo..win.hi {
            out.set(deg, f.add(self.coeff(deg), other.coeff(deg)))?;
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: Elt, f: &FieldCtx) -> TruncLaurent {
        TruncLaurent {
            win: self.win,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn neg(&self, f: &FieldCtx) -> TruncLaurent {
        TruncLaurent {
            win: self.win,
            coeffs: self.coeffs.iter().map(|&x| f.neg(x)).collect(),
        }
    }

    /// Exact product into the window `out_win`.
    pub fn mul(&self, other: &TruncLaurent, f: &FieldCtx, out_win: Window) -> Result<TruncLaurent> {
        let mut out = TruncLaurent::zero(out_win);
        for (i, &ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let da = self.win.lo + i as i64;
            for (j, &cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let deg = da + other.win.lo + j as i64;
                out.set(deg, f.add(out.coeff(deg), f.mul(ca, cb)))?;
            }
        }
        Ok(out)
    }

    /// Multiplication by c * u^deg into `out_win`.
    pub fn mul_monomial(
        &self,
        deg: i64,
        c: Elt,
        f: &FieldCtx,
        out_win: Window,
    ) -> Result<TruncLaurent> {
        let mut out = TruncLaurent::zero(out_win);
        for (i, &x) in self.coeffs.iter().enumerate() {
            if !x.is_zero() {
                out.set(self.win.lo + i as i64 + deg, f.mul(x, c))?;
            }
        }
        Ok(out)
    }

    /// Explicit quotient: kills every coefficient of degree >= deg.
    pub fn truncate_at_or_above(&self, deg: i64) -> TruncLaurent {
        let mut out = self.clone();
        for d in deg.max(out.win.lo)..out.win.hi {
            out.coeffs[(d - out.win.lo) as usize] = Elt::ZERO;
        }
        out
    }

    /// Explicit quotient on the other side: kills degrees < deg
    /// (the integral-part projection when deg = 0).
    pub fn truncate_below(&self, deg: i64) -> TruncLaurent {
        let mut out = self.clone();
        for d in out.win.lo..deg.min(out.win.hi) {
            out.coeffs[(d - out.win.lo) as usize] = Elt::ZERO;
        }
        out
    }
}

/// The p-power substitution u -> u^p; coefficients are untouched.
///
/// The coefficient semilinearity of the ambient Frobenius is absorbed
/// into the component indexing of rank one modules, so on each
/// component the substitution is coefficient-trivial.
pub fn frobenius_substitute(x: &TruncLaurent, p: u64) -> Result<TruncLaurent> {
    frobenius_substitute_into(x, p, x.window())
}

/// Same substitution with an explicit output window.
pub fn frobenius_substitute_into(
    x: &TruncLaurent,
    p: u64,
    out_win: Window,
) -> Result<TruncLaurent> {
    let mut out = TruncLaurent::zero(out_win);
    for (i, &c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            let deg = (x.win.lo + i as i64)
                .checked_mul(p as i64)
                .ok_or_else(|| BkError::WindowOverflow("degree overflow".into()))?;
            out.set(deg, c)?;
        }
    }
    Ok(out)
}
