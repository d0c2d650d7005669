//! Euler r-means: triangular binomial summability transform and its core.
//!
//! Row `n` (0-based) carries the weights `C(n,k) (1-r)^{n-k} r^k`. Rows are
//! generated by the multiplicative recurrence in a mantissa/exponent
//! representation, so entries that underflow `f64` (e.g. `2^{-2048}` at
//! r = 1/2) never poison the row, and large rows keep their row-sum-one
//! identity to near machine precision.

use crate::core::{core_by_support, CoreParams, CoreReport};
use crate::error::{Error, Result};
use crate::ideal::make_fin;
use crate::scalar::Real;
use crate::sequence::{Scale, SequenceWindow};

/// `m · 2^e` with normalized positive mantissa, plus a sign.
#[derive(Clone, Copy, Debug)]
struct Scaled {
    mantissa: f64, // in [1, 2) or exactly 0
    exp: i64,
    sign: f64,
}

impl Scaled {
    fn zero() -> Self {
        Scaled {
            mantissa: 0.0,
            exp: 0,
            sign: 1.0,
        }
    }

    fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        let mut s = Scaled {
            mantissa: x.abs(),
            exp: 0,
            sign: x.signum(),
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.mantissa == 0.0 {
            self.exp = 0;
            return;
        }
        while self.mantissa >= 2.0 {
            self.mantissa /= 2.0;
            self.exp += 1;
        }
        while self.mantissa < 1.0 {
            self.mantissa *= 2.0;
            self.exp -= 1;
        }
    }

    fn mul_f64(&mut self, f: f64) {
        if f == 0.0 {
            *self = Self::zero();
            return;
        }
        self.sign *= f.signum();
        self.mantissa *= f.abs();
        self.normalize();
    }

    /// Collapse to f64; out-of-range exponents become 0 with an overflow
    /// report for the large side.
    fn to_f64(self) -> std::result::Result<f64, ()> {
        if self.mantissa == 0.0 {
            return Ok(0.0);
        }
        if self.exp > 1023 {
            return Err(());
        }
        if self.exp < -1074 {
            return Ok(0.0);
        }
        // Exact power-of-two scaling in two steps to reach subnormals.
        let val = if self.exp >= -1022 {
            self.mantissa * exp2i(self.exp)
        } else {
            (self.mantissa * exp2i(self.exp + 52)) * exp2i(-52)
        };
        Ok(self.sign * val)
    }
}

/// Exact `2^e` for `e` in the normal range.
fn exp2i(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// Matrix row `a_{n,0..=n}` for the Euler r-mean, 0-based `n`.
pub fn euler_row(n: usize, r: f64) -> Result<Vec<f64>> {
    if !(r.is_finite() && r.abs() <= 4.0) {
        return Err(Error::parameter(
            "r",
            format!("|r| must be finite and at most 4, got {r}"),
        ));
    }
    if r == 0.0 {
        let mut row = vec![0.0; n + 1];
        row[0] = 1.0;
        return Ok(row);
    }
    if r == 1.0 {
        let mut row = vec![0.0; n + 1];
        row[n] = 1.0;
        return Ok(row);
    }
    // a_{n,0} = (1-r)^n by exponent-tracked squaring, then
    // a_{n,k+1} = a_{n,k} · (n-k)/(k+1) · r/(1-r).
    let mut first = Scaled::from_f64(1.0);
    let mut base = Scaled::from_f64(1.0 - r);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            first.sign *= base.sign;
            first.mantissa *= base.mantissa;
            first.exp += base.exp;
            first.normalize();
        }
        let b2 = Scaled {
            mantissa: base.mantissa * base.mantissa,
            exp: 2 * base.exp,
            sign: base.sign * base.sign,
        };
        base = b2;
        base.normalize();
        e >>= 1;
    }

    let ratio = r / (1.0 - r);
    let mut row = Vec::with_capacity(n + 1);
    let mut term = first;
    for k in 0..=n {
        match term.to_f64() {
            Ok(v) => row.push(v),
            Err(()) => return Err(Error::EulerOverflow { row: n, r }),
        }
        if k < n {
            term.mul_f64((n - k) as f64 / (k + 1) as f64);
            term.mul_f64(ratio);
        }
    }
    Ok(row)
}

/// Transform `y_n = Σ_{k<=n} a_{n,k} x_k` applied per coordinate, with
/// Neumaier-compensated summation. The window's 1-based position `i` plays
/// the 0-based matrix index `i - 1`.
pub fn euler_transform<T: Real>(x: &SequenceWindow<T>, r: f64) -> Result<SequenceWindow<T>> {
    let n = match x.scale() {
        Scale::Single { n } => n,
        Scale::Double { .. } => {
            return Err(Error::parameter(
                "window",
                "the Euler transform applies to single sequences",
            ))
        }
    };
    let dim = x.dim();
    let mut values: Vec<T> = Vec::with_capacity(dim * n);
    for row_idx in 0..n {
        let row = euler_row(row_idx, r)?;
        for d in 0..dim {
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for (k, &a) in row.iter().enumerate() {
                let term = a * x.point(k)[d].approx_f64();
                let t = sum + term;
                comp += if sum.abs() >= term.abs() {
                    (sum - t) + term
                } else {
                    (term - t) + sum
                };
                sum = t;
            }
            let y = sum + comp;
            if !y.is_finite() {
                return Err(Error::EulerOverflow { row: row_idx, r });
            }
            values.push(T::of_f64(y));
        }
    }
    SequenceWindow::new(
        dim,
        Scale::Single { n },
        values,
        format!("euler({r})|{}", x.source()),
    )
}

/// Euler r-core: the plain (finite-set ideal) core of the transformed
/// sequence.
pub fn euler_core<T: Real>(
    x: &SequenceWindow<T>,
    r: f64,
    params: &CoreParams<T>,
) -> Result<CoreReport<T>> {
    let y = euler_transform(x, r)?;
    core_by_support(&y, &make_fin(), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{generate, GeneratorSpec};
    use num_bigint::BigInt;
    use num_rational::Ratio;
    use num_traits::{One, ToPrimitive};

    #[test]
    fn rows_sum_to_one_for_r_half() {
        for n in [0usize, 1, 2, 7, 64, 257, 1024, 2048] {
            let row = euler_row(n, 0.5).unwrap();
            let sum: f64 = row.iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12, "row {n} sums to {sum}");
        }
    }

    #[test]
    fn rows_match_exact_rationals() {
        // Exact oracle: C(n,k) (1-r)^{n-k} r^k in big rationals, r = 3/4.
        let r = Ratio::<BigInt>::new(3.into(), 4.into());
        for n in [0usize, 1, 5, 30, 120] {
            let row = euler_row(n, 0.75).unwrap();
            let mut c = Ratio::<BigInt>::one();
            let one_minus = Ratio::<BigInt>::one() - r.clone();
            for (k, &a) in row.iter().enumerate() {
                let exact = c.clone()
                    * one_minus.pow((n - k) as i32)
                    * r.pow(k as i32);
                let e = exact.to_f64().unwrap();
                assert!(
                    (a - e).abs() <= 1e-13 * e.abs().max(1e-300),
                    "a[{n}][{k}]: {a} vs {e}"
                );
                if k < n {
                    c = c * Ratio::<BigInt>::new(
                        BigInt::from(n - k),
                        BigInt::from(k + 1),
                    );
                }
            }
        }
    }

    #[test]
    fn tiny_entries_underflow_to_zero_not_poison() {
        // At n = 2048 the first entry is 2^-2048, below f64 range.
        let row = euler_row(2048, 0.5).unwrap();
        assert_eq!(row[0], 0.0);
        assert!(row[1024] > 0.0);
        let sum: f64 = row.iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn constant_is_fixed_by_the_transform() {
        let c: SequenceWindow<f64> = generate(
            &GeneratorSpec::Cycle {
                points: vec![vec![0.6]],
            },
            300,
        )
        .unwrap();
        let y = euler_transform(&c, 0.5).unwrap();
        for &v in y.scalars().unwrap() {
            assert!((v - 0.6).abs() < 1e-12);
        }
    }

    #[test]
    fn alt_collapses_to_zero_at_r_half() {
        // Binomial-theorem oracle: sum_k C(n,k) (1/2)^n (-1)^{k+1} = 0 for
        // n >= 1; the window's first position is matrix row 0 with value -1.
        let x: SequenceWindow<f64> = generate(&GeneratorSpec::Alt, 600).unwrap();
        let y = euler_transform(&x, 0.5).unwrap();
        let v = y.scalars().unwrap();
        assert_eq!(v[0], -1.0);
        for (i, &val) in v.iter().enumerate().skip(1) {
            assert!(val.abs() < 1e-12, "y[{i}] = {val}");
        }
        // Direct dense matrix multiply confirms a middle row.
        let row = euler_row(9, 0.5).unwrap();
        let manual: f64 = row
            .iter()
            .enumerate()
            .map(|(k, &a)| a * x.scalars().unwrap()[k])
            .sum();
        assert!((manual - v[9]).abs() < 1e-15);
    }

    #[test]
    fn r_one_is_identity() {
        let x: SequenceWindow<f64> = generate(&GeneratorSpec::AltDecay, 128).unwrap();
        let y = euler_transform(&x, 1.0).unwrap();
        assert_eq!(x.scalars().unwrap(), y.scalars().unwrap());
    }

    #[test]
    fn r_guard_and_overflow() {
        assert!(euler_row(10, 4.5).is_err());
        let x: SequenceWindow<f64> = generate(&GeneratorSpec::Alt, 3_000).unwrap();
        // r = 4 blows up combinatorially on long windows.
        match euler_transform(&x, 4.0) {
            Err(Error::EulerOverflow { .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn euler_core_examples() {
        let x: SequenceWindow<f64> = generate(&GeneratorSpec::Alt, 2_000).unwrap();
        // The transformed values carry summation crumbs of order 1e-17, so
        // the core endpoints quantize to within one grid step of zero; a
        // finer grid keeps them well inside the 1e-2 target.
        let params = CoreParams {
            delta: 1e-3,
            ..CoreParams::default()
        };
        let half = euler_core(&x, 0.5, &params).unwrap();
        let d = half.result.diameter().unwrap();
        assert!(d <= 1e-2, "E-core of alt at r=1/2 has diameter {d}");
        let center = half.result.center().unwrap();
        assert!(center[0].abs() <= 1e-2);

        let id = euler_core(&x, 1.0, &params).unwrap();
        let verts = id.result.vertices().unwrap();
        let lo = verts.iter().map(|v| v[0]).fold(f64::MAX, f64::min);
        let hi = verts.iter().map(|v| v[0]).fold(f64::MIN, f64::max);
        assert!((lo + 1.0).abs() <= 1e-2 && (hi - 1.0).abs() <= 1e-2);

        let c: SequenceWindow<f64> = generate(
            &GeneratorSpec::Cycle {
                points: vec![vec![0.25]],
            },
            1_000,
        )
        .unwrap();
        let cc = euler_core(&c, 0.5, &params).unwrap();
        assert!((cc.result.center().unwrap()[0] - 0.25).abs() <= 1e-9);
    }
}
