//! Eulerian polynomials of types A and B, the Eulerian representation of the auxiliary
//! families, and the ratios `R_n = T_{n+1} / T_n` on the cut plane.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::aux_family;
use crate::family::{EulerianType, Family};
use crate::ratpoly::{f64_to_rat, int, rat_to_f64, RatNum, RatPoly};

/// Largest order accepted by the brute-force oracle (`2^8 8!` signed permutations).
pub const ORACLE_MAX: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianTable {
    pub kind: EulerianType,
    pub polys: Vec<RatPoly>,
}

/// Rows `0..=m_max` from the descent recurrences
/// `A_{m+1} = (1 + m t) A_m + t(1-t) A_m'` and
/// `B_{m+1} = (1 + (2m+1) t) B_m + 2t(1-t) B_m'`.
pub fn build_table(kind: EulerianType, m_max: usize) -> EulerianTable {
    let t1mt = RatPoly::from_ints(&[0, 1, -1]);
    let mut polys = vec![RatPoly::one()];
    for m in 0..m_max as i64 {
        let prev = polys.last().unwrap();
        let (lin, dcoef) = match kind {
            EulerianType::A => (RatPoly::from_ints(&[1, m]), int(1)),
            EulerianType::B => (RatPoly::from_ints(&[1, 2 * m + 1]), int(2)),
        };
        let next = &(&lin * prev) + &(&t1mt * &prev.differentiate()).scale(&dcoef);
        polys.push(next);
    }
    EulerianTable { kind, polys }
}

impl EulerianTable {
    pub fn get(&self, m: usize) -> Option<&RatPoly> {
        self.polys.get(m)
    }

    pub fn m_max(&self) -> usize {
        self.polys.len() - 1
    }

    /// `E_m(u) / m!` in double precision; dividing by `m!` keeps large rows in range.
    pub fn eval_normalized(&self, m: usize, u: Complex64) -> Complex64 {
        let p = &self.polys[m];
        let fact = RatNum::from_integer((1..=m as u64).fold(BigInt::one(), |a, k| a * k));
        let mut acc = Complex64::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc * u + rat_to_f64(&(c / &fact));
        }
        acc
    }
}

/// Exhaustive descent generating polynomial over the symmetric group (type A) or the
/// hyperoctahedral group (type B, with the convention `sigma(0) = 0`).
pub fn oracle_eulerian(kind: EulerianType, m: usize) -> Result<RatPoly> {
    if m > ORACLE_MAX {
        return Err(Error::InvalidArgument(format!(
            "oracle enumeration limited to m <= {ORACLE_MAX}, got {m}"
        )));
    }
    let mut counts = vec![0u64; m + 1];
    let mut perm: Vec<i64> = (1..=m as i64).collect();
    let signs: u32 = match kind {
        EulerianType::A => 1,
        EulerianType::B => 1 << m,
    };
    for_each_permutation(&mut perm, 0, &mut |p| {
        for mask in 0..signs {
            let des = match kind {
                EulerianType::A => p.windows(2).filter(|w| w[0] > w[1]).count(),
                EulerianType::B => {
                    let mut prev = 0i64;
                    let mut des = 0;
                    for (i, &v) in p.iter().enumerate() {
                        let v = if mask >> i & 1 == 1 { -v } else { v };
                        if prev > v {
                            des += 1;
                        }
                        prev = v;
                    }
                    des
                }
            };
            counts[des] += 1;
        }
    });
    Ok(RatPoly::new(counts.into_iter().map(|c| RatNum::from_integer(c.into())).collect()))
}

fn for_each_permutation(p: &mut [i64], k: usize, visit: &mut impl FnMut(&[i64])) {
    if k + 1 >= p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// `T_n(t^2)` from the Eulerian representation
/// `pre * (1+t)^(2n-1) / t * E_m(-(1-t)/(1+t))`, evaluated exactly.
pub fn closed_form_eval(family: Family, n: u64, t: &RatNum) -> Result<RatNum> {
    let imp = family.imp();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let m = imp.eulerian_index(n);
    let table = build_table(imp.eulerian_type(), m);
    closed_form_eval_with(&table, family, n, t)
}

pub fn closed_form_eval_with(table: &EulerianTable, family: Family, n: u64, t: &RatNum) -> Result<RatNum> {
    let imp = family.imp();
    if t.is_zero() {
        return Err(Error::InvalidArgument("t = 0 is a pole of the closed form".into()));
    }
    let one_plus = RatNum::one() + t;
    if one_plus.is_zero() {
        return Err(Error::InvalidArgument("t = -1 is outside the closed form's domain".into()));
    }
    if imp.eulerian_type() != table.kind {
        return Err(Error::InvalidArgument("Eulerian table has the wrong type".into()));
    }
    let m = imp.eulerian_index(n);
    let e = table
        .get(m)
        .ok_or_else(|| Error::InvalidArgument(format!("Eulerian table too short for m = {m}")))?;
    let u = -(RatNum::one() - t) / &one_plus;
    let power = num_traits::pow(one_plus, (2 * n - 1) as usize);
    Ok(imp.eulerian_prefactor(n) * power / t * e.evaluate(&u))
}

fn reject_cut(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() || (z.im == 0.0 && z.re <= 1.0) {
        return Err(Error::OnCut { re: z.re, im: z.im });
    }
    Ok(())
}

/// `u(z) = (sqrt z - 1)/(sqrt z + 1)` with the principal root (`Re sqrt z > 0`).
pub fn u_map(z: Complex64) -> Result<Complex64> {
    reject_cut(z)?;
    let s = z.sqrt();
    Ok((s - 1.0) / (s + 1.0))
}

/// `R_n(z)` from the Eulerian quotient formula.
pub fn ratio_r(family: Family, n: u64, z: Complex64) -> Result<Complex64> {
    let imp = family.imp();
    let table = build_table(imp.eulerian_type(), imp.eulerian_index(n + 1));
    ratio_r_with(&table, family, n, z)
}

pub fn ratio_r_with(table: &EulerianTable, family: Family, n: u64, z: Complex64) -> Result<Complex64> {
    let imp = family.imp();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let u = u_map(z)?;
    let (lo, hi) = (imp.eulerian_index(n), imp.eulerian_index(n + 1));
    if table.m_max() < hi {
        return Err(Error::InvalidArgument(format!("Eulerian table too short for m = {hi}")));
    }
    let den = table.eval_normalized(lo, u);
    if den == Complex64::zero() || !den.is_finite() {
        return Err(Error::Pole(format!("E_{lo}(u) vanishes at z = {z}")));
    }
    let num = table.eval_normalized(hi, u);
    let falling: f64 = (lo + 1..=hi).map(|k| k as f64).product();
    let s1 = z.sqrt() + 1.0;
    Ok(-imp.ratio_prefactor(n) * s1 * s1 * (num / den) * falling)
}

/// `T_{n+1}(z) / T_n(z)` from exact evaluation of the auxiliary polynomials at the
/// rational point equal to `z`.
pub fn ratio_r_direct(family: Family, n: u64, z: Complex64) -> Result<Complex64> {
    let aux = aux_family(family, n as usize + 1)?;
    quotient_at(aux.get(n as usize + 1).unwrap(), aux.get(n as usize).unwrap(), z)
}

pub(crate) fn quotient_at(num: &RatPoly, den: &RatPoly, z: Complex64) -> Result<Complex64> {
    let (re, im) = (f64_to_rat(z.re)?, f64_to_rat(z.im)?);
    let (dr, di) = den.evaluate_gaussian(&re, &im);
    let norm = &dr * &dr + &di * &di;
    if norm.is_zero() {
        return Err(Error::Pole(format!("denominator vanishes at z = {z}")));
    }
    let (nr, ni) = num.evaluate_gaussian(&re, &im);
    let qr = (&nr * &dr + &ni * &di) / &norm;
    let qi = (&ni * &dr - &nr * &di) / &norm;
    Ok(Complex64::new(rat_to_f64(&qr), rat_to_f64(&qi)))
}

/// `-1 / (log u(z))^2`, the common limit of both ratio sequences.
pub fn limit_r(z: Complex64) -> Result<Complex64> {
    let l = u_map(z)?.ln();
    Ok(-1.0 / (l * l))
}
