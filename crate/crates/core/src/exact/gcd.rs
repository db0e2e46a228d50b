//! Multivariate polynomial gcd.
//!
//! Recursive: a polynomial is viewed as univariate in one variable with
//! coefficients in the remaining ones; contents are handled recursively and
//! primitive parts go through the subresultant pseudo-remainder sequence.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::vars::Var;
use crate::scalar::Field;

/// Canonical gcd (see [`Poly::normalized`]); `gcd(0, 0) = 0`.
pub fn gcd<C: Field>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    // Canonical associates keep rational coefficients integral throughout.
    let (a, b) = (a.normalized().0, b.normalized().0);
    homogeneous_gcd(&a, &b).unwrap_or_else(|| gcd_raw(&a, &b)).normalized().0
}

fn homogeneous_degree<C: Field>(p: &Poly<C>) -> Option<u32> {
    let mut degs = p.terms().map(|(m, _)| m.degree());
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

/// The gcd of homogeneous polynomials is homogeneous, so one variable can be
/// set to one and restored afterwards.
fn homogeneous_gcd<C: Field>(a: &Poly<C>, b: &Poly<C>) -> Option<Poly<C>> {
    if a.is_constant() || b.is_constant() {
        return None;
    }
    homogeneous_degree(a)?;
    homogeneous_degree(b)?;
    let va = a.vars();
    let vb = b.vars();
    if va.len() < 2 || vb.len() < 2 {
        return None;
    }
    let v = *va.iter().rev().find(|v| vb.contains(v))?;
    let (ma, mb) = (a.mono_content(), b.mono_content());
    let gm = ma.gcd(&mb);
    let one = [(v, C::one())];
    let da = a.div_mono(&ma).specialize(&one);
    let db = b.div_mono(&mb).specialize(&one);
    let g = gcd_raw(&da, &db);
    let top = g.total_degree().unwrap_or(0);
    let hom = Poly::from_terms(g.terms().map(|(m, c)| {
        let lift = (0..top - m.degree()).fold(m.clone(), |acc, _| acc.mul(&super::poly::Mono::var(v)));
        (lift, c.clone())
    }));
    Some(hom.mul_mono(&gm))
}

fn gcd_raw<C: Field>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let gm = ma.gcd(&mb);
    let a = if ma.is_one() { a.clone() } else { a.div_mono(&ma) };
    let b = if mb.is_one() { b.clone() } else { b.div_mono(&mb) };
    let mono = Poly::monomial(gm, C::one());
    if a.is_constant() || b.is_constant() {
        return mono;
    }
    if a == b {
        return a.mul_mono(&gm);
    }
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    if large.div_exact(small).is_some() {
        return small.mul_mono(&gm);
    }

    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        let g = content_gcd(&a, v, Some(&b));
        return g.mul_mono(&gm);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        let g = content_gcd(&b, v, Some(&a));
        return g.mul_mono(&gm);
    }

    // Same variable set: split off the variable of least degree.
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial has a variable");
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let cont_a = fold_gcd(&ca, None);
    let cont_b = fold_gcd(&cb, None);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let c = gcd_raw(&cont_a, &cont_b);
    let g = subresultant(pa, pb);
    let cont_g = fold_gcd(&g, None);
    let g = divide_all(&g, &cont_g);
    (c * Poly::from_coeffs_in(v, &g)).mul_mono(&gm)
}

/// gcd of the coefficients of `p` in `v`, optionally also with `extra`.
fn content_gcd<C: Field>(p: &Poly<C>, v: Var, extra: Option<&Poly<C>>) -> Poly<C> {
    fold_gcd(&p.coeffs_in(v), extra)
}

fn fold_gcd<C: Field>(ps: &[Poly<C>], start: Option<&Poly<C>>) -> Poly<C> {
    let mut acc = start.cloned().unwrap_or_else(Poly::zero);
    // Cheapest coefficients first so the accumulator shrinks early.
    let mut order: Vec<&Poly<C>> = ps.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| p.len());
    for p in order {
        acc = gcd_raw(&acc, p);
        if acc.is_constant() {
            return Poly::one();
        }
    }
    acc
}

fn divide_all<C: Field>(ps: &[Poly<C>], d: &Poly<C>) -> Vec<Poly<C>> {
    if d.is_one() {
        return ps.to_vec();
    }
    ps.iter()
        .map(|p| p.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

type UPoly<C> = Vec<Poly<C>>;

fn udeg<C: Field>(p: &UPoly<C>) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim<C: Field>(p: &mut UPoly<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn pseudo_rem<C: Field>(a: &UPoly<C>, b: &UPoly<C>) -> UPoly<C> {
    let n = udeg(b).expect("nonzero divisor");
    let lb = b[n].clone();
    let mut r = a.clone();
    trim(&mut r);
    let Some(m) = udeg(&r) else { return r };
    if m < n {
        return r;
    }
    let mut steps = 0u32;
    while let Some(k) = udeg(&r) {
        if k < n {
            break;
        }
        let lr = r[k].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate().take(n + 1) {
            r[i + k - n] = &r[i + k - n] - &(&lr * bc);
        }
        trim(&mut r);
        steps += 1;
    }
    let total = (m - n + 1) as u32;
    if steps < total {
        let f = lb.pow(total - steps);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Last nonzero element of the subresultant PRS of two primitive polynomials.
fn subresultant<C: Field>(mut a: UPoly<C>, mut b: UPoly<C>) -> UPoly<C> {
    trim(&mut a);
    trim(&mut b);
    if udeg(&a) < udeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::<C>::one();
    let mut h = Poly::<C>::one();
    loop {
        let (Some(da), Some(db)) = (udeg(&a), udeg(&b)) else {
            return a;
        };
        if db == 0 {
            return vec![Poly::one()];
        }
        let delta = (da - db) as u32;
        let r = pseudo_rem(&a, &b);
        let Some(dr) = udeg(&r) else {
            return b;
        };
        if dr == 0 {
            return vec![Poly::one()];
        }
        let denom = &g * &h.pow(delta);
        let next: UPoly<C> = r
            .iter()
            .map(|c| c.div_exact(&denom).expect("subresultant division is exact"))
            .collect();
        a = std::mem::replace(&mut b, next);
        g = a[udeg(&a).expect("nonzero")].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact"),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn v(x: Var) -> P {
        P::var(x)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let (e1, e2) = (v(Var::E1), v(Var::E2));
        let a = &(&e1 - &e2) * &(&e1 + &e2);
        let b = &(&e1 - &e2) * &(&e1 * &e2);
        assert_eq!(gcd(&a, &b), &e1 - &e2);
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let (a1, a2, e1, e2) = (v(Var::a(1)), v(Var::a(2)), v(Var::E1), v(Var::E2));
        let f = &a1 - &a2 - e1.clone() - e2.clone();
        let g1 = &a1 * &a1 + &e1 * &e2 + P::int(3);
        let g2 = &a2 * &e1 - &e2 * &e2 + a1.clone();
        let x = &f * &g1;
        let y = &(&f * &f) * &g2;
        assert_eq!(gcd(&x, &y), f.normalized().0);
        assert!(gcd(&g1, &g2).is_one());
    }

    #[test]
    fn gcd_with_rational_content() {
        let e1 = v(Var::E1);
        let a = e1.scale(&rat(1, 2)) + P::int(1);
        let b = (e1.clone() + P::int(2)) * e1.clone();
        assert_eq!(gcd(&a, &b), e1 + P::int(2));
    }

    #[test]
    fn gcd_with_monomials() {
        let (e1, e2) = (v(Var::E1), v(Var::E2));
        let a = &e1 * &e1 * e2.clone();
        let b = &e1 * &(&e2 + &P::int(1));
        assert_eq!(gcd(&a, &b), e1);
        assert_eq!(gcd(&P::zero(), &a.scale(&rat(-3, 1))), a);
    }
}
