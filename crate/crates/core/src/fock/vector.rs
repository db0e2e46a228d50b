use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rf, RationalFunction};
use crate::scalar::Field;

/// A creation monomial `Π P^{i}_{-n} |vac⟩`, stored as `(n, i)` parts sorted
/// in decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, usize)>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_parts(mut parts: Vec<(u32, usize)>) -> Result<Self> {
        if parts.iter().any(|&(n, _)| n == 0) {
            return Err(Error::InvalidInput("creation modes must be positive".into()));
        }
        parts.sort_by_key(|&p| Reverse(p));
        Ok(Monomial(parts))
    }

    pub fn parts(&self) -> &[(u32, usize)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(n, _)| n as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, n: u32, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == (n, i)).count()
    }

    pub fn with(&self, n: u32, i: usize) -> Self {
        let mut parts = self.0.clone();
        let pos = parts.partition_point(|&p| p > (n, i));
        parts.insert(pos, (n, i));
        Monomial(parts)
    }

    /// Remove one copy of `(n, i)`, if present.
    pub fn without(&self, n: u32, i: usize) -> Option<Self> {
        let pos = self.0.iter().position(|&p| p == (n, i))?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Monomial(parts))
    }

    pub fn times(&self, other: &Monomial) -> Self {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_by_key(|&p| Reverse(p));
        Monomial(parts)
    }

    /// Distinct parts with their multiplicities.
    pub fn grouped(&self) -> Vec<((u32, usize), usize)> {
        let mut out: Vec<((u32, usize), usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Parts with colour `i`, as a rank-one monomial.
    pub fn restrict(&self, i: usize) -> Monomial {
        Monomial(self.0.iter().filter(|p| p.1 == i).map(|&(n, _)| (n, 0)).collect())
    }

    pub fn max_colour(&self) -> Option<usize> {
        self.0.iter().map(|p| p.1).max()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("|vac>");
        }
        for (k, ((n, i), m)) in self.grouped().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "P{}_-{}", i + 1, n)?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Finite linear combination of creation monomials.
#[derive(Clone, PartialEq)]
pub struct FockVector<C: Field> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> FockVector<C> {
    pub fn vacuum() -> Self {
        Self::monomial(Monomial::vacuum(), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut v = Self::zero();
        for (m, c) in it {
            v.add_term(m, c);
        }
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    /// The common degree of all monomials, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn component(&self, d: usize) -> Self {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> FockVector<D> {
        FockVector::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Field>(&self, f: impl Fn(&C) -> Result<D>) -> Result<FockVector<D>> {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                monomial: m.parts().iter().map(|&(n, i)| [n as u64, i as u64]).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl<C: Field> FockVector<RationalFunction<C>> {
    pub fn from_json(terms: &[TermJson]) -> Result<Self> {
        let mut v = Self::zero();
        for t in terms {
            let parts = t.monomial.iter().map(|&[n, i]| (n as u32, i as usize)).collect();
            v.add_term(Monomial::from_parts(parts)?, parse_rf(&t.coeff)?);
        }
        Ok(v)
    }
}

/// One serialized term: `{monomial: [[n, i], ...], coeff}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<[u64; 2]>,
    pub coeff: String,
}

impl<C: Field> Zero for FockVector<C> {
    fn zero() -> Self {
        FockVector { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Field> Add for &FockVector<C> {
    type Output = FockVector<C>;
    fn add(self, rhs: &FockVector<C>) -> FockVector<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Field> Add for FockVector<C> {
    type Output = FockVector<C>;
    fn add(mut self, rhs: FockVector<C>) -> FockVector<C> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Field> Sub for &FockVector<C> {
    type Output = FockVector<C>;
    fn sub(self, rhs: &FockVector<C>) -> FockVector<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Field> Sub for FockVector<C> {
    type Output = FockVector<C>;
    fn sub(self, rhs: FockVector<C>) -> FockVector<C> {
        &self - &rhs
    }
}

impl<C: Field> Neg for FockVector<C> {
    type Output = FockVector<C>;
    fn neg(self) -> FockVector<C> {
        FockVector {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Field> fmt::Display for FockVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}] {m}")?;
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for FockVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector({self})")
    }
}
