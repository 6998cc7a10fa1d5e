use std::collections::BTreeMap;
use std::fmt;

use crate::bicomplex::{Bicomplex, Bidegree, ConjugationStructure, ProductStructure};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};

/// A degree-one generator: `ω^k` or its conjugate `ω̄^k`, indices from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    Hol(usize),
    Anti(usize),
}

impl Generator {
    fn bit(self, n: usize) -> Result<u32> {
        let (k, shift) = match self {
            Generator::Hol(k) => (k, 0),
            Generator::Anti(k) => (k, n),
        };
        if k == 0 || k > n {
            return Err(Error::Equations(format!("generator index {k} outside 1..={n}")));
        }
        Ok((shift + k - 1) as u32)
    }

    fn from_bit(bit: u32, n: usize) -> Generator {
        let b = bit as usize;
        if b < n {
            Generator::Hol(b + 1)
        } else {
            Generator::Anti(b - n + 1)
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Hol(k) => write!(f, "w{k}"),
            Generator::Anti(k) => write!(f, "cw{k}"),
        }
    }
}

/// `d ω^k` for `k = 1..n`, each a combination of 2-monomials stored as bit
/// masks in the generator order `ω^1 … ω^n ω̄^1 … ω̄^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureEquations {
    n: usize,
    differentials: Vec<BTreeMap<u64, Scalar>>,
}

impl StructureEquations {
    /// All generators closed.
    pub fn new(n: usize) -> Self {
        StructureEquations { n, differentials: vec![BTreeMap::new(); n] }
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    /// Adds `coeff · a ∧ b` to `d ω^k`.
    pub fn add_term(&mut self, k: usize, coeff: Scalar, a: Generator, b: Generator) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::Equations(format!("generator index {k} outside 1..={}", self.n)));
        }
        let (ba, bb) = (a.bit(self.n)?, b.bit(self.n)?);
        let Some((sign, mask)) = ProductStructure::monomial_product(1 << ba, 1 << bb) else {
            return Err(Error::Equations(format!("{a}^{b} repeats a generator")));
        };
        let coeff = if sign > 0 { coeff } else { -coeff };
        let slot = self.differentials[k - 1].entry(mask).or_insert_with(Scalar::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.differentials[k - 1].remove(&mask);
        }
        Ok(())
    }

    pub fn with_term(mut self, k: usize, coeff: Scalar, a: Generator, b: Generator) -> Result<Self> {
        self.add_term(k, coeff, a, b)?;
        Ok(self)
    }

    /// Terms of `d ω^k` as `(coefficient, first, second)` with `first < second`.
    pub fn terms(&self, k: usize) -> Vec<(Scalar, Generator, Generator)> {
        self.differentials[k - 1]
            .iter()
            .map(|(&mask, c)| {
                let lo = mask.trailing_zeros();
                let hi = 63 - mask.leading_zeros();
                (c.clone(), Generator::from_bit(lo, self.n), Generator::from_bit(hi, self.n))
            })
            .collect()
    }

    fn anti_mask(&self) -> u64 {
        ((1u64 << self.n) - 1) << self.n
    }

    /// `d` of each degree-one generator, `ω`'s first, then `ω̄ = conj(ω)`.
    fn generator_differentials(&self) -> Vec<BTreeMap<u64, Scalar>> {
        let n = self.n;
        let half = (1u64 << n) - 1;
        let mut out = self.differentials.clone();
        for d in &self.differentials {
            let conj = d
                .iter()
                .map(|(&mask, c)| {
                    let swapped = ((mask & half) << n) | (mask >> n);
                    let mixed = mask & half != 0 && mask & !half != 0;
                    (swapped, if mixed { -c.conj() } else { c.conj() })
                })
                .collect();
            out.push(conj);
        }
        out
    }
}

/// Leibniz extension of `d` from generators to a monomial.
fn d_monomial(mask: u64, gens: &[BTreeMap<u64, Scalar>]) -> BTreeMap<u64, Scalar> {
    let mut out: BTreeMap<u64, Scalar> = BTreeMap::new();
    let mut rest = mask;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        let below = mask & ((1u64 << bit) - 1);
        let above = mask & !((1u64 << (bit + 1)) - 1);
        for (&m2, c) in &gens[bit as usize] {
            let Some((s1, left)) = ProductStructure::monomial_product(below, m2) else { continue };
            let Some((s2, full)) = ProductStructure::monomial_product(left, above) else { continue };
            let parity = if below.count_ones().is_multiple_of(2) { 1 } else { -1 };
            let slot = out.entry(full).or_insert_with(Scalar::zero);
            if s1 * s2 * parity > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn d_form(form: &BTreeMap<u64, Scalar>, gens: &[BTreeMap<u64, Scalar>]) -> BTreeMap<u64, Scalar> {
    let mut out: BTreeMap<u64, Scalar> = BTreeMap::new();
    for (&m, c) in form {
        for (m2, c2) in d_monomial(m, gens) {
            *out.entry(m2).or_insert_with(Scalar::zero) += &(c * &c2);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The exterior-algebra double complex of a set of structure equations, with
/// wedge product, fundamental class and the conjugation `ω^i ↔ ω̄^i`.
pub fn from_structure_equations(spec: &StructureEquations, label: &str) -> Result<Bicomplex> {
    let n = spec.n;
    if 2 * n > 62 {
        return Err(Error::Equations(format!("n = {n} is too large")));
    }
    let anti = spec.anti_mask();
    for (k, d) in spec.differentials.iter().enumerate() {
        if d.keys().any(|&m| m & anti == m) {
            return Err(Error::NotIntegrable { generator: k + 1 });
        }
    }
    let gens = spec.generator_differentials();
    for (k, d) in gens.iter().enumerate() {
        if !d_form(d, &gens).is_empty() {
            return Err(Error::NotClosed { generator: Generator::from_bit(k as u32, n).to_string() });
        }
    }

    let product = ProductStructure::exterior(n);
    let mut dims = BTreeMap::new();
    let mut del = BTreeMap::new();
    let mut delbar = BTreeMap::new();
    let mut conj = BTreeMap::new();
    for p in 0..=n as i32 {
        for q in 0..=n as i32 {
            let b = Bidegree::new(p, q);
            let basis = product.basis(b);
            dims.insert(b, basis.len());
            let dim_of = |x: Bidegree| product.basis(x).len();
            let mut dm = Matrix::zeros(dim_of(b.del_target()), basis.len());
            let mut dbm = Matrix::zeros(dim_of(b.delbar_target()), basis.len());
            let mut cm = Matrix::zeros(dim_of(b.mirror()), basis.len());
            let sign = if (p * q) % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
            for (col, &m) in basis.iter().enumerate() {
                for (m2, c) in d_monomial(m, &gens) {
                    let (target, row) = product.locate(m2).expect("monomial in basis");
                    if target == b.del_target() {
                        dm[(row, col)] = c;
                    } else {
                        dbm[(row, col)] = c;
                    }
                }
                let half = (1u64 << n) - 1;
                let swapped = ((m & half) << n) | (m >> n);
                let (_, row) = product.locate(swapped).expect("monomial in basis");
                cm[(row, col)] = sign.clone();
            }
            del.insert(b, dm);
            delbar.insert(b, dbm);
            conj.insert(b, cm);
        }
    }
    let k = Bicomplex::new(label, Some(n), dims, del, delbar)?
        .with_product(product)
        .with_conjugation(ConjugationStructure::new(conj));
    k.ensure_valid()?;
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::{Anti, Hol};

    #[test]
    fn integrability_is_enforced() {
        let spec = StructureEquations::new(2).with_term(2, Scalar::one(), Anti(1), Anti(2)).unwrap();
        assert!(matches!(from_structure_equations(&spec, "x"), Err(Error::NotIntegrable { generator: 2 })));
    }

    #[test]
    fn jacobi_is_enforced() {
        // dω¹ = ω²∧ω³, dω² = ω¹∧ω² gives d(dω¹) = ω¹∧ω²∧ω³
        let spec = StructureEquations::new(3)
            .with_term(1, Scalar::one(), Hol(2), Hol(3))
            .unwrap()
            .with_term(2, Scalar::one(), Hol(1), Hol(2))
            .unwrap();
        assert!(matches!(from_structure_equations(&spec, "x"), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn repeated_generator_is_malformed() {
        assert!(StructureEquations::new(2).with_term(1, Scalar::one(), Hol(2), Hol(2)).is_err());
        assert!(StructureEquations::new(2).with_term(1, Scalar::one(), Hol(3), Hol(1)).is_err());
    }

    #[test]
    fn reversed_order_flips_sign() {
        let a = StructureEquations::new(3).with_term(3, Scalar::from(-1), Hol(1), Hol(2)).unwrap();
        let b = StructureEquations::new(3).with_term(3, Scalar::one(), Hol(2), Hol(1)).unwrap();
        assert_eq!(a, b);
    }
}
