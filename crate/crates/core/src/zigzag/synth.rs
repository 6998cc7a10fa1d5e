use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Indecomposable;
use crate::bicomplex::{Bicomplex, Bidegree, ConjugationStructure, Differential};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};

/// Basis slot of every dot: `slots[i][t]` is the index, inside its bidegree,
/// of the `t`-th dot of part `i`. Slots are handed out in part order.
pub(crate) fn layout(parts: &[Indecomposable]) -> (BTreeMap<Bidegree, usize>, Vec<Vec<usize>>) {
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let slots = parts
        .iter()
        .map(|part| {
            part.dots()
                .into_iter()
                .map(|b| {
                    let d = dims.entry(b).or_insert(0);
                    *d += 1;
                    *d - 1
                })
                .collect()
        })
        .collect();
    (dims, slots)
}

/// The normal form: a direct sum of the parts, each arrow a `1`, except the
/// `∂̄` edge `anchor+(1,0) → anchor+(1,1)` of a square, which is `-1` so
/// that `∂∂̄ = -∂̄∂`.
fn normal_form(parts: &[Indecomposable]) -> Result<Bicomplex> {
    for part in parts {
        part.validate()?;
    }
    let (dims, slots) = layout(parts);
    let mut del: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let mut delbar: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let dim = |b: &Bidegree| dims.get(b).copied().unwrap_or(0);
    for (part, slot) in parts.iter().zip(&slots) {
        let dots = part.dots();
        let slot_of = |b: Bidegree| slot[dots.iter().position(|&x| x == b).expect("arrow between dots")];
        for arrow in part.arrows() {
            let blocks = match arrow.map {
                Differential::Del => &mut del,
                Differential::Delbar => &mut delbar,
            };
            let m = blocks.entry(arrow.from).or_insert_with(|| Matrix::zeros(dim(&arrow.to), dim(&arrow.from)));
            let sign_flip = part.is_square() && arrow.map == Differential::Delbar && arrow.from == dots[1];
            m[(slot_of(arrow.to), slot_of(arrow.from))] = Scalar::from(if sign_flip { -1 } else { 1 });
        }
    }
    Bicomplex::new("synthesized", None, dims, del, delbar)
}

/// Builds the direct sum of `parts`; with a seed, every bidegree is then put
/// in a random basis.
pub fn synthesize(parts: &[Indecomposable], scramble_seed: Option<u64>) -> Result<Bicomplex> {
    let k = normal_form(parts)?;
    Ok(match scramble_seed {
        Some(seed) => scramble(&k, seed),
        None => k,
    })
}

/// Pairs each part with its mirror image; fails if the multiset is not
/// closed under conjugation.
fn mirror_pairing(parts: &[Indecomposable]) -> Result<Vec<usize>> {
    let mut partner = vec![usize::MAX; parts.len()];
    for i in 0..parts.len() {
        if partner[i] != usize::MAX {
            continue;
        }
        let m = parts[i].mirror();
        let j = (i..parts.len())
            .find(|&j| partner[j] == usize::MAX && parts[j] == m)
            .ok_or_else(|| Error::MalformedPart(format!("{} has no conjugate partner", parts[i])))?;
        partner[i] = j;
        partner[j] = i;
    }
    Ok(partner)
}

/// Like [`synthesize`], for a conjugation-closed multiset inside `[0,n]²`:
/// declares `n` and attaches the real structure sending each dot to the
/// mirrored dot of the partner part (and the top corner of a square to
/// minus the partner's).
pub fn synthesize_real(parts: &[Indecomposable], n: usize, scramble_seed: Option<u64>) -> Result<Bicomplex> {
    let partner = mirror_pairing(parts)?;
    let k = normal_form(parts)?.with_complex_dim(Some(n));
    let (_, slots) = layout(parts);
    let mut conj: BTreeMap<Bidegree, Matrix> =
        k.support().map(|b| (b, Matrix::zeros(k.dim(b.mirror()), k.dim(b)))).collect();
    for (i, part) in parts.iter().enumerate() {
        let j = partner[i];
        let mirror_dots = parts[j].dots();
        for (t, b) in part.dots().into_iter().enumerate() {
            let u = mirror_dots.iter().position(|&x| x == b.mirror()).expect("mirror dot");
            let sign = if part.is_square() && t == 3 { -1 } else { 1 };
            let m = conj.get_mut(&b).expect("support bidegree");
            m[(slots[j][u], slots[i][t])] = Scalar::from(sign);
        }
    }
    let k = k.with_conjugation(ConjugationStructure::new(conj));
    k.ensure_valid()?;
    Ok(match scramble_seed {
        Some(seed) => scramble(&k, seed),
        None => k,
    })
}

fn small_entry(rng: &mut ChaCha8Rng) -> Scalar {
    match rng.gen_range(0..5) {
        0 => Scalar::zero(),
        1 => Scalar::one(),
        2 => Scalar::from(-1),
        3 => Scalar::i(),
        _ => -Scalar::i(),
    }
}

/// `L·U` with unit diagonals and off-diagonal entries in `{0, ±1, ±i}`.
fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            lower[(r, c)] = small_entry(rng);
            upper[(c, r)] = small_entry(rng);
        }
    }
    lower.mul(&upper)
}

/// Changes basis in every bidegree by a seeded random invertible matrix `Q`:
/// `∂ ↦ Q ∂ Q⁻¹`, and the conjugation accordingly. A product structure is
/// dropped, since its monomial basis no longer applies.
pub fn scramble(k: &Bicomplex, seed: u64) -> Bicomplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = BTreeMap::new();
    let mut q_inv = BTreeMap::new();
    for b in k.support() {
        let m = random_invertible(k.dim(b), &mut rng);
        q_inv.insert(b, m.inverse().expect("unitriangular product"));
        q.insert(b, m);
    }
    let conjugate = |blocks: &BTreeMap<Bidegree, Matrix>, shift: (i32, i32)| -> BTreeMap<Bidegree, Matrix> {
        blocks.iter().map(|(b, m)| (*b, q[&b.shift(shift.0, shift.1)].mul(m).mul(&q_inv[b]))).collect()
    };
    let del = conjugate(k.blocks(Differential::Del), (1, 0));
    let delbar = conjugate(k.blocks(Differential::Delbar), (0, 1));
    let mut out = Bicomplex::new(k.label(), k.complex_dim(), k.dims().clone(), del, delbar).expect("same shapes");
    if let Some(c) = k.conjugation() {
        let maps = c
            .maps()
            .iter()
            .filter(|(b, _)| q.contains_key(*b))
            .map(|(b, m)| (*b, q[&b.mirror()].mul(m).mul(&q_inv[b].conj())))
            .collect();
        out = out.with_conjugation(ConjugationStructure::new(maps));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(p: i32, q: i32) -> Bidegree {
        Bidegree::new(p, q)
    }

    #[test]
    fn square_complex() {
        let k = synthesize(&[Indecomposable::square(bd(0, 0))], None).unwrap();
        assert_eq!(k.total_dim(), 4);
        assert!(k.validate().is_empty());
        assert_eq!(k.del_delbar(bd(0, 0)), Matrix::identity(1));
    }

    #[test]
    fn two_dots() {
        let k = synthesize(&[Indecomposable::dot(bd(0, 0)), Indecomposable::dot(bd(1, 2))], None).unwrap();
        assert_eq!(k.total_dim(), 2);
        assert!(k.blocks(Differential::Del).is_empty() && k.blocks(Differential::Delbar).is_empty());
    }

    #[test]
    fn scrambling_preserves_validity_and_reality() {
        let parts = vec![
            Indecomposable::square(bd(0, 1)),
            Indecomposable::square(bd(1, 0)),
            Indecomposable::square(bd(1, 1)),
            Indecomposable::zigzag(vec![bd(0, 2), bd(1, 2), bd(1, 1), bd(2, 1), bd(2, 0)]).unwrap(),
            Indecomposable::dot(bd(1, 1)),
        ];
        let k = synthesize_real(&parts, 3, None).unwrap();
        assert!(k.check_real_structure().unwrap());
        let s = synthesize_real(&parts, 3, Some(9)).unwrap();
        assert!(s.validate().is_empty());
        assert!(s.check_real_structure().unwrap());
        assert_ne!(s, k);
        assert_eq!(s, synthesize_real(&parts, 3, Some(9)).unwrap());
    }

    #[test]
    fn unpaired_part_is_rejected() {
        let parts = [Indecomposable::dot(bd(0, 1))];
        assert!(matches!(synthesize_real(&parts, 2, None), Err(Error::MalformedPart(_))));
    }
}
