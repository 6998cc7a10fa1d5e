use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::{Bicomplex, Bidegree};
use crate::zigzag::{synthesize, synthesize_real, Indecomposable};

/// Which kinds of parts the generator may draw.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartKinds {
    /// Dots 0.3, squares 0.2, zigzags of length ≥ 2 0.5.
    All,
    /// Dots and squares in the ratio 3 : 2.
    SquaresAndDots,
    DotsOnly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RandomConfig {
    /// Parts drawn before conjugate partners are added; the count is
    /// uniform in `1..=max_parts`.
    pub max_parts: usize,
    /// Longest zigzag, in dots; lengths are uniform in `2..=max_length`.
    pub max_length: usize,
    /// Parts live in `[0, region]²`.
    pub region: usize,
    pub kinds: PartKinds,
    /// Close the multiset under conjugation, declare `n = region` and attach
    /// the real structure.
    pub real: bool,
    /// Parts that would push the total dimension past this are skipped.
    pub max_total_dim: usize,
    pub scramble: bool,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            max_parts: 10,
            max_length: 5,
            region: 3,
            kinds: PartKinds::All,
            real: false,
            max_total_dim: 150,
            scramble: true,
        }
    }
}

/// A random complex together with the parts it was built from, sorted.
#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub seed: u64,
    pub complex: Bicomplex,
    pub parts: Vec<Indecomposable>,
}

/// Contiguous runs of `length` nodes of the line
/// `… (p, k+1-p), (p, k-p), (p+1, k+1-p), …` inside the region.
fn zigzag_candidates(region: i32, length: usize) -> Vec<Vec<Bidegree>> {
    let inside = |b: Bidegree| b.p >= 0 && b.q >= 0 && b.p <= region && b.q <= region;
    let mut out = Vec::new();
    for k in 0..2 * region {
        let mut line = Vec::new();
        for p in 0..=region + 1 {
            line.push(Bidegree::new(p, k + 1 - p));
            line.push(Bidegree::new(p, k - p));
        }
        for window in line.windows(length) {
            if window.iter().all(|&b| inside(b)) {
                out.push(window.to_vec());
            }
        }
    }
    out
}

fn draw_part(rng: &mut ChaCha8Rng, config: &RandomConfig) -> Indecomposable {
    let region = config.region as i32;
    let roll: f64 = rng.gen();
    let kind = match config.kinds {
        PartKinds::All if roll < 0.3 => 0,
        PartKinds::All if roll < 0.5 => 1,
        PartKinds::All => 2,
        PartKinds::SquaresAndDots if roll < 0.6 => 0,
        PartKinds::SquaresAndDots => 1,
        PartKinds::DotsOnly => 0,
    };
    let kind = if kind == 1 && region == 0 { 0 } else { kind };
    match kind {
        0 => Indecomposable::dot(Bidegree::new(rng.gen_range(0..=region), rng.gen_range(0..=region))),
        1 => Indecomposable::square(Bidegree::new(rng.gen_range(0..region), rng.gen_range(0..region))),
        _ => {
            let mut length = rng.gen_range(2..=config.max_length.max(2));
            loop {
                let candidates = zigzag_candidates(region, length);
                if !candidates.is_empty() {
                    let dots = candidates[rng.gen_range(0..candidates.len())].clone();
                    return Indecomposable::zigzag(dots).expect("line segment is a zigzag");
                }
                if length == 1 {
                    return Indecomposable::dot(Bidegree::new(0, 0));
                }
                length -= 1;
            }
        }
    }
}

/// Draws parts, optionally closes them under conjugation, synthesizes the
/// direct sum and (if configured) scrambles bases, all from `seed`.
pub fn random_bicomplex(seed: u64, config: &RandomConfig) -> RandomComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=config.max_parts.max(1));
    let mut parts: Vec<Indecomposable> = Vec::new();
    let mut total = 0;
    for _ in 0..count {
        let part = draw_part(&mut rng, config);
        let mut group = vec![part.clone()];
        if config.real && part.mirror() != part {
            group.push(part.mirror());
        }
        let size: usize = group.iter().map(Indecomposable::dimension).sum();
        if total + size > config.max_total_dim {
            continue;
        }
        total += size;
        parts.extend(group);
    }
    parts.sort();
    let scramble_seed = config.scramble.then(|| rng.gen());
    let complex = if config.real {
        synthesize_real(&parts, config.region, scramble_seed).expect("closed under conjugation")
    } else {
        synthesize(&parts, scramble_seed).expect("well-formed parts")
    };
    RandomComplex { seed, complex: complex.with_label(format!("random-{seed}")), parts }
}

/// Configuration of the standard corpus member for `seed`: regions of size
/// 2 to 4, every other member real, every tenth restricted to squares and
/// dots.
pub fn corpus_config(seed: u64) -> RandomConfig {
    RandomConfig {
        max_parts: 10,
        max_length: 6,
        region: 2 + (seed % 3) as usize,
        kinds: if seed % 10 == 9 { PartKinds::SquaresAndDots } else { PartKinds::All },
        real: seed.is_multiple_of(2),
        max_total_dim: 150,
        scramble: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let config = corpus_config(4);
        let a = random_bicomplex(4, &config);
        let b = random_bicomplex(4, &config);
        assert_eq!(a.complex, b.complex);
        assert_eq!(a.parts, b.parts);
        assert!(a.complex.validate().is_empty());
        assert!(a.complex.check_real_structure().unwrap());
    }

    #[test]
    fn dots_only() {
        let config = RandomConfig { max_parts: 1, kinds: PartKinds::DotsOnly, ..RandomConfig::default() };
        let r = random_bicomplex(0, &config);
        assert_eq!(r.parts.len(), 1);
        assert!(r.parts[0].is_dot());
        assert!(r.complex.blocks(crate::bicomplex::Differential::Del).is_empty());
    }

    #[test]
    fn candidates_stay_inside() {
        for length in 2..=7 {
            for dots in zigzag_candidates(2, length) {
                assert!(Indecomposable::zigzag(dots.clone()).is_ok());
                assert!(dots.iter().all(|b| (0..=2).contains(&b.p) && (0..=2).contains(&b.q)));
            }
        }
    }
}
