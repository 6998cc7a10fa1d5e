//! Independent oracle: cohomology dimensions from ranks over F_p, p ≡ 1 mod 4,
//! with `i` sent to a square root of -1. Shares no code with the crate's
//! linear algebra or totalization.

#![allow(dead_code)]

use std::collections::BTreeMap;

use bicomplex_lab::cohomology::CohomologyDims;
use bicomplex_lab::{Bicomplex, Bidegree, Matrix, Scalar};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const P: u64 = 1_000_000_009;

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % P as u128) as u64;
        }
        b = (b as u128 * b as u128 % P as u128) as u64;
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn sqrt_minus_one() -> u64 {
    (2..).map(|a| pow(a, (P - 1) / 4)).find(|&r| r * r % P == P - 1).expect("p is 1 mod 4")
}

fn reduce(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    (((x % &p) + &p) % &p).to_u64().unwrap()
}

fn scalar(s: &Scalar, i: u64) -> u64 {
    let part =
        |r: &num_rational::BigRational| (reduce(r.numer()) as u128 * inv(reduce(r.denom())) as u128 % P as u128) as u64;
    ((part(s.re()) as u128 + part(s.im()) as u128 * i as u128) % P as u128) as u64
}

type M = Vec<Vec<u64>>;

fn lower(m: &Matrix, i: u64) -> M {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| scalar(x, i)).collect()).collect()
}

fn rank(mut m: M) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pivot);
        let f = inv(m[r][c]);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let g = (row[c] as u128 * f as u128 % P as u128) as u64;
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    let sub = (g as u128 * *y as u128 % P as u128) as u64;
                    *x = (*x + P - sub) % P;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn mul(a: &M, b: &M, inner: usize) -> M {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0u128, |acc, k| (acc + row[k] as u128 * b[k][j] as u128) % P as u128) as u64)
                .collect()
        })
        .collect()
}

struct Lowered {
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, M>,
    delbar: BTreeMap<Bidegree, M>,
}

impl Lowered {
    fn new(k: &Bicomplex) -> Self {
        let i = sqrt_minus_one();
        let dims = k.dims().clone();
        let lift = |f: &dyn Fn(Bidegree) -> Matrix| dims.keys().map(|&b| (b, lower(&f(b), i))).collect();
        Lowered { del: lift(&|b| k.del(b).into_owned()), delbar: lift(&|b| k.delbar(b).into_owned()), dims }
    }

    fn dim(&self, b: Bidegree) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    /// Block `from → to`, zero when either space is absent.
    fn block(&self, which: &BTreeMap<Bidegree, M>, b: Bidegree, to: Bidegree) -> M {
        which
            .get(&b)
            .filter(|m| m.len() == self.dim(to))
            .cloned()
            .unwrap_or_else(|| vec![vec![0; self.dim(b)]; self.dim(to)])
    }

    fn del(&self, b: Bidegree) -> M {
        self.block(&self.del, b, b.shift(1, 0))
    }

    fn delbar(&self, b: Bidegree) -> M {
        self.block(&self.delbar, b, b.shift(0, 1))
    }

    fn del_delbar(&self, b: Bidegree) -> M {
        mul(&self.del(b.shift(0, 1)), &self.delbar(b), self.dim(b.shift(0, 1)))
    }
}

fn vstack(a: M, b: M) -> M {
    a.into_iter().chain(b).collect()
}

fn hstack(a: M, b: M) -> M {
    a.into_iter()
        .zip(b)
        .map(|(mut x, y)| {
            x.extend(y);
            x
        })
        .collect()
}

fn nonzero<K: Ord>(m: BTreeMap<K, i64>) -> BTreeMap<K, usize> {
    m.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, usize::try_from(v).expect("nonnegative"))).collect()
}

/// All five theories by rank counting mod `P`.
pub fn oracle_dims(k: &Bicomplex) -> CohomologyDims {
    let l = Lowered::new(k);
    let mut dol = BTreeMap::new();
    let mut conj = BTreeMap::new();
    let mut bc = BTreeMap::new();
    let mut ae = BTreeMap::new();
    for &b in l.dims.keys() {
        let n = l.dim(b) as i64;
        let r = |m: M| rank(m) as i64;
        dol.insert(b, n - r(l.delbar(b)) - r(l.delbar(b.shift(0, -1))));
        conj.insert(b, n - r(l.del(b)) - r(l.del(b.shift(-1, 0))));
        bc.insert(b, n - r(vstack(l.del(b), l.delbar(b))) - r(l.del_delbar(b.shift(-1, -1))));
        ae.insert(b, n - r(l.del_delbar(b)) - r(hstack(l.del(b.shift(-1, 0)), l.delbar(b.shift(0, -1)))));
    }

    // totalization with its own coordinate order: descending p
    let mut degrees: BTreeMap<i32, Vec<Bidegree>> = BTreeMap::new();
    for &b in l.dims.keys() {
        degrees.entry(b.p + b.q).or_default().push(b);
    }
    for blocks in degrees.values_mut() {
        blocks.sort_by_key(|b| -b.p);
    }
    let offsets = |deg: i32| -> (BTreeMap<Bidegree, usize>, usize) {
        let mut off = BTreeMap::new();
        let mut total = 0;
        for &b in degrees.get(&deg).map_or(&[][..], Vec::as_slice) {
            off.insert(b, total);
            total += l.dim(b);
        }
        (off, total)
    };
    let d_rank = |deg: i32| -> i64 {
        let (src, n) = offsets(deg);
        let (dst, m) = offsets(deg + 1);
        let mut d = vec![vec![0u64; n]; m];
        for (&b, &so) in &src {
            for (block, to) in [(l.del(b), b.shift(1, 0)), (l.delbar(b), b.shift(0, 1))] {
                let Some(&to_off) = dst.get(&to) else { continue };
                for (r, row) in block.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        d[to_off + r][so + c] = (d[to_off + r][so + c] + x) % P;
                    }
                }
            }
        }
        rank(d) as i64
    };
    let mut dr = BTreeMap::new();
    for &deg in degrees.keys() {
        let n = offsets(deg).1 as i64;
        dr.insert(deg, n - d_rank(deg) - d_rank(deg - 1));
    }
    CohomologyDims {
        de_rham: nonzero(dr),
        dolbeault: nonzero(dol),
        conj_dolbeault: nonzero(conj),
        bott_chern: nonzero(bc),
        aeppli: nonzero(ae),
    }
}

/// `Σ_{p+q=k}` of a bigraded table.
pub fn by_degree(t: &BTreeMap<Bidegree, usize>, k: i32) -> usize {
    t.iter().filter(|(b, _)| b.p + b.q == k).map(|(_, d)| *d).sum()
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
