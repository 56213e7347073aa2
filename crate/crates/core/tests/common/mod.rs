#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use swan_rsw::asreduce::check_normalized;
use swan_rsw::{LaurentPoly, MPoly};

pub fn rand_poly<R: Rng>(rng: &mut R, p: u32, d: usize, max_deg: u32, max_terms: usize) -> MPoly {
    let mut out = MPoly::zero(p, d);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let ex = (0..d).map(|_| rng.gen_range(0..=max_deg)).collect();
        out.add_term(ex, rng.gen_range(1..p));
    }
    out
}

fn nonzero_poly<R: Rng>(rng: &mut R, p: u32, d: usize, max_deg: u32) -> MPoly {
    loop {
        let c = rand_poly(rng, p, d, max_deg, 3);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random element of `F_p[x][t, t^-1]` with `t`-exponents in `lo..=hi`.
pub fn rand_laurent<R: Rng>(rng: &mut R, p: u32, d: usize, lo: i64, hi: i64, max_terms: usize) -> LaurentPoly {
    let mut f = LaurentPoly::zero(p, d);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let e = rng.gen_range(lo..=hi);
        let ex = (0..d).map(|_| rng.gen_range(0..=3)).collect();
        f.add_term(e, ex, rng.gen_range(1..p));
    }
    f
}

/// A random `f` with `v_t(f) = -n` and `ord(df) = n`, or `None` when no
/// attempt succeeds (for instance `p | n` with `d = 0`).
pub fn rand_normalized<R: Rng>(rng: &mut R, p: u32, d: usize, n: u32) -> Option<LaurentPoly> {
    for _ in 0..50 {
        let lead = nonzero_poly(rng, p, d, 2);
        let mut f = LaurentPoly::from_slices(p, d, [(-(n as i64), lead)]);
        if rng.gen_bool(0.7) {
            let extra = rand_laurent(rng, p, d, -(n as i64) + 1, 2, 3);
            f = &f + &extra;
        }
        if check_normalized(&f) == Ok((n, true)) {
            return Some(f);
        }
    }
    None
}

pub fn pick<R: Rng, T: Copy>(rng: &mut R, items: &[T]) -> T {
    items[rng.gen_range(0..items.len())]
}

pub fn seeded(seed: u64) -> StdRng {
    use rand::SeedableRng;
    StdRng::seed_from_u64(seed)
}
