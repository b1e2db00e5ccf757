//! Globally adaptive Genz-Malik cubature with box screening.

use alloc::vec::Vec;

use super::{map_ordered, ordered_sum, QuadResult, QuadSettings, QuadValue};
use crate::math::sqrt;
use crate::{Error, Result};

/// Verdict of a screening callback on a box `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Screen {
    /// The integrand is negligible on the whole box; drop it.
    Negligible,
    /// The box is too coarse for the rule; bisect along the given axis first.
    Split(usize),
    /// Apply the rule to the box.
    Keep,
}

#[derive(Clone, Copy, Debug)]
struct Region<const D: usize, V> {
    lo: [f64; D],
    hi: [f64; D],
    value: V,
    error: f64,
    split_axis: usize,
}

/// Upper bound on the number of boxes produced by screening.
const MAX_SCREENED_BOXES: usize = 4_000_000;

struct Weights {
    l2: f64,
    l4: f64,
    l5: f64,
    w7: [f64; 5],
    w5: [f64; 4],
    ratio: f64,
}

impl Weights {
    fn new(d: usize) -> Self {
        let n = d as f64;
        let l2 = sqrt(9.0 / 70.0);
        let l4 = sqrt(9.0 / 10.0);
        let l5 = sqrt(9.0 / 19.0);
        Weights {
            l2,
            l4,
            l5,
            w7: [
                (12824.0 - 9120.0 * n + 400.0 * n * n) / 19683.0,
                980.0 / 6561.0,
                (1820.0 - 400.0 * n) / 19683.0,
                200.0 / 19683.0,
                6859.0 / 19683.0 / libm::pow(2.0, n),
            ],
            w5: [
                (729.0 - 950.0 * n + 50.0 * n * n) / 729.0,
                245.0 / 486.0,
                (265.0 - 100.0 * n) / 1458.0,
                25.0 / 729.0,
            ],
            ratio: (9.0 / 70.0) / (9.0 / 10.0),
        }
    }
}

fn genz_malik<const D: usize, V, F>(f: &F, w: &Weights, lo: &[f64; D], hi: &[f64; D]) -> (V, f64, usize)
where
    V: QuadValue,
    F: Fn(&[f64; D]) -> V,
{
    let center: [f64; D] = core::array::from_fn(|a| 0.5 * (lo[a] + hi[a]));
    let half: [f64; D] = core::array::from_fn(|a| 0.5 * (hi[a] - lo[a]));
    let volume: f64 = half.iter().map(|h| 2.0 * h).product();
    let shifted = |offsets: &[(usize, f64)]| {
        let mut x = center;
        for &(a, o) in offsets {
            x[a] += o * half[a];
        }
        f(&x)
    };
    let f1 = f(&center);
    let mut f2 = V::zero();
    let mut f3 = V::zero();
    let mut best_axis = 0;
    let mut best_diff = -1.0;
    for a in 0..D {
        let p2 = shifted(&[(a, w.l2)]).add(shifted(&[(a, -w.l2)]));
        let p3 = shifted(&[(a, w.l4)]).add(shifted(&[(a, -w.l4)]));
        f2 = f2.add(p2);
        f3 = f3.add(p3);
        let diff = p2
            .add(f1.scale(-2.0))
            .add(p3.add(f1.scale(-2.0)).scale(-w.ratio))
            .norm();
        if diff > best_diff * (1.0 + 1e-12) {
            best_diff = diff;
            best_axis = a;
        }
    }
    let mut f4 = V::zero();
    for a in 0..D {
        for b in (a + 1)..D {
            for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                f4 = f4.add(shifted(&[(a, sa * w.l4), (b, sb * w.l4)]));
            }
        }
    }
    let mut f5 = V::zero();
    for corner in 0..(1usize << D) {
        let mut x = center;
        for (a, xa) in x.iter_mut().enumerate() {
            let s = if corner >> a & 1 == 1 { 1.0 } else { -1.0 };
            *xa += s * w.l5 * half[a];
        }
        f5 = f5.add(f(&x));
    }
    let i7 = f1
        .scale(w.w7[0])
        .add(f2.scale(w.w7[1]))
        .add(f3.scale(w.w7[2]))
        .add(f4.scale(w.w7[3]))
        .add(f5.scale(w.w7[4]))
        .scale(volume);
    let i5 = f1
        .scale(w.w5[0])
        .add(f2.scale(w.w5[1]))
        .add(f3.scale(w.w5[2]))
        .add(f4.scale(w.w5[3]))
        .scale(volume);
    let err = i7.add(i5.scale(-1.0)).norm();
    (i7, err, best_axis)
}

fn rule_points(d: usize) -> u64 {
    (1 + 4 * d + 2 * d * (d - 1) + (1 << d)) as u64
}

/// Adaptive cubature of `f` over `[0, 1]^D` for `D >= 2`.
///
/// `screen` is consulted on every box of the initial partition: negligible
/// boxes are dropped and coarse boxes are bisected before any evaluation.
/// Afterwards the boxes carrying the largest share of the error are bisected
/// along the axis with the largest fourth difference until the summed error
/// drops below `max(rel_tol |value|, abs_tol)` or the evaluation budget is
/// spent. The result is independent of the thread count.
pub fn integrate_adaptive<const D: usize, V, F, S>(
    f: F,
    screen: S,
    settings: &QuadSettings,
) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: Fn(&[f64; D]) -> V + Sync + Send,
    S: Fn(&[f64; D], &[f64; D]) -> Screen,
{
    settings.validate()?;
    if D < 2 {
        return Err(Error::InvalidSettings("adaptive cubature needs at least two dimensions".into()));
    }
    let weights = Weights::new(D);
    let per_box = rule_points(D);

    let mut boxes: Vec<([f64; D], [f64; D])> = Vec::new();
    let mut stack = alloc::vec![([0.0; D], [1.0; D])];
    while let Some((lo, hi)) = stack.pop() {
        match screen(&lo, &hi) {
            Screen::Negligible => {}
            Screen::Keep => boxes.push((lo, hi)),
            Screen::Split(axis) => {
                let (a, b) = bisect(&lo, &hi, axis.min(D - 1));
                // push the upper half first so the lower half is processed first
                stack.push(b);
                stack.push(a);
            }
        }
        if boxes.len() + stack.len() > MAX_SCREENED_BOXES {
            return Err(Error::InvalidSettings("screening produced too many boxes".into()));
        }
    }

    let evaluate = |(lo, hi): ([f64; D], [f64; D])| {
        let (value, error, split_axis) = genz_malik(&f, &weights, &lo, &hi);
        Region { lo, hi, value, error, split_axis }
    };
    let mut regions: Vec<Region<D, V>> = map_ordered(boxes, evaluate);
    let mut evaluations = regions.len() as u64 * per_box;

    loop {
        let value = ordered_sum(regions.iter().map(|r| r.value));
        let error: f64 = regions.iter().map(|r| r.error).sum();
        let target = settings.tolerance(value.norm());
        if error <= target {
            return Ok(QuadResult { value, error_estimate: error, evaluations, converged: true });
        }
        if evaluations >= settings.max_evaluations {
            return Ok(QuadResult { value, error_estimate: error, evaluations, converged: false });
        }
        let mut order: Vec<usize> = (0..regions.len()).collect();
        order.sort_by(|&a, &b| regions[b].error.total_cmp(&regions[a].error).then(a.cmp(&b)));
        let mut chosen = Vec::new();
        let mut share = 0.0;
        for &idx in &order {
            if share >= 0.5 * (error - target).max(0.0) && !chosen.is_empty() {
                break;
            }
            share += regions[idx].error;
            chosen.push(idx);
        }
        chosen.sort_unstable();
        let mut children = Vec::with_capacity(2 * chosen.len());
        for &idx in chosen.iter().rev() {
            let r = regions.swap_remove(idx);
            let (a, b) = bisect(&r.lo, &r.hi, r.split_axis);
            children.push(a);
            children.push(b);
        }
        evaluations += children.len() as u64 * per_box;
        let fresh = map_ordered(children, evaluate);
        regions.extend(fresh);
    }
}

fn bisect<const D: usize>(lo: &[f64; D], hi: &[f64; D], axis: usize) -> (([f64; D], [f64; D]), ([f64; D], [f64; D])) {
    let mid = 0.5 * (lo[axis] + hi[axis]);
    let mut hi_a = *hi;
    hi_a[axis] = mid;
    let mut lo_b = *lo;
    lo_b[axis] = mid;
    ((*lo, hi_a), (lo_b, *hi))
}
