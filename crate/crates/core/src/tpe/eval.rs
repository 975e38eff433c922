//! Randomized evaluation of circuits over `GF(2^64)[Z_2^k][z]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::{Circuit, Gate};
use super::TpeError;
use crate::algebra::{ga_mul_fast, mul_acc_naive, sample_assignment, Gf64, GroupAlgebraElem, MAX_FAST_DIM};
use crate::util::derive_seed;

/// A run of `z`-degrees `lo..lo+parts` with one group-algebra element each;
/// degrees outside the run are zero.
struct Window {
    lo: usize,
    parts: usize,
    data: Vec<Gf64>,
}

impl Window {
    fn empty() -> Self {
        Self { lo: 0, parts: 0, data: Vec::new() }
    }

    fn part(&self, d: usize, size: usize) -> Option<&[Gf64]> {
        if d < self.lo || d >= self.lo + self.parts {
            return None;
        }
        let i = d - self.lo;
        Some(&self.data[i * size..(i + 1) * size])
    }
}

fn mul_acc(out: &mut [Gf64], a: &[Gf64], b: &[Gf64], k: u32) {
    let dense = |x: &[Gf64]| x.iter().filter(|c| !c.is_zero()).count() > 64;
    if (10..=MAX_FAST_DIM).contains(&k) && dense(a) && dense(b) {
        let p = ga_mul_fast(&GroupAlgebraElem::from_coeffs(a.to_vec()), &GroupAlgebraElem::from_coeffs(b.to_vec()))
            .expect("dimensions checked");
        for (o, c) in out.iter_mut().zip(p.coeffs()) {
            *o += *c;
        }
    } else {
        mul_acc_naive(out, a, b);
    }
}

/// Random inputs for one trial.
pub(crate) struct TrialInputs {
    base: usize,
    masks: Vec<usize>,
    scalars: Vec<Gf64>,
}

impl TrialInputs {
    pub(crate) fn sample(c: &Circuit, k: u32, seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, trial));
        let a = sample_assignment(&mut rng, c.n_vars(), k);
        let scalars = (0..c.n_slots()).map(|_| Gf64(rng.gen())).collect();
        Self { base: a.base as usize, masks: a.masks.into_iter().map(|m| m as usize).collect(), scalars }
    }
}

/// Evaluates the `z^t` part of the output.
///
/// Each variable occurrence `x_w` in slot `s` becomes `r_s·(g_{v0} + g_{v_w})`
/// with a uniform scalar `r_s`. With `windowed`, and when the circuit carries
/// gate degrees, each gate keeps only the `z`-degrees that can still reach
/// `z^t` at the output.
pub(crate) fn evaluate(c: &Circuit, t: usize, k: u32, inputs: &TrialInputs, windowed: bool) -> Result<GroupAlgebraElem, TpeError> {
    if t > c.zcap() {
        return Err(TpeError::DegreeAboveCap { t, zcap: c.zcap() });
    }
    if k > 24 {
        return Err(TpeError::GroupTooLarge(k));
    }
    let size = 1usize << k;
    let gates = c.gates();
    let degrees = if windowed { c.degrees() } else { None };
    let eta = c.tree_order();
    let window_of = |id: usize| -> (usize, usize) {
        match (degrees, &gates[id]) {
            // The z factor of a vertex is multiplied in above its variable.
            (Some(_), Gate::Var { .. }) => (0, 1),
            (Some(deg), g) if !matches!(g, Gate::Const { .. }) => {
                let d = deg[id] as usize;
                let lo = (t + d).saturating_sub(eta);
                let hi = t.min(d);
                (lo, (hi + 1).saturating_sub(lo))
            }
            _ => (0, c.zcap() + 1),
        }
    };

    let mut last_use = vec![0usize; gates.len()];
    for (id, g) in gates.iter().enumerate() {
        match g {
            Gate::Add(ins) => ins.iter().for_each(|&i| last_use[i] = id),
            Gate::Mul(a, b) => {
                last_use[*a] = id;
                last_use[*b] = id;
            }
            _ => {}
        }
    }
    last_use[c.output()] = usize::MAX;

    let mut vals: Vec<Window> = Vec::with_capacity(gates.len());
    for (id, g) in gates.iter().enumerate() {
        let (lo, parts) = window_of(id);
        let mut w = Window { lo, parts, data: vec![Gf64::ZERO; parts * size] };
        match g {
            Gate::Zero => w = Window::empty(),
            Gate::Const { zdeg } => {
                let d = *zdeg as usize;
                if d >= lo && d < lo + parts {
                    w.data[(d - lo) * size] = Gf64::ONE;
                }
            }
            Gate::Var { var, slot } => {
                if lo == 0 && parts > 0 {
                    let r = inputs.scalars[*slot];
                    w.data[inputs.base] += r;
                    w.data[inputs.masks[*var]] += r;
                }
            }
            Gate::Add(ins) => {
                for &i in ins {
                    let src = &vals[i];
                    for d in lo..lo + parts {
                        if let Some(p) = src.part(d, size) {
                            let dst = &mut w.data[(d - lo) * size..(d - lo + 1) * size];
                            for (x, y) in dst.iter_mut().zip(p) {
                                *x += *y;
                            }
                        }
                    }
                }
            }
            Gate::Mul(a, b) => {
                let (va, vb) = (&vals[*a], &vals[*b]);
                for i in va.lo..va.lo + va.parts {
                    let pa = va.part(i, size).unwrap();
                    if pa.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    for j in vb.lo..vb.lo + vb.parts {
                        let d = i + j;
                        if d < lo || d >= lo + parts {
                            continue;
                        }
                        let pb = vb.part(j, size).unwrap();
                        mul_acc(&mut w.data[(d - lo) * size..(d - lo + 1) * size], pa, pb, k);
                    }
                }
            }
        }
        vals.push(w);
        match g {
            Gate::Add(ins) => {
                for &i in ins {
                    if last_use[i] == id {
                        vals[i] = Window::empty();
                    }
                }
            }
            Gate::Mul(a, b) => {
                for i in [*a, *b] {
                    if last_use[i] == id {
                        vals[i] = Window::empty();
                    }
                }
            }
            _ => {}
        }
    }
    let out = &vals[c.output()];
    Ok(match out.part(t, size) {
        Some(p) => GroupAlgebraElem::from_coeffs(p.to_vec()),
        None => GroupAlgebraElem::zero(k),
    })
}

/// The set of `z`-degrees (as a bitmask, degrees below 64) of monomials with
/// nonzero integer coefficient, ignoring variables. A missing degree `t` means
/// no `z^t` monomial exists at all.
pub(crate) fn zdegree_support(c: &Circuit) -> u64 {
    let mut sup: Vec<u64> = Vec::with_capacity(c.gate_count());
    for g in c.gates() {
        let s = match g {
            Gate::Zero => 0,
            Gate::Var { .. } => 1,
            Gate::Const { zdeg } => {
                if *zdeg < 64 {
                    1u64 << zdeg
                } else {
                    0
                }
            }
            Gate::Add(ins) => ins.iter().fold(0, |acc, &i| acc | sup[i]),
            Gate::Mul(a, b) => {
                let (x, y) = (sup[*a], sup[*b]);
                let mut out = 0u64;
                let mut bits = x;
                while bits != 0 {
                    let i = bits.trailing_zeros();
                    out |= y << i;
                    bits &= bits - 1;
                }
                out
            }
        };
        sup.push(s);
    }
    sup[c.output()]
}
