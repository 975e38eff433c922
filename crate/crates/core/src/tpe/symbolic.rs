//! Exact expansion of small circuits into integer-coefficient polynomials.

use std::collections::BTreeMap;

use super::circuit::{Circuit, Gate};
use super::TpeError;

/// Largest host order and tree order accepted by [`expand_symbolic`].
pub const SYMBOLIC_MAX_VARS: usize = 6;
pub const SYMBOLIC_MAX_TREE: usize = 4;

/// A monomial: sorted variable multiset and `z`-degree.
pub type Monomial = (Vec<usize>, u32);
pub type Polynomial = BTreeMap<Monomial, u64>;

/// Expands the circuit output, dropping monomials with more than `max_vars`
/// variables or `z`-degree above `max_zdeg`. Coefficients are exact counts,
/// not reduced mod 2; random scalars play no part.
pub fn expand_symbolic(c: &Circuit, max_vars: usize, max_zdeg: u32) -> Result<Polynomial, TpeError> {
    if c.n_vars() > SYMBOLIC_MAX_VARS || c.tree_order() > SYMBOLIC_MAX_TREE {
        return Err(TpeError::SymbolicGuard { n_vars: c.n_vars(), tree_order: c.tree_order() });
    }
    let mut vals: Vec<Polynomial> = Vec::with_capacity(c.gate_count());
    for g in c.gates() {
        let mut p = Polynomial::new();
        match g {
            Gate::Zero => {}
            Gate::Var { var, .. } => {
                if max_vars >= 1 {
                    p.insert((vec![*var], 0), 1);
                }
            }
            Gate::Const { zdeg } => {
                if *zdeg <= max_zdeg {
                    p.insert((Vec::new(), *zdeg), 1);
                }
            }
            Gate::Add(ins) => {
                for &i in ins {
                    for (m, &coef) in &vals[i] {
                        *p.entry(m.clone()).or_insert(0) += coef;
                    }
                }
            }
            Gate::Mul(a, b) => {
                for ((va, za), &ca) in &vals[*a] {
                    for ((vb, zb), &cb) in &vals[*b] {
                        let z = za + zb;
                        if va.len() + vb.len() > max_vars || z > max_zdeg {
                            continue;
                        }
                        let mut vars = Vec::with_capacity(va.len() + vb.len());
                        vars.extend_from_slice(va);
                        vars.extend_from_slice(vb);
                        vars.sort_unstable();
                        *p.entry((vars, z)).or_insert(0) += ca * cb;
                    }
                }
            }
        }
        p.retain(|_, c| *c != 0);
        vals.push(p);
    }
    Ok(vals.swap_remove(c.output()))
}

/// Whether some monomial has `z`-degree `t` and exactly `vars` distinct
/// variables, each with exponent one.
pub fn has_multilinear_monomial(p: &Polynomial, t: u32, vars: usize) -> bool {
    p.iter().any(|((vs, z), &coef)| {
        coef > 0 && *z == t && vs.len() == vars && vs.windows(2).all(|w| w[0] != w[1])
    })
}
