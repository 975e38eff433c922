//! Monotone arithmetic circuits for the embedding polynomial `Q(X, z)`.

use super::{indicator, Indicator, TpeInstance};

pub type GateId = usize;

/// Constant in the bound `size ≤ SIZE_CONSTANT · n³` on circuits produced by
/// [`build_circuit`], where size counts gates plus wires.
///
/// Before pruning, each pair (tree vertex `u`, host vertex `w`) owns one
/// variable gate, one `z`-product, and an addition plus a multiplication per
/// child of `u`: at most `4ηn` gates over all pairs. The additions read at
/// most `(η−1)·m ≤ n³` wires, the multiplications `2·4ηn ≤ 8n²` more, and
/// the output sum `n`.
pub const SIZE_CONSTANT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Variable `x_var`. `slot` selects the random scalar attached to this
    /// occurrence; occurrences in different slots get independent scalars.
    Var { var: usize, slot: usize },
    /// The constant `z^zdeg`.
    Const { zdeg: u32 },
    Zero,
    Add(Vec<GateId>),
    Mul(GateId, GateId),
}

#[derive(Clone, Debug)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: GateId,
    n_vars: usize,
    n_slots: usize,
    zcap: usize,
    tree_order: usize,
    /// Homogeneous variable degree of each gate, present when every `z`
    /// factor is paired with a variable occurrence. Enables degree windows
    /// during evaluation.
    degrees: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("gate {0} references gate {1}, which is not below it")]
    ForwardReference(GateId, GateId),
    #[error("gate {0} uses variable or slot out of range")]
    BadInput(GateId),
    #[error("output gate {0} does not exist")]
    BadOutput(GateId),
}

/// Incremental builder; gates may only reference gates added before them.
#[derive(Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) -> GateId {
        self.gates.push(gate);
        self.gates.len() - 1
    }

    pub fn var(&mut self, var: usize, slot: usize) -> GateId {
        self.push(Gate::Var { var, slot })
    }

    pub fn constant(&mut self, zdeg: u32) -> GateId {
        self.push(Gate::Const { zdeg })
    }

    pub fn add(&mut self, inputs: Vec<GateId>) -> GateId {
        self.push(Gate::Add(inputs))
    }

    pub fn mul(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Mul(a, b))
    }

    /// Finishes a hand-built circuit; variable and slot counts are inferred.
    pub fn finish(self, output: GateId, zcap: usize) -> Result<Circuit, CircuitError> {
        let n_vars = self.gates.iter().filter_map(|g| match g {
            Gate::Var { var, .. } => Some(var + 1),
            _ => None,
        }).max().unwrap_or(0);
        let n_slots = self.gates.iter().filter_map(|g| match g {
            Gate::Var { slot, .. } => Some(slot + 1),
            _ => None,
        }).max().unwrap_or(0);
        let c = Circuit { gates: self.gates, output, n_vars, n_slots, zcap, tree_order: 0, degrees: None };
        c.validate()?;
        Ok(c)
    }
}

impl Circuit {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn zcap(&self) -> usize {
        self.zcap
    }

    /// Order of the pattern tree, 0 for hand-built circuits.
    pub fn tree_order(&self) -> usize {
        self.tree_order
    }

    pub(crate) fn degrees(&self) -> Option<&[u32]> {
        self.degrees.as_deref()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn wire_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::Add(v) => v.len(),
                Gate::Mul(..) => 2,
                _ => 0,
            })
            .sum()
    }

    /// Gates plus wires.
    pub fn size(&self) -> usize {
        self.gate_count() + self.wire_count()
    }

    /// Whether the output is the constant zero polynomial by construction.
    pub fn is_trivially_zero(&self) -> bool {
        matches!(self.gates[self.output], Gate::Zero)
    }

    /// Checks topological order and input ranges. Monotonicity is structural:
    /// there is no subtraction gate and constants are powers of `z`.
    pub fn validate(&self) -> Result<(), CircuitError> {
        if self.output >= self.gates.len() {
            return Err(CircuitError::BadOutput(self.output));
        }
        for (id, g) in self.gates.iter().enumerate() {
            match g {
                Gate::Var { var, slot } if *var >= self.n_vars || *slot >= self.n_slots => {
                    return Err(CircuitError::BadInput(id))
                }
                Gate::Add(inputs) => {
                    if let Some(&bad) = inputs.iter().find(|&&i| i >= id) {
                        return Err(CircuitError::ForwardReference(id, bad));
                    }
                }
                Gate::Mul(a, b) => {
                    for &i in [a, b] {
                        if i >= id {
                            return Err(CircuitError::ForwardReference(id, i));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn push(b: &mut CircuitBuilder, degrees: &mut Vec<u32>, g: Gate, d: u32) -> GateId {
    degrees.push(d);
    b.push(g)
}

/// Builds the circuit for `Q(X, z) = Σ_w Q_{r,w}` with the tree rooted at
/// vertex 0.
///
/// `Q_{u,w}` is the indicator-weighted variable `x_w` times, for each child
/// `v` of `u`, the sum of `Q_{v,w'}` over host in-neighbours `w'` of `w`
/// (when `v → u` in the tree) or host out-neighbours (when `u → v`). Pairs
/// whose indicator is zero, and products with an empty sum, are pruned.
/// Gates are shared between all parents that use them.
pub fn build_circuit(inst: &TpeInstance) -> Circuit {
    let host = inst.host();
    let tree = inst.tree();
    let n = host.n();
    let eta = tree.order();
    let parents = tree.parents();
    let mut children: Vec<Vec<(usize, bool)>> = vec![Vec::new(); eta];
    for &(a, b) in tree.arcs() {
        // (child, child_is_in_neighbour)
        if parents[b] == a && b != 0 {
            children[a].push((b, false));
        } else {
            children[b].push((a, true));
        }
    }
    for c in children.iter_mut() {
        c.sort_unstable();
    }
    let mut subtree = vec![1u32; eta];
    for u in (1..eta).rev() {
        subtree[parents[u]] += subtree[u];
    }

    let mut b = CircuitBuilder::new();
    let mut degrees: Vec<u32> = Vec::new();
    let z = push(&mut b, &mut degrees, Gate::Const { zdeg: 1 }, 0);
    let mut q: Vec<Vec<Option<GateId>>> = vec![vec![None; n]; eta];
    // Preorder ids put every child after its parent.
    for u in (0..eta).rev() {
        for w in 0..n {
            let ind = indicator(u, w, inst);
            if ind == Indicator::Zero {
                continue;
            }
            let sums: Option<Vec<GateId>> = children[u]
                .iter()
                .map(|&(v, incoming)| {
                    let nbrs = if incoming { host.in_neighbors(w) } else { host.out_neighbors(w) };
                    let terms: Vec<GateId> = nbrs.iter().filter_map(|&x| q[v][x]).collect();
                    match terms.len() {
                        0 => None,
                        1 => Some(terms[0]),
                        _ => Some(push(&mut b, &mut degrees, Gate::Add(terms), subtree[v])),
                    }
                })
                .collect();
            let Some(sums) = sums else { continue };
            let slot = u * n + w;
            let mut acc = push(&mut b, &mut degrees, Gate::Var { var: w, slot }, 1);
            if ind == Indicator::Z {
                acc = push(&mut b, &mut degrees, Gate::Mul(z, acc), 1);
            }
            let mut deg = 1;
            for (s, &(v, _)) in sums.into_iter().zip(&children[u]) {
                deg += subtree[v];
                acc = push(&mut b, &mut degrees, Gate::Mul(acc, s), deg);
            }
            q[u][w] = Some(acc);
        }
    }
    let roots: Vec<GateId> = q[0].iter().flatten().copied().collect();
    let output = match roots.len() {
        0 => push(&mut b, &mut degrees, Gate::Zero, eta as u32),
        1 => roots[0],
        _ => push(&mut b, &mut degrees, Gate::Add(roots), eta as u32),
    };
    Circuit {
        gates: b.gates,
        output,
        n_vars: n,
        n_slots: eta * n,
        zcap: inst.terminal_count(),
        tree_order: eta,
        degrees: Some(degrees),
    }
}
