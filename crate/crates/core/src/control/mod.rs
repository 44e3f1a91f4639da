//! Kalman controllability of graphs and its links to charpoly irreducibility
//! and graph symmetry.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{IntMatrix, IntPoly};
use crate::algebraic::{classify_irreducibility, Effort, Status};

/// Largest vertex count for [`automorphisms_bruteforce`].
pub const AUTOMORPHISM_MAX_N: usize = 10;

/// Largest vertex count a [`Graph`] can hold.
pub const GRAPH_MAX_N: usize = 64;

/// Prime used by the modular rank prefilter.
pub const PREFILTER_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ControlError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("n = {n} exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Simple undirected graph on `0..n`, rows stored as bit masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeList", into = "EdgeList")]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

/// JSON shape of a graph: `{"n": 3, "edges": [[0, 1], [1, 2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TryFrom<EdgeList> for Graph {
    type Error = ControlError;
    fn try_from(e: EdgeList) -> Result<Self, ControlError> {
        Graph::from_edges(e.n, &e.edges)
    }
}

impl From<Graph> for EdgeList {
    fn from(g: Graph) -> Self {
        EdgeList {
            n: g.n,
            edges: g.edges(),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, ControlError> {
        if n > GRAPH_MAX_N {
            return Err(ControlError::TooLarge { n, max: GRAPH_MAX_N });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ControlError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ControlError::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(ControlError::InvalidGraph(format!("loop at {u}")));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Graph whose edge set is the bits of `code` over the pairs `i < j` in
    /// lexicographic order.
    pub fn from_code(n: usize, code: u64) -> Result<Self, ControlError> {
        let mut g = Graph::empty(n)?;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if code >> bit & 1 == 1 {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Checks symmetry, 0/1 entries and a zero diagonal.
    pub fn from_adjacency(a: &IntMatrix) -> Result<Self, ControlError> {
        let n = a.dim();
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            for j in 0..n {
                let x = a.get(i, j);
                if !(x.is_zero() || x.is_one()) {
                    return Err(ControlError::InvalidGraph("entries must be 0 or 1".into()));
                }
                if x != a.get(j, i) {
                    return Err(ControlError::InvalidGraph("adjacency must be symmetric".into()));
                }
                if i == j && x.is_one() {
                    return Err(ControlError::InvalidGraph("diagonal must be zero".into()));
                }
                if x.is_one() {
                    g.rows[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.rows[v].count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).filter(move |&j| self.has_edge(i, j)).map(move |j| (i, j)))
            .collect()
    }

    pub fn adjacency(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| BigInt::from(self.has_edge(i, j) as u8))
    }
}

/// Columns `b, Ab, ..., A^{n-1} b`.
pub fn kalman_matrix(a: &IntMatrix, b: &[BigInt]) -> Result<IntMatrix, ControlError> {
    let n = a.dim();
    if b.len() != n {
        return Err(ControlError::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let mut k = IntMatrix::zeros(n);
    let mut col = b.to_vec();
    for j in 0..n {
        for (i, x) in col.iter().enumerate() {
            k.set(i, j, x.clone());
        }
        if j + 1 < n {
            col = a.mul_vec(&col).expect("dimensions checked");
        }
    }
    Ok(k)
}

/// Full rank of the Kalman matrix. Full rank modulo a prime already implies
/// full rank over the integers; otherwise the exact rank decides.
pub fn is_controllable(a: &IntMatrix, b: &[BigInt]) -> Result<bool, ControlError> {
    let k = kalman_matrix(a, b)?;
    let n = a.dim();
    if k.rank_mod_p(PREFILTER_PRIME) == n {
        return Ok(true);
    }
    Ok(k.rank() == n)
}

/// Controllability of `(A, 1)`.
pub fn graph_controllable(g: &Graph) -> bool {
    let ones = vec![BigInt::one(); g.n()];
    is_controllable(&g.adjacency(), &ones).expect("square")
}

/// Controllability of `(A, e_i)` for every vertex `i`.
pub fn minimally_controllable(g: &Graph) -> bool {
    let a = g.adjacency();
    (0..g.n()).all(|i| {
        let mut e = vec![BigInt::zero(); g.n()];
        e[i] = BigInt::one();
        is_controllable(&a, &e).expect("square")
    })
}

/// Number of automorphisms by backtracking over degree-preserving partial maps.
pub fn automorphisms_bruteforce(g: &Graph) -> Result<u64, ControlError> {
    let n = g.n();
    if n > AUTOMORPHISM_MAX_N {
        return Err(ControlError::TooLarge {
            n,
            max: AUTOMORPHISM_MAX_N,
        });
    }
    fn extend(g: &Graph, map: &mut Vec<usize>, used: &mut u64) -> u64 {
        let v = map.len();
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.n() {
            if *used >> w & 1 == 1 || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(map[u], w)) {
                map.push(w);
                *used |= 1 << w;
                total += extend(g, map, used);
                *used &= !(1 << w);
                map.pop();
            }
        }
        total
    }
    Ok(extend(g, &mut Vec::with_capacity(n), &mut 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    Skipped,
}

/// Both implications checked on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GodsilCheck {
    pub graph: Graph,
    pub charpoly: IntPoly,
    /// `irreducible`, `reducible` or `unknown`
    pub irreducibility: &'static str,
    pub controllable: bool,
    pub minimally_controllable: bool,
    pub automorphisms: Option<u64>,
    pub verdict: Verdict,
}

/// Irreducible charpoly must give a controllable, minimally controllable
/// graph; a controllable graph must have no automorphism but the identity.
/// An undecided charpoly makes the result `Skipped` unless the second
/// implication already fails.
pub fn godsil_cross_check(g: &Graph, effort: Effort) -> GodsilCheck {
    let charpoly = g.adjacency().charpoly();
    let status = classify_irreducibility(&charpoly, effort)
        .map(|r| r.status)
        .unwrap_or(Status::Unknown);
    let irreducibility = match status {
        Status::Irreducible => "irreducible",
        Status::Reducible => "reducible",
        _ => "unknown",
    };
    let controllable = graph_controllable(g);
    let minimal = minimally_controllable(g);
    let automorphisms = if g.n() <= AUTOMORPHISM_MAX_N {
        Some(automorphisms_bruteforce(g).expect("size checked"))
    } else {
        None
    };
    let symmetric_violation = controllable && automorphisms.is_some_and(|a| a != 1);
    let verdict = if symmetric_violation || (status == Status::Irreducible && !(controllable && minimal)) {
        Verdict::Violated
    } else if irreducibility == "unknown" {
        Verdict::Skipped
    } else {
        Verdict::Holds
    };
    GodsilCheck {
        graph: g.clone(),
        charpoly,
        irreducibility,
        controllable,
        minimally_controllable: minimal,
        automorphisms,
        verdict,
    }
}
