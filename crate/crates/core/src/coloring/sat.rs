//! q-colorability as a SAT instance, solved by a CDCL solver.
//!
//! Variables `x(v, c)` say that vertex `v` may take color `c`. Symmetry is
//! broken along a breadth-first vertex order rooted at a vertex of maximum
//! degree: the vertex at position `i` uses a color `<= i`, and color `c > 0`
//! may appear at position `i` only if color `c - 1` already appears at an
//! earlier position (value precedence).
//!
//! Anchoring the order at a pre-colored clique instead was tried and is
//! markedly slower on the almost-interlacing graphs.

use std::collections::VecDeque;

use splr::{Certificate, Config, SolveIF, Solver, SolverError};

use crate::graphs::BitMatrix;

#[derive(Debug)]
pub(crate) enum SatVerdict {
    Colorable(Vec<usize>),
    Infeasible,
    TimedOut,
}

/// Breadth-first order; each component is rooted at its first vertex of
/// maximum degree and neighbors are visited by falling degree.
fn vertex_order(adj: &BitMatrix) -> Vec<usize> {
    let size = adj.size();
    let degree: Vec<usize> = (0..size).map(|u| adj.row(u).iter().map(|w| w.count_ones() as usize).sum()).collect();
    let mut seen = vec![false; size];
    let mut order = Vec::with_capacity(size);
    let mut queue = VecDeque::new();
    loop {
        while let Some(u) = queue.pop_front() {
            let mut nbrs: Vec<usize> = (0..size).filter(|&w| adj.get(u, w) && !seen[w]).collect();
            nbrs.sort_by_key(|&w| (std::cmp::Reverse(degree[w]), w));
            for w in nbrs {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
        let root = (0..size)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)));
        let Some(root) = root else { break };
        seen[root] = true;
        order.push(root);
        queue.push_back(root);
    }
    order
}

fn encode(adj: &BitMatrix, colors: usize) -> Vec<Vec<i32>> {
    let size = adj.size();
    let x = |v: usize, c: usize| (v * colors + c + 1) as i32;
    let order = vertex_order(adj);
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for v in 0..size {
        clauses.push((0..colors).map(|c| x(v, c)).collect());
    }
    for u in 0..size {
        for v in u + 1..size {
            if adj.get(u, v) {
                for c in 0..colors {
                    clauses.push(vec![-x(u, c), -x(v, c)]);
                }
            }
        }
    }
    // p(i, c): color c occurs among order[..=i]
    let mut next = size * colors;
    let mut prev: Vec<i32> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        for c in (i + 1)..colors {
            clauses.push(vec![-x(v, c)]);
        }
        for c in 1..colors.min(i + 1) {
            clauses.push(vec![-x(v, c), prev[c - 1]]);
        }
        let mut here = Vec::with_capacity(colors);
        for c in 0..colors {
            next += 1;
            let p = next as i32;
            let mut def = vec![-p, x(v, c)];
            if i > 0 {
                def.push(prev[c]);
                clauses.push(vec![p, -prev[c]]);
            }
            clauses.push(def);
            clauses.push(vec![p, -x(v, c)]);
            here.push(p);
        }
        prev = here;
    }
    clauses
}

/// Decides whether `adj` has a proper coloring with `colors` colors; a known
/// clique larger than `colors` settles the question at once.
pub(crate) fn decide(adj: &BitMatrix, colors: usize, clique: &[usize], timeout_secs: f64) -> SatVerdict {
    let size = adj.size();
    if clique.len() > colors {
        return SatVerdict::Infeasible;
    }
    if colors == 0 {
        return if size == 0 { SatVerdict::Colorable(Vec::new()) } else { SatVerdict::Infeasible };
    }
    let clauses = encode(adj, colors);
    let config = Config {
        c_timeout: timeout_secs,
        quiet_mode: true,
        ..Config::default()
    };
    let outcome = match Solver::try_from((config, clauses.as_slice())) {
        Ok(mut solver) => solver.solve(),
        Err(early) => early,
    };
    match outcome {
        Ok(Certificate::SAT(model)) => {
            let mut coloring = vec![usize::MAX; size];
            for lit in model {
                let var = lit as usize;
                if lit > 0 && var <= size * colors {
                    let (v, c) = ((var - 1) / colors, (var - 1) % colors);
                    coloring[v] = coloring[v].min(c);
                }
            }
            debug_assert!(coloring.iter().all(|&c| c < colors));
            SatVerdict::Colorable(coloring)
        }
        Ok(Certificate::UNSAT) | Err(SolverError::EmptyClause) | Err(SolverError::RootLevelConflict(_)) | Err(SolverError::Inconsistent) => {
            SatVerdict::Infeasible
        }
        Err(SolverError::TimeOut) => SatVerdict::TimedOut,
        Err(e) => panic!("SAT backend failed: {e}"),
    }
}
