//! Conditional first hitting times `h = 1 + Q h` on the non-optimal states.
//!
//! The non-optimal part of the chain is split into strongly connected
//! components, which Tarjan's algorithm emits successors first. Each
//! component is then solved with everything downstream already known:
//! singletons directly, small components with a dense LU factorization and
//! large ones with Gauss-Seidel sweeps.

use nalgebra::{DMatrix, DVector};

use super::matrix::TransitionMatrix;
use crate::error::{Error, Result};

/// Components up to this size are solved densely.
const DENSE_LIMIT: usize = 1024;
const MAX_SWEEPS: usize = 1_000_000;
/// Accepted re-substitution residual.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// CFHT of every state, zero on optimal states.
pub fn cfht_solve(chain: &TransitionMatrix) -> Result<Vec<f64>> {
    solve_with_limit(chain, DENSE_LIMIT)
}

fn solve_with_limit(chain: &TransitionMatrix, dense_limit: usize) -> Result<Vec<f64>> {
    check_absorbing(chain)?;
    let space = chain.space();
    let active: Vec<bool> = (0..chain.len()).map(|i| !space.is_optimal(i)).collect();
    let comps = strongly_connected(chain, &active);
    let mut h = vec![0.0; chain.len()];
    let mut local = vec![usize::MAX; chain.len()];
    for comp in comps {
        if comp.len() == 1 {
            solve_single(chain, &active, &mut h, comp[0])?;
        } else if comp.len() <= dense_limit {
            solve_dense(chain, &active, &mut h, &mut local, &comp)?;
        } else {
            solve_iterative(chain, &active, &mut h, &mut local, &comp)?;
        }
    }
    let r = residual(chain, &h);
    if r > RESIDUAL_TOL {
        return Err(Error::Solver(format!(
            "residual {r:e} above {RESIDUAL_TOL:e}"
        )));
    }
    Ok(h)
}

/// `max |h(x) - 1 - sum_y P(x,y) h(y)|` over non-optimal `x`.
pub fn residual(chain: &TransitionMatrix, h: &[f64]) -> f64 {
    let space = chain.space();
    (0..chain.len())
        .filter(|&i| !space.is_optimal(i))
        .map(|i| {
            let (cols, vals) = chain.row(i);
            let next: f64 = cols
                .iter()
                .zip(vals)
                .map(|(&j, &p)| p * h[j as usize])
                .sum();
            (h[i] - 1.0 - next).abs()
        })
        .fold(0.0, f64::max)
}

/// Expected first hitting time from the uniform initial distribution.
pub fn efht_uniform(chain: &TransitionMatrix) -> Result<f64> {
    let h = cfht_solve(chain)?;
    Ok(h.iter().sum::<f64>() / h.len() as f64)
}

/// Expected first hitting time from `pi`.
pub fn dcfht(h: &[f64], pi: &[f64]) -> f64 {
    h.iter().zip(pi).map(|(a, b)| a * b).sum()
}

/// Fails when some non-optimal state cannot reach the optimum.
pub fn check_absorbing(chain: &TransitionMatrix) -> Result<()> {
    let len = chain.len();
    let space = chain.space();
    let mut indeg = vec![0usize; len + 1];
    for i in 0..len {
        for &j in chain.row(i).0 {
            indeg[j as usize + 1] += 1;
        }
    }
    for k in 0..len {
        indeg[k + 1] += indeg[k];
    }
    let mut pred = vec![0u32; indeg[len]];
    let mut fill = indeg.clone();
    for i in 0..len {
        for &j in chain.row(i).0 {
            pred[fill[j as usize]] = i as u32;
            fill[j as usize] += 1;
        }
    }
    let mut seen: Vec<bool> = (0..len).map(|i| space.is_optimal(i)).collect();
    let mut queue: Vec<usize> = (0..len).filter(|&i| seen[i]).collect();
    while let Some(v) = queue.pop() {
        for &u in &pred[indeg[v]..indeg[v + 1]] {
            if !seen[u as usize] {
                seen[u as usize] = true;
                queue.push(u as usize);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(state) => Err(Error::NotAbsorbing { state }),
        None => Ok(()),
    }
}

/// Tarjan's algorithm over the active states, without recursion.
/// Components come out in reverse topological order.
fn strongly_connected(chain: &TransitionMatrix, active: &[bool]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let len = chain.len();
    let mut index = vec![UNSEEN; len];
    let mut low = vec![0usize; len];
    let mut on_stack = vec![false; len];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    let mut calls: Vec<(usize, usize)> = Vec::new();
    for root in 0..len {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let cols = chain.row(v).0;
            if *pos < cols.len() {
                let w = cols[*pos] as usize;
                *pos += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                calls.pop();
                if let Some(&(u, _)) = calls.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

fn solve_single(chain: &TransitionMatrix, active: &[bool], h: &mut [f64], x: usize) -> Result<()> {
    let (cols, vals) = chain.row(x);
    let mut stay = 0.0;
    let mut rhs = 1.0;
    for (&j, &p) in cols.iter().zip(vals) {
        let j = j as usize;
        if j == x {
            stay += p;
        } else if active[j] {
            rhs += p * h[j];
        }
    }
    if stay >= 1.0 {
        return Err(Error::NotAbsorbing { state: x });
    }
    h[x] = rhs / (1.0 - stay);
    Ok(())
}

/// `1 + sum of P(x, y) h(y)` over already solved states `y` outside the component.
fn outside_rhs(
    chain: &TransitionMatrix,
    active: &[bool],
    h: &[f64],
    local: &[usize],
    x: usize,
) -> f64 {
    let (cols, vals) = chain.row(x);
    1.0 + cols
        .iter()
        .zip(vals)
        .filter(|(&j, _)| active[j as usize] && local[j as usize] == usize::MAX)
        .map(|(&j, &p)| p * h[j as usize])
        .sum::<f64>()
}

fn solve_dense(
    chain: &TransitionMatrix,
    active: &[bool],
    h: &mut [f64],
    local: &mut [usize],
    comp: &[usize],
) -> Result<()> {
    let m = comp.len();
    for (k, &x) in comp.iter().enumerate() {
        local[x] = k;
    }
    let mut a = DMatrix::<f64>::identity(m, m);
    let mut b = DVector::<f64>::zeros(m);
    for (k, &x) in comp.iter().enumerate() {
        b[k] = outside_rhs(chain, active, h, local, x);
        let (cols, vals) = chain.row(x);
        for (&j, &p) in cols.iter().zip(vals) {
            let l = local[j as usize];
            if l != usize::MAX {
                a[(k, l)] -= p;
            }
        }
    }
    let sol = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Solver("singular component matrix".into()))?;
    for (k, &x) in comp.iter().enumerate() {
        h[x] = sol[k];
        local[x] = usize::MAX;
    }
    Ok(())
}

fn solve_iterative(
    chain: &TransitionMatrix,
    active: &[bool],
    h: &mut [f64],
    local: &mut [usize],
    comp: &[usize],
) -> Result<()> {
    for (k, &x) in comp.iter().enumerate() {
        local[x] = k;
    }
    let base: Vec<f64> = comp
        .iter()
        .map(|&x| outside_rhs(chain, active, h, local, x))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut change = 0.0f64;
        let mut scale = 1.0f64;
        for (k, &x) in comp.iter().enumerate() {
            let (cols, vals) = chain.row(x);
            let mut stay = 0.0;
            let mut acc = base[k];
            for (&j, &p) in cols.iter().zip(vals) {
                let j = j as usize;
                if j == x {
                    stay += p;
                } else if local[j] != usize::MAX {
                    acc += p * h[j];
                }
            }
            let v = acc / (1.0 - stay);
            change = change.max((v - h[x]).abs());
            scale = scale.max(v.abs());
            h[x] = v;
        }
        if change <= 1e-14 * scale {
            converged = true;
            break;
        }
    }
    for &x in comp {
        local[x] = usize::MAX;
    }
    if converged {
        Ok(())
    } else {
        Err(Error::Solver(format!(
            "Gauss-Seidel did not converge on a component of {} states",
            comp.len()
        )))
    }
}
