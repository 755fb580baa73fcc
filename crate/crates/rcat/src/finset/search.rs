use super::{FinObj, ParMap};
use crate::error::{Error, Result};

/// A search for a total bijection `a -> b` preserving colours and satisfying
/// a constraint that can already reject partial assignments.
pub struct SearchProblem<'a> {
    pub a: FinObj,
    pub b: FinObj,
    /// Colour of each point; candidates must map a point to one of the same colour.
    pub color_a: Vec<u32>,
    pub color_b: Vec<u32>,
    /// Called after assigning source index `i`; `assignment[k]` is `None` for unassigned points.
    /// Must return false only when no completion can succeed.
    pub constraint: Box<dyn Fn(&[Option<u32>], u32) -> bool + Sync + 'a>,
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found {
        map: ParMap,
        nodes: u64,
    },
    /// The search space was exhausted.
    None {
        nodes: u64,
    },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&ParMap> {
        match self {
            SearchOutcome::Found { map, .. } => Some(map),
            SearchOutcome::None { .. } => None,
        }
    }
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. } | SearchOutcome::None { nodes } => *nodes,
        }
    }
}

/// Backtracking search; errors with `SEARCH_BUDGET_EXCEEDED` once `budget` nodes are visited.
pub fn iso_search(problem: &SearchProblem<'_>) -> Result<SearchOutcome> {
    let (n, m) = (problem.a.len(), problem.b.len());
    if problem.color_a.len() != n || problem.color_b.len() != m {
        return Err(Error::shape("colour vectors must cover every point"));
    }
    if n != m {
        return Ok(SearchOutcome::None { nodes: 0 });
    }
    let mut ca = problem.color_a.clone();
    let mut cb = problem.color_b.clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Ok(SearchOutcome::None { nodes: 0 });
    }
    // Most constrained first: points whose colour class is smallest.
    let class_size = |c: u32| problem.color_a.iter().filter(|&&x| x == c).count();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&i| {
        (
            class_size(problem.color_a[i as usize]),
            problem.color_a[i as usize],
            i,
        )
    });

    let mut state = State {
        assignment: vec![None; n],
        used: vec![false; m],
        nodes: 0,
    };
    if state.descend(problem, &order, 0)? {
        let table = state.assignment.clone();
        let map = ParMap::new(problem.a.clone(), problem.b.clone(), table)?;
        Ok(SearchOutcome::Found {
            map,
            nodes: state.nodes,
        })
    } else {
        Ok(SearchOutcome::None { nodes: state.nodes })
    }
}

struct State {
    assignment: Vec<Option<u32>>,
    used: Vec<bool>,
    nodes: u64,
}

impl State {
    fn descend(&mut self, p: &SearchProblem<'_>, order: &[u32], depth: usize) -> Result<bool> {
        let Some(&i) = order.get(depth) else {
            return Ok(true);
        };
        let colour = p.color_a[i as usize];
        for j in 0..p.b.len() as u32 {
            if self.used[j as usize] || p.color_b[j as usize] != colour {
                continue;
            }
            self.nodes += 1;
            if self.nodes > p.budget {
                return Err(Error::SearchBudgetExceeded { budget: p.budget });
            }
            self.assignment[i as usize] = Some(j);
            self.used[j as usize] = true;
            if (p.constraint)(&self.assignment, i) && self.descend(p, order, depth + 1)? {
                return Ok(true);
            }
            self.assignment[i as usize] = None;
            self.used[j as usize] = false;
        }
        Ok(false)
    }
}
