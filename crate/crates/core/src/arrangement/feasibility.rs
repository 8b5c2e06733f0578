//! Exact feasibility of mixed strict / weak / equality linear systems over
//! the rationals by Fourier–Motzkin elimination.
//!
//! Equalities are pivoted away first. Each remaining variable is then
//! eliminated by pairing its lower and upper bounds; a combined inequality
//! is strict iff either parent is. The eliminated bounds are kept so a
//! witness can be rebuilt by back-substitution, taking the midpoint of each
//! feasible interval (or a bound ± 1 when one side is open).

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::linalg::{one, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `expr = 0`
    Eq,
    /// `expr > 0`
    Gt,
    /// `expr >= 0`
    Ge,
}

/// `coeffs · x + constant  REL  0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub constant: Q,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, constant: Q, relation: Relation) -> Self {
        Constraint { coeffs, constant, relation }
    }

    /// `expr < 0`, stored as `-expr > 0`.
    pub fn lt(coeffs: &[Q], constant: &Q) -> Self {
        Constraint::new(coeffs.iter().map(|c| -c).collect(), -constant, Relation::Gt)
    }

    /// `expr <= 0`, stored as `-expr >= 0`.
    pub fn le(coeffs: &[Q], constant: &Q) -> Self {
        Constraint::new(coeffs.iter().map(|c| -c).collect(), -constant, Relation::Ge)
    }

    fn value(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn holds_at(&self, x: &[Q]) -> bool {
        let v = self.value(x);
        match self.relation {
            Relation::Eq => v.is_zero(),
            Relation::Gt => v.is_positive(),
            Relation::Ge => !v.is_negative(),
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn constant_holds(&self) -> bool {
        match self.relation {
            Relation::Eq => self.constant.is_zero(),
            Relation::Gt => self.constant.is_positive(),
            Relation::Ge => !self.constant.is_negative(),
        }
    }

    /// Positive rescaling so the first nonzero coefficient has magnitude one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.constant /= &lead;
        }
        self
    }
}

/// Bounds on one variable recorded when it was eliminated.
struct Elimination {
    var: usize,
    lower: Vec<Constraint>,
    upper: Vec<Constraint>,
}

/// Returns a rational point satisfying every constraint, or `None` if the
/// system is infeasible. All constraints must have `n` coefficients.
pub fn find_point(n: usize, constraints: &[Constraint]) -> Option<Vec<Q>> {
    let mut system: Vec<Constraint> = constraints.to_vec();
    debug_assert!(system.iter().all(|c| c.coeffs.len() == n));

    // pivot equalities: x_j = -(constant + sum_{k != j} a_k x_k) / a_j
    let mut pivots: Vec<(usize, Constraint)> = Vec::new();
    while let Some(pos) = system.iter().position(|c| c.relation == Relation::Eq) {
        let eq = system.swap_remove(pos);
        let Some(j) = eq.coeffs.iter().position(|c| !c.is_zero()) else {
            if eq.constant_holds() {
                continue;
            }
            return None;
        };
        for c in &mut system {
            substitute(c, &eq, j);
        }
        pivots.push((j, eq));
    }

    let mut eliminations = Vec::new();
    let mut system = prune(system)?;
    for var in 0..n {
        if pivots.iter().any(|(j, _)| *j == var) {
            continue;
        }
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in system {
            if c.coeffs[var].is_positive() {
                lower.push(c);
            } else if c.coeffs[var].is_negative() {
                upper.push(c);
            } else {
                rest.push(c);
            }
        }
        for l in &lower {
            for u in &upper {
                rest.push(combine(l, u, var));
            }
        }
        eliminations.push(Elimination { var, lower, upper });
        system = prune(rest)?;
    }
    // only constant constraints can remain and prune has checked them
    debug_assert!(system.is_empty());

    let mut x = vec![Q::zero(); n];
    for e in eliminations.iter().rev() {
        x[e.var] = choose_value(e, &x);
    }
    for (j, eq) in pivots.iter().rev() {
        let rest = eq
            .coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| k != j)
            .fold(eq.constant.clone(), |acc, (k, a)| acc + a * &x[k]);
        x[*j] = -rest / &eq.coeffs[*j];
    }
    assert!(
        constraints.iter().all(|c| c.holds_at(&x)),
        "back-substituted witness violates the system"
    );
    Some(x)
}

/// `find_point(..).is_some()`.
pub fn is_feasible(n: usize, constraints: &[Constraint]) -> bool {
    find_point(n, constraints).is_some()
}

/// Replaces x_j in `c` using the equality `eq` (whose x_j coefficient is nonzero).
fn substitute(c: &mut Constraint, eq: &Constraint, j: usize) {
    if c.coeffs[j].is_zero() {
        return;
    }
    let f = &c.coeffs[j] / &eq.coeffs[j];
    for (ck, ek) in c.coeffs.iter_mut().zip(&eq.coeffs) {
        *ck -= &f * ek;
    }
    c.constant -= &f * &eq.constant;
    c.coeffs[j] = Q::zero();
}

/// Positive combination cancelling `var` between a lower and an upper bound.
fn combine(lower: &Constraint, upper: &Constraint, var: usize) -> Constraint {
    let a = &lower.coeffs[var];
    let b = -&upper.coeffs[var];
    let coeffs = lower
        .coeffs
        .iter()
        .zip(&upper.coeffs)
        .map(|(l, u)| l * &b + u * a)
        .collect();
    let constant = &lower.constant * &b + &upper.constant * a;
    let relation = if lower.relation == Relation::Gt || upper.relation == Relation::Gt {
        Relation::Gt
    } else {
        Relation::Ge
    };
    let mut c = Constraint::new(coeffs, constant, relation);
    c.coeffs[var] = Q::zero();
    c
}

/// Drops satisfied constant rows, fails on violated ones, and removes
/// duplicates (keeping the strict version of equal rows).
fn prune(system: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut seen: HashMap<(Vec<Q>, Q), usize> = HashMap::new();
    let mut out: Vec<Constraint> = Vec::new();
    for c in system {
        if c.is_constant() {
            if !c.constant_holds() {
                return None;
            }
            continue;
        }
        let c = c.normalized();
        let key = (c.coeffs.clone(), c.constant.clone());
        match seen.get(&key) {
            Some(&i) => {
                if c.relation == Relation::Gt {
                    out[i].relation = Relation::Gt;
                }
            }
            None => {
                seen.insert(key, out.len());
                out.push(c);
            }
        }
    }
    Some(out)
}

/// Bound on `x[var]` implied by `c` given the other coordinates.
fn bound(c: &Constraint, var: usize, x: &[Q]) -> Q {
    let rest = c
        .coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != var)
        .fold(c.constant.clone(), |acc, (k, a)| acc + a * &x[k]);
    -rest / &c.coeffs[var]
}

fn choose_value(e: &Elimination, x: &[Q]) -> Q {
    let lo = e.lower.iter().map(|c| bound(c, e.var, x)).max();
    let hi = e.upper.iter().map(|c| bound(c, e.var, x)).min();
    match (lo, hi) {
        (Some(lo), Some(hi)) => (lo + hi) / Q::from_integer(2.into()),
        (Some(lo), None) => lo + one(),
        (None, Some(hi)) => hi - one(),
        (None, None) => Q::zero(),
    }
}
