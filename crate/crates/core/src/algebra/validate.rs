use serde::Serialize;

use crate::algebra::table::StructureTable;
use crate::scalar::Scalar;

/// Absolute tolerance for axiom checks on float tables.
pub const FLOAT_AXIOM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Unit,
    Grading,
    Supercommutativity,
    Associativity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub pass: bool,
    /// Number of violating index tuples.
    pub violations: usize,
    /// First violating tuple: `(i, j, k)` for unit/grading/supercommutativity
    /// (`k` the output index) and `(i, j, k)` triples for associativity.
    pub first_violation: Option<[usize; 3]>,
    /// Every violating associativity triple (empty for the other axioms).
    pub violating_triples: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub p: usize,
    pub q: usize,
    pub exact: bool,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }
}

fn vanishes<S: Scalar>(x: &S) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.magnitude() < FLOAT_AXIOM_TOL
    }
}

struct Tally {
    axiom: Axiom,
    violations: usize,
    first: Option<[usize; 3]>,
    triples: Vec<[usize; 3]>,
}

impl Tally {
    fn new(axiom: Axiom) -> Self {
        Self { axiom, violations: 0, first: None, triples: Vec::new() }
    }

    fn record(&mut self, idx: [usize; 3]) {
        self.violations += 1;
        self.first.get_or_insert(idx);
        if self.axiom == Axiom::Associativity {
            self.triples.push(idx);
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom,
            pass: self.violations == 0,
            violations: self.violations,
            first_violation: self.first,
            violating_triples: self.triples,
        }
    }
}

/// Exhaustively checks unit, grading, supercommutativity and associativity.
/// Failures are reported, never raised.
pub fn validate<S: Scalar>(t: &StructureTable<S>) -> ValidationReport {
    let d = t.dim();
    let p = t.p();
    let mut unit = Tally::new(Axiom::Unit);
    let mut grading = Tally::new(Axiom::Grading);
    let mut supercomm = Tally::new(Axiom::Supercommutativity);
    let mut assoc = Tally::new(Axiom::Associativity);

    for j in 0..d {
        for k in 0..d {
            let delta = if j == k { S::one() } else { S::zero() };
            let left = t.gamma(0, j, k).clone() - delta.clone();
            let right = t.gamma(j, 0, k).clone() - delta;
            if !vanishes(&left) || !vanishes(&right) {
                unit.record([0, j, k]);
            }
        }
    }

    let parity = |i: usize| usize::from(i > p);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let g = t.gamma(i, j, k);
                if (parity(i) + parity(j)) % 2 != parity(k) && !vanishes(g) {
                    grading.record([i, j, k]);
                }
                let other = t.gamma(j, i, k).clone();
                let diff = if i > p && j > p { g.clone() + other } else { g.clone() - other };
                if !vanishes(&diff) {
                    supercomm.record([i, j, k]);
                }
            }
        }
    }

    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut lhs = vec![S::zero(); d];
                for (s, g1) in t.product_terms(i, j) {
                    for (out, g2) in t.product_terms(*s, k) {
                        lhs[*out] = lhs[*out].clone() + g1.clone() * g2.clone();
                    }
                }
                let mut rhs = vec![S::zero(); d];
                for (s, g1) in t.product_terms(j, k) {
                    for (out, g2) in t.product_terms(i, *s) {
                        rhs[*out] = rhs[*out].clone() + g1.clone() * g2.clone();
                    }
                }
                let violated = lhs.into_iter().zip(rhs).any(|(l, r)| !vanishes(&(l - r)));
                if violated {
                    assoc.record([i, j, k]);
                }
            }
        }
    }

    ValidationReport {
        p,
        q: t.q(),
        exact: S::EXACT,
        checks: vec![unit.finish(), grading.finish(), supercomm.finish(), assoc.finish()],
    }
}
