//! Built-in superalgebras with integer structure constants.

use std::fmt;
use std::str::FromStr;

use crate::algebra::table::StructureTable;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Complex numbers: `p = 1, q = 0`, `e1^2 = -e0`.
pub fn complex() -> StructureTable<Rational> {
    two_dim_even(-1).with_labels(vec!["1".into(), "i".into()])
}

/// Hyperbolic numbers: `p = 1, q = 0`, `e1^2 = +e0`.
pub fn hyperbolic() -> StructureTable<Rational> {
    two_dim_even(1).with_labels(vec!["1".into(), "j".into()])
}

fn two_dim_even(square: i64) -> StructureTable<Rational> {
    let one = Rational::from_i64(1);
    StructureTable::from_entries(
        1,
        0,
        [
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one),
            (1, 1, 0, Rational::from_i64(square)),
        ],
    )
    .expect("valid indices")
}

// Rows of the twelve-dimensional example table, `E` marking odd generators.
const EXAMPLE_TABLE: [&str; 12] = [
    "e0 e1 e2 e3 e4 e5 E1 E2 E3 E4 E5 E6",
    "e1 -e0 e3 -e2 e5 -e4 E2 -E1 E6 E5 -E4 -E3",
    "e2 e3 0 0 0 0 0 0 0 0 0 0",
    "e3 -e2 0 0 0 0 0 0 0 0 0 0",
    "e4 e5 0 0 e2 e3 E3 E2 0 E3 E6 0",
    "e5 -e4 0 0 e3 -e2 E2 -E3 0 E6 -E3 0",
    "E1 E2 0 0 E3 E2 0 0 0 e2 e3 0",
    "E2 -E1 0 0 E2 -E3 0 0 0 e3 -e2 0",
    "E3 E6 0 0 0 0 0 0 0 0 0 0",
    "E4 E5 0 0 E3 E6 -e2 -e3 0 0 0 0",
    "E5 -E4 0 0 E6 -E3 -e3 e2 0 0 0 0",
    "E6 -E3 0 0 0 0 0 0 0 0 0 0",
];

/// The six-plus-six dimensional table with nilpotent even part
/// `span(e2, e3, e4, e5)`, transcribed verbatim.
///
/// Unit, grading and supercommutativity hold; associativity does not (it
/// fails on triples mixing `e1`, `e4`/`e5` and the odd generators).
pub fn paper_table_example() -> StructureTable<Rational> {
    let index = |token: &str| -> usize {
        let (odd, num) = token.split_at(1);
        let n: usize = num.parse().expect("basis index");
        if odd == "E" {
            5 + n
        } else {
            n
        }
    };
    let mut entries = Vec::new();
    for (i, row) in EXAMPLE_TABLE.iter().enumerate() {
        for (j, token) in row.split_whitespace().enumerate() {
            if token == "0" {
                continue;
            }
            let (sign, name) = match token.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, token),
            };
            entries.push((i, j, index(name), Rational::from_i64(sign)));
        }
    }
    StructureTable::from_entries(5, 6, entries).expect("valid indices")
}

/// Grassmann algebra over the complex numbers on `g` odd generators, viewed
/// as a real superalgebra of dimension `2^(g+1)`.
///
/// Basis vectors are pairs `(eta_S, i eta_S)` for subsets `S` of the
/// generators, even subsets first (ordered by size, then bitmask), so that
/// `e0 = 1`, `e1 = i`, and for `g >= 1` the odd basis starts with
/// `eta_1, i eta_1`.
pub fn complex_grassmann(g: usize) -> StructureTable<Rational> {
    assert!(g <= 4, "complex_grassmann supports at most 4 generators");
    let mut masks: Vec<u32> = (0..1u32 << g).collect();
    masks.sort_by_key(|m| (m.count_ones() % 2, m.count_ones(), *m));
    let even = masks.iter().filter(|m| m.count_ones() % 2 == 0).count();
    let basis: Vec<(u32, bool)> = masks.iter().flat_map(|&m| [(m, false), (m, true)]).collect();
    let position = |mask: u32, imag: bool| {
        basis.iter().position(|&b| b == (mask, imag)).expect("basis element")
    };
    let mut entries = Vec::new();
    for (i, &(sa, ia)) in basis.iter().enumerate() {
        for (j, &(sb, ib)) in basis.iter().enumerate() {
            if sa & sb != 0 {
                continue;
            }
            let mut sign = grassmann_sign(sa, sb);
            if ia && ib {
                sign = -sign;
            }
            entries.push((i, j, position(sa | sb, ia ^ ib), Rational::from_i64(sign)));
        }
    }
    let labels = basis
        .iter()
        .map(|&(mask, imag)| {
            let gens: String = (0..g).filter(|b| mask & (1 << b) != 0).map(|b| format!("n{}", b + 1)).collect();
            match (gens.is_empty(), imag) {
                (true, false) => "1".to_string(),
                (true, true) => "i".to_string(),
                (false, false) => gens,
                (false, true) => format!("i{gens}"),
            }
        })
        .collect();
    StructureTable::from_entries(2 * even - 1, basis.len() - 2 * even, entries)
        .expect("valid indices")
        .with_labels(labels)
}

// sign of eta_S eta_T -> eta_{S u T} for disjoint S, T
fn grassmann_sign(s: u32, t: u32) -> i64 {
    let mut inversions = 0;
    for a in 0..32 {
        if s & (1 << a) != 0 {
            inversions += (t & ((1u32 << a) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Named built-in algebras, parseable from `complex`, `hyperbolic`,
/// `example3` and `complex_grassmann:<g>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Complex,
    Hyperbolic,
    PaperTable,
    ComplexGrassmann(usize),
}

impl Builtin {
    pub fn table(self) -> StructureTable<Rational> {
        match self {
            Builtin::Complex => complex(),
            Builtin::Hyperbolic => hyperbolic(),
            Builtin::PaperTable => paper_table_example(),
            Builtin::ComplexGrassmann(g) => complex_grassmann(g),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Builtin::Complex),
            "hyperbolic" => Ok(Builtin::Hyperbolic),
            "example3" | "paper_table" | "paper_table_example" => Ok(Builtin::PaperTable),
            _ => {
                let g = s
                    .strip_prefix("complex_grassmann:")
                    .and_then(|g| g.parse::<usize>().ok())
                    .filter(|g| *g <= 4)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown built-in algebra '{s}'")))?;
                Ok(Builtin::ComplexGrassmann(g))
            }
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Complex => write!(f, "complex"),
            Builtin::Hyperbolic => write!(f, "hyperbolic"),
            Builtin::PaperTable => write!(f, "example3"),
            Builtin::ComplexGrassmann(g) => write!(f, "complex_grassmann:{g}"),
        }
    }
}
