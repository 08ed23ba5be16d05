//! Sparse Gaussian elimination over the rationals.
//!
//! Rows are reduced against pivots keyed by their leading (smallest)
//! column. Pivot rows are stored monic, so reduction never grows the
//! leading entry.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Row = BTreeMap<usize, BigRational>;

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Row echelon form built one row at a time.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: HashMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    fn eliminate(row: &mut Row, col: usize, pivot: &Row) {
        let factor = row.remove(&col).expect("column present");
        for (&c, v) in pivot.range(col + 1..) {
            let entry = row.entry(c).or_insert_with(BigRational::zero);
            *entry -= &factor * v;
            if entry.is_zero() {
                row.remove(&c);
            }
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: Row) -> bool {
        while let Some((&lead, _)) = row.iter().next() {
            match self.pivots.get(&lead) {
                Some(p) => Self::eliminate(&mut row, lead, p),
                None => {
                    let inv = row[&lead].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    /// Eliminates every pivot column from `row`; what remains lives on
    /// non-pivot columns.
    pub fn reduce(&self, mut row: Row) -> Row {
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).map(|(&c, _)| c).find(|c| self.pivots.contains_key(c));
            match next {
                Some(c) => {
                    Self::eliminate(&mut row, c, &self.pivots[&c]);
                    cursor = c + 1;
                }
                None => return row,
            }
        }
    }
}

/// Integer row with small coefficients, normalized so that duplicates and
/// negatives of one another compare equal.
pub fn normalize_int_row(entries: &mut Vec<(usize, i64)>) {
    entries.sort_unstable_by_key(|e| e.0);
    let mut merged: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
    for &(c, v) in entries.iter() {
        match merged.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|e| e.1 != 0);
    let g = merged.iter().fold(0i64, |g, e| gcd(g, e.1.abs()));
    let sign = merged.first().map_or(1, |e| e.1.signum());
    for e in merged.iter_mut() {
        e.1 = e.1 / g * sign;
    }
    *entries = merged;
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn to_row(entries: &[(usize, i64)]) -> Row {
    entries.iter().map(|&(c, v)| (c, rational(v))).collect()
}

pub fn is_unit(x: &BigRational) -> bool {
    x.abs().is_one()
}
