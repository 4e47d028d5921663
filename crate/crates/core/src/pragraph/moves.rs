use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElementId, FiniteGroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One Nielsen move. Positions are 0-based here and 1-based in the text
/// form.
///
/// * `R(i, j, ±)`: `g_i <- g_i * g_j^{±1}`
/// * `L(i, j, ±)`: `g_i <- g_j^{±1} * g_i`
/// * `P(i, j)`: swap `g_i` and `g_j` (stored with `i < j`)
/// * `I(i)`: `g_i <- g_i^{-1}`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NielsenMove {
    R { i: usize, j: usize, sign: Sign },
    L { i: usize, j: usize, sign: Sign },
    P { i: usize, j: usize },
    I { i: usize },
}

impl NielsenMove {
    pub fn r(i: usize, j: usize, sign: Sign) -> NielsenMove {
        NielsenMove::R { i, j, sign }
    }

    pub fn l(i: usize, j: usize, sign: Sign) -> NielsenMove {
        NielsenMove::L { i, j, sign }
    }

    pub fn p(i: usize, j: usize) -> NielsenMove {
        NielsenMove::P { i: i.min(j), j: i.max(j) }
    }

    pub fn inversion(i: usize) -> NielsenMove {
        NielsenMove::I { i }
    }

    /// Checks index bounds for arity `k`.
    pub fn validate(&self, k: usize) -> Result<()> {
        let ok = match *self {
            NielsenMove::R { i, j, .. } | NielsenMove::L { i, j, .. } => i < k && j < k && i != j,
            NielsenMove::P { i, j } => i < j && j < k,
            NielsenMove::I { i } => i < k,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMove(format!("{self} is not a move on {k}-tuples")))
        }
    }

    pub fn inverse(&self) -> NielsenMove {
        match *self {
            NielsenMove::R { i, j, sign } => NielsenMove::R { i, j, sign: sign.flip() },
            NielsenMove::L { i, j, sign } => NielsenMove::L { i, j, sign: sign.flip() },
            m => m,
        }
    }

    /// True for P and I, the moves absent from the plain graph.
    pub fn is_extended_only(&self) -> bool {
        matches!(self, NielsenMove::P { .. } | NielsenMove::I { .. })
    }

    /// Applies the move in place. Indices must already be valid.
    #[inline]
    pub fn apply_in_place(&self, g: &FiniteGroupTable, ids: &mut [ElementId]) {
        match *self {
            NielsenMove::R { i, j, sign } => {
                let y = match sign {
                    Sign::Plus => ids[j],
                    Sign::Minus => g.inv(ids[j]),
                };
                ids[i] = g.mul(ids[i], y);
            }
            NielsenMove::L { i, j, sign } => {
                let y = match sign {
                    Sign::Plus => ids[j],
                    Sign::Minus => g.inv(ids[j]),
                };
                ids[i] = g.mul(y, ids[i]);
            }
            NielsenMove::P { i, j } => ids.swap(i, j),
            NielsenMove::I { i } => ids[i] = g.inv(ids[i]),
        }
    }
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NielsenMove::R { i, j, sign } => write!(f, "R{} {} {}", sign.symbol(), i + 1, j + 1),
            NielsenMove::L { i, j, sign } => write!(f, "L{} {} {}", sign.symbol(), i + 1, j + 1),
            NielsenMove::P { i, j } => write!(f, "P {} {}", i + 1, j + 1),
            NielsenMove::I { i } => write!(f, "I {}", i + 1),
        }
    }
}

/// Every move on `k`-tuples: R and L moves for each ordered pair `(i, j)`
/// (in the order `R+ R- L+ L-`), then P for `i < j` and I for each `i` when
/// `extended`.
pub fn all_moves(k: usize, extended: bool) -> Vec<NielsenMove> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(NielsenMove::r(i, j, sign));
            }
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(NielsenMove::l(i, j, sign));
            }
        }
    }
    if extended {
        for i in 0..k {
            for j in i + 1..k {
                out.push(NielsenMove::p(i, j));
            }
        }
        for i in 0..k {
            out.push(NielsenMove::inversion(i));
        }
    }
    out
}

/// One representative per inverse pair; enough edges to decide
/// connectivity of the undirected graph.
pub fn forward_moves(k: usize, extended: bool) -> Vec<NielsenMove> {
    all_moves(k, extended)
        .into_iter()
        .filter(|m| match m {
            NielsenMove::R { sign, .. } | NielsenMove::L { sign, .. } => *sign == Sign::Plus,
            _ => true,
        })
        .collect()
}

/// A finite sequence of moves, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NielsenWord(pub Vec<NielsenMove>);

impl NielsenWord {
    pub fn new() -> NielsenWord {
        NielsenWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[NielsenMove] {
        &self.0
    }

    pub fn push(&mut self, m: NielsenMove) {
        self.0.push(m);
    }

    pub fn extend(&mut self, other: &NielsenWord) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        self.0.iter().try_for_each(|m| m.validate(k))
    }

    /// The word undoing this one.
    pub fn inverse(&self) -> NielsenWord {
        NielsenWord(self.0.iter().rev().map(|m| m.inverse()).collect())
    }

    /// Replays the word on `ids`.
    pub fn apply(&self, g: &FiniteGroupTable, ids: &[ElementId]) -> Result<Vec<ElementId>> {
        self.validate(ids.len())?;
        let mut out = ids.to_vec();
        for m in &self.0 {
            m.apply_in_place(g, &mut out);
        }
        Ok(out)
    }
}

impl fmt::Display for NielsenWord {
    /// One move per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for NielsenWord {
    type Err = Error;

    /// Whitespace-separated tokens: `R+ i j`, `R- i j`, `L+ i j`, `L- i j`,
    /// `P i j`, `I i`, with 1-based positions.
    fn from_str(s: &str) -> Result<NielsenWord> {
        let mut tokens = s.split_whitespace();
        let mut moves = Vec::new();
        let index = |t: Option<&str>| -> Result<usize> {
            let t = t.ok_or_else(|| Error::Parse("move is missing an index".into()))?;
            match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad move index `{t}`"))),
            }
        };
        while let Some(op) = tokens.next() {
            let m = match op {
                "R+" | "R-" | "L+" | "L-" => {
                    let i = index(tokens.next())?;
                    let j = index(tokens.next())?;
                    if i == j {
                        return Err(Error::Parse(format!("`{op}` needs distinct indices")));
                    }
                    let sign = if op.ends_with('+') { Sign::Plus } else { Sign::Minus };
                    if op.starts_with('R') {
                        NielsenMove::r(i, j, sign)
                    } else {
                        NielsenMove::l(i, j, sign)
                    }
                }
                "P" => {
                    let i = index(tokens.next())?;
                    let j = index(tokens.next())?;
                    if i == j {
                        return Err(Error::Parse("`P` needs distinct indices".into()));
                    }
                    NielsenMove::p(i, j)
                }
                "I" => NielsenMove::inversion(index(tokens.next())?),
                other => return Err(Error::Parse(format!("unknown move `{other}`"))),
            };
            moves.push(m);
        }
        Ok(NielsenWord(moves))
    }
}
