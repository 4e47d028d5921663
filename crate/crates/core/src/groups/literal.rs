//! Element and tuple literals.
//!
//! Grammar, by group family:
//!
//! * `sym`/`alt`: cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`;
//!   `()` is the identity.
//! * `ab`: a residue vector `(v1,v2,...)`; a bare integer is accepted for
//!   cyclic groups. Values are reduced modulo the invariant factors.
//! * matrix groups: `[[a,b],[c,d]]`. Entries are integers; over a prime
//!   field they are reduced mod p, over GF(p^e) they are packed element
//!   indices in `[0, q)`. The determinant must be 1 for `sl2`/`psl2`.
//! * any group: `e` or `id` for the identity, `#<n>` for the element with
//!   id `n`.
//!
//! A tuple is a comma-separated list of elements; commas nested inside
//! parentheses or brackets belong to the element.

use crate::error::{Error, Result};

use super::matrix::{self, Mat2, MatrixFamily};
use super::{perm, Descriptor, ElementId, FiniteGroupTable, GroupKind};

pub fn parse_element(g: &FiniteGroupTable, s: &str) -> Result<ElementId> {
    let s = s.trim();
    let bad = |msg: &str| Error::InvalidElement(format!("`{s}` in {}: {msg}", g.label()));
    if s == "e" || s == "id" {
        return Ok(g.identity());
    }
    if let Some(rest) = s.strip_prefix('#') {
        let id: usize = rest.parse().map_err(|_| bad("bad element id"))?;
        if id >= g.order() {
            return Err(bad("element id out of range"));
        }
        return Ok(id as ElementId);
    }
    let desc = match g.kind() {
        GroupKind::Perm { degree } => Descriptor::Perm(perm::parse_cycles(s, *degree)?),
        GroupKind::Abelian(ab) => {
            let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
            let vals = inner
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad("expected integers")))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != ab.factors().len() {
                return Err(bad("wrong number of coordinates"));
            }
            let v = vals
                .iter()
                .zip(ab.factors())
                .map(|(&x, &d)| x.rem_euclid(d as i64) as u32)
                .collect();
            Descriptor::Residues(v)
        }
        GroupKind::Matrix { field, family } => {
            let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            let inner = cleaned
                .strip_prefix("[[")
                .and_then(|t| t.strip_suffix("]]"))
                .ok_or_else(|| bad("expected [[a,b],[c,d]]"))?;
            let (r1, r2) = inner.split_once("],[").ok_or_else(|| bad("expected two rows"))?;
            let nums = r1
                .split(',')
                .chain(r2.split(','))
                .map(|t| t.parse::<i64>().map_err(|_| bad("expected integers")))
                .collect::<Result<Vec<_>>>()?;
            if nums.len() != 4 {
                return Err(bad("expected four entries"));
            }
            let entries = nums
                .iter()
                .map(|&v| {
                    if field.degree() == 1 {
                        Ok(field.from_int(v))
                    } else {
                        u32::try_from(v)
                            .map_err(|_| bad("entry out of range"))
                            .and_then(|v| field.element(v))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Mat2::new(entries[0], entries[1], entries[2], entries[3]);
            let det = m.det(field);
            match family {
                MatrixFamily::Sl | MatrixFamily::Psl if det != field.one() => {
                    return Err(bad("determinant must be 1"));
                }
                MatrixFamily::Pgl if det.is_zero() => return Err(bad("singular matrix")),
                _ => {}
            }
            Descriptor::Mat(matrix::canonical(*family, field, m))
        }
    };
    g.id_of(&desc).ok_or_else(|| bad("not an element of the group"))
}

pub fn format_element(g: &FiniteGroupTable, x: ElementId) -> String {
    match g.descriptor(x) {
        Descriptor::Perm(p) => perm::format_cycles(p),
        Descriptor::Residues(v) => {
            let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        }
        Descriptor::Mat(m) => format!("[[{},{}],[{},{}]]", m.a, m.b, m.c, m.d),
    }
}

/// Splits at commas that are not nested inside `()` or `[]`.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_tuple(g: &FiniteGroupTable, s: &str) -> Result<Vec<ElementId>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(s, ',')
        .into_iter()
        .map(|t| parse_element(g, t))
        .collect()
}

pub fn format_tuple(g: &FiniteGroupTable, t: &[ElementId]) -> String {
    t.iter().map(|&x| format_element(g, x)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn roundtrip_every_element() {
        for s in ["sym:4", "ab:2,4", "psl2:5", "pgl2:4", "sl2:3", "psl2:9"] {
            let g = build_group(s).unwrap();
            for x in 0..g.order() as ElementId {
                assert_eq!(parse_element(&g, &format_element(&g, x)).unwrap(), x, "{s}");
            }
        }
    }

    #[test]
    fn tuples_and_specials() {
        let g = build_group("sym:4").unwrap();
        let t = parse_tuple(&g, "(1 2)(3 4), (1 2 3),e,#5").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[2], 0);
        assert_eq!(t[3], 5);
        let ab = build_group("ab:5,5").unwrap();
        assert_eq!(parse_tuple(&ab, "(1,0),(0,1)").unwrap().len(), 2);
        assert_eq!(parse_element(&ab, "(-1,6)").unwrap(), parse_element(&ab, "(4,1)").unwrap());
        let c5 = build_group("ab:5").unwrap();
        assert_eq!(parse_element(&c5, "3").unwrap(), parse_element(&c5, "(3)").unwrap());
    }

    #[test]
    fn psl_literal_accepts_either_sign() {
        let g = build_group("psl2:5").unwrap();
        let a = parse_element(&g, "[[2,0],[0,3]]").unwrap();
        let b = parse_element(&g, "[[3,0],[0,2]]").unwrap();
        assert_eq!(a, b);
        assert!(parse_element(&g, "[[1,1],[0,2]]").is_err());
        assert!(parse_element(&g, "#60").is_err());
    }
}
