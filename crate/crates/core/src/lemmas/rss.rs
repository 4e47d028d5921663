//! Regular semisimple elements in cosets.

use crate::error::{Error, Result};
use crate::groups::{ElementId, FiniteGroupTable};

/// First regular semisimple element of the form `x d`, `d` in `subset`,
/// scanning `subset` in increasing id order.
pub fn find_rss_in_coset(g: &FiniteGroupTable, x: ElementId, subset: &[ElementId]) -> Result<Option<ElementId>> {
    if g.field().is_none() {
        return Err(Error::NotMatrixGroup(g.label()));
    }
    if let Some(&bad) = std::iter::once(&x).chain(subset).find(|&&y| y as usize >= g.order()) {
        return Err(Error::InvalidElement(format!("element id {bad} out of range")));
    }
    let mut ds = subset.to_vec();
    ds.sort_unstable();
    ds.dedup();
    for d in ds {
        let y = g.mul(x, d);
        if g.is_regular_semisimple(y)? {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;
    use crate::groups::literal::parse_element;

    #[test]
    fn examples() {
        let g = build_group("psl2:5").unwrap();
        let x = (0..60).find(|&x| g.is_regular_semisimple(x).unwrap()).unwrap();
        assert_eq!(find_rss_in_coset(&g, x, &[g.identity()]).unwrap(), Some(x));
        let all: Vec<ElementId> = (0..60).collect();
        for x in 0..60 {
            assert!(find_rss_in_coset(&g, x, &all).unwrap().is_some());
        }
        let g = build_group("sl2:5").unwrap();
        let unipotent: Vec<ElementId> = (0..5)
            .map(|t| parse_element(&g, &format!("[[1,{t}],[0,1]]")).unwrap())
            .collect();
        assert_eq!(find_rss_in_coset(&g, g.identity(), &unipotent).unwrap(), None);
        let s3 = build_group("sym:3").unwrap();
        assert!(matches!(find_rss_in_coset(&s3, 0, &[0]), Err(Error::NotMatrixGroup(_))));
    }
}
