//! The published table of facet-inducing hyperplanes of `F_{m-1}` and
//! `F_{m-2}` (`m = floor(n/2)`) for `n = 6..13`, the stable pattern for
//! `n >= 14`, and comparison against computed faces.

use m0n_core::cone::FormLabel;
use m0n_core::fulton::{facets_of_face, FacetEntry};
use m0n_core::{Result, VitalPartition};
use serde::{Deserialize, Serialize};

/// One printed row. Labels are kept exactly as printed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub n: usize,
    pub penultimate: Vec<String>,
    pub facet_count: Option<usize>,
    pub antepenultimate: Option<Vec<String>>,
}

/// `(n, F_{m-1} labels, facet count of F_{m-2}, F_{m-2} labels)`.
type PrintedRow = (
    usize,
    &'static [&'static str],
    Option<usize>,
    Option<&'static [&'static str]>,
);

const PRINTED: &[PrintedRow] = &[
    (6, &["V_1", "V_2"], None, None),
    (7, &["V_1", "V(1,2,2,2)"], None, None),
    (
        8,
        &["V_2", "V_3"],
        Some(4),
        Some(&["V_1", "V_2", "V_3", "V(2,2,2,2)"]),
    ),
    (
        9,
        &["V_2", "V_3"],
        Some(4),
        Some(&["V_1", "V_2", "V_4", "V(2,2,2,3)"]),
    ),
    (
        10,
        &["V_3", "V_4"],
        Some(4),
        Some(&["V_2", "V_3", "V_4", "V(1,3,3,3)"]),
    ),
    (
        11,
        &["V_3", "V_4"],
        Some(4),
        Some(&["V_2", "V_3", "V_4", "V(2,3,3,3)"]),
    ),
    (12, &["V_4", "V_5"], Some(3), Some(&["V_3", "V_4", "V_5"])),
    (
        13,
        &["V_4", "V_5"],
        Some(4),
        Some(&["V_3", "V_4", "V_5", "V(1,4,4,4)"]),
    ),
];

fn owned(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

/// Expected row for `n >= 6`: printed rows up to 13, the stable pattern above.
pub fn expected_row(n: usize) -> Option<ExpectedRow> {
    if n < 6 {
        return None;
    }
    if let Some(&(n, pen, count, ante)) = PRINTED.iter().find(|row| row.0 == n) {
        return Some(ExpectedRow {
            n,
            penultimate: owned(pen),
            facet_count: count,
            antepenultimate: ante.map(owned),
        });
    }
    let m = n / 2;
    let v = |i: usize| format!("V_{i}");
    Some(ExpectedRow {
        n,
        penultimate: vec![v(m - 2), v(m - 1)],
        facet_count: Some(3),
        antepenultimate: Some(vec![v(m - 3), v(m - 2), v(m - 1)]),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unrecognized hyperplane label {0:?} for n = {1}")]
pub struct LabelError(pub String, pub usize);

/// `V_i` is the partition `(1, 1, i, n-i-2)`; `V(a,b,c,d)` is given directly.
pub fn parse_label(n: usize, text: &str) -> std::result::Result<FormLabel, LabelError> {
    let err = || LabelError(text.to_string(), n);
    let parts = if let Some(i) = text.strip_prefix("V_") {
        let i: usize = i.parse().map_err(|_| err())?;
        if i == 0 || i + 3 > n {
            return Err(err());
        }
        [1, 1, i, n - i - 2]
    } else if let Some(inner) = text.strip_prefix("V(").and_then(|s| s.strip_suffix(')')) {
        let values: Vec<usize> = inner
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| err()))
            .collect::<std::result::Result<_, _>>()?;
        <[usize; 4]>::try_from(values).map_err(|_| err())?
    } else {
        return Err(err());
    };
    let p = VitalPartition::new(parts).map_err(|_| err())?;
    if p.n() != n {
        return Err(err());
    }
    Ok(FormLabel::for_partition(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComparison {
    pub expected: Option<Vec<String>>,
    /// All labels of each computed facet; `None` when the face is undefined.
    pub computed: Option<Vec<Vec<String>>>,
    /// Printed labels that induce no facet, or that share a facet with an
    /// earlier printed label.
    pub unmatched: Vec<String>,
    pub matches: bool,
}

fn label_strings(facets: &[FacetEntry]) -> Vec<Vec<String>> {
    facets
        .iter()
        .map(|f| f.labels.iter().map(ToString::to_string).collect())
        .collect()
}

/// Printed labels must pick out pairwise distinct facets, covering all of them.
pub fn compare_cell(
    n: usize,
    expected: Option<&[String]>,
    computed: Option<&[FacetEntry]>,
) -> CellComparison {
    let (expected_list, facets) = match (expected, computed) {
        (Some(e), Some(c)) => (e, c),
        (e, c) => {
            return CellComparison {
                expected: e.map(<[String]>::to_vec),
                computed: c.map(label_strings),
                unmatched: e.map(<[String]>::to_vec).unwrap_or_default(),
                matches: e.is_none() && c.is_none(),
            }
        }
    };
    let mut used = vec![false; facets.len()];
    let mut unmatched = Vec::new();
    for text in expected_list {
        let hit = parse_label(n, text)
            .ok()
            .and_then(|label| facets.iter().position(|f| f.labels.contains(&label)));
        match hit {
            Some(i) if !used[i] => used[i] = true,
            _ => unmatched.push(text.clone()),
        }
    }
    let matches = unmatched.is_empty() && expected_list.len() == facets.len();
    CellComparison {
        expected: Some(expected_list.to_vec()),
        computed: Some(label_strings(facets)),
        unmatched,
        matches,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowComparison {
    pub n: usize,
    /// Whether a printed or pattern row exists for this `n`.
    pub has_expected: bool,
    pub penultimate: CellComparison,
    pub facet_count: Option<usize>,
    pub expected_facet_count: Option<usize>,
    pub antepenultimate: CellComparison,
    pub matches: bool,
}

/// Computes `F_{m-1}` and `F_{m-2}` for `n` and compares with the expected row.
pub fn compare_row(n: usize) -> Result<RowComparison> {
    let m = n / 2;
    let expected = expected_row(n);
    let pen = facets_of_face(n, m - 1)?;
    let ante = if m >= 4 {
        Some(facets_of_face(n, m - 2)?)
    } else {
        None
    };
    let penultimate = compare_cell(
        n,
        expected.as_ref().map(|e| e.penultimate.as_slice()),
        Some(&pen.facets),
    );
    let antepenultimate = compare_cell(
        n,
        expected.as_ref().and_then(|e| e.antepenultimate.as_deref()),
        ante.as_ref().map(|f| f.facets.as_slice()),
    );
    let facet_count = ante.as_ref().map(|f| f.facets.len());
    let expected_facet_count = expected.as_ref().and_then(|e| e.facet_count);
    let matches = expected.is_some()
        && penultimate.matches
        && antepenultimate.matches
        && facet_count == expected_facet_count;
    Ok(RowComparison {
        n,
        has_expected: expected.is_some(),
        penultimate,
        facet_count,
        expected_facet_count,
        antepenultimate,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse() {
        assert_eq!(parse_label(9, "V_2").unwrap(), FormLabel::Special { i: 2 });
        // (1,1,4,3) sorts to (1,1,3,4)
        assert_eq!(parse_label(9, "V_4").unwrap(), FormLabel::Special { i: 3 });
        assert_eq!(
            parse_label(8, "V(2,2,2,2)").unwrap().to_string(),
            "V(2,2,2,2)"
        );
        assert!(parse_label(8, "V(2,2,2,3)").is_err());
        assert!(parse_label(8, "W_1").is_err());
        assert!(parse_label(8, "V_6").is_err());
    }

    #[test]
    fn expected_rows() {
        assert!(expected_row(5).is_none());
        assert_eq!(expected_row(7).unwrap().antepenultimate, None);
        let row = expected_row(16).unwrap();
        assert_eq!(row.penultimate, vec!["V_6", "V_7"]);
        assert_eq!(row.antepenultimate.unwrap(), vec!["V_5", "V_6", "V_7"]);
    }

    #[test]
    fn small_rows_match() {
        for n in [6, 7, 8, 10] {
            let row = compare_row(n).unwrap();
            assert!(row.matches, "{row:?}");
        }
    }
}
