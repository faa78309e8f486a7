use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../data/conway.txt");

/// Conway polynomials keyed by `(p, degree)`.
///
/// Text format: one polynomial per line, `p degree c_0 c_1 ... c_d` with
/// ascending coefficients in `[0, p)`. Blank lines and `#` comments are skipped.
#[derive(Clone, Debug, Default)]
pub struct ConwayTable {
    polys: HashMap<(u32, usize), Vec<u32>>,
}

impl ConwayTable {
    /// The table shipped with the crate (fields up to about 2^34 elements).
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled conway table is well formed")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConwayTable { line: 0, msg: format!("{}: {e}", path.display()) })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut polys = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::ConwayTable { line: idx + 1, msg: msg.to_string() };
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("expected non-negative integers"))?;
            if nums.len() < 3 {
                return Err(bad("expected `p degree c_0 ... c_d`"));
            }
            let (p, degree) = (nums[0], nums[1] as usize);
            let coeffs = nums[2..].to_vec();
            if coeffs.len() != degree + 1 {
                return Err(bad("coefficient count does not match degree"));
            }
            if coeffs.iter().any(|&c| c >= p) {
                return Err(bad("coefficient out of range"));
            }
            polys.insert((p, degree), coeffs);
        }
        Ok(Self { polys })
    }

    pub fn get(&self, p: u32, degree: usize) -> Option<&[u32]> {
        self.polys.get(&(p, degree)).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_has_required_fields() {
        let t = ConwayTable::bundled();
        for (p, d) in [(3, 10), (3, 11), (3, 12), (3, 16), (2, 14)] {
            assert!(t.get(p, d).is_some(), "missing {p}^{d}");
        }
        assert_eq!(t.get(2, 4), Some(&[1, 1, 0, 0, 1][..]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ConwayTable::parse("# header\n2 2 1 1 1\n3 2 1 1\n").unwrap_err();
        assert_eq!(err, Error::ConwayTable { line: 3, msg: "coefficient count does not match degree".into() });
        assert!(ConwayTable::parse("2 1 2 1").is_err());
        assert!(ConwayTable::parse("2 x 1").is_err());
    }
}
