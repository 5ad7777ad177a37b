//! Sudden-death, revival and freezing detectors over a negativity table.

use crate::entanglement::NegativityRecord;

/// `N^(3)` above this after a death interval counts as a revival.
pub const REVIVAL_THRESHOLD: f64 = 1e-3;

/// A maximal run of samples with `N^(3)` below the sudden-death threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeathInterval {
    /// Coordinate of the first dead sample.
    pub start: f64,
    /// Coordinate of the last dead sample.
    pub end: f64,
    /// Whether `N^(3)` exceeds `REVIVAL_THRESHOLD` at any later sample.
    pub revived: bool,
}

pub fn detect_esd(records: &[NegativityRecord]) -> Vec<DeathInterval> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut open: Option<usize> = None;
    for (i, r) in records.iter().enumerate() {
        match (r.is_dead(), open) {
            (true, None) => open = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                open = None;
            }
            _ => {}
        }
    }
    if let Some(s) = open {
        runs.push((s, records.len() - 1));
    }
    runs.into_iter()
        .map(|(s, e)| DeathInterval {
            start: records[s].t,
            end: records[e].t,
            revived: records[e + 1..].iter().any(|r| r.n3 > REVIVAL_THRESHOLD),
        })
        .collect()
}

/// Largest `(N^(3)(0) − N^(3)(t)) / N^(3)(0)` over the table; negative when
/// entanglement only grows. `None` if the table is empty or starts separable.
pub fn max_relative_drop(records: &[NegativityRecord]) -> Option<f64> {
    let first = records.first()?.n3;
    if first <= 0.0 {
        return None;
    }
    records
        .iter()
        .map(|r| (first - r.n3) / first)
        .reduce(f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(values: &[f64]) -> Vec<NegativityRecord> {
        values
            .iter()
            .enumerate()
            .map(|(i, &n3)| NegativityRecord {
                t: i as f64,
                n1_23: n3,
                n2_13: n3,
                n3_12: n3,
                n3,
            })
            .collect()
    }

    #[test]
    fn constant_zero_is_one_dead_interval() {
        let esd = detect_esd(&table(&[0.0; 5]));
        assert_eq!(
            esd,
            vec![DeathInterval {
                start: 0.0,
                end: 4.0,
                revived: false
            }]
        );
    }

    #[test]
    fn death_then_revival() {
        let esd = detect_esd(&table(&[0.3, 1e-7, 0.0, 2e-3, 0.0, 5e-4]));
        assert_eq!(esd.len(), 2);
        assert_eq!((esd[0].start, esd[0].end, esd[0].revived), (1.0, 2.0, true));
        // 5e-4 is alive but below the revival threshold.
        assert_eq!((esd[1].start, esd[1].end, esd[1].revived), (4.0, 4.0, false));
    }

    #[test]
    fn live_and_empty_tables() {
        assert!(detect_esd(&table(&[0.4, 0.3, 0.2])).is_empty());
        assert!(detect_esd(&[]).is_empty());
    }

    #[test]
    fn relative_drop() {
        assert_eq!(max_relative_drop(&table(&[0.4, 0.3, 0.2, 0.35])), Some(0.5));
        assert_eq!(max_relative_drop(&table(&[0.0, 0.1])), None);
    }
}
