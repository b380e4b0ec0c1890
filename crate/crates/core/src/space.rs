use crate::error::{Error, Result};

/// A labeled finite ground set. Subsets are represented as bitmasks over the
/// element indices, so element `i` corresponds to bit `1 << i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSpace {
    labels: Vec<String>,
}

impl EventSpace {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(EventSpace { labels })
    }

    /// Space with labels "x1".."xn", for callers that only care about size.
    pub fn indexed(n: usize) -> Result<Self> {
        EventSpace::new((1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Bitmask of the full set X.
    pub fn full_mask(&self) -> u32 {
        if self.labels.len() >= 32 {
            u32::MAX
        } else {
            (1u32 << self.labels.len()) - 1
        }
    }

    /// Labels of the elements in the subset, in element-index order.
    pub fn subset_labels(&self, mask: u32) -> Vec<&str> {
        (0..self.n())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.label(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicate_labels() {
        assert_eq!(EventSpace::new(Vec::<String>::new()), Err(Error::EmptySpace));
        let err = EventSpace::new(vec!["a", "b", "a"]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateLabel {
                label: "a".to_string()
            }
        );
    }

    #[test]
    fn masks_and_lookup() {
        let space = EventSpace::new(vec!["a", "b", "c"]).unwrap();
        assert_eq!(space.n(), 3);
        assert_eq!(space.full_mask(), 0b111);
        assert_eq!(space.index_of("b"), Some(1));
        assert_eq!(space.index_of("z"), None);
        assert_eq!(space.subset_labels(0b101), vec!["a", "c"]);
    }
}
