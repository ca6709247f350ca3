use std::collections::HashMap;
use std::hash::Hash;

use super::time::{words_for, TimeMask};

/// Labeled bit matrix: one row per entity, one bit per time point.
#[derive(Clone, Debug)]
pub struct PresenceMatrix<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    words: usize,
    n: usize,
    bits: Vec<u64>,
}

impl<L: Clone + Eq + Hash> PresenceMatrix<L> {
    pub fn new(n: usize) -> Self {
        PresenceMatrix {
            labels: Vec::new(),
            index: HashMap::new(),
            words: words_for(n),
            n,
            bits: Vec::new(),
        }
    }

    /// Returns the row of `label`, appending an all-zero row if absent.
    pub fn ensure_row(&mut self, label: L) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.clone());
        self.index.insert(label, i);
        self.bits.extend(std::iter::repeat_n(0, self.words));
        i
    }

    pub(crate) fn push_row(&mut self, label: L, row: &[u64]) -> usize {
        let i = self.ensure_row(label);
        self.bits[i * self.words..(i + 1) * self.words].copy_from_slice(row);
        i
    }

    pub fn set(&mut self, row: usize, t: usize) {
        self.bits[row * self.words + t / 64] |= 1 << (t % 64);
    }

    pub fn get(&self, row: usize, t: usize) -> bool {
        self.bits[row * self.words + t / 64] >> (t % 64) & 1 == 1
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words..(row + 1) * self.words]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn time_points(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, row: usize) -> &L {
        &self.labels[row]
    }

    pub fn find(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// True if the row has a 1 anywhere inside `mask`.
    pub fn any_in(&self, row: usize, mask: &TimeMask) -> bool {
        self.row(row).iter().zip(mask.words()).any(|(r, m)| r & m != 0)
    }

    /// True if the row has a 1 at every point of `mask`.
    pub fn all_in(&self, row: usize, mask: &TimeMask) -> bool {
        self.row(row).iter().zip(mask.words()).all(|(r, m)| r & m == *m)
    }

    pub fn count_in(&self, row: usize, mask: &TimeMask) -> u64 {
        self.row(row)
            .iter()
            .zip(mask.words())
            .map(|(r, m)| (r & m).count_ones() as u64)
            .sum()
    }

    /// The time points of `row` (τ of the entity).
    pub fn times(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&t| self.get(row, t))
    }

    pub fn column_count(&self, t: usize) -> usize {
        (0..self.len()).filter(|&r| self.get(r, t)).count()
    }
}
