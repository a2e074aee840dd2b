//! Algorithm X over a small dense incidence structure.
//!
//! The instances here have at most a few dozen items and options, so the
//! search keeps plain boolean masks instead of dancing-links nodes. Column
//! choice is "fewest remaining options, lowest index first" and options are
//! tried in input order, which makes the first solution deterministic.

/// Returns the indices of the first family of `options` (each a list of item
/// indices below `n_items`) that covers every item exactly once.
pub fn first_exact_cover(n_items: usize, options: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut by_item: Vec<Vec<usize>> = vec![Vec::new(); n_items];
    for (o, items) in options.iter().enumerate() {
        for &i in items {
            by_item[i].push(o);
        }
    }
    let mut state = Search {
        options,
        by_item,
        covered: vec![false; n_items],
        blocked: vec![0; options.len()],
        chosen: Vec::new(),
    };
    state.solve().then_some(state.chosen)
}

/// Counts all exact covers (used in tests on small instances).
pub fn count_exact_covers(n_items: usize, options: &[Vec<usize>]) -> usize {
    let mut by_item: Vec<Vec<usize>> = vec![Vec::new(); n_items];
    for (o, items) in options.iter().enumerate() {
        for &i in items {
            by_item[i].push(o);
        }
    }
    let mut state = Search {
        options,
        by_item,
        covered: vec![false; n_items],
        blocked: vec![0; options.len()],
        chosen: Vec::new(),
    };
    state.count()
}

struct Search<'a> {
    options: &'a [Vec<usize>],
    by_item: Vec<Vec<usize>>,
    covered: Vec<bool>,
    // number of chosen options that conflict with this one
    blocked: Vec<u32>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn pick_item(&self) -> Option<(usize, usize)> {
        (0..self.covered.len())
            .filter(|&i| !self.covered[i])
            .map(|i| {
                (
                    i,
                    self.by_item[i]
                        .iter()
                        .filter(|&&o| self.blocked[o] == 0)
                        .count(),
                )
            })
            .min_by_key(|&(i, n)| (n, i))
    }

    fn select(&mut self, o: usize, delta: i32) {
        for &i in &self.options[o] {
            self.covered[i] = delta > 0;
            for &other in &self.by_item[i] {
                self.blocked[other] = (self.blocked[other] as i32 + delta) as u32;
            }
        }
    }

    fn candidates(&self, item: usize) -> Vec<usize> {
        self.by_item[item]
            .iter()
            .copied()
            .filter(|&o| self.blocked[o] == 0)
            .collect()
    }

    fn solve(&mut self) -> bool {
        let Some((item, n)) = self.pick_item() else {
            return true;
        };
        if n == 0 {
            return false;
        }
        for o in self.candidates(item) {
            self.select(o, 1);
            self.chosen.push(o);
            if self.solve() {
                return true;
            }
            self.chosen.pop();
            self.select(o, -1);
        }
        false
    }

    fn count(&mut self) -> usize {
        let Some((item, n)) = self.pick_item() else {
            return 1;
        };
        if n == 0 {
            return 0;
        }
        let mut total = 0;
        for o in self.candidates(item) {
            self.select(o, 1);
            total += self.count();
            self.select(o, -1);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // items 0..7, the classic instance with a unique cover {0,3,4}
        let options = vec![
            vec![2, 4, 5],
            vec![0, 3, 6],
            vec![1, 2, 5],
            vec![0, 3],
            vec![1, 6],
            vec![3, 4, 6],
        ];
        let sol = first_exact_cover(7, &options).unwrap();
        let mut sorted = sol.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 3, 4]);
        assert_eq!(count_exact_covers(7, &options), 1);
    }

    #[test]
    fn no_cover() {
        let options = vec![vec![0, 1], vec![1, 2]];
        assert!(first_exact_cover(3, &options).is_none());
    }

    #[test]
    fn empty_universe_has_empty_cover() {
        assert_eq!(first_exact_cover(0, &[]), Some(vec![]));
    }
}
