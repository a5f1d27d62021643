/// Enumerates set partitions of `{0, ..., n-1}` into at most `max_blocks`
/// blocks as restricted growth strings, in lexicographic order.
///
/// A restricted growth string `a` has `a[0] = 0` and
/// `a[i] <= 1 + max(a[0..i])`; each partition has exactly one such string,
/// and `a[i]` is the block of element `i`.
#[derive(Debug, Clone)]
pub struct PartitionIterator {
    max_blocks: usize,
    current: Vec<usize>,
    /// `prefix_max[i] = max(current[0..=i])`
    prefix_max: Vec<usize>,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl PartitionIterator {
    pub fn new(n: usize, max_blocks: usize) -> Self {
        let state = if n > 0 && max_blocks == 0 {
            State::Done
        } else {
            State::Fresh
        };
        PartitionIterator {
            max_blocks,
            current: vec![0; n],
            prefix_max: vec![0; n],
            state,
        }
    }

    pub fn len_elements(&self) -> usize {
        self.current.len()
    }

    /// Moves to the next partition and returns it, or `None` when exhausted.
    pub fn advance(&mut self) -> Option<&[usize]> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                return Some(&self.current);
            }
            State::Running => {}
        }
        let n = self.current.len();
        let cap = self.max_blocks - 1;
        let mut i = n;
        while i > 1 {
            i -= 1;
            let limit = (self.prefix_max[i - 1] + 1).min(cap);
            if self.current[i] < limit {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for k in i + 1..n {
                    self.current[k] = 0;
                    self.prefix_max[k] = self.prefix_max[i];
                }
                return Some(&self.current);
            }
        }
        self.state = State::Done;
        None
    }

    /// Number of blocks in the current partition.
    pub fn num_blocks(&self) -> usize {
        self.prefix_max.last().map_or(0, |&m| m + 1)
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

/// Number of blocks used by a restricted growth string.
pub fn blocks_of(rgs: &[usize]) -> usize {
    rgs.iter().max().map_or(0, |&m| m + 1)
}
