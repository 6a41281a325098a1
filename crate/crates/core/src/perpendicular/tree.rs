//! Endpoint tree with per-node color counters, and the min-tree over left endpoints.

use crate::geometry::Interval;

/// Balanced tree over the sorted endpoints of a fixed interval family.
///
/// Activating an interval adds one blue count on every node from its left-endpoint
/// leaf to the root and one red count from its right-endpoint leaf to the root.
#[derive(Clone, Debug)]
pub struct ColoredIntervalTree {
    size: usize,
    leaf_value: Vec<f64>,
    leaf_of: Vec<(usize, usize)>,
    blue: Vec<u32>,
    red: Vec<u32>,
    active: Vec<bool>,
}

impl ColoredIntervalTree {
    pub fn new(intervals: &[Interval]) -> Self {
        let mut ends: Vec<(f64, usize, bool)> = Vec::with_capacity(2 * intervals.len());
        for (i, iv) in intervals.iter().enumerate() {
            ends.push((iv.lo, i, false));
            ends.push((iv.hi, i, true));
        }
        ends.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)).then(a.1.cmp(&b.1)));
        let size = ends.len().next_power_of_two().max(1);
        let mut leaf_value = vec![f64::NAN; size];
        let mut leaf_of = vec![(0, 0); intervals.len()];
        for (pos, &(v, i, right)) in ends.iter().enumerate() {
            leaf_value[pos] = v;
            if right {
                leaf_of[i].1 = pos;
            } else {
                leaf_of[i].0 = pos;
            }
        }
        ColoredIntervalTree {
            size,
            leaf_value,
            leaf_of,
            blue: vec![0; 2 * size],
            red: vec![0; 2 * size],
            active: vec![false; intervals.len()],
        }
    }

    pub fn is_active(&self, id: usize) -> bool {
        self.active[id]
    }

    pub fn active_count(&self) -> u32 {
        self.red[1]
    }

    pub fn activate(&mut self, id: usize) {
        assert!(!self.active[id], "interval {id} activated twice");
        self.active[id] = true;
        self.paint(id, 1);
    }

    pub fn deactivate(&mut self, id: usize) {
        assert!(self.active[id], "interval {id} deactivated while inactive");
        self.active[id] = false;
        self.paint(id, -1);
    }

    fn paint(&mut self, id: usize, delta: i32) {
        let (l, r) = self.leaf_of[id];
        let mut node = self.size + l;
        while node >= 1 {
            self.blue[node] = self.blue[node].wrapping_add_signed(delta);
            node /= 2;
        }
        let mut node = self.size + r;
        while node >= 1 {
            self.red[node] = self.red[node].wrapping_add_signed(delta);
            node /= 2;
        }
    }

    /// Smallest right endpoint among active intervals.
    pub fn query_ql(&self) -> Option<f64> {
        if self.red[1] == 0 {
            return None;
        }
        let mut node = 1;
        while node < self.size {
            node = if self.red[2 * node] > 0 { 2 * node } else { 2 * node + 1 };
        }
        Some(self.leaf_value[node - self.size])
    }

    /// Largest left endpoint among active intervals.
    pub fn query_qr(&self) -> Option<f64> {
        if self.blue[1] == 0 {
            return None;
        }
        let mut node = 1;
        while node < self.size {
            node = if self.blue[2 * node + 1] > 0 { 2 * node + 1 } else { 2 * node };
        }
        Some(self.leaf_value[node - self.size])
    }

    /// True when every count is zero.
    pub fn is_clear(&self) -> bool {
        self.blue.iter().chain(&self.red).all(|&c| c == 0)
    }
}

/// Min-tree over intervals sorted by left endpoint; inactive leaves hold the sentinel.
#[derive(Clone, Debug)]
pub struct ShortestIntervalHeap {
    size: usize,
    lefts: Vec<f64>,
    rights: Vec<f64>,
    leaf_of: Vec<usize>,
    value: Vec<f64>,
    sentinel: f64,
}

impl ShortestIntervalHeap {
    pub fn new(intervals: &[Interval]) -> Self {
        let mut order: Vec<usize> = (0..intervals.len()).collect();
        order.sort_by(|&a, &b| intervals[a].lo.total_cmp(&intervals[b].lo).then(a.cmp(&b)));
        let lefts: Vec<f64> = order.iter().map(|&i| intervals[i].lo).collect();
        let rights: Vec<f64> = order.iter().map(|&i| intervals[i].hi).collect();
        let mut leaf_of = vec![0; intervals.len()];
        for (pos, &i) in order.iter().enumerate() {
            leaf_of[i] = pos;
        }
        // Above every right endpoint, so an active leaf never ties with an inactive one.
        let sentinel = rights.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;
        let size = intervals.len().next_power_of_two().max(1);
        ShortestIntervalHeap { size, lefts, rights, leaf_of, value: vec![sentinel; 2 * size], sentinel }
    }

    /// The value held by inactive leaves.
    pub fn sentinel(&self) -> f64 {
        self.sentinel
    }

    pub fn leaf_values(&self) -> &[f64] {
        &self.value[self.size..self.size + self.lefts.len()]
    }

    pub fn activate(&mut self, id: usize) {
        let pos = self.leaf_of[id];
        self.set(pos, self.rights[pos]);
    }

    pub fn deactivate(&mut self, id: usize) {
        let pos = self.leaf_of[id];
        self.set(pos, self.sentinel);
    }

    fn set(&mut self, pos: usize, v: f64) {
        let mut node = self.size + pos;
        self.value[node] = v;
        while node > 1 {
            node /= 2;
            self.value[node] = self.value[2 * node].min(self.value[2 * node + 1]);
        }
    }

    /// Whether some active `[f, g]` has `a < f` and `g < b`.
    pub fn contained_interval_exists(&self, a: f64, b: f64) -> bool {
        let start = self.lefts.partition_point(|&f| f <= a);
        let m = self.suffix_min(start);
        m < b && m < self.sentinel
    }

    fn suffix_min(&self, start: usize) -> f64 {
        let mut best = f64::INFINITY;
        let mut lo = start + self.size;
        let mut hi = self.size + self.lefts.len();
        while lo < hi {
            if lo & 1 == 1 {
                best = best.min(self.value[lo]);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                best = best.min(self.value[hi]);
            }
            lo /= 2;
            hi /= 2;
        }
        best
    }
}

/// Both structures over the same family, flipped together.
#[derive(Clone, Debug)]
pub struct ActiveSet {
    pub tree: ColoredIntervalTree,
    pub heap: ShortestIntervalHeap,
}

impl ActiveSet {
    pub fn new(intervals: &[Interval]) -> Self {
        ActiveSet { tree: ColoredIntervalTree::new(intervals), heap: ShortestIntervalHeap::new(intervals) }
    }

    pub fn activate(&mut self, id: usize) {
        self.tree.activate(id);
        self.heap.activate(id);
    }

    pub fn deactivate(&mut self, id: usize) {
        self.tree.deactivate(id);
        self.heap.deactivate(id);
    }

    /// Whether the active intervals can be pierced by at most `m` points, for `m <= 2`.
    pub fn min_stabs_at_most(&self, m: usize) -> bool {
        assert!(m <= 2, "tree test covers at most two stabs");
        let (Some(ql), Some(qr)) = (self.tree.query_ql(), self.tree.query_qr()) else {
            return true;
        };
        match m {
            0 => false,
            1 => qr <= ql,
            _ => qr <= ql || !self.heap.contained_interval_exists(ql, qr),
        }
    }
}

/// Classic left-to-right greedy: stab at the smallest right endpoint not yet pierced.
pub fn greedy_piercing(intervals: &mut [Interval]) -> Vec<f64> {
    intervals.sort_by(|a, b| a.hi.total_cmp(&b.hi).then(a.lo.total_cmp(&b.lo)));
    let mut stabs: Vec<f64> = Vec::new();
    for iv in intervals.iter() {
        if stabs.last().is_none_or(|&s| s < iv.lo) {
            stabs.push(iv.hi);
        }
    }
    stabs
}
