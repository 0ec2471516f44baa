//! Max-heaps of `(gain, edge)` keys and the lazy evaluation loop.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::graph::{EdgeId, Graph, VertexId};

/// Heap key: larger gain first, then smaller edge id.
#[derive(Debug, Clone, Copy)]
pub struct HeapEntry {
    pub gain: f64,
    pub edge: EdgeId,
}

impl HeapEntry {
    pub fn new(gain: f64, edge: EdgeId) -> Self {
        HeapEntry { gain, edge }
    }
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.edge.cmp(&self.edge))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HeapCounters {
    pub pushes: u64,
    pub pops: u64,
}

impl std::ops::AddAssign for HeapCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.pushes += rhs.pushes;
        self.pops += rhs.pops;
    }
}

/// Operations the lazy evaluation loop needs from a heap.
pub trait LazyHeap {
    fn peek(&self) -> Option<HeapEntry>;
    fn pop(&mut self) -> Option<HeapEntry>;
    fn push(&mut self, entry: HeapEntry);
}

/// Global heap over all edges with push/pop instrumentation.
#[derive(Debug, Default)]
pub struct GainHeap {
    heap: BinaryHeap<HeapEntry>,
    pub counters: HeapCounters,
}

impl GainHeap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Heapifies the initial entries; each counts as one push.
    pub fn from_entries(entries: Vec<HeapEntry>) -> Self {
        let pushes = entries.len() as u64;
        GainHeap {
            heap: BinaryHeap::from(entries),
            counters: HeapCounters { pushes, pops: 0 },
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

impl LazyHeap for GainHeap {
    fn peek(&self) -> Option<HeapEntry> {
        self.heap.peek().copied()
    }

    fn pop(&mut self) -> Option<HeapEntry> {
        let top = self.heap.pop();
        if top.is_some() {
            self.counters.pops += 1;
        }
        top
    }

    fn push(&mut self, entry: HeapEntry) {
        self.counters.pushes += 1;
        self.heap.push(entry);
    }
}

/// One vertex's heap living in a slice of the shared per-vertex storage.
pub struct VertexHeap<'a> {
    data: &'a mut [HeapEntry],
    len: &'a mut u32,
    counters: &'a mut HeapCounters,
}

impl<'a> VertexHeap<'a> {
    pub fn new(data: &'a mut [HeapEntry], len: &'a mut u32, counters: &'a mut HeapCounters) -> Self {
        VertexHeap { data, len, counters }
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.data[i] <= self.data[parent] {
                break;
            }
            self.data.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = *self.len as usize;
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && self.data[r] > self.data[l] { r } else { l };
            if self.data[child] <= self.data[i] {
                break;
            }
            self.data.swap(i, child);
            i = child;
        }
    }
}

impl LazyHeap for VertexHeap<'_> {
    fn peek(&self) -> Option<HeapEntry> {
        (*self.len > 0).then(|| self.data[0])
    }

    fn pop(&mut self) -> Option<HeapEntry> {
        if *self.len == 0 {
            return None;
        }
        self.counters.pops += 1;
        let last = *self.len as usize - 1;
        self.data.swap(0, last);
        *self.len -= 1;
        self.sift_down(0);
        Some(self.data[last])
    }

    fn push(&mut self, entry: HeapEntry) {
        let i = *self.len as usize;
        debug_assert!(i < self.data.len(), "vertex heap overflow");
        self.counters.pushes += 1;
        self.data[i] = entry;
        *self.len += 1;
        self.sift_up(i);
    }
}

/// Per-vertex heaps of incident edges in one flat buffer laid out like the
/// graph's adjacency arrays.
#[derive(Debug, Clone)]
pub struct VertexHeaps {
    entries: Vec<HeapEntry>,
    offsets: Vec<usize>,
    lens: Vec<u32>,
}

impl VertexHeaps {
    /// Builds every vertex heap from the initial gains; each entry counts
    /// as one push.
    pub fn build(graph: &Graph, initial_gain: &[f64]) -> (Self, HeapCounters) {
        let n = graph.num_vertices();
        let mut entries = Vec::with_capacity(2 * graph.num_edges());
        let mut offsets = Vec::with_capacity(n + 1);
        let mut lens = Vec::with_capacity(n);
        offsets.push(0);
        for v in 0..n as VertexId {
            let start = entries.len();
            entries.extend(
                graph
                    .neighbors(v)
                    .iter()
                    .map(|inc| HeapEntry::new(initial_gain[inc.edge as usize], inc.edge)),
            );
            let slice = &mut entries[start..];
            heapify(slice);
            lens.push(slice.len() as u32);
            offsets.push(entries.len());
        }
        let counters = HeapCounters {
            pushes: entries.len() as u64,
            pops: 0,
        };
        (VertexHeaps { entries, offsets, lens }, counters)
    }

    pub fn vertex<'a>(&'a mut self, v: VertexId, counters: &'a mut HeapCounters) -> VertexHeap<'a> {
        let v = v as usize;
        let data = &mut self.entries[self.offsets[v]..self.offsets[v + 1]];
        VertexHeap::new(data, &mut self.lens[v], counters)
    }

    #[cfg(feature = "parallel")]
    pub(crate) fn raw_parts(&mut self) -> (*mut HeapEntry, &[usize], *mut u32) {
        (self.entries.as_mut_ptr(), &self.offsets, self.lens.as_mut_ptr())
    }
}

fn heapify(data: &mut [HeapEntry]) {
    let n = data.len();
    let mut len = n as u32;
    let mut counters = HeapCounters::default();
    let mut heap = VertexHeap::new(data, &mut len, &mut counters);
    for i in (0..n / 2).rev() {
        heap.sift_down(i);
    }
}

/// Lazy evaluation over one heap: discards unavailable tops, refreshes stale
/// keys and returns the top once its cached gain is current. The returned
/// entry stays in the heap. Stale entries are re-pushed with their new gain.
pub(crate) fn lazy_evaluate_with<H, A, G>(
    heap: &mut H,
    mut available: A,
    mut gain: G,
) -> Result<Option<HeapEntry>>
where
    H: LazyHeap,
    A: FnMut(EdgeId) -> bool,
    G: FnMut(EdgeId) -> Result<f64>,
{
    while let Some(top) = heap.peek() {
        if !available(top.edge) {
            heap.pop();
            continue;
        }
        let g = gain(top.edge)?;
        if g.to_bits() == top.gain.to_bits() {
            return Ok(Some(top));
        }
        heap.pop();
        let fresh = HeapEntry::new(g, top.edge);
        let beats_rest = heap.peek().is_none_or(|next| fresh >= next);
        heap.push(fresh);
        if beats_rest {
            return Ok(Some(fresh));
        }
    }
    Ok(None)
}
