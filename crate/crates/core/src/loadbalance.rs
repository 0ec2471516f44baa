//! Task-to-machine assignment as a submodular b-matching.
//!
//! Tasks and machines form a complete bipartite graph where every
//! (task, machine) edge weighs the task's load. Each task takes one edge and
//! each machine at most its capacity. With α < 1 the concave per-machine
//! term rewards spreading load, so the matching balances machines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{make_b_vector, BSpec, BVector, EdgeId, Graph};
use crate::matching::{local_lazy_greedy, MatchOutcome};
use crate::objective::{ConcavePolynomial, Objective};

/// Largest complete bipartite instance we materialize.
pub const MAX_ASSIGNMENT_EDGES: usize = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct TaskSet {
    loads: Vec<f64>,
}

impl TaskSet {
    pub fn new(loads: Vec<f64>) -> Result<Self> {
        if let Some(x) = loads.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::domain(format!("invalid task load {x}")));
        }
        Ok(TaskSet { loads })
    }

    /// Reads one load per line; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut loads = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let x: f64 = t
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("expected a number, got {t:?}")))?;
            loads.push(x);
        }
        Self::new(loads)
    }

    /// `count` i.i.d. log-normal loads.
    pub fn lognormal(count: usize, mu: f64, sigma: f64, seed: u64) -> Result<Self> {
        let dist = LogNormal::new(mu, sigma)
            .map_err(|e| Error::domain(format!("log-normal parameters: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new((0..count).map(|_| dist.sample(&mut rng)).collect())
    }

    pub fn loads(&self) -> &[f64] {
        &self.loads
    }

    pub fn len(&self) -> usize {
        self.loads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loads.is_empty()
    }
}

/// Per-machine task limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    /// ⌈tasks / machines⌉, which balances message counts
    Auto,
    Fixed(u32),
    /// no limit: a semi-matching
    Unbounded,
}

impl Capacity {
    fn resolve(self, tasks: usize, machines: usize) -> usize {
        match self {
            Capacity::Auto => tasks.div_ceil(machines),
            Capacity::Fixed(c) => c as usize,
            Capacity::Unbounded => tasks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    pub machine_of: Vec<usize>,
    pub machine_loads: Vec<f64>,
    pub messages: Vec<u32>,
}

impl Assignment {
    fn from_machines(tasks: &TaskSet, machines: usize, machine_of: Vec<usize>) -> Self {
        let mut machine_loads = vec![0.0; machines];
        let mut messages = vec![0; machines];
        for (t, &j) in machine_of.iter().enumerate() {
            machine_loads[j] += tasks.loads[t];
            messages[j] += 1;
        }
        Assignment {
            machine_of,
            machine_loads,
            messages,
        }
    }

    pub fn num_machines(&self) -> usize {
        self.machine_loads.len()
    }
}

/// Assignment instance: vertices `0..T` are tasks, `T..T+M` machines; edge
/// `t * M + j` joins task `t` to machine `j`.
#[derive(Debug, Clone)]
pub struct AssignmentInstance {
    pub graph: Graph,
    pub b: BVector,
    pub tasks: usize,
    pub machines: usize,
}

impl AssignmentInstance {
    pub fn edge(&self, task: usize, machine: usize) -> EdgeId {
        (task * self.machines + machine) as EdgeId
    }

    /// Reads an assignment off a matching of this instance.
    pub fn assignment(&self, tasks: &TaskSet, edges: &[EdgeId]) -> Result<Assignment> {
        let mut machine_of = vec![usize::MAX; self.tasks];
        for &e in edges {
            let (t, j) = (e as usize / self.machines, e as usize % self.machines);
            machine_of[t] = j;
        }
        if let Some(t) = machine_of.iter().position(|&j| j == usize::MAX) {
            return Err(Error::Infeasible(format!("task {t} left unassigned")));
        }
        Ok(Assignment::from_machines(tasks, self.machines, machine_of))
    }
}

pub fn build_assignment_instance(
    tasks: &TaskSet,
    machines: usize,
    capacity: Capacity,
) -> Result<AssignmentInstance> {
    if machines == 0 {
        return Err(Error::domain("at least one machine is required"));
    }
    let t = tasks.len();
    let cap = capacity.resolve(t, machines);
    if cap.saturating_mul(machines) < t {
        return Err(Error::Infeasible(format!(
            "{machines} machines with capacity {cap} cannot take {t} tasks"
        )));
    }
    if t.saturating_mul(machines) > MAX_ASSIGNMENT_EDGES {
        return Err(Error::Infeasible(format!(
            "{t} tasks x {machines} machines exceeds {MAX_ASSIGNMENT_EDGES} edges; \
             split the task set or use fewer machines"
        )));
    }
    let edges = (0..t).flat_map(|task| (0..machines).map(move |j| (task, t + j, tasks.loads[task])));
    let graph = Graph::from_edges(t + machines, edges)?;
    let mut b = vec![1i64; t];
    b.extend(std::iter::repeat_n(cap as i64, machines));
    let b = make_b_vector(&graph, &BSpec::PerVertex(b))?;
    Ok(AssignmentInstance {
        graph,
        b,
        tasks: t,
        machines,
    })
}

/// Submodular assignment via local lazy greedy on the concave polynomial
/// objective.
pub fn assign(tasks: &TaskSet, machines: usize, alpha: f64, capacity: Capacity) -> Result<Assignment> {
    assign_with(tasks, machines, alpha, capacity, |inst, obj| {
        local_lazy_greedy(&inst.graph, &inst.b, obj)
    })
}

/// Like [`assign`] with a caller-chosen matching algorithm.
pub fn assign_with<F>(
    tasks: &TaskSet,
    machines: usize,
    alpha: f64,
    capacity: Capacity,
    solve: F,
) -> Result<Assignment>
where
    F: FnOnce(&AssignmentInstance, &dyn Objective) -> Result<MatchOutcome>,
{
    let obj = ConcavePolynomial::new(alpha)?;
    let instance = build_assignment_instance(tasks, machines, capacity)?;
    let outcome = solve(&instance, &obj)?;
    instance.assignment(tasks, outcome.matching.edges())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselinePolicy {
    RoundRobin,
    /// tasks in index order fill machine 0 up to ⌈T/M⌉, then machine 1, ...
    FirstFitCounter,
}

pub fn baseline_assign(tasks: &TaskSet, machines: usize, policy: BaselinePolicy) -> Result<Assignment> {
    if machines == 0 {
        return Err(Error::domain("at least one machine is required"));
    }
    let cap = tasks.len().div_ceil(machines).max(1);
    let machine_of = (0..tasks.len())
        .map(|t| match policy {
            BaselinePolicy::RoundRobin => t % machines,
            BaselinePolicy::FirstFitCounter => t / cap,
        })
        .collect();
    Ok(Assignment::from_machines(tasks, machines, machine_of))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoadStats {
    pub max: f64,
    pub min: f64,
    pub mean: f64,
    /// population standard deviation
    pub std: f64,
    /// std / mean; 0 when the mean is 0
    pub cv: f64,
    /// set when the mean is 0 and `cv` carries no information
    pub zero_mean: bool,
}

pub fn load_stats(a: &Assignment) -> Result<LoadStats> {
    let loads = &a.machine_loads;
    if loads.is_empty() {
        return Err(Error::domain("assignment has no machines"));
    }
    let n = loads.len() as f64;
    let mean = loads.iter().sum::<f64>() / n;
    let var = loads.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    let zero_mean = mean == 0.0;
    Ok(LoadStats {
        max: loads.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        min: loads.iter().copied().fold(f64::INFINITY, f64::min),
        mean,
        std,
        cv: if zero_mean { 0.0 } else { std / mean },
        zero_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_tasks() -> TaskSet {
        TaskSet::new(vec![300.0, 200.0, 100.0, 50.0]).unwrap()
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn instance_shapes() {
        let inst = build_assignment_instance(&four_tasks(), 2, Capacity::Auto).unwrap();
        assert_eq!(inst.graph.num_edges(), 8);
        assert_eq!(inst.b.as_slice(), &[1, 1, 1, 1, 2, 2]);

        let one = TaskSet::new(vec![3.0]).unwrap();
        let inst = build_assignment_instance(&one, 1, Capacity::Auto).unwrap();
        assert_eq!(inst.graph.num_edges(), 1);
        assert_eq!(inst.b.as_slice(), &[1, 1]);

        let five = TaskSet::new(vec![1.0; 5]).unwrap();
        let inst = build_assignment_instance(&five, 2, Capacity::Auto).unwrap();
        assert_eq!(inst.b.get(5), 3);
    }

    #[test]
    fn infeasible_capacity() {
        assert!(matches!(
            build_assignment_instance(&four_tasks(), 2, Capacity::Fixed(1)),
            Err(Error::Infeasible(_))
        ));
        assert!(build_assignment_instance(&four_tasks(), 0, Capacity::Auto).is_err());
    }

    #[test]
    fn worked_example() {
        let a = assign(&four_tasks(), 2, 0.5, Capacity::Auto).unwrap();
        assert_eq!(sorted(a.machine_loads.clone()), vec![300.0, 350.0]);
        assert_eq!(a.machine_of[0], a.machine_of[3]);
        assert_eq!(a.machine_of[1], a.machine_of[2]);
        assert_eq!(a.messages, vec![2, 2]);
    }

    #[test]
    fn equal_loads_balance() {
        let tasks = TaskSet::new(vec![7.0; 4]).unwrap();
        let a = assign(&tasks, 2, 0.5, Capacity::Auto).unwrap();
        assert_eq!(a.machine_loads, vec![14.0, 14.0]);
        assert_eq!(load_stats(&a).unwrap().cv, 0.0);
    }

    #[test]
    fn modular_objective_is_indifferent() {
        // every 2+2 split has the same linear objective: Σ w at tasks + Σ w at machines
        let tasks = four_tasks();
        let obj = ConcavePolynomial::new(1.0).unwrap();
        let inst = build_assignment_instance(&tasks, 2, Capacity::Auto).unwrap();
        let mut values = Vec::new();
        for mask in 0u32..16 {
            if mask.count_ones() != 2 {
                continue;
            }
            let edges: Vec<EdgeId> = (0..4)
                .map(|t| inst.edge(t, ((mask >> t) & 1) as usize))
                .collect();
            values.push(obj.evaluate(&inst.graph, &edges));
        }
        assert_eq!(values.len(), 6);
        assert!(values.iter().all(|&v| v == 1300.0));
        // smallest-edge-id tie-breaking fills machine 0 with the two largest tasks
        let a = assign(&tasks, 2, 1.0, Capacity::Auto).unwrap();
        assert_eq!(a.machine_loads, vec![500.0, 150.0]);
    }

    #[test]
    fn baselines() {
        let tasks = four_tasks();
        let rr = baseline_assign(&tasks, 2, BaselinePolicy::RoundRobin).unwrap();
        assert_eq!(rr.machine_loads, vec![400.0, 250.0]);
        let ff = baseline_assign(&tasks, 2, BaselinePolicy::FirstFitCounter).unwrap();
        assert_eq!(ff.machine_loads, vec![500.0, 150.0]);
        let single = baseline_assign(&tasks, 1, BaselinePolicy::RoundRobin).unwrap();
        assert_eq!(single.machine_loads, vec![650.0]);
    }

    #[test]
    fn stats() {
        let a = Assignment::from_machines(&TaskSet::new(vec![2.0; 3]).unwrap(), 3, vec![0, 1, 2]);
        let s = load_stats(&a).unwrap();
        assert_eq!((s.std, s.cv), (0.0, 0.0));

        let a = Assignment::from_machines(&TaskSet::new(vec![1.0, 3.0]).unwrap(), 2, vec![0, 1]);
        let s = load_stats(&a).unwrap();
        assert_eq!((s.mean, s.std, s.cv), (2.0, 1.0, 0.5));

        let sub = assign(&four_tasks(), 2, 0.5, Capacity::Auto).unwrap();
        let rr = baseline_assign(&four_tasks(), 2, BaselinePolicy::RoundRobin).unwrap();
        // {350,300}: std 25, mean 325; {400,250}: std 75, mean 325
        assert!((load_stats(&sub).unwrap().cv - 25.0 / 325.0).abs() < 1e-12);
        assert!((load_stats(&rr).unwrap().cv - 75.0 / 325.0).abs() < 1e-12);
        assert!((25.0f64 / 325.0 - 0.0769).abs() < 1e-4);
        assert!((75.0f64 / 325.0 - 0.2308).abs() < 1e-4);

        let zero = Assignment::from_machines(&TaskSet::new(vec![0.0]).unwrap(), 2, vec![0]);
        let s = load_stats(&zero).unwrap();
        assert!(s.zero_mean);
        assert_eq!(s.cv, 0.0);
    }

    #[test]
    fn parse_loads() {
        let t = TaskSet::parse("300\n200\n\n100\n50\n").unwrap();
        assert_eq!(t, four_tasks());
        assert!(TaskSet::parse("1\n-2\n").is_err());
        assert!(TaskSet::parse("abc\n").is_err());
    }
}
