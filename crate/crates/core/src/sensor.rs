//! Target enumeration on one-way sensor networks.
//!
//! A network is a finite poset drawn as its Hasse diagram. Targets sit on
//! nodes or on Hasse edges; the sensor at node `r` reports how many targets
//! lie below it, where a target on the edge `p ≺ q` lies below `r` when
//! `q ≤ r`. The Euler integral of that counting function over the poset is
//! the number of targets.

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::category::{FiniteCategory, ObjectSet};
use crate::definable::DefinableFunction;
use crate::error::{Error, Result};
use crate::euler;
use crate::integration::{integrate, Side};
use crate::rational::Rational;

/// A finite poset together with its cover relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensorNetwork {
    poset: FiniteCategory,
    hasse_edges: Vec<(usize, usize)>,
}

/// Strict reachability along `edges`, or the first node found on a cycle.
fn reachability(n: usize, edges: &[(usize, usize)]) -> std::result::Result<Vec<Vec<bool>>, usize> {
    let mut succ = vec![Vec::new(); n];
    for &(p, q) in edges {
        succ[p].push(q);
    }
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let mut stack = succ[start].clone();
        while let Some(x) = stack.pop() {
            if !reach[start][x] {
                reach[start][x] = true;
                stack.extend(succ[x].iter().copied());
            }
        }
        if reach[start][start] {
            return Err(start);
        }
    }
    Ok(reach)
}

/// Edges of `edges` not implied by a longer path. `reach` must be acyclic.
fn reduce(edges: &[(usize, usize)], reach: &[Vec<bool>]) -> Vec<(usize, usize)> {
    edges
        .iter()
        .copied()
        .filter(|&(p, q)| !(0..reach.len()).any(|r| reach[p][r] && reach[r][q]))
        .collect()
}

impl SensorNetwork {
    /// Builds a network from node names and `(lower, upper)` Hasse edges.
    pub fn new<S: AsRef<str>>(nodes: &[S], hasse: &[(S, S)]) -> Result<Self> {
        let nodes: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        let hasse: Vec<(String, String)> = hasse
            .iter()
            .map(|(p, q)| (p.as_ref().to_string(), q.as_ref().to_string()))
            .collect();
        if let Some(err) = Self::violations(&nodes, &hasse).into_iter().next() {
            return Err(err);
        }
        let index = |name: &str| nodes.iter().position(|n| n == name).expect("validated");
        let edges = hasse.iter().map(|(p, q)| (index(p), index(q))).collect();
        Ok(Self::from_valid(nodes, edges))
    }

    fn from_valid(nodes: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let reach = reachability(nodes.len(), &edges).expect("validated acyclic");
        let poset = FiniteCategory::from_order(nodes, |i, j| reach[i][j]).expect("partial order");
        SensorNetwork {
            poset,
            hasse_edges: edges,
        }
    }

    /// Every violated invariant of a candidate network.
    pub fn violations(nodes: &[String], hasse: &[(String, String)]) -> Vec<Error> {
        let mut out = Vec::new();
        for (i, name) in nodes.iter().enumerate() {
            if nodes[..i].contains(name) {
                out.push(Error::DuplicateObject(name.clone()));
            }
        }
        let lookup = |name: &str| nodes.iter().position(|n| n == name);
        let mut edges = Vec::new();
        for (p, q) in hasse {
            match (lookup(p), lookup(q)) {
                (Some(a), Some(b)) => {
                    if edges.contains(&(a, b)) {
                        out.push(Error::DuplicateEdge(p.clone(), q.clone()));
                    } else {
                        edges.push((a, b));
                    }
                }
                (a, b) => {
                    if a.is_none() {
                        out.push(Error::UnknownNode(p.clone()));
                    }
                    if b.is_none() {
                        out.push(Error::UnknownNode(q.clone()));
                    }
                }
            }
        }
        let reach = match reachability(nodes.len(), &edges) {
            Ok(reach) => reach,
            Err(x) => {
                out.push(Error::CycleDetected(nodes[x].clone()));
                return out;
            }
        };
        let reduction = reduce(&edges, &reach);
        let named: Vec<(String, String)> = reduction
            .iter()
            .map(|&(p, q)| (nodes[p].clone(), nodes[q].clone()))
            .collect();
        for &(p, q) in &edges {
            if !reduction.contains(&(p, q)) {
                out.push(Error::NotCoverEdge {
                    from: nodes[p].clone(),
                    to: nodes[q].clone(),
                    reduction: named.clone(),
                });
            }
        }
        out
    }

    /// The underlying poset as a category.
    pub fn poset(&self) -> &FiniteCategory {
        &self.poset
    }

    pub fn nodes(&self) -> &[String] {
        self.poset.objects()
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse_edges
    }

    pub fn node_index(&self, name: &str) -> Result<usize> {
        self.poset
            .index_of(name)
            .map_err(|_| Error::UnknownNode(name.to_string()))
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.poset.arrow(p, q)
    }

    fn check_placement(&self, t: &TargetPlacement) -> Result<()> {
        match *t {
            TargetPlacement::Node(p) if p < self.len() => Ok(()),
            TargetPlacement::Edge(p, q) if self.hasse_edges.contains(&(p, q)) => Ok(()),
            TargetPlacement::Node(p) => Err(Error::InvalidPlacement(format!("no node #{p}"))),
            TargetPlacement::Edge(p, q) => Err(Error::InvalidPlacement(format!(
                "no Hasse edge ({},{})",
                self.poset.objects().get(p).map_or("?", |s| s.as_str()),
                self.poset.objects().get(q).map_or("?", |s| s.as_str()),
            ))),
        }
    }

    /// `h(r)`: number of targets whose upper end lies at or below `r`.
    pub fn counting_function(&self, targets: &[TargetPlacement]) -> Result<CountingFunction> {
        let mut values = vec![0u64; self.len()];
        for t in targets {
            self.check_placement(t)?;
            let head = t.head();
            for (r, v) in values.iter_mut().enumerate() {
                if self.leq(head, r) {
                    *v += 1;
                }
            }
        }
        Ok(CountingFunction { values })
    }

    /// First pair `p ≤ q` with `h(p) > h(q)`.
    fn monotonicity_witness(&self, h: &CountingFunction) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .find(|&(p, q)| self.leq(p, q) && h.values[p] > h.values[q])
    }

    pub fn is_monotone(&self, h: &CountingFunction) -> bool {
        self.monotonicity_witness(h).is_none()
    }

    fn check_len(&self, h: &CountingFunction) -> Result<()> {
        if h.values.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} sensor readings for {} nodes",
                h.values.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `∫_P h dχ`. Non-monotone readings are still integrated, but then the
    /// result carries no counting guarantee and `monotone` is false.
    pub fn count_targets(&self, h: &CountingFunction) -> Result<TargetCount> {
        self.check_len(h)?;
        let f = DefinableFunction::new(&self.poset, h.to_rationals())?;
        Ok(TargetCount {
            count: integrate(&f, Side::Filters)?,
            monotone: self.is_monotone(h),
        })
    }

    /// `χ({p | h(p) ≥ i})` for `i = 1..=max h`, and their sum.
    pub fn count_by_level_sets(&self, h: &CountingFunction) -> Result<LevelSets> {
        self.check_len(h)?;
        if let Some((p, q)) = self.monotonicity_witness(h) {
            return Err(Error::NotMonotone(
                self.poset.name(p).to_string(),
                self.poset.name(q).to_string(),
            ));
        }
        let top = h.values.iter().copied().max().unwrap_or(0);
        let levels = (1..=top)
            .map(|i| {
                let level: ObjectSet = (0..self.len()).filter(|&p| h.values[p] >= i).collect();
                euler::euler_characteristic_of(&self.poset, &level)
                    .map(|chi| chi.expect("posets have Euler characteristic"))
            })
            .collect::<Result<Vec<_>>>()?;
        let total = levels.iter().sum();
        Ok(LevelSets { levels, total })
    }
}

/// Where a target sits: on a node, or on a Hasse edge `(lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetPlacement {
    Node(usize),
    Edge(usize, usize),
}

impl TargetPlacement {
    /// The node whose sensor first sees the target.
    pub fn head(&self) -> usize {
        match *self {
            TargetPlacement::Node(p) => p,
            TargetPlacement::Edge(_, q) => q,
        }
    }
}

/// Per-node sensor readings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingFunction {
    pub values: Vec<u64>,
}

impl CountingFunction {
    pub fn new(values: Vec<u64>) -> Self {
        CountingFunction { values }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.values
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetCount {
    pub count: Rational,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub levels: Vec<Rational>,
    pub total: Rational,
}

/// A generated network with its ground-truth targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub network: SensorNetwork,
    pub targets: Vec<TargetPlacement>,
    pub counting: CountingFunction,
}

fn bernoulli<R: Rng>(rng: &mut R, p: &Rational) -> bool {
    if *p <= Rational::zero() {
        return false;
    }
    if *p >= Rational::from_integer(1.into()) {
        return true;
    }
    match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(num), Some(den)) => rng.gen_range(0..den) < num,
        _ => rng.gen_bool(p.to_f64().unwrap_or(0.0)),
    }
}

/// A random network on `n_nodes` nodes with `n_targets` targets placed
/// uniformly on nodes and Hasse edges. Each pair `i < j` of a random node
/// order is joined with probability `edge_density` (clamped to `[0, 1]`),
/// then the relation is reduced to its cover edges. Deterministic in `seed`.
pub fn simulate(
    n_nodes: usize,
    n_targets: usize,
    edge_density: &Rational,
    seed: u64,
) -> Simulation {
    assert!(n_nodes >= 1, "a network needs at least one node");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n_nodes).collect();
    for i in (1..n_nodes).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = Vec::new();
    for i in 0..n_nodes {
        for j in i + 1..n_nodes {
            if bernoulli(&mut rng, edge_density) {
                edges.push((order[i], order[j]));
            }
        }
    }
    let reach = reachability(n_nodes, &edges).expect("edges follow a linear order");
    let mut covers = reduce(&edges, &reach);
    covers.sort_unstable();
    let nodes = (0..n_nodes).map(|i| format!("n{i}")).collect();
    let network = SensorNetwork::from_valid(nodes, covers);

    let slots = network.len() + network.hasse_edges.len();
    let targets: Vec<TargetPlacement> = (0..n_targets)
        .map(|_| {
            let k = rng.gen_range(0..slots);
            if k < network.len() {
                TargetPlacement::Node(k)
            } else {
                let (p, q) = network.hasse_edges[k - network.len()];
                TargetPlacement::Edge(p, q)
            }
        })
        .collect();
    let counting = network
        .counting_function(&targets)
        .expect("placements are drawn from the network");
    Simulation {
        network,
        targets,
        counting,
    }
}

/// Outcome of one simulated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub targets: usize,
    pub count: Rational,
    pub level_total: Rational,
}

impl TrialReport {
    /// Both the integral and the level-set sum recover the placement count.
    pub fn ok(&self) -> bool {
        let truth = Rational::from_integer(self.targets.into());
        self.count == truth && self.level_total == truth
    }
}

/// Runs `trials` instances with seeds `seed, seed + 1, …` in parallel;
/// reports come back in seed order.
pub fn simulate_trials(
    n_nodes: usize,
    n_targets: usize,
    edge_density: &Rational,
    seed: u64,
    trials: u64,
) -> Result<Vec<TrialReport>> {
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let s = seed.wrapping_add(k);
            let sim = simulate(n_nodes, n_targets, edge_density, s);
            let count = sim.network.count_targets(&sim.counting)?.count;
            let level_total = sim.network.count_by_level_sets(&sim.counting)?.total;
            Ok(TrialReport {
                seed: s,
                nodes: n_nodes,
                edges: sim.network.hasse_edges.len(),
                targets: sim.targets.len(),
                count,
                level_total,
            })
        })
        .collect()
}
