//! Genetic operators for quota-constrained allocations.
//!
//! All operators map feasible matchings to feasible matchings:
//!
//! * [`mutate`] walks the parent's edges and, per fired edge, either
//!   transfers the student to another under-subscribed supervisor
//!   (changing the allocation structure) or swaps two students between
//!   supervisors (preserving it).
//! * [`hopcroft_karp_crossover`] merges both parents' edge sets, picks
//!   one parent's allocation structure (biased by its balance penalty),
//!   expands supervisors into per-slot copies and extracts a perfect
//!   matching, so the child reuses parent genes only.
//! * [`gsp_crossover`] (greedy structural preservation) also merges and
//!   inherits a structure, then locks edges greedily: forced edges
//!   first, then uniformly random ones, completing any leftover
//!   students with fresh assignments. It runs in linear time and may
//!   introduce a small fraction of new genes.

use rand::Rng;

use crate::instance::ProblemInstance;
use crate::matching::{AllocationStructure, Matching};

/// Mutation control: `p_mt` is the per-edge firing probability, `p_sw`
/// the probability that a fired edge swaps rather than transfers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationParams {
    pub p_mt: f64,
    pub p_sw: f64,
}

impl MutationParams {
    pub fn new(p_mt: f64, p_sw: f64) -> Self {
        assert!((0.0..=1.0).contains(&p_mt), "p_mt must be in [0, 1]");
        assert!((0.0..=1.0).contains(&p_sw), "p_sw must be in [0, 1]");
        MutationParams { p_mt, p_sw }
    }
}

/// Swap/transfer mutation over a single parent.
///
/// Iterates the students in index order against the evolving child. A
/// fired edge transfers when the swap draw fails, the source supervisor
/// sits strictly above its lower quota, and some other supervisor is
/// under-subscribed; the target is drawn uniformly among those (the
/// source itself is excluded: a transfer moves between distinct
/// supervisors) and the under-subscribed set is refreshed afterwards.
/// Otherwise the edge swaps with a uniformly drawn supervisor and one of
/// its students; degenerate draws (same supervisor, same student, or an
/// empty supervisor) are identity operations rather than redraws.
///
/// Panics if the parent is infeasible.
pub fn mutate(
    parent: &Matching,
    params: &MutationParams,
    instance: &ProblemInstance,
    rng: &mut impl Rng,
) -> Matching {
    assert!(parent.is_feasible(instance), "mutate: infeasible parent");
    let n = parent.n();
    let m = parent.m();
    let mut child = parent.clone();
    let mut under = child.under_subscribed(instance);
    for student in 0..n {
        if !rng.random_bool(params.p_mt) {
            continue;
        }
        let source = child.supervisor_of(student);
        let swap_draw = rng.random_bool(params.p_sw);
        let over_minimum = child.counts()[source] > instance.c_min()[source];
        let targets = under.len() - usize::from(under.contains(&source));
        if !swap_draw && over_minimum && targets > 0 {
            // Transfer to a uniformly random under-subscribed supervisor.
            let mut pick = rng.random_range(0..targets);
            let mut chosen = under[0];
            for &q in &under {
                if q == source {
                    continue;
                }
                if pick == 0 {
                    chosen = q;
                    break;
                }
                pick -= 1;
            }
            child.reassign(student, chosen);
            under = child.under_subscribed(instance);
        } else {
            // Swap with a random student of a random supervisor.
            let q = rng.random_range(0..m);
            let members = child.students_of(q);
            if members.is_empty() {
                continue;
            }
            let other = members[rng.random_range(0..members.len())];
            child.swap_students(student, other);
        }
    }
    debug_assert!(child.is_feasible(instance));
    child
}

/// Picks one parent's allocation structure, with probability
/// proportional to its workload balance penalty factor `1/(1+sigma)^alpha`.
pub fn inherit_structure(
    p1: &Matching,
    p2: &Matching,
    alpha: f64,
    instance: &ProblemInstance,
    rng: &mut impl Rng,
) -> AllocationStructure {
    let f1 = 1.0 / (1.0 + p1.workload_stats(instance).sigma).powf(alpha);
    let f2 = 1.0 / (1.0 + p2.workload_stats(instance).sigma).powf(alpha);
    if rng.random_bool(f1 / (f1 + f2)) {
        p1.structure()
    } else {
        p2.structure()
    }
}

/// Bipartite graph whose right side holds one copy of each supervisor
/// per slot of a target allocation structure; merged parent edges are
/// replicated to every copy of their supervisor.
#[derive(Debug, Clone)]
pub struct TransformedGraph {
    n_students: usize,
    /// copy index -> original supervisor index
    copy_owner: Vec<u32>,
    /// student -> copy indices, grouped by supervisor, ascending
    adjacency: Vec<Vec<u32>>,
}

impl TransformedGraph {
    /// Expands the merged edge sets of two parents against a target
    /// structure, listing each student's first parent's copies first.
    /// The structure must sum to the student count.
    pub fn build(structure: &AllocationStructure, p1: &Matching, p2: &Matching) -> Self {
        Self::assemble(structure, p1, p2, None)
    }

    /// Like [`TransformedGraph::build`], but each student's two candidate
    /// supervisors appear in a random order. Augmenting-path search is
    /// deterministic given the adjacency, so this is what lets the
    /// extracted matching land on any of the feasible gene mixtures
    /// instead of always echoing one parent.
    pub fn build_shuffled(
        structure: &AllocationStructure,
        p1: &Matching,
        p2: &Matching,
        rng: &mut impl Rng,
    ) -> Self {
        Self::assemble(structure, p1, p2, Some(rng as &mut dyn rand::RngCore))
    }

    fn assemble(
        structure: &AllocationStructure,
        p1: &Matching,
        p2: &Matching,
        mut shuffle: Option<&mut dyn rand::RngCore>,
    ) -> Self {
        let n = p1.n();
        let m = p1.m();
        assert_eq!(p2.n(), n);
        assert_eq!(structure.counts().len(), m);
        assert_eq!(structure.total() as usize, n, "structure must sum to n");
        let mut offsets = vec![0u32; m + 1];
        for j in 0..m {
            offsets[j + 1] = offsets[j] + structure.counts()[j];
        }
        let mut copy_owner = vec![0u32; n];
        for j in 0..m {
            for c in offsets[j]..offsets[j + 1] {
                copy_owner[c as usize] = j as u32;
            }
        }
        let mut adjacency = Vec::with_capacity(n);
        for i in 0..n {
            let mut a = p1.assignment()[i] as usize;
            let mut b = p2.assignment()[i] as usize;
            if b != a {
                if let Some(rng) = shuffle.as_deref_mut() {
                    if rng.random_bool(0.5) {
                        std::mem::swap(&mut a, &mut b);
                    }
                }
            }
            let mut neighbors = Vec::new();
            neighbors.extend(offsets[a]..offsets[a + 1]);
            if b != a {
                neighbors.extend(offsets[b]..offsets[b + 1]);
            }
            adjacency.push(neighbors);
        }
        TransformedGraph {
            n_students: n,
            copy_owner,
            adjacency,
        }
    }

    pub fn n_students(&self) -> usize {
        self.n_students
    }

    pub fn n_copies(&self) -> usize {
        self.copy_owner.len()
    }

    pub fn copy_owner(&self, copy: usize) -> usize {
        self.copy_owner[copy] as usize
    }

    pub fn neighbors(&self, student: usize) -> &[u32] {
        &self.adjacency[student]
    }
}

/// Maximum-cardinality matching via Hopcroft-Karp: alternating BFS
/// layering and layered DFS augmentation, O(E sqrt V) in the worst
/// case. Returns (student, copy) pairs.
pub fn max_cardinality_matching(graph: &TransformedGraph) -> Vec<(usize, usize)> {
    const FREE: u32 = u32::MAX;
    const INF: u32 = u32::MAX;
    let n = graph.n_students();
    let c = graph.n_copies();
    let mut match_student = vec![FREE; n]; // student -> copy
    let mut match_copy = vec![FREE; c]; // copy -> student
    let mut dist = vec![INF; n];

    // BFS from free students: layer students by shortest alternating path.
    fn bfs(
        graph: &TransformedGraph,
        match_student: &[u32],
        match_copy: &[u32],
        dist: &mut [u32],
    ) -> bool {
        const FREE: u32 = u32::MAX;
        const INF: u32 = u32::MAX;
        let mut queue = std::collections::VecDeque::new();
        for (s, d) in dist.iter_mut().enumerate() {
            if match_student[s] == FREE {
                *d = 0;
                queue.push_back(s);
            } else {
                *d = INF;
            }
        }
        let mut found = false;
        while let Some(s) = queue.pop_front() {
            for &copy in graph.neighbors(s) {
                let owner = match_copy[copy as usize];
                if owner == FREE {
                    found = true;
                } else if dist[owner as usize] == INF {
                    dist[owner as usize] = dist[s] + 1;
                    queue.push_back(owner as usize);
                }
            }
        }
        found
    }

    fn augment(
        graph: &TransformedGraph,
        s: usize,
        match_student: &mut [u32],
        match_copy: &mut [u32],
        dist: &mut [u32],
    ) -> bool {
        const FREE: u32 = u32::MAX;
        const INF: u32 = u32::MAX;
        for idx in 0..graph.neighbors(s).len() {
            let copy = graph.neighbors(s)[idx] as usize;
            let owner = match_copy[copy];
            if owner == FREE
                || (dist[owner as usize] == dist[s] + 1
                    && augment(graph, owner as usize, match_student, match_copy, dist))
            {
                match_student[s] = copy as u32;
                match_copy[copy] = s as u32;
                return true;
            }
        }
        dist[s] = INF;
        false
    }

    while bfs(graph, &match_student, &match_copy, &mut dist) {
        for s in 0..n {
            if match_student[s] == FREE && dist[s] == 0 {
                augment(graph, s, &mut match_student, &mut match_copy, &mut dist);
            }
        }
    }

    (0..n)
        .filter(|&s| match_student[s] != FREE)
        .map(|s| (s, match_student[s] as usize))
        .collect()
}

/// Hopcroft-Karp crossover: structure-preserving and gene-preserving.
///
/// The child's structure equals the inherited one and every child gene
/// appears in at least one parent. Panics if either parent is
/// infeasible.
pub fn hopcroft_karp_crossover(
    p1: &Matching,
    p2: &Matching,
    alpha: f64,
    instance: &ProblemInstance,
    rng: &mut impl Rng,
) -> Matching {
    assert!(p1.is_feasible(instance), "crossover: infeasible parent");
    assert!(p2.is_feasible(instance), "crossover: infeasible parent");
    let structure = inherit_structure(p1, p2, alpha, instance, rng);
    hopcroft_karp_crossover_with(&structure, p1, p2, rng)
}

/// Hopcroft-Karp crossover against an explicit target structure.
pub fn hopcroft_karp_crossover_with(
    structure: &AllocationStructure,
    p1: &Matching,
    p2: &Matching,
    rng: &mut impl Rng,
) -> Matching {
    let graph = TransformedGraph::build_shuffled(structure, p1, p2, rng);
    let matched = max_cardinality_matching(&graph);
    // The inherited parent's own edges form a perfect matching of the
    // transformed graph, so the maximum matching covers every student.
    assert_eq!(
        matched.len(),
        graph.n_students(),
        "merged parents always admit a perfect matching"
    );
    let mut assignment = vec![0u32; graph.n_students()];
    for (student, copy) in matched {
        assignment[student] = graph.copy_owner(copy) as u32;
    }
    Matching::from_assignment(assignment, p1.m())
}

/// Greedy structural preservation crossover.
///
/// Linear-time: merges the parents, inherits a structure, locks forced
/// edges to a fixpoint, locks uniformly random edges while removing
/// conflicting ones, and finally assigns any unmatched students to
/// supervisors with remaining slots. Only that last step can introduce
/// genes absent from both parents. Panics if either parent is
/// infeasible.
pub fn gsp_crossover(
    p1: &Matching,
    p2: &Matching,
    alpha: f64,
    instance: &ProblemInstance,
    rng: &mut impl Rng,
) -> Matching {
    assert!(p1.is_feasible(instance), "crossover: infeasible parent");
    assert!(p2.is_feasible(instance), "crossover: infeasible parent");
    let structure = inherit_structure(p1, p2, alpha, instance, rng);
    gsp_crossover_with(&structure, p1, p2, rng)
}

/// GSP crossover against an explicit target structure.
pub fn gsp_crossover_with(
    structure: &AllocationStructure,
    p1: &Matching,
    p2: &Matching,
    rng: &mut impl Rng,
) -> Matching {
    let n = p1.n();
    let m = p1.m();
    assert_eq!(structure.total() as usize, n, "structure must sum to n");
    let target = structure.counts();

    // Merged edge set; each student contributes one or two edges. The
    // per-supervisor edge lists are kept in one flat array indexed by
    // offsets so the allocation count stays independent of m.
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(2 * n);
    let mut student_edges: Vec<[usize; 2]> = Vec::with_capacity(n);
    for i in 0..n {
        let a = p1.assignment()[i];
        let b = p2.assignment()[i];
        let e1 = edges.len();
        edges.push((i as u32, a));
        if b != a {
            let e2 = edges.len();
            edges.push((i as u32, b));
            student_edges.push([e1, e2]);
        } else {
            student_edges.push([e1, usize::MAX]);
        }
    }
    let mut sup_off = vec![0u32; m + 1];
    for &(_, j) in &edges {
        sup_off[j as usize + 1] += 1;
    }
    for j in 0..m {
        sup_off[j + 1] += sup_off[j];
    }
    let mut sup_edge_ids = vec![0u32; edges.len()];
    let mut cursor = sup_off.clone();
    for (e, &(_, j)) in edges.iter().enumerate() {
        sup_edge_ids[cursor[j as usize] as usize] = e as u32;
        cursor[j as usize] += 1;
    }
    let sup_edges = |j: usize| -> &[u32] { &sup_edge_ids[sup_off[j] as usize..sup_off[j + 1] as usize] };

    let ecount = edges.len();
    let mut alive = vec![true; ecount];
    let mut locked_edge = vec![false; ecount];
    let mut degree: Vec<u8> = student_edges
        .iter()
        .map(|se| 1 + u8::from(se[1] != usize::MAX))
        .collect();
    let mut locked_student = vec![false; n];
    let mut locks = vec![0u32; m];
    let mut child = vec![u32::MAX; n];

    // Pool of alive unlocked edges with O(1) removal.
    let mut pool: Vec<u32> = (0..ecount as u32).collect();
    let mut pool_pos: Vec<usize> = (0..ecount).collect();
    let remove_from_pool = |pool: &mut Vec<u32>, pool_pos: &mut Vec<usize>, e: usize| {
        let pos = pool_pos[e];
        let last = *pool.last().expect("edge is still pooled");
        pool.swap_remove(pos);
        if pos < pool.len() {
            pool_pos[last as usize] = pos;
        }
        pool_pos[e] = usize::MAX;
    };

    // Kills one unlocked edge; returns its student.
    macro_rules! kill_edge {
        ($e:expr) => {{
            let e = $e;
            alive[e] = false;
            degree[edges[e].0 as usize] -= 1;
            remove_from_pool(&mut pool, &mut pool_pos, e);
            edges[e].0 as usize
        }};
    }

    // Saturating a supervisor removes its remaining unlocked edges and
    // reports students that became forced (degree one) or orphaned.
    macro_rules! saturate {
        ($j:expr, $forced:expr) => {{
            let j = $j;
            for &e in sup_edges(j) {
                let e = e as usize;
                if alive[e] && !locked_edge[e] {
                    let s = kill_edge!(e);
                    if degree[s] == 1 && !locked_student[s] {
                        $forced.push(s);
                    }
                }
            }
        }};
    }

    let mut forced: Vec<usize> = Vec::new();

    // Supervisors whose inherited slot count is already met (zero slots)
    // lose their merged edges up front; with positive lower quotas this
    // never triggers.
    #[allow(clippy::needless_range_loop)]
    for j in 0..m {
        if target[j] == 0 {
            saturate!(j, forced);
        }
    }

    // Simplify to a fixpoint: lock every student that has a single
    // possible supervisor; saturation may force further students.
    for s in 0..n {
        if degree[s] == 1 && !locked_student[s] {
            forced.push(s);
        }
    }
    while let Some(s) = forced.pop() {
        if locked_student[s] || degree[s] != 1 {
            continue;
        }
        let e = student_edges[s]
            .iter()
            .copied()
            .find(|&e| e != usize::MAX && alive[e] && !locked_edge[e])
            .expect("degree-one student has one live unlocked edge");
        let j = edges[e].1 as usize;
        locked_edge[e] = true;
        locked_student[s] = true;
        child[s] = j as u32;
        locks[j] += 1;
        remove_from_pool(&mut pool, &mut pool_pos, e);
        if locks[j] == target[j] {
            saturate!(j, forced);
        }
    }

    // Lock uniformly random edges; each lock discards the student's other
    // edge and, on saturation, the supervisor's remaining unlocked edges.
    while !pool.is_empty() {
        let e = pool[rng.random_range(0..pool.len())] as usize;
        let (s, j) = (edges[e].0 as usize, edges[e].1 as usize);
        locked_edge[e] = true;
        locked_student[s] = true;
        child[s] = j as u32;
        locks[j] += 1;
        remove_from_pool(&mut pool, &mut pool_pos, e);
        for &other in &student_edges[s] {
            if other != usize::MAX && other != e && alive[other] && !locked_edge[other] {
                kill_edge!(other);
            }
        }
        if locks[j] == target[j] {
            // Students forced by this removal simply wait for their last
            // edge to be drawn (or killed) by the random phase.
            let mut ignored = Vec::new();
            saturate!(j, ignored);
        }
    }

    // Complete the child: unmatched students get a uniformly random
    // supervisor that still has slots left.
    let mut pending: Vec<u32> = (0..n as u32).filter(|&s| !locked_student[s as usize]).collect();
    let mut open: Vec<u32> = (0..m as u32).filter(|&j| locks[j as usize] < target[j as usize]).collect();
    while !pending.is_empty() {
        let si = rng.random_range(0..pending.len());
        let s = pending.swap_remove(si) as usize;
        let ji = rng.random_range(0..open.len());
        let j = open[ji] as usize;
        child[s] = j as u32;
        locks[j] += 1;
        if locks[j] == target[j] {
            open.swap_remove(ji);
        }
    }

    Matching::from_assignment(child, m)
}

/// Fraction of child genes present in neither parent.
pub fn new_gene_ratio(child: &Matching, p1: &Matching, p2: &Matching) -> f64 {
    let n = child.n();
    let fresh = (0..n)
        .filter(|&i| {
            let c = child.assignment()[i];
            c != p1.assignment()[i] && c != p2.assignment()[i]
        })
        .count();
    fresh as f64 / n as f64
}

/// Uniform crossover comparator: each gene comes from either parent with
/// equal probability, then the child is repaired to feasibility. Not
/// structure-preserving.
pub fn uniform_crossover(
    p1: &Matching,
    p2: &Matching,
    instance: &ProblemInstance,
    rng: &mut impl Rng,
) -> Matching {
    let n = p1.n();
    let assignment: Vec<u32> = (0..n)
        .map(|i| {
            if rng.random_bool(0.5) {
                p1.assignment()[i]
            } else {
                p2.assignment()[i]
            }
        })
        .collect();
    repair(Matching::from_assignment(assignment, p1.m()), instance, rng)
}

/// k-point crossover comparator: alternate parent segments split at k
/// random cut positions, then repair. Not structure-preserving.
pub fn k_point_crossover(
    p1: &Matching,
    p2: &Matching,
    k: usize,
    instance: &ProblemInstance,
    rng: &mut impl Rng,
) -> Matching {
    let n = p1.n();
    let k = k.min(n.saturating_sub(1));
    let mut cuts = rand::seq::index::sample(rng, n.saturating_sub(1), k)
        .into_iter()
        .map(|c| c + 1)
        .collect::<Vec<_>>();
    cuts.sort_unstable();
    let mut assignment = Vec::with_capacity(n);
    let mut use_first = true;
    let mut cut_iter = cuts.iter().peekable();
    for i in 0..n {
        if cut_iter.peek() == Some(&&i) {
            use_first = !use_first;
            cut_iter.next();
        }
        assignment.push(if use_first {
            p1.assignment()[i]
        } else {
            p2.assignment()[i]
        });
    }
    repair(Matching::from_assignment(assignment, p1.m()), instance, rng)
}

/// Feasibility repair for the classic comparators: first satisfy lower
/// quotas by pulling students from supervisors above their own minimum,
/// then drain over-subscribed supervisors onto under-subscribed ones;
/// donors, students and targets are drawn uniformly.
fn repair(mut m: Matching, instance: &ProblemInstance, rng: &mut impl Rng) -> Matching {
    loop {
        let deficient: Vec<usize> = (0..m.m())
            .filter(|&j| m.counts()[j] < instance.c_min()[j])
            .collect();
        if deficient.is_empty() {
            break;
        }
        let j = deficient[rng.random_range(0..deficient.len())];
        let donors: Vec<usize> = (0..m.m())
            .filter(|&q| m.counts()[q] > instance.c_min()[q])
            .collect();
        let q = donors[rng.random_range(0..donors.len())];
        let members = m.students_of(q);
        let student = members[rng.random_range(0..members.len())];
        m.reassign(student, j);
    }
    loop {
        let over: Vec<usize> = (0..m.m())
            .filter(|&j| m.counts()[j] > instance.c_max()[j])
            .collect();
        if over.is_empty() {
            break;
        }
        let j = over[rng.random_range(0..over.len())];
        let under = m.under_subscribed(instance);
        let q = under[rng.random_range(0..under.len())];
        let members = m.students_of(j);
        let student = members[rng.random_range(0..members.len())];
        m.reassign(student, q);
    }
    debug_assert!(m.is_feasible(instance));
    m
}
