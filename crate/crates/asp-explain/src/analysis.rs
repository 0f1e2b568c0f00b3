//! Static checks on parsed programs: rule safety, the predicate dependency
//! graph, and aggregate stratification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ast::{Atom, BodyElem, CmpOp, Head, Program, Rule, Term};

/// How a variable is used within one rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarClass {
    /// Occurs in the positive body (or is bound by an `=` comparison whose
    /// other side grounds out), so instantiation can bind it.
    Global,
    /// Occurs only inside an aggregate whose condition atom binds it.
    Local,
    Unsafe,
}

/// Safety classification for every variable of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyInfo {
    pub classes: BTreeMap<String, VarClass>,
}

impl SafetyInfo {
    pub fn globals(&self) -> BTreeSet<String> {
        self.classes
            .iter()
            .filter(|(_, c)| **c == VarClass::Global)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("rule {source_index} is unsafe: variable(s) {} neither occur in the positive body nor are bound by an aggregate condition", unsafe_vars.join(", "))]
pub struct SafetyViolation {
    pub source_index: usize,
    pub unsafe_vars: Vec<String>,
}

/// Classifies every variable of `rule` and reports the unsafe ones.
///
/// A variable is global when it occurs in the positive body; a variable that
/// is the sole content of one side of an `=` comparison whose other side
/// grounds out (given already-global variables) also counts as global, since
/// instantiation binds it. A variable is local when all its occurrences are
/// inside aggregates that bind it through their condition atom. Anything
/// else is unsafe.
pub fn check_safety(rule: &Rule) -> Result<SafetyInfo, SafetyViolation> {
    let mut globals: BTreeSet<String> = BTreeSet::new();
    for atom in rule.pos_literals() {
        atom.collect_vars(&mut globals);
    }
    // `X = t` comparisons bind X at grounding time once t grounds out.
    loop {
        let mut changed = false;
        for cmp in rule.comparisons() {
            if cmp.op != CmpOp::Eq {
                continue;
            }
            for (side, other) in [(&cmp.left, &cmp.right), (&cmp.right, &cmp.left)] {
                if let Term::Var(v) = side {
                    if !globals.contains(v) && other.vars().is_subset(&globals) {
                        globals.insert(v.clone());
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Occurrences outside aggregates that are not global make a variable
    // unsafe; inside an aggregate, the condition atom must bind it.
    let mut non_aggregate_vars: BTreeSet<String> = BTreeSet::new();
    match &rule.head {
        Head::Atom(a) => a.collect_vars(&mut non_aggregate_vars),
        Head::Choice(c) => {
            c.lower.collect_vars(&mut non_aggregate_vars);
            c.upper.collect_vars(&mut non_aggregate_vars);
            for a in &c.atoms {
                a.collect_vars(&mut non_aggregate_vars);
            }
        }
    }
    for elem in &rule.body {
        match elem {
            BodyElem::Literal(l) => l.atom.collect_vars(&mut non_aggregate_vars),
            BodyElem::Comparison(c) => {
                c.left.collect_vars(&mut non_aggregate_vars);
                c.right.collect_vars(&mut non_aggregate_vars);
            }
            BodyElem::Aggregate(agg) => {
                // The guard sits outside the braces.
                agg.guard.collect_vars(&mut non_aggregate_vars);
            }
        }
    }

    let mut classes: BTreeMap<String, VarClass> = BTreeMap::new();
    for v in &non_aggregate_vars {
        let class = if globals.contains(v) {
            VarClass::Global
        } else {
            VarClass::Unsafe
        };
        classes.insert(v.clone(), class);
    }
    for agg in rule.aggregates() {
        let bound: BTreeSet<String> = agg.condition.vars();
        let mut inside: BTreeSet<String> = agg.weight.vars();
        for t in &agg.tuple {
            inside.extend(t.vars());
        }
        inside.extend(bound.iter().cloned());
        for v in inside {
            if globals.contains(&v) {
                classes.insert(v.clone(), VarClass::Global);
            } else if bound.contains(&v) {
                // Local unless some other occurrence already made it unsafe.
                classes.entry(v.clone()).or_insert(VarClass::Local);
            } else {
                classes.insert(v.clone(), VarClass::Unsafe);
            }
        }
    }

    let unsafe_vars: Vec<String> = classes
        .iter()
        .filter(|(_, c)| **c == VarClass::Unsafe)
        .map(|(v, _)| v.clone())
        .collect();
    if unsafe_vars.is_empty() {
        Ok(SafetyInfo { classes })
    } else {
        Err(SafetyViolation {
            source_index: rule.source_index,
            unsafe_vars,
        })
    }
}

/// The dependency graph over predicate names: an edge `p -> q` whenever some
/// rule has `p` in its head and `q` in its positive body or in an aggregate;
/// edges through aggregates are flagged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DependencyGraph {
    pub vertices: BTreeSet<String>,
    /// (from, to, through_aggregate)
    pub edges: BTreeSet<(String, String, bool)>,
}

impl DependencyGraph {
    fn successors<'a>(&'a self, from: &'a str) -> impl Iterator<Item = (&'a str, bool)> + 'a {
        self.edges
            .iter()
            .filter(move |(f, _, _)| f == from)
            .map(|(_, t, agg)| (t.as_str(), *agg))
    }
}

pub fn dependency_graph(program: &Program) -> DependencyGraph {
    let mut graph = DependencyGraph::default();
    let vertex = |a: &Atom, graph: &mut DependencyGraph| {
        graph.vertices.insert(a.predicate.clone());
    };
    for rule in &program.rules {
        for a in rule.head.atoms() {
            vertex(a, &mut graph);
        }
        for elem in &rule.body {
            match elem {
                BodyElem::Literal(l) => vertex(&l.atom, &mut graph),
                BodyElem::Aggregate(agg) => vertex(&agg.condition, &mut graph),
                BodyElem::Comparison(_) => {}
            }
        }
        for head_atom in rule.head.atoms() {
            for body_atom in rule.pos_literals() {
                graph.edges.insert((
                    head_atom.predicate.clone(),
                    body_atom.predicate.clone(),
                    false,
                ));
            }
            for agg in rule.aggregates() {
                graph.edges.insert((
                    head_atom.predicate.clone(),
                    agg.condition.predicate.clone(),
                    true,
                ));
            }
        }
    }
    graph
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct StratificationError {
    /// A dependency cycle passing through an aggregate, closed (first vertex
    /// repeated at the end).
    pub cycle: Vec<String>,
}

impl fmt::Display for StratificationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "aggregates are not stratified: dependency cycle {} passes through an aggregate",
            self.cycle.join(" -> ")
        )
    }
}

/// Checks aggregate stratification: no dependency cycle may pass through an
/// aggregate edge. Plain positive recursion is allowed.
pub fn check_stratification(program: &Program) -> Result<(), StratificationError> {
    let graph = dependency_graph(program);
    let sccs = strongly_connected_components(
        &graph.vertices,
        |v| graph.successors(v).map(|(t, _)| t.to_string()).collect(),
    );
    let component_of: BTreeMap<&str, usize> = sccs
        .iter()
        .enumerate()
        .flat_map(|(i, scc)| scc.iter().map(move |v| (v.as_str(), i)))
        .collect();
    for (from, to, through_aggregate) in &graph.edges {
        if *through_aggregate && component_of[from.as_str()] == component_of[to.as_str()] {
            // Close the cycle with a path to -> ... -> from inside the SCC.
            let path = shortest_path(&graph, to, from);
            let mut cycle = vec![from.clone()];
            cycle.extend(path);
            cycle.push(from.clone());
            cycle.dedup();
            if cycle.len() == 1 {
                cycle.push(from.clone());
            }
            return Err(StratificationError { cycle });
        }
    }
    Ok(())
}

fn shortest_path(graph: &DependencyGraph, from: &str, to: &str) -> Vec<String> {
    let mut prev: BTreeMap<String, String> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from.to_string());
    let mut seen: BTreeSet<String> = BTreeSet::new();
    seen.insert(from.to_string());
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![v.clone()];
            let mut cur = v;
            while let Some(p) = prev.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return path;
        }
        for (succ, _) in graph.successors(&v) {
            if seen.insert(succ.to_string()) {
                prev.insert(succ.to_string(), v.clone());
                queue.push_back(succ.to_string());
            }
        }
    }
    vec![from.to_string()]
}

/// Iterative Tarjan SCC over an arbitrary vertex set. Components come out in
/// reverse topological order (callees before callers).
pub fn strongly_connected_components<F>(
    vertices: &BTreeSet<String>,
    successors: F,
) -> Vec<Vec<String>>
where
    F: Fn(&str) -> Vec<String>,
{
    #[derive(Default)]
    struct State {
        index: BTreeMap<String, usize>,
        lowlink: BTreeMap<String, usize>,
        on_stack: BTreeSet<String>,
        stack: Vec<String>,
        next_index: usize,
        components: Vec<Vec<String>>,
    }
    let mut st = State::default();

    for root in vertices {
        if st.index.contains_key(root) {
            continue;
        }
        // (vertex, successor list, next successor position)
        let mut call_stack: Vec<(String, Vec<String>, usize)> = Vec::new();
        let succs = successors(root);
        st.index.insert(root.clone(), st.next_index);
        st.lowlink.insert(root.clone(), st.next_index);
        st.next_index += 1;
        st.stack.push(root.clone());
        st.on_stack.insert(root.clone());
        call_stack.push((root.clone(), succs, 0));

        while let Some((v, succs, mut i)) = call_stack.pop() {
            let mut descended = false;
            while i < succs.len() {
                let w = succs[i].clone();
                i += 1;
                if !st.index.contains_key(&w) {
                    st.index.insert(w.clone(), st.next_index);
                    st.lowlink.insert(w.clone(), st.next_index);
                    st.next_index += 1;
                    st.stack.push(w.clone());
                    st.on_stack.insert(w.clone());
                    let w_succs = successors(&w);
                    call_stack.push((v.clone(), succs, i));
                    call_stack.push((w, w_succs, 0));
                    descended = true;
                    break;
                } else if st.on_stack.contains(&w) {
                    let wi = st.index[&w];
                    let vl = st.lowlink.get_mut(&v).unwrap();
                    *vl = (*vl).min(wi);
                }
            }
            if descended {
                continue;
            }
            if st.lowlink[&v] == st.index[&v] {
                let mut component = Vec::new();
                while let Some(w) = st.stack.pop() {
                    st.on_stack.remove(&w);
                    let done = w == v;
                    component.push(w);
                    if done {
                        break;
                    }
                }
                component.sort();
                st.components.push(component);
            }
            if let Some((parent, _, _)) = call_stack.last() {
                let vl = st.lowlink[&v];
                let pl = st.lowlink.get_mut(parent.as_str()).unwrap();
                *pl = (*pl).min(vl);
            }
        }
    }
    st.components
}
