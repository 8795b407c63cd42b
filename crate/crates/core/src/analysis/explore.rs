//! Breadth-first exploration of one scenario.
//!
//! A state packs net values, unacknowledged fanout slots, per-phase toggle
//! marks, undelivered input events and the phase index. Breadth-first order
//! means the first state reaching a finding has a shortest trace.

use std::collections::{BTreeMap, HashSet};

use indexmap::IndexSet;

use super::compiled::{bit, set_bit, CPort, Compiled};
use super::env::{CompiledPhase, Phase};
use super::report::{
    Deadlock, LimitKind, MccFinding, MccKind, NetValue, Orphan, OrphanKind, Trace, TraceEvent,
};
use super::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Source {
    Env,
    Gate(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Event { net: u32, value: bool, source: Source },
    Advance,
}

pub(crate) struct ScenarioPlan {
    pub label: String,
    pub phases: Vec<CompiledPhase>,
    /// Per phase, input positions whose target differs from the previous
    /// phase (spacer before the first).
    pub needs_change: Vec<Vec<bool>>,
}

impl ScenarioPlan {
    pub fn new(label: String, phases: Vec<CompiledPhase>) -> Self {
        let mut prev: Vec<bool> = phases.first().map(|p| vec![false; p.targets.len()]).unwrap_or_default();
        let mut needs_change = Vec::with_capacity(phases.len());
        for p in &phases {
            needs_change.push(p.targets.iter().zip(&prev).map(|(a, b)| a != b).collect());
            prev = p.targets.clone();
        }
        ScenarioPlan {
            label,
            phases,
            needs_change,
        }
    }
}

/// Output codeword seen when a valid phase completed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObservedOutputs {
    pub phase_index: usize,
    pub outputs: Vec<Option<bool>>,
}

pub(crate) struct ScenarioRun {
    pub label: String,
    pub states: usize,
    pub edges: usize,
    pub max_depth: usize,
    pub interleavings: u64,
    pub limit: Option<LimitKind>,
    pub deadlocks: Vec<Deadlock>,
    pub orphans: Vec<Orphan>,
    pub mcc: Vec<MccFinding>,
    pub observed: Vec<ObservedOutputs>,
    pub strong_violation: bool,
    pub weak_violation: bool,
}

struct Store {
    states: IndexSet<Box<[u64]>>,
    parent: Vec<u32>,
    step: Vec<Step>,
    depth: Vec<u32>,
    succ_start: Vec<u32>,
    succ: Vec<u32>,
}

impl Store {
    fn path(&self, mut idx: usize) -> Vec<Step> {
        let mut steps = Vec::new();
        while idx != 0 {
            steps.push(self.step[idx]);
            idx = self.parent[idx] as usize;
        }
        steps.reverse();
        steps
    }
}

/// Which history bits are kept in the state. Each one multiplies the
/// state space, so they are only tracked for the checks that read them.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Tracking {
    pub acks: bool,
    pub toggles: bool,
}

pub(crate) struct Explorer<'a> {
    c: &'a Compiled,
    plan: &'a ScenarioPlan,
    limits: Limits,
    tracking: Tracking,
}

#[derive(Default)]
struct Found {
    deadlocks: Vec<usize>,
    deadlock_keys: HashSet<(usize, Vec<u64>)>,
    orphans: BTreeMap<(usize, OrphanKind, u32), usize>,
    mcc_a: BTreeMap<(usize, u32), (usize, Vec<u32>)>,
    mcc_b: BTreeMap<(usize, u32), (usize, Step)>,
    observed: std::collections::BTreeSet<ObservedOutputs>,
    strong_violation: bool,
    weak_violation: bool,
}

impl<'a> Explorer<'a> {
    pub fn new(c: &'a Compiled, plan: &'a ScenarioPlan, limits: Limits, tracking: Tracking) -> Self {
        Explorer {
            c,
            plan,
            limits,
            tracking,
        }
    }

    fn meta(&self, s: &[u64]) -> usize {
        s[self.c.layout.meta] as usize
    }

    pub fn initial_state(&self) -> Box<[u64]> {
        let l = self.c.layout;
        let mut s = vec![0u64; l.words].into_boxed_slice();
        for (i, &v) in self.c.initial.iter().enumerate() {
            set_bit(&mut s, l.values, i, v);
        }
        self.enter_phase(&mut s, 0);
        s
    }

    /// Sets the phase index and the pending input events of phase `p`.
    fn enter_phase(&self, s: &mut [u64], p: usize) {
        let l = self.c.layout;
        s[l.meta] = p as u64;
        for w in &mut s[l.acks..l.pending] {
            *w = 0;
        }
        let Some(ph) = self.plan.phases.get(p) else {
            for w in &mut s[l.pending..l.meta] {
                *w = 0;
            }
            return;
        };
        for (pos, &net) in self.c.input_nets.iter().enumerate() {
            let pending = self.c.value(s, net) != ph.targets[pos];
            set_bit(s, l.pending, pos, pending);
        }
    }

    fn excited(&self, s: &[u64]) -> Vec<(u32, bool)> {
        (0..self.c.gates.len())
            .filter_map(|g| {
                let t = self.c.gate_target(s, g);
                (t != self.c.value(s, self.c.gates[g].output)).then_some((g as u32, t))
            })
            .collect()
    }

    fn env_enabled(&self, s: &[u64], p: usize, quiet: bool) -> Vec<usize> {
        let l = self.c.layout;
        let ph = &self.plan.phases[p];
        let pending = |pos: usize| bit(s, l.pending, pos);
        if ph.groups.is_empty() {
            return (0..self.c.input_nets.len()).filter(|&pos| pending(pos)).collect();
        }
        let Some(k) = ph.groups.iter().position(|g| g.iter().any(|&pos| pending(pos))) else {
            return Vec::new();
        };
        let group = &ph.groups[k];
        let started = group.iter().any(|&pos| self.plan.needs_change[p][pos] && !pending(pos));
        if k > 0 && !started && !quiet {
            return Vec::new();
        }
        group.iter().copied().filter(|&pos| pending(pos)).collect()
    }

    fn outputs_in_phase(&self, s: &[u64], phase: Phase) -> bool {
        self.c.outputs.iter().all(|&o| match o {
            CPort::Dual(r0, r1) => {
                let (v0, v1) = (self.c.value(s, r0), self.c.value(s, r1));
                match phase {
                    Phase::Valid => v0 != v1,
                    Phase::Rtz => !v0 && !v1,
                }
            }
            CPort::Wire(_) => true,
        })
    }

    fn phase_complete(&self, s: &[u64], p: usize, quiet: bool) -> bool {
        let phase = self.plan.phases[p].phase;
        let last = p + 1 == self.plan.phases.len();
        let cd_ok = match self.c.cd {
            Some(d) => self.c.value(s, d) == (phase == Phase::Valid),
            None => quiet,
        };
        cd_ok && (quiet || !last) && self.outputs_in_phase(s, phase)
    }

    fn apply(&self, s: &[u64], step: Step, found: &mut Found, from: usize) -> Box<[u64]> {
        let l = self.c.layout;
        let mut t: Box<[u64]> = s.into();
        let p = self.meta(s);
        match step {
            Step::Advance => {
                let ph = &self.plan.phases[p];
                for (net, slots) in self.c.net_slots.iter().enumerate() {
                    if slots.iter().any(|&sl| bit(s, l.acks, sl as usize)) {
                        let kind = if self.c.input_pos[net].is_some() {
                            OrphanKind::Wire
                        } else {
                            OrphanKind::Gate
                        };
                        found.orphans.entry((p, kind, net as u32)).or_insert(from);
                    }
                }
                if ph.phase == Phase::Valid {
                    let outputs = self.c.outputs.iter().map(|&o| self.c.port_value(s, o)).collect();
                    found.observed.insert(ObservedOutputs { phase_index: p, outputs });
                }
                self.enter_phase(&mut t, p + 1);
            }
            Step::Event { net, value, source } => {
                let n = net as usize;
                set_bit(&mut t, l.values, n, value);
                if self.tracking.toggles {
                    if bit(s, l.toggles, n) {
                        found.mcc_b.entry((p, net)).or_insert((from, step));
                    }
                    set_bit(&mut t, l.toggles, n, true);
                }
                if let (true, Source::Gate(g)) = (self.tracking.acks, source) {
                    for &(x, sl) in &self.c.gate_slots[g as usize] {
                        if self.c.iso[x as usize] {
                            for &other in &self.c.net_slots[x as usize] {
                                set_bit(&mut t, l.acks, other as usize, false);
                            }
                        } else {
                            set_bit(&mut t, l.acks, sl as usize, false);
                        }
                    }
                }
                if self.tracking.acks {
                    for &sl in &self.c.net_slots[n] {
                        set_bit(&mut t, l.acks, sl as usize, true);
                    }
                }
                if let Some(pos) = self.c.input_pos[n] {
                    set_bit(&mut t, l.pending, pos, false);
                }
            }
        }
        t
    }

    fn check_state(&self, s: &[u64], p: usize, idx: usize, found: &mut Found) {
        for j in &self.c.joins {
            let g = &self.c.gates[j.gate as usize];
            let asserted: Vec<u32> = g
                .inputs
                .iter()
                .copied()
                .filter(|&x| self.c.value(s, x) == j.active_high)
                .collect();
            if asserted.len() >= 2 {
                found.mcc_a.entry((p, j.gate)).or_insert((idx, asserted));
            }
        }

        let ph = &self.plan.phases[p];
        let l = self.c.layout;
        let arrived = self
            .c
            .input_nets
            .iter()
            .enumerate()
            .all(|(pos, &net)| self.c.value(s, net) == ph.targets[pos]);
        if arrived || self.c.outputs.is_empty() {
            return;
        }
        let attained = |o: &CPort| match *o {
            CPort::Dual(r0, r1) => {
                let (v0, v1) = (self.c.value(s, r0), self.c.value(s, r1));
                match ph.phase {
                    Phase::Valid => v0 != v1,
                    Phase::Rtz => !v0 && !v1,
                }
            }
            CPort::Wire(w) => {
                let target = match ph.phase {
                    Phase::Valid => !self.c.initial[w as usize],
                    Phase::Rtz => self.c.initial[w as usize],
                };
                bit(s, l.toggles, w as usize) && self.c.value(s, w) == target
            }
        };
        let any = self.c.outputs.iter().any(attained);
        let all = self.c.outputs.iter().all(attained);
        debug_assert!(!all || any);
        found.strong_violation |= any;
        found.weak_violation |= all;
    }

    pub fn run(&self) -> ScenarioRun {
        let mut store = Store {
            states: IndexSet::new(),
            parent: vec![0],
            step: vec![Step::Advance],
            depth: vec![0],
            succ_start: Vec::new(),
            succ: Vec::new(),
        };
        store.states.insert(self.initial_state());
        let mut found = Found::default();
        let mut limit = None;
        let done = self.plan.phases.len();
        let mut idx = 0;
        while idx < store.states.len() {
            store.succ_start.push(store.succ.len() as u32);
            let s = store.states[idx].clone();
            let p = self.meta(&s);
            if p == done {
                idx += 1;
                continue;
            }
            if store.depth[idx] as usize >= self.limits.max_depth {
                limit.get_or_insert(LimitKind::Depth);
                idx += 1;
                continue;
            }
            self.check_state(&s, p, idx, &mut found);

            let excited = self.excited(&s);
            let quiet = excited.is_empty();
            let mut steps: Vec<Step> = self
                .env_enabled(&s, p, quiet)
                .into_iter()
                .map(|pos| Step::Event {
                    net: self.c.input_nets[pos],
                    value: self.plan.phases[p].targets[pos],
                    source: Source::Env,
                })
                .collect();
            steps.extend(excited.iter().map(|&(g, v)| Step::Event {
                net: self.c.gates[g as usize].output,
                value: v,
                source: Source::Gate(g),
            }));
            let pending_empty = s[self.c.layout.pending..self.c.layout.meta].iter().all(|&w| w == 0);
            if pending_empty && self.phase_complete(&s, p, quiet) {
                steps.push(Step::Advance);
            }
            if steps.is_empty() {
                let values = s[self.c.layout.values..self.c.layout.acks].to_vec();
                if found.deadlock_keys.insert((p, values)) {
                    found.deadlocks.push(idx);
                }
            }
            for step in steps {
                let t = self.apply(&s, step, &mut found, idx);
                let (j, fresh) = store.states.insert_full(t);
                if fresh {
                    store.parent.push(idx as u32);
                    store.step.push(step);
                    store.depth.push(store.depth[idx] + 1);
                }
                store.succ.push(j as u32);
            }
            idx += 1;
            if store.states.len() >= self.limits.max_states {
                limit.get_or_insert(LimitKind::States);
                break;
            }
        }
        // States never expanded have no recorded successors.
        while store.succ_start.len() < store.states.len() {
            store.succ_start.push(store.succ.len() as u32);
        }
        store.succ_start.push(store.succ.len() as u32);
        self.finish(store, found, limit)
    }

    fn count_paths(store: &Store) -> u64 {
        let n = store.states.len();
        let mut indeg = vec![0u32; n];
        for &t in &store.succ {
            indeg[t as usize] += 1;
        }
        let mut paths = vec![0u64; n];
        paths[0] = 1;
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut total = 0u64;
        while let Some(i) = queue.pop() {
            let (a, b) = (store.succ_start[i] as usize, store.succ_start[i + 1] as usize);
            if a == b {
                total = total.saturating_add(paths[i]);
            }
            for &t in &store.succ[a..b] {
                let t = t as usize;
                paths[t] = paths[t].saturating_add(paths[i]);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
        total
    }

    fn trace(&self, store: &Store, idx: usize, extra: Option<Step>) -> Trace {
        let mut phase = 0;
        let mut events = Vec::new();
        for step in store.path(idx).into_iter().chain(extra) {
            match step {
                Step::Advance => phase += 1,
                Step::Event { net, value, source } => events.push(TraceEvent {
                    seq: events.len() + 1,
                    net: self.c.net_names[net as usize].clone(),
                    value: u8::from(value),
                    source: match source {
                        Source::Env => "env".to_string(),
                        Source::Gate(g) => self.c.gate_ids[g as usize].clone(),
                    },
                    phase: self.plan.phases[phase].phase,
                }),
            }
        }
        Trace {
            scenario: self.plan.label.clone(),
            events,
        }
    }

    fn finish(&self, store: Store, found: Found, limit: Option<LimitKind>) -> ScenarioRun {
        let c = self.c;
        let label = &self.plan.label;
        let phase_of = |p: usize| self.plan.phases[p].phase;
        let nv = |s: &[u64], net: u32| NetValue {
            net: c.net_names[net as usize].clone(),
            value: u8::from(c.value(s, net)),
        };

        let deadlocks = found
            .deadlocks
            .iter()
            .map(|&i| {
                let s = &store.states[i];
                let p = self.meta(s);
                let cd_gate = c.cd.and_then(|d| c.driver[d as usize]);
                Deadlock {
                    scenario: label.clone(),
                    phase: phase_of(p),
                    phase_index: p,
                    cd_inputs: cd_gate
                        .map(|g| c.gates[g as usize].inputs.iter().map(|&x| nv(s, x)).collect())
                        .unwrap_or_default(),
                    cd_output: c.cd.map(|d| nv(s, d)),
                    snapshot: (0..c.net_count() as u32).map(|x| nv(s, x)).collect(),
                    trace: self.trace(&store, i, None),
                }
            })
            .collect();

        let orphans = found
            .orphans
            .iter()
            .map(|(&(p, kind, net), &i)| Orphan {
                kind,
                net: c.net_names[net as usize].clone(),
                scenario: label.clone(),
                phase: phase_of(p),
                phase_index: p,
                trace: self.trace(&store, i, None),
            })
            .collect();

        let mut mcc: Vec<MccFinding> = found
            .mcc_a
            .iter()
            .map(|(&(p, g), (i, asserted))| MccFinding {
                kind: MccKind::NonDisjoint,
                gate: Some(c.gate_ids[g as usize].clone()),
                net: c.net_names[c.gates[g as usize].output as usize].clone(),
                asserted_inputs: asserted.iter().map(|&x| c.net_names[x as usize].clone()).collect(),
                scenario: label.clone(),
                phase: phase_of(p),
                phase_index: p,
                trace: self.trace(&store, *i, None),
            })
            .collect();
        mcc.extend(found.mcc_b.iter().map(|(&(p, net), &(i, step))| MccFinding {
            kind: MccKind::NonMonotone,
            gate: c.driver[net as usize].map(|g| c.gate_ids[g as usize].clone()),
            net: c.net_names[net as usize].clone(),
            asserted_inputs: Vec::new(),
            scenario: label.clone(),
            phase: phase_of(p),
            phase_index: p,
            trace: self.trace(&store, i, Some(step)),
        }));
        mcc.sort_by(|a, b| (a.phase_index, a.kind, &a.net).cmp(&(b.phase_index, b.kind, &b.net)));

        ScenarioRun {
            label: label.clone(),
            states: store.states.len(),
            edges: store.succ.len(),
            max_depth: store.depth.iter().copied().max().unwrap_or(0) as usize,
            interleavings: Self::count_paths(&store),
            limit,
            deadlocks,
            orphans,
            mcc,
            observed: found.observed.into_iter().collect(),
            strong_violation: found.strong_violation,
            weak_violation: found.weak_violation,
        }
    }
}
