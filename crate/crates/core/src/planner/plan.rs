use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{euclidean_unsupported, goal_ideal, normal_cube_path, reverse_normal_cube_path, shortest_move_plan, Metric};
use crate::arms::{arm_pip, arm_system, arm_to_rstate, ideal_to_state, rstate_to_arm, state_to_ideal, ArmState, Flavor};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::pip::{Ideal, Pip};
use crate::reconfig::{commute, Exploration, RState, ReconfigSystem};

/// Which robot a plan belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobotInfo {
    #[serde(rename = "type")]
    pub kind: String,
    pub n: usize,
}

/// A plan: stages of simultaneous moves taking `start` to `goal`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub robot: Option<RobotInfo>,
    pub start: String,
    pub goal: String,
    pub metric: Metric,
    pub steps: Vec<Vec<String>>,
    pub length: usize,
}

impl Plan {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("plan serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn move_count(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }
}

enum StateMap {
    Arm { flavor: Flavor, n: usize },
    Explored { exploration: Box<Exploration>, ideals: Vec<Ideal>, by_ideal: HashMap<ElementSet, usize> },
}

/// Plans for one system: the system, the PIP of its state complex rooted at
/// the seed, and the correspondence between states and ideals.
pub struct Planner {
    system: ReconfigSystem,
    pip: Pip,
    robot: Option<RobotInfo>,
    map: StateMap,
}

impl Planner {
    /// Planner for an arm, using the explicit PIP and bijection.
    pub fn for_arm(flavor: Flavor, n: usize) -> Result<Self> {
        Ok(Planner {
            system: arm_system(flavor, n)?,
            pip: arm_pip(flavor, n)?,
            robot: Some(RobotInfo { kind: flavor.name().into(), n }),
            map: StateMap::Arm { flavor, n },
        })
    }

    /// Planner for any system whose state complex is CAT(0), using the PIP
    /// reconstructed from the complex rooted at the seed.
    pub fn for_system(system: ReconfigSystem, state_cap: usize, ideal_cap: usize) -> Result<Self> {
        let exploration = system.explore(state_cap)?;
        let complex = system.state_complex(&exploration)?;
        let rec = complex.reconstruct_pip(ideal_cap)?.map_err(|report| Error::NotCat0(report.to_string()))?;
        let by_ideal = rec.vertex_ideals.iter().enumerate().map(|(v, i)| (i.members().clone(), v)).collect();
        Ok(Planner {
            system,
            pip: rec.pip,
            robot: None,
            map: StateMap::Explored { exploration: Box::new(exploration), ideals: rec.vertex_ideals, by_ideal },
        })
    }

    pub fn system(&self) -> &ReconfigSystem {
        &self.system
    }

    /// PIP of the state complex rooted at the seed.
    pub fn pip(&self) -> &Pip {
        &self.pip
    }

    pub fn robot(&self) -> Option<&RobotInfo> {
        self.robot.as_ref()
    }

    pub fn parse_state(&self, text: &str) -> Result<RState> {
        match &self.map {
            StateMap::Arm { flavor, n } => Ok(arm_to_rstate(&ArmState::parse(*flavor, *n, text)?)),
            StateMap::Explored { .. } => self.system.parse_state(text),
        }
    }

    pub fn format_state(&self, u: &RState) -> String {
        match &self.map {
            StateMap::Arm { .. } => rstate_to_arm(u).to_string(),
            StateMap::Explored { .. } => self.system.format_state(u),
        }
    }

    pub fn ideal_of(&self, u: &RState) -> Result<Ideal> {
        self.system.check_state(u)?;
        match &self.map {
            StateMap::Arm { flavor, n } => {
                let arm = rstate_to_arm(u);
                let arm = ArmState::new(*flavor, *n, arm.verticals)?;
                state_to_ideal(*flavor, &self.pip, &arm)
            }
            StateMap::Explored { exploration, ideals, .. } => {
                let i = exploration
                    .index_of(u)
                    .ok_or_else(|| Error::InvalidState(format!("{} is not reachable", self.system.format_state(u))))?;
                Ok(ideals[i].clone())
            }
        }
    }

    pub fn state_of(&self, ideal: &Ideal) -> Result<RState> {
        match &self.map {
            StateMap::Arm { flavor, n } => Ok(arm_to_rstate(&ideal_to_state(*flavor, *n, &self.pip, ideal)?)),
            StateMap::Explored { exploration, by_ideal, .. } => {
                let v = by_ideal
                    .get(ideal.members())
                    .ok_or_else(|| Error::NotAnIdeal(self.pip.format_set(ideal.members())))?;
                Ok(exploration.states()[*v].clone())
            }
        }
    }

    /// Rerooted PIP at `from` and the image of `to` in it.
    pub fn goal(&self, from: &RState, to: &RState) -> Result<(Ideal, Pip, Ideal)> {
        let a = self.ideal_of(from)?;
        let b = self.ideal_of(to)?;
        let (rerooted, image) = goal_ideal(&self.pip, &a, &b)?;
        Ok((a, rerooted, image))
    }

    /// An optimal plan for `metric`. With `reverse`, the stage plans follow
    /// the normal cube path from the goal back to the start, reversed.
    pub fn plan(&self, from: &RState, to: &RState, metric: Metric, reverse: bool) -> Result<Plan> {
        let (a, rerooted, image) = self.goal(from, to)?;
        let stages = match metric {
            Metric::Euclidean => return Err(euclidean_unsupported()),
            Metric::Moves => shortest_move_plan(&rerooted, &image)
                .into_iter()
                .map(|e| ElementSet::from_indices(rerooted.len(), [e]))
                .collect(),
            Metric::Steps | Metric::Time if reverse => reverse_normal_cube_path(&rerooted, &image),
            Metric::Steps | Metric::Time => normal_cube_path(&rerooted, &image),
        };
        self.emit(from, to, metric, &a, &rerooted, &stages)
    }

    /// Every shortest single-move plan, one per linear extension of the goal
    /// ideal in the rerooted PIP.
    pub fn move_plans(&self, from: &RState, to: &RState, cap: usize) -> Result<Vec<Plan>> {
        let (a, rerooted, image) = self.goal(from, to)?;
        rerooted
            .enumerate_linear_extensions(&image, cap)?
            .into_iter()
            .map(|order| {
                let stages: Vec<ElementSet> = order.into_iter().map(|e| ElementSet::from_indices(rerooted.len(), [e])).collect();
                self.emit(from, to, Metric::Moves, &a, &rerooted, &stages)
            })
            .collect()
    }

    /// Turns stages of rerooted-PIP elements into named moves.
    fn emit(&self, from: &RState, to: &RState, metric: Metric, a: &Ideal, rerooted: &Pip, stages: &[ElementSet]) -> Result<Plan> {
        let back = |set: &ElementSet| -> Result<RState> { self.state_of(&self.pip.ideal(a.members().symmetric_difference(set))?) };
        let mut done = rerooted.empty_set();
        let mut current = from.clone();
        let mut steps = Vec::new();
        for stage in stages {
            let mut names = Vec::new();
            for e in stage.iter() {
                let mut with = done.clone();
                with.insert(e);
                let target = back(&with)?;
                names.push(self.move_between(&current, &target)?);
            }
            names.sort();
            done = done.union(stage);
            current = back(&done)?;
            steps.push(names);
        }
        if &current != to {
            return Err(Error::PlanRejected("plan does not end at the goal".into()));
        }
        let plan = Plan {
            robot: self.robot.clone(),
            start: self.format_state(from),
            goal: self.format_state(to),
            metric,
            length: steps.len(),
            steps,
        };
        self.replay(&plan)?;
        Ok(plan)
    }

    fn move_between(&self, u: &RState, v: &RState) -> Result<String> {
        self.system
            .generators()
            .iter()
            .find_map(|g| {
                let side = g.side_at(u)?;
                (g.apply(u).ok()? == *v).then(|| g.move_name(side).to_string())
            })
            .ok_or_else(|| {
                Error::PlanRejected(format!("no single move from {} to {}", self.format_state(u), self.format_state(v)))
            })
    }

    /// Executes a plan and returns the visited states, start first. Every
    /// stage must be a nonempty set of pairwise commuting moves admissible at
    /// the current state.
    pub fn replay(&self, plan: &Plan) -> Result<Vec<RState>> {
        if let (Some(mine), Some(theirs)) = (&self.robot, &plan.robot) {
            if mine != theirs {
                return Err(Error::PlanRejected(format!("plan is for {} n={}", theirs.kind, theirs.n)));
            }
        }
        let mut current = self.parse_state(&plan.start)?;
        let mut trace = vec![current.clone()];
        for (k, step) in plan.steps.iter().enumerate() {
            if step.is_empty() {
                return Err(Error::PlanRejected(format!("stage {} is empty", k + 1)));
            }
            let mut chosen = Vec::new();
            for name in step {
                let (g, side) = self
                    .system
                    .find_move(name)
                    .ok_or_else(|| Error::PlanRejected(format!("unknown move `{name}`")))?;
                if self.system.generators()[g].side_at(&current) != Some(side) {
                    return Err(Error::PlanRejected(format!(
                        "move `{name}` is not possible at {}",
                        self.format_state(&current)
                    )));
                }
                if chosen.contains(&g) {
                    return Err(Error::PlanRejected(format!("move `{name}` repeated in stage {}", k + 1)));
                }
                chosen.push(g);
            }
            let gens: Vec<_> = chosen.iter().map(|&g| &self.system.generators()[g]).collect();
            if !commute(&gens) {
                return Err(Error::PlanRejected(format!("moves of stage {} do not commute", k + 1)));
            }
            for g in gens {
                current = g.apply(&current)?;
            }
            trace.push(current.clone());
        }
        Ok(trace)
    }

    /// Replays the plan, then checks that it reaches the goal, that its
    /// recorded length is right, and that it is optimal for its metric.
    pub fn verify(&self, plan: &Plan) -> Result<Vec<RState>> {
        let trace = self.replay(plan)?;
        let start = self.parse_state(&plan.start)?;
        let goal = self.parse_state(&plan.goal)?;
        if trace.last() != Some(&goal) {
            return Err(Error::PlanRejected("plan does not end at the goal".into()));
        }
        if plan.length != plan.steps.len() {
            return Err(Error::PlanRejected(format!("length {} but {} stages", plan.length, plan.steps.len())));
        }
        let (_, rerooted, image) = self.goal(&start, &goal)?;
        let optimum = match plan.metric {
            Metric::Euclidean => return Err(euclidean_unsupported()),
            Metric::Moves => {
                if plan.steps.iter().any(|s| s.len() != 1) {
                    return Err(Error::PlanRejected("a moves plan makes one move per stage".into()));
                }
                image.len()
            }
            Metric::Steps | Metric::Time => rerooted.depth(&image),
        };
        if plan.length != optimum {
            return Err(Error::PlanRejected(format!("length {} is not optimal ({optimum})", plan.length)));
        }
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arms::all_states;

    fn arm(flavor: Flavor, n: usize, v: &[usize]) -> RState {
        arm_to_rstate(&ArmState::new(flavor, n, v.to_vec()).unwrap())
    }

    #[test]
    fn horizontal_to_vertical_in_three_stages() {
        let p = Planner::for_arm(Flavor::Quadrant, 2).unwrap();
        let plan = p.plan(&arm(Flavor::Quadrant, 2, &[]), &arm(Flavor::Quadrant, 2, &[1, 2]), Metric::Steps, false).unwrap();
        assert_eq!(plan.length, 3);
        assert_eq!(plan.steps, vec![vec!["enter@2"], vec!["hop_left@2"], vec!["enter@2"]]);
        let trace: Vec<String> = p.verify(&plan).unwrap().iter().map(|s| rstate_to_arm(s).ne_word()).collect();
        assert_eq!(trace, vec!["EE", "EN", "NE", "NN"]);
    }

    #[test]
    fn two_moves_in_one_stage() {
        let p = Planner::for_arm(Flavor::Quadrant, 3).unwrap();
        let (from, to) = (arm(Flavor::Quadrant, 3, &[2]), arm(Flavor::Quadrant, 3, &[1, 3]));
        let plan = p.plan(&from, &to, Metric::Steps, false).unwrap();
        assert_eq!(plan.length, 1);
        assert_eq!(plan.steps, vec![vec!["enter@3", "hop_left@2"]]);
        assert_eq!(p.plan(&from, &to, Metric::Moves, false).unwrap().length, 2);
        assert_eq!(p.move_plans(&from, &to, 100).unwrap().len(), 2);
    }

    #[test]
    fn identity_plan_is_empty() {
        let p = Planner::for_arm(Flavor::Strip, 5).unwrap();
        for s in all_states(Flavor::Strip, 5) {
            let u = arm_to_rstate(&s);
            for metric in [Metric::Moves, Metric::Steps, Metric::Time] {
                assert!(p.plan(&u, &u, metric, false).unwrap().steps.is_empty());
            }
        }
    }

    #[test]
    fn euclidean_is_refused() {
        let p = Planner::for_arm(Flavor::Strip, 3).unwrap();
        let u = arm(Flavor::Strip, 3, &[]);
        assert!(matches!(p.plan(&u, &u, Metric::Euclidean, false), Err(Error::UnsupportedMetric(_))));
    }

    #[test]
    fn tampered_plans_are_rejected() {
        let p = Planner::for_arm(Flavor::Quadrant, 3).unwrap();
        let plan = p.plan(&arm(Flavor::Quadrant, 3, &[]), &arm(Flavor::Quadrant, 3, &[1, 3]), Metric::Steps, false).unwrap();
        p.verify(&plan).unwrap();
        let mut dropped = plan.clone();
        dropped.steps.pop();
        dropped.length -= 1;
        assert!(p.verify(&dropped).is_err());
        let mut renamed = plan.clone();
        renamed.steps[0][0] = "hop_left@3".into();
        assert!(p.verify(&renamed).is_err());
        let mut padded = plan.clone();
        padded.steps.push(vec!["leave@3".into()]);
        padded.steps.push(vec!["enter@3".into()]);
        padded.length += 2;
        assert!(p.verify(&padded).is_err());
        let mut miscounted = plan.clone();
        miscounted.length += 1;
        assert!(p.verify(&miscounted).is_err());
    }

    #[test]
    fn generic_planner_matches_arm_planner() {
        let generic = Planner::for_system(arm_system(Flavor::Quadrant, 3).unwrap(), 1 << 10, 1 << 10).unwrap();
        let direct = Planner::for_arm(Flavor::Quadrant, 3).unwrap();
        assert!(generic.pip().is_isomorphic(direct.pip()));
        let states = all_states(Flavor::Quadrant, 3);
        for a in &states {
            for b in &states {
                let (u, v) = (arm_to_rstate(a), arm_to_rstate(b));
                for metric in [Metric::Moves, Metric::Steps] {
                    let g = generic.plan(&u, &v, metric, false).unwrap();
                    let d = direct.plan(&u, &v, metric, false).unwrap();
                    assert_eq!(g.length, d.length);
                    generic.verify(&g).unwrap();
                }
            }
        }
    }

    #[test]
    fn reverse_flag_gives_valid_plans() {
        let p = Planner::for_arm(Flavor::Quadrant, 4).unwrap();
        let states = all_states(Flavor::Quadrant, 4);
        for a in &states {
            for b in &states {
                let plan = p.plan(&arm_to_rstate(a), &arm_to_rstate(b), Metric::Steps, true).unwrap();
                p.verify(&plan).unwrap();
            }
        }
    }

    #[test]
    fn plan_json_round_trip() {
        let p = Planner::for_arm(Flavor::Quadrant, 3).unwrap();
        let plan = p.plan(&arm(Flavor::Quadrant, 3, &[2]), &arm(Flavor::Quadrant, 3, &[1, 3]), Metric::Steps, false).unwrap();
        let back = Plan::from_json(&plan.to_json()).unwrap();
        assert_eq!(back, plan);
        assert!(plan.to_json().contains("\"type\": \"quadrant\""));
    }
}
