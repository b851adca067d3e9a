//! Interactive reduction sessions: a coloring, the moves applied to it, and
//! the moves undone since the last new move.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use semitotal::coloring::ColoringJson;
use semitotal::search::{Goal, Move, ReductionStep, ReductionTrace, TraceJson};
use semitotal::Coloring;

use crate::error::{AppError, AppResult};
use crate::ops::{self, build_subject, ColoringSpec, ListingOut, MoveOut, ReduceOut, ReduceParams, Subject};

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub subject: Subject,
    trace: ReductionTrace,
    redo: Vec<Move>,
    version: u64,
    pub created: u64,
    pub updated: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionOut {
    pub id: String,
    pub graph: Option<String>,
    pub label: String,
    pub coloring: ColoringJson,
    pub listing: ListingOut,
    pub steps: usize,
    pub can_undo: bool,
    pub can_redo: bool,
    pub created: u64,
    pub updated: u64,
}

/// What a session file holds.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct Stored {
    id: String,
    initial: ColoringJson,
    trace: TraceJson,
    created: u64,
}

impl Session {
    pub fn new(id: String, subject: Subject) -> Self {
        let t = now();
        Session {
            id,
            trace: ReductionTrace::empty(subject.coloring.clone(), Goal::Tc),
            subject,
            redo: Vec::new(),
            version: 0,
            created: t,
            updated: t,
        }
    }

    pub fn current(&self) -> &Coloring {
        &self.trace.final_coloring
    }

    /// Bumped on every change.
    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn trace(&self) -> &ReductionTrace {
        &self.trace
    }

    pub fn summary(&self) -> SessionOut {
        SessionOut {
            id: self.id.clone(),
            graph: self.subject.key.clone(),
            label: self.subject.label.clone(),
            coloring: self.subject.coloring_json(self.current()),
            listing: ops::listing_out(self.current(), &self.subject.label),
            steps: self.trace.steps.len(),
            can_undo: !self.trace.steps.is_empty(),
            can_redo: !self.redo.is_empty(),
            created: self.created,
            updated: self.updated,
        }
    }

    fn record(&mut self, step: ReductionStep, next: Coloring) -> MoveOut {
        let out = ops::move_out(&self.subject, &step, &next);
        self.trace.steps.push(step);
        self.set_final(next);
        out
    }

    fn set_final(&mut self, mu: Coloring) {
        self.trace.goal_reached = self.trace.goal.is_met(mu.beta(), mu.gamma());
        self.trace.final_coloring = mu;
        self.version += 1;
        self.updated = now();
    }

    pub fn swap(&mut self, path: &ops::PathInput) -> AppResult<MoveOut> {
        let (step, next) = ops::apply_swap(self.current(), path)?;
        self.redo.clear();
        Ok(self.record(step, next))
    }

    pub fn flip(&mut self, edge: ops::EdgeInput) -> AppResult<MoveOut> {
        let (step, next) = ops::apply_flip(self.current(), edge)?;
        self.redo.clear();
        Ok(self.record(step, next))
    }

    /// Drops the last move; the coloring is rebuilt by replaying the rest.
    pub fn undo(&mut self) -> AppResult<SessionOut> {
        let step = self
            .trace
            .steps
            .pop()
            .ok_or_else(|| AppError::Conflict("nothing to undo".into()))?;
        self.redo.push(step.mv);
        let mu = self.trace.replay()?;
        self.set_final(mu);
        Ok(self.summary())
    }

    pub fn redo(&mut self) -> AppResult<SessionOut> {
        let mv = self
            .redo
            .pop()
            .ok_or_else(|| AppError::Conflict("nothing to redo".into()))?;
        let (step, next) = ReductionStep::apply(self.current(), mv)?;
        self.record(step, next);
        Ok(self.summary())
    }

    /// Runs the reducer from the current coloring and appends its moves.
    pub fn auto(&mut self, params: &ReduceParams) -> AppResult<ReduceOut> {
        let run = ops::run_reduce(self.current(), params)?;
        let out = ops::reduce_out(&self.subject, &run);
        self.redo.clear();
        self.trace.goal = params.goal;
        self.trace.nodes_expanded += run.nodes_expanded;
        self.trace.budget_exhausted = run.budget_exhausted;
        self.trace.steps.extend(run.steps);
        self.set_final(run.final_coloring);
        Ok(out)
    }

    fn path_in(dir: &Path, id: &str) -> PathBuf {
        dir.join(format!("{id}.json"))
    }

    pub fn save(&self, dir: &Path) -> AppResult<()> {
        let stored = Stored {
            id: self.id.clone(),
            initial: self.subject.coloring_json(&self.trace.initial),
            trace: self.trace.to_json(),
            created: self.created,
        };
        let path = Self::path_in(dir, &self.id);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, ops::render(&stored)).map_err(semitotal::Error::from)?;
        fs::rename(&tmp, &path).map_err(semitotal::Error::from)?;
        Ok(())
    }

    /// Loads a saved session, replaying and re-checking every move.
    pub fn load(path: &Path) -> AppResult<Session> {
        let text = fs::read_to_string(path).map_err(semitotal::Error::from)?;
        let stored: Stored = serde_json::from_str(&text).map_err(|e| AppError::Malformed(e.to_string()))?;
        let subject = build_subject(
            &ColoringSpec {
                coloring: Some(stored.initial),
                ..Default::default()
            },
            true,
        )?;
        let trace = ReductionTrace::from_json(&stored.trace, subject.coloring.clone())?;
        Ok(Session {
            id: stored.id,
            subject,
            trace,
            redo: Vec::new(),
            version: 0,
            created: stored.created,
            updated: now(),
        })
    }

    pub fn remove(dir: &Path, id: &str) {
        let _ = fs::remove_file(Self::path_in(dir, id));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::PathInput;

    fn q3() -> Session {
        let s = build_subject(
            &ColoringSpec {
                catalog: Some("q3".into()),
                ..Default::default()
            },
            true,
        )
        .unwrap();
        Session::new("t".into(), s)
    }

    #[test]
    fn undo_redo_round_trip() {
        let mut s = q3();
        let start = s.current().clone();
        let p = semitotal::enumerate_mcaps(&start, None).unwrap().remove(0);
        s.swap(&PathInput::Vertices(p.vertices.clone())).unwrap();
        let after = s.current().clone();
        assert_ne!(after, start);
        s.undo().unwrap();
        assert_eq!(s.current(), &start);
        s.redo().unwrap();
        assert_eq!(s.current(), &after);
        assert!(matches!(s.redo(), Err(AppError::Conflict(_))));
    }

    #[test]
    fn saved_sessions_reload() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = q3();
        s.auto(&ReduceParams {
            goal: Goal::EquitableTc,
            budget: None,
            max_steps: None,
            seed: None,
        })
        .unwrap();
        s.save(dir.path()).unwrap();
        let back = Session::load(&dir.path().join("t.json")).unwrap();
        assert_eq!(back.current(), s.current());
        assert_eq!(back.trace().steps.len(), s.trace().steps.len());
        assert_eq!(back.subject.key.as_deref(), Some("q3"));
    }
}
