//! Scene files: the initial points, their motion and run options.
//!
//! ```json
//! {"points": [["0","0"], ["3","1"]],
//!  "trajectories": [{"times": ["0","1"], "positions": [["0","0"],["0","0"]]},
//!                   {"times": ["0","1"], "positions": [["3","1"],["3","1"]]}],
//!  "backend": "classical"}
//! ```
//!
//! Instead of `trajectories` a scene may give `"word": "s1 s2^-1"` with an
//! optional `"arc_segments"` (default 8). Without either the points stay put.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse, parse_rational, Backend};
use crate::engine::{generator_count, generator_names, Labeling};
use crate::geometry::SignVector;
use crate::motion::{braid_word_to_trajectory, BraidWord, MotionError, Point2, PointPath, Trajectory};

pub const DEFAULT_ARC_SEGMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read scene: {0}")]
    Syntax(String),
    #[error("invalid scene: {0}")]
    Invalid(String),
    #[error(transparent)]
    Motion(#[from] MotionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub times: Vec<String>,
    pub positions: Vec<[String; 2]>,
}

/// A scene as written on disk, numbers still as strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub points: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectories: Option<Vec<PathSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_segments: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<Backend>,
    /// Initial labels by face sign vector, over generators `g0, g1, ...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A resolved scene.
#[derive(Clone, Debug)]
pub struct Scene {
    pub points: Vec<Point2>,
    pub trajectory: Trajectory,
    pub backend: Backend,
    pub labels: Option<Labeling>,
    pub seed: Option<u64>,
}

fn rational(s: &str) -> Result<crate::algebra::Rational, SceneError> {
    parse_rational(s).ok_or_else(|| SceneError::Invalid(format!("`{s}` is not an exact rational")))
}

fn point(p: &[String; 2]) -> Result<Point2, SceneError> {
    Ok([rational(&p[0])?, rational(&p[1])?])
}

fn show_point(p: &Point2) -> [String; 2] {
    [format_rational(&p[0]), format_rational(&p[1])]
}

impl SceneFile {
    pub fn from_json_str(text: &str) -> Result<Self, SceneError> {
        serde_json::from_str(text).map_err(|e| SceneError::Syntax(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain JSON");
        s.push('\n');
        s
    }

    /// A scene spelling out every breakpoint of `traj`.
    pub fn explicit(traj: &Trajectory, backend: Backend) -> Self {
        SceneFile {
            points: traj.paths().iter().map(|p| show_point(p.start())).collect(),
            trajectories: Some(
                traj.paths()
                    .iter()
                    .map(|p| PathSpec {
                        times: p.times().iter().map(format_rational).collect(),
                        positions: p.positions().iter().map(show_point).collect(),
                    })
                    .collect(),
            ),
            backend: Some(backend),
            ..Default::default()
        }
    }

    /// Parses numbers and builds the motion. `backend` overrides the one in
    /// the file.
    pub fn resolve(&self, backend: Option<Backend>) -> Result<Scene, SceneError> {
        let points: Vec<Point2> = self.points.iter().map(point).collect::<Result<_, _>>()?;
        if points.len() < 3 {
            return Err(SceneError::Invalid("a scene needs at least three points".into()));
        }
        if self.arc_segments.is_some() && self.word.is_none() {
            return Err(SceneError::Invalid("`arc_segments` needs a `word`".into()));
        }
        let trajectory = match (&self.trajectories, &self.word) {
            (Some(_), Some(_)) => {
                return Err(SceneError::Invalid(
                    "give either `trajectories` or `word`, not both".into(),
                ))
            }
            (None, None) => Trajectory::constant(&points),
            (None, Some(word)) => {
                let word: BraidWord = word.parse()?;
                let segments = self.arc_segments.unwrap_or(DEFAULT_ARC_SEGMENTS);
                braid_word_to_trajectory(&word, &points, segments)?
            }
            (Some(specs), None) => {
                if specs.len() != points.len() {
                    return Err(SceneError::Invalid(format!(
                        "{} points but {} trajectories",
                        points.len(),
                        specs.len()
                    )));
                }
                let mut paths = Vec::with_capacity(specs.len());
                for (i, spec) in specs.iter().enumerate() {
                    let times = spec.times.iter().map(|s| rational(s)).collect::<Result<_, _>>()?;
                    let positions = spec.positions.iter().map(point).collect::<Result<_, _>>()?;
                    let path = PointPath::new(times, positions)?;
                    if *path.start() != points[i] {
                        return Err(SceneError::Invalid(format!(
                            "trajectory {i} does not start at point {i}"
                        )));
                    }
                    paths.push(path);
                }
                Trajectory::new(paths)
            }
        };
        let backend = backend.or(self.backend).unwrap_or(Backend::Classical);
        let labels = match &self.labels {
            None => None,
            Some(map) => {
                let n = points.len();
                let names = generator_names(n);
                let mut labels = BTreeMap::new();
                for (k, text) in map {
                    let key: SignVector = k
                        .parse()
                        .map_err(|e: String| SceneError::Invalid(format!("label key `{k}`: {e}")))?;
                    if key.len() != n {
                        return Err(SceneError::Invalid(format!("label key `{k}` needs {n} signs")));
                    }
                    let value = parse(text, backend, &names)
                        .map_err(|e| SceneError::Invalid(format!("label of {k}: {e}")))?;
                    labels.insert(key, value);
                }
                if labels.len() != generator_count(n) {
                    return Err(SceneError::Invalid(format!(
                        "expected {} labels, found {}",
                        generator_count(n),
                        labels.len()
                    )));
                }
                Some(Labeling::new(labels))
            }
        };
        Ok(Scene {
            points,
            trajectory,
            backend,
            labels,
            seed: self.seed,
        })
    }
}

/// Reads and resolves a scene from JSON text.
pub fn load_scene(text: &str, backend: Option<Backend>) -> Result<Scene, SceneError> {
    SceneFile::from_json_str(text)?.resolve(backend)
}
