//! The canned scenes under `scenes/` and the golden results next to them.
//!
//! `OCTAFLIP_BLESS=1 cargo test -p octaflip-core --test scenes -- --ignored`
//! rewrites them.

use std::path::PathBuf;

use octaflip_core::algebra::{Backend, Rational};
use octaflip_core::engine::{compute_invariant, first_difference, InvariantResult};
use octaflip_core::motion::{braid_word_to_trajectory, Point2, PointPath, Trajectory};
use octaflip_core::scene::{load_scene, SceneFile};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes")
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn pt(x: i64, y: i64) -> Point2 {
    [int(x), int(y)]
}

fn base() -> Vec<Point2> {
    vec![pt(0, 0), pt(4, 1), pt(9, -1), pt(15, 2)]
}

fn show(p: &Point2) -> [String; 2] {
    [p[0].to_string(), p[1].to_string()]
}

fn word_scene(word: &str) -> SceneFile {
    SceneFile {
        points: base().iter().map(show).collect(),
        word: Some(word.into()),
        ..Default::default()
    }
}

/// `s1 s2 s1` run at a different speed, after a detour in which the last
/// point dips across the line through the first and third and comes back.
fn isotopic_variant() -> SceneFile {
    let a = braid_word_to_trajectory(&"s1 s2 s1".parse().unwrap(), &base(), 8).unwrap();
    let knots = [
        (int(0), int(0)),
        (Rational::new(1.into(), 3.into()), Rational::new(1.into(), 2.into())),
        (int(1), int(1)),
    ];
    let a = a.reparameterized(&knots).unwrap();
    let mut detour: Vec<PointPath> = base()[..3].iter().cloned().map(PointPath::constant).collect();
    detour.push(
        PointPath::new(
            vec![int(0), Rational::new(1.into(), 2.into()), int(1)],
            vec![pt(15, 2), pt(15, -3), pt(15, 2)],
        )
        .unwrap(),
    );
    let traj = Trajectory::new(detour).concat(&a).unwrap();
    SceneFile::explicit(&traj, Backend::Classical)
}

fn scenes() -> Vec<(&'static str, SceneFile)> {
    vec![
        (
            "trivial-n4",
            SceneFile {
                points: base().iter().map(show).collect(),
                ..Default::default()
            },
        ),
        ("nontrivial-loop-n4", word_scene("s1 s1")),
        ("isotopy-a", word_scene("s1 s2 s1")),
        ("isotopy-b", isotopic_variant()),
    ]
}

fn result_of(scene: &SceneFile, backend: Backend) -> InvariantResult {
    let text = scene.to_json_string();
    let s = load_scene(&text, Some(backend)).unwrap();
    compute_invariant(&s.trajectory, backend, s.labels).unwrap().result
}

fn goldens() -> Vec<(String, String)> {
    let loop_scene = word_scene("s1 s1");
    [Backend::Classical, Backend::Tropical]
        .into_iter()
        .map(|b| {
            (
                format!("nontrivial-loop-n4.{b}.result.json"),
                result_of(&loop_scene, b).to_json_string(),
            )
        })
        .collect()
}

fn all_files() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = scenes()
        .into_iter()
        .map(|(name, s)| (format!("{name}.json"), s.to_json_string()))
        .collect();
    files.extend(goldens());
    files
}

#[test]
#[ignore]
fn bless() {
    if std::env::var("OCTAFLIP_BLESS").as_deref() != Ok("1") {
        return;
    }
    std::fs::create_dir_all(dir()).unwrap();
    for (name, text) in all_files() {
        std::fs::write(dir().join(name), text).unwrap();
    }
}

#[test]
fn checked_in_files_are_current() {
    for (name, text) in all_files() {
        let on_disk = std::fs::read_to_string(dir().join(&name))
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text, "{name} is stale");
    }
}

fn load(name: &str, backend: Backend) -> InvariantResult {
    let text = std::fs::read_to_string(dir().join(format!("{name}.json"))).unwrap();
    let s = load_scene(&text, Some(backend)).unwrap();
    compute_invariant(&s.trajectory, backend, s.labels).unwrap().result
}

#[test]
fn isotopic_motions_agree() {
    for b in [Backend::Classical, Backend::Tropical] {
        let (a, v) = (load("isotopy-a", b), load("isotopy-b", b));
        assert!(v.script_length > a.script_length);
        assert_eq!(first_difference(&a, &v).unwrap(), None, "{b}");
    }
}

#[test]
fn the_loop_is_detected() {
    for b in [Backend::Classical, Backend::Tropical] {
        let (t, l) = (load("trivial-n4", b), load("nontrivial-loop-n4", b));
        assert_eq!(t.script_length, 0);
        assert_eq!(l.permutation, t.permutation);
        assert!(first_difference(&t, &l).unwrap().is_some(), "{b}");
    }
}

#[test]
fn goldens_reproduce() {
    for b in [Backend::Classical, Backend::Tropical] {
        let name = format!("nontrivial-loop-n4.{b}.result.json");
        let text = std::fs::read_to_string(dir().join(&name)).unwrap();
        let golden = InvariantResult::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        let fresh = load("nontrivial-loop-n4", b);
        assert_eq!(fresh.to_json_string(), text, "{name}");
        assert_eq!(golden, fresh);
    }
}
