//! Acceptance run: one line per criterion, exit status 1 if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use octaflip_core::algebra::{parse, serialize, AlgebraError, Backend, Rational, Semifield};
use octaflip_core::engine::{
    compare_invariants, compute_invariant, flip_label, initial_labeling, laurent_audit, propagate,
    script_sites, InvariantResult, Labeling, OctagonFixture,
};
use octaflip_core::geometry::{
    build_arrangement, Configuration, DualArrangement, FlipSite, GeometryError, ProjPoint, SignVector,
};
use octaflip_core::motion::{
    detect_events, order_events, tracked_arrangement, Point2, PointPath, Trajectory,
};
use octaflip_core::random::{random_configuration, random_generic_motion, random_point, rng, sub_seed};
use octaflip_core::scene::load_scene;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

const BACKENDS: [Backend; 2] = [Backend::Classical, Backend::Tropical];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pt(x: i64, y: i64) -> Point2 {
    [q(x, 1), q(y, 1)]
}

// 1 and 2 -------------------------------------------------------------------

const SYMBOLS: [&str; 11] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];

/// The printed expansions of the second and fourth flips.
const M_TERMS: [&str; 5] = ["cfi", "dki", "eaj", "ebk", "ech"];
const M_DEN: &str = "ij";
const O_TERMS: [&str; 5] = ["bek", "dik", "cgj", "cfi", "ceh"];
const O_DEN: &str = "jk";

fn exponents(word: &str) -> Vec<i32> {
    let mut v = vec![0; SYMBOLS.len()];
    for ch in word.chars() {
        v[SYMBOLS.iter().position(|s| s.starts_with(ch)).unwrap()] += 1;
    }
    v
}

/// The expansion written in the text grammar of `backend`, built directly
/// from the symbol words.
fn expansion_text(terms: &[&str], den: &str, backend: Backend) -> String {
    match backend {
        Backend::Classical => {
            let star = |w: &str| w.chars().map(String::from).collect::<Vec<_>>().join("*");
            let num: Vec<String> = terms.iter().map(|t| star(t)).collect();
            format!("({})/({})", num.join(" + "), star(den))
        }
        Backend::Tropical => {
            let vec = |w: &str| {
                let v: Vec<String> = exponents(w).iter().map(|e| e.to_string()).collect();
                format!("[{}]", v.join(","))
            };
            let num: Vec<String> = terms.iter().map(|t| vec(t)).collect();
            format!("trop{{{}}}/trop{{{}}}", num.join(","), vec(den))
        }
    }
}

fn octagon(backend: Backend) -> Outcome {
    let names: Vec<String> = SYMBOLS.iter().map(|s| s.to_string()).collect();
    let report = OctagonFixture::default().verify(backend).map_err(|e| e.to_string())?;
    let flips = OctagonFixture::default().flips(backend).map_err(|e| e.to_string())?;
    for (label, idx, terms, den) in [("m", 1, &M_TERMS, M_DEN), ("o", 3, &O_TERMS, O_DEN)] {
        let printed = parse(&expansion_text(terms, den, backend), backend, &names).map_err(|e| e.to_string())?;
        let ok = flips[idx].sf_equals(&printed).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{label} = {} differs from the printed expansion", serialize(&flips[idx], &names)))?;
    }
    for (label, idx, sym) in [("q", 5, 8), ("r", 6, 9), ("s", 7, 10)] {
        let want = octaflip_core::algebra::SemifieldElement::generator(backend, SYMBOLS.len(), sym);
        ensure(flips[idx] == want, || format!("{label} = {}", serialize(&flips[idx], &names)))?;
    }
    let corrupt = OctagonFixture { corrupt_fifth_flip: true };
    ensure(corrupt.verify(backend).is_err(), || "corrupted fixture passed".into())?;
    Ok(format!(
        "{} identities; m, o match the printed expansions; q=i r=j s=k exactly; corrupted fifth flip rejected",
        report.identities.len()
    ))
}

// 3 -------------------------------------------------------------------------

fn random_state<R: Rng>(g: &mut R, n: usize, backend: Backend) -> (DualArrangement, Labeling) {
    let pts = random_configuration(g, n, 30);
    let mut a = build_arrangement(&Configuration::new(
        pts.iter().map(|p| ProjPoint::affine(p[0].clone(), p[1].clone())).collect(),
    ))
    .unwrap();
    let mut l = initial_labeling(&a, backend);
    for _ in 0..g.gen_range(0..4) {
        let s = a.flip_sites().choose(g).unwrap().clone();
        l = flip_label(&l, &s).unwrap();
        a = a.apply_flip(&s).unwrap();
    }
    (a, l)
}

fn role_set(s: &FlipSite) -> BTreeSet<SignVector> {
    s.role_faces().into_iter().collect()
}

fn commutes(l: &Labeling, a: &DualArrangement, s: &FlipSite, t: &FlipSite) -> Result<bool, String> {
    let (st, a1) = propagate(l, &[s.clone(), t.clone()], a).map_err(|e| e.to_string())?;
    let (ts, a2) = propagate(l, &[t.clone(), s.clone()], a).map_err(|e| e.to_string())?;
    Ok(a1 == a2 && st.sf_equals(&ts).map_err(|e| e.to_string())?)
}

/// Order swaps for pairs chosen by `pick`, until `want` per backend.
fn swap_suite(seed: u64, n: (usize, usize), want: usize, pick: fn(&FlipSite, &FlipSite) -> bool) -> Result<usize, String> {
    let mut total = 0;
    for backend in BACKENDS {
        let mut g = rng(seed ^ backend as u64);
        let mut done = 0;
        while done < want {
            let n = g.gen_range(n.0..=n.1);
            let (a, l) = random_state(&mut g, n, backend);
            let sites = a.flip_sites();
            let pairs: Vec<(&FlipSite, &FlipSite)> = sites
                .iter()
                .enumerate()
                .flat_map(|(i, s)| sites[i + 1..].iter().map(move |t| (s, t)))
                .filter(|(s, t)| pick(s, t))
                .collect();
            // A few pairs per state keeps the sample spread over many states.
            for (s, t) in pairs.choose_multiple(&mut g, 3) {
                ensure(commutes(&l, &a, s, t)?, || format!("{backend}: {s:?} and {t:?} do not commute"))?;
                done += 1;
            }
        }
        total += done;
    }
    Ok(total)
}

fn involution_and_commutation() -> Outcome {
    let per_backend = 1000;
    for backend in BACKENDS {
        let mut g = rng(31 ^ backend as u64);
        for _ in 0..per_backend {
            let n = g.gen_range(3..=6);
            let (a, l) = random_state(&mut g, n, backend);
            let s = a.flip_sites().choose(&mut g).unwrap().clone();
            let (back, b) = propagate(&l, &[s.clone(), s.reverse()], &a).map_err(|e| e.to_string())?;
            ensure(b == a && back.sf_equals(&l).map_err(|e| e.to_string())?, || {
                format!("{backend}: flip and reverse at {s:?} is not the identity")
            })?;
        }
    }
    // Pairs whose triangles are not role faces of each other: both flips
    // only read the faces they share.
    let independent = swap_suite(32, (4, 6), 200, |s, t| {
        !role_set(s).contains(&t.face) && !role_set(t).contains(&s.face)
    })?;
    // Fully disjoint role faces; these do not occur below seven lines.
    let disjoint = swap_suite(33, (7, 7), 200, |s, t| role_set(s).is_disjoint(&role_set(t)))?;
    Ok(format!(
        "{} involutions (n<=6), {independent} independent swaps (n<=6), {disjoint} fully disjoint swaps (n=7), both backends",
        per_backend * 2
    ))
}

// 4 -------------------------------------------------------------------------

fn random_rational<R: Rng>(g: &mut R) -> Rational {
    q(g.gen_range(-60..=60), g.gen_range(1..=7))
}

fn geometry_counts() -> Outcome {
    let mut g = rng(41);
    let mut rejected = 0;
    for n in 3..=7usize {
        let mut built = 0;
        while built < 50 {
            let c = Configuration::new(
                (0..n).map(|_| ProjPoint::affine(random_rational(&mut g), random_rational(&mut g))).collect(),
            );
            let a = match build_arrangement(&c) {
                Ok(a) => a,
                Err(GeometryError::NotGeneric { .. }) => {
                    rejected += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            let (v, e, f) = (a.vertices().len(), a.edges().len(), a.faces().len());
            ensure(
                v == n * (n - 1) / 2
                    && e == n * (n - 1)
                    && f == n * (n - 1) / 2 + 1
                    && v as i64 - e as i64 + f as i64 == 1
                    && a.vertex_degrees().values().all(|&d| d == 4),
                || format!("n={n}: V={v} E={e} F={f}"),
            )?;
            built += 1;
        }
    }
    Ok(format!("250 configurations (50 each for n=3..7), {rejected} non-generic draws redrawn"))
}

// 5 -------------------------------------------------------------------------

fn audit() -> Outcome {
    let mut parts = Vec::new();
    for n in [4, 5] {
        let r = laurent_audit(n, 200, 12, 51).map_err(|e| e.to_string())?;
        ensure(r.all_laurent(), || format!("n={n}: {} of {} labels not Laurent", r.failures.len(), r.labels_checked))?;
        parts.push(format!("n={n}: {} flips, {}/{} labels Laurent", r.flips, r.laurent_labels, r.labels_checked));
    }
    Ok(parts.join("; "))
}

// 6 -------------------------------------------------------------------------

const GRID: i64 = 10_000;

/// A path with integer positions and breakpoints at multiples of 1/100,
/// kept as (hundredths, x, y).
type IntPath = Vec<(i64, i64, i64)>;

fn random_int_path<R: Rng>(g: &mut R, start: (i64, i64)) -> IntPath {
    let mut cuts: Vec<i64> = (0..g.gen_range(0..=3)).map(|_| g.gen_range(1..100)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut p = vec![(0, start.0, start.1)];
    for c in cuts.into_iter().chain([100]) {
        p.push((c, g.gen_range(-15..=15), g.gen_range(-15..=15)));
    }
    p
}

fn to_path(p: &IntPath) -> PointPath {
    PointPath::new(p.iter().map(|&(h, _, _)| q(h, 100)).collect(), p.iter().map(|&(_, x, y)| pt(x, y)).collect())
        .unwrap()
}

/// Homogeneous position at grid time `j / GRID`, last entry positive.
fn grid_position(p: &IntPath, j: i64) -> [i128; 3] {
    let k = p.iter().rposition(|&(h, _, _)| 100 * h <= j).unwrap().min(p.len() - 2);
    let ((h0, x0, y0), (h1, x1, y1)) = (p[k], p[k + 1]);
    let m = 100 * (h1 - h0) as i128;
    let step = (j - 100 * h0) as i128;
    [m * x0 as i128 + (x1 - x0) as i128 * step, m * y0 as i128 + (y1 - y0) as i128 * step, m]
}

fn det(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Sign changes on the grid: (triple, last index before, first index after).
fn grid_scan(paths: &[IntPath]) -> Vec<([usize; 3], i64, i64)> {
    let n = paths.len();
    let grid: Vec<Vec<[i128; 3]>> = (0..=GRID).map(|j| paths.iter().map(|p| grid_position(p, j)).collect()).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut last: Option<(i64, i128)> = None;
                for (j, pts) in grid.iter().enumerate() {
                    let s = det(pts[a], pts[b], pts[c]).signum();
                    if s == 0 {
                        continue;
                    }
                    if let Some((i, prev)) = last {
                        if prev != s {
                            out.push(([a, b, c], i, j as i64));
                        }
                    }
                    last = Some((j as i64, s));
                }
            }
        }
    }
    out.sort_by_key(|&(t, i, _)| (i, t));
    out
}

fn oracle_case(seed: u64) -> Result<(usize, usize), String> {
    let mut g = rng(seed);
    let mut redrawn = 0;
    loop {
        let n = g.gen_range(3..=5);
        let paths: Vec<IntPath> = (0..n)
            .map(|_| {
                let start = (g.gen_range(-15..=15), g.gen_range(-15..=15));
                random_int_path(&mut g, start)
            })
            .collect();
        let traj = Trajectory::new(paths.iter().map(to_path).collect());
        let Ok(events) = detect_events(&traj).and_then(order_events) else {
            redrawn += 1;
            continue;
        };
        let scan = grid_scan(&paths);
        ensure(events.len() == scan.len(), || format!("seed {seed}: {} events, grid sees {}", events.len(), scan.len()))?;
        // Match per triple in time order, then check the global order.
        let mut next: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        let mut last_bracket = i64::MIN;
        for e in &events {
            let k = next.entry(e.triple).or_insert(0);
            let Some(&(_, lo, hi)) = scan.iter().filter(|s| s.0 == e.triple).nth(*k) else {
                return Err(format!("seed {seed}: grid misses an event of {:?}", e.triple));
            };
            *k += 1;
            ensure(e.time.cmp_rational(&q(lo, GRID)).is_gt() && e.time.cmp_rational(&q(hi, GRID)).is_lt(), || {
                format!("seed {seed}: event of {:?} at {} outside grid bracket", e.triple, e.time.interval_string())
            })?;
            ensure(lo >= last_bracket, || format!("seed {seed}: events out of order"))?;
            last_bracket = lo;
        }
        return Ok((events.len(), redrawn));
    }
}

fn event_oracle() -> Outcome {
    let results: Vec<Result<(usize, usize), String>> = (0..100).into_par_iter().map(|i| oracle_case(sub_seed(61, i))).collect();
    let mut events = 0;
    let mut redrawn = 0;
    for r in results {
        let (e, d) = r?;
        events += e;
        redrawn += d;
    }
    Ok(format!("100 trajectories (n=3..5), {events} events matched the 10^4-point grid scan; {redrawn} non-generic draws redrawn"))
}

// 7 -------------------------------------------------------------------------

fn scene_result(name: &str, backend: Backend) -> Result<InvariantResult, String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let s = load_scene(&text, Some(backend)).map_err(|e| e.to_string())?;
    Ok(compute_invariant(&s.trajectory, backend, s.labels).map_err(|e| e.to_string())?.result)
}

fn isotopy() -> Outcome {
    let mut lengths = Vec::new();
    for backend in BACKENDS {
        let (a, b) = (scene_result("isotopy-a", backend)?, scene_result("isotopy-b", backend)?);
        let (t, l) = (scene_result("trivial-n4", backend)?, scene_result("nontrivial-loop-n4", backend)?);
        ensure(compare_invariants(&a, &b).map_err(|e| e.to_string())?, || format!("{backend}: isotopic pair differs"))?;
        ensure(!compare_invariants(&t, &l).map_err(|e| e.to_string())?, || format!("{backend}: loop looks trivial"))?;
        lengths = vec![a.script_length, b.script_length, l.script_length];
    }
    Ok(format!(
        "isotopic pair equal ({} vs {} flips), trivial vs loop ({} flips) differ, both backends",
        lengths[0], lengths[1], lengths[2]
    ))
}

// 8 -------------------------------------------------------------------------

/// Plain rational propagation of point values through the flip rule.
fn numeric_propagation(
    a0: &DualArrangement,
    sites: &[FlipSite],
    backend: Backend,
    point: &[Rational],
) -> Option<BTreeMap<SignVector, Rational>> {
    let mut v: BTreeMap<SignVector, Rational> = a0.faces().iter().cloned().zip(point.iter().cloned()).collect();
    for s in sites {
        let x = &v[&s.face];
        let products: Vec<Rational> = s
            .pairs()
            .iter()
            .map(|(e, w)| match backend {
                Backend::Classical => &v[e] * &v[w],
                Backend::Tropical => &v[e] + &v[w],
            })
            .collect();
        let new = match backend {
            Backend::Classical => {
                if x == &q(0, 1) {
                    return None;
                }
                products.iter().sum::<Rational>() / x
            }
            Backend::Tropical => products.into_iter().max().unwrap() - x,
        };
        v.remove(&s.face);
        v.insert(s.replacement(), new);
    }
    Some(v)
}

enum Fuzz {
    Agree,
    Skipped,
}

fn fuzz_case(seed: u64, backend: Backend) -> Result<Fuzz, String> {
    let mut g = rng(seed);
    let n = g.gen_range(3..=5);
    let (traj, script) = random_generic_motion(&mut g, n, 3, 12, 1000).ok_or("no generic motion")?;
    let len = g.gen_range(1..=12);
    let script = script.truncated(len);
    let a0 = tracked_arrangement(&traj, &q(0, 1)).map_err(|e| e.to_string())?;
    let point = random_point(&mut g, a0.faces().len());
    let sites = script_sites(&script);
    let Some(numeric) = numeric_propagation(&a0, &sites, backend, &point) else {
        return Ok(Fuzz::Skipped);
    };
    let (symbolic, _) = propagate(&initial_labeling(&a0, backend), &sites, &a0).map_err(|e| e.to_string())?;
    ensure(symbolic.labels().keys().eq(numeric.keys()), || format!("seed {seed}: face sets differ"))?;
    for (face, label) in symbolic.labels() {
        match label.evaluate(&point) {
            Ok(v) => ensure(v == numeric[face], || format!("{backend} seed {seed}: face {face} gives {v}, numeric {}", numeric[face]))?,
            Err(AlgebraError::DivisionByZero) => return Ok(Fuzz::Skipped),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(Fuzz::Agree)
}

fn evaluation_fuzz() -> Outcome {
    let mut parts = Vec::new();
    for backend in BACKENDS {
        let results: Vec<Result<Fuzz, String>> =
            (0..500).into_par_iter().map(|i| fuzz_case(sub_seed(81, i), backend)).collect();
        let mut skipped = 0;
        for r in results {
            if let Fuzz::Skipped = r? {
                skipped += 1;
            }
        }
        ensure(skipped * 20 < 500, || format!("{backend}: {skipped} of 500 cases skipped"))?;
        parts.push(format!("{backend}: 500 cases, {skipped} skipped"));
    }
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "1", name: "octagon, classical", limit: Duration::from_secs(5), run: || octagon(Backend::Classical) },
        Criterion { id: "2", name: "octagon, tropical", limit: Duration::from_secs(5), run: || octagon(Backend::Tropical) },
        Criterion { id: "3", name: "involution and commutation", limit: Duration::from_secs(120), run: involution_and_commutation },
        Criterion { id: "4", name: "geometry counts", limit: Duration::from_secs(60), run: geometry_counts },
        Criterion { id: "5", name: "Laurent audit", limit: Duration::from_secs(300), run: audit },
        Criterion { id: "6", name: "event oracle", limit: Duration::from_secs(120), run: event_oracle },
        Criterion { id: "7", name: "isotopy invariance", limit: Duration::from_secs(60), run: isotopy },
        Criterion { id: "8", name: "evaluation fuzz", limit: Duration::from_secs(180), run: evaluation_fuzz },
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !only.is_empty() && !only.iter().any(|o| o == c.id) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{}] {}: {detail} ({:.2} s, limit {} s)",
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
