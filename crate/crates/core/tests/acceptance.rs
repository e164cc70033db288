//! Acceptance suite. Prints one line per criterion and exits nonzero when a
//! criterion fails unexpectedly.
//!
//! Criterion 2(b) is listed in `EXPECTED_FAILURES`: the observed maximum of
//! `Q_{t,k}` is only eventually increasing, and on several corpus rays it
//! stalls between radii 4 and 6. The check is run as stated and reported as
//! FAIL; if it ever passes the run fails with XPASS.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use common::*;
use sigma_tree::coefficients::{
    act_wreath, lattice_generates, project_to_c, witness_holds, ImageValue, PhiImageModel,
    SupportVector,
};
use sigma_tree::horoball::{
    climbing_vertex, expsum_range, in_horoball, in_horoball_oracle, HoroballQuery,
};
use sigma_tree::sigma::{classify, kernel_recurrence, sweep, Certificate};
use sigma_tree::{Alphabet, EnumerationCap, Letter, Ray, Verdict, Word};

const EXPECTED_FAILURES: &[&str] = &["2(b)"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let started = Instant::now();
    let criteria: Vec<Criterion> = vec![
        (
            "1",
            "horoball closed form matches the union of balls",
            c1_closed_form,
        ),
        (
            "2(a)",
            "Q_{t,k} maximum equals the derived bound",
            c2a_bounded_max,
        ),
        (
            "2(b)",
            "Q_{t,k} maximum strictly increases over radii 4, 6, 8",
            c2b_strict_growth,
        ),
        (
            "2(b*)",
            "Q_{t,k} unbounded above, witnessed by climbing vertices",
            c2b_weak_growth,
        ),
        ("2(c)", "Q_{t,k} values are contiguous", c2c_contiguous),
        ("3", "Lehnert (2,3) sweep verdict table", c3_lehnert_sweep),
        (
            "4",
            "lamplighter boundary points are Out with lattice-checked witnesses",
            c4_lamplighter,
        ),
        (
            "5",
            "wreath 1/2 sweep and witness re-check",
            c5_wreath_sweep,
        ),
        ("6", "projection maps A_k(τ) into C_k(τ)", c6_projection),
        (
            "7",
            "kernel recurrence matches direct subword enumeration",
            c7_kernel_subwords,
        ),
        (
            "8",
            "verdicts are invariant under translation",
            c8_invariance,
        ),
        ("9", "word and ray property suites", c9_properties),
    ];
    let mut unexpected = 0;
    for (id, title, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let expected_fail = EXPECTED_FAILURES.contains(&id);
        let (tag, detail) = match (&outcome, expected_fail) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Err(d), true) => ("FAIL", format!("{d} [expected]")),
            (Err(d), false) => {
                unexpected += 1;
                ("FAIL", d.clone())
            }
            (Ok(d), true) => {
                unexpected += 1;
                ("XPASS", d.clone())
            }
        };
        println!(
            "{tag:5} {id:5} {title} ({:.2}s): {detail}",
            t.elapsed().as_secs_f64()
        );
    }
    println!("total {:.2}s", started.elapsed().as_secs_f64());
    if unexpected > 0 {
        println!("{unexpected} criteria did not behave as expected");
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_closed_form() -> Outcome {
    // 1 + 4·(3⁶ - 1)/2 words of length at most 6
    let words = ball(2, 6);
    ensure(words.len() == 1457, || format!("{} words", words.len()))?;
    let rays = corpus();
    let mut checked = 0usize;
    for r in &rays {
        for k in -4..=4 {
            let q = HoroballQuery::new(r.clone(), k);
            for w in &words {
                ensure(in_horoball(w, &q) == in_horoball_oracle(w, &q), || {
                    format!("disagree at w = {w}, ray {r}, k = {k}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{} words x 9 values of k x {} rays = {checked} triples agree",
        words.len(),
        rays.len()
    ))
}

const Q_LETTERS: [&str; 4] = ["a1", "A1", "a2", "A2"];
const Q_KS: std::ops::RangeInclusive<i64> = -2..=2;

fn letter(s: &str) -> Letter {
    s.parse().unwrap()
}

fn q_range(r: &Ray, t: Letter, k: i64, radius: usize) -> sigma_tree::horoball::ExpSumRange {
    let q = HoroballQuery::new(r.clone(), k);
    expsum_range(f2(), t, &q, radius, EnumerationCap::unlimited()).unwrap()
}

fn c2a_bounded_max() -> Outcome {
    let mut cases = 0;
    for r in corpus() {
        for t in Q_LETTERS.map(letter) {
            if !r.eventually_only(t.inverse()) {
                continue;
            }
            for k in Q_KS {
                // N and expsum_t(τ(N)) read off the ray directly
                let n = r.prefix().len();
                let head = r.tau(n);
                let derived = head.expsum(t) + n as i64 - k;
                let range = q_range(&r, t, k, 8);
                ensure(range.observed_max == derived, || {
                    format!(
                        "ray {r}, t = {t}, k = {k}: max {} vs bound {derived}",
                        range.observed_max
                    )
                })?;
                cases += 1;
            }
        }
    }
    ensure(cases > 0, || "no eventually-only rays".into())?;
    Ok(format!("{cases} (ray, t, k) cases exact at radius 8"))
}

fn c2b_strict_growth() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in corpus() {
        for t in Q_LETTERS.map(letter) {
            if r.eventually_only(t.inverse()) {
                continue;
            }
            for k in Q_KS {
                let maxima: Vec<i64> = [4, 6, 8]
                    .iter()
                    .map(|&radius| q_range(&r, t, k, radius).observed_max)
                    .collect();
                cases += 1;
                if !(maxima[0] < maxima[1] && maxima[1] < maxima[2]) {
                    failures.push(format!("ray {r}, t = {t}, k = {k}: {maxima:?}"));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{cases} cases strictly increasing"))
    } else {
        Err(format!(
            "{} of {cases} cases not strictly increasing, e.g. {}",
            failures.len(),
            failures[0]
        ))
    }
}

/// What the climbing vertices guarantee: `τ(j)·t^(j-k)` lies in the horoball,
/// so each window maximum is at least the best such vertex inside it, and a
/// longer climbing vertex beats the radius-8 maximum.
fn c2b_weak_growth() -> Outcome {
    let mut cases = 0;
    for r in corpus() {
        for t in Q_LETTERS.map(letter) {
            if r.eventually_only(t.inverse()) {
                continue;
            }
            for k in Q_KS {
                let q = HoroballQuery::new(r.clone(), k);
                let start = k.max(0) as usize;
                let climbers: Vec<Word> = (start..start + 40)
                    .map(|j| climbing_vertex(&r, t, k, j))
                    .collect();
                let mut observed = 0;
                for radius in [4, 6, 8] {
                    observed = q_range(&r, t, k, radius).observed_max;
                    let climbed = climbers
                        .iter()
                        .filter(|v| v.len() <= radius)
                        .map(|v| v.expsum(t))
                        .max();
                    ensure(climbed.is_some_and(|c| observed >= c), || {
                        format!(
                            "ray {r}, t = {t}, k = {k}, radius {radius}: {observed} < {climbed:?}"
                        )
                    })?;
                }
                let beyond = climbers.iter().find(|v| v.expsum(t) > observed);
                ensure(beyond.is_some_and(|v| in_horoball_oracle(v, &q)), || {
                    format!("ray {r}, t = {t}, k = {k}: nothing climbs past {observed}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases climb past their radius-8 maximum"))
}

fn c2c_contiguous() -> Outcome {
    let mut cases = 0;
    for r in corpus() {
        for t in Q_LETTERS.map(letter) {
            for k in Q_KS {
                for radius in [4, 6, 8] {
                    let range = q_range(&r, t, k, radius);
                    ensure(range.is_contiguous(), || {
                        format!(
                            "ray {r}, t = {t}, k = {k}, radius {radius}: {:?}",
                            range.observed
                        )
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} windows contiguous"))
}

fn c3_lehnert_sweep() -> Outcome {
    let fam = family("lehnert:2,3");
    let table = sweep(&fam, 2, 3, EnumerationCap::unlimited()).map_err(|e| e.to_string())?;
    let mut outs = 0;
    for (r, v) in &table {
        let period = r.period().letters();
        let expected_out = period.len() == 1 && !period[0].is_positive();
        ensure(
            v.is_out() == expected_out && (v.is_in() || v.is_out()),
            || format!("{r}: {}", v.record()),
        )?;
        outs += usize::from(expected_out);
    }
    Ok(format!("{} rays, {outs} Out", table.len()))
}

fn c4_lamplighter() -> Outcome {
    let fam = family("lamplighter");
    let z = Alphabet::new(1).unwrap();
    let window: Vec<Word> = (-4i64..=4)
        .map(|j| Word::letter_power(letter("a1"), j))
        .collect();
    for text in ["| a1", "| A1"] {
        let r = ray(text);
        let v = classify(&fam, &r).map_err(|e| e.to_string())?;
        let Verdict::Out(Certificate::FamilyWitness {
            c_ray,
            k,
            generating_set,
            psi,
            ..
        }) = &v
        else {
            return Err(format!("{text}: {}", v.record()));
        };
        let q = HoroballQuery::new(c_ray.clone(), *k);
        let vertices =
            sigma_tree::horoball::horoball_vertices(z, &q, 4, EnumerationCap::unlimited())
                .map_err(|e| e.to_string())?;
        let conjugates: Vec<SupportVector> = vertices
            .iter()
            .flat_map(|a| generating_set.iter().map(move |s| act_wreath(a, s, 1)))
            .collect();
        ensure(window.contains(psi), || format!("psi {psi} outside window"))?;
        let reaches = lattice_generates(&conjugates, &[SupportVector::delta(psi.clone())], &window)
            .map_err(|e| e.to_string())?;
        ensure(!reaches, || format!("{text}: δ[{psi}] is generated"))?;
        ensure(conjugates.iter().all(|c| c.is_trivial_at(psi)), || {
            format!("{text}: a conjugate is nonzero at {psi}")
        })?;
    }
    Ok("both points Out; window of 9 indices, witnesses unreachable".into())
}

fn c5_wreath_sweep() -> Outcome {
    let fam = family("wreath:1/2");
    let table = sweep(&fam, 2, 3, EnumerationCap::unlimited()).map_err(|e| e.to_string())?;
    let mut outs = 0;
    for (r, v) in &table {
        let has_d = r.period().letters().iter().any(|l| l.index() == 2);
        ensure(v.is_in() == has_d && (v.is_in() || v.is_out()), || {
            format!("{r}: {}", v.record())
        })?;
        if let Verdict::Out(cert) = v {
            let Certificate::FamilyWitness {
                translation,
                c_ray,
                k,
                generating_set,
                psi,
                ..
            } = cert
            else {
                return Err(format!("{r}: {}", v.record()));
            };
            ensure(
                &r.translate(translation) == c_ray && c_ray.prefix().is_empty(),
                || format!("{r}: translation does not give {c_ray}"),
            )?;
            ensure(c_ray.max_index() == 1, || format!("{c_ray} is not a C-ray"))?;
            let q = HoroballQuery::new(c_ray.clone(), *k);
            let holds = witness_holds(
                generating_set,
                &q,
                psi,
                f2(),
                1,
                4,
                EnumerationCap::unlimited(),
            )
            .map_err(|e| e.to_string())?;
            ensure(holds, || format!("{r}: witness {psi} fails"))?;
            outs += 1;
        }
    }
    Ok(format!(
        "{} rays, {outs} Out, all witnesses re-checked at radius 4",
        table.len()
    ))
}

fn c6_projection() -> Outcome {
    let words = ball(2, 5);
    let mut checked = 0;
    for r in c_rays() {
        for k in -3..=0 {
            let q = HoroballQuery::new(r.clone(), k);
            for a in words.iter().filter(|a| in_horoball(a, &q)) {
                let image = project_to_c(a, 1);
                ensure(in_horoball(&image, &q), || {
                    format!("{a} ↦ {image} leaves C_{k}({r})")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} horoball vertices projected"))
}

/// Distinct nonempty subwords of `τ(n)` lying in `ker φ`.
fn kernel_subwords(model: PhiImageModel, r: &Ray, n: usize) -> BTreeSet<Word> {
    let letters: Vec<Letter> = r.tau(n).letters().to_vec();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..=n {
            let w = Word::reduce(letters[i..j].iter().copied());
            if model.in_kernel(&w) {
                out.insert(w);
            }
        }
    }
    out
}

/// Largest number of prefixes `τ(0), …, τ(n)` sharing one image.
fn max_multiplicity(model: PhiImageModel, r: &Ray, n: usize) -> usize {
    let mut counts: BTreeMap<ImageValue, usize> = BTreeMap::new();
    for i in 0..=n {
        *counts.entry(model.image(&r.tau(i))).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

fn c7_kernel_subwords() -> Outcome {
    let models = [
        family("lehnert:2,3").image_model(),
        family("wreath:1/2").image_model(),
    ];
    let mut recurrent = 0;
    for model in models {
        for r in corpus_with_commutators() {
            let structural = kernel_recurrence(model, &r).is_some();
            // infinitely many distinct kernel subwords: the count keeps growing
            let grows = kernel_subwords(model, &r, 40).len() > kernel_subwords(model, &r, 20).len();
            // some prefix image keeps being revisited
            let repeats = max_multiplicity(model, &r, 40) > max_multiplicity(model, &r, 20);
            ensure(structural == grows && structural == repeats, || {
                format!("{r}: structural {structural}, subword growth {grows}, repeats {repeats}")
            })?;
            recurrent += usize::from(structural);
        }
    }
    let lehnert = family("lehnert:2,3");
    for text in COMMUTATORS {
        let v = classify(&lehnert, &ray(text)).map_err(|e| e.to_string())?;
        ensure(v.is_in(), || format!("{text}: {}", v.record()))?;
    }
    Ok(format!(
        "{} (model, ray) pairs agree, {recurrent} recurrent; commutator periods In",
        2 * (CORPUS.len() + COMMUTATORS.len())
    ))
}

fn c8_invariance() -> Outcome {
    let mut checked = 0;
    for (fam_text, rank, rays) in [
        ("lehnert:2,3", 2, corpus_with_commutators()),
        ("wreath:1/2", 2, corpus_with_commutators()),
        ("lamplighter", 1, c_rays()),
    ] {
        let fam = family(fam_text);
        let translations = ball(rank, 3);
        for r in &rays {
            let base = classify(&fam, r).map_err(|e| e.to_string())?;
            for g in &translations {
                let moved = r.translate(g);
                let v = classify(&fam, &moved).map_err(|e| e.to_string())?;
                ensure(v.status() == base.status(), || {
                    format!(
                        "{fam_text}: {r} is {}, but {g}·τ = {moved} is {}",
                        base.status(),
                        v.status()
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} translates agree"))
}

fn c9_properties() -> Outcome {
    let small = ball(2, 3);
    let id = Word::identity();
    for u in &small {
        ensure(u.multiply(&id) == *u && id.multiply(u) == *u, || {
            format!("identity at {u}")
        })?;
        ensure(u.multiply(&u.inverse()).is_identity(), || {
            format!("inverse at {u}")
        })?;
        for v in &small {
            let d = u.distance(v);
            ensure(d == v.distance(u) && (d == 0) == (u == v), || {
                format!("metric at {u}, {v}")
            })?;
            for t in ["a1", "a2"].map(letter) {
                ensure(u.multiply(v).expsum(t) == u.expsum(t) + v.expsum(t), || {
                    format!("expsum at {u}, {v}")
                })?;
            }
            for w in &small {
                ensure(
                    u.multiply(v).multiply(w) == u.multiply(&v.multiply(w)),
                    || format!("associativity at {u}, {v}, {w}"),
                )?;
                ensure(u.distance(w) <= d + v.distance(w), || {
                    format!("triangle at {u}, {v}, {w}")
                })?;
            }
        }
    }
    // canonicalization: the infinite word is preserved, and the printed form round-trips
    let prefixes = ball(2, 2);
    let mut rays = 0;
    for len in 1..=3 {
        for period in f2().sphere(len, EnumerationCap::unlimited()).unwrap() {
            for prefix in &prefixes {
                let r = Ray::new(prefix, &period).map_err(|e| e.to_string())?;
                let expected = naive_letters(prefix, &period, 12);
                ensure(r.tau(12).letters() == expected.as_slice(), || {
                    format!("({prefix} | {period}) became {r}")
                })?;
                let again: Ray = r
                    .to_string()
                    .parse()
                    .map_err(|e: sigma_tree::RayError| e.to_string())?;
                ensure(again == r, || format!("{r} does not round-trip"))?;
                ensure(Ray::new(r.prefix(), r.period()).as_ref() == Ok(&r), || {
                    format!("{r} is not a fixpoint")
                })?;
                rays += 1;
            }
        }
    }
    // climbing vertices lie in the horoball
    for r in corpus() {
        for k in -2i64..=2 {
            let q = HoroballQuery::new(r.clone(), k);
            for j in (k.max(0) as usize)..(k.max(0) as usize + 4) {
                let v = climbing_vertex(&r, letter("a1"), k, j);
                ensure(in_horoball(&v, &q), || {
                    format!("climbing vertex {v} of {r}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} words (triples exhaustive), {rays} raw rays canonicalized",
        small.len()
    ))
}
