//! Exhaustive enumeration of small type systems up to root-preserving
//! relabeling, with empirical cross-checks of the classification and of the
//! stable-subset structure on everything enumerated.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::classify::{classify, stable_child_closed_subsets, Kind};
use crate::diagram::{is_simple, validate, DiagramError, LabelDiagram, TypeSystem};
use crate::semigroup::semigroup_info;

/// Practical ceiling: the raw assignment space is (k²)^k.
pub const MAX_LABELS: usize = 7;

/// Runs `f` on every type system with exactly `k` labels: all labels
/// reachable, presentation reduced, one representative per canonical form
/// (the representative itself is in canonical order).
pub fn for_each_diagram(k: usize, f: &mut dyn FnMut(&TypeSystem)) {
    scan_assignments(k, None, f);
}

/// Runs `f` on every type system with at most `n` labels, smallest first.
pub fn enumerate_diagrams(n: usize, f: &mut dyn FnMut(&TypeSystem)) {
    for k in 1..=n {
        for_each_diagram(k, f);
    }
}

/// Odometer over child assignments; `first_pair` pins label 0's children
/// (the sharding axis for parallel runs).
fn scan_assignments(k: usize, first_pair: Option<(usize, usize)>, f: &mut dyn FnMut(&TypeSystem)) {
    assert!((1..=MAX_LABELS).contains(&k), "label count out of range");
    let names: Vec<String> = (0..k).map(|i| format!("T{i}")).collect();
    let mut child0 = vec![0usize; k];
    let mut child1 = vec![0usize; k];
    if let Some((c0, c1)) = first_pair {
        child0[0] = c0;
        child1[0] = c1;
    }
    // Digits run over labels 1..k when the first pair is pinned.
    let free_from = usize::from(first_pair.is_some());
    loop {
        if all_reachable(k, &child0, &child1) {
            let d = LabelDiagram::from_parts(names.clone(), child0.clone(), child1.clone(), 0)
                .expect("assignment digits are in range");
            if let Ok(t) = validate(d) {
                if t.diagram().is_canonical() {
                    f(&t);
                }
            }
        }
        // Advance the odometer: children of label `free_from` onward.
        let mut i = free_from;
        loop {
            if i == k {
                return;
            }
            child0[i] += 1;
            if child0[i] == k {
                child0[i] = 0;
                child1[i] += 1;
                if child1[i] == k {
                    child1[i] = 0;
                    i += 1;
                    continue;
                }
            }
            break;
        }
    }
}

fn all_reachable(k: usize, child0: &[usize], child1: &[usize]) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for c in [child0[v], child1[v]] {
            if !seen[c] {
                seen[c] = true;
                count += 1;
                stack.push(c);
            }
        }
    }
    count == k
}

/// One enumerated system, with its classification summary and — for the
/// nuclear ones — the semigroup invariants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusRow {
    pub canonical_form: String,
    pub labels: usize,
    pub simple: bool,
    pub kind: Kind,
    pub nuclei_sizes: Vec<usize>,
    /// Nuclear systems only.
    pub invariant_factors: Option<Vec<BigInt>>,
    pub free_rank: Option<usize>,
    pub det: Option<BigInt>,
    pub threshold: usize,
    pub stable_subsets: usize,
}

fn row_for(t: &TypeSystem) -> CensusRow {
    let c = classify(t);
    // The one-label system admits no proper nontrivial quotient to witness
    // either verdict; the census records it as not simple.
    let simple = match is_simple(t) {
        Ok(check) => check.simple,
        Err(DiagramError::TooFewLabels) => false,
        Err(e) => unreachable!("validated systems only fail by size: {e}"),
    };
    let (invariant_factors, free_rank, det) = if c.kind == Kind::Nuclear {
        let info = semigroup_info(t, &c)
            .expect("nuclear systems always have invariants")
            .pop()
            .expect("one nucleus");
        (
            Some(info.invariant_factors),
            Some(info.free_rank),
            Some(info.det),
        )
    } else {
        (None, None, None)
    };
    CensusRow {
        canonical_form: t.diagram().canonical_key(),
        labels: t.len(),
        simple,
        kind: c.kind.clone(),
        nuclei_sizes: c.nuclei.iter().map(Vec::len).collect(),
        invariant_factors,
        free_rank,
        det,
        threshold: c.threshold,
        stable_subsets: stable_child_closed_subsets(t).len(),
    }
}

/// All systems with at most `n` labels, sorted by (label count, canonical
/// form). Parallelism is read from `VTYPES_THREADS` (default: one thread).
pub fn census(n: usize) -> Vec<CensusRow> {
    let threads = std::env::var("VTYPES_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(1);
    census_threaded(n, threads)
}

/// As [`census`], with the worker count given explicitly. The result is
/// identical for every worker count.
pub fn census_threaded(n: usize, threads: usize) -> Vec<CensusRow> {
    let mut rows: Vec<CensusRow> = Vec::new();
    for k in 1..=n {
        let shards: Vec<(usize, usize)> = (0..k)
            .flat_map(|c0| (0..k).map(move |c1| (c0, c1)))
            .collect();
        let workers = threads.clamp(1, shards.len());
        if workers == 1 {
            let mut emit = |t: &TypeSystem| rows.push(row_for(t));
            for_each_diagram(k, &mut emit);
        } else {
            let chunks: Vec<Vec<(usize, usize)>> = (0..workers)
                .map(|w| shards.iter().copied().skip(w).step_by(workers).collect())
                .collect();
            let collected = std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .into_iter()
                    .map(|mine| {
                        scope.spawn(move || {
                            let mut local = Vec::new();
                            for pair in mine {
                                let mut emit = |t: &TypeSystem| local.push(row_for(t));
                                scan_assignments(k, Some(pair), &mut emit);
                            }
                            local
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("census worker panicked"))
                    .collect::<Vec<_>>()
            });
            rows.extend(collected.into_iter().flatten());
        }
    }
    rows.sort_by(|a, b| (a.labels, &a.canonical_form).cmp(&(b.labels, &b.canonical_form)));
    rows
}

/// CSV rendering; non-nuclear rows carry `-` in the semigroup columns.
pub fn to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(
        "canonical_form,labels,simple,kind,nuclei_sizes,invariant_factors,free_rank,det\n",
    );
    for r in rows {
        let sizes = r
            .nuclei_sizes
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("+");
        let factors = match &r.invariant_factors {
            Some(fs) => {
                if fs.is_empty() {
                    String::new()
                } else {
                    fs.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join("*")
                }
            }
            None => "-".into(),
        };
        let free = r.free_rank.map_or("-".into(), |v| v.to_string());
        let det = r.det.as_ref().map_or("-".into(), ToString::to_string);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.canonical_form, r.labels, r.simple, r.kind, sizes, factors, free, det
        )
        .expect("writing to a string cannot fail");
    }
    out
}

/// Aggregate check of the classification against everything enumerated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationReport {
    pub max_labels: usize,
    pub total: usize,
    pub simple_total: usize,
    /// Kind distribution among the simple systems.
    pub simple_by_kind: BTreeMap<String, usize>,
    /// Human-readable descriptions of any violated expectation; empty on a
    /// healthy build.
    pub violations: Vec<String>,
}

/// Verifies on every enumerated system that:
/// * every simple system is nuclear, binuclear with two singleton nuclei,
///   or atomic quasinuclear — and in particular classified;
/// * for nuclear systems, |det(I − A)| equals the product of the invariant
///   factors when the free rank is zero, and det = 0 otherwise.
pub fn verify_classification(n: usize) -> ClassificationReport {
    let mut report = ClassificationReport {
        max_labels: n,
        total: 0,
        simple_total: 0,
        simple_by_kind: BTreeMap::new(),
        violations: Vec::new(),
    };
    for row in census(n) {
        report.total += 1;
        if let (Some(factors), Some(free), Some(det)) =
            (&row.invariant_factors, row.free_rank, &row.det)
        {
            let product: BigInt = factors.iter().product();
            let consistent = if free == 0 {
                det.abs() == product
            } else {
                det.is_zero()
            };
            if !consistent {
                report.violations.push(format!(
                    "{}: det {} inconsistent with factors {:?} and free rank {}",
                    row.canonical_form, det, factors, free
                ));
            }
        }
        if !row.simple {
            continue;
        }
        report.simple_total += 1;
        *report
            .simple_by_kind
            .entry(row.kind.to_string())
            .or_insert(0) += 1;
        let allowed = match row.kind {
            Kind::Nuclear => true,
            Kind::Multinuclear { count } => count == 2 && row.nuclei_sizes.iter().all(|&s| s == 1),
            Kind::QuasinuclearAtomic { .. } => true,
            Kind::Unclassified => false,
        };
        if !allowed {
            report.violations.push(format!(
                "{}: simple but classified {} with nuclei sizes {:?}",
                row.canonical_form, row.kind, row.nuclei_sizes
            ));
        }
    }
    report
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetReport {
    pub max_labels: usize,
    /// stable-subset-count histogram over the simple systems.
    pub counts: BTreeMap<usize, usize>,
    pub violations: Vec<String>,
}

/// Verifies that every simple system has one, two, or three nonempty stable
/// child-closed subsets, in the expected shapes: two means a singleton
/// nested in the other; three means two singletons and their union.
pub fn verify_stable_subset_counts(n: usize) -> SubsetReport {
    let mut report = SubsetReport {
        max_labels: n,
        counts: BTreeMap::new(),
        violations: Vec::new(),
    };
    let mut check = |t: &TypeSystem| {
        let simple = match is_simple(t) {
            Ok(check) => check.simple,
            Err(_) => false,
        };
        if !simple {
            return;
        }
        let subsets = stable_child_closed_subsets(t);
        *report.counts.entry(subsets.len()).or_insert(0) += 1;
        let key = || t.diagram().canonical_key();
        match subsets.as_slice() {
            [_] => {}
            [a, b] => {
                let nested = a.len() == 1 && a.iter().all(|x| b.contains(x));
                if !nested {
                    report
                        .violations
                        .push(format!("{}: two subsets but not a nested singleton", key()));
                }
            }
            [a, b, c] => {
                let mut union: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                union.sort_unstable();
                let shape = a.len() == 1 && b.len() == 1 && &union == c;
                if !shape {
                    report.violations.push(format!(
                        "{}: three subsets but not two singletons and their union",
                        key()
                    ));
                }
            }
            other => {
                report
                    .violations
                    .push(format!("{}: {} stable subsets", key(), other.len()));
            }
        }
    };
    enumerate_diagrams(n, &mut check);
    report
}
