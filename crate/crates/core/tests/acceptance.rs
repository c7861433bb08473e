//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use amalgam_core::classify::{
    cone_planar_nerve, dihedral_realizable, is_3manifold_group, obstruction_oracle, qi_class_c, qi_class_w,
    qi_cross, qi_equivalent_c, qi_equivalent_w,
};
use amalgam_core::commensurability::{euler_vector, expand_vector, hyperbolic_degree_expand, scale_class};
use amalgam_core::complex::build_amalgam_complex;
use amalgam_core::covers::faults::Fault;
use amalgam_core::covers::{
    build_tower_x, build_tower_z, check_x5_iso_z2, neumann_cover_exists, partitions_of, realized_partitions,
    verify_cover,
};
use amalgam_core::geometry::{
    collapse_map_line, collapse_map_tree_ordered, interior_pairs, max_radius, measure_distortion, vertex_cap,
    ChildOrder, VertexMap,
};
use amalgam_core::{CurveSpec, EulerVector, SurfaceAmalgamSpec, ThetaGraphSpec};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Every valid amalgam with `g, h ∈ {2,3,4}`, `1 <= m <= n <= 4` and every
/// curve kind on each side.
fn c_box() -> Vec<SurfaceAmalgamSpec> {
    let mut out = Vec::new();
    for g in 2..=4 {
        for h in 2..=4 {
            for m in 1..=4 {
                for n in m..=4 {
                    for a in CurveSpec::all_for_genus(g) {
                        for b in CurveSpec::all_for_genus(h) {
                            out.push(SurfaceAmalgamSpec::new(g, h, m, n, a, b).expect("box spec is valid"));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every Θ with `3 <= k <= 6` arms of lengths `1..=4`, as sorted multisets.
fn w_box() -> Vec<ThetaGraphSpec> {
    fn go(k: usize, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<ThetaGraphSpec>) {
        if prefix.len() == k {
            out.push(ThetaGraphSpec::new(prefix.clone()).expect("box Θ is valid"));
            return;
        }
        for n in min..=4 {
            prefix.push(n);
            go(k, n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for k in 3..=6 {
        go(k, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// The three realizable cases, written out independently of the library.
fn expected_3manifold(s: &SurfaceAmalgamSpec) -> bool {
    let nonsep = |c: CurveSpec| !c.is_separating();
    match (s.m, s.n) {
        (1, 1) => true,
        (1, 2) => nonsep(s.curve_b),
        (2, 2) => nonsep(s.curve_a) && nonsep(s.curve_b),
        _ => false,
    }
}

fn manifold_table() -> Outcome {
    let specs = c_box();
    let mut table_miss = 0;
    let mut oracle_miss = 0;
    let mut yes = 0;
    for s in &specs {
        let verdict = is_3manifold_group(s);
        if verdict.is_3manifold != expected_3manifold(s) {
            table_miss += 1;
        }
        if obstruction_oracle(s) != verdict {
            oracle_miss += 1;
        }
        yes += usize::from(verdict.is_3manifold);
    }
    Outcome::new(
        table_miss == 0 && oracle_miss == 0,
        format!(
            "{} specs, {yes} realizable, {table_miss} table mismatches, {oracle_miss} oracle mismatches",
            specs.len()
        ),
    )
}

fn dihedral() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=12usize {
        match dihedral_realizable(&[n, 1, 1], n + 2) {
            Ok(r) if r == (n <= 2) => {}
            other => bad.push(format!("n={n}: {other:?}")),
        }
    }
    Outcome::new(bad.is_empty(), format!("n in 1..=12, failures: {bad:?}"))
}

fn tower_specs() -> Vec<SurfaceAmalgamSpec> {
    let curves = [CurveSpec::NonSeparating, CurveSpec::separating(1, 1)];
    let mut out = Vec::new();
    for a in curves {
        for b in curves {
            for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)] {
                out.push(SurfaceAmalgamSpec::new(2, 2, m, n, a, b).expect("tower spec is valid"));
            }
        }
    }
    out
}

fn towers() -> Outcome {
    let mut failures = Vec::new();
    let mut links = 0;
    for s in tower_specs() {
        let label = format!("(m,n)=({},{}) {:?}/{:?}", s.m, s.n, s.curve_a, s.curve_b);
        let x = match build_tower_x(&s) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        for check in x.verify().into_iter().chain(build_tower_z(&s).tower.verify()) {
            links += 1;
            if !check.pass {
                failures.push(format!("{label}: {} -> {}", check.from, check.to));
            }
        }
        let chi = build_amalgam_complex(&s).euler_char();
        let mn = i64::from(s.m * s.n);
        let expected: Vec<i64> = [1, 2, 2 * mn, 2 * mn, 4 * mn, 64 * mn].iter().map(|f| f * chi).collect();
        if x.euler_chain() != expected {
            failures.push(format!("{label}: chain {:?} != {expected:?}", x.euler_chain()));
        }
        match check_x5_iso_z2(&s) {
            Ok(Some(_)) => {}
            other => failures.push(format!("{label}: no isomorphism of the tops ({:?})", other.map(|_| ()))),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{} specs, {links} links checked, failures: {failures:?}", tower_specs().len()),
    )
}

fn fault_injection() -> Outcome {
    let s = SurfaceAmalgamSpec::new(2, 2, 2, 3, CurveSpec::NonSeparating, CurveSpec::NonSeparating).unwrap();
    let tower = build_tower_x(&s).expect("tower builds");
    let mut applied = 0;
    let mut missed = Vec::new();
    let mut per_fault: BTreeMap<String, usize> = BTreeMap::new();
    for (link, cm) in tower.covers() {
        for fault in Fault::ALL {
            let Some(bad) = fault.apply(cm) else { continue };
            applied += 1;
            *per_fault.entry(format!("{fault:?}")).or_default() += 1;
            let report = verify_cover(&bad);
            if report.pass || !report.has(fault.target()) {
                missed.push(format!("link {link} {fault:?}: {:?}", report.first));
            }
        }
    }
    let every_fault_used = per_fault.len() == Fault::ALL.len();
    Outcome::new(
        missed.is_empty() && every_fault_used,
        format!(
            "{applied} mutations over {} cover links, per fault {per_fault:?}, missed: {missed:?}",
            tower.covers().count()
        ),
    )
}

/// `-(n - 1)/4` per arm, straight from the arm lengths.
fn oracle_vector(theta: &ThetaGraphSpec) -> Vec<Ratio<i64>> {
    let mut v: Vec<Ratio<i64>> = theta.arms.iter().map(|&n| Ratio::new(1 - i64::from(n), 4)).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

fn as_ratios(v: &EulerVector) -> Vec<Ratio<i64>> {
    let mut r: Vec<Ratio<i64>> = v.quarters().iter().map(|&q| Ratio::new(q, 4)).collect();
    r.sort_by(|a, b| b.cmp(a));
    r
}

fn euler_identities() -> Outcome {
    let mut failures = Vec::new();
    let example = ThetaGraphSpec::new(vec![1, 1, 2, 2, 2, 3]).unwrap();
    let expected: Vec<Ratio<i64>> = [(0, 1), (0, 1), (-1, 4), (-1, 4), (-1, 4), (-1, 2)]
        .iter()
        .map(|&(a, b)| Ratio::new(a, b))
        .collect();
    if as_ratios(&euler_vector(&example)) != expected {
        failures.push(format!("example: {}", euler_vector(&example)));
    }
    let mut checked = 0;
    for t in w_box() {
        let v = euler_vector(&t);
        if as_ratios(&v) != oracle_vector(&t) {
            failures.push(format!("{t}: vector"));
        }
        for k in 1..=4u32 {
            checked += 1;
            let scaled = scale_class(&t, k);
            let want: Vec<Ratio<i64>> = oracle_vector(&t).iter().map(|x| x * i64::from(k)).collect();
            if as_ratios(&euler_vector(&scaled)) != want || euler_vector(&scaled) != v.scaled(i64::from(k)) {
                failures.push(format!("{t} scaled by {k}"));
            }
        }
        let ell = t.linear_degree();
        for m in 1..=4u32 {
            checked += 1;
            match hyperbolic_degree_expand(&t, m) {
                Ok(e) => {
                    let zeros = m as usize * (ell - 2) + 2;
                    let mut hyperbolic: Vec<u32> = t.hyperbolic_arms().repeat(m as usize);
                    hyperbolic.sort_unstable();
                    let pattern = e.linear_degree() == zeros && e.hyperbolic_arms() == hyperbolic.as_slice();
                    let vector = expand_vector(&v, m).ok() == Some(euler_vector(&e));
                    if ell < 2 || !pattern || !vector {
                        failures.push(format!("{t} expanded by {m}"));
                    }
                }
                Err(_) if ell < 2 => {}
                Err(e) => failures.push(format!("{t} expanded by {m}: {e}")),
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} scale/expand cases, failures: {failures:?}"),
    )
}

/// Checks reflexivity, symmetry and transitivity, returning the classes.
fn classes<T: Clone>(items: &[T], eq: impl Fn(&T, &T) -> bool) -> Result<Vec<Vec<usize>>, String> {
    let n = items.len();
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| eq(&items[i], &items[j])).collect()).collect();
    for i in 0..n {
        if !rel[i][i] {
            return Err(format!("not reflexive at {i}"));
        }
        for j in 0..n {
            if rel[i][j] != rel[j][i] {
                return Err(format!("not symmetric at ({i},{j})"));
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| rel[i][j]).collect();
        for &a in &members {
            if class_of[a] != usize::MAX {
                return Err(format!("not transitive: {a} related to two classes"));
            }
            for &b in &members {
                if !rel[a][b] {
                    return Err(format!("not transitive at ({a},{b})"));
                }
            }
            class_of[a] = out.len();
        }
        out.push(members);
    }
    Ok(out)
}

fn qi_laws() -> Outcome {
    let cs = c_box();
    let ws = w_box();
    let c_classes = match classes(&cs, qi_equivalent_c) {
        Ok(c) => c,
        Err(e) => return Outcome::new(false, format!("C relation: {e}")),
    };
    let w_classes = match classes(&ws, qi_equivalent_w) {
        Ok(c) => c,
        Err(e) => return Outcome::new(false, format!("W relation: {e}")),
    };
    // expected C classes: one per n among hyperbolic specs, plus (2,2), plus the rest
    let hyperbolic_ns: BTreeSet<u32> = cs.iter().filter(|s| s.m == 1).map(|s| s.n).collect();
    let expected_c = hyperbolic_ns.len() + 2;
    let c_labels_consistent = c_classes.iter().all(|class| {
        let labels: BTreeSet<_> = class.iter().map(|&i| qi_class_c(&cs[i])).collect();
        labels.len() == 1
    });
    let non_hyperbolic = w_classes
        .iter()
        .filter(|class| ws[class[0]].linear_degree() >= 2)
        .count();
    let w_keys_consistent = w_classes.iter().all(|class| {
        let keys: BTreeSet<_> = class.iter().map(|&i| qi_class_w(&ws[i]).key()).collect();
        keys.len() == 1
    });
    let distinct_w_keys: BTreeSet<_> = w_classes.iter().map(|c| qi_class_w(&ws[c[0]]).key()).collect();
    Outcome::new(
        c_classes.len() == expected_c
            && non_hyperbolic == 3
            && c_labels_consistent
            && w_keys_consistent
            && distinct_w_keys.len() == w_classes.len(),
        format!(
            "C: {} classes (expected {expected_c}); W: {} classes, {non_hyperbolic} non-hyperbolic (expected 3)",
            c_classes.len(),
            w_classes.len()
        ),
    )
}

fn cross_family() -> Outcome {
    let cs = c_box();
    let ws = w_box();
    let mut orphans = Vec::new();
    for s in &cs {
        if !ws.iter().any(|t| qi_cross(s, t)) {
            orphans.push(format!("({},{})", s.m, s.n));
        }
    }
    // constancy on class pairs: compare against one representative per class
    let c_reps: Vec<&SurfaceAmalgamSpec> = {
        let mut reps: Vec<&SurfaceAmalgamSpec> = Vec::new();
        for s in &cs {
            if !reps.iter().any(|r| qi_equivalent_c(r, s)) {
                reps.push(s);
            }
        }
        reps
    };
    let w_reps: Vec<&ThetaGraphSpec> = {
        let mut reps: Vec<&ThetaGraphSpec> = Vec::new();
        for t in &ws {
            if !reps.iter().any(|r| qi_equivalent_w(r, t)) {
                reps.push(t);
            }
        }
        reps
    };
    let mut inconsistent = 0;
    for s in &cs {
        let cr = c_reps.iter().find(|r| qi_equivalent_c(r, s)).unwrap();
        for t in &ws {
            let wr = w_reps.iter().find(|r| qi_equivalent_w(r, t)).unwrap();
            if qi_cross(s, t) != qi_cross(cr, wr) {
                inconsistent += 1;
            }
        }
    }
    orphans.dedup();
    Outcome::new(
        orphans.is_empty() && inconsistent == 0,
        format!(
            "{} x {} pairs, amalgams without a partner: {orphans:?}, {inconsistent} inconsistent pairs",
            cs.len(),
            ws.len()
        ),
    )
}

fn neumann() -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for genus in 1..=2usize {
        for boundary in 1..=2usize {
            for d in 2..=3usize {
                let realized = realized_partitions(genus, boundary, d);
                let parts = partitions_of(d as u64);
                let mut tuples: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
                for _ in 0..boundary {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            parts.iter().map(move |p| {
                                let mut t = t.clone();
                                t.push(p.clone());
                                t
                            })
                        })
                        .collect();
                }
                let euler = 2 - 2 * genus as i64 - boundary as i64;
                for tuple in tuples {
                    checked += 1;
                    let parity = neumann_cover_exists(euler, boundary, d as u64, &tuple);
                    if parity != Ok(realized.contains(&tuple)) {
                        mismatches.push(format!("g={genus} b={boundary} d={d} {tuple:?}: {parity:?}"));
                    }
                }
            }
        }
    }
    Outcome::new(
        mismatches.is_empty(),
        format!("{checked} partition tuples, mismatches: {mismatches:?}"),
    )
}

fn distortion() -> Outcome {
    let cap = vertex_cap();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for s in 1..=5u32 {
        let tree_radius = (6 * s).min(max_radius(3, 3, cap, 6 * s));
        let mut maps: Vec<(&str, Result<VertexMap, _>)> = vec![("line", collapse_map_line(s, 6 * s))];
        maps.push(("tree", collapse_map_tree_ordered(s, tree_radius, ChildOrder::First)));
        maps.push(("tree-last", collapse_map_tree_ordered(s, tree_radius, ChildOrder::Last)));
        for (kind, f) in maps {
            let f = match f {
                Ok(f) => f,
                Err(e) => {
                    failures.push(format!("s={s} {kind}: {e}"));
                    continue;
                }
            };
            let measured = match measure_distortion(&interior_pairs(&f, s)) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("s={s} {kind}: {e}"));
                    continue;
                }
            };
            let bound = i64::from(s);
            if !measured.within(bound, bound) {
                failures.push(format!("s={s} {kind}: L={} C={}", measured.l, measured.c));
            }
            if kind != "line" {
                let cert = f.certificate();
                if !cert.valence_ok || !cert.fiber_ok || cert.interior_classes == 0 {
                    failures.push(format!("s={s} {kind}: quotient {:?}", cert.valences));
                }
            }
            rows.push(format!("s={s} {kind} R={} L={} C={}", f.domain.radius, measured.l, measured.c));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("vertex cap {cap}; {}; failures: {failures:?}", rows.join(", ")),
    )
}

fn spheres() -> Outcome {
    let ws = w_box();
    let bad: Vec<String> = ws
        .iter()
        .filter(|t| !cone_planar_nerve(t).certificate.is_flag_sphere())
        .map(|t| t.to_string())
        .collect();
    Outcome::new(bad.is_empty(), format!("{} Θ-graphs, failures: {bad:?}", ws.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("3-manifold table and oracle agreement", manifold_table, Duration::from_secs(5)),
        ("dihedral obstruction for [n,1,1]", dihedral, Duration::from_secs(1)),
        ("tower verification", towers, Duration::from_secs(30)),
        ("fault injection", fault_injection, Duration::from_secs(30)),
        ("Euler vector identities", euler_identities, Duration::from_secs(1)),
        ("QI classification laws", qi_laws, Duration::from_secs(30)),
        ("cross-family consistency", cross_family, Duration::from_secs(30)),
        ("parity criterion vs brute force", neumann, Duration::from_secs(60)),
        ("collapse-map distortion", distortion, Duration::from_secs(60)),
        ("sphere coning", spheres, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let pass = outcome.pass && elapsed <= *budget;
        failed += usize::from(!pass);
        println!(
            "{} criterion {:>2}: {name} [{:.2}s of {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
