//! Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use burnside_core::biset::{diagonal_induce, diagonal_restrict, gamma};
use burnside_core::burnside::{BurnsideRing, Inversion};
use burnside_core::ring::{solve_linear, LinearSolution, Matrix, RingElem, RingSpec};
use burnside_core::separability::{
    casimir_system, commutant_basis, commutant_sufficiency, derivation_space, functor_separability,
    gamma_inverse_from_idempotents, ring_separability, verify_casimir, Obstruction, Witness,
};
use burnside_core::{Config, Group, GroupSpec};
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Check);

const Q: RingSpec = RingSpec::Rationals;
const Z: RingSpec = RingSpec::Integers;

fn cfg() -> Config {
    Config::default()
}

fn group(s: &str) -> Group {
    GroupSpec::parse(s).unwrap().build(&cfg()).unwrap()
}

fn ring_of(s: &str) -> BurnsideRing {
    BurnsideRing::new(&group(s), &cfg()).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

const MARK_GROUPS: [&str; 8] = ["C1", "C2", "C3", "C4", "prod(C2,C2)", "S3", "D8", "Q8"];

fn idempotents() -> Check {
    for s in ["C1", "C2", "C3", "C4", "prod(C2,C2)", "S3", "D8"] {
        let b = ring_of(s);
        let es = b.idempotents(Q).map_err(|e| e.to_string())?;
        let mut sum = b.zero(Q);
        for (h, e) in es.iter().enumerate() {
            sum = sum.add(e).unwrap();
            for (k, f) in es.iter().enumerate() {
                let want = if h == k { e.clone() } else { b.zero(Q) };
                ensure(e.multiply(f).unwrap() == want, || format!("{s}: e_{h} e_{k}"))?;
            }
            for a in 0..b.rank() {
                let alpha = b.basis(Q, a);
                let want = e.scale(&alpha.mark(h));
                ensure(e.multiply(&alpha).unwrap() == want, || format!("{s}: e_{h} [G/{a}]"))?;
            }
        }
        ensure(sum == b.one(Q), || format!("{s}: idempotents do not sum to 1"))?;
    }
    Ok(())
}

fn grid() -> Vec<RingSpec> {
    let mut rings: Vec<RingSpec> = (2..=12).map(RingSpec::Modular).collect();
    rings.extend([Z, Q]);
    rings
}

fn expected_unit(order: usize, ring: RingSpec) -> bool {
    match ring {
        RingSpec::Rationals => true,
        RingSpec::Integers => order == 1,
        RingSpec::Modular(m) => (order as u64).gcd(&m) == 1,
    }
}

fn algebra_separability() -> Check {
    for s in ["C2", "C3", "S3"] {
        let b = ring_of(s);
        for ring in grid() {
            let v = ring_separability(&b, ring, &cfg()).map_err(|e| e.to_string())?;
            ensure(v.separable == expected_unit(b.group().order(), ring), || {
                format!("{s} over {ring}: wrong verdict")
            })?;
            match (&v.witness, &v.obstruction) {
                (Some(Witness::Casimir(u)), None) => {
                    ensure(verify_casimir(u), || format!("{s} over {ring}: bad witness"))?
                }
                (None, Some(Obstruction::Linear { certificate, .. })) => {
                    let (a, rhs) = casimir_system(&b, ring, &cfg());
                    ensure(certificate.verify(&a, &rhs), || format!("{s} over {ring}: bad certificate"))?;
                }
                _ => return Err(format!("{s} over {ring}: malformed verdict")),
            }
        }
    }
    Ok(())
}

fn functor_separability_check() -> Check {
    for s in ["C2", "C3", "S3"] {
        let b = ring_of(s);
        for ring in grid() {
            let v = functor_separability(&b, ring).map_err(|e| e.to_string())?;
            let unit = expected_unit(b.group().order(), ring);
            ensure(v.separable == unit, || format!("{s} over {ring}: wrong verdict"))?;
            let gm = gamma(&b, ring);
            if unit {
                let alpha = gamma_inverse_from_idempotents(&b, ring).map_err(|e| e.to_string())?;
                ensure(gm.multiply(&alpha).unwrap() == b.one(ring), || format!("{s} over {ring}: Gamma alpha != 1"))?;
                let Inversion::Inverse(inv) = gm.invert() else {
                    return Err(format!("{s} over {ring}: invert failed"));
                };
                ensure(inv == alpha, || format!("{s} over {ring}: inverses disagree"))?;
            } else {
                ensure(matches!(gm.invert(), Inversion::NotInvertible(_)), || {
                    format!("{s} over {ring}: Gamma inverted")
                })?;
            }
        }
    }
    Ok(())
}

fn mackey() -> Check {
    for s in ["C2", "C3", "prod(C2,C2)", "S3"] {
        let g = group(s);
        let b = BurnsideRing::new(&g, &cfg()).unwrap();
        let bb = BurnsideRing::new(&g.direct_product(&g, &cfg()).unwrap(), &cfg()).unwrap();
        let gm = gamma(&b, Z);
        for k in 0..b.rank() {
            let a = b.basis(Z, k);
            let lhs = diagonal_restrict(&diagonal_induce(&a, &bb).unwrap(), &b).unwrap();
            ensure(lhs == gm.multiply(&a).unwrap(), || format!("{s}: basis element {k}"))?;
        }
    }
    Ok(())
}

fn commutant() -> Check {
    for s in ["C1", "C2", "C3", "S3"] {
        let g = group(s);
        let classes = BurnsideRing::new(&g, &cfg()).unwrap().rank();
        let c = commutant_basis(&g, Q, &cfg()).map_err(|e| e.to_string())?;
        ensure(c.matches_diagonal_span, || format!("{s}: solutions differ from the diagonal span"))?;
        ensure(c.dimension() == Some(classes), || format!("{s}: dimension {:?}, want {classes}", c.dimension()))?;
    }
    for s in ["C2", "C3"] {
        ensure(commutant_sufficiency(&group(s), &cfg()).map_err(|e| e.to_string())?, || format!("{s}: sufficiency"))?;
    }
    Ok(())
}

fn plus(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j) + b.get(i, j));
        }
    }
    out
}

fn derivations() -> Check {
    for (s, r) in [("S3", "Z"), ("C4", "Z"), ("C2", "Z"), ("C3", "Z/5")] {
        let d = derivation_space(&ring_of(s), RingSpec::parse(r).unwrap()).unwrap();
        ensure(d.is_zero(), || format!("{s} over {r}: nonzero derivation"))?;
    }
    let z2 = RingSpec::Modular(2);
    let d = derivation_space(&ring_of("C2"), z2).unwrap();
    let want = Matrix::from_i64(z2, &[vec![1, 0], vec![0, 0]]).unwrap();
    ensure(!d.is_zero() && d.satisfies_leibniz(&want), || "C2 over Z/2: expected derivation missing".into())?;
    let mut span = vec![Matrix::zeros(z2, 2, 2)];
    for m in &d.basis {
        let shifted: Vec<Matrix> = span.iter().map(|v| plus(v, m)).collect();
        span.extend(shifted);
    }
    ensure(span.contains(&want), || "C2 over Z/2: derivation not in the span".into())?;
    let d3 = derivation_space(&ring_of("C3"), RingSpec::Modular(3)).unwrap();
    ensure(!d3.is_zero(), || "C3 over Z/3: no derivation".into())?;
    for (space, m) in d.basis.iter().map(|m| (&d, m)).chain(d3.basis.iter().map(|m| (&d3, m))) {
        ensure(space.satisfies_leibniz(m), || "listed map is not a derivation".into())?;
    }
    Ok(())
}

fn marks() -> Check {
    for s in MARK_GROUPS {
        let b = ring_of(s);
        let gm = gamma(&b, Z);
        let lat = b.lattice();
        for h in 0..b.rank() {
            let c = lat.representative(h).centralizer().order();
            ensure(gm.mark(h) == Z.from_i64(c as i64), || format!("{s}: mark of Gamma at {h}"))?;
        }
        let t = b.table_of_marks();
        ensure(t.is_lower_triangular(), || format!("{s}: not triangular"))?;
        for h in 0..b.rank() {
            let sub = lat.representative(h);
            let want = (sub.normalizer().order() / sub.order()) as u64;
            ensure(t.entries[h][h] == want, || format!("{s}: diagonal at {h}"))?;
        }
        for i in 0..b.rank() {
            for j in 0..b.rank() {
                let p = b.basis(Z, i).multiply(&b.basis(Z, j)).unwrap();
                for h in 0..b.rank() {
                    let m = &b.basis(Z, i).mark(h) * &b.basis(Z, j).mark(h);
                    ensure(p.mark(h) == m, || format!("{s}: mark {h} of [{i}][{j}]"))?;
                }
            }
        }
    }
    Ok(())
}

fn residue(x: &RingElem) -> i64 {
    x.to_bigint().unwrap().try_into().unwrap()
}

fn oracles() -> Check {
    for s in MARK_GROUPS {
        let b = ring_of(s);
        for i in 0..b.rank() {
            for j in 0..b.rank() {
                let direct = b.transitive(i).product(b.transitive(j)).unwrap();
                let want = b.from_gset(Z, &direct).unwrap();
                ensure(b.basis(Z, i).multiply(&b.basis(Z, j)).unwrap() == want, || format!("{s}: [{i}][{j}]"))?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..100 {
        let m: u64 = rng.gen_range(2..=8);
        let ring = RingSpec::Modular(m);
        let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..m as i64)).collect()).collect();
        let rhs: Vec<i64> = (0..3).map(|_| rng.gen_range(0..m as i64)).collect();
        let a = Matrix::from_i64(ring, &rows).unwrap();
        let b: Vec<RingElem> = rhs.iter().map(|&v| ring.from_i64(v)).collect();
        let eval = |x: &[i64]| -> Vec<i64> {
            rows.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum::<i64>().rem_euclid(m as i64)).collect()
        };
        let all: Vec<Vec<i64>> = (0..(m * m * m) as i64)
            .map(|c| vec![c % m as i64, (c / m as i64) % m as i64, c / (m * m) as i64])
            .collect();
        let solutions: Vec<&Vec<i64>> = all.iter().filter(|x| eval(x) == rhs).collect();
        let nulls: Vec<&Vec<i64>> = all.iter().filter(|x| eval(x).iter().all(|&v| v == 0)).collect();
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Solution { particular, kernel } => {
                ensure(!solutions.is_empty(), || format!("trial {trial}: solved an unsolvable system"))?;
                let p: Vec<i64> = particular.iter().map(residue).collect();
                ensure(eval(&p) == rhs, || format!("trial {trial}: bad particular solution"))?;
                // the span of the kernel vectors is the null set
                let mut span: Vec<Vec<i64>> = vec![vec![0; 3]];
                for k in &kernel {
                    let k: Vec<i64> = k.iter().map(residue).collect();
                    let mut next = Vec::new();
                    for v in &span {
                        for t in 0..m as i64 {
                            let w: Vec<i64> = v.iter().zip(&k).map(|(x, y)| (x + t * y).rem_euclid(m as i64)).collect();
                            if !next.contains(&w) {
                                next.push(w);
                            }
                        }
                    }
                    span = next;
                }
                ensure(span.len() == nulls.len() && span.iter().all(|v| nulls.contains(&v)), || {
                    format!("trial {trial}: kernel spans {} vectors, want {}", span.len(), nulls.len())
                })?;
            }
            LinearSolution::NoSolution(cert) => {
                ensure(solutions.is_empty(), || format!("trial {trial}: missed a solution"))?;
                ensure(cert.verify(&a, &b), || format!("trial {trial}: certificate fails"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "idempotents", 10, idempotents),
        (2, "algebra separability", 60, algebra_separability),
        (3, "functor separability", 30, functor_separability_check),
        (4, "diagonal identity", 30, mackey),
        (5, "commutant", 120, commutant),
        (6, "derivations", 10, derivations),
        (7, "marks", 10, marks),
        (8, "oracle equivalence", 30, oracles),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(()) if elapsed <= Duration::from_secs(limit) => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit} s limit)"),
            Err(e) => format!("FAIL ({e})"),
        };
        if !outcome.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {n} [{name}]: {outcome} in {:.2} s", elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
