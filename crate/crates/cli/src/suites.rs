//! Seeded verification suites: each re-checks the algebraic laws owned by a
//! library module against the configured field, deterministically per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewring::{
    conjugate, domain_report, eval_operator, evaluate_at, is_defined_at, metro_solve, orbit,
    product_formula_check, same_class, FieldRef, FiniteInvariantSet, MetroSolution, OrbitFunction,
    RationalError, Scalar, SkewPolynomial, SkewRationalFunction,
};

struct Check {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn pass(name: &'static str, cases: usize) -> Check {
        Check {
            name,
            cases,
            failure: None,
        }
    }

    fn fail(name: &'static str, cases: usize, detail: String) -> Check {
        Check {
            name,
            cases,
            failure: Some(detail),
        }
    }
}

pub fn run(field: &FieldRef, suite: &str, seed: u64, json: bool) -> Result<u8, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        "nearring" => nearring(field, &mut rng)?,
        "convexring" => convexring(field, &mut rng)?,
        "productformula" => productformula(field, &mut rng)?,
        "metro" => metro(field, &mut rng)?,
        "domains" => domains(field, &mut rng)?,
        "orearith" => orearith(field, &mut rng)?,
        other => {
            return Err(format!(
                "unknown suite {other:?} (expected nearring, convexring, productformula, metro, domains or orearith)"
            ))
        }
    };
    let passed = checks.iter().all(|c| c.failure.is_none());
    if json {
        let arr: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "cases": c.cases,
                    "ok": c.failure.is_none(),
                    "detail": c.failure,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({"suite": suite, "seed": seed, "passed": passed, "checks": arr})
        );
    } else {
        for c in &checks {
            match &c.failure {
                None => println!("ok: {} ({} cases)", c.name, c.cases),
                Some(d) => println!("FAIL: {} ({} cases): {d}", c.name, c.cases),
            }
        }
        println!(
            "suite {suite}: {}",
            if passed { "passed" } else { "FAILED" }
        );
    }
    Ok(if passed { 0 } else { 1 })
}

fn sample_unit(field: &FieldRef, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = Scalar::sample(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn sample_poly(field: &FieldRef, rng: &mut ChaCha8Rng, max_deg: usize) -> SkewPolynomial {
    let d = rng.gen_range(0..=max_deg);
    let coeffs = (0..=d).map(|_| Scalar::sample(field, rng)).collect();
    SkewPolynomial::from_coeffs(field, coeffs).expect("sampled over one field")
}

fn sample_nonzero_poly(field: &FieldRef, rng: &mut ChaCha8Rng, max_deg: usize) -> SkewPolynomial {
    loop {
        let p = sample_poly(field, rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn sample_rational(
    field: &FieldRef,
    rng: &mut ChaCha8Rng,
    num_deg: usize,
    den_deg: usize,
) -> SkewRationalFunction {
    SkewRationalFunction::new(
        sample_poly(field, rng, num_deg),
        sample_nonzero_poly(field, rng, den_deg),
    )
    .expect("denominator is nonzero")
}

/// Finite invariant sets reachable in this field: orbits of a few canonical
/// and sampled points. Infinite orbits are skipped, so characteristic zero
/// yields fixed-point singletons (possibly only `{0}` or `{c}`).
fn sample_sets(field: &FieldRef, rng: &mut ChaCha8Rng) -> Vec<FiniteInvariantSet> {
    let mut candidates = vec![Scalar::zero(field), Scalar::one(field)];
    if let Some(c) = field.derivation_scalar() {
        candidates.push(c);
    }
    for _ in 0..6 {
        candidates.push(Scalar::sample(field, rng));
    }
    let mut sets: Vec<FiniteInvariantSet> = Vec::new();
    for cand in candidates {
        if let Ok(s) = FiniteInvariantSet::orbit_of(&cand) {
            if !sets.contains(&s) {
                sets.push(s);
            }
        }
        if sets.len() == 3 {
            break;
        }
    }
    sets
}

fn sample_function(set: &FiniteInvariantSet, rng: &mut ChaCha8Rng) -> OrbitFunction {
    let values = set
        .points()
        .iter()
        .map(|_| Scalar::sample(set.field(), rng))
        .collect();
    OrbitFunction::from_values(set, values).expect("table matches set")
}

fn nearring(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let sets = sample_sets(field, rng);
    if sets.is_empty() {
        return Err("no finite invariant set is reachable in this field".into());
    }
    let mut unit_cases = 0;
    let mut dist_cases = 0;
    let mut assoc_cases = 0;
    let mut checks = Vec::new();
    for set in &sets {
        let one = OrbitFunction::one(set);
        for i in 0..12 {
            let f = sample_function(set, rng);
            let g = sample_function(set, rng);
            let h = sample_function(set, rng);
            let err = |law: &str| format!("set of {}, case {i}: {law}", set.points()[0]);
            if f.skew_product(&one).map_err(|e| e.to_string())? != f
                || one.skew_product(&f).map_err(|e| e.to_string())? != f
            {
                checks.push(Check::fail(
                    "constant 1 is a unit for ⋄",
                    unit_cases,
                    err("unit law"),
                ));
            }
            unit_cases += 1;
            let lhs = f
                .pointwise_add(&g)
                .and_then(|s| s.skew_product(&h))
                .map_err(|e| e.to_string())?;
            let rhs = f
                .skew_product(&h)
                .and_then(|fh| g.skew_product(&h).and_then(|gh| fh.pointwise_add(&gh)))
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                checks.push(Check::fail(
                    "right distributivity of ⋄ over +",
                    dist_cases,
                    err("right distributivity"),
                ));
            }
            dist_cases += 1;
            let lhs = f
                .skew_product(&g)
                .and_then(|fg| fg.skew_product(&h))
                .map_err(|e| e.to_string())?;
            let rhs = g
                .skew_product(&h)
                .and_then(|gh| f.skew_product(&gh))
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                checks.push(Check::fail(
                    "associativity of ⋄",
                    assoc_cases,
                    err("associativity"),
                ));
            }
            assoc_cases += 1;
        }
    }
    if checks.is_empty() {
        checks.push(Check::pass("constant 1 is a unit for ⋄", unit_cases));
        checks.push(Check::pass("right distributivity of ⋄ over +", dist_cases));
        checks.push(Check::pass("associativity of ⋄", assoc_cases));
    }
    Ok(checks)
}

fn convexring(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let sets = sample_sets(field, rng);
    if sets.is_empty() {
        return Err("no finite invariant set is reachable in this field".into());
    }
    let mut checks = Vec::new();
    let mut restriction_cases = 0;
    let mut closure_cases = 0;
    let mut leftdist_cases = 0;
    let mut inverse_cases = 0;
    let mut witness_cases = 0;
    let mut failure: Option<(&'static str, String)> = None;
    'outer: for set in &sets {
        let mut pool = vec![OrbitFunction::one(set), OrbitFunction::identity(set)];
        for _ in 0..4 {
            let p = sample_poly(field, rng, 2);
            pool.push(OrbitFunction::of_polynomial(set, &p).map_err(|e| e.to_string())?);
        }
        for f in &pool {
            restriction_cases += 1;
            if !f.is_convex() {
                failure = Some((
                    "polynomial restrictions are convex",
                    format!("restriction not convex on the set of {}", set.points()[0]),
                ));
                break 'outer;
            }
        }
        for f in &pool {
            for g in &pool {
                closure_cases += 1;
                let sum = f.pointwise_add(g).map_err(|e| e.to_string())?;
                let prod = f.skew_product(g).map_err(|e| e.to_string())?;
                if !sum.is_convex() || !prod.is_convex() {
                    failure = Some((
                        "convex functions close under + and ⋄",
                        format!("closure fails on the set of {}", set.points()[0]),
                    ));
                    break 'outer;
                }
            }
        }
        for f in pool.iter().take(3) {
            for _ in 0..4 {
                leftdist_cases += 1;
                let g = sample_function(set, rng);
                let h = sample_function(set, rng);
                let lhs = g
                    .pointwise_add(&h)
                    .and_then(|s| f.skew_product(&s))
                    .map_err(|e| e.to_string())?;
                let rhs = f
                    .skew_product(&g)
                    .and_then(|fg| f.skew_product(&h).and_then(|fh| fg.pointwise_add(&fh)))
                    .map_err(|e| e.to_string())?;
                if lhs != rhs {
                    failure = Some((
                        "convex functions distribute from the left",
                        format!("violated on the set of {}", set.points()[0]),
                    ));
                    break 'outer;
                }
            }
        }
        for f in &pool {
            if let Some(g) = f.skew_inverse() {
                inverse_cases += 1;
                let left = g.skew_product(f).map_err(|e| e.to_string())?;
                let right = f.skew_product(&g).map_err(|e| e.to_string())?;
                if !g.is_convex()
                    || left != OrbitFunction::one(set)
                    || right != OrbitFunction::one(set)
                {
                    failure = Some((
                        "skew inverses of convex functions are convex and two-sided",
                        format!("violated on the set of {}", set.points()[0]),
                    ));
                    break 'outer;
                }
            }
        }
        // Soundness of the convexity test itself: a sampled non-convex
        // function must fail left distributivity against some constant pair.
        if field.characteristic() != 0 {
            if let Some(bad) = (0..40)
                .map(|_| sample_function(set, rng))
                .find(|f| !f.is_convex())
            {
                witness_cases += 1;
                let elems = field.units().map_err(|e| e.to_string())?;
                let mut witnessed = false;
                'pairs: for a in &elems {
                    for b in &elems {
                        let ca = OrbitFunction::constant(set, a).map_err(|e| e.to_string())?;
                        let cb = OrbitFunction::constant(set, b).map_err(|e| e.to_string())?;
                        let lhs = ca
                            .pointwise_add(&cb)
                            .and_then(|s| bad.skew_product(&s))
                            .map_err(|e| e.to_string())?;
                        let rhs = bad
                            .skew_product(&ca)
                            .and_then(|x| bad.skew_product(&cb).and_then(|y| x.pointwise_add(&y)))
                            .map_err(|e| e.to_string())?;
                        if lhs != rhs {
                            witnessed = true;
                            break 'pairs;
                        }
                    }
                }
                if !witnessed {
                    failure = Some((
                        "non-convex functions violate left distributivity",
                        format!("no witness pair on the set of {}", set.points()[0]),
                    ));
                    break 'outer;
                }
            }
        }
    }
    if let Some((name, detail)) = failure {
        checks.push(Check::fail(name, 0, detail));
        return Ok(checks);
    }
    checks.push(Check::pass(
        "polynomial restrictions are convex",
        restriction_cases,
    ));
    checks.push(Check::pass(
        "convex functions close under + and ⋄",
        closure_cases,
    ));
    checks.push(Check::pass(
        "convex functions distribute from the left",
        leftdist_cases,
    ));
    checks.push(Check::pass(
        "skew inverses of convex functions are convex and two-sided",
        inverse_cases,
    ));
    checks.push(Check::pass(
        "non-convex functions violate left distributivity",
        witness_cases,
    ));
    Ok(checks)
}

fn productformula(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let mut formula_cases = 0;
    for i in 0..40 {
        let f = sample_rational(field, rng, 2, 1);
        let g = sample_rational(field, rng, 2, 1);
        let x = Scalar::sample(field, rng);
        if !product_formula_check(&f, &g, &x).map_err(|e| e.to_string())? {
            checks.push(Check::fail(
                "product formula (fg)(x) = f(^{g(x)} x)·g(x)",
                formula_cases,
                format!("case {i} at x = {x}"),
            ));
            return Ok(checks);
        }
        formula_cases += 1;
    }
    checks.push(Check::pass(
        "product formula (fg)(x) = f(^{g(x)} x)·g(x)",
        formula_cases,
    ));

    let mut lambda_cases = 0;
    for i in 0..20 {
        let p = sample_poly(field, rng, 2);
        let a = Scalar::sample(field, rng);
        let y = sample_unit(field, rng);
        let op = eval_operator(&p, &a).map_err(|e| e.to_string())?;
        let expected = &p.eval(&conjugate(&a, &y).map_err(|e| e.to_string())?) * &y;
        if op.apply(&y) != expected {
            checks.push(Check::fail(
                "λ-identity P(T_a)(y) = P(^y a)·y",
                lambda_cases,
                format!("case {i} at a = {a}, y = {y}"),
            ));
            return Ok(checks);
        }
        lambda_cases += 1;
    }
    checks.push(Check::pass(
        "λ-identity P(T_a)(y) = P(^y a)·y",
        lambda_cases,
    ));

    if field.characteristic() != 0 {
        let sets = sample_sets(field, rng);
        let mut shadow_cases = 0;
        for set in sets.iter().take(2) {
            for i in 0..6 {
                let p = sample_poly(field, rng, 2);
                let q = sample_poly(field, rng, 2);
                let fp = OrbitFunction::of_polynomial(set, &p).map_err(|e| e.to_string())?;
                let fq = OrbitFunction::of_polynomial(set, &q).map_err(|e| e.to_string())?;
                let fpq =
                    OrbitFunction::of_polynomial(set, &(&p * &q)).map_err(|e| e.to_string())?;
                if fp.skew_product(&fq).map_err(|e| e.to_string())? != fpq {
                    checks.push(Check::fail(
                        "restriction turns · into ⋄",
                        shadow_cases,
                        format!("case {i} on the set of {}", set.points()[0]),
                    ));
                    return Ok(checks);
                }
                shadow_cases += 1;
            }
        }
        checks.push(Check::pass("restriction turns · into ⋄", shadow_cases));
    }
    Ok(checks)
}

fn metro(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let one = Scalar::one(field);
    let mut solve_cases = 0;
    for i in 0..30 {
        let b = Scalar::sample(field, rng);
        let c = Scalar::sample(field, rng);
        match metro_solve(&b, &c).map_err(|e| e.to_string())? {
            MetroSolution::Unique(x) | MetroSolution::NonUnique(x) => {
                let residue = &(&(&x.sigma() * &c) + &x.delta()) - &(&b * &x);
                if residue != one {
                    checks.push(Check::fail(
                        "metro solutions satisfy σ(x)c + δ(x) − bx = 1",
                        solve_cases,
                        format!("case {i}: b = {b}, c = {c}"),
                    ));
                    return Ok(checks);
                }
            }
            MetroSolution::NoSolution => {}
        }
        solve_cases += 1;
    }
    checks.push(Check::pass(
        "metro solutions satisfy σ(x)c + δ(x) − bx = 1",
        solve_cases,
    ));

    let mut link_cases = 0;
    for i in 0..20 {
        let b = Scalar::sample(field, rng);
        let a = Scalar::sample(field, rng);
        let den = SkewPolynomial::from_coeffs(field, vec![-&b, one.clone()])
            .map_err(|e| e.to_string())?;
        let f = SkewRationalFunction::new(SkewPolynomial::one(field), den)
            .map_err(|e| e.to_string())?;
        if is_defined_at(&f, &a).map_err(|e| e.to_string())? {
            let x = evaluate_at(&f, &a).map_err(|e| e.to_string())?;
            let residue = &(&(&x.sigma() * &a) + &x.delta()) - &(&b * &x);
            if residue != one {
                checks.push(Check::fail(
                    "(T−b)⁻¹ values solve the metro equation with c = a",
                    link_cases,
                    format!("case {i}: b = {b}, a = {a}"),
                ));
                return Ok(checks);
            }
        } else if (field.characteristic() != 0 || !field.has_derivation())
            && !same_class(&a, &b).map_err(|e| e.to_string())?
        {
            checks.push(Check::fail(
                "(T−b)⁻¹ is undefined only on the class of b",
                link_cases,
                format!("case {i}: b = {b}, a = {a}"),
            ));
            return Ok(checks);
        }
        link_cases += 1;
    }
    checks.push(Check::pass(
        "(T−b)⁻¹ values solve the metro equation with c = a",
        link_cases,
    ));
    Ok(checks)
}

fn domains(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let mut report_cases = 0;
    let mut exhaustive_cases = 0;
    for i in 0..8 {
        let f = sample_rational(field, rng, 2, 2);
        let report = match domain_report(&f) {
            Ok(r) => r,
            Err(RationalError::Unsupported(_)) if field.characteristic() == 0 => continue,
            Err(e) => return Err(e.to_string()),
        };
        for class in &report.undefined_classes {
            report_cases += 1;
            if is_defined_at(&f, &class.representative).map_err(|e| e.to_string())? {
                checks.push(Check::fail(
                    "reported classes are genuinely undefined",
                    report_cases,
                    format!("case {i}: rep {}", class.representative),
                ));
                return Ok(checks);
            }
        }
        if field.characteristic() != 0 {
            if !report.complete {
                checks.push(Check::fail(
                    "finite-field reports are exhaustive",
                    exhaustive_cases,
                    format!("case {i}: report not marked complete"),
                ));
                return Ok(checks);
            }
            let mut excluded = std::collections::BTreeSet::new();
            for class in &report.undefined_classes {
                for e in orbit(&class.representative).map_err(|e| e.to_string())? {
                    excluded.insert(e);
                }
            }
            for e in field.elements().map_err(|e| e.to_string())? {
                exhaustive_cases += 1;
                let defined = is_defined_at(&f, &e).map_err(|e| e.to_string())?;
                if defined != !excluded.contains(&e) {
                    checks.push(Check::fail(
                        "finite-field reports are exhaustive",
                        exhaustive_cases,
                        format!("case {i}: element {e}"),
                    ));
                    return Ok(checks);
                }
            }
        }
    }
    checks.push(Check::pass(
        "reported classes are genuinely undefined",
        report_cases,
    ));
    if field.characteristic() != 0 {
        checks.push(Check::pass(
            "finite-field reports are exhaustive",
            exhaustive_cases,
        ));
    }

    let mut invariance_cases = 0;
    for i in 0..15 {
        let f = sample_rational(field, rng, 2, 2);
        let a = Scalar::sample(field, rng);
        let b = sample_unit(field, rng);
        let conj = conjugate(&a, &b).map_err(|e| e.to_string())?;
        let lhs = is_defined_at(&f, &a).map_err(|e| e.to_string())?;
        let rhs = is_defined_at(&f, &conj).map_err(|e| e.to_string())?;
        if lhs != rhs {
            checks.push(Check::fail(
                "definedness is constant on conjugacy classes",
                invariance_cases,
                format!("case {i}: a = {a}, b = {b}"),
            ));
            return Ok(checks);
        }
        invariance_cases += 1;
    }
    checks.push(Check::pass(
        "definedness is constant on conjugacy classes",
        invariance_cases,
    ));
    Ok(checks)
}

fn orearith(field: &FieldRef, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let mut ring_cases = 0;
    for i in 0..20 {
        let p = sample_poly(field, rng, 3);
        let q = sample_poly(field, rng, 3);
        let r = sample_poly(field, rng, 2);
        let c = Scalar::sample(field, rng);
        let commutation = &SkewPolynomial::var(field) * &SkewPolynomial::constant(c.clone());
        let expected = SkewPolynomial::from_coeffs(field, vec![c.delta(), c.sigma()])
            .map_err(|e| e.to_string())?;
        let ok = &(&p * &q) * &r == &p * &(&q * &r)
            && &p * &(&q + &r) == &(&p * &q) + &(&p * &r)
            && &(&q + &r) * &p == &(&q * &p) + &(&r * &p)
            && commutation == expected;
        if !ok {
            checks.push(Check::fail(
                "skew polynomial ring laws",
                ring_cases,
                format!("case {i}"),
            ));
            return Ok(checks);
        }
        ring_cases += 1;
    }
    checks.push(Check::pass("skew polynomial ring laws", ring_cases));

    let mut division_cases = 0;
    for i in 0..15 {
        let p = sample_poly(field, rng, 4);
        let d = sample_nonzero_poly(field, rng, 2);
        let (q, r) = p.right_divide(&d).map_err(|e| e.to_string())?;
        let right_ok = &(&q * &d) + &r == p && (r.is_zero() || r.degree() < d.degree());
        let (q, r) = p.left_divide(&d).map_err(|e| e.to_string())?;
        let left_ok = &(&d * &q) + &r == p && (r.is_zero() || r.degree() < d.degree());
        if !right_ok || !left_ok {
            checks.push(Check::fail(
                "Euclidean division identities",
                division_cases,
                format!("case {i}"),
            ));
            return Ok(checks);
        }
        division_cases += 1;
    }
    checks.push(Check::pass("Euclidean division identities", division_cases));

    let mut gcd_cases = 0;
    for i in 0..15 {
        let p = sample_nonzero_poly(field, rng, 3);
        let q = sample_nonzero_poly(field, rng, 3);
        let g = p.gcrd(&q);
        let (l, u, v) = p.llcm_with_cofactors(&q);
        let (g2, s, t) = p.xgcrd(&q);
        let ok = g.degree().unwrap() + l.degree().unwrap()
            == p.degree().unwrap() + q.degree().unwrap()
            && &u * &p == l
            && &v * &q == l
            && g2 == g
            && &(&s * &p) + &(&t * &q) == g
            && p.right_divide(&g).map_err(|e| e.to_string())?.1.is_zero()
            && q.right_divide(&g).map_err(|e| e.to_string())?.1.is_zero();
        if !ok {
            checks.push(Check::fail(
                "gcrd/llcm duality and certificates",
                gcd_cases,
                format!("case {i}"),
            ));
            return Ok(checks);
        }
        gcd_cases += 1;
    }
    checks.push(Check::pass("gcrd/llcm duality and certificates", gcd_cases));

    let mut field_cases = 0;
    for i in 0..10 {
        let f = sample_rational(field, rng, 2, 1);
        let g = sample_rational(field, rng, 2, 1);
        let mut ok = f
            .checked_add(&g)
            .and_then(|s| s.checked_sub(&g))
            .map_err(|e| e.to_string())?
            == f;
        if !f.is_zero() {
            let inv = f.inv().map_err(|e| e.to_string())?;
            ok &=
                f.checked_mul(&inv).map_err(|e| e.to_string())? == SkewRationalFunction::one(field);
        }
        let a = Scalar::sample(field, rng);
        let sum = f.checked_add(&g).map_err(|e| e.to_string())?;
        if is_defined_at(&f, &a).map_err(|e| e.to_string())?
            && is_defined_at(&g, &a).map_err(|e| e.to_string())?
            && is_defined_at(&sum, &a).map_err(|e| e.to_string())?
        {
            ok &= evaluate_at(&sum, &a).map_err(|e| e.to_string())?
                == &evaluate_at(&f, &a).map_err(|e| e.to_string())?
                    + &evaluate_at(&g, &a).map_err(|e| e.to_string())?;
        }
        if !ok {
            checks.push(Check::fail(
                "rational field operations",
                field_cases,
                format!("case {i}"),
            ));
            return Ok(checks);
        }
        field_cases += 1;
    }
    checks.push(Check::pass("rational field operations", field_cases));
    Ok(checks)
}
