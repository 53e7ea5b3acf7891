//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{catalog, core, random_element, random_entries, random_graph, w};
use freedep::closure::{dep_subgroup, dependence_closure, is_dependence_closed, is_malnormal, is_pure};
use freedep::dependence::{
    dep_double_cosets, in_dep, in_double_coset, is_dependent, is_echelon, rank_with, wedge, PairReduction,
};
use freedep::equations::{degree_bound, equation_basis, equation_from_folding, transport, verify};
use freedep::stallings::{fold, fold_randomized, pullback};
use freedep::words::{substitute, FormalWord};
use freedep::{build_core, Alphabet, Letter, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_dep_examples() -> Outcome {
    let abc = "a b c";
    let h = core(&["abA", "b"], abc);
    let g = core(&["acA", "c"], abc);
    let dh = dep_subgroup(&h).map_err(|e| e.to_string())?;
    let dg = dep_subgroup(&g).map_err(|e| e.to_string())?;
    check(dh.canonical_form() == core(&["a", "b"], abc).canonical_form(), || "Dep<abA,b> != <a,b>".into())?;
    check(dg.canonical_form() == core(&["a", "c"], abc).canonical_form(), || "Dep<acA,c> != <a,c>".into())?;
    check(pullback(&h, &g).is_trivial(), || "H ∩ G is not trivial".into())?;
    let meet = pullback(&dh, &dg);
    check(meet.canonical_form() == core(&["a"], abc).canonical_form(), || "Dep H ∩ Dep G != <a>".into())?;
    Ok("canonical forms equal".into())
}

fn c2_three_routes() -> Outcome {
    let h = core(&["a^10", "b^10"], "a b");
    let decomp = dep_double_cosets(&h, PairReduction::Neighbor).map_err(|e| e.to_string())?;
    for (g, expected) in [("a", true), ("b", true), ("ab", false)] {
        let g = w(g);
        let rank = rank_with(&h, &g) <= h.rank();
        let coset = in_dep(&decomp, &g);
        let witness = is_dependent(&h, &g).map_err(|e| e.to_string())?.verdict;
        check(rank == expected && coset == expected && witness == expected, || {
            format!("{g}: rank {rank}, double coset {coset}, witness {witness}")
        })?;
    }
    Ok("a, b dependent; ab independent".into())
}

fn c3_closed_examples() -> Outcome {
    for gens in [["aabb"], ["abAB"]] {
        let h = core(&gens, "a b");
        let closed = is_dependence_closed(&h).map_err(|e| e.to_string())?;
        let len = dependence_closure(&h).map_err(|e| e.to_string())?.length;
        check(closed && len == 0, || format!("<{}>: closed {closed}, length {len}", gens[0]))?;
    }
    Ok("<aabb>, <abAB> closed with length 0".into())
}

fn c4_rank_drop() -> Outcome {
    let cat = catalog();
    for e in &cat {
        let d = dep_subgroup(&e.core).map_err(|e| e.to_string())?;
        check(d.rank() <= e.core.rank(), || format!("{}: rank Dep = {} > {}", e.name, d.rank(), e.core.rank()))?;
    }
    Ok(format!("{} subgroups, 0 violations", cat.len()))
}

fn c5_oracle_equivalence() -> Outcome {
    let cat = catalog();
    let mut checked = 0;
    for e in &cat {
        let decomp = dep_double_cosets(&e.core, PairReduction::Neighbor).map_err(|e| e.to_string())?;
        for g in Word::enumerate_up_to(e.core.alphabet(), 6) {
            let witness = is_dependent(&e.core, &g).map_err(|e| e.to_string())?.verdict;
            let direct = rank_with(&e.core, &g) <= e.core.rank();
            let coset = in_dep(&decomp, &g);
            check(witness == direct && coset == direct, || {
                format!("{} g={g}: witness {witness}, rank {direct}, double coset {coset}", e.name)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (H, g) pairs, 0 disagreements"))
}

fn dependent_pairs() -> Vec<(common::Entry, Vec<Word>)> {
    catalog()
        .into_iter()
        .map(|e| {
            let gs = Word::enumerate_up_to(e.core.alphabet(), 3)
                .into_iter()
                .filter(|g| is_dependent(&e.core, g).map(|wit| wit.verdict).unwrap_or(false))
                .collect();
            (e, gs)
        })
        .collect()
}

fn random_formal<R: Rng>(rng: &mut R, arity: usize, len: usize) -> FormalWord {
    let mut out = FormalWord::identity();
    for _ in 0..len {
        let sym = if arity == 0 || rng.gen_bool(0.3) {
            FormalWord::var()
        } else {
            FormalWord::gen(rng.gen_range(0..arity as u32))
        };
        out = out.mul(&if rng.gen_bool(0.5) { sym.clone() } else { sym.inverse() });
    }
    out
}

fn c6_equation_basis() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut pairs = 0;
    let mut samples = 0;
    for (e, gs) in dependent_pairs() {
        for g in gs {
            let wit = is_dependent(&e.core, &g).map_err(|e| e.to_string())?;
            let b = equation_basis(&e.core, &g).map_err(|e| e.to_string())?;
            let expected = e.core.rank() + 1 - wit.rank_with_g;
            check(b.equations.len() == expected, || {
                format!("{} g={g}: {} equations, expected {expected}", e.name, b.equations.len())
            })?;
            for f in &b.equations {
                let v = substitute(f, &b.gens, &g).map_err(|e| e.to_string())?;
                check(v.is_identity(), || format!("{} g={g}: {f} evaluates to {v}", e.name))?;
            }
            for _ in 0..200 {
                let mut sample = FormalWord::identity();
                for _ in 0..rng.gen_range(1..=3) {
                    let c = random_formal(&mut rng, b.gens.len(), 4);
                    let eq = &b.equations[rng.gen_range(0..b.equations.len())];
                    let eq = if rng.gen_bool(0.5) { eq.clone() } else { eq.inverse() };
                    sample = sample.mul(&c.mul(&eq).mul(&c.inverse()));
                }
                let v = substitute(&sample, &b.gens, &g).map_err(|e| e.to_string())?;
                check(v.is_identity(), || format!("{} g={g}: sample {sample} evaluates to {v}", e.name))?;
                samples += 1;
            }
            let s: Vec<Word> = b.reduced.iter().filter(|x| !x.is_identity()).cloned().collect();
            let rank = build_core(&s, e.core.alphabet()).rank();
            check(rank == s.len(), || format!("{} g={g}: {} survivors span rank {rank}", e.name, s.len()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} dependent pairs, {samples} normal-closure samples"))
}

fn c7_degree_bound() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let b = degree_bound(&core(&["aa"], "a b")).map_err(|e| e.to_string())?;
    check(b.bound == 2, || format!("bound for <aa> is {}", b.bound))?;
    let mut total = 0;
    for e in catalog() {
        let bound = degree_bound(&e.core).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let (rep, eq) = &bound.per_representative[rng.gen_range(0..bound.per_representative.len())];
            let h1 = random_element(&mut rng, &e.core, 3);
            let h2 = random_element(&mut rng, &e.core, 3);
            let g = h1.mul(rep).mul(&h2.inverse());
            let t = transport(eq, &e.core, &h1, &h2).map_err(|e| e.to_string())?;
            check(t.degree() <= bound.bound && verify(&t, &g), || {
                format!("{} g={g}: {t} (bound {})", e.name, bound.bound)
            })?;
            total += 1;
        }
    }
    Ok(format!("bound(<aa>) = 2; {total} transported equations verified"))
}

fn c8_folding_equations() -> Outcome {
    let mut pairs = 0;
    for (e, gs) in dependent_pairs() {
        for g in gs {
            let eq = equation_from_folding(&e.core, &g).map_err(|e| e.to_string())?;
            check(verify(&eq, &g), || format!("{} g={g}: {eq} does not verify", e.name))?;
            if e.core.contains(&g) {
                check(eq.degree() == 1, || format!("{} g={g} in H: degree {}", e.name, eq.degree()))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} dependent pairs"))
}

fn shift(g: &Word, by: u8) -> Word {
    Word::reduce(g.letters().iter().map(|l| Letter::new(l.generator() + by, l.is_inverse())))
}

fn c9_wedge() -> Outcome {
    let ab = Alphabet::standard(2);
    let cd = Alphabet::parse("c d").unwrap();
    let pairs: Vec<_> = random_entries(10, 91).into_iter().zip(random_entries(10, 92)).collect();
    for (l, r) in &pairs {
        let h1 = build_core(&l.gens, &ab);
        let h2 = build_core(&r.gens.iter().map(|g| shift(g, 2)).collect::<Vec<_>>(), &cd);
        let wg = wedge(&h1, &h2).map_err(|e| e.to_string())?;
        let wreps = dep_double_cosets(&wg, PairReduction::Neighbor).map_err(|e| e.to_string())?;
        let mut freps = dep_double_cosets(&h1, PairReduction::Neighbor).map_err(|e| e.to_string())?.representatives;
        freps.extend(dep_double_cosets(&h2, PairReduction::Neighbor).map_err(|e| e.to_string())?.representatives);
        for f in &freps {
            check(in_dep(&wreps, f), || format!("{} * {}: factor rep {f} missing", l.name, r.name))?;
        }
        for x in &wreps.representatives {
            check(freps.iter().any(|f| in_double_coset(&wg, f, x)), || {
                format!("{} * {}: wedge rep {x} not a factor double coset", l.name, r.name)
            })?;
        }
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn c10_echelon() -> Outcome {
    let mut echelon = 0;
    for e in catalog() {
        let order = e.core.alphabet().clone();
        if is_echelon(&e.core, &order).is_echelon {
            echelon += 1;
            let d = dep_subgroup(&e.core).map_err(|e| e.to_string())?;
            let r = is_echelon(&d, &order);
            check(r.is_echelon, || format!("{}: Dep H ranks {:?}", e.name, r.ranks))?;
        }
    }
    check(echelon > 0, || "no echelon catalog member".into())?;
    Ok(format!("{echelon} echelon members"))
}

fn c11_oracles() -> Outcome {
    let mut closed = 0;
    for e in catalog() {
        if is_dependence_closed(&e.core).map_err(|e| e.to_string())? {
            closed += 1;
            let p = is_pure(&e.core, 4, 4).map_err(|e| e.to_string())?;
            let m = is_malnormal(&e.core, 3).map_err(|e| e.to_string())?;
            check(p.holds && m.holds, || format!("{}: pure {p}; malnormal {m}", e.name))?;
        }
    }
    let h = core(&["aa"], "a b");
    let p = is_pure(&h, 4, 4).map_err(|e| e.to_string())?;
    let m = is_malnormal(&h, 3).map_err(|e| e.to_string())?;
    check(!p.holds && p.witness == Some(w("a")), || format!("<aa> purity: {p}"))?;
    check(!m.holds && m.witness == Some(w("a")), || format!("<aa> malnormality: {m}"))?;
    Ok(format!("{closed} closed members pass; <aa> fails with witness a"))
}

fn c12_confluence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(12);
    for i in 0..100 {
        let g = random_graph(&mut rng);
        let base = fold(&g).0.canonical_form();
        for _ in 0..5 {
            check(fold_randomized(&g, &mut rng).0.canonical_form() == base, || {
                format!("graph {i}: fold orders disagree")
            })?;
        }
    }
    Ok("100 graphs x 5 orders".into())
}

fn c13_closure_length() -> Outcome {
    let mut rng = StdRng::seed_from_u64(13);
    let alphabet = Alphabet::standard(2);
    let mut found = None;
    for _ in 0..2000 {
        let gens = common::random_gens(&mut rng, 2, 3, 8);
        let r = dependence_closure(&build_core(&gens, &alphabet)).map_err(|e| e.to_string())?;
        if r.length >= 2 {
            let names: Vec<String> = gens.iter().map(Word::to_string).collect();
            found = Some(format!("<{}> has length {}", names.join(","), r.length));
            break;
        }
    }
    let found = found.ok_or_else(|| "no subgroup of closure length >= 2 in 2000 samples".to_string())?;
    for e in catalog() {
        let r = dependence_closure(&e.core).map_err(|e| e.to_string())?;
        check(r.chain.windows(2).all(|p| p[1].rank() <= p[0].rank()), || {
            format!("{}: ranks increase along the chain", e.name)
        })?;
    }
    Ok(found)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Dep of the two-letter examples and their intersection", c1_dep_examples, 10),
        ("dependence over <a^10,b^10> by three routes", c2_three_routes, 10),
        ("<aabb> and <abAB> are dependence-closed", c3_closed_examples, 10),
        ("rank(Dep H) <= rank(H) over the catalog", c4_rank_drop, 10),
        ("oracle equivalence for |g| <= 6", c5_oracle_equivalence, 60),
        ("equation basis size and normal closure", c6_equation_basis, 10),
        ("degree bound and transported equations", c7_degree_bound, 10),
        ("equations from folding", c8_folding_equations, 10),
        ("free products", c9_wedge, 10),
        ("echelon form is preserved", c10_echelon, 10),
        ("closed subgroups are pure and malnormal", c11_oracles, 10),
        ("folding confluence", c12_confluence, 10),
        ("closure length >= 2 and non-increasing ranks", c13_closure_length, 10),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit} s"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
