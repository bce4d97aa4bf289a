//! End-to-end acceptance run: one line per criterion, exit status 1 if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use bialgebroid::algebra::Side;
use bialgebroid::bialgebroid::kron;
use bialgebroid::comodule::{check_comodule, verify_comodule_translation, Comodule};
use bialgebroid::dual::check_s_maps;
use bialgebroid::frobenius::{frobenius_conditions, frobenius_system, verify_system, Extension};
use bialgebroid::hopf_module::{
    base_regular, build_u_lower_star_hopf_module, delta_comparison, fundamental_ll, fundamental_rl, l_l_type1, r_l_type1,
};
use bialgebroid::integral::{integral_invariance_check, is_left_integral, left_integrals, separability_check};
use bialgebroid::lie_rinehart::{jet_integral, rank_one, rank_two, restricted_enveloping};
use bialgebroid::matrix::{add_vec, sub_vec, Vector};
use bialgebroid::report::Status;
use bialgebroid::LeftBialgebroid;
use common::{augmentation, base_module, fixtures, fp, lie_rinehart};

const PER_JET_FIXTURE: Duration = Duration::from_secs(10);
const TOTAL_BUDGET: Duration = Duration::from_secs(120);

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn hopf_both(b: &LeftBialgebroid) -> bool {
    b.is_left_hopf() && b.is_right_hopf()
}

fn jet_integrals() -> Verdict {
    let mut worst = Duration::ZERO;
    for p in [2, 3] {
        for (n, l) in [(1, rank_one(p).unwrap()), (2, rank_two(p).unwrap())] {
            let start = Instant::now();
            let ji = jet_integral(&l).map_err(|e| e.to_string())?;
            let took = start.elapsed();
            worst = worst.max(took);
            expect(ji.verified, || format!("p={p} n={n}: ω is not a left integral"))?;
            expect(ji.rank_one, || format!("p={p} n={n}: integrals not free of rank one on ω (dim {})", ji.integrals.dim()))?;
            expect(took < PER_JET_FIXTURE, || format!("p={p} n={n}: took {took:?}"))?;
        }
    }
    Ok(format!("4 jet fixtures, slowest {:.2}s", worst.as_secs_f64()))
}

fn translation_closed_forms() -> Verdict {
    let mut checked = 0;
    for (name, l) in lie_rinehart() {
        let b = restricted_enveloping(&l).unwrap();
        let dl = &b.spaces().unwrap().dl;
        let da = l.base.dim();
        let one = b.one();
        for i in 0..l.rank {
            let mut alpha = vec![0; l.rank];
            alpha[i] = 1;
            let m = l.mono_index(&alpha);
            for c in 0..da {
                let d = b.basis(m * da + c);
                let want = dl.project(&sub_vec(&kron(&d, &one), &kron(&one, &d)));
                let got = b.translate_left(&d).map_err(|e| format!("{name}: {e}"))?;
                expect(got == want, || format!("{name}: generator {c}·e{} does not translate to D⊗1 − 1⊗D", i + 1))?;
                checked += 1;
            }
        }
        for a in 0..da {
            for c in 0..da {
                let (sa, tb) = (b.s(&b.base().basis(a)), b.t(&b.base().basis(c)));
                let got = b.translate_left(&b.mul(&sa, &tb)).map_err(|e| format!("{name}: {e}"))?;
                let want = dl.project(&kron(&sa, &b.s(&b.base().basis(c))));
                expect(got == want, || format!("{name}: s(b{a})t(b{c}) does not translate to s(a)⊗s(b)"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} closed forms on {} Lie–Rinehart fixtures", lie_rinehart().len()))
}

fn identity_suites(all: &[(String, LeftBialgebroid)]) -> Verdict {
    let mut suites = 0;
    for (name, b) in all.iter().filter(|(_, b)| hopf_both(b)) {
        let r = b.verify_translation_identities();
        let passed = r.items.iter().filter(|i| i.status == Status::Pass).count();
        expect(passed == 18 && r.passed(), || format!("{name}: {passed}/18 pass\n{}", r.to_text()))?;
        suites += 1;
    }
    let mut comodules = 0;
    for (name, b) in all.iter().filter(|(_, b)| hopf_both(b)) {
        let mut cs = vec![Comodule::regular(b, Side::Left), Comodule::regular(b, Side::Right)];
        cs.push(Comodule::trivial(b, base_regular(b, Side::Left)));
        cs.push(Comodule::trivial(b, base_regular(b, Side::Right)));
        for c in cs.iter().filter(|c| check_comodule(b, c).passed()) {
            let r = verify_comodule_translation(b, c).map_err(|e| format!("{name}: {e}"))?;
            let passed = r.items.iter().filter(|i| i.status == Status::Pass).count();
            expect(passed == 7 && r.passed(), || format!("{name}: comodule suite {passed}/7\n{}", r.to_text()))?;
            comodules += 1;
        }
    }
    Ok(format!("18 identities on {suites} fixtures; 7 comodule identities (numbered 1–8, no 4) on {comodules} comodules"))
}

fn s_map_inversion(all: &[(String, LeftBialgebroid)]) -> Verdict {
    let mut n = 0;
    for (name, b) in all.iter().filter(|(_, b)| hopf_both(b)) {
        let r = check_s_maps(b).map_err(|e| format!("{name}: {e}"))?;
        let inverse = r.status("s_maps.inverse") == Some(Status::Pass);
        expect(inverse && r.passed(), || format!("{name}:\n{}", r.to_text()))?;
        n += 1;
    }
    Ok(format!("S^*S_* = S_*S^* = id on {n} fixtures"))
}

fn maschke(all: &[(String, LeftBialgebroid)]) -> Verdict {
    for (name, b) in all {
        let sep = separability_check(b).map_err(|e| format!("{name}: {e}"))?;
        expect(sep.consistent(), || format!("{name}: {}", sep.reason()))?;
    }
    let z2 = bialgebroid::fixtures::group_z2(3).unwrap();
    let sep = separability_check(&z2).unwrap();
    let f = fp(3);
    let want: Vector = vec![f.from_i64(2), f.from_i64(2)];
    expect(sep.separable() && sep.normalized_integral.as_deref() == Some(&want[..]), || "F_3[Z/2]: expected normalized integral 2+2g".into())?;
    let dn = separability_check(&bialgebroid::fixtures::dual_numbers()).unwrap();
    expect(!dn.separable() && dn.normalized_integral.is_none(), || "F_2[X]/(X²) should not be separable".into())?;
    Ok(format!("consistent on {} fixtures; F_3[Z/2] separable with 2+2g; F_2[X]/(X²) not separable", all.len()))
}

fn fundamental(all: &[(String, LeftBialgebroid)]) -> Verdict {
    let (mut rl, mut ll, mut lower, mut deltas) = (0, 0, 0, 0);
    for (name, b) in all {
        let err = |e: bialgebroid::Error| format!("{name}: {e}");
        if b.is_left_hopf() {
            let d = delta_comparison(b, &base_module(b)).map_err(err)?;
            expect(d.iso && d.morphism, || format!("{name}: δ_N is not an isomorphism of Hopf modules"))?;
            deltas += 1;
        }
        if !hopf_both(b) {
            continue;
        }
        let mut left_mods = vec![base_regular(b, Side::Left)];
        left_mods.extend(augmentation(b, Side::Left));
        for n in &left_mods {
            let t = r_l_type1(b, n).map_err(err)?;
            let fr = fundamental_rl(b, &t.module).map_err(err)?;
            expect(fr.verified, || format!("{name}: γ∘η or η∘γ is not the identity"))?;
            rl += 1;
        }
        let mut right_mods = vec![base_regular(b, Side::Right)];
        right_mods.extend(augmentation(b, Side::Right));
        for p in &right_mods {
            let t = l_l_type1(b, p).map_err(err)?;
            let fl = fundamental_ll(b, &t.module).map_err(err)?;
            expect(fl.iso, || format!("{name}: ▶U ⊗ P^cov → P is not bijective"))?;
            ll += 1;
        }
        let (_, m) = build_u_lower_star_hopf_module(b).map_err(err)?;
        let fl = fundamental_ll(b, &m).map_err(err)?;
        expect(fl.iso, || format!("{name}: the structure map for U_* is not bijective"))?;
        lower += 1;
    }
    Ok(format!("{rl} right-left round trips, {ll} left-left tensor isos, {lower} U_* isos, {deltas} δ_N isos"))
}

fn frobenius(all: &[(String, LeftBialgebroid)]) -> Verdict {
    let mut n = 0;
    for (name, b) in all.iter().filter(|(n, _)| n.starts_with("rank1") || n.starts_with("rank2")) {
        for ext in [Extension::ViaS, Extension::ViaT] {
            let sys = frobenius_system(b, ext).map_err(|e| e.to_string())?.ok_or_else(|| format!("{name}: no system for {ext:?}"))?;
            let c = if ext == Extension::ViaS { b.clone() } else { b.coop() };
            expect(verify_system(&c, &sys.theta, &sys.tensor).passed(), || format!("{name}: {ext:?} system fails verification"))?;
            expect(sys.t0_generates, || format!("{name}: t₀ does not span the left integrals"))?;
        }
        let conds = frobenius_conditions(b).map_err(|e| e.to_string())?;
        expect(conds.all_hold() && conds.consistent == Some(true), || format!("{name}:\n{}", conds.to_text()))?;
        n += 1;
    }
    let b = bialgebroid::fixtures::dual_numbers();
    let f = b.field();
    let sys = frobenius_system(&b, Extension::ViaS).unwrap().ok_or("F_2[X]/(X²): no system")?;
    let x_star = sys.theta.row(0) == [f.zero(), f.one()];
    let tensor = add_vec(&kron(&b.one(), &b.basis(1)), &kron(&b.basis(1), &b.one()));
    expect(x_star && sys.tensor == tensor, || "F_2[X]/(X²): expected θ = X*, X⊗1 + 1⊗X".into())?;
    Ok(format!("systems for s and t and all 12 conditions on {n} enveloping fixtures; θ = X*, X⊗1 + 1⊗X on F_2[X]/(X²)"))
}

fn probes(b: &LeftBialgebroid, basis: &[Vector]) -> Vec<Vector> {
    let n = b.dim();
    let mut out: Vec<Vector> = (0..n).map(|i| b.basis(i)).collect();
    out.extend(basis.iter().cloned());
    for l in basis {
        for i in 0..n {
            out.push(add_vec(l, &b.basis(i)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(add_vec(&b.basis(i), &b.basis(j)));
        }
    }
    out
}

fn oracle_cross_check(all: &[(String, LeftBialgebroid)]) -> Verdict {
    let (mut fixtures_seen, mut probed) = (0, 0);
    for (name, b) in all.iter().filter(|(_, b)| b.is_right_hopf()) {
        let ints = left_integrals(b).map_err(|e| format!("{name}: {e}"))?;
        for v in probes(b, &ints.basis) {
            let kernel = ints.contains(&v);
            let invariant = integral_invariance_check(b, &v).map_err(|e| format!("{name}: {e}"))?.is_none();
            expect(kernel == invariant && kernel == is_left_integral(b, &v), || format!("{name}: membership disagrees on a probe"))?;
            probed += 1;
        }
        fixtures_seen += 1;
    }
    Ok(format!("{probed} probes on {fixtures_seen} right Hopf fixtures"))
}

fn main() {
    let start = Instant::now();
    let all = fixtures();
    let criteria: Vec<Criterion<'_>> = vec![
        ("jet integral is free of rank one on λ₁^{p−1}…λₙ^{p−1}", Box::new(jet_integrals)),
        ("translation closed forms on generators and s(a)t(b)", Box::new(translation_closed_forms)),
        ("translation identity suites", Box::new(|| identity_suites(&all))),
        ("S^* and S_* are inverse algebra maps", Box::new(|| s_map_inversion(&all))),
        ("separable iff normalized integral", Box::new(|| maschke(&all))),
        ("fundamental theorems and δ_N", Box::new(|| fundamental(&all))),
        ("Frobenius systems and conditions", Box::new(|| frobenius(&all))),
        ("integral kernel agrees with invariance", Box::new(|| oracle_cross_check(&all))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {} PASS  {name} [{detail}] ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} [{why}] ({secs:.2}s)", k + 1);
            }
        }
    }
    let total = start.elapsed();
    if total < TOTAL_BUDGET {
        println!("criterion 9 PASS  everything within {}s [{:.2}s]", TOTAL_BUDGET.as_secs(), total.as_secs_f64());
    } else {
        failed += 1;
        println!("criterion 9 FAIL  everything within {}s [{:.2}s]", TOTAL_BUDGET.as_secs(), total.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
