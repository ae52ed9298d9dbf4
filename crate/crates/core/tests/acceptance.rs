//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclat::cyclic::{
    chan_preconditioner, circulant_det_exact, cyclic_census, det_via_roots, ideal_to_lattice, is_cyclic,
    rotate, rotation_escape, rotation_matrix, simple_cyclic_search, CirculantMatrix, RnIdeal, RnPoly,
    SimpleStatus,
};
use cyclat::heights::{
    alpha_max, count_wr_classes, enumerate_s_k_with_heights, lemma_bound, thm_bound, weil_height,
    weil_height_quadratic_pathway, FieldDescriptor,
};
use cyclat::lattice::is_weakly_nearly_orthogonal;
use cyclat::numberfield::{is_circulant, lambda_k_report, trace_gram, FieldSpec};
use cyclat::planar::{canonical_x, cyclic_approximation, lagrange_reduce, m_lattice};
use cyclat::poly::{cyclotomic, divisors};
use cyclat::roots::{build, e_witness, report_row, seeds, Family, RootLatticeId, REPORT_BOUND};
use cyclat::{hnf, ExactMatrix, IntMatrix, Lattice, Scalar};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Check {
    ensure!(elapsed <= limit, "{what} took {elapsed:?}, limit {limit:?}");
    Ok(())
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let z2 = canonical_x(&Lattice::standard(2)).map_err(|e| e.to_string())?;
    ensure!(z2.x == Scalar::zero(), "x(Z^2) = {}", z2.x);
    let hex = Lattice::from_columns(vec![vec![s("1"), s("0")], vec![s("1/2"), s("0+1/2*sqrt(3)")]]).unwrap();
    let xh = canonical_x(&hex).unwrap().x;
    ensure!(xh == s("2-1*sqrt(3)"), "x(hexagonal) = {xh}");
    let r5 = Lattice::from_columns(vec![vec![s("1"), s("0")], vec![s("0+1/5*sqrt(5)"), s("0+2/5*sqrt(5)")]]).unwrap();
    let x5 = canonical_x(&r5).unwrap().x;
    ensure!(x5 == s("-2+1*sqrt(5)"), "x(sqrt 5 lattice) = {x5}");
    within(t.elapsed(), Duration::from_secs(1), "criterion 1")
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut u = IntMatrix::identity(2);
    for _ in 0..rng.gen_range(1..5) {
        let k = rng.gen_range(-3i64..=3);
        let e = if rng.gen_bool(0.5) {
            IntMatrix::from_rows(&[vec![1, k], vec![0, 1]])
        } else {
            IntMatrix::from_rows(&[vec![1, 0], vec![k, 1]])
        };
        u = u.mul(&e);
    }
    if rng.gen_bool(0.3) {
        u = u.mul(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }
    u
}

/// A random rational similarity: scaled rotation from a Pythagorean triple, possibly reflected.
fn random_similarity(rng: &mut ChaCha8Rng) -> ExactMatrix {
    let (u, v) = loop {
        let u = rng.gen_range(0i64..8);
        let v = rng.gen_range(0i64..8);
        if u != 0 || v != 0 {
            break (u, v);
        }
    };
    let n = u * u + v * v;
    let c = Scalar::ratio(u * u - v * v, n);
    let sn = Scalar::ratio(2 * u * v, n);
    let mut r = ExactMatrix::from_rows(vec![vec![c.clone(), -&sn], vec![sn, c]]).unwrap();
    if rng.gen_bool(0.5) {
        r = ExactMatrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]).mul(&r);
    }
    r.scale(&Scalar::ratio(rng.gen_range(1..=12), rng.gen_range(1..=12)))
}

fn criterion_2() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let alpha = alpha_max();
    for i in 0..1000 {
        let x = loop {
            let q = rng.gen_range(1i64..=60);
            let p = rng.gen_range(0i64..=q);
            let x = Scalar::ratio(p, q);
            if x <= alpha {
                break x;
            }
        };
        let base = m_lattice(&x).unwrap();
        let l = base.transform(&random_similarity(&mut rng)).unwrap().rebased(&random_unimodular(&mut rng)).unwrap();
        let got = canonical_x(&l).map_err(|e| format!("sample {i}: {e}"))?.x;
        ensure!(got == x, "sample {i}: canonical x {got}, expected {x}");
        ensure!(got.signum() >= 0 && got <= alpha, "sample {i}: x out of range");
        let reduced = lagrange_reduce(&l).unwrap();
        let p = cyclic_approximation(reduced.basis()).unwrap();
        let xp = canonical_x(&p).map_err(|e| format!("sample {i}: P_A(L): {e}"))?.x;
        ensure!(xp == x, "sample {i}: x(P_A(L)) = {xp}, x(L) = {x}");
        ensure!(l.semistable_rank2().unwrap(), "sample {i}: not semistable");
        ensure!(is_weakly_nearly_orthogonal(reduced.basis()).unwrap(), "sample {i}: minimal basis not weakly nearly orthogonal");
    }
    within(t.elapsed(), Duration::from_secs(60), "criterion 2")
}

/// `#{p/q : gcd = 1, 0 <= p/q <= 2 - sqrt 3, max(p, q) <= T}` by a direct double loop.
fn rational_oracle(t: i64) -> usize {
    let mut n = 0;
    for q in 1..=t {
        for p in 0..=t.min(q) {
            // p <= (2 - sqrt 3) q  <=>  (2q - p)^2 >= 3 q^2
            if p.gcd(&q) == 1 && (2 * q - p) * (2 * q - p) >= 3 * q * q {
                n += 1;
            }
        }
    }
    n
}

fn criterion_3() -> Check {
    let t0 = Instant::now();
    for t in 1..=50 {
        let c = count_wr_classes(FieldDescriptor::Rationals, &rat(t)).map_err(|e| e.to_string())?;
        let oracle = rational_oracle(t);
        ensure!(c.count == oracle, "T={t}: count {} vs oracle {oracle}", c.count);
        ensure!(rat(c.count as i64) <= thm_bound(1, &rat(t)).hi, "T={t}: count above bound");
    }
    let q2 = FieldDescriptor::quadratic(2).unwrap();
    for t in 1..=3 {
        let c = count_wr_classes(q2, &rat(t)).map_err(|e| e.to_string())?;
        ensure!(rat(c.count as i64) <= thm_bound(2, &rat(t)).hi, "quad:2 T={t}: count {} above bound", c.count);
    }
    let alpha = alpha_max();
    for k in [FieldDescriptor::Rationals, q2, FieldDescriptor::quadratic(5).unwrap()] {
        let all = enumerate_s_k_with_heights(k, &alpha, &rat(10), false).map_err(|e| e.to_string())?;
        for t in 1..=10 {
            let t2 = Scalar::int(t * t);
            let n = all.iter().filter(|(_, h2)| *h2 <= t2).count();
            let bound = lemma_bound(k.degree(), &rat(t), &alpha);
            ensure!(rat(n as i64) <= bound.hi, "{k} T={t}: |S_K| = {n} above bound");
            if t <= 2 {
                let direct = enumerate_s_k_with_heights(k, &alpha, &rat(t), false).unwrap();
                ensure!(direct.len() == n, "{k} T={t}: direct enumeration disagrees");
            }
        }
    }
    within(t0.elapsed(), Duration::from_secs(300), "criterion 3")
}

fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

fn criterion_4() -> Check {
    let t = Instant::now();
    let h = weil_height(&s("2-1*sqrt(3)"));
    ensure!(h.squared == s("2+1*sqrt(3)"), "h(2-sqrt 3)^2 = {}", h.squared);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let radicands = [2i64, 3, 5, 6, 7, 10, 11, 13];
    for i in 0..100 {
        let a = random_rational(&mut rng, 9, 6);
        let b = loop {
            let b = random_rational(&mut rng, 9, 6);
            if !b.is_zero() {
                break b;
            }
        };
        let d = radicands[rng.gen_range(0..radicands.len())];
        let x = Scalar::surd(a, b, d).unwrap();
        let hx = weil_height(&x).squared;
        ensure!(weil_height(&x.recip()).squared == hx, "sample {i}: h(1/x) != h(x) for x = {x}");
        ensure!(weil_height(&-&x).squared == hx, "sample {i}: h(-x) != h(x) for x = {x}");
    }
    for _ in 0..100 {
        let r = random_rational(&mut rng, 50, 50);
        let direct = weil_height(&Scalar::from(r.clone()));
        let via = weil_height_quadratic_pathway(&r);
        ensure!(direct.squared == via.squared && direct.exact() == via.exact(), "pathways disagree at {r}");
    }
    within(t.elapsed(), Duration::from_secs(10), "criterion 4")
}

fn criterion_5() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<(Vec<BigInt>, bool)> = Vec::new();
    for _ in 0..400 {
        let n = rng.gen_range(1..=8);
        cases.push(((0..n).map(|_| BigInt::from(rng.gen_range(-10i64..=10))).collect(), false));
    }
    // c(x) = x^k Phi_d(x) m(x) with d | n vanishes at a primitive d-th root of unity
    while cases.len() < 500 {
        let n = rng.gen_range(2..=8usize);
        let ds = divisors(n as u64);
        let d = ds[rng.gen_range(0..ds.len())];
        let phi = cyclotomic(d);
        let mut c = vec![BigInt::zero(); n];
        let m: Vec<i64> = (0..=n - phi.len()).map(|_| rng.gen_range(-2..=2)).collect();
        let shift = rng.gen_range(0..n);
        for (i, pi) in phi.iter().enumerate() {
            for (j, &mj) in m.iter().enumerate() {
                c[(i + j + shift) % n] += pi * mj;
            }
        }
        cases.push((c, true));
    }
    for (c, singular) in &cases {
        let exact = rotation_matrix(c).det().unwrap();
        let via = det_via_roots(c).map_err(|e| format!("{c:?}: {e}"))?;
        ensure!(via == exact, "c = {c:?}: via roots {via}, exact {exact}");
        ensure!(circulant_det_exact(c) == exact, "c = {c:?}: circulant_det_exact disagrees");
        ensure!(!singular || exact.is_zero(), "c = {c:?} should be singular");
    }
    within(t.elapsed(), Duration::from_secs(30), "criterion 5")
}

fn id(family: Family, n: usize, dual: bool) -> RootLatticeId {
    RootLatticeId::new(family, n, dual).unwrap()
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

fn criterion_6() -> Check {
    let t = Instant::now();
    let bound = Scalar::int(REPORT_BOUND);
    for n in 2..=8usize {
        for dual in [false, true] {
            let a = report_row(id(Family::A, n, dual), &bound).map_err(|e| e.to_string())?;
            ensure!(a.is_cyclic, "A{n} dual={dual} not cyclic");
            let cert = a.status.certificate().ok_or(format!("A{n} dual={dual}: no certificate"))?;
            if !dual {
                let mut e = vec![0i64; n + 1];
                e[0] = 1;
                e[1] = -1;
                ensure!(cert.generator == ints(&e), "A{n}: certificate {:?}", cert.generator);
                ensure!(a.kissing == n * (n + 1), "A{n}: kissing {}", a.kissing);
            }
            let d = report_row(id(Family::D, n, dual), &bound).map_err(|e| e.to_string())?;
            ensure!(d.is_cyclic, "D{n} dual={dual} not cyclic");
            if n % 2 == 1 {
                let cert = d.status.certificate().ok_or(format!("D{n} dual={dual}: no certificate"))?;
                if !dual {
                    let mut e = vec![0i64; n];
                    e[0] = 1;
                    e[1] = 1;
                    ensure!(cert.generator == ints(&e), "D{n}: certificate {:?}", cert.generator);
                }
            } else {
                ensure!(d.status == SimpleStatus::NoneWithinBound, "D{n} dual={dual}: {}", d.status.label());
            }
            if !dual && n >= 3 {
                ensure!(d.kissing == 2 * n * (n - 1), "D{n}: kissing {}", d.kissing);
            }
        }
    }
    for n in [6, 7] {
        for dual in [false, true] {
            let r = report_row(id(Family::E, n, dual), &bound).map_err(|e| e.to_string())?;
            ensure!(!r.is_cyclic, "E{n} dual={dual} cyclic");
            let (x, _) = r.witness.clone().ok_or(format!("E{n} dual={dual}: no witness"))?;
            ensure!(x == e_witness(), "E{n}: witness {:?}", x);
        }
    }
    let e6 = build(id(Family::E, 6, false)).unwrap();
    let e7 = build(id(Family::E, 7, false)).unwrap();
    ensure!(rotation_escape(&e6, &e_witness()).unwrap() == Some(1), "rho(x) in E6");
    ensure!(!e7.contains_vector(&cyclat::cyclic::rotate_by(&e_witness(), 2)).unwrap(), "rho^2(x) in E7");

    let te = Instant::now();
    let e8 = build(id(Family::E, 8, false)).unwrap();
    let min = e8.minimal_vectors().unwrap();
    within(te.elapsed(), Duration::from_secs(10), "E8 enumeration")?;
    ensure!(min.len() == 240, "E8 kissing {}", min.len());
    ensure!(e8.same_lattice(&e8.dual()).unwrap(), "E8 not self-dual");
    ensure!(is_cyclic(&e8).unwrap(), "E8 not cyclic");
    ensure!(simple_cyclic_search(&e8, &Scalar::int(4), &seeds(id(Family::E, 8, false))).unwrap().is_none(), "E8 generator within 4");
    let d8 = build(id(Family::D, 8, false)).unwrap();
    let half = vec![Scalar::ratio(1, 2); 8];
    ensure!(rotate(&half) == half, "1/2 sum e_i not rotation invariant");
    for v in &min.vectors {
        let x = e8.vector(v);
        let shifted: Vec<Scalar> = x.iter().zip(&half).map(|(a, b)| a - b).collect();
        ensure!(d8.contains_vector(&x).unwrap() || d8.contains_vector(&shifted).unwrap(), "E8 vector {x:?} in neither coset");
    }
    ensure!(is_cyclic(&d8).unwrap(), "D8 not cyclic");
    within(t.elapsed(), Duration::from_secs(60), "criterion 6")
}

fn poly(n: usize, low: &[i64]) -> RnPoly {
    let mut c = vec![0; n];
    c[..low.len()].copy_from_slice(low);
    RnPoly::from_i64(&c).unwrap()
}

fn criterion_7() -> Check {
    let t = Instant::now();
    for n in 2..=6usize {
        let i = RnIdeal::principal(poly(n + 1, &[-1, 1]));
        ensure!(ideal_to_lattice(&i).unwrap().same_lattice(&build(id(Family::A, n, false)).unwrap()).unwrap(), "<x-1> != A{n}");
    }
    for n in [3usize, 5, 7] {
        let i = RnIdeal::principal(poly(n, &[1, 1]));
        ensure!(ideal_to_lattice(&i).unwrap().same_lattice(&build(id(Family::D, n, false)).unwrap()).unwrap(), "<x+1> != D{n}");
    }
    for n in [2usize, 4, 6, 8] {
        let i = RnIdeal::new(vec![RnPoly::constant(n, 2), poly(n, &[1, 1])]).unwrap();
        ensure!(ideal_to_lattice(&i).unwrap().same_lattice(&build(id(Family::D, n, false)).unwrap()).unwrap(), "<2, x+1> != D{n}");
    }
    within(t.elapsed(), Duration::from_secs(10), "criterion 7")
}

/// HNF columns of the lattice generated by `gens` in `Z^n`.
fn hnf_key(n: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    hnf(&IntMatrix::from_columns(n, gens)).trimmed().columns()
}

fn index_of(key: &[Vec<BigInt>]) -> Option<BigInt> {
    (key.len() == key[0].len()).then(|| (0..key.len()).map(|i| key[i][i].clone()).product())
}

/// Ideals of `Z[x]/(x^n - 1)` of index at most `t`. An ideal of index `m`
/// contains `m R`, so it is a sum of ideals `<g, m>`; for each `m` the
/// ideals `<g, m>` are closed under sums and filtered by index at the end.
fn ideal_oracle(n: usize, t: u64) -> BTreeSet<Vec<Vec<BigInt>>> {
    let mut found: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
    for m in 1..=t {
        let mut principal: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
        for code in 0..m.pow(n as u32) {
            let mut g = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                g.push(BigInt::from(c % m));
                c /= m;
            }
            let mut gens = cyclat::cyclic::rotations(&g);
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(m);
                gens.push(e);
            }
            principal.insert(hnf_key(n, &gens));
        }
        let mut closed = principal.clone();
        let mut frontier: Vec<Vec<Vec<BigInt>>> = principal.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for b in &principal {
                let gens: Vec<Vec<BigInt>> = a.iter().chain(b.iter()).cloned().collect();
                let sum = hnf_key(n, &gens);
                if closed.insert(sum.clone()) {
                    frontier.push(sum);
                }
            }
        }
        found.extend(closed.into_iter().filter(|k| index_of(k).is_some_and(|i| i <= BigInt::from(t))));
    }
    found
}

fn criterion_8() -> Check {
    let t = Instant::now();
    for n in [2usize, 3] {
        let census = cyclic_census(n, 30).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<Vec<BigInt>>> = census
            .iter()
            .map(|e| {
                let cols: Vec<Vec<BigInt>> = e.hnf_columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
                hnf_key(n, &cols)
            })
            .collect();
        ensure!(got.len() == census.len(), "n={n}: duplicate census entries");
        let oracle = ideal_oracle(n, 30);
        ensure!(got == oracle, "n={n}: census has {} lattices, oracle {}", got.len(), oracle.len());
        for e in &census {
            ensure!(is_cyclic(&e.lattice).unwrap(), "census lattice not cyclic");
            ensure!(is_cyclic(&e.lattice.dual()).unwrap(), "dual of census lattice not cyclic");
        }
    }
    ensure!(cyclic_census(2, 2).unwrap().len() == 2, "census(2,2)");
    ensure!(cyclic_census(3, 3).unwrap().len() == 3, "census(3,3)");
    within(t.elapsed(), Duration::from_secs(120), "criterion 8")
}

fn criterion_9() -> Check {
    let t = Instant::now();
    let cyclic_expected = [3u64, 4, 5, 6, 7, 9, 10, 11, 13, 14];
    let simple_expected = [3u64, 5, 6, 7, 10, 11, 13, 14];
    for n in 3..=16u64 {
        let spec = FieldSpec::cyclotomic(n).unwrap();
        let nf = trace_gram(spec).map_err(|e| e.to_string())?;
        for g in &nf.galois {
            let e = ExactMatrix::from_int(g);
            ensure!(&e.transpose().mul(nf.gram_matrix()).mul(&e) == nf.gram_matrix(), "n={n}: Galois matrix not an isometry");
        }
        let r = lambda_k_report(spec).map_err(|e| format!("n={n}: {e}"))?;
        ensure!(r.cyclic == cyclic_expected.contains(&n), "n={n}: cyclic = {}", r.cyclic);
        ensure!(r.is_simple() == simple_expected.contains(&n), "n={n}: simple = {}", r.is_simple());
        if let Some(c) = &r.nib {
            ensure!(c.orbit.det().unwrap().abs() == BigInt::one(), "n={n}: orbit determinant {}", c.det);
        }
        ensure!(r.wr.is_wr, "n={n}: not WR");
    }
    let q5 = FieldSpec::quadratic(5).unwrap();
    let nf = trace_gram(q5).unwrap();
    ensure!(nf.gram_matrix() == &ExactMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]), "Q(sqrt 5) Gram");
    let r = lambda_k_report(q5).unwrap();
    let cert = r.nib.as_ref().ok_or("Q(sqrt 5): no normal integral basis")?;
    ensure!(cert.theta == vec![BigInt::zero(), BigInt::one()], "Q(sqrt 5): theta = {:?}", cert.theta);
    ensure!(is_circulant(&nf.gram_in_basis(&cert.orbit)), "Q(sqrt 5): orbit Gram not circulant");
    ensure!(!r.wr.is_wr, "Q(sqrt 5) is WR");
    let min = nf.gram.minimal_vectors();
    let expected = vec![vec![BigInt::from(-1), BigInt::zero()], vec![BigInt::one(), BigInt::zero()]];
    ensure!(min.vectors == expected, "Q(sqrt 5) minimal vectors {:?}", min.vectors);
    within(t.elapsed(), Duration::from_secs(120), "criterion 9")
}

/// Orthogonal projection onto the circulants by solving the normal equations
/// over the permutation basis `Pi^k`.
fn projection_oracle(a: &ExactMatrix) -> ExactMatrix {
    let n = a.rows();
    let basis: Vec<ExactMatrix> = (0..n)
        .map(|k| {
            let mut p = ExactMatrix::zeros(n, n);
            for i in 0..n {
                p.set(i, (i + k) % n, Scalar::one());
            }
            p
        })
        .collect();
    let mut g = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, basis[i].frobenius_dot(&basis[j]));
        }
    }
    let rhs: Vec<Scalar> = basis.iter().map(|b| b.frobenius_dot(a)).collect();
    let coef = g.inverse().unwrap().mul_vec(&rhs);
    let mut out = ExactMatrix::zeros(n, n);
    for (c, b) in coef.iter().zip(&basis) {
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, out.get(i, j) + &(c * b.get(i, j)));
            }
        }
    }
    out
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| Scalar::from(random_rational(rng, 20, 6))).collect()).collect();
    ExactMatrix::from_rows(rows).unwrap()
}

fn criterion_10() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..200 {
        let a = random_matrix(&mut rng, 5);
        let p = chan_preconditioner(&a).unwrap().to_matrix();
        ensure!(p == projection_oracle(&a), "matrix {i}: P(A) differs from the projection");
        let best = a.sub(&p).frobenius_norm_sq();
        for _ in 0..100 {
            let c = CirculantMatrix::new((0..5).map(|_| Scalar::from(random_rational(&mut rng, 20, 6))).collect()).unwrap();
            ensure!(best <= a.sub(&c.to_matrix()).frobenius_norm_sq(), "matrix {i}: a circulant beats P(A)");
        }
    }
    within(t.elapsed(), Duration::from_secs(60), "criterion 10")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclat")).args(args).output().expect("run cyclat");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_11() -> Check {
    let t = Instant::now();
    let hex = fixture("hexagonal.json");
    let z2 = fixture("z2.json");
    let r5 = fixture("sqrt5.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["canon", "--lattice", &z2],
        vec!["canon", "--lattice", &hex],
        vec!["canon", "--lattice", &r5],
        vec!["count", "--field", "rational", "--max-height", "6", "--emit", "csv"],
        vec!["count", "--field", "quad:2", "--max-height", "1"],
        vec!["root-report", "--max-n", "5"],
        vec!["census", "--n", "3", "--max-index", "12"],
        vec!["nf", "--cyclotomic", "8"],
        vec!["nf", "--quad", "5"],
        vec!["detcheck", "--c", "1,1,0"],
        vec!["enumerate", "--field", "quad:5", "--max-height", "2"],
    ];
    for args in &runs {
        let (c1, o1) = cli(args);
        let (c2, o2) = cli(args);
        ensure!(c1 == 0 && c2 == 0, "{args:?}: exit codes {c1}, {c2}");
        ensure!(o1 == o2, "{args:?}: output differs between runs");
        ensure!(!o1.contains(&b'\r'), "{args:?}: CR in output");
    }
    let (_, canon) = cli(&["canon", "--lattice", &hex]);
    ensure!(String::from_utf8_lossy(&canon).starts_with(r#"{"x":"2-1*sqrt(3)""#), "hexagonal canon output");
    let (_, det) = cli(&["detcheck", "--c", "1,1,0"]);
    ensure!(det.ends_with(b"\n2,2,ok\n"), "detcheck output");
    let (_, nf) = cli(&["nf", "--cyclotomic", "8"]);
    ensure!(String::from_utf8_lossy(&nf).lines().nth(1).is_some_and(|l| l.starts_with("cyclo:8,4,false,")), "nf 8 output");
    let (_, rr) = cli(&["root-report", "--max-n", "4"]);
    ensure!(String::from_utf8_lossy(&rr).contains("\nD,4,false,4,24,true,none_within_bound,-\n"), "root report D4 row");
    let (code, _) = cli(&["canon", "--lattice", &fixture("not_wr.json")]);
    ensure!(code == 2, "not-WR input exit {code}");
    let (code, _) = cli(&["canon", "--lattice", &fixture("malformed.json")]);
    ensure!(code == 64, "malformed entry exit {code}");
    let (code, _) = cli(&["census", "--n", "3", "--max-index", "5000"]);
    ensure!(code == 65, "scale limit exit {code}");
    within(t.elapsed(), Duration::from_secs(120), "criterion 11")
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("canonical parameter of Z^2, hexagonal and sqrt(5) lattices", criterion_1),
        ("random planar WR lattices: x invariant under P_A, semistable, nearly orthogonal", criterion_2),
        ("WR class counts against the (p, q) oracle and the height bounds", criterion_3),
        ("Weil height identities", criterion_4),
        ("det P(c) through roots of unity", criterion_5),
        ("root lattice report", criterion_6),
        ("ideal correspondence for A_n and D_n", criterion_7),
        ("cyclic census against the ideal oracle", criterion_8),
        ("cyclotomic and quadratic trace lattices", criterion_9),
        ("Chan preconditioner optimality", criterion_10),
        ("CLI determinism and exit codes", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
