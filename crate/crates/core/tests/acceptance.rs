//! Acceptance criteria. Runs as a plain binary and prints one line per
//! criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use hallinv::braids::{
    fixture, non_fano_presentation, parse_permutation, horizontal_presentation, TwistConvention,
};
use hallinv::census::{
    a2_a3, a_k_free, a_k_via_hall_recursion, a_k_zn, a_normal, symmetric_hom_counter,
};
use hallinv::charvar::{
    b1_cover_cyclic, beta_distribution, check_bounds_congruence, depth, max_depth_dividing,
    BettiDistribution, CoverCheck, OrderPCharacters,
};
use hallinv::fields::{sufficiently_large_field, Field};
use hallinv::foxcalc::{abelianization, alexander_matrix, augmentation_jacobian, fundamental_identity_holds};
use hallinv::hall::{construct_mpqs, delta_mpqs};
use hallinv::linalg::{smith_normal_form, IntMatrix};
use hallinv::oracle::{
    brute_force_delta, cover_homology, cyclic_action, cyclic_quotients, FiniteGroupTable,
};
use hallinv::presentations::Presentation;
use hallinv::tables::{table2_row, table_row, Target, TABLE1_COLUMNS, TABLE1_ROWS};

const BUDGET: u64 = 5_000_000_000;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn beta(p: &Presentation, prime: u64, q: u64) -> BettiDistribution {
    beta_distribution(p, prime, q).unwrap_or_else(|e| panic!("beta p={prime} q={q}: {e}"))
}

fn positive(p: &Presentation, prime: u64, q: u64) -> Vec<u64> {
    beta(p, prime, q).positive_part()
}

fn delta(p: &Presentation, target: &str) -> BigInt {
    target.parse::<Target>().unwrap().delta(p).unwrap()
}

/// Order of `q` modulo `p`.
fn ord(q: u64, p: u64) -> u64 {
    (1..).find(|&s| q.pow(s as u32) % p == 1).unwrap()
}

fn criterion_1() {
    let golden: [[i64; 9]; 14] = [
        [3, 4, 1, 6, 3, 12, 3, 4, 8],
        [7, 13, 7, 28, 42, 112, 28, 65, 208],
        [15, 40, 35, 120, 420, 960, 195, 840, 4560],
        [7, 13, 7, 28, 42, 112, 3, 4, 8],
        [15, 40, 35, 120, 420, 960, 6, 8, 16],
        [15, 40, 35, 120, 420, 960, 28, 65, 208],
        [31, 121, 155, 496, 3720, 7936, 31, 69, 216],
        [15, 40, 35, 120, 420, 960, 60, 200, 640],
        [63, 364, 651, 2016, 31248, 64512, 2520, 30940, 291200],
        [255, 3280, 10795, 32640, 2072640, 4177920, 92820, 4477200, 128628480],
        [3, 1, 1, 2, 1, 2, 1, 0, 0],
        [7, 4, 7, 12, 18, 24, 10, 4, 8],
        [15, 13, 35, 56, 196, 224, 69, 65, 208],
        [31, 40, 155, 240, 1800, 1920, 430, 840, 4560],
    ];
    for (name, row) in TABLE1_ROWS.iter().zip(golden) {
        let got = table_row(&fixture(name).unwrap(), &TABLE1_COLUMNS).unwrap();
        let want: Vec<BigInt> = row.iter().map(|&v| big(v)).collect();
        assert_eq!(got, want, "row {name}");
    }
}

fn criterion_2() {
    let p4 = fixture("braid_arrangement").unwrap();
    for p in [2u64, 3, 5] {
        for q in [0u64, 2, 3, 7] {
            if q == p {
                continue;
            }
            let b = beta(&p4, p, q);
            assert_eq!(b.positive_part(), vec![5 * (p + 1)], "p={p} q={q}");
            let n = (p.pow(6) - 1) / (p - 1);
            assert_eq!(b.get(0), n - 5 * (p + 1));
            assert_eq!(b.get(0), (p + 1) * (p.pow(4) + p * p - 4));
        }
    }
    for (p, q) in [(2u64, 3u64), (2, 5), (2, 7), (3, 2), (3, 5), (3, 7), (5, 2), (5, 3), (5, 11)] {
        let s = ord(q, p);
        assert_eq!(
            delta_mpqs(&p4, p, q).unwrap(),
            big((5 * (p * p - 1) / s) as i64),
            "M_({p},{q}^{s})"
        );
    }
}

fn criterion_3() {
    let g = fixture("deleted_B3").unwrap();
    for q in [0u64, 3, 5, 7] {
        assert_eq!(positive(&g, 2, q), vec![27, 9], "beta_2 q={q}");
    }
    for q in [0u64, 5, 7, 11] {
        assert_eq!(positive(&g, 3, q), vec![44, 13], "beta_3 q={q}");
    }
    assert_eq!(positive(&g, 3, 2)[0], 45);
    assert_eq!(delta(&g, "A4"), big(110));
    assert_eq!(delta(&g, "S3"), big(63));
    for q in [5i64, 7] {
        assert_eq!(delta(&g, &format!("D{}", 2 * q)), big(9 * (q + 4)));
    }
    let mu = [1, 2, 2, 1, 2, 0, 1, 0];
    assert_eq!(b1_cover_cyclic(&g, &mu, 3, 0).unwrap(), 8);
    assert_eq!(b1_cover_cyclic(&g, &mu, 3, 2).unwrap(), 10);
    let h = cover_homology(&g, &cyclic_action(&mu, 3)).unwrap();
    assert_eq!((h.b1(0), h.b1(2)), (8, 10));
}

fn criterion_4() {
    let g = fixture("non_fano").unwrap();
    assert_eq!(g, non_fano_presentation(TwistConvention::Over).unwrap());
    for q in [0u64, 3, 5, 7] {
        assert_eq!(positive(&g, 2, q), vec![24, 1], "q={q}");
    }
    for q in [3i64, 5, 7, 11, 13] {
        assert_eq!(delta(&g, &format!("D{}", 2 * q)), big(q + 25), "D_2q q={q}");
    }
    for p in [3u64, 5] {
        assert_eq!(positive(&g, p, 2), vec![9 * (p + 1)]);
    }
    let under = non_fano_presentation(TwistConvention::Under).unwrap();
    assert_ne!(positive(&under, 2, 3), vec![24, 1], "under-passing twists should not match");
}

fn criterion_5() {
    let rows: [(&str, [i64; 3]); 5] = [
        ("2134", [25, 38, 72]),
        ("31425", [139, 191, 290]),
        ("21345", [168, 435, 1184]),
        ("21435", [150, 273, 632]),
        ("123456", [1240, 10285, 96800]),
    ];
    for (tau, want) in rows {
        let want: Vec<BigInt> = want.iter().map(|&v| big(v)).collect();
        assert_eq!(table2_row(tau).unwrap(), want, "A({tau})");
    }
    let a = fixture("A(2134)").unwrap();
    assert_eq!(positive(&a, 2, 3), vec![1, 6]);
    assert_eq!(positive(&a, 3, 2), vec![18, 4]);
    for p in [3u64, 5] {
        assert_eq!(positive(&a, p, 7), vec![2 * p * p + p - 1, 2]);
    }
    let b = fixture("A(31425)").unwrap();
    assert_eq!(positive(&b, 2, 3), vec![5, 1, 10]);
    assert_eq!(positive(&b, 2, 5), vec![5, 0, 10]);
    assert_eq!(positive(&b, 3, 2), vec![41, 30]);
    assert_eq!(positive(&b, 3, 5), vec![70, 10]);
    assert_eq!(positive(&b, 3, 7), vec![65, 10]);
    assert_eq!(positive(&b, 3, 11), vec![60, 10]);
    let mirror = horizontal_presentation(&parse_permutation("52413").unwrap()).unwrap();
    assert_eq!(positive(&mirror, 2, 3), vec![5, 1, 10]);
}

/// The remaining rows of the arrangement table. Three published `M3,7`
/// entries disagree with the computed values; for those, the computed value
/// is checked against brute-force enumeration instead.
fn criterion_5_rest() -> Vec<String> {
    let rows: [(&str, [i64; 3]); 35] = [
        ("123", [3, 4, 8]),
        ("1234", [28, 65, 208]),
        ("12345", [195, 840, 4560]),
        ("213456", [1051, 5182, 23560]),
        ("321456", [997, 4210, 12640]),
        ("215436", [889, 2752, 9940]),
        ("214356", [907, 2752, 7288]),
        ("312546", [799, 1780, 5008]),
        ("341256", [799, 2023, 5200]),
        ("314256", [750, 1474, 3688]),
        ("241536", [704, 1152, 2368]),
        ("1234567", [7623, 124124, 2039128]),
        ("2134567", [6408, 62159, 488568]),
        ("3214567", [5922, 47579, 210024]),
        ("2143567", [5436, 31541, 125760]),
        ("2154367", [5112, 25709, 83928]),
        ("2165437", [5274, 31541, 194976]),
        ("3216547", [4950, 25709, 145080]),
        ("2143657", [4680, 16961, 49872]),
        ("3412567", [4464, 20606, 74640]),
        ("3125467", [4572, 16961, 59952]),
        ("4123657", [4464, 16961, 72720]),
        ("3126457", [4032, 11129, 39432]),
        ("3254167", [4032, 12587, 41160]),
        ("3142567", [4237, 15227, 66330]),
        ("3142657", [3796, 9197, 25974]),
        ("3145267", [3931, 11651, 43298]),
        ("3415267", [3796, 10175, 34410]),
        ("3154267", [3850, 10751, 34410]),
        ("2415367", [3727, 9349, 26604]),
        ("2415637", [3619, 8709, 26532]),
        ("2516347", [3484, 7459, 20452]),
        ("3625147", [3245, 6349, 15736]),
        ("4136257", [3329, 6189, 15082]),
        ("5264137", [3417, 6819, 15184]),
    ];
    let m37 = construct_mpqs(3, 7).unwrap().table;
    let mut notes = Vec::new();
    for (tau, want) in rows {
        let got = table2_row(tau).unwrap();
        for (col, (g, &w)) in ["S3", "A4", "M3,7"].iter().zip(got.iter().zip(&want)) {
            if *g == big(w) {
                continue;
            }
            assert_eq!(*col, "M3,7", "A({tau}) column {col}: got {g}, table has {w}");
            let p = horizontal_presentation(&parse_permutation(tau).unwrap()).unwrap();
            let brute = brute_force_delta(&p, &m37, BUDGET).unwrap();
            assert_eq!(*g, brute, "A({tau}): formula and enumeration disagree");
            notes.push(format!("A({tau}) M3,7: table {w}, computed {g} = enumeration"));
        }
    }
    notes
}

fn criterion_6() {
    for n in 2u64..=4 {
        let expected = big(3 * (3i64.pow(n as u32 - 1) - 1) * 2i64.pow(n as u32 - 1) + 1);
        let f = fixture(&format!("F{n}")).unwrap();
        assert_eq!(a2_a3(&f).unwrap().1, expected, "F{n} closed form");
        let recursion = a_k_via_hall_recursion(3, symmetric_hom_counter(&f, BUDGET)).unwrap();
        assert_eq!(recursion, expected, "F{n} recursion");
        assert_eq!(a_k_free(n, 3), expected);
    }
    assert_eq!(a2_a3(&fixture("braid_arrangement").unwrap()).unwrap().1, big(409));
    assert_eq!(a2_a3(&fixture("deleted_B3").unwrap()).unwrap().1, big(3469));
    assert_eq!(a2_a3(&fixture("non_fano").unwrap()).unwrap().1, big(1177));
    assert_eq!(a_k_zn(2, 6), big(12));
    let z2 = fixture("Z2").unwrap();
    for k in 2..=6 {
        let r = a_k_via_hall_recursion(k, symmetric_hom_counter(&z2, BUDGET)).unwrap();
        assert_eq!(r, a_k_zn(2, k), "a_{k}(Z^2)");
    }
    let z3 = fixture("Z3").unwrap();
    for k in 2..=4 {
        let r = a_k_via_hall_recursion(k, symmetric_hom_counter(&z3, BUDGET)).unwrap();
        assert_eq!(r, a_k_zn(3, k), "a_{k}(Z^3)");
    }
    let quotients: [(u64, &[&str]); 5] = [
        (4, &["Z4", "Z2^2"]),
        (6, &["Z6", "S3"]),
        (9, &["Z9", "Z3^2"]),
        (10, &["Z10", "D10"]),
        (15, &["Z15"]),
    ];
    for name in ["F2", "F3"] {
        let g = fixture(name).unwrap();
        for (k, groups) in quotients {
            let sum: BigInt = groups.iter().map(|t| delta(&g, t)).sum();
            assert_eq!(a_normal(&g, k).unwrap(), sum, "{name} k={k}");
        }
    }
}

fn small_targets() -> Vec<(&'static str, FiniteGroupTable)> {
    vec![
        ("Z2", FiniteGroupTable::cyclic(2).unwrap()),
        ("Z3", FiniteGroupTable::cyclic(3).unwrap()),
        ("Z4", FiniteGroupTable::cyclic(4).unwrap()),
        ("Z2^2", FiniteGroupTable::abelian(&[2, 2]).unwrap()),
        ("S3", FiniteGroupTable::symmetric(3).unwrap().0),
        ("A4", FiniteGroupTable::alternating(4).unwrap()),
        ("M3,7", construct_mpqs(3, 7).unwrap().table),
    ]
}

fn fixture_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = TABLE1_ROWS.to_vec();
    names.extend(["braid_arrangement", "non_fano", "deleted_B3", "A(2134)", "A(31425)"]);
    names
}

fn criterion_7() {
    let targets = small_targets();
    for name in fixture_names() {
        let g = fixture(name).unwrap();
        assert!(g.num_generators() <= 8);
        for (t, table) in &targets {
            let brute = brute_force_delta(&g, table, BUDGET).unwrap();
            assert_eq!(delta(&g, t), brute, "{name} -> {t}");
        }
    }
    for name in ["F2", "F3", "Z2", "S2", "N3", "A(2134)"] {
        let g = fixture(name).unwrap();
        for p in [2u64, 3] {
            for lam in cyclic_quotients(&g, p) {
                let h = cover_homology(&g, &cyclic_action(&lam, p as usize)).unwrap();
                for q in [0u64, 2, 3, 5, 7] {
                    if q == p {
                        continue;
                    }
                    let predicted = b1_cover_cyclic(&g, &lam, p, q).unwrap();
                    assert_eq!(predicted, h.b1(q), "{name} p={p} lam={lam:?} q={q}");
                }
            }
        }
    }
}

fn criterion_8() {
    let names = fixture_names();
    for name in &names {
        let g = fixture(name).unwrap();
        for r in g.relators() {
            assert!(fundamental_identity_holds(r, g.num_generators()), "{name}");
        }
        let j = augmentation_jacobian(&g);
        let s = smith_normal_form(&j, true);
        let t = s.transform.as_ref().unwrap();
        let d = t.u.mul(&j).mul(&t.v);
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let want = if r == c && r < s.divisors.len() {
                    s.divisors[r].clone()
                } else {
                    big(0)
                };
                assert_eq!(*d.get(r, c), want, "{name} SNF entry ({r},{c})");
            }
        }
        assert!(t.u.determinant() == big(1) || t.u.determinant() == big(-1));
        assert_eq!(t.v.mul(&t.v_inv), IntMatrix::identity(t.v.rows()));
    }

    for (q, s) in [(2u64, 1u32), (2, 2), (2, 3), (3, 2), (5, 1), (7, 2)] {
        let k = Field::finite(q, s).unwrap();
        let n = q.pow(s);
        let g = k.primitive_root_of_unity(n - 1).unwrap();
        let mut elems: Vec<_> = (0..n as i64 - 1).map(|c| k.pow(&g, c).unwrap()).collect();
        assert_eq!(k.multiplicative_order_of(&g, n), Some(n - 1));
        elems.insert(0, k.zero());
        for a in elems.iter().take(6) {
            for b in elems.iter().take(6) {
                for c in elems.iter().take(6) {
                    let l = k.mul(a, &k.add(b, c));
                    let r = k.add(&k.mul(a, b), &k.mul(a, c));
                    assert_eq!(l, r);
                }
                assert_eq!(k.mul(a, b), k.mul(b, a));
            }
            if !k.is_zero(a) {
                assert!(k.is_one(&k.mul(a, &k.inv(a).unwrap())));
            }
        }
    }
    for (n, q) in [(2u64, 0u64), (3, 0), (5, 0), (7, 0), (3, 2), (5, 2), (7, 2), (3, 7), (5, 3)] {
        let k = sufficiently_large_field(n, q).unwrap();
        let z = k.primitive_root_of_unity(n).unwrap();
        assert_eq!(k.multiplicative_order_of(&z, 1000), Some(n), "zeta_{n} over char {q}");
    }

    for name in &names {
        let g = fixture(name).unwrap();
        for (p, q) in [(2u64, 3u64), (3, 2), (3, 5)] {
            let b = beta(&g, p, q);
            b.check_sum().unwrap();
            let np = abelianization(&g).b1(p) as u32;
            assert_eq!(b.total(), (p.pow(np) - 1) / (p - 1), "{name} p={p}");
        }
    }

    for name in ["F2", "F3", "Z2", "S2", "N3", "A(2134)", "braid_arrangement"] {
        let g = fixture(name).unwrap();
        let a = alexander_matrix(&g);
        for p in [2u64, 3] {
            for q in [0u64, 2, 3, 5] {
                if q == p {
                    continue;
                }
                let max_depth = max_depth_dividing(&a, p, q).unwrap();
                for lam in cyclic_quotients(&g, p) {
                    let c = CoverCheck {
                        b1_group: abelianization(&g).b1(q),
                        b1_cover: b1_cover_cyclic(&g, &lam, p, q).unwrap(),
                        index: p,
                        num_generators: g.num_generators(),
                        max_depth,
                    };
                    check_bounds_congruence(&c).unwrap_or_else(|e| panic!("{name}: {e}"));
                }
            }
        }
        for (p, q) in [(3u64, 0u64), (3, 2), (5, 2)] {
            let field = sufficiently_large_field(p, q).unwrap();
            let zeta = field.primitive_root_of_unity(p).unwrap();
            let chars = OrderPCharacters::new(a.abel(), p, &field, &zeta);
            for i in 1..chars.count().min(200) {
                let d = depth(&a, &chars.character(i)).unwrap();
                for j in 2..p {
                    let dj = depth(&a, &chars.character(chars.power_index(i, j))).unwrap();
                    assert_eq!(d, dj, "{name} p={p} q={q} index {i}^{j}");
                }
            }
        }
    }
}

fn run(n: &str, what: &str, f: impl FnOnce() -> Vec<String>) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let secs = |d: Duration| format!("{:.1}s", d.as_secs_f64());
    match result {
        Ok(notes) => {
            println!("criterion {n}: PASS  {what} ({})", secs(elapsed));
            for note in notes {
                println!("    note: {note}");
            }
            true
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            println!("criterion {n}: FAIL  {what} ({}): {msg}", secs(elapsed));
            false
        }
    }
}

fn quiet(f: fn()) -> impl FnOnce() -> Vec<String> {
    move || {
        f();
        Vec::new()
    }
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let results = [
        run("1", "Hall invariants of free, product and surface groups", quiet(criterion_1)),
        run("2", "braid arrangement Betti distributions", quiet(criterion_2)),
        run("3", "deleted B3 arrangement", quiet(criterion_3)),
        run("4", "non-Fano arrangement", quiet(criterion_4)),
        run("5", "horizontal arrangements", || {
            criterion_5();
            criterion_5_rest()
        }),
        run("6", "subgroup censuses", quiet(criterion_6)),
        run("7", "formula against brute force", quiet(criterion_7)),
        run("8", "property checks", quiet(criterion_8)),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
