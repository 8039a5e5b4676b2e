//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

mod common;

use common::FixtureEnv;
use cupqca::cochain::{
    coboundary_matrix, cup_matrix, cup_matrix_matches_oracle, leibniz_specs, verify_cup_leibniz,
    CupSpec,
};
use cupqca::equivalence::{
    circuit_u, cnot_stages, is_monomial_shift, separated_reduce, verify_certificate,
    zp_order_certificate,
};
use cupqca::isa::{build_isa_higher, build_z2_isa_2d, build_zp_isa_2d, induced_qca, IsaKind};
use cupqca::lattice::{instantiate_map, is_symplectic_explicit, stabilizer_commutation};
use cupqca::qca::{build_3f_3d, build_3f_5d, build_z2_general, build_zp_alpha, build_zp_general};
use cupqca::ring::{LaurentPoly, Monomial, TorusShape};
use cupqca::symplectic::{pair_matrix, SymplecticMap};
use cupqca::PolyMatrix;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(n: u32, msg: &str) {
    println!("[criterion {n:2}] PASS: {msg}");
}

#[test]
fn criterion_01_3f_order_3d() {
    let a = build_3f_3d();
    let sq = a.compose(&a).unwrap();
    assert_eq!(sq, SymplecticMap::identity(2, 3, 6));
    pass(1, "3F QCA in 3+1D squares exactly to the 12x12 identity");
}

#[test]
fn criterion_02_3f_order_5d() {
    let a = build_3f_5d();
    assert!(a.is_symplectic());
    let sq = a.compose(&a).unwrap();
    assert_eq!(sq, SymplecticMap::identity(2, 5, 20));

    // The four constituent matrices, entry for entry against the printed
    // five-dimensional tables. The appendix tabulates the cup matrices in the
    // transposed-antipode (dagger) orientation relative to the row = left
    // factor convention used by this crate, so the daggers below realize the
    // same tables.
    let env = FixtureEnv::new(2, 5, 1);
    let delta = env.parse_matrix(include_str!("fixtures/delta_5d_deg2.txt"));
    assert_eq!(delta, coboundary_matrix(2, 5, 2).unwrap());
    let mfc = env.parse_matrix(include_str!("fixtures/cup_5d_f_c.txt"));
    assert_eq!(mfc, cup_matrix(CupSpec::new(5, 3, 0).unwrap(), 2).dagger());
    let mcf = env.parse_matrix(include_str!("fixtures/cup_5d_c_f.txt"));
    assert_eq!(mcf, cup_matrix(CupSpec::new(5, 2, 0).unwrap(), 2).dagger());
    let mc1c = env.parse_matrix(include_str!("fixtures/cup_5d_c1c.txt"));
    assert_eq!(mc1c, cup_matrix(CupSpec::new(5, 3, 1).unwrap(), 2).dagger());
    pass(
        2,
        "3F QCA in 5+1D squares to the 40x40 identity; constituents match the printed tables",
    );
}

#[test]
fn criterion_03_zp_order_p1mod4() {
    for p in [5u32, 13, 17] {
        for k in [1i64, 2] {
            let cert = zp_order_certificate(p, k).unwrap();
            assert_eq!(cert.claimed_order, 2);
            assert_eq!(cert.copies, 1);
            assert!(
                verify_certificate(&cert),
                "certificate failed at p={p} k={k}"
            );
            // the certified shift is the printed diagonal
            let env = FixtureEnv::new(p, 3, k);
            let shift = env.parse_matrix(include_str!("fixtures/zp_shift.txt"));
            assert_eq!(cert.shift.matrix(), &shift);
        }
        // printed-stage regression (stages do not depend on k)
        let env = FixtureEnv::new(p, 3, 1);
        let u = circuit_u(p).unwrap();
        assert_eq!(
            u.matrix(),
            &env.parse_matrix(include_str!("fixtures/u_full.txt"))
        );
        let stages = cnot_stages(p).unwrap();
        let fixtures = [
            include_str!("fixtures/u_stage1.txt"),
            include_str!("fixtures/u_stage2.txt"),
            include_str!("fixtures/u_stage3.txt"),
            include_str!("fixtures/u_stage4.txt"),
        ];
        for (stage, fix) in stages.iter().zip(fixtures) {
            assert_eq!(stage.matrix(), &env.parse_matrix(fix));
        }
    }
    pass(
        3,
        "order-2 certificates verified for p in {5,13,17}, k in {1,2}; stages match the printed circuit",
    );
}

#[test]
fn criterion_04_zp_order_p3mod4() {
    for p in [3u32, 7, 11] {
        let cert = zp_order_certificate(p, 1).unwrap();
        assert_eq!(cert.claimed_order, 4);
        assert_eq!(cert.copies, 2);
        assert!(verify_certificate(&cert), "certificate failed at p={p}");
        let shift = is_monomial_shift(&cert.shift).expect("certified shift is monomial");
        assert_eq!(shift.len(), 12);
        // the 12-entry diagonal repeats (y~z~, -x~z~, x~y~) on every block
        for chunk in shift.chunks(3) {
            assert_eq!(chunk[0], (Monomial(vec![0, -1, -1]), 1));
            assert_eq!(chunk[1], (Monomial(vec![-1, 0, -1]), p - 1));
            assert_eq!(chunk[2], (Monomial(vec![-1, -1, 0]), 1));
        }
    }
    pass(
        4,
        "two-copy order-4 certificates verified for p in {3,7,11} with the 12-entry shift",
    );
}

#[test]
fn criterion_05_cup_calculus() {
    // Leibniz identity for every valid (D <= 6, p, i), at a sign-sensitive
    // odd modulus and over Z_2
    for dim in 1..=6usize {
        for (p, i) in leibniz_specs(dim) {
            for d in [2u32, 5] {
                assert!(
                    verify_cup_leibniz(d, dim, p, i).unwrap(),
                    "leibniz failed at D={dim} p={p} i={i} d={d}"
                );
            }
        }
    }
    // chain-complex condition
    for dim in 1..=6usize {
        for p in 0..dim.saturating_sub(1) {
            for d in [2u32, 5] {
                let d1 = coboundary_matrix(d, dim, p + 1).unwrap();
                let d0 = coboundary_matrix(d, dim, p).unwrap();
                assert!(d1.mul(&d0).unwrap().is_zero());
            }
        }
    }
    // brute-force oracle agreement for every valid cup spec with D <= 5
    for dim in 1..=5usize {
        for p in 0..=dim {
            for i in 0..=p {
                let Ok(spec) = CupSpec::new(dim, p, i) else {
                    continue;
                };
                assert!(
                    cup_matrix_matches_oracle(spec, 5),
                    "oracle disagreement at D={dim} right={p} i={i}"
                );
            }
        }
    }
    pass(
        5,
        "Leibniz identities, chain-complex condition, and oracle agreement hold for all D <= 6 / D <= 5",
    );
}

#[test]
fn criterion_06_matrix_regressions() {
    // coboundary family, three dimensions
    for d in [2u32, 5] {
        let env = FixtureEnv::new(d, 3, 1);
        for (deg, fix) in [
            (0usize, include_str!("fixtures/delta_3d_deg0.txt")),
            (1, include_str!("fixtures/delta_3d_deg1.txt")),
            (2, include_str!("fixtures/delta_3d_deg2.txt")),
        ] {
            assert_eq!(env.parse_matrix(fix), coboundary_matrix(d, 3, deg).unwrap());
        }
        // cup-matrix family, three dimensions
        for (right, level, fix) in [
            (2usize, 0usize, include_str!("fixtures/cup_3d_e_f.txt")),
            (1, 0, include_str!("fixtures/cup_3d_f_e.txt")),
            (2, 1, include_str!("fixtures/cup_3d_f1f.txt")),
            (3, 1, include_str!("fixtures/cup_3d_e1c.txt")),
            (3, 2, include_str!("fixtures/cup_3d_f2c.txt")),
            (2, 2, include_str!("fixtures/cup_3d_c2f.txt")),
        ] {
            assert_eq!(
                env.parse_matrix(fix),
                cup_matrix(CupSpec::new(3, right, level).unwrap(), d),
                "cup fixture mismatch at right={right} level={level} d={d}"
            );
        }
    }
    // separator/flipper blocks of the odd-prime QCA with symbolic k
    for (p, k) in [(5u32, 1i64), (7, 2), (13, 1)] {
        let env = FixtureEnv::new(p, 3, k);
        let alpha = build_zp_alpha(p, k).unwrap();
        let xbar = alpha.matrix().submatrix(0, 0, 6, 3);
        let zbar = alpha.matrix().submatrix(0, 3, 6, 3);
        assert_eq!(xbar, env.parse_matrix(include_str!("fixtures/zp_xbar.txt")));
        assert_eq!(zbar, env.parse_matrix(include_str!("fixtures/zp_zbar.txt")));
    }
    // circuit stages and shift (also exercised by criterion 3)
    let env = FixtureEnv::new(7, 3, 1);
    assert_eq!(
        circuit_u(7).unwrap().matrix(),
        &env.parse_matrix(include_str!("fixtures/u_full.txt"))
    );
    // the five-dimensional tables (also exercised by criterion 2)
    let env5 = FixtureEnv::new(2, 5, 1);
    assert_eq!(
        env5.parse_matrix(include_str!("fixtures/delta_5d_deg2.txt")),
        coboundary_matrix(2, 5, 2).unwrap()
    );
    assert_eq!(
        env5.parse_matrix(include_str!("fixtures/cup_5d_c1c.txt")),
        cup_matrix(CupSpec::new(5, 3, 1).unwrap(), 2).dagger()
    );
    pass(
        6,
        "all transcribed matrices reproduced entry-for-entry (coboundaries, cup tables, QCA blocks, circuit)",
    );
}

#[test]
fn criterion_07_isa_suite() {
    // Z_2 pair on the square lattice
    let z2 = build_z2_isa_2d();
    assert_eq!(z2.mcal.dagger(), z2.mcal_bar);
    assert!(pair_matrix(&z2.a, &z2.abar).unwrap().is_zero());
    // Z_2 pair in 4+1D
    let z2h = build_isa_higher(IsaKind::Z2, 2, 2, 1).unwrap();
    assert!(pair_matrix(&z2h.a, &z2h.abar).unwrap().is_zero());
    // Z_p pairs on the square lattice
    for p in [3u32, 5, 7] {
        let pair = build_zp_isa_2d(p, 1).unwrap();
        assert!(pair_matrix(&pair.a, &pair.abar).unwrap().is_zero());
        let h = pair.h.as_ref().unwrap();
        let hinv = pair.h_inv.as_ref().unwrap();
        let i = PolyMatrix::identity(p, 2, 2 * pair.q);
        assert_eq!(h.mul(hinv).unwrap(), i);
        assert_eq!(hinv.mul(h).unwrap(), i);
    }
    // Z_p pair in 6+1D
    let zph = build_isa_higher(IsaKind::Zp, 2, 3, 1).unwrap();
    assert!(pair_matrix(&zph.a, &zph.abar).unwrap().is_zero());
    let h = zph.h.as_ref().unwrap();
    let hinv = zph.h_inv.as_ref().unwrap();
    let i = PolyMatrix::identity(3, 6, 2 * zph.q);
    assert_eq!(h.mul(hinv).unwrap(), i);

    // induced QCAs square to the shifted charge conjugation
    for exps in [[1, 0], [0, 1], [2, 1]] {
        let m = LaurentPoly::monomial(5, 2, Monomial(exps.to_vec()), 1);
        let theta = induced_qca(5, 1, &m).unwrap();
        assert!(theta.is_symplectic());
        let sq = theta.compose(&theta).unwrap();
        let mut want = PolyMatrix::zeros(5, 2, 4, 4);
        for j in 0..4 {
            want.set(j, j, m.neg());
        }
        assert_eq!(sq.matrix(), &want, "induced square failed at m=x^{exps:?}");
    }
    // two-copy variant at p = 3 (mod 4)
    let y = LaurentPoly::var(3, 2, 1);
    let theta = induced_qca(3, 1, &y).unwrap();
    assert!(theta.is_symplectic());
    let sq = theta.compose(&theta).unwrap();
    let mut want = PolyMatrix::zeros(3, 2, 8, 8);
    for j in 0..8 {
        want.set(j, j, y.neg());
    }
    assert_eq!(sq.matrix(), &want);
    pass(
        7,
        "ISA invariants hold (dagger identity, commutation, witnesses) and induced QCAs square to -m",
    );
}

#[test]
fn criterion_08_generalization() {
    assert_eq!(build_z2_general(2).unwrap(), build_3f_3d());
    assert_eq!(build_z2_general(3).unwrap(), build_3f_5d());
    for (p, k) in [(5u32, 1i64), (7, 2)] {
        assert_eq!(
            build_zp_general(1, p, k).unwrap(),
            build_zp_alpha(p, k).unwrap()
        );
    }
    // l = 4: seven variables, qubits on 4-cells
    let a = build_z2_general(4).unwrap();
    assert_eq!(a.q(), 70);
    assert!(a.is_symplectic());
    let sq = a.compose(&a).unwrap();
    assert_eq!(sq, SymplecticMap::identity(2, 7, 70));
    pass(
        8,
        "general-l builders specialize to the hand-built maps; l = 4 is symplectic and squares to identity",
    );
}

#[test]
fn criterion_09_finite_torus() {
    let a3f = build_3f_3d();
    let shape = TorusShape::new(vec![4, 4, 4]).unwrap();
    let e = instantiate_map(&a3f, &shape).unwrap();
    assert!(is_symplectic_explicit(&e, 6).unwrap());
    assert!(e.mul(&e).unwrap().is_identity());
    assert!(stabilizer_commutation(&a3f, &shape).unwrap());

    let a5 = build_zp_alpha(5, 1).unwrap();
    let shape5 = TorusShape::new(vec![5, 5, 5]).unwrap();
    let e5 = instantiate_map(&a5, &shape5).unwrap();
    assert!(is_symplectic_explicit(&e5, 3).unwrap());
    assert!(stabilizer_commutation(&a5, &shape5).unwrap());
    pass(
        9,
        "finite-torus instantiations are symplectic, square correctly, and have commuting separators",
    );
}

/// Random symplectic generators with a zero XZ block: CNOT-type layers
/// diag(E, dagger(E)^{-1}) with a one-line coupling, Z-type layers
/// [[I,0],[S,I]] with S self-dagger, and monomial shift layers.
fn random_xz_free_map(rng: &mut ChaCha8Rng, d: u32, dim: usize, q: usize) -> SymplecticMap {
    let rand_poly = |rng: &mut ChaCha8Rng| {
        let mut p = LaurentPoly::zero(d, dim);
        for _ in 0..rng.gen_range(1..=2) {
            let e: Vec<i32> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
            let c = rng.gen_range(1..d.max(2)) as i64;
            p = p
                .add(&LaurentPoly::monomial(d, dim, Monomial(e), c))
                .unwrap();
        }
        p
    };
    match rng.gen_range(0..3) {
        0 => {
            // CNOT layer: one off-diagonal line in the X block
            let mut e = PolyMatrix::identity(d, dim, q);
            let r = rng.gen_range(0..q);
            let mut c = rng.gen_range(0..q);
            if c == r {
                c = (c + 1) % q;
            }
            e.set(r, c, rand_poly(rng));
            let n = e.dagger().sub(&PolyMatrix::identity(d, dim, q)).unwrap();
            let zz = PolyMatrix::identity(d, dim, q).sub(&n).unwrap();
            let z = PolyMatrix::zeros(d, dim, q, q);
            SymplecticMap::new(PolyMatrix::from_blocks(&[vec![&e, &z], vec![&z, &zz]]).unwrap())
                .unwrap()
        }
        1 => {
            // Z-coupling layer with a self-dagger lower-left block
            let mut t = PolyMatrix::zeros(d, dim, q, q);
            for _ in 0..q {
                let r = rng.gen_range(0..q);
                let c = rng.gen_range(0..q);
                t.set(r, c, rand_poly(rng));
            }
            let s = t.add(&t.dagger()).unwrap();
            let i = PolyMatrix::identity(d, dim, q);
            let z = PolyMatrix::zeros(d, dim, q, q);
            SymplecticMap::new(PolyMatrix::from_blocks(&[vec![&i, &z], vec![&s, &i]]).unwrap())
                .unwrap()
        }
        _ => {
            // monomial shift layer
            let mut m = PolyMatrix::zeros(d, dim, 2 * q, 2 * q);
            for j in 0..q {
                let e: Vec<i32> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
                let mono = LaurentPoly::monomial(d, dim, Monomial(e), 1);
                m.set(j, j, mono.clone());
                m.set(q + j, q + j, mono);
            }
            SymplecticMap::new(m).unwrap()
        }
    }
}

#[test]
fn criterion_10_separated_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260809);
    for case in 0..200 {
        let d = [2u32, 3, 5][case % 3];
        let dim = 1 + case % 3;
        let q = 2 + case % 3;
        let mut theta = SymplecticMap::identity(d, dim, q);
        for _ in 0..rng.gen_range(2..=4) {
            let layer = random_xz_free_map(&mut rng, d, dim, q);
            theta = theta.compose(&layer).unwrap();
        }
        assert!(
            theta.is_symplectic(),
            "case {case}: generator product not symplectic"
        );
        let (sep, elem) = separated_reduce(&theta).unwrap();
        assert_eq!(
            sep.compose(&elem).unwrap(),
            theta,
            "case {case}: factorization"
        );
        // the elementary part has identity diagonal blocks and a self-dagger
        // coupling; the separated part is X/Z block-diagonal
        let (xx, xz, zx, zz) = elem.blocks();
        assert!(xz.is_zero());
        assert_eq!(xx, PolyMatrix::identity(d, dim, q));
        assert_eq!(zz, PolyMatrix::identity(d, dim, q));
        assert_eq!(zx.dagger(), zx);
        let (_, sxz, szx, _) = sep.blocks();
        assert!(sxz.is_zero() && szx.is_zero());
    }
    pass(
        10,
        "separated reduction round-trips 200 randomized XZ-free maps exactly",
    );
}
