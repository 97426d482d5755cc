mod common;

use adderkit::analysis::{
    directed_vectors, oracle_add, random_vectors, roster, verify, VerifyMode,
};
use adderkit::sim::simulate_bits;
use adderkit::{
    build, simulate, AdderSpec, CarryInMode, ClaStyle, PrefixTopology, Simulator, Vector,
};

const MODES: [CarryInMode; 4] = [
    CarryInMode::None,
    CarryInMode::Variable,
    CarryInMode::Constant0,
    CarryInMode::Constant1,
];

fn all_specs(width: usize) -> Vec<AdderSpec> {
    let mut specs = roster(width);
    for topology in PrefixTopology::ALL {
        specs.push(AdderSpec::prefix(width, topology));
    }
    for k in 1..width {
        for style in [ClaStyle::Conventional, ClaStyle::DelayOptimized] {
            specs.push(AdderSpec::fbha(width, k, &[k], style));
            if k % 2 == 0 {
                specs.push(AdderSpec::fbha(width, k, &vec![2; k / 2], style));
            }
        }
    }
    specs
}

#[test]
fn exhaustive_small_widths_every_mode() {
    for width in 1..=6 {
        for mode in MODES {
            for spec in all_specs(width) {
                let n = build(&spec.clone().with_carry_in(mode)).unwrap();
                let out = verify(&n, VerifyMode::Exhaustive).unwrap();
                assert!(out.passed(), "{}: {:?}", n.name, out.result);
            }
        }
    }
}

#[test]
fn exhaustive_width_eight_against_independent_evaluator() {
    // The independent evaluator is slow, so it checks a stride of vectors;
    // the packed simulator checks them all.
    for spec in roster(8) {
        let n = build(&spec).unwrap();
        assert!(
            verify(&n, VerifyMode::Exhaustive).unwrap().passed(),
            "{}",
            n.name
        );
        for v in (0..1u64 << 16).step_by(97) {
            let (a, b) = (v & 0xff, v >> 8);
            assert_eq!(
                common::eval_adder(&n, a, b, None),
                common::reference_add(a, b, false, 8),
                "{}",
                n.name
            );
        }
    }
}

#[test]
fn random_and_directed_wide() {
    for width in [16, 32, 64] {
        for mode in [
            CarryInMode::None,
            CarryInMode::Variable,
            CarryInMode::Constant1,
        ] {
            for spec in roster(width) {
                let n = build(&spec.with_carry_in(mode)).unwrap();
                for m in [
                    VerifyMode::Random {
                        count: 20_000,
                        seed: 11,
                    },
                    VerifyMode::Directed,
                ] {
                    let out = verify(&n, m).unwrap();
                    assert!(out.passed(), "{} {m}: {:?}", n.name, out.result);
                }
            }
        }
    }
}

#[test]
fn scalar_and_packed_simulation_agree() {
    for spec in roster(13) {
        let n = build(&spec.with_carry_in(CarryInMode::Variable)).unwrap();
        let vs = random_vectors(13, true, 300, 5);
        let packed = Simulator::new(&n).unwrap().run_vectors(&vs).unwrap();
        for (v, p) in vs.iter().zip(packed) {
            assert_eq!(simulate(&n, v).unwrap(), p);
            let mut bits: Vec<bool> = (0..13).map(|i| v.a >> i & 1 == 1).collect();
            bits.extend((0..13).map(|i| v.b >> i & 1 == 1));
            bits.push(v.cin.unwrap());
            let all = simulate_bits(&n, &bits).unwrap();
            assert_eq!(all[n.carry_out().unwrap().index()], p.cout);
        }
    }
}

#[test]
fn directed_corners_hit_full_carry_chain() {
    let vs = directed_vectors(64, false);
    let full = Vector {
        a: u64::MAX,
        b: 1,
        cin: None,
    };
    assert!(vs.contains(&full));
    assert_eq!(oracle_add(full.a, full.b, false, 64).unwrap(), (0, true));
}
