//! The built-in presets: declarative payloads (as spec files) together
//! with expected-value tables generated by the independent counting
//! oracles, plus per-preset field constraints.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::specfile::*;

use super::oracles;

/// Which coefficient fields a preset is meaningful over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldRule {
    Any,
    RationalsOnly,
    CharacteristicTwo,
    OddPrime,
    NotCharacteristicTwo,
}

impl FieldRule {
    pub fn check(&self, field: FieldSpec) -> Result<()> {
        let ok = match self {
            FieldRule::Any => true,
            FieldRule::RationalsOnly => field == FieldSpec::Rationals,
            FieldRule::CharacteristicTwo => field.characteristic() == 2,
            FieldRule::OddPrime => field.characteristic() % 2 == 1,
            FieldRule::NotCharacteristicTwo => field.characteristic() != 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "field {field} is not legal for this preset ({})",
                match self {
                    FieldRule::Any => "any field",
                    FieldRule::RationalsOnly => "rationals only",
                    FieldRule::CharacteristicTwo => "characteristic 2 required",
                    FieldRule::OddPrime => "odd prime required",
                    FieldRule::NotCharacteristicTwo => "characteristic 2 not supported",
                }
            )))
        }
    }
}

pub struct Preset {
    pub name: &'static str,
    pub kind: RunKind,
    pub description: &'static str,
    /// The source statement the preset encodes, at object level.
    pub anchor: &'static str,
    pub default_field: FieldSpec,
    pub field_rule: FieldRule,
    pub build: fn(FieldSpec, u32) -> SpecFile,
}

fn gen(name: &str, degree: u32) -> GeneratorSpec {
    GeneratorSpec {
        name: name.into(),
        degree,
        flavor: "koszul".into(),
    }
}

fn ext(name: &str, degree: u32) -> GeneratorSpec {
    GeneratorSpec {
        name: name.into(),
        degree,
        flavor: "exterior".into(),
    }
}

fn entries(values: &[usize], provenance: fn(u32) -> &'static str) -> Vec<ExpectedEntry> {
    values
        .iter()
        .enumerate()
        .map(|(n, &v)| ExpectedEntry {
            value: v as u64,
            provenance: provenance(n as u32).into(),
        })
        .collect()
}

fn base_file(name: &str, kind: RunKind, field: FieldSpec, n_max: u32) -> SpecFile {
    SpecFile {
        format_version: FORMAT_VERSION,
        name: Some(name.into()),
        kind,
        field: field.to_string(),
        truncation: n_max,
        cdga: None,
        amalgam: None,
        koszul: None,
        module: None,
        series: None,
        splitting: None,
        expected: None,
    }
}

fn im_emb_cdga_block() -> CdgaBlock {
    CdgaBlock {
        mode: "gc".into(),
        generators: vec![
            gen("a", 2),
            gen("b", 2),
            gen("e", 3),
            gen("f", 3),
            gen("g", 3),
            gen("h", 4),
        ],
        differential: BTreeMap::from([
            ("e".to_string(), "a^2".to_string()),
            ("f".to_string(), "b^2".to_string()),
            ("h".to_string(), "k*b*g".to_string()),
        ]),
        quotient_check: None,
        candidates: BTreeMap::new(),
        compare_through: None,
        sn_family: None,
    }
}

fn build_symp_m(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("symp_m_model", RunKind::Cdga, field, n_max);
    file.cdga = Some(CdgaBlock {
        mode: "gc".into(),
        generators: vec![gen("t", 1), gen("x", 3), gen("y", 3), gen("w", 4)],
        differential: BTreeMap::new(),
        quotient_check: None,
        candidates: BTreeMap::new(),
        compare_through: None,
        sn_family: None,
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::gc_series(&[1, 3, 3, 4], n_max), |_| {
            "enumerated"
        })),
    });
    file
}

fn build_symp_mtilde(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("symp_mtilde_model", RunKind::Cdga, field, n_max);
    file.cdga = Some(CdgaBlock {
        mode: "gc".into(),
        generators: vec![gen("tt", 1), gen("xt", 1), gen("yt", 1), gen("wt", 2)],
        differential: BTreeMap::new(),
        quotient_check: None,
        candidates: BTreeMap::new(),
        compare_through: None,
        sn_family: None,
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::gc_series(&[1, 1, 1, 2], n_max), |_| {
            "enumerated"
        })),
    });
    file
}

fn build_relative(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("relative_model", RunKind::Cdga, field, n_max);
    file.cdga = Some(CdgaBlock {
        mode: "gc".into(),
        generators: vec![
            gen("a", 2),
            gen("b", 2),
            gen("e", 3),
            gen("f", 3),
            gen("g", 3),
            gen("h", 4),
            gen("tt", 1),
            gen("xt", 1),
            gen("yt", 1),
            gen("wt", 2),
        ],
        differential: BTreeMap::from([
            ("e".to_string(), "a^2".to_string()),
            ("f".to_string(), "b^2".to_string()),
            ("h".to_string(), "k*b*g".to_string()),
            ("xt".to_string(), "a".to_string()),
            ("yt".to_string(), "b".to_string()),
            ("wt".to_string(), "g".to_string()),
        ]),
        quotient_check: Some(QuotientCheck {
            kill: ["xt", "yt", "a", "b", "wt", "g"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            expect_generators: ["e", "f", "h", "tt"].iter().map(|s| s.to_string()).collect(),
            expect_zero_differential: true,
        }),
        candidates: BTreeMap::from([
            ("t1".to_string(), "tt".to_string()),
            ("e1".to_string(), "e - a*xt".to_string()),
            ("f1".to_string(), "f - b*yt".to_string()),
            ("h1".to_string(), "h - k*b*wt".to_string()),
        ]),
        compare_through: None,
        sn_family: None,
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::gc_series(&[1, 3, 3, 4], n_max), |_| {
            "enumerated"
        })),
    });
    file
}

fn build_im_emb(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("im_emb_model", RunKind::Cdga, field, n_max);
    let mut block = im_emb_cdga_block();
    block.sn_family = Some(SnFamily {
        lead: "b".into(),
        pair: ("f".into(), "g".into()),
        sign: -1,
        power: "h".into(),
        provenance: "enumerated".into(),
    });
    file.cdga = Some(block);
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::im_emb_series(n_max), |n| {
            if oracles::im_emb_stated_degree(n) {
                "stated"
            } else {
                "enumerated"
            }
        })),
    });
    file
}

fn build_emb(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("emb_model", RunKind::Cdga, field, n_max);
    file.cdga = Some(CdgaBlock {
        mode: "gc".into(),
        generators: vec![
            gen("dab", 2),
            gen("e", 3),
            gen("f", 3),
            gen("g", 3),
            gen("v", 3),
            gen("h", 4),
        ],
        differential: BTreeMap::from([
            ("e".to_string(), "dab^2".to_string()),
            ("h".to_string(), "-k*dab*g".to_string()),
        ]),
        quotient_check: None,
        candidates: BTreeMap::new(),
        compare_through: Some(6),
        sn_family: Some(SnFamily {
            lead: "dab".into(),
            pair: ("e".into(), "g".into()),
            sign: 1,
            power: "h".into(),
            provenance: "stated".into(),
        }),
    });
    let clip = (n_max as usize + 1).min(oracles::EMB_SERIES_THROUGH_6.len());
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::EMB_SERIES_THROUGH_6[..clip], |n| {
            if matches!(n, 1 | 3 | 4) {
                "stated"
            } else {
                "enumerated"
            }
        })),
    });
    file
}

fn build_pontryagin_tilde(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("pontryagin_tilde", RunKind::Amalgam, field, n_max);
    file.amalgam = Some(AmalgamBlock {
        a: vec![ext("x", 1), ext("z", 1)],
        b: vec![ext("y", 1), ext("t", 1)],
        c: vec![ext("c", 1)],
        phi_a: BTreeMap::from([("c".to_string(), "x + z".to_string())]),
        phi_b: BTreeMap::from([("c".to_string(), "y".to_string())]),
        cross_check_ring: Some(RingSpec {
            factors: vec![
                RingFactorSpec {
                    mode: "tensor".into(),
                    generators: vec![gen("t", 1), gen("x", 1)],
                },
                RingFactorSpec {
                    mode: "gc".into(),
                    generators: vec![ext("y", 1)],
                },
            ],
            relations: vec!["t^2".into(), "x^2".into()],
        }),
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::pontryagin_tilde_series(n_max), |_| {
            "enumerated"
        })),
    });
    file
}

fn build_pontryagin_full(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("pontryagin_full", RunKind::Amalgam, field, n_max);
    file.amalgam = Some(AmalgamBlock {
        a: vec![ext("x3", 3), ext("y3", 3)],
        b: vec![ext("y3p", 3), ext("t", 1)],
        c: vec![ext("c3", 3)],
        phi_a: BTreeMap::from([("c3".to_string(), "x3 + y3".to_string())]),
        phi_b: BTreeMap::from([("c3".to_string(), "y3p".to_string())]),
        cross_check_ring: Some(RingSpec {
            factors: vec![
                RingFactorSpec {
                    mode: "gc".into(),
                    generators: vec![ext("y3", 3)],
                },
                RingFactorSpec {
                    mode: "tensor".into(),
                    generators: vec![gen("t", 1), gen("x3", 3)],
                },
            ],
            relations: vec!["t^2".into(), "x3^2".into()],
        }),
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::pontryagin_full_series(n_max), |_| {
            "enumerated"
        })),
    });
    file
}

fn build_tor_h4(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("tor_h4", RunKind::Koszul, field, n_max);
    file.koszul = Some(KoszulBlock {
        ring_generators: vec![gen("z", 2), gen("r", 2), gen("s", 2)],
        ring_relations: vec!["z*r - z*s".into()],
        exterior_generators: vec![
            ExtGeneratorSpec { name: "alpha".into(), ext: -1, internal: 2 },
            ExtGeneratorSpec { name: "beta".into(), ext: -1, internal: 4 },
            ExtGeneratorSpec { name: "gamma".into(), ext: -1, internal: 4 },
            ExtGeneratorSpec { name: "delta".into(), ext: -2, internal: 6 },
        ],
        differential: BTreeMap::from([
            ("alpha".to_string(), "z".to_string()),
            ("beta".to_string(), "r^2".to_string()),
            ("gamma".to_string(), "s^2".to_string()),
            ("delta".to_string(), "alpha*r^2 - alpha*s^2".to_string()),
        ]),
        ext_floor: crate::koszul::DEFAULT_EXT_FLOOR,
        probe: vec!["delta".into(), "alpha*beta".into(), "alpha*gamma".into()],
        probe_expect_dim: Some(0),
        representative_check: Some((4, "rs".into())),
        cross_check_cdga: Some(Box::new(im_emb_cdga_block())),
        compare_through: Some(4),
    });
    let clip = (n_max as usize + 1).min(oracles::TOR_TOTALS.len());
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::TOR_TOTALS[..clip], |n| match n {
            0 => "immediate",
            4 => "stated",
            _ => "enumerated",
        })),
    });
    file
}

fn build_fiber_z2(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("fiber_z2", RunKind::TensorModule, field, n_max);
    file.module = Some(ModuleBlock {
        generators: vec![gen("w2", 2), gen("w3", 3), gen("w4", 4)],
        sub: vec!["w2".into()],
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::fiber_series(n_max), |_| "enumerated")),
    });
    file
}

fn build_z2_split(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("im_emb_z2_split", RunKind::SeriesIdentity, field, n_max);
    file.series = Some(SeriesBlock {
        z2_split: Some(Z2SplitBlock {
            base: RingSpec {
                factors: vec![RingFactorSpec {
                    mode: "gc".into(),
                    generators: vec![gen("a", 2), gen("b", 2)],
                }],
                relations: vec!["a^2".into(), "b^2".into()],
            },
            fiber: ModuleBlock {
                generators: vec![gen("w2", 2), gen("w3", 3), gen("w4", 4)],
                sub: vec!["w2".into()],
            },
            rational_fiber: RingSpec {
                factors: vec![RingFactorSpec {
                    mode: "gc".into(),
                    generators: vec![ext("g", 3), gen("h", 4)],
                }],
                relations: vec![],
            },
            first_excess_degree: 5,
        }),
        zp_match: None,
    });
    let expected = oracles::convolve(&oracles::BASE_S2XS2, &oracles::fiber_series(n_max), n_max as usize);
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&expected, |_| "enumerated")),
    });
    file
}

fn build_zp_match(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("zp_dimension_match", RunKind::SeriesIdentity, field, n_max);
    file.series = Some(SeriesBlock {
        z2_split: None,
        zp_match: Some(ZpMatchBlock {
            finite: RingSpec {
                factors: vec![RingFactorSpec {
                    mode: "gc".into(),
                    generators: vec![gen("a", 2), gen("b", 2), gen("g", 3)],
                }],
                relations: vec!["a^2".into(), "b^2".into(), "b*g".into()],
            },
            tails: vec!["b".into(), "g".into(), "a*b".into(), "a*g".into()],
            divided: GeneratorSpec {
                name: "h".into(),
                degree: 4,
                flavor: "divided-power".into(),
            },
            rational: im_emb_cdga_block(),
        }),
    });
    file.expected = Some(ExpectedBlock {
        series: Some(entries(&oracles::im_emb_series(n_max), |n| {
            if oracles::im_emb_stated_degree(n) {
                "stated"
            } else {
                "enumerated"
            }
        })),
    });
    file
}

fn build_splitting(field: FieldSpec, n_max: u32) -> SpecFile {
    let mut file = base_file("splitting_check", RunKind::Splitting, field, n_max);
    file.splitting = Some(SplittingBlock {
        model_degrees: vec![2, 2, 3, 3, 3, 4],
        base_degrees: vec![2, 2, 3, 3],
        fiber_degrees: vec![3, 4],
    });
    file
}

/// The preset catalog, in stable order.
pub fn presets() -> &'static [Preset] {
    &[
        Preset {
            name: "symp_m_model",
            kind: RunKind::Cdga,
            description: "zero-differential model Lambda(t,x,y,w), degrees 1,3,3,4",
            anchor: "minimal model of the full symplectomorphism group: free graded algebra on t,x,y,w with |t|=1, |x|=|y|=3, |w|=4 and zero differential",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::RationalsOnly,
            build: build_symp_m,
        },
        Preset {
            name: "symp_mtilde_model",
            kind: RunKind::Cdga,
            description: "zero-differential model Lambda(tt,xt,yt,wt), degrees 1,1,1,2",
            anchor: "minimal model of the blow-up symplectomorphism group: generators in degrees 1,1,1,2, zero differential",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::RationalsOnly,
            build: build_symp_mtilde,
        },
        Preset {
            name: "relative_model",
            kind: RunKind::Cdga,
            description: "relative model Lambda(a,b,e,f,g,h) (x) Lambda(tt,xt,yt,wt)",
            anchor: "relative model of the group fibration: d(xt)=a, d(yt)=b, d(wt)=g, d(e)=a^2, d(f)=b^2, d(h)=k b g; cohomology agrees with Lambda(t,x,y,w)",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::RationalsOnly,
            build: build_relative,
        },
        Preset {
            name: "im_emb_model",
            kind: RunKind::Cdga,
            description: "minimal model of the unparametrized-ball space, generators 2,2,3,3,3,4",
            anchor: "Lambda(a,b,e,f,g,h) with d(e)=a^2, d(f)=b^2, d(h)=k b g (k != 0); H^3 and every H^{4n+3} have rank 1, H^4 is one-dimensional",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::RationalsOnly,
            build: build_im_emb,
        },
        Preset {
            name: "emb_model",
            kind: RunKind::Cdga,
            description: "minimal model of the parametrized-ball space, generators 2,3,3,3,3,4",
            anchor: "Lambda(dab,e,f,g,v,h) with d(e)=dab^2, d(h)=-k dab g; carries the cocycle family s_n = h^{n-1}(h dab + n k e g)",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::RationalsOnly,
            build: build_emb,
        },
        Preset {
            name: "pontryagin_tilde",
            kind: RunKind::Amalgam,
            description: "torus amalgam over the diagonal circle",
            anchor: "pushout of two torus homologies over a circle equals (k<t,x>/<t^2,x^2>) (x) Lambda(y), over Q and every F_p",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::Any,
            build: build_pontryagin_tilde,
        },
        Preset {
            name: "pontryagin_full",
            kind: RunKind::Amalgam,
            description: "rank-3 amalgam over the diagonal degree-3 class",
            anchor: "pushout of Lambda(x3,y3) and Lambda(y3p,t) over Lambda(c3) equals Lambda(y3) (x) k<t,x3>/<t^2,x3^2>",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::NotCharacteristicTwo,
            build: build_pontryagin_full,
        },
        Preset {
            name: "tor_h4",
            kind: RunKind::Koszul,
            description: "Koszul resolution over Q[z,r,s]/<z(r-s)>; Tor totals through degree 4",
            anchor: "exterior generators alpha,beta,gamma,delta with d(alpha)=z, d(beta)=r^2, d(gamma)=s^2, d(delta)=alpha(r^2-s^2); the only total-degree-4 class is generated by rs",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::RationalsOnly,
            build: build_tor_h4,
        },
        Preset {
            name: "fiber_z2",
            kind: RunKind::TensorModule,
            description: "T(w2,w3,w4) (x)_{T(w2)} F2 dimensions",
            anchor: "right-module quotient of the tensor algebra on w2,w3,w4 by the subalgebra on w2: words not ending in w2",
            default_field: FieldSpec::Prime(2),
            field_rule: FieldRule::CharacteristicTwo,
            build: build_fiber_z2,
        },
        Preset {
            name: "im_emb_z2_split",
            kind: RunKind::SeriesIdentity,
            description: "F2 homology splits as base (x) fiber; strict excess over Q from degree 5",
            anchor: "H(S^2 x S^2; F2) convolved with the F2 fiber series, compared with the rational analogue: torsion evidence",
            default_field: FieldSpec::Prime(2),
            field_rule: FieldRule::CharacteristicTwo,
            build: build_z2_split,
        },
        Preset {
            name: "zp_dimension_match",
            kind: RunKind::SeriesIdentity,
            description: "odd-prime divided-power assembly matches the rational betti series",
            anchor: "Lambda(a,b,g)/<a^2,b^2,bg> with tails b,g,ab,ag times the positive divided powers of h: dimensions equal the rational series",
            default_field: FieldSpec::Prime(3),
            field_rule: FieldRule::OddPrime,
            build: build_zp_match,
        },
        Preset {
            name: "splitting_check",
            kind: RunKind::Splitting,
            description: "model generator degrees = base degrees union fiber degrees",
            anchor: "degrees 2,2,3,3,3,4 of the model split as {2,2,3,3} from S^2 x S^2 and {3,4} from the fiber S^3 x Omega S^5",
            default_field: FieldSpec::Rationals,
            field_rule: FieldRule::Any,
            build: build_splitting,
        },
    ]
}

pub fn find(name: &str) -> Result<&'static Preset> {
    presets()
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}
