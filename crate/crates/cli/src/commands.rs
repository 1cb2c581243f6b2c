//! One function per verb; each returns the rendered artifact.

use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use demuskin::catalog::{
    descriptor_splitting, nielsen_separation, sample_stabilizer_automorphisms, theorem_beta, validate_splitting,
    whitehead_minimal, whitehead_minimize, DemuskinParams, Level, MoveJson, SplitDescriptor, SplitKind,
    SplittingReport, WhiteheadReport,
};
use demuskin::complex::{compare_descriptors, curve_complex_slice, verdict_provenance, Provenance};
use demuskin::io::{graph_to_dot, slice_to_dot, to_json, SCHEMA_VERSION};
use demuskin::normal_forms::{splittings_intersect, Splitting, SplittingJson};
use demuskin::pquot::{
    certify_outer as search_certificate, heisenberg_case_hom, load_certificate, Elem, TargetDesc, TorsionCase,
};
use demuskin::words::{conjugate_in_free, parse_word, Alphabet, Word};

use crate::error::CliError;
use crate::{Format, GroupArgs, KindArg, SplitArgs, WordArgs};

type Out = Result<String, CliError>;

fn json<T: Serialize>(body: &T) -> Out {
    Ok(to_json(body)?)
}

fn no_dot(verb: &str) -> CliError {
    CliError::Domain(format!("`{verb}` has no DOT rendering"))
}

/// Inline JSON or a file path; a `schema_version`, when present, must match.
fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    let mut v: Value = serde_json::from_str(&text)?;
    if let Some(obj) = v.as_object_mut() {
        if let Some(found) = obj.remove("schema_version") {
            if found.as_u64() != Some(u64::from(SCHEMA_VERSION)) {
                return Err(CliError::Schema(format!("unsupported schema_version {found}")));
            }
        }
    }
    Ok(v)
}

fn params_and_kind(g: &GroupArgs) -> Result<(DemuskinParams, Option<SplitKind>), CliError> {
    let (params, kind) = match &g.params {
        Some(arg) => {
            let v = read_json(arg)?;
            if v.get("kind").is_some() {
                let d: SplitDescriptor = serde_json::from_value(v)?;
                (d.params, Some(d.kind))
            } else {
                (serde_json::from_value::<DemuskinParams>(v)?, None)
            }
        }
        None => (
            DemuskinParams {
                p: g.p,
                d: g.d,
                r: g.r,
                rprime: g.rprime.unwrap_or(Level::Infinite),
            },
            None,
        ),
    };
    params.check()?;
    Ok((params, kind))
}

fn params(g: &GroupArgs) -> Result<DemuskinParams, CliError> {
    Ok(params_and_kind(g)?.0)
}

fn split_kind(k: KindArg, n: usize) -> SplitKind {
    match k {
        KindArg::Hnn => SplitKind::Hnn,
        KindArg::HnnDef => SplitKind::HnnDef,
        KindArg::Amalg => SplitKind::Amalg(n),
    }
}

fn descriptor(g: &GroupArgs, s: &SplitArgs) -> Result<SplitDescriptor, CliError> {
    let (params, kind) = params_and_kind(g)?;
    Ok(SplitDescriptor {
        params,
        kind: kind.unwrap_or_else(|| split_kind(s.kind, s.n)),
    })
}

fn splitting(d: &SplitDescriptor, beta: bool) -> Result<Splitting, CliError> {
    Ok(if beta {
        theorem_beta(&d.params, d.kind)?
    } else {
        descriptor_splitting(d)?
    })
}

fn word_in(g: &GroupArgs, w: &WordArgs) -> Result<(Arc<Alphabet>, Option<Word>), CliError> {
    let alphabet = match &w.alphabet {
        Some(list) => Alphabet::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))?,
        None => params(g)?.alphabet(),
    };
    let word = w.word.as_deref().map(|t| parse_word(&alphabet, t)).transpose()?;
    Ok((alphabet, word))
}

#[derive(Serialize)]
struct PresentOut {
    params: DemuskinParams,
    generators: Vec<String>,
    relator: String,
    relator_pairs: Vec<(String, i64)>,
    relator_length: usize,
}

pub fn present(g: &GroupArgs, format: Format) -> Out {
    let p = params(g)?;
    let w = p.relator()?;
    let a = p.alphabet();
    match format {
        Format::Json => json(&PresentOut {
            params: p,
            generators: a.names().to_vec(),
            relator: w.to_string(),
            relator_pairs: w.to_pairs(),
            relator_length: w.len(),
        }),
        Format::Text => Ok(format!("< {} | {} >\n", a.names().join(", "), w)),
        Format::Dot => Err(no_dot("present")),
    }
}

#[derive(Serialize)]
struct SplitOut {
    descriptor: SplitDescriptor,
    beta: bool,
    edge_word: String,
    splitting: SplittingJson,
}

pub fn split(g: &GroupArgs, s: &SplitArgs, format: Format) -> Out {
    let d = descriptor(g, s)?;
    let sp = splitting(&d, s.beta)?;
    let name = format!("{} {}{}", d.params, d.kind, if s.beta { " beta" } else { "" });
    match format {
        Format::Json => json(&SplitOut {
            descriptor: d,
            beta: s.beta,
            edge_word: sp.edge_word().to_string(),
            splitting: SplittingJson::from(&sp),
        }),
        Format::Dot => Ok(graph_to_dot(&sp.to_graph(), &name)),
        Format::Text => Ok(format!("{name}\nedge word: {}\n", sp.edge_word())),
    }
}

#[derive(Serialize)]
struct ValidateOut {
    params: DemuskinParams,
    descriptor: Option<SplitDescriptor>,
    valid: bool,
    report: SplittingReport,
}

/// An invalid splitting is a domain error whose diagnostic carries the report.
pub fn validate(g: &GroupArgs, s: &SplitArgs, file: Option<&Path>, format: Format) -> Out {
    let (params, sp, descriptor) = match file {
        Some(path) => {
            let v = read_json(&path.to_string_lossy())?;
            let sj: SplittingJson = serde_json::from_value(v)?;
            (params(g)?, sj.into_splitting()?, None)
        }
        None => {
            let d = descriptor(g, s)?;
            (d.params, splitting(&d, s.beta)?, Some(d))
        }
    };
    let report = validate_splitting(&sp, &params)?;
    let out = ValidateOut {
        params,
        descriptor,
        valid: report.valid(),
        report,
    };
    if !out.valid {
        return Err(CliError::Domain(format!(
            "splitting does not present the group: {}",
            json(&out)?.trim()
        )));
    }
    match format {
        Format::Json => json(&out),
        Format::Text => Ok("valid\n".into()),
        Format::Dot => Err(no_dot("validate")),
    }
}

#[derive(Serialize)]
struct TwistOut {
    descriptor: SplitDescriptor,
    beta: bool,
    k: i64,
    images: Vec<(String, String)>,
    relator_image: String,
    relator_preserved: bool,
    word: Option<String>,
    word_image: Option<String>,
}

pub fn twist(g: &GroupArgs, s: &SplitArgs, k: i64, word: Option<&str>, format: Format) -> Out {
    let d = descriptor(g, s)?;
    let sp = splitting(&d, s.beta)?;
    let t = sp.ambient_twist(k);
    let w = d.params.relator()?;
    let relator_image = t.apply(&w)?;
    let input = word.map(|text| parse_word(sp.ambient(), text)).transpose()?;
    let word_image = input.as_ref().map(|x| t.apply(x)).transpose()?;
    let out = TwistOut {
        descriptor: d,
        beta: s.beta,
        k,
        images: sp
            .ambient()
            .names()
            .iter()
            .cloned()
            .zip(t.images().iter().map(Word::to_string))
            .collect(),
        relator_preserved: conjugate_in_free(&relator_image, &w) || conjugate_in_free(&relator_image, &w.inverse()),
        relator_image: relator_image.to_string(),
        word: input.map(|x| x.to_string()),
        word_image: word_image.map(|x| x.to_string()),
    };
    match format {
        Format::Json => json(&out),
        Format::Text => Ok(out.images.iter().map(|(x, img)| format!("{x} -> {img}\n")).collect()),
        Format::Dot => Err(no_dot("twist")),
    }
}

#[derive(Serialize)]
struct ReduceOut {
    alphabet: Vec<String>,
    reduced: String,
    length: usize,
    cyclic_core: String,
    conjugator: String,
    cyclic_length: usize,
    primitive_root: String,
    root_exponent: i64,
}

pub fn reduce(g: &GroupArgs, w: &WordArgs, format: Format) -> Out {
    let (alphabet, word) = word_in(g, w)?;
    let word = word.ok_or_else(|| CliError::Schema("`reduce` needs --word".into()))?;
    let (core, conj) = word.cyclic_reduce();
    let (root, e) = word.primitive_root();
    let out = ReduceOut {
        alphabet: alphabet.names().to_vec(),
        reduced: word.to_string(),
        length: word.len(),
        cyclic_length: core.len(),
        cyclic_core: core.to_string(),
        conjugator: conj.to_string(),
        primitive_root: root.to_string(),
        root_exponent: e,
    };
    match format {
        Format::Json => json(&out),
        Format::Text => Ok(format!("{}\n", out.reduced)),
        Format::Dot => Err(no_dot("reduce")),
    }
}

#[derive(Serialize)]
struct TlengthOut {
    descriptor: SplitDescriptor,
    beta: bool,
    word: String,
    normal_form: String,
    syllable_length: usize,
    elliptic: bool,
    translation_length: u64,
}

pub fn tlength(g: &GroupArgs, s: &SplitArgs, word: &str, format: Format) -> Out {
    let d = descriptor(g, s)?;
    let sp = splitting(&d, s.beta)?;
    let w = parse_word(sp.ambient(), word)?;
    let nf = sp.syllable_reduce(&sp.to_syllables(&w)?)?;
    let m = sp.word_metrics(&w)?;
    let out = TlengthOut {
        descriptor: d,
        beta: s.beta,
        word: w.to_string(),
        normal_form: nf.to_string(),
        syllable_length: nf.length(),
        elliptic: m.elliptic,
        translation_length: m.translation_length,
    };
    match format {
        Format::Json => json(&out),
        Format::Text => Ok(format!(
            "{} ({}, translation length {})\n",
            out.normal_form,
            if m.elliptic { "elliptic" } else { "hyperbolic" },
            m.translation_length
        )),
        Format::Dot => Err(no_dot("tlength")),
    }
}

#[derive(Serialize)]
struct IntersectOut {
    first: SplitDescriptor,
    first_beta: bool,
    second: SplitDescriptor,
    second_beta: bool,
    compatible: Option<bool>,
    #[serde(flatten)]
    provenance: Provenance,
}

pub fn intersect(g: &GroupArgs, s: &SplitArgs, with: Option<(KindArg, usize)>, format: Format) -> Out {
    let first = descriptor(g, s)?;
    let (second, second_beta, compatible, provenance) = match with {
        Some((kind, n)) if !s.beta => {
            let second = SplitDescriptor {
                params: first.params,
                kind: split_kind(kind, n),
            };
            let pair = compare_descriptors(&first, &second)?;
            (second, false, pair.compatible, pair.provenance)
        }
        Some((kind, n)) => {
            let second = SplitDescriptor {
                params: first.params,
                kind: split_kind(kind, n),
            };
            let v = splittings_intersect(&splitting(&first, true)?, &descriptor_splitting(&second)?, None)?;
            let (c, p) = verdict_provenance(v);
            (second, false, c, p)
        }
        None => {
            let v = splittings_intersect(
                &descriptor_splitting(&first)?,
                &theorem_beta(&first.params, first.kind)?,
                None,
            )?;
            let (c, p) = verdict_provenance(v);
            (first, true, c, p)
        }
    };
    let out = IntersectOut {
        first,
        first_beta: s.beta,
        second,
        second_beta,
        compatible,
        provenance,
    };
    match format {
        Format::Json => json(&out),
        Format::Text => Ok(match out.compatible {
            Some(true) => "compatible\n".into(),
            Some(false) => "intersecting\n".into(),
            None => "inconclusive\n".into(),
        }),
        Format::Dot => match &out.provenance {
            Provenance::Refinement { graph } => {
                let g = graph
                    .clone()
                    .into_graph()
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                Ok(graph_to_dot(&g, "refinement"))
            }
            _ => Err(CliError::Domain("only a refinement witness has a DOT rendering".into())),
        },
    }
}

/// The certificate carries its own `schema_version`, so it is written as is.
pub fn certify_outer(g: &GroupArgs, s: &SplitArgs, k: i64, verify: Option<&Path>, format: Format) -> Out {
    if s.beta {
        return Err(CliError::Domain(
            "certificates are for catalog splittings α only".into(),
        ));
    }
    let cert = match verify {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            load_certificate(&text)?
        }
        None => {
            let d = descriptor(g, s)?;
            search_certificate(&d.params, d.kind, k)?
        }
    };
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&cert)?;
            text.push('\n');
            Ok(text)
        }
        Format::Text => Ok(format!(
            "T^{} along {} is outer: c -> {:?}, T(c) -> {:?} not conjugate in {:?}\n",
            cert.k, cert.splitting, cert.images.c, cert.images.twisted, cert.quotient
        )),
        Format::Dot => Err(no_dot("certify-outer")),
    }
}

#[derive(Serialize)]
struct SampleOut {
    moves: Vec<MoveJson>,
    images: Vec<(String, String)>,
}

#[derive(Serialize)]
struct WhiteheadOut {
    report: WhiteheadReport,
    minimized: String,
    minimized_length: usize,
    moves: Vec<MoveJson>,
    seed: u64,
    samples: Vec<SampleOut>,
}

pub fn whitehead(g: &GroupArgs, w: &WordArgs, samples: usize, seed: u64, format: Format) -> Out {
    let (_, word) = word_in(g, w)?;
    let word = match word {
        Some(word) => word,
        None => params(g)?.relator()?,
    };
    let report = whitehead_minimal(&word);
    let (min, moves) = whitehead_minimize(&word);
    let samples = sample_stabilizer_automorphisms(&word, samples, seed)
        .into_iter()
        .map(|s| SampleOut {
            moves: s.moves.iter().map(|m| m.to_json(word.alphabet())).collect(),
            images: s
                .forward
                .domain()
                .names()
                .iter()
                .cloned()
                .zip(s.forward.images().iter().map(Word::to_string))
                .collect(),
        })
        .collect();
    let out = WhiteheadOut {
        minimized_length: min.cyclic_len(),
        minimized: min.to_string(),
        moves: moves.iter().map(|m| m.to_json(word.alphabet())).collect(),
        report,
        seed,
        samples,
    };
    match format {
        Format::Json => json(&out),
        Format::Text => Ok(format!(
            "{} (length {}): {}\n",
            out.report.word,
            out.report.length,
            if out.report.minimal { "minimal" } else { "not minimal" }
        )),
        Format::Dot => Err(no_dot("whitehead")),
    }
}

pub fn separate(g: &GroupArgs, rprimes: &[Level], primes: &[u64], format: Format) -> Out {
    let rep = nielsen_separation(&params(g)?, rprimes, primes)?;
    match format {
        Format::Json => json(&rep),
        Format::Text => Ok(rep
            .pairs
            .iter()
            .map(|p| format!("r'={} vs r'={}: {:?}\n", p.a, p.b, p.verdict))
            .collect()),
        Format::Dot => Err(no_dot("separate")),
    }
}

#[derive(Serialize)]
struct QuotientOut {
    descriptor: SplitDescriptor,
    s: u32,
    case: TorsionCase,
    target: TargetDesc,
    images: Vec<(String, Elem)>,
    relator_image: Elem,
    edge_word: String,
    edge_image: Elem,
    edge_order: u64,
}

pub fn quotient(g: &GroupArgs, sp: &SplitArgs, s: u32, format: Format) -> Out {
    let d = descriptor(g, sp)?;
    let (hom, case) = heisenberg_case_hom(&d.params, s, d.kind)?;
    let c = descriptor_splitting(&d)?.edge_word();
    let edge_image = hom.eval(&c)?;
    let out = QuotientOut {
        descriptor: d,
        s,
        case,
        target: hom.desc().clone(),
        images: hom
            .alphabet()
            .names()
            .iter()
            .cloned()
            .zip(hom.images().iter().cloned())
            .collect(),
        relator_image: hom.eval(&d.params.relator()?)?,
        edge_word: c.to_string(),
        edge_order: hom.group().elem_order(&edge_image),
        edge_image,
    };
    match format {
        Format::Json => json(&out),
        Format::Text => Ok(format!(
            "{:?}: c -> {:?} of order {}\n",
            out.case, out.edge_image, out.edge_order
        )),
        Format::Dot => Err(no_dot("quotient")),
    }
}

pub fn curve_complex(g: &GroupArgs, rprime_max: u32, format: Format) -> Out {
    let p = params(g)?;
    let slice = curve_complex_slice(p.p, p.d, p.r, rprime_max)?;
    match format {
        Format::Json => json(&slice),
        Format::Dot => Ok(slice_to_dot(&slice)),
        Format::Text => Ok(format!(
            "{} vertices, {} edges, {} pairs\n",
            slice.vertices.len(),
            slice.edges.len(),
            slice.pairs.len()
        )),
    }
}
