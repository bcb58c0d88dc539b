//! Property suites run over the bundled corpus, producing a deterministic
//! pass/fail report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::constructions::{build_c, cap, collar, representation_pipeline, star_cover};
use crate::corpus::{self, corpus, corpus_small, random_complex, random_subcomplex, CorpusEntry};
use crate::covers::{verify_nerve_theorem, NerveTheoremReport, SubcomplexCover};
use crate::deleted_product::{deleted_product, fineness_check_sd};
use crate::error::{Error, Result};
use crate::homology::{
    abelianization, edge_path_presentation, homology, simplicial_chain_complex, tietze_simplify,
    AbelianGroup, HomologyGroups, TietzeStatus, DEFAULT_TIETZE_BUDGET,
};
use crate::iso::is_isomorphic;
use crate::neighborhoods::{is_apex, verify_nbhd_intersection_in, DerivedAmbient};
use crate::subdivision::{sd, sd_n_capped, DEFAULT_MAX_FACETS};

pub const SUITES: &[&str] = &[
    "star-cover",
    "derived-nbhd",
    "two-components",
    "homology",
    "nerve-theorem",
    "collar",
    "deleted-product",
    "pi1",
    "representation",
    "all",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// The property under test, or `plumbing` for harness checks.
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        Self {
            suite: suite.to_owned(),
            checks,
            summary,
        }
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed > 0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let _ = write!(out, "{tag:4}  {}  [{}]", c.name, c.anchor);
            if !c.details.is_empty() {
                let _ = write!(out, "  {}", c.details);
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} checks, {} passed, {} failed, {} skipped",
            self.suite, s.total, s.passed, s.failed, s.skipped
        );
        out
    }
}

/// Inputs for a suite run. By default suites use the bundled corpus;
/// explicit inputs replace it.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub small: bool,
    pub seed: u64,
    pub max_facets: u128,
    pub random_complexes: usize,
    pub random_subcomplexes: usize,
    pub random_triples: usize,
    pub complexes: Option<Vec<CorpusEntry>>,
    pub covers: Option<Vec<(String, SubcomplexCover)>>,
    /// `(K, M)` pairs for the representation suite.
    pub pairs: Option<Vec<(String, SimplicialComplex, SimplicialComplex)>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            small: false,
            seed: 0x6e65_7276,
            max_facets: DEFAULT_MAX_FACETS,
            random_complexes: 200,
            random_subcomplexes: 20,
            random_triples: 100,
            complexes: None,
            covers: None,
            pairs: None,
        }
    }
}

impl VerifyConfig {
    /// The small corpus with fewer random samples and no random complexes.
    pub fn small() -> Self {
        Self {
            small: true,
            random_complexes: 0,
            random_subcomplexes: 5,
            random_triples: 10,
            ..Self::default()
        }
    }

    fn entries(&self) -> Vec<CorpusEntry> {
        match &self.complexes {
            Some(c) => c.clone(),
            None if self.small => corpus_small(),
            None => corpus(),
        }
    }

    /// Random extras only accompany the bundled corpus.
    fn use_random(&self) -> bool {
        self.complexes.is_none()
    }
}

fn check(name: impl Into<String>, anchor: &str, passed: bool, details: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        anchor: anchor.to_owned(),
        status: if passed { Status::Pass } else { Status::Fail },
        details: details.into(),
    }
}

fn error_check(name: impl Into<String>, anchor: &str, err: &Error) -> Check {
    check(name, anchor, false, format!("error: {err}"))
}

fn record(out: &mut Vec<Check>, name: String, anchor: &str, result: Result<(bool, String)>) {
    out.push(match result {
        Ok((passed, details)) => check(name, anchor, passed, details),
        Err(e) => error_check(name, anchor, &e),
    });
}

pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<VerificationReport> {
    let checks = match name {
        "star-cover" => star_cover_suite(config),
        "derived-nbhd" => derived_nbhd_suite(config),
        "two-components" => two_components_suite(),
        "homology" => homology_suite(config),
        "nerve-theorem" => nerve_theorem_suite(config),
        "collar" => collar_suite(),
        "deleted-product" => deleted_product_suite(config),
        "pi1" => pi1_suite(config),
        "representation" => representation_suite(config),
        "all" => {
            let mut all = Vec::new();
            for suite in SUITES.iter().filter(|s| **s != "all") {
                all.extend(run_suite(suite, config)?.checks);
            }
            all
        }
        other => return Err(Error::Input(format!("unknown suite `{other}`"))),
    };
    Ok(VerificationReport::new(name, checks))
}

const STAR_ANCHOR: &str = "star-cover nerve equals K; each nonempty intersection is a cone";

/// Nerve of the star cover is `K`, and `X_S` is a cone on the vertex `[S]`.
pub fn star_cover_property(complex: &SimplicialComplex) -> Result<(bool, String)> {
    let cover = star_cover(complex)?;
    let nerve = cover.nerve();
    if nerve != *complex || !is_isomorphic(&nerve, complex) {
        return Ok((false, format!("nerve f-vector {:?}", nerve.f_vector())));
    }
    for face in complex.faces() {
        let x = cover.intersection(face.vertices())?;
        if !is_apex(&x, &Vertex::new(face.label())?) {
            return Ok((false, format!("X_{face} is not a cone on {}", face.label())));
        }
    }
    Ok((true, format!("{} faces", complex.num_faces())))
}

fn star_cover_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for e in config.entries() {
        record(&mut out, format!("star-cover/{}", e.name), STAR_ANCHOR, star_cover_property(&e.complex));
    }
    if config.use_random() && config.random_complexes > 0 {
        let mut rng = corpus::rng(config.seed);
        let mut bad = Vec::new();
        for i in 0..config.random_complexes {
            let k = random_complex(&mut rng, 8, 3);
            match star_cover_property(&k) {
                Ok((true, _)) => {}
                Ok((false, d)) => bad.push(format!("#{i}: {d}")),
                Err(e) => bad.push(format!("#{i}: {e}")),
            }
        }
        out.push(check(
            format!("star-cover/random-{}", config.random_complexes),
            STAR_ANCHOR,
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    out
}

/// The ambients used for neighborhood checks.
pub fn neighborhood_ambients(small: bool) -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![
        ("boundary-delta-3".to_owned(), SimplicialComplex::boundary_of_simplex(3).expect("d >= 1")),
        ("cycle-3".to_owned(), corpus::cycle(3)),
    ];
    if !small {
        out.push(("boundary-delta-4".to_owned(), SimplicialComplex::boundary_of_simplex(4).expect("d >= 1")));
        out.push(("csaszar-torus".to_owned(), corpus::csaszar_torus()));
    }
    out
}

/// Cores used against an ambient: every vertex, every edge, and `extra`
/// random subcomplexes.
pub fn neighborhood_cores(
    ambient: &SimplicialComplex,
    extra: usize,
    rng: &mut impl rand::Rng,
) -> Vec<SimplicialComplex> {
    let mut cores: Vec<SimplicialComplex> = ambient
        .faces()
        .iter()
        .filter(|f| f.dim() <= 1)
        .map(|f| SimplicialComplex::from_simplices([f.clone()]))
        .collect();
    cores.extend((0..extra).map(|_| random_subcomplex(rng, ambient)));
    cores
}

fn derived_nbhd_suite(config: &VerifyConfig) -> Vec<Check> {
    const FORMULA: &str = "faces with mu(mu(sigma)) in L form the derived neighborhood";
    const MEET: &str = "N(L1 meet L2) equals N(L1) meet N(L2)";
    let mut out = Vec::new();
    let mut rng = corpus::rng(config.seed ^ 1);
    for (name, m) in neighborhood_ambients(config.small) {
        let amb = match DerivedAmbient::with_cap(&m, config.max_facets) {
            Ok(a) => a,
            Err(e) => {
                out.push(error_check(format!("derived-nbhd/{name}"), FORMULA, &e));
                continue;
            }
        };
        let cores = neighborhood_cores(&m, config.random_subcomplexes, &mut rng);
        let result = cores.iter().try_fold(Vec::new(), |mut bad, l| {
            if amb.neighborhood(l)? != amb.neighborhood_oracle(l)? {
                bad.push(format!("{:?}", l.facets().iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
            Ok(bad)
        });
        record(
            &mut out,
            format!("derived-nbhd/{name}"),
            FORMULA,
            result.map(|bad: Vec<String>| {
                let n = cores.len();
                (bad.is_empty(), if bad.is_empty() { format!("{n} cores") } else { bad.join(" ") })
            }),
        );
        let result = (0..config.random_triples).try_fold(0usize, |bad, _| {
            let l1 = random_subcomplex(&mut rng, &m);
            let l2 = random_subcomplex(&mut rng, &m);
            Ok::<_, Error>(bad + usize::from(!verify_nbhd_intersection_in(&amb, &l1, &l2)?))
        });
        record(
            &mut out,
            format!("nbhd-intersection/{name}"),
            MEET,
            result.map(|bad| (bad == 0, format!("{} pairs, {bad} mismatches", config.random_triples))),
        );
    }
    out
}

fn labels(l: &[&str]) -> Simplex {
    Simplex::from_labels(l.iter().copied()).expect("valid")
}

/// Components of the complement of `L` in `sd sd M`, and whether each
/// component `C` together with `N(L)` has vanishing `H_1`.
pub fn two_components_instance(
    ambient: &SimplicialComplex,
    core: &SimplicialComplex,
) -> Result<(usize, Vec<bool>)> {
    let amb = DerivedAmbient::new(ambient)?;
    let complement = amb.complement(core)?;
    let components = complement.connected_components();
    let h1_vanishes = components
        .iter()
        .map(|c| {
            let joined = amb.neighborhood_with(core, c)?;
            Ok(homology(&joined, false).group(1).is_trivial())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((components.len(), h1_vanishes))
}

fn two_components_suite() -> Vec<Check> {
    const ANCHOR: &str = "a separating cycle leaves exactly two complementary components";
    let sphere = SimplicialComplex::boundary_of_simplex(3).expect("d >= 1");
    let equator = SimplicialComplex::boundary_of_simplex(2).expect("d >= 1");
    let edge = SimplicialComplex::from_simplices([labels(&["1", "2"])]);
    let mut out = Vec::new();
    record(
        &mut out,
        "two-components/equator".into(),
        ANCHOR,
        two_components_instance(&sphere, &equator).map(|(n, h1)| {
            (
                n == 2 && h1.iter().all(|b| *b),
                format!("{n} components; H1(N(L) with C) vanishes: {h1:?}"),
            )
        }),
    );
    record(
        &mut out,
        "two-components/edge".into(),
        ANCHOR,
        two_components_instance(&sphere, &edge).map(|(n, _)| (n == 1, format!("{n} components"))),
    );
    out
}

fn sphere_homology(d: usize) -> HomologyGroups {
    let mut groups = vec![AbelianGroup::free(0); d + 1];
    groups[d] = AbelianGroup::free(1);
    HomologyGroups::integral(true, groups)
}

fn homology_suite(config: &VerifyConfig) -> Vec<Check> {
    const SPHERES: &str = "reduced homology of a simplex boundary";
    const INVARIANCE: &str = "homology is invariant under subdivision";
    const SQUARE: &str = "boundary of boundary is zero";
    let mut out = Vec::new();
    for d in 0..=3 {
        let b = SimplicialComplex::boundary_of_simplex(d + 1).expect("d >= 1");
        let h = homology(&b, true);
        out.push(check(
            format!("homology/boundary-delta-{}", d + 1),
            SPHERES,
            h.isomorphic(&sphere_homology(d)),
            h.to_string(),
        ));
    }
    let torus = homology(&corpus::csaszar_torus(), false);
    out.push(check(
        "homology/csaszar-torus",
        "torus homology is Z, Z^2, Z",
        torus.betti() == [1, 2, 1] && torus.groups.iter().all(|g| g.torsion.is_empty()),
        torus.to_string(),
    ));
    let rp2 = homology(&corpus::rp2_6(), false);
    out.push(check(
        "homology/rp2-6",
        "projective plane has H1 = Z/2",
        rp2.group(1).to_string() == "Z/2" && rp2.betti() == [1, 0, 0],
        rp2.to_string(),
    ));
    for e in config.entries() {
        let result = (|| {
            let h = homology(&e.complex, false);
            let once = sd(&e.complex)?;
            let twice = sd_n_capped(&e.complex, 2, config.max_facets)?;
            let same = homology(&once, false).isomorphic(&h) && homology(&twice, false).isomorphic(&h);
            let squares = [&e.complex, &once, &twice]
                .iter()
                .all(|k| simplicial_chain_complex(k).boundary_squares_to_zero());
            Ok((same, squares, h))
        })();
        match result {
            Ok((same, squares, h)) => {
                out.push(check(format!("sd-invariance/{}", e.name), INVARIANCE, same, h.to_string()));
                out.push(check(format!("boundary-squared/{}", e.name), SQUARE, squares, ""));
            }
            Err(Error::SizeCap { predicted, cap }) => out.push(Check {
                name: format!("sd-invariance/{}", e.name),
                anchor: INVARIANCE.into(),
                status: Status::Skipped,
                details: format!("second subdivision would have {predicted} facets (cap {cap})"),
            }),
            Err(e2) => out.push(error_check(format!("sd-invariance/{}", e.name), INVARIANCE, &e2)),
        }
    }
    out
}

fn nerve_theorem_suite(config: &VerifyConfig) -> Vec<Check> {
    const ANCHOR: &str = "acyclic cover: nerve, union and blowup share homology";
    let covers: Vec<(String, Result<SubcomplexCover>)> = match &config.covers {
        Some(c) => c.iter().map(|(n, c)| (n.clone(), Ok(c.clone()))).collect(),
        None => config
            .entries()
            .into_iter()
            .map(|e| (e.name, star_cover(&e.complex)))
            .collect(),
    };
    let mut out = Vec::new();
    for (name, cover) in covers {
        let result = cover.and_then(|c| verify_nerve_theorem(&c)).map(|r| {
            let details = match &r {
                NerveTheoremReport::Checked { nerve, .. } => format!("H = {nerve}"),
                NerveTheoremReport::PreconditionFailed { offending } => {
                    format!("non-acyclic intersections: {offending:?}")
                }
            };
            (r.agrees(), details)
        });
        record(&mut out, format!("nerve-theorem/{name}"), ANCHOR, result);
    }
    out
}

/// Collar, removal, collaring and capping checks for one sphere `Σ`.
pub fn collar_property(sigma: &SimplicialComplex) -> Result<(bool, String)> {
    let d = sigma.dim().ok_or(Error::EmptyComplex)?;
    let facet = sigma.facets()[0].clone();
    let collared = build_c(sigma, &facet)?;
    let capped = cap(&collared);
    let c_trivial = homology(&collared.c, true).is_trivial();
    let cap_sphere = homology(&capped, true).isomorphic(&sphere_homology(d));
    let one_more = capped.facets().len() == collared.c.facets().len() + 1;
    Ok((
        c_trivial && cap_sphere && one_more,
        format!(
            "C f-vector {:?}; C acyclic {c_trivial}; cap is a homology sphere {cap_sphere}; one more facet {one_more}",
            collared.c.f_vector()
        ),
    ))
}

fn collar_suite() -> Vec<Check> {
    const ANCHOR: &str = "C = B with the collar attached is acyclic; capping gives back a sphere";
    let mut out = Vec::new();
    record(
        &mut out,
        "collar/gamma-2".into(),
        "the collar is a sphere times an interval",
        collar(2).map(|g| {
            let f = g.f_vector();
            let h = homology(&g, true);
            (f == [6, 12, 6] && h.isomorphic(&sphere_homology(1)), format!("f-vector {f:?}; H = {h}"))
        }),
    );
    for d in [3, 4] {
        let sigma = SimplicialComplex::boundary_of_simplex(d).expect("d >= 1");
        record(&mut out, format!("collar/boundary-delta-{d}"), ANCHOR, collar_property(&sigma));
    }
    out
}

fn deleted_product_suite(config: &VerifyConfig) -> Vec<Check> {
    const SPHERE: &str = "deleted product of a simplex boundary is a sphere";
    const FINE: &str = "faces of sd K over disjoint faces of K are remote";
    let mut out = Vec::new();
    for n in 1..=3 {
        let base = SimplicialComplex::boundary_of_simplex(n).expect("n >= 1");
        let result = deleted_product(&base).map(|dp| {
            let h = dp.homology(true);
            let ok = h.isomorphic(&sphere_homology(n - 1))
                && dp.involution_is_free()
                && dp.bidegrees_symmetric()
                && dp.chain_complex().boundary_squares_to_zero();
            (ok, format!("{} cells; H = {h}", dp.cells().len()))
        });
        record(&mut out, format!("deleted-product/boundary-delta-{n}"), SPHERE, result);
    }
    for e in config.entries() {
        let result = fineness_check_sd(&e.complex).map(|r| (r.passed(), format!("{r:?}")));
        record(&mut out, format!("fineness/{}", e.name), FINE, result);
    }
    out
}

fn pi1_suite(config: &VerifyConfig) -> Vec<Check> {
    const ABELIAN: &str = "abelianized edge-path group equals H1";
    const TIETZE: &str = "simply connected spheres simplify to the trivial group";
    let mut out = Vec::new();
    for e in config.entries() {
        if !e.complex.is_connected() {
            continue;
        }
        let result = edge_path_presentation(&e.complex).map(|p| {
            let ab = abelianization(&p);
            let h1 = homology(&e.complex, false).group(1);
            (ab == h1, format!("{ab}"))
        });
        record(&mut out, format!("pi1-abelian/{}", e.name), ABELIAN, result);
    }
    for d in [3, 4] {
        let sphere = SimplicialComplex::boundary_of_simplex(d).expect("d >= 1");
        let name = format!("pi1-trivial/boundary-delta-{d}");
        match edge_path_presentation(&sphere) {
            Ok(p) => {
                let outcome = tietze_simplify(&p, DEFAULT_TIETZE_BUDGET);
                let trivial = outcome.status == TietzeStatus::Trivialized;
                // The simplifier is a heuristic; a miss is reported, not failed.
                out.push(Check {
                    name,
                    anchor: TIETZE.into(),
                    status: if trivial { Status::Pass } else { Status::Skipped },
                    details: format!(
                        "{}{:?} after {} moves",
                        if trivial { "" } else { "warning: " },
                        outcome.status,
                        outcome.moves
                    ),
                });
            }
            Err(err) => out.push(error_check(name, TIETZE, &err)),
        }
    }
    out
}

/// `K ∈ {3-cycle, Δ², path}` inside `∂Δ³`.
pub fn default_representation_pairs() -> Vec<(String, SimplicialComplex, SimplicialComplex)> {
    let m = SimplicialComplex::boundary_of_simplex(3).expect("d >= 1");
    vec![
        ("cycle-3".into(), corpus::cycle(3), m.clone()),
        ("delta-2".into(), SimplicialComplex::simplex(2), m.clone()),
        ("path-2".into(), corpus::path(2), m),
    ]
}

fn representation_suite(config: &VerifyConfig) -> Vec<Check> {
    const ANCHOR: &str = "neighborhoods of stars form a collapsible cover with nerve K";
    let pairs = config.pairs.clone().unwrap_or_else(default_representation_pairs);
    let mut out = Vec::new();
    for (name, k, m) in pairs {
        let result = representation_pipeline(&k, &m, config.max_facets).map(|r| {
            let failing: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            (
                r.passed(),
                if failing.is_empty() {
                    format!("nerve f-vector {:?}", r.nerve_f_vector)
                } else {
                    format!("failed: {}", failing.join(", "))
                },
            )
        });
        record(&mut out, format!("representation/{name}"), ANCHOR, result);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_input_error() {
        assert!(matches!(run_suite("nope", &VerifyConfig::small()), Err(Error::Input(_))));
    }

    #[test]
    fn small_star_cover_lists_each_complex() {
        let report = run_suite("star-cover", &VerifyConfig::small()).unwrap();
        assert_eq!(report.checks.len(), corpus_small().len());
        assert_eq!(report.exit_code(), 0, "{}", report.to_text());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("derived-nbhd", &VerifyConfig::small()).unwrap();
        let b = run_suite("derived-nbhd", &VerifyConfig::small()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.summary.failed, 0, "{}", a.to_text());
    }

    #[test]
    fn collar_and_two_components() {
        for suite in ["collar", "two-components"] {
            let r = run_suite(suite, &VerifyConfig::small()).unwrap();
            assert_eq!(r.summary.failed, 0, "{}", r.to_text());
        }
    }
}
