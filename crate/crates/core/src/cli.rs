//! Command-line front end: argument grammar, typed requests and their
//! execution into reports.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extensions::{disjointness_check, socle_subgroup, Automorphism, ExtensionInstance, GaloisData};
use crate::fields::Field;
use crate::funcfield::{FunctionField, RatFunc};
use crate::groups::{
    catalog, frattini_p, load_catalog_file, relative_frattini, FiniteGroup, Subgroup, DEFAULT_ORDER_BOUND, NAMES,
};
use crate::kummer::{
    as_rank, as_relative_rank, kummer_rank, kummer_relative_rank, pth_root_membership, wp, wp_solve, AsStrategy,
    ClassStatus, ClassSystem, Membership, Obstruction, WpOutcome,
};
use crate::parse::{parse_element_list, parse_field, parse_function_field, parse_ratfunc, parse_ratfunc_list};
use crate::report::{ClaimVerdict, OutputMode, Provenance, ScenarioReport};
use crate::scenarios::{run_scenario, ScenarioParams};

#[derive(Debug, Parser)]
#[command(name = "socle-lab", version, about = "Exact Kummer/Artin-Schreier certificates, p-Frattini subgroups and disjointness checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Worker threads for scenario and group enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Group catalog file replacing the built-in catalog.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Function field, e.g. `F7(t,u)` or `Fq(3,4;g)(t,u | t:T u:U)`.
    #[arg(long)]
    pub field: String,
    /// Comma-separated rational functions.
    #[arg(long, default_value = "")]
    pub elems: String,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Catalog name or an entry `perm: ...` / `table: ...`.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of the classes of the elements in F*/(F*)^p.
    KummerRank(SystemArgs),
    /// Kummer rank modulo the classes of K(T) and K(U).
    KummerRelative(SystemArgs),
    /// Rank of the classes of the elements in F/℘(F).
    AsRank {
        #[command(flatten)]
        sys: SystemArgs,
        /// Rank modulo the classes of K(T) and K(U).
        #[arg(long)]
        relative: bool,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Solve α^p − α = b.
    WpSolve {
        #[arg(long)]
        field: String,
        #[arg(long)]
        b: String,
    },
    /// Is b in the group generated by the elements and the p-th powers?
    Membership {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        b: String,
    },
    /// Φ^p(G) for one group, or the whole catalog.
    Frattini(GroupArgs),
    /// Φ^p(G, H) = H·Φ^p(G).
    RelativeFrattini {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated element indices generating H.
        #[arg(long)]
        subgroup: String,
    },
    /// The subgroup fixing the p-socle of the fixed field of H.
    Socle {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        subgroup: String,
    },
    /// Linear disjointness of two subfields of a number field.
    Disjoint {
        #[arg(long)]
        field: String,
        /// Generators of the first subfield.
        #[arg(long, default_value = "")]
        sub1: String,
        #[arg(long, default_value = "")]
        sub2: String,
        /// Automorphisms by generator images, `img,img; img,img`.
        #[arg(long)]
        auts: Option<String>,
    },
    /// Run bundled scenarios.
    Scenario {
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        /// Comma-separated constants.
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Pairs with N·H = G but core(N)·H ≠ G.
    Explore {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Auto,
    Echelon,
    Enumerate,
}

impl From<Strategy> for AsStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Auto => AsStrategy::Auto,
            Strategy::Echelon => AsStrategy::Echelon,
            Strategy::Enumerate => AsStrategy::Enumerate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankKind {
    Kummer,
    KummerRelative,
    As,
    AsRelative,
}

/// A validated request.
#[derive(Debug)]
pub enum Request {
    Rank {
        kind: RankKind,
        ring: FunctionField,
        elems: Vec<RatFunc>,
        p: u64,
        strategy: AsStrategy,
    },
    WpSolve {
        b: RatFunc,
    },
    Membership {
        ring: FunctionField,
        a: Vec<RatFunc>,
        b: RatFunc,
        p: u64,
    },
    Frattini {
        groups: Vec<FiniteGroup>,
        p: u64,
    },
    RelativeFrattini {
        group: FiniteGroup,
        h: Subgroup,
        p: u64,
    },
    Socle {
        group: FiniteGroup,
        h: Subgroup,
        p: u64,
    },
    Disjoint(ExtensionInstance),
    Scenario {
        names: Vec<String>,
        params: ScenarioParams,
    },
}

#[derive(Debug)]
pub struct Invocation {
    pub request: Request,
    pub mode: OutputMode,
    pub jobs: Option<usize>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn semantic(msg: impl Into<String>) -> Error {
    Error::Semantic(msg.into())
}

fn kummer_request(sys: &SystemArgs, kind: RankKind) -> Result<Request> {
    let ring = parse_function_field(&sys.field)?;
    let p = sys.p.ok_or_else(|| semantic("a Kummer request needs --p"))?;
    if !is_prime(p) {
        return Err(semantic(format!("p = {p} is not prime")));
    }
    if p == ring.characteristic() {
        return Err(semantic(format!("p = {p} equals the characteristic of {}", sys.field)));
    }
    let elems = parse_ratfunc_list(&ring, &sys.elems)?;
    Ok(Request::Rank {
        kind,
        ring,
        elems,
        p,
        strategy: AsStrategy::default(),
    })
}

fn as_ring(field: &str, p: Option<u64>) -> Result<(FunctionField, u64)> {
    let ring = parse_function_field(field)?;
    let char_p = ring.characteristic();
    if char_p == 0 {
        return Err(semantic(format!("{field} has characteristic 0; Artin-Schreier needs characteristic p")));
    }
    match p {
        Some(p) if p != char_p => Err(semantic(format!("p = {p} differs from the characteristic {char_p}"))),
        _ => Ok((ring, char_p)),
    }
}

fn group_from(entry: &str, file: Option<&[FiniteGroup]>) -> Result<FiniteGroup> {
    if let Some(gs) = file {
        if let Some(g) = gs.iter().find(|g| g.name() == entry.trim()) {
            return Ok(g.clone());
        }
    }
    crate::groups::load_group(entry)
}

fn subgroup_from(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    let mut gens = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let x: usize = part
            .parse()
            .map_err(|_| semantic(format!("subgroup generator `{part}` is not an element index")))?;
        if x >= g.order() {
            return Err(semantic(format!("element {x} out of range for a group of order {}", g.order())));
        }
        gens.push(x);
    }
    Ok(Subgroup::generated(g, &gens))
}

fn prime_arg(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(semantic(format!("p = {p} is not prime")))
    }
}

fn automorphisms(field: &Field, text: &str) -> Result<Vec<Automorphism>> {
    text.split(';')
        .map(|part| Automorphism::from_images(field, parse_element_list(field, part)?))
        .collect()
}

fn to_request(cli: Cli) -> Result<Request> {
    let file_groups = match &cli.catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            Some(load_catalog_file(&text)?)
        }
        None => None,
    };
    let file = file_groups.as_deref();
    Ok(match cli.command {
        Command::KummerRank(sys) => kummer_request(&sys, RankKind::Kummer)?,
        Command::KummerRelative(sys) => kummer_request(&sys, RankKind::KummerRelative)?,
        Command::AsRank { sys, relative, strategy } => {
            let (ring, p) = as_ring(&sys.field, sys.p)?;
            let elems = parse_ratfunc_list(&ring, &sys.elems)?;
            let kind = if relative { RankKind::AsRelative } else { RankKind::As };
            Request::Rank {
                kind,
                ring,
                elems,
                p,
                strategy: strategy.into(),
            }
        }
        Command::WpSolve { field, b } => {
            let (ring, _) = as_ring(&field, None)?;
            Request::WpSolve {
                b: parse_ratfunc(&ring, &b)?,
            }
        }
        Command::Membership { sys, b } => {
            let Request::Rank { ring, elems, p, .. } = kummer_request(&sys, RankKind::Kummer)? else {
                unreachable!()
            };
            let b = parse_ratfunc(&ring, &b)?;
            Request::Membership { ring, a: elems, b, p }
        }
        Command::Frattini(args) => {
            let p = prime_arg(args.p)?;
            let groups = match (&args.group, file) {
                (Some(entry), _) => vec![group_from(entry, file)?],
                (None, Some(gs)) => gs.to_vec(),
                (None, None) => NAMES.iter().map(|n| catalog(n)).collect::<Result<_>>()?,
            };
            Request::Frattini { groups, p }
        }
        Command::RelativeFrattini { group, subgroup } | Command::Socle { group, subgroup } if group.group.is_none() => {
            let _ = subgroup;
            return Err(semantic("--group is required"));
        }
        Command::RelativeFrattini { group: args, subgroup } => {
            let p = prime_arg(args.p)?;
            let group = group_from(args.group.as_deref().expect("checked"), file)?;
            let h = subgroup_from(&group, &subgroup)?;
            Request::RelativeFrattini { group, h, p }
        }
        Command::Socle { group: args, subgroup } => {
            let p = prime_arg(args.p)?;
            let group = group_from(args.group.as_deref().expect("checked"), file)?;
            let h = subgroup_from(&group, &subgroup)?;
            Request::Socle { group, h, p }
        }
        Command::Disjoint { field, sub1, sub2, auts } => {
            let ambient = parse_field(&field)?;
            let sub1 = parse_element_list(&ambient, &sub1)?;
            let sub2 = parse_element_list(&ambient, &sub2)?;
            let galois = match auts {
                Some(text) => Some(GaloisData::generate(&ambient, "Gal", &automorphisms(&ambient, &text)?)?),
                None => None,
            };
            Request::Disjoint(ExtensionInstance {
                ambient,
                sub1,
                sub2,
                galois,
            })
        }
        Command::Scenario {
            names,
            p,
            field,
            n,
            k,
            c,
            max_order,
        } => {
            for name in &names {
                if !crate::scenarios::SCENARIOS.contains(&name.as_str()) {
                    return Err(Error::UnknownScenario(name.clone()));
                }
            }
            if let Some(p) = p {
                prime_arg(p)?;
            }
            Request::Scenario {
                names,
                params: ScenarioParams {
                    p,
                    field,
                    n,
                    k,
                    constants: c,
                    max_order,
                    groups: file_groups,
                },
            }
        }
        Command::Explore { max_order, p } => {
            prime_arg(p)?;
            if max_order > DEFAULT_ORDER_BOUND {
                return Err(semantic(format!("--max-order {max_order} exceeds the enumeration bound {DEFAULT_ORDER_BOUND}")));
            }
            Request::Scenario {
                names: vec!["prop24-explore".into()],
                params: ScenarioParams {
                    p: Some(p),
                    max_order: Some(max_order),
                    groups: file_groups,
                    ..Default::default()
                },
            }
        }
    })
}

fn usage_error(e: clap::Error) -> Error {
    Error::InvalidArgument(e.to_string().trim_end().to_string())
}

/// Parses a command line given as text (shell quoting rules) into a typed
/// request.
pub fn parse_input(text: &str) -> Result<Invocation> {
    let words = split_words(text)?;
    parse_args(std::iter::once("socle-lab".to_string()).chain(words))
}

pub fn parse_args<I: IntoIterator<Item = String>>(args: I) -> Result<Invocation> {
    let cli = Cli::try_parse_from(args).map_err(usage_error)?;
    let mode = match cli.format {
        Format::Human => OutputMode::Human,
        Format::Jsonl => OutputMode::JsonLines,
    };
    let jobs = cli.jobs;
    if jobs == Some(0) {
        return Err(semantic("--jobs must be positive"));
    }
    Ok(Invocation {
        request: to_request(cli)?,
        mode,
        jobs,
    })
}

/// Splits on whitespace, honouring single and double quotes.
fn split_words(text: &str) -> Result<Vec<String>> {
    let mut words = Vec::new();
    let mut cur: Option<String> = None;
    let mut quote: Option<(char, usize)> = None;
    for (i, ch) in text.char_indices() {
        match (quote, ch) {
            (Some((q, _)), c) if c == q => quote = None,
            (Some(_), c) => cur.get_or_insert_with(String::new).push(c),
            (None, '"' | '\'') => {
                quote = Some((ch, i));
                cur.get_or_insert_with(String::new);
            }
            (None, c) if c.is_whitespace() => words.extend(cur.take()),
            (None, c) => cur.get_or_insert_with(String::new).push(c),
        }
    }
    if let Some((_, at)) = quote {
        return Err(Error::Parse {
            line: 1,
            column: at + 1,
            message: "unterminated quote".into(),
        });
    }
    words.extend(cur);
    Ok(words)
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn system_rows(r: &mut ScenarioReport, sys: &ClassSystem) {
    let verdict = match &sys.status {
        ClassStatus::Inconclusive(_) => ClaimVerdict::Inconclusive,
        _ => ClaimVerdict::Pass,
    };
    r.row(
        format!("{} rank", sys.kind),
        sys.rank,
        format!("exact rank ({})", sys.method),
        Provenance::Derived,
        verdict,
    );
    r.row("status", &sys.status, "certified or witnessed", Provenance::Derived, verdict);
    r.compare("certificate re-verifies", sys.verify(), true, Provenance::Derived);
    let columns: Vec<&str> = sys.pivot_columns.iter().map(|&c| sys.columns[c].label.as_str()).collect();
    r.row(
        "pivot columns",
        format!("[{}]", columns.join("; ")),
        "nonsingular rank minor",
        Provenance::Derived,
        ClaimVerdict::Pass,
    );
    for d in &sys.dependencies {
        r.compare(
            format!("relation {:?}", d.nu),
            format!("phi = {}, psi = {}, alpha = {}", d.phi, d.psi, d.alpha),
            format!("phi = {}, psi = {}, alpha = {}", d.phi, d.psi, d.alpha),
            Provenance::Derived,
        );
        if let Some(row) = r.results.last_mut() {
            if !sys.check_dependence(d) {
                row.verdict = ClaimVerdict::Fail;
                row.expected = "relation re-checks".into();
            }
        }
    }
}

fn group_line(s: &Subgroup) -> String {
    format!("order {} {:?}", s.order(), s.members())
}

fn cross_check_row(r: &mut ScenarioReport, claim: String, cross: Option<bool>) {
    match cross {
        Some(ok) => {
            r.compare(claim, ok, true, Provenance::Derived);
        }
        None => {
            r.row(claim, "not enumerated", "above the subgroup order bound", Provenance::Derived, ClaimVerdict::Pass);
        }
    }
}

fn run_request(request: &Request) -> Result<Vec<ScenarioReport>> {
    let start = Instant::now();
    let mut r = match request {
        Request::Rank {
            kind,
            ring,
            elems,
            p,
            strategy,
        } => {
            let name = match kind {
                RankKind::Kummer => "kummer-rank",
                RankKind::KummerRelative => "kummer-relative",
                RankKind::As => "as-rank",
                RankKind::AsRelative => "as-relative-rank",
            };
            let mut r = ScenarioReport::new(name);
            r.param("field", ring.to_string()).param("p", p).param("elems", list(elems));
            let result = match kind {
                RankKind::Kummer => kummer_rank(ring, elems, *p),
                RankKind::KummerRelative => kummer_relative_rank(ring, elems, *p),
                RankKind::As => as_rank(ring, elems, *p, *strategy),
                RankKind::AsRelative => as_relative_rank(ring, elems, *p),
            };
            match result {
                Ok(sys) => system_rows(&mut r, &sys),
                Err(e) => r.error_row("rank", &e, "a certified rank", Provenance::Derived),
            }
            r
        }
        Request::WpSolve { b } => {
            let mut r = ScenarioReport::new("wp-solve");
            r.param("field", b.ring().to_string()).param("b", b);
            match wp_solve(b) {
                Ok(WpOutcome::Solved(alpha)) => {
                    r.compare("℘(alpha) = b", wp(&alpha) == *b, true, Provenance::Derived);
                    r.row("alpha", &alpha, "a solution", Provenance::Derived, ClaimVerdict::Pass);
                }
                Ok(WpOutcome::NoSolution(ob)) => {
                    let what = match &ob {
                        Obstruction::PoleOrder { pole, order } => format!("pole ({pole})^{order} with p ∤ {order}"),
                        Obstruction::Inconsistent(sys) => {
                            format!("inconsistent system, {} unknowns, {} equations", sys.unknowns.len(), sys.equations.len())
                        }
                    };
                    r.row("b ∉ ℘(F)", what, "obstruction", Provenance::Derived, ClaimVerdict::Pass);
                    r.compare("obstruction re-checks", ob.check(b), true, Provenance::Derived);
                }
                Err(e) => r.error_row("wp_solve", &e, "solution or obstruction", Provenance::Derived),
            }
            r
        }
        Request::Membership { ring, a, b, p } => {
            let mut r = ScenarioReport::new("membership");
            r.param("field", ring.to_string()).param("p", p).param("elems", list(a)).param("b", b);
            match pth_root_membership(ring, b, a, *p) {
                Ok(Membership::Member { nu, alpha }) => {
                    let rebuilt = a
                        .iter()
                        .zip(&nu)
                        .fold(alpha.pow(*p), |acc, (ai, &k)| acc.mul(&ai.pow(k)));
                    r.row("b ∈ <a_i>·F^p", format!("nu = {nu:?}, alpha = {alpha}"), "member", Provenance::Derived, ClaimVerdict::Pass);
                    r.compare("∏ a_i^nu_i · alpha^p = b", rebuilt == *b, true, Provenance::Derived);
                }
                Ok(Membership::NonMember { witness }) => {
                    let w: Vec<String> = witness.iter().map(|(c, y)| format!("{y}·v[{c}]")).collect();
                    r.row("b ∉ <a_i>·F^p", w.join(" + "), "separating valuation", Provenance::Derived, ClaimVerdict::Pass);
                }
                Ok(Membership::Inconclusive(why)) => {
                    r.row("membership", why, "decided", Provenance::Derived, ClaimVerdict::Inconclusive);
                }
                Err(e) => r.error_row("membership", &e, "decided", Provenance::Derived),
            }
            r
        }
        Request::Frattini { groups, p } => {
            let mut r = ScenarioReport::new("frattini");
            r.param("p", p).param("groups", groups.len());
            let results: Vec<_> = groups.par_iter().map(|g| frattini_p(g, *p)).collect();
            for (g, f) in groups.iter().zip(results) {
                let f = f?;
                r.row(
                    format!("Φ^{p}({})", g.name()),
                    format!("{}, G/Φ ≅ C_{p}^{}", group_line(&f.phi), f.quotient_rank),
                    "<commutators, p-th powers>",
                    Provenance::Derived,
                    ClaimVerdict::Pass,
                );
                cross_check_row(&mut r, format!("Φ^{p}({}) = ∩ index-p normal subgroups", g.name()), f.cross_check);
            }
            r
        }
        Request::RelativeFrattini { group, h, p } => {
            let mut r = ScenarioReport::new("relative-frattini");
            r.param("group", group.name()).param("p", p).param("H", format!("{:?}", h.members()));
            let f = relative_frattini(group, h, *p)?;
            r.row("Φ^p(G, H) = H·Φ^p(G)", group_line(&f.subgroup), "H·Φ^p(G)", Provenance::Derived, ClaimVerdict::Pass);
            cross_check_row(&mut r, "= ∩ index-p normal subgroups containing H".into(), f.cross_check);
            r
        }
        Request::Socle { group, h, p } => {
            let mut r = ScenarioReport::new("socle");
            r.param("group", group.name()).param("p", p).param("H", format!("{:?}", h.members()));
            let s = socle_subgroup(group, h, *p)?;
            r.row("Gal(L/Soc^p) = Φ^p(G, H)", group_line(&s.subgroup), "H·Φ^p(G)", Provenance::Derived, ClaimVerdict::Pass);
            r.row("socle rank", s.rank, "log_p [G : Φ^p(G,H)]", Provenance::Derived, ClaimVerdict::Pass);
            r
        }
        Request::Disjoint(inst) => {
            let mut r = ScenarioReport::new("disjoint");
            r.param("field", inst.ambient.to_string())
                .param("sub1", list(&inst.sub1))
                .param("sub2", list(&inst.sub2));
            let d = disjointness_check(inst)?;
            let dims = format!("({}, {}, {})", d.dim1, d.dim2, d.dim_compositum);
            r.row("(dim L1, dim L2, dim L1L2)", dims, "span closures", Provenance::Derived, ClaimVerdict::Pass);
            r.row(
                "linearly disjoint",
                d.linearly_disjoint,
                "dim L1L2 = dim L1 · dim L2",
                Provenance::Derived,
                ClaimVerdict::Pass,
            );
            if let Some(v) = d.galois_verdict {
                r.compare("G = H1·H2 criterion agrees", v, d.linearly_disjoint, Provenance::Derived);
            }
            r
        }
        Request::Scenario { names, params } => {
            let reports: Vec<Result<ScenarioReport>> = names.par_iter().map(|n| run_scenario(n, params)).collect();
            return reports.into_iter().collect();
        }
    };
    r.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(vec![r])
}

/// Runs an invocation; reports are returned in request order.
pub fn execute(inv: &Invocation) -> Result<Vec<ScenarioReport>> {
    match inv.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| run_request(&inv.request)),
        None => run_request(&inv.request),
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Semantic(_)
            | Error::UnknownScenario(_)
            | Error::InvalidArgument(_)
            | Error::NotPrime(_)
            | Error::NotAGroup(_)
            | Error::NotASubgroup(_)
            | Error::OrderBoundExceeded { .. }
    )
}

/// Output of one command-line run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// 0 when every row passes, 1 on any failure, 2 when only inconclusive
/// rows deviate, 3 for usage, parse and semantic errors.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> Outcome {
    let args: Vec<String> = args.into_iter().collect();
    if let Err(e) = Cli::try_parse_from(&args) {
        if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
            return Outcome {
                stdout: e.to_string(),
                stderr: String::new(),
                code: 0,
            };
        }
    }
    let fail = |e: Error| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: if is_usage(&e) { 3 } else { 1 },
    };
    let inv = match parse_args(args) {
        Ok(inv) => inv,
        Err(e) => return fail(e),
    };
    let reports = match execute(&inv) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let stdout = reports.iter().map(|r| r.emit(inv.mode)).collect::<Vec<_>>().join(match inv.mode {
        OutputMode::Human => "\n",
        OutputMode::JsonLines => "",
    });
    let code = match reports.iter().map(ScenarioReport::verdict).max() {
        Some(ClaimVerdict::Fail) => 1,
        Some(ClaimVerdict::Inconclusive) => 2,
        _ => 0,
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}
