use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hopfkit::constructions::{
    biproduct, double_bicrossproduct, double_cross_product, drinfeld_double, dual_group_algebra, group_algebra,
    quantum_linear_space, sweedler_h4, taft, BicrossData, FiniteGroup, MatchedPairData, QlsDatum,
};
use hopfkit::factorization::{check_inner_double_factorization, reconstruct, search_factorizations, BracketTree, SearchVerdict};
use hopfkit::hopf::{check_axioms, dual, solve_antipode, subalgebra_generate, tensor_hopf, SubHopf};
use hopfkit::invariants::{classify, integrals, unimodular, Side};
use hopfkit::linalg::Matrix;
use hopfkit::yd::{Character, FiniteAbelianGroup};
use hopfkit::{parse_field, Field, Hopf};
use serde_json::{json, Value};

use crate::format::{read_text, AlgebraFile, SubSpec};
use crate::report::{self, envelope, InputDigest};
use crate::{CliError, EXIT_NEGATIVE, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "hopfkit", version, about = "Exact verification and factorization of finite-dimensional Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the axioms of an algebra file
    Check {
        file: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build an algebra file from one of the constructions
    Build {
        #[command(subcommand)]
        family: Family,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Check an inner double factorization and reconstruct it
    Factor(FactorArgs),
    /// Search for factorizations into two sub-Hopf algebras
    SearchFactor {
        file: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Semisimplicity, trace and consistency report
    Classify(FactorArgs),
    /// Left and right integrals
    Integrals {
        file: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    pub file: PathBuf,
    /// Factor: "gen:i,j" (generated by basis vectors), "span:i,j", or a subspace file
    #[arg(long = "sub")]
    pub subs: Vec<String>,
    /// Bracketing such as "((1 2) 3)"; defaults to left-nested
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Group algebra kG of Zn, a product like Z2xZ3, or Sn (n <= 5)
    Group {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Function algebra k^G
    DualGroup {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Sweedler's four-dimensional algebra
    H4 {
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Taft algebra of dimension n^2
    Taft {
        #[arg(long)]
        n: u32,
        /// Primitive n-th root of unity; defaults to the field's standard one
        #[arg(long)]
        q: Option<String>,
        /// Defaults to Cyclotomic(n)
        #[arg(long)]
        field: Option<String>,
    },
    /// Quantum linear space over a finite abelian group
    Qls {
        #[arg(long)]
        group: String,
        #[arg(long)]
        theta: Option<usize>,
        /// Degrees g_i as exponent tuples, e.g. "(1),(2)"
        #[arg(long)]
        g: String,
        /// Characters chi_i as exponent tuples
        #[arg(long)]
        chi: String,
        /// Expected nilpotency orders, e.g. "2,3"
        #[arg(long)]
        orders: Option<String>,
        /// Defaults to Cyclotomic(exponent of the group)
        #[arg(long)]
        field: Option<String>,
    },
    /// Biproduct of a braided algebra file with its group algebra
    Biproduct {
        #[arg(long)]
        input: PathBuf,
    },
    /// Double cross product; trivial actions unless matrix files are given
    Dcp {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        alpha: Option<PathBuf>,
        #[arg(long)]
        beta: Option<PathBuf>,
    },
    /// Double bicrossproduct; trivial (co)actions unless matrix files are given
    DoubleBicross {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        alpha: Option<PathBuf>,
        #[arg(long)]
        beta: Option<PathBuf>,
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long)]
        psi: Option<PathBuf>,
    },
    /// Drinfeld double k^G ⋈ kG
    DrinfeldDouble {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Tensor product of two algebra files
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Linear dual of an algebra file
    Dual {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Text to emit and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub out: Option<PathBuf>,
}

fn label(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load(path: &Path) -> Result<(Hopf, InputDigest), CliError> {
    let (file, text) = AlgebraFile::read(path)?;
    let h = Hopf::new(file.to_data()?)?;
    Ok((h, InputDigest::new(&label(path), &text)))
}

fn field_arg(text: &str) -> Result<Field, CliError> {
    parse_field(text).map_err(|e| CliError::Parse(e.to_string()))
}

/// "(1),(2)" or "(1,0),(0,1)" -> exponent tuples.
pub fn parse_tuples(text: &str) -> Result<Vec<Vec<u32>>, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("expected tuples like \"(1),(2)\", got {text:?}"));
    let mut out = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = inner.find(')').ok_or_else(bad)?;
        let tuple = inner[..close]
            .split(',')
            .map(|s| s.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(tuple);
        rest = &inner[close + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Ok(out)
}

fn build(family: &Family) -> Result<Hopf, CliError> {
    let h = match family {
        Family::Group { group, field } => group_algebra(&FiniteGroup::parse(group)?, field_arg(field)?)?,
        Family::DualGroup { group, field } => dual_group_algebra(&FiniteGroup::parse(group)?, field_arg(field)?)?,
        Family::H4 { field } => sweedler_h4(field_arg(field)?)?,
        Family::Taft { n, q, field } => {
            let f = match field {
                Some(t) => field_arg(t)?,
                None => Field::cyclotomic(*n)?,
            };
            let q = match q {
                Some(t) => f.parse_scalar(t)?,
                None => f.root_of_unity(*n as u64)?,
            };
            taft(*n, &q)?
        }
        Family::Qls {
            group,
            theta,
            g,
            chi,
            orders,
            field,
        } => {
            let group = FiniteAbelianGroup::parse(group)?;
            let degrees = parse_tuples(g)?;
            let chars = parse_tuples(chi)?
                .into_iter()
                .map(|c| Character::new(&group, c))
                .collect::<hopfkit::Result<Vec<_>>>()?;
            if let Some(t) = theta {
                if *t != degrees.len() || *t != chars.len() {
                    return Err(CliError::Parse(format!(
                        "theta = {t} but {} degrees and {} characters were given",
                        degrees.len(),
                        chars.len()
                    )));
                }
            }
            let f = match field {
                Some(t) => field_arg(t)?,
                None if group.exponent() <= 2 => Field::Rationals,
                None => Field::cyclotomic(group.exponent() as u32)?,
            };
            let datum = match orders {
                Some(o) => {
                    let ns = o
                        .split(',')
                        .map(|s| s.trim().parse::<u32>().map_err(|_| CliError::Parse(format!("bad orders {o:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    QlsDatum::with_orders(group, degrees, chars, &ns)?
                }
                None => QlsDatum::new(group, degrees, chars)?,
            };
            quantum_linear_space(&datum, f)?
        }
        Family::Biproduct { input } => biproduct(&load(input)?.0)?,
        Family::Dcp { left, right, alpha, beta } => {
            let mp = matched_pair(left, right, alpha.as_deref(), beta.as_deref())?;
            double_cross_product(&mp)?
        }
        Family::DoubleBicross {
            left,
            right,
            alpha,
            beta,
            phi,
            psi,
        } => {
            let mp = matched_pair(left, right, alpha.as_deref(), beta.as_deref())?;
            let bd = match (phi, psi) {
                (None, None) => BicrossData::trivial_coactions(mp)?,
                (Some(p), Some(s)) => {
                    let (na, nh, f) = (mp.a().dim(), mp.h().dim(), mp.a().field());
                    let phi = crate::format::MatrixFile::load(p, f, (nh * na, na))?;
                    let psi = crate::format::MatrixFile::load(s, f, (nh * na, nh))?;
                    BicrossData::new(mp, phi, psi)?
                }
                _ => return Err(CliError::Parse("--phi and --psi must be given together".into())),
            };
            double_bicrossproduct(&bd)?
        }
        Family::DrinfeldDouble { group, field } => drinfeld_double(&FiniteGroup::parse(group)?, field_arg(field)?)?,
        Family::Tensor { left, right } => tensor_hopf(&load(left)?.0, &load(right)?.0)?,
        Family::Dual { input } => dual(&load(input)?.0)?,
    };
    Ok(h)
}

fn matched_pair(left: &Path, right: &Path, alpha: Option<&Path>, beta: Option<&Path>) -> Result<MatchedPairData, CliError> {
    let a = load(left)?.0;
    let h = load(right)?.0;
    match (alpha, beta) {
        (None, None) => Ok(MatchedPairData::trivial(a, h)?),
        (Some(al), Some(be)) => {
            let (na, nh, f) = (a.dim(), h.dim(), a.field());
            let alpha = crate::format::MatrixFile::load(al, f, (na, nh * na))?;
            let beta = crate::format::MatrixFile::load(be, f, (nh, nh * na))?;
            Ok(MatchedPairData::new(a, h, alpha, beta)?)
        }
        _ => Err(CliError::Parse("--alpha and --beta must be given together".into())),
    }
}

fn subs_of(h: &Hopf, specs: &[String]) -> Result<Vec<SubHopf>, CliError> {
    specs
        .iter()
        .map(|s| {
            let (vectors, generate) = SubSpec::parse(s)?.vectors(h)?;
            let sub = if generate {
                subalgebra_generate(h, &vectors)?
            } else {
                SubHopf::new(h, Matrix::from_columns(h.field(), h.dim(), &vectors)?)?
            };
            Ok(sub)
        })
        .collect()
}

fn sigma_of(text: Option<&str>, n: usize) -> Result<BracketTree, CliError> {
    match text {
        Some(t) => Ok(BracketTree::parse(t)?),
        None if n >= 2 => Ok(BracketTree::left_comb(n)),
        None => Err(CliError::Structural("at least two factors are needed".into())),
    }
}

fn report(command: &str, inputs: &[InputDigest], code: i32, verdict: &str, result: Value, out: Option<PathBuf>) -> Outcome {
    Outcome {
        code,
        text: report::render(&envelope(command, inputs, verdict, result)),
        out,
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check { file, out } => {
            let (f, text) = AlgebraFile::read(&file)?;
            let digest = InputDigest::new(&label(&file), &text);
            let mut data = f.to_data()?;
            let mut solved = false;
            if data.antipode.is_none() {
                match solve_antipode(&data) {
                    Ok(s) => {
                        data.antipode = Some(s);
                        solved = true;
                    }
                    Err(e) => {
                        let result = json!({"antipode": "none", "detail": e.to_string()});
                        return Ok(report("check", &[digest], EXIT_NEGATIVE, "fail", result, out));
                    }
                }
            }
            let axioms = check_axioms(&data)?;
            let passed = axioms.passed();
            let result = json!({
                "dim": data.dim(),
                "field": data.field.to_string(),
                "braided": data.yd.is_some(),
                "antipode_solved": solved,
                "solved_antipode": if solved { data.antipode.as_ref().map(|s| report::matrix(&s.to_matrix())) } else { None },
                "passed": passed,
                "axioms": report::axioms(&axioms),
                "first_failure": axioms.first_failure().map(|c| c.name),
            });
            let code = if passed { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(report("check", &[digest], code, if passed { "pass" } else { "fail" }, result, out))
        }
        Command::Build { family, out } => {
            let h = build(&family)?;
            Ok(Outcome {
                code: EXIT_OK,
                text: AlgebraFile::from_hopf(&h).to_json(),
                out,
            })
        }
        Command::Factor(args) => {
            let (h, digest) = load(&args.file)?;
            let mut inputs = vec![digest];
            for s in &args.subs {
                if let Ok(SubSpec::File(p)) = SubSpec::parse(s) {
                    inputs.push(InputDigest::new(&label(Path::new(&p)), &read_text(Path::new(&p))?));
                }
            }
            let subs = subs_of(&h, &args.subs)?;
            let sigma = sigma_of(args.sigma.as_deref(), subs.len())?;
            let verdict = check_inner_double_factorization(&h, &subs, &sigma)?;
            let mut result = json!({
                "sigma": sigma.to_string(),
                "factors": subs.iter().map(report::subspace).collect::<Vec<_>>(),
                "verdict": report::factorization(&verdict),
            });
            if !verdict.passed() {
                return Ok(report("factor", &inputs, EXIT_NEGATIVE, "fail", result, args.out));
            }
            let cert = reconstruct(&h, &subs, &sigma)?;
            result["certificate"] = report::certificate(&cert);
            Ok(report("factor", &inputs, EXIT_OK, "pass", result, args.out))
        }
        Command::SearchFactor { file, out } => {
            let (h, digest) = load(&file)?;
            let r = search_factorizations(&h, &[])?;
            let code = if r.verdict == SearchVerdict::Factorisable { EXIT_OK } else { EXIT_NEGATIVE };
            let verdict = r.verdict.to_string();
            Ok(report("search-factor", &[digest], code, &verdict, report::search(h.basis(), &r), out))
        }
        Command::Classify(args) => {
            let (h, digest) = load(&args.file)?;
            let r = if args.subs.is_empty() {
                classify(&h, None)?
            } else {
                let subs = subs_of(&h, &args.subs)?;
                let sigma = sigma_of(args.sigma.as_deref(), subs.len())?;
                classify(&h, Some((&subs, &sigma)))?
            };
            let ok = r.consistent();
            let code = if ok { EXIT_OK } else { EXIT_NEGATIVE };
            let verdict = if ok { "consistent" } else { "falsified" };
            Ok(report("classify", &[digest], code, verdict, report::classification(&r), args.out))
        }
        Command::Integrals { file, out } => {
            let (h, digest) = load(&file)?;
            let l = integrals(&h, Side::Left);
            let r = integrals(&h, Side::Right);
            let ok = l.dim == 1 && r.dim == 1;
            let result = json!({
                "left": report::integral(h.basis(), &l),
                "right": report::integral(h.basis(), &r),
                "unimodular": if ok { Some(unimodular(&h)?) } else { None },
            });
            let code = if ok { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(report("integrals", &[digest], code, if ok { "pass" } else { "fail" }, result, out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples() {
        assert_eq!(parse_tuples("(1),(2)").unwrap(), vec![vec![1], vec![2]]);
        assert_eq!(parse_tuples(" (1, 0), (0,1) ").unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert!(parse_tuples("1,2").is_err());
        assert!(parse_tuples("(1").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
