//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    h_constants_of, infinity_law, laurent_infinity, laurent_zero, leading_data,
    residue_certificate_h_of, residue_certificate_q, zero_case, DEFAULT_TERMS,
};
use crate::backlund::{
    act_word, generate_from_shift, orbit, seed_solution, shift_box, OrbitEntry,
};
use crate::exactfield::{ExpansionPoint, RatFunc};
use crate::latex::{entry_latex, solution_latex};
use crate::system::{hamiltonian, is_solution, parse_affine, ParamVec, Solution};
use crate::weyl::{
    necessary_condition_cases, reduce_to_standard, shift_word, Word, DEFAULT_SEARCH_DEPTH,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

/// Shift words up to this range are recognised when `generate` is given a word.
const WORD_LOOKUP_RANGE: i64 = 3;

#[derive(Parser, Debug)]
#[command(name = "sasano", version, about = "Rational solutions of the Sasano system of type A5(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one solution from the seed by a shift index or a word.
    Generate(GenerateArgs),
    /// Check a solution file.
    Verify {
        path: PathBuf,
    },
    /// Test the existence conditions and search for a reducing word.
    Classify(ClassifyArgs),
    /// Print a Laurent expansion of one component.
    Expand(ExpandArgs),
    /// Generate and check every shift index in a box.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Shift index k0 k1 k2.
    #[arg(long, num_args = 3, value_names = ["K0", "K1", "K2"], allow_negative_numbers = true)]
    pub shift: Option<Vec<i64>>,
    /// Word over 0, 1, 2, 3, p; the rightmost letter acts first.
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Latex,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// alpha0, alpha1 and alpha3; alpha2 follows from the normalization.
    #[arg(num_args = 3, value_names = ["ALPHA0", "ALPHA1", "ALPHA3"], allow_negative_numbers = true)]
    pub alphas: Vec<String>,
    /// Allow the symbol `a` in the parameters, treated as transcendental.
    #[arg(long)]
    pub symbolic: bool,
    /// Maximum word length of the search.
    #[arg(long, env = "SASANO_SEARCH_DEPTH", default_value_t = DEFAULT_SEARCH_DEPTH)]
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Component {
    Q1,
    P1,
    Q2,
    P2,
    #[value(name = "H")]
    H,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Point {
    Zero,
    Infinity,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    pub path: PathBuf,
    #[arg(long, value_enum)]
    pub component: Component,
    #[arg(long, value_enum)]
    pub point: Point,
    #[arg(long, default_value_t = DEFAULT_TERMS, value_parser = parse_terms)]
    pub terms: usize,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Largest |k_i| included.
    #[arg(long)]
    pub range: u32,
    /// Where to write the JSON array.
    #[arg(long, default_value = "catalog.json")]
    pub output: PathBuf,
}

fn parse_terms(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("at least one term is needed".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses `args` and runs the command, writing to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Verify { path } => cmd_verify(&path, out),
        Command::Classify(a) => cmd_classify(&a, out),
        Command::Expand(a) => cmd_expand(&a, out),
        Command::Catalog(a) => cmd_catalog(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

/// The catalog entry whose shift word is `word`, if any within the lookup range.
fn shift_entry_for(word: &Word) -> Option<OrbitEntry> {
    shift_box(WORD_LOOKUP_RANGE)
        .into_iter()
        .find(|&(k0, k1, k2)| shift_word(k0, k1, k2) == *word)
        .map(|(k0, k1, k2)| generate_from_shift(k0, k1, k2))
}

#[derive(Serialize)]
struct WordEntry<'a> {
    word: &'a Word,
    #[serde(flatten)]
    solution: &'a Solution,
}

fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> CliResult {
    let (entry, known_shift) = match (&args.source.shift, &args.source.word) {
        (Some(k), _) => (generate_from_shift(k[0], k[1], k[2]), true),
        (None, Some(w)) => {
            let word: Word = w.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            match shift_entry_for(&word) {
                Some(e) => (e, true),
                None => {
                    let solution = act_word(&word, &seed_solution());
                    let entry = OrbitEntry {
                        shift_index: (0, 0, 0),
                        word,
                        solution,
                    };
                    (entry, false)
                }
            }
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    match args.format {
        Format::Json if known_shift => writeln!(out, "{}", to_json(&entry))?,
        Format::Json => writeln!(
            out,
            "{}",
            to_json(&WordEntry {
                word: &entry.word,
                solution: &entry.solution
            })
        )?,
        Format::Latex if known_shift => write!(out, "{}", entry_latex(&entry))?,
        Format::Latex => write!(
            out,
            "% word {}\n{}",
            entry.word,
            solution_latex(&entry.solution)
        )?,
    }
    if is_solution(&entry.solution) {
        Ok(EXIT_OK)
    } else {
        eprintln!("error: generated functions do not solve the system");
        Ok(EXIT_VERIFICATION)
    }
}

fn read_solution(path: &Path) -> Result<Solution, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not a solution file: {e}", path.display())))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(path: &Path, out: &mut dyn Write) -> CliResult {
    let sol = read_solution(path)?;
    let residual_ok = is_solution(&sol);
    writeln!(out, "{}  residual", mark(residual_ok))?;
    let h = hamiltonian(&sol);
    match leading_data(&sol) {
        Ok(d) => {
            let law = infinity_law(&sol.params);
            let got = [&d.a_inf_0, &d.c_inf_0, &d.b_inf_m1, &d.d_inf_m1];
            let inf_ok = law.iter().zip(got).all(|(x, y)| x == y);
            writeln!(out, "PASS  integrality at zero and infinity")?;
            writeln!(
                out,
                "{}  leading coefficients at infinity (q1: {}, q2: {})",
                mark(inf_ok),
                d.a_inf_0,
                d.c_inf_0
            )?;
            match zero_case(&sol, &d) {
                Some(c) => writeln!(out, "PASS  behaviour at zero: {c:?}")?,
                None => writeln!(out, "FAIL  behaviour at zero matches no admissible case")?,
            }
        }
        Err(e) => writeln!(out, "FAIL  leading data: {e}")?,
    }
    match residue_certificate_q(&sol) {
        Ok((r1, r2)) => writeln!(
            out,
            "PASS  residues of q1, q2 ({} and {} pole factors)",
            r1.entries.len(),
            r2.entries.len()
        )?,
        Err(e) => writeln!(out, "FAIL  residues of q1, q2: {e}")?,
    }
    match residue_certificate_h_of(&h) {
        Ok(r) => writeln!(out, "PASS  residues of H ({} pole factors)", r.entries.len())?,
        Err(e) => writeln!(out, "FAIL  residues of H: {e}")?,
    }
    let hc = h_constants_of(&sol, &h);
    writeln!(
        out,
        "{}  constant terms of H (infinity: {}, zero: {})",
        mark(hc.conforms),
        hc.h_inf_0,
        hc.h_0_0
    )?;
    Ok(if residual_ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_classify(args: &ClassifyArgs, out: &mut dyn Write) -> CliResult {
    let mut parsed = Vec::new();
    for s in &args.alphas {
        let x = parse_affine(s).map_err(CliError::Usage)?;
        if !args.symbolic && !x.is_constant() {
            return Err(CliError::Usage(format!(
                "{s:?} contains `a`; pass --symbolic to allow it"
            )));
        }
        parsed.push(x);
    }
    let [a0, a1, a3]: [_; 3] = parsed.try_into().expect("clap passes three values");
    let params = ParamVec::from_free(a0, a1, a3);
    writeln!(out, "parameters: {params}")?;
    let cases = necessary_condition_cases(&params, None);
    if cases.is_empty() {
        writeln!(out, "cases: none")?;
        writeln!(out, "no rational solution")?;
        return Ok(EXIT_OK);
    }
    let listed: Vec<String> = cases.iter().map(u8::to_string).collect();
    writeln!(out, "cases: {}", listed.join(", "))?;
    match reduce_to_standard(&params, args.depth) {
        Ok((w, std)) => {
            writeln!(out, "word: {}", if w.is_empty() { "(empty)".into() } else { w.to_string() })?;
            writeln!(out, "standard: {std}")?;
        }
        Err(_) => writeln!(out, "NotReduced (depth {})", args.depth)?,
    }
    Ok(EXIT_OK)
}

fn cmd_expand(args: &ExpandArgs, out: &mut dyn Write) -> CliResult {
    let sol = read_solution(&args.path)?;
    let x: RatFunc = match args.component {
        Component::Q1 => sol.q1.clone(),
        Component::P1 => sol.p1.clone(),
        Component::Q2 => sol.q2.clone(),
        Component::P2 => sol.p2.clone(),
        Component::H => hamiltonian(&sol),
    };
    if x.is_zero() {
        writeln!(out, "0 (zero function)")?;
        return Ok(EXIT_OK);
    }
    let e = match args.point {
        Point::Zero => laurent_zero(&x, args.terms),
        Point::Infinity => laurent_infinity(&x, args.terms),
    }
    .expect("nonzero function");
    let at = match e.point {
        ExpansionPoint::Zero => "zero",
        ExpansionPoint::Infinity => "infinity",
    };
    writeln!(out, "expansion at {at}, lead order {}", e.lead_order)?;
    for (k, c) in e.coeffs.iter().enumerate() {
        writeln!(out, "t^{}: {c}", e.t_power(k))?;
    }
    Ok(EXIT_OK)
}

/// Outcome of the checks run on one catalog entry.
#[derive(Default, Clone, Copy)]
struct Battery {
    residual: bool,
    leading: bool,
    infinity_law: bool,
    zero_case: bool,
    residues_q: bool,
    residues_h: bool,
    h_constants: bool,
}

impl Battery {
    const NAMES: [&'static str; 7] = [
        "residual",
        "integrality",
        "infinity law",
        "zero case",
        "residues q",
        "residues H",
        "H constants",
    ];

    fn flags(&self) -> [bool; 7] {
        [
            self.residual,
            self.leading,
            self.infinity_law,
            self.zero_case,
            self.residues_q,
            self.residues_h,
            self.h_constants,
        ]
    }
}

fn battery(sol: &Solution) -> Battery {
    let mut b = Battery {
        residual: is_solution(sol),
        ..Battery::default()
    };
    if let Ok(d) = leading_data(sol) {
        b.leading = true;
        let law = infinity_law(&sol.params);
        b.infinity_law = law
            .iter()
            .zip([&d.a_inf_0, &d.c_inf_0, &d.b_inf_m1, &d.d_inf_m1])
            .all(|(x, y)| x == y);
        b.zero_case = zero_case(sol, &d).is_some();
    }
    let h = hamiltonian(sol);
    b.residues_q = residue_certificate_q(sol).is_ok();
    b.residues_h = residue_certificate_h_of(&h).is_ok();
    b.h_constants = h_constants_of(sol, &h).conforms;
    b
}

fn cmd_catalog(args: &CatalogArgs, out: &mut dyn Write) -> CliResult {
    let shifts = shift_box(args.range as i64);
    let entries = orbit(&shifts);
    fs::write(&args.output, to_json(&entries) + "\n")?;
    let results: Vec<Battery> = entries.par_iter().map(|e| battery(&e.solution)).collect();
    writeln!(out, "wrote {} entries to {}", entries.len(), args.output.display())?;
    for (i, name) in Battery::NAMES.iter().enumerate() {
        let passed = results.iter().filter(|b| b.flags()[i]).count();
        writeln!(out, "{name:<12} {passed}/{}", results.len())?;
    }
    let failed = results
        .iter()
        .zip(&entries)
        .find(|(b, _)| !b.flags().iter().all(|&f| f));
    match failed {
        Some((b, e)) => {
            let (k0, k1, k2) = e.shift_index;
            let which: Vec<&str> = Battery::NAMES
                .iter()
                .zip(b.flags())
                .filter(|(_, f)| !f)
                .map(|(n, _)| *n)
                .collect();
            writeln!(out, "entry ({k0}, {k1}, {k2}) failed: {}", which.join(", "))?;
            Ok(EXIT_FAILED)
        }
        None => Ok(EXIT_OK),
    }
}
