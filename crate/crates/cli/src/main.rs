mod setfile;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use f2venn::{
    brute_force_equivalent, builtin_templates, diff3_classes, find_quad, is_cap,
    known_template_witnesses, label_string, reconstruct_affine_map, validate_witness_matrix,
    venn_equivalence, Gf2Matrix, PointSet, VennDiagram, VennVerdict, ZeroSumSpace,
};

use setfile::parse_sets;

/// Exit codes: 0 = affirmative, 1 = negative verdict, 2 = usage/parse error.
const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "f2venn",
    version,
    about = "Affine equivalence of subsets of F_2^n via Venn-region invariants, \
             with Sidon-set (quad cap) classification"
)]
struct Cli {
    /// Seed for randomized tooling; the built-in commands are deterministic
    /// and ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose each set into an affine basis plus dependent points.
    Span { file: PathBuf },
    /// Print the generator basis of E(S) and all of its elements.
    Zerosum { file: PathBuf },
    /// Print the Venn cardinality table of each set.
    Venn {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide affine equivalence of the first sets of two files.
    Equiv {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Also reconstruct and print the full affine automorphism.
        #[arg(long)]
        witness: bool,
    },
    /// Exhaustive affine-orbit check, ground truth for ambient dimension <= 4.
    Oracle { file_a: PathBuf, file_b: PathBuf },
    /// Check the Sidon (cap) property, reporting a quad when one exists.
    Iscap { file: PathBuf },
    /// Count and list cap classes with size-dimension difference 3.
    #[command(group(ArgGroup::new("which").required(true).args(["k", "range"])))]
    Classify {
        /// Single cap size.
        #[arg(long)]
        k: Option<u32>,
        /// Inclusive size range A B; prints one `k count` row per size.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        range: Option<Vec<u32>>,
    },
    /// List the built-in 7-dimensional cap templates.
    Templates {
        /// Show one template by its exact printed name, e.g. "5-5-5-(3,3,2)".
        #[arg(conflicts_with = "verify")]
        name: Option<String>,
        /// Instantiate every template, print its Venn counts, compute the
        /// equivalence classes per size, and validate the known witnesses.
        #[arg(long)]
        verify: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when a pipe reader closes early, like other line tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Span { file } => cmd_span(&file),
        Command::Zerosum { file } => cmd_zerosum(&file),
        Command::Venn { file, format } => cmd_venn(&file, format),
        Command::Equiv { file_a, file_b, witness } => cmd_equiv(&file_a, &file_b, witness),
        Command::Oracle { file_a, file_b } => cmd_oracle(&file_a, &file_b),
        Command::Iscap { file } => cmd_iscap(&file),
        Command::Classify { k, range } => cmd_classify(k, range),
        Command::Templates { name, verify } => cmd_templates(name.as_deref(), verify),
    }
}

fn read_sets(path: &Path) -> Result<Vec<PointSet>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_sets(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_nonempty(path: &Path) -> Result<Vec<PointSet>, String> {
    let sets = read_sets(path)?;
    if sets.is_empty() {
        return Err(format!("{}: no set blocks found", path.display()));
    }
    Ok(sets)
}

fn first_set(path: &Path) -> Result<PointSet, String> {
    Ok(read_nonempty(path)?.remove(0))
}

fn set_stats(set: &PointSet) -> (usize, i32, usize) {
    let k = set.len();
    let dim = set.dimension();
    (k, dim, k - (dim + 1) as usize)
}

fn cmd_span(file: &Path) -> Result<u8, String> {
    let sets = read_nonempty(file)?;
    for (idx, set) in sets.iter().enumerate() {
        if idx > 0 {
            println!();
        }
        let (k, dim, rank) = set_stats(set);
        let decomp = set.decompose();
        println!("# k={k} dim={dim} rank={rank}");
        let basis: Vec<String> = decomp.basis_indices().iter().map(|i| i.to_string()).collect();
        println!("# basis: {}", basis.join(" "));
        for (pos, &dep) in decomp.dependent_indices().iter().enumerate() {
            let terms: Vec<String> =
                decomp.expression(pos).indices().map(|i| format!("[{i}]")).collect();
            println!("# [{dep}] {} = {}", set.point(dep), terms.join(" + "));
        }
        for p in set.iter() {
            println!("{p}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_zerosum(file: &Path) -> Result<u8, String> {
    let sets = read_nonempty(file)?;
    for (idx, set) in sets.iter().enumerate() {
        if idx > 0 {
            println!();
        }
        let (k, dim, rank) = set_stats(set);
        println!("k={k} dim={dim} rank={rank}");
        let space = ZeroSumSpace::build(set);
        for (pos, gen) in space.generators().iter().enumerate() {
            println!("X{} = {gen}", pos + 1);
        }
        let elements = space.enumerate_even_zero_sums().map_err(|e| e.to_string())?;
        for (coeff, mask) in elements.iter().enumerate() {
            println!("E {} = {mask}", label_string(coeff as u32, rank));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_venn(file: &Path, format: Format) -> Result<u8, String> {
    let sets = read_nonempty(file)?;
    for (idx, set) in sets.iter().enumerate() {
        if idx > 0 {
            println!();
        }
        let (k, dim, rank) = set_stats(set);
        let space = ZeroSumSpace::build(set);
        let diagram = VennDiagram::for_space(&space).map_err(|e| e.to_string())?;
        let (multiset, isolated) = diagram.cardinality_profile();
        let counts: Vec<String> = multiset.iter().map(|c| c.to_string()).collect();
        match format {
            Format::Text => {
                println!("k={k} dim={dim} rank={rank}");
                print!("{}", diagram.render_table());
                println!("multiset: {}", counts.join(" "));
                println!("isolated: {isolated}");
            }
            Format::Machine => {
                println!("k={k}");
                println!("dim={dim}");
                println!("rank={rank}");
                for a in 0..(1u32 << rank) {
                    println!("region {} {}", label_string(a, rank), diagram.cardinality(a));
                }
                println!("multiset {}", counts.join(","));
                println!("isolated {isolated}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn print_matrix(m: &Gf2Matrix) {
    if m.rows() > 0 {
        println!("{m}");
    }
}

fn cmd_equiv(file_a: &Path, file_b: &Path, witness: bool) -> Result<u8, String> {
    let s = first_set(file_a)?;
    let t = first_set(file_b)?;
    match venn_equivalence(&s, &t).map_err(|e| e.to_string())? {
        VennVerdict::Equivalent(matrix) => {
            println!("equivalent");
            println!("witness:");
            print_matrix(&matrix);
            if witness {
                let map = reconstruct_affine_map(&s, &t, &matrix).map_err(|e| e.to_string())?;
                println!("affine linear part:");
                print_matrix(map.linear_part());
                println!("affine translation:");
                println!("{}", map.translation());
            }
            Ok(EXIT_OK)
        }
        VennVerdict::NotEquivalent(reason) => {
            println!("not equivalent: {reason}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_oracle(file_a: &Path, file_b: &Path) -> Result<u8, String> {
    let s = first_set(file_a)?;
    let t = first_set(file_b)?;
    if brute_force_equivalent(&s, &t).map_err(|e| e.to_string())? {
        println!("equivalent");
        Ok(EXIT_OK)
    } else {
        println!("not equivalent");
        Ok(EXIT_NEGATIVE)
    }
}

fn cmd_iscap(file: &Path) -> Result<u8, String> {
    let sets = read_sets(file)?;
    if sets.is_empty() {
        // Nothing to violate the Sidon property.
        println!("cap");
        return Ok(EXIT_OK);
    }
    let mut quad_seen = false;
    for set in &sets {
        match find_quad(set) {
            None => println!("cap"),
            Some(quad) => {
                let points: Vec<String> =
                    quad.iter().map(|&i| set.point(i).to_string()).collect();
                println!("quad found: {}", points.join(" "));
                quad_seen = true;
            }
        }
    }
    Ok(if quad_seen { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_classify(k: Option<u32>, range: Option<Vec<u32>>) -> Result<u8, String> {
    if let Some(k) = k {
        let classes = diff3_classes(k);
        println!("k={k} classes={}", classes.len());
        for class in classes {
            println!("{class}");
        }
        return Ok(EXIT_OK);
    }
    let range = range.expect("clap guarantees exactly one of --k/--range");
    let (lo, hi) = (range[0], range[1]);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    for k in lo..=hi {
        println!("{k} {}", diff3_classes(k).len());
    }
    Ok(EXIT_OK)
}

/// Header line and Venn table for an instantiated template.
fn template_report(set: &PointSet, name: &str) -> Result<(bool, i32, String, String), String> {
    let cap = is_cap(set);
    let dim = set.dimension();
    let space = ZeroSumSpace::build(set);
    let diagram = VennDiagram::for_space(&space).map_err(|e| e.to_string())?;
    let table = diagram.render_table();
    let header = format!(
        "template {name}: size={} dim={dim} cap={}",
        set.len(),
        if cap { "yes" } else { "no" }
    );
    Ok((cap, dim, header, table))
}

fn cmd_templates(name: Option<&str>, verify: bool) -> Result<u8, String> {
    let templates = builtin_templates();
    if let Some(name) = name {
        let Some(t) = f2venn::template_by_name(name) else {
            return Err(format!("unknown template {name:?}; run `f2venn templates` for the list"));
        };
        let set = t.instantiate(7).map_err(|e| e.to_string())?;
        let (_, _, header, table) = template_report(&set, t.name())?;
        println!("{header}");
        for (pos, expr) in t.expressions().iter().enumerate() {
            let terms: Vec<String> = expr.iter().map(|i| format!("a{}", i + 1)).collect();
            println!("x{} = {}", pos + 1, terms.join(" + "));
        }
        print!("{table}");
        return Ok(EXIT_OK);
    }
    if !verify {
        for t in &templates {
            println!("{}", t.name());
        }
        return Ok(EXIT_OK);
    }

    let mut all_good = true;
    let mut instantiated: Vec<(String, PointSet)> = Vec::new();
    for t in &templates {
        let set = t.instantiate(7).map_err(|e| e.to_string())?;
        let (cap, dim, header, table) = template_report(&set, t.name())?;
        println!("{header}");
        print!("{table}");
        if !cap || dim != 7 {
            all_good = false;
        }
        instantiated.push((t.name().to_string(), set));
    }

    for size in [10usize, 11, 12] {
        let group: Vec<&(String, PointSet)> =
            instantiated.iter().filter(|(_, s)| s.len() == size).collect();
        // Group templates into classes against the first representative of
        // each class found so far, keeping the witness matrices.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut witnesses: Vec<(String, String, Gf2Matrix)> = Vec::new();
        for (idx, (name, set)) in group.iter().enumerate() {
            let mut placed = false;
            for class in classes.iter_mut() {
                let (rep_name, rep_set) = group[class[0]];
                if let VennVerdict::Equivalent(m) =
                    venn_equivalence(rep_set, set).map_err(|e| e.to_string())?
                {
                    witnesses.push((rep_name.clone(), name.clone(), m));
                    class.push(idx);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![idx]);
            }
        }
        let plural = if classes.len() == 1 { "class" } else { "classes" };
        println!("size {size}: {} {plural}", classes.len());
        for class in &classes {
            let names: Vec<&str> = class.iter().map(|&i| group[i].0.as_str()).collect();
            println!("class: {}", names.join(" "));
        }
        for (from, to, m) in &witnesses {
            println!("witness {from} -> {to}:");
            print_matrix(m);
        }
    }

    for w in known_template_witnesses() {
        let s = instantiated.iter().find(|(n, _)| n == w.from).expect("builtin name");
        let t = instantiated.iter().find(|(n, _)| n == w.to).expect("builtin name");
        let ok = validate_witness_matrix(&s.1, &t.1, &w.matrix).map_err(|e| e.to_string())?;
        println!(
            "known witness {} -> {}: {}",
            w.from,
            w.to,
            if ok { "valid" } else { "INVALID" }
        );
        if !ok {
            all_good = false;
        }
    }

    Ok(if all_good { EXIT_OK } else { EXIT_NEGATIVE })
}
