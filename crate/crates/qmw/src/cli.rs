//! Command line front end: verification, decomposition, isomorphism,
//! classification and enumeration over the file formats of the library.
//!
//! Quandle files are plain text (order, then the Cayley table); mesh files
//! are JSON. Inputs are auto-detected: anything starting with `{` is read
//! as a mesh. Exit codes: 0 on success, 1 on domain failures (bad tables,
//! non-medial input, failed verification), 2 on usage errors.

use crate::classify::{classify, ClassifyError};
use crate::enumerate::{
    count_row, enumerate_non_two_reductive, enumerate_two_reductive, involutory_row,
    EnumerateError, CSV_HEADER, INVOLUTORY_CSV_HEADER, NON_TWO_REDUCTIVE_CAP,
};
use crate::mesh::{decompose, homologous, AffineMesh, MeshError};
use crate::quandle::{Quandle, QuandleError};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "qmw",
    version,
    about = "Finite medial quandles as sums of affine meshes"
)]
struct Cli {
    /// Worker threads for enumeration (falls back to QMW_WORKERS, then to
    /// the number of CPUs).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a quandle table or a mesh file and report the
    /// basic structure.
    Verify { path: PathBuf },
    /// Write the canonical mesh of a medial quandle.
    Decompose {
        path: PathBuf,
        /// Output file; stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the quandle that a mesh sums to.
    Sum {
        path: PathBuf,
        /// Output file; stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two quandles (or meshes) are isomorphic.
    Iso { left: PathBuf, right: PathBuf },
    /// Print every structural property of a quandle.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count the medial quandles of one order, as a CSV row.
    Enumerate {
        n: u64,
        /// Count involutory quandles only.
        #[arg(long)]
        involutory: bool,
        /// Also write the enumerated mesh representatives here (the
        /// two-reductive ones only for n <= 7, where listing is feasible).
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Largest order accepted for the explicit search.
        #[arg(long, default_value_t = NON_TWO_REDUCTIVE_CAP)]
        cap: u64,
    },
    /// Count the medial quandles of every order up to n, as CSV.
    Tables {
        n_max: u64,
        /// Count involutory quandles only.
        #[arg(long)]
        involutory: bool,
        /// Largest order accepted for the explicit search.
        #[arg(long, default_value_t = NON_TWO_REDUCTIVE_CAP)]
        cap: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Quandle(#[from] QuandleError),
    #[error("{0}")]
    Mesh(#[from] MeshError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Enumerate(#[from] EnumerateError),
    #[error("{path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
    #[error("{0}")]
    Domain(String),
}

/// Parses the arguments and runs one subcommand; the return value is the
/// process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| {
        std::env::var("QMW_WORKERS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(w) = workers {
        // a second initialization (e.g. in tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|err| CliError::Io { path: path.to_path_buf(), err })
}

fn write_output(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|err| CliError::Io { path: path.to_path_buf(), err }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

enum Input {
    Table(Quandle),
    Mesh(AffineMesh),
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = read_file(path)?;
    if text.trim_start().starts_with('{') {
        Ok(Input::Mesh(AffineMesh::from_json(&text)?))
    } else {
        Ok(Input::Table(Quandle::parse(&text)?))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Verify { path } => verify(&path),
        Command::Decompose { path, output } => {
            let text = read_file(&path)?;
            let q = Quandle::parse(&text)?;
            let d = decompose(&q)?;
            write_output(output.as_deref(), &(d.mesh.to_json() + "\n"))
        }
        Command::Sum { path, output } => {
            let text = read_file(&path)?;
            let mesh = AffineMesh::from_json(&text)?;
            let report = mesh.validate();
            if !report.is_mesh() {
                return Err(CliError::Domain(format!("not a mesh\n{report}")));
            }
            write_output(output.as_deref(), &mesh.sum().print())
        }
        Command::Iso { left, right } => iso(&left, &right),
        Command::Classify { path, format } => {
            let text = read_file(&path)?;
            let q = Quandle::parse(&text)?;
            let report = q.validate();
            if !report.is_quandle() {
                return Err(CliError::Domain(format!("not a quandle\n{report}")));
            }
            let report = classify(&q);
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                ),
                Format::Text => {
                    println!("order: {}", report.order);
                    println!("medial: {}", yes_no(report.medial));
                    println!("connected: {}", yes_no(report.connected));
                    println!("latin: {}", yes_no(report.latin));
                    println!("involutory: {}", yes_no(report.involutory));
                    println!("2-reductive: {}", yes_no(report.two_reductive));
                    match report.reductivity_degree {
                        Some(m) => println!("reductive: yes (degree {m})"),
                        None => println!("reductive: no"),
                    }
                    println!("symmetry order: {}", report.symmetry_order);
                    let sizes: Vec<String> =
                        report.orbit_sizes.iter().map(|s| s.to_string()).collect();
                    println!("orbit sizes: {}", sizes.join(", "));
                    if let Some(groups) = &report.orbit_groups {
                        println!("orbit groups: {}", groups.join("; "));
                    }
                    println!("simple: {}", yes_no(report.simple));
                    println!(
                        "subdirectly irreducible: {}",
                        yes_no(report.subdirectly_irreducible)
                    );
                }
            }
            Ok(())
        }
        Command::Enumerate { n, involutory, output_dir, cap } => {
            if involutory {
                println!("{INVOLUTORY_CSV_HEADER}");
                println!("{}", involutory_row(n, cap)?.csv());
            } else {
                println!("{CSV_HEADER}");
                println!("{}", count_row(n, cap)?.csv());
            }
            if let Some(dir) = output_dir {
                write_meshes(n, cap, involutory, &dir)?;
            }
            Ok(())
        }
        Command::Tables { n_max, involutory, cap } => {
            // row by row, so partial output is visible on long runs
            if involutory {
                println!("{INVOLUTORY_CSV_HEADER}");
                for n in 1..=n_max {
                    println!("{}", involutory_row(n, cap)?.csv());
                }
            } else {
                println!("{CSV_HEADER}");
                for n in 1..=n_max {
                    println!("{}", count_row(n, cap)?.csv());
                }
            }
            Ok(())
        }
    }
}

fn verify(path: &Path) -> Result<(), CliError> {
    match load(path)? {
        Input::Table(q) => {
            println!("order: {}", q.order());
            let report = q.validate();
            if !report.is_quandle() {
                println!("quandle: no");
                println!("{report}");
                return Err(CliError::Domain("not a quandle".into()));
            }
            println!("quandle: yes");
            println!("medial: {}", yes_no(q.is_medial()));
            println!("2-reductive: {}", yes_no(q.is_two_reductive()));
            Ok(())
        }
        Input::Mesh(mesh) => {
            println!("order: {}", mesh.order());
            println!("fibres: {}", mesh.num_fibres());
            let report = mesh.validate();
            if !report.is_mesh() {
                println!("mesh: no");
                println!("{report}");
                return Err(CliError::Domain("not a mesh".into()));
            }
            println!("mesh: yes");
            println!("indecomposable: {}", yes_no(mesh.is_indecomposable()));
            println!("2-reductive: {}", yes_no(mesh.is_two_reductive()));
            Ok(())
        }
    }
}

/// Loads either input as a quandle, remembering the mesh when one was
/// given directly.
fn as_quandle(input: Input) -> (Quandle, Option<AffineMesh>) {
    match input {
        Input::Table(q) => (q, None),
        Input::Mesh(m) => (m.sum(), Some(m)),
    }
}

fn iso(left: &Path, right: &Path) -> Result<(), CliError> {
    let (q1, mesh1) = as_quandle(load(left)?);
    let (q2, mesh2) = as_quandle(load(right)?);
    for (q, path) in [(&q1, left), (&q2, right)] {
        let report = q.validate();
        if !report.is_quandle() {
            return Err(CliError::Domain(format!(
                "{}: not a quandle\n{report}",
                path.display()
            )));
        }
    }
    if q1.order() != q2.order() {
        println!("non-isomorphic (different orders)");
        return Ok(());
    }
    if q1.is_medial() && q2.is_medial() {
        // mesh homology decides isomorphism of medial quandles
        let (m1, map1) = match mesh1 {
            Some(m) => {
                let ident: Vec<usize> = (0..m.order() as usize).collect();
                (m, ident)
            }
            None => {
                let d = decompose(&q1)?;
                (d.mesh, d.to_sum)
            }
        };
        let (m2, map2) = match mesh2 {
            Some(m) => {
                let ident: Vec<usize> = (0..m.order() as usize).collect();
                (m, ident)
            }
            None => {
                let d = decompose(&q2)?;
                (d.mesh, d.to_sum)
            }
        };
        match homologous(&m1, &m2) {
            Some(witness) => {
                println!("isomorphic (decided by mesh homology)");
                println!("fibre permutation: {:?}", witness.pi);
                for (i, psi) in witness.psi.iter().enumerate() {
                    if psi.images().is_empty() {
                        println!("psi_{i}: trivial");
                    } else {
                        let images: Vec<String> =
                            psi.images().iter().map(|x| x.to_string()).collect();
                        println!("psi_{i}: generator images {}", images.join(", "));
                    }
                }
                for (i, d) in witness.d.iter().enumerate() {
                    println!("d_{i}: {d}");
                }
                let sum_iso = witness.quandle_isomorphism(&m1, &m2);
                let mut inv2 = vec![0usize; map2.len()];
                for (x, &y) in map2.iter().enumerate() {
                    inv2[y] = x;
                }
                let full: Vec<usize> = (0..q1.order()).map(|x| inv2[sum_iso[map1[x]]]).collect();
                println!("element map: {full:?}");
            }
            None => println!("non-isomorphic (decided by mesh homology)"),
        }
    } else {
        match q1.brute_force_iso(&q2) {
            Some(witness) => {
                println!("isomorphic (decided by brute force)");
                println!("element map: {witness:?}");
            }
            None => println!("non-isomorphic (decided by brute force)"),
        }
    }
    Ok(())
}

fn write_meshes(n: u64, cap: u64, involutory: bool, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|err| CliError::Io { path: dir.to_path_buf(), err })?;
    let keep = |m: &AffineMesh| !involutory || m.is_involutory();
    let mut written = 0usize;
    for (idx, mesh) in
        enumerate_non_two_reductive(n, cap)?.iter().filter(|m| keep(m)).enumerate()
    {
        let path = dir.join(format!("order{n}_general_{idx}.json"));
        std::fs::write(&path, mesh.to_json() + "\n")
            .map_err(|err| CliError::Io { path, err })?;
        written += 1;
    }
    if n <= 7 {
        for (idx, mesh) in enumerate_two_reductive(n).iter().filter(|m| keep(m)).enumerate() {
            let path = dir.join(format!("order{n}_2reductive_{idx}.json"));
            std::fs::write(&path, mesh.to_json() + "\n")
                .map_err(|err| CliError::Io { path, err })?;
            written += 1;
        }
    }
    eprintln!("wrote {written} mesh files to {}", dir.display());
    Ok(())
}
