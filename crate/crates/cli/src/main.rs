use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exquo::report::{error_code, run, Command, Emit, RunConfig, Source, DEFAULT_LIMIT};
use exquo::rep::DEFAULT_CAP;
use exquo::subcat::{Kind, Side};

#[derive(Parser)]
#[command(name = "exquo", version, about = "Exact structures, stable quotients and their subcategory lattices over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate an algebra with its seed modules
    Validate(Opts),
    /// Check the exact-category axioms on the universe
    Axioms(Opts),
    /// Projectives, injectives and the Frobenius property
    Frobenius(Opts),
    /// Enumerate the thick or complete subcategory lattice
    Subcats(Opts),
    /// Match ambient and stable subcategories through F and G
    Correspondence(Opts),
    /// Totally reflexive modules and the G(R) checks
    Gorenstein(Opts),
    /// Stable zero lemma, factorization, weak five lemma, triangles
    Lemmas(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Built-in algebra such as xquot:2,3 or xy2:2
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    preset: Option<String>,
    /// TOML algebra spec file
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Multiplicity bound for universe objects
    #[arg(long)]
    bound: Option<usize>,
    /// split | abelian | induced:<selector> | file:<path>
    #[arg(long, default_value = "abelian")]
    structure: String,
    /// inj | proj | zero | add:<seeds> | objs:<list> | file:<path>
    #[arg(long = "N", default_value = "inj")]
    n: String,
    #[arg(long, default_value = "thick")]
    kind: Kind,
    /// ambient | stable
    #[arg(long, default_value = "ambient")]
    side: Side,
    /// json | md | dot
    #[arg(long, default_value = "json")]
    emit: Emit,
    /// Largest hom space searched element by element
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Largest number of subcategories enumerated per lattice
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    /// Ext degrees checked before a period is required
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Directory for report files; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(command: Command, o: &Opts) -> RunConfig {
    let source = match (&o.preset, &o.spec) {
        (Some(p), _) => Source::Preset(p.clone()),
        (None, Some(s)) => Source::Spec(s.clone()),
        (None, None) => unreachable!("clap requires a source"),
    };
    let mut c = RunConfig::new(command, source);
    c.bound = o.bound;
    c.cap = o.cap;
    c.structure = o.structure.clone();
    c.n = o.n.clone();
    c.kind = o.kind;
    c.side = o.side;
    c.emit = o.emit;
    c.limit = o.limit;
    c.depth = o.depth;
    c
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Cmd::Validate(o) => (Command::Validate, o),
        Cmd::Axioms(o) => (Command::Axioms, o),
        Cmd::Frobenius(o) => (Command::Frobenius, o),
        Cmd::Subcats(o) => (Command::Subcats, o),
        Cmd::Correspondence(o) => (Command::Correspondence, o),
        Cmd::Gorenstein(o) => (Command::Gorenstein, o),
        Cmd::Lemmas(o) => (Command::Lemmas, o),
    };
    let cfg = config(command, opts);
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e) as u8);
        }
    };
    for (name, text) in &outcome.files {
        match &opts.out {
            Some(dir) => {
                let path = dir.join(name);
                if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, text)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                eprintln!("wrote {}", path.display());
            }
            None => print!("{text}"),
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}
