mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bcktop::{
    check_space_claims, enumerate_homs, exact_pair_check, run_theorem_suite, BaigTopology,
    TopologizedHom, VerdictReport,
};
use format::{load_instance, LoadedInstance};

#[derive(Parser)]
#[command(name = "bcktop", version, about = "Finite BCK-module topology toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance file and run all structural validators
    Verify { file: PathBuf },
    /// Build the chain topology and print opens, base, or connectedness
    Topology(TopologyArgs),
    /// Check properties of a declared homomorphism under two chains
    CheckMap(CheckMapArgs),
    /// Run every claim on every declared chain and homomorphism
    Suite { file: PathBuf },
    /// List submodules or endomorphisms canonically
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct TopologyArgs {
    file: PathBuf,
    #[arg(long)]
    dss: String,
    #[arg(long, conflicts_with_all = ["base", "connected"])]
    list_opens: bool,
    #[arg(long, conflicts_with = "connected")]
    base: bool,
    #[arg(long)]
    connected: bool,
}

#[derive(Args)]
struct CheckMapArgs {
    file: PathBuf,
    #[arg(long)]
    hom: String,
    #[arg(long)]
    source_dss: String,
    #[arg(long)]
    target_dss: String,
    /// Comma-separated subset of compatible,strict,open,continuous,homeo
    #[arg(long, value_delimiter = ',', default_value = "compatible,strict,open,continuous,homeo")]
    props: Vec<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    file: PathBuf,
    #[arg(long, value_parser = ["submodules", "homs"])]
    what: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { file } => verify(&file),
        Command::Topology(args) => topology(&args),
        Command::CheckMap(args) => check_map(&args),
        Command::Suite { file } => suite(&file),
        Command::Enumerate(args) => enumerate(&args),
    };
    match result {
        Ok(all_hold) => {
            if all_hold {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn verify(file: &Path) -> anyhow::Result<bool> {
    let instance = load_instance(file)?;
    println!(
        "valid: |M| = {}, |X| = {}, {} submodules, {} dss, {} homs, {} checks",
        instance.module.size(),
        instance.module.algebra().size(),
        instance.submodules.len(),
        instance.dss.len(),
        instance.homs.len(),
        instance.file.checks.len()
    );
    Ok(true)
}

fn topology(args: &TopologyArgs) -> anyhow::Result<bool> {
    let instance = load_instance(&args.file)?;
    let dss = instance.dss(&args.dss)?;
    let t = BaigTopology::build(&instance.module, dss)?;
    if args.base {
        for b in t.space().base() {
            println!("{b}");
        }
    } else if args.connected {
        println!("connected = {}", t.is_connected());
    } else {
        for o in t.opens() {
            println!("{o}");
        }
    }
    Ok(true)
}

fn topologized(
    instance: &LoadedInstance,
    hom_name: &str,
    source_dss: &str,
    target_dss: &str,
) -> anyhow::Result<TopologizedHom> {
    let hom = instance.hom(hom_name)?;
    let sdss = instance.dss(source_dss)?;
    let tdss = instance.hom_codomain(hom).dss(target_dss)?;
    Ok(TopologizedHom::new(
        hom.hom.clone(),
        sdss.clone(),
        tdss.clone(),
    )?)
}

fn eval_prop(th: &TopologizedHom, prop: &str) -> anyhow::Result<(bool, Option<String>)> {
    Ok(match prop {
        "compatible" => (
            th.is_compatible(),
            th.compatibility_witness()
                .map(|(n, lhs, rhs)| format!("n={n} f(M_{n})={lhs} M'_{n}={rhs}")),
        ),
        "strict" => (
            th.is_strict(),
            th.strictness_witness()
                .map(|(n, lhs, rhs)| format!("n={n} f(M_{n})={lhs} f(M)\u{2229}M'_{n}={rhs}")),
        ),
        "open" => (th.finite_map().is_open_map(), None),
        "continuous" => (th.finite_map().is_continuous(), None),
        "homeo" => (th.finite_map().is_homeomorphism(), None),
        other => anyhow::bail!(
            "unknown property `{other}` (available: compatible, strict, open, continuous, homeo)"
        ),
    })
}

fn check_map(args: &CheckMapArgs) -> anyhow::Result<bool> {
    let instance = load_instance(&args.file)?;
    let th = topologized(&instance, &args.hom, &args.source_dss, &args.target_dss)?;
    let mut all = true;
    for prop in &args.props {
        let (holds, witness) = eval_prop(&th, prop)?;
        all &= holds;
        match witness {
            Some(w) => println!("{prop}={holds} witness={w}"),
            None => println!("{prop}={holds}"),
        }
    }
    Ok(all)
}

fn suite(file: &Path) -> anyhow::Result<bool> {
    let instance = load_instance(file)?;
    let mut reports: Vec<VerdictReport> = Vec::new();

    for (dname, dss) in &instance.dss {
        let t = BaigTopology::build(&instance.module, dss)?;
        reports.extend(check_space_claims(&format!("dss {dname}"), &t)?);
    }
    for (sname, sub) in &instance.submodules {
        reports.push(exact_pair_check(
            &instance.module,
            sub,
            &format!("K={sname}"),
        )?);
    }

    let mut hom_instances = Vec::new();
    for hom in &instance.homs {
        let codomain = instance.hom_codomain(hom);
        for (sd, sdss) in &instance.dss {
            for (td, tdss) in &codomain.dss {
                let th = TopologizedHom::new(hom.hom.clone(), sdss.clone(), tdss.clone())?;
                hom_instances.push((format!("hom {} {sd}->{td}", hom.name), th));
            }
        }
    }
    reports.extend(run_theorem_suite(&hom_instances));

    for c in &instance.file.checks {
        let th = topologized(&instance, &c.hom, &c.source_dss, &c.target_dss)?;
        let (holds, witness) = eval_prop(&th, &c.claim)?;
        reports.push(VerdictReport {
            claim: format!("check:{}", c.claim),
            instance: c.name.clone(),
            holds: holds == c.expect,
            witness: if holds == c.expect { None } else { witness },
            elapsed: std::time::Duration::ZERO,
        });
    }

    reports.sort_by(|a, b| (&a.claim, &a.instance).cmp(&(&b.claim, &b.instance)));
    let mut all = true;
    for r in &reports {
        let verdict = if r.holds { "PASS" } else { "FAIL" };
        all &= r.holds;
        match &r.witness {
            Some(w) => println!("{verdict}  {:<18} {}  [{w}]", r.claim, r.instance),
            None => println!("{verdict}  {:<18} {}", r.claim, r.instance),
        }
    }
    println!(
        "{} checks, {} failed",
        reports.len(),
        reports.iter().filter(|r| !r.holds).count()
    );
    Ok(all)
}

fn enumerate(args: &EnumerateArgs) -> anyhow::Result<bool> {
    let instance = load_instance(&args.file)?;
    match args.what.as_str() {
        "submodules" => {
            for s in instance.module.submodules() {
                println!("{}", s.elements());
            }
        }
        _ => {
            for h in enumerate_homs(&instance.module, &instance.module)? {
                let row: Vec<String> = h.map().iter().map(ToString::to_string).collect();
                println!("{}", row.join(" "));
            }
        }
    }
    Ok(true)
}
