use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmtf::analysis::{check_table, kb, key_sizes, simulate_failure, validate_params, TABLE_ROWS};
use rmtf::subspace::sphere_size;
use rmtf::{Ciphertext, MatFqm, PublicKey, TrapdoorKey};

use crate::config::Config;
use crate::error::CliError;
use crate::{Command, EvalArgs, InvertArgs, KeygenArgs, SimulateArgs, SizesArgs, SphereArgs, ValidateArgs};

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Keygen(a) => keygen(a),
        Command::Eval(a) => eval(a),
        Command::Invert(a) => invert(a),
        Command::Validate(a) => validate(a),
        Command::Sizes(a) => sizes(a),
        Command::Simulate(a) => simulate(a),
        Command::Sphere(a) => sphere(a),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn load<T>(path: &Path, parse: impl FnOnce(&[u8]) -> rmtf::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| CliError::in_file(path, e))
}

fn keygen(a: KeygenArgs) -> Result<(), CliError> {
    let cfg = Config::resolve(&a.params)?;
    let params = cfg.params()?;
    let seed = cfg.seed(a.seed)?;
    params.validate().map_err(|e| CliError::Params(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pk, tk) = rmtf::gen(&params, &mut rng)?;
    let (pk_bytes, tk_bytes) = (pk.to_bytes(), tk.to_bytes());
    write(&a.pk, &pk_bytes)?;
    write(&a.tk, &tk_bytes)?;
    println!("pk={} bytes={}", a.pk.display(), pk_bytes.len());
    println!("tk={} bytes={}", a.tk.display(), tk_bytes.len());
    Ok(())
}

fn eval(a: EvalArgs) -> Result<(), CliError> {
    let pk = load(&a.pk, PublicKey::from_bytes)?;
    let (x, e) = match (&a.x, &a.e, a.seed) {
        (Some(xp), Some(ep), _) => {
            let x = load(xp, |b| MatFqm::from_bytes(pk.ctx(), b))?;
            let e = load(ep, |b| MatFqm::from_bytes(pk.ctx(), b))?;
            (x, e)
        }
        (_, _, Some(seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rmtf::sample_input(&pk, &mut rng)?
        }
        _ => return Err(CliError::Usage("eval needs --seed or both --x and --e".into())),
    };
    let ct = rmtf::eval(&pk, &x, &e).map_err(|err| match err {
        rmtf::Error::Shape(msg) => CliError::Malformed(msg),
        rmtf::Error::WrongWeight { .. } => CliError::Params(err.to_string()),
        other => CliError::Lib(other),
    })?;
    if let Some(p) = &a.x_out {
        write(p, &x.to_bytes())?;
    }
    if let Some(p) = &a.e_out {
        write(p, &e.to_bytes())?;
    }
    let bytes = ct.to_bytes();
    write(&a.ct, &bytes)?;
    println!("ct={} bytes={}", a.ct.display(), bytes.len());
    Ok(())
}

fn invert(a: InvertArgs) -> Result<(), CliError> {
    let pk = load(&a.pk, PublicKey::from_bytes)?;
    let tk = load(&a.tk, TrapdoorKey::from_bytes)?;
    let ct = load(&a.ct, Ciphertext::from_bytes)?;
    if pk.params() != tk.params() || pk.params() != ct.params() {
        return Err(CliError::Malformed("key and ciphertext parameters differ".into()));
    }
    let (x, e) = rmtf::invert(&pk, &tk, &ct)?;
    if let Some(p) = &a.x_out {
        write(p, &x.to_bytes())?;
    }
    if let Some(p) = &a.e_out {
        write(p, &e.to_bytes())?;
    }
    println!("status=ok");
    println!("x={}x{} e={}x{} rank_weight={}", x.nrows(), x.ncols(), e.nrows(), e.ncols(), rmtf::subspace::rank_weight(&e));
    Ok(())
}

fn validate(a: ValidateArgs) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    if a.table {
        let checks = check_table();
        let mut all_pass = true;
        let mut mismatches = 0;
        for c in &checks {
            let p = &c.row.params;
            all_pass &= c.report.all_pass();
            mismatches += usize::from(!c.pk_matches()) + usize::from(!c.ct_matches());
            let mark = |ok| if ok { "" } else { " MISMATCH" };
            let _ = writeln!(
                out,
                "table={} lambda={} {} pk_kb={} (printed {}{}) ct_kb={} (printed {}{}) log2_failure={:.2}",
                c.row.table,
                p.lambda,
                if c.report.all_pass() { "PASS" } else { "FAIL" },
                c.pk_kb,
                c.row.pk_kb,
                mark(c.pk_matches()),
                c.ct_kb,
                c.row.ct_kb,
                mark(c.ct_matches()),
                c.report.failure.as_ref().map_or(f64::NAN, |b| b.log2_total),
            );
            if a.records {
                let _ = write!(out, "{}", c.report.records());
            }
        }
        let _ = writeln!(
            out,
            "rows={} constraints={} size_mismatches={mismatches}",
            checks.len(),
            if all_pass { "PASS" } else { "FAIL" }
        );
        return if all_pass { Ok(()) } else { Err(CliError::Params("a published row fails its constraints".into())) };
    }
    let cfg = Config::resolve(&a.params)?;
    let mut params = cfg.params()?;
    params.lambda = cfg.lambda()?;
    let report = validate_params(&params, a.statistical);
    if a.records {
        let _ = write!(out, "{}", report.records());
    } else {
        let _ = writeln!(out, "{report}");
    }
    if report.all_pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.constraints.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        Err(CliError::Params(failed.join(", ")))
    }
}

fn sizes(a: SizesArgs) -> Result<(), CliError> {
    if a.table {
        println!("table lambda pk_bytes tk_bytes ct_bytes pk_kb ct_kb printed_pk_kb printed_ct_kb");
        for r in &TABLE_ROWS {
            let s = key_sizes(&r.params);
            println!(
                "{} {} {} {} {} {} {} {} {}",
                r.table,
                r.params.lambda,
                s.pk,
                s.tk,
                s.ct,
                kb(s.pk),
                kb(s.ct),
                r.pk_kb,
                r.ct_kb
            );
        }
        return Ok(());
    }
    let params = Config::resolve(&a.params)?.params()?;
    let s = key_sizes(&params);
    println!("pk_bytes={} pk_kb={}", s.pk, kb(s.pk));
    println!("tk_bytes={} tk_kb={}", s.tk, kb(s.tk));
    println!("ct_bytes={} ct_kb={}", s.ct, kb(s.ct));
    Ok(())
}

fn simulate(a: SimulateArgs) -> Result<(), CliError> {
    let cfg = Config::resolve(&a.params)?;
    let shape = cfg.shape()?;
    let seed = cfg.seed(a.seed)?;
    let trials = cfg.trials(a.trials)?;
    let sim = simulate_failure(&shape, trials, seed)?;
    match &a.out {
        Some(p) => write(p, sim.csv().as_bytes())?,
        None => print!("{}", sim.csv()),
    }
    eprintln!(
        "trials={} failures={} (I: {}, II: {}, verify: {}) rate={:.6} bound=2^{:.3} tolerance={:.6} regime_ok={}",
        sim.trials(),
        sim.failures(),
        sim.failures_step1,
        sim.failures_step2,
        sim.failures_other,
        sim.rate(),
        sim.bound.log2_total,
        sim.tolerance(),
        sim.bound.regime_ok
    );
    Ok(())
}

fn sphere(a: SphereArgs) -> Result<(), CliError> {
    let cfg = Config::resolve(&a.params)?;
    let (q, m, l, w) = (cfg.q()?, cfg.m()?, cfg.l()?, cfg.w()?);
    let s = sphere_size(q, m, l, w)?;
    println!("exact={}", s.exact);
    if s.exact.bits() > 0 {
        println!("log2_exact={:.6}", s.log2());
    }
    println!("log2_lower={:.6}", s.log2_lower(q));
    println!("log2_upper={:.6}", s.log2_upper(q));
    println!("in_hypothesis={}", s.in_hypothesis);
    println!("sandwich_holds={}", s.sandwich_holds(q));
    Ok(())
}
