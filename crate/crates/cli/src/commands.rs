use clap::ValueEnum;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use monodt::boolfn::{
    alt_profile, ceil_log2_plus1, family, is_uniform_alternation, Family, TruthTable,
};
use monodt::circuits::{
    check_inverter, check_sorted_inverter, circuit_from_mdl, fischer_inverter,
    invert_sorted_blocks, invert_sorted_log, markov_circuit, mdt_from_circuit, Circuit,
};
use monodt::decomp::{
    alternation_decomposition, threshold_interleaved_decomposition, uniform_chain_decomposition,
    verify_decomposition,
};
use monodt::models::{mdl_from_decomposition, mdl_from_mdt, mdt_build, mdt_from_mdl, namdt_build};
use monodt::selftest::{run_criterion, Config, Level, TITLES};
use monodt::serial::Model;
use monodt::stochastic::{
    m1_to_m2, m2_to_m1, majority_eval, nmdt_build, rmdt_derandomize, rmdt_normalize,
    rmdt_to_majority_form, wrmdt_to_rmdt, RandomizedMdt, Threshold,
};

use crate::artifact::{load, load_circuit, load_model, load_table, Sink};
use crate::{
    BuildModel, Cli, Command, ConvertTarget, DecompKind, ModelKind, RmdtOp, SelftestLevel, Status,
    SynthTarget, Theta,
};

pub fn run(cli: &Cli) -> Result<Status> {
    let sink = Sink::new(cli.out.clone());
    let max_n = cli.max_n;
    match &cli.command {
        Command::Alt { file } => alt(&load_table(file, max_n)?),
        Command::Table { family: spec, n } => {
            let fam: Family = spec.parse()?;
            sink.text(&family(&fam, *n)?.to_text())?;
            Ok(Status::Ok)
        }
        Command::Decompose { file, kind } => decompose(&sink, &load_table(file, max_n)?, *kind),
        Command::Build { file, model } => build(&sink, &load_table(file, max_n)?, *model),
        Command::Convert { file, from, to } => {
            convert(&sink, load_model(file, max_n)?, *from, *to, max_n)
        }
        Command::Synth {
            target,
            file,
            m,
            t,
            levels,
        } => synth(&sink, cli, *target, file.as_deref(), *m, *t, *levels),
        Command::Rmdt {
            op,
            file,
            table,
            theta,
        } => rmdt(&sink, cli, *op, file, table.as_deref(), *theta),
        Command::Verify { a, b } => verify(a, b, max_n),
        Command::Selftest { level, only } => selftest(cli, *level, only),
    }
}

/// `x_1 … x_n` as a bit string.
fn point(n: usize, x: usize) -> String {
    (0..n)
        .map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Prints `EQUIV` or the first differing input.
fn compare(sink: &Sink, got: &TruthTable, want: &TruthTable) -> Status {
    if got.arity() != want.arity() {
        sink.report(format!(
            "NOT EQUIV arity {} vs {}",
            got.arity(),
            want.arity()
        ));
        return Status::Differs;
    }
    match (0..got.len()).find(|&x| got.get(x) != want.get(x)) {
        None => {
            sink.report("EQUIV");
            Status::Ok
        }
        Some(x) => {
            sink.report(format!(
                "NOT EQUIV x={} got={} want={}",
                point(got.arity(), x),
                u8::from(got.get(x)),
                u8::from(want.get(x))
            ));
            Status::Differs
        }
    }
}

fn alt(f: &TruthTable) -> Result<Status> {
    let profile = alt_profile(f);
    let k = profile.alternation();
    println!(
        "alt={k} uniform={} dtm={} dtm_na={k}",
        is_uniform_alternation(f),
        ceil_log2_plus1(k)
    );
    let mut counts = vec![0usize; k + 1];
    for v in profile.values() {
        counts[v] += 1;
    }
    let counts: Vec<String> = counts.iter().map(usize::to_string).collect();
    println!("profile={}", counts.join(","));
    Ok(Status::Ok)
}

fn decompose(sink: &Sink, f: &TruthTable, kind: DecompKind) -> Result<Status> {
    let d = match kind {
        DecompKind::Alt => alternation_decomposition(f),
        DecompKind::Threshold => threshold_interleaved_decomposition(f),
        DecompKind::Uniform => uniform_chain_decomposition(f)?,
    };
    let report = verify_decomposition(f, &d)?;
    sink.text(&d.to_text())?;
    sink.report(format!("components={} {report}", d.len()));
    Ok(if report.passed() {
        Status::Ok
    } else {
        Status::Differs
    })
}

fn build(sink: &Sink, f: &TruthTable, kind: BuildModel) -> Result<Status> {
    let model = match kind {
        BuildModel::Mdl => Model::Mdl(mdl_from_decomposition(&alternation_decomposition(f))?),
        BuildModel::Mdt => Model::Mdt(mdt_build(f)),
        BuildModel::Namdt => Model::Namdt(namdt_build(f)),
        BuildModel::Nmdt => Model::NmdtM1(nmdt_build(f)),
        BuildModel::Nmdt2 => Model::NmdtM2(m1_to_m2(&nmdt_build(f))),
    };
    sink.model(&model)?;
    sink.report(format!("kind={} {}", model.kind(), shape(&model)));
    Ok(compare(sink, &model.to_table()?, f))
}

fn shape(m: &Model) -> String {
    match m {
        Model::Mdl(l) => format!("length={}", l.len()),
        Model::Mdt(t) => format!("height={}", t.height()),
        Model::Namdt(t) => format!("height={}", t.height()),
        Model::NmdtM1(t) => format!("height={} branches={}", t.height(), t.root().branch_count()),
        Model::NmdtM2(t) => format!("height={}", t.height()),
        Model::Rmdt(t) => format!("height={} coins={}", t.height(), t.max_coins()),
        Model::Wrmdt(t) => format!("height={} w={}", t.height(), t.set_size()),
    }
}

fn convert(
    sink: &Sink,
    model: Model,
    from: Option<ModelKind>,
    to: ConvertTarget,
    max_n: usize,
) -> Result<Status> {
    if let Some(k) = from {
        if k.name() != model.kind() {
            bail!("input is a {} model, not {}", model.kind(), k.name());
        }
    }
    if let ConvertTarget::Table = to {
        if model.arity() > max_n {
            bail!(
                "model has {} variables, above --max-n {max_n}",
                model.arity()
            );
        }
        sink.text(&model.to_table()?.to_text())?;
        return Ok(Status::Ok);
    }
    let kind = model.kind();
    let out = match (model, to) {
        (Model::Mdl(l), ConvertTarget::Mdt) => Model::Mdt(mdt_from_mdl(&l)?),
        (Model::Mdt(t), ConvertTarget::Mdl) => Model::Mdl(mdl_from_mdt(&t)),
        (Model::Mdt(t), ConvertTarget::Rmdt) => Model::Rmdt(RandomizedMdt::from_mdt(&t)),
        (Model::NmdtM1(t), ConvertTarget::Nmdt2) => Model::NmdtM2(m1_to_m2(&t)),
        (Model::NmdtM2(t), ConvertTarget::Nmdt1) => Model::NmdtM1(m2_to_m1(&t)),
        (Model::Wrmdt(t), ConvertTarget::Rmdt) => Model::Rmdt(wrmdt_to_rmdt(&t)?),
        (m @ Model::Mdl(_), ConvertTarget::Mdl)
        | (m @ Model::Mdt(_), ConvertTarget::Mdt)
        | (m @ Model::NmdtM1(_), ConvertTarget::Nmdt1)
        | (m @ Model::NmdtM2(_), ConvertTarget::Nmdt2)
        | (m @ Model::Rmdt(_), ConvertTarget::Rmdt) => m,
        (_, to) => bail!(
            "no conversion from {kind} to {}",
            to.to_possible_value()
                .map_or("?".into(), |v| v.get_name().to_string())
        ),
    };
    sink.model(&out)?;
    sink.report(format!("kind={} {}", out.kind(), shape(&out)));
    Ok(Status::Ok)
}

fn input<'a>(file: Option<&'a Path>, what: &str) -> Result<&'a Path> {
    file.with_context(|| format!("this target needs a {what} file"))
}

fn width(m: Option<usize>) -> Result<usize> {
    m.context("inverter targets need --m")
}

/// Netlist out, then a line on its negations and depth.
fn emit_circuit(sink: &Sink, c: &Circuit) -> Result<()> {
    sink.text(&c.to_netlist())?;
    sink.report(format!(
        "gates={} negations={} depth={}",
        c.size(),
        c.negation_count(),
        c.depth()
    ));
    Ok(())
}

fn inverter_check(sink: &Sink, ok: bool) -> Status {
    if ok {
        sink.report("inverter check: ok");
        Status::Ok
    } else {
        sink.report("inverter check: FAILED");
        Status::Differs
    }
}

fn synth(
    sink: &Sink,
    cli: &Cli,
    target: SynthTarget,
    file: Option<&Path>,
    m: Option<usize>,
    t: usize,
    levels: usize,
) -> Result<Status> {
    match target {
        SynthTarget::MdtFromCircuit => {
            let c = load_circuit(input(file, "netlist")?, cli.max_n)?;
            let tree = mdt_from_circuit(&c)?;
            let model = Model::Mdt(tree);
            sink.model(&model)?;
            sink.report(format!(
                "{} negations={} bound={}",
                shape(&model),
                c.negation_count(),
                c.negation_count() + 1
            ));
            if c.n_inputs() > cli.max_n {
                sink.report("equivalence not checked: arity above --max-n");
                return Ok(Status::Ok);
            }
            Ok(compare(sink, &model.to_table()?, &c.truth_table_of(0)?))
        }
        SynthTarget::Markov => {
            let f = load_table(input(file, "truth-table")?, cli.max_n)?;
            let (c, report) = markov_circuit(&f);
            sink.text(&c.to_netlist())?;
            sink.report(report.to_string());
            Ok(compare(sink, &c.truth_table_of(0)?, &f))
        }
        SynthTarget::InverterSorted => {
            let c = invert_sorted_log(width(m)?);
            emit_circuit(sink, &c)?;
            Ok(inverter_check(sink, check_sorted_inverter(&c)))
        }
        SynthTarget::InverterFischer => {
            let m = width(m)?;
            let c = fischer_inverter(m);
            emit_circuit(sink, &c)?;
            if m > cli.max_n {
                sink.report("inverter check skipped: width above --max-n");
                return Ok(Status::Ok);
            }
            Ok(inverter_check(sink, check_inverter(&c)))
        }
        SynthTarget::InverterBlocks => {
            let (c, report) = invert_sorted_blocks(width(m)?, t, levels)?;
            emit_circuit(sink, &c)?;
            sink.report(report.to_string());
            Ok(inverter_check(sink, check_sorted_inverter(&c)))
        }
        SynthTarget::CircuitFromMdl => {
            let model = load_model(input(file, "list")?, cli.max_n)?;
            let Model::Mdl(l) = model else {
                bail!("circuit_from_mdl needs an mdl model, got {}", model.kind());
            };
            let (c, report) = circuit_from_mdl(&l, t, levels)?;
            sink.text(&c.to_netlist())?;
            sink.report(report.to_string());
            if l.arity() > cli.max_n {
                sink.report("equivalence not checked: arity above --max-n");
                return Ok(Status::Ok);
            }
            Ok(compare(sink, &c.truth_table_of(0)?, &l.to_table()?))
        }
    }
}

fn rmdt_input(model: Model) -> Result<RandomizedMdt> {
    match model {
        Model::Rmdt(t) => Ok(t),
        Model::Mdt(t) => Ok(RandomizedMdt::from_mdt(&t)),
        other => bail!("expected an rmdt model, got {}", other.kind()),
    }
}

fn rmdt(
    sink: &Sink,
    cli: &Cli,
    op: RmdtOp,
    file: &Path,
    table: Option<&Path>,
    theta: Theta,
) -> Result<Status> {
    let model = load_model(file, cli.max_n)?;
    if let (RmdtOp::FromWrmdt, Model::Wrmdt(w)) = (op, &model) {
        let r = Model::Rmdt(wrmdt_to_rmdt(w)?);
        sink.model(&r)?;
        sink.report(format!(
            "{} from w={} height={}",
            shape(&r),
            w.set_size(),
            w.height()
        ));
        return Ok(Status::Ok);
    }
    if let RmdtOp::FromWrmdt = op {
        bail!("from_wrmdt needs a wrmdt model, got {}", model.kind());
    }
    let t = rmdt_input(model)?;
    let n = t.arity();
    let exhaustive = || -> Result<()> {
        if n > cli.max_n {
            bail!("tree has {n} variables, above --max-n {}", cli.max_n);
        }
        Ok(())
    };
    match op {
        RmdtOp::Prob => {
            exhaustive()?;
            for x in 0..1usize << n {
                println!("x={} p={}", point(n, x), t.accept_prob_index(x));
            }
            Ok(Status::Ok)
        }
        RmdtOp::Computes => {
            let f = load_table(table.context("computes needs --table")?, cli.max_n)?;
            let theta = match theta {
                Theta::Half => Threshold::Half,
                Theta::TwoThirds => Threshold::TwoThirds,
            };
            let yes = t.computes(&f, theta)?;
            println!("computes={yes}");
            Ok(if yes { Status::Ok } else { Status::Differs })
        }
        RmdtOp::Normalize => {
            let r = Model::Rmdt(rmdt_normalize(&t));
            sink.model(&r)?;
            sink.report(shape(&r));
            Ok(Status::Ok)
        }
        RmdtOp::Derandomize => {
            exhaustive()?;
            let d = Model::Mdt(rmdt_derandomize(&t)?);
            sink.model(&d)?;
            sink.report(format!("{} from height={}", shape(&d), t.height()));
            Ok(compare(sink, &d.to_table()?, &t.half_threshold_table()?))
        }
        RmdtOp::Majority => {
            exhaustive()?;
            let trees = rmdt_to_majority_form(&t)?;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)
                    .with_context(|| format!("cannot create {}", dir.display()))?;
                for (s, tree) in trees.iter().enumerate() {
                    Sink::new(Some(dir.join(format!("t{s}.json"))))
                        .model(&Model::Mdt(tree.clone()))?;
                }
            }
            println!("subtrees={}", trees.len());
            let f = t.half_threshold_table()?;
            let maj = TruthTable::from_fn(n, |x| majority_eval(&trees, x))?;
            Ok(compare(&Sink::new(Some(".".into())), &maj, &f))
        }
        RmdtOp::FromWrmdt => unreachable!("handled above"),
    }
}

fn verify(a: &Path, b: &Path, max_n: usize) -> Result<Status> {
    let fa = load(a, max_n)?.to_table(max_n)?;
    let fb = load(b, max_n)?.to_table(max_n)?;
    if fa.arity() != fb.arity() {
        bail!("arity mismatch: {} vs {}", fa.arity(), fb.arity());
    }
    Ok(compare(&Sink::new(Some(".".into())), &fa, &fb))
}

fn selftest(cli: &Cli, level: SelftestLevel, only: &[usize]) -> Result<Status> {
    let cfg = Config {
        level: match level {
            SelftestLevel::Quick => Level::Quick,
            SelftestLevel::Full => Level::Full,
        },
        seed: cli.seed,
    };
    let ids: Vec<usize> = if only.is_empty() {
        (1..=TITLES.len()).collect()
    } else {
        only.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > TITLES.len()) {
        bail!("no criterion {bad}; criteria are 1..={}", TITLES.len());
    }
    let mut failed = 0;
    for id in &ids {
        let r = run_criterion(*id, &cfg);
        println!("{r}");
        failed += usize::from(!r.passed);
    }
    println!("{} passed, {failed} failed", ids.len() - failed);
    Ok(if failed == 0 {
        Status::Ok
    } else {
        Status::Differs
    })
}
