use std::path::{Path, PathBuf};
use std::time::Instant;

use hho_mlp::data::{self, Dataset, EncodingPolicy, Schema, SplitSpec};
use hho_mlp::digest;
use hho_mlp::featsel::{self, CostWeights, FeatureMask, MlpInnerEvaluator};
use hho_mlp::hho::SwarmConfig;
use hho_mlp::manifest::RunManifest;
use hho_mlp::metrics::MetricsReport;
use hho_mlp::mlp::MlpTopology;
use hho_mlp::synth;
use hho_mlp::train::{self, TrainConfig, TrainedModel};

use crate::config::{parse_list, ConfigFile};
use crate::{
    BenchSwarmArgs, CliError, EvaluateArgs, GenArgs, PrepareArgs, SelectArgs, TrainArgs,
};

fn format_u64_digest(d: u64) -> String {
    digest::format_digest(d)
}

fn require_file(path: &Path, what: &str) -> Result<(), CliError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{what} {} does not exist",
            path.display()
        )))
    }
}

pub fn gen(args: GenArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let kind = file.resolve(args.kind, "kind", "kdd".to_string())?;
    let rows = file.resolve(args.rows, "rows", 1000)?;
    let seed = file.resolve(args.seed, "seed", 42u64)?;
    let noise = file.resolve(args.noise, "noise", 9)?;

    let (schema, records) = match kind.as_str() {
        "kdd" => synth::kdd_like(rows, seed),
        "separable" => synth::separable2(rows, seed),
        "informative" => synth::one_informative(rows, noise, seed),
        other => {
            return Err(CliError::Usage(format!(
                "unknown fixture kind {other:?} (expected kdd, separable or informative)"
            )))
        }
    };

    synth::write_csv(&args.out, &records)?;
    let schema_path = args
        .schema_out
        .unwrap_or_else(|| args.out.with_extension("schema"));
    schema.save(&schema_path)?;

    println!(
        "wrote {} rows to {} (schema {})",
        records.len(),
        args.out.display(),
        schema_path.display()
    );
    Ok(())
}

fn load_schema(spec: &str) -> Result<Schema, CliError> {
    if spec == "kdd41" {
        return Ok(Schema::kdd41());
    }
    let path = Path::new(spec);
    require_file(path, "schema file")?;
    Ok(Schema::load(path)?)
}

pub fn prepare(args: PrepareArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let train_fraction = file.resolve(args.train_fraction, "train_fraction", 0.8)?;
    let seed = file.resolve(args.seed, "seed", 42u64)?;
    let na = file.resolve(args.na, "na", 0.0)?;
    let nb = file.resolve(args.nb, "nb", 1.0)?;
    let policy_name = file.resolve(args.policy, "policy", "ordinal".to_string())?;
    let policy = match policy_name.as_str() {
        "ordinal" => EncodingPolicy::Ordinal,
        "one-hot" => EncodingPolicy::OneHot,
        other => {
            return Err(CliError::Usage(format!(
                "unknown encoding policy {other:?} (expected ordinal or one-hot)"
            )))
        }
    };

    let schema = load_schema(&args.schema)?;
    let started = Instant::now();
    let records = data::load_csv(&args.input, &schema, args.header)?;
    if records.is_empty() {
        return Err(CliError::Usage(format!(
            "input {} contains no data rows",
            args.input.display()
        )));
    }
    let split = SplitSpec::new(train_fraction, !args.no_stratify, seed);
    let prepared = data::prepare(&records, &schema, &split, policy, na, nb)?;

    std::fs::create_dir_all(&args.out_dir).map_err(|source| hho_mlp::Error::Io {
        path: args.out_dir.clone(),
        source,
    })?;
    let train_path = args.out_dir.join("train.cache");
    let test_path = args.out_dir.join("test.cache");
    prepared.train.save_cache(&train_path)?;
    prepared.test.save_cache(&test_path)?;

    let input_bytes = std::fs::read(&args.input).map_err(|source| hho_mlp::Error::Io {
        path: args.input.clone(),
        source,
    })?;
    let mut manifest = RunManifest::new("prepare");
    manifest
        .push("input", args.input.display())
        .push("input_digest", format_u64_digest(digest::fnv1a64(&input_bytes)))
        .push("schema", &args.schema)
        .push("train_fraction", train_fraction)
        .push("stratified", !args.no_stratify)
        .push("seed", seed)
        .push("policy", &policy_name)
        .push("range", format!("{na} {nb}"))
        .push("train_rows", prepared.train.n_rows())
        .push("test_rows", prepared.test.n_rows())
        .push("features", prepared.train.width())
        .push("train_digest", format_u64_digest(prepared.train.digest()?))
        .push("test_digest", format_u64_digest(prepared.test.digest()?));
    manifest.wall_clock_ms = Some(started.elapsed().as_millis());
    manifest.save(&args.out_dir.join("prepare.manifest"))?;

    println!(
        "prepared {} train rows and {} test rows ({} features)",
        prepared.train.n_rows(),
        prepared.test.n_rows(),
        prepared.train.width()
    );
    println!("train {}", format_u64_digest(prepared.train.digest()?));
    println!("test  {}", format_u64_digest(prepared.test.digest()?));
    Ok(())
}

pub fn select(args: SelectArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let population = file.resolve(args.population, "population", 10)?;
    let iterations = file.resolve(args.iterations, "iterations", 30)?;
    let seed = file.resolve(args.seed, "seed", 1u64)?;
    let alpha = file.resolve(args.alpha, "alpha", 0.99)?;
    let beta_fs = file.resolve(args.beta_fs, "beta_fs", 0.01)?;
    let inner_population = file.resolve(args.inner_population, "inner_population", 5)?;
    let inner_iterations = file.resolve(args.inner_iterations, "inner_iterations", 10)?;
    let inner_hidden_raw = file.resolve(args.inner_hidden, "inner_hidden", "5".to_string())?;
    let inner_hidden: Vec<usize> = parse_list(&inner_hidden_raw, "inner hidden layer")?;

    if beta_fs == 0.0 {
        eprintln!("warning: --beta-fs 0 leaves the mask size unconstrained");
    }
    let weights = CostWeights::new(alpha, beta_fs)?;

    let started = Instant::now();
    let dataset = Dataset::load_cache(&args.cache)?;
    let swarm = SwarmConfig::new(population, iterations, seed);
    let mut inner = MlpInnerEvaluator::with_budget(seed);
    inner.hidden_layers = inner_hidden.clone();
    inner.swarm.population_size = inner_population;
    inner.swarm.max_iterations = inner_iterations;

    let outcome = featsel::select_features(&dataset, &swarm, &weights, &inner)?;
    outcome.mask.save(&args.out, dataset.feature_names())?;

    let manifest_path = args
        .manifest
        .unwrap_or_else(|| manifest_sibling(&args.out));
    let mask_bits: String = outcome
        .mask
        .bits()
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect();
    let mut manifest = RunManifest::new("select");
    manifest
        .push("cache", args.cache.display())
        .push("cache_digest", format_u64_digest(dataset.digest()?))
        .push("population", population)
        .push("iterations", iterations)
        .push("seed", seed)
        .push("alpha", alpha)
        .push("beta_fs", beta_fs)
        .push("inner_population", inner_population)
        .push("inner_iterations", inner_iterations)
        .push("inner_hidden", &inner_hidden_raw)
        .push("selected", outcome.mask.selected_count())
        .push("mask", mask_bits)
        .push("best_cost", outcome.best_cost)
        .push("history", join_floats(&outcome.history));
    manifest.wall_clock_ms = Some(started.elapsed().as_millis());
    manifest.save(&manifest_path)?;

    let names: Vec<&str> = outcome
        .mask
        .selected_indices()
        .into_iter()
        .map(|i| dataset.feature_names()[i].as_str())
        .collect();
    println!(
        "selected {}/{} features (cost {:.6}): {}",
        outcome.mask.selected_count(),
        dataset.width(),
        outcome.best_cost,
        names.join(" ")
    );
    Ok(())
}

fn manifest_sibling(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".manifest");
    PathBuf::from(os)
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn load_mask_for(dataset: &Dataset, path: &Path) -> Result<FeatureMask, CliError> {
    let (mask, names) = FeatureMask::load(path)?;
    if names != dataset.feature_names() {
        return Err(CliError::Core(hho_mlp::Error::Mismatch(format!(
            "mask file {} names different features than the cache",
            path.display()
        ))));
    }
    Ok(mask)
}

pub fn train(args: TrainArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let hidden_raw = file.resolve(args.hidden, "hidden", "5,5".to_string())?;
    let hidden: Vec<usize> = parse_list(&hidden_raw, "hidden layer")?;
    let population = file.resolve(args.population, "population", 10)?;
    let iterations = file.resolve(args.iterations, "iterations", 30)?;
    let seed = file.resolve(args.seed, "seed", 42u64)?;
    let weight_min = file.resolve(args.weight_min, "weight_min", -6.0)?;
    let weight_max = file.resolve(args.weight_max, "weight_max", 6.0)?;
    let inputs = file.resolve_optional(args.inputs, "inputs")?;

    let started = Instant::now();
    let dataset = Dataset::load_cache(&args.cache)?;
    let mask = match &args.mask {
        Some(path) => Some(load_mask_for(&dataset, path)?),
        None => None,
    };
    let input_width = mask
        .as_ref()
        .map_or(dataset.width(), FeatureMask::selected_count);
    if let Some(expected) = inputs {
        if expected != input_width {
            return Err(CliError::Usage(format!(
                "--inputs {expected} is inconsistent with the {} features the cache{} provides",
                input_width,
                if mask.is_some() { " and mask" } else { "" }
            )));
        }
    }

    let topology = MlpTopology::new(input_width, hidden, 1)?;
    let mut config = TrainConfig::new(topology, SwarmConfig::new(population, iterations, seed));
    config.weight_bounds = (weight_min, weight_max);
    if let Some(mask) = mask {
        config = config.with_mask(mask);
    }

    let model = train::train(&dataset, &config)?;
    model.save(&args.out)?;

    let manifest_path = args
        .manifest
        .unwrap_or_else(|| manifest_sibling(&args.out));
    let mut manifest = RunManifest::new("train");
    manifest
        .push("cache", args.cache.display())
        .push("cache_digest", format_u64_digest(dataset.digest()?))
        .push(
            "mask",
            args.mask
                .as_ref()
                .map_or("none".to_string(), |p| p.display().to_string()),
        )
        .push("hidden", &hidden_raw)
        .push("inputs", input_width)
        .push("population", population)
        .push("iterations", iterations)
        .push("seed", seed)
        .push("weight_bounds", format!("{weight_min} {weight_max}"))
        .push(
            "model_digest",
            format_u64_digest(digest::text_digest(&model.to_text())),
        )
        .push("final_fitness", model.fitness_history.last().unwrap())
        .push("history", join_floats(&model.fitness_history));
    manifest.wall_clock_ms = Some(started.elapsed().as_millis());
    manifest.save(&manifest_path)?;

    println!(
        "trained {} parameters over {} iterations; final fitness {}",
        model.topology.parameter_count(),
        iterations,
        model.fitness_history.last().unwrap()
    );
    println!("model {}", args.out.display());
    Ok(())
}

pub fn evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let _ = ConfigFile::load(args.config.as_deref())?;
    let model = TrainedModel::load(&args.model)?;
    let dataset = Dataset::load_cache(&args.cache)?;
    let report = train::evaluate(&model, &dataset)?;

    print!("{}", report.to_text());

    if let Some(path) = &args.report {
        std::fs::write(path, report.to_text()).map_err(|source| hho_mlp::Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    if let Some(path) = &args.csv {
        let mut content = if path.exists() {
            std::fs::read_to_string(path).map_err(|source| hho_mlp::Error::Io {
                path: path.clone(),
                source,
            })?
        } else {
            format!("{}\n", MetricsReport::csv_header())
        };
        content.push_str(&report.to_csv_row());
        content.push('\n');
        std::fs::write(path, content).map_err(|source| hho_mlp::Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

pub fn bench_swarm(args: BenchSwarmArgs) -> Result<(), CliError> {
    let file = ConfigFile::load(args.config.as_deref())?;
    let sizes_raw = file.resolve(args.sizes, "sizes", "5,10,15,20,30".to_string())?;
    let sizes: Vec<usize> = parse_list(&sizes_raw, "swarm size")?;
    let seeds_raw = file.resolve(args.seeds, "seeds", "0,1,2,3,4,5,6,7,8,9".to_string())?;
    let seeds: Vec<u64> = parse_list(&seeds_raw, "seed")?;
    let iterations = file.resolve(args.iterations, "iterations", 30)?;
    let hidden_raw = file.resolve(args.hidden, "hidden", "5,5".to_string())?;
    let hidden: Vec<usize> = parse_list(&hidden_raw, "hidden layer")?;
    let weight_min = file.resolve(args.weight_min, "weight_min", -6.0)?;
    let weight_max = file.resolve(args.weight_max, "weight_max", 6.0)?;

    if sizes.is_empty() || seeds.is_empty() {
        return Err(CliError::Usage(
            "bench-swarm needs at least one size and one seed".to_string(),
        ));
    }
    if sizes.iter().any(|&s| s < 2) {
        return Err(CliError::Usage("swarm sizes must be at least 2".to_string()));
    }

    let started = Instant::now();
    let dataset = Dataset::load_cache(&args.cache)?;
    let topology = MlpTopology::new(dataset.width(), hidden, 1)?;

    let mut table = String::from("size,seed,final_mse\n");
    let mut medians = Vec::new();
    println!("size  seed  final_mse");
    for &size in &sizes {
        let mut finals = Vec::with_capacity(seeds.len());
        for &seed in &seeds {
            let mut config =
                TrainConfig::new(topology.clone(), SwarmConfig::new(size, iterations, seed));
            config.weight_bounds = (weight_min, weight_max);
            let model = train::train(&dataset, &config)?;
            let final_mse = *model.fitness_history.last().unwrap();
            println!("{size:<5} {seed:<5} {final_mse}");
            table.push_str(&format!("{size},{seed},{final_mse}\n"));
            finals.push(final_mse);
        }
        finals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if finals.len() % 2 == 1 {
            finals[finals.len() / 2]
        } else {
            (finals[finals.len() / 2 - 1] + finals[finals.len() / 2]) / 2.0
        };
        medians.push((size, median));
    }

    std::fs::write(&args.out, &table).map_err(|source| hho_mlp::Error::Io {
        path: args.out.clone(),
        source,
    })?;
    let plot: String = medians
        .iter()
        .map(|(size, median)| format!("{size},{median}\n"))
        .collect();
    std::fs::write(&args.plot, &plot).map_err(|source| hho_mlp::Error::Io {
        path: args.plot.clone(),
        source,
    })?;

    let manifest_path = manifest_sibling(&args.out);
    let mut manifest = RunManifest::new("bench-swarm");
    manifest
        .push("cache", args.cache.display())
        .push("cache_digest", format_u64_digest(dataset.digest()?))
        .push("sizes", &sizes_raw)
        .push("seeds", &seeds_raw)
        .push("iterations", iterations)
        .push("hidden", &hidden_raw)
        .push("weight_bounds", format!("{weight_min} {weight_max}"))
        .push("table_digest", format_u64_digest(digest::fnv1a64(table.as_bytes())))
        .push("plot_digest", format_u64_digest(digest::fnv1a64(plot.as_bytes())));
    manifest.wall_clock_ms = Some(started.elapsed().as_millis());
    manifest.save(&manifest_path)?;

    println!("size  median_mse");
    for (size, median) in &medians {
        println!("{size:<5} {median}");
    }
    println!("sweep table {}", args.out.display());
    println!("plot data   {}", args.plot.display());
    Ok(())
}
