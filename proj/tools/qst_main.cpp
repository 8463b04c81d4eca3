// Command-line front end: seeded experiment drivers that emit the data
// tables as CSV/JSON, plus one-shot calculators for the closed-form theory.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qst/heterodyne.hpp"
#include "qst/hermitian.hpp"
#include "qst/io.hpp"
#include "qst/isotropic.hpp"
#include "qst/null_theory.hpp"
#include "qst/projection.hpp"
#include "qst/semicircle.hpp"
#include "qst/states.hpp"

namespace fs = std::filesystem;
using qst::Json;

namespace {

fs::path resolve_outdir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("QST_OUTPUT_DIR")) return env;
  return ".";
}

Json load_config(const std::string& path) {
  try {
    return Json::parse(qst::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
}

std::uint64_t require_seed(const Json& config, std::optional<std::uint64_t> flag_seed) {
  if (flag_seed) return *flag_seed;
  if (config.contains("seed")) return config.at("seed").get<std::uint64_t>();
  throw std::runtime_error("no seed: pass --seed or set \"seed\" in the config");
}

qst::ProjectionMode parse_projection(const std::string& name) {
  if (name == "cone") return qst::ProjectionMode::kCone;
  if (name == "state-set") return qst::ProjectionMode::kStateSet;
  throw std::runtime_error("unknown projection mode '" + name + "'");
}

qst::SpectrumRule parse_spectrum(const std::string& name) {
  if (name == "equal-weights") return qst::SpectrumRule::kEqualWeights;
  if (name == "uniform-simplex") return qst::SpectrumRule::kUniformSimplex;
  throw std::runtime_error("unknown spectrum rule '" + name + "'");
}

std::string fmt(double v) { return qst::format_number(v); }

// Lossless float rendering for data-of-record files.
std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json theory_json(const qst::NullTheoryPrediction& p) {
  Json j;
  j["r"] = p.r;
  j["d"] = p.d;
  j["n"] = p.n;
  j["x"] = p.x;
  j["z"] = p.z;
  j["lambda_L"] = p.lambda_L;
  j["lambda_kite"] = p.lambda_kite;
  j["lambda_total"] = p.lambda_total;
  j["wilks"] = p.wilks;
  return j;
}

int cmd_theory(int r, int d, bool asymptotic) {
  const qst::NullTheoryPrediction p = qst::lambda_expected(r, d);
  if (p.accuracy_warning) {
    std::cerr << "warning: r > d/2; the prediction degrades in this regime\n";
  }
  Json j = theory_json(p);
  if (asymptotic) j["lambda_asymptotic"] = qst::lambda_asymptotic(r, d);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_isotropic_sweep(const std::string& config_path,
                        std::optional<std::uint64_t> seed_flag, int workers,
                        const std::string& out_flag) {
  const Json config = load_config(config_path);
  const std::uint64_t seed = require_seed(config, seed_flag);
  const fs::path outdir = resolve_outdir(out_flag);

  qst::IsotropicConfig base;
  base.trials = config.value("trials", 500);
  base.eps = config.value("eps", 1e-4);
  base.projection = parse_projection(config.value("projection", std::string("cone")));
  base.spectrum = parse_spectrum(config.value("spectrum", std::string("equal-weights")));
  base.traceless = config.value("traceless", true);
  base.seed = seed;
  base.workers = workers;

  std::vector<int> d_values, r_values;
  if (config.contains("d_values")) {
    d_values = config.at("d_values").get<std::vector<int>>();
  } else {
    for (int d = config.value("d_min", 2); d <= config.value("d_max", 16); ++d)
      d_values.push_back(d);
  }
  if (config.contains("r_values")) {
    r_values = config.at("r_values").get<std::vector<int>>();
  } else {
    for (int r = config.value("r_min", 1); r <= config.value("r_max", 4); ++r)
      r_values.push_back(r);
  }

  qst::RunManifest manifest;
  manifest.command = "isotropic-sweep";
  manifest.config = config;
  manifest.config["seed"] = seed;
  manifest.master_seed = seed;
  manifest.code_version = qst::code_version();
  manifest.started_at = qst::current_timestamp();

  const std::vector<qst::SweepRow> rows = qst::sweep(d_values, r_values, base);

  qst::CsvWriter csv("isotropic-sweep",
                     {"d", "r", "trials", "eps", "mean_lambda", "stderr",
                      "theory_lambda", "wilks"});
  for (const auto& row : rows) {
    csv.add_row({std::to_string(row.d), std::to_string(row.r),
                 std::to_string(row.trials), fmt(row.eps), fmt(row.mean_lambda),
                 fmt(row.stderr_lambda), fmt(row.theory_lambda), fmt(row.wilks)});
  }
  const fs::path csv_path = outdir / "isotropic_sweep.csv";
  qst::write_file_atomic(csv_path, csv.str());

  manifest.finished_at = qst::current_timestamp();
  manifest.outputs = {csv_path.string()};
  qst::write_manifest(outdir / "isotropic_sweep_manifest.json", manifest);
  return 0;
}

int cmd_lambda_jk(int d, int r, const std::string& spectrum, int trials, double eps,
                  const std::string& projection, std::uint64_t seed, int workers,
                  const std::string& out_flag) {
  const fs::path outdir = resolve_outdir(out_flag);
  qst::IsotropicConfig config;
  config.d = d;
  config.r = r;
  config.eps = eps;
  config.trials = trials;
  config.projection = parse_projection(projection);
  config.spectrum = parse_spectrum(spectrum);
  config.seed = seed;
  config.workers = workers;

  qst::RunManifest manifest;
  manifest.command = "lambda-jk";
  manifest.config = {{"d", d},         {"r", r},       {"spectrum", spectrum},
                     {"trials", trials}, {"eps", eps}, {"projection", projection},
                     {"seed", seed}};
  manifest.master_seed = seed;
  manifest.code_version = qst::code_version();
  manifest.started_at = qst::current_timestamp();

  const qst::IsotropicSummary s = qst::run_experiment(config);

  Json j;
  j["d"] = d;
  j["r"] = r;
  j["trials"] = s.trials;
  j["eps"] = eps;
  j["projection"] = projection;
  j["spectrum"] = spectrum;
  j["seed"] = seed;
  j["mean_lambda"] = s.mean_lambda;
  j["stderr_lambda"] = s.stderr_lambda;
  j["mean_lambda_jk"] = qst::matrix_to_json(s.mean_lambda_jk);
  j["stderr_lambda_jk"] = qst::matrix_to_json(s.stderr_lambda_jk);
  j["l_mask"] = qst::int_matrix_to_json(s.l_mask);
  const fs::path json_path = outdir / "lambda_jk.json";
  qst::write_file_atomic(json_path, j.dump(2) + "\n");

  manifest.finished_at = qst::current_timestamp();
  manifest.outputs = {json_path.string()};
  qst::write_manifest(outdir / "lambda_jk_manifest.json", manifest);
  return 0;
}

int cmd_wigner_check(const std::vector<int>& n_values, int draws, double eps,
                     std::uint64_t seed, const std::string& out_flag) {
  const fs::path outdir = resolve_outdir(out_flag);
  qst::RunManifest manifest;
  manifest.command = "wigner-check";
  manifest.config = {{"n_values", n_values}, {"draws", draws}, {"eps", eps}, {"seed", seed}};
  manifest.master_seed = seed;
  manifest.code_version = qst::code_version();
  manifest.started_at = qst::current_timestamp();

  qst::CsvWriter csv("wigner-check",
                     {"n", "j", "kappa_theory", "kappa_empirical", "abs_dev", "radius"});
  const qst::RngStream master(seed);
  for (size_t ni = 0; ni < n_values.size(); ++ni) {
    const int n = n_values[ni];
    const std::vector<double> theory = qst::order_statistics(n, eps);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < draws; ++t) {
      qst::RngStream rng = master.split_path({ni, static_cast<std::uint64_t>(t)});
      const qst::HermitianMatrix g = qst::sample_gue(n, eps, rng);
      mean += qst::eigh(g).values;
    }
    mean /= static_cast<double>(draws);
    const double radius = 2.0 * eps * std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
      csv.add_row({std::to_string(n), std::to_string(j + 1), fmt(theory[j]),
                   fmt(mean(j)), fmt(std::abs(theory[j] - mean(j))), fmt(radius)});
    }
  }
  const fs::path csv_path = outdir / "wigner_check.csv";
  qst::write_file_atomic(csv_path, csv.str());

  manifest.finished_at = qst::current_timestamp();
  manifest.outputs = {csv_path.string()};
  qst::write_manifest(outdir / "wigner_check_manifest.json", manifest);
  return 0;
}

int cmd_projection_check(const std::vector<int>& dims, int count, std::uint64_t seed,
                         const std::string& out_flag) {
  const fs::path outdir = resolve_outdir(out_flag);
  qst::RunManifest manifest;
  manifest.command = "projection-check";
  manifest.config = {{"dims", dims}, {"count", count}, {"seed", seed}};
  manifest.master_seed = seed;
  manifest.code_version = qst::code_version();
  manifest.started_at = qst::current_timestamp();

  qst::CsvWriter csv("projection-check",
                     {"dim", "index", "frobenius_dist_to_oracle", "q", "clipped_count"});
  double worst = 0.0;
  const qst::RngStream master(seed);
  for (size_t di = 0; di < dims.size(); ++di) {
    const int d = dims[di];
    for (int i = 0; i < count; ++i) {
      qst::RngStream rng = master.split_path({di, static_cast<std::uint64_t>(i)});
      const qst::Matrix g = qst::sample_gue(d, 0.5, rng).mat();
      const double tr = g.trace().real();
      const qst::HermitianMatrix h(
          g + (1.0 - tr) / d * qst::Matrix::Identity(d, d));
      const qst::ProjectionResult fast = qst::project_to_states(h);
      const qst::DensityMatrix oracle = qst::oracle_project(h);
      const double dist = (fast.projected.mat() - oracle.mat()).norm();
      worst = std::max(worst, dist);
      csv.add_row({std::to_string(d), std::to_string(i), fmt(dist), fmt(fast.q),
                   std::to_string(fast.clipped_count)});
    }
  }
  const fs::path csv_path = outdir / "projection_check.csv";
  qst::write_file_atomic(csv_path, csv.str());

  manifest.finished_at = qst::current_timestamp();
  manifest.outputs = {csv_path.string()};
  qst::write_manifest(outdir / "projection_check_manifest.json", manifest);

  Json summary;
  summary["max_frobenius_dist"] = worst;
  summary["count"] = count * static_cast<int>(dims.size());
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// heterodyne driver

struct HeterodyneCell {
  std::string state;
  int n_samples = 0;
  int dataset_id = 0;

  std::string key() const {
    return state + "|" + std::to_string(n_samples) + "|" + std::to_string(dataset_id);
  }
};

std::string cell_stem(const HeterodyneCell& c) {
  return c.state + "_n" + std::to_string(c.n_samples) + "_i" + std::to_string(c.dataset_id);
}

qst::HeterodyneDataset load_dataset(const fs::path& csv_path, const fs::path& sidecar_path) {
  const Json side = Json::parse(qst::read_file(sidecar_path));
  qst::HeterodyneDataset data;
  data.rho0_label = side.at("rho0_label").get<std::string>();
  data.seed = side.at("seed").get<std::uint64_t>();
  data.n_samples = side.at("n_samples").get<int>();
  std::istringstream in(qst::read_file(csv_path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("re_alpha", 0) == 0) continue;
    const size_t comma = line.find(',');
    data.samples.emplace_back(std::strtod(line.substr(0, comma).c_str(), nullptr),
                              std::strtod(line.substr(comma + 1).c_str(), nullptr));
  }
  if (static_cast<int>(data.samples.size()) != data.n_samples) {
    throw std::runtime_error("dataset " + csv_path.string() + " is truncated");
  }
  return data;
}

int cmd_heterodyne(const std::string& config_path, std::optional<std::uint64_t> seed_flag,
                   const std::string& out_flag) {
  const Json config = load_config(config_path);
  const std::uint64_t seed = require_seed(config, seed_flag);
  const fs::path outdir = resolve_outdir(out_flag) / "heterodyne";
  fs::create_directories(outdir / "datasets");
  fs::create_directories(outdir / "fits");

  const auto states = config.value("states", std::vector<std::string>{"fock0", "plus01"});
  const auto n_samples_list = config.value("n_samples", std::vector<int>{1000, 10000});
  const int n_datasets = config.value("n_datasets", 20);
  const auto models = config.value("models", std::vector<int>{2, 3, 4, 5, 6});
  qst::MleOptions mle;
  if (config.contains("mle")) {
    mle.tol = config.at("mle").value("tol", mle.tol);
    mle.max_iters = config.at("mle").value("max_iters", mle.max_iters);
  }
  const double fisher_reg = config.value("fisher_regularizer", 1e-6);

  // Resume bookkeeping: cells recorded complete in the manifest are skipped.
  const fs::path manifest_path = outdir / "heterodyne_manifest.json";
  std::set<std::string> done;
  if (fs::exists(manifest_path)) {
    const Json old = Json::parse(qst::read_file(manifest_path));
    if (old.contains("completed_cells")) {
      for (const auto& k : old.at("completed_cells")) done.insert(k.get<std::string>());
    }
  }

  qst::RunManifest manifest;
  manifest.command = "heterodyne";
  manifest.config = config;
  manifest.config["seed"] = seed;
  manifest.master_seed = seed;
  manifest.code_version = qst::code_version();
  manifest.started_at = qst::current_timestamp();

  const auto write_progress = [&](const std::set<std::string>& cells, bool complete) {
    Json j = manifest.to_json();
    j["status"] = complete ? "complete" : "running";
    j["completed_cells"] = cells;
    qst::write_file_atomic(manifest_path, j.dump(2) + "\n");
  };

  std::vector<HeterodyneCell> cells;
  for (size_t si = 0; si < states.size(); ++si) {
    for (size_t ni = 0; ni < n_samples_list.size(); ++ni) {
      for (int k = 0; k < n_datasets; ++k) {
        cells.push_back({states[si], n_samples_list[ni], k});
      }
    }
  }

  const qst::RngStream master(seed);
  std::vector<std::string> outputs;
  for (const HeterodyneCell& cell : cells) {
    const fs::path data_csv = outdir / "datasets" / (cell_stem(cell) + ".csv");
    const fs::path data_side = outdir / "datasets" / (cell_stem(cell) + ".json");
    const fs::path fit_json = outdir / "fits" / (cell_stem(cell) + ".json");
    outputs.push_back(data_csv.string());
    outputs.push_back(data_side.string());
    outputs.push_back(fit_json.string());
    if (done.count(cell.key()) && fs::exists(data_csv) && fs::exists(fit_json)) continue;

    const size_t si = std::find(states.begin(), states.end(), cell.state) - states.begin();
    const size_t ni = std::find(n_samples_list.begin(), n_samples_list.end(),
                                cell.n_samples) -
                      n_samples_list.begin();
    qst::RngStream rng =
        master.split_path({si, ni, static_cast<std::uint64_t>(cell.dataset_id)});
    const qst::DensityMatrix rho0 = qst::make_state(cell.state);
    const qst::HeterodyneDataset data =
        qst::sample_husimi(rho0, cell.n_samples, rng, cell.state);

    qst::CsvWriter csv("heterodyne-dataset", {"re_alpha", "im_alpha"});
    for (const auto& a : data.samples) {
      csv.add_row({fmt_exact(a.real()), fmt_exact(a.imag())});
    }
    qst::write_file_atomic(data_csv, csv.str());
    Json side = {{"rho0_label", data.rho0_label},
                 {"seed", data.seed},
                 {"n_samples", data.n_samples}};
    qst::write_file_atomic(data_side, side.dump(2) + "\n");

    Json fits;
    fits["rho0_label"] = cell.state;
    fits["n_samples"] = cell.n_samples;
    fits["dataset_id"] = cell.dataset_id;
    Json per_model;
    for (int d_model : models) {
      if (d_model < rho0.dim()) continue;  // rho0 must embed into the model
      const qst::MleResult fit = qst::mle_fit(data, d_model, mle);
      const double ref = qst::loglikelihood(qst::embed(rho0, d_model), data, d_model);
      Json f;
      f["loglik"] = fit.loglik;
      f["loglik_rho0"] = ref;
      f["lambda"] = 2.0 * (fit.loglik - ref);
      f["iterations"] = fit.iterations;
      f["converged"] = fit.converged;
      f["rho"] = qst::hermitian_to_json(fit.rho.mat());
      per_model[std::to_string(d_model)] = std::move(f);
    }
    fits["models"] = std::move(per_model);
    qst::write_file_atomic(fit_json, fits.dump(2) + "\n");

    done.insert(cell.key());
    write_progress(done, false);
  }

  // Tables assembled from the stored fit results, in configuration order.
  qst::CsvWriter lambda_table("heterodyne-lambda",
                              {"rho0_label", "d_model", "n_samples", "dataset_id",
                               "lambda", "converged"});
  qst::CsvWriter lambda_summary("heterodyne-lambda-summary",
                                {"rho0_label", "d_model", "n_samples", "n_datasets",
                                 "mean_lambda", "stderr_lambda", "wilks"});
  for (const std::string& state : states) {
    for (int d_model : models) {
      for (int n : n_samples_list) {
        std::vector<double> lambdas;
        for (int k = 0; k < n_datasets; ++k) {
          const HeterodyneCell cell{state, n, k};
          const Json fits =
              Json::parse(qst::read_file(outdir / "fits" / (cell_stem(cell) + ".json")));
          const Json& per_model = fits.at("models");
          const std::string key = std::to_string(d_model);
          if (!per_model.contains(key)) continue;
          const double lambda = per_model.at(key).at("lambda").get<double>();
          lambdas.push_back(lambda);
          lambda_table.add_row({state, key, std::to_string(n), std::to_string(k),
                                fmt(lambda),
                                per_model.at(key).at("converged").get<bool>() ? "1" : "0"});
        }
        if (lambdas.empty()) continue;
        double mean = 0.0;
        for (double v : lambdas) mean += v;
        mean /= static_cast<double>(lambdas.size());
        double var = 0.0;
        for (double v : lambdas) var += (v - mean) * (v - mean);
        const double se = lambdas.size() > 1
                              ? std::sqrt(var / (lambdas.size() - 1.0) /
                                          static_cast<double>(lambdas.size()))
                              : 0.0;
        lambda_summary.add_row({state, std::to_string(d_model), std::to_string(n),
                                std::to_string(static_cast<int>(lambdas.size())),
                                fmt(mean), fmt(se),
                                fmt(qst::wilks_expected(d_model * d_model - 1))});
      }
    }
  }
  const fs::path lambda_path = outdir / "lambda_table.csv";
  const fs::path summary_path = outdir / "lambda_summary.csv";
  qst::write_file_atomic(lambda_path, lambda_table.str());
  qst::write_file_atomic(summary_path, lambda_summary.str());

  // Fisher condition table at the largest sample size, datasets reread from
  // disk so resumed and fresh runs follow the same path.
  const int n_fisher = *std::max_element(n_samples_list.begin(), n_samples_list.end());
  qst::CsvWriter fisher_table("heterodyne-fisher",
                              {"rho0_label", "d_model", "n_samples", "n_datasets",
                               "condition_number", "capped"});
  for (const std::string& state : states) {
    std::vector<qst::HeterodyneDataset> datasets;
    for (int k = 0; k < n_datasets; ++k) {
      const HeterodyneCell cell{state, n_fisher, k};
      datasets.push_back(load_dataset(outdir / "datasets" / (cell_stem(cell) + ".csv"),
                                      outdir / "datasets" / (cell_stem(cell) + ".json")));
    }
    const qst::DensityMatrix rho0 = qst::make_state(state);
    for (int d_model : models) {
      if (d_model < rho0.dim()) continue;
      const qst::FisherEstimate fisher = qst::average_fisher(
          qst::embed(rho0, d_model), datasets, d_model, fisher_reg);
      fisher_table.add_row({state, std::to_string(d_model), std::to_string(n_fisher),
                            std::to_string(fisher.n_datasets_averaged),
                            fmt(fisher.condition_number), fisher.capped ? "1" : "0"});
    }
  }
  const fs::path fisher_path = outdir / "fisher_table.csv";
  qst::write_file_atomic(fisher_path, fisher_table.str());

  manifest.finished_at = qst::current_timestamp();
  manifest.outputs = outputs;
  manifest.outputs.push_back(lambda_path.string());
  manifest.outputs.push_back(summary_path.string());
  manifest.outputs.push_back(fisher_path.string());
  {
    Json j = manifest.to_json();
    j["status"] = "complete";
    j["completed_cells"] = done;
    qst::write_file_atomic(manifest_path, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained-ML loglikelihood-ratio toolkit"};
  app.require_subcommand(1);

  // theory
  int r = 1, d = 2;
  bool asymptotic = false;
  CLI::App* theory = app.add_subcommand("theory", "Closed-form expected loglikelihood ratio");
  theory->add_option("--r", r, "Rank of the true state")->required();
  theory->add_option("--d", d, "Model dimension")->required();
  theory->add_flag("--asymptotic", asymptotic, "Include the d->infinity form");

  // common option storage
  std::string config_path, out_flag;
  std::optional<std::uint64_t> seed_flag;
  int workers = 0;
  const auto add_common = [&](CLI::App* cmd, bool need_config) {
    if (need_config) {
      cmd->add_option("--config", config_path, "JSON config file")->required();
    }
    cmd->add_option("--seed", seed_flag, "Master seed (overrides config)");
    cmd->add_option("--workers", workers, "Worker threads (0 = auto)");
    cmd->add_option("--out", out_flag, "Output directory (default $QST_OUTPUT_DIR or .)");
  };

  CLI::App* iso = app.add_subcommand("isotropic-sweep",
                                     "Monte Carlo sweep over (d, r) at the isotropic limit");
  add_common(iso, true);

  // lambda-jk
  int jk_d = 8, jk_r = 2, jk_trials = 500;
  double jk_eps = 1e-4;
  std::string jk_spectrum = "equal-weights", jk_projection = "cone";
  std::uint64_t jk_seed = 0;
  bool jk_seed_set = false;
  CLI::App* jk = app.add_subcommand("lambda-jk", "Per-element mean lambda_jk map");
  jk->add_option("--d", jk_d, "Dimension")->required();
  jk->add_option("--r", jk_r, "Rank")->required();
  jk->add_option("--spectrum", jk_spectrum, "equal-weights | uniform-simplex");
  jk->add_option("--trials", jk_trials, "Monte Carlo trials");
  jk->add_option("--eps", jk_eps, "Perturbation scale");
  jk->add_option("--projection", jk_projection, "cone | state-set");
  jk->add_option("--seed", jk_seed, "Master seed")->required()->each([&](const std::string&) {
    jk_seed_set = true;
  });
  jk->add_option("--workers", workers, "Worker threads (0 = auto)");
  jk->add_option("--out", out_flag, "Output directory");

  CLI::App* het = app.add_subcommand("heterodyne",
                                     "Heterodyne dataset generation, ML fits, lambda and "
                                     "Fisher tables");
  add_common(het, true);

  // wigner-check
  std::vector<int> wc_n{10, 100};
  int wc_draws = 1000;
  double wc_eps = 1.0;
  std::uint64_t wc_seed = 0;
  CLI::App* wc = app.add_subcommand("wigner-check",
                                    "Order-statistics ansatz vs mean sorted GUE spectra");
  wc->add_option("--n", wc_n, "Matrix sizes");
  wc->add_option("--draws", wc_draws, "Draws per size");
  wc->add_option("--eps", wc_eps, "GUE scale");
  wc->add_option("--seed", wc_seed, "Master seed")->required();
  wc->add_option("--out", out_flag, "Output directory");

  // projection-check
  std::vector<int> pc_dims{3, 4};
  int pc_count = 100;
  std::uint64_t pc_seed = 0;
  CLI::App* pc = app.add_subcommand("projection-check",
                                    "Truncation projection vs alternating-projection oracle");
  pc->add_option("--dims", pc_dims, "Matrix dimensions (each <= 6)");
  pc->add_option("--count", pc_count, "Inputs per dimension");
  pc->add_option("--seed", pc_seed, "Master seed")->required();
  pc->add_option("--out", out_flag, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (theory->parsed()) return cmd_theory(r, d, asymptotic);
    if (iso->parsed()) return cmd_isotropic_sweep(config_path, seed_flag, workers, out_flag);
    if (jk->parsed()) {
      return cmd_lambda_jk(jk_d, jk_r, jk_spectrum, jk_trials, jk_eps, jk_projection,
                           jk_seed, workers, out_flag);
    }
    if (het->parsed()) return cmd_heterodyne(config_path, seed_flag, out_flag);
    if (wc->parsed()) return cmd_wigner_check(wc_n, wc_draws, wc_eps, wc_seed, out_flag);
    if (pc->parsed()) return cmd_projection_check(pc_dims, pc_count, pc_seed, out_flag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
