#include "pslset/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pslset/correlation.hpp"
#include "pslset/errors.hpp"
#include "pslset/io.hpp"
#include "pslset/radar.hpp"
#include "pslset/solver.hpp"

namespace fs = std::filesystem;

namespace pslset::cli {
namespace {

/// Thrown for flag combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
  const char* env = std::getenv(output_dir_env);
  return env && *env ? env : ".";
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

struct DesignOptions {
  std::size_t L = 0;
  std::size_t M = 0;
  int iters = 500;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  std::string init_file;
  double gamma0 = 1.0;
  int inner_iters = 200;
  std::string eigen_mode = "spectral";
  std::string out_dir;
  int sweep = 1;
  int jobs = 1;
  bool verbose = false;
};

struct CorrelateOptions {
  std::string in;
  std::string out_dir;
};

struct RadarOptions {
  std::string in;
  std::string scene;
  bool random_scene = false;
  std::size_t Q = 20;
  std::size_t P = 21;
  double density = 0.1;
  std::uint64_t seed = 0;
  std::string estimator = "both";
  double snr_db = 30.0;
  int num_tx = 4;
  int num_rx = 4;
  std::string out_dir;
};

struct JobOutput {
  int code = exit_ok;
  std::string out;
  std::string err;
};

JobOutput design_one(const DesignOptions& opt, const SequenceSet* initial, std::uint64_t seed,
                     const fs::path& dir) {
  JobOutput job;
  std::ostringstream out;

  SolverConfig cfg;
  cfg.num_sequences = opt.L;
  cfg.length = opt.M;
  cfg.max_outer_iters = opt.iters;
  cfg.eps = opt.eps;
  cfg.seed = seed;
  cfg.init = initial ? InitKind::from_file : InitKind::random_phase;
  cfg.mda.gamma0 = opt.gamma0;
  cfg.mda.max_inner_iters = opt.inner_iters;
  cfg.eigen_mode = opt.eigen_mode == "power" ? EigenMode::power_iteration_D : EigenMode::spectral_bound_D;

  const SequenceSet start = initial ? *initial : init_random(opt.L, opt.M, seed);
  fs::create_directories(dir);

  std::ofstream inner_csv;
  InnerTraceSink sink;
  if (opt.verbose) {
    inner_csv = open_out(dir / "inner_trace.csv");
    inner_csv << "outer_iter,inner_iter,g_value\n";
    sink = [&inner_csv](const InnerTrace& t) {
      for (std::size_t n = 0; n < t.g_values->size(); ++n)
        inner_csv << t.outer_iter << ',' << n << ',' << io::fmt_double((*t.g_values)[n]) << '\n';
    };
  }

  const SolverTrace trace = design(cfg, start, sink);
  const TraceRecord& last = trace.records.back();

  io::write_sequence_file(dir / "sequence.json", trace.final_set);
  {
    auto os = open_out(dir / "trace.csv");
    io::write_trace_csv(os, trace);
  }
  {
    auto os = open_out(dir / "correlation.csv");
    io::write_correlation_csv(os, correlate_all_fft(trace.final_set));
  }
  {
    nlohmann::json summary = {{"L", opt.L},
                              {"M", opt.M},
                              {"seed", seed},
                              {"status", to_string(trace.status)},
                              {"iterations", last.iter},
                              {"initial_psl", trace.records.front().psl},
                              {"psl", last.psl},
                              {"isl", last.isl},
                              {"seconds", last.seconds}};
    auto os = open_out(dir / "summary.json");
    os << summary.dump(2) << '\n';
  }

  out << "seed=" << seed << " status=" << to_string(trace.status) << " iterations=" << last.iter
      << " psl=" << io::fmt_double(last.psl) << " isl=" << io::fmt_double(last.isl)
      << " out=" << dir.string() << '\n';
  job.out = out.str();
  return job;
}

int cmd_design(DesignOptions opt, std::ostream& out, std::ostream& err) {
  std::optional<SequenceSet> initial;
  if (!opt.init_file.empty()) {
    initial = io::read_sequence_file(opt.init_file);
    if ((opt.L && opt.L != initial->num_sequences()) || (opt.M && opt.M != initial->length()))
      throw UsageError("--L/--M disagree with the sequences in --init-file");
    opt.L = initial->num_sequences();
    opt.M = initial->length();
    if (opt.sweep > 1) throw UsageError("--sweep needs random initialization");
  } else if (!opt.L || !opt.M) {
    throw UsageError("--L and --M are required without --init-file");
  }
  if (opt.M < 2) throw UsageError("--M must be at least 2");

  const fs::path root = opt.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(opt.out_dir);
  if (opt.sweep == 1) {
    const JobOutput job = design_one(opt, initial ? &*initial : nullptr, opt.seed, root);
    out << job.out;
    return job.code;
  }

  std::vector<JobOutput> jobs(static_cast<std::size_t>(opt.sweep));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n = next++; n < jobs.size(); n = next++) {
      const std::uint64_t seed = opt.seed + n;
      try {
        jobs[n] = design_one(opt, nullptr, seed, root / ("seed_" + std::to_string(seed)));
      } catch (const NumericError& e) {
        jobs[n] = {exit_failure, {}, "seed " + std::to_string(seed) + ": numeric error: " + e.what() + "\n"};
      } catch (const std::exception& e) {
        jobs[n] = {exit_failure, {}, "seed " + std::to_string(seed) + ": " + e.what() + "\n"};
      }
    }
  };
  const int workers = std::min(opt.jobs, opt.sweep);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int code = exit_ok;
  for (const auto& job : jobs) {
    out << job.out;
    err << job.err;
    code = std::max(code, job.code);
  }
  return code;
}

int cmd_correlate(const CorrelateOptions& opt, std::ostream& out) {
  const SequenceSet set = io::read_sequence_file(opt.in);
  const CorrelationTable table = correlate_all_fft(set);
  const fs::path dir = opt.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(opt.out_dir);
  fs::create_directories(dir);
  {
    auto os = open_out(dir / "correlation.csv");
    io::write_correlation_csv(os, table);
  }

  const auto K = LagConstraintSet::all(set.num_sequences(), set.length());
  const PeakSidelobe peak = psl(table, K);
  const double total = isl(table, K);
  {
    nlohmann::json metrics = {{"psl", peak.value},
                              {"isl", total},
                              {"argmax",
                               {{"i", peak.constraint.i + 1},
                                {"j", peak.constraint.j + 1},
                                {"k", peak.constraint.k}}}};
    auto os = open_out(dir / "metrics.json");
    os << metrics.dump(2) << '\n';
  }
  out << "psl=" << io::fmt_double(peak.value) << " isl=" << io::fmt_double(total)
      << " argmax=(" << peak.constraint.i + 1 << ',' << peak.constraint.j + 1 << ','
      << peak.constraint.k << ")\n";
  return exit_ok;
}

int cmd_radar(const RadarOptions& opt, bool snr_given, std::ostream& out) {
  const SequenceSet set = io::read_sequence_file(opt.in);
  radar::ArrayGeometry geom;
  geom.num_tx = opt.num_tx;
  geom.num_rx = opt.num_rx;
  if (set.num_sequences() != static_cast<std::size_t>(geom.num_tx))
    throw std::invalid_argument("the sequence file holds " + std::to_string(set.num_sequences()) +
                                " sequences but the array has " + std::to_string(geom.num_tx) +
                                " transmitters");

  radar::RadarScene scene;
  if (opt.random_scene) {
    scene = radar::random_scene(opt.Q, opt.P, opt.density, opt.seed,
                                radar::noise_variance_from_snr_db(opt.snr_db));
  } else {
    scene = io::read_scene_file(opt.scene, opt.seed);
    if (snr_given) scene.noise_variance = radar::noise_variance_from_snr_db(opt.snr_db);
  }

  const auto estimator = opt.estimator == "ls"      ? radar::Estimator::ls
                         : opt.estimator == "capon" ? radar::Estimator::capon
                                                    : radar::Estimator::both;
  // Noise draws are decorrelated from the scene draws of the same seed.
  const std::uint64_t noise_seed = opt.seed ^ 0x9e3779b97f4a7c15ULL;
  const radar::ExperimentResult result = radar::run_experiment(scene, geom, set, noise_seed, estimator);

  const fs::path dir = opt.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(opt.out_dir);
  fs::create_directories(dir);
  {
    auto os = open_out(dir / "true_abs.csv");
    io::write_abs_image_csv(os, scene.beta);
  }
  auto summary = open_out(dir / "mse.csv");
  summary << "estimator,mse\n";
  auto emit = [&](const char* name, const std::optional<Eigen::MatrixXcd>& image,
                  const std::optional<double>& mse) {
    if (!image) return;
    auto os = open_out(dir / (std::string(name) + "_abs.csv"));
    io::write_abs_image_csv(os, *image);
    summary << name << ',' << io::fmt_double(*mse) << '\n';
    out << "estimator=" << name << " mse=" << io::fmt_double(*mse) << '\n';
  };
  emit("ls", result.ls, result.ls_mse);
  emit("capon", result.capon, result.capon_mse);
  out << "seed=" << opt.seed << " noise_variance=" << io::fmt_double(scene.noise_variance) << '\n';
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unimodular sequence-set design by peak side-lobe minimization"};
  app.require_subcommand(1);

  DesignOptions design_opt;
  auto* design_cmd = app.add_subcommand("design", "Design a sequence set with minimal peak side-lobe level");
  design_cmd->add_option("--L", design_opt.L, "Number of sequences")->check(CLI::PositiveNumber);
  design_cmd->add_option("--M", design_opt.M, "Sequence length")->check(CLI::PositiveNumber);
  design_cmd->add_option("--iters", design_opt.iters, "Maximum outer iterations")->check(CLI::PositiveNumber);
  design_cmd->add_option("--eps", design_opt.eps, "Relative PSL change that stops the run")
      ->check(CLI::PositiveNumber);
  design_cmd->add_option("--seed", design_opt.seed, "Seed for the random initial phases");
  design_cmd->add_option("--init-file", design_opt.init_file, "Start from this sequence file")
      ->check(CLI::ExistingFile);
  design_cmd->add_option("--gamma0", design_opt.gamma0, "Mirror-descent base step")->check(CLI::PositiveNumber);
  design_cmd->add_option("--inner-iters", design_opt.inner_iters, "Mirror-descent iterations per outer step")
      ->check(CLI::PositiveNumber);
  design_cmd->add_option("--eigen-mode", design_opt.eigen_mode, "Curvature bound: spectral or power")
      ->check(CLI::IsMember({"spectral", "power"}));
  design_cmd->add_option("--out", design_opt.out_dir, "Output directory");
  design_cmd->add_option("--sweep", design_opt.sweep, "Run this many consecutive seeds")
      ->check(CLI::PositiveNumber);
  design_cmd->add_option("--jobs", design_opt.jobs, "Parallel workers for --sweep")->check(CLI::PositiveNumber);
  design_cmd->add_flag("-v,--verbose", design_opt.verbose, "Also write the inner g(q) trace");

  CorrelateOptions corr_opt;
  auto* corr_cmd = app.add_subcommand("correlate", "Dump correlations and side-lobe metrics of a sequence file");
  corr_cmd->add_option("--in", corr_opt.in, "Sequence file")->required();
  corr_cmd->add_option("--out", corr_opt.out_dir, "Output directory");

  RadarOptions radar_opt;
  auto* radar_cmd = app.add_subcommand("radar", "Image a scene with a sequence set as MIMO probing waveforms");
  radar_cmd->add_option("--in", radar_opt.in, "Sequence file, one sequence per transmitter")->required();
  auto* scene_flag = radar_cmd->add_option("--scene", radar_opt.scene, "Scene file")->check(CLI::ExistingFile);
  auto* random_flag = radar_cmd->add_flag("--random-scene", radar_opt.random_scene, "Draw a random scene");
  scene_flag->excludes(random_flag);
  radar_cmd->add_option("--Q", radar_opt.Q, "Range bins of the random scene")->check(CLI::PositiveNumber);
  radar_cmd->add_option("--P", radar_opt.P, "Angles of the random scene")->check(CLI::PositiveNumber);
  radar_cmd->add_option("--density", radar_opt.density, "Target density of the random scene")
      ->check(CLI::Range(0.0, 1.0));
  radar_cmd->add_option("--seed", radar_opt.seed, "Seed for scene and noise");
  radar_cmd->add_option("--estimator", radar_opt.estimator, "ls, capon or both")
      ->check(CLI::IsMember({"ls", "capon", "both"}));
  auto* snr_flag = radar_cmd->add_option("--snr-db", radar_opt.snr_db, "Signal-to-noise ratio in dB");
  radar_cmd->add_option("--tx", radar_opt.num_tx, "Transmit elements")->check(CLI::PositiveNumber);
  radar_cmd->add_option("--rx", radar_opt.num_rx, "Receive elements")->check(CLI::PositiveNumber);
  radar_cmd->add_option("--out", radar_opt.out_dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (design_cmd->parsed()) return cmd_design(design_opt, out, err);
    if (corr_cmd->parsed()) return cmd_correlate(corr_opt, out);
    if (!radar_opt.random_scene && radar_opt.scene.empty())
      throw UsageError("radar needs --scene or --random-scene");
    return cmd_radar(radar_opt, snr_flag->count() > 0, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return exit_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace pslset::cli
