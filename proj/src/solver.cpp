#include "pslset/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pslset/correlation.hpp"
#include "pslset/errors.hpp"
#include "rng.hpp"

namespace pslset {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iters: return "max_iters";
    case Termination::stalled: return "stalled";
  }
  return "unknown";
}

SequenceSet init_random(std::size_t num_sequences, std::size_t length, std::uint64_t seed) {
  if (num_sequences < 1 || length < 2)
    throw std::invalid_argument("init_random: need L >= 1 and M >= 2");
  std::mt19937_64 gen(seed);
  std::vector<double> phases(num_sequences * length);
  for (double& p : phases) p = 2.0 * std::numbers::pi * detail::uniform01(gen);
  return SequenceSet(num_sequences, length, std::move(phases));
}

double stopping_eps(double psl_t, double psl_prev) {
  if (!(psl_prev > 0.0)) throw std::invalid_argument("stopping_eps: previous PSL must be positive");
  return std::abs(psl_t - psl_prev) / psl_prev;
}

namespace {

struct Evaluated {
  SequenceSet set;
  CorrelationTable table;
  double psl;
  double isl;
};

Evaluated evaluate(SequenceSet set, const LagConstraintSet& constraints) {
  CorrelationTable table = correlate_all_fft(set);
  const double peak = psl(table, constraints).value;
  const double integrated = isl(table, constraints);
  if (!std::isfinite(peak) || !std::isfinite(integrated))
    throw NumericError("design: non-finite PSL");
  return {std::move(set), std::move(table), peak, integrated};
}

}  // namespace

SolverTrace design(const SolverConfig& cfg, const SequenceSet& initial,
                   const InnerTraceSink& inner_sink) {
  if (initial.num_sequences() != cfg.num_sequences || initial.length() != cfg.length)
    throw std::invalid_argument("design: initial set does not match (L, M)");
  if (cfg.max_outer_iters < 1) throw std::invalid_argument("design: max_outer_iters must be >= 1");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("design: eps must be positive");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  const LagConstraintSet constraints = LagConstraintSet::all(cfg.num_sequences, cfg.length);
  const SurrogateOptions surrogate_opts{cfg.eigen_mode, 1.0};

  Evaluated current = evaluate(initial, constraints);
  SolverTrace trace{{}, initial, Termination::max_iters};
  trace.records.push_back({0, current.psl, current.isl, 0, elapsed()});

  for (int t = 1; t <= cfg.max_outer_iters; ++t) {
    const SurrogateSystem sys = build_surrogate(current.set, constraints, current.table, surrogate_opts);

    MdaConfig mda_cfg = cfg.mda;
    MdaResult inner = mda_solve(sys, mda_cfg);
    int inner_used = inner.iterations;
    if (inner_sink) inner_sink({t, &inner.g_trace});
    Evaluated candidate = evaluate(SequenceSet::from_real_stack(cfg.num_sequences, cfg.length, inner.x),
                                   constraints);

    if (candidate.psl > current.psl + 1e-9) {
      mda_cfg.max_inner_iters *= 2;
      inner = mda_solve(sys, mda_cfg);
      inner_used += inner.iterations;
      if (inner_sink) inner_sink({t, &inner.g_trace});
      candidate = evaluate(SequenceSet::from_real_stack(cfg.num_sequences, cfg.length, inner.x),
                           constraints);
      if (candidate.psl > current.psl + 1e-9) {
        trace.status = Termination::stalled;
        break;
      }
    }

    const double eps = stopping_eps(candidate.psl, current.psl);
    current = std::move(candidate);
    trace.records.push_back({t, current.psl, current.isl, inner_used, elapsed()});
    if (eps < cfg.eps) {
      trace.status = Termination::converged;
      break;
    }
  }

  trace.final_set = current.set;
  return trace;
}

}  // namespace pslset
