#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pslset/mda.hpp"
#include "pslset/sequence_set.hpp"
#include "pslset/surrogate.hpp"

namespace pslset {

enum class InitKind { random_phase, from_file };

struct SolverConfig {
  std::size_t num_sequences = 2;
  std::size_t length = 100;
  int max_outer_iters = 500;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  InitKind init = InitKind::random_phase;
  MdaConfig mda;
  EigenMode eigen_mode = EigenMode::spectral_bound_D;
};

enum class Termination { converged, max_iters, stalled };

std::string to_string(Termination t);

struct TraceRecord {
  int iter = 0;
  double psl = 0.0;
  double isl = 0.0;
  int inner_iters = 0;
  double seconds = 0.0;  ///< wall time since the start of the run
};

/// Record 0 describes the initial set; record t the accepted iterate after t
/// outer steps.
struct SolverTrace {
  std::vector<TraceRecord> records;
  SequenceSet final_set;
  Termination status = Termination::max_iters;
};

/// Per-inner-iteration g(q) values of one outer step, for verbose tracing.
struct InnerTrace {
  int outer_iter = 0;
  const std::vector<double>* g_values = nullptr;
};

using InnerTraceSink = std::function<void(const InnerTrace&)>;

/// Phases 2*pi*theta with theta uniform on [0, 1), reproducible per seed.
SequenceSet init_random(std::size_t num_sequences, std::size_t length, std::uint64_t seed);

/// |psl_t - psl_prev| / psl_prev. Throws std::invalid_argument if psl_prev <= 0.
double stopping_eps(double psl_t, double psl_prev);

/// Runs the majorization-minimization loop from `initial`.
///
/// Each outer step builds the correlation table and the linear surrogate at
/// the current iterate, maximizes the dual over the simplex with mirror
/// descent and takes the phases of the resulting minimizer. A candidate whose
/// PSL exceeds the current one by more than 1e-9 is retried once with twice
/// the inner budget; if it is still worse the run ends as stalled, keeping the
/// current iterate.
SolverTrace design(const SolverConfig& cfg, const SequenceSet& initial,
                   const InnerTraceSink& inner_sink = {});

}  // namespace pslset
