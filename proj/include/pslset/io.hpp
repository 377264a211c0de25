#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "pslset/correlation.hpp"
#include "pslset/radar.hpp"
#include "pslset/sequence_set.hpp"
#include "pslset/solver.hpp"
#include "pslset/surrogate.hpp"

namespace pslset::io {

// Sequence files: {"L": int, "M": int, "phases": [[radians, ...], ...]},
// one row per sequence. Doubles are written in shortest round-trip form, so a
// write/read cycle reproduces the phases exactly.

SequenceSet parse_sequence_json(const std::string& text);
std::string sequence_json(const SequenceSet& set);
SequenceSet read_sequence_file(const std::filesystem::path& path);
void write_sequence_file(const std::filesystem::path& path, const SequenceSet& set);

/// pair_i,pair_j,lag,abs_value for every ordered pair and every lag
/// -(M-1)..M-1. Sequence indices are one-based.
void write_correlation_csv(std::ostream& os, const CorrelationTable& table);

/// iter,psl,isl,inner_iters,seconds
void write_trace_csv(std::ostream& os, const SolverTrace& trace);

/// constraint,i,j,k,abs_r,lambda_bound,p (one-based i, j).
void write_surrogate_csv(std::ostream& os, const SurrogateSystem& sys);

/// Q rows, P columns of |values|.
void write_abs_image_csv(std::ostream& os, const Eigen::MatrixXcd& values);

/// Scene files: {"Q","P","theta_deg":[...],"beta":[[[re,im],...],...],"sigma2"}
/// or {"mask": ["..#..", ...], "sigma2"?}. Mask scenes draw reflectivities from
/// `seed`. Throws ParseError on malformed input.
radar::RadarScene parse_scene_json(const std::string& text, std::uint64_t seed);
radar::RadarScene read_scene_file(const std::filesystem::path& path, std::uint64_t seed);

/// Formats a double with 17 significant digits.
std::string fmt_double(double v);

}  // namespace pslset::io
