// Copyright 2026 The qsmote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Compact swap test between a reference vector (the data centroid) and a
// data point, and the angular distance derived from its outcome.
//
// The circuit uses one control qubit, one qubit holding the two-amplitude
// norm state phi, and log2(len(psi)) qubits holding the interleaved
// components psi. Only the leading psi qubit takes part in the controlled
// swap.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsmote/errors.hpp"
#include "qsmote/matrix.hpp"
#include "qsmote/parallel.hpp"
#include "qsmote/random.hpp"
#include "qsmote/statevec.hpp"

namespace qsmote::qdist {

struct SwapTestStates {
  std::array<double, 2> phi{};
  std::vector<double> psi;
  double z = 0.0;
  double dc_norm = 0.0;
  double md_norm = 0.0;
};

/// How the overlap probability is estimated from the control-qubit outcome.
enum class Estimator {
  /// p0 - p1, clamped to [0, 1].
  kStandard,
  /// 1 - 2 p0 + p1, clamped to [0, 1].
  kLiteral,
};

struct PrepOptions {
  /// Round phi and psi entries to this many decimals and Z to an integer.
  /// Off by default because it breaks normalization.
  std::optional<int> rounding_decimals;
};

struct SwapTestResult {
  double overlap_probability = 0.0;
  double angular_distance = 0.0;
  double euclid_dissimilarity = 0.0;
  statevec::MeasurementOutcome outcome;
};

namespace detail {
inline double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}
}  // namespace detail

/// Builds phi, psi and Z for the pair (reference, point). Both vectors must
/// already be zero-padded to the same power-of-two length.
inline SwapTestStates prep_swap_test(std::span<const double> reference, std::span<const double> point,
                                     const PrepOptions& options = {}) {
  if (reference.size() != point.size()) {
    throw DimensionError("swap-test inputs differ in length: " + std::to_string(reference.size()) +
                         " vs " + std::to_string(point.size()));
  }
  if (reference.empty()) throw DimensionError("swap-test inputs are empty");

  SwapTestStates s;
  s.dc_norm = l2_norm(reference);
  s.md_norm = l2_norm(point);
  if (!(s.dc_norm > 0.0) || !(s.md_norm > 0.0)) {
    throw DegenerateInputError("swap-test input has zero norm");
  }
  s.z = s.dc_norm * s.dc_norm + s.md_norm * s.md_norm;
  if (options.rounding_decimals) s.z = std::round(s.z);

  const double sqrt_z = std::sqrt(s.z);
  s.phi = {s.dc_norm / sqrt_z, -s.md_norm / sqrt_z};

  const double dc_scale = s.dc_norm * std::numbers::sqrt2;
  const double md_scale = s.md_norm * std::numbers::sqrt2;
  s.psi.reserve(2 * reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    s.psi.push_back(reference[i] / dc_scale);
    s.psi.push_back(point[i] / md_scale);
  }

  if (const auto d = options.rounding_decimals) {
    for (double& v : s.phi) v = detail::round_to(v, *d);
    for (double& v : s.psi) v = detail::round_to(v, *d);
  }
  return s;
}

/// 2 arccos(sqrt(p)), with p clamped to [0, 1].
inline double angular_distance_from_overlap(double overlap_probability) {
  const double p = std::clamp(overlap_probability, 0.0, 1.0);
  if (p == 1.0) return 0.0;
  if (p == 0.0) return std::numbers::pi;
  return 2.0 * std::acos(std::sqrt(p));
}

inline double estimate_overlap(const statevec::MeasurementOutcome& outcome, Estimator estimator) {
  const double raw = estimator == Estimator::kStandard
                         ? outcome.p0 - outcome.p1
                         : 1.0 - 2.0 * outcome.p0 + outcome.p1;
  return std::clamp(raw, 0.0, 1.0);
}

/// Full statevector of the circuit right before measurement.
inline statevec::StateVector swap_test_state(const SwapTestStates& states) {
  using namespace statevec;
  const std::size_t psi_len = states.psi.size();
  if (psi_len < 2 || !std::has_single_bit(psi_len)) {
    throw DimensionError("psi length must be a power of two >= 2, got " + std::to_string(psi_len));
  }
  const int psi_qubits = std::countr_zero(psi_len);
  const int total_qubits = 2 + psi_qubits;

  // |0>_control (x) |phi> (x) |psi>; the control bit is the top half and
  // stays zero.
  std::vector<Complex> amps(std::size_t{1} << total_qubits, Complex{});
  for (std::size_t f = 0; f < 2; ++f) {
    for (std::size_t j = 0; j < psi_len; ++j) amps[f * psi_len + j] = states.phi[f] * states.psi[j];
  }
  StateVector state = StateVector::initialize(std::span<const Complex>(amps), total_qubits);

  constexpr int kControl = 0;
  constexpr int kPhi = 1;
  constexpr int kPsiLead = 2;
  const Gate circuit[] = {
      gates::X{kPsiLead},
      gates::H{kControl},
      gates::CSWAP{kControl, kPhi, kPsiLead},
      gates::H{kControl},
  };
  return apply_gates(std::move(state), circuit);
}

inline SwapTestResult swap_test(const SwapTestStates& states, std::size_t shots, std::uint64_t seed,
                                Estimator estimator = Estimator::kStandard) {
  const statevec::StateVector state = swap_test_state(states);
  SwapTestResult r;
  r.outcome = statevec::measure_qubit(state, 0, shots, seed);
  r.overlap_probability = estimate_overlap(r.outcome, estimator);
  r.angular_distance = angular_distance_from_overlap(r.overlap_probability);
  r.euclid_dissimilarity = std::sqrt(2.0 * states.z * r.overlap_probability);
  return r;
}

struct DistanceOptions {
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::kStandard;
  PrepOptions prep;
  std::size_t threads = 1;
};

/// Seed of the measurement stream used for row `row_index`.
inline std::uint64_t row_measurement_seed(std::uint64_t seed, std::size_t row_index) {
  return derive_seed(seed, {0x5157'4150ULL, row_index});
}

/// Angular distance of one point from the reference; both are zero-padded here.
inline SwapTestResult swap_test_pair(std::span<const double> reference, std::span<const double> point,
                                     std::size_t row_index, const DistanceOptions& options) {
  const std::size_t len = padded_length(std::max(reference.size(), point.size()));
  std::vector<double> a(len, 0.0);
  std::vector<double> b(len, 0.0);
  if (reference.size() != point.size()) {
    throw DimensionError("point has " + std::to_string(point.size()) + " features, reference has " +
                         std::to_string(reference.size()));
  }
  std::copy(reference.begin(), reference.end(), a.begin());
  std::copy(point.begin(), point.end(), b.begin());
  const SwapTestStates states = prep_swap_test(a, b, options.prep);
  return swap_test(states, options.shots, row_measurement_seed(options.seed, row_index),
                   options.estimator);
}

/// One angular distance per row of `points` against `centroid`. Row i always
/// measures with the stream derived from (seed, i), so the result does not
/// depend on the thread count.
inline std::vector<double> angular_distance_table(const FeatureMatrix& points,
                                                  std::span<const double> centroid,
                                                  const DistanceOptions& options = {}) {
  std::vector<double> out(points.rows());
  if (points.empty()) return out;
  if (points.cols() != centroid.size()) {
    throw DimensionError("table has " + std::to_string(points.cols()) +
                         " columns, centroid has " + std::to_string(centroid.size()));
  }
  parallel_for(points.rows(), options.threads, [&](std::size_t i) {
    try {
      out[i] = swap_test_pair(centroid, points.row(i), i, options).angular_distance;
    } catch (const Error& e) {
      throw RowError(i, e.what());
    }
  });
  return out;
}

}  // namespace qsmote::qdist
