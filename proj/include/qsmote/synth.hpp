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

// Synthetic point generation: amplitude-encode a minority point, rotate every
// qubit by the same small RX angle, and read the real part of the resulting
// statevector back as a new point.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qsmote/errors.hpp"
#include "qsmote/matrix.hpp"
#include "qsmote/random.hpp"
#include "qsmote/statevec.hpp"

namespace qsmote::synth {

/// One degree in radians, as used for per-loop angle increments.
inline constexpr double kOneDegree = 0.0174533;
inline constexpr double kDefaultSplitFactor = 10.0;

struct RotationPlan {
  double base_angle = 0.0;
  double angle_increment = 0.0;
  double split_factor = kDefaultSplitFactor;

  double final_angle() const noexcept { return base_angle + angle_increment; }
};

struct SynthOptions {
  double split_factor = kDefaultSplitFactor;
  /// Scale generated points back to the source norm. When off, the raw real
  /// part of the unit statevector is returned.
  bool rescale = true;
};

struct SyntheticRecord {
  std::vector<double> features;
  std::string source_row_id;
  double rotation_angle = 0.0;
  double angular_distance = 0.0;
  bool boosted = false;
  bool synthetic = true;

  bool operator==(const SyntheticRecord&) const = default;
};

/// Rotation angle for a point at `angular_distance` from the centroid.
inline double rotation_angle(double angular_distance, double split_factor, Rng& rng) {
  if (!(split_factor > 0.0)) throw ParameterError("split factor must be positive");
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (angular_distance > half_pi) return std::abs(half_pi - angular_distance) / split_factor;
  if (angular_distance < 0.0) {
    return std::abs((half_pi - angular_distance) * rng.uniform(0.5, 1.0)) / split_factor;
  }
  return rng.uniform(0.0, angular_distance) / split_factor;
}

inline RotationPlan plan_rotation(double angular_distance, double angle_increment,
                                  double split_factor, Rng& rng) {
  return {rotation_angle(angular_distance, split_factor, rng), angle_increment, split_factor};
}

struct RotationOutput {
  statevec::StateVector state;        // after the RX layer
  std::vector<double> real_part;      // padded, unit scale
  std::vector<double> features;       // decoded, padding stripped
};

/// Applies RX(theta) to every qubit of the encoded point and decodes the
/// real part.
inline RotationOutput rotate(const FeatureVector& point, double theta, bool rescale) {
  using namespace statevec;
  const std::vector<double> unit = point.unit();
  const int n = point.num_qubits();
  StateVector state = StateVector::initialize(std::span<const double>(unit), n);
  for (int q = 0; q < n; ++q) state = apply_gate(std::move(state), gates::RX{q, theta});

  RotationOutput out{std::move(state), {}, {}};
  out.real_part.reserve(out.state.size());
  for (const Complex& a : out.state.amplitudes()) out.real_part.push_back(a.real());

  out.features.assign(out.real_part.begin(),
                      out.real_part.begin() + static_cast<std::ptrdiff_t>(point.original_size));
  if (rescale && theta == 0.0) {
    out.features.assign(point.features().begin(), point.features().end());
  } else if (rescale) {
    const double norm = l2_norm(out.features);
    if (norm > 1e-12) {
      for (double& x : out.features) x *= point.norm / norm;
    } else {
      // The rotation moved all real weight out of the feature slots (only at
      // isolated angles); fall back to the source point.
      out.features.assign(point.features().begin(), point.features().end());
    }
  }
  return out;
}

/// Wraps an angle into [0, 2 pi).
inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  return t;
}

/// Generates one synthetic record from `point`.
inline SyntheticRecord create_syn_data(const FeatureVector& point, double angular_distance,
                                       double angle_increment, const SynthOptions& options,
                                       Rng& rng) {
  if (!(angle_increment >= 0.0)) throw ParameterError("angle increment must be nonnegative");
  const RotationPlan plan = plan_rotation(angular_distance, angle_increment, options.split_factor, rng);
  const double theta = wrap_angle(plan.final_angle());
  SyntheticRecord rec;
  rec.features = rotate(point, theta, options.rescale).features;
  rec.rotation_angle = theta;
  rec.angular_distance = angular_distance;
  return rec;
}

inline SyntheticRecord create_syn_data(std::span<const double> features, double angular_distance,
                                       double angle_increment, const SynthOptions& options,
                                       Rng& rng) {
  return create_syn_data(FeatureVector::encode(features), angular_distance, angle_increment,
                         options, rng);
}

}  // namespace qsmote::synth
