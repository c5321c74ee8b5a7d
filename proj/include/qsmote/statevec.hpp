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

// Dense statevector simulator restricted to the gates used by the swap test
// and the rotation circuit: H, X, RX and controlled SWAP.
//
// Qubit ordering is big-endian: qubit 0 is the most significant bit of the
// basis-state index.

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qsmote/errors.hpp"
#include "qsmote/random.hpp"

namespace qsmote::statevec {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultShots = 10000;

namespace gates {
struct H {
  int qubit;
};
struct X {
  int qubit;
};
struct RX {
  int qubit;
  double theta;  // radians
};
struct CSWAP {
  int control;
  int a;
  int b;
};
}  // namespace gates

using Gate = std::variant<gates::H, gates::X, gates::RX, gates::CSWAP>;

class StateVector {
 public:
  /// Builds a normalized state from 2^num_qubits amplitudes.
  static StateVector initialize(std::span<const Complex> amplitudes, int num_qubits) {
    check_shape(amplitudes.size(), num_qubits);
    double norm2 = 0.0;
    for (const Complex& a : amplitudes) norm2 += std::norm(a);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw DegenerateInputError("cannot initialize a state from a zero vector");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    StateVector s;
    s.num_qubits_ = num_qubits;
    s.amps_.reserve(amplitudes.size());
    for (const Complex& a : amplitudes) s.amps_.push_back(a * scale);
    return s;
  }

  static StateVector initialize(std::span<const double> amplitudes, int num_qubits) {
    std::vector<Complex> c(amplitudes.begin(), amplitudes.end());
    return initialize(std::span<const Complex>(c), num_qubits);
  }

  /// |0...0> on num_qubits qubits.
  static StateVector zero(int num_qubits) {
    std::vector<Complex> c(dimension(num_qubits), Complex{});
    c[0] = 1.0;
    return initialize(std::span<const Complex>(c), num_qubits);
  }

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const Complex& a : amps_) s += std::norm(a);
    return s;
  }

  /// Bit mask selecting `qubit` within a basis index.
  std::size_t mask(int qubit) const { return std::size_t{1} << (num_qubits_ - 1 - qubit); }

  void check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
      throw IndexError("qubit index " + std::to_string(qubit) + " out of range for " +
                       std::to_string(num_qubits_) + "-qubit state");
    }
  }

 private:
  friend StateVector apply_gate(StateVector state, const Gate& gate);

  static std::size_t dimension(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) {
      throw DimensionError("num_qubits must be in [1, 30], got " + std::to_string(num_qubits));
    }
    return std::size_t{1} << num_qubits;
  }

  static void check_shape(std::size_t length, int num_qubits) {
    const std::size_t dim = dimension(num_qubits);
    if (length != dim) {
      throw DimensionError("amplitude array of length " + std::to_string(length) +
                           " does not match 2^" + std::to_string(num_qubits));
    }
  }

  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Applies one gate and returns the resulting state.
inline StateVector apply_gate(StateVector state, const Gate& gate) {
  auto& amps = state.amps_;
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, gates::CSWAP>) {
          state.check_qubit(g.control);
          state.check_qubit(g.a);
          state.check_qubit(g.b);
          if (g.control == g.a || g.control == g.b || g.a == g.b) {
            throw IndexError("CSWAP qubits must be pairwise distinct");
          }
          const std::size_t c = state.mask(g.control);
          const std::size_t ma = state.mask(g.a);
          const std::size_t mb = state.mask(g.b);
          // Swap |..1_a..0_b..> with |..0_a..1_b..> where control is set.
          for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & c) && (i & ma) && !(i & mb)) std::swap(amps[i], amps[(i & ~ma) | mb]);
          }
        } else {
          state.check_qubit(g.qubit);
          const std::size_t m = state.mask(g.qubit);
          Complex u00, u01, u10, u11;
          if constexpr (std::is_same_v<G, gates::H>) {
            const double r = 1.0 / std::sqrt(2.0);
            u00 = u01 = u10 = r;
            u11 = -r;
          } else if constexpr (std::is_same_v<G, gates::X>) {
            u00 = u11 = 0.0;
            u01 = u10 = 1.0;
          } else {
            const double c = std::cos(g.theta / 2.0);
            const double s = std::sin(g.theta / 2.0);
            u00 = u11 = c;
            u01 = u10 = Complex(0.0, -s);
          }
          for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & m) continue;
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | m];
            amps[i] = u00 * a0 + u01 * a1;
            amps[i | m] = u10 * a0 + u11 * a1;
          }
        }
      },
      gate);
  return state;
}

inline StateVector apply_gates(StateVector state, std::span<const Gate> circuit) {
  for (const Gate& g : circuit) state = apply_gate(std::move(state), g);
  return state;
}

struct MeasurementOutcome {
  double p0 = 1.0;
  double p1 = 0.0;
  std::size_t shots = 0;  // 0 = exact probabilities
  std::size_t counts0 = 0;
  std::size_t counts1 = 0;
};

/// Marginal outcome of measuring one qubit. With shots == 0 the exact
/// probabilities are returned; otherwise `shots` Bernoulli draws are taken
/// from a generator seeded with `seed`.
inline MeasurementOutcome measure_qubit(const StateVector& state, int qubit, std::size_t shots,
                                        std::uint64_t seed) {
  state.check_qubit(qubit);
  const std::size_t m = state.mask(qubit);
  double w0 = 0.0;
  double w1 = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) (i & m ? w1 : w0) += std::norm(amps[i]);
  const double total = w0 + w1;

  MeasurementOutcome out;
  out.p0 = w0 / total;
  out.p1 = w1 / total;
  if (shots == 0) return out;

  Rng rng(seed);
  std::size_t ones = 0;
  for (std::size_t s = 0; s < shots; ++s) ones += rng.uniform() < out.p1 ? 1 : 0;
  out.shots = shots;
  out.counts1 = ones;
  out.counts0 = shots - ones;
  out.p0 = static_cast<double>(out.counts0) / static_cast<double>(shots);
  out.p1 = static_cast<double>(out.counts1) / static_cast<double>(shots);
  return out;
}

}  // namespace qsmote::statevec
