// Copyright 2026 The graphent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/graph.hpp"
#include "graphent/pauli.hpp"

namespace graphent {

/// +P or -P for a single-qubit Pauli P.
struct SignedPauli {
  Pauli pauli = Pauli::I;
  bool negative = false;

  /// "+Z", "-X", or a bare letter.
  static SignedPauli parse(std::string_view token) {
    SignedPauli r;
    if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
      r.negative = token.front() == '-';
      token.remove_prefix(1);
    }
    if (token.size() != 1) {
      throw InvalidArgument("signed Pauli token must look like \"+Z\" or \"-X\"");
    }
    r.pauli = pauli_from_char(token.front());
    return r;
  }

  std::string str() const {
    return std::string(1, negative ? '-' : '+') + pauli_char(pauli);
  }

  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

struct QubitMap {
  SignedPauli image_of_x{Pauli::X, false};
  SignedPauli image_of_z{Pauli::Z, false};
  friend bool operator==(const QubitMap&, const QubitMap&) = default;
};

/// Per-qubit signed Clifford substitution X -> image_of_x, Z -> image_of_z.
///
/// The image of Y follows from Y = iXZ. Each qubit map must send X and Z to
/// anticommuting non-identity Paulis.
class LocalFrame {
 public:
  LocalFrame() = default;

  explicit LocalFrame(std::vector<QubitMap> maps) : maps_(std::move(maps)) {
    if (maps_.empty() || maps_.size() > kMaxQubits) {
      throw InvalidArgument("frame qubit count must be in [1, 64]");
    }
    for (std::size_t q = 0; q < maps_.size(); ++q) {
      const auto& m = maps_[q];
      if (m.image_of_x.pauli == Pauli::I || m.image_of_z.pauli == Pauli::I ||
          m.image_of_x.pauli == m.image_of_z.pauli) {
        throw InvalidArgument("frame images of X and Z on qubit " +
                              std::to_string(q + 1) + " do not anticommute");
      }
    }
  }

  static LocalFrame identity(std::size_t n) {
    return LocalFrame(std::vector<QubitMap>(n));
  }

  std::size_t num_qubits() const { return maps_.size(); }
  const QubitMap& qubit(std::size_t q) const { return maps_.at(q); }
  const std::vector<QubitMap>& maps() const { return maps_; }

  bool is_identity() const {
    for (const auto& m : maps_) {
      if (!(m == QubitMap{})) return false;
    }
    return true;
  }

  /// Signed image of a single-qubit Pauli on qubit q.
  SignedPauli image(std::size_t q, Pauli p) const {
    const auto& m = maps_.at(q);
    switch (p) {
      case Pauli::I: return {Pauli::I, false};
      case Pauli::X: return m.image_of_x;
      case Pauli::Z: return m.image_of_z;
      case Pauli::Y: {
        // Y = i X Z  ->  i (sx P)(sz Q) = i sx sz i^g R.
        auto ux = static_cast<unsigned>(m.image_of_x.pauli);
        auto uz = static_cast<unsigned>(m.image_of_z.pauli);
        int g = detail::pauli_phase_exponent(ux & 1u, ux & 2u, uz & 1u, uz & 2u);
        bool negative = m.image_of_x.negative != m.image_of_z.negative;
        if (g == 1) negative = !negative;  // i * i = -1; g == -1 gives +1
        return {static_cast<Pauli>(ux ^ uz), negative};
      }
    }
    return {};
  }

  friend bool operator==(const LocalFrame&, const LocalFrame&) = default;

 private:
  std::vector<QubitMap> maps_;
};

/// Replaces every factor of p by its signed image under the frame.
inline PauliString apply_frame(const LocalFrame& frame, const PauliString& p) {
  if (frame.num_qubits() != p.num_qubits()) {
    throw InvalidArgument("frame and Pauli string differ in qubit count");
  }
  PauliString r(p.num_qubits());
  bool negative = p.negative();
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    SignedPauli img = frame.image(q, p.at(q));
    r.set(q, img.pauli);
    negative = negative != img.negative;
  }
  return r.negative() == negative ? r : -r;
}

inline std::vector<PauliString> apply_frame(const LocalFrame& frame,
                                            const std::vector<PauliString>& ps) {
  std::vector<PauliString> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(apply_frame(frame, p));
  return out;
}

namespace frames {

// Conjugation by X1 H1 (x) Z2 (x) 1 (x) H4 on the 4-chain 1-2-3-4.
inline LocalFrame hyperentangled_c4() {
  std::vector<QubitMap> m(4);
  m[0] = {{Pauli::Z, true}, {Pauli::X, false}};
  m[1] = {{Pauli::X, true}, {Pauli::Z, false}};
  m[3] = {{Pauli::Z, false}, {Pauli::X, false}};
  return LocalFrame(std::move(m));
}

// Substitutions taking the chain 4-1-2-5-6-3 to the six-qubit linear cluster
// measured with two cascaded interferometers.
inline LocalFrame hyperentangled_lc6() {
  std::vector<QubitMap> m(6);
  m[1] = {{Pauli::Z, false}, {Pauli::X, false}};
  m[2] = {{Pauli::Z, true}, {Pauli::X, false}};
  m[3] = {{Pauli::Z, false}, {Pauli::X, false}};
  m[4] = {{Pauli::X, true}, {Pauli::Z, false}};
  return LocalFrame(std::move(m));
}

/// The six-vertex chain 4-1-2-5-6-3 that hyperentangled_lc6() acts on.
inline Graph hyperentangled_lc6_graph() { return Graph::chain({3, 0, 1, 4, 5, 2}); }

}  // namespace frames

}  // namespace graphent
