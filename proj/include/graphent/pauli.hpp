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

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "graphent/error.hpp"

namespace graphent {

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline constexpr std::size_t kMaxQubits = 64;

inline char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw InvalidArgument(std::string("invalid Pauli character '") + c + "'");
  }
}

namespace detail {

// Exponent g of i in sigma(x1,z1) * sigma(x2,z2) = i^g sigma(x1^x2, z1^z2),
// with sigma(1,1) = Y.
inline int pauli_phase_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return int(z2) * (2 * int(x2) - 1);
  return int(x2) * (1 - 2 * int(z2));
}

}  // namespace detail

/// Signed n-qubit Pauli operator stored as X/Z bit masks.
///
/// Bit q of each mask refers to qubit q (0-based); in the text form qubit 0
/// is the leftmost character. A qubit with both bits set carries Y (the
/// Hermitian matrix, not XZ). The sign is restricted to +1/-1: products that
/// would pick up a factor of i are rejected.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::size_t num_qubits) : n_(num_qubits) {
    check_size(num_qubits);
  }

  PauliString(std::size_t num_qubits, std::uint64_t x_mask,
              std::uint64_t z_mask, bool negative = false)
      : n_(num_qubits), x_(x_mask), z_(z_mask), negative_(negative) {
    check_size(num_qubits);
    std::uint64_t valid = mask_for(num_qubits);
    if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
      throw InvalidArgument("Pauli mask has bits beyond qubit count");
    }
  }

  static PauliString single(std::size_t num_qubits, std::size_t qubit,
                            Pauli p, bool negative = false) {
    if (qubit >= num_qubits) throw InvalidArgument("qubit index out of range");
    PauliString r(num_qubits);
    r.set(qubit, p);
    r.negative_ = negative;
    return r;
  }

  /// Parses "-ZZII", "+XY", "IZX". Qubit 0 is the leftmost letter.
  static PauliString parse(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    if (text.empty()) throw InvalidArgument("empty Pauli string");
    PauliString r(text.size());
    for (std::size_t q = 0; q < text.size(); ++q) {
      r.set(q, pauli_from_char(text[q]));
    }
    r.negative_ = negative;
    return r;
  }

  std::size_t num_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }

  Pauli at(std::size_t q) const {
    return static_cast<Pauli>(((x_ >> q) & 1u) | (((z_ >> q) & 1u) << 1));
  }

  void set(std::size_t q, Pauli p) {
    if (q >= n_) throw InvalidArgument("qubit index out of range");
    std::uint64_t bit = std::uint64_t{1} << q;
    auto v = static_cast<unsigned>(p);
    x_ = (v & 1u) ? (x_ | bit) : (x_ & ~bit);
    z_ = (v & 2u) ? (z_ | bit) : (z_ & ~bit);
  }

  /// True when every factor is I (sign ignored).
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  std::size_t weight() const { return std::popcount(x_ | z_); }
  std::size_t y_count(std::uint64_t subset) const {
    return std::popcount(x_ & z_ & subset);
  }

  bool commutes_with(const PauliString& other) const {
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
  }

  /// Same operator up to sign.
  bool same_support(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  PauliString operator-() const {
    PauliString r = *this;
    r.negative_ = !r.negative_;
    return r;
  }

  std::string str() const {
    std::string s;
    s.reserve(n_ + 1);
    if (negative_) s.push_back('-');
    for (std::size_t q = 0; q < n_; ++q) s.push_back(pauli_char(at(q)));
    return s;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.same_support(b) && a.negative_ == b.negative_;
  }

 private:
  static void check_size(std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
      throw InvalidArgument("qubit count must be in [1, 64]");
    }
  }
  static std::uint64_t mask_for(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  bool negative_ = false;
};

/// Signed product of commuting Pauli strings.
inline PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw InvalidArgument("Pauli strings differ in qubit count");
  }
  int g = 0;
  for (std::size_t k = 0; k < p.num_qubits(); ++k) {
    g += detail::pauli_phase_exponent((p.x_mask() >> k) & 1u,
                                      (p.z_mask() >> k) & 1u,
                                      (q.x_mask() >> k) & 1u,
                                      (q.z_mask() >> k) & 1u);
  }
  g = ((g % 4) + 4) % 4;
  if (g == 1 || g == 3) {
    throw InvalidArgument("product of anticommuting Pauli strings " + p.str() +
                          " and " + q.str() + " is not Hermitian");
  }
  bool negative = p.negative() != q.negative();
  if (g == 2) negative = !negative;
  return PauliString(p.num_qubits(), p.x_mask() ^ q.x_mask(),
                     p.z_mask() ^ q.z_mask(), negative);
}

inline PauliString operator*(const PauliString& p, const PauliString& q) {
  return multiply(p, q);
}

}  // namespace graphent
