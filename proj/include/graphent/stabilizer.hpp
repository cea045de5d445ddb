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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/frame.hpp"
#include "graphent/graph.hpp"
#include "graphent/pauli.hpp"

namespace graphent {

// Dense enumeration of 2^n elements is only done for small registers.
inline constexpr std::size_t kMaxGroupQubits = 20;

/// Group index k <-> bit string (k_1 ... k_n) with k_1 the least significant
/// bit, i.e. k = sum_a k_a 2^(a-1).
using GroupIndex = std::uint64_t;

inline bool index_bit(GroupIndex k, std::size_t a) { return (k >> a) & 1u; }

/// Text form of an index with k_1 leftmost, e.g. k = 3 on 4 qubits is "1100".
inline std::string index_to_bits(GroupIndex k, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t a = 0; a < n; ++a) {
    if (index_bit(k, a)) s[a] = '1';
  }
  return s;
}

inline GroupIndex index_from_bits(const std::string& bits) {
  if (bits.empty() || bits.size() > kMaxGroupQubits) {
    throw InvalidArgument("stabilizer index bit string has invalid length");
  }
  GroupIndex k = 0;
  for (std::size_t a = 0; a < bits.size(); ++a) {
    if (bits[a] == '1') {
      k |= GroupIndex{1} << a;
    } else if (bits[a] != '0') {
      throw InvalidArgument("stabilizer index must be a string of 0/1: " + bits);
    }
  }
  return k;
}

/// All 2^n products S_k = prod_a g_a^{k_a} of n commuting generators.
class StabilizerGroup {
 public:
  explicit StabilizerGroup(std::vector<PauliString> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw InvalidArgument("no generators given");
    const std::size_t n = gens_.size();
    if (n > kMaxGroupQubits) throw InvalidArgument("too many generators to enumerate");
    const std::size_t q = gens_.front().num_qubits();
    for (std::size_t a = 0; a < n; ++a) {
      if (gens_[a].num_qubits() != q) {
        throw InvalidArgument("generators differ in qubit count");
      }
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!gens_[a].commutes_with(gens_[b])) {
          throw InvalidArgument("generators " + gens_[a].str() + " and " +
                                gens_[b].str() + " anticommute");
        }
      }
    }
    const std::size_t size = std::size_t{1} << n;
    elements_.reserve(size);
    elements_.emplace_back(q);
    lookup_.reserve(size);
    lookup_.emplace(key(elements_[0]), 0);
    for (GroupIndex k = 1; k < size; ++k) {
      auto low = static_cast<std::size_t>(std::countr_zero(k));
      elements_.push_back(elements_[k & (k - 1)] * gens_[low]);
      if (!lookup_.emplace(key(elements_.back()), k).second) {
        throw InvalidArgument("generators are not independent");
      }
    }
  }

  std::size_t num_generators() const { return gens_.size(); }
  std::size_t num_qubits() const { return gens_.front().num_qubits(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<PauliString>& generators() const { return gens_; }
  const std::vector<PauliString>& elements() const { return elements_; }
  const PauliString& operator[](GroupIndex k) const { return elements_.at(k); }

  /// Index of the element equal to p up to sign, if any.
  std::optional<GroupIndex> find(const PauliString& p) const {
    if (p.num_qubits() != num_qubits()) return std::nullopt;
    auto it = lookup_.find(key(p));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

 private:
  struct Key {
    std::uint64_t x, z;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}(k.x * 0x9E3779B97F4A7C15ull ^ k.z);
    }
  };
  static Key key(const PauliString& p) { return {p.x_mask(), p.z_mask()}; }

  std::vector<PauliString> gens_;
  std::vector<PauliString> elements_;
  std::unordered_map<Key, GroupIndex, KeyHash> lookup_;
};

inline std::vector<PauliString> stabilizer_group(const std::vector<PauliString>& gens) {
  return StabilizerGroup(gens).elements();
}

/// Stabilizer group of the graph state written in the given local frame.
inline StabilizerGroup framed_group(const Graph& graph, const LocalFrame& frame) {
  if (frame.num_qubits() != graph.num_vertices()) {
    throw InvalidArgument("frame and graph differ in qubit count");
  }
  return StabilizerGroup(apply_frame(frame, generators(graph)));
}

}  // namespace graphent
