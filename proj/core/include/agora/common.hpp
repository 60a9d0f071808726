// Copyright 2026 The Agora Authors.
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

#ifndef AGORA_COMMON_HPP_
#define AGORA_COMMON_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace agora {

// Invalid arguments, malformed profiles, out-of-range indices.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration or sampling budgets exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hard limit on the number of distinct items a set-valued valuation can
// range over. Explicit tables are further capped (see TableValuation).
inline constexpr int kMaxItems = 24;

// A subset of item indices {0, ..., m-1}, stored as a bitmask.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint32_t bits) : bits_(bits) {}

  static ItemSet of(std::initializer_list<int> items) {
    ItemSet s;
    for (int j : items) s = s.with(j);
    return s;
  }
  static constexpr ItemSet all(int m) {
    return ItemSet(m >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1);
  }

  constexpr bool contains(int j) const {
    return (bits_ >> static_cast<unsigned>(j)) & 1u;
  }
  constexpr ItemSet with(int j) const {
    check_index(j);
    return ItemSet(bits_ | (std::uint32_t{1} << j));
  }
  constexpr ItemSet without(int j) const {
    check_index(j);
    return ItemSet(bits_ & ~(std::uint32_t{1} << j));
  }
  constexpr bool subset_of(ItemSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int max_index() const {
    return bits_ == 0 ? -1 : 31 - std::countl_zero(bits_);
  }

  std::vector<int> items() const {
    std::vector<int> out;
    for (int j = 0; j < 32; ++j) {
      if (contains(j)) out.push_back(j);
    }
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int j : items()) {
      if (!first) out += ",";
      out += std::to_string(j);
      first = false;
    }
    return out + "}";
  }

  friend constexpr bool operator==(ItemSet, ItemSet) = default;

 private:
  static constexpr void check_index(int j) {
    if (j < 0 || j >= 32) throw InputError("item index out of range");
  }
  std::uint32_t bits_ = 0;
};

// Iterates all 2^m subsets of {0,...,m-1} in mask order.
inline std::uint32_t num_subsets(int m) { return std::uint32_t{1} << m; }

}  // namespace agora

#endif  // AGORA_COMMON_HPP_
