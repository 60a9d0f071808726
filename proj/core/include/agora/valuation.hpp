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

#ifndef AGORA_VALUATION_HPP_
#define AGORA_VALUATION_HPP_

#include <optional>
#include <variant>
#include <vector>

#include "agora/common.hpp"

namespace agora {

// ---------------------------------------------------------------------------
// Valuation classes. All are normalized (value of the empty set is 0) and
// monotone; weights and values are nonnegative.
// ---------------------------------------------------------------------------

// v(S) = sum of per-item weights over S.
struct AdditiveValuation {
  std::vector<double> weights;
};

// v(S) = best single item in S; 0 for the empty set.
struct UnitDemandValuation {
  std::vector<double> item_values;
};

// v(S) = max over additive clauses of the clause sum on S. Every monotone
// submodular valuation admits such a representation; single-minded ones
// do not.
struct XosValuation {
  std::vector<AdditiveValuation> clauses;  // at least one, equal lengths
};

// Worth `worth` for any superset of `bundle`, 0 otherwise. Exhibits
// complements; deliberately outside the XOS class.
struct SingleMindedValuation {
  int num_items = 0;
  ItemSet bundle;
  double worth = 0.0;
};

// Explicit table over all 2^m subsets, indexed by bitmask. Kept small so
// that monotonicity and submodularity are decidable by enumeration.
struct TableValuation {
  static constexpr int kMaxTableItems = 12;
  int num_items = 0;
  std::vector<double> values;  // size 2^num_items, values[0] == 0
};

using Valuation = std::variant<AdditiveValuation, UnitDemandValuation,
                               XosValuation, SingleMindedValuation,
                               TableValuation>;

// A full per-player profile. For single-good games entries are scalar
// valuations (see make_scalar / scalar_value).
struct ValuationProfile {
  std::vector<Valuation> players;

  int num_players() const { return static_cast<int>(players.size()); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Number of items the valuation is defined over.
int num_items(const Valuation& v);

// Validates class invariants (nonnegativity, table normalization and
// monotonicity, clause shapes). Throws InputError on violation.
void validate(const Valuation& v);

// v(S). Throws InputError if S mentions items outside the valuation's range.
double value(const Valuation& v, ItemSet s);

// Scalar view of a single-item valuation: value({0}).
double scalar_value(const Valuation& v);

// A scalar value v as a one-item valuation.
Valuation make_scalar(double v);

// Index of the additive clause attaining value(v, s); ties broken by lowest
// clause index.
int maximizing_clause(const XosValuation& v, ItemSet s);

// Witness of a submodularity violation:
// f(t + j) - f(t) > f(s + j) - f(s) with s subset of t, j outside t.
struct SubmodularityWitness {
  ItemSet s;
  ItemSet t;
  int item = -1;
};

struct SubmodularityCheck {
  bool submodular = false;
  std::optional<SubmodularityWitness> witness;
};

// Exhaustive decreasing-marginals check over all (S, T, j) with S subset of
// T and j outside T.
SubmodularityCheck is_submodular(const TableValuation& f);

// Rewrites a monotone submodular table as an XOS valuation with one additive
// clause per item ordering: the clause for ordering pi gives item j its
// marginal value on top of the items preceding it in pi. Requires
// num_items <= 6 (m! clauses); throws InputError with a witness for
// non-submodular input.
XosValuation submodular_to_xos(const TableValuation& f);

// XOS view of a valuation: additive becomes its own single clause,
// unit-demand becomes one singleton clause per item, tables go through
// submodular_to_xos. Single-minded valuations are rejected.
XosValuation to_xos(const Valuation& v);

// Explicit table of v over all subsets (m <= kMaxTableItems).
TableValuation to_table(const Valuation& v);

}  // namespace agora

#endif  // AGORA_VALUATION_HPP_
