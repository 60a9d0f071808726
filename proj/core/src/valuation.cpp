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

#include "agora/valuation.hpp"

#include <algorithm>
#include <numeric>

namespace agora {

namespace {

double clause_sum(const AdditiveValuation& a, ItemSet s) {
  double total = 0.0;
  for (int j = 0; j < static_cast<int>(a.weights.size()); ++j) {
    if (s.contains(j)) total += a.weights[j];
  }
  return total;
}

void check_in_range(ItemSet s, int m, const char* what) {
  if (s.max_index() >= m) {
    throw InputError(std::string(what) + ": item set " + s.to_string() +
                     " out of range for " + std::to_string(m) + " items");
  }
}

void check_nonneg(const std::vector<double>& xs, const char* what) {
  for (double x : xs) {
    if (!(x >= 0.0)) throw InputError(std::string(what) + ": negative entry");
  }
}

}  // namespace

int num_items(const Valuation& v) {
  return std::visit(
      [](const auto& val) -> int {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          return static_cast<int>(val.weights.size());
        } else if constexpr (std::is_same_v<T, UnitDemandValuation>) {
          return static_cast<int>(val.item_values.size());
        } else if constexpr (std::is_same_v<T, XosValuation>) {
          return val.clauses.empty()
                     ? 0
                     : static_cast<int>(val.clauses.front().weights.size());
        } else if constexpr (std::is_same_v<T, SingleMindedValuation>) {
          return val.num_items;
        } else {
          return val.num_items;
        }
      },
      v);
}

void validate(const Valuation& v) {
  std::visit(
      [](const auto& val) {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          check_nonneg(val.weights, "additive");
        } else if constexpr (std::is_same_v<T, UnitDemandValuation>) {
          check_nonneg(val.item_values, "unit-demand");
        } else if constexpr (std::is_same_v<T, XosValuation>) {
          if (val.clauses.empty()) throw InputError("xos: no clauses");
          const std::size_t m = val.clauses.front().weights.size();
          for (const auto& c : val.clauses) {
            if (c.weights.size() != m) {
              throw InputError("xos: clause length mismatch");
            }
            check_nonneg(c.weights, "xos clause");
          }
        } else if constexpr (std::is_same_v<T, SingleMindedValuation>) {
          if (!(val.worth >= 0.0)) throw InputError("single-minded: negative worth");
          if (val.bundle.max_index() >= val.num_items) {
            throw InputError("single-minded: bundle out of range");
          }
        } else {
          if (val.num_items < 0 || val.num_items > TableValuation::kMaxTableItems) {
            throw InputError("table: item count out of range");
          }
          if (val.values.size() != num_subsets(val.num_items)) {
            throw InputError("table: wrong number of entries");
          }
          check_nonneg(val.values, "table");
          if (val.values[0] != 0.0) throw InputError("table: value of empty set must be 0");
          for (std::uint32_t mask = 0; mask < val.values.size(); ++mask) {
            for (int j = 0; j < val.num_items; ++j) {
              const std::uint32_t up = mask | (std::uint32_t{1} << j);
              if (val.values[mask] > val.values[up]) {
                throw InputError("table: not monotone");
              }
            }
          }
        }
      },
      v);
}

double value(const Valuation& v, ItemSet s) {
  check_in_range(s, num_items(v), "value");
  return std::visit(
      [s](const auto& val) -> double {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          return clause_sum(val, s);
        } else if constexpr (std::is_same_v<T, UnitDemandValuation>) {
          double best = 0.0;
          for (int j = 0; j < static_cast<int>(val.item_values.size()); ++j) {
            if (s.contains(j)) best = std::max(best, val.item_values[j]);
          }
          return best;
        } else if constexpr (std::is_same_v<T, XosValuation>) {
          double best = 0.0;
          for (const auto& c : val.clauses) best = std::max(best, clause_sum(c, s));
          return best;
        } else if constexpr (std::is_same_v<T, SingleMindedValuation>) {
          return val.bundle.subset_of(s) ? val.worth : 0.0;
        } else {
          return val.values[s.bits()];
        }
      },
      v);
}

double scalar_value(const Valuation& v) { return value(v, ItemSet::of({0})); }

Valuation make_scalar(double v) {
  if (!(v >= 0.0)) throw InputError("make_scalar: negative value");
  return AdditiveValuation{{v}};
}

int maximizing_clause(const XosValuation& v, ItemSet s) {
  if (v.clauses.empty()) throw InputError("maximizing_clause: no clauses");
  check_in_range(s, num_items(Valuation{v}), "maximizing_clause");
  int best = 0;
  double best_sum = clause_sum(v.clauses[0], s);
  for (int l = 1; l < static_cast<int>(v.clauses.size()); ++l) {
    const double sum = clause_sum(v.clauses[l], s);
    if (sum > best_sum) {
      best = l;
      best_sum = sum;
    }
  }
  return best;
}

SubmodularityCheck is_submodular(const TableValuation& f) {
  validate(Valuation{f});
  const int m = f.num_items;
  // Enumerate T, then S over subsets of T, then j outside T.
  for (std::uint32_t t = 0; t < num_subsets(m); ++t) {
    for (std::uint32_t s = t;; s = (s - 1) & t) {
      for (int j = 0; j < m; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        if (t & bit) continue;
        const double marginal_t = f.values[t | bit] - f.values[t];
        const double marginal_s = f.values[s | bit] - f.values[s];
        if (marginal_t > marginal_s) {
          return {false,
                  SubmodularityWitness{ItemSet(s), ItemSet(t), j}};
        }
      }
      if (s == 0) break;
    }
  }
  return {true, std::nullopt};
}

XosValuation submodular_to_xos(const TableValuation& f) {
  const int m = f.num_items;
  if (m > 6) throw InputError("submodular_to_xos: needs m <= 6 (m! clauses)");
  const SubmodularityCheck check = is_submodular(f);
  if (!check.submodular) {
    const auto& w = *check.witness;
    throw InputError("submodular_to_xos: input not submodular; witness S=" +
                     w.s.to_string() + " T=" + w.t.to_string() +
                     " j=" + std::to_string(w.item));
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  XosValuation out;
  do {
    AdditiveValuation clause;
    clause.weights.assign(m, 0.0);
    ItemSet prefix;
    for (int j : order) {
      clause.weights[j] = f.values[prefix.with(j).bits()] - f.values[prefix.bits()];
      prefix = prefix.with(j);
    }
    out.clauses.push_back(std::move(clause));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

XosValuation to_xos(const Valuation& v) {
  return std::visit(
      [](const auto& val) -> XosValuation {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          return XosValuation{{val}};
        } else if constexpr (std::is_same_v<T, UnitDemandValuation>) {
          const int m = static_cast<int>(val.item_values.size());
          XosValuation out;
          for (int j = 0; j < m; ++j) {
            AdditiveValuation clause;
            clause.weights.assign(m, 0.0);
            clause.weights[j] = val.item_values[j];
            out.clauses.push_back(std::move(clause));
          }
          if (out.clauses.empty()) out.clauses.push_back(AdditiveValuation{{}});
          return out;
        } else if constexpr (std::is_same_v<T, XosValuation>) {
          return val;
        } else if constexpr (std::is_same_v<T, SingleMindedValuation>) {
          throw InputError("to_xos: single-minded valuations have complements");
        } else {
          return submodular_to_xos(val);
        }
      },
      v);
}

TableValuation to_table(const Valuation& v) {
  const int m = num_items(v);
  if (m > TableValuation::kMaxTableItems) {
    throw InputError("to_table: too many items");
  }
  TableValuation out;
  out.num_items = m;
  out.values.resize(num_subsets(m));
  for (std::uint32_t mask = 0; mask < out.values.size(); ++mask) {
    out.values[mask] = value(v, ItemSet(mask));
  }
  return out;
}

}  // namespace agora
