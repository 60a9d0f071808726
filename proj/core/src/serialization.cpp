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

#include "agora/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace agora {

using nlohmann::json;

namespace {

std::vector<double> doubles_from(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError(std::string(what) + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw InputError(std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

}  // namespace

json to_json(const Valuation& v) {
  return std::visit(
      [](const auto& val) -> json {
        using T = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<T, AdditiveValuation>) {
          return {{"class", "additive"}, {"weights", val.weights}};
        } else if constexpr (std::is_same_v<T, UnitDemandValuation>) {
          return {{"class", "unit_demand"}, {"item_values", val.item_values}};
        } else if constexpr (std::is_same_v<T, XosValuation>) {
          json clauses = json::array();
          for (const auto& c : val.clauses) clauses.push_back(c.weights);
          return {{"class", "xos"}, {"clauses", clauses}};
        } else if constexpr (std::is_same_v<T, SingleMindedValuation>) {
          return {{"class", "single_minded"},
                  {"num_items", val.num_items},
                  {"bundle", val.bundle.items()},
                  {"worth", val.worth}};
        } else {
          return {{"class", "table"},
                  {"num_items", val.num_items},
                  {"values", val.values}};
        }
      },
      v);
}

Valuation valuation_from_json(const json& j) {
  if (j.is_number()) return make_scalar(j.get<double>());
  const std::string cls = string_field(j, "class");
  Valuation out;
  if (cls == "additive") {
    out = AdditiveValuation{doubles_from(j.at("weights"), "additive weights")};
  } else if (cls == "unit_demand") {
    out = UnitDemandValuation{
        doubles_from(j.at("item_values"), "unit-demand values")};
  } else if (cls == "xos") {
    XosValuation v;
    for (const auto& c : j.at("clauses")) {
      v.clauses.push_back(AdditiveValuation{doubles_from(c, "xos clause")});
    }
    out = v;
  } else if (cls == "single_minded") {
    SingleMindedValuation v;
    v.num_items = j.at("num_items").get<int>();
    for (const auto& x : j.at("bundle")) v.bundle = v.bundle.with(x.get<int>());
    v.worth = j.at("worth").get<double>();
    out = v;
  } else if (cls == "table") {
    TableValuation v;
    v.num_items = j.at("num_items").get<int>();
    v.values = doubles_from(j.at("values"), "table values");
    out = v;
  } else {
    throw InputError("valuation: unknown class '" + cls + "'");
  }
  validate(out);
  return out;
}

json to_json(const ValuationProfile& p) {
  json out = json::array();
  for (const auto& v : p.players) out.push_back(to_json(v));
  return out;
}

ValuationProfile profile_from_json(const json& j) {
  if (!j.is_array()) throw InputError("profile: expected an array");
  ValuationProfile out;
  for (const auto& v : j) out.players.push_back(valuation_from_json(v));
  return out;
}

json to_json(const Prior& p) {
  if (const auto* ind = std::get_if<IndependentProduct>(&p)) {
    json players = json::array();
    for (const auto& m : ind->players) {
      if (const auto* d = std::get_if<DiscreteMarginal>(&m)) {
        json support = json::array();
        for (const auto& v : d->support) support.push_back(to_json(v));
        players.push_back(
            {{"kind", "discrete"}, {"support", support}, {"probs", d->probs}});
      } else {
        const auto& u = std::get<UniformMarginal>(m);
        players.push_back({{"kind", "uniform"}, {"lo", u.lo}, {"hi", u.hi}});
      }
    }
    return {{"class", "independent"}, {"players", players}};
  }
  const auto& joint = std::get<CorrelatedJoint>(p);
  json atoms = json::array();
  for (const auto& a : joint.atoms) atoms.push_back(to_json(a));
  return {{"class", "correlated"}, {"atoms", atoms}, {"probs", joint.probs}};
}

Prior prior_from_json(const json& j) {
  const std::string cls = string_field(j, "class");
  Prior out;
  if (cls == "independent") {
    IndependentProduct p;
    for (const auto& mj : j.at("players")) {
      const std::string kind = string_field(mj, "kind");
      if (kind == "uniform") {
        p.players.push_back(UniformMarginal{mj.at("lo").get<double>(),
                                            mj.at("hi").get<double>()});
      } else if (kind == "discrete") {
        DiscreteMarginal d;
        for (const auto& v : mj.at("support")) {
          d.support.push_back(valuation_from_json(v));
        }
        d.probs = doubles_from(mj.at("probs"), "marginal probs");
        p.players.push_back(std::move(d));
      } else {
        throw InputError("prior marginal: unknown kind '" + kind + "'");
      }
    }
    out = p;
  } else if (cls == "correlated") {
    CorrelatedJoint joint;
    for (const auto& a : j.at("atoms")) joint.atoms.push_back(profile_from_json(a));
    joint.probs = doubles_from(j.at("probs"), "joint probs");
    out = joint;
  } else {
    throw InputError("prior: unknown class '" + cls + "'");
  }
  validate(out);
  return out;
}

json to_json(const AuctionFormat& f) {
  return std::visit(
      [](const auto& fmt) -> json {
        using T = std::decay_t<decltype(fmt)>;
        if constexpr (std::is_same_v<T, FirstPriceSingleItem>) {
          return {{"kind", "first_price"}};
        } else if constexpr (std::is_same_v<T, SecondPriceSingleItem>) {
          return {{"kind", "second_price"}};
        } else if constexpr (std::is_same_v<T, AllPaySingleItem>) {
          return {{"kind", "all_pay"}};
        } else if constexpr (std::is_same_v<T, PublicGood>) {
          return {{"kind", "public_good"}, {"cost", fmt.cost}};
        } else {
          return {{"kind", "simultaneous"},
                  {"items", fmt.items},
                  {"rule", fmt.rule == ItemRule::kFirstPrice ? "first_price"
                                                             : "second_price"}};
        }
      },
      f);
}

AuctionFormat format_from_json(const json& j) {
  const std::string kind =
      j.is_string() ? j.get<std::string>() : string_field(j, "kind");
  AuctionFormat out;
  if (kind == "first_price") {
    out = FirstPriceSingleItem{};
  } else if (kind == "second_price") {
    out = SecondPriceSingleItem{};
  } else if (kind == "all_pay") {
    out = AllPaySingleItem{};
  } else if (kind == "public_good") {
    out = PublicGood{j.at("cost").get<double>()};
  } else if (kind == "simultaneous") {
    SimultaneousItems sim;
    sim.items = j.at("items").get<int>();
    const std::string rule = string_field(j, "rule");
    if (rule == "first_price") {
      sim.rule = ItemRule::kFirstPrice;
    } else if (rule == "second_price") {
      sim.rule = ItemRule::kSecondPrice;
    } else {
      throw InputError("simultaneous: unknown rule '" + rule + "'");
    }
    out = sim;
  } else {
    throw InputError("format: unknown kind '" + kind + "'");
  }
  validate(out);
  return out;
}

namespace {

const char* closed_form_name(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::kLinearShade: return "linear_shade";
    case ClosedFormId::kConstant: return "constant";
    case ClosedFormId::kTruthful: return "truthful";
    case ClosedFormId::kVickreyWeak: return "vickrey_weak";
    case ClosedFormId::kVickreyStrong: return "vickrey_strong";
  }
  return "unknown";
}

}  // namespace

json to_json(const Strategy& s) {
  if (const auto* cf = std::get_if<ClosedFormStrategy>(&s)) {
    return {{"kind", "closed_form"},
            {"id", closed_form_name(cf->id)},
            {"param", cf->param}};
  }
  if (std::holds_alternative<MixedClosedFormStrategy>(s)) {
    return {{"kind", "mixed_closed_form"}, {"id", "uniform_item_reciprocal"}};
  }
  const auto& grid = std::get<GridStrategy>(s);
  return {{"kind", "grid"},
          {"value_grid", grid.value_grid},
          {"actions", grid.actions},
          {"probs", grid.probs}};
}

Strategy strategy_from_json(const json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "closed_form") {
    const std::string id = string_field(j, "id");
    ClosedFormStrategy cf;
    if (id == "linear_shade") {
      cf.id = ClosedFormId::kLinearShade;
    } else if (id == "constant") {
      cf.id = ClosedFormId::kConstant;
    } else if (id == "truthful") {
      cf.id = ClosedFormId::kTruthful;
    } else if (id == "vickrey_weak") {
      cf.id = ClosedFormId::kVickreyWeak;
    } else if (id == "vickrey_strong") {
      cf.id = ClosedFormId::kVickreyStrong;
    } else {
      throw InputError("closed form: unknown id '" + id + "'");
    }
    cf.param = j.value("param", 0.0);
    return cf;
  }
  if (kind == "mixed_closed_form") {
    return MixedClosedFormStrategy{};
  }
  if (kind == "grid") {
    GridStrategy grid;
    grid.value_grid = doubles_from(j.at("value_grid"), "grid values");
    for (const auto& a : j.at("actions")) {
      grid.actions.push_back(doubles_from(a, "grid action"));
    }
    for (const auto& p : j.at("probs")) {
      grid.probs.push_back(doubles_from(p, "grid probs"));
    }
    return grid;
  }
  throw InputError("strategy: unknown kind '" + kind + "'");
}

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_bid_profile_csv(std::ostream& out, const BidProfile& b) {
  out << "player,item,bid\n";
  for (int i = 0; i < b.num_players(); ++i) {
    for (int j = 0; j < b.num_items(); ++j) {
      out << i << ',' << j << ',' << csv_number(b.bids[i][j]) << '\n';
    }
  }
}

BidProfile read_bid_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("player,item,bid", 0) != 0) {
    throw InputError("bid profile csv: missing header");
  }
  std::vector<std::tuple<int, int, double>> rows;
  int players = 0, items = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    int i = 0, j = 0;
    double bid = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &i, &j, &bid) != 3) {
      throw InputError("bid profile csv: bad row at line " +
                       std::to_string(line_no));
    }
    rows.emplace_back(i, j, bid);
    players = std::max(players, i + 1);
    items = std::max(items, j + 1);
  }
  if (rows.empty()) throw InputError("bid profile csv: no rows");
  BidProfile out;
  out.bids.assign(players, std::vector<double>(items, 0.0));
  for (const auto& [i, j, bid] : rows) out.bids[i][j] = bid;
  return out;
}

}  // namespace agora
