#include "stratrelease/json_io.hpp"

#include <fstream>
#include <sstream>

#include "stratrelease/errors.hpp"

namespace stratrelease {

using nlohmann::json;

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const char* where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(std::string("instance json: unknown field '") + key +
                                   "' in " + where);
  }
}

json classifier_to_json(const Classifier& c) {
  if (const auto* t = std::get_if<ThresholdClassifier>(&c)) return t->threshold;
  if (const auto* l = std::get_if<LinearClassifier>(&c)) {
    json j;
    j["w"] = {l->weights.x, l->weights.y};
    j["b"] = l->bias;
    return j;
  }
  const auto& tab = std::get<TabularClassifier>(c);
  json j;
  j["accepts"] = tab.accepts;
  return j;
}

Classifier classifier_from_json(const json& j, const char* where) {
  if (j.is_number()) return ThresholdClassifier{j.get<double>()};
  if (j.is_object() && j.contains("w")) {
    require_keys(j, {"w", "b"}, where);
    auto w = j.at("w").get<std::vector<double>>();
    if (w.size() != 2)
      throw ValidationError("instance json: linear classifier weight must be length 2");
    return LinearClassifier{{w[0], w[1]}, j.at("b").get<double>()};
  }
  if (j.is_object() && j.contains("accepts")) {
    require_keys(j, {"accepts"}, where);
    TabularClassifier t{j.at("accepts").get<std::vector<double>>()};
    std::sort(t.accepts.begin(), t.accepts.end());
    return t;
  }
  throw ValidationError(std::string("instance json: malformed classifier in ") + where);
}

json cost_to_json(const CostSpec& cost) {
  json j;
  switch (cost.kind) {
    case CostKind::Abs1D:
      j["kind"] = "abs1d";
      j["k"] = cost.k;
      break;
    case CostKind::PNorm2D:
      j["kind"] = "pnorm2d";
      if (cost.pnorm == 0)
        j["p"] = "inf";
      else
        j["p"] = cost.pnorm;
      break;
    case CostKind::Table: {
      j["kind"] = "table";
      json entries = json::array();
      for (const auto& [key, c] : cost.table.entries)
        entries.push_back({key.first, key.second, c});
      j["entries"] = entries;
      break;
    }
  }
  return j;
}

CostSpec cost_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "abs1d") {
    require_keys(j, {"kind", "k"}, "cost");
    return abs1d_cost(j.at("k").get<double>());
  }
  if (kind == "pnorm2d") {
    require_keys(j, {"kind", "p"}, "cost");
    const json& p = j.at("p");
    if (p.is_string()) {
      if (p.get<std::string>() != "inf")
        throw ValidationError("instance json: p must be 1, 2 or \"inf\"");
      return pnorm2d_cost(0);
    }
    return pnorm2d_cost(p.get<int>());
  }
  if (kind == "table") {
    require_keys(j, {"kind", "entries"}, "cost");
    CostTable table;
    for (const auto& row : j.at("entries")) {
      auto e = row.get<std::vector<double>>();
      if (e.size() != 3)
        throw ValidationError("instance json: table entries are [from, to, cost]");
      table.entries[{e[0], e[1]}] = e[2];
    }
    return table_cost(std::move(table));
  }
  throw ValidationError("instance json: unknown cost kind '" + kind + "'");
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json doc;
  if (inst.is_1d()) {
    doc["domain"] = {{"lo", inst.interval().lo}, {"hi", inst.interval().hi}};
  } else {
    const Box& b = inst.box();
    doc["domain"] = {{"lo", {b.lo.x, b.lo.y}}, {"hi", {b.hi.x, b.hi.y}}};
  }
  doc["f"] = classifier_to_json(inst.ground_truth);
  doc["h"] = classifier_to_json(inst.deployed_classifier());
  json support = json::array();
  for (const auto& c : inst.prior.support) support.push_back(classifier_to_json(c));
  doc["support"] = support;
  doc["prior_weights"] = inst.prior.weights;
  if (inst.prior_interval)
    doc["prior_interval"] = {{"a", inst.prior_interval->first},
                             {"b", inst.prior_interval->second}};
  json atoms = json::array();
  for (const auto& a : inst.data.atoms) atoms.push_back({a.location, a.mass});
  json pieces = json::array();
  for (const auto& p : inst.data.uniform_pieces) pieces.push_back({p.lo, p.hi, p.mass});
  if (!atoms.empty() || !pieces.empty())
    doc["distribution"] = {{"atoms", atoms}, {"uniform_pieces", pieces}};
  doc["cost"] = cost_to_json(inst.cost);
  if (!inst.agents.empty()) {
    json agents = json::array();
    for (Vec2 a : inst.agents) agents.push_back({a.x, a.y});
    doc["agents"] = agents;
  }
  return doc;
}

Instance instance_from_json(const json& doc) {
  require_keys(doc,
               {"domain", "f", "h", "support", "prior_weights", "prior_interval",
                "distribution", "cost", "agents"},
               "document");
  Instance inst;

  const json& dom = doc.at("domain");
  require_keys(dom, {"lo", "hi"}, "domain");
  if (dom.at("lo").is_array()) {
    auto lo = dom.at("lo").get<std::vector<double>>();
    auto hi = dom.at("hi").get<std::vector<double>>();
    if (lo.size() != 2 || hi.size() != 2)
      throw ValidationError("instance json: 2-D domain corners must be length 2");
    inst.domain = Box{{lo[0], lo[1]}, {hi[0], hi[1]}};
  } else {
    inst.domain = Interval{dom.at("lo").get<double>(), dom.at("hi").get<double>()};
  }

  inst.ground_truth = classifier_from_json(doc.at("f"), "f");
  Classifier deployed = classifier_from_json(doc.at("h"), "h");

  std::vector<Classifier> support;
  for (const auto& c : doc.at("support")) support.push_back(classifier_from_json(c, "support"));
  inst.prior = make_prior(std::move(support), doc.at("prior_weights").get<std::vector<double>>());

  bool found = false;
  for (std::size_t i = 0; i < inst.prior.size(); ++i) {
    if (classifier_equal(inst.prior.support[i], deployed)) {
      inst.deployed = i;
      found = true;
      break;
    }
  }
  if (!found) throw ValidationError("instance json: h is not a member of the support");

  if (doc.contains("prior_interval")) {
    const json& pi = doc.at("prior_interval");
    require_keys(pi, {"a", "b"}, "prior_interval");
    inst.prior_interval = {pi.at("a").get<double>(), pi.at("b").get<double>()};
  }

  if (doc.contains("distribution")) {
    const json& dist = doc.at("distribution");
    require_keys(dist, {"atoms", "uniform_pieces"}, "distribution");
    std::vector<DataDistribution::Atom> atoms;
    if (dist.contains("atoms")) {
      for (const auto& row : dist.at("atoms")) {
        auto e = row.get<std::vector<double>>();
        if (e.size() != 2) throw ValidationError("instance json: atoms are [x, mass]");
        atoms.push_back({e[0], e[1]});
      }
    }
    std::vector<DataDistribution::Piece> pieces;
    if (dist.contains("uniform_pieces")) {
      for (const auto& row : dist.at("uniform_pieces")) {
        auto e = row.get<std::vector<double>>();
        if (e.size() != 3)
          throw ValidationError("instance json: uniform pieces are [lo, hi, mass]");
        pieces.push_back({e[0], e[1], e[2]});
      }
    }
    inst.data = make_distribution(std::move(atoms), std::move(pieces));
  }

  inst.cost = cost_from_json(doc.at("cost"));

  if (doc.contains("agents")) {
    for (const auto& row : doc.at("agents")) {
      auto e = row.get<std::vector<double>>();
      if (e.size() != 2) throw ValidationError("instance json: agents are [x, y]");
      inst.agents.push_back({e[0], e[1]});
    }
  }
  return make_instance(std::move(inst));
}

std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance json: ") + e.what());
  }
  return instance_from_json(doc);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace stratrelease
