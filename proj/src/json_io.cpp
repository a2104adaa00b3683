#include "cwl/json_io.hpp"

#include <fstream>

namespace cwl {

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.vertex_count();
  j["edges"] = Json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back(Json::array({u, v}));
  return j;
}

Graph graph_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("edges")) throw GraphError("graph json needs n and edges");
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw GraphError("graph json edge must be a pair");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph::from_edge_list(n, edges);
}

Json tiebreaker_to_json(const TieBreakerSpec& tb) {
  Json j;
  if (tb.kind == TieBreaker::Kind::Lex) {
    j["kind"] = "lex";
  } else {
    j["kind"] = "seeded";
    j["seed"] = tb.seed;
  }
  return j;
}

TieBreakerSpec tiebreaker_from_json(const Json& j) {
  TieBreakerSpec spec;
  auto kind = j.at("kind").get<std::string>();
  if (kind == "lex") {
    spec.kind = TieBreaker::Kind::Lex;
  } else if (kind == "seeded") {
    spec.kind = TieBreaker::Kind::Seeded;
    spec.seed = j.at("seed").get<std::uint64_t>();
  } else {
    throw GraphError("unknown tie-breaker kind: " + kind);
  }
  return spec;
}

TieBreakerSpec tiebreaker_from_flag(const std::string& flag) {
  TieBreakerSpec spec;
  if (flag == "lex") return spec;
  if (flag.rfind("seed:", 0) == 0) {
    spec.kind = TieBreaker::Kind::Seeded;
    spec.seed = std::stoull(flag.substr(5));
    return spec;
  }
  throw GraphError("tie-break flag must be 'lex' or 'seed:<n>'");
}

Json cert_to_json(const QuasiBoundCert& cert) {
  Json j;
  j["subject"] = cert.subject;
  j["bags"] = cert.decomp.bags;
  j["bag_centers"] = cert.bag_centers;
  j["a"] = cert.a;
  j["b"] = cert.b;
  j["boundary_centers"] = cert.boundary_centers;
  if (cert.boundary_a != cert.a || cert.boundary_b != cert.b) {
    j["boundary_a"] = cert.boundary_a;
    j["boundary_b"] = cert.boundary_b;
  }
  return j;
}

QuasiBoundCert cert_from_json(const Json& j) {
  QuasiBoundCert cert;
  cert.subject = make_vertex_set(j.at("subject").get<std::vector<int>>());
  for (const auto& bag : j.at("bags"))
    cert.decomp.bags.push_back(make_vertex_set(bag.get<std::vector<int>>()));
  for (const auto& cs : j.at("bag_centers"))
    cert.bag_centers.push_back(make_vertex_set(cs.get<std::vector<int>>()));
  cert.a = j.at("a").get<long long>();
  cert.b = j.at("b").get<long long>();
  cert.boundary_centers = make_vertex_set(j.at("boundary_centers").get<std::vector<int>>());
  cert.boundary_a = j.value("boundary_a", cert.a);
  cert.boundary_b = j.value("boundary_b", cert.b);
  return cert;
}

Json fat_model_to_json(const PatternTree& pt, const FatModel& m) {
  Json eta = Json::object();
  for (std::size_t i = 0; i < m.vertex_parts.size(); ++i)
    eta["v" + std::to_string(i)] = m.vertex_parts[i];
  for (std::size_t e = 0; e < m.edge_parts.size(); ++e) {
    auto [u, v] = pt.tree.edges()[e];
    eta["e" + std::to_string(u) + "-" + std::to_string(v)] = m.edge_parts[e];
  }
  Json j;
  j["pattern_ell"] = pt.ell;
  j["c"] = m.c;
  j["eta"] = std::move(eta);
  return j;
}

FatModel fat_model_from_json(const Json& j, int& ell_out) {
  ell_out = j.at("pattern_ell").get<int>();
  auto pt = build_pattern_tree(ell_out);
  FatModel m;
  m.c = j.at("c").get<long long>();
  m.vertex_parts.assign(pt.vertex_count(), {});
  m.edge_parts.assign(std::max(0, pt.vertex_count() - 1), {});
  for (const auto& [key, val] : j.at("eta").items()) {
    auto verts = make_vertex_set(val.get<std::vector<int>>());
    if (key.size() >= 2 && key[0] == 'v') {
      int i = std::stoi(key.substr(1));
      if (i < 0 || i >= pt.vertex_count()) throw GraphError("witness json: bad vertex key " + key);
      m.vertex_parts[i] = std::move(verts);
    } else if (key.size() >= 4 && key[0] == 'e') {
      auto dash = key.find('-');
      if (dash == std::string::npos) throw GraphError("witness json: bad edge key " + key);
      int u = std::stoi(key.substr(1, dash - 1));
      int v = std::stoi(key.substr(dash + 1));
      m.edge_parts[pt.tree.edge_index(u, v)] = std::move(verts);
    } else {
      throw GraphError("witness json: unknown eta key " + key);
    }
  }
  return m;
}

Json schedule_to_json(const Schedule& s) {
  Json j;
  j["c"] = s.c;
  j["ell"] = s.ell;
  j["d0"] = s.d0;
  j["mode"] = s.mode == ScheduleMode::Paper     ? "paper"
              : s.mode == ScheduleMode::Minimal ? "minimal"
                                                : "custom";
  j["delta"] = s.delta;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  return j;
}

Schedule schedule_from_json(const Json& j) {
  auto mode = j.value("mode", std::string("custom"));
  long long c = j.at("c").get<long long>();
  int ell = j.at("ell").get<int>();
  if (mode == "paper") return make_schedule(c, ell, ScheduleMode::Paper);
  if (mode == "minimal") return make_schedule(c, ell, ScheduleMode::Minimal);
  return make_custom_schedule(c, ell, j.at("d0").get<long long>(),
                              j.at("delta").get<std::vector<std::vector<long long>>>(),
                              j.at("alpha").get<std::vector<long long>>(),
                              j.at("beta").get<std::vector<long long>>());
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << canonical_dump(j);
}

}  // namespace cwl
