#pragma once

#include <string>

#include <json.hpp>

#include "cwl/decomp.hpp"
#include "cwl/graph.hpp"
#include "cwl/minors.hpp"
#include "cwl/schedule.hpp"
#include "cwl/tiebreak.hpp"

namespace cwl {

using Json = nlohmann::json;

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Tie-breakers serialize as a descriptor, never as a rank table.
struct TieBreakerSpec {
  TieBreaker::Kind kind = TieBreaker::Kind::Lex;
  std::uint64_t seed = 0;

  TieBreaker build(const Graph& g) const {
    return kind == TieBreaker::Kind::Lex ? TieBreaker::lex(g) : TieBreaker::seeded(g, seed);
  }
};

Json tiebreaker_to_json(const TieBreakerSpec& tb);
TieBreakerSpec tiebreaker_from_json(const Json& j);

/// Parses "lex" or "seed:<n>" CLI syntax.
TieBreakerSpec tiebreaker_from_flag(const std::string& flag);

Json cert_to_json(const QuasiBoundCert& cert);
QuasiBoundCert cert_from_json(const Json& j);

/// Witness format: {"pattern_ell":l,"c":c,"eta":{"v<i>":[...],"e<u>-<v>":[...]}}.
Json fat_model_to_json(const PatternTree& pt, const FatModel& m);
FatModel fat_model_from_json(const Json& j, int& ell_out);

Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

std::string canonical_dump(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace cwl
