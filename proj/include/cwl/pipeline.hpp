#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cwl/decomp.hpp"
#include "cwl/graph.hpp"
#include "cwl/minors.hpp"
#include "cwl/schedule.hpp"
#include "cwl/tiebreak.hpp"

namespace cwl {

enum class BuildingClass { House, Fort, Castle };

std::string building_class_name(BuildingClass c);

/// Connected vertex set with its class, concrete quasi-bound certificate,
/// and (for forts and castles) a stored superfat witness model.
struct Building {
  VertexSet verts;
  BuildingClass cls = BuildingClass::Fort;
  QuasiBoundCert cert;
  std::optional<FatModel> model;
  int model_ell = -1;

  int rank(int century) const {
    switch (cls) {
      case BuildingClass::House: return century - 1;
      case BuildingClass::Fort: return century;
      case BuildingClass::Castle: return century + 1;
    }
    return century;
  }
};

/// Maximal adjoin-connected set of houses with the collective boundary
/// cover, and (while cells are stable) the certificate for the union of the
/// member cells.
struct CommunityRecord {
  std::vector<int> members;  // building indices, ascending
  VertexSet boundary_centers;
  long long boundary_radius = 0;
  std::optional<QuasiBoundCert> cell_cert;
};

enum class StateKind { Society, Realm };

struct RealmState {
  int century = 0;
  StateKind kind = StateKind::Society;
  std::vector<Building> buildings;

  // Caches rebuilt by Pipeline::refresh_state.
  VoronoiResult voronoi;
  std::vector<std::vector<int>> adjoin;  // adjacency lists over building indices
  std::vector<CommunityRecord> communities;
};

struct StateCheck {
  bool ok = true;
  std::string bullet;

  explicit operator bool() const { return ok; }
};

struct Province {
  std::vector<int> members;  // building indices
  int type = 0;
  VertexSet framework;
  QuasiBoundCert framework_cert;
  FatModel framework_model;
  int model_ell = 0;
};

struct Government {
  std::vector<Province> provinces;
  std::vector<int> rebels;  // building indices, ascending

  // Stronghold order: provinces first (their frameworks), then rebels.
  std::vector<VertexSet> strongholds;
  VoronoiResult locals;
  std::vector<std::vector<int>> talk;  // talk graph over stronghold indices

  int stronghold_count() const { return static_cast<int>(strongholds.size()); }
  int rebel_stronghold(int rebel_pos) const {
    return static_cast<int>(provinces.size()) + rebel_pos;
  }
};

struct Cabal {
  std::vector<int> members;          // stronghold indices of the rebels in C
  std::vector<int> leaders;          // stronghold indices (forts), at most two
  std::vector<std::vector<int>> leading_networks;
  int j = 0;                         // province type of the fifth bullet
  std::vector<int> provinces;        // three type-j province indices
};

/// Induced path joining two buildings, remote from all others, with
/// geodesic end segments of length c.
struct Passage {
  int from = -1, to = -1;  // building indices
  LambdaPath path;         // oriented from `from` to `to`
};

struct CastleMove {
  std::vector<int> tips;     // exactly three fort indices
  std::vector<int> hub;      // hub building indices (one fort, or a community)
  std::vector<Passage> passages;  // first three incident with the tips
  VertexSet w;
  VertexSet z;
  QuasiBoundCert z_cert;
};

struct AuditEntry {
  int century = 0;
  std::string op;
  std::string detail;
};

struct Witness {
  int ell = 0;
  FatModel model;
};

struct PipelineOutcome {
  bool is_witness = false;
  QuasiBoundCert certificate;
  std::optional<Witness> witness;
  std::vector<AuditEntry> audit;
};

/// Structure report over the rebels (or all house/fort members) of a realm:
/// the degree bounds of the contact-graph facts and the interval numbering,
/// with any violating configuration surfaced for the move finder.
struct StructureReport {
  // One semiadjoin chain per adjoin-connected component holding a fort.
  std::vector<std::vector<int>> fort_chains;  // building indices in chain order
  std::vector<char> chain_cycle;
  std::vector<std::pair<int, int>> semiadjoin_pairs;
  bool ok = true;
  std::string violation;
  std::vector<int> violating_forts;  // configuration seed when !ok
};

/// The century state machine. Holds the ambient graph, tie-breaker and
/// schedule; states are passed explicitly so callers can inspect them.
class Pipeline {
 public:
  Pipeline(const Graph& g, TieBreaker tb, Schedule sched);

  const Schedule& schedule() const { return sched_; }
  const std::vector<AuditEntry>& audit() const { return audit_; }

  /// Greedy maximal d0-scattered set of singleton forts.
  RealmState initial_society();

  StateCheck verify_society(const RealmState& s) const;
  StateCheck verify_realm(const RealmState& s) const;

  /// House-growth saturation: absorbs a boundary vertex whenever separation
  /// holds and no Voronoi cell changes, then materializes the realm records.
  RealmState society_to_realm(RealmState s);

  /// All verified passages between adjoining house/fort pairs.
  std::vector<Passage> find_passages(const RealmState& s, long long max_len = -1) const;

  StructureReport classify_rebel_structure(const RealmState& s,
                                           const std::vector<int>& members) const;

  std::optional<CastleMove> find_castle_move(const RealmState& s) const;

  /// Applies a castle move; returns a witness when the new castle would
  /// reach rank ell.
  std::variant<RealmState, Witness> apply_castle_move(const RealmState& s,
                                                      const CastleMove& move);

  Government primordial_government(const RealmState& s) const;
  StateCheck verify_government(const RealmState& s, const Government& gov) const;

  /// Local partition, talk relation and networks live on the Government.
  bool talks_to(const Government& gov, int stronghold_a, int stronghold_b) const;

  std::optional<Cabal> find_cabal(const RealmState& s, const Government& gov) const;

  std::variant<Government, Witness> apply_revolution(const RealmState& s,
                                                     const Government& gov,
                                                     const Cabal& cabal);

  std::variant<Government, Witness> stabilize_government(const RealmState& s, Government gov);

  /// Rebels become houses, frameworks become forts; builds the next
  /// century's society with its community certificates.
  RealmState advance_century(const RealmState& s, const Government& gov);

  /// Global certificate at century ell (all members houses).
  QuasiBoundCert extract_certificate(const RealmState& s);

  PipelineOutcome run();

  /// Quasi-line-width certificate for the union of the T0-cells of a realm,
  /// by the contact-graph composition; cached per state.
  QuasiBoundCert build_cell_union_cert(const RealmState& s) const;

 private:
  void refresh_state(RealmState& s, bool rebuild_boundary_covers) const;
  void log(int century, const std::string& op, const std::string& detail);

  std::optional<Passage> passage_between(const RealmState& s, int i, int j,
                                         long long max_len) const;
  StateCheck verify_passage(const RealmState& s, const Passage& p, long long max_len) const;

  StateCheck verify_common_bullets(const RealmState& s) const;

  FatModel build_claw_model(const VertexSet& region,
                            const std::array<const FatModel*, 3>& models, int t);

  void build_government_caches(const RealmState& s, Government& gov) const;
  bool dangerous(const Government& gov, const std::vector<int>& rebel_strongholds, int* j_out,
                 std::vector<int>* provinces_out) const;

  const Graph& g_;
  TieBreaker tb_;
  Schedule sched_;
  std::vector<AuditEntry> audit_;
};

}  // namespace cwl
