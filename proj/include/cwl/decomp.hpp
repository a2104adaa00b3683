#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cwl/graph.hpp"

namespace cwl {

/// Ordered bag sequence over some host vertex set.
struct LineDecomposition {
  std::vector<VertexSet> bags;
};

struct DecompCheck {
  bool ok = true;
  std::string violation;  // first violated axiom when !ok

  explicit operator bool() const { return ok; }
};

/// Checks the three line-decomposition axioms for G[subject]: bags cover the
/// subject, every induced edge lies inside some bag, and each vertex's bag
/// positions form an interval. Bags must stay inside the subject.
DecompCheck verify_line_decomposition(const Graph& g, const VertexSet& subject,
                                      const LineDecomposition& d);

/// Max bag size minus one. Throws on an empty bag list.
int decomposition_width(const LineDecomposition& d);

struct PathwidthResult {
  int width = 0;
  LineDecomposition decomp;
};

/// Exact path-width by the vertex-separation subset DP, with a witnessing
/// decomposition. Only intended for small graphs; throws above the cap.
PathwidthResult exact_pathwidth(const Graph& g, int cap = 16);

/// Center set witnessing quasi-size at most (k, r).
struct QuasiCenter {
  VertexSet centers;
  long long k = 0;
  long long r = 0;
};

/// True iff |centers| <= k and every vertex of X is within ambient distance
/// r of the centers. Vacuous for empty X.
bool verify_quasi_size(const Graph& g, const VertexSet& xs, const QuasiCenter& qc);

struct QuasiCenterSearch {
  QuasiCenter center;
  bool exact = false;  // false when found by the greedy cover heuristic
};

/// Searches for at most k centers covering X within radius r. Exact subset
/// search over small candidate pools, otherwise greedy set cover; any
/// returned answer verifies, but greedy may miss solutions.
std::optional<QuasiCenterSearch> find_quasi_center(const Graph& g, const VertexSet& xs,
                                                   long long k, long long r);

/// Checkable form of "subject has quasi-bound at most (a, b)": a line
/// decomposition of G[subject] whose bags each carry at most `a` centers at
/// radius `b`, plus a center set for bd(subject). The boundary side carries
/// its own claimed parameters (they default to (a, b) on input).
struct QuasiBoundCert {
  VertexSet subject;
  LineDecomposition decomp;
  std::vector<VertexSet> bag_centers;
  long long a = 0;
  long long b = 0;
  VertexSet boundary_centers;
  long long boundary_a = 0;
  long long boundary_b = 0;
};

DecompCheck verify_quasi_bound_cert(const Graph& g, const QuasiBoundCert& cert);

/// Cert verifies and both sides fit within (a_limit, b_limit).
DecompCheck cert_meets(const Graph& g, const QuasiBoundCert& cert, long long a_limit,
                       long long b_limit);

/// Single-bag certificate for a small set: the bag is the set itself and the
/// centers are the given ones (defaulting to the set).
QuasiBoundCert trivial_cert(const Graph& g, const VertexSet& subject, long long a, long long b);

struct CompositionPiece {
  VertexSet verts;
  QuasiBoundCert cert;
};

/// Composition of disjoint quasi-bounded pieces along an outer decomposition
/// of the union of their boundaries whose bags are unions of at most k piece
/// boundaries. Output parameters are exactly ((k+1)*a, b) on the line-width
/// side, with a = max piece a and b = max piece b. Splices each piece's
/// decomposition between a duplicated outer position, per the composition
/// construction.
QuasiBoundCert compose_line_decompositions(const Graph& g,
                                           const std::vector<CompositionPiece>& pieces,
                                           const LineDecomposition& outer, int k);

/// Restriction of a certificate to subject ∩ keep. Bag centers survive;
/// boundary data is cleared (the caller owns the new boundary claim).
QuasiBoundCert restrict_cert(const QuasiBoundCert& cert, const VertexSet& keep);

/// Concatenation for pieces with no edges between them (checked). Bag
/// parameters become the maxima; boundary data is the union of the pieces'.
QuasiBoundCert concat_certs(const Graph& g, const std::vector<QuasiBoundCert>& certs);

/// Adds `extra` (covered by `extra_centers` within `extra_radius`) to every
/// bag of the certificate; with no bags, `extra` becomes the only bag.
QuasiBoundCert pad_cert_with_set(const Graph& g, const QuasiBoundCert& cert,
                                 const VertexSet& extra, const VertexSet& extra_centers,
                                 long long extra_radius);

}  // namespace cwl
