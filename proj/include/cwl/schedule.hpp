#pragma once

#include <string>
#include <vector>

#include "cwl/graph.hpp"

namespace cwl {

enum class ScheduleMode { Paper, Minimal, Custom };

/// Per-century space requirements and budgets for the pipeline.
///
/// Paper mode realizes the closed forms d0 = 5c*3^(2l(l+1)) and
/// delta_k(i) = 5c*3^(2l(l+1-k)-i); minimal mode keeps one desk-scale table
/// delta(2l) = 5c, delta(i) = 2*delta(i+1)+2 shared by every century with
/// d0 = delta(0). Budgets follow alpha_{k+1} = 7(l-k)3^(l-k) alpha_k and
/// beta_{k+1} = beta_k + 2(l-k+1) d0 from (1, 1) in both modes.
struct Schedule {
  long long c = 2;
  int ell = 1;
  long long d0 = 0;
  ScheduleMode mode = ScheduleMode::Paper;
  std::vector<std::vector<long long>> delta;  // delta[k][i], 0<=k<=ell, 0<=i<=2*ell
  std::vector<long long> alpha;               // alpha[k], 0<=k<=ell
  std::vector<long long> beta;

  long long delta_at(int k, int i) const;

  long long final_a() const { return alpha[ell]; }
  long long final_b() const { return beta[ell] - d0; }

  /// The cross-century chain delta_k(2l) >= delta_{k+1}(2k) holds in paper
  /// mode but not for the shared minimal table; the pipeline then relies on
  /// the sharper per-pair accounting and logs this flag.
  bool cross_century_monotone() const;
};

Schedule make_schedule(long long c, int ell, ScheduleMode mode);

/// Builds from explicit tables and validates every axiom.
Schedule make_custom_schedule(long long c, int ell, long long d0,
                              std::vector<std::vector<long long>> delta,
                              std::vector<long long> alpha, std::vector<long long> beta);

/// Throws on any space-requirement or budget axiom violation.
void validate_schedule(const Schedule& s);

}  // namespace cwl
