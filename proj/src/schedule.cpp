#include "cwl/schedule.hpp"

#include <stdexcept>

namespace cwl {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw GraphError("schedule: constants overflow 64 bits; reduce ell or c");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw GraphError("schedule: constants overflow 64 bits; reduce ell or c");
  return r;
}

long long pow3(long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) r = checked_mul(r, 3);
  return r;
}

}  // namespace

long long Schedule::delta_at(int k, int i) const {
  if (k < 0 || k > ell || i < 0 || i > 2 * ell)
    throw GraphError("schedule: delta index out of range");
  return delta[k][i];
}

bool Schedule::cross_century_monotone() const {
  for (int k = 0; k < ell; ++k)
    if (delta[k][2 * ell] < delta[k + 1][2 * k]) return false;
  return true;
}

void validate_schedule(const Schedule& s) {
  if (s.c < 2) throw GraphError("schedule: requires c >= 2");
  if (s.ell < 1) throw GraphError("schedule: requires ell >= 1");
  if (static_cast<int>(s.delta.size()) != s.ell + 1 ||
      static_cast<int>(s.alpha.size()) != s.ell + 1 ||
      static_cast<int>(s.beta.size()) != s.ell + 1)
    throw GraphError("schedule: table sizes must be ell+1");
  for (int k = 0; k <= s.ell; ++k) {
    if (static_cast<int>(s.delta[k].size()) != 2 * s.ell + 1)
      throw GraphError("schedule: delta row size must be 2*ell+1");
    for (int i = std::max(0, 2 * k - 2); i < 2 * s.ell; ++i)
      if (s.delta[k][i] < 2 * s.delta[k][i + 1] + 2)
        throw GraphError("schedule: delta(" + std::to_string(i) + ") < 2*delta(" +
                         std::to_string(i + 1) + ")+2 at century " + std::to_string(k));
    for (int i = 0; i <= 2 * s.ell; ++i)
      if (s.delta[k][i] > s.d0)
        throw GraphError("schedule: delta exceeds d0 at century " + std::to_string(k));
    if (s.delta[k][2 * s.ell] < 5 * s.c)
      throw GraphError("schedule: delta(2*ell) < 5c at century " + std::to_string(k));
    if (s.alpha[k] <= 0 || s.beta[k] <= 0)
      throw GraphError("schedule: budgets must be positive");
  }
}

Schedule make_schedule(long long c, int ell, ScheduleMode mode) {
  if (mode == ScheduleMode::Custom)
    throw GraphError("schedule: custom mode needs explicit tables");
  Schedule s;
  s.c = c;
  s.ell = ell;
  s.mode = mode;
  if (c < 2) throw GraphError("schedule: requires c >= 2");
  if (ell < 1) throw GraphError("schedule: requires ell >= 1");

  s.delta.assign(ell + 1, std::vector<long long>(2 * ell + 1, 0));
  if (mode == ScheduleMode::Paper) {
    s.d0 = checked_mul(5 * c, pow3(2LL * ell * (ell + 1)));
    for (int k = 0; k <= ell; ++k)
      for (int i = 0; i <= 2 * ell; ++i)
        s.delta[k][i] = checked_mul(5 * c, pow3(2LL * ell * (ell + 1 - k) - i));
  } else {
    std::vector<long long> row(2 * ell + 1);
    row[2 * ell] = 5 * c;
    for (int i = 2 * ell - 1; i >= 0; --i) row[i] = checked_add(checked_mul(2, row[i + 1]), 2);
    for (int k = 0; k <= ell; ++k) s.delta[k] = row;
    s.d0 = row[0];
  }

  s.alpha.assign(ell + 1, 1);
  s.beta.assign(ell + 1, 1);
  for (int k = 0; k < ell; ++k) {
    s.alpha[k + 1] = checked_mul(checked_mul(7LL * (ell - k), pow3(ell - k)), s.alpha[k]);
    s.beta[k + 1] = checked_add(s.beta[k], checked_mul(2LL * (ell - k + 1), s.d0));
  }
  validate_schedule(s);
  return s;
}

Schedule make_custom_schedule(long long c, int ell, long long d0,
                              std::vector<std::vector<long long>> delta,
                              std::vector<long long> alpha, std::vector<long long> beta) {
  Schedule s;
  s.c = c;
  s.ell = ell;
  s.d0 = d0;
  s.mode = ScheduleMode::Custom;
  s.delta = std::move(delta);
  s.alpha = std::move(alpha);
  s.beta = std::move(beta);
  validate_schedule(s);
  return s;
}

}  // namespace cwl
