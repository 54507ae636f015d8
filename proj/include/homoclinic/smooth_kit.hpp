#pragma once

// Cutoff profiles and the wiggle parameter schedule.
//
//   theta(s) = exp(-1/s) for s > 0, 0 otherwise
//   bump(t)  = theta(1-t) / (theta(1-t) + theta(t))     1 on t<=0, 0 on t>=1
//   flat(t)  = theta(t) / (theta(t) + theta(1-t))       0 on t<=0, 1 on t>=1
//   plateau(t) = bump(2|t| - 1)                         1 on |t|<=1/2, 0 on |t|>=1
//
// The plateau values are exact (the quotient is 1.0/0.0 literally), not
// approximations.  All profiles are templated so that the vector field can be
// differentiated with dual numbers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "homoclinic/dual.hpp"
#include "homoclinic/errors.hpp"

namespace homoclinic {

inline constexpr double kLambda = 6.0 / 5.0;

template <typename T>
[[nodiscard]] T theta(const T& s) {
  using std::exp;
  if (value(s) <= 0.0) return T(0.0);
  return exp(-1.0 / s);
}

/// psi: 1 for t <= 0, 0 for t >= 1, strictly decreasing in between.
template <typename T>
[[nodiscard]] T bump(const T& t) {
  if (value(t) <= 0.0) return T(1.0);
  if (value(t) >= 1.0) return T(0.0);
  const T a = theta(1.0 - t);
  const T b = theta(t);
  return a / (a + b);
}

/// alpha: 0 for t <= 0, 1 for t >= 1, nondecreasing.  The formula does not
/// depend on r; |alpha'| / alpha^(1-1/r) -> 0 as t -> 0+ for every finite r.
template <typename T>
[[nodiscard]] T flat_cutoff_profile(const T& t) {
  if (value(t) <= 0.0) return T(0.0);
  if (value(t) >= 1.0) return T(1.0);
  const T a = theta(t);
  const T b = theta(1.0 - t);
  return a / (a + b);
}

[[nodiscard]] inline double flat_cutoff(double t, double r) {
  if (!(r >= 1.0)) throw DomainError("flat_cutoff: smoothness order r must be >= 1");
  return flat_cutoff_profile(t);
}

/// beta: 1 for |t| <= 1/2, 0 for |t| >= 1, monotone on each half-line.
template <typename T>
[[nodiscard]] T plateau_cutoff(const T& t) {
  using std::abs;
  return bump(2.0 * abs(t) - 1.0);
}

// ---------------------------------------------------------------------------

struct ScheduleEntry {
  int n{0};
  double a{0.0};    // 1 + 1/n^2
  double b{0.0};    // a + ell
  double ell{0.0};  // 1/n^4
  int T{0};
  std::int64_t N{0};  // floor(Lambda^(T/r) / n^5)
};

/// Wiggle schedule: rectangles R_n = [a_n,b_n] x [-ell_n/N_n, ell_n/N_n] in
/// corner-chart coordinates, for n >= n0.
struct PerturbationSchedule {
  int n0{2};
  double r{1.0};
  double Lambda{kLambda};
  /// Explicit T_n values; any n missing here uses T0 * n.
  std::map<int, int> T_explicit{};
  int T0{20};
  /// The exponent variant has no sine wiggles; N_n is then left at 0.
  bool with_wiggles{true};

  [[nodiscard]] int T_of(int n) const {
    if (auto it = T_explicit.find(n); it != T_explicit.end()) return it->second;
    return T0 * n;
  }
};

[[nodiscard]] inline std::int64_t wiggle_count(double Lambda, int T, double r, int n) {
  const long double lam = (Lambda == kLambda) ? 6.0L / 5.0L : static_cast<long double>(Lambda);
  const long double v = std::pow(lam, static_cast<long double>(T) / r) / std::pow(static_cast<long double>(n), 5);
  if (v >= static_cast<long double>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError("wiggle count N_n overflows a 64-bit integer");
  }
  return static_cast<std::int64_t>(std::floor(v));
}

/// Schedule entry for index n.  Throws ConfigError when n < n0 or N_n < 2.
[[nodiscard]] inline ScheduleEntry schedule_entry(const PerturbationSchedule& s, int n) {
  if (n < s.n0) throw ConfigError("schedule_entry: n < n0");
  if (!(s.r >= 1.0)) throw ConfigError("schedule: r must be >= 1");
  ScheduleEntry e;
  e.n = n;
  const double n2 = static_cast<double>(n) * n;
  e.a = 1.0 + 1.0 / n2;
  e.ell = 1.0 / (n2 * n2);
  e.b = e.a + e.ell;
  e.T = s.T_of(n);
  if (!s.with_wiggles) return e;
  e.N = wiggle_count(s.Lambda, e.T, s.r, n);
  if (e.N < 2) {
    throw ConfigError("schedule: N_" + std::to_string(n) + " = " + std::to_string(e.N) +
                      " < 2 (T_n too small for this r)");
  }
  return e;
}

/// Largest T for which Lambda^(-T-1)/100 stays a normal double.
[[nodiscard]] inline int max_representable_T(double Lambda = kLambda) {
  const double lim = std::log(std::numeric_limits<double>::min() * 100.0);
  return static_cast<int>(std::floor(-lim / std::log(Lambda))) - 1;
}

/// Validates the schedule on [n0, n_max]: N_n >= 2, T_n strictly increasing,
/// no underflow of Lambda^(-T_n-1), rectangles pairwise disjoint.
inline std::vector<ScheduleEntry> validate_schedule(const PerturbationSchedule& s, int n_max) {
  if (s.n0 < 2) throw ConfigError("schedule: n0 must be >= 2");
  if (n_max < s.n0) throw ConfigError("schedule: n_max < n0");
  if (s.Lambda != kLambda) throw ConfigError("schedule: Lambda is fixed to 6/5");
  std::vector<ScheduleEntry> out;
  const int t_cap = max_representable_T(s.Lambda);
  for (int n = s.n0; n <= n_max; ++n) {
    ScheduleEntry e = schedule_entry(s, n);
    if (e.T > t_cap) {
      throw ConfigError("schedule: Lambda^(-T_" + std::to_string(n) + "-1) underflows double precision");
    }
    if (!out.empty()) {
      const ScheduleEntry& prev = out.back();
      if (e.T <= prev.T) throw ConfigError("schedule: T_n must be strictly increasing");
      // a_n decreases with n; R_n lies strictly left of R_{n-1}.
      if (!(e.b < prev.a)) throw ConfigError("schedule: rectangles R_n overlap");
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace homoclinic
