#pragma once

// Wiggle perturbations placed on the stable side of each affine corner.
//
// In corner-chart coordinates (x,y) in [0,2]^2 the entropy variant is
//
//   g(x,y) = (x, y + alpha_n(x,y) Lambda^-T_n (2 + sin(pi N_n (x - a_n) / ell_n)))
//   alpha_n = alpha(N_n (x-a_n)/ell_n) alpha(N_n (b_n-x)/ell_n) beta(N_n y / ell_n)
//
// on R_n = [a_n,b_n] x [-ell_n/N_n, ell_n/N_n], and the exponent variant is
//
//   gbar(x,y) = (x, y + abar_n(x,y) exp(-(log n)^2) cos(10 pi n^4 x))
//   abar_n = alpha(10 n^4 (x-a_n)) alpha(10 n^4 (b_n-x)) beta(n^4 y)
//
// on [a_n,b_n] x [-1/n^4, 1/n^4].  The perturbed map is f0 o g on the four
// rotated copies of each region and f0 elsewhere.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homoclinic/base_map.hpp"
#include "homoclinic/dual.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/geometry.hpp"
#include "homoclinic/smooth_kit.hpp"

namespace homoclinic {

enum class Variant { kNone, kEntropy, kExponent };

[[nodiscard]] inline Variant parse_variant(const std::string& s) {
  if (s == "none" || s == "f0") return Variant::kNone;
  if (s == "entropy" || s == "g") return Variant::kEntropy;
  if (s == "exponent" || s == "gbar") return Variant::kExponent;
  throw ConfigError("unknown perturbation variant '" + s + "' (expected none, entropy or exponent)");
}

[[nodiscard]] inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::kNone: return "none";
    case Variant::kEntropy: return "entropy";
    default: return "exponent";
  }
}

struct PerturbedMapConfig {
  Params base{};
  PerturbationSchedule schedule{};
  Variant variant{Variant::kEntropy};
  int n_max{8};
};

/// One active region: the schedule entry plus the derived box and amplitude.
struct WiggleRegion {
  ScheduleEntry entry{};
  double amplitude{0.0};  // Lambda^-T_n (g) or exp(-(log n)^2) (gbar)
  double x_lo{0.0}, x_hi{0.0};
  double y_half{0.0};  // half-height of the support box
};

struct RegionHit {
  int n{0};
  int corner{0};
};

/// The perturbed map f_{>=n0}, truncated to n in [n0, n_max].  Construction
/// validates the schedule; the object is immutable afterwards.
class PerturbedMap {
 public:
  explicit PerturbedMap(PerturbedMapConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.base.validate();
    if (cfg_.n_max < cfg_.schedule.n0) throw ConfigError("perturbation: n_max < n0");
    if (cfg_.variant == Variant::kNone) return;
    cfg_.schedule.with_wiggles = cfg_.variant == Variant::kEntropy;
    const std::vector<ScheduleEntry> entries = validate_schedule(cfg_.schedule, cfg_.n_max);
    for (const ScheduleEntry& e : entries) {
      WiggleRegion r;
      r.entry = e;
      r.x_lo = e.a;
      r.x_hi = e.b;
      if (cfg_.variant == Variant::kEntropy) {
        r.amplitude = std::pow(cfg_.schedule.Lambda, -static_cast<double>(e.T));
        r.y_half = e.ell / static_cast<double>(e.N);
      } else {
        const double ln = std::log(static_cast<double>(e.n));
        r.amplitude = std::exp(-ln * ln);
        r.y_half = e.ell;  // 1/n^4
      }
      regions_.push_back(r);
    }
  }

  [[nodiscard]] const PerturbedMapConfig& config() const { return cfg_; }
  [[nodiscard]] const Params& params() const { return cfg_.base; }
  [[nodiscard]] const std::vector<WiggleRegion>& regions() const { return regions_; }

  [[nodiscard]] const WiggleRegion& region(int n) const {
    for (const WiggleRegion& r : regions_) {
      if (r.entry.n == n) return r;
    }
    throw DomainError("perturbation: n = " + std::to_string(n) + " is not an active region");
  }

  /// Chart-coordinate membership in the closed support box of region n.
  [[nodiscard]] bool in_box(const WiggleRegion& r, const DiskPoint& u) const {
    return u.x >= r.x_lo && u.x <= r.x_hi && u.y >= -r.y_half && u.y <= r.y_half;
  }

  [[nodiscard]] std::optional<RegionHit> region_of(const DiskPoint& p) const {
    // The boxes straddle the stable side of each corner (chart y < 0 is
    // outside the square), so every corner chart is tested.
    for (int i = 0; i < 4 && !regions_.empty(); ++i) {
      const DiskPoint u = CornerFrame{i}.to_chart(p);
      if (u.x < 1.0 || u.x > 2.0 || std::abs(u.y) > 1.0) continue;
      for (const WiggleRegion& r : regions_) {
        if (in_box(r, u)) return RegionHit{r.entry.n, i};
      }
    }
    return std::nullopt;
  }

  /// Vertical displacement phi(x,y) of the perturbation in chart coordinates.
  template <typename T>
  [[nodiscard]] T displacement(const WiggleRegion& r, const Point2<T>& u) const {
    using std::cos;
    using std::sin;
    const ScheduleEntry& e = r.entry;
    if (cfg_.variant == Variant::kEntropy) {
      const double k = static_cast<double>(e.N) / e.ell;
      const T cut = flat_cutoff_profile(k * (u.x - e.a)) * flat_cutoff_profile(k * (e.b - u.x)) *
                    plateau_cutoff(k * u.y);
      if (value(cut) == 0.0) return T(0.0);
      return cut * r.amplitude * (2.0 + sin(std::numbers::pi * k * (u.x - e.a)));
    }
    const double n4 = 1.0 / e.ell;
    const T cut = flat_cutoff_profile(10.0 * n4 * (u.x - e.a)) * flat_cutoff_profile(10.0 * n4 * (e.b - u.x)) *
                  plateau_cutoff(n4 * u.y);
    if (value(cut) == 0.0) return T(0.0);
    return cut * r.amplitude * cos(10.0 * std::numbers::pi * n4 * u.x);
  }

  /// g (or gbar) on chart points of region n.
  [[nodiscard]] DiskPoint apply_chart(const WiggleRegion& r, const DiskPoint& u) const {
    if (!in_box(r, u)) throw DomainError("perturbation: chart point outside the support of R_n");
    return {u.x, u.y + displacement(r, u)};
  }

  /// Chart Jacobian of g on region n.
  [[nodiscard]] Mat2 jacobian_chart(const WiggleRegion& r, const DiskPoint& u) const {
    const Dual phi = displacement(r, Point2<Dual>{Dual(u.x, 1.0, 0.0), Dual(u.y, 0.0, 1.0)});
    return {1.0, 0.0, phi.d[0], 1.0 + phi.d[1]};
  }

  /// The perturbation itself in disk coordinates (identity off the regions).
  [[nodiscard]] DiskPoint perturb(const DiskPoint& p) const {
    const auto hit = region_of(p);
    if (!hit) return p;
    const CornerFrame frame{hit->corner};
    const WiggleRegion& r = region(hit->n);
    const DiskPoint u = frame.to_chart(p);
    const double phi = displacement(r, u);
    if (phi == 0.0) return p;
    return frame.from_chart({u.x, u.y + phi});
  }

  [[nodiscard]] DiskPoint operator()(const DiskPoint& p) const { return f0(perturb(p), cfg_.base); }

  /// Image and Jacobian of the perturbed map.
  [[nodiscard]] MapJet jet(const DiskPoint& p) const {
    const auto hit = region_of(p);
    if (!hit) return f0_jet(p, cfg_.base);
    const CornerFrame frame{hit->corner};
    const WiggleRegion& r = region(hit->n);
    const DiskPoint u = frame.to_chart(p);
    const Mat2 dg = jacobian_chart(r, u);
    const double phi = displacement(r, u);
    const DiskPoint q = phi == 0.0 ? p : frame.from_chart({u.x, u.y + phi});
    const MapJet inner = f0_jet(q, cfg_.base);
    const Mat2 c = frame.chart_linear();
    return {inner.image, inner.jacobian * (c.inverse() * dg * c)};
  }

  [[nodiscard]] TangentVector tangent(const DiskPoint& p, const TangentVector& v) const {
    const MapJet j = jet(p);
    const DiskPoint w = j.jacobian * v.vec();
    return {w.x, w.y, j.image};
  }

 private:
  PerturbedMapConfig cfg_;
  std::vector<WiggleRegion> regions_;
};

// Free-function forms.

[[nodiscard]] inline std::optional<RegionHit> region_of(const DiskPoint& p, const PerturbedMap& f) {
  return f.region_of(p);
}

/// Entropy wiggle g on chart points of R_n.
[[nodiscard]] inline DiskPoint g(const DiskPoint& u, int n, const PerturbedMap& f) {
  if (f.config().variant != Variant::kEntropy) throw ConfigError("g: map is not the entropy variant");
  return f.apply_chart(f.region(n), u);
}

/// Exponent wiggle gbar on chart points of its support box.
[[nodiscard]] inline DiskPoint gbar(const DiskPoint& u, int n, const PerturbedMap& f) {
  if (f.config().variant != Variant::kExponent) throw ConfigError("gbar: map is not the exponent variant");
  return f.apply_chart(f.region(n), u);
}

[[nodiscard]] inline DiskPoint f_perturbed(const DiskPoint& p, const PerturbedMap& f) {
  if (!in_disk(p)) throw DomainError("f_perturbed: point outside D");
  return f(p);
}

[[nodiscard]] inline TangentVector df_perturbed(const DiskPoint& p, const TangentVector& v, const PerturbedMap& f) {
  if (!in_disk(p)) throw DomainError("df_perturbed: point outside D");
  return f.tangent(p, v);
}

// ---------------------------------------------------------------------------
// Derivative bound |d f_2 / dx| <= |f_2|^(1-1/r) on the wiggle regions, in
// chart coordinates, where f = f0 o g acts as (x/K, Lambda (y + phi)).

struct MajderReport {
  double max_ratio{0.0};
  DiskPoint argmax{};  // chart coordinates
  int argmax_n{0};
  std::int64_t samples{0};
  bool pass{false};
};

[[nodiscard]] inline double majder_ratio(const PerturbedMap& f, const WiggleRegion& r, const DiskPoint& u) {
  const double lam = f.config().base.Lambda;
  const Dual phi = f.displacement(r, Point2<Dual>{Dual(u.x, 1.0, 0.0), Dual(u.y, 0.0, 1.0)});
  const double num = std::abs(lam * phi.d[0]);
  if (num == 0.0) return 0.0;
  const double f2 = std::abs(lam * (u.y + phi.v));
  const double expo = 1.0 - 1.0 / f.config().schedule.r;
  const double den = expo == 0.0 ? 1.0 : std::pow(f2, expo);
  return num / den;
}

/// Evaluates the ratio on the given chart sample points (paired with their
/// region index).
[[nodiscard]] inline MajderReport check_majder(const PerturbedMap& f,
                                               const std::vector<std::pair<int, DiskPoint>>& samples) {
  MajderReport rep;
  for (const auto& [n, u] : samples) {
    const WiggleRegion& r = f.region(n);
    if (!f.in_box(r, u)) throw DomainError("check_majder: sample outside R_n");
    const double q = majder_ratio(f, r, u);
    if (q > rep.max_ratio || rep.samples == 0) {
      rep.max_ratio = q;
      rep.argmax = u;
      rep.argmax_n = n;
    }
    ++rep.samples;
  }
  rep.pass = rep.max_ratio <= 1.0;
  return rep;
}

// ---------------------------------------------------------------------------
// C^r-distance proxy: max over R_n of |d^s (g - id)| for s = 0..ceil(r).
// Order 0 and 1 are exact (dual numbers); higher orders use central
// differences of the first derivative at scale 1e-4 of the wiggle period.

struct CrTerm {
  int n{0};
  std::vector<double> order_norms;  // index s = 0..ceil(r)
  double proxy{0.0};                // max over s
};

[[nodiscard]] inline std::vector<CrTerm> cr_distance_trend(const PerturbedMap& f, int grid = 400) {
  std::vector<CrTerm> out;
  const int top = static_cast<int>(std::ceil(f.config().schedule.r));
  for (const WiggleRegion& r : f.regions()) {
    CrTerm term;
    term.n = r.entry.n;
    term.order_norms.assign(static_cast<std::size_t>(top) + 1, 0.0);
    const double period = f.config().variant == Variant::kEntropy ? 2.0 * r.entry.ell / static_cast<double>(r.entry.N)
                                                                   : 1.0 / (5.0 * static_cast<double>(r.entry.n * r.entry.n) *
                                                                            static_cast<double>(r.entry.n * r.entry.n));
    const double h = 1e-4 * period;
    auto dphi = [&](double x, double y) {
      const Dual d = f.displacement(r, Point2<Dual>{Dual(x, 1.0, 0.0), Dual(y, 0.0, 1.0)});
      return std::array<double, 3>{d.v, d.d[0], d.d[1]};
    };
    for (int a = 0; a <= grid; ++a) {
      const double x = r.x_lo + (r.x_hi - r.x_lo) * a / grid;
      for (int b = 0; b <= 8; ++b) {
        const double y = -r.y_half + 2.0 * r.y_half * b / 8;
        const auto d0 = dphi(x, y);
        term.order_norms[0] = std::max(term.order_norms[0], std::abs(d0[0]));
        if (top >= 1) term.order_norms[1] = std::max({term.order_norms[1], std::abs(d0[1]), std::abs(d0[2])});
        // Higher orders: iterated central differences of d/dx along x.
        for (int s = 2; s <= top; ++s) {
          double acc = 0.0;
          const int m = s - 1;
          for (int k = 0; k <= m; ++k) {
            const double binom = std::tgamma(m + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0));
            const double sign = ((m - k) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom * dphi(x + (k - 0.5 * m) * h, y)[1];
          }
          term.order_norms[static_cast<std::size_t>(s)] =
              std::max(term.order_norms[static_cast<std::size_t>(s)], std::abs(acc) / std::pow(h, m));
        }
      }
    }
    term.proxy = *std::max_element(term.order_norms.begin(), term.order_norms.end());
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace homoclinic
