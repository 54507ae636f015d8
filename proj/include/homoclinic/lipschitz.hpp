#pragma once

// Bi-Lipschitz examples on a family of disjoint disks.
//
// Each disk carries a rescaled copy of a model map T of the unit disk that
// is the identity outside radius 1/2.  The model is a counter-rotating
// linked twist: two annular twists centred at (-d, 0) and (d, 0), each
// rotating the circle of radius rho about its centre by
//   alpha(rho) = c log(rho / r_in)   for r_in <= rho <= r_out,
// with r_in = r_out e^{-2 pi / c}.  The angle runs from 0 to a full turn, so
// both boundary circles are fixed pointwise and the twist is a
// homeomorphism.  Its derivative is a shear of constant strength c in polar
// frames, which bounds the Lipschitz constants; on the overlap of the two
// annuli the opposite shears make the composition hyperbolic, with entropy
// increasing in c.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "homoclinic/entropy.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/geometry.hpp"
#include "homoclinic/parallel.hpp"
#include "homoclinic/rng.hpp"

namespace homoclinic {

struct TwistModel {
  double shear{1.0};    // c
  double offset{0.13};  // d
  double r_out{0.30};

  [[nodiscard]] double r_in() const { return r_out * std::exp(-2.0 * std::numbers::pi / shear); }

  void validate() const {
    if (!(shear > 0.0) || !std::isfinite(shear)) throw ConfigError("twist model: shear must be positive");
    if (!(offset >= 0.0) || !(r_out > 0.0) || !(offset + r_out < 0.5)) {
      throw ConfigError("twist model: annuli must lie inside the disk of radius 1/2");
    }
  }

  /// Rotation angle of the twist at distance rho from its centre.
  [[nodiscard]] double angle(double rho) const {
    const double ri = r_in();
    if (rho <= ri || rho >= r_out) return 0.0;
    return shear * std::log(rho / ri);
  }

  [[nodiscard]] DiskPoint twist(const DiskPoint& p, const DiskPoint& centre, double sign) const {
    const double qx = p.x - centre.x;
    const double qy = p.y - centre.y;
    const double a = sign * angle(std::hypot(qx, qy));
    if (a == 0.0) return p;
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    return {centre.x + ca * qx - sa * qy, centre.y + sa * qx + ca * qy};
  }

  [[nodiscard]] DiskPoint operator()(const DiskPoint& u) const {
    return twist(twist(u, {-offset, 0.0}, 1.0), {offset, 0.0}, -1.0);
  }

  [[nodiscard]] DiskPoint inverse(const DiskPoint& u) const {
    return twist(twist(u, {offset, 0.0}, 1.0), {-offset, 0.0}, -1.0);
  }

  /// Lipschitz constant of one twist: norm of the shear [[1, c], [0, 1]].
  [[nodiscard]] double twist_lipschitz() const { return 0.5 * (shear + std::sqrt(shear * shear + 4.0)); }
};

// ---------------------------------------------------------------------------

enum class PatchMode { kIncreasing, kConstant };

[[nodiscard]] inline PatchMode parse_patch_mode(const std::string& s) {
  if (s == "h0" || s == "increasing") return PatchMode::kIncreasing;
  if (s == "hinf" || s == "constant") return PatchMode::kConstant;
  throw ConfigError("unknown lipschitz mode '" + s + "' (expected h0 or hinf)");
}

[[nodiscard]] inline std::string to_string(PatchMode m) { return m == PatchMode::kIncreasing ? "h0" : "hinf"; }

/// Disks B(x_i, rho_i) inside the chart [-1, 1]^2.
struct DiskFamily {
  std::vector<DiskPoint> centers;
  std::vector<double> radii;

  [[nodiscard]] std::size_t size() const { return centers.size(); }

  void validate() const {
    if (centers.empty() || centers.size() != radii.size()) throw ConfigError("disk family: need matching centers and radii");
    for (std::size_t i = 0; i < size(); ++i) {
      const DiskPoint c = centers[i];
      const double r = radii[i];
      if (!(r > 0.0)) throw ConfigError("disk family: radii must be positive");
      if (std::abs(c.x) + r > 1.0 || std::abs(c.y) + r > 1.0) throw ConfigError("disk family: disk leaves the chart");
      for (std::size_t j = 0; j < i; ++j) {
        if (!(distance(c, centers[j]) > r + radii[j])) throw ConfigError("disk family: disks must be pairwise disjoint");
      }
    }
  }
};

/// rho_i = rho0 / 2^i (i = 1..m), centres on the x-axis from the left edge
/// with gaps rho_i / 4.
[[nodiscard]] inline DiskFamily geometric_family(int m, double rho0 = 0.7) {
  if (m < 1) throw ConfigError("disk family: need at least one disk");
  DiskFamily fam;
  double x = -1.0;
  for (int i = 1; i <= m; ++i) {
    const double r = rho0 / std::ldexp(1.0, i);
    x += 0.25 * r + r;
    fam.centers.push_back({x, 0.0});
    fam.radii.push_back(r);
    x += r;
  }
  fam.validate();
  return fam;
}

/// Shears c_i: linearly increasing from c_lo to c_hi (h0) or all c_hi (hinf).
[[nodiscard]] inline std::vector<double> mode_shears(PatchMode mode, int m, double c_lo, double c_hi) {
  std::vector<double> out(static_cast<std::size_t>(m), c_hi);
  if (mode == PatchMode::kIncreasing && m > 1) {
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = c_lo + (c_hi - c_lo) * i / (m - 1);
  }
  return out;
}

/// f = chi_i o T_i o chi_i^{-1} on disk i, identity elsewhere.
class PatchedMap {
 public:
  PatchedMap(DiskFamily family, std::vector<TwistModel> models) : fam_(std::move(family)), models_(std::move(models)) {
    fam_.validate();
    if (models_.size() != fam_.size()) throw ConfigError("patched map: one model per disk");
    for (const TwistModel& t : models_) t.validate();
  }

  [[nodiscard]] const DiskFamily& family() const { return fam_; }
  [[nodiscard]] const std::vector<TwistModel>& models() const { return models_; }

  /// Index of the closed disk containing p.
  [[nodiscard]] std::optional<std::size_t> disk_of(const DiskPoint& p) const {
    for (std::size_t i = 0; i < fam_.size(); ++i) {
      if (distance(p, fam_.centers[i]) <= fam_.radii[i]) return i;
    }
    return std::nullopt;
  }

  [[nodiscard]] DiskPoint operator()(const DiskPoint& p) const { return apply(p, false); }
  [[nodiscard]] DiskPoint inverse(const DiskPoint& p) const { return apply(p, true); }

 private:
  [[nodiscard]] DiskPoint apply(const DiskPoint& p, bool inv) const {
    const auto i = disk_of(p);
    if (!i) return p;
    const DiskPoint c = fam_.centers[*i];
    const double r = fam_.radii[*i];
    const DiskPoint u{(p.x - c.x) / r, (p.y - c.y) / r};
    if (u.x * u.x + u.y * u.y >= 0.25) return p;
    const DiskPoint v = inv ? models_[*i].inverse(u) : models_[*i](u);
    return {c.x + r * v.x, c.y + r * v.y};
  }

  DiskFamily fam_;
  std::vector<TwistModel> models_;
};

/// The family used by the studies: m geometric disks, one twist per disk.
[[nodiscard]] inline PatchedMap make_patched_map(PatchMode mode, int m = 4, double c_lo = 0.8, double c_hi = 1.5) {
  std::vector<TwistModel> models;
  for (double c : mode_shears(mode, m, c_lo, c_hi)) {
    TwistModel t;
    t.shear = c;
    models.push_back(t);
  }
  return PatchedMap(geometric_family(m), std::move(models));
}

// ---------------------------------------------------------------------------
// Sampled bi-Lipschitz constants, stratified by the four pair geometries:
//   1: both points outside every half-disk B(x_i, rho_i/2)
//   2: points in half-disks of two different disks
//   3: one point in a half-disk, the other nearby in the same disk
//   4: one point in half-disk i, the other outside all half-disks and disk i

struct CaseMax {
  double lip{0.0};
  double lip_inv{0.0};
  std::int64_t pairs{0};
};

struct BiLipReport {
  CaseMax cases[4];
  double lip{0.0};
  double lip_inv{0.0};
  std::int64_t pairs{0};

  [[nodiscard]] double bilip() const { return lip + lip_inv; }
};

namespace detail {

inline DiskPoint point_in_disk(CounterRng& rng, DiskPoint c, double r) {
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  const double s = r * std::sqrt(rng.uniform());
  return {c.x + s * std::cos(a), c.y + s * std::sin(a)};
}

inline bool outside_half_disks(const DiskFamily& fam, const DiskPoint& p) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (distance(p, fam.centers[i]) < 0.5 * fam.radii[i]) return false;
  }
  return true;
}

/// Pair of the given case; nothing when rejection sampling gives up.
inline std::optional<std::pair<DiskPoint, DiskPoint>> sample_pair(const DiskFamily& fam, int which, CounterRng& rng) {
  const std::size_t m = fam.size();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::size_t i = rng.below(m);
    const DiskPoint ci = fam.centers[i];
    const double ri = fam.radii[i];
    switch (which) {
      case 0: {
        // Near a disk: inside its annulus rho/2 <= |p - x_i| <= 3 rho/2.
        const DiskPoint x = point_in_disk(rng, ci, 1.5 * ri);
        const double dlog = rng.uniform(-6.0, 0.0);
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        const double s = ri * std::pow(10.0, dlog);
        const DiskPoint y{x.x + s * std::cos(a), x.y + s * std::sin(a)};
        if (outside_half_disks(fam, x) && outside_half_disks(fam, y)) return std::make_pair(x, y);
        break;
      }
      case 1: {
        if (m < 2) return std::nullopt;
        std::size_t j = rng.below(m - 1);
        if (j >= i) ++j;
        return std::make_pair(point_in_disk(rng, ci, 0.5 * ri), point_in_disk(rng, fam.centers[j], 0.5 * fam.radii[j]));
      }
      case 2: {
        const DiskPoint x = point_in_disk(rng, ci, 0.5 * ri);
        const double dlog = rng.uniform(-6.0, 0.0);
        const double a = 2.0 * std::numbers::pi * rng.uniform();
        const double s = ri * std::pow(10.0, dlog);
        const DiskPoint y{x.x + s * std::cos(a), x.y + s * std::sin(a)};
        if (distance(y, ci) <= ri) return std::make_pair(x, y);
        break;
      }
      default: {
        const DiskPoint x = point_in_disk(rng, ci, 0.5 * ri);
        const DiskPoint y = rng.uniform() < 0.5 ? point_in_disk(rng, ci, 2.0 * ri) : uniform_point(rng, -1.0, 1.0);
        if (distance(y, ci) > ri && outside_half_disks(fam, y)) return std::make_pair(x, y);
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// `pairs` pairs split evenly over the four cases; pair k depends only on
/// (seed, k).
[[nodiscard]] inline BiLipReport bilip_estimate(const PatchedMap& f, std::int64_t pairs, std::uint64_t seed,
                                                int workers = 1) {
  if (pairs < 4) throw DomainError("bilip_estimate: need at least 4 pairs");
  struct Sample {
    int which{-1};
    double fwd{0.0};
    double inv{0.0};
  };
  std::vector<Sample> s(static_cast<std::size_t>(pairs));
  parallel_for(s.size(), workers, [&](std::size_t k) {
    CounterRng rng(seed, k);
    const int which = static_cast<int>(k % 4);
    const auto pq = detail::sample_pair(f.family(), which, rng);
    if (!pq) return;
    const auto [x, y] = *pq;
    const double d = distance(x, y);
    if (!(d > 0.0)) return;
    s[k] = {which, distance(f(x), f(y)) / d, distance(f.inverse(x), f.inverse(y)) / d};
  });
  BiLipReport rep;
  for (const Sample& t : s) {
    if (t.which < 0) continue;
    CaseMax& c = rep.cases[t.which];
    c.lip = std::max(c.lip, t.fwd);
    c.lip_inv = std::max(c.lip_inv, t.inv);
    ++c.pairs;
    rep.lip = std::max(rep.lip, t.fwd);
    rep.lip_inv = std::max(rep.lip_inv, t.inv);
    ++rep.pairs;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Entropy per disk.  Distances are measured in the disk's own unit (divided
// by rho_i), so a disk and its model are compared at the same resolution.

struct DiskEntropy {
  std::size_t disk{0};
  double shear{0.0};
  std::int64_t count_lo{0};
  std::int64_t count_hi{0};
  double slope{0.0};
  bool saturated{false};
};

struct EntropyWindow {
  double eps{0.1};
  int n_lo{4};
  int n_hi{8};
  int samples{40000};
};

[[nodiscard]] inline DiskEntropy per_disk_entropy(const PatchedMap& f, std::size_t i, const EntropyWindow& w,
                                                  int workers = 1) {
  if (i >= f.family().size()) throw DomainError("per_disk_entropy: no such disk");
  if (w.n_lo < 1 || w.n_hi <= w.n_lo || w.samples < 2) throw DomainError("per_disk_entropy: bad window");
  const DiskPoint c = f.family().centers[i];
  const double r = f.family().radii[i];
  // Halton points of the square, kept inside radius 0.45 rho_i.
  std::vector<DiskPoint> pts;
  for (std::uint64_t k = 0; static_cast<int>(pts.size()) < w.samples; ++k) {
    const DiskPoint u = halton_point(k, -0.45, 0.45);
    if (u.x * u.x + u.y * u.y < 0.45 * 0.45) pts.push_back({c.x + r * u.x, c.y + r * u.y});
  }
  const std::vector<Orbit> orbs = orbits_of(f, pts, w.n_hi + 1, workers);
  DiskEntropy out;
  out.disk = i;
  out.shear = f.models()[i].shear;
  const SeparatedResult lo = separated_count(orbs, w.eps, w.n_lo + 1, 1.0 / r);
  const SeparatedResult hi = separated_count(orbs, w.eps, w.n_hi + 1, 1.0 / r);
  out.count_lo = lo.count;
  out.count_hi = hi.count;
  out.saturated = hi.saturated;
  out.slope = std::log(static_cast<double>(hi.count) / static_cast<double>(lo.count)) / (w.n_hi - w.n_lo);
  return out;
}

struct LipschitzStudy {
  PatchMode mode{PatchMode::kIncreasing};
  BiLipReport bilip;
  std::vector<DiskEntropy> disks;
  double min_increment{0.0};  // min slope_{i+1} - slope_i
  double spread{0.0};         // max - min slope
  bool bilip_pass{false};
  bool entropy_pass{false};
  bool pass{false};
};

/// h0: every increment of the slope exceeds `tol`; hinf: slopes within `tol`
/// of each other.
[[nodiscard]] inline LipschitzStudy lipschitz_study(const PatchedMap& f, PatchMode mode, std::int64_t pairs,
                                                    std::uint64_t seed, const EntropyWindow& w, double tol = 0.03,
                                                    int workers = 1) {
  LipschitzStudy st;
  st.mode = mode;
  st.bilip = bilip_estimate(f, pairs, seed, workers);
  st.bilip_pass = st.bilip.bilip() <= 10.0;
  for (std::size_t i = 0; i < f.family().size(); ++i) st.disks.push_back(per_disk_entropy(f, i, w, workers));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  st.min_increment = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < st.disks.size(); ++i) {
    lo = std::min(lo, st.disks[i].slope);
    hi = std::max(hi, st.disks[i].slope);
    if (i > 0) st.min_increment = std::min(st.min_increment, st.disks[i].slope - st.disks[i - 1].slope);
  }
  st.spread = hi - lo;
  const bool unsaturated = std::none_of(st.disks.begin(), st.disks.end(), [](const DiskEntropy& d) { return d.saturated; });
  st.entropy_pass = unsaturated && (mode == PatchMode::kIncreasing ? st.min_increment > tol : st.spread <= tol);
  st.pass = st.bilip_pass && st.entropy_pass;
  return st;
}

}  // namespace homoclinic
