#pragma once

// Long orbits inside the certified horseshoe.
//
// Forward iteration leaves the Cantor set after a few returns (each return
// expands strip positions by ~N/ell), so orbits are assembled from exact
// excursions: the start points of a symbol sequence are solved backward
// through the return branches, and the forward pass re-anchors at every
// return.  The tangent vector is carried across the joins unchanged; the
// largest join defect is reported.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "homoclinic/analysis.hpp"
#include "homoclinic/entropy.hpp"
#include "homoclinic/parallel.hpp"
#include "homoclinic/perturbation.hpp"
#include "homoclinic/rng.hpp"

namespace homoclinic {

struct PseudoOrbit {
  TangentOrbit orbit;
  std::vector<int> symbols;
  std::vector<int> return_steps;
  double max_jump{0.0};  // disk distance between a landing and the next anchor
};

/// Orbit following strips symbols[0], symbols[1], ... of region n, one
/// corner further at each return.  The orbit starts at the image of the
/// first anchor, which is the first point off the boundary.
[[nodiscard]] inline PseudoOrbit pseudo_orbit(const PerturbedMap& f, int n, const std::vector<int>& symbols,
                                              DiskPoint v0, const CrossOptions& opt = {}) {
  if (symbols.size() < 2) throw DomainError("pseudo_orbit: need at least two symbols");
  const HorseshoeModel m(f, n, 0);
  const std::size_t M = symbols.size();
  std::vector<double> x(M);
  std::vector<int> steps(M - 1);
  const auto [lo, hi] = m.strip(symbols.back());
  x.back() = 0.5 * (lo + hi);
  for (std::size_t i = M - 1; i-- > 0;) {
    const auto sol = solve_branch(m, symbols[i], x[i + 1], opt);
    if (!sol) throw NumericalError("pseudo_orbit: return branch has no solution");
    x[i] = sol->x;
    steps[i] = sol->steps;
  }

  PseudoOrbit out;
  out.symbols = symbols;
  out.return_steps = steps;
  DiskPoint p = CornerFrame{0}.from_chart({x[0], 0.0});
  MapJet jet = f.jet(p);
  out.orbit.start(jet.image, v0);
  p = jet.image;
  for (std::size_t i = 0; i + 1 < M; ++i) {
    const int first = i == 0 ? 1 : 0;
    for (int s = first; s < steps[i]; ++s) {
      jet = f.jet(p);
      out.orbit.push(jet.image, jet.jacobian);
      p = jet.image;
    }
    const DiskPoint anchor = CornerFrame{static_cast<int>((i + 1) % 4)}.from_chart({x[i + 1], 0.0});
    out.max_jump = std::max(out.max_jump, std::hypot(p.x - anchor.x, p.y - anchor.y));
    out.orbit.points.back() = anchor;
    p = anchor;
  }
  return out;
}

struct HorseshoeOrbitRow {
  std::uint64_t index{0};
  double lambda_hat{0.0};
  double delta_frequency{0.0};
  double margin{0.0};  // log Lambda / r - lambda_hat
  double max_jump{0.0};
  int segments{0};
  int normal_blocks{0};
  int normal_pass{0};
  int special_blocks{0};
  int special_pass{0};
  double worst_normal_ratio{0.0};
  double corner_balance_c{0.0};
  bool pass{false};
};

struct HorseshoeExponentStudy {
  std::vector<HorseshoeOrbitRow> rows;
  double chi{0.0};  // min over orbits of margin / frequency
  double bound{0.0};
  bool all_below{false};
  bool all_visit_delta{false};
  bool blocks_pass{false};
  bool pass{false};
};

/// Symbol sequences are drawn from (seed, orbit index); results do not
/// depend on the worker count.
[[nodiscard]] inline HorseshoeExponentStudy horseshoe_exponent_study(const PerturbedMap& f, int n, int orbits,
                                                                     int returns, std::uint64_t seed, int workers = 1,
                                                                     double A = std::numbers::e) {
  const WiggleRegion& reg = f.region(n);
  const double r = f.config().schedule.r;
  const double lam = f.params().Lambda;
  const auto N = reg.entry.N;
  HorseshoeExponentStudy st;
  st.bound = std::log(lam) / r;
  st.rows.resize(static_cast<std::size_t>(orbits));
  parallel_for(st.rows.size(), workers, [&](std::size_t k) {
    CounterRng rng(seed, k);
    std::vector<int> sym(static_cast<std::size_t>(returns) + 1);
    for (int& s : sym) s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N - 1)));
    const double a = 2.0 * std::numbers::pi * rng.uniform();
    const PseudoOrbit po = pseudo_orbit(f, n, sym, {std::cos(a), std::sin(a)});

    HorseshoeOrbitRow row;
    row.index = k;
    row.max_jump = po.max_jump;
    const LyapunovEstimate ly = lyapunov(po.orbit);
    row.lambda_hat = ly.lambda_hat;
    row.delta_frequency = delta_frequency(po.orbit).frequency;
    row.margin = st.bound - row.lambda_hat;

    SegmentedOrbit seg = segment_orbit(po.orbit);
    classify_special(seg.segments, r, lam);
    row.segments = static_cast<int>(seg.segments.size());
    if (row.segments >= 2) {
      std::vector<bool> flags;
      for (const auto& s : seg.segments) flags.push_back(s.special);
      const BlockDecomposition dec = block_decompose(flags, 0, row.segments);
      const GrowthReport g = check_block_growth(po.orbit, seg.segments, dec, A, r, f.params());
      row.normal_blocks = g.normal_blocks;
      row.normal_pass = g.normal_pass;
      row.special_blocks = g.special_blocks;
      row.special_pass = g.special_pass;
      row.corner_balance_c = g.corner_balance_c;
      for (const BlockCheck& b : g.blocks) {
        if (!b.block.special) row.worst_normal_ratio = std::max(row.worst_normal_ratio, b.ratio);
      }
    }
    st.rows[k] = row;
  });

  st.chi = std::numeric_limits<double>::infinity();
  st.all_below = true;
  st.all_visit_delta = true;
  st.blocks_pass = true;
  for (const auto& row : st.rows) {
    st.all_below = st.all_below && row.margin > 0.0;
    st.all_visit_delta = st.all_visit_delta && row.delta_frequency > 0.0;
    st.blocks_pass = st.blocks_pass && row.normal_blocks > 0 && row.normal_pass == row.normal_blocks;
    if (row.delta_frequency > 0.0) st.chi = std::min(st.chi, row.margin / row.delta_frequency);
  }
  for (auto& row : st.rows) {
    row.pass = row.lambda_hat <= st.bound - st.chi * row.delta_frequency && row.normal_pass == row.normal_blocks;
  }
  st.pass = st.all_below && st.all_visit_delta && st.blocks_pass && st.chi > 0.0;
  return st;
}

}  // namespace homoclinic
