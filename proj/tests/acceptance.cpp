// Acceptance suite: runs every release criterion and prints one line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "sparsecert/sparsecert.hpp"

using namespace sparsecert;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Matrixd example2() {
  Matrixd A(2, 3);
  const double h = std::sqrt(2.0) / 2.0;
  A << 1, 0, h,
       0, 1, h;
  return A;
}

Matrixd example_a2() {
  Matrixd A(2, 3);
  A << 2, 0, 1,
       0, 2, 1;
  return A;
}

struct SweepEntry {
  Index n, m;
  std::uint64_t seed;
  Matrixd A;
  Index l_star;
  Index coherence_bound;
};

// Shared ensemble for criteria 2-4: normalized Gaussian matrices over
// n in {3..6}, m in {6..10}, ten seeds each (200 matrices).
const std::vector<SweepEntry>& sweep() {
  static const std::vector<SweepEntry> entries = [] {
    std::vector<SweepEntry> out;
    for (Index n = 3; n <= 6; ++n) {
      for (Index m = 6; m <= 10; ++m) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
          SweepEntry e;
          e.n = n;
          e.m = m;
          e.seed = seed + 1000 * static_cast<std::uint64_t>(10 * n + m);
          e.A = generate({GeneratorKind::Gaussian, n, m, e.seed, true});
          const auto report = analyze(e.A);
          e.l_star = report.asf_bound;
          e.coherence_bound = report.coherence_bound;
          out.push_back(std::move(e));
        }
      }
    }
    return out;
  }();
  return entries;
}

bool criterion1(std::string& detail) {
  const auto start = Clock::now();
  const Matrixd A = example2();
  const auto sv = scores(gram(A));
  bool ok = true;
  for (Index i = 0; i < 3; ++i)
    ok &= std::abs(sv.rho(i) - 0.4142135623) <= 1e-9;
  const auto report = analyze(A);
  ok &= report.asf_bound == 1;
  ok &= std::abs(report.coherence - 0.7071067811) <= 1e-9;
  ok &= report.coherence_bound == 1;
  ok &= report.ric_bound == 0;
  const auto oracle = exact_sparsity_level(A, 3);
  ok &= oracle.level == 1;
  const double elapsed = seconds_since(start);
  ok &= elapsed < 1.0;
  std::ostringstream msg;
  msg << "rho=" << sv.rho(0) << " l*=" << report.asf_bound << " mu=" << report.coherence
      << " exact=" << oracle.level << " in " << elapsed << " s";
  detail = msg.str();
  return ok;
}

bool criterion2(std::string& detail) {
  const auto start = Clock::now();
  int violations = 0;
  int boundary_hits = 0;
  std::string first;
  for (const auto& e : sweep()) {
    const auto oracle = exact_sparsity_level(e.A, 4);
    if (oracle.boundary) ++boundary_hits;
    // The oracle saturates at s_max = 4, so only the capped bound is testable.
    if (oracle.level < std::min<Index>(e.l_star, 4)) {
      ++violations;
      if (first.empty()) {
        std::ostringstream msg;
        msg << "n=" << e.n << " m=" << e.m << " seed=" << e.seed << " l*=" << e.l_star
            << " exact=" << oracle.level;
        first = msg.str();
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream msg;
  msg << sweep().size() << " matrices, " << violations << " violations, "
      << boundary_hits << " boundary flags, " << elapsed << " s";
  if (!first.empty()) msg << "; first: " << first;
  detail = msg.str();
  return violations == 0 && elapsed < 600.0;
}

bool criterion3(std::string& detail) {
  int violations = 0;
  for (const auto& e : sweep())
    if (e.l_star < e.coherence_bound) ++violations;
  std::ostringstream msg;
  msg << sweep().size() << " matrices, " << violations << " violations";
  detail = msg.str();
  return violations == 0;
}

bool criterion4(std::string& detail) {
  int tested = 0;
  int failures = 0;
  double worst = 0.0;
  for (const auto& e : sweep()) {
    if (e.l_star < 1) continue;
    ++tested;
    const auto stats = recovery_trials(e.A, e.l_star, 50, e.seed);
    if (stats.successes != 50 || stats.max_error > 1e-6) ++failures;
    worst = std::max(worst, stats.max_error);
  }
  std::ostringstream msg;
  msg << tested << " matrices with l* >= 1, " << failures
      << " with failed trials, worst recovery error " << worst;
  detail = msg.str();
  return failures == 0 && tested > 0;
}

bool criterion5(std::string& detail) {
  const auto start = Clock::now();
  int violations = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Matrixd A = generate({GeneratorKind::Gaussian, 4, 8, 5000 + seed, true});
    for (Index s : {2, 3})
      if (!restricted_ratio_check(A, s).holds) ++violations;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream msg;
  msg << "50 matrices x s in {2,3}, " << violations << " violations, " << elapsed << " s";
  detail = msg.str();
  return violations == 0 && elapsed < 120.0;
}

bool criterion6(std::string& detail) {
  bool ok = true;
  for (Index n : {3, 5}) {
    const Matrixd I = Matrixd::Identity(n, n);
    ok &= sparsity_lower_bound(scores(gram(I))) == n;
    const Index s_max = 3;
    ok &= exact_sparsity_level(I, s_max).level == s_max;
  }
  const Matrixd A2 = example_a2();
  const auto report = analyze(A2);
  ok &= report.asf_bound == 0;
  ok &= !report.coherence_applies_as_given;
  const auto oracle = exact_sparsity_level(A2, 2);
  ok &= oracle.level == 0;
  std::ostringstream msg;
  msg << "identity certified in full; rescaled matrix: l*=" << report.asf_bound
      << " exact=" << oracle.level << " coherence_applies_as_given="
      << (report.coherence_applies_as_given ? "true" : "false");
  detail = msg.str();
  return ok;
}

// Measures block totals on freshly allocated copies and keeps the fastest
// block per size: page placement varies per allocation and neighbors come
// and go, and the floor is the stable statistic.
std::pair<double, double> scores_times(const Matrixd& C1, const Matrixd& C2) {
  volatile double sink = 0.0;
  constexpr int kBlocks = 5;
  constexpr int kReps = 8;
  double best1 = 1e300;
  double best2 = 1e300;
  for (int b = 0; b < kBlocks; ++b) {
    const Matrixd D1 = C1;
    const Matrixd D2 = C2;
    sink = sink + scores(D1).rho(0) + scores(D2).rho(0);  // warm up
    double total1 = 0.0;
    double total2 = 0.0;
    for (int r = 0; r < kReps; ++r) {
      auto t0 = Clock::now();
      const auto sv1 = scores(D1);
      total1 += seconds_since(t0);
      sink = sink + sv1.rho(0);
      t0 = Clock::now();
      const auto sv2 = scores(D2);
      total2 += seconds_since(t0);
      sink = sink + sv2.rho(0);
    }
    best1 = std::min(best1, total1);
    best2 = std::min(best2, total2);
  }
  return {best1, best2};
}

bool criterion7(std::string& detail) {
  const Matrixd A1 = generate({GeneratorKind::Gaussian, 128, 1024, 7, false});
  const auto t0 = Clock::now();
  const auto report = analyze(A1);
  const double analyze_time = seconds_since(t0);

  const Matrixd C1 = gram(A1);
  const Matrixd A2 = generate({GeneratorKind::Gaussian, 128, 2048, 8, false});
  const Matrixd C2 = gram(A2);
  const auto [t1, t2] = scores_times(C1, C2);
  const double factor = t2 / t1;

  std::ostringstream msg;
  msg << "analyze(128x1024) " << analyze_time << " s (bound " << report.asf_bound
      << "); score stage best block " << t1 * 1e3 << " ms -> " << t2 * 1e3
      << " ms, factor " << factor;
  detail = msg.str();
  return analyze_time < 5.0 && factor >= 3.0 && factor <= 6.0;
}

bool criterion8(std::string& detail) {
  NormalSampler sampler(4242);
  int counts[3] = {0, 0, 0};
  int mismatches = 0;
  double worst_gap = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto k = static_cast<Index>(2 + uniform_below(sampler.engine(), 5));
    const auto r = static_cast<Index>(
        1 + uniform_below(sampler.engine(),
                          static_cast<std::uint64_t>(std::min<Index>(4, k - 1))));
    const testref::RefLp ref = testref::random_lp(sampler, k, r);
    const auto mine = solve(LinearProgram<double>{ref.c, ref.E, ref.b});
    const auto expect = testref::reference_lp_solve(ref.c, ref.E, ref.b);

    const bool status_match =
        (expect.status == testref::RefLpStatus::Optimal && mine.status == LpStatus::Optimal) ||
        (expect.status == testref::RefLpStatus::Infeasible && mine.status == LpStatus::Infeasible) ||
        (expect.status == testref::RefLpStatus::Unbounded && mine.status == LpStatus::Unbounded);
    if (!status_match) {
      ++mismatches;
      continue;
    }
    switch (expect.status) {
      case testref::RefLpStatus::Optimal: {
        ++counts[0];
        const double gap = std::abs(mine.objective_value - expect.objective);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-9) ++mismatches;
        break;
      }
      case testref::RefLpStatus::Infeasible: ++counts[1]; break;
      case testref::RefLpStatus::Unbounded: ++counts[2]; break;
    }
  }
  std::ostringstream msg;
  msg << "100 LPs (" << counts[0] << " optimal / " << counts[1] << " infeasible / "
      << counts[2] << " unbounded), " << mismatches << " mismatches, worst objective gap "
      << worst_gap;
  detail = msg.str();
  return mismatches == 0;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked-example exactness", criterion1},
      {2, "score bound never exceeds the exact oracle (200-matrix sweep)", criterion2},
      {3, "score bound dominates the coherence bound on unit columns", criterion3},
      {4, "certified levels recover 50/50 planted vectors", criterion4},
      {5, "restricted eigenvalue ratio bound holds (50-matrix sweep)", criterion5},
      {6, "degenerate and boundary cases", criterion6},
      {7, "score stage scales quadratically and analyze stays fast", criterion7},
      {8, "simplex matches brute-force vertex enumeration", criterion8},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s  criterion %d: %s  [%s]\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
