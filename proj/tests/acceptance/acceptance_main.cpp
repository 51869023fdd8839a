// Acceptance suite: runs the project's quantitative exit criteria end to end,
// printing one PASS/FAIL line per criterion with the measured runtime.
//
//   selfnorm_acceptance          runs all criteria
//   selfnorm_acceptance 4 7 13   runs a subset
//
// Exit code 0 iff every selected criterion passes, including its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "selfnorm/baselines.hpp"
#include "selfnorm/cgf.hpp"
#include "selfnorm/emp_bernstein.hpp"
#include "selfnorm/linalg.hpp"
#include "selfnorm/regression.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/sim.hpp"
#include "selfnorm/stitching.hpp"
#include "selfnorm/vector_bound.hpp"

using namespace selfnorm;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& message) {
    if (!cond && ok) {
      ok = false;
      detail = message;
    }
  }
};

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) {
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  }
  return g;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

BoundaryParams scalar_params(double alpha, double rho, double delta, double s) {
  return BoundaryParams(alpha, rho, delta, StitchFn(s));
}

VectorBoundaryParams vector_params(double alpha, double rho, double delta, double s,
                                   double beta = 2.0, double eps = 0.5) {
  VectorBoundaryParams p;
  p.base = scalar_params(alpha, rho, delta, s);
  p.beta = beta;
  p.epsilon = eps;
  return p;
}

// ---------------------------------------------------------------------------
// 1. Gamma inverse conjugate closed form.
Check criterion_1() {
  Check c;
  const auto grid = logspace(1e-3, 1e3, 61);
  for (double scale : {0.1, 1.0, 10.0}) {
    const CgfFamily f = CgfFamily::gamma(scale);
    for (double x : grid) {
      const double expected = std::sqrt(2.0 * x) + scale * x;
      const double got = f.conjugate_inverse(x);
      c.require(std::abs(got - expected) <= 1e-12 * expected,
                "closed form mismatch at c=" + fmt(scale) + ", x=" + fmt(x));
      // The conjugate inverts it back.
      c.require(std::abs(f.conjugate(got) - x) <= 1e-10 * std::max(1.0, x),
                "conjugate round trip failed at c=" + fmt(scale) + ", x=" + fmt(x));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 2. Poisson/exponential conjugate round trips plus the brute-force supremum.
Check criterion_2() {
  Check c;
  const auto grid = logspace(1e-3, 1e3, 25);
  for (const CgfFamily& f : {CgfFamily::poisson(1.0), CgfFamily::exponential(1.0)}) {
    for (double x : grid) {
      const double u = f.conjugate_inverse(x);
      c.require(std::abs(f.conjugate(u) - x) <= 1e-8 * std::max(1.0, x),
                std::string(f.name()) + " round trip failed at x=" + fmt(x));

      // Independent oracle: supremum of u*l - psi(l) over 1e5 grid points,
      // with psi written out inline.
      double hi;
      if (f.kind() == CgfKind::poisson) {
        hi = 2.0 * std::log1p(u) + 2.0;
      } else {
        hi = (1.0 - 1e-9);
      }
      double sup = 0.0;
      const int n = 100000;
      for (int i = 0; i <= n; ++i) {
        const double l = hi * i / n;
        const double psi = f.kind() == CgfKind::poisson ? std::exp(l) - l - 1.0
                                                        : -std::log(1.0 - l) - l;
        sup = std::max(sup, u * l - psi);
      }
      c.require(std::abs(sup - f.conjugate(u)) <= 1e-5 * std::max(1.0, sup),
                std::string(f.name()) + " brute-force supremum disagrees at x=" + fmt(x));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 3. The alpha crossover of the comparison coefficients.
Check criterion_3() {
  Check c;
  auto k1sq = [](double a) {
    const double k1 = (std::pow(a, 0.25) + std::pow(a, -0.25)) / std::sqrt(2.0);
    return k1 * k1;
  };
  for (int i = 0; i < 1000; ++i) {
    const double a = 1.001 + (2.05 - 1.001) * i / 999.0;
    c.require(2.0 * a <= 2.0 * k1sq(a) + 1e-12, "lower range fails at alpha=" + fmt(a));
    c.require(k1sq(a) <= 2.0 * a + 1e-12, "k1^2 <= 2 alpha fails at alpha=" + fmt(a));
  }
  for (int i = 0; i < 1000; ++i) {
    const double a = 2.07 + (10.0 - 2.07) * i / 999.0;
    c.require(2.0 * a >= 2.0 * k1sq(a) - 1e-12, "upper range fails at alpha=" + fmt(a));
  }
  return c;
}

// ---------------------------------------------------------------------------
// 4. Figure reproductions: the stitched boundary against the sub-Gamma
// comparison curve, Poisson and Gamma instantiations.
Check criterion_4() {
  Check c;
  const auto p = scalar_params(1.05, 1.0, 0.01, 2.0);
  const auto grid = logspace(1.0, 1e8, 200);

  const CgfFamily poisson = CgfFamily::poisson(1.0);
  int violations = 0;
  double first_violation = 0.0;
  for (double v : grid) {
    if (scalar_boundary(v, poisson, p) > howard_gamma_boundary(v, 1.0, p)) {
      if (violations == 0) first_violation = v;
      ++violations;
    }
  }
  c.require(violations == 0,
            "Poisson boundary exceeds the comparison curve at " + std::to_string(violations) +
                "/200 grid points (first at v=" + fmt(first_violation) +
                "); the coefficient ordering k1^2 <= 2 alpha makes this inevitable for large v");

  const CgfFamily gamma = CgfFamily::gamma(1.0);
  double max_ratio = 0.0;
  for (double v : grid) {
    const double ratio = scalar_boundary(v, gamma, p) / howard_gamma_boundary(v, 1.0, p);
    max_ratio = std::max(max_ratio, ratio);
    c.require(ratio >= 1.0, "Gamma boundary drops below the comparison curve at v=" + fmt(v));
  }
  c.require(max_ratio <= std::sqrt(2.0) * (1.0 + 1e-3),
            "Gamma/comparison ratio " + fmt(max_ratio) + " exceeds sqrt(2)(1+1e-3)");
  return c;
}

// ---------------------------------------------------------------------------
// 5. Epoch-line dominance for all four families.
Check criterion_5() {
  Check c;
  const auto p = scalar_params(1.05, 1.0, 0.05, 2.0);
  const auto grid = logspace(1.0, 1e8, 200);
  for (const CgfFamily& f : {CgfFamily::normal(), CgfFamily::poisson(1.0),
                             CgfFamily::exponential(1.0), CgfFamily::gamma(1.0)}) {
    for (double v : grid) {
      const double lines = epoch_line_boundary(v, f, p);
      const double closed = scalar_boundary(v, f, p);
      c.require(lines <= closed + 1e-9, std::string(f.name()) + " epoch envelope " +
                                            fmt(lines) + " exceeds closed form " + fmt(closed) +
                                            " at v=" + fmt(v));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 6. Scalar Monte Carlo coverage.
Check criterion_6() {
  Check c;
  ProcessSpec spec;
  spec.kind = ProcessKind::gaussian_linear;
  spec.d = 1;
  spec.horizon = 10000;
  spec.seed = 20260801;
  CoverageOptions o;
  o.family = CgfFamily::normal();
  o.params = vector_params(1.05, 1.0, 0.05, 2.0);
  const CoverageReport r = coverage_experiment(spec, BoundaryKind::scalar, o, 2000);
  const double cap = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 2000.0);
  c.require(r.rate <= cap, "crossing rate " + fmt(r.rate) + " exceeds " + fmt(cap));
  c.detail = "rate " + fmt(r.rate) + " <= " + fmt(cap);
  return c;
}

// ---------------------------------------------------------------------------
// 7. Vector Monte Carlo coverage with rotating covariates.
Check criterion_7() {
  Check c;
  ProcessSpec spec;
  spec.kind = ProcessKind::gaussian_linear;
  spec.d = 3;
  spec.covariates = CovariateLaw::rotating;
  spec.horizon = 5000;
  spec.seed = 513;
  CoverageOptions o;
  o.family = CgfFamily::normal();
  o.params = vector_params(1.05, 1.0, 0.05, 2.0);
  const CoverageReport r = coverage_experiment(spec, BoundaryKind::vector, o, 1000);
  const double cap = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 1000.0);
  c.require(r.rate <= cap, "crossing rate " + fmt(r.rate) + " exceeds " + fmt(cap));
  c.detail = "rate " + fmt(r.rate) + " <= " + fmt(cap);
  return c;
}

// ---------------------------------------------------------------------------
// 8. One-dimensional reduction of the vector boundary.
Check criterion_8() {
  Check c;
  for (double beta : {1.5, 2.0, 4.0}) {
    for (double eps : {0.1, 0.5}) {
      const auto p = vector_params(1.05, 1.0, 0.05, 2.0, beta, eps);
      const double c2 = std::log(1.0 / (1.0 - 1.0 / beta)) + std::log(2.0 * beta);
      for (const CgfFamily& f : {CgfFamily::normal(), CgfFamily::poisson(1.0),
                                 CgfFamily::exponential(1.0), CgfFamily::gamma(1.0)}) {
        for (double v : logspace(0.1, 1e8, 40)) {
          const double vf = std::max(v, 1.0);
          const double shifted =
              vf * f.conjugate_inverse(p.base.alpha * (ell(v, p.base) + c2) / vf);
          const double expected = shifted / std::sqrt(vf) / (1.0 - eps);
          const double got =
              vector_boundary_from_eigenvalues(std::vector<double>{v}, f, p);
          c.require(std::abs(got - expected) <= 1e-10 * expected,
                    std::string(f.name()) + " reduction mismatch at v=" + fmt(v));
        }
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 9. Regression: exact noiseless recovery and shrinkage ellipsoid coverage.
Check criterion_9() {
  Check c;
  constexpr double kGoldenAngle = 2.3999632297286533;
  const double cr = std::cos(kGoldenAngle), sr = std::sin(kGoldenAngle);

  // Zero noise: the estimate reproduces the slope to 1e-8 once the Gram
  // matrix clears the floor.
  {
    const std::vector<double> theta{0.8, -0.6};
    RegressionState state(2, 1.0);
    std::vector<double> x{1.0, 0.0};
    bool checked = false;
    for (long t = 1; t <= 64; ++t) {
      state.update(x, x[0] * theta[0] + x[1] * theta[1]);
      const double xa = x[0], xb = x[1];
      x[0] = cr * xa - sr * xb;
      x[1] = sr * xa + cr * xb;
      if (t >= 8 && sym_eig(state.gram()).min_eigenvalue() >= 1.0) {
        const auto est = state.ls_shrinkage_estimate();
        const double err = std::hypot(est[0] - theta[0], est[1] - theta[1]);
        c.require(err <= 1e-8, "noiseless recovery error " + fmt(err) + " at t=" +
                                   std::to_string(t));
        checked = true;
      }
    }
    c.require(checked, "gram matrix never cleared the floor");
  }

  // Monte Carlo uniform coverage of the shrinkage ellipsoid.
  const auto vp = vector_params(1.05, 1.0, 0.05, 2.0);
  const CgfFamily normal = CgfFamily::normal();
  const std::vector<double> theta{0.7, -0.7};
  const double theta_norm = std::hypot(theta[0], theta[1]);
  const int reps = 1000;
  const long horizon = 5000;
  int violations = 0;
  for (int rep = 0; rep < reps; ++rep) {
    SplitMix64 rng(40000 + rep);
    RegressionState state(2, 1.0, theta_norm);
    std::vector<double> x{1.0, 0.0};
    bool violated = false;
    for (long t = 1; t <= horizon; ++t) {
      const double mean = x[0] * theta[0] + x[1] * theta[1];
      state.update(x, mean + rng.next_gaussian());
      const double xa = x[0], xb = x[1];
      x[0] = cr * xa - sr * xb;
      x[1] = sr * xa + cr * xb;

      const SymEigen eig = sym_eig(state.gram());
      double radius = vector_boundary_from_eigenvalues(eig.eigenvalues, normal, vp);
      if (eig.min_eigenvalue() < 1.0) radius += theta_norm;  // sqrt(rho) = 1
      // ||(V ∨ rho I)^{1/2} (theta_hat - theta)||
      std::vector<double> floored(eig.eigenvalues);
      for (double& g : floored) g = std::max(g, 1.0);
      // theta_hat via the same spectral data.
      std::vector<double> est(2, 0.0);
      for (int n = 0; n < 2; ++n) {
        double proj = 0.0;
        for (int i = 0; i < 2; ++i) proj += eig.vec(i, n) * state.xty()[i];
        proj /= floored[n];
        for (int i = 0; i < 2; ++i) est[i] += proj * eig.vec(i, n);
      }
      double stat_sq = 0.0;
      for (int n = 0; n < 2; ++n) {
        double proj = 0.0;
        for (int i = 0; i < 2; ++i) proj += eig.vec(i, n) * (est[i] - theta[i]);
        stat_sq += floored[n] * proj * proj;
      }
      if (std::sqrt(stat_sq) >= radius) {
        violated = true;
        break;
      }
    }
    if (violated) ++violations;
  }
  const double rate = static_cast<double>(violations) / reps;
  const double cap = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / reps);
  c.require(rate <= cap, "ellipsoid violation rate " + fmt(rate) + " exceeds " + fmt(cap));
  if (c.ok) c.detail = "rate " + fmt(rate) + " <= " + fmt(cap);
  return c;
}

// ---------------------------------------------------------------------------
// 10. Empirical Bernstein: coverage plus variance adaptivity.
Check criterion_10() {
  Check c;
  {
    ProcessSpec spec;
    spec.kind = ProcessKind::bounded_emp_bern;
    spec.d = 2;
    spec.horizon = 10000;
    spec.seed = 77001;
    spec.spread = 1.0;
    CoverageOptions o;
    o.params = vector_params(1.05, 0.1, 0.05, 2.0);
    const CoverageReport r = coverage_experiment(spec, BoundaryKind::emp_bernstein, o, 2000);
    const double cap = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 2000.0);
    c.require(r.rate <= cap, "crossing rate " + fmt(r.rate) + " exceeds " + fmt(cap));
    c.detail = "rate " + fmt(r.rate) + " <= " + fmt(cap);
  }

  // Paired streams, same draws, spreads 0.1 vs 1.0: the low-spread stream's
  // normalized width must come out strictly smaller almost always.
  const auto p = vector_params(1.05, 0.1, 0.05, 2.0);
  const long horizon = 10000;
  const int pairs = 200;
  int lower = 0;
  for (int k = 0; k < pairs; ++k) {
    ProcessSpec low;
    low.kind = ProcessKind::bounded_emp_bern;
    low.d = 2;
    low.horizon = horizon;
    low.seed = 88000 + static_cast<std::uint64_t>(k);
    low.spread = 0.1;
    ProcessSpec high = low;
    high.spread = 1.0;

    ProcessStepper sl(low), sh(high);
    while (sl.step() && sh.step()) {
    }
    const SymEigen el = sym_eig(sl.v());
    const SymEigen eh = sym_eig(sh.v());
    const double tl = static_cast<double>(horizon);
    const double wl = eb_radius_from_eigenvalues(el.eigenvalues, horizon, p) *
                      std::sqrt(std::max(el.max_eigenvalue(), p.base.rho)) / std::sqrt(tl);
    const double wh = eb_radius_from_eigenvalues(eh.eigenvalues, horizon, p) *
                      std::sqrt(std::max(eh.max_eigenvalue(), p.base.rho)) / std::sqrt(tl);
    if (wl < wh) ++lower;
  }
  c.require(lower >= 190, "low-spread width smaller in only " + std::to_string(lower) +
                              "/200 paired seeds");
  return c;
}

// ---------------------------------------------------------------------------
// 11. Block-diagonal statistic identity.
Check criterion_11() {
  Check c;
  const double rho = 1.0;
  for (int seed = 0; seed < 100; ++seed) {
    ProcessSpec spec;
    spec.kind = ProcessKind::block_degenerate;
    spec.d = 4;
    spec.horizon = 10000;
    spec.seed = 3000 + static_cast<std::uint64_t>(seed);
    ProcessStepper stepper(spec);
    while (stepper.step()) {
    }
    const SymMatrix& v = stepper.v();
    const auto s = stepper.s();
    const double whole = self_normalized_norm(s, v, rho);
    double acc = 0.0;
    for (int b = 0; b < 2; ++b) {
      SymMatrix block(2);
      block.set(0, 0, v(2 * b, 2 * b));
      block.set(0, 1, v(2 * b, 2 * b + 1));
      block.set(1, 1, v(2 * b + 1, 2 * b + 1));
      const std::vector<double> sb{s[2 * b], s[2 * b + 1]};
      const double part = self_normalized_norm(sb, block, rho);
      acc += part * part;
    }
    c.require(std::abs(whole * whole - acc) <= 1e-8 * std::max(1.0, acc),
              "block identity off by " + fmt(std::abs(whole * whole - acc)) + " at seed " +
                  std::to_string(seed));
  }
  return c;
}

// ---------------------------------------------------------------------------
// 12. Law-of-the-iterated-logarithm order checks at desk scale.
Check criterion_12() {
  Check c;
  {
    int within = 0;
    for (int seed = 0; seed < 200; ++seed) {
      ProcessSpec spec;
      spec.kind = ProcessKind::gaussian_linear;
      spec.d = 1;
      spec.horizon = 1000000;
      spec.seed = 60000 + static_cast<std::uint64_t>(seed);
      const auto trace = lil_ratio_trace(spec, 1.0);
      if (trace.back().ratio <= 1.5) ++within;
    }
    c.require(within >= 190,
              "LIL ratio within 1.5 in only " + std::to_string(within) + "/200 seeds");
    c.detail = "ratio <= 1.5 in " + std::to_string(within) + "/200 seeds";
  }
  {
    std::vector<double> slopes;
    for (int seed = 0; seed < 200; ++seed) {
      ProcessSpec spec;
      spec.kind = ProcessKind::degenerate_regression_2d;
      spec.d = 2;
      spec.horizon = 100000;
      spec.seed = 70000 + static_cast<std::uint64_t>(seed);
      const auto trace = lil_ratio_trace(spec, 1.0);
      slopes.push_back(trace.back().log_kappa_over_log_t);
    }
    std::nth_element(slopes.begin(), slopes.begin() + 100, slopes.end());
    const double median = slopes[100];
    c.require(median >= 0.5 && median <= 2.0,
              "median log kappa / log t = " + fmt(median) + " outside [0.5, 2]");
    c.detail += ", condition-number slope median " + fmt(median);
  }
  return c;
}

// ---------------------------------------------------------------------------
// 13. Fixed-time AR solver identities.
Check criterion_13() {
  Check c;
  const CgfFamily poisson = CgfFamily::poisson(1.0);
  c.require(std::abs(poisson.conjugate(1.0) - (2.0 * std::log(2.0) - 1.0)) <= 1e-12,
            "psi*_{P,1}(1) != 2 log 2 - 1");
  for (long t : {1L, 10L, 100L, 1000L, 10000L, 100000L}) {
    for (double delta : {0.2, 0.05, 0.01, 0.001}) {
      const double x = bercu_touati_radius(t, delta);
      const double y = poisson.conjugate_inverse(x * x);
      const double tail = 2.0 * std::exp(-static_cast<double>(t) * x * x / (2.0 * (1.0 + y)));
      c.require(std::abs(tail - delta) <= 1e-8 * std::max(1.0, delta),
                "forward substitution residual " + fmt(std::abs(tail - delta)) + " at t=" +
                    std::to_string(t) + ", delta=" + fmt(delta));
    }
  }
  return c;
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  std::function<Check()> fn;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "gamma inverse-conjugate closed form", 1.0, criterion_1},
      {2, "poisson/exponential conjugate round trips and supremum oracle", 10.0, criterion_2},
      {3, "comparison-coefficient alpha crossover", 1.0, criterion_3},
      {4, "boundary-table figure reproduction (poisson and gamma vs comparison)", 5.0,
       criterion_4},
      {5, "epoch-line dominance of the closed-form boundary", 5.0, criterion_5},
      {6, "scalar boundary Monte Carlo coverage", 120.0, criterion_6},
      {7, "vector boundary Monte Carlo coverage", 180.0, criterion_7},
      {8, "one-dimensional reduction of the vector boundary", 1.0, criterion_8},
      {9, "regression recovery and ellipsoid coverage", 180.0, criterion_9},
      {10, "empirical Bernstein coverage and variance adaptivity", 120.0, criterion_10},
      {11, "block-diagonal statistic identity", 30.0, criterion_11},
      {12, "iterated-logarithm order checks", 300.0, criterion_12},
      {13, "fixed-time AR solver residuals", 1.0, criterion_13},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all_ok = true;
  for (const auto& crit : criteria()) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), crit.id) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = crit.fn();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < crit.budget_seconds;
    const bool ok = check.ok && in_budget;
    all_ok = all_ok && ok;

    std::printf("[%s] criterion %2d (%.2fs of %gs budget): %s%s%s\n", ok ? "PASS" : "FAIL",
                crit.id, seconds, crit.budget_seconds, crit.label,
                check.detail.empty() ? "" : " -- ", check.detail.c_str());
    if (!in_budget && check.ok) {
      std::printf("       exceeded the runtime budget\n");
    }
  }
  return all_ok ? 0 : 1;
}
