#include "mefkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "mefkit/error.hpp"

namespace mefkit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double phase_of(Cx lambda) {
  double p = std::arg(lambda) / two_pi;
  p -= std::floor(p);
  if (p >= 1.0) p = 0.0;
  return p;
}

}  // namespace

Cx character(std::span<const long long> k, std::span<const double> x) {
  require(k.size() == x.size(), ErrorCode::DimensionMismatch,
          "frequency and point must have equal length");
  double dot = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    dot += static_cast<double>(k[i]) * x[i];
  }
  return std::polar(1.0, two_pi * dot);
}

EigenHit eigen_test(const TorusSystem& sys, const std::vector<long long>& k,
                    double tol) {
  require(k.size() == static_cast<std::size_t>(sys.dim()),
          ErrorCode::DimensionMismatch, "frequency has wrong dimension");
  require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  for (long long c : k) {
    require(std::abs(c) < sys.grid() / 2, ErrorCode::FrequencyTooHigh,
            "frequency aliases on the grid");
  }

  const int dim = sys.dim();
  const int n = sys.grid();
  const std::size_t total = grid_point_count(dim, n);

  std::vector<int> coords(static_cast<std::size_t>(dim));
  std::vector<double> x(static_cast<std::size_t>(dim));
  Cx inner{0.0, 0.0};
  std::vector<Cx> u(total), v(total);
  for (std::size_t p = 0; p < total; ++p) {
    grid_coords(dim, n, p, coords);
    for (int i = 0; i < dim; ++i) {
      x[static_cast<std::size_t>(i)] =
          static_cast<double>(coords[static_cast<std::size_t>(i)]) / n;
    }
    const std::vector<double> y = sys.apply(x);
    u[p] = character(k, y);
    v[p] = character(k, x);
    inner += u[p] * std::conj(v[p]);
  }

  // chi_k has unit modulus at every grid point, so <chi_k, chi_k> = total.
  const Cx proj = inner / static_cast<double>(total);
  double sq = 0.0;
  for (std::size_t p = 0; p < total; ++p) {
    sq += std::norm(u[p] - proj * v[p]);
  }

  EigenHit hit;
  hit.k = k;
  // A projection below the grid-sum noise floor is a true zero; normalizing
  // it would promote rounding debris to a unit eigenvalue.
  hit.lambda = std::abs(proj) > 1e-9 ? proj / std::abs(proj) : Cx{0.0, 0.0};
  hit.residual = std::sqrt(sq / static_cast<double>(total));
  hit.passes = hit.residual <= tol;
  return hit;
}

EigenScan eigen_scan(const TorusSystem& sys, int kmax, double tol) {
  require(kmax >= 0, ErrorCode::InvalidArgument, "kmax must be nonnegative");
  require(kmax < sys.grid() / 2, ErrorCode::FrequencyTooHigh,
          "search box reaches aliasing frequencies");
  const int dim = sys.dim();

  EigenScan scan;
  scan.kmax = kmax;
  scan.tol = tol;

  // First coordinate slowest: odometer over the trailing coordinates.
  std::vector<long long> k(static_cast<std::size_t>(dim), -kmax);
  while (true) {
    EigenHit hit = eigen_test(sys, k, tol);
    if (hit.passes) {
      scan.passing.push_back(k);
      if (hit.residual > scan.max_passing_residual) {
        scan.max_passing_residual = hit.residual;
      }
    } else if (scan.min_rejected_residual < 0.0 ||
               hit.residual < scan.min_rejected_residual) {
      scan.min_rejected_residual = hit.residual;
    }
    scan.hits.push_back(std::move(hit));
    int i = dim - 1;
    for (; i >= 0; --i) {
      if (k[static_cast<std::size_t>(i)] < kmax) {
        ++k[static_cast<std::size_t>(i)];
        break;
      }
      k[static_cast<std::size_t>(i)] = -kmax;
    }
    if (i < 0) break;
  }

  std::map<std::vector<long long>, bool> pass_set;
  for (const auto& p : scan.passing) pass_set[p] = true;
  for (const auto& p : scan.passing) {
    std::vector<long long> neg(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) neg[i] = -p[i];
    if (!pass_set.count(neg)) scan.symmetric = false;
  }
  for (const auto& a : scan.passing) {
    for (const auto& b : scan.passing) {
      std::vector<long long> sum(a.size());
      bool inside = true;
      for (std::size_t i = 0; i < a.size(); ++i) {
        sum[i] = a[i] + b[i];
        if (std::abs(sum[i]) > kmax) inside = false;
      }
      if (inside && !pass_set.count(sum)) scan.additively_closed = false;
    }
  }
  return scan;
}

MEFReport mef_extract(const TorusSystem& sys, const CellComplex& model,
                      int kmax, double tol, const InvarianceParams& inv) {
  MEFReport report;
  report.dim = sys.dim();
  report.grid = sys.grid();
  report.kmax = kmax;
  report.tol = tol;

  EigenScan scan = eigen_scan(sys, kmax, tol);
  report.symmetric = scan.symmetric;
  report.additively_closed = scan.additively_closed;
  report.max_passing_residual = scan.max_passing_residual;
  report.min_rejected_residual = scan.min_rejected_residual;
  for (EigenHit& hit : scan.hits) {
    if (hit.passes) report.passing.push_back(std::move(hit));
  }

  LatticeBasis basis = lattice_rank(scan.passing);
  report.m = static_cast<int>(basis.rank);
  for (std::size_t i = 0; i < basis.rank; ++i) {
    std::vector<long long> g(basis.basis.cols());
    for (std::size_t j = 0; j < basis.basis.cols(); ++j) {
      g[j] = basis.basis.at(i, j).convert_to<long long>();
    }
    EigenHit hit = eigen_test(sys, g, tol);
    const double phase = phase_of(hit.lambda);
    report.frequency_lattice_basis.push_back(std::move(g));
    report.rotation.push_back(phase);
    report.rotation_exact.push_back(effective_rational(phase, sys.grid()));
  }

  report.finite_order = betti0(model);
  report.bound_b0 = report.finite_order;
  report.bound_b1 = betti1(model);
  report.bound_ok = report.m * report.bound_b0 <= report.bound_b1;

  InvarianceDecision decision = invariance_decision(sys, inv);
  report.applicable = decision.invariant_constant;
  report.heuristic = decision.heuristic;
  report.invariance_method = decision.method;

  // Rank bound: with only constant invariant functions, each independent
  // rotation frequency forces an independent cycle in the model, component
  // by component. A system certified applicable that still breaks the bound
  // means the run itself is inconsistent.
  require(!(report.applicable && !report.bound_ok), ErrorCode::TheoremViolation,
          "rotation rank exceeds the Betti bound on an applicable system");
  return report;
}

PointSpectrumGroup point_spectrum_group(const MEFReport& report) {
  require(report.m <= report.bound_b1, ErrorCode::TheoremViolation,
          "point spectrum rank exceeds the first Betti bound");
  PointSpectrumGroup g;
  g.rank = report.m;
  g.finite_order = report.finite_order;
  g.generator_count = g.rank + (g.finite_order > 1 ? 1 : 0);
  return g;
}

}  // namespace mefkit
