#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mefkit/abelian.hpp"
#include "mefkit/complex.hpp"
#include "mefkit/dynamics.hpp"

namespace mefkit {

// chi_k(x) = exp(2 pi i k . x).
Cx character(std::span<const long long> k, std::span<const double> x);

struct EigenHit {
  std::vector<long long> k;
  // Unit normalization of the least-squares projection; zero when the
  // projection vanishes entirely.
  Cx lambda;
  // RMS of chi_k o phi - proj * chi_k with the raw projection, i.e. the
  // best achievable over all scalars.
  double residual = 0.0;
  bool passes = false;
};

// Tests chi_k as an eigenfunction candidate. The composition is evaluated in
// closed form at phi of each grid point; no interpolation enters. Frequencies
// with |k|_inf >= grid/2 alias on the grid and are rejected
// (FrequencyTooHigh).
EigenHit eigen_test(const TorusSystem& sys, const std::vector<long long>& k,
                    double tol);

struct EigenScan {
  int kmax = 0;
  double tol = 0.0;
  std::vector<EigenHit> hits;  // every k in the box, first coordinate slowest
  std::vector<std::vector<long long>> passing;
  bool symmetric = true;          // -k passes whenever k does
  bool additively_closed = true;  // sums of passing k pass when still in box
  double max_passing_residual = -1.0;  // -1 when nothing passed
  double min_rejected_residual = -1.0;  // -1 when nothing was rejected
};

// Sweeps the box |k|_inf <= kmax in lexicographic order.
EigenScan eigen_scan(const TorusSystem& sys, int kmax, double tol);

struct MEFReport {
  int dim = 0;
  int grid = 0;
  int kmax = 0;
  double tol = 0.0;

  std::vector<EigenHit> passing;
  std::vector<std::vector<long long>> frequency_lattice_basis;
  int m = 0;  // rank of the lattice of passing frequencies
  int finite_order = 1;  // component count of the model
  std::vector<double> rotation;  // phase in [0,1) per basis row
  std::vector<std::optional<Rational>> rotation_exact;

  int bound_b0 = 1;
  int bound_b1 = 0;
  bool bound_ok = true;  // m <= bound_b1 / bound_b0

  bool applicable = false;  // invariant-constancy verdict for the system
  bool heuristic = false;
  std::string invariance_method;

  bool symmetric = true;
  bool additively_closed = true;
  double max_passing_residual = -1.0;
  double min_rejected_residual = -1.0;
};

// Maximal equicontinuous factor data: scans the frequency box, reads the
// rotation rank and generator phases off the passing lattice, and checks the
// rank bound m * b0 <= b1 against the model complex. The report is emitted
// even when the invariant-constancy hypothesis fails (flagged, advisory
// data); a bound violation on a system where the hypothesis holds is a
// genuine contradiction and throws TheoremViolation instead of returning.
MEFReport mef_extract(const TorusSystem& sys, const CellComplex& model,
                      int kmax, double tol, const InvarianceParams& inv = {});

struct PointSpectrumGroup {
  int rank = 0;
  int finite_order = 1;  // 1 means no finite cyclic part
  int generator_count = 0;
};

// Z^rank x Z/finite_order presentation of the recovered point spectrum;
// asserts rank <= bound_b1.
PointSpectrumGroup point_spectrum_group(const MEFReport& report);

}  // namespace mefkit
