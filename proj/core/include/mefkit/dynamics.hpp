#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mefkit/abelian.hpp"
#include "mefkit/quotient.hpp"

namespace mefkit {

using Rational = boost::multiprecision::cpp_rational;

// Finitely many generators acting on a complex by automorphisms
// (edge- and square-preserving vertex bijections).
class FiniteAction {
 public:
  FiniteAction(ComplexPtr complex,
               std::vector<std::vector<Vertex>> generators);

  const CellComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const std::vector<std::vector<Vertex>>& generators() const {
    return generators_;
  }

 private:
  ComplexPtr complex_;
  std::vector<std::vector<Vertex>> generators_;
};

// Orbits of the generated group; closure under generators only, no group
// enumeration.
Partition orbit_partition(const FiniteAction& act);

// Quotient by the orbit partition; the action descends to the identity.
QuotientMap maximal_trivial_factor(const FiniteAction& act);

// True iff every invariant function is constant, i.e. the action has a
// single orbit.
bool is_invariant_constant(const FiniteAction& act);

// Rotation coordinate: exact rational plus parse provenance. Decimal inputs
// keep their significant digit count so rationality heuristics can reason
// about print precision.
struct RotationEntry {
  Rational exact;
  bool from_decimal = false;
  int digits = 0;

  double value() const;
  static RotationEntry parse(const std::string& text);
};

// Deemed-rational test for rotation entries: exact fractions are rational;
// a decimal with d fractional digits counts as rational only when some
// continued-fraction convergent p/q, q <= 10^6, approximates it within
// min(10^-d, 1/(1000 q^2)). Returns the convergent when deemed rational.
std::optional<Rational> effective_rational(const RotationEntry& entry);

// Same test against a plain double (digits fixed at 12), denominator capped
// at `max_den`. Used for rotation-number recovery from phases.
std::optional<Rational> effective_rational(double x, long long max_den);

enum class WarpKind { Identity, Square, UserTable };

// Strictly increasing bijection of [0,1) fixing 0. UserTable holds samples
// of the lift at i/size; the final segment closes to table[0] + 1.
struct Warp {
  WarpKind kind = WarpKind::Identity;
  std::vector<double> table;

  double apply(double x) const;
  bool is_identity() const { return kind == WarpKind::Identity; }
  static Warp identity() { return {}; }
  static Warp square() { return {WarpKind::Square, {}}; }
  static Warp user_table(std::vector<double> samples);
};

// x -> warps(A x + a) mod 1 on T^dim, evaluated on an N^dim grid.
class TorusSystem {
 public:
  TorusSystem(int dim, IntMatrix matrix, std::vector<RotationEntry> rotation,
              std::vector<Warp> warps, int grid);

  int dim() const { return dim_; }
  int grid() const { return grid_; }
  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<RotationEntry>& rotation() const { return rotation_; }
  const std::vector<Warp>& warps() const { return warps_; }

  // No warp anywhere: x -> Ax + a mod 1.
  bool affine() const;
  // Affine with A = identity.
  bool pure_rotation() const;
  // |det A| = 1; otherwise the system acts as a semigroup.
  bool invertible() const;

  std::vector<double> apply(const std::vector<double>& x) const;
  std::vector<double> iterate(std::vector<double> x, int steps) const;
  // Exact orbit step; affine systems only.
  std::vector<Rational> apply_exact(const std::vector<Rational>& x) const;

 private:
  int dim_ = 0;
  IntMatrix matrix_;
  std::vector<RotationEntry> rotation_;
  std::vector<Warp> warps_;
  int grid_ = 0;
  std::vector<double> matrix_d_;
  std::vector<double> rotation_d_;
};

// Samples of a function on the N^dim grid, coordinate 0 fastest. The layout
// matches torus_grid vertex indexing, so grid functions transfer to lattice
// functions on that complex index for index.
struct GridFunction {
  int dim = 0;
  int grid = 0;
  std::vector<Cx> values;

  static GridFunction constant(int dim, int grid, Cx value);
  std::size_t size() const { return values.size(); }
};

std::size_t grid_point_count(int dim, int grid);
std::size_t grid_offset(int dim, int grid, std::span<const int> coords);
void grid_coords(int dim, int grid, std::size_t offset, std::span<int> out);

// Multilinear interpolation with periodic wrap; `point` in [0,1)^dim.
Cx interpolate(const GridFunction& f, std::span<const double> point);

// f ∘ φ sampled back on the grid: φ evaluated exactly at grid points, f by
// interpolation. GridMismatch when shapes differ from the system.
GridFunction pullback(const TorusSystem& sys, const GridFunction& f);

// f ∘ φ^steps, with φ^steps evaluated pointwise by iteration and a single
// interpolation at the end.
GridFunction iterate_pullback(const TorusSystem& sys, const GridFunction& f,
                              int steps);

LatticeFunction to_lattice_function(const GridFunction& f,
                                    ComplexPtr grid_complex);
GridFunction to_grid_function(const LatticeFunction& f, int dim, int grid);

// omega[j-1][d] = max |f(φ^j x) − f(φ^j y)| over grid pairs x, y within
// torus sup-distance deltas[d], for j = 1..horizon.
struct ModulusTable {
  std::vector<double> deltas;
  int horizon = 0;
  std::vector<std::vector<double>> omega;

  // min over deltas of the column maximum over j.
  double best_uniform_bound() const;
};

struct EquicontinuityResult {
  ModulusTable table;
  bool equicontinuous = false;
  double threshold = 0.0;
};

// Default delta ladder {2^i / N : i >= 0, value <= 1/2}.
std::vector<double> default_deltas(int grid);

// Verdict: some delta keeps every omega[j][d], j <= horizon, at or below
// the threshold. Deltas must be nonempty (EmptyDeltas) and horizon >= 1.
EquicontinuityResult equicontinuity_estimate(const TorusSystem& sys,
                                             const GridFunction& f,
                                             int horizon,
                                             const std::vector<double>& deltas,
                                             double threshold);

// Family variant: omega rows take the maximum over all members.
EquicontinuityResult equicontinuity_estimate(
    const TorusSystem& sys, const std::vector<GridFunction>& family,
    int horizon, const std::vector<double>& deltas, double threshold);

struct EquicontinuityParams {
  int horizon = 64;
  std::vector<double> deltas;  // empty -> default_deltas(grid)
  double threshold = 0.25;
  Tolerance part_tolerance{grid_default_eps};
};

// How the invariant-constancy verdict was obtained.
struct InvarianceDecision {
  bool invariant_constant = false;
  bool heuristic = false;
  std::string method;
};

struct InvarianceParams {
  long steps = 5000;
  double eps_net = 0.0;  // 0 -> 2/grid
};

// Pure rotations get the exact rational-independence decision; affine
// systems get an exact rational orbit density check; warped systems fall
// back to a floating-point orbit, flagged heuristic.
InvarianceDecision invariance_decision(const TorusSystem& sys,
                                       const InvarianceParams& params = {});

bool is_invariant_constant(const TorusSystem& sys,
                           const InvarianceParams& params = {});

struct EquivariantHull {
  MonotoneHull hull;
  FiniteAction descended;  // generators induced on the hull complex
};

// Requires every generator to permute the fibers of p (NotEquivariant
// otherwise); the hull inherits the action.
EquivariantHull equivariant_monotone_hull(const FiniteAction& act,
                                          const QuotientMap& p);

// True iff the equicontinuity verdict of the family equals the verdict of
// the set of all irreducible parts of its members.
bool irr_equicontinuity_check(const TorusSystem& sys,
                              const std::vector<GridFunction>& family,
                              const EquicontinuityParams& params = {});

struct IrrEquicontinuityDetail {
  EquicontinuityResult family;
  EquicontinuityResult parts;
  std::size_t part_count = 0;
  bool agree = false;
};

IrrEquicontinuityDetail irr_equicontinuity_detail(
    const TorusSystem& sys, const std::vector<GridFunction>& family,
    const EquicontinuityParams& params = {});

}  // namespace mefkit
