#include "mefkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <regex>
#include <set>
#include <utility>

#include "mefkit/error.hpp"

namespace mefkit {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

void check_automorphism(const CellComplex& k, const std::vector<Vertex>& g) {
  const auto n = static_cast<std::size_t>(k.vertex_count());
  require(g.size() == n, ErrorCode::NotAutomorphism,
          "generator must assign an image to every vertex");
  std::vector<bool> hit(n, false);
  for (Vertex image : g) {
    require(image >= 0 && static_cast<std::size_t>(image) < n,
            ErrorCode::NotAutomorphism, "generator image out of range");
    require(!hit[static_cast<std::size_t>(image)], ErrorCode::NotAutomorphism,
            "generator is not injective");
    hit[static_cast<std::size_t>(image)] = true;
  }
  for (const Edge& e : k.edges()) {
    require(k.has_edge(g[static_cast<std::size_t>(e.first)],
                       g[static_cast<std::size_t>(e.second)]),
            ErrorCode::NotAutomorphism, "generator does not preserve edges");
  }
  std::set<Square> squares;
  for (const Square& s : k.squares()) squares.insert(canonical_square(s));
  for (const Square& s : k.squares()) {
    Square image{g[static_cast<std::size_t>(s[0])],
                 g[static_cast<std::size_t>(s[1])],
                 g[static_cast<std::size_t>(s[2])],
                 g[static_cast<std::size_t>(s[3])]};
    require(squares.count(canonical_square(image)) > 0,
            ErrorCode::NotAutomorphism, "generator does not preserve squares");
  }
}

double mod1(double x) {
  double y = x - std::floor(x);
  if (y >= 1.0) y = 0.0;
  if (y < 0.0) y = 0.0;
  return y;
}

Rational mod1(const Rational& x) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(x);
  cpp_int den = denominator(x);
  cpp_int q = num / den;
  if (num < 0 && q * den != num) --q;
  return x - Rational(q);
}

// Continued-fraction convergents of an exact rational, smallest denominators
// first, stopping at max_den. accept(p, q, error) ends the scan early.
template <typename Accept>
void scan_convergents(const Rational& x, const Int& max_den, Accept accept) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(x);
  cpp_int den = denominator(x);
  cpp_int h0 = 0, k0 = 1;  // p_{-2}/q_{-2}
  cpp_int h1 = 1, k1 = 0;  // p_{-1}/q_{-1}
  while (den != 0) {
    cpp_int a = num / den;
    if (num < 0 && a * den != num) --a;
    cpp_int rem = num - a * den;
    cpp_int h2 = a * h1 + h0;
    cpp_int k2 = a * k1 + k0;
    if (k2 > max_den) return;
    Rational conv(h2, k2);
    Rational err = x - conv;
    if (err < 0) err = -err;
    if (accept(h2, k2, err)) return;
    h0 = h1;
    k0 = k1;
    h1 = h2;
    k1 = k2;
    num = den;
    den = rem;
  }
}

std::optional<Rational> deemed_rational(const Rational& x, int digits,
                                        const Int& max_den) {
  std::optional<Rational> found;
  Rational print_cut = digits > 0 ? Rational(1, boost::multiprecision::pow(
                                                    Int(10), digits))
                                  : Rational(1);
  scan_convergents(x, max_den, [&](const Int& p, const Int& q, const Rational& err) {
    Rational cut = Rational(1, 1000 * q * q);
    if (print_cut < cut) cut = print_cut;
    if (err < cut) {
      found = Rational(p, q);
      return true;
    }
    return false;
  });
  return found;
}

double warp_table_apply(const std::vector<double>& table, double x) {
  const auto s = table.size();
  double pos = x * static_cast<double>(s);
  auto i = static_cast<std::size_t>(pos);
  if (i >= s) i = s - 1;
  double t = pos - static_cast<double>(i);
  double lo = table[i];
  double hi = i + 1 < s ? table[i + 1] : table[0] + 1.0;
  return lo + t * (hi - lo);
}

void check_warp(const Warp& w) {
  if (w.kind != WarpKind::UserTable) return;
  require(w.table.size() >= 2, ErrorCode::InvalidArgument,
          "warp table needs at least two samples");
  require(w.table.front() == 0.0, ErrorCode::InvalidArgument,
          "warp must fix 0");
  for (std::size_t i = 0; i + 1 < w.table.size(); ++i) {
    require(w.table[i] < w.table[i + 1], ErrorCode::InvalidArgument,
            "warp table must be strictly increasing");
  }
  require(w.table.back() < 1.0, ErrorCode::InvalidArgument,
          "warp table values must stay below 1");
}

}  // namespace

FiniteAction::FiniteAction(ComplexPtr complex,
                           std::vector<std::vector<Vertex>> generators)
    : complex_(std::move(complex)), generators_(std::move(generators)) {
  require(complex_ != nullptr, ErrorCode::InvalidArgument,
          "action needs a complex");
  for (const auto& g : generators_) check_automorphism(*complex_, g);
}

Partition orbit_partition(const FiniteAction& act) {
  const int n = act.complex().vertex_count();
  UnionFind uf(n);
  for (const auto& g : act.generators()) {
    for (Vertex v = 0; v < n; ++v) uf.unite(v, g[static_cast<std::size_t>(v)]);
  }
  std::vector<int> root_label(static_cast<std::size_t>(n), -1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  int next = 0;
  for (Vertex v = 0; v < n; ++v) {
    int r = uf.find(v);
    if (root_label[static_cast<std::size_t>(r)] < 0) {
      root_label[static_cast<std::size_t>(r)] = next++;
    }
    labels[static_cast<std::size_t>(v)] = root_label[static_cast<std::size_t>(r)];
  }
  return Partition(std::move(labels));
}

QuotientMap maximal_trivial_factor(const FiniteAction& act) {
  return quotient_by_partition(act.complex_ptr(), orbit_partition(act));
}

bool is_invariant_constant(const FiniteAction& act) {
  return orbit_partition(act).class_count() == 1;
}

double RotationEntry::value() const { return exact.convert_to<double>(); }

namespace {

// cpp_int's string constructor treats a leading 0 as an octal prefix, so
// digit runs like "0934" must be accumulated in base 10 by hand.
Int int_from_digits(const std::string& digits) {
  Int value = 0;
  for (char c : digits) value = value * 10 + (c - '0');
  return value;
}

}  // namespace

RotationEntry RotationEntry::parse(const std::string& text) {
  static const std::regex fraction(R"(^\s*([+-]?)(\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex decimal(R"(^\s*([+-]?)(\d+)(?:\.(\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    Int den = int_from_digits(m[3].str());
    require(den != 0, ErrorCode::ParseError, "zero denominator in '" + text + "'");
    Rational v(int_from_digits(m[2].str()), den);
    if (m[1].str() == "-") v = -v;
    return RotationEntry{v, false, 0};
  }
  if (std::regex_match(text, m, decimal)) {
    Rational v(int_from_digits(m[2].str()));
    int digits = 0;
    if (m[3].matched) {
      const std::string frac = m[3].str();
      digits = static_cast<int>(frac.size());
      Int scale = boost::multiprecision::pow(Int(10), digits);
      v += Rational(int_from_digits(frac), scale);
    }
    if (m[1].str() == "-") v = -v;
    return RotationEntry{v, m[3].matched, digits};
  }
  fail(ErrorCode::ParseError, "cannot parse rotation entry '" + text + "'");
}

std::optional<Rational> effective_rational(const RotationEntry& entry) {
  if (!entry.from_decimal) return entry.exact;
  return deemed_rational(entry.exact, entry.digits, Int(1000000));
}

std::optional<Rational> effective_rational(double x, long long max_den) {
  require(max_den >= 1, ErrorCode::InvalidArgument,
          "denominator cap must be positive");
  require(std::isfinite(x), ErrorCode::InvalidArgument,
          "cannot approximate a non-finite value");
  return deemed_rational(Rational(x), 12, Int(max_den));
}

double Warp::apply(double x) const {
  switch (kind) {
    case WarpKind::Identity:
      return x;
    case WarpKind::Square:
      return x * x;
    case WarpKind::UserTable:
      return warp_table_apply(table, x);
  }
  return x;
}

Warp Warp::user_table(std::vector<double> samples) {
  Warp w{WarpKind::UserTable, std::move(samples)};
  check_warp(w);
  return w;
}

TorusSystem::TorusSystem(int dim, IntMatrix matrix,
                         std::vector<RotationEntry> rotation,
                         std::vector<Warp> warps, int grid)
    : dim_(dim),
      matrix_(std::move(matrix)),
      rotation_(std::move(rotation)),
      warps_(std::move(warps)),
      grid_(grid) {
  require(dim_ >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  require(matrix_.rows() == static_cast<std::size_t>(dim_) &&
              matrix_.cols() == static_cast<std::size_t>(dim_),
          ErrorCode::DimensionMismatch, "matrix must be dim x dim");
  require(rotation_.size() == static_cast<std::size_t>(dim_),
          ErrorCode::DimensionMismatch, "rotation must have dim entries");
  require(warps_.size() == static_cast<std::size_t>(dim_),
          ErrorCode::DimensionMismatch, "one warp per coordinate");
  require(grid_ >= 8, ErrorCode::ResolutionTooSmall, "grid must be at least 8");
  for (const Warp& w : warps_) check_warp(w);
  matrix_d_.resize(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      matrix_d_[static_cast<std::size_t>(i * dim_ + j)] =
          matrix_.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
              .convert_to<double>();
    }
  }
  rotation_d_.reserve(rotation_.size());
  for (const RotationEntry& r : rotation_) rotation_d_.push_back(r.value());
}

bool TorusSystem::affine() const {
  return std::all_of(warps_.begin(), warps_.end(),
                     [](const Warp& w) { return w.is_identity(); });
}

bool TorusSystem::pure_rotation() const {
  if (!affine()) return false;
  return matrix_ == IntMatrix::identity(static_cast<std::size_t>(dim_));
}

bool TorusSystem::invertible() const {
  Int det = determinant(matrix_);
  return det == 1 || det == -1;
}

std::vector<double> TorusSystem::apply(const std::vector<double>& x) const {
  require(x.size() == static_cast<std::size_t>(dim_),
          ErrorCode::DimensionMismatch, "point has wrong dimension");
  std::vector<double> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    double acc = rotation_d_[static_cast<std::size_t>(i)];
    for (int j = 0; j < dim_; ++j) {
      acc += matrix_d_[static_cast<std::size_t>(i * dim_ + j)] *
             x[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] =
        warps_[static_cast<std::size_t>(i)].apply(mod1(acc));
  }
  return out;
}

std::vector<double> TorusSystem::iterate(std::vector<double> x, int steps) const {
  require(steps >= 0, ErrorCode::InvalidArgument, "steps must be nonnegative");
  for (int s = 0; s < steps; ++s) x = apply(x);
  return x;
}

std::vector<Rational> TorusSystem::apply_exact(
    const std::vector<Rational>& x) const {
  require(affine(), ErrorCode::InvalidArgument,
          "exact iteration needs an affine system");
  require(x.size() == static_cast<std::size_t>(dim_),
          ErrorCode::DimensionMismatch, "point has wrong dimension");
  std::vector<Rational> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    Rational acc = rotation_[static_cast<std::size_t>(i)].exact;
    for (int j = 0; j < dim_; ++j) {
      acc += Rational(matrix_.at(static_cast<std::size_t>(i),
                                 static_cast<std::size_t>(j))) *
             x[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = mod1(acc);
  }
  return out;
}

GridFunction GridFunction::constant(int dim, int grid, Cx value) {
  return GridFunction{dim, grid,
                      std::vector<Cx>(grid_point_count(dim, grid), value)};
}

std::size_t grid_point_count(int dim, int grid) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  require(grid >= 1, ErrorCode::InvalidArgument, "grid must be positive");
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= static_cast<std::size_t>(grid);
    require(total <= (std::size_t{1} << 26), ErrorCode::InvalidArgument,
            "grid too large");
  }
  return total;
}

std::size_t grid_offset(int dim, int grid, std::span<const int> coords) {
  require(coords.size() == static_cast<std::size_t>(dim),
          ErrorCode::DimensionMismatch, "coordinate count mismatch");
  std::size_t off = 0;
  std::size_t stride = 1;
  for (int i = 0; i < dim; ++i) {
    const int c = coords[static_cast<std::size_t>(i)];
    require(c >= 0 && c < grid, ErrorCode::IndexOutOfRange,
            "coordinate outside grid");
    off += static_cast<std::size_t>(c) * stride;
    stride *= static_cast<std::size_t>(grid);
  }
  return off;
}

void grid_coords(int dim, int grid, std::size_t offset, std::span<int> out) {
  require(out.size() == static_cast<std::size_t>(dim),
          ErrorCode::DimensionMismatch, "coordinate count mismatch");
  for (int i = 0; i < dim; ++i) {
    out[static_cast<std::size_t>(i)] =
        static_cast<int>(offset % static_cast<std::size_t>(grid));
    offset /= static_cast<std::size_t>(grid);
  }
}

Cx interpolate(const GridFunction& f, std::span<const double> point) {
  require(point.size() == static_cast<std::size_t>(f.dim),
          ErrorCode::DimensionMismatch, "point has wrong dimension");
  const int dim = f.dim;
  const int n = f.grid;
  std::vector<int> base(static_cast<std::size_t>(dim));
  std::vector<double> frac(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    double s = mod1(point[static_cast<std::size_t>(i)]);
    double pos = s * n;
    int b = static_cast<int>(std::floor(pos));
    if (b >= n) b = n - 1;
    base[static_cast<std::size_t>(i)] = b;
    frac[static_cast<std::size_t>(i)] = pos - b;
  }
  Cx acc{0.0, 0.0};
  std::vector<int> corner(static_cast<std::size_t>(dim));
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    double weight = 1.0;
    for (int i = 0; i < dim; ++i) {
      const bool hi = (mask >> i) & 1u;
      weight *= hi ? frac[static_cast<std::size_t>(i)]
                   : 1.0 - frac[static_cast<std::size_t>(i)];
      corner[static_cast<std::size_t>(i)] =
          (base[static_cast<std::size_t>(i)] + (hi ? 1 : 0)) % n;
    }
    if (weight == 0.0) continue;
    acc += weight * f.values[grid_offset(dim, n, corner)];
  }
  return acc;
}

namespace {

void check_grid_shape(const TorusSystem& sys, const GridFunction& f) {
  require(f.dim == sys.dim() && f.grid == sys.grid() &&
              f.values.size() == grid_point_count(f.dim, f.grid),
          ErrorCode::GridMismatch, "grid function does not match the system");
}

}  // namespace

GridFunction pullback(const TorusSystem& sys, const GridFunction& f) {
  return iterate_pullback(sys, f, 1);
}

GridFunction iterate_pullback(const TorusSystem& sys, const GridFunction& f,
                              int steps) {
  check_grid_shape(sys, f);
  require(steps >= 0, ErrorCode::InvalidArgument, "steps must be nonnegative");
  const int dim = sys.dim();
  const int n = sys.grid();
  const std::size_t total = f.values.size();
  GridFunction out{dim, n, std::vector<Cx>(total)};
  std::vector<int> coords(static_cast<std::size_t>(dim));
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (std::size_t v = 0; v < total; ++v) {
    grid_coords(dim, n, v, coords);
    for (int i = 0; i < dim; ++i) {
      x[static_cast<std::size_t>(i)] =
          static_cast<double>(coords[static_cast<std::size_t>(i)]) / n;
    }
    for (int s = 0; s < steps; ++s) x = sys.apply(x);
    out.values[v] = interpolate(f, x);
  }
  return out;
}

LatticeFunction to_lattice_function(const GridFunction& f,
                                    ComplexPtr grid_complex) {
  require(grid_complex != nullptr, ErrorCode::InvalidArgument,
          "grid complex required");
  require(static_cast<std::size_t>(grid_complex->vertex_count()) ==
              f.values.size(),
          ErrorCode::GridMismatch, "complex size does not match the grid");
  return LatticeFunction(std::move(grid_complex), f.values);
}

GridFunction to_grid_function(const LatticeFunction& f, int dim, int grid) {
  require(grid_point_count(dim, grid) == f.values().size(),
          ErrorCode::GridMismatch, "grid shape does not match the complex");
  return GridFunction{dim, grid, f.values()};
}

double ModulusTable::best_uniform_bound() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    double worst = 0.0;
    for (int j = 0; j < horizon; ++j) {
      worst = std::max(worst, omega[static_cast<std::size_t>(j)][d]);
    }
    best = std::min(best, worst);
  }
  return best;
}

std::vector<double> default_deltas(int grid) {
  std::vector<double> out;
  for (double d = 1.0 / grid; d <= 0.5 + 1e-12; d *= 2.0) out.push_back(d);
  return out;
}

EquicontinuityResult equicontinuity_estimate(const TorusSystem& sys,
                                             const GridFunction& f,
                                             int horizon,
                                             const std::vector<double>& deltas,
                                             double threshold) {
  return equicontinuity_estimate(sys, std::vector<GridFunction>{f}, horizon,
                                 deltas, threshold);
}

EquicontinuityResult equicontinuity_estimate(
    const TorusSystem& sys, const std::vector<GridFunction>& family,
    int horizon, const std::vector<double>& deltas, double threshold) {
  require(!deltas.empty(), ErrorCode::EmptyDeltas,
          "at least one delta is required");
  require(horizon >= 1, ErrorCode::InvalidArgument, "horizon must be positive");
  for (const GridFunction& f : family) check_grid_shape(sys, f);

  const int dim = sys.dim();
  const int n = sys.grid();
  const std::size_t total = grid_point_count(dim, n);

  std::vector<int> windows;
  int w_max = 0;
  for (double d : deltas) {
    require(d > 0.0, ErrorCode::InvalidArgument, "deltas must be positive");
    int w = static_cast<int>(std::floor(d * n + 1e-9));
    w = std::min(w, n / 2);
    windows.push_back(w);
    w_max = std::max(w_max, w);
  }

  // Offsets with positive leading sign, tagged by Chebyshev radius; each
  // unordered grid pair at radius r appears once.
  std::vector<std::pair<std::vector<int>, int>> offsets;
  {
    std::vector<int> o(static_cast<std::size_t>(dim), -w_max);
    while (true) {
      int lead = 0;
      int radius = 0;
      for (int i = dim - 1; i >= 0; --i) {
        if (o[static_cast<std::size_t>(i)] != 0) lead = o[static_cast<std::size_t>(i)];
      }
      for (int c : o) radius = std::max(radius, std::abs(c));
      if (lead > 0) offsets.emplace_back(o, radius);
      int i = 0;
      for (; i < dim; ++i) {
        if (o[static_cast<std::size_t>(i)] < w_max) {
          ++o[static_cast<std::size_t>(i)];
          break;
        }
        o[static_cast<std::size_t>(i)] = -w_max;
      }
      if (i == dim) break;
    }
  }

  EquicontinuityResult result;
  result.table.deltas = deltas;
  result.table.horizon = horizon;
  result.table.omega.assign(
      static_cast<std::size_t>(horizon),
      std::vector<double>(deltas.size(), 0.0));
  result.threshold = threshold;

  // Shared forward orbit of the grid, advanced one step per row.
  std::vector<std::vector<double>> points(total);
  std::vector<int> coords(static_cast<std::size_t>(dim));
  for (std::size_t v = 0; v < total; ++v) {
    grid_coords(dim, n, v, coords);
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      x[static_cast<std::size_t>(i)] =
          static_cast<double>(coords[static_cast<std::size_t>(i)]) / n;
    }
    points[v] = std::move(x);
  }

  std::vector<double> row_max(static_cast<std::size_t>(w_max) + 1, 0.0);
  std::vector<Cx> g(total);
  std::vector<int> neighbor(static_cast<std::size_t>(dim));
  for (int j = 1; j <= horizon; ++j) {
    for (std::size_t v = 0; v < total; ++v) points[v] = sys.apply(points[v]);
    std::fill(row_max.begin(), row_max.end(), 0.0);
    for (const GridFunction& f : family) {
      for (std::size_t v = 0; v < total; ++v) g[v] = interpolate(f, points[v]);
      for (const auto& [off, radius] : offsets) {
        for (std::size_t v = 0; v < total; ++v) {
          grid_coords(dim, n, v, coords);
          for (int i = 0; i < dim; ++i) {
            neighbor[static_cast<std::size_t>(i)] =
                (coords[static_cast<std::size_t>(i)] +
                 off[static_cast<std::size_t>(i)] + n) %
                n;
          }
          const std::size_t u = grid_offset(dim, n, neighbor);
          const double diff = std::abs(g[v] - g[u]);
          if (diff > row_max[static_cast<std::size_t>(radius)]) {
            row_max[static_cast<std::size_t>(radius)] = diff;
          }
        }
      }
    }
    std::vector<double> prefix(row_max.size(), 0.0);
    double run = 0.0;
    for (std::size_t r = 0; r < row_max.size(); ++r) {
      run = std::max(run, row_max[r]);
      prefix[r] = run;
    }
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      result.table.omega[static_cast<std::size_t>(j - 1)][d] =
          prefix[static_cast<std::size_t>(windows[d])];
    }
  }

  result.equicontinuous = result.table.best_uniform_bound() <= threshold;
  return result;
}

namespace {

// Marks every grid point within eps of `y` (torus sup-distance).
void mark_near(std::vector<char>& covered, int dim, int n,
               const std::vector<double>& y, double eps) {
  std::vector<int> lo(static_cast<std::size_t>(dim));
  std::vector<int> len(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    const double c = y[static_cast<std::size_t>(i)];
    const int a = static_cast<int>(std::ceil((c - eps) * n - 1e-12));
    const int b = static_cast<int>(std::floor((c + eps) * n + 1e-12));
    lo[static_cast<std::size_t>(i)] = a;
    len[static_cast<std::size_t>(i)] = std::min(b - a + 1, n);
  }
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  std::vector<int> cell(static_cast<std::size_t>(dim));
  while (true) {
    for (int i = 0; i < dim; ++i) {
      cell[static_cast<std::size_t>(i)] =
          ((lo[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)]) %
               n +
           n) %
          n;
    }
    covered[grid_offset(dim, n, cell)] = 1;
    int i = 0;
    for (; i < dim; ++i) {
      if (idx[static_cast<std::size_t>(i)] + 1 <
          len[static_cast<std::size_t>(i)]) {
        ++idx[static_cast<std::size_t>(i)];
        break;
      }
      idx[static_cast<std::size_t>(i)] = 0;
    }
    if (i == dim) break;
  }
}

bool all_covered(const std::vector<char>& covered) {
  return std::all_of(covered.begin(), covered.end(),
                     [](char c) { return c != 0; });
}

}  // namespace

InvarianceDecision invariance_decision(const TorusSystem& sys,
                                       const InvarianceParams& params) {
  const int dim = sys.dim();
  const int n = sys.grid();

  if (sys.pure_rotation() && dim <= 4) {
    for (const RotationEntry& r : sys.rotation()) {
      if (effective_rational(r)) return {false, false, "rational-entry"};
    }
    // Bounded integer-relation search: k . a integral for some nonzero k
    // with |k|_inf <= 20 certifies a nonconstant invariant function.
    std::vector<int> k(static_cast<std::size_t>(dim), -20);
    while (true) {
      int lead = 0;
      for (int i = dim - 1; i >= 0; --i) {
        if (k[static_cast<std::size_t>(i)] != 0) lead = k[static_cast<std::size_t>(i)];
      }
      if (lead > 0) {
        Rational dot = 0;
        for (int i = 0; i < dim; ++i) {
          dot += Rational(k[static_cast<std::size_t>(i)]) *
                 sys.rotation()[static_cast<std::size_t>(i)].exact;
        }
        if (denominator(dot) == 1) return {false, false, "integer-relation"};
      }
      int i = 0;
      for (; i < dim; ++i) {
        if (k[static_cast<std::size_t>(i)] < 20) {
          ++k[static_cast<std::size_t>(i)];
          break;
        }
        k[static_cast<std::size_t>(i)] = -20;
      }
      if (i == dim) break;
    }
    return {true, false, "independence-search"};
  }

  const double eps = params.eps_net > 0.0 ? params.eps_net : 2.0 / n;
  std::vector<char> covered(grid_point_count(dim, n), 0);

  if (sys.affine()) {
    std::vector<Rational> x(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      x[static_cast<std::size_t>(i)] = Rational(408581 + i, 999983);
    }
    std::vector<double> y(static_cast<std::size_t>(dim));
    for (long s = 0; s <= params.steps; ++s) {
      for (int i = 0; i < dim; ++i) {
        y[static_cast<std::size_t>(i)] =
            x[static_cast<std::size_t>(i)].convert_to<double>();
      }
      mark_near(covered, dim, n, y, eps);
      if (all_covered(covered)) return {true, true, "orbit-density-exact"};
      x = sys.apply_exact(x);
    }
    return {false, true, "orbit-density-exact"};
  }

  std::vector<double> x(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    x[static_cast<std::size_t>(i)] = (408581.0 + i) / 999983.0;
  }
  for (long s = 0; s <= params.steps; ++s) {
    mark_near(covered, dim, n, x, eps);
    if (all_covered(covered)) return {true, true, "orbit-density-float"};
    x = sys.apply(x);
  }
  return {false, true, "orbit-density-float"};
}

bool is_invariant_constant(const TorusSystem& sys,
                           const InvarianceParams& params) {
  return invariance_decision(sys, params).invariant_constant;
}

EquivariantHull equivariant_monotone_hull(const FiniteAction& act,
                                          const QuotientMap& p) {
  require(same_complex(act.complex_ptr(), p.domain_ptr()),
          ErrorCode::ComplexMismatch, "action and map must share the domain");
  const int n = act.complex().vertex_count();
  for (const auto& g : act.generators()) {
    // g must permute fibers: p(u) == p(v) forces p(gu) == p(gv).
    std::vector<Vertex> image_class(
        static_cast<std::size_t>(p.codomain().vertex_count()), -1);
    for (Vertex v = 0; v < n; ++v) {
      const Vertex c = p(v);
      const Vertex gc = p(g[static_cast<std::size_t>(v)]);
      if (image_class[static_cast<std::size_t>(c)] < 0) {
        image_class[static_cast<std::size_t>(c)] = gc;
      } else {
        require(image_class[static_cast<std::size_t>(c)] == gc,
                ErrorCode::NotEquivariant,
                "generator does not permute the fibers");
      }
    }
  }
  MonotoneHull hull = monotone_hull(p);
  std::vector<std::vector<Vertex>> descended;
  descended.reserve(act.generators().size());
  const int hull_n = hull.q.codomain().vertex_count();
  for (const auto& g : act.generators()) {
    std::vector<Vertex> d(static_cast<std::size_t>(hull_n), -1);
    for (Vertex v = 0; v < n; ++v) {
      d[static_cast<std::size_t>(hull.q(v))] =
          hull.q(g[static_cast<std::size_t>(v)]);
    }
    descended.push_back(std::move(d));
  }
  FiniteAction induced(hull.q.codomain_ptr(), std::move(descended));
  return EquivariantHull{std::move(hull), std::move(induced)};
}

IrrEquicontinuityDetail irr_equicontinuity_detail(
    const TorusSystem& sys, const std::vector<GridFunction>& family,
    const EquicontinuityParams& params) {
  const std::vector<double>& deltas =
      params.deltas.empty() ? default_deltas(sys.grid()) : params.deltas;
  ComplexPtr cx = share(torus_grid(sys.dim(), sys.grid()));
  std::vector<GridFunction> parts;
  for (const GridFunction& f : family) {
    for (const LatticeFunction& part :
         irr(to_lattice_function(f, cx), params.part_tolerance)) {
      parts.push_back(to_grid_function(part, sys.dim(), sys.grid()));
    }
  }
  IrrEquicontinuityDetail detail;
  detail.family = equicontinuity_estimate(sys, family, params.horizon, deltas,
                                          params.threshold);
  detail.parts = equicontinuity_estimate(sys, parts, params.horizon, deltas,
                                         params.threshold);
  detail.part_count = parts.size();
  detail.agree = detail.family.equicontinuous == detail.parts.equicontinuous;
  return detail;
}

bool irr_equicontinuity_check(const TorusSystem& sys,
                              const std::vector<GridFunction>& family,
                              const EquicontinuityParams& params) {
  return irr_equicontinuity_detail(sys, family, params).agree;
}

}  // namespace mefkit
