#include "mefkit/abelian.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace mefkit {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(rows[i].size() == c, ErrorCode::InvalidArgument,
            "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  require(cols_ == rhs.rows_, ErrorCode::InvalidArgument,
          "matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.at(i, j) += a * rhs.at(k, j);
      }
    }
  }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row(std::size_t a, std::size_t b, const Int& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(a, j) += c * at(b, j);
}

void IntMatrix::add_col(std::size_t a, std::size_t b, const Int& c) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, a) += c * at(i, b);
}

void IntMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < cols_; ++j) at(a, j) = -at(a, j);
}

void IntMatrix::negate_col(std::size_t a) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, a) = -at(i, a);
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << at(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// Fraction-free elimination with complete pivoting. Every intermediate entry
// is a minor of the input, so the division is exact.
std::size_t rank_q(IntMatrix a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  std::size_t r = 0;
  Int prev = 1;
  while (r < n && r < m) {
    std::size_t pi = n, pj = m;
    for (std::size_t i = r; i < n && pi == n; ++i) {
      for (std::size_t j = r; j < m; ++j) {
        if (a.at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == n) break;
    a.swap_rows(r, pi);
    a.swap_cols(r, pj);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = r + 1; j < m; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(r, r) - a.at(i, r) * a.at(r, j)) / prev;
      }
      a.at(i, r) = 0;
    }
    prev = a.at(r, r);
    ++r;
  }
  return r;
}

Int determinant(IntMatrix a) {
  require(a.rows() == a.cols(), ErrorCode::InvalidArgument,
          "determinant needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a.at(i, k) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign < 0 ? Int(-a.at(n - 1, n - 1)) : a.at(n - 1, n - 1);
}

std::vector<Int> SmithDecomposition::diagonal() const {
  std::vector<Int> out;
  const std::size_t lim = std::min(d.rows(), d.cols());
  out.reserve(lim);
  for (std::size_t i = 0; i < lim; ++i) out.push_back(d.at(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& input) {
  SmithDecomposition s;
  const std::size_t n = input.rows();
  const std::size_t c = input.cols();
  s.d = input;
  s.u = IntMatrix::identity(n);
  s.v = IntMatrix::identity(c);
  s.v_inv = IntMatrix::identity(c);
  IntMatrix& d = s.d;

  // Row ops mirror onto u; column ops mirror onto v, with the inverse
  // operation applied to v_inv from the left so v * v_inv == I throughout.
  auto row_sub = [&](std::size_t a, std::size_t b, const Int& q) {
    d.add_row(a, b, -q);
    s.u.add_row(a, b, -q);
  };
  auto col_sub = [&](std::size_t a, std::size_t b, const Int& q) {
    d.add_col(a, b, -q);
    s.v.add_col(a, b, -q);
    s.v_inv.add_row(b, a, q);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    s.u.swap_rows(a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    s.v.swap_cols(a, b);
    s.v_inv.swap_rows(a, b);
  };

  const std::size_t lim = std::min(n, c);
  std::size_t t = 0;
  while (t < lim) {
    // Smallest nonzero entry of the working submatrix becomes the pivot;
    // remainders after truncated division are then strictly smaller, which
    // bounds the number of passes.
    std::size_t pi = n, pj = c;
    Int best = 0;
    for (std::size_t i = t; i < n; ++i) {
      for (std::size_t j = t; j < c; ++j) {
        const Int& e = d.at(i, j);
        if (e == 0) continue;
        Int mag = abs(e);
        if (pi == n || mag < best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == n) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool clean = true;
    for (std::size_t i = t + 1; i < n; ++i) {
      if (d.at(i, t) == 0) continue;
      Int q = d.at(i, t) / d.at(t, t);
      if (q != 0) row_sub(i, t, q);
      if (d.at(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < c; ++j) {
      if (d.at(t, j) == 0) continue;
      Int q = d.at(t, j) / d.at(t, t);
      if (q != 0) col_sub(j, t, q);
      if (d.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;

    // Pivot must divide everything that remains, otherwise d would not end
    // up with a divisibility chain. Pull one offending row up and retry.
    bool fixed = false;
    for (std::size_t i = t + 1; i < n && !fixed; ++i) {
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d.at(i, j) % d.at(t, t) != 0) {
          d.add_row(t, i, 1);
          s.u.add_row(t, i, 1);
          fixed = true;
          break;
        }
      }
    }
    if (fixed) continue;

    if (d.at(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

LatticeBasis lattice_rank(const IntMatrix& row_vectors) {
  auto s = smith_normal_form(row_vectors);
  LatticeBasis out;
  out.rank = s.rank;
  out.basis = IntMatrix(s.rank, row_vectors.cols());
  // Row lattice of the input equals the row lattice of d * v_inv; the first
  // `rank` rows of that product are d_i times the i-th row of v_inv.
  for (std::size_t i = 0; i < s.rank; ++i) {
    for (std::size_t j = 0; j < row_vectors.cols(); ++j) {
      out.basis.at(i, j) = s.d.at(i, i) * s.v_inv.at(i, j);
    }
    // Sign convention: first nonzero entry positive, so bases are stable
    // across equivalent generating sets.
    for (std::size_t j = 0; j < row_vectors.cols(); ++j) {
      if (out.basis.at(i, j) == 0) continue;
      if (out.basis.at(i, j) < 0) out.basis.negate_row(i);
      break;
    }
  }
  return out;
}

LatticeBasis lattice_rank(const std::vector<std::vector<long long>>& vectors) {
  const std::size_t c = vectors.empty() ? 0 : vectors[0].size();
  for (const auto& v : vectors) {
    require(v.size() == c, ErrorCode::DimensionMismatch,
            "generating vectors must share one length");
  }
  IntMatrix m(vectors.size(), c);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = vectors[i][j];
  }
  return lattice_rank(m);
}

bool in_row_lattice(const IntMatrix& row_vectors, const std::vector<Int>& k) {
  require(k.size() == row_vectors.cols(), ErrorCode::InvalidArgument,
          "vector length does not match lattice ambient dimension");
  auto s = smith_normal_form(row_vectors);
  const std::size_t c = row_vectors.cols();
  // y = k * v; membership reads off the diagonal: d_j | y_j on the pivot
  // block and y_j = 0 beyond it.
  for (std::size_t j = 0; j < c; ++j) {
    Int y = 0;
    for (std::size_t i = 0; i < c; ++i) y += k[i] * s.v.at(i, j);
    if (j < s.rank) {
      if (y % s.d.at(j, j) != 0) return false;
    } else if (y != 0) {
      return false;
    }
  }
  return true;
}

FiniteAbelian::FiniteAbelian(std::vector<long long> orders)
    : orders_(std::move(orders)) {
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    require(orders_[i] >= 2, ErrorCode::InvalidArgument,
            "cyclic orders must be >= 2");
    if (i > 0) {
      require(orders_[i] % orders_[i - 1] == 0, ErrorCode::InvalidArgument,
              "cyclic orders must form a divisibility chain");
    }
  }
}

Int FiniteAbelian::order() const {
  Int n = 1;
  for (long long d : orders_) n *= d;
  return n;
}

std::string FiniteAbelian::to_string() const {
  if (orders_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) os << " x ";
    os << "Z/" << orders_[i];
  }
  return os.str();
}

namespace {

std::vector<long long> reduce_mod(const std::vector<long long>& x,
                                  const std::vector<long long>& orders) {
  std::vector<long long> out(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    long long r = x[i] % orders[i];
    if (r < 0) r += orders[i];
    out[i] = r;
  }
  return out;
}

std::vector<std::vector<long long>> enumerate_elements(const FiniteAbelian& g,
                                                       long long cap) {
  require(g.order() <= cap, ErrorCode::FiniteGroupTooLarge,
          "finite factor order exceeds the enumeration cap " +
              std::to_string(cap));
  const auto& ord = g.orders();
  std::vector<std::vector<long long>> out;
  out.reserve(g.order().convert_to<std::size_t>());
  std::vector<long long> cur(ord.size(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < ord.size(); ++i) {
      if (++cur[i] < ord[i]) break;
      cur[i] = 0;
    }
    if (i == ord.size()) break;
  }
  return out;
}

}  // namespace

FiniteHom::FiniteHom(FiniteAbelian domain, FiniteAbelian codomain,
                     std::vector<std::vector<long long>> generator_images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  require(generator_images.size() == domain_.orders().size(),
          ErrorCode::InvalidArgument,
          "one image per domain generator required");
  images_.reserve(generator_images.size());
  for (std::size_t i = 0; i < generator_images.size(); ++i) {
    require(generator_images[i].size() == codomain_.orders().size(),
            ErrorCode::InvalidArgument,
            "generator image has wrong coordinate count");
    auto img = reduce_mod(generator_images[i], codomain_.orders());
    // g_i has order d_i, so d_i * img must vanish in the codomain.
    const long long d = domain_.orders()[i];
    for (std::size_t j = 0; j < img.size(); ++j) {
      if ((d * img[j]) % codomain_.orders()[j] != 0) {
        fail(ErrorCode::NotAHomomorphism,
             "generator " + std::to_string(i) +
                 " image violates the order relation");
      }
    }
    images_.push_back(std::move(img));
  }
}

std::vector<long long> FiniteHom::apply(
    const std::vector<long long>& element) const {
  require(element.size() == domain_.orders().size(),
          ErrorCode::InvalidArgument, "element has wrong coordinate count");
  std::vector<long long> acc(codomain_.orders().size(), 0);
  for (std::size_t i = 0; i < element.size(); ++i) {
    for (std::size_t j = 0; j < acc.size(); ++j) {
      acc[j] += element[i] * images_[i][j];
    }
  }
  return reduce_mod(acc, codomain_.orders());
}

std::vector<long long> quotient_invariants(std::size_t g,
                                           const IntMatrix& relations) {
  require(relations.cols() == g, ErrorCode::InvalidArgument,
          "relation rows must have length g");
  auto s = smith_normal_form(relations);
  require(s.rank == g, ErrorCode::InvalidArgument,
          "relation lattice has full rank only for finite quotients");
  std::vector<long long> out;
  for (std::size_t i = 0; i < g; ++i) {
    const Int& d = s.d.at(i, i);
    if (d > 1) out.push_back(d.convert_to<long long>());
  }
  return out;
}

HomClassification classify_torus_hom(const IntMatrix& m) {
  const std::size_t codim = m.rows();
  const std::size_t domdim = m.cols();
  auto s = smith_normal_form(m);
  HomClassification out;
  out.surjective = (s.rank == codim);
  out.kernel_finite = (s.rank == domdim);
  out.image_torus_dim = s.rank;
  // Component group of the image: dual to the torsion of Z^codim modulo the
  // annihilator of the image. The annihilator is the integer left kernel of
  // m, spanned by the rows of u past the pivot block; that lattice is
  // saturated, so the torsion comes out trivial (the image is a subtorus).
  IntMatrix annihilator(codim - s.rank, codim);
  for (std::size_t r = s.rank; r < codim; ++r) {
    for (std::size_t j = 0; j < codim; ++j) {
      annihilator.at(r - s.rank, j) = s.u.at(r, j);
    }
  }
  auto ann = smith_normal_form(annihilator);
  std::vector<long long> torsion;
  for (std::size_t i = 0; i < ann.rank; ++i) {
    if (ann.d.at(i, i) > 1) {
      torsion.push_back(ann.d.at(i, i).convert_to<long long>());
    }
  }
  out.image_finite_part = FiniteAbelian(std::move(torsion));
  if (out.kernel_finite) {
    Int k = 1;
    for (std::size_t i = 0; i < s.rank; ++i) k *= s.d.at(i, i);
    out.kernel_order = k;
  }
  return out;
}

HomClassification classify_product_hom(const FiniteHom& finite,
                                       const IntMatrix& m,
                                       long long max_enumeration) {
  HomClassification torus = classify_torus_hom(m);
  require(finite.codomain().order() <= max_enumeration,
          ErrorCode::FiniteGroupTooLarge,
          "codomain finite factor exceeds the enumeration cap");
  const auto elements = enumerate_elements(finite.domain(), max_enumeration);

  std::set<std::vector<long long>> image;
  Int kernel_f = 0;
  for (const auto& x : elements) {
    auto y = finite.apply(x);
    if (std::all_of(y.begin(), y.end(), [](long long v) { return v == 0; })) {
      ++kernel_f;
    }
    image.insert(std::move(y));
  }

  // Invariant factors of the image subgroup: the image is Z^g modulo the
  // lattice of relations k with sum_i k_i h_i = 0 in the codomain, and that
  // lattice is the projection of the integer kernel of [H | diag(c)].
  const std::size_t g = finite.domain().orders().size();
  const std::size_t j = finite.codomain().orders().size();
  IntMatrix stacked(j, g + j);
  for (std::size_t col = 0; col < g; ++col) {
    for (std::size_t row = 0; row < j; ++row) {
      stacked.at(row, col) = finite.generator_images()[col][row];
    }
  }
  for (std::size_t row = 0; row < j; ++row) {
    stacked.at(row, g + row) = finite.codomain().orders()[row];
  }
  auto ks = smith_normal_form(stacked);
  const std::size_t kdim = g + j - ks.rank;
  IntMatrix relations(kdim, g);
  for (std::size_t r = 0; r < kdim; ++r) {
    for (std::size_t colg = 0; colg < g; ++colg) {
      relations.at(r, colg) = ks.v.at(colg, ks.rank + r);
    }
  }
  FiniteAbelian image_group(quotient_invariants(g, relations));

  HomClassification out;
  out.surjective =
      torus.surjective && (Int(image.size()) == finite.codomain().order());
  out.kernel_finite = torus.kernel_finite;
  if (torus.kernel_finite) out.kernel_order = kernel_f * (*torus.kernel_order);
  out.image_torus_dim = torus.image_torus_dim;
  out.image_finite_part = image_group;
  return out;
}

}  // namespace mefkit
