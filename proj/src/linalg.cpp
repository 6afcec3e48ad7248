#include "nilpc/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace nilpc {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  ExtendedGcd out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  return from_rows(rows, rows.front().size());
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_row(std::size_t r, const IntVector& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

void IntMatrix::append_row(const IntVector& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

bool IntMatrix::row_is_zero(std::size_t r) const {
  for (std::size_t c = 0; c < cols_; ++c)
    if ((*this)(r, c) != 0) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if ((*this)(src, c) != 0) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if ((*this)(r, src) != 0) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
  IntMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DimensionError("vector-matrix dimension mismatch");
  IntVector out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

IntVector operator*(const IntMatrix& m, const IntVector& v) {
  if (v.size() != m.cols()) throw DimensionError("matrix-vector dimension mismatch");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << to_string(m.row(r));
  }
  return os << ']';
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ']';
  return os.str();
}

HermiteDecomposition hnf(const IntMatrix& a) {
  HermiteDecomposition out{a, IntMatrix::identity(a.rows()), 0, {}};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  std::size_t r = 0;
  for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
    for (std::size_t k = r + 1; k < h.rows(); ++k) {
      if (h(k, col) == 0) continue;
      const Int a0 = h(r, col);
      const Int b0 = h(k, col);
      const auto [g, s, t] = extended_gcd(a0, b0);
      const Int p = -b0 / g;
      const Int q = a0 / g;
      // [row_r; row_k] <- [[s, t], [p, q]] * [row_r; row_k], determinant 1
      for (IntMatrix* m : {&h, &u}) {
        for (std::size_t c = 0; c < m->cols(); ++c) {
          const Int x = (*m)(r, c);
          const Int y = (*m)(k, c);
          (*m)(r, c) = s * x + t * y;
          (*m)(k, c) = p * x + q * y;
        }
      }
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const Int q = floor_div(h(k, col), h(r, col));
      if (q != 0) {
        h.add_row_multiple(k, r, -q);
        u.add_row_multiple(k, r, -q);
      }
    }
    out.pivots.push_back(col);
    ++r;
  }
  out.rank = r;
  return out;
}

Int SmithDecomposition::diagonal(std::size_t i) const {
  if (i < D.rows() && i < D.cols()) return D(i, i);
  return 0;
}

SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition out{a, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), 0};
  IntMatrix& d = out.D;
  auto col_op = [&](std::size_t dst, std::size_t src, const Int& k) {
    // D <- D E, V <- V E, V_inv <- E^{-1} V_inv with E = I + k e_src e_dst^T
    d.add_col_multiple(dst, src, k);
    out.V.add_col_multiple(dst, src, k);
    out.V_inv.add_row_multiple(src, dst, -k);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    out.V.swap_cols(x, y);
    out.V_inv.swap_rows(x, y);
  };
  auto row_op = [&](std::size_t dst, std::size_t src, const Int& k) {
    d.add_row_multiple(dst, src, k);
    out.U.add_row_multiple(dst, src, k);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (bi == m || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      d.swap_rows(t, bi);
      out.U.swap_rows(t, bi);
      col_swap(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        row_op(i, t, -floor_div(d(i, t), d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_op(j, t, -floor_div(d(t, j), d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_op(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d(t, t) == 0) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      out.U.negate_row(t);
    }
  }
  out.rank = t;
  return out;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  const HermiteDecomposition h = hnf(generators);
  IntMatrix basis(h.rank, generators.cols());
  for (std::size_t r = 0; r < h.rank; ++r) basis.set_row(r, h.H.row(r));
  return basis;
}

IntMatrix left_kernel(const IntMatrix& a) {
  const HermiteDecomposition h = hnf(a);
  IntMatrix k(a.rows() - h.rank, a.rows());
  for (std::size_t r = h.rank; r < a.rows(); ++r) k.set_row(r - h.rank, h.U.row(r));
  return k;
}

std::optional<IntVector> echelon_coordinates(const IntMatrix& basis, const IntVector& v) {
  if (v.size() != basis.cols()) throw DimensionError("coordinate vector length mismatch");
  IntVector rest = v;
  IntVector coords(basis.rows());
  for (std::size_t k = 0; k < basis.rows(); ++k) {
    std::size_t p = 0;
    while (p < basis.cols() && basis(k, p) == 0) ++p;
    if (p == basis.cols()) continue;
    if (rest[p] % basis(k, p) != 0) return std::nullopt;
    coords[k] = rest[p] / basis(k, p);
    if (coords[k] != 0)
      for (std::size_t c = p; c < basis.cols(); ++c) rest[c] -= coords[k] * basis(k, c);
  }
  for (const Int& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return n == 0 ? Int(1) : Int(sign * m(n - 1, n - 1));
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("lattices live in different spaces");
  const std::size_t n = a.cols();
  if (a.rows() == 0 || b.rows() == 0) return IntMatrix(0, n);
  IntMatrix stacked(a.rows() + b.rows(), n);
  for (std::size_t r = 0; r < a.rows(); ++r) stacked.set_row(r, a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) stacked.set_row(a.rows() + r, b.row(r));
  const IntMatrix k = left_kernel(stacked);
  IntMatrix gens(k.rows(), n);
  for (std::size_t r = 0; r < k.rows(); ++r) {
    IntVector xa = k.row(r);
    xa.resize(a.rows());
    gens.set_row(r, xa * a);
  }
  return lattice_basis(gens);
}

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw DimensionError("right-hand side length mismatch");
  const std::size_t n = a.cols();
  // U A^T = H, so A U^T = H^T and the trailing rows of U span the kernel.
  const HermiteDecomposition h = hnf(a.transpose());
  IntVector y(n);
  for (std::size_t k = 0; k < h.rank; ++k) {
    const std::size_t p = h.pivots[k];
    Int rhs = b[p];
    for (std::size_t j = 0; j < k; ++j) rhs -= h.H(j, p) * y[j];
    if (rhs % h.H(k, p) != 0) return std::nullopt;
    y[k] = rhs / h.H(k, p);
  }
  IntegerSolution sol{y * h.U, IntMatrix(n - h.rank, n)};
  if (a * sol.particular != b) return std::nullopt;
  for (std::size_t r = h.rank; r < n; ++r) sol.kernel.set_row(r - h.rank, h.U.row(r));
  return sol;
}

std::optional<CongruenceSolution> solve_congruences(const IntMatrix& a, const IntVector& b,
                                                    const IntVector& moduli) {
  if (b.size() != a.rows() || moduli.size() != a.rows())
    throw DimensionError("congruence system dimension mismatch");
  const std::size_t n = a.cols();
  std::size_t slack = 0;
  for (const Int& m : moduli) {
    if (m < 0) throw DimensionError("negative modulus");
    if (m != 0) ++slack;
  }
  IntMatrix ext(a.rows(), n + slack);
  std::size_t s = n;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) ext(r, c) = a(r, c);
    if (moduli[r] != 0) ext(r, s++) = -moduli[r];
  }
  const auto sol = solve_integer_system(ext, b);
  if (!sol) return std::nullopt;

  IntMatrix projected(sol->kernel.rows(), n);
  for (std::size_t r = 0; r < sol->kernel.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) projected(r, c) = sol->kernel(r, c);
  CongruenceSolution out{IntVector(sol->particular.begin(), sol->particular.begin() + static_cast<std::ptrdiff_t>(n)),
                         lattice_basis(projected)};
  for (std::size_t k = 0; k < out.lattice.rows(); ++k) {
    std::size_t p = 0;
    while (out.lattice(k, p) == 0) ++p;
    const Int q = floor_div(out.particular[p], out.lattice(k, p));
    if (q != 0)
      for (std::size_t c = p; c < n; ++c) out.particular[c] -= q * out.lattice(k, c);
  }
  return out;
}

}  // namespace nilpc
