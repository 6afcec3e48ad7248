#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nilpc/error.hpp"

namespace nilpc {

using Int = mpz_class;
using IntVector = std::vector<Int>;

// Floor division and the matching non-negative remainder (for b > 0).
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

struct ExtendedGcd {
  Int g;
  Int s;
  Int t;  // s*a + t*b == g >= 0
};
ExtendedGcd extended_gcd(const Int& a, const Int& b);

// Dense row-major matrix over the integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_row(std::size_t r, const IntVector& v);
  void append_row(const IntVector& v);
  bool row_is_zero(std::size_t r) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row(dst) += k * row(src)
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  // col(dst) += k * col(src)
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t r);

  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntVector operator*(const IntVector& v, const IntMatrix& m);  // row vector times matrix
IntVector operator*(const IntMatrix& m, const IntVector& v);  // matrix times column vector
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::string to_string(const IntVector& v);

// U * A == H, U unimodular, H in row echelon form with positive pivots,
// entries above a pivot reduced into [0, pivot), zero rows last.
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
HermiteDecomposition hnf(const IntMatrix& a);

// U * A * V == D diagonal, d_i | d_{i+1}, d_i >= 0. V_inv is the inverse of V.
struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  IntMatrix V_inv;
  std::size_t rank = 0;
  Int diagonal(std::size_t i) const;  // 0 past the rank
};
SmithDecomposition snf(const IntMatrix& a);

// Exact determinant of a square matrix (fraction-free elimination).
Int determinant(const IntMatrix& a);

// Non-zero rows of the Hermite form: a canonical basis of the row lattice.
IntMatrix lattice_basis(const IntMatrix& generators);

// Basis of {x : x * A == 0}.
IntMatrix left_kernel(const IntMatrix& a);

// Coordinates of v in the row basis of an echelon matrix (as returned by
// lattice_basis); nullopt if v is not in the lattice.
std::optional<IntVector> echelon_coordinates(const IntMatrix& basis, const IntVector& v);

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

// Solutions x in Z^n of A x == b over Z.
struct IntegerSolution {
  IntVector particular;
  IntMatrix kernel;  // rows form a basis of {z : A z == 0}
};
std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, const IntVector& b);

// Solutions of sum_j A_ij x_j == b_i (mod moduli_i); modulus 0 is equality.
// The solution set is particular + lattice (rows of an HNF basis); the
// particular solution is reduced modulo that basis.
struct CongruenceSolution {
  IntVector particular;
  IntMatrix lattice;
};
std::optional<CongruenceSolution> solve_congruences(const IntMatrix& a, const IntVector& b,
                                                    const IntVector& moduli);

}  // namespace nilpc
