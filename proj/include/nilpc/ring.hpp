#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nilpc/linalg.hpp"

namespace nilpc {

// Direct sum of cyclic groups Z/p_i, with p_i = 0 standing for Z.
struct FgAbelian {
  IntVector periods;
  std::string label;

  std::size_t size() const { return periods.size(); }
  IntVector reduce(IntVector v) const;
  bool is_zero(const IntVector& v) const;
  friend bool operator==(const FgAbelian& a, const FgAbelian& b) { return a.periods == b.periods; }
};

// Bilinear map A x B -> C given on basis pairs.
class BilinearMap {
 public:
  BilinearMap(FgAbelian a, FgAbelian b, FgAbelian c, std::vector<std::vector<IntVector>> table);

  const FgAbelian& left() const { return a_; }
  const FgAbelian& right() const { return b_; }
  const FgAbelian& values() const { return c_; }
  const IntVector& value(std::size_t i, std::size_t j) const { return table_[i][j]; }
  IntVector evaluate(const IntVector& x, const IntVector& y) const;

  bool left_nondegenerate() const;
  bool right_nondegenerate() const;
  // The values generate C.
  bool is_full() const;

  friend bool operator==(const BilinearMap& x, const BilinearMap& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.table_ == y.table_;
  }

 private:
  FgAbelian a_, b_, c_;
  std::vector<std::vector<IntVector>> table_;
};

enum class Slot { Left = 0, Right = 1, Value = 2 };

// Endomorphism triple acting on column vectors of A, B, C.
struct ScalarTriple {
  IntMatrix phi1;
  IntMatrix phi2;
  IntMatrix phi0;

  const IntMatrix& slot(Slot s) const;
  friend bool operator==(const ScalarTriple& x, const ScalarTriple& y) {
    return x.phi1 == y.phi1 && x.phi2 == y.phi2 && x.phi0 == y.phi0;
  }
};

ScalarTriple compose(const ScalarTriple& x, const ScalarTriple& y);

// Commutative ring of scalar triples, presented by an additive basis in Smith
// form and a multiplication table in that basis.
class ScalarRing {
 public:
  // Ring additively spanned by `generators` (entry vectors) together with the
  // triples that vanish on the modules. Throws NotClosed if the span is not a
  // unital subring.
  static ScalarRing from_lattice(const FgAbelian& a, const FgAbelian& b, const FgAbelian& c,
                                 const IntMatrix& generators);

  const FgAbelian& module(Slot s) const;
  std::size_t rank() const { return basis_.size(); }
  const std::vector<ScalarTriple>& basis() const { return basis_; }
  // Additive periods, 0 for Z.
  const IntVector& additive_periods() const { return periods_; }
  const IntVector& product(std::size_t i, std::size_t j) const { return mult_[i][j]; }
  const IntVector& unit() const { return unit_; }

  std::optional<IntVector> coordinates(const ScalarTriple& t) const;
  ScalarTriple element(const IntVector& coords) const;
  IntVector multiply(const IntVector& x, const IntVector& y) const;
  IntVector reduce(IntVector v) const;

  bool is_commutative() const;
  bool is_associative() const;
  bool is_finite() const;
  // Canonical lattice of entry vectors (includes the vanishing triples).
  const IntMatrix& entry_lattice() const { return lattice_; }

  std::size_t entry_count() const;
  IntVector entries(const ScalarTriple& t) const;
  ScalarTriple triple(const IntVector& entries) const;  // canonical representative

 private:
  ScalarRing() = default;

  FgAbelian a_, b_, c_;
  IntMatrix lattice_;
  IntMatrix v_;
  std::vector<std::size_t> kept_;
  std::vector<ScalarTriple> basis_;
  IntVector periods_;
  std::vector<std::vector<IntVector>> mult_;
  IntVector unit_;
};

ScalarRing scalar_ring(const BilinearMap& f);

// Coordinates [offset, offset + size) of one module of the triple.
struct Block {
  Slot slot;
  std::size_t offset;
  std::size_t size;
};

// Block of `to` composed with map equals map composed with block of `from`.
// map has to.size rows and from.size columns.
struct HomLinearity {
  Block from;
  Block to;
  IntMatrix map;
};

// The block maps the subgroup spanned by generators into itself.
struct SubmoduleInvariance {
  Block block;
  std::vector<IntVector> generators;
};

using RingConstraint = std::variant<HomLinearity, SubmoduleInvariance>;

ScalarRing restrict_ring(const ScalarRing& ring, const std::vector<RingConstraint>& constraints);
ScalarRing intersect_rings(const ScalarRing& x, const ScalarRing& y);

// Matrix of the block of a triple.
IntMatrix block_of(const ScalarTriple& t, const Block& b);

// A finite commutative ring: ideals are sets of element indices.
struct PrimeDecomposition {
  std::vector<std::vector<IntVector>> ideals;  // generators of each prime, as coordinates
  std::vector<std::size_t> ideal_sizes;
};

// Shortest product of prime ideals equal to zero, by exhaustive search.
PrimeDecomposition prime_decomposition_zero(const ScalarRing& ring, std::size_t max_elements = 4096);

}  // namespace nilpc
