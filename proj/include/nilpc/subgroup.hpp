#pragma once

#include <optional>
#include <vector>

#include "nilpc/pc.hpp"

namespace nilpc {

// Subgroup given by its canonical induced polycyclic sequence: rows with
// distinct leading indices, positive leading exponents (dividing the period on
// finite layers) and every other row reduced at each leading index. Two
// subgroups are equal iff their rows are.
class Subgroup {
 public:
  Subgroup() = default;

  const PcPresentation& ambient() const { return g_; }
  const std::vector<Element>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool is_trivial() const { return rows_.empty(); }

  std::size_t leading_index(std::size_t r) const { return rows_[r].depth(); }
  const Int& leading_exponent(std::size_t r) const { return rows_[r][rows_[r].depth()]; }
  // Relative order of row r inside the subgroup.
  Period relative_order(std::size_t r) const;
  // Row with the given leading index, if any.
  std::optional<std::size_t> row_at(std::size_t layer) const;

  // Exponents e with x = r_1^{e_1} ... r_s^{e_s}, or nullopt when x is not in
  // the subgroup.
  std::optional<IntVector> exponents(const Element& x) const;
  bool contains(const Element& x) const { return exponents(x).has_value(); }
  bool contains(const Subgroup& other) const;
  Element evaluate(const IntVector& exps) const;

  // Index in the ambient group; infinite as Period::infinite().
  Period index() const;
  std::size_t hirsch_length() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.rows_ == b.rows_; }
  friend class IgsBuilder;

 private:
  Subgroup(PcPresentation g, std::vector<Element> rows) : g_(std::move(g)), rows_(std::move(rows)) {}

  PcPresentation g_;
  std::vector<Element> rows_;
};

Subgroup induce(const PcPresentation& g, const std::vector<Element>& generators);
Subgroup normal_closure(const PcPresentation& g, const std::vector<Element>& generators);
Subgroup whole_group(const PcPresentation& g);
Subgroup trivial_subgroup(const PcPresentation& g);
// K_i = <u_i, ..., u_m>, 0-based layer.
Subgroup layer_subgroup(const PcPresentation& g, std::size_t i);

Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup meet(const Subgroup& a, const Subgroup& b);
bool is_normal(const Subgroup& n);
// Normal closure of all [a, b], a in A, b in B.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
bool is_abelian(const Subgroup& h);
bool is_central(const Subgroup& h);

// Kernel of the homomorphism from h to an abelian group sending the k-th row
// of h to values[k]; component c is read modulo moduli[c] (0 for Z).
Subgroup kernel_to_abelian(const Subgroup& h, const std::vector<IntVector>& values, const IntVector& moduli);

// Quotient by a normal subgroup, with projection and a section back.
class Quotient {
 public:
  Quotient(const Subgroup& kernel, std::string name = {});

  const PcPresentation& group() const { return q_; }
  const PcPresentation& source() const { return n_.ambient(); }
  const Subgroup& kernel() const { return n_; }

  Element project(const Element& x) const;
  Element lift(const Element& y) const;
  Subgroup project(const Subgroup& h) const;
  // Full preimage of a subgroup of the quotient.
  Subgroup preimage(const Subgroup& h) const;

 private:
  Subgroup n_;
  std::vector<std::size_t> kept_;  // source layer of each quotient generator
  PcPresentation q_;
};

}  // namespace nilpc
