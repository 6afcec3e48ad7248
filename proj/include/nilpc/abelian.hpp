#pragma once

#include <vector>

#include "nilpc/subgroup.hpp"

namespace nilpc {

// Abelian section top/bottom of the ambient group, bottom normal and
// contained in top, put in Smith form: a basis of lifts with periods
// d_1 | d_2 | ... (free factors last, period infinite).
class AbelianSection {
 public:
  AbelianSection(const Subgroup& top, const Subgroup& bottom);

  const Subgroup& top() const { return top_; }
  const Subgroup& bottom() const { return bottom_; }

  std::size_t rank() const { return periods_.size(); }
  std::size_t free_rank() const;
  const std::vector<Period>& periods() const { return periods_; }
  // Periods as integers, 0 for infinite.
  IntVector invariants() const;
  IntVector moduli() const { return invariants(); }
  bool is_trivial() const { return periods_.empty(); }

  // Representative in the ambient group of the k-th basis element.
  const Element& lift(std::size_t k) const { return lifts_.at(k); }
  const std::vector<Element>& lifts() const { return lifts_; }
  // Coordinates of an element of top, reduced modulo the finite periods.
  IntVector coordinates(const Element& x) const;
  Element lift_vector(const IntVector& coords) const;
  IntVector reduce(IntVector v) const;

 private:
  Subgroup top_;
  Subgroup bottom_;
  Quotient q_;
  Subgroup projected_;
  IntMatrix v_;
  std::vector<std::size_t> kept_;
  std::vector<Period> periods_;
  std::vector<Element> lifts_;
};

}  // namespace nilpc
