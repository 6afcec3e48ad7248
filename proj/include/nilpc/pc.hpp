#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nilpc/linalg.hpp"

namespace nilpc {

// Relative order of a generator; infinite is stored as 0.
class Period {
 public:
  Period() = default;
  static Period infinite() { return Period(); }
  static Period finite(const Int& n);
  // 0 means infinite, as in the file format.
  static Period from_int(const Int& n) { return n == 0 ? infinite() : finite(n); }

  bool is_infinite() const { return value_ == 0; }
  bool is_finite() const { return value_ != 0; }
  const Int& value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const Period& a, const Period& b) { return a.value_ == b.value_; }

 private:
  Int value_ = 0;
};

// Exponent vector of a group element in normal form u_1^{a_1} ... u_m^{a_m}.
class Element {
 public:
  Element() = default;
  explicit Element(std::size_t rank) : e_(rank) {}
  explicit Element(IntVector exps) : e_(std::move(exps)) {}

  std::size_t size() const { return e_.size(); }
  Int& operator[](std::size_t i) { return e_[i]; }
  const Int& operator[](std::size_t i) const { return e_[i]; }
  const IntVector& exponents() const { return e_; }
  IntVector& exponents() { return e_; }

  bool is_identity() const;
  // Index of the first non-zero exponent, size() for the identity.
  std::size_t depth() const;

  friend bool operator==(const Element& a, const Element& b) { return a.e_ == b.e_; }
  friend bool operator<(const Element& a, const Element& b) { return a.e_ < b.e_; }

 private:
  IntVector e_;
};

std::string to_string(const Element& x);

// Sparse word: sequence of (generator index, exponent), indices 0-based.
using Word = std::vector<std::pair<std::size_t, Int>>;

Word sparse_word(const Element& x);

struct OverlapFailure {
  std::string overlap;  // e.g. "u3 u2 u1" or "u2 u1^2", 1-based
  Element lhs;
  Element rhs;
  Element difference;  // lhs^{-1} rhs
};

struct ConsistencyReport {
  std::vector<OverlapFailure> failures;
  std::size_t overlaps_checked = 0;
  bool consistent() const { return failures.empty(); }
};

using PowerRelations = std::map<std::size_t, Word>;
// Key (j, i) with i < j holds the tail of [u_j, u_i].
using CommutatorRelations = std::map<std::pair<std::size_t, std::size_t>, Word>;

// Nilpotent polycyclic presentation on u_1..u_m (0-based internally).
// Relations: u_i^{e_i} = w_{ii} for finite e_i, [u_j, u_i] = w_{ij} for i < j,
// tails supported strictly deeper. Copies share the immutable structure.
class PcPresentation {
 public:
  PcPresentation() = default;
  PcPresentation(std::string name, std::vector<Period> periods, const PowerRelations& powers,
                 const CommutatorRelations& commutators);

  const std::string& name() const;
  std::size_t rank() const;
  const Period& period(std::size_t i) const;
  const std::vector<Period>& periods() const;
  // Normalised tails; identity when no relation was given.
  const Element& power_tail(std::size_t i) const;
  const Element& commutator_tail(std::size_t j, std::size_t i) const;
  PowerRelations power_relations() const;
  CommutatorRelations commutator_relations() const;
  PcPresentation renamed(std::string name) const;

  Element identity() const;
  Element generator(std::size_t i) const;
  Element normal_form(const Word& w) const;
  bool is_normal_form(const Element& x) const;

  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  Element power(const Element& x, const Int& n) const;
  Element commutator(const Element& x, const Element& y) const;  // x^-1 y^-1 x y
  Element conjugate(const Element& x, const Element& g) const;   // g^-1 x g
  // x * u_j^e
  Element multiply_generator_power(const Element& x, std::size_t j, const Int& e) const;

  ConsistencyReport consistency_check() const;
  // Throws InconsistentPresentation with the first failing overlap.
  void require_consistent() const;

  // Same periods and normalised tails.
  friend bool operator==(const PcPresentation& a, const PcPresentation& b);

 private:
  struct Data;
  std::shared_ptr<const Data> d_;

  void mul_gen_power(IntVector& r, std::size_t j, const Int& e) const;
  IntVector mul(const IntVector& x, const IntVector& y) const;
  IntVector pow(const IntVector& x, const Int& n) const;
  IntVector inv(const IntVector& x) const;
  IntVector conj_by_generator(const IntVector& t, std::size_t j, const Int& e) const;
  IntVector evaluate(const std::vector<IntVector>& images, std::size_t from, const IntVector& x) const;
  void check_element(const Element& x) const;
};

// Presentation on a new polycyclic generating sequence y_1..y_n of the group
// of `p`. `express` maps an element of the group to its exponents in the new
// sequence; periods are the new relative orders.
template <class Express>
PcPresentation presentation_from_sequence(const PcPresentation& p, std::string name,
                                          const std::vector<Element>& ys, const std::vector<Period>& periods,
                                          Express&& express) {
  const std::size_t n = ys.size();
  auto to_word = [&](const IntVector& exps) {
    Word w;
    for (std::size_t k = 0; k < n; ++k)
      if (exps[k] != 0) w.emplace_back(k, exps[k]);
    return w;
  };
  PowerRelations powers;
  CommutatorRelations comms;
  for (std::size_t i = 0; i < n; ++i) {
    if (periods[i].is_finite()) {
      const Word w = to_word(express(p.power(ys[i], periods[i].value())));
      if (!w.empty()) powers[i] = w;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const Word w = to_word(express(p.commutator(ys[j], ys[i])));
      if (!w.empty()) comms[{j, i}] = w;
    }
  }
  return PcPresentation(std::move(name), periods, powers, comms);
}

}  // namespace nilpc
