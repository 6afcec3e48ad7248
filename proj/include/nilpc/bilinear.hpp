#pragma once

#include <string>
#include <vector>

#include "nilpc/ring.hpp"
#include "nilpc/series.hpp"

namespace nilpc {

// Upper and lower series attached to a central series R = (R_1, ..., R_{c+1}).
struct AssociatedData {
  SeriesChain source;
  std::vector<Subgroup> upper;  // R^u_1 .. R^u_c, R^u_c = Z(G)
  std::vector<Subgroup> lower;  // R^l_1 .. R^l_{c+1}, R^l_1 = G, R^l_{i+1} = [R_i, G]
  std::vector<Subgroup> centralizers;  // V_1 .. V_{c-1}
  Subgroup v;                          // V_R
  // f_i : G/V_R x R^u_i/R^u_{i+1} -> R^l_{i+1}/R^l_{i+2}, i = 1 .. c-1.
  std::vector<BilinearMap> bundle;
  AbelianSection domain;                   // G/V_R
  std::vector<AbelianSection> upper_gaps;  // R^u_i/R^u_{i+1}
  std::vector<AbelianSection> lower_gaps;  // R^l_{i+1}/R^l_{i+2}

  std::size_t series_class() const { return upper.size(); }
  const PcPresentation& group() const { return v.ambient(); }
};

AssociatedData associated_series(const SeriesChain& r);

// F_R with the bundle's right arguments and values laid out in blocks.
struct AssembledMap {
  BilinearMap map;
  std::vector<std::size_t> right_offsets;  // start of block i in B
  std::vector<std::size_t> value_offsets;  // start of block i in C
};

// Throws DegenerateMap unless F_R is full and non-degenerate on both sides.
AssembledMap assemble_FR(const AssociatedData& data);

struct BilinearRings {
  AssembledMap f;
  ScalarRing p;   // P_R
  ScalarRing pl;  // PL_R
  ScalarRing ae;  // AE_R
  ScalarRing ad;  // AD_R
  ScalarRing a;   // A_R
};

BilinearRings bilinear_rings(const AssociatedData& data);

// Action of the ring on one abelian quotient: one matrix per ring basis
// element, acting on column coordinates of the quotient.
struct QuotientAction {
  std::string label;
  IntVector periods;
  std::vector<IntMatrix> matrices;
};

struct RefinedSeries {
  SeriesChain upper;  // U(R)
  SeriesChain lower;  // L(R)
  ScalarRing ring;    // A_R
  std::vector<QuotientAction> actions;
  // Z(G)/(Z(G) n G'), where no ring acts.
  IntVector special_gap_periods;
  std::vector<Element> special_gap_generators;
};

RefinedSeries refined_series(const SeriesChain& r);

}  // namespace nilpc
