#pragma once

#include <string>
#include <vector>

#include "nilpc/abelian.hpp"

namespace nilpc {

// Descending chain G = S_1 >= ... >= S_{k+1} = 1.
struct SeriesChain {
  std::vector<Subgroup> terms;
  std::vector<std::string> labels;  // optional, one per term

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
  bool is_descending() const;
  // [S_i, G] <= S_{i+1}, checked on generators.
  bool is_central() const;
};

// {x in within : [x, s] in l for all s in s}; within, s and l normal.
Subgroup centralizer_modulo(const Subgroup& within, const Subgroup& s, const Subgroup& l);
// {x : [x, G] <= l}
Subgroup commutation_preimage(const Subgroup& l);
Subgroup center(const PcPresentation& g);
// Elements of h commuting with the whole group (h normal).
Subgroup central_part(const Subgroup& h);

SeriesChain lower_central_series(const PcPresentation& g);
SeriesChain upper_central_series(const PcPresentation& g);
std::size_t nilpotency_class(const PcPresentation& g);

Subgroup torsion_subgroup(const PcPresentation& g);
Subgroup isolator(const Subgroup& n);

AbelianSection abelianization(const PcPresentation& g);

struct KeySubgroups {
  Subgroup derived;       // G'
  Subgroup iso_derived;   // Is(G')
  Subgroup center;        // Z(G)
  Subgroup iso_center;    // I(G) = Is(G') n Z(G)
  Subgroup n;             // N(G) = Is(G') Z(G)
  Subgroup m;             // M(G) = Is(G' Z(G))
  Subgroup addition;      // G_0, free complement of I(G) in Z(G)
  IntVector mn_invariants;
  Int mn_order;

  bool regular() const { return m == n; }
  bool tame() const { return iso_derived.contains(center); }
};

KeySubgroups key_subgroups(const PcPresentation& g);
bool is_regular(const PcPresentation& g);

struct AdditionFoundation {
  Subgroup addition;
  PcPresentation foundation;
};
AdditionFoundation addition_foundation(const PcPresentation& g);

}  // namespace nilpc
