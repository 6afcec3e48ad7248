#include "nilpc/series.hpp"

#include <algorithm>

namespace nilpc {

bool SeriesChain::is_descending() const {
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    if (!terms[i].contains(terms[i + 1])) return false;
  return true;
}

bool SeriesChain::is_central() const {
  if (terms.empty()) return true;
  const PcPresentation& g = terms.front().ambient();
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    for (const Element& x : terms[i].rows())
      for (std::size_t k = 0; k < g.rank(); ++k)
        if (!terms[i + 1].contains(g.commutator(x, g.generator(k)))) return false;
  return true;
}

Subgroup centralizer_modulo(const Subgroup& within, const Subgroup& s, const Subgroup& l) {
  const Quotient q(l);
  const PcPresentation& qg = q.group();
  Subgroup c = q.project(within);
  std::vector<Element> gens;
  for (const Element& r : s.rows())
    if (Element y = q.project(r); !y.is_identity()) gens.push_back(std::move(y));

  for (std::size_t layer = 0; layer < qg.rank() && !gens.empty(); ++layer) {
    std::vector<IntVector> values;
    bool any = false;
    for (const Element& x : c.rows()) {
      IntVector v;
      for (const Element& y : gens) {
        v.push_back(qg.commutator(x, y)[layer]);
        if (v.back() != 0) any = true;
      }
      values.push_back(std::move(v));
    }
    if (!any) continue;
    c = kernel_to_abelian(c, values, IntVector(gens.size(), qg.period(layer).value()));
  }
  return q.preimage(c);
}

Subgroup commutation_preimage(const Subgroup& l) {
  const Subgroup g = whole_group(l.ambient());
  return centralizer_modulo(g, g, l);
}

Subgroup center(const PcPresentation& g) { return commutation_preimage(trivial_subgroup(g)); }

Subgroup central_part(const Subgroup& h) {
  const PcPresentation& g = h.ambient();
  return centralizer_modulo(h, whole_group(g), trivial_subgroup(g));
}

SeriesChain lower_central_series(const PcPresentation& g) {
  SeriesChain s;
  const Subgroup whole = whole_group(g);
  s.terms.push_back(whole);
  while (!s.terms.back().is_trivial()) {
    Subgroup next = commutator_subgroup(s.terms.back(), whole);
    if (next == s.terms.back()) throw Error("lower central series does not terminate");
    s.terms.push_back(std::move(next));
  }
  for (std::size_t i = 0; i < s.terms.size(); ++i) s.labels.push_back("Gamma_" + std::to_string(i + 1));
  return s;
}

SeriesChain upper_central_series(const PcPresentation& g) {
  SeriesChain s;
  const Subgroup whole = whole_group(g);
  s.terms.push_back(trivial_subgroup(g));
  while (!(s.terms.back() == whole)) {
    Subgroup next = commutation_preimage(s.terms.back());
    if (next == s.terms.back()) throw Error("upper central series does not terminate");
    s.terms.push_back(std::move(next));
  }
  std::reverse(s.terms.begin(), s.terms.end());
  const std::size_t k = s.terms.size();
  for (std::size_t i = 0; i < k; ++i) s.labels.push_back("Z_" + std::to_string(k - 1 - i));
  return s;
}

std::size_t nilpotency_class(const PcPresentation& g) { return lower_central_series(g).length(); }

Subgroup torsion_subgroup(const PcPresentation& g) {
  // Bottom-up along the layers: once T(K_{l+1}) is factored out, the torsion
  // of the image of K_l is central and hence abelian.
  Subgroup t = trivial_subgroup(g);
  for (std::size_t l = g.rank(); l-- > 0;) {
    if (g.period(l).is_infinite()) continue;
    const Quotient q(t);
    const Subgroup kl = q.project(layer_subgroup(g, l));
    const Subgroup z = central_part(kl);
    const AbelianSection sec(z, trivial_subgroup(q.group()));
    std::vector<Element> tors;
    for (std::size_t k = 0; k < sec.rank(); ++k)
      if (sec.periods()[k].is_finite()) tors.push_back(sec.lift(k));
    if (tors.empty()) continue;
    t = q.preimage(induce(q.group(), tors));
  }
  return t;
}

Subgroup isolator(const Subgroup& n) {
  const Quotient q(n);
  return q.preimage(torsion_subgroup(q.group()));
}

AbelianSection abelianization(const PcPresentation& g) {
  const Subgroup whole = whole_group(g);
  return AbelianSection(whole, commutator_subgroup(whole, whole));
}

KeySubgroups key_subgroups(const PcPresentation& g) {
  KeySubgroups k;
  const Subgroup whole = whole_group(g);
  k.derived = commutator_subgroup(whole, whole);
  k.iso_derived = isolator(k.derived);
  k.center = center(g);

  // Z(G) -> G/Is(G') lands in a free abelian group; its kernel is I(G) and
  // the rows mapping onto the image lattice span an addition.
  const AbelianSection top(whole, k.iso_derived);
  const std::vector<Element>& zs = k.center.rows();
  IntMatrix phi(zs.size(), top.rank());
  for (std::size_t r = 0; r < zs.size(); ++r) phi.set_row(r, top.coordinates(zs[r]));
  const HermiteDecomposition h = hnf(phi);
  std::vector<Element> kernel, complement;
  for (std::size_t r = 0; r < zs.size(); ++r) {
    Element x = k.center.evaluate(h.U.row(r));
    (r < h.rank ? complement : kernel).push_back(std::move(x));
  }
  k.iso_center = induce(g, kernel);
  for (Element& x : complement)
    for (std::size_t r = 0; r < k.iso_center.size(); ++r) {
      const std::size_t l = k.iso_center.leading_index(r);
      const Int q = floor_div(x[l], k.iso_center.leading_exponent(r));
      if (q != 0) x = g.multiply(x, g.power(k.iso_center.rows()[r], -q));
    }
  k.addition = induce(g, complement);

  k.n = join(k.iso_derived, k.center);
  k.m = isolator(join(k.derived, k.center));
  const AbelianSection mn(k.m, k.n);
  k.mn_invariants = mn.invariants();
  k.mn_order = 1;
  for (const Int& d : k.mn_invariants) {
    if (d == 0) throw Error("M(G)/N(G) is not finite");
    k.mn_order *= d;
  }
  return k;
}

bool is_regular(const PcPresentation& g) { return key_subgroups(g).regular(); }

AdditionFoundation addition_foundation(const PcPresentation& g) {
  const KeySubgroups k = key_subgroups(g);
  const Quotient q(k.addition, g.name() + "_f");
  return {k.addition, q.group()};
}

}  // namespace nilpc
