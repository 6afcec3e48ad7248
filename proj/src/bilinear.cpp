#include "nilpc/bilinear.hpp"

#include <algorithm>

namespace nilpc {

namespace {

FgAbelian module_of(const AbelianSection& s, std::string label) { return {s.invariants(), std::move(label)}; }

// Subgroups between G' and G meet as lattices in G/G'.
Subgroup intersect_above_derived(const PcPresentation& g, const std::vector<Subgroup>& groups, const Subgroup& derived) {
  const AbelianSection ab(whole_group(g), derived);
  IntMatrix diag(0, ab.rank());
  for (std::size_t k = 0; k < ab.rank(); ++k)
    if (ab.periods()[k].is_finite()) {
      IntVector v(ab.rank());
      v[k] = ab.periods()[k].value();
      diag.append_row(v);
    }
  IntMatrix acc = IntMatrix::identity(ab.rank());
  for (const Subgroup& h : groups) {
    IntMatrix gens = diag;
    for (const Element& x : h.rows()) gens.append_row(ab.coordinates(x));
    acc = lattice_intersection(acc, lattice_basis(gens));
  }
  std::vector<Element> elems = derived.rows();
  for (std::size_t r = 0; r < acc.rows(); ++r) elems.push_back(ab.lift_vector(acc.row(r)));
  return induce(g, elems);
}

}  // namespace

AssociatedData associated_series(const SeriesChain& r) {
  if (r.terms.size() < 2) throw Error("series must run from G to 1");
  const PcPresentation& g = r.terms.front().ambient();
  const Subgroup whole = whole_group(g);
  if (!(r.terms.front() == whole) || !r.terms.back().is_trivial()) throw Error("series must run from G to 1");
  if (!r.is_descending() || !r.is_central()) throw Error("series is not central");
  const std::size_t c = r.length();

  std::vector<Subgroup> upper, lower{whole};
  for (std::size_t i = 0; i < c; ++i) {
    const Subgroup ri_g = commutator_subgroup(r.terms[i], whole);
    lower.push_back(ri_g);
    upper.push_back(commutation_preimage(ri_g));
  }
  const Subgroup derived = lower[1];

  std::vector<Subgroup> centralizers;
  for (std::size_t i = 0; i + 1 < c; ++i) centralizers.push_back(centralizer_modulo(whole, upper[i], lower[i + 2]));
  const Subgroup v = centralizers.empty() ? whole : intersect_above_derived(g, centralizers, derived);

  AbelianSection domain(whole, v);
  const FgAbelian a = module_of(domain, "G/V_R");
  std::vector<AbelianSection> upper_gaps, lower_gaps;
  std::vector<BilinearMap> bundle;
  for (std::size_t i = 0; i + 1 < c; ++i) {
    const std::string n = std::to_string(i + 1);
    upper_gaps.emplace_back(upper[i], upper[i + 1]);
    lower_gaps.emplace_back(lower[i + 1], lower[i + 2]);
    const AbelianSection& bs = upper_gaps.back();
    const AbelianSection& cs = lower_gaps.back();
    std::vector<std::vector<IntVector>> table(domain.rank(), std::vector<IntVector>(bs.rank()));
    for (std::size_t x = 0; x < domain.rank(); ++x)
      for (std::size_t y = 0; y < bs.rank(); ++y)
        table[x][y] = cs.coordinates(g.commutator(domain.lift(x), bs.lift(y)));
    bundle.emplace_back(a, module_of(bs, "R^u_" + n + "/R^u_" + std::to_string(i + 2)),
                        module_of(cs, "R^l_" + std::to_string(i + 2) + "/R^l_" + std::to_string(i + 3)), std::move(table));
  }
  return AssociatedData{r,
                        std::move(upper),
                        std::move(lower),
                        std::move(centralizers),
                        v,
                        std::move(bundle),
                        std::move(domain),
                        std::move(upper_gaps),
                        std::move(lower_gaps)};
}

AssembledMap assemble_FR(const AssociatedData& data) {
  FgAbelian a{data.domain.invariants(), "G/V_R"};
  FgAbelian b{{}, "Y"}, c{{}, "S"};
  std::vector<std::size_t> boff, coff;
  for (const BilinearMap& f : data.bundle) {
    boff.push_back(b.size());
    coff.push_back(c.size());
    b.periods.insert(b.periods.end(), f.right().periods.begin(), f.right().periods.end());
    c.periods.insert(c.periods.end(), f.values().periods.begin(), f.values().periods.end());
  }
  std::vector<std::vector<IntVector>> table(a.size(), std::vector<IntVector>(b.size(), IntVector(c.size())));
  for (std::size_t k = 0; k < data.bundle.size(); ++k) {
    const BilinearMap& f = data.bundle[k];
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < f.right().size(); ++y)
        for (std::size_t t = 0; t < f.values().size(); ++t) table[x][boff[k] + y][coff[k] + t] = f.value(x, y)[t];
  }
  BilinearMap map(std::move(a), std::move(b), std::move(c), std::move(table));
  if (!map.left_nondegenerate()) throw DegenerateMap("F_R is degenerate in the first argument");
  if (!map.right_nondegenerate()) throw DegenerateMap("F_R is degenerate in the second argument");
  if (!map.is_full()) throw DegenerateMap("F_R is not full");
  return {std::move(map), std::move(boff), std::move(coff)};
}

BilinearRings bilinear_rings(const AssociatedData& data) {
  AssembledMap f = assemble_FR(data);
  const std::size_t c = data.series_class();
  ScalarRing p = scalar_ring(f.map);

  // Block k-2 of C is S_k = R^l_k/R^l_{k+1}; block k-1 of B is Y_k = R^u_k/R^u_{k+1}.
  auto s_block = [&](std::size_t k) { return Block{Slot::Value, f.value_offsets[k - 2], data.lower_gaps[k - 2].rank()}; };
  auto y_block = [&](std::size_t k) { return Block{Slot::Right, f.right_offsets[k - 1], data.upper_gaps[k - 1].rank()}; };

  std::vector<RingConstraint> linear;
  for (std::size_t k = 2; k < c; ++k) {
    const AbelianSection& s = data.lower_gaps[k - 2];
    const AbelianSection& y = data.upper_gaps[k - 1];
    IntMatrix eps(y.rank(), s.rank());
    for (std::size_t j = 0; j < s.rank(); ++j) {
      const IntVector col = y.coordinates(s.lift(j));
      for (std::size_t i = 0; i < y.rank(); ++i) eps(i, j) = col[i];
    }
    linear.push_back(HomLinearity{s_block(k), y_block(k), std::move(eps)});
  }
  ScalarRing pl = restrict_ring(p, linear);

  std::vector<RingConstraint> central;
  for (std::size_t k = 2; k <= c; ++k) {
    const Subgroup t = central_part(data.lower[k - 1]);
    std::vector<IntVector> gens;
    for (const Element& x : t.rows()) gens.push_back(data.lower_gaps[k - 2].coordinates(x));
    central.push_back(SubmoduleInvariance{s_block(k), std::move(gens)});
  }
  ScalarRing ae = restrict_ring(pl, central);

  std::vector<RingConstraint> domain;
  for (std::size_t i = 1; i < c; ++i) {
    const Subgroup d = meet(data.v, data.upper[i - 1]);
    std::vector<IntVector> gens;
    for (const Element& x : d.rows()) gens.push_back(data.upper_gaps[i - 1].coordinates(x));
    domain.push_back(SubmoduleInvariance{y_block(i), std::move(gens)});
  }
  ScalarRing ad = restrict_ring(pl, domain);
  ScalarRing a = intersect_rings(ae, ad);
  return {std::move(f), std::move(p), std::move(pl), std::move(ae), std::move(ad), std::move(a)};
}

namespace {

void push_term(SeriesChain& s, const Subgroup& h, const std::string& label) {
  if (!s.terms.empty() && s.terms.back() == h) {
    s.labels.back() += " = " + label;
    return;
  }
  s.terms.push_back(h);
  s.labels.push_back(label);
}

std::vector<IntMatrix> block_matrices(const ScalarRing& ring, const Block& b) {
  std::vector<IntMatrix> out;
  for (const ScalarTriple& t : ring.basis()) out.push_back(block_of(t, b));
  return out;
}

// Action on a subquotient `sub` embedded into a module block via `embed`
// (columns are the images of the basis of sub).
std::vector<IntMatrix> pulled_back(const ScalarRing& ring, const Block& b, const IntMatrix& embed,
                                   const IntVector& block_periods, const IntVector& sub_periods) {
  std::vector<IntMatrix> out;
  const std::size_t n = embed.cols();
  for (const ScalarTriple& t : ring.basis()) {
    const IntMatrix image = block_of(t, b) * embed;
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto sol = solve_congruences(embed, image.column(j), block_periods);
      if (!sol) throw NotClosed("ring does not preserve the subquotient");
      for (std::size_t i = 0; i < n; ++i)
        m(i, j) = sub_periods[i] == 0 ? sol->particular[i] : Int(mod_floor(sol->particular[i], sub_periods[i]));
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

RefinedSeries refined_series(const SeriesChain& r) {
  const AssociatedData data = associated_series(r);
  const BilinearRings rings = bilinear_rings(data);
  const PcPresentation& g = data.group();
  const std::size_t c = data.series_class();
  const Subgroup z = data.upper.back();
  const Subgroup derived = data.lower[1];

  RefinedSeries out{{}, {}, rings.a, {}, {}, {}};
  const ScalarRing& ring = out.ring;
  const AssembledMap& f = rings.f;

  std::vector<Subgroup> central_lower;
  for (std::size_t i = 0; i < c; ++i) push_term(out.upper, data.upper[i], "R^u_" + std::to_string(i + 1));
  for (std::size_t k = 2; k <= c + 1; ++k) {
    central_lower.push_back(central_part(data.lower[k - 1]));
    push_term(out.upper, central_lower.back(), "R^l_" + std::to_string(k) + " n Z");
  }

  push_term(out.lower, whole_group(g), "G");
  push_term(out.lower, data.v, "V_R");
  std::vector<Subgroup> vu;
  for (std::size_t i = 0; i < c; ++i) {
    vu.push_back(meet(data.v, data.upper[i]));
    push_term(out.lower, join(vu.back(), derived), "(V_R n R^u_" + std::to_string(i + 1) + ")G'");
  }
  for (std::size_t k = 2; k <= c + 1; ++k) push_term(out.lower, data.lower[k - 1], "R^l_" + std::to_string(k));

  // G/V_R through the first slot.
  if (data.domain.rank() > 0)
    out.actions.push_back({"G/V_R", data.domain.invariants(),
                           block_matrices(ring, Block{Slot::Left, 0, data.domain.rank()})});
  for (std::size_t i = 1; i < c; ++i) {
    const AbelianSection& y = data.upper_gaps[i - 1];
    const Block yb{Slot::Right, f.right_offsets[i - 1], y.rank()};
    const std::string n = std::to_string(i), n1 = std::to_string(i + 1);
    if (y.rank() > 0) out.actions.push_back({"R^u_" + n + "/R^u_" + n1, y.invariants(), block_matrices(ring, yb)});

    const AbelianSection x(vu[i - 1], vu[i]);
    if (x.rank() > 0) {
      IntMatrix embed(y.rank(), x.rank());
      for (std::size_t j = 0; j < x.rank(); ++j) {
        const IntVector col = y.coordinates(x.lift(j));
        for (std::size_t t = 0; t < y.rank(); ++t) embed(t, j) = col[t];
      }
      out.actions.push_back({"(V_R n R^u_" + n + ")/(V_R n R^u_" + n1 + ")", x.invariants(),
                             pulled_back(ring, yb, embed, y.invariants(), x.invariants())});
    }
  }
  for (std::size_t k = 2; k <= c; ++k) {
    const AbelianSection& s = data.lower_gaps[k - 2];
    const Block sb{Slot::Value, f.value_offsets[k - 2], s.rank()};
    const std::string n = std::to_string(k), n1 = std::to_string(k + 1);
    if (s.rank() > 0) out.actions.push_back({"R^l_" + n + "/R^l_" + n1, s.invariants(), block_matrices(ring, sb)});

    const AbelianSection t(central_lower[k - 2], central_lower[k - 1]);
    if (t.rank() > 0) {
      IntMatrix embed(s.rank(), t.rank());
      for (std::size_t j = 0; j < t.rank(); ++j) {
        const IntVector col = s.coordinates(t.lift(j));
        for (std::size_t i = 0; i < s.rank(); ++i) embed(i, j) = col[i];
      }
      out.actions.push_back({"(R^l_" + n + " n Z)/(R^l_" + n1 + " n Z)", t.invariants(),
                             pulled_back(ring, sb, embed, s.invariants(), t.invariants())});
    }
  }

  const AbelianSection gap(z, central_part(derived));
  out.special_gap_periods = gap.invariants();
  out.special_gap_generators = gap.lifts();
  return out;
}

}  // namespace nilpc
