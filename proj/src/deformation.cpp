#include "nilpc/deformation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nilpc {

Int AdaptedPresentation::e() const {
  Int e = 1;
  for (std::size_t i = i0; i < i1; ++i) e *= pres.period(i).value();
  return e;
}

bool AdaptedPresentation::normalized() const {
  for (std::size_t t = 0; t < n(); ++t) {
    const Element& tail = pres.power_tail(i0 + t);
    for (std::size_t k = i1; k < i2; ++k)
      if (tail[k] != (k == i1 + t ? 1 : 0)) return false;
  }
  return true;
}

AdaptedPresentation adapt_basis(const PcPresentation& g) {
  g.require_consistent();
  const KeySubgroups key = key_subgroups(g);
  const Subgroup whole = whole_group(g);
  const AbelianSection top(whole, key.m);
  const AbelianSection sec(key.m, key.iso_derived);
  const AbelianSection addition(key.addition, trivial_subgroup(g));
  const std::size_t p = sec.rank();
  if (addition.rank() != p || sec.free_rank() != p) throw Error("addition does not match M(G)/Is(G')");

  IntMatrix a(p, p);
  for (std::size_t j = 0; j < p; ++j) a.set_row(j, sec.coordinates(addition.lift(j)));
  const SmithDecomposition sd = snf(a);

  std::vector<Element> seg2, seg3_lead, seg3_rest;
  std::vector<Period> seg2_periods;
  std::vector<std::size_t> order;  // SNF index of each seg2 entry, then the rest
  for (std::size_t k = 0; k < p; ++k) {
    Element gk = g.identity();
    for (std::size_t j = 0; j < p; ++j)
      if (sd.U(k, j) != 0) gk = g.multiply(gk, g.power(addition.lift(j), sd.U(k, j)));
    const Int d = sd.diagonal(k);
    if (d == 0) throw Error("addition has smaller rank than M(G)/Is(G')");
    if (d > 1) {
      seg2.push_back(sec.lift_vector(sd.V_inv.row(k)));
      seg2_periods.push_back(Period::finite(d));
      seg3_lead.push_back(std::move(gk));
    } else {
      seg3_rest.push_back(std::move(gk));
    }
  }
  for (std::size_t k = 0; k < p; ++k)
    if (sd.diagonal(k) > 1) order.push_back(k);
  for (std::size_t k = 0; k < p; ++k)
    if (sd.diagonal(k) == 1) order.push_back(k);

  const Subgroup& iso = key.iso_derived;
  std::vector<Element> ys = top.lifts();
  std::vector<Period> periods(top.rank(), Period::infinite());
  AdaptedPresentation out;
  out.i0 = ys.size();
  for (std::size_t k = 0; k < seg2.size(); ++k) {
    ys.push_back(seg2[k]);
    periods.push_back(seg2_periods[k]);
  }
  out.i1 = ys.size();
  for (auto* seg : {&seg3_lead, &seg3_rest})
    for (const Element& x : *seg) {
      ys.push_back(x);
      periods.push_back(Period::infinite());
    }
  out.i2 = ys.size();
  for (std::size_t r = 0; r < iso.size(); ++r) {
    ys.push_back(iso.rows()[r]);
    periods.push_back(iso.relative_order(r));
  }

  const std::size_t i0 = out.i0, i1 = out.i1, i2 = out.i2, n = i1 - i0;
  auto express = [&](const Element& x) {
    IntVector out_exps(ys.size());
    const IntVector a_coords = top.coordinates(x);
    std::copy(a_coords.begin(), a_coords.end(), out_exps.begin());
    const Element rest = g.multiply(g.inverse(top.lift_vector(a_coords)), x);
    const IntVector y = sec.coordinates(rest) * sd.V;
    Element prefix = g.identity();
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t k = order[t];
      const Int d = sd.diagonal(k);
      out_exps[i0 + t] = mod_floor(y[k], d);
      prefix = g.multiply(prefix, g.power(ys[i0 + t], out_exps[i0 + t]));
    }
    for (std::size_t t = 0; t < p; ++t) {
      const std::size_t k = order[t];
      const Int d = sd.diagonal(k);
      out_exps[i1 + t] = d == 1 ? y[k] : floor_div(y[k], d);
      prefix = g.multiply(prefix, g.power(ys[i1 + t], out_exps[i1 + t]));
    }
    const auto iso_exps = iso.exponents(g.multiply(g.inverse(prefix), rest));
    if (!iso_exps) throw Error("adapted coordinates failed for " + to_string(x));
    std::copy(iso_exps->begin(), iso_exps->end(), out_exps.begin() + static_cast<std::ptrdiff_t>(i2));
    return out_exps;
  };

  out.pres = presentation_from_sequence(g, g.name() + "_adapted", ys, periods, express);
  out.pres.require_consistent();
  out.generators = ys;
  std::vector<Element> to;
  for (std::size_t i = 0; i < g.rank(); ++i) to.emplace_back(express(g.generator(i)));
  out.to_adapted.emplace(g, out.pres, std::move(to));
  out.from_adapted.emplace(out.pres, g, ys);
  return out;
}

AdaptedPresentation as_adapted(const PcPresentation& g) {
  const KeySubgroups key = key_subgroups(g);
  auto marker = [&](const Subgroup& h, const char* what) {
    for (std::size_t l = 0; l <= g.rank(); ++l)
      if (layer_subgroup(g, l) == h) return l;
    throw PresentationError(std::string("presentation is not adapted: ") + what + " is not a layer subgroup");
  };
  AdaptedPresentation out;
  out.pres = g;
  out.i0 = marker(key.m, "M(G)");
  out.i1 = marker(key.n, "N(G)");
  out.i2 = marker(key.iso_derived, "Is(G')");
  if (!(out.i0 <= out.i1 && out.i1 <= out.i2)) throw PresentationError("presentation is not adapted: markers out of order");
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const bool finite_segment = i >= out.i0 && i < out.i1;
    if (i < out.i2 && g.period(i).is_finite() != finite_segment)
      throw PresentationError("presentation is not adapted: unexpected period at u" + std::to_string(i + 1));
  }
  for (std::size_t i = out.i0; i + 1 < out.i1; ++i)
    if (g.period(i + 1).value() % g.period(i).value() != 0)
      throw PresentationError("presentation is not adapted: periods do not form a divisibility chain");
  for (std::size_t i = 0; i < g.rank(); ++i) out.generators.push_back(g.generator(i));
  out.to_adapted.emplace(identity_hom(g));
  out.from_adapted.emplace(identity_hom(g));
  return out;
}

void validate(const AdaptedPresentation& a, const DeformationParams& params) {
  const std::size_t n = a.n();
  if (params.d.size() != n) throw DimensionError("d must have " + std::to_string(n) + " entries");
  if (params.c.rows() != n || params.c.cols() != n)
    throw DimensionError("c must be " + std::to_string(n) + "x" + std::to_string(n));
  Int d = 1;
  for (const Int& x : params.d) d *= x;
  if (gcd(d, a.e()) != 1) throw Error("gcd(d, e) must be 1");
  if (abs(determinant(params.c)) != 1) throw Error("|det c| must be 1");
  if (!a.normalized()) throw Error("adapted presentation is not normalized");
}

PcPresentation abdef(const AdaptedPresentation& a, const DeformationParams& params) {
  validate(a, params);
  const PcPresentation& g = a.pres;
  PowerRelations powers = g.power_relations();
  for (std::size_t t = 0; t < a.n(); ++t) {
    const std::size_t i = a.i0 + t;
    const Element& old = g.power_tail(i);
    Word w;
    for (std::size_t k = 0; k < a.n(); ++k) {
      const Int x = params.d[k] * params.c(t, k);
      if (x != 0) w.emplace_back(a.i1 + k, x);
    }
    for (std::size_t k = a.i2; k < g.rank(); ++k)
      if (old[k] != 0) w.emplace_back(k, old[k]);
    if (w.empty())
      powers.erase(i);
    else
      powers[i] = w;
  }
  PcPresentation h(g.name() + "_abdef", g.periods(), powers, g.commutator_relations());
  h.require_consistent();
  return h;
}

ExtClass ext_class(const AdaptedPresentation& a, const DeformationParams& params) {
  validate(a, params);
  ExtClass cls;
  for (std::size_t t = 0; t < a.n(); ++t) {
    const Int& et = a.pres.period(a.i0 + t).value();
    IntVector v(a.p());
    for (std::size_t k = 0; k < a.n(); ++k) v[k] = mod_floor(params.d[k] * params.c(t, k), et);
    cls.components.push_back(std::move(v));
    cls.moduli.push_back(et);
  }
  return cls;
}

ExtClass ext_class_of(const AdaptedPresentation& a) {
  ExtClass cls;
  for (std::size_t t = 0; t < a.n(); ++t) {
    const Int& et = a.pres.period(a.i0 + t).value();
    const Element& tail = a.pres.power_tail(a.i0 + t);
    IntVector v(a.p());
    for (std::size_t k = 0; k < a.p(); ++k) v[k] = mod_floor(tail[a.i1 + k], et);
    cls.components.push_back(std::move(v));
    cls.moduli.push_back(et);
  }
  return cls;
}

namespace {

std::vector<IntMatrix> signed_permutations(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IntMatrix> out;
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
      IntMatrix c(n, n);
      for (std::size_t r = 0; r < n; ++r) c(r, perm[r]) = (signs >> r) & 1 ? -1 : 1;
      out.push_back(std::move(c));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

DeformationEnumeration enumerate_deformations(const AdaptedPresentation& a) {
  if (!a.normalized()) throw Error("adapted presentation is not normalized");
  const std::size_t n = a.n();
  const Int e = a.e();
  DeformationEnumeration out;
  out.bound = 1;
  for (std::size_t k = 0; k < a.p(); ++k) out.bound *= e;

  std::vector<Int> units;
  for (Int x = 1; x < e || (e == 1 && x == 1); ++x)
    if (gcd(x, e) == 1) units.push_back(x);
  const std::vector<IntMatrix> cs = signed_permutations(n);

  std::map<ExtClass, DeformationParams> reps;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    IntVector d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = units[idx[k]];
    for (const IntMatrix& c : cs) {
      DeformationParams params{d, c};
      ++out.candidates;
      reps.try_emplace(ext_class(a, params), std::move(params));
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == units.size()) idx[k++] = 0;
    if (k == n) break;
  }
  for (auto& [cls, params] : reps) out.classes.push_back({params, cls, abdef(a, params)});
  return out;
}

GroupHom standard_embedding(const AdaptedPresentation& a, const DeformationParams& params) {
  const PcPresentation h = abdef(a, params);
  std::vector<Element> images;
  for (std::size_t i = 0; i < h.rank(); ++i) images.push_back(h.generator(i));
  for (std::size_t t = 0; t < a.n(); ++t) {
    Element x = h.identity();
    for (std::size_t k = 0; k < a.n(); ++k) x[a.i1 + k] = params.d[k] * params.c(t, k);
    images[a.i1 + t] = x;
  }
  return GroupHom(a.pres, h, std::move(images));
}

namespace {

bool is_prime(std::size_t x) {
  if (x < 2) return false;
  for (std::size_t q = 2; q * q <= x; ++q)
    if (x % q == 0) return false;
  return true;
}

// Product of the first j primes not dividing d.
Int twist_factor(const Int& d, std::size_t j) {
  Int q = 1;
  for (std::size_t x = 2, found = 0; found < j; ++x)
    if (is_prime(x) && d % static_cast<unsigned long>(x) != 0) {
      q *= static_cast<unsigned long>(x);
      ++found;
    }
  return q;
}

}  // namespace

GroupHom twisted_embedding(const AdaptedPresentation& a, const DeformationParams& params, std::size_t j) {
  if (j == 0) throw Error("twist index must be positive");
  const PcPresentation h = abdef(a, params);
  const std::size_t n = a.n();
  const Int e = a.e();
  IntVector q(n);
  for (std::size_t k = 0; k < n; ++k) q[k] = twist_factor(params.d[k], j);

  std::vector<Element> images;
  for (std::size_t i = 0; i < h.rank(); ++i) images.push_back(h.generator(i));
  for (std::size_t t = 0; t < n; ++t) {
    const Int e_hat = e / a.pres.period(a.i0 + t).value();
    Element tail = h.identity(), special = h.identity();
    for (std::size_t k = 0; k < n; ++k) {
      tail[a.i1 + k] = q[k] * e_hat * params.c(t, k);
      special[a.i1 + k] = (params.d[k] + q[k] * e) * params.c(t, k);
    }
    images[a.i0 + t] = h.multiply(h.generator(a.i0 + t), tail);
    images[a.i1 + t] = special;
  }
  return GroupHom(a.pres, h, std::move(images));
}

}  // namespace nilpc
