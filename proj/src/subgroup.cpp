#include "nilpc/subgroup.hpp"

#include <deque>

namespace nilpc {

// Sifts generators into an induced polycyclic sequence and closes it under
// powers, commutators and (optionally) conjugation by a fixed set.
class IgsBuilder {
 public:
  explicit IgsBuilder(const PcPresentation& g) : g_(g), rows_(g.rank()) {}

  void add(Element x) { queue_.push_back(std::move(x)); }

  void set_conjugators(const std::vector<Element>& conjugators) {
    conjugators_.clear();
    for (const Element& c : conjugators) {
      conjugators_.push_back(c);
      conjugators_.push_back(g_.inverse(c));
    }
  }

  Subgroup finish() {
    drain();
    for (;;) {
      changed_ = false;
      const std::vector<Element> rs = current_rows();
      for (std::size_t a = 0; a < rs.size(); ++a) {
        const std::size_t l = rs[a].depth();
        const bool finite = g_.period(l).is_finite();
        if (finite) add(g_.power(rs[a], g_.period(l).value() / rs[a][l]));
        const Element inv = finite ? Element() : g_.inverse(rs[a]);
        for (std::size_t b = a + 1; b < rs.size(); ++b) {
          add(g_.commutator(rs[b], rs[a]));
          if (!finite) add(g_.commutator(rs[b], inv));
        }
        for (const Element& c : conjugators_) add(g_.conjugate(rs[a], c));
      }
      drain();
      if (!changed_) break;
    }
    std::vector<Element> rs = current_rows();
    for (std::size_t a = 0; a < rs.size(); ++a)
      for (std::size_t b = a + 1; b < rs.size(); ++b) {
        const std::size_t q = rs[b].depth();
        const Int k = floor_div(rs[a][q], rs[b][q]);
        if (k != 0) rs[a] = g_.multiply(rs[a], g_.power(rs[b], -k));
      }
    return Subgroup(g_, std::move(rs));
  }

 private:
  std::vector<Element> current_rows() const {
    std::vector<Element> out;
    for (const auto& r : rows_)
      if (r) out.push_back(*r);
    return out;
  }

  void drain() {
    while (!queue_.empty()) {
      Element x = std::move(queue_.front());
      queue_.pop_front();
      sift(std::move(x));
    }
  }

  void install(std::size_t d, Element x) {
    const Period& e = g_.period(d);
    if (e.is_infinite()) {
      if (x[d] < 0) x = g_.inverse(x);
    } else {
      const Int a = x[d];
      const Int g = gcd(a, e.value());
      if (g != a) {
        Int k;
        const Int unit = a / g;
        const Int mod = e.value() / g;
        mpz_invert(k.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        Element y = g_.power(x, k);
        add(std::move(x));
        x = std::move(y);
      }
    }
    rows_[d] = std::move(x);
    changed_ = true;
  }

  void sift(Element x) {
    for (;;) {
      const std::size_t d = x.depth();
      if (d == x.size()) return;
      if (!rows_[d]) {
        install(d, std::move(x));
        return;
      }
      const Element& r = *rows_[d];
      const Int b = r[d];
      const Int a = x[d];
      if (a % b == 0) {
        x = g_.multiply(g_.power(r, -(a / b)), x);
        continue;
      }
      const ExtendedGcd eg = extended_gcd(b, a);
      Element y = g_.multiply(g_.power(r, eg.s), g_.power(x, eg.t));
      Element old = r;
      rows_[d] = std::move(y);
      changed_ = true;
      add(std::move(old));
      add(std::move(x));
      return;
    }
  }

  PcPresentation g_;
  std::vector<std::optional<Element>> rows_;
  std::deque<Element> queue_;
  std::vector<Element> conjugators_;
  bool changed_ = false;
};

Period Subgroup::relative_order(std::size_t r) const {
  const std::size_t l = leading_index(r);
  if (g_.period(l).is_infinite()) return Period::infinite();
  const Int q = g_.period(l).value() / leading_exponent(r);
  if (q == 1) throw Error("degenerate subgroup row");
  return Period::finite(q);
}

std::optional<std::size_t> Subgroup::row_at(std::size_t layer) const {
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (rows_[r].depth() == layer) return r;
  return std::nullopt;
}

std::optional<IntVector> Subgroup::exponents(const Element& x) const {
  if (x.size() != g_.rank()) throw DimensionError("element length does not match rank");
  Element cur = x;
  IntVector out(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t l = rows_[k].depth();
    const std::size_t d = cur.depth();
    if (d < l) return std::nullopt;
    if (d > l) continue;
    const Int& lead = rows_[k][l];
    if (cur[l] % lead != 0) return std::nullopt;
    out[k] = cur[l] / lead;
    cur = g_.multiply(g_.power(rows_[k], -out[k]), cur);
  }
  if (!cur.is_identity()) return std::nullopt;
  return out;
}

bool Subgroup::contains(const Subgroup& other) const {
  for (const Element& r : other.rows())
    if (!contains(r)) return false;
  return true;
}

Element Subgroup::evaluate(const IntVector& exps) const {
  if (exps.size() != rows_.size()) throw DimensionError("exponent vector length mismatch");
  Element x = g_.identity();
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (exps[k] != 0) x = g_.multiply(x, g_.power(rows_[k], exps[k]));
  return x;
}

Period Subgroup::index() const {
  Int n = 1;
  for (std::size_t l = 0; l < g_.rank(); ++l) {
    if (const auto r = row_at(l)) {
      n *= rows_[*r][l];
    } else {
      if (g_.period(l).is_infinite()) return Period::infinite();
      n *= g_.period(l).value();
    }
  }
  return Period::finite(n);
}

std::size_t Subgroup::hirsch_length() const {
  std::size_t h = 0;
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (g_.period(leading_index(r)).is_infinite()) ++h;
  return h;
}

Subgroup induce(const PcPresentation& g, const std::vector<Element>& generators) {
  IgsBuilder b(g);
  for (const Element& x : generators) b.add(x);
  return b.finish();
}

Subgroup normal_closure(const PcPresentation& g, const std::vector<Element>& generators) {
  IgsBuilder b(g);
  std::vector<Element> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.generator(i));
  b.set_conjugators(gens);
  for (const Element& x : generators) b.add(x);
  return b.finish();
}

Subgroup whole_group(const PcPresentation& g) { return layer_subgroup(g, 0); }

Subgroup trivial_subgroup(const PcPresentation& g) { return induce(g, {}); }

Subgroup layer_subgroup(const PcPresentation& g, std::size_t i) {
  std::vector<Element> gens;
  for (std::size_t k = i; k < g.rank(); ++k) gens.push_back(g.generator(k));
  return induce(g, gens);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<Element> gens = a.rows();
  gens.insert(gens.end(), b.rows().begin(), b.rows().end());
  return induce(a.ambient(), gens);
}

bool is_normal(const Subgroup& n) {
  const PcPresentation& g = n.ambient();
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const Element u = g.generator(i);
    const Element ui = g.inverse(u);
    for (const Element& r : n.rows())
      if (!n.contains(g.conjugate(r, u)) || !n.contains(g.conjugate(r, ui))) return false;
  }
  return true;
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  const PcPresentation& g = a.ambient();
  std::vector<Element> gens;
  for (const Element& x : a.rows())
    for (const Element& y : b.rows()) gens.push_back(g.commutator(x, y));
  return normal_closure(g, gens);
}

bool is_abelian(const Subgroup& h) {
  const PcPresentation& g = h.ambient();
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b)
      if (!g.commutator(h.rows()[a], h.rows()[b]).is_identity()) return false;
  return true;
}

bool is_central(const Subgroup& h) {
  const PcPresentation& g = h.ambient();
  for (const Element& x : h.rows())
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (!g.commutator(x, g.generator(i)).is_identity()) return false;
  return true;
}

Subgroup kernel_to_abelian(const Subgroup& h, const std::vector<IntVector>& values, const IntVector& moduli) {
  const PcPresentation& g = h.ambient();
  const std::size_t s = h.size();
  if (values.size() != s) throw DimensionError("one image per subgroup row required");
  IntMatrix a(moduli.size(), s);
  for (std::size_t k = 0; k < s; ++k) {
    if (values[k].size() != moduli.size()) throw DimensionError("image length mismatch");
    for (std::size_t c = 0; c < moduli.size(); ++c) a(c, k) = values[k][c];
  }
  const auto sol = solve_congruences(a, IntVector(moduli.size()), moduli);
  IgsBuilder b(g);
  b.set_conjugators(h.rows());
  for (std::size_t r = 0; r < sol->lattice.rows(); ++r) b.add(h.evaluate(sol->lattice.row(r)));
  for (std::size_t x = 0; x < s; ++x)
    for (std::size_t y = x + 1; y < s; ++y) b.add(g.commutator(h.rows()[y], h.rows()[x]));
  return b.finish();
}

Subgroup meet(const Subgroup& a, const Subgroup& b) {
  if (!is_normal(b)) {
    if (is_normal(a)) return meet(b, a);
    throw NotNormal("intersection needs one normal subgroup");
  }
  const Quotient q(b);
  const PcPresentation& qg = q.group();
  Subgroup c = a;
  for (std::size_t l = 0; l < qg.rank(); ++l) {
    std::vector<IntVector> values;
    bool any = false;
    for (const Element& r : c.rows()) {
      const Element y = q.project(r);
      values.push_back({y[l]});
      if (y[l] != 0) any = true;
    }
    if (!any) continue;
    c = kernel_to_abelian(c, values, {qg.period(l).value()});
  }
  return c;
}

Quotient::Quotient(const Subgroup& kernel, std::string name) : n_(kernel) {
  const PcPresentation& g = n_.ambient();
  if (!is_normal(n_)) throw NotNormal("quotient by a subgroup that is not normal");
  std::vector<Period> periods;
  for (std::size_t l = 0; l < g.rank(); ++l) {
    const auto r = n_.row_at(l);
    if (!r) {
      kept_.push_back(l);
      periods.push_back(g.period(l));
    } else if (n_.rows()[*r][l] > 1) {
      kept_.push_back(l);
      periods.push_back(Period::finite(n_.rows()[*r][l]));
    }
  }
  const std::size_t n = kept_.size();
  auto tail = [&](const Element& x) { return sparse_word(project(x)); };
  PowerRelations powers;
  CommutatorRelations comms;
  for (std::size_t k = 0; k < n; ++k) {
    const Element u = g.generator(kept_[k]);
    if (periods[k].is_finite())
      if (Word w = tail(g.power(u, periods[k].value())); !w.empty()) powers[k] = std::move(w);
    for (std::size_t j = k + 1; j < n; ++j)
      if (Word w = tail(g.commutator(g.generator(kept_[j]), u)); !w.empty()) comms[{j, k}] = std::move(w);
  }
  if (name.empty()) name = g.name() + "/N";
  q_ = PcPresentation(std::move(name), std::move(periods), powers, comms);
}

Element Quotient::project(const Element& x) const {
  const PcPresentation& g = n_.ambient();
  if (x.size() != g.rank()) throw DimensionError("element length does not match rank");
  Element cur = x;
  for (std::size_t r = 0; r < n_.size(); ++r) {
    const std::size_t l = n_.leading_index(r);
    const Int k = floor_div(cur[l], n_.leading_exponent(r));
    if (k != 0) cur = g.multiply(cur, g.power(n_.rows()[r], -k));
  }
  Element y(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) y[k] = cur[kept_[k]];
  return y;
}

Element Quotient::lift(const Element& y) const {
  if (y.size() != kept_.size()) throw DimensionError("element length does not match quotient rank");
  Element x(n_.ambient().rank());
  for (std::size_t k = 0; k < kept_.size(); ++k) x[kept_[k]] = y[k];
  return x;
}

Subgroup Quotient::project(const Subgroup& h) const {
  std::vector<Element> gens;
  for (const Element& r : h.rows()) gens.push_back(project(r));
  return induce(q_, gens);
}

Subgroup Quotient::preimage(const Subgroup& h) const {
  std::vector<Element> gens = n_.rows();
  for (const Element& r : h.rows()) gens.push_back(lift(r));
  return induce(n_.ambient(), gens);
}

}  // namespace nilpc
