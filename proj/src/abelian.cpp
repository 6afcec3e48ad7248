#include "nilpc/abelian.hpp"

namespace nilpc {

namespace {

// Sign of an element of infinite order: raise it past finite layers until the
// leading exponent sits on an infinite layer.
int infinite_sign(const PcPresentation& g, Element w) {
  for (;;) {
    const std::size_t d = w.depth();
    if (d == w.size()) throw Error("element of finite order where a free generator was expected");
    if (g.period(d).is_infinite()) return sgn(w[d]);
    w = g.power(w, g.period(d).value());
  }
}

}  // namespace

AbelianSection::AbelianSection(const Subgroup& top, const Subgroup& bottom)
    : top_(top), bottom_(bottom), q_(bottom), projected_(q_.project(top)) {
  if (!top_.contains(bottom_)) throw Error("section bottom is not contained in top");
  if (!is_abelian(projected_)) throw NotAbelian("section is not abelian");
  const PcPresentation& qg = q_.group();
  const std::size_t s = projected_.size();

  IntMatrix rel(0, s);
  for (std::size_t r = 0; r < s; ++r) {
    const Period ro = projected_.relative_order(r);
    if (ro.is_infinite()) continue;
    IntVector row = *projected_.exponents(qg.power(projected_.rows()[r], ro.value()));
    for (Int& x : row) x = -x;
    row[r] += ro.value();
    rel.append_row(row);
  }
  const SmithDecomposition sd = snf(rel);
  v_ = sd.V;
  IntMatrix v_inv = sd.V_inv;
  for (std::size_t k = 0; k < s; ++k) {
    const Int d = sd.diagonal(k);
    if (d == 1) continue;
    Element w = projected_.evaluate(v_inv.row(k));
    if (d == 0) {
      if (infinite_sign(qg, w) < 0) {
        for (std::size_t c = 0; c < s; ++c) {
          v_inv(k, c) = -v_inv(k, c);
          v_(c, k) = -v_(c, k);
        }
        w = projected_.evaluate(v_inv.row(k));
      }
    }
    kept_.push_back(k);
    periods_.push_back(Period::from_int(d));
    lifts_.push_back(q_.lift(w));
  }
}

std::size_t AbelianSection::free_rank() const {
  std::size_t n = 0;
  for (const Period& p : periods_)
    if (p.is_infinite()) ++n;
  return n;
}

IntVector AbelianSection::invariants() const {
  IntVector out;
  for (const Period& p : periods_) out.push_back(p.value());
  return out;
}

IntVector AbelianSection::reduce(IntVector v) const {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (periods_[k].is_finite()) v[k] = mod_floor(v[k], periods_[k].value());
  return v;
}

IntVector AbelianSection::coordinates(const Element& x) const {
  const auto exps = projected_.exponents(q_.project(x));
  if (!exps) throw Error("element " + to_string(x) + " is not in the section");
  const IntVector y = *exps * v_;
  IntVector out(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) out[k] = y[kept_[k]];
  return reduce(std::move(out));
}

Element AbelianSection::lift_vector(const IntVector& coords) const {
  if (coords.size() != rank()) throw DimensionError("coordinate vector length mismatch");
  const PcPresentation& g = top_.ambient();
  Element x = g.identity();
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0) x = g.multiply(x, g.power(lifts_[k], coords[k]));
  return x;
}

}  // namespace nilpc
