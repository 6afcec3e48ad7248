#include "nilpc/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace nilpc {

IntVector FgAbelian::reduce(IntVector v) const {
  if (v.size() != periods.size()) throw DimensionError("vector length does not match module");
  for (std::size_t k = 0; k < v.size(); ++k)
    if (periods[k] != 0) v[k] = mod_floor(v[k], periods[k]);
  return v;
}

bool FgAbelian::is_zero(const IntVector& v) const {
  const IntVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

BilinearMap::BilinearMap(FgAbelian a, FgAbelian b, FgAbelian c, std::vector<std::vector<IntVector>> table)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), table_(std::move(table)) {
  if (table_.size() != a_.size()) throw DimensionError("bilinear table has wrong row count");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (table_[i].size() != b_.size()) throw DimensionError("bilinear table has wrong column count");
    for (std::size_t j = 0; j < b_.size(); ++j) {
      IntVector& v = table_[i][j];
      v = c_.reduce(v);
      const Int g = gcd(a_.periods[i], b_.periods[j]);
      if (g == 0) continue;
      IntVector w = v;
      for (Int& x : w) x *= g;
      if (!c_.is_zero(w)) throw Error("bilinear table is not well defined on its periods");
    }
  }
}

IntVector BilinearMap::evaluate(const IntVector& x, const IntVector& y) const {
  if (x.size() != a_.size() || y.size() != b_.size()) throw DimensionError("argument length mismatch");
  IntVector out(c_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < b_.size(); ++j) {
      if (y[j] == 0) continue;
      for (std::size_t t = 0; t < c_.size(); ++t) out[t] += x[i] * y[j] * table_[i][j][t];
    }
  }
  return c_.reduce(std::move(out));
}

namespace {

// Is every solution x of sum_i x_i * v(i, j) == 0 for all j zero in `dom`?
template <class ValueAt>
bool kernel_is_trivial(const FgAbelian& dom, std::size_t others, const FgAbelian& c, ValueAt value_at) {
  IntMatrix a(others * c.size(), dom.size());
  IntVector moduli(others * c.size());
  for (std::size_t j = 0; j < others; ++j)
    for (std::size_t t = 0; t < c.size(); ++t) {
      moduli[j * c.size() + t] = c.periods[t];
      for (std::size_t i = 0; i < dom.size(); ++i) a(j * c.size() + t, i) = value_at(i, j)[t];
    }
  const auto sol = solve_congruences(a, IntVector(a.rows()), moduli);
  for (std::size_t r = 0; r < sol->lattice.rows(); ++r)
    if (!dom.is_zero(sol->lattice.row(r))) return false;
  return true;
}

}  // namespace

bool BilinearMap::left_nondegenerate() const {
  return kernel_is_trivial(a_, b_.size(), c_, [&](std::size_t i, std::size_t j) { return table_[i][j]; });
}

bool BilinearMap::right_nondegenerate() const {
  return kernel_is_trivial(b_, a_.size(), c_, [&](std::size_t i, std::size_t j) { return table_[j][i]; });
}

bool BilinearMap::is_full() const {
  IntMatrix gens(0, c_.size());
  for (const auto& row : table_)
    for (const IntVector& v : row) gens.append_row(v);
  for (std::size_t t = 0; t < c_.size(); ++t) {
    IntVector p(c_.size());
    p[t] = c_.periods[t];
    gens.append_row(p);
  }
  return lattice_basis(gens) == IntMatrix::identity(c_.size());
}

const IntMatrix& ScalarTriple::slot(Slot s) const {
  switch (s) {
    case Slot::Left:
      return phi1;
    case Slot::Right:
      return phi2;
    case Slot::Value:
      return phi0;
  }
  throw Error("unknown slot");
}

ScalarTriple compose(const ScalarTriple& x, const ScalarTriple& y) {
  return {x.phi1 * y.phi1, x.phi2 * y.phi2, x.phi0 * y.phi0};
}

const FgAbelian& ScalarRing::module(Slot s) const {
  switch (s) {
    case Slot::Left:
      return a_;
    case Slot::Right:
      return b_;
    case Slot::Value:
      return c_;
  }
  throw Error("unknown slot");
}

std::size_t ScalarRing::entry_count() const { return a_.size() * a_.size() + b_.size() * b_.size() + c_.size() * c_.size(); }

IntVector ScalarRing::entries(const ScalarTriple& t) const {
  IntVector out;
  out.reserve(entry_count());
  for (const IntMatrix* m : {&t.phi1, &t.phi2, &t.phi0})
    for (std::size_t r = 0; r < m->rows(); ++r)
      for (std::size_t c = 0; c < m->cols(); ++c) out.push_back((*m)(r, c));
  return out;
}

ScalarTriple ScalarRing::triple(const IntVector& entries) const {
  if (entries.size() != entry_count()) throw DimensionError("entry vector length mismatch");
  ScalarTriple t{IntMatrix(a_.size(), a_.size()), IntMatrix(b_.size(), b_.size()), IntMatrix(c_.size(), c_.size())};
  std::size_t pos = 0;
  for (auto [m, mod] : {std::pair{&t.phi1, &a_}, std::pair{&t.phi2, &b_}, std::pair{&t.phi0, &c_}})
    for (std::size_t r = 0; r < m->rows(); ++r)
      for (std::size_t c = 0; c < m->cols(); ++c) {
        const Int& p = mod->periods[r];
        (*m)(r, c) = p == 0 ? entries[pos] : Int(mod_floor(entries[pos], p));
        ++pos;
      }
  return t;
}

ScalarRing ScalarRing::from_lattice(const FgAbelian& a, const FgAbelian& b, const FgAbelian& c,
                                    const IntMatrix& generators) {
  ScalarRing ring;
  ring.a_ = a;
  ring.b_ = b;
  ring.c_ = c;
  const std::size_t n = ring.entry_count();
  if (generators.cols() != n && generators.rows() != 0) throw DimensionError("generator length mismatch");

  IntMatrix vanishing(0, n);
  std::size_t pos = 0;
  for (const FgAbelian* mod : {&a, &b, &c})
    for (std::size_t r = 0; r < mod->size(); ++r)
      for (std::size_t col = 0; col < mod->size(); ++col) {
        if (mod->periods[r] != 0) {
          IntVector v(n);
          v[pos] = mod->periods[r];
          vanishing.append_row(v);
        }
        ++pos;
      }
  IntMatrix all(0, n);
  for (std::size_t r = 0; r < generators.rows(); ++r) all.append_row(generators.row(r));
  for (std::size_t r = 0; r < vanishing.rows(); ++r) all.append_row(vanishing.row(r));
  ring.lattice_ = lattice_basis(all);
  const std::size_t s = ring.lattice_.rows();

  IntMatrix rel(0, s);
  for (std::size_t r = 0; r < vanishing.rows(); ++r) rel.append_row(*echelon_coordinates(ring.lattice_, vanishing.row(r)));
  const SmithDecomposition sd = snf(rel);
  ring.v_ = sd.V;
  for (std::size_t k = 0; k < s; ++k) {
    const Int d = sd.diagonal(k);
    if (d == 1) continue;
    ring.kept_.push_back(k);
    ring.periods_.push_back(d);
    ring.basis_.push_back(ring.triple(sd.V_inv.row(k) * ring.lattice_));
  }

  const std::size_t rk = ring.basis_.size();
  ring.mult_.assign(rk, std::vector<IntVector>(rk));
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rk; ++j) {
      const auto p = ring.coordinates(compose(ring.basis_[i], ring.basis_[j]));
      if (!p) throw NotClosed("additive span is not closed under composition");
      ring.mult_[i][j] = *p;
    }
  const ScalarTriple one{IntMatrix::identity(a.size()), IntMatrix::identity(b.size()), IntMatrix::identity(c.size())};
  const auto u = ring.coordinates(one);
  if (!u) throw NotClosed("identity triple is not in the ring");
  ring.unit_ = *u;
  return ring;
}

IntVector ScalarRing::reduce(IntVector v) const {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (periods_[k] != 0) v[k] = mod_floor(v[k], periods_[k]);
  return v;
}

std::optional<IntVector> ScalarRing::coordinates(const ScalarTriple& t) const {
  const auto alpha = echelon_coordinates(lattice_, entries(t));
  if (!alpha) return std::nullopt;
  const IntVector y = *alpha * v_;
  IntVector out(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) out[k] = y[kept_[k]];
  return reduce(std::move(out));
}

ScalarTriple ScalarRing::element(const IntVector& coords) const {
  if (coords.size() != rank()) throw DimensionError("coordinate vector length mismatch");
  IntVector e(entry_count());
  for (std::size_t k = 0; k < rank(); ++k) {
    if (coords[k] == 0) continue;
    const IntVector bk = entries(basis_[k]);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += coords[k] * bk[i];
  }
  return triple(e);
}

IntVector ScalarRing::multiply(const IntVector& x, const IntVector& y) const {
  IntVector out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (y[j] == 0) continue;
      for (std::size_t k = 0; k < rank(); ++k) out[k] += x[i] * y[j] * mult_[i][j][k];
    }
  }
  return reduce(std::move(out));
}

bool ScalarRing::is_commutative() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (mult_[i][j] != mult_[j][i]) return false;
  return true;
}

bool ScalarRing::is_associative() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t k = 0; k < rank(); ++k) {
        IntVector ei(rank()), ek(rank());
        ei[i] = 1;
        ek[k] = 1;
        if (multiply(mult_[i][j], ek) != multiply(ei, mult_[j][k])) return false;
      }
  return true;
}

bool ScalarRing::is_finite() const {
  return std::all_of(periods_.begin(), periods_.end(), [](const Int& p) { return p != 0; });
}

ScalarRing scalar_ring(const BilinearMap& f) {
  const FgAbelian& a = f.left();
  const FgAbelian& b = f.right();
  const FgAbelian& c = f.values();
  const std::size_t na = a.size(), nb = b.size(), nc = c.size();
  const std::size_t off2 = na * na, off0 = off2 + nb * nb, n = off0 + nc * nc;
  auto idx1 = [&](std::size_t r, std::size_t col) { return r * na + col; };
  auto idx2 = [&](std::size_t r, std::size_t col) { return off2 + r * nb + col; };
  auto idx0 = [&](std::size_t r, std::size_t col) { return off0 + r * nc + col; };

  IntMatrix rows(0, n);
  IntVector moduli;
  // Each matrix must respect the periods of its module.
  std::size_t base = 0;
  for (const FgAbelian* mod : {&a, &b, &c}) {
    const std::size_t k = mod->size();
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t col = 0; col < k; ++col) {
        if (mod->periods[col] == 0) continue;
        IntVector v(n);
        v[base + r * k + col] = mod->periods[col];
        rows.append_row(v);
        moduli.push_back(mod->periods[r]);
      }
    base += k * k;
  }
  // f(phi1 x, y) = phi0 f(x, y) = f(x, phi2 y) on basis pairs.
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t t = 0; t < nc; ++t) {
        IntVector rhs(n);
        for (std::size_t k = 0; k < nc; ++k) rhs[idx0(t, k)] -= f.value(i, j)[k];
        IntVector left = rhs, right = rhs;
        for (std::size_t p = 0; p < na; ++p) left[idx1(p, i)] += f.value(p, j)[t];
        for (std::size_t q = 0; q < nb; ++q) right[idx2(q, j)] += f.value(i, q)[t];
        rows.append_row(left);
        moduli.push_back(c.periods[t]);
        rows.append_row(right);
        moduli.push_back(c.periods[t]);
      }
  const auto sol = solve_congruences(rows, IntVector(rows.rows()), moduli);
  return ScalarRing::from_lattice(a, b, c, sol->lattice);
}

IntMatrix block_of(const ScalarTriple& t, const Block& b) {
  const IntMatrix& m = t.slot(b.slot);
  if (b.offset + b.size > m.rows()) throw Error("constraint references unknown quotient");
  IntMatrix out(b.size, b.size);
  for (std::size_t r = 0; r < b.size; ++r)
    for (std::size_t c = 0; c < b.size; ++c) out(r, c) = m(b.offset + r, b.offset + c);
  return out;
}

ScalarRing restrict_ring(const ScalarRing& ring, const std::vector<RingConstraint>& constraints) {
  const std::size_t s = ring.rank();
  // Unknowns: lambda (s of them) followed by auxiliary multipliers.
  struct Row {
    IntVector coeffs;  // lambda part
    std::vector<std::pair<std::size_t, Int>> aux;
    Int modulus;
  };
  std::vector<Row> rows;
  std::size_t aux_count = 0;
  auto periods_of = [&](const Block& b) {
    const FgAbelian& mod = ring.module(b.slot);
    if (b.offset + b.size > mod.size()) throw Error("constraint references unknown quotient");
    return IntVector(mod.periods.begin() + static_cast<std::ptrdiff_t>(b.offset),
                     mod.periods.begin() + static_cast<std::ptrdiff_t>(b.offset + b.size));
  };

  for (const RingConstraint& rc : constraints) {
    if (const auto* h = std::get_if<HomLinearity>(&rc)) {
      const IntVector pto = periods_of(h->to);
      periods_of(h->from);
      if (h->map.rows() != h->to.size || h->map.cols() != h->from.size)
        throw DimensionError("hom-linearity map has wrong shape");
      std::vector<IntMatrix> diffs;
      for (std::size_t k = 0; k < s; ++k) {
        const ScalarTriple& t = ring.basis()[k];
        IntMatrix d = block_of(t, h->to) * h->map;
        const IntMatrix r = h->map * block_of(t, h->from);
        for (std::size_t i = 0; i < d.rows(); ++i)
          for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) -= r(i, j);
        diffs.push_back(std::move(d));
      }
      for (std::size_t i = 0; i < h->to.size; ++i)
        for (std::size_t j = 0; j < h->from.size; ++j) {
          Row row{IntVector(s), {}, pto[i]};
          for (std::size_t k = 0; k < s; ++k) row.coeffs[k] = diffs[k](i, j);
          rows.push_back(std::move(row));
        }
    } else {
      const auto& inv = std::get<SubmoduleInvariance>(rc);
      const IntVector p = periods_of(inv.block);
      for (const IntVector& w : inv.generators)
        if (w.size() != inv.block.size) throw DimensionError("submodule generator has wrong length");
      for (const IntVector& w : inv.generators) {
        std::vector<IntVector> images;
        for (std::size_t k = 0; k < s; ++k) images.push_back(block_of(ring.basis()[k], inv.block) * w);
        const std::size_t first_aux = aux_count;
        aux_count += inv.generators.size();
        for (std::size_t c = 0; c < inv.block.size; ++c) {
          Row row{IntVector(s), {}, p[c]};
          for (std::size_t k = 0; k < s; ++k) row.coeffs[k] = images[k][c];
          for (std::size_t h = 0; h < inv.generators.size(); ++h)
            row.aux.emplace_back(first_aux + h, -inv.generators[h][c]);
          rows.push_back(std::move(row));
        }
      }
    }
  }

  IntMatrix a(rows.size(), s + aux_count);
  IntVector moduli;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < s; ++k) a(r, k) = rows[r].coeffs[k];
    for (const auto& [col, v] : rows[r].aux) a(r, s + col) = v;
    moduli.push_back(rows[r].modulus);
  }
  const auto sol = solve_congruences(a, IntVector(rows.size()), moduli);
  IntMatrix lambdas(sol->lattice.rows(), s);
  for (std::size_t r = 0; r < sol->lattice.rows(); ++r)
    for (std::size_t k = 0; k < s; ++k) lambdas(r, k) = sol->lattice(r, k);

  IntMatrix gens(0, ring.entry_count());
  for (std::size_t r = 0; r < lambdas.rows(); ++r) gens.append_row(ring.entries(ring.element(lambdas.row(r))));
  return ScalarRing::from_lattice(ring.module(Slot::Left), ring.module(Slot::Right), ring.module(Slot::Value), gens);
}

ScalarRing intersect_rings(const ScalarRing& x, const ScalarRing& y) {
  for (Slot s : {Slot::Left, Slot::Right, Slot::Value})
    if (!(x.module(s) == y.module(s))) throw DimensionError("rings act on different modules");
  return ScalarRing::from_lattice(x.module(Slot::Left), x.module(Slot::Right), x.module(Slot::Value),
                                  lattice_intersection(x.entry_lattice(), y.entry_lattice()));
}

namespace {

using Ideal = std::vector<bool>;

class FiniteRing {
 public:
  FiniteRing(const ScalarRing& ring, std::size_t max_elements) : ring_(ring) {
    if (!ring.is_finite()) throw Error("prime decomposition oracle needs a finite ring");
    Int size = 1;
    for (const Int& p : ring.additive_periods()) size *= p;
    if (size > static_cast<long>(max_elements)) throw Error("ring too large for exhaustive search");
    n_ = size.get_ui();
    for (std::size_t x = 0; x < n_; ++x) coords_.push_back(decode(x));
    add_.assign(n_ * n_, 0);
    mul_.assign(n_ * n_, 0);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) {
        IntVector s = coords_[x];
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += coords_[y][k];
        add_[x * n_ + y] = encode(ring.reduce(s));
        mul_[x * n_ + y] = encode(ring.multiply(coords_[x], coords_[y]));
      }
  }

  std::size_t size() const { return n_; }
  const IntVector& coords(std::size_t x) const { return coords_[x]; }
  std::uint32_t mul(std::size_t x, std::size_t y) const { return mul_[x * n_ + y]; }

  // Additive subgroup generated by a set.
  Ideal span(const std::vector<std::size_t>& gens) const {
    Ideal in(n_, false);
    std::deque<std::size_t> queue{0};
    in[0] = true;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t g : gens) {
        const std::size_t y = add_[x * n_ + g];
        if (!in[y]) {
          in[y] = true;
          queue.push_back(y);
        }
      }
    }
    return in;
  }

  Ideal principal(std::size_t x) const {
    std::vector<std::size_t> gens;
    for (std::size_t r = 0; r < n_; ++r) gens.push_back(mul(x, r));
    return span(gens);
  }

  Ideal sum(const Ideal& a, const Ideal& b) const { return span(members(a, b)); }

  Ideal product(const Ideal& a, const Ideal& b) const {
    std::vector<std::size_t> gens;
    for (std::size_t x = 0; x < n_; ++x)
      if (a[x])
        for (std::size_t y = 0; y < n_; ++y)
          if (b[y]) gens.push_back(mul(x, y));
    return span(gens);
  }

  bool is_prime(const Ideal& p) const {
    if (std::all_of(p.begin(), p.end(), [](bool b) { return b; })) return false;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (p[mul(x, y)] && !p[x] && !p[y]) return false;
    return true;
  }

  std::vector<IntVector> generators(const Ideal& p) const {
    std::vector<IntVector> out;
    Ideal cur(n_, false);
    cur[0] = true;
    for (std::size_t x = 0; x < n_; ++x)
      if (p[x] && !cur[x]) {
        out.push_back(coords_[x]);
        cur = sum(cur, principal(x));
      }
    return out;
  }

 private:
  static std::vector<std::size_t> members(const Ideal& a, const Ideal& b) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < a.size(); ++x)
      if (a[x] || b[x]) out.push_back(x);
    return out;
  }

  IntVector decode(std::size_t x) const {
    IntVector c;
    for (const Int& p : ring_.additive_periods()) {
      const std::size_t pi = p.get_ui();
      c.push_back(static_cast<unsigned long>(x % pi));
      x /= pi;
    }
    return c;
  }

  std::uint32_t encode(const IntVector& c) const {
    std::size_t x = 0, scale = 1;
    for (std::size_t k = 0; k < c.size(); ++k) {
      x += c[k].get_ui() * scale;
      scale *= ring_.additive_periods()[k].get_ui();
    }
    return static_cast<std::uint32_t>(x);
  }

  const ScalarRing& ring_;
  std::size_t n_ = 0;
  std::vector<IntVector> coords_;
  std::vector<std::uint32_t> add_, mul_;
};

}  // namespace

PrimeDecomposition prime_decomposition_zero(const ScalarRing& ring, std::size_t max_elements) {
  const FiniteRing r(ring, max_elements);
  PrimeDecomposition out;
  if (r.size() == 1) return out;

  std::vector<Ideal> ideals;
  std::set<Ideal> seen;
  for (std::size_t x = 0; x < r.size(); ++x) {
    Ideal p = r.principal(x);
    if (seen.insert(p).second) ideals.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Ideal s = r.sum(ideals[i], ideals[j]);
      if (seen.insert(s).second) ideals.push_back(std::move(s));
    }
  std::vector<Ideal> primes;
  for (const Ideal& p : ideals)
    if (r.is_prime(p)) primes.push_back(p);
  std::sort(primes.begin(), primes.end(), [](const Ideal& a, const Ideal& b) {
    const auto ca = std::count(a.begin(), a.end(), true), cb = std::count(b.begin(), b.end(), true);
    return ca != cb ? ca < cb : a < b;
  });

  Ideal zero(r.size(), false);
  zero[0] = true;
  // Breadth-first over non-decreasing sequences of primes.
  struct State {
    Ideal product;
    std::vector<std::size_t> factors;
  };
  std::vector<State> frontier;
  for (std::size_t i = 0; i < primes.size(); ++i) frontier.push_back({primes[i], {i}});
  std::size_t max_len = 1;
  for (std::size_t s = r.size(); s > 1; s >>= 1) ++max_len;
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    for (const State& s : frontier)
      if (s.product == zero) {
        for (std::size_t i : s.factors) {
          out.ideals.push_back(r.generators(primes[i]));
          out.ideal_sizes.push_back(static_cast<std::size_t>(std::count(primes[i].begin(), primes[i].end(), true)));
        }
        return out;
      }
    std::vector<State> next;
    std::set<std::pair<Ideal, std::size_t>> visited;
    for (const State& s : frontier)
      for (std::size_t i = s.factors.back(); i < primes.size(); ++i) {
        Ideal p = r.product(s.product, primes[i]);
        if (!visited.insert({p, i}).second) continue;
        std::vector<std::size_t> f = s.factors;
        f.push_back(i);
        next.push_back({std::move(p), std::move(f)});
      }
    frontier = std::move(next);
  }
  throw Error("no product of primes equals zero within the search bound");
}

}  // namespace nilpc
