#include "nilpc/pc.hpp"

#include <algorithm>
#include <sstream>

namespace nilpc {

Period Period::finite(const Int& n) {
  if (n <= 0) throw PresentationError("finite period must be positive");
  Period p;
  p.value_ = n;
  return p;
}

std::string Period::to_string() const { return is_infinite() ? std::string("inf") : value_.get_str(); }

bool Element::is_identity() const {
  return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

std::size_t Element::depth() const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != 0) return i;
  return e_.size();
}

std::string to_string(const Element& x) {
  if (x.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (!first) os << ' ';
    first = false;
    os << 'u' << (i + 1);
    if (x[i] != 1) os << '^' << x[i];
  }
  return os.str();
}

Word sparse_word(const Element& x) {
  Word w;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) w.emplace_back(i, x[i]);
  return w;
}

struct PcPresentation::Data {
  std::string name;
  std::size_t m = 0;
  std::vector<Period> periods;
  std::vector<Element> power_tail;
  std::vector<std::vector<Element>> comm_tail;  // [j][i], i < j
  // conj[j][k] = u_j^-1 u_k u_j and conj_inv[j][k] = u_j u_k u_j^-1 for k > j.
  std::vector<std::vector<IntVector>> conj;
  std::vector<std::vector<IntVector>> conj_inv;
  // u_j moves every deeper generator by a central factor: u_k^{u_j} = u_k c_k.
  std::vector<bool> central_action;
};

namespace {

bool all_zero_from(const IntVector& v, std::size_t from) {
  for (std::size_t k = from; k < v.size(); ++k)
    if (v[k] != 0) return false;
  return true;
}

std::string generator_label(std::size_t i) { return "u" + std::to_string(i + 1); }

}  // namespace

PcPresentation::PcPresentation(std::string name, std::vector<Period> periods, const PowerRelations& powers,
                               const CommutatorRelations& commutators) {
  auto data = std::make_shared<Data>();
  const std::size_t m = periods.size();
  data->name = std::move(name);
  data->m = m;
  data->periods = std::move(periods);
  for (std::size_t i = 0; i < m; ++i)
    if (data->periods[i].value() == 1)
      throw PresentationError("generator " + generator_label(i) + " has period 1");
  data->power_tail.assign(m, Element(m));
  data->comm_tail.assign(m, std::vector<Element>(m, Element(m)));
  data->conj.assign(m, std::vector<IntVector>(m));
  data->conj_inv.assign(m, std::vector<IntVector>(m));

  auto check_tail = [&](const Word& w, std::size_t after, const std::string& what) {
    for (const auto& [idx, e] : w) {
      if (idx >= m) throw PresentationError(what + " mentions generator beyond rank");
      if (idx <= after) throw PresentationError(what + " tail is not supported strictly deeper");
    }
  };
  for (const auto& [i, w] : powers) {
    if (i >= m) throw PresentationError("power relation for generator beyond rank");
    if (data->periods[i].is_infinite())
      throw PresentationError("power relation given for infinite generator " + generator_label(i));
    check_tail(w, i, "power relation of " + generator_label(i));
  }
  for (const auto& [key, w] : commutators) {
    const auto [j, i] = key;
    if (j >= m || i >= j) throw PresentationError("commutator key must satisfy i < j <= rank");
    check_tail(w, j, "commutator [" + generator_label(j) + "," + generator_label(i) + "]");
  }
  d_ = data;

  for (std::size_t s = m; s-- > 0;) {
    if (auto it = powers.find(s); it != powers.end()) data->power_tail[s] = normal_form(it->second);
    for (std::size_t k = s + 1; k < m; ++k) {
      if (auto it = commutators.find({k, s}); it != commutators.end())
        data->comm_tail[k][s] = normal_form(it->second);
      IntVector img = data->comm_tail[k][s].exponents();
      img[k] = 1;
      data->conj[s][k] = std::move(img);
    }
    for (std::size_t k = m; k-- > s + 1;) {
      const IntVector& c = data->comm_tail[k][s].exponents();
      IntVector img = all_zero_from(c, 0) ? IntVector(m) : inv(evaluate(data->conj_inv[s], k + 1, c));
      img[k] = 1;
      data->conj_inv[s][k] = std::move(img);
    }
  }

  std::vector<bool> central(m, true);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!data->comm_tail[j][i].is_identity()) central[i] = central[j] = false;
  data->central_action.assign(m, true);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k)
      for (std::size_t a = 0; a < m; ++a)
        if (data->comm_tail[k][j][a] != 0 && !central[a]) data->central_action[j] = false;
}

const std::string& PcPresentation::name() const { return d_->name; }
std::size_t PcPresentation::rank() const { return d_ ? d_->m : 0; }
const Period& PcPresentation::period(std::size_t i) const { return d_->periods.at(i); }
const std::vector<Period>& PcPresentation::periods() const { return d_->periods; }
const Element& PcPresentation::power_tail(std::size_t i) const { return d_->power_tail.at(i); }

const Element& PcPresentation::commutator_tail(std::size_t j, std::size_t i) const {
  if (i >= j || j >= rank()) throw DimensionError("commutator index out of range");
  return d_->comm_tail[j][i];
}

PowerRelations PcPresentation::power_relations() const {
  PowerRelations out;
  for (std::size_t i = 0; i < rank(); ++i)
    if (!d_->power_tail[i].is_identity()) out[i] = sparse_word(d_->power_tail[i]);
  return out;
}

CommutatorRelations PcPresentation::commutator_relations() const {
  CommutatorRelations out;
  for (std::size_t j = 0; j < rank(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!d_->comm_tail[j][i].is_identity()) out[{j, i}] = sparse_word(d_->comm_tail[j][i]);
  return out;
}

PcPresentation PcPresentation::renamed(std::string name) const {
  auto data = std::make_shared<Data>(*d_);
  data->name = std::move(name);
  PcPresentation p;
  p.d_ = data;
  return p;
}

Element PcPresentation::identity() const { return Element(rank()); }

Element PcPresentation::generator(std::size_t i) const {
  if (i >= rank()) throw DimensionError("generator index out of range");
  Element x(rank());
  x[i] = 1;
  return x;
}

void PcPresentation::check_element(const Element& x) const {
  if (x.size() != rank()) throw DimensionError("element length does not match rank");
}

bool PcPresentation::is_normal_form(const Element& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (d_->periods[i].is_finite() && (x[i] < 0 || x[i] >= d_->periods[i].value())) return false;
  return true;
}

void PcPresentation::mul_gen_power(IntVector& r, std::size_t j, const Int& e) const {
  if (e == 0) return;
  const Data& d = *d_;
  const bool has_tail = !all_zero_from(r, j + 1);
  IntVector t;
  if (has_tail) {
    t.assign(d.m, 0);
    for (std::size_t k = j + 1; k < d.m; ++k) std::swap(t[k], r[k]);
  }
  r[j] += e;
  IntVector carry;
  if (d.periods[j].is_finite()) {
    const Int q = floor_div(r[j], d.periods[j].value());
    if (q != 0) {
      r[j] -= q * d.periods[j].value();
      carry = pow(d.power_tail[j].exponents(), q);
    }
  }
  if (has_tail) t = conj_by_generator(t, j, e);
  IntVector z;
  if (!carry.empty() && has_tail)
    z = mul(carry, t);
  else if (!carry.empty())
    z = std::move(carry);
  else if (has_tail)
    z = std::move(t);
  else
    return;
  for (std::size_t k = j + 1; k < d.m; ++k) r[k] = std::move(z[k]);
}

IntVector PcPresentation::mul(const IntVector& x, const IntVector& y) const {
  IntVector r = x;
  for (std::size_t k = 0; k < y.size(); ++k)
    if (y[k] != 0) mul_gen_power(r, k, y[k]);
  return r;
}

IntVector PcPresentation::inv(const IntVector& x) const {
  IntVector r(x.size());
  for (std::size_t k = x.size(); k-- > 0;)
    if (x[k] != 0) mul_gen_power(r, k, -x[k]);
  return r;
}

IntVector PcPresentation::pow(const IntVector& x, const Int& n) const {
  if (n == 0 || all_zero_from(x, 0)) return IntVector(x.size());
  const std::size_t lead = std::find_if(x.begin(), x.end(), [](const Int& v) { return v != 0; }) - x.begin();
  if (all_zero_from(x, lead + 1)) {
    IntVector r(x.size());
    mul_gen_power(r, lead, x[lead] * n);
    return r;
  }
  IntVector base = n < 0 ? inv(x) : x;
  Int k = abs(n);
  if (k == 1) return base;
  IntVector result(x.size());
  for (;;) {
    if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
    k >>= 1;
    if (k == 0) break;
    base = mul(base, base);
  }
  return result;
}

IntVector PcPresentation::evaluate(const std::vector<IntVector>& images, std::size_t from, const IntVector& x) const {
  IntVector r(x.size());
  for (std::size_t k = from; k < x.size(); ++k)
    if (x[k] != 0) r = mul(r, pow(images[k], x[k]));
  return r;
}

IntVector PcPresentation::conj_by_generator(const IntVector& t, std::size_t j, const Int& e) const {
  if (!d_->central_action.empty() && d_->central_action[j]) {
    IntVector result = t;
    for (std::size_t k = j + 1; k < d_->m; ++k)
      if (t[k] != 0 && !d_->comm_tail[k][j].is_identity())
        result = mul(result, pow(d_->comm_tail[k][j].exponents(), e * t[k]));
    return result;
  }
  const std::vector<IntVector>& images = e > 0 ? d_->conj[j] : d_->conj_inv[j];
  Int n = abs(e);
  if (n == 1) return evaluate(images, j + 1, t);
  // Powers of one automorphism commute, so apply the binary expansion in any order.
  IntVector result = t;
  std::vector<IntVector> base = images;
  for (;;) {
    if (mpz_odd_p(n.get_mpz_t())) result = evaluate(base, j + 1, result);
    n >>= 1;
    if (n == 0) break;
    std::vector<IntVector> next = base;
    for (std::size_t k = j + 1; k < d_->m; ++k) next[k] = evaluate(base, j + 1, base[k]);
    base = std::move(next);
  }
  return result;
}

Element PcPresentation::normal_form(const Word& w) const {
  IntVector r(rank());
  for (const auto& [idx, e] : w) {
    if (idx >= rank()) throw DimensionError("word mentions generator beyond rank");
    mul_gen_power(r, idx, e);
  }
  return Element(std::move(r));
}

Element PcPresentation::multiply(const Element& x, const Element& y) const {
  check_element(x);
  check_element(y);
  return Element(mul(x.exponents(), y.exponents()));
}

Element PcPresentation::multiply_generator_power(const Element& x, std::size_t j, const Int& e) const {
  check_element(x);
  IntVector r = x.exponents();
  mul_gen_power(r, j, e);
  return Element(std::move(r));
}

Element PcPresentation::inverse(const Element& x) const {
  check_element(x);
  return Element(inv(x.exponents()));
}

Element PcPresentation::power(const Element& x, const Int& n) const {
  check_element(x);
  return Element(pow(x.exponents(), n));
}

Element PcPresentation::commutator(const Element& x, const Element& y) const {
  check_element(x);
  check_element(y);
  const IntVector yx = mul(y.exponents(), x.exponents());
  const IntVector xy = mul(x.exponents(), y.exponents());
  return Element(mul(inv(yx), xy));
}

Element PcPresentation::conjugate(const Element& x, const Element& g) const {
  check_element(x);
  check_element(g);
  return Element(mul(inv(g.exponents()), mul(x.exponents(), g.exponents())));
}

ConsistencyReport PcPresentation::consistency_check() const {
  ConsistencyReport report;
  const std::size_t m = rank();
  auto unit = [&](std::size_t i, const Int& e) {
    IntVector v(m);
    v[i] = e;
    return v;
  };
  auto record = [&](std::string label, IntVector lhs, IntVector rhs) {
    ++report.overlaps_checked;
    if (lhs == rhs) return;
    Element diff(mul(inv(lhs), rhs));
    report.failures.push_back({std::move(label), Element(std::move(lhs)), Element(std::move(rhs)), std::move(diff)});
  };
  auto label = [](std::size_t i) { return generator_label(i); };

  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        record(label(k) + " " + label(j) + " " + label(i), mul(mul(unit(k, 1), unit(j, 1)), unit(i, 1)),
               mul(unit(k, 1), mul(unit(j, 1), unit(i, 1))));

  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (d_->periods[j].is_finite()) {
        const Int& e = d_->periods[j].value();
        record(label(j) + "^" + e.get_str() + " " + label(i), mul(d_->power_tail[j].exponents(), unit(i, 1)),
               mul(unit(j, e - 1), mul(unit(j, 1), unit(i, 1))));
      }
      if (d_->periods[i].is_finite()) {
        const Int& e = d_->periods[i].value();
        record(label(j) + " " + label(i) + "^" + e.get_str(), mul(unit(j, 1), d_->power_tail[i].exponents()),
               mul(mul(unit(j, 1), unit(i, 1)), unit(i, e - 1)));
      }
    }

  for (std::size_t i = 0; i < m; ++i)
    if (d_->periods[i].is_finite()) {
      const Int& e = d_->periods[i].value();
      record(label(i) + "^" + Int(e + 1).get_str(), mul(unit(i, 1), d_->power_tail[i].exponents()),
             mul(d_->power_tail[i].exponents(), unit(i, 1)));
    }
  return report;
}

void PcPresentation::require_consistent() const {
  const ConsistencyReport r = consistency_check();
  if (r.consistent()) return;
  const OverlapFailure& f = r.failures.front();
  throw InconsistentPresentation("overlap " + f.overlap + " collects to " + to_string(f.lhs) + " and " +
                                 to_string(f.rhs) + " (difference " + to_string(f.difference) + ")");
}

bool operator==(const PcPresentation& a, const PcPresentation& b) {
  if (a.rank() != b.rank()) return false;
  if (a.rank() == 0) return true;
  if (a.d_->periods != b.d_->periods) return false;
  for (std::size_t j = 0; j < a.rank(); ++j) {
    if (!(a.d_->power_tail[j] == b.d_->power_tail[j])) return false;
    for (std::size_t i = 0; i < j; ++i)
      if (!(a.d_->comm_tail[j][i] == b.d_->comm_tail[j][i])) return false;
  }
  return true;
}

}  // namespace nilpc
