#pragma once

#include <array>
#include <random>
#include <string>

#include "nilpc/io.hpp"

namespace testing {

using namespace nilpc;

inline PcPresentation fixture(const std::string& name) { return load_presentation(std::string(FIXTURE_DIR) + "/" + name + ".json"); }
inline Json fixture_json(const std::string& name) { return load_json(std::string(FIXTURE_DIR) + "/" + name + ".json"); }

inline Element elem(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return Element(v);
}

// u_k^e as an element of g.
inline Element gen_power(const PcPresentation& g, std::size_t k, long e) { return g.power(g.generator(k), e); }

// Uniform random normal form with exponents in [-bound, bound] on infinite
// layers and in [0, e_i) on finite ones.
inline Element random_element(const PcPresentation& g, std::mt19937_64& rng, long bound) {
  Element x(g.rank());
  std::uniform_int_distribution<long> d(-bound, bound);
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Int v = d(rng);
    if (g.period(i).is_finite()) v = mod_floor(v, g.period(i).value());
    x[i] = v;
  }
  return x;
}

// Upper unitriangular 3x3 integer matrices, stored as (a, b, c) for
// [[1, a, c], [0, 1, b], [0, 0, 1]].
struct Unitri {
  Int a, b, c;
  friend bool operator==(const Unitri&, const Unitri&) = default;
};

inline Unitri operator*(const Unitri& x, const Unitri& y) {
  // Plain 3x3 product written out.
  std::array<std::array<Int, 3>, 3> m{{{1, x.a, x.c}, {0, 1, x.b}, {0, 0, 1}}};
  std::array<std::array<Int, 3>, 3> n{{{1, y.a, y.c}, {0, 1, y.b}, {0, 0, 1}}};
  std::array<std::array<Int, 3>, 3> p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) p[i][j] += m[i][k] * n[k][j];
  return {p[0][1], p[1][2], p[0][2]};
}

inline Unitri unitri_power(Unitri x, long n) {
  Unitri r{0, 0, 0};
  if (n < 0) {
    // inverse of [[1,a,c],[0,1,b],[0,0,1]]
    x = {-x.a, -x.b, x.a * x.b - x.c};
    n = -n;
  }
  for (; n > 0; n /= 2) {
    if (n % 2 == 1) r = r * x;
    x = x * x;
  }
  return r;
}

// HEIS generators u1, u2, u3 as matrices; [u1, u2] = u3.
inline Unitri heis_matrix(const Element& x) {
  const Unitri u1{1, 0, 0}, u2{0, 1, 0}, u3{0, 0, 1};
  return unitri_power(u1, x[0].get_si()) * unitri_power(u2, x[1].get_si()) * unitri_power(u3, x[2].get_si());
}

inline Element heis_element(const Unitri& m) { return Element(IntVector{m.a, m.b, m.c - m.a * m.b}); }

}  // namespace testing
