#include <random>

#include "doctest.h"
#include "nilpc/abelian.hpp"
#include "nilpc/series.hpp"
#include "support.hpp"

using namespace nilpc;
using namespace testing;

namespace {

Subgroup layers_from(const PcPresentation& g, std::size_t first) { return layer_subgroup(g, first); }

Subgroup gens(const PcPresentation& g, std::initializer_list<std::size_t> ks) {
  std::vector<Element> xs;
  for (std::size_t k : ks) xs.push_back(g.generator(k));
  return induce(g, xs);
}

}  // namespace

TEST_CASE("induced sequences in HEIS") {
  const PcPresentation heis = fixture("heis");
  const Subgroup s = induce(heis, {gen_power(heis, 0, 2), heis.generator(1)});
  REQUIRE(s.size() == 3);
  CHECK(s.leading_index(0) == 0);
  CHECK(s.leading_index(1) == 1);
  CHECK(s.leading_index(2) == 2);
  CHECK(s.rows()[2] == elem({0, 0, 2}));
  CHECK(s.contains(elem({0, 0, 2})));
  CHECK_FALSE(s.contains(elem({0, 0, 1})));
  CHECK(induce(heis, {heis.generator(0), heis.generator(1), heis.generator(2)}) == whole_group(heis));
  CHECK(induce(heis, {}).is_trivial());
  CHECK(whole_group(heis).contains(elem({7, -3, 11})));
  CHECK(trivial_subgroup(heis).contains(heis.identity()));
}

TEST_CASE("membership agrees with brute force on small words") {
  const PcPresentation heis = fixture("heis");
  const Subgroup s = induce(heis, {gen_power(heis, 0, 2), heis.generator(1)});
  // Elements of s: words in u1^2, u2 and their products; the u1 exponent is
  // even and the u3 exponent is then forced even as well.
  for (long a = -4; a <= 4; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -4; c <= 4; ++c) {
        const Element x = elem({a, b, c});
        const bool expected = a % 2 == 0 && c % 2 == 0;
        CHECK(s.contains(x) == expected);
      }
}

TEST_CASE("quotients") {
  const PcPresentation heis = fixture("heis");
  const Quotient q(layers_from(heis, 2));
  CHECK(q.group().rank() == 2);
  CHECK(q.group().period(0).is_infinite());
  CHECK(q.group().period(1).is_infinite());
  CHECK(is_abelian(whole_group(q.group())));
  const Quotient all(whole_group(heis));
  CHECK(all.group().rank() == 0);
  const PcPresentation zg = fixture("zg");
  const Quotient zq(center(zg));
  REQUIRE(zq.group().rank() == 4);
  CHECK(zq.group().period(3).value() == 5);
  CHECK(is_abelian(whole_group(zq.group())));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Element x = random_element(zg, rng, 5), y = random_element(zg, rng, 5);
    CHECK(zq.project(zg.multiply(x, y)) == zq.group().multiply(zq.project(x), zq.project(y)));
    CHECK(zq.project(zq.lift(zq.project(x))) == zq.project(x));
  }
}

TEST_CASE("commutator subgroups and centers") {
  const PcPresentation heis = fixture("heis");
  const PcPresentation zg = fixture("zg");
  CHECK(commutator_subgroup(whole_group(heis), whole_group(heis)) == layers_from(heis, 2));
  CHECK(commutator_subgroup(whole_group(heis), trivial_subgroup(heis)).is_trivial());
  CHECK(commutator_subgroup(whole_group(zg), whole_group(zg)) == layers_from(zg, 5));
  CHECK(center(heis) == layers_from(heis, 2));
  CHECK(commutation_preimage(trivial_subgroup(heis)) == center(heis));
  CHECK(center(zg) == layers_from(zg, 4));
  CHECK(commutation_preimage(whole_group(zg)) == whole_group(zg));
}

TEST_CASE("center agrees with brute-force commutation") {
  for (const char* name : {"heis", "zg", "nr", "f23"}) {
    const PcPresentation g = fixture(name);
    const Subgroup z = center(g);
    for (const Element& x : z.rows())
      for (std::size_t i = 0; i < g.rank(); ++i) CHECK(g.commutator(x, g.generator(i)).is_identity());
    // generators outside the center fail to commute with something
    for (std::size_t i = 0; i < g.rank(); ++i) {
      bool central = true;
      for (std::size_t j = 0; j < g.rank(); ++j) central = central && g.commutator(g.generator(i), g.generator(j)).is_identity();
      CHECK(central == z.contains(g.generator(i)));
    }
  }
}

TEST_CASE("central series") {
  const PcPresentation heis = fixture("heis");
  const SeriesChain l = lower_central_series(heis);
  REQUIRE(l.terms.size() == 3);
  CHECK(l.terms[1] == layers_from(heis, 2));
  CHECK(l.terms[2].is_trivial());
  CHECK(nilpotency_class(heis) == 2);
  const SeriesChain u = upper_central_series(heis);
  REQUIRE(u.terms.size() == 3);
  CHECK(u.terms[0] == whole_group(heis));
  CHECK(u.terms[1] == layers_from(heis, 2));

  const PcPresentation f23 = fixture("f23");
  const SeriesChain lf = lower_central_series(f23);
  REQUIRE(lf.terms.size() == 4);
  CHECK(lf.terms[1] == layers_from(f23, 2));
  CHECK(lf.terms[2] == layers_from(f23, 3));
  CHECK(nilpotency_class(f23) == 3);
  CHECK(lf.is_central());
  CHECK(lf.is_descending());

  const PcPresentation ab("Z2", {Period::infinite(), Period::infinite()}, {}, {});
  CHECK(nilpotency_class(ab) == 1);
  CHECK(lower_central_series(ab).terms.size() == 2);
  CHECK(upper_central_series(ab).terms.size() == 2);

  const PcPresentation zg = fixture("zg");
  const SeriesChain uz = upper_central_series(zg);
  REQUIRE(uz.terms.size() == 3);
  CHECK(uz.terms[1] == layers_from(zg, 4));
}

TEST_CASE("isolators") {
  const PcPresentation zg = fixture("zg");
  const PcPresentation nr = fixture("nr");
  const PcPresentation heis = fixture("heis");
  const Subgroup d = commutator_subgroup(whole_group(zg), whole_group(zg));
  CHECK(isolator(d) == d);
  CHECK(isolator(layers_from(heis, 2)) == layers_from(heis, 2));
  CHECK(isolator(trivial_subgroup(nr)) == layers_from(nr, 4));
  CHECK(torsion_subgroup(nr) == layers_from(nr, 4));
  CHECK(torsion_subgroup(heis).is_trivial());
}

TEST_CASE("isolator properties") {
  for (const char* name : {"heis", "zg", "zk", "nr", "f23"}) {
    const PcPresentation g = fixture(name);
    std::vector<Subgroup> samples{trivial_subgroup(g), commutator_subgroup(whole_group(g), whole_group(g)), center(g)};
    for (std::size_t i = 1; i < g.rank(); ++i) samples.push_back(normal_closure(g, {gen_power(g, i, 2)}));
    for (const Subgroup& n : samples) {
      const Subgroup is = isolator(n);
      CHECK(is.contains(n));
      CHECK(isolator(is) == is);
      CHECK(is_normal(is));
      // every generator of Is(N) has a power in N, with exponent bounded by the index
      for (const Element& x : is.rows()) {
        bool found = false;
        for (long k = 1; k <= 60 && !found; ++k) found = n.contains(g.power(x, k));
        CHECK(found);
      }
      // the quotient by Is(N) is torsion-free
      const Quotient q(is);
      CHECK(torsion_subgroup(q.group()).is_trivial());
    }
  }
}

TEST_CASE("key subgroups") {
  const PcPresentation zg = fixture("zg");
  const KeySubgroups k = key_subgroups(zg);
  CHECK(k.iso_derived == layers_from(zg, 5));
  CHECK(k.center == layers_from(zg, 4));
  CHECK(k.iso_center == layers_from(zg, 5));
  CHECK(k.n == layers_from(zg, 4));
  CHECK(k.m == layers_from(zg, 3));
  CHECK(k.addition == gens(zg, {4}));
  CHECK(k.mn_invariants == IntVector{5});
  CHECK(k.mn_order == 5);
  CHECK_FALSE(k.regular());
  CHECK_FALSE(k.tame());

  const PcPresentation nr = fixture("nr");
  const KeySubgroups kn = key_subgroups(nr);
  CHECK(kn.addition == induce(nr, {gen_power(nr, 2, 3)}));
  CHECK(kn.mn_invariants == IntVector{3});
  CHECK_FALSE(kn.regular());

  const PcPresentation heis = fixture("heis");
  const KeySubgroups kh = key_subgroups(heis);
  CHECK(kh.m == layers_from(heis, 2));
  CHECK(kh.n == layers_from(heis, 2));
  CHECK(kh.center == layers_from(heis, 2));
  CHECK(kh.iso_derived == layers_from(heis, 2));
  CHECK(kh.addition.is_trivial());
  CHECK(kh.regular());
  CHECK(kh.tame());

  CHECK(is_regular(heis));
  CHECK_FALSE(is_regular(nr));
  CHECK_FALSE(is_regular(zg));
  CHECK(is_regular(fixture("f23")));
}

TEST_CASE("key subgroup relations hold on every fixture") {
  for (const char* name : {"heis", "zg", "zh", "zk", "nr", "f23"}) {
    const PcPresentation g = fixture(name);
    const KeySubgroups k = key_subgroups(g);
    CHECK(k.iso_derived.contains(k.derived));
    CHECK(k.n.contains(k.iso_derived));
    CHECK(k.n.contains(k.center));
    CHECK(k.m.contains(k.n));
    CHECK(k.center.contains(k.addition));
    CHECK(meet(k.addition, k.iso_center).is_trivial());
    CHECK(join(k.addition, k.iso_center) == k.center);
    for (std::size_t r = 0; r < k.addition.size(); ++r) CHECK(k.addition.relative_order(r).is_infinite());
  }
}

TEST_CASE("addition and foundation") {
  const PcPresentation zg = fixture("zg");
  const AdditionFoundation af = addition_foundation(zg);
  CHECK(af.addition.size() == 1);
  bool has_period_five = false;
  for (const Period& p : af.foundation.periods()) has_period_five = has_period_five || p == Period::finite(5);
  CHECK(has_period_five);
  CHECK(af.foundation.rank() == zg.rank() - 1);
  const AdditionFoundation ah = addition_foundation(fixture("heis"));
  CHECK(ah.addition.is_trivial());
  CHECK(ah.foundation == fixture("heis"));
}

TEST_CASE("abelian sections") {
  const PcPresentation zg = fixture("zg");
  const AbelianSection ab = abelianization(zg);
  CHECK(ab.invariants() == IntVector{0, 0, 0, 0});
  const AbelianSection mn(layers_from(zg, 3), layers_from(zg, 4));
  CHECK(mn.invariants() == IntVector{5});
  const AbelianSection nra = abelianization(fixture("nr"));
  CHECK(nra.invariants() == IntVector{0, 0, 0});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const Element x = random_element(zg, rng, 4), y = random_element(zg, rng, 4);
    IntVector sum = ab.coordinates(x);
    const IntVector cy = ab.coordinates(y);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += cy[i];
    CHECK(ab.reduce(sum) == ab.coordinates(zg.multiply(x, y)));
    CHECK(ab.coordinates(ab.lift_vector(ab.coordinates(x))) == ab.coordinates(x));
  }
}
