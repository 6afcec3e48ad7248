#include <random>

#include "doctest.h"
#include "nilpc/deformation.hpp"
#include "support.hpp"

using namespace nilpc;
using namespace testing;

namespace {

GroupHom map_fixture(const PcPresentation& src, const PcPresentation& dst, const std::string& name) {
  return GroupHom(src, dst, images_from_json(fixture_json(name), dst));
}

void spot_check(const GroupHom& phi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 200; ++t) {
    const Element x = random_element(phi.source(), rng, 5), y = random_element(phi.source(), rng, 5);
    CHECK(phi.apply(phi.source().multiply(x, y)) == phi.target().multiply(phi.apply(x), phi.apply(y)));
  }
}

}  // namespace

TEST_CASE("certification") {
  const PcPresentation zh = fixture("zh"), zk = fixture("zk"), heis = fixture("heis");
  CHECK_NOTHROW(identity_hom(zh));
  CHECK_NOTHROW(map_fixture(zk, zh, "zk_to_zh"));
  CHECK_NOTHROW(map_fixture(zh, zk, "zh_to_zk"));
  const std::vector<Element> bad = images_from_json(fixture_json("heis_bad_map"), heis);
  REQUIRE(violated_relation(heis, heis, bad).has_value());
  CHECK(*violated_relation(heis, heis, bad) == "[u2,u1] = u3^-1");
  CHECK_THROWS_AS(GroupHom(heis, heis, bad), RelationViolated);
  CHECK_THROWS_AS(GroupHom(heis, heis, {heis.generator(0)}), DimensionError);
}

TEST_CASE("inverse pairs") {
  const PcPresentation zh = fixture("zh"), zk = fixture("zk"), heis = fixture("heis");
  const GroupHom phi = map_fixture(zh, zk, "zh_to_zk");
  const GroupHom psi = map_fixture(zk, zh, "zk_to_zh");
  CHECK(is_inverse_pair(phi, psi));
  CHECK(is_inverse_pair(psi, phi));
  CHECK(is_inverse_pair(identity_hom(heis), identity_hom(heis)));
  CHECK_THROWS_AS(is_inverse_pair(phi, phi), DimensionError);
  // u1 -> u1 u2 is an automorphism of infinite order, not an involution
  const GroupHom shear(heis, heis, {heis.multiply(heis.generator(0), heis.generator(1)), heis.generator(1), heis.generator(2)});
  CHECK_FALSE(is_inverse_pair(shear, shear));
  CHECK(compose(psi, phi).images() == identity_hom(zh).images());
}

TEST_CASE("certified homs are multiplicative on random pairs") {
  const PcPresentation zh = fixture("zh"), zk = fixture("zk");
  spot_check(map_fixture(zh, zk, "zh_to_zk"), 21);
  spot_check(map_fixture(zk, zh, "zk_to_zh"), 22);
  const AdaptedPresentation a = adapt_basis(fixture("zg"));
  const DeformationParams p{{Int(2)}, IntMatrix::from_rows({{Int(1)}})};
  spot_check(standard_embedding(a, p), 23);
  for (std::size_t j = 1; j <= 3; ++j) spot_check(twisted_embedding(a, p, j), 24 + j);
  const AdaptedPresentation n = adapt_basis(fixture("nr"));
  spot_check(*n.to_adapted, 30);
  spot_check(*n.from_adapted, 31);
}

TEST_CASE("image index") {
  const PcPresentation heis = fixture("heis");
  CHECK(image_index(identity_hom(heis)).index == Period::finite(1));
  const GroupHom sq(heis, heis, {gen_power(heis, 0, 2), heis.generator(1), gen_power(heis, 2, 2)});
  CHECK(image_index(sq).index == Period::finite(4));
  const GroupHom kill(heis, heis, {heis.generator(0), heis.identity(), heis.identity()});
  CHECK(image_index(kill).index.is_infinite());
}

TEST_CASE("invariant reports") {
  const InvariantReport zg = invariant_report(fixture("zg"));
  CHECK(zg.hirsch == 6);
  CHECK(zg.nilpotency_class == 2);
  CHECK(zg.ab_invariants == IntVector{0, 0, 0, 0});
  CHECK(zg.mn_order == 5);
  CHECK(zg.p == 1);
  CHECK(zg.n == 1);
  CHECK(zg.e == 5);
  CHECK_FALSE(zg.regular);
  CHECK_FALSE(zg.tame);
  CHECK(invariant_report(fixture("zh")) == zg);
  CHECK(invariant_report(fixture("zk")) == zg);

  const InvariantReport heis = invariant_report(fixture("heis"));
  CHECK(heis.hirsch == 3);
  CHECK(heis.nilpotency_class == 2);
  CHECK(heis.ab_invariants == IntVector{0, 0});
  CHECK(heis.mn_order == 1);
  CHECK(heis.p == 0);
  CHECK(heis.regular);
  CHECK(heis.tame);
}

TEST_CASE("invariant reports are stable under adaptation, deformation and certified isomorphism") {
  for (const char* name : {"heis", "zg", "zh", "zk", "nr", "f23"}) {
    const PcPresentation g = fixture(name);
    const InvariantReport r = invariant_report(g);
    const AdaptedPresentation a = adapt_basis(g);
    CHECK(invariant_report(a.pres) == r);
    for (const Deformation& d : enumerate_deformations(a).classes) CHECK(invariant_report(d.pres) == r);
  }
  const PcPresentation zh = fixture("zh"), zk = fixture("zk");
  if (is_inverse_pair(map_fixture(zh, zk, "zh_to_zk"), map_fixture(zk, zh, "zk_to_zh")))
    CHECK(invariant_report(zh) == invariant_report(zk));
}
