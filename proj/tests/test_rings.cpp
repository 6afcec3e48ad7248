#include <set>

#include "doctest.h"
#include "nilpc/bilinear.hpp"
#include "scalar_oracle.hpp"
#include "support.hpp"

using namespace nilpc;
using namespace testing;

namespace {

BilinearMap bilinear_fixture(const std::string& name) { return bilinear_from_json(fixture_json(name)); }

}  // namespace

TEST_CASE("symplectic form has scalars Z") {
  const BilinearMap f = bilinear_fixture("symplectic");
  const ScalarRing r = scalar_ring(f);
  CHECK(r.rank() == 1);
  CHECK(r.additive_periods() == IntVector{0});
  CHECK(r.element(r.unit()) == ScalarTriple{IntMatrix::identity(2), IntMatrix::identity(2), IntMatrix::identity(1)});
  std::set<IntVector> brute;
  for_each_triple(2, 2, 1, 1, [&](const ScalarTriple& t) {
    if (satisfies_scalar_equation(f, t)) brute.insert(r.entries(t));
  });
  CHECK(brute.size() == 3);
  CHECK(brute == ring_elements_in_box(r, 3, 1));
}

TEST_CASE("Gaussian multiplication has a square root of -1 among its scalars") {
  const BilinearMap f = bilinear_fixture("gaussian");
  const ScalarRing r = scalar_ring(f);
  CHECK(r.rank() == 2);
  CHECK(r.additive_periods() == IntVector{0, 0});
  CHECK(r.is_commutative());
  CHECK(r.is_associative());
  IntVector minus_one = r.unit();
  for (Int& x : minus_one) x = -x;
  bool found = false;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) found = found || r.multiply({a, b}, {a, b}) == r.reduce(minus_one);
  CHECK(found);
  std::set<IntVector> brute;
  for_each_triple(2, 2, 2, 1, [&](const ScalarTriple& t) {
    if (satisfies_scalar_equation(f, t)) brute.insert(r.entries(t));
  });
  CHECK(brute.size() == 9);
  CHECK(brute == ring_elements_in_box(r, 3, 1));
}

TEST_CASE("finite multiplication rings match exhaustive search") {
  for (long n : {2, 3, 4, 6}) {
    const FgAbelian m{{n}, "Z/n"};
    const BilinearMap f(m, m, m, {{{1}}});
    const ScalarRing r = scalar_ring(f);
    CHECK(r.is_finite());
    CHECK(r.additive_periods() == IntVector{n});
    // exhaustive: all triples of residues
    std::set<std::vector<long>> solutions;
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        for (long c = 0; c < n; ++c) {
          const ScalarTriple t{IntMatrix::from_rows({{a}}), IntMatrix::from_rows({{b}}), IntMatrix::from_rows({{c}})};
          if (satisfies_scalar_equation(f, t)) {
            solutions.insert({a, b, c});
            CHECK(r.coordinates(t).has_value());
          }
        }
    CHECK(solutions.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("prime decomposition of zero in Z/n") {
  auto lengths = [](long n) {
    const FgAbelian m{{n}, "Z/n"};
    return prime_decomposition_zero(scalar_ring(BilinearMap(m, m, m, {{{1}}})));
  };
  const PrimeDecomposition z6 = lengths(6);
  REQUIRE(z6.ideals.size() == 2);
  CHECK(z6.ideal_sizes == std::vector<std::size_t>{2, 3});
  const PrimeDecomposition z4 = lengths(4);
  REQUIRE(z4.ideals.size() == 2);
  CHECK(z4.ideal_sizes == std::vector<std::size_t>{2, 2});
  const PrimeDecomposition f5 = lengths(5);
  REQUIRE(f5.ideals.size() == 1);
  CHECK(f5.ideal_sizes == std::vector<std::size_t>{1});
  CHECK_THROWS(prime_decomposition_zero(scalar_ring(bilinear_fixture("symplectic"))));
}

TEST_CASE("restriction without constraints is the identity") {
  const ScalarRing r = scalar_ring(bilinear_fixture("gaussian"));
  const ScalarRing s = restrict_ring(r, {});
  CHECK(s.rank() == r.rank());
  CHECK(s.entry_lattice() == r.entry_lattice());
  CHECK(intersect_rings(r, r).entry_lattice() == r.entry_lattice());
}

TEST_CASE("bilinearization of HEIS") {
  const PcPresentation heis = fixture("heis");
  const AssociatedData lower = associated_series(lower_central_series(heis));
  CHECK(lower.upper.size() == 2);
  CHECK(lower.upper[1] == center(heis));
  CHECK(lower.v == center(heis));
  const AssembledMap fl = assemble_FR(lower);
  const AssembledMap fu = assemble_FR(associated_series(upper_central_series(heis)));
  CHECK(fl.map == fu.map);
  CHECK(fl.map.left().periods == IntVector{0, 0});
  CHECK(fl.map.right().periods == IntVector{0, 0});
  CHECK(fl.map.values().periods == IntVector{0});
  // determinant form x1 y2 - x2 y1
  for (long x1 = -2; x1 <= 2; ++x1)
    for (long x2 = -2; x2 <= 2; ++x2)
      for (long y1 = -2; y1 <= 2; ++y1)
        for (long y2 = -2; y2 <= 2; ++y2)
          CHECK(fl.map.evaluate({x1, x2}, {y1, y2}) == IntVector{x1 * y2 - x2 * y1});
  const BilinearRings rings = bilinear_rings(lower);
  CHECK(rings.a.rank() == 1);
  CHECK(rings.a.additive_periods() == IntVector{0});
  CHECK(rings.p.rank() == 1);
}

TEST_CASE("bilinearization of ZG, F23 and an abelian group") {
  const PcPresentation zg = fixture("zg");
  const AssociatedData d = associated_series(lower_central_series(zg));
  const AssembledMap f = assemble_FR(d);
  CHECK(f.map.left().periods == IntVector{5, 0, 0, 0});
  CHECK(f.map.left_nondegenerate());
  CHECK(f.map.right_nondegenerate());
  CHECK(f.map.is_full());

  const PcPresentation f23 = fixture("f23");
  const AssociatedData df = associated_series(lower_central_series(f23));
  CHECK(df.bundle.size() == 2);

  const PcPresentation ab("Z2", {Period::infinite(), Period::infinite()}, {}, {});
  const AssociatedData da = associated_series(lower_central_series(ab));
  CHECK(da.bundle.empty());
  CHECK(da.v == whole_group(ab));

  CHECK_THROWS(associated_series(SeriesChain{{whole_group(zg), center(zg)}, {}}));
}

TEST_CASE("ring elements satisfy the scalar equation and are closed") {
  for (const char* name : {"heis", "zg", "zh", "nr", "f23"}) {
    const PcPresentation g = fixture(name);
    for (const SeriesChain& s : {lower_central_series(g), upper_central_series(g)}) {
      const BilinearRings rings = bilinear_rings(associated_series(s));
      for (const ScalarRing* r : {&rings.p, &rings.pl, &rings.ae, &rings.ad, &rings.a}) {
        CHECK(r->is_commutative());
        CHECK(r->is_associative());
        for (const ScalarTriple& t : r->basis()) CHECK(satisfies_scalar_equation(rings.f.map, t));
        for (std::size_t i = 0; i < r->rank(); ++i)
          for (std::size_t j = 0; j < r->rank(); ++j) {
            const ScalarTriple prod = compose(r->basis()[i], r->basis()[j]);
            CHECK(r->coordinates(prod) == r->product(i, j));
          }
      }
      // each smaller ring sits inside P
      for (const ScalarTriple& t : rings.a.basis()) {
        CHECK(rings.p.coordinates(t).has_value());
        CHECK(rings.pl.coordinates(t).has_value());
        CHECK(rings.ae.coordinates(t).has_value());
        CHECK(rings.ad.coordinates(t).has_value());
      }
    }
  }
}

TEST_CASE("A acts block-diagonally on the graded pieces of F23") {
  const PcPresentation f23 = fixture("f23");
  const BilinearRings rings = bilinear_rings(associated_series(lower_central_series(f23)));
  const auto& ro = rings.f.right_offsets;
  const auto& vo = rings.f.value_offsets;
  REQUIRE(ro.size() == 2);
  REQUIRE(vo.size() == 2);
  auto block_of_index = [](const std::vector<std::size_t>& offsets, std::size_t i) {
    std::size_t b = 0;
    while (b + 1 < offsets.size() && offsets[b + 1] <= i) ++b;
    return b;
  };
  for (const ScalarTriple& t : rings.a.basis()) {
    for (std::size_t r = 0; r < t.phi2.rows(); ++r)
      for (std::size_t c = 0; c < t.phi2.cols(); ++c)
        if (block_of_index(ro, r) != block_of_index(ro, c)) CHECK(t.phi2(r, c) == 0);
    for (std::size_t r = 0; r < t.phi0.rows(); ++r)
      for (std::size_t c = 0; c < t.phi0.cols(); ++c)
        if (block_of_index(vo, r) != block_of_index(vo, c)) CHECK(t.phi0(r, c) == 0);
  }
}

TEST_CASE("refined series") {
  const PcPresentation heis = fixture("heis");
  const RefinedSeries rh = refined_series(lower_central_series(heis));
  CHECK(rh.special_gap_periods.empty());
  CHECK(rh.upper.terms.front() == whole_group(heis));
  CHECK(rh.upper.terms.back().is_trivial());
  CHECK(rh.upper.is_descending());
  CHECK(rh.lower.is_descending());

  const PcPresentation zg = fixture("zg");
  const RefinedSeries rz = refined_series(lower_central_series(zg));
  CHECK(rz.special_gap_periods == IntVector{0});
  REQUIRE(rz.special_gap_generators.size() == 1);
  CHECK(rz.special_gap_generators[0] == zg.generator(4));
  CHECK(rz.upper.is_descending());
  CHECK(rz.lower.is_descending());
  for (const QuotientAction& a : rz.actions) CHECK(a.matrices.size() == rz.ring.rank());

  const PcPresentation ab("Z2", {Period::infinite(), Period::infinite()}, {}, {});
  const RefinedSeries ra = refined_series(lower_central_series(ab));
  CHECK(ra.special_gap_periods == IntVector{0, 0});
}
