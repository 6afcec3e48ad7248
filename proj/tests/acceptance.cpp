// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include "nilpc/bilinear.hpp"
#include "nilpc/deformation.hpp"
#include "oracles.hpp"
#include "scalar_oracle.hpp"
#include "support.hpp"

using namespace nilpc;
using namespace testing;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0 for no limit
  std::function<bool(std::string&)> run;
};

bool all_layers_from(const Subgroup& h, std::size_t first) { return h == layer_subgroup(h.ambient(), first); }

bool collection_oracle(std::string& note) {
  const PcPresentation heis = fixture("heis");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> ex(-50, 50);
  for (int t = 0; t < 1000; ++t) {
    const Element x = random_element(heis, rng, 50), y = random_element(heis, rng, 50);
    if (!(heis_matrix(heis.multiply(x, y)) == heis_matrix(x) * heis_matrix(y))) {
      note = "product mismatch at " + to_string(x) + " * " + to_string(y);
      return false;
    }
    const long n = ex(rng);
    if (!(heis_matrix(heis.power(x, n)) == unitri_power(heis_matrix(x), n))) {
      note = "power mismatch at " + to_string(x) + "^" + std::to_string(n);
      return false;
    }
  }
  note = "1000 products and powers";
  return true;
}

bool consistency(std::string& note) {
  for (const char* name : {"heis", "zg", "zh", "zk", "nr", "f23"})
    if (!fixture(name).consistency_check().consistent()) {
      note = std::string(name) + " inconsistent";
      return false;
    }
  const PcPresentation bad = load_presentation(std::string(FIXTURE_DIR) + "/heis_mutated.json", {.check_consistency = false});
  const ConsistencyReport r = bad.consistency_check();
  if (r.consistent()) return false;
  const OverlapFailure& f = r.failures.front();
  note = "mutated HEIS fails at overlap " + f.overlap + " with defect " + to_string(f.difference);
  return f.difference == elem({0, 0, -2}) || f.difference == elem({0, 0, 2});
}

bool subgroup_zoo(std::string& note) {
  const PcPresentation zg = fixture("zg");
  const KeySubgroups k = key_subgroups(zg);
  const bool zg_ok = k.addition == induce(zg, {zg.generator(4)}) && k.mn_invariants == IntVector{5} &&
                     all_layers_from(k.m, 3) && all_layers_from(k.n, 4);
  const PcPresentation nr = fixture("nr");
  const KeySubgroups kn = key_subgroups(nr);
  const bool nr_ok = kn.addition == induce(nr, {nr.power(nr.generator(2), 3)}) && !kn.regular();
  note = "ZG: G0 = <u5>, M/N = Z/5; NR: G0 = <u3^3>, not regular";
  return zg_ok && nr_ok;
}

bool deformation_identity(std::string& note) {
  const AdaptedPresentation a = adapt_basis(fixture("zg"));
  const PcPresentation k = abdef(a, {{Int(2)}, IntMatrix::from_rows({{Int(1)}})});
  note = "abdef(ZG, d=(2), c=[[1]]) against the ZK fixture";
  return k == fixture("zk") && emit_presentation(k.renamed("ZK")) == emit_presentation(fixture("zk"));
}

bool isomorphism_witness(std::string& note) {
  const PcPresentation zh = fixture("zh"), zk = fixture("zk");
  const GroupHom phi(zh, zk, images_from_json(fixture_json("zh_to_zk"), zk));
  const GroupHom psi(zk, zh, images_from_json(fixture_json("zk_to_zh"), zh));
  note = "phi: ZH -> ZK and psi: ZK -> ZH certified";
  return is_inverse_pair(phi, psi);
}

bool ext_bound(std::string& note) {
  const DeformationEnumeration zg = enumerate_deformations(adapt_basis(fixture("zg")));
  const DeformationEnumeration nr = enumerate_deformations(adapt_basis(fixture("nr")));
  note = "ZG: " + std::to_string(zg.classes.size()) + " classes, bound " + zg.bound.get_str() + "; NR: " +
         std::to_string(nr.classes.size()) + " classes, bound " + nr.bound.get_str();
  return zg.bound == 5 && zg.classes.size() == 4 && nr.bound == 3 && nr.classes.size() == 2;
}

bool invariant_stability(std::string& note) {
  const InvariantReport r = invariant_report(fixture("zg"));
  bool ok = invariant_report(fixture("zh")) == r && invariant_report(fixture("zk")) == r;
  std::size_t count = 0;
  for (const char* name : {"zg", "nr"}) {
    const PcPresentation g = fixture(name);
    const InvariantReport base = invariant_report(g);
    for (const Deformation& d : enumerate_deformations(adapt_basis(g)).classes) {
      ok = ok && invariant_report(d.pres) == base;
      ++count;
    }
  }
  note = "ZG, ZH, ZK and " + std::to_string(count) + " deformations";
  return ok;
}

bool brute_matches(const BilinearMap& f, const ScalarRing& r, std::size_t na, std::size_t nb, std::size_t nc) {
  std::set<IntVector> brute;
  for_each_triple(na, nb, nc, 1, [&](const ScalarTriple& t) {
    if (satisfies_scalar_equation(f, t)) brute.insert(r.entries(t));
  });
  return brute == ring_elements_in_box(r, 3, 1);
}

bool scalar_rings(std::string& note) {
  const BilinearMap sym = bilinear_from_json(fixture_json("symplectic"));
  const ScalarRing rs = scalar_ring(sym);
  const bool sym_ok = rs.rank() == 1 && rs.additive_periods() == IntVector{0} && brute_matches(sym, rs, 2, 2, 1);

  const BilinearMap gauss = bilinear_from_json(fixture_json("gaussian"));
  const ScalarRing rg = scalar_ring(gauss);
  IntVector minus_one = rg.unit();
  for (Int& x : minus_one) x = -x;
  minus_one = rg.reduce(minus_one);
  bool has_i = false;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) has_i = has_i || (rg.rank() == 2 && rg.multiply({a, b}, {a, b}) == minus_one);
  const bool gauss_ok = rg.rank() == 2 && has_i && brute_matches(gauss, rg, 2, 2, 2);

  const BilinearMap z2 = bilinear_from_json(fixture_json("z2_mult"));
  const ScalarRing r2 = scalar_ring(z2);
  std::size_t solutions = 0;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 2; ++b)
      for (long c = 0; c < 2; ++c)
        solutions += satisfies_scalar_equation(
            z2, {IntMatrix::from_rows({{a}}), IntMatrix::from_rows({{b}}), IntMatrix::from_rows({{c}})});
  const bool z2_ok = r2.additive_periods() == IntVector{2} && solutions == 2;
  note = std::string("symplectic ") + (sym_ok ? "Z" : "wrong") + ", Gaussian " + (gauss_ok ? "Z[i]" : "wrong") +
         ", Z/2 " + (z2_ok ? "Z/2" : "wrong");
  return sym_ok && gauss_ok && z2_ok;
}

bool bilinearization(std::string& note) {
  const PcPresentation heis = fixture("heis");
  const AssembledMap fg = assemble_FR(associated_series(lower_central_series(heis)));
  const AssembledMap fz = assemble_FR(associated_series(upper_central_series(heis)));
  bool det_form = fg.map.values().periods == IntVector{0};
  for (long x1 = -3; x1 <= 3; ++x1)
    for (long x2 = -3; x2 <= 3; ++x2)
      for (long y1 = -3; y1 <= 3; ++y1)
        for (long y2 = -3; y2 <= 3; ++y2)
          det_form = det_form && fg.map.evaluate({x1, x2}, {y1, y2}) == IntVector{x1 * y2 - x2 * y1};
  note = "lower and upper central series give x1*y2 - x2*y1";
  return fg.map == fz.map && det_form;
}

bool embeddings(std::string& note) {
  const AdaptedPresentation a = adapt_basis(fixture("zg"));
  const DeformationParams p{{Int(2)}, IntMatrix::from_rows({{Int(1)}})};
  std::vector<GroupHom> maps{standard_embedding(a, p)};
  for (std::size_t j = 1; j <= 5; ++j) maps.push_back(twisted_embedding(a, p, j));
  note = "indices";
  bool ok = true;
  for (const GroupHom& m : maps) {
    ok = ok && m.target() == fixture("zk");
    const Period idx = image_index(m).index;
    ok = ok && idx.is_finite() && gcd(idx.value(), Int(5)) == 1;
    note += " " + idx.to_string();
  }
  return ok;
}

bool regularity(std::string& note) {
  note = "HEIS regular; NR and ZG not";
  return is_regular(fixture("heis")) && !is_regular(fixture("nr")) && !is_regular(fixture("zg"));
}

bool linear_algebra(std::string& note) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> md(2, 6), small(-5, 5);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 3;
    const IntMatrix a = random_matrix(rng, r, c, 6);
    const auto s = snf(a);
    if (!(s.U * a * s.V == s.D) || abs_det(s.U) != 1 || abs_det(s.V) != 1) return false;
    Int prefix = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prefix *= s.diagonal(k - 1);
      if (prefix != determinantal_divisor(a, k)) return false;
      if (k < std::min(r, c) && s.diagonal(k - 1) != 0 && s.diagonal(k) % s.diagonal(k - 1) != 0) return false;
    }
    const auto h = hnf(a);
    if (!(h.U * a == h.H) || abs_det(h.U) != 1) return false;
    IntMatrix b = a;
    if (r > 1) b.add_row_multiple(0, r - 1, small(rng));
    if (!(hnf(b).H == h.H)) return false;

    // one congruence system in one or two unknowns against the full period box
    const std::size_t n = 1 + trial % 2;
    const IntMatrix m = random_matrix(rng, 2, n, 5);
    const IntVector rhs{small(rng), small(rng)};
    const IntVector moduli{md(rng), md(rng)};
    const auto sol = solve_congruences(m, rhs, moduli);
    const long box = Int(lcm(moduli[0], moduli[1])).get_si();
    bool any = false;
    for (long x0 = 0; x0 < box; ++x0)
      for (long x1 = 0; x1 < (n == 2 ? box : 1); ++x1) {
        IntVector x{x0};
        if (n == 2) x.emplace_back(x1);
        bool sat = true;
        for (std::size_t i = 0; i < 2; ++i) {
          Int v = -rhs[i];
          for (std::size_t j = 0; j < n; ++j) v += m(i, j) * x[j];
          sat = sat && mod_floor(v, moduli[i]) == 0;
        }
        any = any || sat;
        if (sol) {
          IntVector diff(n);
          for (std::size_t j = 0; j < n; ++j) diff[j] = x[j] - sol->particular[j];
          if (sat != echelon_coordinates(sol->lattice, diff).has_value()) return false;
        }
      }
    if (any != sol.has_value()) return false;
    ++checked;
  }
  note = std::to_string(checked) + " random instances";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "collection agrees with unitriangular matrices on HEIS", 1.0, collection_oracle},
      {2, "consistency of fixtures, mutated HEIS rejected", 1.0, consistency},
      {3, "key subgroups of ZG and NR", 1.0, subgroup_zoo},
      {4, "abelian deformation of ZG equals ZK", 0.0, deformation_identity},
      {5, "ZH and ZK isomorphic via certified inverse pair", 1.0, isomorphism_witness},
      {6, "deformation classes within the bound", 0.0, ext_bound},
      {7, "invariant reports agree across deformations", 0.0, invariant_stability},
      {8, "rings of scalars of three bilinear maps", 5.0, scalar_rings},
      {9, "bilinearization of HEIS is the determinant form", 0.0, bilinearization},
      {10, "standard and twisted embeddings ZG -> ZK", 0.0, embeddings},
      {11, "regularity of HEIS, NR and ZG", 0.0, regularity},
      {12, "SNF, HNF and congruence solver on random instances", 10.0, linear_algebra},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string note;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      ok = false;
      note += " (over time limit)";
    }
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.title << "  [" << std::fixed
              << std::setprecision(3) << secs << " s";
    if (c.limit_seconds > 0) std::cout << " / " << std::setprecision(0) << c.limit_seconds << " s";
    std::cout << "]  " << note << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
