// Command-line front end: every command prints one JSON report on stdout.
// Exit status 0 on success, 1 on a mathematical failure, 2 on a usage error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nilpc/bilinear.hpp"
#include "nilpc/deformation.hpp"
#include "nilpc/io.hpp"

using namespace nilpc;

namespace {

// A command finished but its mathematical verdict is negative.
struct Failure {
  Json report;
};

Json subgroup_json(const Subgroup& h) {
  Json gens = Json::array();
  for (const Element& x : h.rows()) gens.push_back(word_to_json(x));
  return gens;
}

Json elements_json(const std::vector<Element>& xs) {
  Json out = Json::array();
  for (const Element& x : xs) out.push_back(word_to_json(x));
  return out;
}

Json chain_json(const SeriesChain& s) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    Json t;
    if (i < s.labels.size()) t["label"] = s.labels[i];
    t["generators"] = subgroup_json(s.terms[i]);
    t["hirsch"] = s.terms[i].hirsch_length();
    terms.push_back(t);
  }
  Json out;
  out["length"] = s.length();
  out["central"] = s.is_central();
  out["terms"] = terms;
  return out;
}

Json ring_json(const ScalarRing& r) {
  Json out;
  out["rank"] = r.rank();
  out["additive_periods"] = vector_to_json(r.additive_periods());
  out["unit"] = vector_to_json(r.unit());
  Json basis = Json::array();
  for (const ScalarTriple& t : r.basis())
    basis.push_back({{"phi1", matrix_to_json(t.phi1)}, {"phi2", matrix_to_json(t.phi2)}, {"phi0", matrix_to_json(t.phi0)}});
  out["basis"] = basis;
  Json products = Json::array();
  for (std::size_t i = 0; i < r.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < r.rank(); ++j) row.push_back(vector_to_json(r.product(i, j)));
    products.push_back(row);
  }
  out["products"] = products;
  out["commutative"] = r.is_commutative();
  out["associative"] = r.is_associative();
  return out;
}

Json bilinear_json(const BilinearMap& f) {
  Json table = Json::array();
  for (std::size_t i = 0; i < f.left().size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < f.right().size(); ++j) row.push_back(vector_to_json(f.value(i, j)));
    table.push_back(row);
  }
  return {{"left", vector_to_json(f.left().periods)},
          {"right", vector_to_json(f.right().periods)},
          {"values", vector_to_json(f.values().periods)},
          {"table", table}};
}

Json report_json(const InvariantReport& r) {
  return {{"hirsch", r.hirsch},
          {"class", r.nilpotency_class},
          {"ab_invariants", vector_to_json(r.ab_invariants)},
          {"mn_order", int_to_json(r.mn_order)},
          {"p", r.p},
          {"n", r.n},
          {"e", int_to_json(r.e)},
          {"regular", r.regular},
          {"tame", r.tame}};
}

Json params_json(const DeformationParams& p) { return {{"d", vector_to_json(p.d)}, {"c", matrix_to_json(p.c)}}; }

Json ext_json(const ExtClass& c) {
  Json comps = Json::array();
  for (const IntVector& v : c.components) comps.push_back(vector_to_json(v));
  return {{"moduli", vector_to_json(c.moduli)}, {"components", comps}};
}

Json adapted_json(const AdaptedPresentation& a) {
  return {{"i0", a.i0},
          {"i1", a.i1},
          {"i2", a.i2},
          {"n", a.n()},
          {"p", a.p()},
          {"e", int_to_json(a.e())},
          {"normalized", a.normalized()}};
}

SeriesChain pick_series(const PcPresentation& g, const std::string& kind) {
  return kind == "upper" ? upper_central_series(g) : lower_central_series(g);
}

DeformationParams params_from(const std::vector<std::string>& d, const std::vector<std::string>& c) {
  DeformationParams p;
  for (const std::string& s : d) p.d.push_back(Int(s));
  std::size_t n = p.d.size();
  if (c.size() != n * n) throw CLI::ValidationError("--c", "expects " + std::to_string(n * n) + " entries (row-major)");
  p.c = IntMatrix(n, n);
  for (std::size_t i = 0; i < c.size(); ++i) p.c(i / n, i % n) = Int(c[i]);
  return p;
}

Json cmd_check(const std::string& file) {
  const PcPresentation g = load_presentation(file, {.check_consistency = false});
  const ConsistencyReport rep = g.consistency_check();
  Json failures = Json::array();
  for (const OverlapFailure& f : rep.failures)
    failures.push_back({{"overlap", f.overlap},
                        {"lhs", word_to_json(f.lhs)},
                        {"rhs", word_to_json(f.rhs)},
                        {"difference", word_to_json(f.difference)}});
  Json out = {{"command", "check"},
              {"name", g.name()},
              {"rank", g.rank()},
              {"consistent", rep.consistent()},
              {"overlaps_checked", rep.overlaps_checked},
              {"failures", failures}};
  if (!rep.consistent()) throw Failure{out};
  return out;
}

Json cmd_analyze(const std::string& file) {
  const PcPresentation g = load_presentation(file);
  const KeySubgroups k = key_subgroups(g);
  return {{"command", "analyze"},
          {"name", g.name()},
          {"class", nilpotency_class(g)},
          {"derived", subgroup_json(k.derived)},
          {"iso_derived", subgroup_json(k.iso_derived)},
          {"center", subgroup_json(k.center)},
          {"iso_center", subgroup_json(k.iso_center)},
          {"n", subgroup_json(k.n)},
          {"m", subgroup_json(k.m)},
          {"addition", subgroup_json(k.addition)},
          {"mn_invariants", vector_to_json(k.mn_invariants)},
          {"torsion", subgroup_json(torsion_subgroup(g))},
          {"abelianization", vector_to_json(abelianization(g).invariants())},
          {"regular", k.regular()},
          {"tame", k.tame()},
          {"lower_central_series", chain_json(lower_central_series(g))},
          {"upper_central_series", chain_json(upper_central_series(g))}};
}

Json cmd_series(const std::string& file, const std::string& kind, const std::string& base) {
  const PcPresentation g = load_presentation(file);
  Json out = {{"command", "series"}, {"name", g.name()}, {"kind", kind}};
  if (kind != "refined") {
    out["series"] = chain_json(pick_series(g, kind));
    return out;
  }
  const RefinedSeries r = refined_series(pick_series(g, base));
  out["base"] = base;
  out["upper"] = chain_json(r.upper);
  out["lower"] = chain_json(r.lower);
  out["ring"] = ring_json(r.ring);
  Json actions = Json::array();
  for (const QuotientAction& a : r.actions) {
    Json ms = Json::array();
    for (const IntMatrix& m : a.matrices) ms.push_back(matrix_to_json(m));
    actions.push_back({{"quotient", a.label}, {"periods", vector_to_json(a.periods)}, {"matrices", ms}});
  }
  out["actions"] = actions;
  out["special_gap"] = {{"periods", vector_to_json(r.special_gap_periods)},
                        {"generators", elements_json(r.special_gap_generators)}};
  return out;
}

Json cmd_scalars(const std::string& file, const std::string& kind) {
  const PcPresentation g = load_presentation(file);
  const AssociatedData data = associated_series(pick_series(g, kind));
  const BilinearRings rings = bilinear_rings(data);
  Json upper = Json::array(), lower = Json::array();
  for (const Subgroup& h : data.upper) upper.push_back(subgroup_json(h));
  for (const Subgroup& h : data.lower) lower.push_back(subgroup_json(h));
  return {{"command", "scalars"},
          {"name", g.name()},
          {"series", kind},
          {"upper", upper},
          {"lower", lower},
          {"v", subgroup_json(data.v)},
          {"map", bilinear_json(rings.f.map)},
          {"P", ring_json(rings.p)},
          {"PL", ring_json(rings.pl)},
          {"AE", ring_json(rings.ae)},
          {"AD", ring_json(rings.ad)},
          {"A", ring_json(rings.a)}};
}

Json cmd_adapt(const std::string& file) {
  const PcPresentation g = load_presentation(file);
  const AdaptedPresentation a = adapt_basis(g);
  Json out = {{"command", "adapt"}, {"name", g.name()}, {"markers", adapted_json(a)}};
  out["generators"] = elements_json(a.generators);
  out["to_adapted"] = images_to_json(a.to_adapted->images());
  out["witness_verified"] = is_inverse_pair(*a.to_adapted, *a.from_adapted);
  out["presentation"] = presentation_to_json(a.pres);
  return out;
}

Json cmd_deform(const std::string& file, const DeformationParams& params, const std::string& name) {
  const PcPresentation g = load_presentation(file);
  const AdaptedPresentation a = adapt_basis(g);
  const PcPresentation h = abdef(a, params).renamed(name.empty() ? g.name() + "_abdef" : name);
  return presentation_to_json(h);
}

Json cmd_enumerate(const std::string& file) {
  const PcPresentation g = load_presentation(file);
  const AdaptedPresentation a = adapt_basis(g);
  const DeformationEnumeration en = enumerate_deformations(a);
  Json classes = Json::array();
  for (const Deformation& d : en.classes)
    classes.push_back({{"params", params_json(d.params)},
                       {"ext_class", ext_json(d.cls)},
                       {"invariants", report_json(invariant_report(d.pres))},
                       {"presentation", presentation_to_json(d.pres)}});
  return {{"command", "enumerate"},
          {"name", g.name()},
          {"markers", adapted_json(a)},
          {"bound", int_to_json(en.bound)},
          {"candidates", en.candidates},
          {"class_count", en.classes.size()},
          {"own_class", ext_json(ext_class_of(a))},
          {"classes", classes}};
}

Json cmd_hom(const std::string& src_file, const std::string& dst_file, const std::string& map_file, bool verify) {
  const PcPresentation src = load_presentation(src_file);
  const PcPresentation dst = load_presentation(dst_file);
  const std::vector<Element> images = images_from_json(load_json(map_file), dst);
  Json out = {{"command", "hom"}, {"source", src.name()}, {"target", dst.name()}, {"images", images_to_json(images)}};
  if (const auto bad = violated_relation(src, dst, images)) {
    out["valid"] = false;
    out["violated"] = *bad;
    throw Failure{out};
  }
  out["valid"] = true;
  const GroupHom phi(src, dst, images);
  const ImageIndex idx = image_index(phi);
  out["image"] = subgroup_json(idx.image);
  out["index"] = idx.index.is_infinite() ? Json("infinite") : int_to_json(idx.index.value());
  if (verify) {
    // Spot check phi(xy) = phi(x) phi(y) on products of generator powers.
    bool ok = true;
    for (std::size_t i = 0; i < src.rank() && ok; ++i)
      for (std::size_t j = 0; j < src.rank() && ok; ++j) {
        const Element x = src.power(src.generator(i), 3), y = src.power(src.generator(j), -2);
        ok = phi.apply(src.multiply(x, y)) == dst.multiply(phi.apply(x), phi.apply(y));
      }
    out["spot_check"] = ok;
    if (!ok) throw Failure{out};
  }
  return out;
}

Json cmd_inverse_pair(const std::string& a_file, const std::string& b_file, const std::string& phi_file,
                      const std::string& psi_file) {
  const PcPresentation a = load_presentation(a_file);
  const PcPresentation b = load_presentation(b_file);
  const GroupHom phi(a, b, images_from_json(load_json(phi_file), b));
  const GroupHom psi(b, a, images_from_json(load_json(psi_file), a));
  const bool inverse = is_inverse_pair(phi, psi);
  Json out = {{"command", "inverse-pair"}, {"source", a.name()}, {"target", b.name()}, {"inverse_pair", inverse}};
  if (!inverse) throw Failure{out};
  return out;
}

Json cmd_invariants(const std::string& file) {
  const PcPresentation g = load_presentation(file);
  Json out = {{"command", "invariants"}, {"name", g.name()}};
  out["report"] = report_json(invariant_report(g));
  return out;
}

Json cmd_primes(const std::string& zmod, const std::string& bilinear_file, std::size_t max_elements) {
  BilinearMap f = [&] {
    if (!bilinear_file.empty()) return bilinear_from_json(load_json(bilinear_file));
    const Int n(zmod);
    if (n < 2) throw CLI::ValidationError("--zmod", "modulus must be at least 2");
    const FgAbelian m{{n}, "Z/n"};
    return BilinearMap(m, m, m, {{{1}}});
  }();
  const ScalarRing r = scalar_ring(f);
  const PrimeDecomposition pd = prime_decomposition_zero(r, max_elements);
  Json factors = Json::array();
  for (std::size_t k = 0; k < pd.ideals.size(); ++k) {
    Json gens = Json::array();
    for (const IntVector& v : pd.ideals[k]) gens.push_back(vector_to_json(v));
    factors.push_back({{"generators", gens}, {"size", pd.ideal_sizes[k]}});
  }
  return {{"command", "primes"}, {"ring", ring_json(r)}, {"length", pd.ideals.size()}, {"factors", factors}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation with finitely generated nilpotent groups"};
  app.require_subcommand(1);
  std::function<Json()> run;

  std::string file, file2, map_file, phi_file, psi_file, kind = "lower", base = "lower", name, zmod, bilinear;
  std::vector<std::string> d, c;
  bool verify = false;
  std::size_t max_elements = 4096;

  auto* check = app.add_subcommand("check", "Run the consistency check");
  check->add_option("file", file, "Presentation file")->required();
  check->callback([&] { run = [&] { return cmd_check(file); }; });

  auto* analyze = app.add_subcommand("analyze", "Key subgroups and central series");
  analyze->add_option("file", file, "Presentation file")->required();
  analyze->callback([&] { run = [&] { return cmd_analyze(file); }; });

  auto* series = app.add_subcommand("series", "Lower, upper or refined series");
  series->add_option("file", file, "Presentation file")->required();
  series->add_option("--kind", kind, "lower, upper or refined")->check(CLI::IsMember({"lower", "upper", "refined"}));
  series->add_option("--base", base, "series refined by --kind refined")->check(CLI::IsMember({"lower", "upper"}));
  series->callback([&] { run = [&] { return cmd_series(file, kind, base); }; });

  auto* scalars = app.add_subcommand("scalars", "Bilinearization and its rings of scalars");
  scalars->add_option("file", file, "Presentation file")->required();
  scalars->add_option("--series", kind, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
  scalars->callback([&] { run = [&] { return cmd_scalars(file, kind); }; });

  auto* adapt = app.add_subcommand("adapt", "Adapted pseudo-basis");
  adapt->add_option("file", file, "Presentation file")->required();
  adapt->callback([&] { run = [&] { return cmd_adapt(file); }; });

  auto* deform = app.add_subcommand("deform", "Abelian deformation; prints a presentation file");
  deform->add_option("file", file, "Presentation file")->required();
  deform->add_option("--d", d, "d_1 ... d_n")->required();
  deform->add_option("--c", c, "c as n*n integers, row-major")->required();
  deform->add_option("--name", name, "name of the output presentation");
  deform->callback([&] { run = [&] { return cmd_deform(file, params_from(d, c), name); }; });

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate deformations by Ext class");
  enumerate->add_option("file", file, "Presentation file")->required();
  enumerate->callback([&] { run = [&] { return cmd_enumerate(file); }; });

  auto* hom = app.add_subcommand("hom", "Certify a homomorphism given by generator images");
  hom->add_option("source", file, "Source presentation")->required();
  hom->add_option("target", file2, "Target presentation")->required();
  hom->add_option("--map", map_file, "Map file")->required();
  hom->add_flag("--verify", verify, "Also spot-check multiplicativity");
  hom->callback([&] { run = [&] { return cmd_hom(file, file2, map_file, verify); }; });

  auto* inverse = app.add_subcommand("inverse-pair", "Check that two maps are mutually inverse");
  inverse->add_option("a", file, "First presentation")->required();
  inverse->add_option("b", file2, "Second presentation")->required();
  inverse->add_option("--phi", phi_file, "Map file a -> b")->required();
  inverse->add_option("--psi", psi_file, "Map file b -> a")->required();
  inverse->callback([&] { run = [&] { return cmd_inverse_pair(file, file2, phi_file, psi_file); }; });

  auto* invariants = app.add_subcommand("invariants", "Elementary invariants");
  invariants->add_option("file", file, "Presentation file")->required();
  invariants->callback([&] { run = [&] { return cmd_invariants(file); }; });

  auto* primes = app.add_subcommand("primes", "Zero as a product of primes in a finite ring of scalars");
  auto* zmod_opt = primes->add_option("--zmod", zmod, "Ring Z/n");
  auto* bil_opt = primes->add_option("--bilinear", bilinear, "Bilinear map file; uses its ring of scalars");
  zmod_opt->excludes(bil_opt);
  primes->add_option("--max-elements", max_elements, "Largest ring searched");
  primes->callback([&] {
    if (zmod.empty() && bilinear.empty()) throw CLI::RequiredError("--zmod or --bilinear");
    run = [&] { return cmd_primes(zmod, bilinear, max_elements); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::cout << run().dump(2) << "\n";
    return 0;
  } catch (const Failure& f) {
    std::cout << f.report.dump(2) << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument&) {
    std::cerr << "usage error: bad integer argument\n";
    return 2;
  }
}
