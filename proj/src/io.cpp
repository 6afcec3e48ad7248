#include "nilpc/io.hpp"

#include <fstream>
#include <sstream>

namespace nilpc {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t parse_index(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad generator index '" + s + "' in " + context);
  }
  if (pos != s.size() || v == 0) throw ParseError("bad generator index '" + s + "' in " + context);
  return v;
}

std::size_t index_from_json(const Json& j, std::size_t rank, const std::string& context) {
  if (!j.is_number_integer()) throw ParseError("generator index must be an integer in " + context);
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > rank)
    throw PresentationError("generator index " + std::to_string(v) + " out of range in " + context);
  return static_cast<std::size_t>(v - 1);
}

Word word_from_json(const Json& j, std::size_t rank, const std::string& context) {
  if (!j.is_array()) throw ParseError("tail of " + context + " must be an array of [index, exponent] pairs");
  Word w;
  for (const Json& term : j) {
    if (!term.is_array() || term.size() != 2)
      throw ParseError("tail of " + context + " must be an array of [index, exponent] pairs");
    w.emplace_back(index_from_json(term[0], rank, context), int_from_json(term[1]));
  }
  return w;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer string '" + j.get<std::string>() + "'");
    return x;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Json word_to_json(const Element& x) {
  Json out = Json::array();
  for (const auto& [k, e] : sparse_word(x)) out.push_back(Json::array({k + 1, int_to_json(e)}));
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(what, line, column);
  }
}

Json load_json(const std::filesystem::path& path) { return parse_json(read_file(path)); }

PcPresentation presentation_from_json(const Json& j, const LoadOptions& options) {
  const Json& name = field(j, "name");
  if (!name.is_string()) throw ParseError("'name' must be a string");
  const Json& rank_j = field(j, "rank");
  if (!rank_j.is_number_unsigned()) throw ParseError("'rank' must be a non-negative integer");
  const auto rank = rank_j.get<std::size_t>();
  const Json& periods_j = field(j, "periods");
  if (!periods_j.is_array()) throw ParseError("'periods' must be an array");
  if (periods_j.size() != rank) throw PresentationError("'periods' has " + std::to_string(periods_j.size()) +
                                                        " entries but rank is " + std::to_string(rank));
  std::vector<Period> periods;
  for (std::size_t i = 0; i < rank; ++i) {
    const Int e = int_from_json(periods_j[i]);
    if (e < 0 || e == 1)
      throw PresentationError("period of u" + std::to_string(i + 1) + " must be 0 (infinite) or at least 2");
    periods.push_back(Period::from_int(e));
  }

  PowerRelations powers;
  if (const auto it = j.find("powers"); it != j.end()) {
    if (!it->is_object()) throw ParseError("'powers' must be an object");
    for (const auto& [key, tail] : it->items()) {
      const std::size_t i = parse_index(key, "powers");
      if (i > rank) throw PresentationError("power relation for unknown generator u" + key);
      powers[i - 1] = word_from_json(tail, rank, "power u" + key);
    }
  }
  CommutatorRelations comms;
  if (const auto it = j.find("commutators"); it != j.end()) {
    if (!it->is_object()) throw ParseError("'commutators' must be an object");
    for (const auto& [key, tail] : it->items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw ParseError("commutator key '" + key + "' must have the form \"j,i\"");
      const std::size_t jj = parse_index(key.substr(0, comma), "commutators");
      const std::size_t ii = parse_index(key.substr(comma + 1), "commutators");
      if (ii >= jj) throw PresentationError("commutator key '" + key + "' needs i < j");
      if (jj > rank) throw PresentationError("commutator key '" + key + "' names an unknown generator");
      comms[{jj - 1, ii - 1}] = word_from_json(tail, rank, "commutator [u" + std::to_string(jj) + ",u" +
                                                              std::to_string(ii) + "]");
    }
  }
  PcPresentation g(name.get<std::string>(), std::move(periods), powers, comms);
  if (options.check_consistency) g.require_consistent();
  return g;
}

Json presentation_to_json(const PcPresentation& g) {
  Json j;
  j["name"] = g.name();
  j["rank"] = g.rank();
  Json periods = Json::array();
  for (const Period& p : g.periods()) periods.push_back(int_to_json(p.value()));
  j["periods"] = periods;
  Json powers = Json::object();
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (g.period(i).is_finite() && !g.power_tail(i).is_identity())
      powers[std::to_string(i + 1)] = word_to_json(g.power_tail(i));
  j["powers"] = powers;
  Json comms = Json::object();
  for (std::size_t jj = 0; jj < g.rank(); ++jj)
    for (std::size_t ii = 0; ii < jj; ++ii)
      if (!g.commutator_tail(jj, ii).is_identity())
        comms[std::to_string(jj + 1) + "," + std::to_string(ii + 1)] = word_to_json(g.commutator_tail(jj, ii));
  j["commutators"] = comms;
  return j;
}

PcPresentation parse_presentation(const std::string& text, const LoadOptions& options) {
  return presentation_from_json(parse_json(text), options);
}

std::string emit_presentation(const PcPresentation& g) { return presentation_to_json(g).dump(2) + "\n"; }

PcPresentation load_presentation(const std::filesystem::path& path, const LoadOptions& options) {
  return parse_presentation(read_file(path), options);
}

std::vector<Element> images_from_json(const Json& j, const PcPresentation& target) {
  if (!j.is_array()) throw ParseError("map file must be an array of sparse words");
  std::vector<Element> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(target.normal_form(word_from_json(j[i], target.rank(), "image of u" + std::to_string(i + 1))));
  return out;
}

Json images_to_json(const std::vector<Element>& images) {
  Json out = Json::array();
  for (const Element& x : images) out.push_back(word_to_json(x));
  return out;
}

BilinearMap bilinear_from_json(const Json& j) {
  auto module = [&](const char* key) {
    const Json& p = field(j, key);
    if (!p.is_array()) throw ParseError(std::string("'") + key + "' must be an array of periods");
    FgAbelian m{{}, key};
    for (const Json& x : p) {
      const Int e = int_from_json(x);
      if (e < 0 || e == 1) throw ParseError(std::string("periods in '") + key + "' must be 0 or at least 2");
      m.periods.push_back(e);
    }
    return m;
  };
  FgAbelian a = module("left"), b = module("right"), c = module("values");
  const Json& t = field(j, "table");
  if (!t.is_array() || t.size() != a.size()) throw ParseError("'table' must have one row per left generator");
  std::vector<std::vector<IntVector>> table;
  for (const Json& row : t) {
    if (!row.is_array() || row.size() != b.size()) throw ParseError("each table row needs one entry per right generator");
    std::vector<IntVector> r;
    for (const Json& v : row) {
      if (!v.is_array() || v.size() != c.size()) throw ParseError("each table entry needs one coordinate per value generator");
      IntVector x;
      for (const Json& k : v) x.push_back(int_from_json(k));
      r.push_back(std::move(x));
    }
    table.push_back(std::move(r));
  }
  return BilinearMap(std::move(a), std::move(b), std::move(c), std::move(table));
}

}  // namespace nilpc
