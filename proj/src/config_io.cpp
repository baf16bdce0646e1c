#include "sclkit/config_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sclkit {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct TomlParser {
  const std::string& text;
  size_t pos = 0;

  void skip_ws_inline() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  Json parse_value() {
    skip_ws_inline();
    if (pos >= text.size()) throw std::invalid_argument("toml: expected value");
    char c = text[pos];
    if (c == '[') {
      ++pos;
      Json arr = Json::array();
      while (true) {
        skip_ws_inline();
        while (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) {
          ++pos;
          skip_ws_inline();
        }
        if (pos < text.size() && text[pos] == ']') {
          ++pos;
          return arr;
        }
        arr.push_back(parse_value());
        skip_ws_inline();
        while (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) ++pos;
        skip_ws_inline();
        if (pos < text.size() && text[pos] == ',') ++pos;
      }
    }
    if (c == '"') {
      ++pos;
      std::string s;
      while (pos < text.size() && text[pos] != '"') s += text[pos++];
      if (pos >= text.size()) throw std::invalid_argument("toml: unterminated string");
      ++pos;
      return Json(s);
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      if (c == '-') ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      return Json(std::stol(text.substr(start, pos - start)));
    }
    if (text.compare(pos, 4, "true") == 0) {
      pos += 4;
      return Json(true);
    }
    if (text.compare(pos, 5, "false") == 0) {
      pos += 5;
      return Json(false);
    }
    throw std::invalid_argument("toml: unsupported value");
  }
};

}  // namespace

Json toml_subset_to_json(const std::string& text) {
  Json root = Json::object();
  Json* table = &root;
  std::istringstream lines(text);
  std::string line;
  std::string pending;
  size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    // strip comments outside strings
    bool instr = false;
    std::string clean;
    for (char c : line) {
      if (c == '"') instr = !instr;
      if (c == '#' && !instr) break;
      clean += c;
    }
    // trim
    size_t b = clean.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = clean.find_last_not_of(" \t\r");
    clean = clean.substr(b, e - b + 1);
    if (clean.empty()) continue;
    if (clean.front() == '[' && clean.back() == ']' && clean.find('=') == std::string::npos) {
      std::string name = clean.substr(1, clean.size() - 2);
      table = &root;
      size_t start = 0;
      while (true) {
        size_t dot = name.find('.', start);
        std::string part = name.substr(start, dot == std::string::npos ? dot : dot - start);
        table = &((*table)[part]);
        if (dot == std::string::npos) break;
        start = dot + 1;
      }
      if (table->is_null()) *table = Json::object();
      continue;
    }
    size_t eq = clean.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("toml: line " + std::to_string(lineno) + ": expected key = value");
    std::string key = clean.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = clean.substr(eq + 1);
    // multi-line arrays: keep reading until brackets balance
    auto balance = [](const std::string& s) {
      int depth = 0;
      bool instr2 = false;
      for (char c : s) {
        if (c == '"') instr2 = !instr2;
        if (instr2) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
      }
      return depth;
    };
    while (balance(value) > 0) {
      std::string more;
      if (!std::getline(lines, more)) throw std::invalid_argument("toml: unterminated array");
      value += "\n" + more;
    }
    TomlParser p{value, 0};
    (*table)[key] = p.parse_value();
  }
  return root;
}

GroupPair pair_from_json(const Json& j) {
  if (!j.contains("rank")) throw std::invalid_argument("pair config: missing rank");
  Alphabet alphabet(j.at("rank").get<int>());
  QuotientSpec spec;
  if (j.contains("quotient")) {
    const Json& q = j.at("quotient");
    std::string kind = q.at("kind").get<std::string>();
    if (kind == "trivial") {
      spec = QuotientSpec::trivial();
    } else if (kind == "free_abelian" || kind == "free-abelian") {
      std::vector<std::string> lifts;
      if (j.contains("section")) lifts = j.at("section").at("lifts").get<std::vector<std::string>>();
      spec = QuotientSpec::free_abelian(q.at("images").get<std::vector<std::vector<long>>>(),
                                        std::move(lifts));
    } else if (kind == "finite") {
      if (q.contains("table")) {
        spec = QuotientSpec::finite_table(q.at("table").get<std::vector<std::vector<int>>>(),
                                          q.at("images").get<std::vector<int>>());
      } else {
        spec = QuotientSpec::finite_perm(q.at("images").get<std::vector<std::vector<int>>>());
      }
    } else {
      throw std::invalid_argument("pair config: unknown quotient kind " + kind);
    }
  }
  GroupPair pair(alphabet, spec);
  if (j.contains("reps")) {
    std::vector<Word> reps;
    for (const auto& r : j.at("reps")) reps.push_back(parse_word(alphabet, r.get<std::string>()));
    pair.override_reps(std::move(reps));
  }
  return pair;
}

GroupPair load_pair(const std::string& path) {
  if (ends_with(path, ".toml")) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return pair_from_json(toml_subset_to_json(ss.str()));
  }
  return pair_from_json(read_json_file(path));
}

Chain1 chain_from_json(const Json& j, const Alphabet& alphabet) {
  if (!j.is_array()) throw std::invalid_argument("chain file: expected a list of [coeff, word]");
  Chain1 c;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("chain file: entries are [coeff, word]");
    Rational coeff = entry[0].is_string() ? parse_rational(entry[0].get<std::string>())
                                          : Rational(entry[0].get<long>());
    c.add(coeff, parse_word(alphabet, entry[1].get<std::string>()));
  }
  return c;
}

Chain1 load_chain(const std::string& path, const Alphabet& alphabet) {
  Json j = read_json_file(path);
  if (!j.is_array() || j.empty()) throw std::invalid_argument("empty chain file: " + path);
  return chain_from_json(j, alphabet);
}

Json chain_to_json(const Alphabet& alphabet, const Chain1& c) {
  Json j = Json::array();
  for (const auto& [w, q] : c.terms()) j.push_back({rational_str(q), format_word(alphabet, w)});
  return j;
}

LabelledSurface surface_from_json(const Json& j, const Alphabet& alphabet) {
  LabelledSurface s;
  s.num_vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("surface file: edges are [tail, head, label]");
    s.edges.push_back({e[0].get<int>(), e[1].get<int>(), parse_word(alphabet, e[2].get<std::string>())});
  }
  for (const auto& t : j.at("triangles")) {
    if (!t.is_array() || t.size() != 3)
      throw std::invalid_argument("surface file: triangles are [d0, d1, d2]");
    s.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  if (j.contains("degree")) s.degree = j.at("degree").get<long>();
  if (j.contains("chain"))
    for (const auto& w : j.at("chain"))
      s.attached_chain.push_back(parse_word(alphabet, w.get<std::string>()));
  return s;
}

LabelledSurface load_surface(const std::string& path, const Alphabet& alphabet) {
  return surface_from_json(read_json_file(path), alphabet);
}

Json surface_to_json(const Alphabet& alphabet, const LabelledSurface& s) {
  Json j;
  j["vertices"] = s.num_vertices;
  Json edges = Json::array();
  for (const SurfaceEdge& e : s.edges)
    edges.push_back({e.tail, e.head, format_word(alphabet, e.label)});
  j["edges"] = edges;
  Json triangles = Json::array();
  for (const SurfaceTriangle& t : s.triangles) triangles.push_back({t.d0, t.d1, t.d2});
  j["triangles"] = triangles;
  if (s.degree) j["degree"] = *s.degree;
  if (!s.attached_chain.empty()) {
    Json chain = Json::array();
    for (const Word& w : s.attached_chain) chain.push_back(format_word(alphabet, w));
    j["chain"] = chain;
  }
  return j;
}

CircleLift load_lift(const std::string& path) {
  Json j = read_json_file(path);
  std::vector<std::pair<Rational, Rational>> bp;
  for (const auto& p : j.at("breakpoints")) {
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument("lift file: breakpoints are [x, y] rational strings");
    auto get = [](const Json& v) {
      return v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
    };
    bp.push_back({get(p[0]), get(p[1])});
  }
  return CircleLift(std::move(bp));
}

Json lp_certificate_to_json(const Alphabet& alphabet, const FillProblem& problem,
                            const LpSolution& solution) {
  Json j;
  j["pair"] = Json::object();
  j["pair"]["rank"] = problem.pair.alphabet().rank();
  switch (problem.pair.kind()) {
    case QuotientSpec::Kind::Trivial:
      j["pair"]["quotient"] = {{"kind", "trivial"}};
      break;
    case QuotientSpec::Kind::FreeAbelian:
      j["pair"]["quotient"] = {{"kind", "free_abelian"},
                               {"images", problem.pair.spec().abelian_images}};
      break;
    case QuotientSpec::Kind::Finite:
      if (!problem.pair.spec().table.empty()) {
        j["pair"]["quotient"] = {{"kind", "finite"},
                                 {"table", problem.pair.spec().table},
                                 {"images", problem.pair.spec().table_images}};
      } else {
        j["pair"]["quotient"] = {{"kind", "finite"}, {"images", problem.pair.spec().perm_images}};
      }
      break;
  }
  j["target"] = chain_to_json(alphabet, problem.target);
  Json support = Json::array();
  for (const Pair2& p : problem.support)
    support.push_back({format_word(alphabet, p.first), format_word(alphabet, p.second)});
  j["support"] = support;
  j["status"] = solution.status == LpStatus::Optimal ? "optimal" : "infeasible";
  if (solution.status == LpStatus::Optimal) {
    j["value"] = rational_str(solution.value);
    Json primal = Json::array();
    for (const auto& [p, q] : solution.primal.terms())
      primal.push_back(
          {rational_str(q), format_word(alphabet, p.first), format_word(alphabet, p.second)});
    j["primal"] = primal;
    Json dual = Json::object();
    for (const auto& [w, v] : solution.dual) dual[format_word(alphabet, w)] = rational_str(v);
    j["dual"] = dual;
  }
  return j;
}

std::pair<FillProblem, LpSolution> lp_certificate_from_json(const Json& j) {
  GroupPair pair = pair_from_json(j.at("pair"));
  Alphabet alphabet = pair.alphabet();
  Chain1 target = chain_from_json(j.at("target"), alphabet);
  std::vector<Pair2> support;
  for (const auto& p : j.at("support"))
    support.push_back(
        {parse_word(alphabet, p[0].get<std::string>()), parse_word(alphabet, p[1].get<std::string>())});
  FillProblem problem(pair, target, support);
  LpSolution sol;
  if (j.at("status").get<std::string>() == "optimal") {
    sol.status = LpStatus::Optimal;
    sol.value = parse_rational(j.at("value").get<std::string>());
    for (const auto& p : j.at("primal"))
      sol.primal.add(parse_rational(p[0].get<std::string>()),
                     parse_word(alphabet, p[1].get<std::string>()),
                     parse_word(alphabet, p[2].get<std::string>()));
    for (const auto& [k, v] : j.at("dual").items())
      sol.dual[parse_word(alphabet, k)] = parse_rational(v.get<std::string>());
  }
  return {problem, sol};
}

}  // namespace sclkit
