#include "lpa/json_io.hpp"

#include <cctype>

#include "lpa/parse.hpp"

namespace lpa {

std::string path_literal(const Ctx& c, const Path& p) {
  if (p.is_trivial()) return c.q.vertices[static_cast<std::size_t>(p.anchor)];
  std::string out;
  for (int e : p.edges) {
    if (!out.empty()) out += ".";
    out += c.q.edges[static_cast<std::size_t>(e)].name;
  }
  return out;
}

Path path_from_literal(const Ctx& c, const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == '.') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() == 1) {
    int v = c.q.vertex_index(parts[0]);
    if (v >= 0) return Path::trivial(v);
  }
  Path p;
  for (const std::string& name : parts) {
    int e = c.q.edge_index(name);
    if (e < 0) fail("ParseError", "unknown edge '" + name + "' in path literal");
    p = p.edges.empty() && p.anchor < 0 ? Path::edge(e) : p.then(c.q, Path::edge(e));
  }
  return p;
}

std::string pe_literal(const Ctx& c, const PathElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [p, co] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + co.value.to_string(c.tower.var_names()) + ")*" + path_literal(c, p);
  }
  return out;
}

PathElement pe_from_literal(const Ctx& c, const std::string& text) {
  QElement x = parse_expression(c, text, 8);
  PathElement out;
  for (const auto& [mu, r] : x.terms) {
    if (!mu.is_trivial())
      fail("ParseError", "expected a path-algebra literal without ghost edges");
    SeriesTruncation lo = expand(c, r, 64);
    SeriesTruncation hi = expand(c, r, 66);
    if (!pe_equal(lo.pe, hi.pe))
      fail("ParseError", "literal does not denote a polynomial");
    out = pe_add(c, out, lo.pe);
  }
  return out;
}

Json linrep_to_json(const Ctx& c, const LinRep& r) {
  Json j;
  j["dim"] = r.n;
  Json lam = Json::array(), rho = Json::array(), b = Json::array();
  for (int i = 0; i < r.n; ++i) {
    lam.push_back(pe_literal(c, r.lambda[static_cast<std::size_t>(i)]));
    rho.push_back(pe_literal(c, r.rho[static_cast<std::size_t>(i)]));
    Json row = Json::array();
    for (int k = 0; k < r.n; ++k) row.push_back(pe_literal(c, r.b.at(i, k)));
    b.push_back(std::move(row));
  }
  j["lambda"] = std::move(lam);
  j["b"] = std::move(b);
  j["rho"] = std::move(rho);
  return j;
}

LinRep linrep_from_json(const Ctx& c, const Json& j) {
  int n = j.at("dim").get<int>();
  std::vector<PathElement> lam, rho;
  Mat b = Mat::zero(n, n);
  for (int i = 0; i < n; ++i) {
    lam.push_back(pe_from_literal(c, j.at("lambda").at(static_cast<std::size_t>(i))));
    rho.push_back(pe_from_literal(c, j.at("rho").at(static_cast<std::size_t>(i))));
    for (int k = 0; k < n; ++k)
      b.at(i, k) = pe_from_literal(
          c, j.at("b").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)));
  }
  return make_linrep(c, std::move(lam), std::move(b), std::move(rho));
}

Json qelement_to_json(const Ctx& c, const QElement& x) {
  Json j;
  j["schema"] = 1;
  Json terms = Json::array();
  for (const auto& [mu, r] : x.terms) {
    Json t;
    t["ghost"] = path_literal(c, mu);
    t["coefficient"] = linrep_to_json(c, r);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

QElement qelement_from_json(const Ctx& c, const Json& j) {
  if (j.contains("schema") && j.at("schema").get<int>() != 1)
    fail("ParseError", "unsupported schema version");
  QElement x;
  for (const auto& t : j.at("terms")) {
    Path mu = path_from_literal(c, t.at("ghost").get<std::string>());
    LinRep r = linrep_from_json(c, t.at("coefficient"));
    auto it = x.terms.find(mu);
    if (it == x.terms.end())
      x.terms.emplace(mu, std::move(r));
    else
      it->second = rep_add(c, it->second, r);
  }
  return x;
}

} // namespace lpa
