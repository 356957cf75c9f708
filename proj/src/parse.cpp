#include "lpa/parse.hpp"

#include <cctype>
#include <sstream>

namespace lpa {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void perr(int line, const std::string& msg) {
  fail("ParseError", "line " + std::to_string(line) + ": " + msg);
}

} // namespace

GraphSpec parse_graph(const std::string& text) {
  GraphSpec g;
  std::vector<std::vector<int>> partition;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    try {
      if (kw == "vertex") {
        if (toks.size() != 2) perr(lineno, "expected: vertex <id>");
        g.q.add_vertex(toks[1]);
      } else if (kw == "edge") {
        if (toks.size() != 4) perr(lineno, "expected: edge <id> <src> <dst>");
        g.q.add_edge(toks[1], toks[2], toks[3]);
      } else if (kw == "component") {
        if (toks.size() < 3) perr(lineno, "expected: component <class> <vertex>...");
        std::vector<int> cls;
        for (std::size_t i = 2; i < toks.size(); ++i) {
          int v = g.q.vertex_index(toks[i]);
          if (v < 0) perr(lineno, "unknown vertex '" + toks[i] + "'");
          cls.push_back(v);
        }
        partition.push_back(std::move(cls));
        g.opts.class_names.push_back(toks[1]);
      } else if (kw == "order") {
        if (toks.size() != 4 || toks[2] != ">")
          perr(lineno, "expected: order <classA> > <classB>");
        g.opts.order_pairs.emplace_back(toks[1], toks[3]);
      } else if (kw == "free" || kw == "regular") {
        if (toks.size() != 2) perr(lineno, "expected: " + kw + " <class>");
        g.shape_decls.emplace_back(toks[1], kw == "free");
      } else {
        perr(lineno, "unknown declaration '" + kw + "'");
      }
    } catch (const Error& e) {
      if (std::string(e.kind()) == "ParseError") throw;
      perr(lineno, e.what());
    }
  }
  if (!partition.empty()) g.opts.partition = std::move(partition);
  return g;
}

Ctx make_ctx(const GraphSpec& g) { return Ctx::make(g.q, g.opts); }

std::vector<bool> shape_flags(const Ctx& c, const GraphSpec& g) {
  std::vector<bool> is_free(static_cast<std::size_t>(c.poset.num_classes()), false);
  for (const auto& [name, free] : g.shape_decls) {
    int cls = -1;
    for (int i = 0; i < c.poset.num_classes(); ++i)
      if (c.poset.class_names[static_cast<std::size_t>(i)] == name) cls = i;
    if (cls < 0) fail("ParseError", "unknown class '" + name + "' in shape declaration");
    is_free[static_cast<std::size_t>(cls)] = free;
  }
  return is_free;
}

namespace {

struct Token {
  enum Kind { Num, Ident, Op, End } kind = End;
  std::string text;
  long num = 0;
  std::size_t pos = 0;
};

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    Token t;
    t.pos = i;
    if (i >= s.size()) return t;
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Token::Num;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.text = s.substr(i, j - i);
      t.num = std::stol(t.text);
      i = j;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Token::Ident;
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      t.text = s.substr(i, j - i);
      i = j;
      return t;
    }
    t.kind = Token::Op;
    t.text = std::string(1, ch);
    ++i;
    return t;
  }
};

[[noreturn]] void eperr(std::size_t pos, const std::string& msg) {
  fail("ParseError", "column " + std::to_string(pos + 1) + ": " + msg);
}

// A value mid-evaluation: scalar until forced into the algebra.
struct Value {
  bool is_scalar = false;
  FieldScalar s;
  QElement q;
};

struct Parser {
  const Ctx& c;
  int degree;
  Lexer lex;
  Token tok;

  Parser(const Ctx& ctx, const std::string& text, int deg)
      : c(ctx), degree(deg), lex{text} {
    tok = lex.next();
  }

  void advance() { tok = lex.next(); }

  bool is_op(const char* o) const { return tok.kind == Token::Op && tok.text == o; }

  QElement unit() const {
    QElement u;
    for (std::size_t v = 0; v < c.q.vertices.size(); ++v)
      u = q_add(c, u, q_vertex(c, static_cast<int>(v)));
    return u;
  }

  QElement promote(const Value& v) const {
    return v.is_scalar ? q_scale(c, v.s, unit()) : v.q;
  }

  Value mul(const Value& a, const Value& b) const {
    Value out;
    if (a.is_scalar && b.is_scalar) {
      out.is_scalar = true;
      out.s = fs_mul(c.tower, a.s, b.s);
    } else if (a.is_scalar) {
      out.q = q_scale(c, a.s, b.q);
    } else if (b.is_scalar) {
      out.q = q_scale(c, b.s, a.q);
    } else {
      out.q = q_mul(c, a.q, b.q, degree);
    }
    return out;
  }

  Value add(const Value& a, const Value& b, bool subtract) const {
    Value out;
    if (a.is_scalar && b.is_scalar) {
      out.is_scalar = true;
      out.s = subtract ? fs_sub(c.tower, a.s, b.s) : fs_add(c.tower, a.s, b.s);
      return out;
    }
    QElement rb = promote(b);
    out.q = subtract ? q_sub(c, promote(a), rb) : q_add(c, promote(a), rb);
    return out;
  }

  Value parse_expr() {
    Value v = parse_term();
    while (is_op("+") || is_op("-")) {
      bool sub = tok.text == "-";
      advance();
      v = add(v, parse_term(), sub);
    }
    return v;
  }

  Value parse_term() {
    Value v = parse_factor();
    while (is_op("*") || is_op("/")) {
      bool div = tok.text == "/";
      std::size_t at = tok.pos;
      advance();
      Value rhs = parse_factor();
      if (div) {
        if (!rhs.is_scalar) eperr(at, "division requires a scalar divisor");
        Value inv;
        inv.is_scalar = true;
        inv.s = fs_inv(c.tower, rhs.s);
        v = mul(v, inv);
      } else {
        v = mul(v, rhs);
      }
    }
    return v;
  }

  Value parse_factor() {
    bool neg = false;
    while (is_op("-")) {
      neg = !neg;
      advance();
    }
    Value v = parse_chain();
    if (neg) {
      Value m;
      m.is_scalar = true;
      m.s = scalar_int(c.tower, -1);
      v = mul(m, v);
    }
    return v;
  }

  Value parse_chain() {
    Value v = parse_pow();
    while (is_op(".")) {
      advance();
      v = mul(v, parse_pow());
    }
    return v;
  }

  Value parse_pow() {
    Value v = parse_primary();
    while (is_op("^")) {
      advance();
      if (tok.kind != Token::Num || tok.num < 0)
        eperr(tok.pos, "expected nonnegative integer exponent");
      long n = tok.num;
      advance();
      Value acc;
      acc.is_scalar = true;
      acc.s = scalar_int(c.tower, 1);
      for (long k = 0; k < n; ++k) acc = mul(acc, v);
      v = acc;
    }
    return v;
  }

  Value parse_primary() {
    std::size_t at = tok.pos;
    if (tok.kind == Token::Num) {
      Value v;
      v.is_scalar = true;
      v.s = scalar_int(c.tower, tok.num);
      advance();
      return v;
    }
    if (is_op("~")) {
      advance();
      if (tok.kind != Token::Ident) eperr(tok.pos, "expected edge id after '~'");
      int e = c.q.edge_index(tok.text);
      if (e < 0) eperr(tok.pos, "unknown edge '" + tok.text + "'");
      advance();
      Value v;
      v.q = q_ghost(c, e);
      return v;
    }
    if (is_op("(")) {
      advance();
      Value v = parse_expr();
      if (!is_op(")")) eperr(tok.pos, "expected ')'");
      advance();
      return v;
    }
    if (tok.kind == Token::Ident) {
      std::string name = tok.text;
      advance();
      if (name == "inv" && is_op("(")) return parse_inv(at);
      int v = c.q.vertex_index(name);
      if (v >= 0) {
        Value out;
        out.q = q_vertex(c, v);
        return out;
      }
      int e = c.q.edge_index(name);
      if (e >= 0) {
        Value out;
        out.q = q_edge(c, e);
        return out;
      }
      for (int i = 0; i < c.tower.num_vars(); ++i)
        if (c.tower.var_names()[static_cast<std::size_t>(i)] == name) {
          Value out;
          out.is_scalar = true;
          out.s = scalar_var(c.tower, i);
          return out;
        }
      eperr(at, "unknown identifier '" + name + "'");
    }
    eperr(at, "unexpected token" + (tok.text.empty() ? "" : " '" + tok.text + "'"));
  }

  Value parse_inv(std::size_t at) {
    advance(); // '('
    Value arg = parse_expr();
    int n = degree;
    if (is_op(",")) {
      advance();
      if (tok.kind != Token::Ident || tok.text != "N") eperr(tok.pos, "expected N=<int>");
      advance();
      if (!is_op("=")) eperr(tok.pos, "expected '=' after N");
      advance();
      if (tok.kind != Token::Num) eperr(tok.pos, "expected integer degree");
      n = static_cast<int>(tok.num);
      advance();
    }
    if (!is_op(")")) eperr(tok.pos, "expected ')'");
    advance();
    QElement x = promote(arg);
    // The argument must be a polynomial (no ghost part, stabilizing expansion).
    PathElement p;
    int cap = std::max(degree, n) + 8;
    for (const auto& [mu, r] : x.terms) {
      if (!mu.is_trivial())
        fail("NotInvertible", "inv argument has a ghost part");
      SeriesTruncation lo = expand(c, r, cap);
      SeriesTruncation hi = expand(c, r, cap + 2);
      if (!pe_equal(lo.pe, hi.pe))
        fail("NotInvertible", "inv argument is not polynomial");
      p = pe_add(c, p, lo.pe);
    }
    AugValue aug = augment(c, p);
    PathElement einv;
    for (std::size_t v = 0; v < c.q.vertices.size(); ++v) {
      auto it = aug.at.find(static_cast<int>(v));
      if (it == aug.at.end() || it->second.is_zero())
        fail("NotInvertible",
             "augmentation vanishes at vertex '" + c.q.vertices[v] + "'");
      einv = pe_add(c, einv, pe_scale(c, fs_inv(c.tower, it->second),
                                      pe_vertex(c, static_cast<int>(v))));
    }
    PathElement btilde = pe_sub(c, pe_unit(c), pe_mul(c, einv, p));
    Mat b = Mat::zero(1, 1);
    b.at(0, 0) = btilde;
    LinRep inv = make_linrep(c, {pe_unit(c)}, std::move(b), {einv});
    SeriesTruncation s = expand(c, inv, n);
    SeriesTruncation want{pe_unit(c), n};
    if (!st_equal(SeriesTruncation{pe_mul(c, p, s.pe, n), n}, want) ||
        !st_equal(SeriesTruncation{pe_mul(c, s.pe, p, n), n}, want))
      fail("NotInvertible", "inverse check failed");
    (void)at;
    Value out;
    out.q = q_from_rep(c, inv);
    return out;
  }
};

} // namespace

QElement parse_expression(const Ctx& c, const std::string& text, int degree) {
  Parser p(c, text, degree);
  Value v = p.parse_expr();
  if (p.tok.kind != Token::End) eperr(p.tok.pos, "trailing input");
  return q_normalize(c, p.promote(v), degree);
}

MonoidElement parse_monoid(const Ctx& c, const std::string& text) {
  MonoidElement m = mon_zero(c);
  Lexer lex{text};
  Token t = lex.next();
  bool first = true;
  while (t.kind != Token::End) {
    if (!first) {
      if (!(t.kind == Token::Op && t.text == "+"))
        eperr(t.pos, "expected '+' between monoid terms");
      t = lex.next();
    }
    first = false;
    std::uint64_t count = 1;
    if (t.kind == Token::Num) {
      count = static_cast<std::uint64_t>(t.num);
      t = lex.next();
      if (t.kind == Token::Op && t.text == "*") t = lex.next();
    }
    if (t.kind != Token::Ident) eperr(t.pos, "expected vertex id");
    int v = c.q.vertex_index(t.text);
    if (v < 0) eperr(t.pos, "unknown vertex '" + t.text + "'");
    m.mult[static_cast<std::size_t>(v)] += count;
    t = lex.next();
  }
  return m;
}

std::string q_render(const Ctx& c, const QElement& x, int degree) {
  struct Term {
    std::string mono;
    Fraction co;
  };
  std::vector<Term> terms;
  for (const auto& [mu, r] : x.terms) {
    SeriesTruncation s = expand(c, r, degree);
    for (const auto& [p, co] : s.pe.terms()) {
      std::string mono;
      if (!p.is_trivial()) {
        for (int e : p.edges) {
          if (!mono.empty()) mono += ".";
          mono += c.q.edges[static_cast<std::size_t>(e)].name;
        }
      }
      if (!mu.is_trivial()) {
        for (auto it = mu.edges.rbegin(); it != mu.edges.rend(); ++it) {
          if (!mono.empty()) mono += ".";
          mono += "~" + c.q.edges[static_cast<std::size_t>(*it)].name;
        }
      }
      if (mono.empty()) mono = c.q.vertices[static_cast<std::size_t>(p.anchor)];
      terms.push_back({mono, co.value});
    }
  }
  if (terms.empty()) return "0";
  int nv = c.tower.num_vars();
  Fraction one = Fraction::from_int(nv, 1);
  Fraction minus_one = Fraction::from_int(nv, -1);
  std::string out;
  for (const auto& t : terms) {
    bool negated = t.co == minus_one;
    std::string body;
    if (t.co == one || negated)
      body = t.mono;
    else
      body = "(" + t.co.to_string(c.tower.var_names()) + ")*" + t.mono;
    if (out.empty())
      out = (negated ? "-" : "") + body;
    else
      out += (negated ? " - " : " + ") + body;
  }
  return out;
}

} // namespace lpa
