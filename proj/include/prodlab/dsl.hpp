#ifndef PRODLAB_DSL_HPP
#define PRODLAB_DSL_HPP

#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "identity.hpp"
#include "product.hpp"
#include "rational.hpp"

namespace prodlab {

/// Byte range [start, end) with the 1-based line and column of start.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class ParseErrorKind { Syntax, UnknownBuiltin, UnbalancedResidues, BadSchedule };

inline const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Syntax: return "Syntax";
    case ParseErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ParseErrorKind::UnbalancedResidues: return "UnbalancedResidues";
    case ParseErrorKind::BadSchedule: return "BadSchedule";
  }
  return "?";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
      : std::runtime_error(message), kind_(kind), span_(span) {}
  ParseErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

  /// "line:col: Kind: message"
  std::string diagnostic() const {
    return std::to_string(span_.line) + ":" + std::to_string(span_.column) + ": " + to_string(kind_) + ": " + what();
  }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
};

using Spec = std::variant<WallisProduct, CatalanProduct, IdentityClaim>;

namespace detail {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { lex(); }

  Spec parse_spec() {
    const Token& t = peek();
    Spec out;
    if (t.kind == Token::Kind::Ident && t.text == "wallis") out = parse_wallis();
    else if (t.kind == Token::Kind::Ident && t.text == "blocks") out = parse_blocks();
    else if (t.kind == Token::Kind::Ident && t.text == "claim") out = parse_claim();
    else if (t.kind == Token::Kind::Ident && is_builtin_name(t.text)) out = from_product(parse_builtin().resolve());
    else fail(t, "expected 'wallis', 'blocks', 'claim' or a builtin, found " + describe(t));
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected " + describe(peek()) + " after the end of the spec");
    return out;
  }

 private:
  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  // -- lexing ---------------------------------------------------------------

  void lex() {
    std::size_t i = 0;
    const std::size_t n = text_.size();
    while (i < n) {
      const unsigned char c = static_cast<unsigned char>(text_[i]);
      if (std::isspace(c)) {
        ++i;
      } else if (c == '#') {
        while (i < n && text_[i] != '\n') ++i;
      } else if (std::isalpha(c) || c == '_') {
        const std::size_t s = i;
        while (i < n && (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_')) ++i;
        tokens_.push_back({Token::Kind::Ident, std::string(text_.substr(s, i - s)), s, i});
      } else if (std::isdigit(c)) {
        const std::size_t s = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        tokens_.push_back({Token::Kind::Int, std::string(text_.substr(s, i - s)), s, i});
      } else if (std::string_view("{}[]();,=/*^-").find(static_cast<char>(c)) != std::string_view::npos) {
        tokens_.push_back({Token::Kind::Punct, std::string(1, static_cast<char>(c)), i, i + 1});
        ++i;
      } else {
        throw ParseError(ParseErrorKind::Syntax, span(i, i + 1),
                         "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
      }
    }
    const std::size_t s = n > 0 ? n - 1 : 0;
    tokens_.push_back({Token::Kind::End, "", s, n});
  }

  SourceSpan span(std::size_t start, std::size_t end) const {
    SourceSpan sp{start, end, 1, 1};
    for (std::size_t i = 0; i < start && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++sp.line;
        sp.column = 1;
      } else {
        ++sp.column;
      }
    }
    return sp;
  }

  // -- token helpers ----------------------------------------------------------

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'";
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg, ParseErrorKind k = ParseErrorKind::Syntax) const {
    throw ParseError(k, span(t.start, t.end), msg);
  }
  [[noreturn]] void fail(std::size_t start, std::size_t end, const std::string& msg, ParseErrorKind k) const {
    throw ParseError(k, span(start, end), msg);
  }

  bool at_punct(char c) const { return peek().kind == Token::Kind::Punct && peek().text[0] == c; }

  const Token& expect_punct(char c) {
    if (!at_punct(c)) fail(peek(), std::string("expected '") + c + "', found " + describe(peek()));
    return next();
  }

  const Token& expect_ident(const char* word) {
    if (peek().kind != Token::Kind::Ident || peek().text != word)
      fail(peek(), std::string("expected '") + word + "', found " + describe(peek()));
    return next();
  }

  // word '='
  void expect_key(const char* word) {
    expect_ident(word);
    expect_punct('=');
  }

  const Token& expect_int_token() {
    if (peek().kind != Token::Kind::Int) fail(peek(), "expected an integer, found " + describe(peek()));
    return next();
  }

  std::int64_t int64_of(const Token& t) const {
    const mpz_class z(t.text);
    if (!z.fits_slong_p() || z > std::numeric_limits<std::int64_t>::max())
      fail(t, "integer " + t.text + " is too large");
    return z.get_si();
  }

  std::int64_t expect_int() { return int64_of(expect_int_token()); }

  std::int64_t expect_positive_int(const char* what) {
    const Token& t = expect_int_token();
    const auto v = int64_of(t);
    if (v < 1) fail(t, std::string(what) + " must be positive, found '" + t.text + "'");
    return v;
  }

  // FRAC = INT [ "/" INT ]; negative only where allowed
  Rational expect_frac(bool allow_sign, std::size_t* start = nullptr) {
    const std::size_t s = peek().start;
    if (start) *start = s;
    bool negative = false;
    if (allow_sign && at_punct('-')) {
      next();
      negative = true;
    }
    const Token& num = expect_int_token();
    mpz_class n(num.text), d(1);
    if (at_punct('/')) {
      next();
      const Token& den = expect_int_token();
      d = mpz_class(den.text);
      if (d == 0) fail(den, "zero denominator in '" + num.text + "/" + den.text + "'");
    }
    Rational q(n, d);
    return negative ? -q : q;
  }

  Rational expect_positive_frac(const char* what) {
    std::size_t s = 0;
    const Rational q = expect_frac(false, &s);
    if (q.sign() <= 0) fail(s, tokens_[pos_ - 1].end, std::string(what) + " must be positive", ParseErrorKind::Syntax);
    return q;
  }

  // -- grammar ----------------------------------------------------------------

  static bool is_builtin_name(const std::string& s) {
    return s == "paper" || s == "wallis_general" || s == "pippenger_general";
  }

  static Spec from_product(const Product& p) {
    if (const auto* w = std::get_if<WallisProduct>(&p)) return *w;
    return std::get<CatalanProduct>(p);
  }

  std::vector<Residue> parse_intlist(std::size_t& start, std::size_t& end) {
    start = peek().start;
    expect_punct('[');
    std::vector<Residue> out;
    out.push_back(expect_positive_int("residue"));
    while (at_punct(',')) {
      next();
      out.push_back(expect_positive_int("residue"));
    }
    end = expect_punct(']').end;
    return out;
  }

  WallisProduct parse_wallis() {
    const Token& kw = expect_ident("wallis");
    expect_punct('{');
    WallisProduct w;
    expect_key("period");
    w.period = expect_positive_int("period");
    expect_punct(';');
    expect_key("num");
    std::size_t ns = 0, ne = 0, ds = 0, de = 0;
    w.num = parse_intlist(ns, ne);
    expect_punct(';');
    expect_key("den");
    w.den = parse_intlist(ds, de);
    const Token& close = expect_punct('}');
    (void)kw;
    (void)close;
    if (w.num.size() != w.den.size())
      fail(ds, de,
           "den has " + std::to_string(w.den.size()) + " residues but num has " + std::to_string(w.num.size()),
           ParseErrorKind::UnbalancedResidues);
    mpz_class su = 0, sv = 0;
    for (Residue r : w.num) su += static_cast<long>(r);
    for (Residue r : w.den) sv += static_cast<long>(r);
    if (su != sv)
      fail(ds, de, "residue sums differ: num sums to " + su.get_str() + ", den sums to " + sv.get_str(),
           ParseErrorKind::UnbalancedResidues);
    return w;
  }

  std::vector<PrefixFactor> parse_fraclist() {
    expect_punct('[');
    std::vector<PrefixFactor> out;
    if (at_punct(']')) {
      next();
      return out;
    }
    for (;;) {
      expect_punct('(');
      PrefixFactor f;
      f.factor = expect_positive_frac("prefix factor");
      expect_punct(',');
      f.exponent = expect_positive_frac("prefix exponent");
      expect_punct(')');
      out.push_back(f);
      if (!at_punct(',')) break;
      next();
    }
    expect_punct(']');
    return out;
  }

  FactorStream parse_stream() {
    if (peek().kind == Token::Kind::Ident && peek().text == "const") {
      next();
      expect_punct('(');
      ConstStream c{expect_positive_frac("constant factor")};
      expect_punct(')');
      return c;
    }
    if (peek().kind != Token::Kind::Ident || peek().text != "pairs")
      fail(peek(), "expected 'pairs' or 'const', found " + describe(peek()));
    next();
    expect_punct('(');
    PairStream s;
    expect_key("period");
    s.period = expect_positive_int("stream period");
    expect_punct(',');
    expect_punct('[');
    for (;;) {
      expect_punct('(');
      const Residue u = expect_positive_int("stream residue");
      expect_punct(',');
      const Residue v = expect_positive_int("stream residue");
      expect_punct(')');
      s.pairs.emplace_back(u, v);
      if (!at_punct(',')) break;
      next();
    }
    expect_punct(']');
    if (at_punct(',')) {
      next();
      expect_key("offset");
      const Token& t = expect_int_token();
      const auto v = int64_of(t);
      s.offset = static_cast<std::uint64_t>(v);
    }
    expect_punct(')');
    return s;
  }

  BlockSchedule parse_schedule() {
    const Token& kw = peek();
    if (kw.kind != Token::Kind::Ident) fail(kw, "expected a schedule, found " + describe(kw));
    const std::size_t start = kw.start;
    if (kw.text == "pippenger") {
      next();
      expect_punct('(');
      const Token& t = expect_int_token();
      const auto K = int64_of(t);
      const std::size_t end = expect_punct(')').end;
      if (K < 2) fail(start, end, "pippenger base must be at least 2, found '" + t.text + "'", ParseErrorKind::BadSchedule);
      return PippengerSchedule{static_cast<long>(K)};
    }
    if (kw.text == "geometric") {
      next();
      expect_punct('(');
      const Rational r = expect_frac(false);
      const std::size_t end = expect_punct(')').end;
      if (r.sign() <= 0 || r >= Rational(1))
        fail(start, end, "geometric ratio " + r.to_string() + " is not in (0, 1)", ParseErrorKind::BadSchedule);
      return GeometricSchedule{r};
    }
    if (kw.text == "explicit") {
      next();
      expect_punct('(');
      ExplicitSchedule e;
      while (at_punct('(')) {
        const std::size_t bs = next().start;
        const Token& size_tok = expect_int_token();
        const auto size = int64_of(size_tok);
        expect_punct(',');
        const Rational ex = expect_frac(false);
        const std::size_t be = expect_punct(')').end;
        if (size < 1) fail(bs, be, "block size must be positive, found '" + size_tok.text + "'", ParseErrorKind::BadSchedule);
        if (ex.sign() <= 0) fail(bs, be, "block exponent must be positive", ParseErrorKind::BadSchedule);
        e.blocks.push_back({static_cast<std::uint64_t>(size), ex});
        if (at_punct(',')) next();
      }
      const std::size_t end = expect_punct(')').end;
      if (e.blocks.empty()) fail(start, end, "explicit schedule has no blocks", ParseErrorKind::BadSchedule);
      return e;
    }
    fail(kw, "expected 'pippenger', 'geometric' or 'explicit', found " + describe(kw), ParseErrorKind::BadSchedule);
  }

  CatalanProduct parse_blocks() {
    expect_ident("blocks");
    expect_punct('{');
    CatalanProduct c;
    expect_key("prefix");
    c.prefix = parse_fraclist();
    expect_punct(';');
    expect_key("stream");
    c.stream = parse_stream();
    expect_punct(';');
    expect_key("schedule");
    c.schedule = parse_schedule();
    expect_punct('}');
    return c;
  }

  ProductRef parse_builtin() {
    const Token& kw = next();
    const std::size_t start = kw.start;
    const std::string name = kw.text;
    expect_punct('(');
    const Token& t = expect_int_token();
    const std::size_t end = expect_punct(')').end;
    const mpz_class z(t.text);
    ProductRef ref;
    if (name == "paper") {
      if (!z.fits_slong_p() || !is_builtin_id(z.get_si()))
        fail(start, end, "no builtin product '" + t.text + "'", ParseErrorKind::UnknownBuiltin);
      ref.kind = ProductRef::Kind::Paper;
    } else {
      if (!z.fits_slong_p() || z < 2 || z > 1'000'000)
        fail(start, end, name + " needs 2 <= K <= 1000000, found '" + t.text + "'", ParseErrorKind::UnknownBuiltin);
      ref.kind = name == "wallis_general" ? ProductRef::Kind::WallisGeneral : ProductRef::Kind::PippengerGeneral;
    }
    ref.arg = z.get_si();
    return ref;
  }

  ClaimSide parse_side() {
    ClaimSide side;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Ident && t.text == "const") {
        next();
        expect_punct('(');
        side.constant *= expect_positive_frac("constant");
        expect_punct(')');
      } else if (t.kind == Token::Kind::Ident && is_builtin_name(t.text)) {
        ClaimTerm term{parse_builtin(), Rational(1)};
        if (at_punct('^')) {
          next();
          std::size_t s = 0;
          const bool paren = at_punct('(');
          if (paren) next();
          term.exponent = expect_frac(true, &s);
          if (paren) expect_punct(')');
          if (term.exponent.is_zero()) fail(s, tokens_[pos_ - 1].end, "exponent must be nonzero", ParseErrorKind::Syntax);
        }
        side.terms.push_back(term);
      } else {
        fail(t, "expected 'const' or a builtin product, found " + describe(t));
      }
      if (!at_punct('*')) break;
      next();
    }
    return side;
  }

  IdentityClaim parse_claim() {
    expect_ident("claim");
    expect_punct('{');
    IdentityClaim c;
    expect_key("lhs");
    c.lhs = parse_side();
    expect_punct(';');
    expect_key("rhs");
    c.rhs = parse_side();
    if (at_punct(';')) next();
    expect_punct('}');
    return c;
  }
};

inline std::string join_residues(const std::vector<Residue>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace detail

/// Parses one spec. Throws ParseError.
inline Spec parse(std::string_view text) { return detail::Parser(text).parse_spec(); }

inline std::string render(const WallisProduct& w) {
  return "wallis{period=" + std::to_string(w.period) + "; num=" + detail::join_residues(w.num) +
         "; den=" + detail::join_residues(w.den) + "}";
}

inline std::string render(const FactorStream& s) {
  if (const auto* c = std::get_if<ConstStream>(&s)) return "const(" + c->value.to_string() + ")";
  const auto& p = std::get<PairStream>(s);
  std::string out = "pairs(period=" + std::to_string(p.period) + ", [";
  for (std::size_t i = 0; i < p.pairs.size(); ++i)
    out += (i ? "," : "") + ("(" + std::to_string(p.pairs[i].first) + "," + std::to_string(p.pairs[i].second) + ")");
  out += "]";
  if (p.offset) out += ", offset=" + std::to_string(p.offset);
  return out + ")";
}

inline std::string render(const BlockSchedule& s) {
  if (const auto* p = std::get_if<PippengerSchedule>(&s)) return "pippenger(" + std::to_string(p->base) + ")";
  if (const auto* g = std::get_if<GeometricSchedule>(&s)) return "geometric(" + g->ratio.to_string() + ")";
  std::string out = "explicit(";
  for (const auto& b : std::get<ExplicitSchedule>(s).blocks)
    out += "(" + std::to_string(b.size) + "," + b.exponent.to_string() + ")";
  return out + ")";
}

inline std::string render(const CatalanProduct& c) {
  std::string out = "blocks{prefix=[";
  for (std::size_t i = 0; i < c.prefix.size(); ++i)
    out += (i ? "," : "") + ("(" + c.prefix[i].factor.to_string() + "," + c.prefix[i].exponent.to_string() + ")");
  return out + "]; stream=" + render(c.stream) + "; schedule=" + render(c.schedule) + "}";
}

inline std::string render(const ClaimSide& side) {
  std::string out;
  auto add = [&](const std::string& t) { out += (out.empty() ? "" : "*") + t; };
  if (side.constant != Rational(1) || side.terms.empty()) add("const(" + side.constant.to_string() + ")");
  for (const auto& t : side.terms) {
    std::string s = t.ref.render();
    if (t.exponent != Rational(1)) s += "^" + t.exponent.to_string();
    add(s);
  }
  return out;
}

inline std::string render(const IdentityClaim& c) {
  return "claim{lhs=" + render(c.lhs) + "; rhs=" + render(c.rhs) + "}";
}

inline std::string render(const Product& p) {
  return std::visit([](const auto& x) { return render(x); }, p);
}

inline std::string render(const Spec& s) {
  return std::visit([](const auto& x) { return render(x); }, s);
}

}  // namespace prodlab

#endif  // PRODLAB_DSL_HPP
