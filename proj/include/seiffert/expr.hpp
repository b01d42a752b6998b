#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "seiffert/algebra.hpp"
#include "seiffert/analysis.hpp"
#include "seiffert/catalog.hpp"
#include "seiffert/core.hpp"
#include "seiffert/errors.hpp"
#include "seiffert/invariant.hpp"
#include "seiffert/series.hpp"
#include "seiffert/transform.hpp"

namespace seiffert {

/// Syntax error with the byte offset and the set of tokens that would have
/// been accepted there.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
      : PreconditionError(what), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Well-formed expression that does not denote a mean, located at the
/// offending node.
class ElaborationError : public PreconditionError {
 public:
  ElaborationError(const std::string& what, std::size_t offset)
      : PreconditionError(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Mean-expression syntax tree.
///
///   ident      A, G, gini's name, ...        text
///   number     0.5                           value
///   call       f(args)                       text, children
///   lift       S[fn]                         children[0] is a function node
///   function   sin, Si_2, log1p_r1           text
///   poly       poly(a1,a3)                   children: two numbers
///   transform  I^n(fn)                       value = n, children[0]
///   series     series(kind,n,rule)           children: ident, number, ident
struct MeanExpr {
  enum class Kind { ident, number, call, lift, function, poly, transform, series };

  Kind kind = Kind::ident;
  std::string text;
  double value = 0.0;
  std::vector<MeanExpr> children;
  std::size_t offset = 0;

  /// Structural equality; offsets are ignored.
  friend bool operator==(const MeanExpr& a, const MeanExpr& b) {
    return a.kind == b.kind && a.text == b.text && a.value == b.value && a.children == b.children;
  }
};

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

enum class Tok { ident, number, lparen, rparen, lbracket, rbracket, comma, caret, end };

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::caret: return "'^'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  std::size_t offset = 0;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Tok::ident, src.substr(start, i - start), 0.0, start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') {
      double v = 0.0;
      const char* first = src.data() + i + (c == '+' ? 1 : 0);
      auto res = std::from_chars(first, src.data() + src.size(), v);
      if (res.ec != std::errc() || res.ptr == first)
        throw ParseError("malformed number at offset " + std::to_string(start), start, {"number"});
      i = std::size_t(res.ptr - src.data());
      out.push_back({Tok::number, src.substr(start, i - start), v, start});
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '[': k = Tok::lbracket; break;
      case ']': k = Tok::rbracket; break;
      case ',': k = Tok::comma; break;
      case '^': k = Tok::caret; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "' at offset " +
                             std::to_string(start),
                         start, {"identifier", "number", "'('", "')'", "'['", "']'", "','", "'^'"});
    }
    out.push_back({k, std::string(1, c), 0.0, start});
    ++i;
  }
  out.push_back({Tok::end, "", 0.0, src.size()});
  return out;
}

// LL(1) recursive descent over the token vector.
class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  MeanExpr parse_all() {
    MeanExpr e = expr();
    expect(Tok::end);
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string list;
    for (std::size_t i = 0; i < expected.size(); ++i) list += (i ? ", " : "") + expected[i];
    const std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError("at offset " + std::to_string(t.offset) + ": expected " + list + ", got " +
                         got,
                     t.offset, std::move(expected));
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) fail({tok_name(k)});
    return next();
  }

  MeanExpr number() {
    const Token& t = expect(Tok::number);
    return {MeanExpr::Kind::number, format_number(t.value), t.value, {}, t.offset};
  }

  // expr := ident | ident '(' arg {',' arg} ')' | 'S' '[' fn ']'
  MeanExpr expr() {
    if (peek().kind != Tok::ident) fail({"identifier"});
    const Token& id = next();
    if (id.text == "S" && peek().kind == Tok::lbracket) {
      next();
      MeanExpr inner = fn();
      expect(Tok::rbracket);
      return {MeanExpr::Kind::lift, "S", 0.0, {std::move(inner)}, id.offset};
    }
    if (peek().kind != Tok::lparen) return {MeanExpr::Kind::ident, id.text, 0.0, {}, id.offset};
    next();
    MeanExpr call{MeanExpr::Kind::call, id.text, 0.0, {}, id.offset};
    call.children.push_back(arg());
    while (peek().kind == Tok::comma) {
      next();
      call.children.push_back(arg());
    }
    if (peek().kind != Tok::rparen) fail({"','", "')'"});
    next();
    return call;
  }

  MeanExpr arg() {
    if (peek().kind == Tok::number) return number();
    if (peek().kind == Tok::ident) return expr();
    fail({"identifier", "number"});
  }

  // fn := 'poly' '(' number ',' number ')'
  //     | 'series' '(' ident ',' number ',' ident ')'
  //     | 'I' ['^' number] '(' fn ')'
  //     | ident
  MeanExpr fn() {
    if (peek().kind != Tok::ident) fail({"identifier"});
    const Token& id = next();
    if (id.text == "poly" && peek().kind == Tok::lparen) {
      next();
      MeanExpr a = number();
      expect(Tok::comma);
      MeanExpr b = number();
      expect(Tok::rparen);
      return {MeanExpr::Kind::poly, "poly", 0.0, {a, b}, id.offset};
    }
    if (id.text == "series" && peek().kind == Tok::lparen) {
      next();
      const Token& k = expect(Tok::ident);
      MeanExpr kind{MeanExpr::Kind::ident, k.text, 0.0, {}, k.offset};
      expect(Tok::comma);
      MeanExpr n = number();
      expect(Tok::comma);
      const Token& r = expect(Tok::ident);
      MeanExpr rule{MeanExpr::Kind::ident, r.text, 0.0, {}, r.offset};
      expect(Tok::rparen);
      return {MeanExpr::Kind::series, "series", 0.0, {kind, n, rule}, id.offset};
    }
    if (id.text == "I" && (peek().kind == Tok::caret || peek().kind == Tok::lparen)) {
      double depth = 1.0;
      if (peek().kind == Tok::caret) {
        next();
        depth = number().value;
      }
      expect(Tok::lparen);
      MeanExpr inner = fn();
      expect(Tok::rparen);
      return {MeanExpr::Kind::transform, "I", depth, {std::move(inner)}, id.offset};
    }
    return {MeanExpr::Kind::function, id.text, 0.0, {}, id.offset};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a mean expression.
inline MeanExpr parse(const std::string& source) { return detail::Parser(source).parse_all(); }

/// Canonical text of an expression; parse(print(e)) == e.
inline std::string print(const MeanExpr& e) {
  using K = MeanExpr::Kind;
  auto join = [](const std::vector<MeanExpr>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + print(xs[i]);
    return s;
  };
  switch (e.kind) {
    case K::ident:
    case K::function: return e.text;
    case K::number: return detail::format_number(e.value);
    case K::call: return e.text + "(" + join(e.children) + ")";
    case K::lift: return "S[" + print(e.children[0]) + "]";
    case K::poly: return "poly(" + join(e.children) + ")";
    case K::series: return "series(" + join(e.children) + ")";
    case K::transform:
      return (e.value == 1.0 ? std::string("I(") : "I^" + detail::format_number(e.value) + "(") +
             print(e.children[0]) + ")";
  }
  return {};
}

namespace detail {

[[noreturn]] inline void elab_fail(const MeanExpr& e, const std::string& msg) {
  throw ElaborationError("at offset " + std::to_string(e.offset) + ": " + msg, e.offset);
}

inline double number_arg(const MeanExpr& call, std::size_t i) {
  const MeanExpr& a = call.children[i];
  if (a.kind != MeanExpr::Kind::number)
    elab_fail(a, call.text + ": argument " + std::to_string(i + 1) + " must be a number");
  return a.value;
}

inline void arity(const MeanExpr& call, std::size_t n) {
  if (call.children.size() != n)
    elab_fail(call, call.text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") +
                        ", got " + std::to_string(call.children.size()));
}

// Wraps library precondition failures with the node's location.
template <class F>
auto located(const MeanExpr& e, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ElaborationError&) {
    throw;
  } catch (const Error& ex) {
    elab_fail(e, ex.what());
  }
}

inline std::size_t depth_of(const MeanExpr& e) {
  const double n = e.value;
  if (!(n >= 0.0 && n == std::floor(n) && n <= double(kMaxSupportedDepth)))
    elab_fail(e, "transform depth must be an integer in [0, " +
                     std::to_string(kMaxSupportedDepth) + "]");
  return std::size_t(n);
}

inline SeiffertFunction named_function(const MeanExpr& e) {
  const std::string& name = e.text;
  if (auto f = SeiffertCatalog::standard().find(name)) return *f;
  static const char* remainder_keys[] = {"log1p",  "log1p_r1", "log1p_r2", "sin",
                                         "sin_r1", "sin_r2",   "cos_r1",   "cos_r2"};
  for (std::size_t i = 0; i < 8; ++i)
    if (name == remainder_keys[i]) return remainder_series_functions()[i];
  // Family bases by alias, and members such as Si_2.
  const auto us = name.rfind('_');
  if (us != std::string::npos && us + 1 < name.size()) {
    const std::string label = name.substr(0, us), digits = name.substr(us + 1);
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      const std::size_t n = std::stoul(digits);
      return located(e, [&] { return iterated_family(label).member(n); });
    }
  }
  try {
    return iterated_family(name).base();
  } catch (const PreconditionError&) {
  }
  std::string known;
  for (const auto& n : SeiffertCatalog::standard().names()) known += " " + n;
  elab_fail(e, "unknown Seiffert function '" + name + "'; known:" + known +
                   ", arcsin/arctan/arsinh/artanh, family members like Si_2, remainders like "
                   "sin_r1");
}

}  // namespace detail

inline SeiffertFunction elaborate_function(const MeanExpr& e);

/// Mean denoted by an expression.
inline Mean elaborate(const MeanExpr& e) {
  using K = MeanExpr::Kind;
  switch (e.kind) {
    case K::ident: {
      if (auto m = MeanCatalog::standard().find(e.text)) return *m;
      std::string known;
      for (const auto& n : MeanCatalog::standard().names()) known += " " + n;
      detail::elab_fail(e, "unknown mean '" + e.text + "'; known:" + known);
    }
    case K::number: detail::elab_fail(e, "a number does not denote a mean");
    case K::lift:
      return detail::located(e, [&] {
        return mean_from_seiffert(elaborate_function(e.children[0])).renamed(print(e));
      });
    case K::call: break;
    default: detail::elab_fail(e, "'" + print(e) + "' is a Seiffert function; lift it with S[...]");
  }
  const std::string& f = e.text;
  auto sub = [&](std::size_t i) { return elaborate(e.children[i]); };
  return detail::located(e, [&]() -> Mean {
    if (f == "gini") {
      detail::arity(e, 2);
      return means::gini(detail::number_arg(e, 0), detail::number_arg(e, 1));
    }
    if (f == "power") {
      detail::arity(e, 1);
      return means::power(detail::number_arg(e, 0));
    }
    if (f == "shift") {
      detail::arity(e, 2);
      return shift_mean(sub(0), detail::number_arg(e, 1)).renamed(print(e));
    }
    if (f == "convex") {
      detail::arity(e, 3);
      const double w = detail::number_arg(e, 0);
      if (!(w >= 0.0 && w <= 1.0)) detail::elab_fail(e, "convex: weight must lie in [0, 1]");
      const Mean a = sub(1), b = sub(2);
      return Mean(
          print(e), [a, b, w](double x, double y) { return (1.0 - w) * a(x, y) + w * b(x, y); },
          a.strict() || b.strict());
    }
    if (f == "oplus") {
      detail::arity(e, 2);
      return oplus(sub(0), sub(1)).renamed(print(e));
    }
    if (f == "neg") {
      detail::arity(e, 1);
      return neg(sub(0)).renamed(print(e));
    }
    if (f == "invariant") {
      detail::arity(e, 2);
      return invariant_mean(sub(0), sub(1)).renamed(print(e));
    }
    if (f == "halfsq") {
      detail::arity(e, 1);
      return combine_half_square(sub(0)).renamed(print(e));
    }
    if (f == "powcomb") {
      detail::arity(e, 2);
      return combine_power(sub(0), detail::number_arg(e, 1)).renamed(print(e));
    }
    detail::elab_fail(e, "unknown combinator '" + f +
                             "'; known: gini, power, shift, convex, oplus, neg, invariant, halfsq, "
                             "powcomb");
  });
}

/// Seiffert function denoted by an expression: lift bodies directly, means
/// through f_M.
inline SeiffertFunction elaborate_function(const MeanExpr& e) {
  using K = MeanExpr::Kind;
  switch (e.kind) {
    case K::lift: return elaborate_function(e.children[0]);
    case K::function: return detail::named_function(e);
    case K::poly:
      return detail::located(e, [&] {
        if (e.children[0].value != 1.0)
          detail::elab_fail(e.children[0], "poly: a1 must be 1 for z-tangency at 0");
        return build_series_seiffert(SeriesSpec::cubic(e.children[1].value));
      });
    case K::transform: {
      const std::size_t n = detail::depth_of(e);
      const MeanExpr& inner = e.children[0];
      if (inner.kind == K::function) {
        try {
          const IteratedFamily& fam = iterated_family(inner.text);
          return detail::located(e, [&] { return fam.member(n); });
        } catch (const PreconditionError&) {
        }
      }
      const SeiffertFunction base = elaborate_function(inner);
      return detail::located(e, [&] { return integral_transform(base, n); });
    }
    case K::series: {
      const auto kind = parse_series_kind(e.children[0].text);
      if (!kind)
        detail::elab_fail(e.children[0], "unknown series kind '" + e.children[0].text +
                                             "'; known: general, alternating_convex, "
                                             "odd_alternating, cubic");
      const double n = e.children[1].value;
      if (!(n >= 1.0 && n == std::floor(n) && n <= 4096.0))
        detail::elab_fail(e.children[1], "series: term count must be an integer in [1, 4096]");
      const auto rule = series_rule(e.children[2].text);
      if (!rule) {
        std::string known;
        for (const auto& r : series_rule_names()) known += " " + r;
        detail::elab_fail(e.children[2], "unknown series rule '" + e.children[2].text +
                                             "'; known:" + known);
      }
      return detail::located(e, [&] {
        return build_series_seiffert(
            SeriesSpec::from_rule(*kind, rule->second, std::size_t(n), std::size_t(n), print(e)));
      });
    }
    default: return detail::located(e, [&] { return seiffert_from_mean(elaborate(e)); });
  }
}

/// parse followed by elaborate.
inline Mean parse_mean(const std::string& source) { return elaborate(parse(source)); }

inline SeiffertFunction parse_function(const std::string& source) {
  return elaborate_function(parse(source));
}

}  // namespace seiffert
