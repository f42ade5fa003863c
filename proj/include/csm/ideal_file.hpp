#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csm/ideal_ops.hpp"

namespace csm {

/// Parsed input: a homogeneous ideal in k[v_0..v_n] over GF(p).
struct SchemeInput {
  Ideal ideal;
  int n = 0;
  std::vector<int> degrees;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const std::string& text, int line, const RingPtr& ring)
      : s_(text), line_(line), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  // products, with '*' optional between adjacent factors ("3x0" = 3*x0)
  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) return acc;
      char c = s_[pos_];
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    if (peek('-')) {
      ++pos_;
      return -factor();
    }
    if (peek('+')) {
      ++pos_;
      return factor();
    }
    Polynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent after '^'");
      if (pos_ - start > 4) fail("exponent too large");
      unsigned e = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large");
      return base.pow(e);
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const PrimeField& F = ring_->field();
      Element v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = F.add(F.mul(v, 10), static_cast<Element>(s_[pos_] - '0'));
        ++pos_;
      }
      return Polynomial::constant(ring_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int idx = ring_->index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  RingPtr ring_;
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Grammar:
///   ring p=<prime> vars=<name>,<name>,...
///   ideal:
///   <generator>        one per line; + - * ^, integers, parentheses
/// Blank lines and text after '#' are ignored. prime_override replaces p.
inline SchemeInput parse_ideal_file(const std::string& text,
                                    std::optional<std::uint64_t> prime_override = std::nullopt) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  RingPtr ring;
  bool in_ideal = false;
  std::vector<Polynomial> gens;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (detail::trim(line).empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    std::string body = detail::trim(line);

    if (!ring) {
      std::istringstream hdr(body);
      std::string word;
      hdr >> word;
      if (word != "ring") throw ParseError("expected 'ring p=<prime> vars=<list>'", line_no, indent);
      std::optional<std::uint64_t> p;
      std::vector<std::string> names;
      while (hdr >> word) {
        const int col = static_cast<int>(line.find(word)) + 1;
        if (word.rfind("p=", 0) == 0) {
          std::string digits = word.substr(2);
          if (digits.empty() || digits.size() > 18 ||
              digits.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("malformed prime '" + digits + "'", line_no, col);
          p = std::stoull(digits);
        } else if (word.rfind("vars=", 0) == 0) {
          std::string list = word.substr(5);
          std::stringstream ls(list);
          std::string name;
          while (std::getline(ls, name, ',')) {
            if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
              throw ParseError("malformed variable name '" + name + "'", line_no, col);
            for (char ch : name)
              if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                throw ParseError("malformed variable name '" + name + "'", line_no, col);
            names.push_back(name);
          }
        } else {
          throw ParseError("unknown header field '" + word + "'", line_no, col);
        }
      }
      if (!p) throw ParseError("missing p=<prime>", line_no, indent);
      if (names.size() < 2) throw ParseError("need at least two variables", line_no, indent);
      if (names.size() > static_cast<std::size_t>(kMaxVars - 2))
        throw ParseError("too many variables (at most " + std::to_string(kMaxVars - 2) + ")",
                         line_no, indent);
      const std::uint64_t prime = prime_override.value_or(*p);
      if (prime <= 2 || prime >= (1ULL << 31) || !is_prime(prime))
        throw ParseError(std::to_string(prime) + " is not an odd prime below 2^31", line_no, indent);
      try {
        ring = std::make_shared<const Ring>(names, PrimeField(prime));
      } catch (const PreconditionError& e) {
        throw ParseError(e.what(), line_no, indent);
      }
      continue;
    }
    if (!in_ideal) {
      if (body != "ideal:") throw ParseError("expected 'ideal:'", line_no, indent);
      in_ideal = true;
      continue;
    }
    detail::ExprParser parser(line, line_no, ring);
    Polynomial f = parser.parse();
    if (f.is_zero()) throw ParseError("generator is zero", line_no, indent);
    const int top = static_cast<int>(f.leading_monomial().degree);
    for (const auto& t : f.terms())
      if (static_cast<int>(t.m.degree) != top)
        throw ParseError("inhomogeneous generator: term " +
                             Polynomial::monomial(ring, t.m, t.c).to_string() + " has degree " +
                             std::to_string(t.m.degree) + ", expected " + std::to_string(top),
                         line_no, indent);
    gens.push_back(std::move(f));
  }
  if (!ring) throw ParseError("empty input: missing ring header", line_no + 1, 1);
  if (!in_ideal) throw ParseError("missing 'ideal:' section", line_no + 1, 1);
  SchemeInput out{Ideal(ring, gens), ring->n(), {}};
  out.degrees = out.ideal.degrees();
  return out;
}

inline SchemeInput load_ideal_file(const std::string& path,
                                   std::optional<std::uint64_t> prime_override = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ideal_file(ss.str(), prime_override);
}

inline std::string render_ideal_file(const Ideal& I) {
  const Ring& R = *I.ring();
  std::string s = "ring p=" + std::to_string(R.field().prime()) + " vars=";
  for (int v = 0; v < R.nvars(); ++v) s += (v ? "," : "") + R.name(v);
  s += "\nideal:\n";
  for (const auto& g : I.generators()) s += g.to_string() + "\n";
  return s;
}

}  // namespace csm
