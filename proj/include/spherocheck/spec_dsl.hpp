#pragma once

// Parser and printer for the pair-spec language.
//
//   spec       := algebras ":" rep ( "[" centers "]" )?
//   algebras   := simple ("+" simple)*
//   simple     := ("sl"|"so"|"sp") "(" nat ")" | "g2" | "e6"
//   rep        := summand ("++" summand)*
//   summand    := factor_rep ("*" factor_rep)*
//   factor_rep := "1" | term ("+" term)* with term := [nat] "w" nat
//   centers    := center ("," center)*
//   center     := "h1" | "h(" int ("," int)* ")"   (one integer per summand)
//
// Whitespace is insignificant. sl/so/sp take matrix sizes; g2 and e6 are
// fixed. so(3) and sp(2) are handled through sl2 (so(4) is not simple and is
// rejected). Errors carry the byte offset of the offending token.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherocheck/rep_build.hpp"

namespace spherocheck::dsl {

struct parse_error : std::runtime_error {
  std::size_t pos;
  parse_error(std::size_t at, const std::string& msg)
      : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

namespace detail {

struct Token {
  enum Kind { Word, Nat, Sym, End } kind = End;
  std::string text;
  long value = 0;
  std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Nat;
      t.text = s.substr(i, j - i);
      t.value = std::stol(t.text);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])))) ++j;
      t.kind = Token::Word;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (c == '+' && i + 1 < s.size() && s[i + 1] == '+') {
      t.kind = Token::Sym;
      t.text = "++";
      i += 2;
    } else if (std::string("()[]:,*+-").find(c) != std::string::npos) {
      t.kind = Token::Sym;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw parse_error(i, "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  rep::PairSpec parse() {
    rep::PairSpec spec;
    spec.factors.push_back(parse_factor());
    while (accept_sym("+")) spec.factors.push_back(parse_factor());
    expect_sym(":");
    spec.summands.push_back(parse_summand(spec.factors));
    while (accept_sym("++")) spec.summands.push_back(parse_summand(spec.factors));
    if (accept_sym("[")) {
      if (!peek_sym("]")) {
        spec.center.push_back(parse_center(spec.summands.size()));
        while (accept_sym(",")) spec.center.push_back(parse_center(spec.summands.size()));
      }
      expect_sym("]");
    }
    if (cur().kind != Token::End)
      throw parse_error(cur().pos, "trailing input after specification");
    return spec;
  }

private:
  const Token& cur() const { return toks_[at_]; }
  const Token& ahead() const { return toks_[std::min(at_ + 1, toks_.size() - 1)]; }
  void advance() { if (at_ + 1 < toks_.size()) ++at_; }

  bool peek_sym(const std::string& s) const {
    return cur().kind == Token::Sym && cur().text == s;
  }
  bool accept_sym(const std::string& s) {
    if (!peek_sym(s)) return false;
    advance();
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s)) throw parse_error(cur().pos, "expected '" + s + "'");
  }
  long expect_nat() {
    if (cur().kind != Token::Nat) throw parse_error(cur().pos, "expected a number");
    long v = cur().value;
    advance();
    return v;
  }
  long expect_int() {
    bool neg = accept_sym("-");
    long v = expect_nat();
    return neg ? -v : v;
  }

  rep::Factor parse_factor() {
    if (cur().kind != Token::Word)
      throw parse_error(cur().pos, "expected an algebra (sl/so/sp/g2/e6)");
    std::string w = cur().text;
    std::size_t at = cur().pos;
    advance();
    if (w == "g2") return {rep::Alg::G2, 0};
    if (w == "e6") return {rep::Alg::E6, 0};
    rep::Alg alg;
    if (w == "sl") alg = rep::Alg::SL;
    else if (w == "so") alg = rep::Alg::SO;
    else if (w == "sp") alg = rep::Alg::SP;
    else throw parse_error(at, "unknown algebra '" + w + "'");
    expect_sym("(");
    long n = expect_nat();
    expect_sym(")");
    if (alg == rep::Alg::SL && n < 1) throw parse_error(at, "sl(n) needs n >= 1");
    if (alg == rep::Alg::SO) {
      if (n == 4) throw parse_error(at, "so(4) is not simple; use sl(2)+sl(2)");
      if (n < 3) throw parse_error(at, "so(n) needs n >= 3");
    }
    if (alg == rep::Alg::SP && (n < 2 || n % 2 != 0))
      throw parse_error(at, "sp(2n) needs an even size >= 2");
    return {alg, static_cast<int>(n)};
  }

  std::vector<lie::Weight> parse_summand(const std::vector<rep::Factor>& factors) {
    std::vector<lie::Weight> word;
    word.push_back(parse_weight(factors, 0));
    while (accept_sym("*")) {
      if (word.size() >= factors.size())
        throw parse_error(cur().pos, "tensor word longer than the factor list");
      word.push_back(parse_weight(factors, word.size()));
    }
    if (word.size() != factors.size())
      throw parse_error(cur().pos, "tensor word must name every factor exactly once");
    return word;
  }

  lie::Weight parse_weight(const std::vector<rep::Factor>& factors, std::size_t f) {
    const rep::Factor& fac = factors[f];
    const int rank = fac.user_rank();
    lie::Weight user(rank, 0);
    std::size_t at = cur().pos;
    if (cur().kind == Token::Nat && cur().value == 1 && !(ahead().kind == Token::Word)) {
      advance();  // the trivial representation
      return fac.to_internal(user);
    }
    if (rank == 0) throw parse_error(at, "sl(1) only carries the trivial weight '1'");
    bool first = true;
    while (true) {
      long coeff = 1;
      if (cur().kind == Token::Nat) {
        coeff = cur().value;
        advance();
      }
      if (cur().kind != Token::Word || cur().text.size() < 2 || cur().text[0] != 'w')
        throw parse_error(cur().pos, "expected a weight term like w1 or 2w1");
      for (std::size_t k = 1; k < cur().text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(cur().text[k])))
          throw parse_error(cur().pos, "malformed weight label '" + cur().text + "'");
      long idx = std::stol(cur().text.substr(1));
      if (idx < 1 || idx > rank)
        throw parse_error(cur().pos, "weight index out of range for " + fac.name());
      if (coeff < 1) throw parse_error(cur().pos, "weight coefficient must be positive");
      advance();
      user[idx - 1] += static_cast<int>(coeff);
      first = false;
      // a '+' continues the weight sum unless it starts a new token class
      if (peek_sym("+")) {
        advance();
        continue;
      }
      break;
    }
    (void)first;
    return fac.to_internal(user);
  }

  std::vector<int> parse_center(std::size_t summands) {
    if (cur().kind == Token::Word && cur().text == "h1") {
      advance();
      return std::vector<int>(summands, 1);
    }
    if (cur().kind == Token::Word && cur().text == "h") {
      advance();
      expect_sym("(");
      std::vector<int> v;
      v.push_back(static_cast<int>(expect_int()));
      while (accept_sym(",")) v.push_back(static_cast<int>(expect_int()));
      expect_sym(")");
      if (v.size() != summands)
        throw parse_error(cur().pos, "center needs one scaling integer per summand (" +
                                         std::to_string(summands) + ")");
      return v;
    }
    throw parse_error(cur().pos, "expected a center generator h1 or h(...)");
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

}  // namespace detail

inline rep::PairSpec parse_pair_spec(const std::string& text) {
  rep::PairSpec spec = detail::Parser(text).parse();
  rep::validate(spec);
  return spec;
}

inline std::string print_weight(const rep::Factor& fac, const lie::Weight& internal) {
  lie::Weight user = fac.to_user(internal);
  bool zero = true;
  for (int x : user) zero &= (x == 0);
  if (zero) return "1";
  std::string s;
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (user[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (user[i] != 1) s += std::to_string(user[i]);
    s += "w" + std::to_string(i + 1);
  }
  return s;
}

inline std::string print_pair_spec(const rep::PairSpec& spec) {
  std::string s;
  for (std::size_t f = 0; f < spec.factors.size(); ++f) {
    if (f) s += "+";
    s += spec.factors[f].name();
  }
  s += ": ";
  for (std::size_t k = 0; k < spec.summands.size(); ++k) {
    if (k) s += " ++ ";
    for (std::size_t f = 0; f < spec.factors.size(); ++f) {
      if (f) s += "*";
      s += print_weight(spec.factors[f], spec.summands[k][f]);
    }
  }
  if (!spec.center.empty()) {
    s += " [";
    for (std::size_t g = 0; g < spec.center.size(); ++g) {
      if (g) s += ", ";
      bool ones = true;
      for (int x : spec.center[g]) ones &= (x == 1);
      if (ones) {
        s += "h1";
      } else {
        s += "h(";
        for (std::size_t i = 0; i < spec.center[g].size(); ++i) {
          if (i) s += ",";
          s += std::to_string(spec.center[g][i]);
        }
        s += ")";
      }
    }
    s += "]";
  }
  return s;
}

}  // namespace spherocheck::dsl
