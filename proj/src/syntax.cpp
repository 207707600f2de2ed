/* Copyright 2026 The ESC Workbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "esc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace esc {

namespace {

std::string join_expected(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += i + 1 == xs.size() ? " or " : ", ";
    out += xs[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(SourceSpan span, std::vector<std::string> expected, std::string found)
    : Error("syntax error at " + std::to_string(span.begin) + ".." + std::to_string(span.end) +
            ": expected " + join_expected(expected) + ", found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

BindingError::BindingError(SourceSpan span, VarId var, const std::string& what)
    : Error("binding error at " + std::to_string(span.begin) + ".." + std::to_string(span.end) +
            ": " + to_string(var) + " " + what),
      span_(span),
      var_(var) {}

std::string caret_line(SourceSpan span) {
  std::size_t width = span.end > span.begin ? span.end - span.begin : 1;
  return std::string(span.begin, ' ') + std::string(width, '^');
}

const char* grammar_text() {
  return "term   ::= value | \"[\" binder \"]\" term | \"(\" term \")\"\n"
         "value  ::= var | \"\\\" var term | \"!\" term | \"<\" term \",\" term \">\"\n"
         "binder ::= value \"-\" var | evar \"?\" var | mvar \">\" value \",\" var\n"
         "         | mvar \"@\" var \",\" var\n"
         "var    ::= mvar | evar\n"
         "mvar   ::= \"m\" digits\n"
         "evar   ::= \"e\" digits | \"_\"\n";
}

// ---------------------------------------------------------------------------
// Lexer.

namespace {

enum class Tok {
  LBrack,
  RBrack,
  Lambda,
  Bang,
  Lt,
  Gt,
  Comma,
  Minus,
  Quest,
  At,
  LParen,
  RParen,
  MVar,
  EVar,
  Wild,
  End,
};

struct Token {
  Tok kind;
  SourceSpan span;
  std::uint32_t index = 0;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Lambda: return "'\\'";
    case Tok::Bang: return "'!'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Minus: return "'-'";
    case Tok::Quest: return "'?'";
    case Tok::At: return "'@'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::MVar: return "multiplicative variable";
    case Tok::EVar: return "exponential variable";
    case Tok::Wild: return "'_'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < in.size()) {
    unsigned char c = static_cast<unsigned char>(in[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token t{Tok::End, {i, i + 1}, 0};
    switch (c) {
      case '[': t.kind = Tok::LBrack; break;
      case ']': t.kind = Tok::RBrack; break;
      case '\\': t.kind = Tok::Lambda; break;
      case '!': t.kind = Tok::Bang; break;
      case '<': t.kind = Tok::Lt; break;
      case '>': t.kind = Tok::Gt; break;
      case ',': t.kind = Tok::Comma; break;
      case '-': t.kind = Tok::Minus; break;
      case '?': t.kind = Tok::Quest; break;
      case '@': t.kind = Tok::At; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '_': t.kind = Tok::Wild; break;
      case 'm':
      case 'e': {
        t.kind = c == 'm' ? Tok::MVar : Tok::EVar;
        std::size_t j = i + 1;
        std::uint64_t idx = 0;
        while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) {
          idx = idx * 10 + static_cast<std::uint64_t>(in[j] - '0');
          if (idx > 0x7fffffffu) throw SyntaxError({i, j + 1}, {"variable index below 2^31"}, "overflow");
          ++j;
        }
        t.index = static_cast<std::uint32_t>(idx);
        t.span.end = j;
        break;
      }
      default:
        throw SyntaxError({i, i + 1}, {"token"}, "'" + std::string(1, in[i]) + "'");
    }
    i = t.span.end;
    out.push_back(t);
  }
  out.push_back(Token{Tok::End, {in.size(), in.size()}, 0});
  return out;
}

// ---------------------------------------------------------------------------
// Parser.

class Parser {
 public:
  Parser(std::string_view in, std::vector<Token> toks) : in_(in), toks_(std::move(toks)) {
    std::uint32_t max = 0;
    for (const Token& t : toks_)
      if (t.kind == Tok::MVar || t.kind == Tok::EVar) max = std::max(max, t.index);
    next_wild_ = max + 1;
  }

  Term parse_all() {
    Term t = term();
    expect(Tok::End);
    check_binding(t);
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  std::string found(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    return "'" + std::string(in_.substr(t.span.begin, t.span.end - t.span.begin)) + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().span, std::move(expected), found(peek()));
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) fail({describe(k)});
    return toks_[pos_++];
  }

  static bool is_var(Tok k) { return k == Tok::MVar || k == Tok::EVar; }

  VarId occurrence() {
    const Token& t = peek();
    if (!is_var(t.kind)) fail({"variable"});
    ++pos_;
    return t.kind == Tok::MVar ? VarId::mult(t.index) : VarId::exp(t.index);
  }

  VarId mvar() {
    const Token& t = expect(Tok::MVar);
    return VarId::mult(t.index);
  }

  VarId evar() {
    const Token& t = expect(Tok::EVar);
    return VarId::exp(t.index);
  }

  VarId binder() {
    const Token& t = peek();
    VarId x;
    if (t.kind == Tok::Wild) {
      x = VarId::wild(next_wild_++);
    } else if (is_var(t.kind)) {
      x = t.kind == Tok::MVar ? VarId::mult(t.index) : VarId::exp(t.index);
    } else {
      fail({"variable", "'_'"});
    }
    ++pos_;
    binders_.push_back({x, t.span});
    return x;
  }

  Term term() {
    switch (peek().kind) {
      case Tok::LBrack: {
        ++pos_;
        return bracket();
      }
      case Tok::LParen: {
        ++pos_;
        Term t = term();
        expect(Tok::RParen);
        return t;
      }
      default:
        return value();
    }
  }

  Term value() {
    switch (peek().kind) {
      case Tok::MVar:
      case Tok::EVar:
        return Term::var(occurrence());
      case Tok::Lambda: {
        ++pos_;
        VarId x = binder();
        Term body = term();
        return Term::abs(x, std::move(body));
      }
      case Tok::Bang: {
        ++pos_;
        return Term::bang(term());
      }
      case Tok::Lt: {
        ++pos_;
        Term l = term();
        expect(Tok::Comma);
        Term r = term();
        expect(Tok::Gt);
        return Term::pair(std::move(l), std::move(r));
      }
      case Tok::LParen: {
        std::size_t at = pos_;
        ++pos_;
        Term t = term();
        expect(Tok::RParen);
        if (!t.is_value()) throw SyntaxError(toks_[at].span, {"value"}, "a non-value term");
        return t;
      }
      default:
        fail({"variable", "'\\'", "'!'", "'<'", "'('"});
    }
  }

  // After "[".
  Term bracket() {
    const Token& first = peek();
    if (is_var(first.kind)) {
      switch (peek(1).kind) {
        case Tok::Minus: {
          Term v = Term::var(occurrence());
          ++pos_;
          return close_cut(std::move(v));
        }
        case Tok::Quest: {
          VarId e = evar_head();
          ++pos_;
          VarId x = binder();
          expect(Tok::RBrack);
          return Term::der(e, x, term());
        }
        case Tok::Gt: {
          VarId m = mvar_head();
          ++pos_;
          Term v = value();
          expect(Tok::Comma);
          VarId x = binder();
          expect(Tok::RBrack);
          return Term::sub(m, std::move(v), x, term());
        }
        case Tok::At: {
          VarId m = mvar_head();
          ++pos_;
          VarId x = binder();
          expect(Tok::Comma);
          VarId y = binder();
          expect(Tok::RBrack);
          return Term::tens(m, x, y, term());
        }
        default:
          ++pos_;
          fail({"'-'", "'?'", "'>'", "'@'"});
      }
    }
    Term v = value();
    expect(Tok::Minus);
    return close_cut(std::move(v));
  }

  VarId evar_head() {
    if (peek().kind != Tok::EVar) fail({describe(Tok::EVar)});
    return evar();
  }

  VarId mvar_head() {
    if (peek().kind != Tok::MVar) fail({describe(Tok::MVar)});
    return mvar();
  }

  // After "[v -".
  Term close_cut(Term v) {
    VarId x = binder();
    expect(Tok::RBrack);
    return Term::cut(std::move(v), x, term());
  }

  void check_binding(const Term& t) const {
    std::map<VarId, SourceSpan> seen;
    for (const auto& [x, span] : binders_) {
      if (!seen.emplace(x, span).second) throw BindingError(span, x, "is bound more than once");
    }
    for (VarId x : fv(t)) {
      auto it = seen.find(x);
      if (it != seen.end()) throw BindingError(it->second, x, "is bound but also occurs free");
    }
  }

  std::string_view in_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::uint32_t next_wild_ = 1;
  std::vector<std::pair<VarId, SourceSpan>> binders_;
};

}  // namespace

Term parse(std::string_view input) { return Parser(input, lex(input)).parse_all(); }

// ---------------------------------------------------------------------------
// Printer.

namespace {

void subscript(std::string& out, std::uint32_t n) {
  std::string digits = std::to_string(n);
  for (char d : digits) {
    out += "\xE2\x82";
    out += static_cast<char>(0x80 + (d - '0'));
  }
}

class Printer {
 public:
  Printer(Style style, const std::vector<Mark>* marks) : style_(style), marks_(marks) {}

  void var(VarId x) {
    if (x.wildcard) {
      out_ += '_';
      return;
    }
    out_ += x.is_mult() ? 'm' : 'e';
    if (style_ == Style::Unicode)
      subscript(out_, x.index);
    else
      out_ += std::to_string(x.index);
  }

  void term(const Term& t) {
    const Mark* m = mark_here();
    if (!m) {
      body(t);
      return;
    }
    out_ += '<';
    body(t);
    out_ += '>';
    if (style_ == Style::Unicode) {
      subscript(out_, static_cast<std::uint32_t>(m->job));
    } else {
      out_ += '_';
      out_ += std::to_string(m->job);
    }
  }

  std::string take() { return std::move(out_); }

 private:
  bool u() const { return style_ == Style::Unicode; }

  const Mark* mark_here() const {
    if (!marks_) return nullptr;
    for (const Mark& m : *marks_)
      if (m.path == cur_) return &m;
    return nullptr;
  }

  void sub(const Term& t, Selector s) {
    if (marks_) cur_.push_back(s);
    term(*child(t, s));
    if (marks_) cur_.pop_back();
  }

  void body(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        var(t.var());
        return;
      case TermKind::Abs:
        out_ += u() ? "\xCE\xBB" : "\\";
        var(t.var());
        sub(t, Selector::AbsBody);
        return;
      case TermKind::Bang:
        out_ += '!';
        sub(t, Selector::BangBody);
        return;
      case TermKind::Pair:
        out_ += u() ? "\xE2\x9F\xA8" : "<";
        sub(t, Selector::PairLeft);
        out_ += ',';
        sub(t, Selector::PairRight);
        out_ += u() ? "\xE2\x9F\xA9" : ">";
        return;
      case TermKind::Cut:
        out_ += '[';
        sub(t, Selector::CutValue);
        out_ += u() ? "\xE2\x86\x92" : "-";
        var(t.var());
        out_ += ']';
        sub(t, Selector::CutBody);
        return;
      case TermKind::Sub:
        out_ += '[';
        var(t.head());
        out_ += u() ? "\xE2\x96\xB7" : ">";
        sub(t, Selector::SubValue);
        out_ += ',';
        var(t.var());
        out_ += ']';
        sub(t, Selector::SubBody);
        return;
      case TermKind::Der:
        out_ += '[';
        var(t.head());
        out_ += '?';
        var(t.var());
        out_ += ']';
        sub(t, Selector::DerBody);
        return;
      case TermKind::Tens:
        out_ += '[';
        var(t.head());
        out_ += u() ? "\xE2\x8A\x97" : "@";
        var(t.var());
        out_ += ',';
        var(t.var2());
        out_ += ']';
        sub(t, Selector::TensBody);
        return;
    }
  }

  Style style_;
  const std::vector<Mark>* marks_;
  Path cur_;
  std::string out_;
};

}  // namespace

std::string print(const Term& t, Style style) {
  Printer p(style, nullptr);
  p.term(t);
  return p.take();
}

std::string print_marked(const Term& t, const std::vector<Mark>& marks, Style style) {
  Printer p(style, &marks);
  p.term(t);
  return p.take();
}

std::string print_marked(const Term& t, const Path& marked, int job, Style style) {
  return print_marked(t, std::vector<Mark>{Mark{marked, job}}, style);
}

std::string print_var(VarId x, Style style) {
  Printer p(style, nullptr);
  p.var(x);
  return p.take();
}

}  // namespace esc
