#include "loomcheck/parser.hpp"

#include <cctype>
#include <utility>

namespace loomcheck {
namespace {

enum class Tok {
  LowerIdent,
  VarIdent,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bar,
  Dot,
  Neck,  // :-
  Naf,   // \+
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::LowerIdent: return "identifier";
    case Tok::VarIdent: return "variable";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Bar: return "'|'";
    case Tok::Dot: return "'.'";
    case Tok::Neck: return "':-'";
    case Tok::Naf: return "'\\+'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_blank();
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      current_.kind = Tok::LowerIdent;
      current_.text = take_ident();
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      current_.kind = Tok::VarIdent;
      current_.text = take_ident();
      return;
    }
    switch (c) {
      case '(': one(Tok::LParen); return;
      case ')': one(Tok::RParen); return;
      case '[': one(Tok::LBracket); return;
      case ']': one(Tok::RBracket); return;
      case ',': one(Tok::Comma); return;
      case '|': one(Tok::Bar); return;
      case '.': one(Tok::Dot); return;
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          two(Tok::Neck, ":-");
          return;
        }
        fail("expected ':-'");
      case '\\':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '+') {
          two(Tok::Naf, "\\+");
          return;
        }
        fail("expected '\\+'");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        step();
      } else {
        break;
      }
    }
  }

  std::string take_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        step();
      else
        break;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void one(Tok kind) {
    current_.kind = kind;
    current_.text = text_[pos_];
    step();
  }

  void two(Tok kind, const char* text) {
    current_.kind = kind;
    current_.text = text;
    step();
    step();
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("parse error at " + std::to_string(line_) + ":" +
                         std::to_string(column_) + ": " + msg,
                     line_, column_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_{Tok::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Program program() {
    Program p;
    while (lex_.peek().kind != Tok::End) p.clauses.push_back(clause());
    return p;
  }

  Atom query() {
    Atom a = atom();
    if (lex_.peek().kind == Tok::Dot) lex_.take();
    expect(Tok::End);
    return a;
  }

 private:
  Clause clause() {
    if (lex_.peek().kind == Tok::Naf) {
      const Token& t = lex_.peek();
      throw ParseError("parse error at " + std::to_string(t.line) + ":" +
                           std::to_string(t.column) +
                           ": '\\+' cannot appear in a clause head",
                       t.line, t.column);
    }
    Clause c;
    c.head = atom();
    if (lex_.peek().kind == Tok::Neck) {
      lex_.take();
      c.body.push_back(literal());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        c.body.push_back(literal());
      }
    }
    expect(Tok::Dot);
    return c;
  }

  Literal literal() {
    if (lex_.peek().kind == Tok::Naf) {
      lex_.take();
      return {Polarity::Negative, atom()};
    }
    return {Polarity::Positive, atom()};
  }

  Atom atom() {
    Token name = expect(Tok::LowerIdent);
    Atom a{name.text, {}};
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      a.args.push_back(term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        a.args.push_back(term());
      }
      expect(Tok::RParen);
    }
    return a;
  }

  TermPtr term() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::VarIdent: {
        Token v = lex_.take();
        // each bare `_` is a distinct variable
        if (v.text == "_")
          return Term::var("_A" + std::to_string(anon_counter_++));
        return Term::var(v.text);
      }
      case Tok::LowerIdent: {
        Token f = lex_.take();
        if (lex_.peek().kind == Tok::LParen) {
          lex_.take();
          std::vector<TermPtr> args;
          args.push_back(term());
          while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            args.push_back(term());
          }
          expect(Tok::RParen);
          return Term::compound(f.text, std::move(args));
        }
        return Term::constant(f.text);
      }
      case Tok::LBracket:
        return list();
      default:
        throw ParseError("parse error at " + std::to_string(t.line) + ":" +
                             std::to_string(t.column) + ": expected a term, got " +
                             describe(t.kind),
                         t.line, t.column);
    }
  }

  TermPtr list() {
    expect(Tok::LBracket);
    if (lex_.peek().kind == Tok::RBracket) {
      lex_.take();
      return Term::nil();
    }
    std::vector<TermPtr> elems;
    elems.push_back(term());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      elems.push_back(term());
    }
    TermPtr tail;
    if (lex_.peek().kind == Tok::Bar) {
      lex_.take();
      tail = term();
    }
    expect(Tok::RBracket);
    return Term::list(std::move(elems), std::move(tail));
  }

  Token expect(Tok kind) {
    const Token& t = lex_.peek();
    if (t.kind != kind) {
      throw ParseError("parse error at " + std::to_string(t.line) + ":" +
                           std::to_string(t.column) + ": expected " +
                           describe(kind) + ", got " + describe(t.kind),
                       t.line, t.column);
    }
    return lex_.take();
  }

  Lexer lex_;
  std::uint64_t anon_counter_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  return Parser(text).program();
}

Atom parse_query(std::string_view text) { return Parser(text).query(); }

}  // namespace loomcheck
