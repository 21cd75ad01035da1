#include "floatauth/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace floatauth {

namespace {

enum class Tok { Name, Sym, Zero, New, Assume, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      Tok kind = word == "new" ? Tok::New : word == "assume" ? Tok::Assume : Tok::Name;
      out.push_back({kind, word, tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      if (j >= src.size() || src[j] < 'a' || src[j] > 'z')
        throw ParseError("symbol must start with a lowercase letter after '#'", tl, tc);
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Sym, src.substr(i + 1, j - i - 1), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '0') {
      if (i + 1 < src.size() && ident_char(src[i + 1]))
        throw ParseError("unexpected character after '0'", tl, tc + 1);
      out.push_back({Tok::Zero, "0", tl, tc});
      advance(1);
      continue;
    }
    static const std::string punct = "|()[].!?<>:{},~;";
    if (punct.find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  SourceFile file() {
    SourceFile f;
    std::set<Name> seen;
    while (peek().kind == Tok::Assume) {
      const Token& kw = next();
      Name n = name();
      if (!seen.insert(n).second)
        throw ParseError("duplicate assumption for '" + n.text + "'", kw.line, kw.column);
      expect(":");
      AuthType t = type();
      expect(";");
      f.assumptions.push_back({n, t});
    }
    f.process = proc();
    expect_end();
    return f;
  }

  AuthType whole_type() {
    AuthType t = type();
    expect_end();
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(const char* punct, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Punct && t.text == punct;
  }

  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + what + ", found " + found, t.line, t.column);
  }

  void expect(const char* punct) {
    if (!at(punct)) fail(std::string("'") + punct + "'", peek());
    next();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("end of input", peek());
  }

  Name name() {
    if (peek().kind != Tok::Name) fail("a name", peek());
    return Name{next().text};
  }

  Process proc() {
    Process acc = seq();
    while (at("|")) {
      next();
      acc = par(acc, seq());
    }
    return acc;
  }

  Process continuation() {
    expect(".");
    return seq();
  }

  Process seq() {
    const Token& t = peek();
    if (t.kind == Tok::Zero) {
      next();
      return nil();
    }
    if (at("(")) {
      next();
      Process p = proc();
      expect(")");
      return p;
    }
    if (at("[")) {
      next();
      Name a = name();
      expect("]");
      return auth(a, seq());
    }
    if (t.kind == Tok::New) {
      next();
      Name a = name();
      std::optional<SymbolTag> tag;
      std::optional<AuthType> ann;
      if (at(":")) {
        next();
        if (peek().kind == Tok::Sym) {
          tag = Symbol{next().text};
        } else if (at("~")) {
          next();
          tag = Nu{};
        } else {
          fail("a symbol or '~'", peek());
        }
      }
      if (at("{")) {
        next();
        ann = type();
        expect("}");
      }
      return res(a, tag, ann, continuation());
    }
    if (at("!")) {
      next();
      Name a = name();
      expect("?");
      Name x = name();
      return rep_in(a, x, continuation());
    }
    if (t.kind == Tok::Name) {
      Name a = name();
      if (at("!")) {
        next();
        Name b = name();
        return out(a, b, continuation());
      }
      if (at("?")) {
        next();
        Name x = name();
        return in(a, x, continuation());
      }
      if (at("<")) {
        next();
        Name b = name();
        expect(">");
        return deleg_out(a, b, continuation());
      }
      if (at("(")) {
        next();
        Name b = name();
        expect(")");
        return deleg_in(a, b, continuation());
      }
      fail("'!', '?', '<' or '(' after a name", peek());
    }
    fail("a process", t);
  }

  AuthType type() {
    if (peek().kind == Tok::Zero) {
      next();
      return AuthType::ground();
    }
    if (at("~")) {
      next();
      expect("(");
      AuthType carried = type();
      expect(")");
      return AuthType::chan(OmegaSet::nu(), carried);
    }
    if (at("{")) {
      next();
      std::set<OmegaElem> elems;
      if (!at("}")) {
        for (;;) {
          if (peek().kind == Tok::Name)
            elems.insert(Name{next().text});
          else if (peek().kind == Tok::Sym)
            elems.insert(Symbol{next().text});
          else
            fail("a name or symbol", peek());
          if (!at(",")) break;
          next();
        }
      }
      expect("}");
      expect("(");
      AuthType carried = type();
      expect(")");
      return AuthType::chan(OmegaSet::of(std::move(elems)), carried);
    }
    fail("a type", peek());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Printer {
 public:
  explicit Printer(const std::map<const void*, std::string>* holes) : holes_(holes) {}

  void proc(const Process& p) {
    if (hole(p)) return;
    if (const auto* n = p.as<Par>()) {
      proc(n->left);
      os_ << " | ";
      seq(n->right);
      return;
    }
    seq(p);
  }

  void seq(const Process& p) {
    if (hole(p)) return;
    visit(overloaded{
              [&](const Nil&) { os_ << '0'; },
              [&](const Par&) {
                os_ << '(';
                proc(p);
                os_ << ')';
              },
              [&](const Res& n) {
                os_ << "new " << n.binder.text;
                if (n.tag) os_ << ':' << to_string(*n.tag);
                if (n.annotation) os_ << " {" << to_string(*n.annotation) << '}';
                os_ << ". ";
                seq(n.body);
              },
              [&](const Auth& n) {
                os_ << '[' << n.name.text << "] ";
                seq(n.body);
              },
              [&](const Out& n) {
                os_ << n.subject.text << '!' << n.object.text << '.';
                seq(n.cont);
              },
              [&](const In& n) {
                os_ << n.subject.text << '?' << n.binder.text << '.';
                seq(n.cont);
              },
              [&](const DelegOut& n) {
                os_ << n.subject.text << '<' << n.object.text << ">.";
                seq(n.cont);
              },
              [&](const DelegIn& n) {
                os_ << n.subject.text << '(' << n.object.text << ").";
                seq(n.cont);
              },
              [&](const RepIn& n) {
                os_ << '!' << n.subject.text << '?' << n.binder.text << '.';
                seq(n.cont);
              },
          },
          p);
  }

  std::string str() const { return os_.str(); }

 private:
  bool hole(const Process& p) {
    if (!holes_) return false;
    auto it = holes_->find(&p.node());
    if (it == holes_->end()) return false;
    os_ << it->second;
    return true;
  }

  const std::map<const void*, std::string>* holes_;
  std::ostringstream os_;
};

}  // namespace

bool is_keyword(const std::string& text) { return text == "new" || text == "assume"; }

SourceFile parse(const std::string& text) { return Parser(text).file(); }

Process parse_process(const std::string& text) {
  SourceFile f = parse(text);
  if (!f.assumptions.empty()) throw ParseError("unexpected assumptions", 1, 1);
  return f.process;
}

AuthType parse_type(const std::string& text) { return Parser(text).whole_type(); }

std::string print(const Process& p) {
  Printer pr(nullptr);
  pr.proc(p);
  return pr.str();
}

std::string print_with_holes(const Process& p, const std::map<const void*, std::string>& holes) {
  Printer pr(&holes);
  pr.proc(p);
  return pr.str();
}

std::string print(const SourceFile& file) {
  std::string out;
  for (const auto& a : file.assumptions)
    out += "assume " + a.name.text + " : " + to_string(a.type) + ";\n";
  return out + print(file.process);
}

}  // namespace floatauth
