#include "catwb/cli/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace catwb::cli {

std::string Diagnostic::str() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

namespace {

std::string joinDiagnostics(const std::vector<Diagnostic> &ds) {
  std::string s;
  for (const auto &d : ds)
    s += (s.empty() ? "" : "\n") + d.str();
  return s;
}

} // namespace

DslError::DslError(std::vector<Diagnostic> ds)
    : std::runtime_error(joinDiagnostics(ds)), diagnostics_(std::move(ds)) {}

const Ident *ConeDecl::field(std::string_view key) const {
  for (const auto &[k, v] : fields)
    if (k.name == key)
      return &v;
  return nullptr;
}

// ---------------------------------------------------------------------------

namespace {

enum class Tok { Ident, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Position pos;
};

bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  Position p;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    Token t;
    t.pos = p;
    if (identChar(c)) {
      std::size_t j = i;
      while (j < src.size() && identChar(src[j]))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] == '\\' && j + 1 < src.size() && (src[j + 1] == '"' || src[j + 1] == '\\'))
          ++j;
        s += src[j++];
      }
      if (j >= src.size() || src[j] != '"')
        throw DslError({{p, "unterminated string"}});
      t.kind = Tok::String;
      t.text = std::move(s);
      advance(j + 1 - i);
    } else if (src.substr(i, 2) == "->" || src.substr(i, 2) == "=>") {
      t.kind = Tok::Punct;
      t.text = std::string(src.substr(i, 2));
      advance(2);
    } else if (std::string_view("{}()[]:;,.=").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw DslError({{p, std::string("unexpected character '") + c + "'"}});
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = p;
  out.push_back(end);
  return out;
}

const std::vector<std::string> kSections = {"objects", "morphisms", "identity", "compose"};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SpecDocument document() {
    SpecDocument doc;
    while (peek().kind != Tok::End) {
      const Token &t = peek();
      if (t.kind != Tok::Ident)
        fail(t, "expected a declaration");
      if (t.text == "category")
        doc.declarations.push_back(category());
      else if (t.text == "cone" || t.text == "terminal" || t.text == "equalizer")
        doc.declarations.push_back(cone());
      else if (t.text == "functor")
        doc.declarations.push_back(functor());
      else if (t.text == "nat")
        doc.declarations.push_back(nat());
      else if (t.text == "query")
        doc.declarations.push_back(query());
      else
        fail(t, "unexpected token '" + t.text + "', expected a declaration");
    }
    return doc;
  }

private:
  const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token &next() {
    const Token &t = peek();
    if (pos_ < toks_.size() - 1)
      ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token &t, const std::string &msg) const {
    throw DslError({{t.pos, msg}});
  }
  static std::string describe(const Token &t) {
    switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::String:
      return "string \"" + t.text + "\"";
    default:
      return "'" + t.text + "'";
    }
  }
  bool isPunct(const char *p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  void expect(const char *p) {
    if (!isPunct(p))
      fail(peek(), std::string("unexpected token ") + describe(peek()) + ", expected '" + p + "'");
    next();
  }
  Ident ident(const char *what = "a name") {
    const Token &t = peek();
    if (t.kind != Tok::Ident)
      fail(t, "unexpected token " + describe(t) + ", expected " + what);
    next();
    return {t.text, t.pos};
  }
  void keyword(const char *kw) {
    const Token &t = peek();
    if (t.kind != Tok::Ident || t.text != kw)
      fail(t, "unexpected token " + describe(t) + ", expected '" + kw + "'");
    next();
  }
  std::string string() {
    const Token &t = peek();
    if (t.kind != Tok::String)
      fail(t, "unexpected token " + describe(t) + ", expected a quoted term");
    next();
    return t.text;
  }
  CategoryRef categoryRef() {
    CategoryRef r;
    if (peek().kind == Tok::Ident && peek().text == "op" && isPunct("(", 1)) {
      next();
      next();
      r.name = ident("a category name");
      r.opposite = true;
      expect(")");
    } else {
      r.name = ident("a category name");
    }
    return r;
  }
  // `;` between entries is required, a final one is optional.
  bool endOfEntry(const std::function<bool()> &atEnd) {
    if (isPunct(";")) {
      next();
      return atEnd();
    }
    if (atEnd())
      return true;
    fail(peek(), "unexpected token " + describe(peek()) + ", expected ';'");
  }
  bool atSection() const {
    return peek().kind == Tok::Ident && isPunct(":", 1) &&
           std::find(kSections.begin(), kSections.end(), peek().text) != kSections.end();
  }

  CategoryDecl category() {
    keyword("category");
    CategoryDecl c;
    c.name = ident("a category name");
    expect("{");
    auto atEnd = [&] { return isPunct("}") || atSection(); };
    while (!isPunct("}")) {
      if (!atSection())
        fail(peek(), "unexpected token " + describe(peek()) +
                         ", expected objects, morphisms, identity or compose");
      std::string section = next().text;
      expect(":");
      if (section == "objects") {
        while (!atEnd()) {
          c.objects.push_back(ident("an object name"));
          if (isPunct(","))
            next();
          else
            endOfEntry(atEnd);
        }
      } else if (section == "morphisms") {
        while (!atEnd()) {
          CategoryDecl::Morphism m;
          m.name = ident("a morphism name");
          expect(":");
          m.dom = ident("an object name");
          expect("->");
          m.cod = ident("an object name");
          c.morphisms.push_back(std::move(m));
          endOfEntry(atEnd);
        }
      } else if (section == "identity") {
        while (!atEnd()) {
          CategoryDecl::Identity d;
          d.object = ident("an object name");
          expect("=");
          d.morphism = ident("a morphism name");
          c.identities.push_back(std::move(d));
          endOfEntry(atEnd);
        }
      } else {
        while (!atEnd()) {
          CategoryDecl::Composite k;
          k.g = ident("a morphism name");
          expect(".");
          k.f = ident("a morphism name");
          expect("=");
          k.h = ident("a morphism name");
          c.compose.push_back(std::move(k));
          endOfEntry(atEnd);
        }
      }
    }
    expect("}");
    return c;
  }

  ConeDecl cone() {
    ConeDecl c;
    std::string kw = next().text;
    c.kind = kw == "cone"       ? ConeDecl::Kind::Product
             : kw == "terminal" ? ConeDecl::Kind::Terminal
                                : ConeDecl::Kind::Equalizer;
    c.name = ident("a cone name");
    if (isPunct(":")) {
      next();
      c.category = categoryRef();
    }
    expect("{");
    while (!isPunct("}")) {
      Ident key = ident("a field name");
      expect(":");
      Ident value = ident("a name");
      c.fields.emplace_back(std::move(key), std::move(value));
      if (isPunct(",") || isPunct(";"))
        next();
      else if (!isPunct("}"))
        fail(peek(), "unexpected token " + describe(peek()) + ", expected ',' or '}'");
    }
    expect("}");
    return c;
  }

  std::vector<Mapsto> table() {
    std::vector<Mapsto> out;
    expect("[");
    while (!isPunct("]")) {
      Mapsto m;
      m.from = ident("an element");
      expect("=>");
      m.to = ident("an element");
      out.push_back(std::move(m));
      if (isPunct(","))
        next();
      else if (!isPunct("]"))
        fail(peek(), "unexpected token " + describe(peek()) + ", expected ',' or ']'");
    }
    expect("]");
    return out;
  }

  FunctorDecl functor() {
    keyword("functor");
    FunctorDecl f;
    f.name = ident("a functor name");
    expect(":");
    f.category = categoryRef();
    expect("{");
    auto atEnd = [&] { return isPunct("}"); };
    while (!isPunct("}")) {
      Ident lhs = ident("an object or morphism name");
      expect("->");
      if (isPunct("{")) {
        next();
        FunctorDecl::Carrier c{lhs, {}};
        while (!isPunct("}")) {
          c.elements.push_back(ident("an element"));
          if (isPunct(","))
            next();
          else if (!isPunct("}"))
            fail(peek(), "unexpected token " + describe(peek()) + ", expected ',' or '}'");
        }
        next();
        f.carriers.push_back(std::move(c));
      } else if (isPunct("[")) {
        f.actions.push_back({lhs, table()});
      } else {
        fail(peek(), "unexpected token " + describe(peek()) + ", expected '{' or '['");
      }
      endOfEntry(atEnd);
    }
    expect("}");
    return f;
  }

  NatDecl nat() {
    keyword("nat");
    NatDecl n;
    n.name = ident("a transformation name");
    expect(":");
    n.from = ident("a functor name");
    expect("->");
    n.to = ident("a functor name");
    expect("{");
    auto atEnd = [&] { return isPunct("}"); };
    while (!isPunct("}")) {
      Ident obj = ident("an object name");
      expect(":");
      n.components.push_back({obj, table()});
      endOfEntry(atEnd);
    }
    expect("}");
    return n;
  }

  QueryDecl query() {
    keyword("query");
    QueryDecl q;
    q.name = ident("a query name");
    if (isPunct(":")) {
      next();
      q.functor = ident("a functor name");
    }
    expect("{");
    auto atEnd = [&] { return isPunct("}"); };
    while (!isPunct("}")) {
      const Token &t = peek();
      QueryDecl::Item item;
      item.pos = t.pos;
      if (t.kind == Tok::Ident && t.text == "normalize") {
        next();
        item.kind = QueryDecl::Item::Kind::Normalize;
        item.terms.push_back(string());
      } else if (t.kind == Tok::Ident && t.text == "equal") {
        next();
        item.kind = QueryDecl::Item::Kind::Equal;
        item.terms.push_back(string());
        item.terms.push_back(string());
      } else {
        fail(t, "unexpected token " + describe(t) + ", expected normalize or equal");
      }
      q.items.push_back(std::move(item));
      endOfEntry(atEnd);
    }
    expect("}");
    return q;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string printTable(const std::vector<Mapsto> &entries) {
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i)
    s += (i ? ", " : " ") + entries[i].from.name + " => " + entries[i].to.name;
  return s + (entries.empty() ? "]" : " ]");
}

} // namespace

SpecDocument parseDocument(std::string_view source) { return Parser(lex(source)).document(); }

std::string print(const SpecDocument &doc) {
  std::ostringstream out;
  bool first = true;
  for (const auto &decl : doc.declarations) {
    if (!first)
      out << "\n";
    first = false;
    if (auto *c = std::get_if<CategoryDecl>(&decl)) {
      out << "category " << c->name.name << " {\n";
      out << "  objects:";
      for (std::size_t i = 0; i < c->objects.size(); ++i)
        out << (i ? ", " : " ") << c->objects[i].name;
      out << ";\n";
      out << "  morphisms:\n";
      for (const auto &m : c->morphisms)
        out << "    " << m.name.name << " : " << m.dom.name << " -> " << m.cod.name << ";\n";
      if (!c->identities.empty()) {
        out << "  identity:\n";
        for (const auto &d : c->identities)
          out << "    " << d.object.name << " = " << d.morphism.name << ";\n";
      }
      out << "  compose:\n";
      for (const auto &k : c->compose)
        out << "    " << k.g.name << " . " << k.f.name << " = " << k.h.name << ";\n";
      out << "}\n";
    } else if (auto *k = std::get_if<ConeDecl>(&decl)) {
      out << (k->kind == ConeDecl::Kind::Product    ? "cone "
              : k->kind == ConeDecl::Kind::Terminal ? "terminal "
                                                    : "equalizer ")
          << k->name.name;
      if (k->category)
        out << " : " << k->category->str();
      out << " {";
      for (std::size_t i = 0; i < k->fields.size(); ++i)
        out << (i ? ", " : " ") << k->fields[i].first.name << ": " << k->fields[i].second.name;
      out << (k->fields.empty() ? "}\n" : " }\n");
    } else if (auto *f = std::get_if<FunctorDecl>(&decl)) {
      out << "functor " << f->name.name << " : " << f->category.str() << " {\n";
      for (const auto &c : f->carriers) {
        out << "  " << c.object.name << " -> {";
        for (std::size_t i = 0; i < c.elements.size(); ++i)
          out << (i ? ", " : " ") << c.elements[i].name;
        out << (c.elements.empty() ? "};\n" : " };\n");
      }
      for (const auto &a : f->actions)
        out << "  " << a.morphism.name << " -> " << printTable(a.entries) << ";\n";
      out << "}\n";
    } else if (auto *n = std::get_if<NatDecl>(&decl)) {
      out << "nat " << n->name.name << " : " << n->from.name << " -> " << n->to.name << " {\n";
      for (const auto &c : n->components)
        out << "  " << c.object.name << " : " << printTable(c.entries) << ";\n";
      out << "}\n";
    } else if (auto *q = std::get_if<QueryDecl>(&decl)) {
      out << "query " << q->name.name;
      if (q->functor)
        out << " : " << q->functor->name;
      out << " {\n";
      for (const auto &item : q->items) {
        out << "  " << (item.kind == QueryDecl::Item::Kind::Normalize ? "normalize" : "equal");
        for (const auto &t : item.terms)
          out << " " << quote(t);
        out << ";\n";
      }
      out << "}\n";
    }
  }
  return out.str();
}

} // namespace catwb::cli
