#include "catwb/msa/parse.hpp"

#include <cctype>
#include <vector>

namespace catwb::msa {

namespace {

bool nameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' ||
         c == '-';
}

class Parser {
public:
  Parser(const Signature &sig, std::string_view text) : sig_(sig), text_(text) {}

  Term parse() {
    PreTerm t = term();
    skip();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return elaborate(t, sig_);
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string &msg) { throw ParseError(msg, pos_ + 1); }

  PreTerm term() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && nameChar(text_[pos_]))
      ++pos_;
    if (start == pos_)
      fail(pos_ < text_.size() ? "expected a name, got '" + std::string(1, text_[pos_]) + "'"
                               : "expected a name at end of input");
    std::string name(text_.substr(start, pos_ - start));
    auto sym = sig_.findSymbol(name);
    if (!sym) {
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    std::vector<PreTerm> args;
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        for (;;) {
          args.push_back(term());
          skip();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    return PreTerm::app(*sym, std::move(args));
  }

  const Signature &sig_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Term parseTerm(const Signature &sig, std::string_view text) { return Parser(sig, text).parse(); }

} // namespace catwb::msa
