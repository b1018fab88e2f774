#include "detail/term_parser.hpp"

#include <cctype>
#include <string>

#include "qhfol/error.hpp"

namespace qhfol::detail {
namespace {

class TermParser {
 public:
  TermParser(std::string_view text, std::string_view vars) : s_(text), vars_(vars) {}

  std::vector<std::pair<Exponents, Rat>> run() {
    std::vector<std::pair<Exponents, Rat>> out;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto term = parse_term();
      term.second *= sign;
      out.push_back(std::move(term));
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

 private:
  std::pair<Exponents, Rat> parse_term() {
    Exponents e{0, 0};
    Rat coef(1);
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) fail("expected a factor");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef *= parse_number();
      } else if (auto k = vars_.find(c); k != std::string_view::npos) {
        ++pos_;
        skip_ws();
        unsigned power = 1;
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          power = parse_uint();
        }
        e[k] += power;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return {e, coef};
  }

  Rat parse_number() {
    std::size_t start = pos_;
    BigInt num(digits());
    BigInt den(1);
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected denominator");
      den = BigInt(digits());
      if (den == 0) {
        pos_ = start;
        fail("zero denominator");
      }
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  unsigned parse_uint() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected integer exponent");
    std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(d));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                "parse error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  std::string_view s_;
  std::string_view vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::pair<Exponents, Rat>> parse_terms(std::string_view text, std::string_view vars) {
  return TermParser(text, vars).run();
}

}  // namespace qhfol::detail
