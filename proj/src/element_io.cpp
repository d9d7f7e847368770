#include "adlv/element_io.hpp"

#include <cctype>

#include "adlv/error.hpp"

namespace adlv {

namespace {

[[noreturn]] void parse_fail(const std::string& msg, size_t pos) {
  fail("ParseError", msg + " at position " + std::to_string(pos));
}

struct Scanner {
  const std::string& s;
  size_t pos = 0;

  void skip_separators() {
    while (pos < s.size() && (std::isspace((unsigned char)s[pos]) || s[pos] == '*'))
      ++pos;
  }
  bool done() const { return pos >= s.size(); }

  Int read_int() {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
      ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
      ++pos;
    if (pos == digits)
      parse_fail("expected an integer", start);
    return std::stol(s.substr(start, pos - start));
  }
};

}  // namespace

AffineElement parse_element(const RootDatum& rd, const std::string& text) {
  Scanner sc{text};
  AffineElement acc = identity_element(rd);
  bool any = false;
  sc.skip_separators();
  while (!sc.done()) {
    size_t start = sc.pos;
    char c = text[sc.pos];
    if (c == 'e') {
      ++sc.pos;
    } else if (c == 't') {
      ++sc.pos;
      if (sc.done() || text[sc.pos] != '[')
        parse_fail("expected '[' after 't'", sc.pos);
      ++sc.pos;
      IVec lam;
      while (true) {
        while (sc.pos < text.size() && std::isspace((unsigned char)text[sc.pos]))
          ++sc.pos;
        lam.push_back(sc.read_int());
        while (sc.pos < text.size() && std::isspace((unsigned char)text[sc.pos]))
          ++sc.pos;
        if (sc.done())
          parse_fail("unterminated translation", start);
        if (text[sc.pos] == ',') {
          ++sc.pos;
          continue;
        }
        if (text[sc.pos] == ']') {
          ++sc.pos;
          break;
        }
        parse_fail("expected ',' or ']'", sc.pos);
      }
      if ((int)lam.size() != rd.rank())
        parse_fail("translation needs " + std::to_string(rd.rank()) +
                       " coordinates",
                   start);
      acc = compose(acc, translation_element(rd, lam));
    } else if (c == 's') {
      ++sc.pos;
      if (sc.done() || !std::isdigit((unsigned char)text[sc.pos]))
        parse_fail("expected a generator number after 's'", sc.pos);
      Int n = sc.read_int();
      if (n == 0) {
        Int comp = 1;
        if (!sc.done() && text[sc.pos] == '@') {
          ++sc.pos;
          comp = sc.read_int();
        } else if (rd.components().size() > 1) {
          fail("UnknownGenerator",
               "'s0' is ambiguous, use 's0@c' (at position " +
                   std::to_string(start) + ")");
        }
        if (comp < 1 || comp > (Int)rd.components().size())
          fail("UnknownGenerator", "no component " + std::to_string(comp) +
                                       " (at position " +
                                       std::to_string(start) + ")");
        acc = compose(acc, affine_generator(rd, rd.rank() + (int)comp - 1));
      } else {
        if (n < 1 || n > rd.rank())
          fail("UnknownGenerator", "no node " + std::to_string(n) +
                                       " (at position " +
                                       std::to_string(start) + ")");
        acc = compose(acc, affine_generator(rd, (int)n - 1));
      }
    } else {
      parse_fail(std::string("unexpected character '") + c + "'", sc.pos);
    }
    any = true;
    size_t before = sc.pos;
    sc.skip_separators();
    if (!sc.done() && sc.pos == before)
      parse_fail("expected a separator", sc.pos);
  }
  if (!any)
    parse_fail("empty element", 0);
  return acc;
}

std::string print_weyl(const RootDatum& rd, int w) {
  std::vector<int> nodes = rd.weyl().word(w);
  if (nodes.empty())
    return "e";
  std::string out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i)
      out += '*';
    out += "s" + std::to_string(nodes[i] + 1);
  }
  return out;
}

std::string print_element(const AffineElement& x) {
  const RootDatum& rd = *x.datum;
  std::string tpart;
  if (!ivec_is_zero(x.lambda)) {
    tpart = "t[";
    for (int i = 0; i < rd.rank(); ++i) {
      if (i)
        tpart += ',';
      tpart += std::to_string(x.lambda[i]);
    }
    tpart += ']';
  }
  if (x.w == 0)
    return tpart.empty() ? "e" : tpart;
  std::string wpart = print_weyl(rd, x.w);
  return tpart.empty() ? wpart : tpart + "*" + wpart;
}

}  // namespace adlv
