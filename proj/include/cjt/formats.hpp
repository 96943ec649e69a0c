// Line-oriented text formats for modules and resolution specs, and the
// builtin:<name> module shorthands. '#' starts a comment.
//
// Module file:  p r n, then r blocks of n rows of n integers (X_1 .. X_r).
// Spec file:    p r L
//               level i: a_1 ... a_m        (one line per level 0..L)
//               map i                       (L_i -> L_{i-1}, i = 1..L)
//               row col : c e_1 .. e_r [+ c e_1 .. e_r ...]

#ifndef CJT_FORMATS_HPP_
#define CJT_FORMATS_HPP_

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cjt/kemod.hpp"
#include "cjt/realize.hpp"

namespace cjt {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& msg)
      : Error(source + ":" + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

namespace detail {

struct Line {
  std::size_t number;
  std::string text;
};

inline std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string s;
  std::size_t n = 0;
  while (std::getline(in, s)) {
    ++n;
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({n, s});
  }
  return out;
}

inline std::vector<long> integers(const Line& l, const std::string& src) {
  std::istringstream is(l.text);
  std::vector<long> v;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      long x = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      v.push_back(x);
    } catch (const std::logic_error&) {
      throw ParseError(src, l.number, "expected an integer, got '" + tok + "'");
    }
  }
  return v;
}

inline void check_pr(int p, int r, const std::string& src, std::size_t line) {
  if (!is_prime(p) || p > Field::kMaxPrime) throw ParseError(src, line, "p must be a prime <= 13");
  if (r < 1) throw ParseError(src, line, "r must be positive");
}

}  // namespace detail

inline KEModule parse_module(std::istream& in, const std::string& src = "<module>") {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(src, 1, "empty module file");
  auto head = detail::integers(lines[0], src);
  if (head.size() != 3) throw ParseError(src, lines[0].number, "header must be 'p r n'");
  int p = static_cast<int>(head[0]), r = static_cast<int>(head[1]);
  detail::check_pr(p, r, src, lines[0].number);
  if (head[2] < 0) throw ParseError(src, lines[0].number, "n must be nonnegative");
  std::size_t n = static_cast<std::size_t>(head[2]);
  if (lines.size() != 1 + r * n)
    throw ParseError(src, lines.back().number,
                     "expected " + std::to_string(r * n) + " matrix rows, found " + std::to_string(lines.size() - 1));
  auto f = Field::make(p);
  std::vector<FFMatrix> xs;
  std::size_t at = 1;
  for (int i = 0; i < r; ++i) {
    FFMatrix x(f, n, n);
    for (std::size_t row = 0; row < n; ++row, ++at) {
      auto v = detail::integers(lines[at], src);
      if (v.size() != n)
        throw ParseError(src, lines[at].number, "expected " + std::to_string(n) + " entries in row of X_" +
                                                    std::to_string(i + 1));
      for (std::size_t c = 0; c < n; ++c) x(row, c) = f->from_int(v[c]);
    }
    xs.push_back(std::move(x));
  }
  return KEModule::make(p, r, std::move(xs));
}

inline std::string print_module(const KEModule& m) {
  std::ostringstream os;
  os << m.p() << " " << m.r() << " " << m.dim() << "\n";
  for (int i = 0; i < m.r(); ++i) {
    os << "# X_" << i + 1 << "\n";
    const auto& x = m.action(i);
    for (std::size_t row = 0; row < m.dim(); ++row) {
      for (std::size_t c = 0; c < m.dim(); ++c) os << (c ? " " : "") << x(row, c);
      os << "\n";
    }
  }
  return os.str();
}

/// builtin:trivial, regular, radq<m>, perm<i>, zigzag<n>, omega<n> (n may be
/// negative). Returns nullopt when `name` is not a builtin reference.
inline std::optional<KEModule> builtin_module(const std::string& name, int p, int r) {
  const std::string prefix = "builtin:";
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  std::smatch mt;
  if (rest == "trivial") return trivial_module(p, r);
  if (rest == "regular") return regular_module(p, r);
  if (std::regex_match(rest, mt, std::regex("radq([0-9]+)"))) return rad_quotient(p, r, std::stoi(mt[1]));
  if (std::regex_match(rest, mt, std::regex("perm([0-9]+)"))) return perm_module(p, r, std::stoi(mt[1]));
  if (std::regex_match(rest, mt, std::regex("zigzag([0-9]+)"))) return zigzag_module(p, r, std::stoi(mt[1]));
  if (std::regex_match(rest, mt, std::regex("omega(-?[0-9]+)"))) return omega(trivial_module(p, r), std::stoi(mt[1]));
  throw Error("unknown builtin module '" + rest + "'");
}

inline KEModule load_module(const std::string& ref, int p, int r) {
  if (auto b = builtin_module(ref, p, r)) return *b;
  std::ifstream in(ref);
  if (!in) throw Error("cannot open module file '" + ref + "'");
  return parse_module(in, ref);
}

// ---------------------------------------------------------------------------
// Resolution specs

inline ResolutionSpec parse_spec(std::istream& in, const std::string& src = "<spec>") {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(src, 1, "empty spec file");
  auto head = detail::integers(lines[0], src);
  if (head.size() != 3) throw ParseError(src, lines[0].number, "header must be 'p r L'");
  ResolutionSpec spec;
  spec.p = static_cast<int>(head[0]);
  spec.r = static_cast<int>(head[1]);
  detail::check_pr(spec.p, spec.r, src, lines[0].number);
  if (head[2] < 0) throw ParseError(src, lines[0].number, "L must be nonnegative");
  const std::size_t L = static_cast<std::size_t>(head[2]);
  std::size_t at = 1;
  static const std::regex level_re(R"(\s*level\s+([0-9]+)\s*:(.*))");
  static const std::regex map_re(R"(\s*map\s+([0-9]+)\s*)");
  static const std::regex entry_re(R"(\s*([0-9]+)\s+([0-9]+)\s*:(.*))");
  for (std::size_t i = 0; i <= L; ++i, ++at) {
    if (at >= lines.size()) throw ParseError(src, lines.back().number, "missing 'level " + std::to_string(i) + ":'");
    std::smatch mt;
    if (!std::regex_match(lines[at].text, mt, level_re) || std::stoul(mt[1]) != i)
      throw ParseError(src, lines[at].number, "expected 'level " + std::to_string(i) + ": twists'");
    std::vector<long> tw = detail::integers({lines[at].number, mt[2]}, src);
    if (tw.empty()) throw ParseError(src, lines[at].number, "level has no twists");
    spec.twists.push_back(std::move(tw));
  }
  for (std::size_t i = 1; i <= L; ++i) {
    std::smatch mt;
    if (at >= lines.size() || !std::regex_match(lines[at].text, mt, map_re) || std::stoul(mt[1]) != i)
      throw ParseError(src, at < lines.size() ? lines[at].number : lines.back().number,
                       "expected 'map " + std::to_string(i) + "'");
    ++at;
    PolyMatrix m(spec.twists[i - 1].size(), std::vector<Polynomial>(spec.twists[i].size()));
    while (at < lines.size() && std::regex_match(lines[at].text, mt, entry_re)) {
      std::size_t row = std::stoul(mt[1]), col = std::stoul(mt[2]);
      const auto num = lines[at].number;
      if (row < 1 || row > m.size() || col < 1 || col > m[0].size())
        throw ParseError(src, num, "entry (" + std::to_string(row) + "," + std::to_string(col) + ") out of range");
      std::string body = mt[3];
      std::size_t start = 0;
      while (start <= body.size()) {
        std::size_t plus = body.find('+', start);
        std::string term = body.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        auto v = detail::integers({num, term}, src);
        if (v.size() != static_cast<std::size_t>(spec.r) + 1)
          throw ParseError(src, num, "each term needs a coefficient and " + std::to_string(spec.r) + " exponents");
        std::vector<int> e(v.begin() + 1, v.end());
        for (int x : e)
          if (x < 0) throw ParseError(src, num, "negative exponent");
        m[row - 1][col - 1].add_term(spec.p, e, v[0]);
        if (plus == std::string::npos) break;
        start = plus + 1;
      }
      ++at;
    }
    spec.maps.push_back(std::move(m));
  }
  if (at != lines.size()) throw ParseError(src, lines[at].number, "unexpected line");
  try {
    spec.validate();
  } catch (const SpecInvalid& e) {
    throw SpecInvalid(src + ": " + e.what());
  }
  return spec;
}

inline ResolutionSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file '" + path + "'");
  return parse_spec(in, path);
}

inline std::string print_spec(const ResolutionSpec& s) {
  std::ostringstream os;
  os << s.p << " " << s.r << " " << s.length() << "\n";
  for (std::size_t i = 0; i < s.twists.size(); ++i) {
    os << "level " << i << ":";
    for (long a : s.twists[i]) os << " " << a;
    os << "\n";
  }
  for (std::size_t i = 0; i < s.maps.size(); ++i) {
    os << "map " << i + 1 << "\n";
    for (std::size_t row = 0; row < s.maps[i].size(); ++row)
      for (std::size_t col = 0; col < s.maps[i][row].size(); ++col) {
        const auto& f = s.maps[i][row][col];
        if (f.is_zero()) continue;
        os << row + 1 << " " << col + 1 << " :";
        bool first = true;
        for (const auto& [e, c] : f.terms) {
          os << (first ? " " : " + ") << c;
          for (int x : e) os << " " << x;
          first = false;
        }
        os << "\n";
      }
  }
  return os.str();
}

}  // namespace cjt

#endif  // CJT_FORMATS_HPP_
