#include "degen/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace degen {

int expo_degree(const Expo& e) {
  int d = 0;
  for (int c : e) d += c;
  return d;
}

bool grevlex_greater(const Expo& x, const Expo& y) {
  int dx = expo_degree(x), dy = expo_degree(y);
  if (dx != dy) return dx > dy;
  for (size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

namespace {

void check_shape(const Polynomial& a, const Polynomial& b) {
  if (a.nvars != b.nvars) fail(ErrCode::ShapeMismatch, "variable counts differ");
}

}  // namespace

Polynomial make_poly(int nvars, std::vector<std::pair<Expo, Rat>> terms) {
  std::map<Expo, Rat> merged;
  for (auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != nvars)
      fail(ErrCode::ShapeMismatch, "monomial arity differs from variable count");
    for (int x : e)
      if (x < 0) fail(ErrCode::ConsistencyError, "negative exponent in monomial");
    if (c == 0) continue;
    auto [it, fresh] = merged.emplace(std::move(e), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) merged.erase(it);
    }
  }
  Polynomial out;
  out.nvars = nvars;
  out.terms.assign(merged.begin(), merged.end());
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& s, const auto& t) { return grevlex_greater(s.first, t.first); });
  return out;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  check_shape(a, b);
  std::vector<std::pair<Expo, Rat>> terms = a.terms;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return make_poly(a.nvars, std::move(terms));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
  return poly_add(a, poly_scale(b, Rat(-1)));
}

Polynomial poly_scale(const Polynomial& a, const Rat& c) {
  if (c == 0) return Polynomial{a.nvars, {}};
  Polynomial out = a;
  for (auto& [e, coeff] : out.terms) coeff *= c;
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  check_shape(a, b);
  std::vector<std::pair<Expo, Rat>> terms;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Expo e(a.nvars);
      for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      terms.emplace_back(std::move(e), ca * cb);
    }
  return make_poly(a.nvars, std::move(terms));
}

Polynomial poly_mul_term(const Polynomial& a, const Expo& e, const Rat& c) {
  if (static_cast<int>(e.size()) != a.nvars)
    fail(ErrCode::ShapeMismatch, "monomial arity differs from variable count");
  if (c == 0) return Polynomial{a.nvars, {}};
  Polynomial out = a;
  for (auto& [ex, coeff] : out.terms) {
    for (int i = 0; i < a.nvars; ++i) ex[i] += e[i];
    coeff *= c;
  }
  return out;
}

int poly_degree(const Polynomial& a) {
  int d = -1;
  for (const auto& [e, c] : a.terms) d = std::max(d, expo_degree(e));
  return d;
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
  if (a.nvars != b.nvars) return a.nvars < b.nvars;
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.terms[i].first != b.terms[i].first)
      return grevlex_greater(a.terms[i].first, b.terms[i].first);
    if (a.terms[i].second != b.terms[i].second) return a.terms[i].second < b.terms[i].second;
  }
  return a.terms.size() < b.terms.size();
}

std::string poly_to_string(const Polynomial& a, const std::vector<std::string>& vars) {
  if (static_cast<int>(vars.size()) != a.nvars)
    fail(ErrCode::ShapeMismatch, "variable name count differs");
  if (a.terms.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : a.terms) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int i = 0; i < a.nvars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      s += rat_to_string(mag);
    } else if (mag == 1) {
      s += mono;
    } else {
      s += rat_to_string(mag) + "*" + mono;
    }
  }
  return s;
}

namespace {

struct PolyParser {
  const std::string& s;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  [[noreturn]] void die(const std::string& message) const {
    fail(ErrCode::ParseError,
         message + " in polynomial '" + s + "' at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  long parse_integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) die("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  Rat parse_rational() {
    long num = parse_integer();
    skip_ws();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      long den = parse_integer();
      if (den == 0) die("zero denominator");
      return make_rat(num, den);
    }
    return make_rat(num);
  }

  int parse_var() {
    skip_ws();
    size_t best = vars.size();
    size_t best_len = 0;
    for (size_t i = 0; i < vars.size(); ++i) {
      const std::string& name = vars[i];
      if (name.size() > best_len && s.compare(pos, name.size(), name) == 0) {
        best = i;
        best_len = name.size();
      }
    }
    if (best == vars.size()) die("unknown variable");
    pos += best_len;
    return static_cast<int>(best);
  }

  // term := [rational] {'*'|nothing}{var ['^' int]}*
  std::pair<Expo, Rat> parse_term() {
    Expo e(vars.size(), 0);
    Rat c(1);
    bool saw_factor = false;
    skip_ws();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      c = parse_rational();
      saw_factor = true;
    }
    while (true) {
      skip_ws();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        skip_ws();
      }
      if (pos >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[pos])) ||
                               std::isdigit(static_cast<unsigned char>(s[pos]))))
        break;
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) die("misplaced number");
      int v = parse_var();
      int k = 1;
      skip_ws();
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        k = static_cast<int>(parse_integer());
        if (k < 0) die("negative exponent");
      }
      e[v] += k;
      saw_factor = true;
    }
    if (!saw_factor) die("expected term");
    return {std::move(e), std::move(c)};
  }
};

}  // namespace

Polynomial parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  PolyParser p{text, vars};
  std::vector<std::pair<Expo, Rat>> terms;
  bool negative = false;
  p.skip_ws();
  if (p.pos < text.size() && (text[p.pos] == '+' || text[p.pos] == '-')) {
    negative = text[p.pos] == '-';
    ++p.pos;
  }
  while (true) {
    auto [e, c] = p.parse_term();
    terms.emplace_back(std::move(e), negative ? Rat(-c) : c);
    if (p.at_end()) break;
    if (text[p.pos] == '+') {
      negative = false;
    } else if (text[p.pos] == '-') {
      negative = true;
    } else {
      p.die("expected '+' or '-'");
    }
    ++p.pos;
  }
  return make_poly(static_cast<int>(vars.size()), std::move(terms));
}

}  // namespace degen
