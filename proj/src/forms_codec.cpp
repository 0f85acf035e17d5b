#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

#include "cubics/forms.hpp"

namespace cubics::forms {

using gf::Field;

namespace {

const char kVars[3] = {'x', 'y', 'z'};

std::string monomial_string(const Exponent& e) {
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out.push_back('*');
    out.push_back(kVars[v]);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

template <std::size_t N>
std::string format_poly(const Field& f, const std::array<Elem, N>& c, const std::array<Exponent, N>& mono) {
  std::string out;
  const std::uint64_t p = f.characteristic();
  for (std::size_t i = 0; i < N; ++i) {
    if (c[i].is_zero()) continue;
    bool negative = false;
    std::string coeff;
    if (f.in_prime_field(c[i])) {
      std::uint64_t v = c[i].code;
      if (p > 2 && v > p / 2) {
        negative = true;
        v = p - v;
      }
      if (v != 1) coeff = std::to_string(v) + "*";
    } else {
      coeff = "{" + f.encode(c[i]) + "}*";
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff + monomial_string(mono[i]);
  }
  return out.empty() ? "0" : out;
}

class PolyParser {
 public:
  PolyParser(std::string_view text, const Field& f, int degree) : s_(text), f_(f), degree_(degree) {}

  std::map<Exponent, Elem> parse() {
    std::map<Exponent, Elem> terms;
    skip_ws();
    if (rest_is_zero()) return terms;
    bool negative = false;
    if (peek('+') || peek('-')) negative = s_[pos_++] == '-';
    while (true) {
      auto [exp, coeff] = parse_term();
      if (negative) coeff = f_.neg(coeff);
      const int deg = exp[0] + exp[1] + exp[2];
      if (deg != degree_) fail("term of degree " + std::to_string(deg) + ", expected " + std::to_string(degree_));
      auto it = terms.find(exp);
      if (it == terms.end())
        terms.emplace(exp, coeff);
      else
        it->second = f_.add(it->second, coeff);
      skip_ws();
      if (pos_ == s_.size()) break;
      if (!(peek('+') || peek('-'))) fail("expected '+' or '-'");
      negative = s_[pos_++] == '-';
    }
    return terms;
  }

 private:
  bool rest_is_zero() const {
    std::size_t i = pos_;
    while (i < s_.size() && s_[i] == '0') ++i;
    std::size_t j = i;
    while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
    return i > pos_ && j == s_.size();
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse form '" + std::string(s_) + "' at offset " + std::to_string(pos_) +
                                ": " + what);
  }
  std::int64_t parse_int() {
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (std::int64_t{1} << 55)) fail("integer too large");
      v = v * 10 + (s_[pos_++] - '0');
    }
    if (pos_ == start) fail("expected an integer");
    return v;
  }

  std::pair<Exponent, Elem> parse_term() {
    Exponent exp{0, 0, 0};
    Elem coeff = f_.one();
    bool any = false;
    bool need_factor = false;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff = f_.mul(coeff, f_.from_int(parse_int()));
      } else if (c == '{') {
        const auto close = s_.find('}', pos_);
        if (close == std::string_view::npos) fail("unterminated '{'");
        coeff = f_.mul(coeff, f_.decode(s_.substr(pos_ + 1, close - pos_ - 1)));
        pos_ = close + 1;
      } else if (c == 'x' || c == 'y' || c == 'z') {
        ++pos_;
        int power = 1;
        skip_ws();
        if (peek('^')) {
          ++pos_;
          skip_ws();
          power = static_cast<int>(parse_int());
        }
        exp[c - 'x'] += power;
      } else if (c == '*') {
        if (!any) fail("'*' without a left operand");
        ++pos_;
        need_factor = true;
        continue;
      } else {
        break;
      }
      any = true;
      need_factor = false;
    }
    if (!any || need_factor) fail("expected a term");
    return {exp, coeff};
  }

  std::string_view s_;
  const Field& f_;
  int degree_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const CubicForm& F) { return format_poly(F.f(), F.coeffs(), kCubicMonomials); }
std::string to_string(const ConicForm& Q) { return format_poly(Q.f(), Q.coeffs(), kConicMonomials); }
std::string to_string(const LinearForm& L) { return format_poly(L.f(), L.coeffs(), kLinearMonomials); }

CubicForm parse_cubic(std::string_view text, const FieldPtr& field) {
  CubicForm F(field);
  for (const auto& [exp, coeff] : PolyParser(text, *field, 3).parse()) F[cubic_index(exp)] = coeff;
  return F;
}

LinearForm parse_linear(std::string_view text, const FieldPtr& field) {
  LinearForm L(field);
  for (const auto& [exp, coeff] : PolyParser(text, *field, 1).parse()) {
    for (int v = 0; v < 3; ++v)
      if (exp[v] == 1) L[v] = coeff;
  }
  return L;
}

}  // namespace cubics::forms
