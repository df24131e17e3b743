#include "wtrace/expr_parse.hpp"

#include <regex>
#include <stdexcept>
#include <vector>

namespace wtrace {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == '*') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

BlockBandOperator parse_factor(const std::string& tok, Convention conv,
                               int d, int depth) {
  static const std::regex re_abs(R"(^\|D\+P\|(?:\^(-?[0-9]*\.?[0-9]+))?$)");
  static const std::regex re_lap(R"(^\(D\^2\+P\)(?:\^(-?[0-9]*\.?[0-9]+))?$)");
  static const std::regex re_mult(R"(^M\(z(?:\^(-?[0-9]+))?\)$)");
  std::smatch m;
  if (tok == "D0") return d0_op(d, conv);
  if (tok == "eps") return epsilon_sign(d, conv);
  if (tok == "Id") return identity_op(d, conv);
  if (std::regex_match(tok, m, re_abs)) {
    const double s = m[1].matched ? std::stod(m[1].str()) : 1.0;
    return weight_power(DiagonalWeight::abs_d_plus(), s, d, conv, depth);
  }
  if (std::regex_match(tok, m, re_lap)) {
    const double s = m[1].matched ? std::stod(m[1].str()) : 1.0;
    return weight_power(DiagonalWeight::laplace_plus(), s, d, conv, depth);
  }
  if (std::regex_match(tok, m, re_mult)) {
    const int k = m[1].matched ? std::stoi(m[1].str()) : 1;
    return scalar_multiplier({{k, cplx(1.0, 0.0)}}, d, conv);
  }
  throw std::invalid_argument("unknown operator factor: '" + tok + "'");
}

}  // namespace

LoopElement parse_loop_monomial(const std::string& text,
                                const AlgebraPtr& alg) {
  static const std::regex re(
      R"(^(?:z(?:\^(-?[0-9]+))?\s+)?e([0-9]+)$)");
  const std::string s = trim(text);
  std::smatch m;
  if (!std::regex_match(s, m, re)) {
    throw std::invalid_argument("cannot parse loop monomial: '" + text +
                                "' (expected forms: e0, z e1, z^-2 e1)");
  }
  int mode = 0;
  if (m[1].matched) {
    mode = std::stoi(m[1].str());
  } else if (s.front() == 'z') {
    mode = 1;
  }
  const int basis = std::stoi(m[2].str());
  if (!alg) throw std::invalid_argument("loop monomial needs an algebra");
  if (basis >= alg->dim()) {
    throw std::invalid_argument("basis index e" + std::to_string(basis) +
                                " out of range for dimension " +
                                std::to_string(alg->dim()));
  }
  return LoopElement::monomial(alg, mode, alg->basis(basis));
}

BlockBandOperator parse_operator_expr(const std::string& text,
                                      Convention conv, int fibre_dim,
                                      int depth) {
  if (fibre_dim < 1) {
    throw std::invalid_argument("fibre dimension must be positive");
  }
  const auto parts = split_product(text);
  if (parts.empty() || parts.front().empty()) {
    throw std::invalid_argument("empty operator expression");
  }
  BlockBandOperator acc = parse_factor(parts[0], conv, fibre_dim, depth);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].empty()) {
      throw std::invalid_argument("empty factor in operator expression: '" +
                                  text + "'");
    }
    acc = compose(acc, parse_factor(parts[i], conv, fibre_dim, depth), depth);
  }
  return acc;
}

}  // namespace wtrace
