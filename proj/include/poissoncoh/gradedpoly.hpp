#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poissoncoh/rational.hpp"

namespace poissoncoh {

/// Exponent vector of a monomial; one entry per context variable.
using Exponent = std::vector<int>;

/// Variables, their positive weights and the weight loss `l` of the bracket:
/// deg{a,b} = deg a + deg b - l for homogeneous a, b.
class WeightedContext {
 public:
  WeightedContext() = default;
  WeightedContext(std::vector<std::string> variables, std::vector<int> weights, int bracket_weight);

  std::size_t size() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<int>& weights() const { return weights_; }
  int bracket_weight() const { return bracket_weight_; }
  const std::string& name(std::size_t i) const { return variables_.at(i); }
  int weight(std::size_t i) const { return weights_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const;

  int weight(const Exponent& e) const;

  friend bool operator==(const WeightedContext&, const WeightedContext&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<int> weights_;
  int bracket_weight_ = 0;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored. A default-constructed polynomial is the zero polynomial in
/// zero variables and adopts the variable count of whatever it is combined
/// with.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);
  static Polynomial monomial(Exponent e, const Rational& c = 1);

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term if the polynomial is constant (zero counts as constant 0).
  std::optional<Rational> constant_value() const;
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial derivative(std::size_t var) const;
  int total_degree() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned exponent) const;

 private:
  void adopt(const Polynomial& o);

  std::size_t num_vars_ = 0;
  Terms terms_;
};

/// Quotient of the polynomial ring by one weighted-homogeneous relation whose
/// leading monomial is a pure power of a single variable.
class QuotientPresentation {
 public:
  /// Validates homogeneity and the pure-power leading monomial.
  QuotientPresentation(const WeightedContext& ctx, Polynomial relation, Exponent leading_monomial);
  /// Picks the graded-lex largest pure-power monomial of the relation.
  static QuotientPresentation with_default_leading(const WeightedContext& ctx, Polynomial relation);

  const Polynomial& relation() const { return relation_; }
  const Exponent& leading_monomial() const { return leading_; }
  std::size_t leading_variable() const { return leading_var_; }
  int leading_power() const { return leading_power_; }
  bool reducible(const Exponent& e) const { return e[leading_var_] >= leading_power_; }

 private:
  Polynomial relation_;
  Exponent leading_;
  std::size_t leading_var_ = 0;
  int leading_power_ = 0;
  Rational leading_coeff_;

  friend Polynomial normal_form(const Polynomial& p, const QuotientPresentation& q);
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct UnknownVariable : ParseError {
  UnknownVariable(std::string name, std::size_t offset)
      : ParseError("unknown variable '" + name + "'", offset), name(std::move(name)) {}
  std::string name;
};

Polynomial parse_polynomial(std::string_view source, const WeightedContext& ctx);

/// Canonical textual form, parseable by parse_polynomial. Terms appear in
/// descending graded-lex order.
std::string to_string(const Polynomial& p, const WeightedContext& ctx);
std::string monomial_to_string(const Exponent& e, const WeightedContext& ctx);

/// Homogeneous weight of p, or nullopt if p is zero or mixed.
std::optional<int> homogeneous_weight(const Polynomial& p, const WeightedContext& ctx);

std::vector<std::pair<int, Polynomial>> weight_decompose(const Polynomial& p, const WeightedContext& ctx);

Polynomial normal_form(const Polynomial& p, const QuotientPresentation& q);
inline Polynomial normal_form(const Polynomial& p, const std::optional<QuotientPresentation>& q) {
  return q ? normal_form(p, *q) : p;
}

/// Graded-lex comparison: lower weight first, then lexicographically larger
/// exponent vectors first (x^2 before xy before y^2).
bool graded_lex_less(const Exponent& a, const Exponent& b, const WeightedContext& ctx);

/// All exponent vectors of the given weight (no quotient filter), graded-lex order.
std::vector<Exponent> exponents_of_weight(const WeightedContext& ctx, int weight);

/// Normal-form monomials of the given weight.
std::vector<Polynomial> monomial_basis(const WeightedContext& ctx, int weight,
                                       const std::optional<QuotientPresentation>& q = std::nullopt);
std::vector<Exponent> monomial_exponents(const WeightedContext& ctx, int weight,
                                         const std::optional<QuotientPresentation>& q = std::nullopt);

}  // namespace poissoncoh
