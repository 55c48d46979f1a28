#include "poissoncoh/gradedpoly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace poissoncoh {

WeightedContext::WeightedContext(std::vector<std::string> variables, std::vector<int> weights, int bracket_weight)
    : variables_(std::move(variables)), weights_(std::move(weights)), bracket_weight_(bracket_weight) {
  if (variables_.size() != weights_.size())
    throw std::invalid_argument("WeightedContext: one weight per variable required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (weights_[i] <= 0)
      throw std::invalid_argument("WeightedContext: weight of '" + variables_[i] + "' must be positive");
    if (!seen.insert(variables_[i]).second)
      throw std::invalid_argument("WeightedContext: duplicate variable '" + variables_[i] + "'");
  }
}

std::optional<std::size_t> WeightedContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

int WeightedContext::weight(const Exponent& e) const {
  int w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * weights_[i];
  return w;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  Exponent e(num_vars, 0);
  e.at(index) = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponent e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

std::optional<Rational> Polynomial::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (poissoncoh::is_zero(c)) return;
  if (num_vars_ == 0 && terms_.empty()) num_vars_ = e.size();
  if (e.size() != num_vars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (poissoncoh::is_zero(it->second)) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.terms_.emplace(std::move(d), c * e[var]);
  }
  return out;
}

int Polynomial::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

void Polynomial::adopt(const Polynomial& o) {
  if (num_vars_ == 0 && terms_.empty()) num_vars_ = o.num_vars_;
  if (o.num_vars_ != num_vars_ && !(o.num_vars_ == 0 && o.terms_.empty()))
    throw std::invalid_argument("Polynomial: variable count mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.num_vars_ ? a.num_vars_ : b.num_vars_);
  out.adopt(a);
  out.adopt(b);
  Exponent e(out.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (poissoncoh::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
  return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(num_vars_, 1);
  for (unsigned k = 0; k < exponent; ++k) result *= *this;
  return result;
}

// ---------------------------------------------------------------------------

bool graded_lex_less(const Exponent& a, const Exponent& b, const WeightedContext& ctx) {
  int wa = ctx.weight(a), wb = ctx.weight(b);
  if (wa != wb) return wa < wb;
  return a > b;
}

std::optional<int> homogeneous_weight(const Polynomial& p, const WeightedContext& ctx) {
  std::optional<int> w;
  for (const auto& [e, c] : p.terms()) {
    int we = ctx.weight(e);
    if (w && *w != we) return std::nullopt;
    w = we;
  }
  return w;
}

std::vector<std::pair<int, Polynomial>> weight_decompose(const Polynomial& p, const WeightedContext& ctx) {
  std::map<int, Polynomial> parts;
  for (const auto& [e, c] : p.terms()) {
    auto [it, inserted] = parts.try_emplace(ctx.weight(e), p.num_vars());
    it->second.add_term(e, c);
  }
  return {std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end())};
}

QuotientPresentation::QuotientPresentation(const WeightedContext& ctx, Polynomial relation, Exponent leading_monomial)
    : relation_(std::move(relation)), leading_(std::move(leading_monomial)) {
  if (relation_.is_zero()) throw std::invalid_argument("QuotientPresentation: zero relation");
  if (relation_.num_vars() != ctx.size() || leading_.size() != ctx.size())
    throw std::invalid_argument("QuotientPresentation: variable count mismatch");
  if (!homogeneous_weight(relation_, ctx))
    throw std::invalid_argument("QuotientPresentation: relation is not weighted-homogeneous");
  int nonzero = 0;
  for (std::size_t i = 0; i < leading_.size(); ++i)
    if (leading_[i] > 0) {
      ++nonzero;
      leading_var_ = i;
      leading_power_ = leading_[i];
    }
  if (nonzero != 1) throw std::invalid_argument("QuotientPresentation: leading monomial must be a pure power");
  leading_coeff_ = relation_.coefficient(leading_);
  if (is_zero(leading_coeff_))
    throw std::invalid_argument("QuotientPresentation: leading monomial does not occur in the relation");
}

QuotientPresentation QuotientPresentation::with_default_leading(const WeightedContext& ctx, Polynomial relation) {
  std::optional<Exponent> best;
  for (const auto& [e, c] : relation.terms()) {
    int nonzero = static_cast<int>(std::count_if(e.begin(), e.end(), [](int k) { return k > 0; }));
    if (nonzero != 1) continue;
    if (!best || graded_lex_less(e, *best, ctx)) best = e;
  }
  if (!best) throw std::invalid_argument("QuotientPresentation: relation has no pure-power monomial");
  return QuotientPresentation(ctx, std::move(relation), *best);
}

Polynomial normal_form(const Polynomial& p, const QuotientPresentation& q) {
  // Each rewrite strictly lowers the exponent of the leading variable in the
  // rewritten terms, so the loop terminates.
  Polynomial result(p.num_vars());
  Polynomial work = p;
  while (!work.is_zero()) {
    auto it = std::find_if(work.terms().begin(), work.terms().end(),
                           [&](const auto& t) { return q.reducible(t.first); });
    if (it == work.terms().end()) {
      result += work;
      break;
    }
    Exponent quotient = it->first;
    quotient[q.leading_var_] -= q.leading_power_;
    Rational factor = it->second / q.leading_coeff_;
    work -= Polynomial::monomial(std::move(quotient), factor) * q.relation_;
  }
  return result;
}

std::vector<Exponent> exponents_of_weight(const WeightedContext& ctx, int weight) {
  std::vector<Exponent> out;
  if (weight < 0) return out;
  Exponent e(ctx.size(), 0);
  // Recursive fill in lexicographically descending order of e.
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var + 1 == ctx.size()) {
      if (remaining % ctx.weight(var) == 0) {
        e[var] = remaining / ctx.weight(var);
        out.push_back(e);
      }
      return;
    }
    for (int k = remaining / ctx.weight(var); k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, remaining - k * ctx.weight(var));
    }
  };
  if (ctx.size() == 0) {
    if (weight == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, weight);
  return out;
}

std::vector<Exponent> monomial_exponents(const WeightedContext& ctx, int weight,
                                         const std::optional<QuotientPresentation>& q) {
  auto all = exponents_of_weight(ctx, weight);
  if (q) std::erase_if(all, [&](const Exponent& e) { return q->reducible(e); });
  return all;
}

std::vector<Polynomial> monomial_basis(const WeightedContext& ctx, int weight,
                                       const std::optional<QuotientPresentation>& q) {
  std::vector<Polynomial> out;
  for (auto& e : monomial_exponents(ctx, weight, q)) out.push_back(Polynomial::monomial(std::move(e)));
  return out;
}

std::string monomial_to_string(const Exponent& e, const WeightedContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ctx.name(i);
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Polynomial& p, const WeightedContext& ctx) {
  if (p.is_zero()) return "0";
  std::vector<const Polynomial::Terms::value_type*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [&](auto* a, auto* b) { return graded_lex_less(b->first, a->first, ctx); });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : terms) {
    Rational c = t->second;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    std::string mono = monomial_to_string(t->first, ctx);
    if (mono == "1")
      out << c.get_str();
    else if (c == 1)
      out << mono;
    else
      out << c.get_str() << '*' << mono;
  }
  return out.str();
}

}  // namespace poissoncoh
