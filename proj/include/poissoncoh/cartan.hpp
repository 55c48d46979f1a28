#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "poissoncoh/gradedpoly.hpp"

namespace poissoncoh {

/// Sorted list of distinct variable indices naming a wedge of basis elements.
using Subset = std::vector<int>;

enum class FieldKind { polyvector, form };

/// Alternating multi-derivation (polyvector) or differential form with
/// polynomial coefficients, stored by sorted index subset. Degree 0 is a
/// plain polynomial (stored under the empty subset); degrees above the
/// number of variables are allowed and always zero.
template <FieldKind Kind>
class AlternatingField {
 public:
  using Components = std::map<Subset, Polynomial>;

  AlternatingField() = default;
  AlternatingField(std::size_t num_vars, int degree) : num_vars_(num_vars), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("AlternatingField: negative degree");
  }

  /// coeff * e_{indices[0]} ^ ... ^ e_{indices[k-1]}; indices in any order.
  static AlternatingField term(std::size_t num_vars, std::vector<int> indices, Polynomial coeff) {
    AlternatingField f(num_vars, static_cast<int>(indices.size()));
    int sign = 1;
    for (std::size_t i = 0; i < indices.size(); ++i)
      for (std::size_t j = i + 1; j < indices.size(); ++j) {
        if (indices[i] == indices[j]) return f;
        if (indices[i] > indices[j]) sign = -sign;
      }
    std::sort(indices.begin(), indices.end());
    if (sign < 0) coeff = -coeff;
    f.add(indices, coeff);
    return f;
  }
  static AlternatingField scalar(const Polynomial& p) { return term(p.num_vars(), {}, p); }

  std::size_t num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  Polynomial coefficient(const Subset& s) const {
    auto it = components_.find(s);
    return it == components_.end() ? Polynomial(num_vars_) : it->second;
  }

  /// Adds coeff to the component of a sorted subset.
  void add(const Subset& s, const Polynomial& coeff) {
    if (static_cast<int>(s.size()) != degree_) throw std::invalid_argument("AlternatingField: subset size != degree");
    if (coeff.is_zero()) return;
    auto [it, inserted] = components_.try_emplace(s, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) components_.erase(it);
    }
  }

  AlternatingField& operator+=(const AlternatingField& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.components_) add(s, c);
    return *this;
  }
  AlternatingField& operator-=(const AlternatingField& o) {
    check_compatible(o);
    for (const auto& [s, c] : o.components_) add(s, -c);
    return *this;
  }
  friend AlternatingField operator+(AlternatingField a, const AlternatingField& b) { return a += b; }
  friend AlternatingField operator-(AlternatingField a, const AlternatingField& b) { return a -= b; }
  AlternatingField operator-() const {
    AlternatingField out(num_vars_, degree_);
    for (const auto& [s, c] : components_) out.components_.emplace(s, -c);
    return out;
  }
  friend AlternatingField operator*(const Polynomial& p, const AlternatingField& f) {
    AlternatingField out(f.num_vars_, f.degree_);
    for (const auto& [s, c] : f.components_) out.add(s, p * c);
    return out;
  }
  friend bool operator==(const AlternatingField& a, const AlternatingField& b) {
    return a.degree_ == b.degree_ && a.components_ == b.components_;
  }

  /// Applies f to every coefficient.
  template <class F>
  AlternatingField map_coefficients(F&& f) const {
    AlternatingField out(num_vars_, degree_);
    for (const auto& [s, c] : components_) out.add(s, f(c));
    return out;
  }

 private:
  void check_compatible(const AlternatingField& o) const {
    if (o.degree_ != degree_) throw std::invalid_argument("AlternatingField: degree mismatch");
  }

  std::size_t num_vars_ = 0;
  int degree_ = 0;
  Components components_;
};

using Polyvector = AlternatingField<FieldKind::polyvector>;
using DifferentialForm = AlternatingField<FieldKind::form>;

/// Sign of the permutation sorting the concatenation a ++ b (a, b sorted),
/// or 0 if they intersect.
int merge_sign(const Subset& a, const Subset& b);

template <FieldKind Kind>
AlternatingField<Kind> wedge(const AlternatingField<Kind>& a, const AlternatingField<Kind>& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("wedge: variable count mismatch");
  AlternatingField<Kind> out(a.num_vars(), a.degree() + b.degree());
  for (const auto& [sa, ca] : a.components())
    for (const auto& [sb, cb] : b.components()) {
      int sign = merge_sign(sa, sb);
      if (sign == 0) continue;
      Subset merged;
      std::merge(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(merged));
      Polynomial c = ca * cb;
      if (sign < 0) c = -c;
      out.add(merged, c);
    }
  return out;
}

/// P(da_1 ^ ... ^ da_k) = sum over components c_S * det(d a_i / d x_{S_j}).
Polynomial evaluate_on_exacts(const Polyvector& p, std::span<const Polynomial> args);

DifferentialForm de_rham_d(const DifferentialForm& form);

/// Contraction of a form by a polyvector of lower or equal degree:
/// i(d_S)(dx_T) = s * dx_{T\S} where dx_T = s * dx_S ^ dx_{T\S}.
/// Satisfies i(a ^ b) = i(b) o i(a).
DifferentialForm interior_product(const Polyvector& p, const DifferentialForm& form);

/// Weight of a homogeneous field (coefficient weight minus/plus the weights
/// of the wedged variables), nullopt if zero or mixed.
std::optional<int> homogeneous_weight(const Polyvector& p, const WeightedContext& ctx);
std::optional<int> homogeneous_weight(const DifferentialForm& f, const WeightedContext& ctx);

struct SingularBivector : std::domain_error {
  SingularBivector() : std::domain_error("musical isomorphism: bivector is degenerate") {}
};
struct NonConstantDeterminant : std::domain_error {
  NonConstantDeterminant() : std::domain_error("musical isomorphism: determinant of the bivector is not constant") {}
};

/// Musical isomorphism between polyvectors and forms induced by a
/// non-degenerate bivector whose coefficient matrix has constant
/// determinant. The 2-form w is normalised by w(H_f, H_g) = {f, g} where
/// {f, g} = Theta(df ^ dg) and H_f(g) = {f, g}; a vector field v goes to
/// i(v)w and higher degrees use exterior powers.
class Musical {
 public:
  Musical(const Polyvector& theta, int bracket_weight);

  DifferentialForm to_form(const Polyvector& p) const;
  Polyvector to_polyvector(const DifferentialForm& form) const;
  /// Weight change (form weight minus polyvector weight) in exterior degree k.
  int weight_shift(int degree) const { return degree * bracket_weight_; }

  const DifferentialForm& symplectic_form() const { return omega_; }

 private:
  std::size_t n_;
  int bracket_weight_;
  std::vector<std::vector<Polynomial>> pi_;     // pi[i][j] = {x_i, x_j}
  std::vector<std::vector<Polynomial>> omega_matrix_;  // -pi^{-1}
  std::vector<DifferentialForm> flat_;   // image of d/dx_i
  std::vector<Polyvector> sharp_;        // image of dx_i
  DifferentialForm omega_;
};

}  // namespace poissoncoh
