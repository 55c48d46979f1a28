#include "poissoncoh/cartan.hpp"

#include <algorithm>
#include <numeric>

namespace poissoncoh {

int merge_sign(const Subset& a, const Subset& b) {
  // Count pairs (i in a, j in b) with i > j: each is one transposition.
  int inversions = 0;
  std::size_t j = 0;
  for (int x : a) {
    while (j < b.size() && b[j] < x) ++j;
    if (j < b.size() && b[j] == x) return 0;
    inversions += static_cast<int>(j);
  }
  return inversions % 2 ? -1 : 1;
}

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Laplace expansion along the first row; sizes here are tiny.
Polynomial determinant(const PolyMatrix& m, std::size_t num_vars) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(num_vars, 1);
  if (n == 1) return m[0][0];
  Polynomial det(num_vars);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(minor, num_vars);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace

Polynomial evaluate_on_exacts(const Polyvector& p, std::span<const Polynomial> args) {
  if (static_cast<int>(args.size()) != p.degree())
    throw std::invalid_argument("evaluate_on_exacts: expected " + std::to_string(p.degree()) + " arguments");
  const std::size_t n = p.num_vars();
  if (p.degree() == 0) return p.coefficient({});
  // Jacobian rows: gradients of the arguments.
  std::vector<std::vector<Polynomial>> grad(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t v = 0; v < n; ++v) grad[i].push_back(args[i].derivative(v));
  Polynomial out(n);
  for (const auto& [s, c] : p.components()) {
    PolyMatrix m(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
      for (int v : s) m[i].push_back(grad[i][v]);
    Polynomial det = determinant(m, n);
    if (!det.is_zero()) out += c * det;
  }
  return out;
}

DifferentialForm de_rham_d(const DifferentialForm& form) {
  const std::size_t n = form.num_vars();
  DifferentialForm out(n, form.degree() + 1);
  const Polynomial one = Polynomial::constant(n, 1);
  for (const auto& [s, c] : form.components())
    for (std::size_t v = 0; v < n; ++v) {
      Polynomial dc = c.derivative(v);
      if (dc.is_zero()) continue;
      out += wedge(DifferentialForm::term(n, {static_cast<int>(v)}, dc), DifferentialForm::term(n, s, one));
    }
  return out;
}

DifferentialForm interior_product(const Polyvector& p, const DifferentialForm& form) {
  if (p.degree() > form.degree()) throw std::invalid_argument("interior_product: polyvector degree exceeds form degree");
  const std::size_t n = form.num_vars();
  DifferentialForm out(n, form.degree() - p.degree());
  for (const auto& [sp, cp] : p.components())
    for (const auto& [sf, cf] : form.components()) {
      if (!std::includes(sf.begin(), sf.end(), sp.begin(), sp.end())) continue;
      Subset rest;
      std::set_difference(sf.begin(), sf.end(), sp.begin(), sp.end(), std::back_inserter(rest));
      Polynomial c = cp * cf;
      if (merge_sign(sp, rest) < 0) c = -c;
      out.add(rest, c);
    }
  return out;
}

namespace {
template <FieldKind K>
std::optional<int> field_weight(const AlternatingField<K>& f, const WeightedContext& ctx, int sign) {
  std::optional<int> w;
  for (const auto& [s, c] : f.components()) {
    auto wc = homogeneous_weight(c, ctx);
    if (!wc) return std::nullopt;
    int total = *wc;
    for (int v : s) total += sign * ctx.weight(v);
    if (w && *w != total) return std::nullopt;
    w = total;
  }
  return w;
}
}  // namespace

std::optional<int> homogeneous_weight(const Polyvector& p, const WeightedContext& ctx) {
  return field_weight(p, ctx, -1);
}
std::optional<int> homogeneous_weight(const DifferentialForm& f, const WeightedContext& ctx) {
  return field_weight(f, ctx, +1);
}

// ---------------------------------------------------------------------------

Musical::Musical(const Polyvector& theta, int bracket_weight)
    : n_(theta.num_vars()), bracket_weight_(bracket_weight) {
  if (theta.degree() != 2) throw std::invalid_argument("Musical: expected a bivector");
  pi_.assign(n_, std::vector<Polynomial>(n_, Polynomial(n_)));
  for (const auto& [s, c] : theta.components()) {
    pi_[s[0]][s[1]] = c;
    pi_[s[1]][s[0]] = -c;
  }
  Polynomial det = determinant(pi_, n_);
  if (det.is_zero()) throw SingularBivector();
  auto det_value = det.constant_value();
  if (!det_value) throw NonConstantDeterminant();
  Rational inv_det = 1 / *det_value;

  // omega = -pi^{-1} = -adj(pi)/det, adj(pi)[i][j] = (-1)^{i+j} M_{ji}.
  omega_matrix_.assign(n_, std::vector<Polynomial>(n_, Polynomial(n_)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == j) continue;
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < n_; ++c)
          if (c != i) row.push_back(pi_[r][c]);
        minor.push_back(std::move(row));
      }
      Polynomial cof = determinant(minor, n_);
      if ((i + j) % 2) cof = -cof;
      omega_matrix_[i][j] = cof * (-inv_det);
    }

  for (std::size_t i = 0; i < n_; ++i) {
    DifferentialForm flat(n_, 1);
    Polyvector sharp(n_, 1);
    for (std::size_t j = 0; j < n_; ++j) {
      flat.add({static_cast<int>(j)}, omega_matrix_[i][j]);
      sharp.add({static_cast<int>(j)}, pi_[j][i]);
    }
    flat_.push_back(std::move(flat));
    sharp_.push_back(std::move(sharp));
  }
  omega_ = DifferentialForm(n_, 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) omega_.add({static_cast<int>(i), static_cast<int>(j)}, omega_matrix_[i][j]);
}

namespace {
template <class Out, class In, class Images>
Out exterior_power_map(const In& in, const Images& images, std::size_t n) {
  Out out(n, in.degree());
  for (const auto& [s, c] : in.components()) {
    Out acc = Out::scalar(c);
    for (int v : s) acc = wedge(acc, images[v]);
    out += acc;
  }
  return out;
}
}  // namespace

DifferentialForm Musical::to_form(const Polyvector& p) const {
  return exterior_power_map<DifferentialForm>(p, flat_, n_);
}

Polyvector Musical::to_polyvector(const DifferentialForm& form) const {
  return exterior_power_map<Polyvector>(form, sharp_, n_);
}

}  // namespace poissoncoh
