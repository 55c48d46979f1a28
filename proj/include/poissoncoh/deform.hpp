#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "poissoncoh/cartan.hpp"
#include "poissoncoh/harrison.hpp"

namespace poissoncoh {

/// a * b = ab + eps phi(a,b),  {a,b}_eps = {a,b} + eps psi(a,b).
struct FirstOrderDeformation {
  HarrisonCochain phi{{2}, 0, {}};     // Hom(ch_2, A), symmetric
  HarrisonCochain psi{{1, 1}, 0, {}};  // Hom(wedge^2 ch_1, A), antisymmetric
  std::optional<Polyvector> bivector;  // smooth workflow: psi(a,b) = P(da ^ db)

  Polynomial phi_at(HarrisonContext& ctx, MonomialId a, MonomialId b) const;
  Polynomial psi_at(HarrisonContext& ctx, MonomialId a, MonomialId b) const;
  /// Bilinear extensions; constant terms contribute nothing.
  Polynomial phi_at(HarrisonContext& ctx, const Polynomial& a, const Polynomial& b) const;
  Polynomial psi_at(HarrisonContext& ctx, const Polynomial& a, const Polynomial& b) const;
};

FirstOrderDeformation zero_deformation(int truncation);
/// phi = 0, psi(a,b) = P(da ^ db) on all monomial pairs of weight <= D.
FirstOrderDeformation deformation_from_bivector(HarrisonContext& ctx, const Polyvector& p, int truncation);
/// phi(a,b) = f(ab) - a f(b) - b f(a), psi = -delta f: the deformation
/// equivalent to zero through chi_f.
FirstOrderDeformation deformation_from_witness(HarrisonContext& ctx, const HarrisonCochain& f, int truncation);

FirstOrderDeformation operator-(const FirstOrderDeformation& a, const FirstOrderDeformation& b);

enum class Identity { associativity, star, star_star };
std::string to_string(Identity id);

/// Discrepancies at one ordered triple:
///   associativity: phi(ab,c) + c phi(a,b) - phi(a,bc) - a phi(b,c)
///   star:      psi(a,bc) - c psi(a,b) - b psi(a,c) - phi({a,b},c) - phi({a,c},b) + {a, phi(b,c)}
///   star_star: psi(a,{b,c}) + psi(b,{c,a}) + psi(c,{a,b}) + {a,psi(b,c)} + {b,psi(c,a)} + {c,psi(a,b)}
Polynomial identity_defect(HarrisonContext& ctx, const FirstOrderDeformation& d, Identity id, MonomialId a, MonomialId b,
                           MonomialId c);

struct IdentityCount {
  Identity identity;
  std::size_t triples = 0;
};

struct FirstOrderViolation {
  Identity identity;
  std::array<MonomialId, 3> triple;
  Polynomial discrepancy;
};

struct VerificationReport {
  int truncation = 0;
  std::vector<IdentityCount> checked;
  std::optional<FirstOrderViolation> violation;
  bool passed() const { return !violation; }
};

/// Checks all three identities on ordered triples of positive-weight
/// monomials of total weight <= D, by total weight and then graded-lex.
VerificationReport verify_first_order(HarrisonContext& ctx, const FirstOrderDeformation& d, int truncation);

struct EquivalenceWitness {
  HarrisonCochain f{{1}, 0, {}};
};

/// f with (phi2 - phi1)(a,b) = f(ab) - a f(b) - b f(a) and
/// (psi2 - psi1) = -delta f on all pairs of weight <= D, or nullopt.
std::optional<EquivalenceWitness> equivalence_witness(HarrisonContext& ctx, const FirstOrderDeformation& d1,
                                                      const FirstOrderDeformation& d2, int truncation);
/// Checks the two displayed identities pairwise.
bool check_witness(HarrisonContext& ctx, const FirstOrderDeformation& d1, const FirstOrderDeformation& d2,
                   const HarrisonCochain& f, int truncation);

enum class Route { automatic, lp, harrison };

struct EnumerationResult {
  Route route = Route::automatic;
  int weight = 0;  // weight of psi
  int truncation = 0;
  std::vector<FirstOrderDeformation> classes;
  bool stable = true;
  std::size_t previous = 0;  // class count at truncation - 1 (harrison route)
};

/// Cocycle representatives of a basis of the weight-w HP^2 slice: bivectors
/// modulo LP coboundaries (smooth, phi = 0) or total-complex classes.
EnumerationResult enumerate_first_order(HarrisonContext& ctx, int weight, int truncation, Route route = Route::automatic);

struct DualNumber {
  Polynomial re, eps;
  friend bool operator==(const DualNumber&, const DualNumber&) = default;
};

/// A + A eps with the deformed product and bracket.
class DualNumberAlgebra {
 public:
  DualNumberAlgebra(HarrisonContext& ctx, FirstOrderDeformation d, int truncation);

  DualNumber element(const Polynomial& re, const Polynomial& eps) const { return {re, eps}; }
  DualNumber mul(const DualNumber& x, const DualNumber& y) const;
  DualNumber bracket(const DualNumber& x, const DualNumber& y) const;

  struct Entry {
    MonomialId a, b;
    bool a_eps, b_eps;
    DualNumber product, bracket;
  };
  /// Products and brackets of basis pairs (a or a eps) of total weight <= D.
  std::vector<Entry> table() const;

  struct Report {
    std::vector<std::pair<std::string, std::size_t>> checked;  // identity -> triples
    std::optional<std::string> failure;
    bool passed() const { return !failure; }
  };
  /// Associativity, commutativity, Leibniz and Jacobi on basis triples of
  /// total weight <= D.
  Report reverify() const;

 private:
  DualNumber basis(MonomialId a, bool eps) const;

  HarrisonContext* ctx_;
  FirstOrderDeformation d_;
  int truncation_;
};

/// Throws std::logic_error if the re-verification fails.
DualNumberAlgebra build_dual_number_algebra(HarrisonContext& ctx, const FirstOrderDeformation& d, int truncation);

}  // namespace poissoncoh
