#include "poissoncoh/harrison.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace poissoncoh {

namespace {

int parity_sign(long k) { return k % 2 ? -1 : 1; }

// Calls f(from_first, inversions) for every interleaving of p and q items
// keeping each block's internal order; inversions counts (second, first)
// pairs in which the second-block item comes first.
void for_each_interleaving(int p, int q, const std::function<void(const std::vector<bool>&, int)>& f) {
  std::vector<bool> from_first;
  std::function<void(int, int, int)> rec = [&](int a, int b, int inv) {
    if (a == p && b == q) {
      f(from_first, inv);
      return;
    }
    if (a < p) {
      from_first.push_back(true);
      rec(a + 1, b, inv + b);
      from_first.pop_back();
    }
    if (b < q) {
      from_first.push_back(false);
      rec(a, b + 1, inv);
      from_first.pop_back();
    }
  };
  rec(0, 0, 0);
}

void accumulate(ChainCombination& c, const ChainTensor& t, const Rational& v) {
  if (is_zero(v)) return;
  auto [it, inserted] = c.try_emplace(t, v);
  if (!inserted) {
    it->second += v;
    if (is_zero(it->second)) c.erase(it);
  }
}

template <class Map, class Key>
void accumulate_key(Map& m, const Key& k, const Rational& v) {
  if (is_zero(v)) return;
  auto [it, inserted] = m.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (is_zero(it->second)) m.erase(it);
  }
}

bool holds_constant(const ChainProduct& p) {
  for (const auto& t : p)
    for (auto id : t)
      if (id == 0) return true;
  return false;
}

}  // namespace

Shape shape_of(const ChainProduct& p) {
  Shape s;
  for (const auto& t : p) s.push_back(static_cast<int>(t.size()));
  std::sort(s.rbegin(), s.rend());
  return s;
}

int total_degree(const Shape& s) { return std::accumulate(s.begin(), s.end(), 0); }

const std::vector<Shape>& realized_shapes(int degree) {
  static const std::vector<std::vector<Shape>> shapes{
      {}, {{1}}, {{2}, {1, 1}}, {{3}, {2, 1}, {1, 1, 1}}};
  if (degree < 1 || degree > 3) throw std::out_of_range("realized_shapes: total degree must be 1..3");
  return shapes[degree];
}

// ---------------------------------------------------------------------------

HarrisonContext::HarrisonContext(PoissonStructure ps, int preset_weight) : ps_(std::move(ps)) {
  intern(Exponent(ps_.num_vars(), 0));
  for (int w = 0; w <= preset_weight; ++w) monomials(w);
}

MonomialId HarrisonContext::intern(const Exponent& e) {
  auto it = ids_.find(e);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<MonomialId>(exponents_.size());
  exponents_.push_back(e);
  weights_.push_back(weights().weight(e));
  ids_.emplace(e, id);
  return id;
}

int HarrisonContext::weight(const ChainTensor& t) const {
  int w = 0;
  for (auto id : t) w += weight(id);
  return w;
}

int HarrisonContext::weight(const ChainProduct& p) const {
  int w = 0;
  for (const auto& t : p) w += weight(t);
  return w;
}

const std::vector<MonomialId>& HarrisonContext::monomials(int w) {
  auto it = by_weight_.find(w);
  if (it != by_weight_.end()) return it->second;
  std::vector<MonomialId> ids;
  if (w >= 0)
    for (const auto& e : monomial_exponents(weights(), w, ps_.quotient())) ids.push_back(intern(e));
  for (std::uint32_t i = 0; i < ids.size(); ++i) positions_[ids[i]] = i;
  return by_weight_.emplace(w, std::move(ids)).first->second;
}

std::uint32_t HarrisonContext::position(MonomialId id) {
  monomials(weight(id));
  return positions_.at(id);
}

Polynomial HarrisonContext::monomial(MonomialId id) const { return Polynomial::monomial(exponent(id)); }

IdPoly HarrisonContext::to_ids(const Polynomial& p) {
  IdPoly out;
  for (const auto& [e, c] : p.terms()) out.emplace_back(intern(e), c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Polynomial HarrisonContext::to_polynomial(const IdPoly& p) const {
  Polynomial out(ps_.num_vars());
  for (const auto& [id, c] : p) out.add_term(exponent(id), c);
  return out;
}

const IdPoly& HarrisonContext::product(MonomialId a, MonomialId b) {
  auto key = std::minmax(a, b);
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;
  Exponent e = exponent(a);
  const Exponent& f = exponent(b);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += f[i];
  IdPoly value = to_ids(ps_.reduce(Polynomial::monomial(e)));
  return products_.emplace(key, std::move(value)).first->second;
}

const IdPoly& HarrisonContext::bracket(MonomialId a, MonomialId b) {
  auto key = std::make_pair(a, b);
  auto it = brackets_.find(key);
  if (it != brackets_.end()) return it->second;
  IdPoly value = to_ids(ps_.bracket(monomial(a), monomial(b)));
  return brackets_.emplace(key, std::move(value)).first->second;
}

std::vector<ChainCombination> HarrisonContext::shuffle_images(const ChainTensor& t) const {
  std::vector<ChainCombination> out;
  const int n = static_cast<int>(t.size());
  for (int r = 1; r < n; ++r) {
    ChainCombination c;
    for_each_interleaving(r, n - r, [&](const std::vector<bool>& first, int inv) {
      ChainTensor s;
      int a = 0, b = r;
      for (bool f : first) s.push_back(f ? t[a++] : t[b++]);
      accumulate(c, s, parity_sign(inv));
    });
    out.push_back(std::move(c));
  }
  return out;
}

const HarrisonContext::Multiset& HarrisonContext::multiset(const ChainTensor& sorted) {
  auto it = multisets_.find(sorted);
  if (it != multisets_.end()) return it->second;
  Multiset m;
  ChainTensor t = sorted;
  do m.orderings.push_back(t);
  while (std::next_permutation(t.begin(), t.end()));
  const std::size_t k = m.orderings.size();
  auto index_of = [&](const ChainTensor& o) {
    return static_cast<std::size_t>(std::lower_bound(m.orderings.begin(), m.orderings.end(), o) - m.orderings.begin());
  };

  std::vector<RationalVector> rows;
  for (const auto& o : m.orderings)
    for (const auto& img : shuffle_images(o)) {
      if (img.empty()) continue;
      RationalVector row(k);
      for (const auto& [s, c] : img) row[index_of(s)] += c;
      rows.push_back(std::move(row));
    }
  std::vector<bool> pivot(k, false);
  RowEchelon ech;
  if (!rows.empty()) {
    RationalMatrix rel(rows.size(), k);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < k; ++c) rel(r, c) = rows[r][c];
    ech = row_echelon(rel);
    for (auto p : ech.pivots) pivot[p] = true;
  }
  m.reduction.resize(k);
  for (std::size_t j = 0; j < k; ++j)
    if (!pivot[j]) {
      m.representatives.push_back(m.orderings[j]);
      m.reduction[j] = {{m.orderings[j], 1}};
    }
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    auto& red = m.reduction[ech.pivots[r]];
    for (std::size_t f = 0; f < k; ++f)
      if (!pivot[f] && !is_zero(ech.rref(r, f))) red.emplace_back(m.orderings[f], -ech.rref(r, f));
  }
  return multisets_.emplace(sorted, std::move(m)).first->second;
}

const std::vector<std::pair<ChainTensor, Rational>>& HarrisonContext::reduce(const ChainTensor& t) {
  auto it = reductions_.find(t);
  if (it != reductions_.end()) return it->second;
  ChainTensor sorted = t;
  std::sort(sorted.begin(), sorted.end());
  const Multiset& m = multiset(sorted);
  auto pos = std::lower_bound(m.orderings.begin(), m.orderings.end(), t) - m.orderings.begin();
  return reductions_.emplace(t, m.reduction[pos]).first->second;
}

const std::vector<ChainTensor>& HarrisonContext::chain_basis(int n, int w) {
  auto key = std::make_pair(n, w);
  auto it = bases_.find(key);
  if (it != bases_.end()) return it->second;
  std::vector<ChainTensor> out;
  if (n >= 1 && w >= n) {
    std::vector<MonomialId> candidates;
    for (int v = 1; v <= w; ++v)
      for (auto id : monomials(v)) candidates.push_back(id);
    std::sort(candidates.begin(), candidates.end());
    ChainTensor cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int remaining) {
      if (static_cast<int>(cur.size()) == n) {
        if (remaining == 0)
          for (const auto& r : multiset(cur).representatives) out.push_back(r);
        return;
      }
      for (std::size_t i = from; i < candidates.size(); ++i) {
        int wi = weight(candidates[i]);
        if (wi > remaining) continue;
        cur.push_back(candidates[i]);
        rec(i, remaining - wi);
        cur.pop_back();
      }
    };
    rec(0, w);
  }
  return bases_.emplace(key, std::move(out)).first->second;
}

std::vector<std::pair<ChainProduct, Rational>> HarrisonContext::canonical(const ChainProduct& raw) {
  std::vector<std::pair<ChainProduct, Rational>> expanded{{{}, 1}};
  for (const auto& factor : raw) {
    std::vector<std::pair<ChainProduct, Rational>> next;
    if (factor.size() >= 2) {
      const auto& red = reduce(factor);
      for (const auto& [p, c] : expanded)
        for (const auto& [t, d] : red) {
          ChainProduct q = p;
          q.push_back(t);
          next.emplace_back(std::move(q), c * d);
        }
    } else {
      for (auto& [p, c] : expanded) {
        p.push_back(factor);
        next.emplace_back(std::move(p), c);
      }
    }
    expanded = std::move(next);
  }
  std::map<ChainProduct, Rational> acc;
  auto before = [](const ChainTensor& a, const ChainTensor& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  };
  for (auto& [p, c] : expanded) {
    int sign = 1;
    for (std::size_t i = 1; i < p.size(); ++i)
      for (std::size_t j = i; j > 0 && before(p[j], p[j - 1]); --j) {
        if ((p[j].size() * p[j - 1].size()) % 2) sign = -sign;
        std::swap(p[j], p[j - 1]);
      }
    bool vanishes = false;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p[i] == p[i - 1] && p[i].size() % 2) vanishes = true;
    if (vanishes) continue;
    accumulate_key(acc, p, sign * c);
  }
  return {acc.begin(), acc.end()};
}

// ---------------------------------------------------------------------------

ChainBasis build_chain_basis(HarrisonContext& ctx, int n, int truncation) {
  ChainBasis cb;
  cb.n = n;
  cb.truncation = truncation;
  for (int u = 1; u <= truncation; ++u) {
    const auto& reps = ctx.chain_basis(n, u);
    if (reps.empty()) continue;
    cb.basis[u] = reps;
    std::set<ChainTensor> seen;
    for (const auto& rep : reps) {
      ChainTensor sorted = rep;
      std::sort(sorted.begin(), sorted.end());
      if (!seen.insert(sorted).second) continue;
      do {
        for (const auto& img : ctx.shuffle_images(sorted)) {
          if (img.empty()) continue;
          ChainCombination reduced;
          for (const auto& [t, c] : img)
            for (const auto& [r, d] : ctx.reduce(t)) accumulate(reduced, r, c * d);
          if (!reduced.empty()) throw std::logic_error("ChainBasis: shuffle image does not vanish in ch_n");
          cb.shuffle_kernel[u].push_back(img);
        }
      } while (std::next_permutation(sorted.begin(), sorted.end()));
    }
  }
  return cb;
}

ChainWithCoefficients harrison_boundary(HarrisonContext& ctx, const ChainTensor& t, bool reduce) {
  ChainWithCoefficients out;
  const int n = static_cast<int>(t.size());
  if (n <= 1) return out;
  auto emit = [&](const ChainTensor& s, MonomialId coeff, const Rational& v) {
    if (!reduce) {
      accumulate_key(out, std::make_pair(s, coeff), v);
      return;
    }
    for (const auto& [r, c] : ctx.reduce(s)) accumulate_key(out, std::make_pair(r, coeff), v * c);
  };
  emit(ChainTensor(t.begin(), t.end() - 1), t.back(), 1);
  for (int i = 1; i < n; ++i) {
    for (const auto& [m, c] : ctx.product(t[i - 1], t[i])) {
      ChainTensor s(t.begin(), t.begin() + (i - 1));
      s.push_back(m);
      s.insert(s.end(), t.begin() + i + 1, t.end());
      emit(s, 0, parity_sign(n - i) * c);
    }
  }
  emit(ChainTensor(t.begin() + 1, t.end()), t.front(), parity_sign(n));
  return out;
}

ChainWithCoefficients harrison_boundary(HarrisonContext& ctx, const ChainWithCoefficients& c, bool reduce) {
  ChainWithCoefficients out;
  for (const auto& [key, v] : c)
    for (const auto& [inner, w] : harrison_boundary(ctx, key.first, reduce))
      for (const auto& [m, e] : ctx.product(key.second, inner.second))
        accumulate_key(out, std::make_pair(inner.first, m), v * w * e);
  return out;
}

ChainCombination chain_bracket(HarrisonContext& ctx, const ChainTensor& f, const ChainTensor& g) {
  ChainCombination out;
  const int p = static_cast<int>(f.size()), q = static_cast<int>(g.size());
  for_each_interleaving(p, q, [&](const std::vector<bool>& first, int inv) {
    ChainTensor seq;
    std::vector<int> source;  // index into f (>= 0) or ~index into g
    int a = 0, b = 0;
    for (bool x : first) {
      if (x) {
        source.push_back(a);
        seq.push_back(f[a++]);
      } else {
        source.push_back(~b);
        seq.push_back(g[b++]);
      }
    }
    for (int i = 0; i + 1 < p + q; ++i) {
      if (!(first[i] && !first[i + 1])) continue;
      int sign = parity_sign(inv) * parity_sign(i);
      for (const auto& [m, c] : ctx.bracket(f[source[i]], g[~source[i + 1]])) {
        ChainTensor t(seq.begin(), seq.begin() + i);
        t.push_back(m);
        t.insert(t.end(), seq.begin() + i + 2, seq.end());
        accumulate(out, t, sign * c);
      }
    }
  });
  return out;
}

std::vector<CoboundaryTerm> coboundary_terms(HarrisonContext& ctx, const ChainProduct& input, Parts parts) {
  std::vector<CoboundaryTerm> terms;
  const std::size_t s = input.size();
  std::vector<int> deg(s), prefix(s + 1, 0);
  for (std::size_t i = 0; i < s; ++i) {
    deg[i] = static_cast<int>(input[i].size());
    prefix[i + 1] = prefix[i] + deg[i];
  }
  if (parts.d) {
    for (std::size_t i = 0; i < s; ++i) {
      if (deg[i] < 2) continue;
      int sign = parity_sign(prefix[i]);
      for (const auto& [key, c] : harrison_boundary(ctx, input[i], false)) {
        ChainProduct src = input;
        src[i] = key.first;
        terms.push_back({std::move(src), OpKind::multiply, key.second, sign * c});
      }
    }
  }
  if (parts.delta && s >= 2) {
    for (std::size_t i = 0; i < s; ++i) {
      if (deg[i] != 1) continue;
      ChainProduct rest;
      for (std::size_t k = 0; k < s; ++k)
        if (k != i) rest.push_back(input[k]);
      terms.push_back({std::move(rest), OpKind::bracket, input[i][0], Rational(parity_sign(prefix[i]))});
    }
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        long tau = static_cast<long>(deg[i]) * prefix[i] + static_cast<long>(deg[j]) * (prefix[j] - deg[i]);
        int sign = -parity_sign(tau);
        for (const auto& [t, c] : chain_bracket(ctx, input[i], input[j])) {
          ChainProduct src{t};
          for (std::size_t k = 0; k < s; ++k)
            if (k != i && k != j) src.push_back(input[k]);
          terms.push_back({std::move(src), OpKind::multiply, 0, sign * c});
        }
      }
  }
  return terms;
}

Polynomial evaluate_coboundary(HarrisonContext& ctx, const ChainProduct& input, const RawCochain& f, Parts parts) {
  const auto& ps = ctx.structure();
  Polynomial out(ps.num_vars());
  for (const auto& term : coboundary_terms(ctx, input, parts)) {
    Polynomial v = f(term.source);
    if (v.is_zero()) continue;
    Polynomial w = term.op == OpKind::bracket ? ps.bracket(ctx.monomial(term.with), v)
                                              : ps.reduce(ctx.monomial(term.with) * v);
    out += term.coeff * w;
  }
  return out;
}

// ---------------------------------------------------------------------------

Polynomial HarrisonCochain::value(const ChainProduct& key, std::size_t num_vars) const {
  auto it = values.find(key);
  return it == values.end() ? Polynomial(num_vars) : it->second;
}

Polynomial HarrisonCochain::evaluate(HarrisonContext& ctx, const ChainProduct& raw) const {
  const std::size_t nv = ctx.structure().num_vars();
  Polynomial out(nv);
  if (holds_constant(raw)) return out;
  if (ctx.weight(raw) > truncation) throw std::out_of_range("HarrisonCochain: input beyond the truncation");
  for (const auto& [key, c] : ctx.canonical(raw)) {
    auto it = values.find(key);
    if (it != values.end()) out += c * it->second;
  }
  return out;
}

bool HarrisonCochain::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::vector<ChainProduct> component_keys(HarrisonContext& ctx, const Shape& shape, int weight) {
  std::vector<ChainProduct> out;
  ChainProduct cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == shape.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const int p = shape[i];
    const int tail = std::accumulate(shape.begin() + i + 1, shape.end(), 0);
    for (int w = p; w <= remaining - tail; ++w)
      for (const auto& t : ctx.chain_basis(p, w)) {
        if (i > 0 && shape[i - 1] == p) {
          if (p % 2 ? !(cur.back() < t) : t < cur.back()) continue;
        }
        cur.push_back(t);
        rec(i + 1, remaining - w);
        cur.pop_back();
      }
  };
  rec(0, weight);
  return out;
}

HarrisonCochain apply_coboundary(HarrisonContext& ctx, const std::vector<const HarrisonCochain*>& sources,
                                 const Shape& target, int truncation, Parts parts) {
  const std::size_t nv = ctx.structure().num_vars();
  HarrisonCochain out{target, truncation, {}};
  RawCochain f = [&](const ChainProduct& raw) {
    Shape sh = shape_of(raw);
    for (const auto* src : sources)
      if (src->shape == sh) return src->evaluate(ctx, raw);
    return Polynomial(nv);
  };
  for (int u = 1; u <= truncation; ++u)
    for (const auto& key : component_keys(ctx, target, u)) {
      Polynomial v = evaluate_coboundary(ctx, key, f, parts);
      if (!v.is_zero()) out.values.emplace(key, std::move(v));
    }
  return out;
}

HarrisonCochain harrison_coboundary(HarrisonContext& ctx, const HarrisonCochain& f) {
  Shape target;
  if (f.shape.size() == 1) target = {f.shape[0] + 1};
  else if (f.shape == Shape{1, 1}) target = {2, 1};
  else throw std::invalid_argument("harrison_coboundary: component outside the realized columns");
  if (total_degree(target) > 3) throw std::invalid_argument("harrison_coboundary: component outside the realized columns");
  return apply_coboundary(ctx, {&f}, target, f.truncation, Parts{true, false});
}

HarrisonCochain poisson_coboundary(HarrisonContext& ctx, const HarrisonCochain& f) {
  Shape target;
  if (f.shape == Shape{1}) target = {1, 1};
  else if (f.shape == Shape{2}) target = {2, 1};
  else if (f.shape == Shape{1, 1}) target = {1, 1, 1};
  else throw std::invalid_argument("poisson_coboundary: component outside the realized columns");
  return apply_coboundary(ctx, {&f}, target, f.truncation, Parts{false, true});
}

// ---------------------------------------------------------------------------

CochainSpace cochain_space(HarrisonContext& ctx, int degree, int invariant, int truncation) {
  CochainSpace space;
  space.degree = degree;
  space.invariant = invariant;
  space.truncation = truncation;
  for (const auto& shape : realized_shapes(degree)) {
    ComponentSpace comp;
    comp.shape = shape;
    comp.shift = invariant - static_cast<int>(shape.size()) * ctx.bracket_weight();
    for (int u = 1; u <= truncation; ++u) {
      std::size_t outputs = ctx.monomials(u + comp.shift).size();
      if (outputs == 0) continue;
      for (auto& key : component_keys(ctx, shape, u)) {
        comp.index.emplace(key, static_cast<std::uint32_t>(comp.keys.size()));
        comp.offsets.push_back(static_cast<std::uint32_t>(comp.dimension));
        comp.key_weights.push_back(u);
        comp.keys.push_back(std::move(key));
        comp.dimension += outputs;
      }
    }
    space.component_offsets.push_back(space.dimension);
    space.dimension += comp.dimension;
    space.components.push_back(std::move(comp));
  }
  return space;
}

SparseMatrix total_differential(HarrisonContext& ctx, const CochainSpace& from, const CochainSpace& to, Parts parts) {
  if (to.degree != from.degree + 1 || to.invariant != from.invariant || to.truncation != from.truncation)
    throw std::invalid_argument("total_differential: incompatible cochain spaces");
  SparseMatrix m(to.dimension, from.dimension);
  std::map<Shape, std::size_t> source_of;
  for (std::size_t c = 0; c < from.components.size(); ++c) source_of[from.components[c].shape] = c;

  for (std::size_t tc = 0; tc < to.components.size(); ++tc) {
    const auto& T = to.components[tc];
    for (std::size_t k = 0; k < T.keys.size(); ++k) {
      const std::size_t row0 = to.component_offsets[tc] + T.offsets[k];
      const int row_weight = T.key_weights[k] + T.shift;
      for (const auto& term : coboundary_terms(ctx, T.keys[k], parts)) {
        for (const auto& [P, c] : ctx.canonical(term.source)) {
          if (holds_constant(P)) continue;
          auto sc = source_of.find(shape_of(P));
          if (sc == source_of.end()) throw std::logic_error("total_differential: term outside the realized columns");
          const auto& S = from.components[sc->second];
          auto key_it = S.index.find(P);
          if (key_it == S.index.end()) continue;  // no coordinates at this key
          const std::size_t col0 = from.component_offsets[sc->second] + S.offsets[key_it->second];
          const auto& outputs = ctx.monomials(S.key_weights[key_it->second] + S.shift);
          for (std::size_t j = 0; j < outputs.size(); ++j) {
            const IdPoly& image = term.op == OpKind::bracket ? ctx.bracket(term.with, outputs[j])
                                                             : ctx.product(term.with, outputs[j]);
            for (const auto& [mu, e] : image) {
              if (ctx.weight(mu) != row_weight) throw std::logic_error("total_differential: weight mismatch");
              m.add(row0 + ctx.position(mu), col0 + j, term.coeff * c * e);
            }
          }
        }
      }
    }
  }
  return m;
}

std::vector<HarrisonCochain> to_cochains(HarrisonContext& ctx, const CochainSpace& space, const SparseVector& v) {
  const std::size_t nv = ctx.structure().num_vars();
  std::vector<HarrisonCochain> out;
  for (const auto& comp : space.components) out.push_back({comp.shape, space.truncation, {}});
  for (const auto& [idx, q] : v) {
    std::size_t c = std::upper_bound(space.component_offsets.begin(), space.component_offsets.end(), idx) -
                    space.component_offsets.begin() - 1;
    while (space.components[c].dimension == 0 ||
           idx - space.component_offsets[c] >= space.components[c].dimension)
      ++c;
    const auto& comp = space.components[c];
    std::size_t local = idx - space.component_offsets[c];
    std::size_t k = std::upper_bound(comp.offsets.begin(), comp.offsets.end(), local) - comp.offsets.begin() - 1;
    MonomialId mu = ctx.monomials(comp.key_weights[k] + comp.shift).at(local - comp.offsets[k]);
    auto [it, inserted] = out[c].values.try_emplace(comp.keys[k], Polynomial(nv));
    it->second += q * ctx.monomial(mu);
    if (it->second.is_zero()) out[c].values.erase(it);
  }
  return out;
}

SparseVector to_vector(HarrisonContext& ctx, const CochainSpace& space, const std::vector<HarrisonCochain>& cochains) {
  std::map<std::uint32_t, Rational> acc;
  for (std::size_t c = 0; c < space.components.size(); ++c) {
    const auto& comp = space.components[c];
    for (const auto& f : cochains) {
      if (f.shape != comp.shape) continue;
      for (const auto& [key, poly] : f.values) {
        auto it = comp.index.find(key);
        if (it == comp.index.end()) continue;
        const int out_weight = comp.key_weights[it->second] + comp.shift;
        for (const auto& [e, q] : poly.terms()) {
          if (ctx.weights().weight(e) != out_weight) continue;  // other slices
          auto idx = static_cast<std::uint32_t>(space.component_offsets[c] + comp.offsets[it->second] +
                                                ctx.position(ctx.intern(e)));
          accumulate_key(acc, idx, q);
        }
      }
    }
  }
  return {acc.begin(), acc.end()};
}

std::size_t TotalSlice::hp(int degree) const {
  if (degree == 1) return c1.dimension - rank1;
  if (degree == 2) return c2.dimension - rank2 - rank1;
  throw std::out_of_range("TotalSlice::hp: degree must be 1 or 2");
}

TotalSlice build_total_slice(HarrisonContext& ctx, int invariant, int truncation, Parts parts, int max_degree) {
  TotalSlice ts;
  ts.invariant = invariant;
  ts.truncation = truncation;
  ts.c1 = cochain_space(ctx, 1, invariant, truncation);
  ts.c2 = cochain_space(ctx, 2, invariant, truncation);
  ts.d1 = total_differential(ctx, ts.c1, ts.c2, parts);
  ts.rank1 = sparse_rank(ts.d1);
  if (max_degree >= 3) {
    ts.c3 = cochain_space(ctx, 3, invariant, truncation);
    ts.d2 = total_differential(ctx, ts.c2, ts.c3, parts);
    ts.rank2 = sparse_rank(ts.d2);
  }
  return ts;
}

TotalHpReport total_hp(HarrisonContext& ctx, int degree, int weight, int truncation) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("total_hp: degree must be 1 or 2");
  TotalHpReport r;
  r.degree = degree;
  r.weight = weight;
  r.invariant = weight + degree * ctx.bracket_weight();
  r.truncation = truncation;
  const int top = degree + 1;
  TotalSlice now = build_total_slice(ctx, r.invariant, truncation, {}, top);
  r.dimension = now.hp(degree);
  r.cochain_dimensions = {now.c1.dimension, now.c2.dimension, now.c3.dimension};
  if (truncation > 1) {
    r.previous = build_total_slice(ctx, r.invariant, truncation - 1, {}, top).hp(degree);
    r.stable = r.previous == r.dimension;
  }
  return r;
}

TotalHpReport total_hp(const PoissonStructure& ps, int degree, int weight, int truncation) {
  HarrisonContext ctx(ps, truncation);
  return total_hp(ctx, degree, weight, truncation);
}

}  // namespace poissoncoh
