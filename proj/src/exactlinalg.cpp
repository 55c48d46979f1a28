#include "poissoncoh/exactlinalg.hpp"

#include <algorithm>
#include <numeric>

namespace poissoncoh {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw std::invalid_argument("RationalMatrix: entries length != rows*cols");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  RationalVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!poissoncoh::is_zero((*this)(r, c))) y[r] += (*this)(r, c) * x[c];
  return y;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return poissoncoh::is_zero(q); });
}

namespace {

struct Echelon {
  std::vector<std::vector<Rational>> rref;  // first `pivots.size()` rows, reduced
  std::vector<std::size_t> pivots;
};

// Bareiss elimination on the row-scaled integer matrix, then reduction to
// RREF over the rationals.
Echelon reduced_echelon(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer scale = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (scale / m(r, c).get_den());
  }

  Echelon out;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    out.pivots.push_back(c);
    ++r;
  }

  out.rref.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    out.rref[k].resize(cols);
    for (std::size_t c = 0; c < cols; ++c) out.rref[k][c] = Rational(a[k][c]);
  }
  for (std::size_t k = r; k-- > 0;) {
    auto& row = out.rref[k];
    Rational inv = 1 / row[out.pivots[k]];
    for (auto& v : row) v *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      Rational f = out.rref[i][out.pivots[k]];
      if (is_zero(f)) continue;
      for (std::size_t c = out.pivots[k]; c < cols; ++c) out.rref[i][c] -= f * row[c];
    }
  }
  return out;
}

}  // namespace

RankKernel rank_and_kernel(const RationalMatrix& m) {
  Echelon e = reduced_echelon(m);
  RankKernel out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rref[k][f];
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

RowEchelon row_echelon(const RationalMatrix& m) {
  Echelon e = reduced_echelon(m);
  RowEchelon out{RationalMatrix(e.pivots.size(), m.cols()), e.pivots};
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.rref(r, c) = e.rref[r][c];
  return out;
}

std::size_t rank(const RationalMatrix& m) { return reduced_echelon(m).pivots.size(); }

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: |b| != rows");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Echelon e = reduced_echelon(aug);
  RationalVector x(m.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == m.cols()) return std::nullopt;
    x[e.pivots[k]] = e.rref[k][m.cols()];
  }
  return x;
}

// ---------------------------------------------------------------------------

SparseVector axpy(const SparseVector& y, const Rational& a, const SparseVector& x) {
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto i = y.begin(), j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == y.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational v = i->second + a * j->second;
      if (!is_zero(v)) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector to_sparse(const RationalVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return out;
}

RationalVector to_dense(const SparseVector& v, std::size_t dim) {
  RationalVector out(dim);
  for (const auto& [i, q] : v) out.at(i) = q;
  return out;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add");
  if (poissoncoh::is_zero(v)) return;
  auto key = std::make_pair(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(r));
  auto [it, inserted] = entries_.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (poissoncoh::is_zero(it->second)) entries_.erase(it);
  }
}

SparseVector SparseMatrix::column(std::size_t c) const {
  SparseVector out;
  auto lo = entries_.lower_bound({static_cast<std::uint32_t>(c), 0});
  for (auto it = lo; it != entries_.end() && it->first.first == c; ++it) out.emplace_back(it->first.second, it->second);
  return out;
}

std::vector<SparseVector> SparseMatrix::columns() const {
  std::vector<SparseVector> out(cols_);
  for (const auto& [key, v] : entries_) out[key.first].emplace_back(key.second, v);
  return out;
}

static std::vector<SparseVector> rows_of(const SparseMatrix& m) {
  std::vector<SparseVector> out(m.rows());
  for (const auto& [key, v] : m.entries()) out[key.second].emplace_back(key.first, v);
  return out;  // columns visited in increasing order, so rows come out sorted
}

RationalMatrix SparseMatrix::to_dense() const {
  RationalMatrix d(rows_, cols_);
  for (const auto& [key, v] : entries_) d(key.second, key.first) = v;
  return d;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
  SparseMatrix out(rows_, other.cols_);
  auto left_cols = columns();
  for (const auto& [key, v] : other.entries_)
    for (const auto& [r, a] : left_cols[key.second]) out.add(r, key.first, a * v);
  return out;
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    Rational f = -v.front().second;
    v = axpy(v, f, it->second);
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational inv = 1 / v.front().second;
  for (auto& [i, q] : v) q *= inv;
  pivots_.emplace(v.front().first, std::move(v));
  return true;
}

std::size_t sparse_rank(const SparseMatrix& m) {
  EchelonBasis basis;
  if (m.cols() <= m.rows()) {
    for (auto& col : m.columns()) basis.insert(std::move(col));
  } else {
    for (auto& row : rows_of(m)) basis.insert(std::move(row));
  }
  return basis.rank();
}

namespace {

// Fully reduced row-echelon form of the span of `rows`; pivot -> row.
std::map<std::uint32_t, SparseVector> rref(std::vector<SparseVector> rows) {
  std::map<std::uint32_t, SparseVector> piv;
  for (auto& row : rows) {
    SparseVector v = std::move(row);
    while (!v.empty()) {
      auto it = piv.find(v.front().first);
      if (it == piv.end()) break;
      Rational f = -v.front().second;
      v = axpy(v, f, it->second);
    }
    if (v.empty()) continue;
    Rational inv = 1 / v.front().second;
    for (auto& [i, q] : v) q *= inv;
    piv.emplace(v.front().first, std::move(v));
  }
  // Back-substitution from the last pivot upwards.
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    // Rows with larger pivots are already reduced, so eliminating one pivot
    // column never introduces another pivot column.
    SparseVector& row = it->second;
    std::size_t k = 1;
    while (k < row.size()) {
      auto p = piv.find(row[k].first);
      if (p == piv.end()) {
        ++k;
        continue;
      }
      Rational f = -row[k].second;
      row = axpy(row, f, p->second);
    }
  }
  return piv;
}

}  // namespace

std::vector<SparseVector> sparse_kernel(const SparseMatrix& m) {
  auto piv = rref(rows_of(m));
  std::vector<SparseVector> kernel;
  for (std::uint32_t f = 0; f < m.cols(); ++f) {
    if (piv.count(f)) continue;
    std::map<std::uint32_t, Rational> v;
    v[f] = 1;
    for (const auto& [p, row] : piv) {
      auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, std::uint32_t k) { return e.first < k; });
      if (it != row.end() && it->first == f) v[p] = -it->second;
    }
    kernel.emplace_back(v.begin(), v.end());
  }
  return kernel;
}

std::vector<SparseVector> quotient_representatives(const std::vector<SparseVector>& boundaries,
                                                   const std::vector<SparseVector>& cocycles, std::size_t dim) {
  EchelonBasis basis(dim);
  for (const auto& b : boundaries) basis.insert(b);
  std::vector<SparseVector> reps;
  for (const auto& z : cocycles)
    if (basis.insert(z)) reps.push_back(z);
  return reps;
}

std::optional<SparseVector> sparse_solve(const SparseMatrix& m, const SparseVector& b) {
  auto rows = rows_of(m);
  const auto rhs_col = static_cast<std::uint32_t>(m.cols());
  for (const auto& [r, v] : b) {
    if (r >= m.rows()) throw std::invalid_argument("sparse_solve: |b| != rows");
    rows[r].emplace_back(rhs_col, v);
  }
  auto piv = rref(std::move(rows));
  SparseVector x;
  for (const auto& [p, row] : piv) {
    if (p == rhs_col) return std::nullopt;
    if (row.back().first == rhs_col) x.emplace_back(p, row.back().second);
  }
  return x;
}

}  // namespace poissoncoh
