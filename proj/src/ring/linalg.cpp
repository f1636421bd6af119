#include "lcint/ring/linalg.hpp"

#include "lcint/errors.hpp"

#include <algorithm>

namespace lcint::ring {

namespace {

bool is_zero_row(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](Code c) { return c == 0; });
}

// dst -= c * src, from column `from` on
void axpy(const Dvr& R, Row& dst, const Row& src, Code c, std::size_t from) {
  if (c == 0) return;
  for (std::size_t j = from; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] = R.sub(dst[j], R.mul(c, src[j]));
}

}  // namespace

Span::Span(const Dvr& R, std::size_t cols, std::vector<Row> generators) : R_(R), cols_(cols) {
  for (const auto& g : generators)
    if (g.size() != cols) throw PreconditionError("row length does not match span width");
  build(std::move(generators));
}

void Span::build(std::vector<Row> pending) {
  std::erase_if(pending, is_zero_row);
  const int N = R_.precision();
  rows_.clear();
  pivots_.clear();
  for (std::size_t col = 0; col < cols_ && !pending.empty(); ++col) {
    std::size_t best = pending.size();
    int best_v = N;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const int v = R_.val(pending[i][col]);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == pending.size()) continue;
    Row piv = std::move(pending[best]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    const Code target = R_.pi_power(best_v);
    const Code scale = R_.quotient(target, piv[col]);
    for (std::size_t j = col; j < cols_; ++j) piv[j] = R_.mul(piv[j], scale);
    for (auto& r : pending)
      if (r[col] != 0) axpy(R_, r, piv, R_.shift_down(r[col], best_v), col);
    if (best_v > 0) {
      // pi^(N-a) * pivot row has a zero in this column but may carry information further right
      Row aug(cols_, 0);
      const Code f = R_.pi_power(N - best_v);
      for (std::size_t j = col + 1; j < cols_; ++j) aug[j] = R_.mul(piv[j], f);
      if (!is_zero_row(aug)) pending.push_back(std::move(aug));
    }
    std::erase_if(pending, is_zero_row);
    rows_.push_back(std::move(piv));
    pivots_.push_back(col);
  }
  // reduce entries above pivots
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t k = i + 1; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      const int a = R_.val(rows_[k][c]);
      const Code e = rows_[i][c];
      const Code q = R_.shift_down(R_.sub(e, R_.reduce(e, a)), a);
      axpy(R_, rows_[i], rows_[k], q, c);
    }
}

bool Span::contains(std::span<const Code> v) const {
  if (v.size() != cols_) throw PreconditionError("vector length does not match span width");
  Row w(v.begin(), v.end());
  std::size_t k = 0;
  for (std::size_t col = 0; col < cols_; ++col) {
    if (k < rows_.size() && pivots_[k] == col) {
      if (w[col] != 0) {
        const int a = R_.val(rows_[k][col]);
        if (R_.val(w[col]) < a) return false;
        axpy(R_, w, rows_[k], R_.shift_down(w[col], a), col);
      }
      ++k;
    } else if (w[col] != 0) {
      return false;
    }
  }
  return true;
}

bool Span::contains(const Span& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Row& r) { return contains(r); });
}

int Span::length() const {
  int len = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) len += R_.precision() - pivot_valuation(i);
  return len;
}

Span Span::sum(const Span& other) const {
  if (other.cols_ != cols_) throw PreconditionError("span widths differ");
  std::vector<Row> all = rows_;
  all.insert(all.end(), other.rows_.begin(), other.rows_.end());
  return Span(R_, cols_, std::move(all));
}

Span Span::intersect(const Span& other) const {
  if (other.cols_ != cols_) throw PreconditionError("span widths differ");
  // Zassenhaus: rows (u | u) and (v | 0); the part with zero left half is U cap V.
  std::vector<Row> rows;
  for (const auto& u : rows_) {
    Row r(u);
    r.insert(r.end(), u.begin(), u.end());
    rows.push_back(std::move(r));
  }
  for (const auto& v : other.rows_) {
    Row r(v);
    r.resize(2 * cols_, 0);
    rows.push_back(std::move(r));
  }
  Span big(R_, 2 * cols_, std::move(rows));
  std::vector<Row> out;
  for (std::size_t i = 0; i < big.rows_.size(); ++i)
    if (big.pivots_[i] >= cols_) out.emplace_back(big.rows_[i].begin() + static_cast<std::ptrdiff_t>(cols_), big.rows_[i].end());
  return Span(R_, cols_, std::move(out));
}

Span left_kernel(const Dvr& R, const std::vector<Row>& A, std::size_t cols) {
  const std::size_t m = A.size();
  std::vector<Row> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Row r(A[i]);
    r.resize(cols + m, 0);
    r[cols + i] = 1;
    rows.push_back(std::move(r));
  }
  Span big(R, cols + m, std::move(rows));
  std::vector<Row> out;
  for (std::size_t i = 0; i < big.rows().size(); ++i)
    if (big.pivot(i) >= cols) out.emplace_back(big.rows()[i].begin() + static_cast<std::ptrdiff_t>(cols), big.rows()[i].end());
  return Span(R, m, std::move(out));
}

std::optional<Row> solve_left(const Dvr& R, const std::vector<Row>& A, std::size_t cols, std::span<const Code> v) {
  // kernel of [v ; A] with the v-coefficient in the first column
  const std::size_t m = A.size();
  std::vector<Row> rows;
  Row first(v.begin(), v.end());
  first.resize(cols + 1 + m, 0);
  first[cols] = 1;
  rows.push_back(std::move(first));
  for (std::size_t i = 0; i < m; ++i) {
    Row r(A[i]);
    r.resize(cols + 1 + m, 0);
    r[cols + 1 + i] = 1;
    rows.push_back(std::move(r));
  }
  Span big(R, cols + 1 + m, std::move(rows));
  for (std::size_t i = 0; i < big.rows().size(); ++i) {
    if (big.pivot(i) < cols) continue;
    if (big.pivot(i) == cols && big.pivot_valuation(i) == 0) {
      // row = (0 | 1 | c) means v + c A = 0
      const Row& r = big.rows()[i];
      Row sol(m);
      for (std::size_t j = 0; j < m; ++j) sol[j] = R.neg(r[cols + 1 + j]);
      return sol;
    }
    break;
  }
  return std::nullopt;
}

std::vector<std::optional<int>> smith_valuations(const Dvr& R, std::vector<Row> a, std::size_t cols) {
  const int N = R.precision();
  const std::size_t rows = a.size();
  std::vector<std::optional<int>> out;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // pivot of minimal valuation in the remaining block
    int best = N;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows && best > 0; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const int v = R.val(a[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best == N) break;
    std::swap(a[t], a[bi]);
    if (bj != t)
      for (auto& r : a) std::swap(r[t], r[bj]);
    const Code piv = a[t][t];
    for (std::size_t i = t + 1; i < rows; ++i)
      if (a[i][t] != 0) axpy(R, a[i], a[t], R.quotient(a[i][t], piv), t);
    // the pivot divides its row, so column operations clear it
    for (std::size_t j = t + 1; j < cols; ++j) a[t][j] = 0;
    out.push_back(best);
  }
  while (out.size() < cols) out.push_back(std::nullopt);
  return out;
}

std::optional<int> cokernel_length(const Dvr& R, const std::vector<Row>& rows, std::size_t cols) {
  int len = 0;
  for (const auto& v : smith_valuations(R, rows, cols)) {
    if (!v) return std::nullopt;
    len += *v;
  }
  return len;
}

}  // namespace lcint::ring
