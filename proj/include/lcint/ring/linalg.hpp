#pragma once

#include "lcint/ring/dvr.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lcint::ring {

using Row = std::vector<Code>;

// Row span of a matrix over the chain ring W/pi^N in Howell form: pivots are
// pi^a at strictly increasing columns, entries above a pivot are reduced mod
// pi^a, and every element of the span whose first j entries vanish is a
// combination of the rows with pivot column >= j. The form is unique, so two
// spans are equal iff their Howell forms are.
class Span {
public:
  Span(const Dvr& R, std::size_t cols) : R_(R), cols_(cols) {}
  Span(const Dvr& R, std::size_t cols, std::vector<Row> generators);

  const Dvr& dvr() const { return R_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t pivot(std::size_t i) const { return pivots_[i]; }
  int pivot_valuation(std::size_t i) const { return R_.val(rows_[i][pivots_[i]]); }

  bool contains(std::span<const Code> v) const;
  bool contains(const Span& other) const;
  // W-length of the span
  int length() const;
  bool empty() const { return rows_.empty(); }

  Span sum(const Span& other) const;
  Span intersect(const Span& other) const;

  friend bool operator==(const Span& a, const Span& b) { return a.cols_ == b.cols_ && a.rows_ == b.rows_; }

private:
  void build(std::vector<Row> pending);
  Dvr R_;
  std::size_t cols_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

// Rows x with x * A = 0 for A given by its rows.
Span left_kernel(const Dvr& R, const std::vector<Row>& A, std::size_t cols);

// Coefficients c with sum c_i A_i = v, or nothing.
std::optional<Row> solve_left(const Dvr& R, const std::vector<Row>& A, std::size_t cols, std::span<const Code> v);

// Valuations of the diagonal invariants of a matrix (given by rows), one per
// column; nullopt marks an invariant that is zero at precision.
std::vector<std::optional<int>> smith_valuations(const Dvr& R, std::vector<Row> rows, std::size_t cols);

// Length of the cokernel of rows (a submodule of W^cols), or nullopt when it
// has a free summand at this precision.
std::optional<int> cokernel_length(const Dvr& R, const std::vector<Row>& rows, std::size_t cols);

}  // namespace lcint::ring
