#pragma once

#include "lcint/ring/module.hpp"
#include "lcint/ring/truncated_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcint::koszul {

using ring::LocalRingPtr;
using ring::TruncatedRingElement;

// Dense matrix of ring elements acting on column vectors.
class RingMatrix {
public:
  RingMatrix(const LocalRingPtr& ring, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const TruncatedRingElement& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  TruncatedRingElement& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  RingMatrix operator*(const RingMatrix& o) const;
  bool is_zero() const;

private:
  LocalRingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<TruncatedRingElement> entries_;
};

// Homological complex K_L -> ... -> K_1 -> K_0 of free modules.
// differential(i) is d_i : K_i -> K_{i-1}, a rank(i-1) x rank(i) matrix.
class ChainComplex {
public:
  ChainComplex(LocalRingPtr ring, std::vector<std::size_t> ranks, std::vector<RingMatrix> differentials);

  const LocalRingPtr& ring() const { return ring_; }
  int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int i) const { return i < 0 || i > top_degree() ? 0 : ranks_[i]; }
  const RingMatrix& differential(int i) const { return diffs_.at(i - 1); }

  // Generator lists this complex was built from as a tensor product of
  // Koszul complexes, if any. Lets the complex be rebuilt exactly at another
  // truncation instead of lifting matrix entries.
  const std::optional<std::vector<std::vector<TruncatedRingElement>>>& recipe() const { return recipe_; }
  ChainComplex with_recipe(std::vector<std::vector<TruncatedRingElement>> factors) const;

  // The same complex over another truncation of the same base. Coarser
  // targets project; finer targets rebuild from the recipe or lift entries.
  // nullopt when a lift of the entries is not a complex.
  std::optional<ChainComplex> at_truncation(const LocalRingPtr& target) const;

private:
  LocalRingPtr ring_;
  std::vector<std::size_t> ranks_;
  std::vector<RingMatrix> diffs_;
  std::optional<std::vector<std::vector<TruncatedRingElement>>> recipe_;
};

ChainComplex koszul_complex(const std::vector<TruncatedRingElement>& f);

// Total complex of C (x) D, with sign (-1)^{deg of the C factor}.
ChainComplex tensor_product(const ChainComplex& C, const ChainComplex& D);

// Tensor product of the Koszul complexes of each generator list. Each list
// must be a regular sequence.
ChainComplex derived_tensor_cyclic(const std::vector<std::vector<TruncatedRingElement>>& ideals);
// Same without the regularity check.
ChainComplex koszul_tensor(const std::vector<std::vector<TruncatedRingElement>>& ideals);

struct HomologyOptions {
  // Cycles are computed at (N', M') = (N + M + margin, N + M + margin) and
  // reduced, which removes torsion that only exists because of truncation.
  int margin = 2;
  bool stable = true;
};

// (N', M') used for cycles of a complex over `ring`.
std::pair<int, int> lift_truncation(const LocalRingPtr& ring, const HomologyOptions& opts = {});

struct HomologyGroup {
  int degree = 0;
  // presentation over W/pi^N
  ring::ModulePresentation presentation;
  // generators as vectors in K_degree
  std::vector<std::vector<TruncatedRingElement>> generators;
  std::optional<int> length;
  // truncation the cycles were computed at
  int lift_precision = 0;
  int lift_degree_cap = 0;
};

std::vector<HomologyGroup> homology(const ChainComplex& C, const HomologyOptions& opts = {});

// Per-degree lengths only; skips building presentations.
std::vector<std::optional<int>> homology_lengths(const ChainComplex& C, const HomologyOptions& opts = {});

struct EulerReport {
  std::optional<int> chi;
  std::vector<std::pair<int, std::optional<int>>> lengths;
  int precision = 0;
  int degree_cap = 0;
  bool stabilized = false;
  std::optional<int> refined_chi;
};

// Runs the stabilisation check against the complex rebuilt at (N+1, M+1).
EulerReport euler_characteristic(const ChainComplex& C, const HomologyOptions& opts = {});
// Stabilisation check against a caller-supplied refinement of C.
EulerReport euler_characteristic(const ChainComplex& C, const ChainComplex& refined, const HomologyOptions& opts = {});

std::string to_string(const std::optional<int>& len);

}  // namespace lcint::koszul
