#include "lcint/koszul/chain_complex.hpp"

#include "lcint/errors.hpp"
#include "lcint/ring/linalg.hpp"
#include "lcint/ring/regular_sequence.hpp"

#include <algorithm>

namespace lcint::koszul {

using ring::Code;
using ring::Row;
using ring::Span;

RingMatrix::RingMatrix(const LocalRingPtr& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, TruncatedRingElement::zero(ring)) {}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("matrix shapes do not compose");
  RingMatrix out(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) = out.at(i, j) + at(i, k) * o.at(k, j);
    }
  return out;
}

bool RingMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

ChainComplex::ChainComplex(LocalRingPtr ring, std::vector<std::size_t> ranks, std::vector<RingMatrix> differentials)
    : ring_(std::move(ring)), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
  if (ranks_.empty()) ranks_.push_back(0);
  if (diffs_.size() + 1 != ranks_.size()) throw PreconditionError("need one differential per positive degree");
  for (int i = 1; i <= top_degree(); ++i) {
    const auto& d = diffs_[i - 1];
    if (d.rows() != ranks_[i - 1] || d.cols() != ranks_[i])
      throw PreconditionError("differential " + std::to_string(i) + " has the wrong shape");
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (!ring::same_ring(d.at(r, c).ring(), ring_)) throw SpecMismatch("differential entry from another ring");
  }
  for (int i = 2; i <= top_degree(); ++i)
    if (ranks_[i] && ranks_[i - 2] && !(diffs_[i - 2] * diffs_[i - 1]).is_zero())
      throw PreconditionError("d o d != 0 at degree " + std::to_string(i));
}

ChainComplex ChainComplex::with_recipe(std::vector<std::vector<TruncatedRingElement>> factors) const {
  ChainComplex out = *this;
  out.recipe_ = std::move(factors);
  return out;
}

std::optional<ChainComplex> ChainComplex::at_truncation(const LocalRingPtr& target) const {
  if (ring::same_ring(target, ring_)) return *this;
  const bool finer = target->precision() >= ring_->precision() && target->degree_cap() >= ring_->degree_cap();
  const bool coarser = target->precision() <= ring_->precision() && target->degree_cap() <= ring_->degree_cap();
  if (!finer && !coarser) throw PreconditionError("target truncation is neither finer nor coarser");
  auto move = [&](const TruncatedRingElement& e) { return finer ? e.lift_to(target) : e.project_to(target); };
  if (recipe_) {
    std::vector<std::vector<TruncatedRingElement>> factors;
    for (const auto& f : *recipe_) {
      factors.emplace_back();
      for (const auto& g : f) factors.back().push_back(move(g));
    }
    return koszul_tensor(factors);
  }
  std::vector<RingMatrix> diffs;
  for (const auto& d : diffs_) {
    RingMatrix m(target, d.rows(), d.cols());
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) m.at(r, c) = move(d.at(r, c));
    diffs.push_back(std::move(m));
  }
  try {
    return ChainComplex(target, ranks_, std::move(diffs));
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

namespace {

std::vector<std::vector<int>> subsets(int r, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j < r; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

ChainComplex koszul_complex(const std::vector<TruncatedRingElement>& f) {
  if (f.empty()) throw PreconditionError("Koszul complex of an empty sequence");
  const auto& ring = f.front().ring();
  for (const auto& g : f)
    if (!ring::same_ring(g.ring(), ring)) throw SpecMismatch("Koszul generators from different rings");
  const int r = static_cast<int>(f.size());
  std::vector<std::vector<std::vector<int>>> basis;
  std::vector<std::size_t> ranks;
  for (int i = 0; i <= r; ++i) {
    basis.push_back(subsets(r, i));
    ranks.push_back(basis.back().size());
  }
  std::vector<RingMatrix> diffs;
  for (int i = 1; i <= r; ++i) {
    RingMatrix d(ring, ranks[i - 1], ranks[i]);
    for (std::size_t col = 0; col < basis[i].size(); ++col) {
      const auto& S = basis[i][col];
      for (int t = 0; t < i; ++t) {
        std::vector<int> T = S;
        T.erase(T.begin() + t);
        const auto row = static_cast<std::size_t>(
            std::lower_bound(basis[i - 1].begin(), basis[i - 1].end(), T) - basis[i - 1].begin());
        const auto& g = f[S[t]];
        d.at(row, col) = t % 2 == 0 ? d.at(row, col) + g : d.at(row, col) - g;
      }
    }
    diffs.push_back(std::move(d));
  }
  return ChainComplex(ring, ranks, std::move(diffs)).with_recipe({f});
}

ChainComplex tensor_product(const ChainComplex& C, const ChainComplex& D) {
  if (!ring::same_ring(C.ring(), D.ring())) throw SpecMismatch("tensor product of complexes over different rings");
  const auto& ring = C.ring();
  const int a = C.top_degree(), b = D.top_degree();
  const int top = a + b;
  // offset[n][i] = start of block (i, n - i) in degree n
  std::vector<std::vector<std::size_t>> offset(top + 1, std::vector<std::size_t>(a + 2, 0));
  std::vector<std::size_t> ranks(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    std::size_t pos = 0;
    for (int i = 0; i <= a; ++i) {
      offset[n][i] = pos;
      const int j = n - i;
      if (j >= 0 && j <= b) pos += C.rank(i) * D.rank(j);
    }
    ranks[n] = pos;
  }
  std::vector<RingMatrix> diffs;
  for (int n = 1; n <= top; ++n) {
    RingMatrix d(ring, ranks[n - 1], ranks[n]);
    for (int i = 0; i <= a; ++i) {
      const int j = n - i;
      if (j < 0 || j > b) continue;
      const std::size_t ej = D.rank(j);
      for (std::size_t x = 0; x < C.rank(i); ++x)
        for (std::size_t y = 0; y < ej; ++y) {
          const std::size_t col = offset[n][i] + x * ej + y;
          if (i >= 1) {
            const auto& dc = C.differential(i);
            for (std::size_t x2 = 0; x2 < C.rank(i - 1); ++x2) {
              const auto& e = dc.at(x2, x);
              if (e.is_zero()) continue;
              d.at(offset[n - 1][i - 1] + x2 * ej + y, col) = e;
            }
          }
          if (j >= 1) {
            const auto& dd = D.differential(j);
            const std::size_t ej1 = D.rank(j - 1);
            for (std::size_t y2 = 0; y2 < ej1; ++y2) {
              const auto& e = dd.at(y2, y);
              if (e.is_zero()) continue;
              d.at(offset[n - 1][i] + x * ej1 + y2, col) = i % 2 == 0 ? e : -e;
            }
          }
        }
    }
    diffs.push_back(std::move(d));
  }
  return ChainComplex(ring, ranks, std::move(diffs));
}

ChainComplex koszul_tensor(const std::vector<std::vector<TruncatedRingElement>>& ideals) {
  if (ideals.empty()) throw PreconditionError("no factors");
  ChainComplex total = koszul_complex(ideals.front());
  for (std::size_t i = 1; i < ideals.size(); ++i) total = tensor_product(total, koszul_complex(ideals[i]));
  return total.with_recipe(ideals);
}

ChainComplex derived_tensor_cyclic(const std::vector<std::vector<TruncatedRingElement>>& ideals) {
  for (std::size_t i = 0; i < ideals.size(); ++i)
    if (!ring::is_regular_sequence(ideals[i]).regular)
      throw PreconditionError("generator list " + std::to_string(i + 1) + " is not a regular sequence");
  return koszul_tensor(ideals);
}

namespace {

int lift_precision_cap(const LocalRingPtr& ring) {
  const auto r = ring->dvr().residue_order();
  int e = 0;
  unsigned __int128 v = 1;
  while (v * r <= (static_cast<unsigned __int128>(1) << 62)) {
    v *= r;
    ++e;
  }
  return e;
}

// W-rows of d: row (j, m) holds mono_m * d(e_j) in coordinates (k, monomial).
std::vector<Row> w_matrix(const RingMatrix& d, const LocalRingPtr& ring) {
  const std::size_t D = ring->dimension();
  const auto& R = ring->dvr();
  std::vector<Row> rows;
  rows.reserve(d.cols() * D);
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t m = 0; m < D; ++m) {
      Row r(d.rows() * D, 0);
      for (std::size_t k = 0; k < d.rows(); ++k) {
        const auto& e = d.at(k, j);
        for (std::size_t l = 0; l < D; ++l) {
          const Code c = e.coeff(l);
          if (c == 0) continue;
          const int t = ring->product(m, l);
          if (t < 0) continue;
          auto& slot = r[k * D + static_cast<std::size_t>(t)];
          slot = R.add(slot, c);
        }
      }
      rows.push_back(std::move(r));
    }
  return rows;
}

}  // namespace

std::pair<int, int> lift_truncation(const LocalRingPtr& ring, const HomologyOptions& opts) {
  const int N = ring->precision(), M = ring->degree_cap();
  if (!opts.stable) return {N, M};
  return {std::max(N, std::min(N + M + opts.margin, lift_precision_cap(ring))), N + M + opts.margin};
}

namespace {

struct DegreeData {
  Span cycles_plus_boundaries;
  Span boundaries;
  int lift_precision;
  int lift_degree_cap;
};

std::vector<DegreeData> cycles_and_boundaries(const ChainComplex& C, const HomologyOptions& opts) {
  const auto& base = C.ring();
  const std::size_t D0 = base->dimension();
  const auto& R0 = base->dvr();

  std::optional<ChainComplex> lifted;
  LocalRingPtr lring = base;
  if (opts.stable) {
    const auto [Np, Mp] = lift_truncation(base, opts);
    lring = base->with_precision(Np, Mp);
    lifted = C.at_truncation(lring);
    if (!lifted) lring = base;
  }
  const ChainComplex& L = lifted ? *lifted : C;
  const std::size_t Dl = lring->dimension();
  std::vector<int> to_base(Dl, -1);
  for (std::size_t m = 0; m < Dl; ++m) to_base[m] = base->index_of(lring->monomial(m));

  std::vector<DegreeData> out;
  for (int i = 0; i <= C.top_degree(); ++i) {
    const std::size_t width = C.rank(i) * D0;
    std::vector<Row> cyc;
    if (i == 0 || C.rank(i - 1) == 0) {
      for (std::size_t t = 0; t < width; ++t) {
        Row r(width, 0);
        r[t] = 1;
        cyc.push_back(std::move(r));
      }
    } else {
      const Span Z = ring::left_kernel(lring->dvr(), w_matrix(L.differential(i), lring), C.rank(i - 1) * Dl);
      for (const auto& z : Z.rows()) {
        Row r(width, 0);
        for (std::size_t j = 0; j < C.rank(i); ++j)
          for (std::size_t m = 0; m < Dl; ++m) {
            const Code c = z[j * Dl + m];
            if (c == 0 || to_base[m] < 0) continue;
            r[j * D0 + static_cast<std::size_t>(to_base[m])] = lring->dvr().project(c, R0);
          }
        cyc.push_back(std::move(r));
      }
    }
    std::vector<Row> bnd;
    if (i < C.top_degree() && C.rank(i + 1) > 0) bnd = w_matrix(C.differential(i + 1), base);
    Span B(R0, width, bnd);
    cyc.insert(cyc.end(), bnd.begin(), bnd.end());
    out.push_back({Span(R0, width, std::move(cyc)), std::move(B), lring->precision(), lring->degree_cap()});
  }
  return out;
}

std::optional<int> quotient_length(const Span& U, const Span& B) {
  const auto& R = U.dvr();
  const Code top = R.pi_power(R.precision() - 1);
  for (const auto& u : U.rows()) {
    Row v(u);
    for (auto& c : v) c = R.mul(c, top);
    if (!B.contains(v)) return std::nullopt;
  }
  return U.length() - B.length();
}

}  // namespace

std::vector<std::optional<int>> homology_lengths(const ChainComplex& C, const HomologyOptions& opts) {
  std::vector<std::optional<int>> out;
  for (const auto& d : cycles_and_boundaries(C, opts)) out.push_back(quotient_length(d.cycles_plus_boundaries, d.boundaries));
  return out;
}

std::vector<HomologyGroup> homology(const ChainComplex& C, const HomologyOptions& opts) {
  const auto& base = C.ring();
  const auto W = ring::coefficient_ring(base);
  const std::size_t D0 = base->dimension();
  const auto& R0 = base->dvr();
  std::vector<HomologyGroup> out;
  const auto data = cycles_and_boundaries(C, opts);
  for (int i = 0; i <= C.top_degree(); ++i) {
    const auto& U = data[i].cycles_plus_boundaries;
    const auto& B = data[i].boundaries;
    HomologyGroup h;
    h.degree = i;
    h.lift_precision = data[i].lift_precision;
    h.lift_degree_cap = data[i].lift_degree_cap;
    const std::size_t g = U.rows().size();
    h.presentation = ring::ModulePresentation::free(W, g);
    std::vector<Row> stacked = U.rows();
    stacked.insert(stacked.end(), B.rows().begin(), B.rows().end());
    const Span rel = ring::left_kernel(R0, stacked, U.cols());
    for (const auto& r : rel.rows()) {
      std::vector<TruncatedRingElement> col;
      bool nonzero = false;
      for (std::size_t t = 0; t < g; ++t) {
        col.push_back(TruncatedRingElement::constant(W, r[t]));
        nonzero = nonzero || r[t] != 0;
      }
      if (nonzero) h.presentation.relations.push_back(std::move(col));
    }
    for (const auto& u : U.rows()) {
      std::vector<TruncatedRingElement> vec;
      for (std::size_t j = 0; j < C.rank(i); ++j)
        vec.emplace_back(base, std::vector<Code>(u.begin() + static_cast<std::ptrdiff_t>(j * D0),
                                                 u.begin() + static_cast<std::ptrdiff_t>((j + 1) * D0)));
      h.generators.push_back(std::move(vec));
    }
    h.length = ring::module_length(h.presentation);
    if (h.length != quotient_length(U, B)) throw InvariantViolation("homology length routes disagree");
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

EulerReport assemble(const ChainComplex& C, const std::vector<std::optional<int>>& lens) {
  EulerReport rep;
  rep.precision = C.ring()->precision();
  rep.degree_cap = C.ring()->degree_cap();
  int chi = 0;
  bool finite = true;
  for (std::size_t i = 0; i < lens.size(); ++i) {
    rep.lengths.emplace_back(static_cast<int>(i), lens[i]);
    if (!lens[i]) finite = false;
    else chi += (i % 2 == 0 ? 1 : -1) * *lens[i];
  }
  if (finite) rep.chi = chi;
  return rep;
}

}  // namespace

EulerReport euler_characteristic(const ChainComplex& C, const ChainComplex& refined, const HomologyOptions& opts) {
  EulerReport rep = assemble(C, homology_lengths(C, opts));
  const EulerReport fine = assemble(refined, homology_lengths(refined, opts));
  rep.refined_chi = fine.chi;
  rep.stabilized = rep.chi && fine.chi && *rep.chi == *fine.chi;
  return rep;
}

EulerReport euler_characteristic(const ChainComplex& C, const HomologyOptions& opts) {
  std::optional<ChainComplex> refined;
  try {
    refined = C.at_truncation(C.ring()->with_precision(C.ring()->precision() + 1, C.ring()->degree_cap() + 1));
  } catch (const PreconditionError&) {
    refined.reset();
  }
  if (!refined) return assemble(C, homology_lengths(C, opts));
  return euler_characteristic(C, *refined, opts);
}

std::string to_string(const std::optional<int>& len) { return len ? std::to_string(*len) : std::string("⊥"); }

}  // namespace lcint::koszul
