#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcint::lattice {

using Q = mpq_class;
using Vector = std::vector<Q>;
using Matrix = std::vector<Vector>;  // row-major

// p-adic valuation; nullopt for 0
std::optional<int> valuation(const Q& a, std::uint64_t p);

Matrix identity(int n);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector act(const Matrix& a, const Vector& v);
Matrix transpose(const Matrix& a);
// throws PreconditionError when singular
Matrix inverse(const Matrix& a);
Q determinant(const Matrix& a);

// Symmetric bilinear form on Q_p^n.
struct FormedSpace {
  std::uint64_t p = 2;
  int n = 1;
  Matrix gram;
  int precision = 8;
};

void validate(const FormedSpace& V);

// Z_p-lattice of full rank in Q_p^n, stored in column Hermite form: basis
// vector j is column j, upper triangular with diagonal p^{a_j}, entries above
// the diagonal reduced to p-adic digit expansions below p^{a_i}.
class LatticeBasis {
public:
  // Lattice spanned by the given vectors (at least n, full rank).
  static LatticeBasis span(std::uint64_t p, int n, const std::vector<Vector>& generators);

  std::uint64_t p() const { return p_; }
  int dimension() const { return n_; }
  const Matrix& basis() const { return basis_; }  // columns are the basis
  std::vector<Vector> columns() const;

  bool contains(const Vector& v) const;
  bool contains(const LatticeBasis& o) const;
  // log_p [o : this] for this inside o
  int index_in(const LatticeBasis& o) const;

  std::string to_string() const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.p_ == b.p_ && a.basis_ == b.basis_;
  }

private:
  LatticeBasis(std::uint64_t p, int n, Matrix b) : p_(p), n_(n), basis_(std::move(b)) {}
  std::uint64_t p_;
  int n_;
  Matrix basis_;
};

struct PairGU {
  Matrix g;
  Vector u;
};

// Coefficients c_0..c_n of det(T - g), monic.
std::vector<Q> characteristic_polynomial(const Matrix& g);
bool integrality_check(const Matrix& g, std::uint64_t p);

// Z_p[g] u. Requires an integral characteristic polynomial and a Krylov
// matrix u, gu, ..., g^{n-1}u of valuation below the space's precision.
LatticeBasis generated_lattice(const PairGU& pair, const FormedSpace& V);

// {v : (v, L) integral}
LatticeBasis dual_lattice(const LatticeBasis& L, const FormedSpace& V);

struct EnumerationOptions {
  bool require_self_dual = false;
  std::uint64_t max_quotient_order = 59049;  // 3^10
  std::size_t max_subgroups = 100000;
  // skip the integrality shortcut; only for cross-checks
  bool use_shortcut = true;
};

struct EnumerationResult {
  std::size_t count = 0;
  std::vector<LatticeBasis> lattices;  // sorted by to_string
  bool shortcut = false;                // empty by the integrality shortcut
  std::vector<int> quotient_invariants; // L^/L = sum Z/p^e_i
  std::size_t subgroups = 0;            // subgroups of L^/L visited
};

// All M with L <= M <= L^ (L^ the dual of L = Z_p[g]u), gM <= M, u in M,
// and M = M^ when asked.
EnumerationResult enumerate_stable_lattices(const PairGU& pair, const FormedSpace& V, const EnumerationOptions& opts = {});

// Requires h(L^) <= L. True iff g and g + h give the same lattice sets.
bool perturbation_invariance(const PairGU& pair, const FormedSpace& V, const Matrix& h, const EnumerationOptions& opts = {});

}  // namespace lcint::lattice
