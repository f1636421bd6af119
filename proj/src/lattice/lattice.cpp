#include "lcint/lattice/lattice.hpp"

#include "lcint/errors.hpp"
#include "lcint/ring/dvr.hpp"
#include "lcint/ring/linalg.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lcint::lattice {

namespace {

mpz_class power(std::uint64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

Q p_power(std::uint64_t p, int e) { return e >= 0 ? Q(power(p, e)) : Q(mpz_class(1), power(p, -e)); }

// canonical representative of x modulo p^a Z_p: sum of its digits below p^a
Q reduce_mod(const Q& x, std::uint64_t p, int a) {
  const auto v = valuation(x, p);
  if (!v || *v >= a) return 0;
  mpz_class den = x.get_den(), pw = 1;
  int w = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    den /= p;
    ++w;
  }
  const mpz_class mod = power(p, a + w);
  mpz_class inv;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t())) throw InvariantViolation("no inverse mod p^k");
  mpz_class r = x.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  Q out(r, power(p, w));
  out.canonicalize();
  return out;
}

void check_square(const Matrix& a, const char* what) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw PreconditionError(std::string(what) + " is not square");
}

Matrix hermite_form(std::uint64_t p, int n, std::vector<Vector> cols) {
  for (const auto& c : cols)
    if (c.size() != static_cast<std::size_t>(n)) throw PreconditionError("lattice generator of wrong length");
  std::vector<Vector> basis(n);
  std::vector<int> a(n);
  for (int r = n - 1; r >= 0; --r) {
    std::size_t best = cols.size();
    int best_v = 0;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (auto v = valuation(cols[j][r], p); v && (best == cols.size() || *v < best_v)) {
        best = j;
        best_v = *v;
      }
    if (best == cols.size()) throw PreconditionError("lattice generators do not have full rank");
    Vector piv = std::move(cols[best]);
    cols.erase(cols.begin() + static_cast<long>(best));
    const Q unit = piv[r] / p_power(p, best_v);
    for (auto& x : piv) x /= unit;
    for (auto& c : cols) {
      if (sgn(c[r]) == 0) continue;
      const Q t = c[r] / piv[r];
      for (int i = 0; i <= r; ++i) c[i] -= t * piv[i];
    }
    basis[r] = std::move(piv);
    a[r] = best_v;
  }
  for (int j = 0; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      const Q rep = reduce_mod(basis[j][i], p, a[i]);
      const Q t = (basis[j][i] - rep) / basis[i][i];
      if (sgn(t) != 0)
        for (int r = 0; r <= i; ++r) basis[j][r] -= t * basis[i][r];
    }
  Matrix m(n, Vector(n, 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m[i][j] = basis[j][i];
  return m;
}

// U with U X V diagonal; returns the diagonal valuations
std::vector<int> smith_form(std::uint64_t p, Matrix X, Matrix& U) {
  const int n = static_cast<int>(X.size());
  U = identity(n);
  std::vector<int> e(n);
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j)
        if (auto v = valuation(X[i][j], p); v && (bi < 0 || *v < bv)) {
          bi = i;
          bj = j;
          bv = *v;
        }
    if (bi < 0) throw PreconditionError("singular lattice inclusion");
    std::swap(X[k], X[bi]);
    std::swap(U[k], U[bi]);
    for (auto& row : X) std::swap(row[k], row[bj]);
    for (int i = k + 1; i < n; ++i) {
      if (sgn(X[i][k]) == 0) continue;
      const Q t = X[i][k] / X[k][k];
      for (int j = k; j < n; ++j) X[i][j] -= t * X[k][j];
      for (int j = 0; j < n; ++j) U[i][j] -= t * U[k][j];
    }
    for (int j = k + 1; j < n; ++j) {
      if (sgn(X[k][j]) == 0) continue;
      const Q t = X[k][j] / X[k][k];
      for (int i = k; i < n; ++i) X[i][j] -= t * X[i][k];
    }
    e[k] = bv;
  }
  return e;
}

bool integral(const Vector& v, std::uint64_t p) {
  for (const auto& x : v)
    if (auto val = valuation(x, p); val && *val < 0) return false;
  return true;
}

}  // namespace

std::optional<int> valuation(const Q& a, std::uint64_t p) {
  if (sgn(a) == 0) return std::nullopt;
  mpz_class num = a.get_num(), den = a.get_den();
  int v = 0;
  while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    den /= p;
    --v;
  }
  return v;
}

Matrix identity(int n) {
  Matrix m(n, Vector(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, Vector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (sgn(a[i][t]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

Vector act(const Matrix& a, const Vector& v) {
  Vector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return a;
  Matrix t(a[0].size(), Vector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix inverse(const Matrix& a) {
  check_square(a, "matrix");
  const std::size_t n = a.size();
  Matrix m = a, inv = identity(static_cast<int>(n));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m[piv][k]) == 0) ++piv;
    if (piv == n) throw PreconditionError("singular matrix");
    std::swap(m[k], m[piv]);
    std::swap(inv[k], inv[piv]);
    const Q d = m[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      m[k][j] /= d;
      inv[k][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(m[i][k]) == 0) continue;
      const Q t = m[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= t * m[k][j];
        inv[i][j] -= t * inv[k][j];
      }
    }
  }
  return inv;
}

Q determinant(const Matrix& a) {
  check_square(a, "matrix");
  Matrix m = a;
  const std::size_t n = m.size();
  Q det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m[piv][k]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[k], m[piv]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Q t = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= t * m[k][j];
    }
  }
  return det;
}

void validate(const FormedSpace& V) {
  if (!ring::is_prime(V.p)) throw PreconditionError("p = " + std::to_string(V.p) + " is not prime");
  if (V.n < 1) throw PreconditionError("dimension must be positive");
  if (V.precision < 1) throw PreconditionError("precision must be positive");
  if (V.gram.size() != static_cast<std::size_t>(V.n)) throw PreconditionError("Gram matrix has wrong size");
  check_square(V.gram, "Gram matrix");
  for (int i = 0; i < V.n; ++i)
    for (int j = 0; j < i; ++j)
      if (V.gram[i][j] != V.gram[j][i]) throw PreconditionError("Gram matrix is not symmetric");
  const auto v = valuation(determinant(V.gram), V.p);
  if (!v) throw PreconditionError("Gram matrix is singular");
  if (std::abs(*v) >= V.precision) throw PreconditionError("Gram determinant valuation exceeds the precision");
}

LatticeBasis LatticeBasis::span(std::uint64_t p, int n, const std::vector<Vector>& generators) {
  if (!ring::is_prime(p)) throw PreconditionError("p = " + std::to_string(p) + " is not prime");
  std::vector<Vector> gens = generators;
  for (auto& v : gens)
    for (auto& x : v) x.canonicalize();
  return LatticeBasis(p, n, hermite_form(p, n, gens));
}

std::vector<Vector> LatticeBasis::columns() const { return transpose(basis_); }

bool LatticeBasis::contains(const Vector& v) const {
  if (v.size() != static_cast<std::size_t>(n_)) throw PreconditionError("vector of wrong length");
  // back substitution in the upper triangular basis
  Vector r = v;
  for (int j = n_ - 1; j >= 0; --j) {
    const Q y = r[j] / basis_[j][j];
    if (auto val = valuation(y, p_); val && *val < 0) return false;
    for (int i = 0; i <= j; ++i) r[i] -= y * basis_[i][j];
  }
  return true;
}

bool LatticeBasis::contains(const LatticeBasis& o) const {
  for (const auto& c : o.columns())
    if (!contains(c)) return false;
  return true;
}

int LatticeBasis::index_in(const LatticeBasis& o) const {
  int a = 0;
  for (int i = 0; i < n_; ++i) a += *valuation(basis_[i][i], p_) - *valuation(o.basis_[i][i], p_);
  return a;
}

std::string LatticeBasis::to_string() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < n_; ++j) s += (j ? ", " : "") + basis_[i][j].get_str();
    s += "]";
  }
  return s + "]";
}

std::vector<Q> characteristic_polynomial(const Matrix& g) {
  check_square(g, "g");
  const int n = static_cast<int>(g.size());
  std::vector<Q> c(n + 1, 0);
  c[n] = 1;
  Matrix Mk(n, Vector(n, 0));
  for (int k = 1; k <= n; ++k) {
    Matrix next = multiply(g, Mk);
    for (int i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Mk = std::move(next);
    const Matrix gm = multiply(g, Mk);
    Q tr = 0;
    for (int i = 0; i < n; ++i) tr += gm[i][i];
    c[n - k] = -tr / k;
  }
  return c;
}

bool integrality_check(const Matrix& g, std::uint64_t p) { return integral(characteristic_polynomial(g), p); }

LatticeBasis generated_lattice(const PairGU& pair, const FormedSpace& V) {
  validate(V);
  if (pair.g.size() != static_cast<std::size_t>(V.n) || pair.u.size() != static_cast<std::size_t>(V.n))
    throw PreconditionError("g or u has the wrong dimension");
  check_square(pair.g, "g");
  if (!integrality_check(pair.g, V.p)) throw PreconditionError("g has a non-integral characteristic polynomial");
  std::vector<Vector> krylov{pair.u};
  for (int i = 1; i < V.n; ++i) krylov.push_back(act(pair.g, krylov.back()));
  const auto v = valuation(determinant(transpose(krylov)), V.p);
  if (!v || *v >= V.precision) throw PreconditionError("(g, u) is not regular semi-simple at this precision");
  return LatticeBasis::span(V.p, V.n, krylov);
}

LatticeBasis dual_lattice(const LatticeBasis& L, const FormedSpace& V) {
  validate(V);
  if (L.dimension() != V.n || L.p() != V.p) throw SpecMismatch("lattice and space disagree");
  const Matrix D = transpose(inverse(multiply(V.gram, L.basis())));
  return LatticeBasis::span(V.p, V.n, transpose(D));
}

EnumerationResult enumerate_stable_lattices(const PairGU& pair, const FormedSpace& V, const EnumerationOptions& opts) {
  validate(V);
  EnumerationResult res;
  if (opts.use_shortcut && !integrality_check(pair.g, V.p)) {
    res.shortcut = true;
    return res;
  }
  std::vector<Vector> krylov{pair.u};
  for (int i = 1; i < V.n; ++i) krylov.push_back(act(pair.g, krylov.back()));
  if (auto v = valuation(determinant(transpose(krylov)), V.p); !v || *v >= V.precision)
    throw PreconditionError("(g, u) is not regular semi-simple at this precision");
  // with the shortcut off g may fail to preserve L; the filters still apply
  const LatticeBasis L = LatticeBasis::span(V.p, V.n, krylov);
  const LatticeBasis Ld = dual_lattice(L, V);
  if (!Ld.contains(L)) return res;

  const Matrix C = Ld.basis();
  const Matrix Cinv = inverse(C);
  Matrix U;
  const auto e_all = smith_form(V.p, multiply(Cinv, L.basis()), U);
  const Matrix Uinv = inverse(U);
  std::vector<int> coord;  // positions of nontrivial invariants
  for (int i = 0; i < V.n; ++i)
    if (e_all[i] > 0) {
      coord.push_back(i);
      res.quotient_invariants.push_back(e_all[i]);
    }
  std::sort(res.quotient_invariants.begin(), res.quotient_invariants.end());
  int total = 0, E = 0;
  for (int i : coord) {
    total += e_all[i];
    E = std::max(E, e_all[i]);
  }
  mpz_class order = power(V.p, total);
  if (order > mpz_class(std::to_string(opts.max_quotient_order)))
    throw BudgetExhausted("|L^/L| = " + order.get_str() + " exceeds the enumeration budget " +
                          std::to_string(opts.max_quotient_order));
  const std::size_t m = coord.size();

  auto lattice_of = [&](const std::vector<std::vector<std::uint64_t>>& gens) {
    std::vector<Vector> cols = L.columns();
    for (const auto& z : gens) {
      Vector y(V.n, 0);
      for (std::size_t i = 0; i < m; ++i) y[coord[i]] = Q(mpz_class(std::to_string(z[i])));
      cols.push_back(act(C, act(Uinv, y)));
    }
    return LatticeBasis::span(V.p, V.n, cols);
  };
  auto keep = [&](const LatticeBasis& M) {
    for (const auto& c : M.columns())
      if (!M.contains(act(pair.g, c))) return false;
    if (!M.contains(pair.u)) return false;
    if (opts.require_self_dual && !(dual_lattice(M, V) == M)) return false;
    return true;
  };

  if (m == 0) {
    res.subgroups = 1;
    if (keep(L)) res.lattices.push_back(L);
    res.count = res.lattices.size();
    return res;
  }

  // subgroups of sum Z/p^e_i inside (Z/p^E)^m via z_i -> z_i p^(E - e_i)
  const ring::Dvr R(ring::DvrSpec{ring::DvrKind::padic, V.p, E, 0});
  std::vector<std::uint64_t> scale, mod;
  for (int i : coord) {
    scale.push_back(R.pi_power(E - e_all[i]));
    mod.push_back(R.pi_power(e_all[i]) == 0 ? R.size() : R.pi_power(e_all[i]));
  }
  std::vector<ring::Row> elements;
  {
    std::vector<std::uint64_t> z(m, 0);
    while (true) {
      ring::Row r(m);
      for (std::size_t i = 0; i < m; ++i) r[i] = z[i] * scale[i];
      elements.push_back(std::move(r));
      std::size_t i = 0;
      while (i < m && ++z[i] == mod[i]) z[i++] = 0;
      if (i == m) break;
    }
  }
  std::set<std::vector<ring::Row>> seen;
  std::deque<ring::Span> queue;
  std::vector<ring::Span> subgroups;
  queue.emplace_back(R, m);
  seen.insert({});
  while (!queue.empty()) {
    ring::Span H = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : elements) {
      if (H.contains(g)) continue;
      ring::Span H2 = H.sum(ring::Span(R, m, {g}));
      if (seen.insert(H2.rows()).second) {
        if (seen.size() > opts.max_subgroups)
          throw BudgetExhausted("more than " + std::to_string(opts.max_subgroups) + " subgroups of L^/L");
        queue.push_back(std::move(H2));
      }
    }
    subgroups.push_back(std::move(H));
  }
  res.subgroups = subgroups.size();
  for (const auto& H : subgroups) {
    std::vector<std::vector<std::uint64_t>> gens;
    for (const auto& row : H.rows()) {
      std::vector<std::uint64_t> z(m);
      for (std::size_t i = 0; i < m; ++i) z[i] = row[i] / scale[i];
      gens.push_back(std::move(z));
    }
    const auto M = lattice_of(gens);
    if (keep(M)) res.lattices.push_back(M);
  }
  std::sort(res.lattices.begin(), res.lattices.end(),
            [](const LatticeBasis& a, const LatticeBasis& b) { return a.to_string() < b.to_string(); });
  res.lattices.erase(std::unique(res.lattices.begin(), res.lattices.end()), res.lattices.end());
  res.count = res.lattices.size();
  return res;
}

bool perturbation_invariance(const PairGU& pair, const FormedSpace& V, const Matrix& h, const EnumerationOptions& opts) {
  const LatticeBasis L = generated_lattice(pair, V);
  const LatticeBasis Ld = dual_lattice(L, V);
  for (const auto& c : Ld.columns())
    if (!L.contains(act(h, c))) throw PreconditionError("h does not map the dual lattice into L");
  PairGU moved = pair;
  for (int i = 0; i < V.n; ++i)
    for (int j = 0; j < V.n; ++j) moved.g[i][j] += h[i][j];
  return enumerate_stable_lattices(pair, V, opts).lattices == enumerate_stable_lattices(moved, V, opts).lattices;
}

}  // namespace lcint::lattice
