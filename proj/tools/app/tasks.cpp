#include "tasks.hpp"

#include "lcint/ar/artin_rees.hpp"
#include "lcint/errors.hpp"
#include "lcint/family/intersect.hpp"
#include "lcint/lattice/lattice.hpp"

#include <random>

namespace lcint::app {

namespace {

using family::Ball;
using family::BallSpace;
using family::ContinuousApprox;
using family::FamilyCycle;
using ring::LocalRing;
using ring::LocalRingPtr;

std::string opt(const std::optional<int>& v) { return koszul::to_string(v); }
std::string yes(bool b) { return b ? "true" : "false"; }

LocalRingPtr make_ring(const RingSection& r) {
  ring::LocalRingSpec spec;
  spec.coefficients.kind = r.kind == "tadic" ? ring::DvrKind::tadic : ring::DvrKind::padic;
  spec.coefficients.p = r.p;
  spec.coefficients.q = r.q;
  spec.coefficients.precision = r.N;
  spec.variables = r.d;
  spec.degree_cap = r.M;
  return LocalRing::make(spec);
}

std::vector<FamilyCycle> make_cycles(const Scenario& s, const LocalRingPtr& A) {
  const BallSpace S{A->spec().coefficients.p, s.k};
  std::vector<FamilyCycle> out;
  for (const auto& c : s.cycles) {
    FamilyCycle z{c.label, {}};
    for (const auto& g : c.generators)
      z.generators.push_back(ContinuousApprox::polynomial(A, S, family::parse_expression(g, s.ring.d, s.k)));
    out.push_back(std::move(z));
  }
  return out;
}

ring::TruncatedRingElement constant_element(const LocalRingPtr& A, const std::string& text) {
  return family::evaluate_polynomial(A, family::parse_expression(text, A->variables(), 0), {});
}

void run_probe(const Scenario& s, Report& rep, const Overrides& o) {
  const auto A = make_ring(s.ring);
  const auto cycles = make_cycles(s, A);
  const BallSpace S{A->spec().coefficients.p, s.k};
  std::vector<Ball> region;
  for (const auto& a : s.region) region.push_back(family::parse_ball(S, a));
  const auto r = family::probe_local_constancy(cycles, region, {s.refine_max, o.workers});
  rep.add("pieces", std::to_string(r.pieces.size()));
  rep.add("excluded", std::to_string(r.excluded.size()));
  bool stable = true;
  for (const auto& [b, p] : r.pieces) {
    rep.add("piece." + b.address(), std::to_string(p.value));
    stable = stable && p.stabilized;
  }
  for (const auto& [b, p] : r.pieces) rep.add("z2." + b.address(), p.z2_certified ? "certified" : "sampled");
  for (const auto& [b, e] : r.excluded) {
    rep.add("excluded." + b.address(), family::to_string(e.reason));
    rep.add("excluded." + b.address() + ".detail", e.detail);
  }
  rep.add("stabilized", yes(stable));
  rep.add("balls_examined", std::to_string(r.balls_examined));
}

void run_intersect(const Scenario& s, Report& rep) {
  const auto A = make_ring(s.ring);
  const auto cycles = make_cycles(s, A);
  const BallSpace S{A->spec().coefficients.p, s.k};
  int level = 0;
  for (const auto& z : cycles)
    for (const auto& g : z.generators) level = std::max(level, g.resolution());
  std::vector<std::uint64_t> residues;
  std::uint64_t m = 1;
  for (int i = 0; i < level; ++i) m *= S.p;
  for (const auto& v : s.point) {
    const long long x = std::stoll(v);
    const auto mm = static_cast<long long>(m);
    residues.push_back(static_cast<std::uint64_t>(((x % mm) + mm) % mm));
  }
  const Ball point(S, level, residues);
  const auto e = family::int_at_fiber(cycles, point);
  rep.add("point", point.address());
  rep.add("chi", opt(e.chi));
  for (const auto& [deg, len] : e.lengths) rep.add("length." + std::to_string(deg), opt(len));
  rep.add("stabilized", yes(e.stabilized));
  rep.add("refined_chi", opt(e.refined_chi));
  std::vector<ContinuousApprox> all;
  for (const auto& z : cycles) all.insert(all.end(), z.generators.begin(), z.generators.end());
  rep.add("quotient_length", opt(family::fiber_ideal(all, point).quotient_length()));
}

void run_artin_rees(const Scenario& s, Report& rep) {
  const auto A = make_ring(s.ring);
  const auto& a = s.artin_rees;
  const auto f = constant_element(A, a.f);
  const int k_max = a.k_max.value_or(A->precision() + A->degree_cap() - 1 - a.m_max);
  const auto r = ar::ar_constant(f, a.m_max, k_max);
  rep.add("f", f.pretty());
  rep.add("m_max", std::to_string(a.m_max));
  rep.add("k_max", std::to_string(k_max));
  rep.add("k", opt(r.k));
  if (r.witness) {
    rep.add("witness.k", std::to_string(r.witness->k));
    rep.add("witness.m", std::to_string(r.witness->m));
    rep.add("witness.element", r.witness->element.pretty());
  }
  for (std::size_t i = 0; i < a.transfer.size(); ++i) {
    const std::string key = "transfer." + std::to_string(i + 1);
    const auto g = constant_element(A, a.transfer[i]);
    rep.add(key + ".g", g.pretty());
    if (!r.k) throw PreconditionError("transfer check needs an Artin-Rees constant of f");
    const auto t = ar::ar_transfer_check(f, g, *r.k, a.m_max);
    rep.add(key + ".holds", yes(t.holds));
    rep.add(key + ".k_f", opt(t.k_f));
    rep.add(key + ".k_g", opt(t.k_g));
    if (t.counterexample) rep.add(key + ".counterexample", t.counterexample->element.pretty());
  }
  if (a.lift) {
    if (!r.k) throw PreconditionError("lift needs an Artin-Rees constant of f");
    const auto h = constant_element(A, *a.lift);
    rep.add("lift.h", h.pretty());
    rep.add("lift.m", std::to_string(a.lift_m));
    rep.add("lift.equation", ar::lift_defining_equation(h, f, a.lift_m, *r.k).pretty());
  }
}

lattice::Matrix matrix(const std::vector<std::vector<std::string>>& m) {
  lattice::Matrix out;
  for (const auto& r : m) {
    lattice::Vector row;
    for (const auto& x : r) row.emplace_back(x);
    out.push_back(std::move(row));
  }
  return out;
}

void run_lattices(const Scenario& s, Report& rep, const Overrides& o) {
  const auto& l = s.lattice;
  const lattice::FormedSpace V{l.p, l.n, matrix(l.gram), l.precision};
  lattice::PairGU pair{matrix(l.g), {}};
  for (const auto& x : l.u) pair.u.emplace_back(x);
  lattice::EnumerationOptions all, self_dual;
  self_dual.require_self_dual = true;
  const auto r = lattice::enumerate_stable_lattices(pair, V, all);
  const auto rs = lattice::enumerate_stable_lattices(pair, V, self_dual);
  rep.add("integral", yes(lattice::integrality_check(pair.g, l.p)));
  std::string inv;
  for (int e : r.quotient_invariants) inv += (inv.empty() ? "" : " ") + std::to_string(e);
  rep.add("invariants", inv.empty() ? "-" : inv);
  rep.add("count", std::to_string(r.count));
  rep.add("self_dual_count", std::to_string(rs.count));
  for (std::size_t i = 0; i < r.lattices.size(); ++i) rep.add("lattice." + std::to_string(i + 1), r.lattices[i].to_string());
  for (std::size_t i = 0; i < rs.lattices.size(); ++i)
    rep.add("self_dual." + std::to_string(i + 1), rs.lattices[i].to_string());
  if (l.perturbations == 0) return;
  if (r.shortcut) {
    rep.add("perturbation.trials", "0");
    return;
  }
  int e = 0;
  for (int x : r.quotient_invariants) e += x;
  lattice::Q pe = 1;
  for (int i = 0; i < e; ++i) pe *= static_cast<unsigned long>(l.p);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> entry(-static_cast<int>(l.p), static_cast<int>(l.p));
  int same = 0;
  for (int t = 0; t < l.perturbations; ++t) {
    lattice::Matrix h(l.n, lattice::Vector(l.n, 0));
    for (auto& row : h)
      for (auto& x : row) x = pe * entry(rng);
    if (lattice::perturbation_invariance(pair, V, h)) ++same;
  }
  rep.add("perturbation.trials", std::to_string(l.perturbations));
  rep.add("perturbation.identical", std::to_string(same));
}

}  // namespace

Scenario apply(const Scenario& s, const Overrides& o) {
  Scenario out = s;
  if (o.precision) {
    out.ring.N = o.precision->first;
    out.ring.M = o.precision->second;
  }
  if (o.refine_max) out.refine_max = *o.refine_max;
  return out;
}

Report run_scenario(const Scenario& input, const std::string& name, const Overrides& o) {
  Report rep{name, apply(input, o), {}};
  const auto& s = rep.scenario;
  switch (s.task) {
    case Task::probe: run_probe(s, rep, o); break;
    case Task::intersect: run_intersect(s, rep); break;
    case Task::artin_rees: run_artin_rees(s, rep); break;
    case Task::lattices: run_lattices(s, rep, o); break;
  }
  return rep;
}

ExitCode exit_code_for(const Report& r) {
  for (const auto& [k, v] : r.results)
    if (k.rfind("excluded.", 0) == 0 && v == "budget") return ExitCode::budget;
  return ExitCode::ok;
}

std::vector<std::string> check_expectations(const Report& r) {
  std::vector<std::string> bad;
  for (const auto& [k, v] : r.scenario.expect) {
    const auto* got = r.find(k);
    if (!got) bad.push_back(k + ": expected " + v + ", missing");
    else if (*got != v) bad.push_back(k + ": expected " + v + ", got " + *got);
  }
  return bad;
}

}  // namespace lcint::app
