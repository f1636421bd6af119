#include "lcint/family/intersect.hpp"

#include "lcint/errors.hpp"
#include "lcint/ring/regular_sequence.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace lcint::family {

using koszul::EulerReport;

namespace {

std::vector<TruncatedRingElement> fibers(const FamilyCycle& z, const Ball& b) {
  std::vector<TruncatedRingElement> out;
  for (const auto& g : z.generators) out.push_back(g.value_at(b));
  return out;
}

std::vector<ContinuousApprox> all_generators(const std::vector<FamilyCycle>& cycles) {
  std::vector<ContinuousApprox> all;
  for (const auto& z : cycles) all.insert(all.end(), z.generators.begin(), z.generators.end());
  return all;
}

bool regular_at(const FamilyCycle& z, const Ball& b) { return ring::is_regular_sequence(fibers(z, b)).regular; }

void check_region(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region) {
  const auto& S = cycles.front().generators.front().space();
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (!(region[i].space() == S)) throw SpecMismatch("region ball " + region[i].address() + " in another space");
    for (std::size_t j = 0; j < i; ++j)
      if (region[i].intersects(region[j]))
        throw PreconditionError("region balls " + region[j].address() + " and " + region[i].address() + " overlap");
  }
}

// Int at a point, memoised on the fiber generators.
class IntCache {
public:
  EulerReport get(const std::vector<FamilyCycle>& cycles, const Ball& b) {
    std::vector<std::vector<TruncatedRingElement>> lists;
    std::string key;
    for (const auto& z : cycles) {
      lists.push_back(fibers(z, b));
      for (const auto& f : lists.back()) key += f.to_text() + ',';
      key += '|';
    }
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    auto rep = koszul::euler_characteristic(koszul::koszul_tensor(lists));
    std::lock_guard lock(mu_);
    return memo_.emplace(key, std::move(rep)).first->second;
  }

private:
  std::mutex mu_;
  std::map<std::string, EulerReport> memo_;
};

struct Outcome {
  enum Kind { certified, excluded, refine } kind = refine;
  ProbePiece piece;
  Exclusion exclusion;
};

Outcome examine(const std::vector<FamilyCycle>& cycles, const std::vector<ContinuousApprox>& all, const Ball& b,
                bool at_budget, IntCache& cache) {
  auto give_up = [&](Reason r, std::string detail, bool proven) {
    Outcome o;
    if (proven || at_budget) {
      o.kind = Outcome::excluded;
      o.exclusion = {r, std::move(detail)};
    }
    return o;
  };
  bool z2_certified = true;
  for (const auto& z : cycles) {
    const bool cert = certified_constant(z.generators, b);
    z2_certified = z2_certified && cert;
    if (!regular_at(z, b)) return give_up(Reason::Z2, z.label + " is not a regular sequence at " + b.address(), cert);
  }
  const bool constant = certified_constant(all, b);
  const auto e = cache.get(cycles, b);
  if (!e.chi) return give_up(Reason::Z3, "intersection has infinite length at " + b.address(), constant);
  if (!e.stabilized)
    return give_up(Reason::precision, "chi changes from " + koszul::to_string(e.chi) + " to " +
                                          koszul::to_string(e.refined_chi) + " at the next truncation",
                   constant);
  if (!constant) return give_up(Reason::budget, "not certified constant at refinement level " + std::to_string(b.level()), false);
  for (const auto& c : b.children()) {
    for (const auto& z : cycles)
      if (!regular_at(z, c)) return give_up(Reason::Z2, z.label + " is not a regular sequence at " + c.address(), false);
    const auto ec = cache.get(cycles, c);
    if (ec.chi != e.chi)
      throw InvariantViolation("ball " + b.address() + " is certified constant but Int is " + koszul::to_string(e.chi) +
                               " at its sample and " + koszul::to_string(ec.chi) + " at " + c.address());
  }
  Outcome o;
  o.kind = Outcome::certified;
  o.piece = {*e.chi, e.stabilized, z2_certified};
  return o;
}

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, n); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < n;) run(i);
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void validate(const std::vector<FamilyCycle>& cycles) {
  if (cycles.empty()) throw PreconditionError("no cycles");
  const auto* first = &cycles.front();
  for (const auto& z : cycles) {
    if (z.generators.empty()) throw PreconditionError("cycle " + z.label + " has no generators");
    for (const auto& g : z.generators)
      if (!ring::same_ring(g.ring(), first->generators.front().ring()) ||
          !(g.space() == first->generators.front().space()))
        throw SpecMismatch("cycle " + z.label + " lives over another ring or parameter space");
  }
}

std::string to_string(Reason r) {
  switch (r) {
    case Reason::Z1: return "Z1";
    case Reason::Z2: return "Z2";
    case Reason::Z3: return "Z3";
    case Reason::precision: return "precision";
    case Reason::budget: return "budget";
  }
  return "?";
}

std::optional<int> ConstancyReport::value_at(const Ball& s) const {
  for (const auto& [b, v] : pieces)
    if (b.contains(s)) return v.value;
  return std::nullopt;
}

std::vector<Z12Report> check_Z1_Z2(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region) {
  validate(cycles);
  check_region(cycles, region);
  std::vector<Z12Report> out;
  for (const auto& b : region) {
    Z12Report r{b, true, true, {}};
    std::vector<Ball> samples{b};
    for (const auto& c : b.children()) samples.push_back(c);
    for (const auto& z : cycles) {
      r.certified = r.certified && certified_constant(z.generators, b);
      for (const auto& s : samples)
        if (!regular_at(z, s)) {
          r.pass = false;
          r.failures.push_back(z.label + "@" + s.address());
          break;
        }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Z3Report> check_Z3(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region, int refine_max) {
  validate(cycles);
  check_region(cycles, region);
  const auto all = all_generators(cycles);
  std::vector<Z3Report> out;
  for (const auto& b : region) {
    Z3Report r{b, true, std::nullopt, {}};
    std::function<bool(const Ball&)> walk = [&](const Ball& c) -> bool {
      if (certified_constant(all, c)) {
        const auto len = fiber_ideal(all, c).quotient_length();
        r.pieces.push_back({c, len});
        if (!len) r.failure = Reason::Z3;
        return len.has_value();
      }
      if (c.level() >= refine_max) {
        r.pieces.push_back({c, fiber_ideal(all, c).quotient_length()});
        r.failure = r.pieces.back().quotient_length ? Reason::budget : Reason::Z3;
        return false;
      }
      for (const auto& child : c.children())
        if (!walk(child)) return false;
      return true;
    };
    r.pass = walk(b);
    out.push_back(std::move(r));
  }
  return out;
}

EulerReport int_at_fiber(const std::vector<FamilyCycle>& cycles, const Ball& s) {
  validate(cycles);
  std::vector<std::vector<TruncatedRingElement>> lists;
  for (const auto& z : cycles) {
    std::vector<TruncatedRingElement> f;
    for (const auto& g : z.generators) f.push_back(evaluate_at_fiber(g, s));
    if (!ring::is_regular_sequence(f).regular)
      throw PreconditionError("cycle " + z.label + " fails Z2 at " + s.address());
    lists.push_back(std::move(f));
  }
  return koszul::euler_characteristic(koszul::koszul_tensor(lists));
}

ConstancyReport probe_local_constancy(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region,
                                      const ProbeOptions& opts) {
  validate(cycles);
  check_region(cycles, region);
  if (opts.refine_max < 0) throw PreconditionError("negative refinement budget");
  const auto all = all_generators(cycles);
  const auto& A = all.front().ring();
  ConstancyReport rep;
  rep.precision = A->precision();
  rep.degree_cap = A->degree_cap();
  rep.refine_max = opts.refine_max;
  IntCache cache;
  std::vector<std::pair<Ball, ProbePiece>> pieces;
  std::vector<std::pair<Ball, Exclusion>> excluded;
  std::vector<Ball> frontier = region;
  while (!frontier.empty()) {
    std::vector<Outcome> results(frontier.size());
    parallel_for(frontier.size(), opts.workers, [&](std::size_t i) {
      results[i] = examine(cycles, all, frontier[i], frontier[i].level() >= opts.refine_max, cache);
    });
    rep.balls_examined += frontier.size();
    std::vector<Ball> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      switch (results[i].kind) {
        case Outcome::certified: pieces.emplace_back(frontier[i], results[i].piece); break;
        case Outcome::excluded: excluded.emplace_back(frontier[i], results[i].exclusion); break;
        case Outcome::refine:
          for (auto& c : frontier[i].children()) next.push_back(std::move(c));
          break;
      }
    }
    frontier = std::move(next);
  }
  rep.pieces = merge_siblings(std::move(pieces));
  // details name the ball, so merge on the reason alone
  std::vector<std::pair<Ball, Reason>> reasons;
  for (const auto& [b, e] : excluded) reasons.emplace_back(b, e.reason);
  for (const auto& [b, r] : merge_siblings(std::move(reasons))) {
    std::string detail;
    for (const auto& [b2, e] : excluded)
      if (b == b2) detail = e.detail;
    if (detail.empty()) detail = "merged sub-balls fail " + to_string(r);
    rep.excluded.emplace_back(b, Exclusion{r, detail});
  }
  return rep;
}

}  // namespace lcint::family
