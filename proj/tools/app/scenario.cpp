#include "scenario.hpp"

#include "lcint/errors.hpp"
#include "lcint/family/expression.hpp"
#include "lcint/lattice/lattice.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace lcint::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

struct Entry {
  std::string key, value;
  int line;
};

struct Section {
  std::string name, arg;
  int line = 0;
  std::vector<Entry> entries;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw PreconditionError("scenario line " + std::to_string(line) + ": " + what);
}

long long to_int(const Entry& e) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(e.line, "'" + e.key + "' needs an integer, got '" + e.value + "'");
  }
}

int to_small(const Entry& e, int lo, int hi) {
  const auto v = to_int(e);
  if (v < lo || v > hi) fail(e.line, "'" + e.key + "' must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  return static_cast<int>(v);
}

std::string canonical_rational(const std::string& text, int line) {
  try {
    lattice::Q q(text);
    q.canonicalize();
    return q.get_str();
  } catch (const std::exception&) {
    fail(line, "bad rational '" + text + "'");
  }
}

std::vector<std::string> parse_vector(const Entry& e) {
  std::vector<std::string> out;
  std::istringstream in(e.value);
  for (std::string tok; in >> tok;)
    for (const auto& part : split(tok, ','))
      if (!part.empty()) out.push_back(canonical_rational(part, e.line));
  return out;
}

std::vector<std::vector<std::string>> parse_matrix(const Entry& e, int n) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : split(e.value, ';')) rows.push_back(parse_vector(Entry{e.key, r, e.line}));
  if (static_cast<int>(rows.size()) != n) fail(e.line, "'" + e.key + "' needs " + std::to_string(n) + " rows");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) fail(e.line, "'" + e.key + "' rows need " + std::to_string(n) + " entries");
  return rows;
}

std::string expression(const Entry& e, const std::string& text, int d, int k) {
  try {
    return family::to_string(family::parse_expression(text, d, k));
  } catch (const PreconditionError& ex) {
    fail(e.line, ex.what());
  }
}

std::vector<Section> sections_of(const std::string& text) {
  std::vector<Section> out(1);
  std::istringstream in(text);
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      const std::string inner = trim(line.substr(1, line.size() - 2));
      const auto sp = inner.find(' ');
      Section s;
      s.name = inner.substr(0, sp);
      s.arg = sp == std::string::npos ? "" : trim(inner.substr(sp));
      s.line = lineno;
      out.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) fail(lineno, "empty key");
    for (const auto& prev : out.back().entries)
      if (prev.key == e.key) fail(lineno, "duplicate key '" + e.key + "'");
    out.back().entries.push_back(std::move(e));
  }
  return out;
}

template <class F>
void each(const Section& s, F&& f) {
  for (const auto& e : s.entries)
    if (!f(e)) fail(e.line, "unknown key '" + e.key + "' in " + (s.name.empty() ? "header" : "[" + s.name + "]"));
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::intersect: return "intersect";
    case Task::probe: return "probe";
    case Task::artin_rees: return "artin-rees";
    case Task::lattices: return "lattices";
  }
  return "?";
}

Scenario parse_scenario(const std::string& text) {
  const auto secs = sections_of(text);
  Scenario sc;
  bool have_task = false;
  each(secs[0], [&](const Entry& e) {
    if (e.key == "task") {
      bool ok = false;
      for (Task t : {Task::intersect, Task::probe, Task::artin_rees, Task::lattices})
        if (e.value == to_string(t)) {
          sc.task = t;
          ok = true;
        }
      if (!ok) fail(e.line, "unknown task '" + e.value + "'");
      have_task = true;
    } else if (e.key == "description") {
      sc.description = e.value;
    } else {
      return false;
    }
    return true;
  });
  if (!have_task) throw PreconditionError("scenario has no 'task = ...' line");

  // ring and parameters first: expressions depend on d and k
  std::map<std::string, int> count;
  for (std::size_t i = 1; i < secs.size(); ++i) {
    const auto& s = secs[i];
    static const std::vector<std::string> known{"ring", "parameters", "cycle", "fiber", "budget", "artin-rees", "lattice", "expect"};
    if (std::find(known.begin(), known.end(), s.name) == known.end()) fail(s.line, "unknown section [" + s.name + "]");
    if (s.name != "cycle" && ++count[s.name] > 1) fail(s.line, "repeated section [" + s.name + "]");
    if (s.name != "cycle" && !s.arg.empty()) fail(s.line, "section [" + s.name + "] takes no argument");
    if (s.name == "ring")
      each(s, [&](const Entry& e) {
        if (e.key == "kind") {
          if (e.value != "padic" && e.value != "tadic") fail(e.line, "kind must be padic or tadic");
          sc.ring.kind = e.value;
        } else if (e.key == "p") sc.ring.p = static_cast<std::uint64_t>(to_small(e, 2, 1 << 30));
        else if (e.key == "q") sc.ring.q = static_cast<std::uint64_t>(to_small(e, 0, 1 << 30));
        else if (e.key == "N") sc.ring.N = to_small(e, 1, 62);
        else if (e.key == "M") sc.ring.M = to_small(e, 1, 64);
        else if (e.key == "d") sc.ring.d = to_small(e, 0, 8);
        else return false;
        return true;
      });
    if (s.name == "parameters")
      each(s, [&](const Entry& e) {
        if (e.key == "k") sc.k = to_small(e, 1, 8);
        else if (e.key == "region") sc.region = split(e.value, ',');
        else return false;
        return true;
      });
  }
  for (std::size_t i = 1; i < secs.size(); ++i) {
    const auto& s = secs[i];
    if (s.name == "cycle") {
      CycleSection c;
      c.label = s.arg.empty() ? "Z" + std::to_string(sc.cycles.size() + 1) : s.arg;
      for (const auto& prev : sc.cycles)
        if (prev.label == c.label) fail(s.line, "duplicate cycle label '" + c.label + "'");
      each(s, [&](const Entry& e) {
        if (e.key != "generators") return false;
        for (const auto& g : split(e.value, ',')) c.generators.push_back(expression(e, g, sc.ring.d, sc.k));
        return true;
      });
      if (c.generators.empty()) fail(s.line, "cycle '" + c.label + "' has no generators");
      sc.cycles.push_back(std::move(c));
    } else if (s.name == "fiber") {
      each(s, [&](const Entry& e) {
        if (e.key != "s") return false;
        sc.point.clear();
        for (const auto& v : split(e.value, ',')) sc.point.push_back(std::to_string(to_int(Entry{e.key, v, e.line})));
        return true;
      });
    } else if (s.name == "budget") {
      each(s, [&](const Entry& e) {
        if (e.key != "refine_max") return false;
        sc.refine_max = to_small(e, 0, 40);
        return true;
      });
    } else if (s.name == "artin-rees") {
      auto& a = sc.artin_rees;
      each(s, [&](const Entry& e) {
        if (e.key == "f") a.f = expression(e, e.value, sc.ring.d, 0);
        else if (e.key == "m_max") a.m_max = to_small(e, 0, 200);
        else if (e.key == "k_max") a.k_max = to_small(e, 1, 200);
        else if (e.key == "transfer") {
          for (const auto& g : split(e.value, ',')) a.transfer.push_back(expression(e, g, sc.ring.d, 0));
        } else if (e.key == "lift") a.lift = expression(e, e.value, sc.ring.d, 0);
        else if (e.key == "lift_m") a.lift_m = to_small(e, 1, 200);
        else return false;
        return true;
      });
    } else if (s.name == "lattice") {
      auto& l = sc.lattice;
      // n first: matrices are checked against it
      for (const auto& e : s.entries)
        if (e.key == "n") l.n = to_small(e, 1, 12);
      each(s, [&](const Entry& e) {
        if (e.key == "n") return true;
        if (e.key == "p") l.p = static_cast<std::uint64_t>(to_small(e, 2, 1 << 20));
        else if (e.key == "precision") l.precision = to_small(e, 1, 1000);
        else if (e.key == "gram") l.gram = parse_matrix(e, l.n);
        else if (e.key == "g") l.g = parse_matrix(e, l.n);
        else if (e.key == "u") {
          l.u = parse_vector(e);
          if (static_cast<int>(l.u.size()) != l.n) fail(e.line, "u needs " + std::to_string(l.n) + " entries");
        } else if (e.key == "perturbations") l.perturbations = to_small(e, 0, 10000);
        else return false;
        return true;
      });
    } else if (s.name == "expect") {
      for (const auto& e : s.entries) sc.expect.emplace_back(e.key, e.value);
    }
  }

  switch (sc.task) {
    case Task::intersect:
      if (sc.point.size() != static_cast<std::size_t>(sc.k)) throw PreconditionError("[fiber] s needs one value per parameter");
      [[fallthrough]];
    case Task::probe:
      if (sc.cycles.empty()) throw PreconditionError("scenario has no [cycle] sections");
      break;
    case Task::artin_rees:
      if (sc.artin_rees.f.empty()) throw PreconditionError("[artin-rees] needs f");
      break;
    case Task::lattices:
      if (sc.lattice.gram.empty() || sc.lattice.g.empty() || sc.lattice.u.empty())
        throw PreconditionError("[lattice] needs gram, g and u");
      break;
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read scenario " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string matrix_text(const std::vector<std::vector<std::string>>& m) {
  std::vector<std::string> rows;
  for (const auto& r : m) rows.push_back(join(r, " "));
  return join(rows, "; ");
}

}  // namespace

std::string serialize(const Scenario& s) {
  // every populated section is written, so parsing gives back an equal value
  std::ostringstream o;
  o << "task = " << to_string(s.task) << "\n";
  if (!s.description.empty()) o << "description = " << s.description << "\n";
  o << "\n[ring]\n";
  if (s.ring.kind != "padic") o << "kind = " << s.ring.kind << "\n";
  o << "p = " << s.ring.p << "\n";
  if (s.ring.q != 0) o << "q = " << s.ring.q << "\n";
  o << "N = " << s.ring.N << "\nM = " << s.ring.M << "\nd = " << s.ring.d << "\n";
  o << "\n[parameters]\nk = " << s.k << "\nregion = " << join(s.region, ", ") << "\n";
  for (const auto& c : s.cycles) o << "\n[cycle " << c.label << "]\ngenerators = " << join(c.generators, ", ") << "\n";
  if (!s.point.empty()) o << "\n[fiber]\ns = " << join(s.point, ", ") << "\n";
  o << "\n[budget]\nrefine_max = " << s.refine_max << "\n";
  if (!s.artin_rees.f.empty()) {
    const auto& a = s.artin_rees;
    o << "\n[artin-rees]\nf = " << a.f << "\nm_max = " << a.m_max << "\n";
    if (a.k_max) o << "k_max = " << *a.k_max << "\n";
    if (!a.transfer.empty()) o << "transfer = " << join(a.transfer, ", ") << "\n";
    if (a.lift) o << "lift = " << *a.lift << "\n";
    o << "lift_m = " << a.lift_m << "\n";
  }
  if (!s.lattice.gram.empty()) {
    const auto& l = s.lattice;
    o << "\n[lattice]\np = " << l.p << "\nn = " << l.n << "\nprecision = " << l.precision << "\ngram = "
      << matrix_text(l.gram) << "\ng = " << matrix_text(l.g) << "\nu = " << join(l.u, " ") << "\n";
    o << "perturbations = " << l.perturbations << "\n";
  }
  if (!s.expect.empty()) {
    o << "\n[expect]\n";
    for (const auto& [k, v] : s.expect) o << k << " = " << v << "\n";
  }
  return o.str();
}

}  // namespace lcint::app
