#include "operadix/verify.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

#include "operadix/deformation.hpp"
#include "operadix/dg_io.hpp"
#include "operadix/grpd_operad.hpp"
#include "operadix/set_operad.hpp"

namespace operadix::verify {

namespace fs = std::filesystem;
using dg::Ambient;
using dg::CanonicalTree;
using dg::Element;
using dg::GradedLabel;
using dg::Integer;
using nlohmann::json;

namespace {

constexpr std::size_t kMaxWitnesses = 16;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::vector<Ambient> ambients(const Config& c) {
  if (c.ambient) return {*c.ambient};
  return {Ambient::kUinfA, Ambient::kUinfUA};
}

std::optional<json> read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  return json::parse(in);
}

struct Witnesses {
  std::uint64_t count = 0;
  json list = json::array();
  void add(json w) {
    ++count;
    if (list.size() < kMaxWitnesses) list.push_back(std::move(w));
  }
};

}  // namespace

std::string d_fixture_name(const GradedLabel& g) {
  std::string s = "nu" + std::to_string(g.n) + "_";
  bool first = true;
  for (int e : dg::subset_elements(g.s)) {
    if (!first) s += '-';
    first = false;
    s += std::to_string(e);
  }
  return s + ".json";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"d2", "derivation", "axioms", "gordo", "census", "generation", "pushout"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Config& c) {
  if (name == "d2") return verify_d2(c);
  if (name == "derivation") return verify_derivation(c);
  if (name == "axioms") return verify_axioms(c);
  if (name == "gordo") return verify_gordo(c);
  if (name == "census") return verify_census(c);
  if (name == "generation") return verify_generation(c);
  if (name == "pushout") return verify_pushout(c);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------

SuiteResult verify_d2(const Config& c) {
  require(c.max >= 2 && c.max <= 12, "--max must lie in 2..12");
  const std::size_t samples = c.samples ? c.samples : 500;
  SuiteResult r;
  json& rep = r.report;
  rep["suite"] = "d2";
  rep["bounds"] = {{"max_n_plus_S", c.max}, {"composites", samples}};
  rep["seed"] = c.seed;
  Witnesses w;
  const auto gens = dg::generators_up_to(c.max);
  json per = json::object();
  for (Ambient a : ambients(c)) {
    std::uint64_t checked = 0;
    for (const auto& g : gens) {
      const Element d = dg::d_generator(g);
      ++checked;
      if (!dg::in_ambient(d, a)) w.add({{"ambient", to_string(a)}, {"generator", g.to_string()}, {"issue", "d leaves the ambient"}});
      if (!d.is_zero() && (d.degree() != g.degree() - 1 || d.arity() != g.arity()))
        w.add({{"ambient", to_string(a)}, {"generator", g.to_string()}, {"issue", "degree or arity"}});
      const Element dd = dg::differential(d);
      if (!dd.is_zero()) w.add({{"ambient", to_string(a)}, {"generator", g.to_string()}, {"dd", dg::to_text(dd)}});
    }
    std::uint64_t composites = 0;
    for (const auto& t : dg::random_trees(c.seed, samples, c.max, a)) {
      ++composites;
      const Element x(t);
      const Element dx = dg::differential(x);
      if (!dg::in_ambient(dx, a))
        w.add({{"ambient", to_string(a)}, {"element", dg::to_text(x)}, {"issue", "d leaves the ambient"}});
      if (!dx.is_zero() && dx.degree() != t.degree() - 1)
        w.add({{"ambient", to_string(a)}, {"element", dg::to_text(x)}, {"issue", "degree"}});
      const Element dd = dg::differential(dx);
      if (!dd.is_zero()) w.add({{"ambient", to_string(a)}, {"element", dg::to_text(x)}, {"dd", dg::to_text(dd)}});
    }
    per[to_string(a)] = {{"generators", checked}, {"composites", composites}};
  }
  rep["checked"] = per;

  if (!c.fixtures.empty() && fs::is_directory(fs::path(c.fixtures) / "dg")) {
    std::uint64_t golden = 0;
    for (const auto& g : dg::generators_up_to(std::min(c.max, 6))) {
      const auto j = read_json(fs::path(c.fixtures) / "dg" / d_fixture_name(g));
      if (!j) {
        w.add({{"golden", d_fixture_name(g)}, {"issue", "missing"}});
        continue;
      }
      ++golden;
      if (!(dg::element_from_json(*j) == dg::d_generator(g)))
        w.add({{"golden", d_fixture_name(g)}, {"issue", "mismatch"}});
    }
    rep["golden_checked"] = golden;
  } else {
    rep["golden_checked"] = 0;
  }
  rep["violation_count"] = w.count;
  rep["violations"] = w.list;
  r.passed = w.count == 0;
  rep["passed"] = r.passed;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

class HomogeneousPool {
 public:
  HomogeneousPool(std::uint64_t seed, int bound, Ambient a) : rng_(seed ^ 0x9e3779b97f4a7c15ULL) {
    for (const auto& t : dg::random_trees(seed, 600, bound, a)) by_key_[{t.arity(), t.degree()}].push_back(t);
    for (const auto& [k, v] : by_key_) keys_.push_back(k);
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  /// A sum of 1..3 trees of one arity and degree with coefficients in ±1..3.
  Element draw(int min_arity = 0) {
    while (true) {
      const auto& key = keys_[pick(keys_.size())];
      if (key.first < min_arity) continue;
      const auto& bucket = by_key_[key];
      Element x(key.first);
      const std::size_t terms = 1 + pick(3);
      for (std::size_t k = 0; k < terms; ++k) {
        Integer coeff = static_cast<int>(1 + pick(3));
        if (pick(2)) coeff = -coeff;
        x.add_term(bucket[pick(bucket.size())], coeff);
      }
      if (!x.is_zero()) return x;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::map<std::pair<int, int>, std::vector<CanonicalTree>> by_key_;
  std::vector<std::pair<int, int>> keys_;
};

int degree_of(const Element& x) { return x.degree().value_or(0); }

}  // namespace

SuiteResult verify_derivation(const Config& c) {
  require(c.max >= 2 && c.max <= 10, "--max must lie in 2..10");
  const std::size_t samples = c.samples ? c.samples : 200;
  SuiteResult r;
  json& rep = r.report;
  rep["suite"] = "derivation";
  rep["bounds"] = {{"max_n_plus_S", c.max}, {"instances_per_law", samples}};
  rep["seed"] = c.seed;
  Witnesses w;
  json counts = json::object();
  for (Ambient a : ambients(c)) {
    HomogeneousPool pool(c.seed, c.max, a);
    std::map<std::string, std::uint64_t> n;
    const Element id = dg::identity_element();
    for (std::size_t s = 0; s < samples; ++s) {
      {  // (1') (a o_i b) o_j c = (-1)^{|b||c|} (a o_j c) o_{i+q-1} b, j < i
        const Element x = pool.draw(2), y = pool.draw(), z = pool.draw();
        const int i = 2 + static_cast<int>(pool.pick(static_cast<std::size_t>(x.arity() - 1)));
        const int j = 1 + static_cast<int>(pool.pick(static_cast<std::size_t>(i - 1)));
        const Element lhs = dg::compose(dg::compose(x, i, y), j, z);
        Element rhs = dg::compose(dg::compose(x, j, z), i + z.arity() - 1, y);
        if ((degree_of(y) * degree_of(z)) % 2) rhs = -rhs;
        ++n["exchange"];
        if (!(lhs == rhs)) w.add({{"law", "exchange"}, {"a", dg::to_text(x)}, {"b", dg::to_text(y)}, {"c", dg::to_text(z)}, {"i", i}, {"j", j}});
      }
      {  // (2) (a o_i b) o_j c = a o_i (b o_{j-i+1} c), i <= j < i+p
        const Element x = pool.draw(1), y = pool.draw(1), z = pool.draw();
        const int i = 1 + static_cast<int>(pool.pick(static_cast<std::size_t>(x.arity())));
        const int j = i + static_cast<int>(pool.pick(static_cast<std::size_t>(y.arity())));
        const Element lhs = dg::compose(dg::compose(x, i, y), j, z);
        const Element rhs = dg::compose(x, i, dg::compose(y, j - i + 1, z));
        ++n["vertical"];
        if (!(lhs == rhs)) w.add({{"law", "vertical"}, {"a", dg::to_text(x)}, {"b", dg::to_text(y)}, {"c", dg::to_text(z)}, {"i", i}, {"j", j}});
      }
      {  // (3), (4)
        const Element x = pool.draw();
        bool ok = dg::compose(id, 1, x) == x;
        for (int i = 1; i <= x.arity(); ++i) ok = ok && dg::compose(x, i, id) == x;
        ++n["unit"];
        if (!ok) w.add({{"law", "unit"}, {"a", dg::to_text(x)}});
      }
      {  // d(x o_i y) = dx o_i y + (-1)^{|x|} x o_i dy
        const Element x = pool.draw(1), y = pool.draw();
        const int i = 1 + static_cast<int>(pool.pick(static_cast<std::size_t>(x.arity())));
        const Element lhs = dg::differential(dg::compose(x, i, y));
        Element second = dg::compose(x, i, dg::differential(y));
        if (degree_of(x) % 2) second = -second;
        const Element rhs = dg::compose(dg::differential(x), i, y) + second;
        ++n["derivation"];
        if (!(lhs == rhs)) w.add({{"law", "derivation"}, {"x", dg::to_text(x)}, {"y", dg::to_text(y)}, {"i", i}});
      }
    }
    counts[to_string(a)] = n;
  }
  rep["instances"] = counts;
  rep["violation_count"] = w.count;
  rep["violations"] = w.list;
  r.passed = w.count == 0;
  rep["passed"] = r.passed;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult verify_axioms(const Config& c) {
  require(c.max_arity >= 1 && c.max_arity <= 5, "--max-arity must lie in 1..5");
  require(c.max_corks >= 0 && c.max_corks <= 4, "--max-corks must lie in 0..4");
  require(c.size >= 1 && c.size <= 3, "--size must lie in 1..3");
  SuiteResult r;
  json& rep = r.report;
  rep["suite"] = "axioms";
  rep["bounds"] = {{"max_arity", c.max_arity}, {"max_corks", c.max_corks}, {"size", c.size}};
  rep["seed"] = c.seed;
  bool ok = true;
  json reports = json::array();
  auto add = [&](const set::AxiomReport& a) {
    ok = ok && a.passed() && !a.vacuous();
    reports.push_back(a.to_json());
  };
  add(set::check_axioms(set::AssOperad{}, c.max_arity, 0));
  add(set::check_axioms(set::UAssOperad{}, c.max_arity, 0));
  add(set::check_axioms(set::CorollaOperad(set::CorkFlavor::kUinfA, c.max_corks), c.max_arity, 0));
  add(set::check_axioms(set::CorollaOperad(set::CorkFlavor::kU, c.max_corks), c.max_arity, 0));
  // End(X): exhaustive where the triple count stays small, sampled otherwise.
  for (int s = 1; s <= c.size; ++s) {
    set::FiniteEndOperad end(s);
    if (s == 1) {
      add(set::check_axioms(end, c.max_arity, 0));
    } else if (s == 2) {
      add(set::check_axioms(end, 2, 0));
      add(set::check_axioms(end, 3, 24));
    } else {
      add(set::check_axioms(end, 2, 48));
    }
  }
  rep["operads"] = std::move(reports);

  const set::CorollaOperad a(set::CorkFlavor::kUinfA, 8), u(set::CorkFlavor::kU, 8);
  json examples = json::array();
  auto example = [&](const set::CorollaOperad& op, const std::string& x, int i, const std::string& y,
                     const std::string& expected) {
    const std::string got = op.to_string(op.compose(op.parse(x), i, op.parse(y)));
    const bool pass = got == op.to_string(op.parse(expected));
    ok = ok && pass;
    examples.push_back({{"operad", op.name()}, {"x", x}, {"i", i}, {"y", y}, {"expected", expected}, {"got", got}, {"passed", pass}});
  };
  example(a, "mu^2(id,u,id)", 2, "u", "mu^2(id,u,u)");
  example(u, "mu^4(id,u',u',id,id)", 2, "u", "mu^3(id,u',u',id)");
  example(u, "mu(id,u')", 1, "u", "u'");
  rep["worked_examples"] = std::move(examples);
  r.passed = ok;
  rep["passed"] = ok;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult verify_gordo(const Config& c) {
  require(c.m >= 1 && c.m <= 6, "--m must lie in 1..6");
  require(c.max_n >= c.m && c.max_n <= 10, "--max-n must lie in m..10");
  const std::size_t samples = c.samples ? c.samples : 100;
  const deform::SDR sdr = deform::build_sdr(c.m, c.max_n, c.seed, samples);
  SuiteResult r;
  json& rep = r.report;
  rep = sdr.to_json();
  rep["suite"] = "gordo";
  bool ok = sdr.passed();

  if (c.m == 1) {
    const auto nu = [](int n, std::initializer_list<int> s) { return GradedLabel::nu(n, dg::make_subset(s)); };
    const Element u = dg::generator(GradedLabel::unit());
    const auto& f = sdr.deformation.f;
    const auto h = sdr.h();
    const Element nu11 = dg::generator(nu(1, {1}));
    json pv;
    pv["f(nu(1,{1})) = u"] = f.image(nu(1, {1})) == u;
    if (c.max_n >= 2) {
      pv["f(nu(2,{1})) = 0"] = f.image(nu(2, {1})).is_zero();
      pv["f(nu(2,{2})) = 0"] = f.image(nu(2, {2})).is_zero();
    }
    pv["dh(nu(1,{1})) = -nu(1,{1}) + u"] = dg::differential(h(nu11)) == u - nu11;
    for (const auto& [k, v] : pv.items()) ok = ok && v.get<bool>();
    rep["reference_values"] = std::move(pv);
  }

  const fs::path golden = fs::path(c.fixtures) / "sdr" / ("m" + std::to_string(c.m) + ".json");
  std::uint64_t golden_checked = 0;
  json mismatches = json::array();
  if (!c.fixtures.empty()) {
    if (auto j = read_json(golden)) {
      for (const auto& entry : *j) {
        const GradedLabel g = dg::parse_generator(entry.at("generator").get<std::string>());
        if (g.n > c.max_n) continue;
        ++golden_checked;
        const bool f_ok = dg::element_from_json(entry.at("f")) == sdr.deformation.f.image(g);
        const bool h_ok = dg::element_from_json(entry.at("h")) == sdr.h().on_generator(g);
        if (!f_ok || !h_ok) mismatches.push_back(g.to_string());
      }
    }
  }
  rep["golden_checked"] = golden_checked;
  rep["golden_mismatches"] = mismatches;
  ok = ok && mismatches.empty();
  r.passed = ok;
  rep["passed"] = ok;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult verify_census(const Config& c) {
  require(c.size >= 1 && c.size <= 4, "--size must lie in 1..4");
  SuiteResult r;
  json& rep = r.report;
  rep["suite"] = "census";
  rep["bounds"] = {{"size", c.size}};
  rep["seed"] = c.seed;
  bool ok = true;
  json censuses = json::array();
  json transfer = json::array();
  for (int s = 1; s <= c.size; ++s) {
    const set::MonoidCensus mc = set::monoid_census(s);
    ok = ok && mc.max_units_per_op == 1;
    censuses.push_back(mc.to_json());
    if (s > 3) continue;  // End(4) has 4^16 binary operations

    // Every binary operation with a left unit fu and a right unit gu.
    set::FiniteEndOperad end(s);
    std::uint64_t valid = 0, holds = 0;
    const std::size_t cells = static_cast<std::size_t>(s * s);
    std::vector<int> table(cells, 0);
    while (true) {
      const set::EndFunction m = end.binary(table);
      for (int fu = 0; fu < s; ++fu) {
        for (int gu = 0; gu < s; ++gu) {
          bool hyp = true;
          for (int x = 0; x < s && hyp; ++x)
            hyp = table[static_cast<std::size_t>(fu * s + x)] == x && table[static_cast<std::size_t>(x * s + gu)] == x;
          if (!hyp) continue;
          ++valid;
          if (set::unit_transfer_check(end, m, end.constant(fu), end.constant(gu))) ++holds;
        }
      }
      std::size_t k = 0;
      while (k < cells && ++table[k] == s) table[k++] = 0;
      if (k == cells) break;
    }
    ok = ok && valid == holds && valid > 0;
    transfer.push_back({{"carrier_size", s}, {"valid_instances", valid}, {"transfer_holds", holds}});
  }
  rep["census"] = std::move(censuses);
  rep["unit_transfer"] = std::move(transfer);
  r.passed = ok;
  rep["passed"] = ok;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult verify_generation(const Config& c) {
  require(c.max_arity >= 0 && c.max_arity <= 6, "--max-arity must lie in 0..6");
  require(c.max_corks >= 0 && c.max_corks <= 4, "--max-corks must lie in 0..4");
  const grpd::GenerationState st = grpd::generation_closure(c.max_arity, c.max_corks);
  SuiteResult r;
  r.report = st.to_json();
  r.report["suite"] = "generation";
  r.report["seed"] = c.seed;
  r.passed = st.objects_complete() && st.morphisms_complete();
  r.report["passed"] = r.passed;
  return r;
}

SuiteResult verify_pushout(const Config& c) {
  require(c.max_arity >= 0 && c.max_arity <= 6, "--max-arity must lie in 0..6");
  require(c.max_corks >= 0 && c.max_corks <= 4, "--max-corks must lie in 0..4");
  const grpd::PushoutReport p = grpd::pushout_square_object_check(c.max_arity, c.max_corks);
  SuiteResult r;
  r.report = p.to_json();
  r.report["suite"] = "pushout";
  r.report["seed"] = c.seed;
  r.passed = p.passed();
  r.report["passed"] = r.passed;
  return r;
}

}  // namespace operadix::verify
