#include "operadix/deformation.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <random>
#include <set>

#include "operadix/dg_io.hpp"

namespace operadix::deform {

using dg::CanonicalTree;
using dg::TermList;

namespace {

HBar memoize(HBar fn) {
  auto cache = std::make_shared<std::map<GradedLabel, std::optional<Element>>>();
  return [fn = std::move(fn), cache](const GradedLabel& g) -> std::optional<Element> {
    auto it = cache->find(g);
    if (it == cache->end()) it = cache->emplace(g, fn(g)).first;
    return it->second;
  };
}

}  // namespace

// ---------------------------------------------------------------------------
// Relative derivations

RelativeDerivation::RelativeDerivation(const OperadMorphism* f, const OperadMorphism* g, HBar hbar)
    : f_(f), g_(g), hbar_(std::move(hbar)) {}

Element RelativeDerivation::on_generator(const GradedLabel& g) const {
  if (!g.is_nu()) return Element::zero(g.arity());
  auto v = hbar_(g);
  if (!v) return Element::zero(g.arity());
  if (!v->is_zero()) {
    if (v->arity() != g.arity())
      throw std::invalid_argument("h-bar(" + g.to_string() + ") has the wrong arity");
    auto d = v->degree();
    if (!d || *d != g.degree() + 1)
      throw std::invalid_argument("h-bar(" + g.to_string() + ") must have degree " +
                                  std::to_string(g.degree() + 1));
  }
  return *v;
}

const TermList* RelativeDerivation::hbar_list(const GradedLabel& g) const {
  if (auto it = cache_.find(g); it != cache_.end()) return &it->second;
  if (!hbar_(g)) return nullptr;
  return &cache_.emplace(g, dg::term_list(on_generator(g))).first->second;
}

Element RelativeDerivation::operator()(const Element& x) const {
  Element out(x.arity());
  for (const auto& [t, c] : x.terms()) {
    const auto labels = t.nu_labels();
    int prefix = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const int deg = labels[j].degree();
      const TermList* hl = hbar_list(labels[j]);
      if (hl && !hl->empty()) {
        std::vector<const TermList*> choices(labels.size(), nullptr);
        for (std::size_t i = 0; i < labels.size(); ++i) {
          if (i < j) choices[i] = f_->replacement(labels[i]);
          else if (i > j) choices[i] = g_->replacement(labels[i]);
        }
        choices[j] = hl;
        out += dg::substitute(t, choices) * (prefix % 2 ? Integer(-c) : c);
      }
      prefix += deg;
    }
  }
  return out;
}

RelativeDerivation extend_relative_derivation(const OperadMorphism& f, const OperadMorphism& g, HBar hbar) {
  return RelativeDerivation(&f, &g, memoize(std::move(hbar)));
}

// ---------------------------------------------------------------------------
// Homotopy checks

nlohmann::json HomotopyReport::to_json() const {
  nlohmann::json j;
  j["generators_checked"] = generators_checked;
  j["composites_checked"] = composites_checked;
  j["passed"] = passed();
  nlohmann::json v = nlohmann::json::array();
  for (const auto& w : violations) v.push_back({{"element", w.element}, {"residual", w.residual}});
  j["violations"] = std::move(v);
  return j;
}

Element homotopy_residual(const RelativeDerivation& h, const Element& x) {
  Element r = dg::evaluate_morphism(h.f(), x);
  r -= dg::evaluate_morphism(h.g(), x);
  r -= dg::differential(h(x));
  r -= h(dg::differential(x));
  return r;
}

HomotopyReport check_homotopy(const RelativeDerivation& h, const std::vector<GradedLabel>& generators,
                              const std::vector<Element>& composites) {
  HomotopyReport rep;
  auto run = [&](const Element& x) {
    Element r = homotopy_residual(h, x);
    if (!r.is_zero()) rep.violations.push_back({dg::to_text(x), dg::to_text(r)});
  };
  for (const auto& g : generators) {
    run(dg::generator(g));
    ++rep.generators_checked;
  }
  for (const auto& x : composites) {
    run(x);
    ++rep.composites_checked;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Deformation lemma

Deformation deform(const OperadMorphism& g, HBar hbar, const std::function<int(const GradedLabel&)>& rank,
                   std::vector<GradedLabel> free) {
  hbar = memoize(std::move(hbar));
  std::stable_sort(free.begin(), free.end(),
                   [&](const GradedLabel& a, const GradedLabel& b) { return rank(a) < rank(b); });
  const std::set<GradedLabel> in_scope(free.begin(), free.end());

  // f agrees with g off the free generators.
  OperadMorphism f(
      "f", [g, hbar](const GradedLabel& l) { return !hbar(l) && g.fixes(l); },
      [g, hbar](const GradedLabel& l) -> std::optional<Element> {
        if (hbar(l) || g.fixes(l)) return std::nullopt;
        return g.image(l);
      });

  Deformation out{f, hbar, {}};
  for (const auto& x : free) {
    if (!hbar(x)) throw std::invalid_argument("deform: " + x.to_string() + " has no h-bar value");
    const Element dx = dg::d_generator(x);
    for (const auto& [t, c] : dx.terms()) {
      for (const auto& l : t.nu_labels()) {
        if (!hbar(l)) continue;
        if (!in_scope.count(l))
          throw FiltrationViolation("d(" + x.to_string() + ") involves " + l.to_string() +
                                    ", which lies outside the truncation");
        if (rank(l) >= rank(x))
          throw FiltrationViolation("d(" + x.to_string() + ") involves " + l.to_string() +
                                    " of rank " + std::to_string(rank(l)) + " >= " + std::to_string(rank(x)));
      }
    }
    const RelativeDerivation h = out.h(g);
    Element fx = g.image(x);
    fx += dg::differential(h.on_generator(x));
    try {
      fx += h(dx);
    } catch (const std::out_of_range& e) {
      throw FiltrationViolation(std::string("deform: ") + e.what());
    }
    out.f.assign(x, fx);
    out.order.push_back(x);
  }
  return out;
}

Element gordo_h(const GradedLabel& nu, int m) {
  if (!nu.is_nu() || dg::cardinality(nu.s) != m)
    throw std::invalid_argument("gordo_h: expected a generator with |S| = " + std::to_string(m));
  const int j = dg::min_element(nu.s);
  Element x = dg::compose(dg::generator(GradedLabel::nu(nu.n + 1, dg::shift(nu.s, 1))), j,
                          dg::generator(GradedLabel::unit()));
  return j % 2 ? -x : x;
}

// ---------------------------------------------------------------------------
// Random composites

std::vector<Element> random_composites(int m, int max_n, std::uint64_t seed, std::size_t count,
                                       int max_generators) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<GradedLabel> pool;
  for (int level = 1; level <= m; ++level)
    for (const auto& g : dg::generators_at_level(level, max_n)) pool.push_back(g);
  pool.push_back(GradedLabel::mu());
  pool.push_back(GradedLabel::mu(3));
  const GradedLabel unit = GradedLabel::unit();

  std::vector<Element> out;
  out.reserve(count);
  while (out.size() < count) {
    Element x = dg::generator(pool[pick(pool.size() - 2)]);
    const int steps = 1 + static_cast<int>(pick(static_cast<std::size_t>(std::max(1, max_generators))));
    for (int s = 0; s < steps && x.arity() > 0; ++s) {
      const int i = 1 + static_cast<int>(pick(static_cast<std::size_t>(x.arity())));
      const GradedLabel& y = pick(5) == 0 ? unit : pool[pick(pool.size())];
      x = dg::compose(x, i, dg::generator(y));
    }
    if (!x.is_zero()) out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strong deformation retraction

bool SDR::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

nlohmann::json SDR::to_json() const {
  nlohmann::json j;
  j["bounds"] = {{"m", m}, {"max_n", max_n}, {"composites", composites}};
  j["seed"] = seed;
  j["passed"] = passed();
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : checks) c[k] = v;
  j["checks"] = std::move(c);
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json g;
    g["generator"] = r.generator.to_string();
    g["f"] = dg::to_text(r.f);
    g["h"] = dg::to_text(r.h);
    g["homotopy_residual_zero"] = r.homotopy_ok;
    g["in_lower_filtration"] = r.in_lower_level;
    g["commutes_with_d"] = r.commutes_with_d;
    gens.push_back(std::move(g));
  }
  j["generators"] = std::move(gens);
  nlohmann::json ch = composite_homotopy.to_json();
  ch["gating"] = false;
  j["composite_homotopy"] = std::move(ch);
  return j;
}

SDR build_sdr(int m, int max_n, std::uint64_t seed, std::size_t composites) {
  if (m < 1 || max_n < m || max_n >= dg::kMaxN)
    throw std::invalid_argument("build_sdr: need 1 <= m <= max_n < " + std::to_string(dg::kMaxN));
  const auto start = std::chrono::steady_clock::now();
  SDR sdr;
  sdr.m = m;
  sdr.max_n = max_n;
  sdr.seed = seed;
  sdr.composites = composites;
  sdr.identity = dg::identity_morphism();
  sdr.inclusion = dg::identity_morphism();

  HBar hbar = [m](const GradedLabel& l) -> std::optional<Element> {
    if (!l.is_nu() || dg::cardinality(l.s) != m) return std::nullopt;
    return gordo_h(l, m);
  };
  const auto free = dg::generators_at_level(m, max_n);
  sdr.deformation = deform(sdr.identity, hbar, [](const GradedLabel& l) { return l.n; }, free);
  sdr.checks["rank_support"] = true;

  const OperadMorphism& f = sdr.deformation.f;
  const RelativeDerivation h = sdr.h();

  // r has the values of f, read in the lower level.
  const auto lower = [m](const GradedLabel& l) { return dg::cardinality(l.s) < m; };
  sdr.retraction = OperadMorphism("r", lower);
  for (const auto& x : free) sdr.retraction.assign(x, f.image(x));

  bool filtration = true, homotopy = true, dg_morphism = true, lr = true;
  for (const auto& x : free) {
    GeneratorRecord r;
    r.generator = x;
    r.f = f.image(x);
    r.h = h.on_generator(x);
    r.homotopy_ok = homotopy_residual(h, dg::generator(x)).is_zero();
    r.in_lower_level = dg::in_filtration(r.f, m - 1);
    r.commutes_with_d =
        dg::differential(r.f) == dg::evaluate_morphism(f, dg::d_generator(x));
    filtration &= r.in_lower_level;
    homotopy &= r.homotopy_ok;
    dg_morphism &= r.commutes_with_d;
    lr &= dg::evaluate_morphism(sdr.inclusion, sdr.retraction.image(x)) == r.f;
    sdr.records.push_back(std::move(r));
  }

  if (composites > 0)
    sdr.composite_homotopy = check_homotopy(h, {}, random_composites(m, max_n, seed, composites));

  bool retraction = true;
  for (int level = 1; level < m; ++level) {
    for (const auto& g : dg::generators_at_level(level, max_n)) {
      const Element x = dg::generator(g);
      retraction &= dg::evaluate_morphism(sdr.retraction, dg::evaluate_morphism(sdr.inclusion, x)) == x;
    }
  }

  sdr.checks["filtration"] = filtration;
  sdr.checks["homotopy"] = homotopy;
  sdr.checks["dg_morphism"] = dg_morphism;
  sdr.checks["retraction"] = retraction;
  sdr.checks["f_equals_lr"] = lr;
  sdr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sdr;
}

}  // namespace operadix::deform
