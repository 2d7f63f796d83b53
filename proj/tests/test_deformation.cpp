#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "operadix/deformation.hpp"
#include "operadix/dg_io.hpp"

using namespace operadix;
using namespace operadix::deform;
using dg::make_subset;

namespace {

GradedLabel nu_label(int n, std::initializer_list<int> s) { return GradedLabel::nu(n, make_subset(s)); }
Element nu(int n, std::initializer_list<int> s) { return dg::generator(nu_label(n, s)); }
Element E(const std::string& s) { return dg::parse_element(s); }
const Element& unit() {
  static const Element u = dg::generator(GradedLabel::unit());
  return u;
}

}  // namespace

TEST_CASE("h-bar of the gordo retraction") {
  CHECK(gordo_h(nu_label(1, {1}), 1) == -dg::compose(nu(2, {2}), 1, unit()));
  CHECK(gordo_h(nu_label(3, {2}), 1) == dg::compose(nu(4, {3}), 2, unit()));
  CHECK(gordo_h(nu_label(3, {1, 3}), 2) == -dg::compose(nu(4, {2, 4}), 1, unit()));
  CHECK_THROWS_AS(gordo_h(nu_label(3, {1, 3}), 1), std::invalid_argument);
  CHECK_THROWS_AS(gordo_h(GradedLabel::mu(), 1), std::invalid_argument);
  for (int m = 1; m <= 3; ++m)
    for (const auto& g : dg::generators_at_level(m, 5)) {
      const Element h = gordo_h(g, m);
      CHECK(h.degree() == g.degree() + 1);
      CHECK(h.arity() == g.arity());
    }
}

TEST_CASE("reference values for m = 1") {
  const SDR s = build_sdr(1, 4);
  REQUIRE(s.passed());
  const auto& f = s.deformation.f;
  CHECK(f.image(nu_label(1, {1})) == unit());
  CHECK(f.image(nu_label(2, {1})).is_zero());
  CHECK(f.image(nu_label(2, {2})).is_zero());
  const Element n11 = nu(1, {1});
  CHECK(dg::differential(s.h().on_generator(nu_label(1, {1}))) == -n11 + unit());
  // Hand computation: h(ν₁) = -ν₂^{2} ∘₁ u and d(ν₂^{2}) = μ ∘₂ ν₁ - id.
  CHECK(dg::to_text(s.h().on_generator(nu_label(1, {1}))) == "-nu(2,{2}) o_1 u");
  CHECK(s.checks.at("rank_support"));
}

TEST_CASE("retraction for m = 1, 2, 3 up to n = 6") {
  for (int m = 1; m <= 3; ++m) {
    const SDR s = build_sdr(m, 6, 1, 20);
    INFO("m=" << m);
    for (const auto& [k, v] : s.checks) {
      INFO(k);
      CHECK(v);
    }
    CHECK(s.records.size() == dg::generators_at_level(m, 6).size());
    const auto h = s.h();
    for (const auto& r : s.records) {
      INFO(r.generator.to_string());
      // Recomputed independently of the stored flags.
      const Element x = dg::generator(r.generator);
      const Element lhs = r.f - x;
      const Element rhs = dg::differential(r.h) + h(dg::d_generator(r.generator));
      CHECK(lhs == rhs);
      CHECK(dg::in_filtration(r.f, m - 1));
      CHECK(dg::differential(r.f) == dg::evaluate_morphism(s.deformation.f, dg::d_generator(r.generator)));
    }
    for (int level = 1; level < m; ++level)
      for (const auto& g : dg::generators_at_level(level, 6)) {
        const Element x = dg::generator(g);
        CHECK(dg::evaluate_morphism(s.retraction, x) == x);
      }
  }
}

TEST_CASE("the construction is deterministic") {
  const SDR a = build_sdr(2, 5), b = build_sdr(2, 5);
  CHECK(a.to_json() == b.to_json());
  for (const auto& g : dg::generators_at_level(2, 5)) CHECK(a.deformation.f.image(g) == b.deformation.f.image(g));
}

TEST_CASE("composite homotopy: documented counterexample") {
  const SDR s = build_sdr(1, 3, 1, 0);
  const auto h = s.h();
  const Element big_h = s.h().on_generator(nu_label(1, {1}));
  const Element t1 = dg::compose(nu(2, {1}), 1, nu(1, {1}));
  const Element t2 = dg::compose(nu(2, {2}), 1, nu(1, {1}));
  CHECK(homotopy_residual(h, t1).is_zero());
  const Element left = dg::compose(dg::compose(E("mu"), 1, nu(1, {1})), 1, big_h);
  const Element right = dg::compose(dg::compose(E("mu"), 2, nu(1, {1})), 1, big_h);
  CHECK(homotopy_residual(h, t2) == left - right);
  CHECK_FALSE(homotopy_residual(h, t2).is_zero());

  const SDR r = build_sdr(1, 3, 1, 50);
  CHECK(r.passed());
  CHECK(r.to_json()["composite_homotopy"]["gating"] == false);
  CHECK(r.composite_homotopy.composites_checked == 50);
}

TEST_CASE("deform rejects bad ranks and bad h-bar values") {
  const auto g = dg::identity_morphism();
  HBar hbar = [](const GradedLabel& l) -> std::optional<Element> {
    if (!l.is_nu() || dg::cardinality(l.s) != 1) return std::nullopt;
    return gordo_h(l, 1);
  };
  const auto free = dg::generators_at_level(1, 3);
  CHECK_THROWS_AS(deform::deform(g, hbar, [](const GradedLabel&) { return 0; }, free), FiltrationViolation);
  CHECK_THROWS_AS(deform::deform(g, hbar, [](const GradedLabel& l) { return -l.n; }, free), FiltrationViolation);
  // Truncating too low leaves generators of d(ν₃) out of scope.
  std::vector<GradedLabel> partial{nu_label(3, {2})};
  CHECK_THROWS_AS(deform::deform(g, hbar, [](const GradedLabel& l) { return l.n; }, partial), FiltrationViolation);

  HBar wrong = [](const GradedLabel& l) -> std::optional<Element> {
    if (!l.is_nu()) return std::nullopt;
    return dg::generator(l);  // degree |l|, not |l| + 1
  };
  const RelativeDerivation bad = extend_relative_derivation(g, g, wrong);
  CHECK_THROWS_AS(bad.on_generator(nu_label(2, {1})), std::invalid_argument);
  CHECK(bad.on_generator(GradedLabel::mu()).is_zero());

  CHECK_THROWS_AS(build_sdr(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_sdr(3, 2), std::invalid_argument);
}

TEST_CASE("random composites stay in the filtration") {
  for (int m = 1; m <= 3; ++m)
    for (const auto& x : random_composites(m, 4, 5, 40)) {
      CHECK(dg::in_filtration(x, m));
      CHECK(x.degree().has_value());
    }
}

TEST_CASE("golden m = 1 retraction") {
  std::ifstream in(std::filesystem::path(OPERADIX_TEST_FIXTURES) / "sdr" / "m1.json");
  REQUIRE(in);
  const auto golden = nlohmann::json::parse(in);
  const SDR s = build_sdr(1, 3);
  REQUIRE(golden.size() == s.records.size());
  for (std::size_t k = 0; k < golden.size(); ++k) {
    CHECK(golden[k]["generator"] == s.records[k].generator.to_string());
    CHECK(dg::element_from_json(golden[k]["f"]) == s.records[k].f);
    CHECK(dg::element_from_json(golden[k]["h"]) == s.records[k].h);
  }
}
