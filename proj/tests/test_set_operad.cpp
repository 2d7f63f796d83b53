#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "operadix/coproduct.hpp"
#include "operadix/set_operad.hpp"

using namespace operadix;
using namespace operadix::set;

namespace {

template <class O>
void require_clean(const AxiomReport& r, const O& op) {
  INFO(op.name());
  CHECK(r.passed());
  CHECK_FALSE(r.vacuous());
  for (const auto& v : r.violations) MESSAGE(v.axiom << ": " << v.witness);
}

// Brute-force census over all |X|^(|X|^2) tables.
struct Brute {
  std::uint64_t associative = 0, unital = 0;
  int max_units = 0;
};

Brute brute_census(int s) {
  Brute b;
  const int cells = s * s;
  std::vector<int> t(static_cast<std::size_t>(cells), 0);
  auto at = [&](int x, int y) { return t[static_cast<std::size_t>(x * s + y)]; };
  while (true) {
    bool assoc = true;
    for (int x = 0; x < s && assoc; ++x)
      for (int y = 0; y < s && assoc; ++y)
        for (int z = 0; z < s && assoc; ++z) assoc = at(at(x, y), z) == at(x, at(y, z));
    if (assoc) {
      ++b.associative;
      int units = 0;
      for (int e = 0; e < s; ++e) {
        bool ok = true;
        for (int x = 0; x < s && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
        units += ok;
      }
      b.unital += units > 0;
      b.max_units = std::max(b.max_units, units);
    }
    int k = 0;
    while (k < cells && ++t[static_cast<std::size_t>(k)] == s) t[static_cast<std::size_t>(k++)] = 0;
    if (k == cells) break;
  }
  return b;
}

}  // namespace

TEST_CASE("Ass and uAss") {
  const AssOperad ass;
  const UAssOperad uass;
  CHECK(ass.compose(3, 2, 4) == 6);
  CHECK(uass.compose(2, 1, 0) == 1);
  CHECK(uass.compose(1, 1, 0) == 0);
  CHECK_THROWS(uass.compose(0, 1, 0));
  CHECK_THROWS(ass.compose(2, 3, 2));
  require_clean(check_axioms(ass, 4, 0), ass);
  require_clean(check_axioms(uass, 4, 0), uass);
  CHECK(check_axioms(uass, 4, 0).exhaustive);
  CHECK(ass.elements(0, 0).empty());
  CHECK(uass.elements(0, 0).size() == 1);
}

TEST_CASE("cork corollas: parsing and worked examples") {
  const CorollaOperad a(CorkFlavor::kUinfA, 3), u(CorkFlavor::kU, 3);
  for (const char* s : {"|", "mu", "u", "mu^2(id,u,u)", "mu^3(u,id,u,id)"}) CHECK(a.to_string(a.parse(s)) == s);
  CHECK(u.to_string(u.parse("u")) == "u");
  CHECK(u.to_string(u.parse("u'")) == "u'");
  CHECK_THROWS_AS(a.parse("u'"), std::invalid_argument);
  CHECK_THROWS_AS(a.parse("mu^2(id,u)"), std::invalid_argument);
  CHECK_THROWS_AS(a.unit(), std::logic_error);

  CHECK(a.compose(a.parse("mu^2(id,u,id)"), 2, a.parse("u")) == a.parse("mu^2(id,u,u)"));
  CHECK(u.compose(u.parse("mu^4(id,u',u',id,id)"), 2, u.parse("u")) == u.parse("mu^3(id,u',u',id)"));
  CHECK(u.compose(u.parse("mu(id,u')"), 1, u.parse("u")) == u.parse("u'"));
  // uAss unit laws inside Ob(U).
  CHECK(u.compose(u.mu(), 1, u.unit()) == u.identity());
  CHECK(u.compose(u.mu(), 2, u.unit()) == u.identity());
  // In Ob(u∞A^Grd) u is free: μ ∘₂ u keeps the cork.
  CHECK(a.compose(a.mu(), 2, a.cork()) == a.parse("mu(id,u)"));
  CHECK(a.arity(a.parse("mu(id,u)")) == 1);
}

TEST_CASE("cork corollas: axioms") {
  for (auto flavor : {CorkFlavor::kUinfA, CorkFlavor::kU}) {
    const CorollaOperad op(flavor, 3);
    const auto r = check_axioms(op, 4, 0);
    require_clean(r, op);
    CHECK(r.exhaustive);
    for (int n = 0; n <= 4; ++n)
      for (const auto& x : op.elements(n, 0)) {
        CHECK(op.valid(x));
        CHECK(x.cork_count() <= 3);
        CHECK(op.arity(x) == n);
      }
  }
  // Arity 0: u, mu(u,u), mu^2(u,u,u); Ob(U) also has the white u.
  const CorollaOperad a(CorkFlavor::kUinfA, 3), u(CorkFlavor::kU, 3);
  CHECK(a.elements(0, 0).size() == 3);
  // Arity n with c corks: choose the cork slots among n + c.
  CHECK(a.elements(2, 0).size() == 1 + 3 + 6 + 10);
  CHECK(u.elements(0, 0).size() == a.elements(0, 0).size() + 1);
}

TEST_CASE("End(X)") {
  const FiniteEndOperad e2(2);
  CHECK(e2.component_size(2) == std::optional<std::uint64_t>(16));
  const auto m = e2.binary({0, 1, 1, 0});  // xor
  const auto one = e2.constant(1);
  const auto neg = e2.compose(m, 2, one);
  CHECK(e2.apply(neg, {0}) == 1);
  CHECK(e2.apply(neg, {1}) == 0);
  // Direct evaluation oracle for a o_i b.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 3);
    const auto as = e2.elements(p, 0), bs = e2.elements(q, 0);
    const auto a = as[rng() % as.size()];
    const auto b = bs[rng() % bs.size()];
    const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p));
    const auto c = e2.compose(a, i, b);
    REQUIRE(c.arity == p + q - 1);
    for (std::uint64_t idx = 0; idx < *e2.component_size(p + q - 1); ++idx) {
      std::vector<int> xs;
      for (int k = p + q - 2; k >= 0; --k) xs.push_back(static_cast<int>((idx >> k) & 1u));
      std::vector<int> inner(xs.begin() + (i - 1), xs.begin() + (i - 1 + q));
      std::vector<int> outer(xs.begin(), xs.begin() + (i - 1));
      outer.push_back(e2.apply(b, inner));
      outer.insert(outer.end(), xs.begin() + (i - 1 + q), xs.end());
      CHECK(e2.apply(c, xs) == e2.apply(a, outer));
    }
  }
  require_clean(check_axioms(FiniteEndOperad(1), 4, 0), FiniteEndOperad(1));
  require_clean(check_axioms(e2, 2, 0), e2);
  const auto sampled = check_axioms(FiniteEndOperad(3), 2, 32);
  require_clean(sampled, FiniteEndOperad(3));
  CHECK_FALSE(sampled.exhaustive);
  CHECK_THROWS(FiniteEndOperad(0));
}

TEST_CASE("free operad and coproduct") {
  const FreeSetOperad f({{"x", 2}, {"c", 0}}, 3);
  require_clean(check_axioms(f, 3, 40), f);
  CHECK(f.arity(f.compose(f.generator("x"), 1, f.generator("c"))) == 1);

  const CoproductOperad<UAssOperad> co(UAssOperad{}, {{"v", 2}, {"w", 0}}, 2, 3);
  require_clean(check_axioms(co, 3, 40), co);
  const auto v = co.generator("v");
  CHECK(co.arity(v) == 2);
  CHECK(co.to_string(co.identity()) == "|");
  CHECK_THROWS_AS(co.generator("zz"), std::invalid_argument);
}

TEST_CASE("monoid census against brute force") {
  const std::uint64_t known[] = {1, 8, 113};  // associative operations on 1, 2, 3 points
  for (int s = 1; s <= 3; ++s) {
    const auto c = monoid_census(s);
    const auto b = brute_census(s);
    CHECK(c.carrier_size == s);
    CHECK(c.associative_count == b.associative);
    CHECK(c.associative_count == known[s - 1]);
    CHECK(c.unital_count == b.unital);
    CHECK(c.max_units_per_op == b.max_units);
    CHECK(c.max_units_per_op == 1);
  }
  CHECK(monoid_census(3).unital_count == 33);
  CHECK_THROWS_AS(monoid_census(0), std::invalid_argument);
  CHECK_THROWS_AS(monoid_census(5), std::invalid_argument);
}

TEST_CASE("unit transfer") {
  // Z/3 under addition: unit 0.
  const FiniteEndOperad e3(3);
  std::vector<int> table;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) table.push_back((x + y) % 3);
  const auto m = e3.binary(table);
  CHECK(unit_transfer_check(e3, m, e3.constant(0), e3.constant(0)));
  CHECK_THROWS_AS(unit_transfer_check(e3, m, e3.constant(1), e3.constant(0)), HypothesisFailure);
  CHECK_THROWS_AS(unit_transfer_check(e3, m, e3.constant(0), e3.constant(2)), HypothesisFailure);
  CHECK_THROWS_AS(unit_transfer_check(e3, e3.constant(0), e3.constant(0), e3.constant(0)), std::invalid_argument);

  const UAssOperad uass;
  CHECK(unit_transfer_check(uass, 2, 0, 0));
}
