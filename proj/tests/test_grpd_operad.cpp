#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "operadix/grpd_operad.hpp"

using namespace operadix;
using namespace operadix::grpd;
using set::CorkFlavor;
using set::Corolla;
using set::CorollaOperad;

TEST_CASE("contractible groupoid operad") {
  const UinfAGrd g(CorollaOperad(CorkFlavor::kUinfA, 3));
  const auto& ob = g.objects();
  const Corolla x = ob.parse("mu(u,id)"), y = ob.parse("|"), z = ob.parse("mu(id,u)");
  const Arrow f = g.unique_morphism(x, y), h = g.unique_morphism(y, z);
  CHECK(g.then(f, h) == g.unique_morphism(x, z));
  CHECK(g.then(f, g.inverse(f)) == g.identity_morphism(x));
  CHECK_THROWS_AS(g.then(h, h), std::invalid_argument);
  CHECK_THROWS_AS(g.unique_morphism(ob.mu(), y), std::invalid_argument);

  CHECK(lambda_arrow() == Arrow{x, y});
  CHECK(rho_arrow() == Arrow{z, y});
  // Whiskering: λ ∘₁ μ goes from μ²(u,id,id) to μ.
  const Arrow w = g.compose(lambda_arrow(), 1, g.identity_morphism(ob.mu()));
  CHECK(w.source == ob.parse("mu^2(u,id,id)"));
  CHECK(w.target == ob.mu());
  // Interchange of whiskerings.
  const Arrow a = g.compose(g.compose(g.identity_morphism(ob.mu()), 1, lambda_arrow()), 2, rho_arrow());
  const Arrow b = g.compose(g.compose(g.identity_morphism(ob.mu()), 2, rho_arrow()), 1, lambda_arrow());
  CHECK(a == b);
}

TEST_CASE("generation closure reaches every in-bound object and arrow") {
  for (int arity = 0; arity <= 4; ++arity)
    for (int corks = 0; corks <= 3; ++corks) {
      const auto st = generation_closure(arity, corks);
      INFO("arity<=" << arity << " corks<=" << corks);
      CHECK(st.objects_complete());
      CHECK(st.morphisms_complete());
      // Independent enumeration of the target sets.
      const CorollaOperad op(CorkFlavor::kUinfA, corks);
      for (int n = 0; n <= arity; ++n) {
        const auto all = op.elements(n, 0);
        std::set<Corolla> reached;
        if (st.objects.count(n))
          for (const auto& c : st.objects.at(n))
            if (c.cork_count() <= corks) reached.insert(c);
        CHECK(reached == std::set<Corolla>(all.begin(), all.end()));
        for (const auto& p : all)
          for (const auto& q : all) CHECK(st.connected(p, q));
        if (!all.empty()) CHECK(st.classes.at(n) == 1);
      }
    }
  const auto small = generation_closure(2, 1);
  CHECK(small.edge_count > 0);
  const auto j = small.to_json();
  CHECK(j.contains("objects_complete"));
}

TEST_CASE("cork deletion paths") {
  const CorollaOperad op(CorkFlavor::kUinfA, 4);
  for (int n = 0; n <= 3; ++n)
    for (const auto& x : op.elements(n, 0)) {
      const auto path = cork_deletion_path(x);
      CHECK(static_cast<int>(path.size()) == (x.cork_count() - (n == 0 ? 1 : 0)));
      Corolla cur = x;
      for (const auto& s : path) {
        CHECK(s.from == cur);
        CHECK(s.to.cork_count() == cur.cork_count() - 1);
        CHECK(op.arity(s.to) == n);
        CHECK((s.generator == "lambda" || s.generator == "rho"));
        cur = s.to;
      }
      CHECK(cur.cork_count() == (n == 0 ? 1 : 0));
    }
  CHECK(cork_deletion_path(op.parse("mu")).empty());
}

TEST_CASE("push-out squares on objects") {
  const auto r = pushout_square_object_check(4, 3);
  CHECK(r.passed());
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK_FALSE(r.checks.empty());
  for (const auto& [name, ok] : r.checks) {
    INFO(name);
    CHECK(ok);
  }
  CHECK(pushout_square_object_check(1, 2).passed());
  CHECK(pushout_square_object_check(3, 0).passed());
}
