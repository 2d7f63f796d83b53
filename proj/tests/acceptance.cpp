// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "operadix/deformation.hpp"
#include "operadix/dg_io.hpp"
#include "operadix/verify.hpp"

using namespace operadix;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<std::pair<bool, std::string>()> run;
};

verify::Config config() {
  verify::Config c;
  c.fixtures = OPERADIX_TEST_FIXTURES;
  return c;
}

std::string count_of(const nlohmann::json& j, const char* key) {
  return j.contains(key) ? j[key].dump() : "?";
}

}  // namespace

int main() {
  using dg::GradedLabel;
  using dg::make_subset;
  const std::vector<Criterion> criteria{
      {"1 d^2 = 0 on generators n+|S|<=8 and 500 composites, both ambients", 300,
       [] {
         auto c = config();
         c.max = 8;
         c.samples = 500;
         const auto r = verify::verify_d2(c);
         return std::pair{r.passed, "checked " + r.report["checked"].dump() + ", violations " +
                                        count_of(r.report, "violation_count")};
       }},
      {"2 build_sdr(1,4): f(nu1{1}) = u, f(nu2{j}) = 0, dh(nu1{1}) = -nu1{1} + u", 60,
       [] {
         const auto s = deform::build_sdr(1, 4);
         const auto& f = s.deformation.f;
         const auto n11 = GradedLabel::nu(1, make_subset({1}));
         const dg::Element u = dg::generator(GradedLabel::unit()), nu11 = dg::generator(n11);
         bool ok = f.image(n11) == u;
         for (int j = 1; j <= 2; ++j) ok = ok && f.image(GradedLabel::nu(2, make_subset({j}))).is_zero();
         const dg::Element dh = dg::differential(s.h().on_generator(n11));
         ok = ok && dh == u - nu11;
         return std::pair{ok, "dh(nu(1,{1})) = " + dg::to_text(dh)};
       }},
      {"3 gordo m=1,2,3, n<=6: homotopy, f in u_{m-1}, r o l = id", 600,
       [] {
         bool ok = true;
         std::string detail;
         for (int m = 1; m <= 3; ++m) {
           const auto s = deform::build_sdr(m, 6);
           const bool pass = s.checks.at("homotopy") && s.checks.at("filtration") && s.checks.at("retraction") &&
                             s.checks.at("dg_morphism") && s.passed();
           ok = ok && pass;
           detail += "m=" + std::to_string(m) + ":" + std::to_string(s.records.size()) + " generators " +
                     (pass ? "ok" : "FAIL") + (m < 3 ? ", " : "");
         }
         return std::pair{ok, detail};
       }},
      {"4 exchange, vertical associativity, unit and derivation laws on 200 instances each", 300,
       [] {
         auto c = config();
         c.samples = 200;
         const auto r = verify::verify_derivation(c);
         return std::pair{r.passed, "instances " + r.report["instances"].dump() + ", violations " +
                                        count_of(r.report, "violation_count")};
       }},
      {"5 set-operad axioms: Ass, uAss, Ob(uinfA^Grd), Ob(U), End(X) |X|<=3, worked examples", 300,
       [] {
         auto c = config();
         const auto r = verify::verify_axioms(c);
         std::uint64_t violations = 0;
         for (const auto& o : r.report["operads"]) violations += o["violation_count"].get<std::uint64_t>();
         std::size_t examples = 0;
         for (const auto& e : r.report["worked_examples"]) examples += e["passed"].get<bool>();
         return std::pair{r.passed, std::to_string(r.report["operads"].size()) + " operads, " +
                                        std::to_string(violations) + " violations, " + std::to_string(examples) +
                                        "/3 worked examples"};
       }},
      {"6 generation closure: all objects and arrows with arity<=4, corks<=3", 120,
       [] {
         auto c = config();
         c.max_arity = 4;
         c.max_corks = 3;
         const auto r = verify::verify_generation(c);
         return std::pair{r.passed, "objects_complete " + count_of(r.report, "objects_complete") +
                                        ", morphisms_complete " + count_of(r.report, "morphisms_complete")};
       }},
      {"7 census |X|=1..3: max_units_per_op = 1; unit transfer on every valid End(X) instance", 120,
       [] {
         auto c = config();
         c.size = 3;
         const auto r = verify::verify_census(c);
         return std::pair{r.passed, "unit_transfer " + r.report["unit_transfer"].dump()};
       }},
      {"8 resolution map commutes with d on generators n+|S|<=6", 60,
       [] {
         const auto eps = dg::resolution_map();
         std::vector<GradedLabel> gens = dg::generators_up_to(6);
         gens.push_back(GradedLabel::mu());
         gens.push_back(GradedLabel::mu(3));
         bool ok = true;
         for (const auto& g : gens) {
           const dg::Element x = dg::generator(g);
           ok = ok && dg::evaluate_morphism(eps, dg::differential(x)) ==
                          dg::differential(dg::evaluate_morphism(eps, x));
         }
         return std::pair{ok, std::to_string(gens.size()) + " generators"};
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      std::tie(ok, detail) = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      ok = false;
      detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    failures += !ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.name << " -- " << detail << " [" << secs << " s]\n";
  }
  std::cout << (failures ? "acceptance: FAIL" : "acceptance: PASS") << " (" << criteria.size() - failures << "/"
            << criteria.size() << ")\n";
  return failures ? 1 : 0;
}
