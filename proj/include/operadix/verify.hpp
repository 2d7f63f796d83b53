#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "operadix/dg.hpp"

namespace operadix::verify {

struct Config {
  std::optional<dg::Ambient> ambient;  ///< unset: both ambients where it matters
  int max = 8;                         ///< bound on n + |S|
  int max_n = 4;
  int max_arity = 4;
  int max_corks = 3;
  int m = 1;
  int size = 3;
  std::uint64_t seed = 1;
  std::size_t samples = 0;  ///< 0: the suite default
  std::string fixtures;     ///< golden directory; empty skips golden checks
};

struct SuiteResult {
  bool passed = false;
  nlohmann::json report;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite or bad bounds.
SuiteResult run_suite(const std::string& name, const Config& config);

/// d∘d = 0 on all generators with n + |S| <= max and on random composites,
/// plus the golden d(ν) files when available.
SuiteResult verify_d2(const Config& c);
/// Graded exchange law, vertical associativity, unit laws and the
/// derivation law on random homogeneous instances.
SuiteResult verify_derivation(const Config& c);
/// Operad axioms for Ass, uAss, Ob(u∞A^Grd), Ob(U), End(X), and the worked
/// compositions with corks.
SuiteResult verify_axioms(const Config& c);
/// The strong deformation retraction u_m uA -> u_{m-1} uA.
SuiteResult verify_gordo(const Config& c);
/// Monoid census and unit transfer on End(X).
SuiteResult verify_census(const Config& c);
/// Generation of Ob(u∞A^Grd) and its arrows from μ, u, λ, ρ.
SuiteResult verify_generation(const Config& c);
/// Object-level push-out squares.
SuiteResult verify_pushout(const Config& c);

/// File name of the golden d(ν_n^S) fixture, e.g. `nu4_2-3.json`.
std::string d_fixture_name(const dg::GradedLabel& g);

}  // namespace operadix::verify
