#include "operadix/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "operadix/dg.hpp"
#include "operadix/dg_io.hpp"
#include "operadix/set_operad.hpp"
#include "operadix/tree.hpp"
#include "operadix/verify.hpp"

#ifndef OPERADIX_DEFAULT_FIXTURES
#define OPERADIX_DEFAULT_FIXTURES "fixtures"
#endif

namespace operadix {

std::string fixtures_dir() {
  if (const char* env = std::getenv("OPERADIX_FIXTURES"); env && *env) return env;
  return OPERADIX_DEFAULT_FIXTURES;
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string ambient;
  std::string format = "text";
  std::string out;
  std::string kind = "generators";
  int max = 8;
  int max_n = 4;
  int max_arity = 4;
  int max_corks = 3;
  int m = 1;
  int size = 3;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
};

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw UsageError("--format " + format + " is not available for this command");
}

dg::Ambient ambient_or_default(const Options& o) {
  return o.ambient.empty() ? dg::Ambient::kUinfUA : dg::parse_ambient(o.ambient);
}

std::string element_output(const dg::Element& x, const std::string& format) {
  require_format(format, {"text", "json", "dot"});
  if (format == "json") return dg::to_json(x).dump(2) + "\n";
  if (format == "dot") return dg::render_dot(dg::render_terms(x));
  return dg::to_text(x) + "\n";
}

std::string verify_output(const std::string& suite, const verify::SuiteResult& r, const std::string& format) {
  require_format(format, {"text", "json"});
  if (format == "json") return r.report.dump(2) + "\n";
  std::ostringstream s;
  s << suite << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
  if (r.report.contains("violation_count")) s << "  violations: " << r.report["violation_count"] << "\n";
  if (r.report.contains("violations"))
    for (const auto& v : r.report["violations"]) s << "  " << v.dump() << "\n";
  if (r.report.contains("checks"))
    for (const auto& [k, v] : r.report["checks"].items()) s << "  " << k << ": " << v << "\n";
  return s.str();
}

std::string census_output(int size, const std::string& format) {
  require_format(format, {"text", "json"});
  if (size < 1 || size > 4) throw UsageError("--size must lie in 1..4");
  nlohmann::json all = nlohmann::json::array();
  std::ostringstream s;
  for (int k = 1; k <= size; ++k) {
    const auto c = set::monoid_census(k);
    all.push_back(c.to_json());
    s << "|X|=" << k << " operations=" << c.operations << " associative=" << c.associative_count
      << " unital=" << c.unital_count << " max_units_per_op=" << c.max_units_per_op << "\n";
  }
  return format == "json" ? all.dump(2) + "\n" : s.str();
}

std::string enumerate_output(const Options& o, bool max_given) {
  require_format(o.format, {"text", "json"});
  nlohmann::json items = nlohmann::json::array();
  if (o.kind == "generators") {
    for (const auto& g : dg::generators_up_to(o.max)) items.push_back(g.to_string());
  } else if (o.kind == "objects") {
    for (auto flavor : {set::CorkFlavor::kUinfA, set::CorkFlavor::kU}) {
      const set::CorollaOperad op(flavor, o.max_corks);
      for (int n = 0; n <= o.max_arity; ++n)
        for (const auto& x : op.elements(n, 0)) items.push_back(op.name() + " " + op.to_string(x));
    }
  } else if (o.kind == "trees") {
    const int inner = max_given ? o.max : 3;
    if (inner > 4 || o.max_arity > 5) throw UsageError("trees: keep --max <= 4 and --max-arity <= 5");
    for (int n = 0; n <= o.max_arity; ++n)
      for (const auto& t : enumerate_trees(n, inner, true, 1)) items.push_back(to_text(t));
  } else {
    throw UsageError("--kind must be generators, trees or objects");
  }
  if (o.format == "json") return items.dump(2) + "\n";
  std::string s;
  for (const auto& i : items) s += i.get<std::string>() + "\n";
  return s;
}

std::string render_output(const std::string& expr, const std::string& format) {
  require_format(format, {"text", "dot", "json"});
  const auto terms = dg::render_terms(dg::parse_literal(expr));
  if (format == "dot") return dg::render_dot(terms);
  if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : terms) j.push_back({{"coeff", t.coeff.str()}, {"tree", to_json(t.tree)}});
    return j.dump(2) + "\n";
  }
  return dg::render_text(terms);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operads with units up to coherent homotopy", "operadix"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--ambient", o.ambient, "uinf-a or uinf-ua");
  app.add_option("--format", o.format, "text, json or dot");
  app.add_option("--out", o.out, "write to a file instead of stdout");
  CLI::Option* max_opt = app.add_option("--max", o.max, "bound on n + |S|");
  app.add_option("--max-n", o.max_n, "bound on n");
  app.add_option("--max-arity", o.max_arity);
  app.add_option("--max-corks", o.max_corks);
  app.add_option("--m", o.m, "filtration level");
  app.add_option("--size", o.size, "carrier size");
  app.add_option("--seed", o.seed);
  app.add_option("--samples", o.samples, "random instances (0: default)");

  std::string expr, left, right;
  int slot = 0;
  auto* d = app.add_subcommand("d", "differential of an expression");
  d->add_option("expr", expr)->required();
  auto* comp = app.add_subcommand("compose", "partial composition x o_i y");
  comp->add_option("x", left)->required();
  comp->add_option("i", slot)->required();
  comp->add_option("y", right)->required();
  auto* norm = app.add_subcommand("normalize", "canonical form of an expression");
  norm->add_option("expr", expr)->required();
  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(verify::suite_names()));
  auto* en = app.add_subcommand("enumerate", "list generators, trees or objects");
  en->add_option("--kind", o.kind, "generators, trees or objects");
  auto* ren = app.add_subcommand("render", "draw an expression without normalizing it");
  ren->add_option("expr", expr)->required();
  auto* cen = app.add_subcommand("census", "monoid census on small sets");
  for (auto* sub : {d, comp, norm, ver, en, ren, cen}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text;
  int code = 0;
  try {
    if (*d) {
      text = element_output(dg::differential(dg::parse_element(expr, ambient_or_default(o))), o.format);
    } else if (*comp) {
      const auto a = ambient_or_default(o);
      text = element_output(dg::compose(dg::parse_element(left, a), slot, dg::parse_element(right, a)), o.format);
    } else if (*norm) {
      text = element_output(dg::parse_element(expr, ambient_or_default(o)), o.format);
    } else if (*ver) {
      verify::Config c;
      if (!o.ambient.empty()) c.ambient = dg::parse_ambient(o.ambient);
      c.max = o.max;
      c.max_n = o.max_n;
      c.max_arity = o.max_arity;
      c.max_corks = o.max_corks;
      c.m = o.m;
      c.size = o.size;
      c.seed = o.seed;
      c.samples = o.samples;
      c.fixtures = fixtures_dir();
      const auto r = verify::run_suite(suite, c);
      text = verify_output(suite, r, o.format);
      code = r.passed ? 0 : 1;
    } else if (*en) {
      text = enumerate_output(o, max_opt->count() > 0);
    } else if (*ren) {
      text = render_output(expr, o.format);
    } else if (*cen) {
      text = census_output(o.size, o.format);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.out << "\n";
      return 2;
    }
    f << text;
  }
  return code;
}

}  // namespace operadix
