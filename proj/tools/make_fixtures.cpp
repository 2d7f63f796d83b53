// Regenerates the golden files under fixtures/. Usage: make_fixtures <dir>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "operadix/deformation.hpp"
#include "operadix/dg_io.hpp"
#include "operadix/tree.hpp"
#include "operadix/verify.hpp"

namespace fs = std::filesystem;
using namespace operadix;

namespace {

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_json(const fs::path& p, const nlohmann::json& j) { write(p, j.dump(2) + "\n"); }

void trees(const fs::path& dir) {
  for (int n = 0; n <= 3; ++n) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& t : enumerate_trees(n, 3, true, 1)) list.push_back(to_text(t));
    write_json(dir / ("enumerate_n" + std::to_string(n) + "_inner3_corks.json"), list);
  }
  nlohmann::json binary = nlohmann::json::array();
  for (const auto& t : enumerate_trees(3, 3, false, 2)) binary.push_back(to_text(t));
  write_json(dir / "enumerate_n3_inner3_min2.json", binary);

  const Tree t = parse_tree("x2[*,x3[y3[*,*,y0[]],x0[],*]]");
  nlohmann::json order = nlohmann::json::array();
  for (const auto& a : canonical_vertex_order(t)) order.push_back(t.at(a).label);
  write_json(dir / "tensor_order.json", {{"tree", to_text(t)}, {"json", to_json(t)}, {"order", order}});

  nlohmann::json grafts = nlohmann::json::array();
  auto add = [&](const std::string& a, int i, const std::string& b) {
    const auto g = graft(parse_tree(a), i, parse_tree(b));
    grafts.push_back({{"bottom", a}, {"leaf", i}, {"top", b}, {"result", to_text(g.tree)},
                      {"leaves", g.tree.leaf_count()}, {"new_edge", g.new_edge}});
  };
  add("x2[*,*]", 2, "y3[*,*,*]");
  add("v[*,*,*]", 2, "v[]");
  add("v[*,*]", 1, "|");
  write_json(dir / "graft.json", grafts);
}

void dg_fixtures(const fs::path& dir) {
  for (const auto& g : dg::generators_up_to(6)) {
    if (!g.is_nu()) continue;
    write_json(dir / verify::d_fixture_name(g), dg::to_json(dg::d_generator(g)));
  }
}

void sdr(const fs::path& dir) {
  const auto s = deform::build_sdr(1, 3);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : s.records)
    list.push_back({{"generator", r.generator.to_string()}, {"f", dg::to_json(r.f)}, {"h", dg::to_json(r.h)}});
  write_json(dir / "m1.json", list);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixtures-dir>\n";
    return 2;
  }
  const fs::path root = argv[1];
  try {
    trees(root / "trees");
    dg_fixtures(root / "dg");
    sdr(root / "sdr");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
