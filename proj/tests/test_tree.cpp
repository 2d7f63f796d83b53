#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "operadix/tree.hpp"

using namespace operadix;
namespace fs = std::filesystem;

namespace {

nlohmann::json golden(const std::string& name) {
  std::ifstream in(fs::path(OPERADIX_TEST_FIXTURES) / "trees" / name);
  REQUIRE(in);
  return nlohmann::json::parse(in);
}

// Counts planar trees by recursion on forests (sequences of leaves and
// subtrees). Independent of enumerate_trees.
struct Counter {
  bool corks;
  int min_arity;

  long forest(int len, int n, int k) {  // `len` slots, n leaves, k vertices in total
    if (len == 0) return n == 0 && k == 0 ? 1 : 0;
    long total = 0;
    // first slot is a leaf
    if (n > 0) total += forest(len - 1, n - 1, k);
    for (int n1 = 0; n1 <= n; ++n1)
      for (int k1 = 1; k1 <= k; ++k1) total += tree(n1, k1) * forest(len - 1, n - n1, k - k1);
    return total;
  }
  long tree(int n, int k) {  // rooted at a vertex
    if (k <= 0) return 0;
    long total = corks && n == 0 && k == 1 ? 1 : 0;
    for (int a = std::max(1, min_arity); a <= n + k; ++a) total += forest(a, n, k - 1);
    return total;
  }
  long up_to(int n, int kmax) {
    long total = n == 1 ? 1 : 0;
    for (int k = 1; k <= kmax; ++k) total += tree(n, k);
    return total;
  }
};

}  // namespace

TEST_CASE("graft") {
  const Tree c2 = Tree::corolla(2);
  CHECK(graft(c2, 1, Tree::bare()).tree == c2);
  CHECK(graft(Tree::bare(), 1, c2).tree == c2);

  const auto g = graft(Tree::corolla(2, "x2"), 2, Tree::corolla(3, "y3"));
  CHECK(to_text(g.tree) == "x2[*,y3[*,*,*]]");
  CHECK(g.tree.leaf_count() == 4);
  CHECK(g.new_edge == TreeAddress{1});

  const auto corked = graft(Tree::corolla(3), 2, Tree::lollipop());
  CHECK(to_text(corked.tree) == "v[*,v[],*]");
  CHECK(corked.tree.leaf_count() == 2);
  CHECK(corked.tree.cork_count() == 1);

  CHECK_THROWS_AS(graft(c2, 3, c2), std::out_of_range);
  CHECK_THROWS_AS(graft(c2, 0, c2), std::out_of_range);

  for (const auto& e : golden("graft.json")) {
    const auto r = graft(parse_tree(e["bottom"].get<std::string>()), e["leaf"].get<int>(),
                         parse_tree(e["top"].get<std::string>()));
    CHECK(to_text(r.tree) == e["result"].get<std::string>());
    CHECK(r.tree.leaf_count() == e["leaves"].get<int>());
  }
}

TEST_CASE("contract inner edge") {
  for (int p = 1; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q)
      for (int i = 1; i <= p; ++i) {
        const auto g = graft(Tree::corolla(p), i, q == 0 ? Tree::lollipop() : Tree::corolla(q));
        const Tree c = contract_inner_edge(g.tree, g.new_edge);
        CHECK(c == Tree::corolla(p + q - 1));
        CHECK(c.leaf_count() == g.tree.leaf_count());
      }
  // Merging two binary vertices gives one arity-3 vertex.
  const auto g = graft(Tree::corolla(2, "x"), 2, Tree::corolla(2, "y"));
  const Tree merged = contract_inner_edge(g.tree, g.new_edge);
  CHECK(to_text(merged) == "(xo_2y)[*,*,*]");
  CHECK_THROWS_AS(contract_inner_edge(Tree::corolla(2), {}), std::invalid_argument);
  CHECK_THROWS_AS(contract_inner_edge(Tree::corolla(2), {0}), std::invalid_argument);
}

TEST_CASE("enumerate trees") {
  CHECK(enumerate_trees(1, 0, false, 1) == std::vector<Tree>{Tree::bare()});
  CHECK(enumerate_trees(0, 1, true, 1) == std::vector<Tree>{Tree::lollipop()});
  CHECK(enumerate_trees(3, 3, false, 2).size() == 3);
  CHECK(enumerate_trees(0, 3, false, 1).empty());

  for (bool corks : {false, true})
    for (int min_arity : {1, 2})
      for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 3; ++k) {
          const auto trees = enumerate_trees(n, k, corks, min_arity);
          Counter c{corks, min_arity};
          INFO("n=" << n << " k=" << k << " corks=" << corks << " min=" << min_arity);
          CHECK(static_cast<long>(trees.size()) == c.up_to(n, k));
          for (std::size_t a = 1; a < trees.size(); ++a) CHECK(canonical_less(trees[a - 1], trees[a]));
          for (const auto& t : trees) {
            CHECK(t.leaf_count() == n);
            CHECK(t.inner_count() <= k);
            for (const auto& [addr, lv] : levels(t)) {
              CHECK(lv == static_cast<int>(addr.size()) + 1);
            }
          }
        }

  for (int n = 0; n <= 3; ++n) {
    const auto g = golden("enumerate_n" + std::to_string(n) + "_inner3_corks.json");
    const auto trees = enumerate_trees(n, 3, true, 1);
    REQUIRE(g.size() == trees.size());
    for (std::size_t a = 0; a < trees.size(); ++a) CHECK(to_text(trees[a]) == g[a].get<std::string>());
  }
  const auto g = golden("enumerate_n3_inner3_min2.json");
  CHECK(g == nlohmann::json{"v[*,*,*]", "v[*,v[*,*]]", "v[v[*,*],*]"});
}

TEST_CASE("levels and vertex order") {
  CHECK(levels(Tree::bare()).empty());
  CHECK(levels(Tree::corolla(3)) == std::map<TreeAddress, int>{{{}, 1}});
  CHECK(canonical_vertex_order(Tree::corolla(3)) == std::vector<TreeAddress>{{}});
  CHECK(canonical_vertex_order(parse_tree("v[a[*],b[*]]")) == std::vector<TreeAddress>{{}, {0}, {1}});

  const auto g = golden("tensor_order.json");
  const Tree t = parse_tree(g["tree"].get<std::string>());
  std::vector<std::string> labels;
  for (const auto& a : canonical_vertex_order(t)) labels.push_back(t.at(a).label);
  CHECK(labels == std::vector<std::string>{"x2", "x3", "y3", "y0", "x0"});
  CHECK(g["order"] == nlohmann::json(labels));
  CHECK(to_json(t) == g["json"]);

  const auto lv = levels(t);
  CHECK(lv.at({}) == 1);
  CHECK(lv.at({1}) == 2);
  CHECK(lv.at({1, 0}) == 3);
  CHECK(lv.at({1, 0, 2}) == 4);
}

TEST_CASE("serialization") {
  for (const char* s : {"|", "*", "v[]", "v[*,*]", "x2[*,x3[y3[*,*,y0[]],x0[],*]]"}) {
    if (std::string(s) == "*") {
      CHECK_THROWS(parse_tree(s));
      continue;
    }
    const Tree t = parse_tree(s);
    CHECK(to_text(t) == s);
    CHECK(tree_from_json(to_json(t)) == t);
  }
  CHECK(to_json(Tree::bare()) == "|");
  CHECK(to_json(Tree::corolla(2)) == nlohmann::json{{"children", {"*", "*"}}});
  CHECK_THROWS(parse_tree("v[*,"));
  CHECK_THROWS(parse_tree("v[*]]"));
  CHECK_THROWS_AS(Tree::corolla(2).at({5}), std::out_of_range);

  std::set<std::string> seen;
  for (const auto& t : enumerate_trees(3, 3, true, 1)) CHECK(seen.insert(to_text(t)).second);
}
