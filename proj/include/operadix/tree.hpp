#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace operadix {

/// Child-index path from the root vertex. Indices are 0-based; the empty path
/// is the root vertex (or the root edge of the bare tree).
using TreeAddress = std::vector<int>;

/// A vertex or a leaf of a planted planar tree. Leaves carry no label and no
/// children; a cork is an inner vertex with an empty child list.
struct TreeNode {
  bool is_leaf = true;
  std::string label;
  std::vector<TreeNode> children;

  static TreeNode leaf() { return {}; }
  static TreeNode vertex(std::string label, std::vector<TreeNode> children) {
    return TreeNode{false, std::move(label), std::move(children)};
  }

  bool operator==(const TreeNode&) const = default;
};

/// Planted planar tree with leaves. Immutable value type.
///
/// The root edge is implicit. When the root node is a leaf the tree is the
/// bare tree `|`, the operadic identity.
class Tree {
 public:
  Tree() = default;  // bare tree
  explicit Tree(TreeNode root) : root_(std::move(root)) {}

  static Tree bare() { return Tree{}; }
  static Tree corolla(int n, std::string label = {});
  static Tree lollipop(std::string label = {});

  const TreeNode& root() const { return root_; }
  bool is_bare() const { return root_.is_leaf; }

  int leaf_count() const;
  int inner_count() const;
  int cork_count() const;

  /// Node at `addr`; throws std::out_of_range if the path does not resolve.
  const TreeNode& at(const TreeAddress& addr) const;

  /// Addresses of the leaves, left to right.
  std::vector<TreeAddress> leaf_addresses() const;

  bool operator==(const Tree& other) const = default;

 private:
  TreeNode root_;
};

/// Strict weak order used for enumeration: inner-vertex count, then text form.
bool canonical_less(const Tree& a, const Tree& b);

struct GraftResult {
  Tree tree;
  /// Address of the edge created by the graft, named by its upper endpoint.
  TreeAddress new_edge;
};

/// Grafts the root of `top` onto leaf `leaf` (1-based, planar order) of
/// `bottom`. Throws std::out_of_range for a bad leaf index.
GraftResult graft(const Tree& bottom, int leaf, const Tree& top);

/// Merges the label of the lower vertex with the label of the upper vertex
/// sitting at its `slot`-th (1-based) incoming edge.
using LabelMerge = std::function<std::string(const std::string& lower, int slot,
                                             const std::string& upper)>;

/// Default merge: `(lower o_slot upper)`, or empty if both labels are empty.
std::string merge_labels_formally(const std::string& lower, int slot, const std::string& upper);

/// Contracts the inner edge whose upper endpoint is at `edge`. The upper
/// vertex's children are spliced into the lower vertex's child list at the
/// contracted position. Throws std::invalid_argument unless both endpoints
/// are inner vertices.
Tree contract_inner_edge(const Tree& t, const TreeAddress& edge,
                         const LabelMerge& merge = merge_labels_formally);

/// All unlabelled planar trees with `n_leaves` leaves and at most
/// `max_inner_vertices` inner vertices, every non-cork vertex having arity
/// >= max(1, min_arity). Corks appear only when `allow_corks` is set.
/// Output is duplicate-free and sorted by canonical_less.
std::vector<Tree> enumerate_trees(int n_leaves, int max_inner_vertices, bool allow_corks,
                                  int min_arity);

/// Level of every inner vertex: the root vertex has level 1.
std::map<TreeAddress, int> levels(const Tree& t);

/// Inner vertices in preorder: root first, then children left to right.
/// This is the tensor-factor order used for Koszul signs.
std::vector<TreeAddress> canonical_vertex_order(const Tree& t);

// Text form: leaf `*`, vertex `label[c1,...,ck]` (unlabelled vertex `v`),
// cork `label[]`, bare tree `|`.
std::string to_text(const Tree& t);
Tree parse_tree(std::string_view text);

// JSON form: leaf "*", bare tree "|", vertex {"children":[...]} with an
// optional "label" member.
nlohmann::json to_json(const Tree& t);
Tree tree_from_json(const nlohmann::json& j);

}  // namespace operadix
