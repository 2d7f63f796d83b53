#include "operadix/tree.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace operadix {

namespace {

int count_leaves(const TreeNode& n) {
  if (n.is_leaf) return 1;
  int total = 0;
  for (const auto& c : n.children) total += count_leaves(c);
  return total;
}

int count_inner(const TreeNode& n) {
  if (n.is_leaf) return 0;
  int total = 1;
  for (const auto& c : n.children) total += count_inner(c);
  return total;
}

int count_corks(const TreeNode& n) {
  if (n.is_leaf) return 0;
  if (n.children.empty()) return 1;
  int total = 0;
  for (const auto& c : n.children) total += count_corks(c);
  return total;
}

void collect_leaves(const TreeNode& n, TreeAddress& path, std::vector<TreeAddress>& out) {
  if (n.is_leaf) {
    out.push_back(path);
    return;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_leaves(n.children[i], path, out);
    path.pop_back();
  }
}

TreeNode* resolve(TreeNode& root, const TreeAddress& addr) {
  TreeNode* cur = &root;
  for (int idx : addr) {
    if (cur->is_leaf || idx < 0 || idx >= static_cast<int>(cur->children.size())) return nullptr;
    cur = &cur->children[static_cast<std::size_t>(idx)];
  }
  return cur;
}

void write_text(const TreeNode& n, std::string& out) {
  if (n.is_leaf) {
    out += '*';
    return;
  }
  out += n.label.empty() ? std::string("v") : n.label;
  out += '[';
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ',';
    write_text(n.children[i], out);
  }
  out += ']';
}

bool is_label_char(char c) {
  return c != '[' && c != ']' && c != ',' && c != '*' && c != '|' &&
         !std::isspace(static_cast<unsigned char>(c));
}

class TextParser {
 public:
  explicit TextParser(std::string_view s) : s_(s) {}

  TreeNode parse_node() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '*') {
      ++pos_;
      return TreeNode::leaf();
    }
    std::size_t start = pos_;
    // Labels may embed a balanced {...} group with arbitrary characters.
    int depth = 0;
    while (pos_ < s_.size() && (depth > 0 || is_label_char(s_[pos_]))) {
      if (s_[pos_] == '{') ++depth;
      if (s_[pos_] == '}') --depth;
      ++pos_;
    }
    if (depth != 0) fail("unbalanced braces in label");
    std::string label(s_.substr(start, pos_ - start));
    if (label == "v") label.clear();
    skip_ws();
    expect('[');
    std::vector<TreeNode> children;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return TreeNode::vertex(std::move(label), std::move(children));
    }
    while (true) {
      children.push_back(parse_node());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    return TreeNode::vertex(std::move(label), std::move(children));
  }

  void finish() {
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("tree text at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

nlohmann::json node_to_json(const TreeNode& n) {
  if (n.is_leaf) return "*";
  nlohmann::json j = nlohmann::json::object();
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& c : n.children) kids.push_back(node_to_json(c));
  j["children"] = std::move(kids);
  if (!n.label.empty()) j["label"] = n.label;
  return j;
}

TreeNode node_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "*") return TreeNode::leaf();
    throw std::invalid_argument("tree json: unexpected string " + j.dump());
  }
  if (!j.is_object() || !j.contains("children") || !j["children"].is_array())
    throw std::invalid_argument("tree json: vertex needs a children array");
  std::vector<TreeNode> kids;
  for (const auto& c : j["children"]) kids.push_back(node_from_json(c));
  std::string label = j.contains("label") ? j["label"].get<std::string>() : std::string{};
  return TreeNode::vertex(std::move(label), std::move(kids));
}

void walk_levels(const TreeNode& n, int level, TreeAddress& path, std::map<TreeAddress, int>& out) {
  if (n.is_leaf) return;
  out.emplace(path, level);
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    walk_levels(n.children[i], level + 1, path, out);
    path.pop_back();
  }
}

void walk_preorder(const TreeNode& n, TreeAddress& path, std::vector<TreeAddress>& out) {
  if (n.is_leaf) return;
  out.push_back(path);
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    walk_preorder(n.children[i], path, out);
    path.pop_back();
  }
}

// Enumeration: trees with exactly `leaves` leaves and exactly `inner` inner
// vertices, memoized on (leaves, inner).
class TreeEnumerator {
 public:
  TreeEnumerator(bool allow_corks, int min_arity)
      : allow_corks_(allow_corks), min_arity_(std::max(1, min_arity)) {}

  const std::vector<TreeNode>& exactly(int leaves, int inner) {
    auto key = std::make_pair(leaves, inner);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TreeNode> out;
    if (inner == 0) {
      if (leaves == 1) out.push_back(TreeNode::leaf());
    } else {
      if (allow_corks_ && leaves == 0 && inner == 1) out.push_back(TreeNode::vertex({}, {}));
      // Each child carries at least one leaf or one inner vertex.
      int max_arity = leaves + inner - 1;
      for (int arity = min_arity_; arity <= max_arity; ++arity) {
        std::vector<TreeNode> partial;
        distribute(arity, leaves, inner - 1, partial, out);
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void distribute(int slots, int leaves, int inner, std::vector<TreeNode>& partial,
                  std::vector<TreeNode>& out) {
    if (slots == 0) {
      if (leaves == 0 && inner == 0) out.push_back(TreeNode::vertex({}, partial));
      return;
    }
    for (int l = 0; l <= leaves; ++l) {
      for (int k = 0; k <= inner; ++k) {
        if (l == 0 && k == 0) continue;
        // Copy: exactly() may rehash the memo while recursing.
        std::vector<TreeNode> options = exactly(l, k);
        for (auto& child : options) {
          partial.push_back(std::move(child));
          distribute(slots - 1, leaves - l, inner - k, partial, out);
          partial.pop_back();
        }
      }
    }
  }

  bool allow_corks_;
  int min_arity_;
  std::map<std::pair<int, int>, std::vector<TreeNode>> memo_;
};

}  // namespace

Tree Tree::corolla(int n, std::string label) {
  if (n < 0) throw std::invalid_argument("corolla arity must be nonnegative");
  return Tree(TreeNode::vertex(std::move(label), std::vector<TreeNode>(static_cast<std::size_t>(n))));
}

Tree Tree::lollipop(std::string label) { return Tree(TreeNode::vertex(std::move(label), {})); }

int Tree::leaf_count() const { return count_leaves(root_); }
int Tree::inner_count() const { return count_inner(root_); }
int Tree::cork_count() const { return count_corks(root_); }

const TreeNode& Tree::at(const TreeAddress& addr) const {
  auto* n = resolve(const_cast<TreeNode&>(root_), addr);
  if (!n) throw std::out_of_range("tree address does not resolve");
  return *n;
}

std::vector<TreeAddress> Tree::leaf_addresses() const {
  std::vector<TreeAddress> out;
  TreeAddress path;
  collect_leaves(root_, path, out);
  return out;
}

bool canonical_less(const Tree& a, const Tree& b) {
  int ia = a.inner_count(), ib = b.inner_count();
  if (ia != ib) return ia < ib;
  return to_text(a) < to_text(b);
}

GraftResult graft(const Tree& bottom, int leaf, const Tree& top) {
  auto leaves = bottom.leaf_addresses();
  if (leaf < 1 || leaf > static_cast<int>(leaves.size()))
    throw std::out_of_range("graft: leaf index " + std::to_string(leaf) + " outside 1.." +
                            std::to_string(leaves.size()));
  const TreeAddress& addr = leaves[static_cast<std::size_t>(leaf - 1)];
  TreeNode root = bottom.root();
  *resolve(root, addr) = top.root();
  return {Tree(std::move(root)), addr};
}

std::string merge_labels_formally(const std::string& lower, int slot, const std::string& upper) {
  if (lower.empty() && upper.empty()) return {};
  return "(" + lower + "o_" + std::to_string(slot) + upper + ")";
}

Tree contract_inner_edge(const Tree& t, const TreeAddress& edge, const LabelMerge& merge) {
  if (edge.empty()) throw std::invalid_argument("contract: the root edge is not an inner edge");
  TreeNode root = t.root();
  TreeAddress parent_addr(edge.begin(), edge.end() - 1);
  TreeNode* parent = resolve(root, parent_addr);
  TreeNode* upper = resolve(root, edge);
  if (!parent || !upper) throw std::invalid_argument("contract: address does not name an edge");
  if (upper->is_leaf) throw std::invalid_argument("contract: leaf edges cannot be contracted");
  const int pos = edge.back();
  TreeNode moved = std::move(*upper);
  std::string label = merge(parent->label, pos + 1, moved.label);
  auto& kids = parent->children;
  auto it = kids.erase(kids.begin() + pos);
  kids.insert(it, std::make_move_iterator(moved.children.begin()),
              std::make_move_iterator(moved.children.end()));
  parent->label = std::move(label);
  return Tree(std::move(root));
}

std::vector<Tree> enumerate_trees(int n_leaves, int max_inner_vertices, bool allow_corks,
                                  int min_arity) {
  std::vector<Tree> out;
  if (n_leaves < 0 || max_inner_vertices < 0) return out;
  TreeEnumerator gen(allow_corks, min_arity);
  for (int k = 0; k <= max_inner_vertices; ++k) {
    std::vector<Tree> layer;
    for (const auto& node : gen.exactly(n_leaves, k)) layer.emplace_back(node);
    std::sort(layer.begin(), layer.end(),
              [](const Tree& a, const Tree& b) { return to_text(a) < to_text(b); });
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    for (auto& t : layer) out.push_back(std::move(t));
  }
  return out;
}

std::map<TreeAddress, int> levels(const Tree& t) {
  std::map<TreeAddress, int> out;
  TreeAddress path;
  walk_levels(t.root(), 1, path, out);
  return out;
}

std::vector<TreeAddress> canonical_vertex_order(const Tree& t) {
  std::vector<TreeAddress> out;
  TreeAddress path;
  walk_preorder(t.root(), path, out);
  return out;
}

std::string to_text(const Tree& t) {
  if (t.is_bare()) return "|";
  std::string out;
  write_text(t.root(), out);
  return out;
}

Tree parse_tree(std::string_view text) {
  std::size_t a = 0, b = text.size();
  while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  std::string_view trimmed = text.substr(a, b - a);
  if (trimmed == "|") return Tree::bare();
  if (trimmed == "*") throw std::invalid_argument("tree text: a lone leaf is written '|'");
  TextParser p(trimmed);
  TreeNode root = p.parse_node();
  p.finish();
  return Tree(std::move(root));
}

nlohmann::json to_json(const Tree& t) {
  if (t.is_bare()) return "|";
  return node_to_json(t.root());
}

Tree tree_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "|") return Tree::bare();
  auto root = node_from_json(j);
  if (root.is_leaf) throw std::invalid_argument("tree json: a lone leaf is written \"|\"");
  return Tree(std::move(root));
}

}  // namespace operadix
