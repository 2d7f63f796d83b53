#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadix/set_operad.hpp"

namespace operadix::set {

/// The binary coproduct O ∐ F(V) in Set-operads, V a signature of named
/// generators.
///
/// Elements are leveled trees with O-vertices at odd levels and V-vertices at
/// even levels. Internally every V-vertex sits between O-vertices and every
/// leaf hangs from an O-vertex, so an O-vertex of O-arity k has exactly k
/// children (leaves or V-vertices). Composition grafts and then merges the two
/// O-vertices meeting at the new edge through O's own composition.
///
/// The displayed form drops the identity pads that sit above a leaf, keeping
/// an identity only where its child is a V-vertex.
template <SetOperad O>
class CoproductOperad {
 public:
  struct Node {
    bool is_leaf = true;
    bool is_v = false;
    typename O::Element o{};  ///< O-vertices
    std::string v;            ///< V-vertices
    std::vector<Node> children;

    bool operator==(const Node& other) const {
      if (is_leaf != other.is_leaf || is_v != other.is_v) return false;
      if (is_leaf) return true;
      if (is_v ? v != other.v : !(o == other.o)) return false;
      return children == other.children;
    }
  };
  using Element = Node;  // always an O-vertex at the root

  CoproductOperad(O base, std::map<std::string, int> signature, int max_v = 2, int max_o_arity = 3)
      : base_(std::move(base)),
        signature_(std::move(signature)),
        max_v_(max_v),
        max_o_arity_(max_o_arity) {}

  std::string name() const { return base_.name() + " ∐ F(V)"; }
  const O& base() const { return base_; }

  int arity(const Node& t) const {
    if (t.is_leaf) return 1;
    int n = 0;
    for (const auto& c : t.children) n += arity(c);
    return n;
  }

  Node identity() const { return include(base_.identity()); }

  /// The corolla of an O-element.
  Node include(const typename O::Element& x) const {
    Node n;
    n.is_leaf = false;
    n.o = x;
    n.children.assign(static_cast<std::size_t>(base_.arity(x)), Node{});
    return n;
  }

  /// A V-generator padded by identities below and above.
  Node generator(const std::string& name) const {
    auto it = signature_.find(name);
    if (it == signature_.end()) throw std::invalid_argument("unknown generator " + name);
    Node v;
    v.is_leaf = false;
    v.is_v = true;
    v.v = name;
    v.children.assign(static_cast<std::size_t>(it->second), include(base_.identity()));
    Node root = include(base_.identity());
    root.children[0] = std::move(v);
    return root;
  }

  Node compose(const Node& x, int i, const Node& y) const {
    check_slot(i, arity(x));
    if (y.is_leaf || y.is_v) throw std::invalid_argument("coproduct: root must be an O-vertex");
    Node out = x;
    int remaining = i;
    if (!graft_into(out, remaining, y)) throw std::logic_error("coproduct: leaf not found");
    return out;
  }

  std::vector<Node> elements(int n, std::size_t limit) const {
    std::vector<Node> out;
    for (int budget = 0; budget <= max_v_; ++budget) {
      for (auto& t : o_nodes(n, budget)) {
        out.push_back(std::move(t));
        if (limit && out.size() >= limit) return out;
      }
    }
    return out;
  }

  /// Displayed form: `label[children]` with `*` leaves, `|` for the identity.
  std::string to_string(const Node& t) const {
    if (is_identity_pad(t) && t.children[0].is_leaf) return "|";
    std::string s;
    write(t, s);
    return s;
  }

 private:
  bool is_identity_pad(const Node& t) const {
    return !t.is_leaf && !t.is_v && t.children.size() == 1 && t.o == base_.identity();
  }

  void write(const Node& t, std::string& s) const {
    if (t.is_leaf) {
      s += '*';
      return;
    }
    if (!t.is_v && is_identity_pad(t) && t.children[0].is_leaf) {
      s += '*';
      return;
    }
    s += t.is_v ? t.v : base_.to_string(t.o);
    s += '[';
    for (std::size_t c = 0; c < t.children.size(); ++c) {
      if (c) s += ',';
      write(t.children[c], s);
    }
    s += ']';
  }

  // Finds the `remaining`-th leaf below `t` (an O-vertex) and merges y there.
  bool graft_into(Node& t, int& remaining, const Node& y) const {
    for (std::size_t c = 0; c < t.children.size(); ++c) {
      Node& child = t.children[c];
      if (child.is_leaf) {
        if (--remaining == 0) {
          t.o = base_.compose(t.o, static_cast<int>(c) + 1, y.o);
          auto it = t.children.erase(t.children.begin() + static_cast<std::ptrdiff_t>(c));
          t.children.insert(it, y.children.begin(), y.children.end());
          return true;
        }
        continue;
      }
      for (auto& grand : child.children)
        if (graft_into(grand, remaining, y)) return true;
    }
    return false;
  }

  // O-rooted trees with n leaves and exactly `budget` V-vertices.
  std::vector<Node> o_nodes(int n, int budget) const {
    std::vector<Node> out;
    for (int k = 0; k <= max_o_arity_; ++k) {
      for (const auto& x : base_.elements(k, 0)) {
        fill_children(include(x), 0, n, budget, out);
      }
    }
    return out;
  }

  void fill_children(Node node, std::size_t c, int leaves, int budget, std::vector<Node>& out) const {
    if (c == node.children.size()) {
      if (leaves == 0 && budget == 0) out.push_back(std::move(node));
      return;
    }
    if (leaves > 0) fill_children(node, c + 1, leaves - 1, budget, out);
    if (budget == 0) return;
    for (const auto& [name, ar] : signature_) {
      for (int l = 0; l <= leaves; ++l) {
        for (int b = 0; b < budget; ++b) {
          for (auto& v : v_nodes(name, ar, l, b)) {
            Node next = node;
            next.children[c] = std::move(v);
            fill_children(std::move(next), c + 1, leaves - l, budget - 1 - b, out);
          }
        }
      }
    }
  }

  std::vector<Node> v_nodes(const std::string& name, int ar, int leaves, int budget) const {
    Node v;
    v.is_leaf = false;
    v.is_v = true;
    v.v = name;
    std::vector<Node> out;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t c, int l, int b) {
      if (c == static_cast<std::size_t>(ar)) {
        if (l == 0 && b == 0) out.push_back(v);
        return;
      }
      for (int lc = 0; lc <= l; ++lc)
        for (int bc = 0; bc <= b; ++bc)
          for (auto& sub : o_nodes(lc, bc)) {
            v.children.push_back(std::move(sub));
            rec(c + 1, l - lc, b - bc);
            v.children.pop_back();
          }
    };
    rec(0, leaves, budget);
    return out;
  }

  O base_;
  std::map<std::string, int> signature_;
  int max_v_;
  int max_o_arity_;
};

}  // namespace operadix::set
