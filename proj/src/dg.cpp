#include "operadix/dg.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <random>
#include <stdexcept>

namespace operadix::dg {

std::string to_string(Ambient a) { return a == Ambient::kUinfA ? "uinf-a" : "uinf-ua"; }

Ambient parse_ambient(std::string_view s) {
  if (s == "uinf-a") return Ambient::kUinfA;
  if (s == "uinf-ua") return Ambient::kUinfUA;
  throw std::invalid_argument("unknown ambient '" + std::string(s) + "' (uinf-a | uinf-ua)");
}

// ---------------------------------------------------------------------------
// Subsets

Subset make_subset(const std::vector<int>& elems) {
  Subset s = 0;
  for (int e : elems) {
    if (e < 1 || e > kMaxN) throw std::out_of_range("subset element " + std::to_string(e) + " outside 1..24");
    if (s & (1u << (e - 1))) throw std::invalid_argument("repeated subset element " + std::to_string(e));
    s |= 1u << (e - 1);
  }
  return s;
}

Subset make_subset(std::initializer_list<int> elems) { return make_subset(std::vector<int>(elems)); }

std::vector<int> subset_elements(Subset s) {
  std::vector<int> out;
  for (int k = 0; k < 32; ++k)
    if (s & (1u << k)) out.push_back(k + 1);
  return out;
}

int cardinality(Subset s) { return std::popcount(s); }

int min_element(Subset s) {
  if (!s) throw std::invalid_argument("min of the empty set");
  return std::countr_zero(s) + 1;
}

int max_element(Subset s) {
  if (!s) throw std::invalid_argument("max of the empty set");
  return 32 - std::countl_zero(s);
}

Subset shift(Subset s, int m) {
  Subset out = 0;
  for (int e : subset_elements(s)) {
    const int x = e + m;
    if (x < 1 || x > kMaxN) throw std::out_of_range("shifted subset leaves 1..24");
    out |= 1u << (x - 1);
  }
  return out;
}

Subset prefix_part(Subset s, int v) {
  const auto el = subset_elements(s);
  if (v < 1 || v > static_cast<int>(el.size()) + 1) throw std::out_of_range("S_v: v out of range");
  Subset out = 0;
  for (int k = 0; k < v - 1; ++k) out |= 1u << (el[static_cast<std::size_t>(k)] - 1);
  return out;
}

Subset suffix_part(Subset s, int v) { return s & ~prefix_part(s, v); }

int boundary(Subset s, int n, int v) {
  const auto el = subset_elements(s);
  if (v == 0) return 0;
  if (v == static_cast<int>(el.size()) + 1) return n + 1;
  if (v < 0 || v > static_cast<int>(el.size())) throw std::out_of_range("l_v: v out of range");
  return el[static_cast<std::size_t>(v - 1)];
}

std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : subset_elements(s)) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e);
  }
  return out + "}";
}

SubsetComposition subset_circ(Subset s1, int p, int i, Subset s2, int q) {
  if (p < 1 || q < 1 || p + q - 1 > kMaxN) throw std::out_of_range("subset_circ: bad p, q");
  if ((p < 32 && (s1 >> p)) || (q < 32 && (s2 >> q)))
    throw std::out_of_range("subset_circ: subset exceeds its range");
  const int s = cardinality(s1);
  if (i < 1 || i > p - s) throw std::out_of_range("subset_circ: i outside 1..p-|S1|");
  // c = i-th element of the complement of S1 in {1..p}
  int c = 0;
  for (int x = 1, seen = 0; x <= p; ++x) {
    if (s1 & (1u << (x - 1))) continue;
    if (++seen == i) {
      c = x;
      break;
    }
  }
  const auto j = subset_elements(s1);
  int r = 1;
  while (r <= s && j[static_cast<std::size_t>(r - 1)] < c) ++r;
  Subset out = 0;
  for (int k = 0; k < r - 1; ++k) out |= 1u << (j[static_cast<std::size_t>(k)] - 1);
  for (int k : subset_elements(s2)) out |= 1u << (k + i + r - 2 - 1);
  for (int k = r - 1; k < s; ++k) out |= 1u << (j[static_cast<std::size_t>(k)] + q - 1 - 1);
  return {r, out};
}

// ---------------------------------------------------------------------------
// Labels

GradedLabel GradedLabel::mu(int arity) {
  if (arity < 2) throw std::invalid_argument("mu-corolla needs arity >= 2");
  GradedLabel g;
  g.kind = Kind::kMu;
  g.k = arity;
  return g;
}

GradedLabel GradedLabel::unit() {
  GradedLabel g;
  g.kind = Kind::kUnit;
  g.k = 0;
  return g;
}

GradedLabel GradedLabel::id() { return GradedLabel{}; }

GradedLabel GradedLabel::nu(int n, Subset s) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("nu: n must be in 1..24");
  if (s == 0) throw std::invalid_argument("nu: S must be nonempty");
  if (n < 32 && (s >> n)) throw std::invalid_argument("nu: S must lie in {1..n}");
  GradedLabel g;
  g.kind = Kind::kNu;
  g.k = 0;
  g.n = n;
  g.s = s;
  return g;
}

int GradedLabel::arity() const {
  switch (kind) {
    case Kind::kMu: return k;
    case Kind::kUnit: return 0;
    case Kind::kId: return 1;
    case Kind::kNu: return n - cardinality(s);
  }
  return 0;
}

int GradedLabel::degree() const { return kind == Kind::kNu ? n - 2 + cardinality(s) : 0; }

std::string GradedLabel::to_string() const {
  switch (kind) {
    case Kind::kMu: return k == 2 ? "mu" : "mu^" + std::to_string(k - 1);
    case Kind::kUnit: return "u";
    case Kind::kId: return "id";
    case Kind::kNu: return "nu(" + std::to_string(n) + "," + subset_to_string(s) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Canonical trees

CanonicalTree CanonicalTree::of(const GradedLabel& g) {
  using K = GradedLabel::Kind;
  switch (g.kind) {
    case K::kId: return identity();
    case K::kUnit: return CanonicalTree({o_token(0)});
    case K::kMu: {
      std::vector<std::uint64_t> t{o_token(g.k)};
      t.insert(t.end(), static_cast<std::size_t>(g.k), kLeaf);
      return CanonicalTree(std::move(t));
    }
    case K::kNu: {
      std::vector<std::uint64_t> t{o_token(1), nu_token(g.n, g.s)};
      for (int c = 0; c < g.arity(); ++c) {
        t.push_back(o_token(1));
        t.push_back(kLeaf);
      }
      return CanonicalTree(std::move(t));
    }
  }
  return identity();
}

int CanonicalTree::arity() const {
  return static_cast<int>(std::count(tokens_.begin(), tokens_.end(), kLeaf));
}

int CanonicalTree::degree() const {
  int d = 0;
  for (auto t : tokens_)
    if (is_nu(t)) d += nu_n(t) - 2 + cardinality(nu_s(t));
  return d;
}

std::vector<GradedLabel> CanonicalTree::nu_labels() const {
  std::vector<GradedLabel> out;
  for (auto t : tokens_)
    if (is_nu(t)) out.push_back(nu_label(t));
  return out;
}

bool CanonicalTree::has_unit() const {
  return std::find(tokens_.begin(), tokens_.end(), o_token(0)) != tokens_.end();
}

// ---------------------------------------------------------------------------
// Elements

Element::Element(const CanonicalTree& t, Integer c) : arity_(t.arity()) {
  if (c != 0) terms_.emplace(t, std::move(c));
}

void Element::check_arity(int a) const {
  if (a != arity_)
    throw std::invalid_argument("arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(a));
}

Integer Element::coefficient(const CanonicalTree& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<int> Element::degree() const {
  std::optional<int> d;
  for (const auto& [t, c] : terms_) {
    const int dt = t.degree();
    if (d && *d != dt) return std::nullopt;
    d = dt;
  }
  return d;
}

std::map<int, Element> Element::by_degree() const {
  std::map<int, Element> out;
  for (const auto& [t, c] : terms_) {
    auto [it, fresh] = out.try_emplace(t.degree(), arity_);
    it->second.add_term(t, c);
  }
  return out;
}

void Element::add_term(const CanonicalTree& t, const Integer& c) {
  if (c == 0) return;
  if (terms_.empty() && arity_ != t.arity()) {
    arity_ = t.arity();
  } else {
    check_arity(t.arity());
  }
  auto [it, fresh] = terms_.try_emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  if (!o.terms_.empty() && !terms_.empty()) check_arity(o.arity_);
  if (terms_.empty()) arity_ = o.terms_.empty() ? arity_ : o.arity_;
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (!o.terms_.empty() && !terms_.empty()) check_arity(o.arity_);
  if (terms_.empty()) arity_ = o.terms_.empty() ? arity_ : o.arity_;
  for (const auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r += o;
  return r;
}

Element Element::operator-(const Element& o) const {
  Element r = *this;
  r -= o;
  return r;
}

Element Element::operator-() const { return *this * Integer(-1); }

Element Element::operator*(const Integer& c) const {
  Element r(arity_);
  if (c == 0) return r;
  for (const auto& [t, k] : terms_) r.terms_.emplace(t, k * c);
  return r;
}

Element identity_element() { return Element(CanonicalTree::identity()); }
Element generator(const GradedLabel& g) { return Element(CanonicalTree::of(g)); }

// ---------------------------------------------------------------------------
// Raw trees and normalization

RawNode RawNode::o(std::vector<RawNode> children) {
  RawNode n;
  n.kind = Kind::kO;
  n.children = std::move(children);
  return n;
}

RawNode RawNode::make_nu(const GradedLabel& g, std::vector<RawNode> children, int tag) {
  if (!g.is_nu()) throw std::invalid_argument("make_nu: not a nu label");
  if (static_cast<int>(children.size()) != g.arity())
    throw std::invalid_argument("make_nu: " + g.to_string() + " needs " + std::to_string(g.arity()) +
                                " children");
  RawNode n;
  n.kind = Kind::kNu;
  n.nu = g;
  n.tag = tag;
  n.children = std::move(children);
  return n;
}

namespace {

class Normalizer {
 public:
  explicit Normalizer(Ambient a) : ambient_(a) {}

  void emit_root(const RawNode& n) {
    switch (n.kind) {
      case RawNode::Kind::kLeaf:
        out_.push_back(CanonicalTree::o_token(1));
        out_.push_back(CanonicalTree::kLeaf);
        break;
      case RawNode::Kind::kO: emit_o(n); break;
      case RawNode::Kind::kNu:
        out_.push_back(CanonicalTree::o_token(1));
        emit_nu(n);
        break;
    }
  }

  std::vector<std::uint64_t> take() { return std::move(out_); }
  int sign() const {
    bool any = std::any_of(tags_.begin(), tags_.end(), [](const auto& td) { return td.first >= 0; });
    if (!any) return 1;
    int parity = 0;
    for (std::size_t a = 0; a < tags_.size(); ++a) {
      if (!(tags_[a].second & 1)) continue;
      for (std::size_t b = a + 1; b < tags_.size(); ++b)
        if ((tags_[b].second & 1) && tags_[a].first > tags_[b].first) parity ^= 1;
    }
    return parity ? -1 : 1;
  }

 private:
  // Leaves and ν-vertices reachable from an O-vertex through O-vertices.
  void flatten(const RawNode& n, std::vector<const RawNode*>& acc) {
    for (const auto& c : n.children) {
      if (c.kind == RawNode::Kind::kO) {
        if (c.children.empty() && ambient_ == Ambient::kUinfA)
          throw std::invalid_argument("the unit u does not exist in u∞A");
        flatten(c, acc);
      } else {
        acc.push_back(&c);
      }
    }
  }

  void emit_o(const RawNode& n) {
    std::vector<const RawNode*> kids;
    flatten(n, kids);
    if (kids.empty() && ambient_ == Ambient::kUinfA)
      throw std::invalid_argument("the unit u does not exist in u∞A");
    out_.push_back(CanonicalTree::o_token(static_cast<int>(kids.size())));
    for (const RawNode* k : kids) {
      if (k->kind == RawNode::Kind::kLeaf) {
        out_.push_back(CanonicalTree::kLeaf);
      } else {
        emit_nu(*k);
      }
    }
  }

  void emit_nu(const RawNode& n) {
    if (static_cast<int>(n.children.size()) != n.nu.arity())
      throw std::invalid_argument("arity mismatch at " + n.nu.to_string());
    out_.push_back(CanonicalTree::nu_token(n.nu.n, n.nu.s));
    tags_.emplace_back(n.tag, n.nu.degree());
    for (const auto& c : n.children) {
      switch (c.kind) {
        case RawNode::Kind::kLeaf:
          out_.push_back(CanonicalTree::o_token(1));
          out_.push_back(CanonicalTree::kLeaf);
          break;
        case RawNode::Kind::kO: emit_o(c); break;
        case RawNode::Kind::kNu:
          out_.push_back(CanonicalTree::o_token(1));
          emit_nu(c);
          break;
      }
    }
  }

  Ambient ambient_;
  std::vector<std::uint64_t> out_;
  std::vector<std::pair<int, int>> tags_;  // (tag, degree) in preorder
};

struct Parsed {
  RawNode node;
  std::size_t next;
};

Parsed parse_raw(const std::vector<std::uint64_t>& t, std::size_t pos, int& tag) {
  const std::uint64_t tok = t.at(pos);
  if (tok == CanonicalTree::kLeaf) return {RawNode::leaf(), pos + 1};
  RawNode n;
  ++pos;
  int kids = 0;
  if (CanonicalTree::is_o(tok)) {
    n.kind = RawNode::Kind::kO;
    kids = CanonicalTree::o_children(tok);
  } else {
    n.kind = RawNode::Kind::kNu;
    n.nu = CanonicalTree::nu_label(tok);
    n.tag = tag++;
    kids = n.nu.arity();
  }
  n.children.reserve(static_cast<std::size_t>(kids));
  for (int c = 0; c < kids; ++c) {
    auto p = parse_raw(t, pos, tag);
    n.children.push_back(std::move(p.node));
    pos = p.next;
  }
  return {std::move(n), pos};
}

RawNode raw_with_tags(const CanonicalTree& t, int& tag) { return parse_raw(t.tokens(), 0, tag).node; }

// Replaces leaves of `n`, in order, by the nodes of `plugs` starting at `next`.
void plug_leaves(RawNode& n, std::vector<RawNode>& plugs, std::size_t& next) {
  for (auto& c : n.children) {
    if (c.kind == RawNode::Kind::kLeaf) {
      c = std::move(plugs.at(next++));
    } else {
      plug_leaves(c, plugs, next);
    }
  }
}

// Replaces the i-th leaf (1-based) of n by `plug`.
bool plug_leaf(RawNode& n, int& remaining, RawNode& plug) {
  for (auto& c : n.children) {
    if (c.kind == RawNode::Kind::kLeaf) {
      if (--remaining == 0) {
        c = std::move(plug);
        return true;
      }
    } else if (plug_leaf(c, remaining, plug)) {
      return true;
    }
  }
  return false;
}

std::pair<CanonicalTree, int> normalize_signed(const RawNode& raw, Ambient a) {
  Normalizer nz(a);
  nz.emit_root(raw);
  const int s = nz.sign();
  return {CanonicalTree(nz.take()), s};
}

}  // namespace

Element normalize(const RawNode& raw, Ambient ambient) {
  auto [t, s] = normalize_signed(raw, ambient);
  return Element(t, Integer(s));
}

RawNode to_raw(const CanonicalTree& t) {
  int tag = 0;
  return raw_with_tags(t, tag);
}

// ---------------------------------------------------------------------------
// Composition

Element compose(const CanonicalTree& x, int i, const CanonicalTree& y) {
  const int p = x.arity();
  if (i < 1 || i > p)
    throw std::out_of_range("compose: slot " + std::to_string(i) + " outside 1.." + std::to_string(p));
  int tag = 0;
  RawNode rx = raw_with_tags(x, tag);
  RawNode ry = raw_with_tags(y, tag);
  int remaining = i;
  plug_leaf(rx, remaining, ry);
  auto [t, s] = normalize_signed(rx, Ambient::kUinfUA);
  return Element(t, Integer(s));
}

Element compose(const Element& x, int i, const Element& y) {
  if (i < 1 || i > x.arity())
    throw std::out_of_range("compose: slot " + std::to_string(i) + " outside 1.." +
                            std::to_string(x.arity()));
  Element out(x.arity() + y.arity() - 1);
  for (const auto& [tx, cx] : x.terms())
    for (const auto& [ty, cy] : y.terms()) {
      auto e = compose(tx, i, ty);
      for (const auto& [t, c] : e.terms()) out.add_term(t, c * cx * cy);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

TermList term_list(const Element& x) {
  TermList out;
  out.reserve(x.size());
  for (const auto& [t, c] : x.terms()) out.emplace_back(t, c);
  return out;
}

namespace {

struct SubstBuilder {
  const std::vector<std::uint64_t>& tokens;
  const std::vector<const TermList*>& choices;
  const std::vector<std::size_t>& pick;
  int tag = 0;
  int nu_index = 0;

  Parsed build(std::size_t pos) {
    const std::uint64_t tok = tokens[pos];
    if (tok == CanonicalTree::kLeaf) return {RawNode::leaf(), pos + 1};
    ++pos;
    if (CanonicalTree::is_o(tok)) {
      RawNode n;
      n.kind = RawNode::Kind::kO;
      const int kids = CanonicalTree::o_children(tok);
      for (int c = 0; c < kids; ++c) {
        auto p = build(pos);
        n.children.push_back(std::move(p.node));
        pos = p.next;
      }
      return {std::move(n), pos};
    }
    const GradedLabel g = CanonicalTree::nu_label(tok);
    const std::size_t j = static_cast<std::size_t>(nu_index++);
    const TermList* list = choices[j];
    if (!list) {
      RawNode n;
      n.kind = RawNode::Kind::kNu;
      n.nu = g;
      n.tag = tag++;
      for (int c = 0; c < g.arity(); ++c) {
        auto p = build(pos);
        n.children.push_back(std::move(p.node));
        pos = p.next;
      }
      return {std::move(n), pos};
    }
    const CanonicalTree& rep = (*list)[pick[j]].first;
    if (rep.arity() != g.arity())
      throw std::invalid_argument("substitute: replacement for " + g.to_string() + " has arity " +
                                  std::to_string(rep.arity()));
    RawNode r = raw_with_tags(rep, tag);
    std::vector<RawNode> kids;
    for (int c = 0; c < g.arity(); ++c) {
      auto p = build(pos);
      kids.push_back(std::move(p.node));
      pos = p.next;
    }
    if (r.kind == RawNode::Kind::kLeaf) {
      r = std::move(kids.at(0));
    } else {
      std::size_t next = 0;
      plug_leaves(r, kids, next);
    }
    return {std::move(r), pos};
  }
};

}  // namespace

Element substitute(const CanonicalTree& t, const std::vector<const TermList*>& choices) {
  const auto labels = t.nu_labels();
  if (choices.size() != labels.size())
    throw std::invalid_argument("substitute: one choice per nu-vertex required");
  Element out(t.arity());
  std::vector<std::size_t> pick(choices.size(), 0);
  for (const auto* c : choices)
    if (c && c->empty()) return out;
  while (true) {
    Integer coeff = 1;
    for (std::size_t j = 0; j < choices.size(); ++j)
      if (choices[j]) coeff *= (*choices[j])[pick[j]].second;
    SubstBuilder b{t.tokens(), choices, pick};
    auto p = b.build(0);
    auto [tree, s] = normalize_signed(p.node, Ambient::kUinfUA);
    out.add_term(tree, s < 0 ? Integer(-coeff) : coeff);
    // Odometer over the choices.
    std::size_t j = 0;
    for (; j < choices.size(); ++j) {
      if (!choices[j]) continue;
      if (++pick[j] < choices[j]->size()) break;
      pick[j] = 0;
    }
    if (j == choices.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Differential

namespace {

Element compute_d_nu(const GradedLabel& g) {
  const int n = g.n;
  const Subset S = g.s;
  const int m = cardinality(S);
  const Element mu = generator(GradedLabel::mu());
  if (n == 1) return Element::zero(0);
  if (n == 2 && m == 1) {
    const int j = min_element(S);
    return compose(mu, j, generator(GradedLabel::nu(1, make_subset({1})))) - identity_element();
  }
  Element out(g.arity());
  // (-1)^n μ ∘₁ ν_{n-1}^S unless n ∈ S
  if (!(S & (1u << (n - 1)))) {
    Element t = compose(mu, 1, generator(GradedLabel::nu(n - 1, S)));
    out += (n % 2 ? -t : t);
  }
  // μ ∘₂ ν_{n-1}^{S-1} unless 1 ∈ S
  if (!(S & 1u)) out += compose(mu, 2, generator(GradedLabel::nu(n - 1, shift(S, -1))));
  // Σ (-1)^{i+v-1} ν_{n-1}^{S_v ∪ (S'_v - 1)} ∘ᵢ μ over l_{v-1} < i+v-1 < l_v - 1
  const int inner_arity = n - 1 - m;
  for (int v = 1; v <= m + 1; ++v) {
    const int lo = boundary(S, n, v - 1), hi = boundary(S, n, v);
    for (int i = 1; i <= inner_arity; ++i) {
      const int c = i + v - 1;
      if (!(lo < c && c < hi - 1)) continue;
      const Subset t = prefix_part(S, v) | shift(suffix_part(S, v), -1);
      Element term = compose(generator(GradedLabel::nu(n - 1, t)), i, mu);
      out += (c % 2 ? -term : term);
    }
  }
  // Σ ± ν_p^{S1} ∘ᵢ ν_q^{S2} over p + q = n + 1, S1 ∘ᵢ S2 = S, S1, S2 ≠ ∅
  for (int p = 1; p <= n; ++p) {
    const int q = n + 1 - p;
    for (Subset s1 = 1; s1 < (1u << p); ++s1) {
      const int c1 = cardinality(s1);
      for (int i = 1; i <= p - c1; ++i) {
        for (Subset s2 = 1; s2 < (1u << q); ++s2) {
          if (cardinality(s2) + c1 != m) continue;
          const auto sc = subset_circ(s1, p, i, s2, q);
          if (sc.result != S) continue;
          const int r = sc.r;
          const int e = q * (p - c1) + (q - 1) * (i + r - 1) + cardinality(s2) * (r - 1);
          Element term = compose(generator(GradedLabel::nu(p, s1)), i, generator(GradedLabel::nu(q, s2)));
          out += (e % 2 ? -term : term);
        }
      }
    }
  }
  return out;
}

std::mutex& d_cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<GradedLabel, Element>& d_cache() {
  static std::map<GradedLabel, Element> c;
  return c;
}

}  // namespace

Element d_generator(const GradedLabel& g) {
  if (!g.is_nu()) return Element::zero(g.arity());
  {
    std::lock_guard<std::mutex> lock(d_cache_mutex());
    auto it = d_cache().find(g);
    if (it != d_cache().end()) return it->second;
  }
  Element v = compute_d_nu(g);
  std::lock_guard<std::mutex> lock(d_cache_mutex());
  return d_cache().emplace(g, std::move(v)).first->second;
}

Element differential(const Element& x) {
  Element out(x.arity());
  for (const auto& [t, c] : x.terms()) {
    const auto labels = t.nu_labels();
    int prefix = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const Element dv = d_generator(labels[j]);
      if (!dv.is_zero()) {
        const TermList list = term_list(dv);
        std::vector<const TermList*> choices(labels.size(), nullptr);
        choices[j] = &list;
        Element e = substitute(t, choices);
        out += e * ((prefix % 2) ? Integer(-c) : c);
      }
      prefix += labels[j].degree();
    }
  }
  return out;
}

bool in_filtration(const Element& x, int m) {
  for (const auto& [t, c] : x.terms())
    for (auto tok : t.tokens())
      if (CanonicalTree::is_nu(tok) && cardinality(CanonicalTree::nu_s(tok)) > m) return false;
  return true;
}

bool in_ambient(const Element& x, Ambient a) {
  if (a == Ambient::kUinfUA) return true;
  for (const auto& [t, c] : x.terms())
    if (t.has_unit()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Morphisms

void OperadMorphism::assign(const GradedLabel& g, const Element& value) {
  if (!g.is_nu()) throw std::invalid_argument("morphisms are fixed on mu and u");
  if (!value.is_zero()) {
    if (value.arity() != g.arity())
      throw std::invalid_argument("assign: arity of the image of " + g.to_string() + " is wrong");
    auto d = value.degree();
    if (!d || *d != g.degree())
      throw std::invalid_argument("assign: image of " + g.to_string() + " must have degree " +
                                  std::to_string(g.degree()));
  }
  values_.insert_or_assign(g, value);
  lists_.insert_or_assign(g, term_list(value));
}

Element OperadMorphism::image(const GradedLabel& g) const {
  if (!g.is_nu()) return generator(g);
  if (auto it = values_.find(g); it != values_.end()) return it->second;
  if (rule_)
    if (auto v = rule_(g)) return *v;
  if (fixes(g)) return generator(g);
  throw std::out_of_range(name_ + ": no value assigned to " + g.to_string());
}

const TermList* OperadMorphism::replacement(const GradedLabel& g) const {
  if (auto it = lists_.find(g); it != lists_.end()) return &it->second;
  if (rule_)
    if (auto v = rule_(g)) return &lists_.emplace(g, term_list(*v)).first->second;
  if (fixes(g)) return nullptr;
  throw std::out_of_range(name_ + ": no value assigned to " + g.to_string());
}

Element evaluate_morphism(const OperadMorphism& phi, const Element& x) {
  Element out(x.arity());
  for (const auto& [t, c] : x.terms()) {
    const auto labels = t.nu_labels();
    std::vector<const TermList*> choices;
    choices.reserve(labels.size());
    for (const auto& g : labels) choices.push_back(phi.replacement(g));
    out += substitute(t, choices) * c;
  }
  return out;
}

OperadMorphism identity_morphism() {
  return OperadMorphism("id", [](const GradedLabel&) { return true; });
}

OperadMorphism resolution_map() {
  return OperadMorphism("resolution", {}, [](const GradedLabel& g) -> std::optional<Element> {
    if (g.n == 1) return generator(GradedLabel::unit());
    return Element::zero(g.arity());
  });
}

OperadMorphism inclusion_psi() { return identity_morphism(); }

std::vector<GradedLabel> generators_up_to(int bound) {
  std::vector<GradedLabel> out;
  for (int n = 1; n <= std::min(bound - 1, kMaxN); ++n)
    for (Subset s = 1; s < (1u << n); ++s)
      if (n + cardinality(s) <= bound) out.push_back(GradedLabel::nu(n, s));
  return out;
}

std::vector<GradedLabel> generators_at_level(int m, int max_n) {
  std::vector<GradedLabel> out;
  for (int n = std::max(1, m); n <= std::min(max_n, kMaxN); ++n)
    for (Subset s = 1; s < (1u << n); ++s)
      if (cardinality(s) == m) out.push_back(GradedLabel::nu(n, s));
  return out;
}

std::vector<CanonicalTree> random_trees(std::uint64_t seed, std::size_t count, int bound, Ambient ambient,
                                        int max_factors) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<GradedLabel> pool = generators_up_to(bound);
  const std::size_t nus = pool.size();
  pool.push_back(GradedLabel::mu());
  pool.push_back(GradedLabel::mu(3));
  if (ambient == Ambient::kUinfUA) pool.push_back(GradedLabel::unit());

  std::vector<CanonicalTree> out;
  out.reserve(count);
  while (out.size() < count) {
    CanonicalTree t = CanonicalTree::of(pool[pick(nus)]);
    const int factors = 1 + static_cast<int>(pick(static_cast<std::size_t>(std::max(1, max_factors))));
    for (int k = 1; k < factors && t.arity() > 0; ++k) {
      const int i = 1 + static_cast<int>(pick(static_cast<std::size_t>(t.arity())));
      t = compose(t, i, CanonicalTree::of(pool[pick(pool.size())])).terms().begin()->first;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace operadix::dg
