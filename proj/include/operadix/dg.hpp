#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace operadix::dg {

using Integer = boost::multiprecision::cpp_int;

/// u∞A is built on Ass (no unit label); u∞uA is built on uAss and contains
/// u with μ∘₁u = id = μ∘₂u.
enum class Ambient { kUinfA, kUinfUA };
std::string to_string(Ambient a);
Ambient parse_ambient(std::string_view s);  ///< "uinf-a" | "uinf-ua"

// ---------------------------------------------------------------------------
// Subsets of {1..n} as bitmasks: bit k-1 stands for the element k.

using Subset = std::uint32_t;
constexpr int kMaxN = 24;

Subset make_subset(std::initializer_list<int> elems);
Subset make_subset(const std::vector<int>& elems);
std::vector<int> subset_elements(Subset s);
int cardinality(Subset s);
int min_element(Subset s);  ///< throws on the empty set
int max_element(Subset s);
/// S + m; throws std::out_of_range if some element leaves 1..kMaxN.
Subset shift(Subset s, int m);
/// S_v = {l_1, ..., l_{v-1}} and S'_v = S \ S_v, 1 <= v <= |S|+1.
Subset prefix_part(Subset s, int v);
Subset suffix_part(Subset s, int v);
/// l_v with l_0 = 0 and l_{|S|+1} = n+1.
int boundary(Subset s, int n, int v);
std::string subset_to_string(Subset s);  ///< "{1,3}"

struct SubsetComposition {
  int r = 0;
  Subset result = 0;
};

/// S₁ ∘ᵢ S₂ for S₁ ⊆ {1..p}, S₂ ⊆ {1..q}: the i-th element c of the
/// complement of S₁ satisfies j_{r-1} < c < j_r, and the result is
/// {j_1..j_{r-1}, k+c-1 (k ∈ S₂), j_r+q-1 .. j_s+q-1}.
/// Throws std::out_of_range unless 1 <= i <= p - |S₁|.
SubsetComposition subset_circ(Subset s1, int p, int i, Subset s2, int q);

// ---------------------------------------------------------------------------
// Labels

struct GradedLabel {
  enum class Kind : std::uint8_t { kMu, kUnit, kId, kNu };
  Kind kind = Kind::kId;
  int k = 1;       ///< arity of a μ-corolla (>= 2)
  int n = 0;       ///< ν_n^S
  Subset s = 0;

  static GradedLabel mu(int arity = 2);
  static GradedLabel unit();
  static GradedLabel id();
  /// Throws std::invalid_argument unless 1 <= n <= kMaxN and ∅ ≠ S ⊆ {1..n}.
  static GradedLabel nu(int n, Subset s);

  int arity() const;
  int degree() const;
  bool is_nu() const { return kind == Kind::kNu; }
  std::string to_string() const;  ///< mu, mu^k, u, id, nu(n,{..})

  bool operator==(const GradedLabel&) const = default;
  auto operator<=>(const GradedLabel&) const = default;
};

// ---------------------------------------------------------------------------
// Canonical trees
//
// Internally every tree alternates O-vertices (from Ass/uAss) and ν-vertices,
// starting with an O-vertex at the root; leaves hang from O-vertices only.
// Because every component of uAss is a singleton, an O-vertex is determined
// by its number of children: μ^{k-1} for k >= 2, id for 1, u for 0.
//
// Trees are stored as preorder token streams, which makes comparison and
// hashing cheap.

class CanonicalTree {
 public:
  static constexpr std::uint64_t kLeaf = 0;
  static std::uint64_t o_token(int children) { return 1u | (static_cast<std::uint64_t>(children) << 2); }
  static std::uint64_t nu_token(int n, Subset s) {
    return 2u | (static_cast<std::uint64_t>(n) << 2) | (static_cast<std::uint64_t>(s) << 10);
  }
  static bool is_o(std::uint64_t t) { return (t & 3u) == 1u; }
  static bool is_nu(std::uint64_t t) { return (t & 3u) == 2u; }
  static int o_children(std::uint64_t t) { return static_cast<int>(t >> 2); }
  static int nu_n(std::uint64_t t) { return static_cast<int>((t >> 2) & 0xFFu); }
  static Subset nu_s(std::uint64_t t) { return static_cast<Subset>(t >> 10); }
  static GradedLabel nu_label(std::uint64_t t) { return GradedLabel::nu(nu_n(t), nu_s(t)); }

  CanonicalTree() : tokens_{o_token(1), kLeaf} {}  // identity
  explicit CanonicalTree(std::vector<std::uint64_t> tokens) : tokens_(std::move(tokens)) {}

  static CanonicalTree identity() { return CanonicalTree(); }
  /// The tree of a single generator: μ-corolla, u, id, or ν padded by ids.
  static CanonicalTree of(const GradedLabel& g);

  const std::vector<std::uint64_t>& tokens() const { return tokens_; }
  int arity() const;
  int degree() const;
  /// ν-labels in preorder.
  std::vector<GradedLabel> nu_labels() const;
  bool has_unit() const;   ///< some O-vertex without children
  bool is_identity() const { return tokens_.size() == 2 && tokens_[0] == o_token(1); }

  bool operator==(const CanonicalTree&) const = default;
  auto operator<=>(const CanonicalTree&) const = default;

 private:
  std::vector<std::uint64_t> tokens_;
};

// ---------------------------------------------------------------------------
// Elements: finite ℤ-linear combinations of canonical trees of one arity.

class Element {
 public:
  using Terms = std::map<CanonicalTree, Integer>;

  explicit Element(int arity = 1) : arity_(arity) {}
  Element(const CanonicalTree& t, Integer c = 1);
  static Element zero(int arity) { return Element(arity); }

  int arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer coefficient(const CanonicalTree& t) const;
  /// Degree if nonzero and homogeneous.
  std::optional<int> degree() const;
  /// Splits an inhomogeneous element by degree.
  std::map<int, Element> by_degree() const;

  void add_term(const CanonicalTree& t, const Integer& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Integer& c) const;

  bool operator==(const Element& o) const { return terms_ == o.terms_ && (terms_.empty() || arity_ == o.arity_); }

 private:
  void check_arity(int a) const;
  int arity_;
  Terms terms_;
};

Element identity_element();
Element generator(const GradedLabel& g);

// ---------------------------------------------------------------------------
// Raw labelled trees for normalize().

struct RawNode {
  enum class Kind : std::uint8_t { kLeaf, kO, kNu };
  Kind kind = Kind::kLeaf;
  GradedLabel nu;   ///< ν-vertices
  int tag = -1;     ///< position of this ν-factor in the input tensor order
  std::vector<RawNode> children;

  static RawNode leaf() { return RawNode{}; }
  /// O-vertex; its uAss label is implied by the number of children.
  static RawNode o(std::vector<RawNode> children);
  static RawNode make_nu(const GradedLabel& g, std::vector<RawNode> children, int tag = -1);
};

/// Normal form of a raw tree: adjacent O-vertices are merged (μ-chains become
/// corollas, u is absorbed), identity pads are inserted where a ν-vertex
/// touches a leaf, another ν-vertex or the root. The coefficient is the
/// Koszul sign of the permutation from the tag order of the ν-vertices to
/// their preorder. Untagged inputs (all tags -1) use preorder, sign +1.
/// Throws std::invalid_argument on an arity mismatch, or when the ambient is
/// u∞A and a unit occurs.
Element normalize(const RawNode& raw, Ambient ambient = Ambient::kUinfUA);
RawNode to_raw(const CanonicalTree& t);

// ---------------------------------------------------------------------------
// Operations

/// x ∘ᵢ y with the Koszul sign of reordering x ⊗ y into preorder.
Element compose(const Element& x, int i, const Element& y);
Element compose(const CanonicalTree& x, int i, const CanonicalTree& y);

/// d on a generator, transcribed from the defining formula.
Element d_generator(const GradedLabel& g);
/// Derivation extension of d_generator over vertices in preorder.
Element differential(const Element& x);

/// Every ν-label has |S| <= m.
bool in_filtration(const Element& x, int m);
/// False if the ambient is u∞A and a unit label occurs.
bool in_ambient(const Element& x, Ambient a);

/// A choice of replacement for each ν-vertex of a tree, in preorder.
/// nullptr keeps the vertex; an empty list kills the tree.
using TermList = std::vector<std::pair<CanonicalTree, Integer>>;
/// Replaces the ν-vertices of t as specified and renormalizes. Factors
/// of the replacements are placed in the tensor order at the position of the
/// vertex they replace.
Element substitute(const CanonicalTree& t, const std::vector<const TermList*>& choices);
TermList term_list(const Element& x);

// ---------------------------------------------------------------------------
// Morphisms out of u∞uA (or u∞A), fixed on μ and u.

class OperadMorphism {
 public:
  using FixPredicate = std::function<bool(const GradedLabel&)>;
  /// Lazily computed images for labels that were not assigned explicitly.
  using Rule = std::function<std::optional<Element>(const GradedLabel&)>;

  OperadMorphism() = default;
  /// Labels for which `fixes` holds map to themselves.
  explicit OperadMorphism(std::string name, FixPredicate fixes = {}, Rule rule = {})
      : name_(std::move(name)), fixes_(std::move(fixes)), rule_(std::move(rule)) {}

  const std::string& name() const { return name_; }
  /// Throws std::invalid_argument unless value has the arity and degree of g.
  void assign(const GradedLabel& g, const Element& value);
  bool assigned(const GradedLabel& g) const { return values_.count(g) > 0; }
  bool fixes(const GradedLabel& g) const { return fixes_ && fixes_(g); }
  /// Image of a ν-generator; throws std::out_of_range if unassigned and not fixed.
  Element image(const GradedLabel& g) const;
  /// Replacement list for substitute(); nullptr when g is fixed.
  const TermList* replacement(const GradedLabel& g) const;
  const std::map<GradedLabel, Element>& values() const { return values_; }

 private:
  std::string name_;
  FixPredicate fixes_;
  Rule rule_;
  std::map<GradedLabel, Element> values_;
  mutable std::map<GradedLabel, TermList> lists_;
};

/// Multiplicative extension of φ.
Element evaluate_morphism(const OperadMorphism& phi, const Element& x);

OperadMorphism identity_morphism();
/// u∞A → uAss ⊂ u∞uA: μ ↦ μ, ν₁^{1} ↦ u, ν_n^S ↦ 0 for n > 1.
OperadMorphism resolution_map();
/// ψ: u∞A → u∞uA, the inclusion.
OperadMorphism inclusion_psi();

// ---------------------------------------------------------------------------
// Enumeration helpers

/// All ν_n^S with n + |S| <= bound.
std::vector<GradedLabel> generators_up_to(int bound);
/// All ν_n^S with |S| = m and n <= max_n.
std::vector<GradedLabel> generators_at_level(int m, int max_n);

/// Seeded random basis trees: composites of 1..max_factors generators
/// (ν_n^S with n + |S| <= bound, μ-corollas, and u in u∞uA) at random slots.
std::vector<CanonicalTree> random_trees(std::uint64_t seed, std::size_t count, int bound, Ambient ambient,
                                        int max_factors = 3);

}  // namespace operadix::dg
