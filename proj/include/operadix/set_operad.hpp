#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "operadix/tree.hpp"

namespace operadix::set {

/// A non-symmetric operad in Set whose components can be listed up to a
/// bound. `elements(n, limit)` returns at most `limit` elements of arity n
/// (limit 0 means no cap) in a deterministic order.
template <class O>
concept SetOperad = requires(const O& op, const typename O::Element& a, int i, int n,
                             std::size_t limit) {
  { op.name() } -> std::convertible_to<std::string>;
  { op.arity(a) } -> std::convertible_to<int>;
  { op.identity() } -> std::convertible_to<typename O::Element>;
  { op.compose(a, i, a) } -> std::convertible_to<typename O::Element>;
  { op.elements(n, limit) } -> std::convertible_to<std::vector<typename O::Element>>;
  { op.to_string(a) } -> std::convertible_to<std::string>;
  { a == a } -> std::convertible_to<bool>;
};

/// Throws std::out_of_range unless 1 <= i <= p.
void check_slot(int i, int p);

// ---------------------------------------------------------------------------
// Ass and uAss. Every component is a singleton, so an element is its arity:
// arity n >= 2 is mu^{n-1}, arity 1 is id, arity 0 (uAss only) is u.

class AssOperad {
 public:
  using Element = int;
  std::string name() const { return "Ass"; }
  int arity(Element a) const { return a; }
  Element identity() const { return 1; }
  Element compose(Element a, int i, Element b) const;
  std::vector<Element> elements(int n, std::size_t limit) const;
  std::string to_string(Element a) const;
};

class UAssOperad {
 public:
  using Element = int;
  std::string name() const { return "uAss"; }
  int arity(Element a) const { return a; }
  Element identity() const { return 1; }
  /// mu^{p-1} o_i mu^{q-1} = mu^{p+q-2}; mu o_1 u = id = mu o_2 u.
  Element compose(Element a, int i, Element b) const;
  std::vector<Element> elements(int n, std::size_t limit) const;
  std::string to_string(Element a) const;
};

/// Parses `mu`, `mu^k`, `id`, `u` into a uAss element (its arity).
int parse_uass(std::string_view token);

/// Collapses a tree of mu-vertices to its normal form mu^{n-1}, returned as
/// the arity n. Throws std::invalid_argument if some vertex has arity < 2.
int ass_normal_form(const Tree& t);

/// Composition in uAss on textual tokens (`mu^k`, `mu`, `id`, `u`).
std::string uass_compose(std::string_view a, int i, std::string_view b);

// ---------------------------------------------------------------------------
// Corollas with corks: the object operads Ob(u∞A^Grd) = Ass ∐ F({u}[0]) and
// Ob(U) = uAss ∐ F({u'}[0]).
//
// An object is a sequence of slots, each a leaf or a cork. Sequences of length
// >= 2 are corollas mu^{len-1}(...). Length 1 is `|` (a leaf) or the cork
// generator. Length 0 only exists in Ob(U): the white cork u of uAss.

enum class CorkFlavor {
  kUinfA,  ///< Ob(u∞A^Grd): corks are the free generator, written `u`
  kU,      ///< Ob(U): corks are the free generator `u'`; `u` is the uAss unit
};

struct Corolla {
  std::uint8_t length = 1;
  std::uint32_t corks = 0;  ///< bit s set: slot s (0-based) is a cork

  int leaves() const;
  int cork_count() const;
  bool is_cork(int slot) const { return (corks >> slot) & 1u; }
  bool operator==(const Corolla&) const = default;
  auto operator<=>(const Corolla&) const = default;
};

class CorollaOperad {
 public:
  CorollaOperad(CorkFlavor flavor, int max_corks) : flavor_(flavor), max_corks_(max_corks) {}

  using Element = Corolla;
  std::string name() const;
  CorkFlavor flavor() const { return flavor_; }
  int max_corks() const { return max_corks_; }

  int arity(const Corolla& a) const { return a.leaves(); }
  Corolla identity() const { return Corolla{1, 0}; }
  /// Grafts b onto the i-th leaf of a and contracts: b's slots replace the leaf.
  Corolla compose(const Corolla& a, int i, const Corolla& b) const;
  /// Arity-n objects with at most max_corks() corks, ordered by cork count then
  /// slot pattern.
  std::vector<Corolla> elements(int n, std::size_t limit) const;
  std::string to_string(const Corolla& a) const;
  /// Inverse of to_string; throws std::invalid_argument.
  Corolla parse(std::string_view text) const;
  bool valid(const Corolla& a) const;

  Corolla mu() const { return Corolla{2, 0}; }
  /// The free cork generator: `u` in Ob(u∞A^Grd), `u'` in Ob(U).
  Corolla cork() const { return Corolla{1, 1}; }
  /// The white cork u of Ob(U); throws for Ob(u∞A^Grd).
  Corolla unit() const;

 private:
  CorkFlavor flavor_;
  int max_corks_;
};

/// Composition in Ob(u∞A^Grd) and Ob(U) with unbounded cork count.
Corolla uinfa_objects_compose(const Corolla& x, int i, const Corolla& y);
Corolla u_objects_compose(const Corolla& x, int i, const Corolla& y);

/// Ob(psi): Ob(u∞A^Grd) -> Ob(U), black corks to black corks.
Corolla ob_psi(const Corolla& x);

// ---------------------------------------------------------------------------
// End(X) for X = {0, ..., s-1}: arity-n elements are all functions X^n -> X,
// stored as value tables indexed by the base-s number x_1 x_2 ... x_n.

struct EndFunction {
  int arity = 0;
  std::vector<std::uint8_t> table;
  bool operator==(const EndFunction&) const = default;
  auto operator<=>(const EndFunction&) const = default;
};

class FiniteEndOperad {
 public:
  explicit FiniteEndOperad(int carrier_size);

  using Element = EndFunction;
  std::string name() const { return "End(" + std::to_string(size_) + ")"; }
  int carrier_size() const { return size_; }

  int arity(const EndFunction& f) const { return f.arity; }
  EndFunction identity() const;
  EndFunction compose(const EndFunction& f, int i, const EndFunction& g) const;
  /// All functions when the component has at most `limit` elements (or limit
  /// is 0 and the component is small enough to list); otherwise the
  /// projections and constants followed by an evenly strided sample.
  std::vector<EndFunction> elements(int n, std::size_t limit) const;
  std::string to_string(const EndFunction& f) const;

  EndFunction constant(int value) const;                ///< arity 0
  EndFunction binary(const std::vector<int>& table) const;  ///< arity 2, row-major
  int apply(const EndFunction& f, const std::vector<int>& args) const;
  /// Number of arity-n elements, or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> component_size(int n) const;

 private:
  EndFunction decode(int n, std::uint64_t index) const;
  int size_;
};

// ---------------------------------------------------------------------------
// Free operad F(V) on a signature of named generators. Elements are labelled
// trees; composition is grafting.

class FreeSetOperad {
 public:
  FreeSetOperad(std::map<std::string, int> signature, int max_inner)
      : signature_(std::move(signature)), max_inner_(max_inner) {}

  using Element = Tree;
  std::string name() const { return "F(V)"; }
  int arity(const Tree& t) const { return t.leaf_count(); }
  Tree identity() const { return Tree::bare(); }
  Tree compose(const Tree& a, int i, const Tree& b) const;
  std::vector<Tree> elements(int n, std::size_t limit) const;
  /// Functional notation `x2{*,x3{...}}`; `|` for the identity.
  std::string to_string(const Tree& t) const;
  /// Corolla of a generator.
  Tree generator(const std::string& name) const;
  const std::map<std::string, int>& signature() const { return signature_; }

 private:
  std::map<std::string, int> signature_;
  int max_inner_;
};

// ---------------------------------------------------------------------------
// Axiom harness.

struct AxiomViolation {
  std::string axiom;
  std::string witness;
};

struct AxiomReport {
  std::string operad;
  int max_arity = 0;
  std::size_t element_bound = 0;
  bool exhaustive = true;  ///< false if some component was sampled
  std::map<std::string, std::uint64_t> instances;
  std::uint64_t violation_count = 0;
  std::vector<AxiomViolation> violations;  ///< first few witnesses

  bool vacuous() const;
  bool passed() const { return violation_count == 0; }
  nlohmann::json to_json() const;
};

/// Exhaustively instantiates the four operad axioms over all elements of
/// arity <= max_arity (at most element_bound per arity, 0 = no cap):
///   (1) (a o_i b) o_j c = (a o_j c) o_{i+q-1} b        for j < i, c in O(q)
///   (2) (a o_i b) o_j c = a o_i (b o_{j-i+1} c)        for i <= j < i+p, b in O(p)
///   (3) id o_1 a = a
///   (4) a o_i id = a
template <SetOperad O>
AxiomReport check_axioms(const O& op, int max_arity, std::size_t element_bound) {
  using E = typename O::Element;
  constexpr std::size_t kMaxWitnesses = 16;
  AxiomReport report;
  report.operad = op.name();
  report.max_arity = max_arity;
  report.element_bound = element_bound;
  for (const char* k : {"(1) horizontal", "(2) vertical", "(3) left unit", "(4) right unit"})
    report.instances[k] = 0;

  std::vector<E> all;
  for (int n = 0; n <= max_arity; ++n) {
    auto comp = op.elements(n, element_bound);
    if constexpr (requires { op.component_size(n); }) {
      auto full = op.component_size(n);
      if (!full || *full != comp.size()) report.exhaustive = false;
    }
    all.insert(all.end(), comp.begin(), comp.end());
  }

  auto violate = [&](const char* axiom, const std::string& witness) {
    ++report.violation_count;
    if (report.violations.size() < kMaxWitnesses) report.violations.push_back({axiom, witness});
  };

  const E id = op.identity();
  for (const E& a : all) {
    ++report.instances["(3) left unit"];
    if (!(op.compose(id, 1, a) == a)) violate("(3) left unit", "a=" + op.to_string(a));
    const int pa = op.arity(a);
    for (int i = 1; i <= pa; ++i) {
      ++report.instances["(4) right unit"];
      if (!(op.compose(a, i, id) == a))
        violate("(4) right unit", "a=" + op.to_string(a) + " i=" + std::to_string(i));
    }
  }

  for (const E& a : all) {
    const int pa = op.arity(a);
    for (int i = 1; i <= pa; ++i) {
      for (const E& b : all) {
        const int pb = op.arity(b);
        const E ab = op.compose(a, i, b);
        for (const E& c : all) {
          const int q = op.arity(c);
          for (int j = 1; j < i; ++j) {
            ++report.instances["(1) horizontal"];
            E lhs = op.compose(ab, j, c);
            E rhs = op.compose(op.compose(a, j, c), i + q - 1, b);
            if (!(lhs == rhs))
              violate("(1) horizontal", "a=" + op.to_string(a) + " b=" + op.to_string(b) +
                                            " c=" + op.to_string(c) + " i=" + std::to_string(i) +
                                            " j=" + std::to_string(j));
          }
          for (int j = i; j < i + pb; ++j) {
            ++report.instances["(2) vertical"];
            E lhs = op.compose(ab, j, c);
            E rhs = op.compose(a, i, op.compose(b, j - i + 1, c));
            if (!(lhs == rhs))
              violate("(2) vertical", "a=" + op.to_string(a) + " b=" + op.to_string(b) +
                                          " c=" + op.to_string(c) + " i=" + std::to_string(i) +
                                          " j=" + std::to_string(j));
          }
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Monoids on finite sets.

struct MonoidCensus {
  int carrier_size = 0;
  std::uint64_t operations = 0;  ///< |X|^(|X|^2)
  std::uint64_t associative_count = 0;
  std::uint64_t unital_count = 0;  ///< associative with a two-sided unit
  int max_units_per_op = 0;        ///< over all associative operations

  nlohmann::json to_json() const;
};

/// Counts associative and unital binary operations on {0..size-1} by
/// backtracking over partial tables. Throws std::invalid_argument unless
/// 1 <= size <= 4.
MonoidCensus monoid_census(int size);

/// Raised when the hypotheses of unit_transfer_check do not hold.
class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Given m of arity 2 and two arity-0 elements fu, gu with m o_1 fu = id and
/// m o_2 gu = id, evaluates (m o_1 fu) o_1 gu along both equation chains
/// (through axiom (1) and the unit laws) and reports whether fu = gu.
template <SetOperad O>
bool unit_transfer_check(const O& op, const typename O::Element& m,
                         const typename O::Element& fu, const typename O::Element& gu) {
  if (op.arity(m) != 2 || op.arity(fu) != 0 || op.arity(gu) != 0)
    throw std::invalid_argument("unit_transfer_check: expected arities 2, 0, 0");
  const auto id = op.identity();
  const auto left = op.compose(m, 1, fu);
  const auto right = op.compose(m, 2, gu);
  if (!(left == id)) throw HypothesisFailure("m o_1 fu != id");
  if (!(right == id)) throw HypothesisFailure("m o_2 gu != id");

  const auto lhs = op.compose(left, 1, gu);
  // First chain: (m o_1 fu) o_1 gu = id o_1 gu = gu.
  const auto chain1 = op.compose(id, 1, gu);
  // Second chain: (m o_1 fu) o_1 gu = (m o_2 gu) o_1 fu = id o_1 fu = fu.
  const auto swapped = op.compose(op.compose(m, 2, gu), 1, fu);
  const auto chain2 = op.compose(id, 1, fu);
  if (!(lhs == chain1) || !(swapped == lhs) || !(swapped == chain2)) return false;
  return fu == gu;
}

}  // namespace operadix::set
