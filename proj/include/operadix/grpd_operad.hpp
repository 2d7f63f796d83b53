#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "operadix/set_operad.hpp"

namespace operadix::grpd {

/// A morphism in a levelwise contractible groupoid operad is determined by
/// its source and target.
template <class E>
struct Morphism {
  E source;
  E target;
  bool operator==(const Morphism&) const = default;
  auto operator<=>(const Morphism&) const = default;
};

/// Levelwise contractible operad in groupoids with the given operad of
/// objects: exactly one morphism between any two objects of equal arity.
template <set::SetOperad O>
class ContractibleGroupoidOperad {
 public:
  using Object = typename O::Element;
  using Arrow = Morphism<Object>;

  explicit ContractibleGroupoidOperad(O objects) : objects_(std::move(objects)) {}
  const O& objects() const { return objects_; }

  /// The unique arrow x -> y. Throws std::invalid_argument if arities differ.
  Arrow unique_morphism(const Object& x, const Object& y) const {
    if (objects_.arity(x) != objects_.arity(y))
      throw std::invalid_argument("unique_morphism: objects lie in different components");
    return Arrow{x, y};
  }
  Arrow identity_morphism(const Object& x) const { return Arrow{x, x}; }

  /// Groupoid composition g ∘ f (first f, then g).
  Arrow then(const Arrow& f, const Arrow& g) const {
    if (!(f.target == g.source)) throw std::invalid_argument("then: arrows are not composable");
    return Arrow{f.source, g.target};
  }
  Arrow inverse(const Arrow& f) const { return Arrow{f.target, f.source}; }

  /// Operadic composition of arrows, computed on sources and targets.
  Arrow compose(const Arrow& a, int i, const Arrow& b) const {
    return Arrow{objects_.compose(a.source, i, b.source), objects_.compose(a.target, i, b.target)};
  }

  int arity(const Arrow& a) const { return objects_.arity(a.source); }

 private:
  O objects_;
};

using UinfAGrd = ContractibleGroupoidOperad<set::CorollaOperad>;
using Arrow = Morphism<set::Corolla>;

/// The generating isomorphisms λ = (μ(u,id), |) and ρ = (μ(id,u), |).
Arrow lambda_arrow();
Arrow rho_arrow();

struct GenerationState {
  int max_arity = 0;
  int max_corks = 0;
  int slot_bound = 0;  ///< intermediate objects have at most this many slots

  /// Reached objects per arity, in BFS discovery order.
  std::map<int, std::vector<set::Corolla>> objects;
  /// Connected classes under the generated arrows, per arity.
  std::map<int, int> classes;
  /// Number of distinct generating edges (whiskered λ, ρ) found.
  std::size_t edge_count = 0;

  std::vector<set::Corolla> missing_objects;  ///< in bounds, not reached
  std::vector<Arrow> missing_morphisms;       ///< in bounds, endpoints disconnected

  bool objects_complete() const { return missing_objects.empty(); }
  bool morphisms_complete() const { return missing_morphisms.empty(); }
  /// Every in-bound arrow (x, y) is a composite of generated ones.
  bool connected(const set::Corolla& x, const set::Corolla& y) const;
  nlohmann::json to_json() const;

  std::map<set::Corolla, set::Corolla> parent_;  // union-find
};

/// Closes {μ, u} under ∘_i and the arrows {λ, ρ} under whiskering by objects,
/// groupoid composition and inverses, inside Ob(u∞A^Grd). Objects and arrows
/// are kept while they have at most max_corks corks and at most
/// max_arity + max_corks slots; completeness is reported for objects of arity
/// <= max_arity with <= max_corks corks.
GenerationState generation_closure(int max_arity, int max_corks);

struct PathStep {
  set::Corolla from;
  set::Corolla to;
  std::string generator;  ///< "lambda" or "rho"
  int position = 0;       ///< 1-based slot of the deleted cork in `from`
};

/// Deletes the corks of x one at a time, leftmost first, using λ when the
/// cork has a right neighbour and ρ otherwise. Ends at a cork-free corolla,
/// at `|`, or at u.
std::vector<PathStep> cork_deletion_path(const set::Corolla& x);

struct PushoutReport {
  int max_arity = 0;
  int max_corks = 0;
  std::map<std::string, bool> checks;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> failures;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Object-level checks of the two push-out squares:
///   ψ ∘ φ̄_∞ = φ ∘ φ^Grd on Ass;
///   Ob(ψ) is a bijection in positive arity and an injection in arity 0 whose
///   image misses exactly the white cork u;
///   ψ and φ preserve ∘_i on all in-bound pairs;
///   the square ζ(e) = u, ζ'(e) = u, ζ'(e') = u' commutes, and Ob(U) splits as
///   the image of uAss plus the trees containing u', cross-checked against an
///   independent enumeration of uAss ∐ F({u'}[0]).
PushoutReport pushout_square_object_check(int max_arity, int max_corks);

}  // namespace operadix::grpd
