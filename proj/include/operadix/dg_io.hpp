#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "operadix/dg.hpp"
#include "operadix/tree.hpp"

namespace operadix::dg {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Expression syntax
//
//   expr := ['+'|'-'] term (('+'|'-') term)*
//   term := [INT '*'] comp
//   comp := app ('o_' INT app)*            left associative
//   app  := atom ['(' expr (',' expr)* ')'] simultaneous composition
//   atom := mu | mu^k | id | '|' | u | u' | nu(n,{s,...}) | 0 | '(' expr ')'
//
// `u'` is the black cork of the set-level operads; it can be rendered but is
// not a dg label.

/// A parsed tree before normalization. ν-vertices carry their position in the
/// text, which is the tensor order used for signs.
struct Literal {
  enum class Kind : std::uint8_t { kLeaf, kMu, kUnit, kBlackUnit, kNu };
  Kind kind = Kind::kLeaf;
  int k = 0;  ///< arity of a μ-corolla
  GradedLabel nu;
  int tag = -1;
  std::vector<Literal> children;

  int arity() const;
};

struct LiteralTerm {
  Integer coeff;
  Literal tree;
};

/// Expands the expression into signed literal trees, one per summand of the
/// distributed product. Throws ParseError.
std::vector<LiteralTerm> parse_literal(std::string_view text);

/// Parses and normalizes. Throws ParseError on syntax, arity or ambient errors.
Element parse_element(std::string_view text, Ambient ambient = Ambient::kUinfUA);
/// A single generator: mu, mu^k, u, id or nu(n,S).
GradedLabel parse_generator(std::string_view text);

/// Canonical expression: `mu o_1 nu(1,{1}) - id`, `0` for zero. Terms are
/// ordered by degree (descending), vertex count (descending), then text.
std::string to_text(const Element& x);
std::string to_text(const CanonicalTree& t);

// ---------------------------------------------------------------------------
// Display trees: identity pads above leaves are dropped; the bare tree is `|`.

Tree display_tree(const CanonicalTree& t);
Tree display_tree(const Literal& t);

/// Tree JSON with dg labels: leaf "*", bare tree "|", vertex
/// {"label":{"kind":...},"children":[...]}.
nlohmann::json to_json(const CanonicalTree& t);
/// `[{"coeff":"<decimal>","tree":...}, ...]` in display order.
nlohmann::json to_json(const Element& x);
CanonicalTree canonical_tree_from_json(const nlohmann::json& j, Ambient ambient = Ambient::kUinfUA);
Element element_from_json(const nlohmann::json& j, Ambient ambient = Ambient::kUinfUA);

// ---------------------------------------------------------------------------
// Rendering

struct RenderTerm {
  Integer coeff;
  Tree tree;  ///< labels: mu, mu^k, id, u, u', nu(n,{..})
};

std::vector<RenderTerm> render_terms(const Element& x);
std::vector<RenderTerm> render_terms(const std::vector<LiteralTerm>& terms);

/// One line per term, `<coeff> <tree>`; a single term with coefficient 1 is
/// printed as the bare tree text.
std::string render_text(const std::vector<RenderTerm>& terms);
/// Graphviz digraph, one cluster per term labelled with its signed
/// coefficient. White corks u are open circles, black corks u' filled.
std::string render_dot(const std::vector<RenderTerm>& terms);

}  // namespace operadix::dg
