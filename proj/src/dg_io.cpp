#include "operadix/dg_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace operadix::dg {

int Literal::arity() const {
  if (kind == Kind::kLeaf) return 1;
  int a = 0;
  for (const auto& c : children) a += c.arity();
  return a;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

Literal mu_literal(int k) {
  Literal l;
  l.kind = Literal::Kind::kMu;
  l.k = k;
  l.children.assign(static_cast<std::size_t>(k), Literal{});
  return l;
}

bool plug(Literal& n, int& remaining, const Literal& y) {
  for (auto& c : n.children) {
    if (c.kind == Literal::Kind::kLeaf) {
      if (--remaining == 0) {
        c = y;
        return true;
      }
    } else if (plug(c, remaining, y)) {
      return true;
    }
  }
  return false;
}

using Sum = std::vector<LiteralTerm>;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Sum parse_all() {
    Sum out = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  long integer() {
    if (!peek_digit()) fail("expected an integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1'000'000) fail("integer too large");
    }
    return v;
  }
  Integer big_integer() {
    if (!peek_digit()) fail("expected an integer");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Sum expr() {
    Sum out;
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    while (true) {
      Sum t = term();
      for (auto& lt : t) {
        if (negative) lt.coeff = -lt.coeff;
        out.push_back(std::move(lt));
      }
      if (accept('+')) negative = false;
      else if (accept('-')) negative = true;
      else break;
    }
    return out;
  }

  Sum term() {
    if (peek_digit()) {
      const std::size_t save = pos_;
      Integer c = big_integer();
      if (accept('*')) {
        Sum t = comp();
        for (auto& lt : t) lt.coeff *= c;
        if (c == 0) t.clear();
        return t;
      }
      pos_ = save;
    }
    return comp();
  }

  Sum comp() {
    Sum x = app();
    while (true) {
      skip();
      if (s_.substr(pos_, 2) != "o_") break;
      pos_ += 2;
      const int i = static_cast<int>(integer());
      Sum y = app();
      x = compose_sums(x, i, y);
    }
    return x;
  }

  Sum compose_sums(const Sum& x, int i, const Sum& y) {
    Sum out;
    for (const auto& a : x) {
      if (i < 1 || i > a.tree.arity())
        fail("slot " + std::to_string(i) + " outside 1.." + std::to_string(a.tree.arity()));
      for (const auto& b : y) {
        LiteralTerm t{a.coeff * b.coeff, a.tree};
        if (t.tree.kind == Literal::Kind::kLeaf) {
          t.tree = b.tree;
        } else {
          int remaining = i;
          plug(t.tree, remaining, b.tree);
        }
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  Sum app() {
    Sum x = atom();
    if (!accept('(')) return x;
    std::vector<Sum> args;
    do {
      args.push_back(expr());
    } while (accept(','));
    expect(')');
    // Literal grafting carries no sign (the tags do), so slots are filled
    // from the right to keep the positions of the earlier ones stable.
    Sum out;
    for (const auto& a : x) {
      if (static_cast<int>(args.size()) != a.tree.arity())
        fail("application needs " + std::to_string(a.tree.arity()) + " arguments, got " +
             std::to_string(args.size()));
      Sum acc{a};
      for (int j = static_cast<int>(args.size()); j >= 1; --j)
        acc = compose_sums(acc, j, args[static_cast<std::size_t>(j - 1)]);
      for (auto& o : acc) out.push_back(std::move(o));
    }
    return out;
  }

  Sum single(Literal l) { return Sum{LiteralTerm{Integer(1), std::move(l)}}; }

  Sum atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Sum e = expr();
      expect(')');
      return e;
    }
    if (c == '|') {
      ++pos_;
      return single(Literal{});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (big_integer() != 0) fail("a bare integer other than 0 is not an element");
      return {};
    }
    const std::string w = word();
    if (w == "id") return single(Literal{});
    if (w == "mu") {
      int k = 1;
      if (accept('^')) k = static_cast<int>(integer());
      if (k < 1 || k > 64) fail("mu^k needs 1 <= k <= 64");
      return single(mu_literal(k + 1));
    }
    if (w == "u") {
      Literal l;
      if (accept('\'')) {
        l.kind = Literal::Kind::kBlackUnit;
      } else {
        l.kind = Literal::Kind::kUnit;
      }
      return single(std::move(l));
    }
    if (w == "nu") {
      expect('(');
      const int n = static_cast<int>(integer());
      expect(',');
      expect('{');
      std::vector<int> el;
      if (!peek('}')) {
        do {
          el.push_back(static_cast<int>(integer()));
        } while (accept(','));
      }
      expect('}');
      expect(')');
      GradedLabel g;
      try {
        g = GradedLabel::nu(n, make_subset(el));
      } catch (const std::exception& e) {
        fail(e.what());
      }
      Literal l;
      l.kind = Literal::Kind::kNu;
      l.nu = g;
      l.tag = next_tag_++;
      l.children.assign(static_cast<std::size_t>(g.arity()), Literal{});
      return single(std::move(l));
    }
    if (w.empty()) fail("unexpected '" + std::string(1, c) + "'");
    fail("unknown symbol '" + w + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int next_tag_ = 0;
};

RawNode to_raw_node(const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::kLeaf: return RawNode::leaf();
    case Literal::Kind::kBlackUnit:
      throw ParseError("u' is a set-level cork, not a dg generator");
    case Literal::Kind::kUnit: return RawNode::o({});
    case Literal::Kind::kMu:
    case Literal::Kind::kNu: {
      std::vector<RawNode> kids;
      kids.reserve(l.children.size());
      for (const auto& c : l.children) kids.push_back(to_raw_node(c));
      if (l.kind == Literal::Kind::kMu) return RawNode::o(std::move(kids));
      return RawNode::make_nu(l.nu, std::move(kids), l.tag);
    }
  }
  return RawNode::leaf();
}

}  // namespace

std::vector<LiteralTerm> parse_literal(std::string_view text) { return Parser(text).parse_all(); }

Element parse_element(std::string_view text, Ambient ambient) {
  const auto terms = parse_literal(text);
  Element out(terms.empty() ? 1 : terms.front().tree.arity());
  for (const auto& t : terms) {
    if (!out.is_zero() && t.tree.arity() != out.arity())
      throw ParseError("summands of different arity");
    try {
      out += normalize(to_raw_node(t.tree), ambient) * t.coeff;
    } catch (const ParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (out.is_zero() && !terms.empty()) out = Element::zero(terms.front().tree.arity());
  return out;
}

GradedLabel parse_generator(std::string_view text) {
  const auto terms = parse_literal(text);
  if (terms.size() != 1 || terms[0].coeff != 1) throw ParseError("expected a single generator");
  const Literal& l = terms[0].tree;
  for (const auto& c : l.children)
    if (c.kind != Literal::Kind::kLeaf) throw ParseError("expected a single generator");
  switch (l.kind) {
    case Literal::Kind::kLeaf: return GradedLabel::id();
    case Literal::Kind::kMu: return GradedLabel::mu(l.k);
    case Literal::Kind::kUnit: return GradedLabel::unit();
    case Literal::Kind::kNu: return l.nu;
    case Literal::Kind::kBlackUnit: break;
  }
  throw ParseError("u' is a set-level cork, not a dg generator");
}

// ---------------------------------------------------------------------------
// Printer

namespace {

struct Expr {
  std::string s;
  bool compound = false;
  int arity = 0;
};

std::string o_name(int k) {
  if (k == 0) return "u";
  if (k == 1) return "id";
  return k == 2 ? "mu" : "mu^" + std::to_string(k - 1);
}

std::string nu_name(std::uint64_t tok) {
  return "nu(" + std::to_string(CanonicalTree::nu_n(tok)) + "," + subset_to_string(CanonicalTree::nu_s(tok)) + ")";
}

Expr nu_expr(const std::vector<std::uint64_t>& t, std::size_t& pos);

// Builds `label o_p child ...` left-associatively.
void attach(Expr& cur, int position, const Expr& child) {
  cur.s += " o_" + std::to_string(position) + " " + (child.compound ? "(" + child.s + ")" : child.s);
  cur.compound = true;
}

Expr o_expr(const std::vector<std::uint64_t>& t, std::size_t& pos) {
  const int k = CanonicalTree::o_children(t[pos++]);
  if (k == 1 && CanonicalTree::is_nu(t[pos])) return nu_expr(t, pos);
  Expr cur{o_name(k), false, 0};
  int position = 1;
  for (int c = 0; c < k; ++c) {
    if (t[pos] == CanonicalTree::kLeaf) {
      ++pos;
      ++position;
      continue;
    }
    Expr child = nu_expr(t, pos);
    attach(cur, position, child);
    position += child.arity;
  }
  cur.arity = position - 1;
  return cur;
}

Expr nu_expr(const std::vector<std::uint64_t>& t, std::size_t& pos) {
  const std::uint64_t tok = t[pos++];
  const int a = CanonicalTree::nu_label(tok).arity();
  Expr cur{nu_name(tok), false, 0};
  int position = 1;
  for (int c = 0; c < a; ++c) {
    if (t[pos] == CanonicalTree::o_token(1) && t[pos + 1] == CanonicalTree::kLeaf) {
      pos += 2;
      ++position;
      continue;
    }
    Expr child = o_expr(t, pos);
    attach(cur, position, child);
    position += child.arity;
  }
  cur.arity = position - 1;
  return cur;
}

int vertex_count(const CanonicalTree& t) {
  return static_cast<int>(std::count_if(t.tokens().begin(), t.tokens().end(),
                                        [](std::uint64_t x) { return x != CanonicalTree::kLeaf; }));
}

struct DisplayTerm {
  const CanonicalTree* tree;
  const Integer* coeff;
  std::string text;
  int degree;
  int vertices;
};

std::vector<DisplayTerm> display_order(const Element& x) {
  std::vector<DisplayTerm> v;
  for (const auto& [t, c] : x.terms()) v.push_back({&t, &c, to_text(t), t.degree(), vertex_count(t)});
  std::sort(v.begin(), v.end(), [](const DisplayTerm& a, const DisplayTerm& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.vertices != b.vertices) return a.vertices > b.vertices;
    return a.text < b.text;
  });
  return v;
}

}  // namespace

std::string to_text(const CanonicalTree& t) {
  std::size_t pos = 0;
  return o_expr(t.tokens(), pos).s;
}

std::string to_text(const Element& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& d : display_order(x)) {
    Integer c = *d.coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (c != 1) out += c.str() + "*";
    out += d.text;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Display trees and JSON

namespace {

TreeNode display_o(const std::vector<std::uint64_t>& t, std::size_t& pos, bool root);

TreeNode display_nu(const std::vector<std::uint64_t>& t, std::size_t& pos) {
  const std::uint64_t tok = t[pos++];
  const int a = CanonicalTree::nu_label(tok).arity();
  std::vector<TreeNode> kids;
  for (int c = 0; c < a; ++c) kids.push_back(display_o(t, pos, false));
  return TreeNode::vertex(nu_name(tok), std::move(kids));
}

TreeNode display_o(const std::vector<std::uint64_t>& t, std::size_t& pos, bool root) {
  const int k = CanonicalTree::o_children(t[pos++]);
  if (k == 1 && t[pos] == CanonicalTree::kLeaf) {
    ++pos;
    (void)root;
    return TreeNode::leaf();
  }
  std::vector<TreeNode> kids;
  for (int c = 0; c < k; ++c) {
    if (t[pos] == CanonicalTree::kLeaf) {
      ++pos;
      kids.push_back(TreeNode::leaf());
    } else {
      kids.push_back(display_nu(t, pos));
    }
  }
  return TreeNode::vertex(o_name(k), std::move(kids));
}

TreeNode display_literal(const Literal& l) {
  std::vector<TreeNode> kids;
  for (const auto& c : l.children) kids.push_back(display_literal(c));
  switch (l.kind) {
    case Literal::Kind::kLeaf: return TreeNode::leaf();
    case Literal::Kind::kMu: return TreeNode::vertex(o_name(l.k), std::move(kids));
    case Literal::Kind::kUnit: return TreeNode::vertex("u", {});
    case Literal::Kind::kBlackUnit: return TreeNode::vertex("u'", {});
    case Literal::Kind::kNu: return TreeNode::vertex(l.nu.to_string(), std::move(kids));
  }
  return TreeNode::leaf();
}

nlohmann::json label_json(const std::string& label) {
  nlohmann::json j;
  if (label == "u") {
    j["kind"] = "u";
  } else if (label == "id") {
    j["kind"] = "id";
  } else if (label.rfind("nu", 0) == 0) {
    const GradedLabel g = parse_generator(label);
    j["kind"] = "nu";
    j["n"] = g.n;
    j["S"] = subset_elements(g.s);
  } else {
    const GradedLabel g = parse_generator(label);
    j["kind"] = "mu";
    j["k"] = g.k;
  }
  return j;
}

nlohmann::json node_json(const TreeNode& n) {
  if (n.is_leaf) return "*";
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& c : n.children) kids.push_back(node_json(c));
  nlohmann::json j;
  j["label"] = label_json(n.label);
  j["children"] = std::move(kids);
  return j;
}

RawNode raw_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "*" || s == "|") return RawNode::leaf();
    throw ParseError("tree json: unexpected string '" + s + "'");
  }
  if (!j.is_object() || !j.contains("label")) throw ParseError("tree json: vertex needs a label");
  std::vector<RawNode> kids;
  if (j.contains("children"))
    for (const auto& c : j.at("children")) kids.push_back(raw_from_json(c));
  const auto& l = j.at("label");
  const auto kind = l.at("kind").get<std::string>();
  auto need = [&](std::size_t a) {
    if (kids.size() != a) throw ParseError("tree json: " + kind + " vertex with wrong child count");
  };
  if (kind == "mu") {
    need(static_cast<std::size_t>(l.at("k").get<int>()));
    if (kids.size() < 2) throw ParseError("tree json: mu needs k >= 2");
    return RawNode::o(std::move(kids));
  }
  if (kind == "u") {
    need(0);
    return RawNode::o({});
  }
  if (kind == "id") {
    need(1);
    return RawNode::o(std::move(kids));
  }
  if (kind == "nu") {
    GradedLabel g;
    try {
      g = GradedLabel::nu(l.at("n").get<int>(), make_subset(l.at("S").get<std::vector<int>>()));
    } catch (const nlohmann::json::exception&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what());
    }
    need(static_cast<std::size_t>(g.arity()));
    return RawNode::make_nu(g, std::move(kids));
  }
  throw ParseError("tree json: unknown label kind '" + kind + "'");
}

}  // namespace

Tree display_tree(const CanonicalTree& t) {
  std::size_t pos = 0;
  return Tree(display_o(t.tokens(), pos, true));
}

Tree display_tree(const Literal& t) { return Tree(display_literal(t)); }

nlohmann::json to_json(const CanonicalTree& t) {
  const Tree d = display_tree(t);
  if (d.is_bare()) return "|";
  return node_json(d.root());
}

nlohmann::json to_json(const Element& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : display_order(x)) {
    nlohmann::json term;
    term["coeff"] = d.coeff->str();
    term["tree"] = to_json(*d.tree);
    out.push_back(std::move(term));
  }
  return out;
}

CanonicalTree canonical_tree_from_json(const nlohmann::json& j, Ambient ambient) {
  Element e;
  try {
    e = normalize(raw_from_json(j), ambient);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("tree json: ") + ex.what());
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
  return e.terms().begin()->first;
}

Element element_from_json(const nlohmann::json& j, Ambient ambient) {
  if (!j.is_array()) throw ParseError("element json must be an array");
  Element out;
  bool first = true;
  for (const auto& term : j) {
    try {
      const CanonicalTree t = canonical_tree_from_json(term.at("tree"), ambient);
      if (first) out = Element::zero(t.arity());
      first = false;
      out.add_term(t, Integer(term.at("coeff").get<std::string>()));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("element json: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::vector<RenderTerm> render_terms(const Element& x) {
  std::vector<RenderTerm> out;
  for (const auto& d : display_order(x)) out.push_back({*d.coeff, display_tree(*d.tree)});
  return out;
}

std::vector<RenderTerm> render_terms(const std::vector<LiteralTerm>& terms) {
  std::vector<RenderTerm> out;
  for (const auto& t : terms) out.push_back({t.coeff, display_tree(t.tree)});
  return out;
}

namespace {

std::string signed_coeff(const Integer& c) { return (c < 0 ? "" : "+") + c.str(); }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void dot_node(std::ostringstream& os, const TreeNode& n, const std::string& id, int& counter) {
  if (n.is_leaf) {
    os << "    " << id << " [shape=point, width=0.04];\n";
    return;
  }
  if (n.children.empty() && n.label == "u") {
    os << "    " << id << " [shape=circle, style=filled, fillcolor=white, label=\"\", width=0.18];\n";
  } else if (n.children.empty() && n.label == "u'") {
    os << "    " << id << " [shape=circle, style=filled, fillcolor=black, label=\"\", width=0.18];\n";
  } else {
    const bool nu = n.label.rfind("nu", 0) == 0;
    os << "    " << id << " [shape=" << (nu ? "box" : "ellipse") << ", label=\"" << dot_escape(n.label)
       << "\"];\n";
  }
  for (const auto& c : n.children) {
    const std::string cid = id.substr(0, id.find('_')) + "_v" + std::to_string(counter++);
    dot_node(os, c, cid, counter);
    os << "    " << cid << " -> " << id << ";\n";
  }
}

}  // namespace

std::string render_text(const std::vector<RenderTerm>& terms) {
  if (terms.empty()) return "0\n";
  if (terms.size() == 1 && terms[0].coeff == 1) return to_text(terms[0].tree) + "\n";
  std::string out;
  for (const auto& t : terms) out += signed_coeff(t.coeff) + " " + to_text(t.tree) + "\n";
  return out;
}

std::string render_dot(const std::vector<RenderTerm>& terms) {
  std::ostringstream os;
  os << "digraph operadix {\n  rankdir=BT;\n  node [fontname=\"Helvetica\", fontsize=10];\n";
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string prefix = "t" + std::to_string(k);
    os << "  subgraph cluster_" << k << " {\n    label=\"" << signed_coeff(terms[k].coeff) << "\";\n";
    os << "    " << prefix << "_root [shape=point, width=0.04];\n";
    int counter = 1;
    const std::string top = prefix + "_v0";
    dot_node(os, terms[k].tree.root(), top, counter);
    os << "    " << top << " -> " << prefix << "_root;\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace operadix::dg
