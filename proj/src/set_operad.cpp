#include "operadix/set_operad.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

namespace operadix::set {

void check_slot(int i, int p) {
  if (i < 1 || i > p)
    throw std::out_of_range("slot " + std::to_string(i) + " outside 1.." + std::to_string(p));
}

// ---------------------------------------------------------------------------
// Ass / uAss

namespace {

std::string mu_token(int arity) {
  if (arity == 0) return "u";
  if (arity == 1) return "id";
  if (arity == 2) return "mu";
  return "mu^" + std::to_string(arity - 1);
}

}  // namespace

AssOperad::Element AssOperad::compose(Element a, int i, Element b) const {
  check_slot(i, a);
  if (b < 1) throw std::invalid_argument("Ass has no arity-0 elements");
  return a + b - 1;
}

std::vector<AssOperad::Element> AssOperad::elements(int n, std::size_t) const {
  if (n < 1) return {};
  return {n};
}

std::string AssOperad::to_string(Element a) const { return mu_token(a); }

UAssOperad::Element UAssOperad::compose(Element a, int i, Element b) const {
  check_slot(i, a);
  if (b < 0) throw std::invalid_argument("negative arity");
  return a + b - 1;
}

std::vector<UAssOperad::Element> UAssOperad::elements(int n, std::size_t) const {
  if (n < 0) return {};
  return {n};
}

std::string UAssOperad::to_string(Element a) const { return mu_token(a); }

int parse_uass(std::string_view token) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  token = trim(token);
  if (token == "u") return 0;
  if (token == "id" || token == "|") return 1;
  if (token == "mu") return 2;
  if (token.rfind("mu^", 0) == 0 && token.size() > 3) {
    int k = 0;
    for (char c : token.substr(3)) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad uAss token: " + std::string(token));
      k = k * 10 + (c - '0');
      if (k > 1'000'000) throw std::invalid_argument("uAss exponent too large");
    }
    if (k < 1) throw std::invalid_argument("mu^0 is written id");
    return k + 1;
  }
  throw std::invalid_argument("bad uAss token: " + std::string(token));
}

int ass_normal_form(const Tree& t) {
  std::function<void(const TreeNode&)> check = [&](const TreeNode& n) {
    if (n.is_leaf) return;
    if (n.children.size() < 2)
      throw std::invalid_argument("ass_normal_form: vertex of arity " +
                                  std::to_string(n.children.size()) + " is not a mu-vertex");
    for (const auto& c : n.children) check(c);
  };
  check(t.root());
  return t.leaf_count();
}

std::string uass_compose(std::string_view a, int i, std::string_view b) {
  UAssOperad op;
  return mu_token(op.compose(parse_uass(a), i, parse_uass(b)));
}

// ---------------------------------------------------------------------------
// Corollas with corks

int Corolla::leaves() const { return length - cork_count(); }
int Corolla::cork_count() const { return std::popcount(corks); }

namespace {

constexpr int kMaxSlots = 32;

// Splices y's slots in place of x's i-th leaf.
Corolla splice(const Corolla& x, int i, const Corolla& y) {
  check_slot(i, x.leaves());
  int slot = -1;
  for (int s = 0, seen = 0; s < x.length; ++s) {
    if (!x.is_cork(s) && ++seen == i) {
      slot = s;
      break;
    }
  }
  const int length = x.length - 1 + y.length;
  if (length > kMaxSlots) throw std::length_error("corolla exceeds 32 slots");
  const std::uint32_t low = x.corks & ((1u << slot) - 1u);
  const std::uint64_t high = static_cast<std::uint64_t>(x.corks) >> (slot + 1);
  const std::uint64_t corks = low | (static_cast<std::uint64_t>(y.corks) << slot) |
                              (high << (slot + y.length));
  return Corolla{static_cast<std::uint8_t>(length), static_cast<std::uint32_t>(corks)};
}

}  // namespace

Corolla uinfa_objects_compose(const Corolla& x, int i, const Corolla& y) {
  if (x.length == 0 || y.length == 0)
    throw std::invalid_argument("Ob(u∞A^Grd) has no empty corolla");
  return splice(x, i, y);
}

Corolla u_objects_compose(const Corolla& x, int i, const Corolla& y) { return splice(x, i, y); }

Corolla ob_psi(const Corolla& x) {
  if (x.length == 0) throw std::invalid_argument("ob_psi: not an object of Ob(u∞A^Grd)");
  return x;
}

std::string CorollaOperad::name() const {
  return flavor_ == CorkFlavor::kUinfA ? "Ob(uinfA^Grd)" : "Ob(U)";
}

bool CorollaOperad::valid(const Corolla& a) const {
  if (a.length > kMaxSlots) return false;
  if (a.length < kMaxSlots && (a.corks >> a.length) != 0) return false;
  if (a.length == 0) return flavor_ == CorkFlavor::kU;
  return true;
}

Corolla CorollaOperad::unit() const {
  if (flavor_ != CorkFlavor::kU) throw std::logic_error("Ob(u∞A^Grd) has no white cork");
  return Corolla{0, 0};
}

Corolla CorollaOperad::compose(const Corolla& a, int i, const Corolla& b) const {
  return flavor_ == CorkFlavor::kUinfA ? uinfa_objects_compose(a, i, b)
                                       : u_objects_compose(a, i, b);
}

std::vector<Corolla> CorollaOperad::elements(int n, std::size_t limit) const {
  std::vector<Corolla> out;
  if (n < 0) return out;
  if (n == 0 && flavor_ == CorkFlavor::kU) out.push_back(unit());
  for (int c = 0; c <= max_corks_ && n + c <= kMaxSlots; ++c) {
    const int length = n + c;
    if (length == 0) continue;
    // All c-subsets of the slots, in increasing bitmask order.
    std::vector<std::uint32_t> masks;
    std::function<void(int, int, std::uint32_t)> pick = [&](int from, int left, std::uint32_t m) {
      if (left == 0) {
        masks.push_back(m);
        return;
      }
      for (int s = from; s <= length - left; ++s) pick(s + 1, left - 1, m | (1u << s));
    };
    pick(0, c, 0);
    std::sort(masks.begin(), masks.end());
    for (auto m : masks) {
      out.push_back(Corolla{static_cast<std::uint8_t>(length), m});
      if (limit && out.size() >= limit) return out;
    }
  }
  return out;
}

std::string CorollaOperad::to_string(const Corolla& a) const {
  const std::string cork = flavor_ == CorkFlavor::kUinfA ? "u" : "u'";
  if (a.length == 0) return "u";
  if (a.length == 1) return a.corks ? cork : "|";
  std::string head = a.length == 2 ? "mu" : "mu^" + std::to_string(a.length - 1);
  if (!a.corks) return head;
  head += '(';
  for (int s = 0; s < a.length; ++s) {
    if (s) head += ',';
    head += a.is_cork(s) ? cork : "id";
  }
  return head + ')';
}

Corolla CorollaOperad::parse(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const std::string cork = flavor_ == CorkFlavor::kUinfA ? "u" : "u'";
  if (s == "|" || s == "id") return identity();
  if (s == cork) return this->cork();
  if (s == "u" && flavor_ == CorkFlavor::kU) return unit();
  auto paren = s.find('(');
  std::string head = s.substr(0, paren);
  int length = 0;
  if (head == "mu") {
    length = 2;
  } else if (head.rfind("mu^", 0) == 0 && head.size() > 3 &&
             std::all_of(head.begin() + 3, head.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    length = std::stoi(head.substr(3)) + 1;
  } else {
    throw std::invalid_argument("bad corolla: " + std::string(text));
  }
  if (length < 2 || length > kMaxSlots) throw std::invalid_argument("corolla arity out of range");
  if (paren == std::string::npos) return Corolla{static_cast<std::uint8_t>(length), 0};
  if (s.back() != ')') throw std::invalid_argument("bad corolla: missing ')'");
  std::string body = s.substr(paren + 1, s.size() - paren - 2);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    parts.push_back(body.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(parts.size()) != length)
    throw std::invalid_argument("corolla mu^" + std::to_string(length - 1) + " needs " +
                                std::to_string(length) + " entries");
  // A white cork is absorbed: mu^k(..., u, ...) = mu^{k-1}(...).
  std::uint32_t mask = 0;
  int len = 0;
  for (const auto& p : parts) {
    if (p == "u" && flavor_ == CorkFlavor::kU) continue;
    if (p == cork) {
      mask |= 1u << len;
    } else if (p != "id") {
      throw std::invalid_argument("bad corolla entry: " + p);
    }
    ++len;
  }
  return Corolla{static_cast<std::uint8_t>(len), mask};
}

// ---------------------------------------------------------------------------
// End(X)

FiniteEndOperad::FiniteEndOperad(int carrier_size) : size_(carrier_size) {
  if (carrier_size < 1 || carrier_size > 16)
    throw std::invalid_argument("End(X): carrier size must be in 1..16");
}

std::optional<std::uint64_t> FiniteEndOperad::component_size(int n) const {
  if (n < 0) return 0;
  // |X|^(|X|^n)
  std::uint64_t cells = 1;
  for (int k = 0; k < n; ++k) {
    if (cells > 64) return std::nullopt;
    cells *= static_cast<std::uint64_t>(size_);
  }
  std::uint64_t total = 1;
  for (std::uint64_t k = 0; k < cells; ++k) {
    if (total > (UINT64_MAX / static_cast<std::uint64_t>(size_))) return std::nullopt;
    total *= static_cast<std::uint64_t>(size_);
  }
  return total;
}

EndFunction FiniteEndOperad::identity() const {
  EndFunction f{1, {}};
  for (int x = 0; x < size_; ++x) f.table.push_back(static_cast<std::uint8_t>(x));
  return f;
}

EndFunction FiniteEndOperad::constant(int value) const {
  if (value < 0 || value >= size_) throw std::out_of_range("constant outside carrier");
  return EndFunction{0, {static_cast<std::uint8_t>(value)}};
}

EndFunction FiniteEndOperad::binary(const std::vector<int>& table) const {
  if (static_cast<int>(table.size()) != size_ * size_)
    throw std::invalid_argument("binary table must have |X|^2 entries");
  EndFunction f{2, {}};
  for (int v : table) {
    if (v < 0 || v >= size_) throw std::out_of_range("table value outside carrier");
    f.table.push_back(static_cast<std::uint8_t>(v));
  }
  return f;
}

int FiniteEndOperad::apply(const EndFunction& f, const std::vector<int>& args) const {
  if (static_cast<int>(args.size()) != f.arity) throw std::invalid_argument("apply: arity mismatch");
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= size_) throw std::out_of_range("apply: argument outside carrier");
    idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
  }
  return f.table[idx];
}

EndFunction FiniteEndOperad::compose(const EndFunction& f, int i, const EndFunction& g) const {
  check_slot(i, f.arity);
  const int p = f.arity, q = g.arity, n = p + q - 1;
  const std::size_t s = static_cast<std::size_t>(size_);
  std::size_t cells = 1;
  for (int k = 0; k < n; ++k) cells *= s;
  std::size_t g_block = 1;  // s^q
  for (int k = 0; k < q; ++k) g_block *= s;
  std::size_t tail = 1;  // s^(p-i)
  for (int k = 0; k < p - i; ++k) tail *= s;
  EndFunction out{n, std::vector<std::uint8_t>(cells)};
  for (std::size_t idx = 0; idx < cells; ++idx) {
    // idx = head * g_block * tail + mid * tail + rest
    const std::size_t rest = idx % tail;
    const std::size_t mid = (idx / tail) % g_block;
    const std::size_t head = idx / tail / g_block;
    const std::size_t v = g.table[mid];
    out.table[idx] = f.table[(head * s + v) * tail + rest];
  }
  return out;
}

EndFunction FiniteEndOperad::decode(int n, std::uint64_t index) const {
  std::size_t cells = 1;
  for (int k = 0; k < n; ++k) cells *= static_cast<std::size_t>(size_);
  EndFunction f{n, std::vector<std::uint8_t>(cells)};
  for (std::size_t c = cells; c-- > 0;) {
    f.table[c] = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(size_));
    index /= static_cast<std::uint64_t>(size_);
  }
  return f;
}

std::vector<EndFunction> FiniteEndOperad::elements(int n, std::size_t limit) const {
  constexpr std::uint64_t kListAll = 1u << 16;
  std::vector<EndFunction> out;
  if (n < 0) return out;
  auto total = component_size(n);
  const bool all = total && (limit ? *total <= limit : *total <= kListAll);
  if (all) {
    for (std::uint64_t k = 0; k < *total; ++k) out.push_back(decode(n, k));
    return out;
  }
  if (limit == 0) limit = kListAll;
  std::size_t cells = 1;
  for (int k = 0; k < n; ++k) cells *= static_cast<std::size_t>(size_);
  auto add = [&](EndFunction f) {
    if (out.size() < limit && std::find(out.begin(), out.end(), f) == out.end())
      out.push_back(std::move(f));
  };
  // Projections and constants first: they exercise the unit and absorption cases.
  for (int j = 0; j < n; ++j) {
    EndFunction f{n, std::vector<std::uint8_t>(cells)};
    std::size_t stride = 1;
    for (int k = j + 1; k < n; ++k) stride *= static_cast<std::size_t>(size_);
    for (std::size_t c = 0; c < cells; ++c)
      f.table[c] = static_cast<std::uint8_t>((c / stride) % static_cast<std::size_t>(size_));
    add(std::move(f));
  }
  for (int v = 0; v < size_; ++v)
    add(EndFunction{n, std::vector<std::uint8_t>(cells, static_cast<std::uint8_t>(v))});
  // Deterministic pseudo-random fill (splitmix64).
  std::uint64_t state = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(n * 7919 + size_);
  auto next = [&] {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  std::size_t guard = 0;
  while (out.size() < limit && guard++ < limit * 8) {
    EndFunction f{n, std::vector<std::uint8_t>(cells)};
    for (auto& cell : f.table) cell = static_cast<std::uint8_t>(next() % static_cast<std::uint64_t>(size_));
    add(std::move(f));
  }
  return out;
}

std::string FiniteEndOperad::to_string(const EndFunction& f) const {
  std::string s = "f" + std::to_string(f.arity) + "[";
  for (auto v : f.table) s += static_cast<char>('0' + v);
  return s + "]";
}

// ---------------------------------------------------------------------------
// Free operad

Tree FreeSetOperad::compose(const Tree& a, int i, const Tree& b) const {
  return graft(a, i, b).tree;
}

Tree FreeSetOperad::generator(const std::string& name) const {
  auto it = signature_.find(name);
  if (it == signature_.end()) throw std::invalid_argument("unknown generator " + name);
  return Tree::corolla(it->second, name);
}

std::vector<Tree> FreeSetOperad::elements(int n, std::size_t limit) const {
  std::map<int, std::vector<std::string>> by_arity;
  for (const auto& [name, ar] : signature_) by_arity[ar].push_back(name);
  const bool corks = by_arity.count(0) > 0;
  std::vector<Tree> out;
  for (const Tree& shape : enumerate_trees(n, max_inner_, corks, 1)) {
    // Label every vertex with each generator of matching arity.
    std::function<void(const TreeNode&, std::vector<TreeNode>&)> label =
        [&](const TreeNode& node, std::vector<TreeNode>& acc) {
          if (node.is_leaf) {
            acc.push_back(node);
            return;
          }
          auto it = by_arity.find(static_cast<int>(node.children.size()));
          if (it == by_arity.end()) return;
          // Cartesian product over children.
          std::vector<std::vector<TreeNode>> kids(node.children.size());
          for (std::size_t c = 0; c < node.children.size(); ++c) {
            label(node.children[c], kids[c]);
            if (kids[c].empty()) return;
          }
          for (const auto& name : it->second) {
            std::vector<TreeNode> partial;
            std::function<void(std::size_t)> rec = [&](std::size_t c) {
              if (c == kids.size()) {
                acc.push_back(TreeNode::vertex(name, partial));
                return;
              }
              for (const auto& k : kids[c]) {
                partial.push_back(k);
                rec(c + 1);
                partial.pop_back();
              }
            };
            rec(0);
          }
        };
    std::vector<TreeNode> labelled;
    label(shape.root(), labelled);
    for (auto& node : labelled) {
      out.emplace_back(std::move(node));
      if (limit && out.size() >= limit) return out;
    }
  }
  return out;
}

std::string FreeSetOperad::to_string(const Tree& t) const {
  if (t.is_bare()) return "|";
  std::function<void(const TreeNode&, std::string&)> write = [&](const TreeNode& n,
                                                                std::string& s) {
    if (n.is_leaf) {
      s += '*';
      return;
    }
    s += n.label;
    s += '{';
    for (std::size_t c = 0; c < n.children.size(); ++c) {
      if (c) s += ',';
      write(n.children[c], s);
    }
    s += '}';
  };
  std::string s;
  write(t.root(), s);
  return s;
}

// ---------------------------------------------------------------------------
// Reports

bool AxiomReport::vacuous() const {
  for (const auto& [k, v] : instances)
    if (v) return false;
  return true;
}

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json j;
  j["operad"] = operad;
  j["bounds"] = {{"max_arity", max_arity}, {"element_bound", element_bound}};
  j["exhaustive"] = exhaustive;
  j["vacuous"] = vacuous();
  j["instances"] = instances;
  j["violation_count"] = violation_count;
  nlohmann::json v = nlohmann::json::array();
  for (const auto& w : violations) v.push_back({{"axiom", w.axiom}, {"witness", w.witness}});
  j["violations"] = std::move(v);
  j["passed"] = passed();
  return j;
}

// ---------------------------------------------------------------------------
// Monoid census

nlohmann::json MonoidCensus::to_json() const {
  return {{"carrier_size", carrier_size},
          {"operations", operations},
          {"associative_count", associative_count},
          {"unital_count", unital_count},
          {"max_units_per_op", max_units_per_op}};
}

namespace {

class CensusSearch {
 public:
  explicit CensusSearch(int n) : n_(n), table_(static_cast<std::size_t>(n * n), -1) {}

  void run(MonoidCensus& out) {
    out_ = &out;
    fill(0);
  }

 private:
  int at(int a, int b) const { return table_[static_cast<std::size_t>(a * n_ + b)]; }

  // Checks every associativity instance whose cells are all assigned.
  bool consistent() const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        const int ab = at(a, b);
        if (ab < 0) continue;
        for (int c = 0; c < n_; ++c) {
          const int bc = at(b, c);
          if (bc < 0) continue;
          const int l = at(ab, c), r = at(a, bc);
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    return true;
  }

  void fill(int cell) {
    if (cell == n_ * n_) {
      ++out_->associative_count;
      int units = 0;
      for (int e = 0; e < n_; ++e) {
        bool unit = true;
        for (int x = 0; x < n_ && unit; ++x) unit = at(e, x) == x && at(x, e) == x;
        units += unit;
      }
      if (units) ++out_->unital_count;
      out_->max_units_per_op = std::max(out_->max_units_per_op, units);
      return;
    }
    for (int v = 0; v < n_; ++v) {
      table_[static_cast<std::size_t>(cell)] = static_cast<signed char>(v);
      if (consistent()) fill(cell + 1);
    }
    table_[static_cast<std::size_t>(cell)] = -1;
  }

  int n_;
  std::vector<signed char> table_;
  MonoidCensus* out_ = nullptr;
};

}  // namespace

MonoidCensus monoid_census(int size) {
  if (size < 1 || size > 4) throw std::invalid_argument("monoid_census: carrier size must be 1..4");
  MonoidCensus c;
  c.carrier_size = size;
  c.operations = 1;
  for (int k = 0; k < size * size; ++k) c.operations *= static_cast<std::uint64_t>(size);
  CensusSearch(size).run(c);
  return c;
}

}  // namespace operadix::set
