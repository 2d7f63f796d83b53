#include "operadix/grpd_operad.hpp"

#include <algorithm>
#include <deque>

#include "operadix/coproduct.hpp"

namespace operadix::grpd {

using set::Corolla;
using set::CorkFlavor;
using set::CorollaOperad;

Arrow lambda_arrow() { return Arrow{Corolla{2, 0b01}, Corolla{1, 0}}; }
Arrow rho_arrow() { return Arrow{Corolla{2, 0b10}, Corolla{1, 0}}; }

namespace {

const Corolla& find_root(std::map<Corolla, Corolla>& parent, const Corolla& x) {
  auto it = parent.find(x);
  if (it == parent.end()) it = parent.emplace(x, x).first;
  if (it->second == x) return it->first;
  const Corolla& r = find_root(parent, it->second);
  it->second = r;
  return r;
}

Corolla find_root_const(const std::map<Corolla, Corolla>& parent, Corolla x) {
  while (true) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    x = it->second;
  }
}

}  // namespace

bool GenerationState::connected(const Corolla& x, const Corolla& y) const {
  return x.leaves() == y.leaves() && find_root_const(parent_, x) == find_root_const(parent_, y);
}

nlohmann::json GenerationState::to_json() const {
  CorollaOperad op(CorkFlavor::kUinfA, max_corks);
  nlohmann::json j;
  j["bounds"] = {{"max_arity", max_arity}, {"max_corks", max_corks}, {"slot_bound", slot_bound}};
  nlohmann::json reached = nlohmann::json::object();
  for (const auto& [n, objs] : objects) {
    std::map<int, int> by_corks;
    for (const auto& o : objs)
      if (n <= max_arity) ++by_corks[o.cork_count()];
    if (n > max_arity) continue;
    nlohmann::json row = nlohmann::json::object();
    for (const auto& [c, k] : by_corks) row[std::to_string(c)] = k;
    reached[std::to_string(n)] = row;
  }
  j["reached_by_arity_and_corks"] = reached;
  j["edge_count"] = edge_count;
  nlohmann::json cls = nlohmann::json::object();
  for (const auto& [n, k] : classes) cls[std::to_string(n)] = k;
  j["classes_by_arity"] = cls;
  nlohmann::json mo = nlohmann::json::array();
  for (const auto& o : missing_objects) mo.push_back(op.to_string(o));
  j["missing_objects"] = mo;
  nlohmann::json mm = nlohmann::json::array();
  for (const auto& a : missing_morphisms)
    mm.push_back({op.to_string(a.source), op.to_string(a.target)});
  j["missing_morphisms"] = mm;
  j["objects_complete"] = objects_complete();
  j["morphisms_complete"] = morphisms_complete();
  return j;
}

GenerationState generation_closure(int max_arity, int max_corks) {
  if (max_arity < 0 || max_corks < 0) throw std::invalid_argument("bounds must be nonnegative");
  GenerationState st;
  st.max_arity = max_arity;
  st.max_corks = max_corks;
  st.slot_bound = std::max(2, max_arity + max_corks);
  const CorollaOperad op(CorkFlavor::kUinfA, max_corks);
  auto in_universe = [&](const Corolla& c) {
    return c.length <= st.slot_bound && c.cork_count() <= max_corks;
  };

  // Objects: breadth-first closure of {id, μ, u} under ∘_i.
  std::set<Corolla> seen;
  std::vector<Corolla> order;
  std::deque<Corolla> queue;
  auto visit = [&](const Corolla& c) {
    if (!in_universe(c) || !seen.insert(c).second) return;
    order.push_back(c);
    queue.push_back(c);
  };
  visit(op.identity());
  visit(op.mu());
  if (max_corks > 0) visit(op.cork());
  while (!queue.empty()) {
    Corolla x = queue.front();
    queue.pop_front();
    // Compose with everything reached so far, on both sides.
    const std::vector<Corolla> snapshot = order;
    for (const auto& y : snapshot) {
      for (int i = 1; i <= x.leaves(); ++i)
        if (x.length - 1 + y.length <= st.slot_bound) visit(op.compose(x, i, y));
      for (int i = 1; i <= y.leaves(); ++i)
        if (y.length - 1 + x.length <= st.slot_bound) visit(op.compose(y, i, x));
    }
  }
  for (const auto& c : order) st.objects[c.leaves()].push_back(c);

  // Arrows: whisker λ and ρ by objects on either side until nothing new.
  const UinfAGrd G(op);
  std::set<Arrow> edges;
  std::deque<Arrow> work;
  auto add_edge = [&](const Arrow& a) {
    if (!in_universe(a.source) || !in_universe(a.target)) return;
    if (!edges.insert(a).second) return;
    work.push_back(a);
  };
  if (max_corks > 0) {
    add_edge(lambda_arrow());
    add_edge(rho_arrow());
  }
  while (!work.empty()) {
    Arrow a = work.front();
    work.pop_front();
    for (const auto& c : order) {
      const Arrow idc = G.identity_morphism(c);
      for (int i = 1; i <= c.leaves(); ++i)
        if (c.length - 1 + a.source.length <= st.slot_bound) add_edge(G.compose(idc, i, a));
      for (int i = 1; i <= a.source.leaves(); ++i)
        if (a.source.length - 1 + c.length <= st.slot_bound) add_edge(G.compose(a, i, idc));
    }
  }
  st.edge_count = edges.size();
  for (const auto& c : order) find_root(st.parent_, c);
  for (const auto& e : edges) {
    Corolla ra = find_root(st.parent_, e.source);
    Corolla rb = find_root(st.parent_, e.target);
    if (!(ra == rb)) st.parent_[ra] = rb;
  }

  // Completeness against the enumerated in-bound objects.
  for (int n = 0; n <= max_arity; ++n) {
    std::set<Corolla> roots;
    std::vector<Corolla> comp;
    for (const auto& c : op.elements(n, 0)) {
      if (!seen.count(c)) {
        st.missing_objects.push_back(c);
        continue;
      }
      comp.push_back(c);
      roots.insert(find_root_const(st.parent_, c));
    }
    st.classes[n] = static_cast<int>(roots.size());
    for (const auto& x : comp)
      for (const auto& y : comp)
        if (!st.connected(x, y)) st.missing_morphisms.push_back(Arrow{x, y});
  }
  return st;
}

std::vector<PathStep> cork_deletion_path(const Corolla& x) {
  const CorollaOperad op(CorkFlavor::kUinfA, 32);
  if (!op.valid(x)) throw std::invalid_argument("cork_deletion_path: invalid corolla");
  std::vector<PathStep> path;
  Corolla cur = x;
  while (cur.corks && cur.length > 1) {
    int s = 0;
    while (!cur.is_cork(s)) ++s;
    // Remove slot s.
    const std::uint32_t low = cur.corks & ((1u << s) - 1u);
    const std::uint32_t high = static_cast<std::uint32_t>(static_cast<std::uint64_t>(cur.corks) >> (s + 1));
    Corolla next{static_cast<std::uint8_t>(cur.length - 1), low | (high << s)};
    path.push_back(PathStep{cur, next, s + 1 < cur.length ? "lambda" : "rho", s + 1});
    cur = next;
  }
  return path;
}

bool PushoutReport::passed() const {
  if (!failures.empty()) return false;
  for (const auto& [k, v] : checks)
    if (!v) return false;
  return true;
}

nlohmann::json PushoutReport::to_json() const {
  nlohmann::json j;
  j["bounds"] = {{"max_arity", max_arity}, {"max_corks", max_corks}};
  j["checks"] = checks;
  j["counts"] = counts;
  j["failures"] = failures;
  j["passed"] = passed();
  return j;
}

PushoutReport pushout_square_object_check(int max_arity, int max_corks) {
  if (max_arity < 0 || max_corks < 0) throw std::invalid_argument("bounds must be nonnegative");
  PushoutReport rep;
  rep.max_arity = max_arity;
  rep.max_corks = max_corks;
  const CorollaOperad A(CorkFlavor::kUinfA, max_corks);
  const CorollaOperad U(CorkFlavor::kU, max_corks);
  const set::AssOperad ass;
  const set::UAssOperad uass;
  auto fail = [&](const std::string& check, const std::string& what) {
    rep.checks[check] = false;
    if (rep.failures.size() < 32) rep.failures.push_back(check + ": " + what);
  };
  // Morphisms on objects.
  auto phi_bar_inf = [](int n) { return Corolla{static_cast<std::uint8_t>(n), 0}; };
  auto phi_grd = [](int n) { return n; };
  auto phi = [](int n) { return Corolla{static_cast<std::uint8_t>(n), 0}; };

  rep.checks["square_commutes"] = true;
  for (int n = 1; n <= max_arity; ++n) {
    for (int a : ass.elements(n, 0)) {
      ++rep.counts["square_elements"];
      if (!(set::ob_psi(phi_bar_inf(a)) == phi(phi_grd(a))))
        fail("square_commutes", ass.to_string(a));
    }
  }

  rep.checks["psi_bijective_positive_arity"] = true;
  rep.checks["psi_injective_arity0"] = true;
  rep.checks["psi_arity0_complement_is_u"] = true;
  for (int n = 0; n <= max_arity; ++n) {
    auto src = A.elements(n, 0);
    auto dst = U.elements(n, 0);
    std::set<Corolla> image;
    for (const auto& x : src) image.insert(set::ob_psi(x));
    const bool injective = image.size() == src.size();
    std::set<Corolla> target(dst.begin(), dst.end());
    std::vector<Corolla> complement;
    for (const auto& y : target)
      if (!image.count(y)) complement.push_back(y);
    bool inside = std::all_of(image.begin(), image.end(), [&](const Corolla& c) { return target.count(c) > 0; });
    rep.counts["psi_source_arity_" + std::to_string(n)] = src.size();
    rep.counts["psi_target_arity_" + std::to_string(n)] = dst.size();
    if (n > 0) {
      if (!injective || !inside || !complement.empty())
        fail("psi_bijective_positive_arity", "arity " + std::to_string(n));
    } else {
      if (!injective || !inside) fail("psi_injective_arity0", "arity 0");
      if (complement.size() != 1 || !(complement[0] == U.unit()))
        fail("psi_arity0_complement_is_u", std::to_string(complement.size()) + " extra objects");
    }
  }

  // ψ and φ are operad maps on objects.
  rep.checks["psi_preserves_composition"] = true;
  rep.checks["phi_preserves_composition"] = true;
  for (int p = 1; p <= max_arity; ++p)
    for (const auto& x : A.elements(p, 0))
      for (int q = 0; q <= max_arity; ++q)
        for (const auto& y : A.elements(q, 0))
          for (int i = 1; i <= p; ++i) {
            const Corolla xy = A.compose(x, i, y);
            if (xy.cork_count() > max_corks) continue;
            ++rep.counts["psi_composites"];
            if (!(set::ob_psi(xy) == U.compose(set::ob_psi(x), i, set::ob_psi(y))))
              fail("psi_preserves_composition", A.to_string(x) + " o_" + std::to_string(i) + " " +
                                                    A.to_string(y));
          }
  for (int p = 1; p <= max_arity; ++p)
    for (int q = 0; q <= max_arity; ++q)
      for (int i = 1; i <= p; ++i) {
        ++rep.counts["phi_composites"];
        if (!(phi(uass.compose(p, i, q)) == U.compose(phi(p), i, phi(q))))
          fail("phi_preserves_composition", uass.to_string(p) + " o_" + std::to_string(i) + " " +
                                                uass.to_string(q));
      }

  // The ooo square on objects: F({e}) -> F({e,e'}) -> Ob(U) vs F({e}) -> uAss -> Ob(U).
  {
    const Corolla zeta_prime_e = U.unit();
    const Corolla zeta_prime_e_prime = U.cork();
    const int zeta_e = 0;  // u in uAss(0)
    rep.checks["ooo_square_commutes"] = phi(zeta_e) == zeta_prime_e;
    rep.checks["ooo_images_distinct"] = !(zeta_prime_e == zeta_prime_e_prime);
    rep.checks["ooo_identity_preserved"] = phi(uass.identity()) == U.identity();
  }

  // Ob(U) = image(φ) ⊔ {objects with a black cork}, cross-checked against
  // the tree model of uAss ∐ F({u'}[0]).
  rep.checks["ob_U_is_coproduct"] = true;
  {
    using Co = set::CoproductOperad<set::UAssOperad>;
    const Co co(uass, {{"u'", 0}}, max_corks, max_arity + max_corks);
    auto to_corolla = [](const Co::Node& t) {
      Corolla c{static_cast<std::uint8_t>(t.children.size()), 0};
      for (std::size_t s = 0; s < t.children.size(); ++s)
        if (t.children[s].is_v) c.corks |= 1u << s;
      return c;
    };
    for (int n = 0; n <= max_arity; ++n) {
      std::set<Corolla> from_trees;
      std::size_t tree_count = 0;
      for (const auto& t : co.elements(n, 0)) {
        ++tree_count;
        from_trees.insert(to_corolla(t));
      }
      auto objs = U.elements(n, 0);
      std::set<Corolla> direct(objs.begin(), objs.end());
      std::size_t from_uass = 0, with_black = 0;
      for (const auto& c : direct) (c.corks ? with_black : from_uass)++;
      rep.counts["ob_U_trees_arity_" + std::to_string(n)] = tree_count;
      if (from_trees != direct || tree_count != direct.size() || from_uass != 1)
        fail("ob_U_is_coproduct", "arity " + std::to_string(n));
    }
  }
  return rep;
}

}  // namespace operadix::grpd
