#include "ldiff/canonical.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ldiff {

int Interpretation::add_element(Element e) {
  elements_.push_back(std::move(e));
  labels_.emplace_back();
  edges_.emplace_back();
  return static_cast<int>(elements_.size() - 1);
}

void Interpretation::add_label(int d, const Name& a) { labels_.at(d).insert(a); }

void Interpretation::add_edge(int d, const Name& r, int e) {
  if (e < 0 || static_cast<std::size_t>(e) >= elements_.size()) throw std::out_of_range("edge target");
  edges_.at(d).insert({r, e});
}

void Interpretation::set_individual(const Name& a, int d) { individuals_[a] = d; }

std::optional<int> Interpretation::individual(const Name& a) const {
  auto it = individuals_.find(a);
  if (it == individuals_.end()) return std::nullopt;
  return it->second;
}

const std::vector<bool>& ConceptEvaluator::incoming(const Name& r) {
  auto it = incoming_.find(r);
  if (it != incoming_.end()) return it->second;
  std::vector<bool> out(i_.size(), false);
  for (std::size_t d = 0; d < i_.size(); ++d) {
    const auto& es = i_.edges(static_cast<int>(d));
    for (auto e = es.lower_bound({r, -1}); e != es.end() && e->first == r; ++e) out[e->second] = true;
  }
  return incoming_.emplace(r, std::move(out)).first->second;
}

const std::vector<bool>& ConceptEvaluator::extension(const Concept& c) {
  if (auto it = memo_.find(c.id()); it != memo_.end()) return it->second.second;
  const std::size_t n = i_.size();
  std::vector<bool> out(n, false);
  switch (c.kind()) {
    case ConceptKind::Top: out.assign(n, true); break;
    case ConceptKind::Atom:
      for (std::size_t d = 0; d < n; ++d) out[d] = i_.has_label(static_cast<int>(d), c.name());
      break;
    case ConceptKind::Conj: {
      out.assign(n, true);
      for (const auto& ch : c.children()) {
        const auto& sub = extension(ch);
        for (std::size_t d = 0; d < n; ++d) out[d] = out[d] && sub[d];
      }
      break;
    }
    case ConceptKind::Exists: {
      const auto& sub = extension(c.filler());
      for (std::size_t d = 0; d < n; ++d) {
        const auto& es = i_.edges(static_cast<int>(d));
        for (auto e = es.lower_bound({c.name(), -1}); e != es.end() && e->first == c.name(); ++e) {
          if (sub[e->second]) {
            out[d] = true;
            break;
          }
        }
      }
      break;
    }
    case ConceptKind::Ran: out = incoming(c.name()); break;
    case ConceptKind::ExistsRoles: {
      const auto& sub = extension(c.filler());
      const auto& roles = c.roles();
      for (std::size_t d = 0; d < n; ++d) {
        const auto& es = i_.edges(static_cast<int>(d));
        for (auto e = es.lower_bound({roles.front(), -1}); e != es.end() && e->first == roles.front(); ++e) {
          if (!sub[e->second]) continue;
          bool all = std::all_of(roles.begin() + 1, roles.end(),
                                 [&](const Name& r) { return es.count({r, e->second}) != 0; });
          if (all) {
            out[d] = true;
            break;
          }
        }
      }
      break;
    }
    case ConceptKind::ExistsUniversal: {
      const auto& sub = extension(c.filler());
      bool any = std::find(sub.begin(), sub.end(), true) != sub.end();
      out.assign(n, any);
      break;
    }
  }
  return memo_.emplace(c.id(), std::make_pair(c, std::move(out))).first->second.second;
}

std::vector<bool> eval_concept(const Interpretation& i, const Concept& c) {
  ConceptEvaluator ev(i);
  return ev.extension(c);
}

Saturation saturate_abox(const SubsumptionIndex& idx, const ABox& abox) {
  Saturation s = idx.saturation();
  for (const auto& ca : abox.concept_assertions()) {
    int node = s.individual(ca.individual);
    if (!ca.name.empty()) s.assert_concept(node, ca.name);
  }
  for (const auto& ra : abox.role_assertions()) s.assert_role(ra.role, s.individual(ra.from), s.individual(ra.to));
  s.run();
  return s;
}

Interpretation export_interpretation(const Saturation& s, const std::vector<int>& seeds,
                                     std::vector<int>* node_to_element) {
  std::vector<int> map(s.node_count(), -1);
  std::vector<int> order;
  std::deque<int> queue;
  for (int n : seeds) {
    if (map[n] >= 0) continue;
    map[n] = static_cast<int>(order.size());
    order.push_back(n);
    queue.push_back(n);
  }
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    for (auto [r, m] : s.edges(n)) {
      if (map[m] >= 0) continue;
      map[m] = static_cast<int>(order.size());
      order.push_back(m);
      queue.push_back(m);
    }
  }

  Interpretation out;
  for (int n : order) {
    const auto& info = s.info(n);
    Element e;
    switch (info.kind) {
      case Saturation::NodeKind::Individual:
        e.kind = Element::Kind::Named;
        e.individual = info.individual;
        break;
      case Saturation::NodeKind::Range:
        e.kind = Element::Kind::Aux;
        e.role = s.role_of(info.role);
        e.filler = info.name < 0 ? Concept::top() : Concept::atom(s.name_of(info.name));
        break;
      case Saturation::NodeKind::Name:
        e.kind = Element::Kind::Context;
        e.individual = s.name_of(info.name);
        break;
      case Saturation::NodeKind::Domain:
        e.kind = Element::Kind::Context;
        e.individual = "dom(" + s.role_of(info.role) + ")";
        break;
    }
    int d = out.add_element(std::move(e));
    if (info.kind == Saturation::NodeKind::Individual) out.set_individual(info.individual, d);
    for (const auto& a : s.labels(n)) out.add_label(d, a);
  }
  std::map<Name, std::vector<Name>> sup_cache;
  for (int n : order) {
    for (auto [r, m] : s.edges(n)) {
      const Name& role = s.role_of(r);
      auto it = sup_cache.find(role);
      if (it == sup_cache.end()) it = sup_cache.emplace(role, s.super_roles(role)).first;
      for (const auto& sr : it->second) out.add_edge(map[n], sr, map[m]);
    }
  }
  if (node_to_element) *node_to_element = std::move(map);
  return out;
}

namespace {

std::vector<int> individual_nodes(Saturation& s, const ABox& abox) {
  std::vector<int> out;
  for (const auto& a : abox.obj()) out.push_back(s.individual(a));
  return out;
}

}  // namespace

Interpretation build_generating(const KnowledgeBase& k, const SubsumptionIndex& idx) {
  Saturation s = saturate_abox(idx, k.abox);
  std::vector<int> seeds = individual_nodes(s, k.abox);
  Signature sig = signature_of(k.terminology.terminology);
  for (const auto& r : sig.roles) {
    seeds.push_back(s.range_context(r, std::nullopt));
    for (const auto& a : sig.concepts) seeds.push_back(s.range_context(r, a));
  }
  s.run();
  return export_interpretation(s, seeds);
}

Interpretation build_canonical(const SubsumptionIndex& idx, const ABox& abox) {
  Saturation s = saturate_abox(idx, abox);
  return export_interpretation(s, individual_nodes(s, abox));
}

Interpretation build_canonical(const KnowledgeBase& k, const SubsumptionIndex& idx) {
  return build_canonical(idx, k.abox);
}

bool instance_check(const KnowledgeBase& k, const SubsumptionIndex& idx, const Concept& c, const Name& a) {
  if (!k.abox.obj().count(a)) throw std::invalid_argument("unknown individual " + a);
  Interpretation i = build_canonical(k, idx);
  return eval_concept(i, c)[*i.individual(a)];
}

namespace {

void abox_of_path(const Concept& tail, const Name& ind, ABox& out) {
  if (tail.is_top()) out.add_top(ind);
  std::size_t child = 0;
  for (const auto& c : tail.conjuncts()) {
    switch (c.kind()) {
      case ConceptKind::Atom: out.add_concept(c.name(), ind); break;
      case ConceptKind::Ran: out.add_role(c.name(), "a_ran", ind); break;
      case ConceptKind::Exists: {
        Name next = ind + "." + std::to_string(++child);
        out.add_role(c.name(), ind, next);
        abox_of_path(c.filler(), next, out);
        break;
      }
      default: throw std::invalid_argument("concept_to_abox: not a C^ran concept");
    }
  }
}

}  // namespace

ConceptABox concept_to_abox(const Concept& c) {
  ConceptABox out;
  out.root = "a_C";
  abox_of_path(c, out.root, out.abox);
  return out;
}

Concept abox_neighborhood_concept(const ABox& a, const Name& individual, std::size_t n) {
  if (!a.obj().count(individual)) throw std::invalid_argument("unknown individual " + individual);
  std::map<Name, std::vector<Concept>> base;
  std::map<Name, std::vector<std::pair<Name, Name>>> succ;
  for (const auto& ca : a.concept_assertions())
    if (!ca.name.empty()) base[ca.individual].push_back(Concept::atom(ca.name));
  for (const auto& ra : a.role_assertions()) {
    base[ra.to].push_back(Concept::ran(ra.role));
    succ[ra.from].emplace_back(ra.role, ra.to);
  }
  // Level by level over all individuals so shared subterms are built once.
  std::map<Name, Concept> level;
  for (const auto& x : a.obj()) level[x] = Concept::conj(base[x]);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<Name, Concept> next;
    for (const auto& x : a.obj()) {
      std::vector<Concept> parts = base[x];
      for (const auto& [r, y] : succ[x]) parts.push_back(Concept::exists(r, level.at(y)));
      next[x] = Concept::conj(std::move(parts));
    }
    level = std::move(next);
  }
  return level.at(individual);
}

ContextModel context_model(const SubsumptionIndex& idx, const Signature& extra) {
  Saturation s = idx.saturation();
  Signature sig = signature_of(idx.source().terminology);
  sig.merge(extra);
  std::vector<int> seeds;
  std::map<Name, int> names, doms, rans;
  for (const auto& a : sig.concepts) seeds.push_back(names[a] = s.name_context(a));
  for (const auto& r : sig.roles) {
    seeds.push_back(doms[r] = s.domain_context(r));
    seeds.push_back(rans[r] = s.range_context(r, std::nullopt));
  }
  s.run();
  ContextModel out;
  std::vector<int> map;
  out.interp = export_interpretation(s, seeds, &map);
  for (const auto& [a, n] : names) out.name_point[a] = map[n];
  for (const auto& [r, n] : doms) out.domain_point[r] = map[n];
  for (const auto& [r, n] : rans) out.range_point[r] = map[n];
  return out;
}

bool entails_subsumption(const SubsumptionIndex& idx, const Concept& lhs, const Concept& rhs) {
  if (!is_c_ran(lhs)) throw std::invalid_argument("left-hand side must be a C^ran concept");
  if (!is_c_and_u(rhs)) throw std::invalid_argument("right-hand side must not contain ran");
  if (rhs.is_top()) return true;
  ConceptABox ca = concept_to_abox(lhs);
  Interpretation i = build_canonical(idx, ca.abox);
  ConceptEvaluator ev(i);
  return ev.holds(*i.individual(ca.root), rhs);
}

bool entails_subsumption(const NormalizedTerminology& t, const Concept& lhs, const Concept& rhs) {
  return entails_subsumption(classify(t), lhs, rhs);
}

}  // namespace ldiff
