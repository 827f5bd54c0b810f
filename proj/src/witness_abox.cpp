#include <algorithm>
#include <deque>

#include "diff_internal.hpp"

namespace ldiff {

Name witness_individual(const Name& b) { return "xi_" + b; }

Name split_individual(const Name& a, const Name& r) { return a + "_" + r; }

ABox build_witness_abox(const NormalizedTerminology& t, const SubsumptionIndex& idx, const Signature& sigma,
                        WitnessAboxVariant variant) {
  detail::WitnessAboxBuilder b(t, idx, sigma, variant);
  ABox out;
  for (const auto& a : sigma.concepts) out.add_concept(a, kSigmaIndividual);
  for (const auto& r : sigma.roles) out.add_role(r, kSigmaIndividual, kSigmaIndividual);
  for (const auto& [name, node] : b.nodes()) {
    if (!node.exists) continue;
    Name x = witness_individual(name);
    for (const auto& a : node.labels) out.add_concept(a, x);
    for (const auto& r : node.in_roles) out.add_role(r, kSigmaIndividual, x);
    for (const auto& [r, target] : node.out) out.add_role(r, x, target ? witness_individual(*target) : kSigmaIndividual);
  }
  return out;
}

ABox role_splitting_unfold(const ABox& a) {
  std::set<Name> roles;
  for (const auto& ra : a.role_assertions()) roles.insert(ra.role);
  if (roles.empty()) throw std::invalid_argument("role_splitting_unfold: the ABox has no role assertion");
  ABox out;
  for (const auto& ca : a.concept_assertions())
    for (const auto& r : roles) out.add_concept(ca.name, split_individual(ca.individual, r));
  for (const auto& ra : a.role_assertions())
    for (const auto& s : roles) out.add_role(ra.role, split_individual(ra.from, s), split_individual(ra.to, ra.role));
  return out;
}

namespace detail {

WitnessAboxBuilder::WitnessAboxBuilder(const NormalizedTerminology& t, const SubsumptionIndex& idx,
                                       const Signature& sigma, WitnessAboxVariant variant)
    : sigma_(sigma) {
  const Terminology& tt = t.terminology;
  Signature sig = signature_of(tt);
  sig.merge(sigma);
  for (const auto& b : sig.concepts) {
    if (is_conjunctive(tt, b)) continue;
    Node n;
    PreSets p = pre_sets(idx, sigma, b);
    for (const auto& a : sigma.concepts)
      if (!p.pre_c.count(a)) n.labels.push_back(a);
    if (variant == WitnessAboxVariant::ELHr)
      for (const auto& r : sigma.roles)
        if (!p.pre_ran.count(r)) n.in_roles.push_back(r);
    const Axiom* d = tt.definition_of(b);
    if (d == nullptr || d->kind != AxiomKind::EqAtom) {
      for (const auto& r : sigma.roles)
        if (!p.pre_dom.count(r)) n.out.emplace_back(r, std::nullopt);
    } else {
      std::set<Name> pr = pre_role(idx, sigma, d->rhs.name());
      for (const auto& r : sigma.roles)
        if (!pr.count(r) && !p.pre_dom.count(r)) n.out.emplace_back(r, std::nullopt);
      for (const auto& b2 : non_conj(tt, d->rhs.filler().name())) {
        std::set<Name> ran2 = pre_sets(idx, sigma, b2).pre_ran;
        for (const auto& r : pr)
          if (!p.pre_dom.count(r) && !ran2.count(r)) n.out.emplace_back(r, b2);
      }
    }
    n.exists = !n.labels.empty() || !n.in_roles.empty() || !n.out.empty();
    nodes_.emplace(b, std::move(n));
  }
  for (auto& [name, node] : nodes_)
    for (const auto& [r, target] : node.out)
      if (target) nodes_.at(*target).exists = true;
}

bool WitnessAboxBuilder::exists(const Name& b) const {
  auto it = nodes_.find(b);
  return it != nodes_.end() && it->second.exists;
}

WitnessAboxModel::WitnessAboxModel(const DiffContext& c, const std::set<Name>& roots, bool role_split)
    : builder_(c.t2, c.idx2, c.sigma, WitnessAboxVariant::ELHr) {
  const auto& nodes = builder_.nodes();
  std::set<Name> reach;
  std::deque<Name> queue;
  for (const auto& b : roots) {
    if (builder_.exists(b) && reach.insert(b).second) queue.push_back(b);
  }
  while (!queue.empty()) {
    Name x = queue.front();
    queue.pop_front();
    for (const auto& [r, target] : nodes.at(x).out)
      if (target && reach.insert(*target).second) queue.push_back(*target);
  }
  const Signature& sigma = c.sigma;
  const bool sigma_exists = builder_.sigma_exists();

  if (!role_split || sigma.roles.empty()) {
    if (sigma_exists) {
      for (const auto& a : sigma.concepts) abox_.add_concept(a, kSigmaIndividual);
      for (const auto& r : sigma.roles) abox_.add_role(r, kSigmaIndividual, kSigmaIndividual);
    }
    for (const auto& x : reach) {
      const auto& node = nodes.at(x);
      Name name = witness_individual(x);
      for (const auto& a : node.labels) abox_.add_concept(a, name);
      for (const auto& r : node.in_roles) abox_.add_role(r, kDummyIndividual, name);
      for (const auto& [r, target] : node.out)
        abox_.add_role(r, name, target ? witness_individual(*target) : kSigmaIndividual);
      points_[x] = {name};
    }
  } else {
    std::set<Name> effective;
    for (const auto& r : sigma.roles)
      if (!c.idx1.range_supers(r).empty()) effective.insert(r);
    std::map<Name, std::set<Name>> in;
    for (const auto& x : reach) {
      const auto& node = nodes.at(x);
      in[x].insert(node.in_roles.begin(), node.in_roles.end());
      for (const auto& [r, target] : node.out)
        if (target) in[*target].insert(r);
    }
    auto copies = [&](const std::set<Name>& incoming) {
      std::vector<std::optional<Name>> out;
      bool none = std::any_of(sigma.roles.begin(), sigma.roles.end(),
                              [&](const Name& r) { return !(incoming.count(r) && effective.count(r)); });
      if (none) out.emplace_back(std::nullopt);
      for (const auto& r : incoming)
        if (effective.count(r)) out.emplace_back(r);
      return out;
    };
    auto copy_name = [](const Name& base, const std::optional<Name>& r) {
      return r ? split_individual(base, *r) : base;
    };
    auto target_name = [&](const Name& base, const Name& r) {
      return effective.count(r) ? split_individual(base, r) : base;
    };
    if (sigma_exists) {
      for (const auto& cp : copies(sigma.roles)) {
        Name n = copy_name(kSigmaIndividual, cp);
        for (const auto& a : sigma.concepts) abox_.add_concept(a, n);
        for (const auto& r : sigma.roles) abox_.add_role(r, n, target_name(kSigmaIndividual, r));
      }
    }
    for (const auto& x : reach) {
      const auto& node = nodes.at(x);
      Name base = witness_individual(x);
      for (const auto& cp : copies(in[x])) {
        Name n = copy_name(base, cp);
        for (const auto& a : node.labels) abox_.add_concept(a, n);
        for (const auto& [r, target] : node.out)
          abox_.add_role(r, n, target_name(target ? witness_individual(*target) : kSigmaIndividual, r));
        points_[x].push_back(n);
      }
      for (const auto& r : node.in_roles)
        if (effective.count(r)) abox_.add_role(r, kDummyIndividual, split_individual(base, r));
    }
  }
  std::set<Name> obj = abox_.obj();
  for (auto& [x, ps] : points_)
    ps.erase(std::remove_if(ps.begin(), ps.end(), [&](const Name& p) { return !obj.count(p); }), ps.end());
  sat_.emplace(saturate_abox(c.idx1, abox_));
}

const std::vector<Name>& WitnessAboxModel::points(const Name& b) const {
  static const std::vector<Name> none;
  auto it = points_.find(b);
  return it == points_.end() ? none : it->second;
}

std::optional<Name> WitnessAboxModel::entailing_point(const Name& a, const Name& b) {
  for (const auto& p : points(b))
    if (sat_->has_label(sat_->individual(p), a)) return p;
  return std::nullopt;
}

Concept strip_redundant_ran(const Concept& c) {
  std::vector<Concept> parts;
  for (const auto& p : c.conjuncts()) {
    if (p.kind() != ConceptKind::Exists) {
      parts.push_back(p);
      continue;
    }
    std::vector<Concept> inner;
    for (const auto& q : strip_redundant_ran(p.filler()).conjuncts())
      if (!(q.kind() == ConceptKind::Ran && q.name() == p.name())) inner.push_back(q);
    parts.push_back(Concept::exists(p.name(), Concept::conj(std::move(inner))));
  }
  return Concept::conj(std::move(parts));
}

ABox minimize_abox(const ABox& a, const std::function<bool(const ABox&)>& keep) {
  struct Item {
    bool role;
    ConceptAssertion c;
    RoleAssertion r;
  };
  std::vector<Item> items;
  for (const auto& ca : a.concept_assertions()) items.push_back({false, ca, {}});
  for (const auto& ra : a.role_assertions()) items.push_back({true, {}, ra});
  auto build = [](const std::vector<Item>& v) {
    ABox out;
    for (const auto& it : v) {
      if (it.role) {
        out.add_role(it.r.role, it.r.from, it.r.to);
      } else {
        out.add_concept(it.c.name, it.c.individual);
      }
    }
    return out;
  };
  for (std::size_t chunk = std::max<std::size_t>(1, items.size() / 2);; chunk /= 2) {
    for (std::size_t i = 0; i < items.size();) {
      std::vector<Item> trial(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(i));
      std::size_t end = std::min(items.size(), i + chunk);
      trial.insert(trial.end(), items.begin() + static_cast<std::ptrdiff_t>(end), items.end());
      if (keep(build(trial))) {
        items = std::move(trial);
      } else {
        i = end;
      }
    }
    if (chunk == 1) break;
  }
  return build(items);
}

ABox connected_part(const ABox& a, const Name& individual) {
  std::map<Name, std::vector<Name>> adj;
  for (const auto& ra : a.role_assertions()) {
    adj[ra.from].push_back(ra.to);
    adj[ra.to].push_back(ra.from);
  }
  std::set<Name> seen{individual};
  std::deque<Name> queue{individual};
  while (!queue.empty()) {
    Name x = queue.front();
    queue.pop_front();
    for (const auto& y : adj[x])
      if (seen.insert(y).second) queue.push_back(y);
  }
  ABox out;
  for (const auto& ca : a.concept_assertions())
    if (seen.count(ca.individual)) out.add_concept(ca.name, ca.individual);
  for (const auto& ra : a.role_assertions())
    if (seen.count(ra.from)) out.add_role(ra.role, ra.from, ra.to);
  return out;
}

}  // namespace detail
}  // namespace ldiff
