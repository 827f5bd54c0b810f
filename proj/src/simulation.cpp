#include "ldiff/simulation.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ldiff {

namespace {

// Witnesses larger than this are not pruned; they are reported as overflow.
constexpr std::size_t kPruneLimit = 1u << 14;

std::uint64_t pair_key(int d, int e) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(d)) << 32) | static_cast<std::uint32_t>(e);
}

Concept with_filler(const Concept& c, const Concept& filler) {
  switch (c.kind()) {
    case ConceptKind::Exists: return Concept::exists(c.name(), filler);
    case ConceptKind::ExistsRoles: return Concept::exists_roles(c.roles(), filler);
    case ConceptKind::ExistsUniversal: return Concept::exists_universal(filler);
    default: throw std::logic_error("with_filler: not an existential");
  }
}

bool is_existential(const Concept& c) {
  return c.kind() == ConceptKind::Exists || c.kind() == ConceptKind::ExistsRoles ||
         c.kind() == ConceptKind::ExistsUniversal;
}

using Keep = std::function<bool(const Concept&)>;
using Rebuild = std::function<Concept(const Concept&)>;

Concept prune_node(const Concept& c, const Rebuild& rebuild, const Keep& keep) {
  std::vector<Concept> parts = c.conjuncts();
  for (std::size_t i = 0; i < parts.size();) {
    auto trial = parts;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (keep(rebuild(Concept::conj(trial)))) {
      parts = std::move(trial);
    } else {
      ++i;
    }
  }
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (!is_existential(parts[j])) continue;
    auto with_part = [&parts, j, &rebuild](const Concept& p) {
      auto t = parts;
      t[j] = p;
      return rebuild(Concept::conj(std::move(t)));
    };
    if (parts[j].kind() == ConceptKind::ExistsRoles) {
      for (std::size_t k = 0; k < parts[j].roles().size() && parts[j].kind() == ConceptKind::ExistsRoles;) {
        std::vector<Name> rest = parts[j].roles();
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        Concept p = rest.size() == 1 ? Concept::exists(rest.front(), parts[j].filler())
                                     : Concept::exists_roles(rest, parts[j].filler());
        if (keep(with_part(p))) {
          parts[j] = p;
        } else {
          ++k;
        }
      }
    }
    const Concept& filler = parts[j].filler();
    if (filler.is_top()) continue;
    Concept to_top = with_filler(parts[j], Concept::top());
    if (keep(with_part(to_top))) {
      parts[j] = to_top;
      continue;
    }
    Concept outer = parts[j];
    Concept f = prune_node(
        filler, [&](const Concept& nf) { return with_part(with_filler(outer, nf)); }, keep);
    parts[j] = with_filler(outer, f);
  }
  return Concept::conj(std::move(parts));
}

}  // namespace

PointEvaluator::PointEvaluator(const Interpretation& i, std::optional<std::vector<int>> universe)
    : i_(i), universe_(std::move(universe)) {}

bool PointEvaluator::has_incoming(int d, const Name& r) {
  if (!incoming_ready_) {
    incoming_.assign(i_.size(), {});
    for (std::size_t x = 0; x < i_.size(); ++x)
      for (const auto& [role, y] : i_.edges(static_cast<int>(x))) incoming_[y].push_back(role);
    for (auto& v : incoming_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    incoming_ready_ = true;
  }
  return std::binary_search(incoming_[d].begin(), incoming_[d].end(), r);
}

bool PointEvaluator::holds(int d, const Concept& c) {
  auto it = memo_.find(c.id());
  if (it != memo_.end()) {
    auto hit = it->second.second.find(d);
    if (hit != it->second.second.end()) return hit->second;
  }
  bool out = false;
  switch (c.kind()) {
    case ConceptKind::Top: out = true; break;
    case ConceptKind::Atom: out = i_.has_label(d, c.name()); break;
    case ConceptKind::Conj:
      out = std::all_of(c.children().begin(), c.children().end(), [&](const Concept& ch) { return holds(d, ch); });
      break;
    case ConceptKind::Exists: {
      const auto& es = i_.edges(d);
      for (auto e = es.lower_bound({c.name(), -1}); e != es.end() && e->first == c.name() && !out; ++e)
        out = holds(e->second, c.filler());
      break;
    }
    case ConceptKind::Ran: out = has_incoming(d, c.name()); break;
    case ConceptKind::ExistsRoles: {
      const auto& es = i_.edges(d);
      const auto& roles = c.roles();
      for (auto e = es.lower_bound({roles.front(), -1}); e != es.end() && e->first == roles.front() && !out; ++e) {
        bool all = std::all_of(roles.begin() + 1, roles.end(),
                               [&](const Name& r) { return es.count({r, e->second}) != 0; });
        out = all && holds(e->second, c.filler());
      }
      break;
    }
    case ConceptKind::ExistsUniversal:
      if (universe_) {
        out = std::any_of(universe_->begin(), universe_->end(), [&](int x) { return holds(x, c.filler()); });
      } else {
        for (std::size_t x = 0; x < i_.size() && !out; ++x) out = holds(static_cast<int>(x), c.filler());
      }
      break;
  }
  auto& slot = memo_.try_emplace(c.id(), c, std::unordered_map<int, bool>{}).first->second.second;
  slot[d] = out;
  return out;
}

SimulationSolver::SimulationSolver(const Interpretation& i1, const Interpretation& i2, const Signature& sigma,
                                   SimulationKind kind)
    : i1_(i1), i2_(i2), kind_(kind), role_names_(sigma.roles.begin(), sigma.roles.end()) {
  auto role_id = [this](const Name& r) -> int {
    auto it = std::lower_bound(role_names_.begin(), role_names_.end(), r);
    return it != role_names_.end() && *it == r ? static_cast<int>(it - role_names_.begin()) : -1;
  };
  auto prepare = [&](const Interpretation& in, std::vector<std::vector<Name>>& labels,
                     std::vector<std::vector<int>>& rans, std::vector<std::vector<Step>>& steps, bool grouped) {
    labels.assign(in.size(), {});
    rans.assign(in.size(), {});
    steps.assign(in.size(), {});
    for (std::size_t x = 0; x < in.size(); ++x) {
      for (const auto& a : in.labels(static_cast<int>(x)))
        if (sigma.has_concept(a)) labels[x].push_back(a);
      std::map<int, std::vector<int>> by_target;
      for (const auto& [r, y] : in.edges(static_cast<int>(x))) {
        int id = role_id(r);
        if (id < 0) continue;
        if (kind_ == SimulationKind::Range) rans[y].push_back(id);
        if (grouped) {
          by_target[y].push_back(id);
        } else {
          steps[x].push_back({{id}, y});
        }
      }
      for (auto& [y, roles] : by_target) {
        std::sort(roles.begin(), roles.end());
        steps[x].push_back({std::move(roles), y});
      }
    }
    for (auto& v : rans) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  };
  prepare(i1_, labels1_, rans1_, steps1_, kind_ == SimulationKind::Intersection);
  prepare(i2_, labels2_, rans2_, steps2_, true);
}

std::optional<Concept> SimulationSolver::atomic_difference(int d, int e) const {
  const auto& l2 = labels2_[e];
  for (const auto& a : labels1_[d])
    if (!std::binary_search(l2.begin(), l2.end(), a)) return Concept::atom(a);
  const auto& r2 = rans2_[e];
  for (int r : rans1_[d])
    if (!std::binary_search(r2.begin(), r2.end(), r)) return Concept::ran(role_names_[r]);
  return std::nullopt;
}

int SimulationSolver::find_or_add(int d, int e, std::vector<int>& fresh) {
  auto [it, inserted] = pair_ids_.try_emplace(pair_key(d, e), static_cast<int>(pairs_.size()));
  if (!inserted) return it->second;
  PairState p;
  p.d = d;
  p.e = e;
  p.dead = atomic_difference(d, e).has_value();
  pairs_.push_back(p);
  parents_.emplace_back();
  fresh.push_back(it->second);
  return it->second;
}

void SimulationSolver::explore(int d, int e) {
  if (d < 0 || static_cast<std::size_t>(d) >= i1_.size() || e < 0 || static_cast<std::size_t>(e) >= i2_.size())
    throw std::out_of_range("simulation: element out of range");
  std::vector<int> fresh;
  find_or_add(d, e, fresh);
  std::deque<int> deaths;
  while (!fresh.empty()) {
    int p = fresh.back();
    fresh.pop_back();
    if (pairs_[p].dead) {
      deaths.push_back(p);
      continue;
    }
    const int pd = pairs_[p].d;
    const int pe = pairs_[p].e;
    pairs_[p].counts = counts_.size();
    const auto& s1 = steps1_[pd];
    for (std::size_t k = 0; k < s1.size(); ++k) counts_.push_back(0);
    for (std::size_t k = 0; k < s1.size(); ++k) {
      for (const auto& s2 : steps2_[pe]) {
        if (!std::includes(s2.roles.begin(), s2.roles.end(), s1[k].roles.begin(), s1[k].roles.end())) continue;
        int q = find_or_add(s1[k].target, s2.target, fresh);
        if (pairs_[q].propagated) continue;
        ++counts_[pairs_[p].counts + k];
        parents_[q].emplace_back(p, static_cast<int>(k));
      }
      if (counts_[pairs_[p].counts + k] == 0) {
        pairs_[p].dead = true;
        pairs_[p].reason = static_cast<int>(k);
        deaths.push_back(p);
        break;
      }
    }
  }
  while (!deaths.empty()) {
    int q = deaths.front();
    deaths.pop_front();
    if (pairs_[q].propagated) continue;
    pairs_[q].propagated = true;
    for (auto [p, k] : parents_[q]) {
      auto& ps = pairs_[p];
      if (ps.dead) continue;
      if (--counts_[ps.counts + k] == 0) {
        ps.dead = true;
        ps.reason = k;
        deaths.push_back(p);
      }
    }
    parents_[q].clear();
    parents_[q].shrink_to_fit();
  }
}

bool SimulationSolver::simulates(int d, int e) {
  auto it = pair_ids_.find(pair_key(d, e));
  if (it == pair_ids_.end()) {
    explore(d, e);
    it = pair_ids_.find(pair_key(d, e));
  }
  return !pairs_[it->second].dead;
}

Concept SimulationSolver::separating_concept(int d, int e) {
  if (simulates(d, e)) throw std::logic_error("separating_concept: pair is simulated");
  const int root = pair_ids_.at(pair_key(d, e));
  std::vector<std::pair<int, bool>> stack{{root, false}};
  auto children = [this](int p) {
    const auto& ps = pairs_[p];
    const auto& step = steps1_[ps.d][ps.reason];
    std::vector<int> out;
    for (const auto& s2 : steps2_[ps.e])
      if (std::includes(s2.roles.begin(), s2.roles.end(), step.roles.begin(), step.roles.end()))
        out.push_back(pair_ids_.at(pair_key(step.target, s2.target)));
    return out;
  };
  while (!stack.empty()) {
    auto [p, expanded] = stack.back();
    stack.pop_back();
    if (witness_memo_.count(p)) continue;
    const auto& ps = pairs_[p];
    if (ps.reason < 0) {
      witness_memo_.emplace(p, *atomic_difference(ps.d, ps.e));
      continue;
    }
    auto kids = children(p);
    if (!expanded) {
      stack.emplace_back(p, true);
      for (int q : kids)
        if (!witness_memo_.count(q)) stack.emplace_back(q, false);
      continue;
    }
    std::vector<Concept> parts;
    for (int q : kids) parts.push_back(witness_memo_.at(q));
    const auto& step = steps1_[ps.d][ps.reason];
    Concept filler = Concept::conj(std::move(parts));
    if (step.roles.size() == 1) {
      witness_memo_.emplace(p, Concept::exists(role_names_[step.roles.front()], filler));
    } else {
      std::vector<Name> roles;
      for (int r : step.roles) roles.push_back(role_names_[r]);
      witness_memo_.emplace(p, Concept::exists_roles(std::move(roles), filler));
    }
  }
  return witness_memo_.at(root);
}

Concept prune_concept(const Concept& c, const std::function<bool(const Concept&)>& keep) {
  return prune_node(c, [](const Concept& x) { return x; }, keep);
}

std::vector<int> reachable(const Interpretation& i, int d) {
  std::vector<bool> seen(i.size(), false);
  std::vector<int> out{d};
  seen[d] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& [r, y] : i.edges(out[k])) {
      if (seen[y]) continue;
      seen[y] = true;
      out.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Interpretation abox_interpretation(const ABox& a) {
  Interpretation out;
  for (const auto& x : a.obj()) {
    Element e;
    e.individual = x;
    out.set_individual(x, out.add_element(std::move(e)));
  }
  for (const auto& ca : a.concept_assertions())
    if (!ca.name.empty()) out.add_label(*out.individual(ca.individual), ca.name);
  for (const auto& ra : a.role_assertions())
    out.add_edge(*out.individual(ra.from), ra.role, *out.individual(ra.to));
  return out;
}

std::optional<int> element_without_image(SimulationSolver& s, const std::vector<int>& universe1,
                                         const std::vector<int>& universe2) {
  for (int d : universe1) {
    bool found = std::any_of(universe2.begin(), universe2.end(), [&](int e) { return s.simulates(d, e); });
    if (!found) return d;
  }
  return std::nullopt;
}

Concept global_separating_concept(SimulationSolver& s, int d, const std::vector<int>& universe2) {
  std::vector<Concept> parts;
  for (int e : universe2) parts.push_back(s.separating_concept(d, e));
  return Concept::exists_universal(Concept::conj(std::move(parts)));
}

SimulationResult finish_witness(const Concept& raw, PointEvaluator& left, int d, PointEvaluator& right, int e,
                                const SimulationOptions& opts) {
  SimulationResult out;
  out.holds = false;
  if (!opts.extract_witness) return out;
  auto keep = [&](const Concept& c) { return left.holds(d, c) && !right.holds(e, c); };
  if (raw.size() > kPruneLimit) {
    out.witness_overflow = true;
    return out;
  }
  if (!keep(raw)) throw std::logic_error("simulation witness does not separate the points");
  Concept pruned = prune_concept(raw, keep);
  if (pruned.size() > opts.max_witness_size) {
    out.witness_overflow = true;
  } else {
    out.witness_concept = std::move(pruned);
  }
  return out;
}

namespace {

SimulationResult pointed(const Interpretation& i1, int d, const Interpretation& i2, int e, const Signature& sigma,
                         SimulationKind kind, const SimulationOptions& opts) {
  SimulationSolver s(i1, i2, sigma, kind);
  if (s.simulates(d, e)) return {};
  PointEvaluator left(i1), right(i2);
  return finish_witness(s.separating_concept(d, e), left, d, right, e, opts);
}

}  // namespace

SimulationResult sigma_simulation(const Interpretation& i1, int d, const Interpretation& i2, int e,
                                  const Signature& sigma, const SimulationOptions& opts) {
  return pointed(i1, d, i2, e, sigma, SimulationKind::Plain, opts);
}

SimulationResult range_simulation(const ABox& a1, const Name& x1, const ABox& a2, const Name& x2,
                                  const Signature& sigma, const SimulationOptions& opts) {
  Interpretation i1 = abox_interpretation(a1);
  Interpretation i2 = abox_interpretation(a2);
  auto d = i1.individual(x1);
  auto e = i2.individual(x2);
  if (!d || !e) throw std::invalid_argument("range_simulation: unknown individual");
  return pointed(i1, *d, i2, *e, sigma, SimulationKind::Range, opts);
}

SimulationResult global_intersection_simulation(const Interpretation& i1, int d, const Interpretation& i2, int e,
                                                const Signature& sigma, const SimulationOptions& opts) {
  SimulationSolver s(i1, i2, sigma, SimulationKind::Intersection);
  PointEvaluator left(i1), right(i2);
  if (!s.simulates(d, e)) return finish_witness(s.separating_concept(d, e), left, d, right, e, opts);
  std::vector<int> all1(i1.size()), all2(i2.size());
  for (std::size_t x = 0; x < all1.size(); ++x) all1[x] = static_cast<int>(x);
  for (std::size_t x = 0; x < all2.size(); ++x) all2[x] = static_cast<int>(x);
  auto lonely = element_without_image(s, all1, all2);
  if (!lonely) return {};
  return finish_witness(global_separating_concept(s, *lonely, all2), left, d, right, e, opts);
}

}  // namespace ldiff
