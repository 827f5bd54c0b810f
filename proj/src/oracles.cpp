#include <random>

#include "ldiff/diff.hpp"

namespace ldiff {

namespace {

class NoimplyBuilder {
 public:
  NoimplyBuilder(const NormalizedTerminology& t, const SubsumptionIndex& idx, const Signature& sigma)
      : t_(t.terminology), idx_(idx), sigma_(sigma) {}

  const std::set<Concept>& get(const Name& a, std::size_t n) {
    auto key = std::make_pair(a, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<Concept> out = compute(a, n);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const Concept& all(std::size_t n) {
    while (all_.size() <= n) {
      std::vector<Concept> parts;
      for (const auto& a : sigma_.concepts) parts.push_back(Concept::atom(a));
      if (!all_.empty())
        for (const auto& s : sigma_.roles) parts.push_back(Concept::exists(s, all_.back()));
      all_.push_back(Concept::conj(std::move(parts)));
    }
    return all_[n];
  }

  std::vector<Concept> base(const Name& a) const {
    std::set<Name> pre = pre_sets(idx_, sigma_, a).pre_c;
    std::vector<Concept> parts;
    for (const auto& b : sigma_.concepts)
      if (!pre.count(b)) parts.push_back(Concept::atom(b));
    return parts;
  }

  std::set<Concept> compute(const Name& a, std::size_t n) {
    if (is_conjunctive(t_, a)) {
      std::set<Concept> out;
      for (const auto& b : non_conj(t_, a)) {
        const auto& part = get(b, n);
        out.insert(part.begin(), part.end());
      }
      return out;
    }
    std::vector<Concept> parts = base(a);
    if (n == 0) return {Concept::conj(std::move(parts))};
    const Axiom* d = t_.definition_of(a);
    if (d == nullptr || d->kind != AxiomKind::EqAtom) {
      for (const auto& s : sigma_.roles) parts.push_back(Concept::exists(s, all(n - 1)));
      return {Concept::conj(std::move(parts))};
    }
    const Name& r = d->rhs.name();
    for (const auto& s : sigma_.roles)
      if (s != r) parts.push_back(Concept::exists(s, all(n - 1)));
    if (sigma_.has_role(r))
      for (const auto& e : get(d->rhs.filler().name(), n - 1)) parts.push_back(Concept::exists(r, e));
    return {Concept::conj(std::move(parts))};
  }

  const Terminology& t_;
  const SubsumptionIndex& idx_;
  const Signature& sigma_;
  std::vector<Concept> all_;
  std::map<std::pair<Name, std::size_t>, std::set<Concept>> memo_;
};

// Conjunctions of at most cap distinct items (the empty one is Top).
std::vector<Concept> conjunctions(const std::vector<Concept>& items, std::size_t cap) {
  std::set<Concept> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    std::vector<Concept> parts;
    for (std::size_t i : pick) parts.push_back(items[i]);
    out.insert(Concept::conj(std::move(parts)));
    if (pick.size() == cap) return;
    for (std::size_t i = from; i < items.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return {out.begin(), out.end()};
}

std::vector<std::vector<Name>> role_sets(const std::set<Name>& roles, std::size_t min_size) {
  std::vector<Name> rs(roles.begin(), roles.end());
  std::vector<std::vector<Name>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << rs.size()); ++mask) {
    std::vector<Name> set;
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (mask & (std::size_t{1} << i)) set.push_back(rs[i]);
    if (set.size() >= min_size) out.push_back(std::move(set));
  }
  return out;
}

// Sigma-concepts up to the caps; with query, also Eu and role conjunctions.
std::vector<Concept> enumerate_concepts(const Signature& sigma, std::size_t depth, std::size_t conj_cap, bool query) {
  std::vector<Concept> atoms;
  for (const auto& a : sigma.concepts) atoms.push_back(Concept::atom(a));
  auto sets = query ? role_sets(sigma.roles, 2) : std::vector<std::vector<Name>>{};
  std::vector<Concept> level = conjunctions(atoms, conj_cap);
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<Concept> items = atoms;
    for (const auto& x : level) {
      for (const auto& s : sigma.roles) items.push_back(Concept::exists(s, x));
      for (const auto& rs : sets) items.push_back(Concept::exists_roles(rs, x));
      if (query) items.push_back(Concept::exists_universal(x));
    }
    level = conjunctions(items, conj_cap);
  }
  return level;
}

ABox rename_individuals(const ABox& a, const std::string& prefix) {
  ABox out;
  for (const auto& ca : a.concept_assertions()) out.add_concept(ca.name, prefix + ca.individual);
  for (const auto& ra : a.role_assertions()) out.add_role(ra.role, prefix + ra.from, prefix + ra.to);
  return out;
}

void merge_into(ABox& into, const ABox& a) {
  for (const auto& ca : a.concept_assertions()) into.add_concept(ca.name, ca.individual);
  for (const auto& ra : a.role_assertions()) into.add_role(ra.role, ra.from, ra.to);
}

// Names in sigma separating the single-assertion KBs at the point.
bool separated_at(const DiffContext& c, const ABox& a, const Name& point, const std::vector<Concept>& rhs) {
  Interpretation i1 = build_canonical(c.idx1, a);
  Interpretation i2 = build_canonical(c.idx2, a);
  ConceptEvaluator e1(i1), e2(i2);
  int d = *i1.individual(point), e = *i2.individual(point);
  for (const auto& x : rhs)
    if (e1.holds(d, x) && !e2.holds(e, x)) return true;
  return false;
}

}  // namespace

std::set<Concept> noimply_cover(const NormalizedTerminology& t, const SubsumptionIndex& idx, const Signature& sigma,
                                const Name& a, std::size_t n) {
  NoimplyBuilder b(t, idx, sigma);
  return b.get(a, n);
}

ModeWitnesses brute_force_witnesses(const DiffContext& c, Mode mode, std::size_t depth_cap, std::size_t conj_cap) {
  ModeWitnesses out;
  out.role = role_witnesses(c.idx1, c.idx2, c.sigma);

  std::vector<Concept> el = enumerate_concepts(c.sigma, depth_cap, conj_cap, false);
  // Left sides: ran(R) and C for role sets R (at most one role in concept mode).
  std::vector<Concept> lefts = el;
  for (auto rs : role_sets(c.sigma.roles, 1)) {
    if (mode == Mode::Concept && rs.size() > 1) continue;
    std::vector<Concept> rans;
    for (const auto& r : rs) rans.push_back(Concept::ran(r));
    Concept prefix = Concept::conj(std::move(rans));
    for (const auto& x : el) lefts.push_back(Concept::conj(prefix, x));
  }
  ABox all;
  std::vector<Name> roots;
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    std::string prefix = "q" + std::to_string(i) + ":";
    ConceptABox ca = concept_to_abox(lefts[i]);
    merge_into(all, rename_individuals(ca.abox, prefix));
    all.add_top(prefix + ca.root);
    roots.push_back(prefix + ca.root);
  }
  Saturation s1 = saturate_abox(c.idx1, all);
  Saturation s2 = saturate_abox(c.idx2, all);
  for (const auto& root : roots) {
    int n1 = s1.individual(root), n2 = s2.individual(root);
    for (const auto& a : c.sigma.concepts)
      if (s1.has_label(n1, a) && !s2.has_label(n2, a)) out.rhs.insert(a);
  }

  const std::vector<Concept> rhs =
      mode == Mode::Query ? enumerate_concepts(c.sigma, depth_cap, conj_cap, true) : el;
  for (const auto& a : c.sigma.concepts) {
    ABox ab;
    ab.add_concept(a, "a");
    if (separated_at(c, ab, "a", rhs)) out.lhs_atomic.insert(a);
  }
  for (const auto& r : c.sigma.roles) {
    ABox ab;
    ab.add_role(r, "a", "b");
    if (separated_at(c, ab, "a", rhs)) out.lhs_dom.insert(r);
    if (separated_at(c, ab, "b", rhs)) out.lhs_ran.insert(r);
  }
  return out;
}

namespace {

struct Generator {
  const RandomTerminologyParams& p;
  std::size_t num_primitive;

  explicit Generator(const RandomTerminologyParams& params)
      : p(params), num_primitive(std::max<std::size_t>(2, params.num_defined / 2)) {}

  Name defined(std::size_t i) const { return "A" + std::to_string(i); }

  Axiom draw(std::size_t i, std::mt19937_64& rng) const {
    std::bernoulli_distribution eq(p.eq_ratio), ex(p.exists_ratio);
    std::uniform_int_distribution<std::size_t> conj(1, std::max<std::size_t>(1, p.max_conj));
    std::size_t later = p.num_defined - i - 1;
    std::uniform_int_distribution<std::size_t> pick(0, later + num_primitive - 1);
    std::uniform_int_distribution<std::size_t> role(0, std::max<std::size_t>(1, p.num_roles) - 1);
    auto name = [&] {
      std::size_t k = pick(rng);
      return Concept::atom(k < later ? defined(i + 1 + k) : "P" + std::to_string(k - later));
    };
    bool is_eq = eq(rng);
    std::size_t k = conj(rng);
    std::vector<Concept> parts;
    for (std::size_t j = 0; j < k; ++j) {
      if (p.num_roles > 0 && ex(rng)) {
        parts.push_back(Concept::exists("r" + std::to_string(role(rng)), name()));
      } else {
        parts.push_back(name());
      }
    }
    Concept rhs = Concept::conj(std::move(parts));
    return is_eq ? Axiom::eq(defined(i), rhs) : Axiom::sub(defined(i), rhs);
  }
};

}  // namespace

Terminology generate_random_terminology(const RandomTerminologyParams& p, std::uint64_t seed) {
  return perturb_random_terminology(p, seed, 0.0, 0);
}

Terminology generate_random_terminology(std::size_t num_defined, std::size_t num_roles, double eq_ratio,
                                        double exists_ratio, std::size_t max_conj, std::uint64_t seed) {
  return generate_random_terminology(RandomTerminologyParams{num_defined, num_roles, eq_ratio, exists_ratio, max_conj},
                                     seed);
}

Terminology perturb_random_terminology(const RandomTerminologyParams& p, std::uint64_t seed, double change_ratio,
                                       std::uint64_t change_seed) {
  Generator g(p);
  std::mt19937_64 rng(seed), change(change_seed);
  std::bernoulli_distribution redraw(change_ratio);
  std::vector<Axiom> axioms;
  for (std::size_t i = 0; i < p.num_defined; ++i) {
    Axiom a = g.draw(i, rng);
    if (change_ratio > 0 && redraw(change)) a = g.draw(i, change);
    axioms.push_back(std::move(a));
  }
  return Terminology(std::move(axioms));
}

}  // namespace ldiff
