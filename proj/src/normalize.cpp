#include "ldiff/normalize.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ldiff {

bool is_fresh_name(const Name& n) { return n.rfind(kFreshPrefix, 0) == 0; }

namespace {

bool is_name_conjunction(const Concept& c) {
  if (c.is_top()) return false;
  for (const auto& x : c.conjuncts())
    if (!x.is_atom()) return false;
  return true;
}

std::vector<Name> names_of(const Concept& f) {
  std::vector<Name> out;
  for (const auto& x : f.conjuncts()) out.push_back(x.name());
  return out;
}

Concept conj_of(const std::vector<Name>& names) {
  std::vector<Concept> parts;
  for (const auto& n : names) parts.push_back(Concept::atom(n));
  return Concept::conj(std::move(parts));
}

class Normalizer {
 public:
  explicit Normalizer(const Terminology& t) : input_(t) {}

  NormalizedTerminology run() {
    for (const auto& ax : input_.axioms()) {
      Axiom a = ax;
      if (a.kind != AxiomKind::RoleIncl) a.rhs = name_fillers(a.rhs);
      axioms_.push_back(std::move(a));
    }
    split_existentials();
    split_domain_definitions();
    break_conjunctive_cycles();
    unfold_conjunctive_conjuncts();

    NormalizedTerminology out;
    std::vector<Axiom> kept;
    for (auto& a : axioms_)
      if (!dropped_(a)) kept.push_back(std::move(a));
    out.terminology = Terminology(std::move(kept), input_.declared_roles());
    out.fresh = fresh_;
    out.origin = origin_;
    return out;
  }

 private:
  static bool dropped_(const Axiom& a) { return a.kind != AxiomKind::RoleIncl && a.rhs.is_top(); }

  Name fresh_for(const Concept& c) {
    auto it = fresh_by_concept_.find(c);
    if (it != fresh_by_concept_.end()) return it->second;
    Name n = kFreshPrefix + std::to_string(++counter_);
    fresh_by_concept_.emplace(c, n);
    fresh_.insert(n);
    origin_.emplace(n, c);
    axioms_.push_back(Axiom::eq(n, c));
    return n;
  }

  // Step 1: every filler of an existential becomes a name or Top.
  Concept name_fillers(const Concept& c) {
    switch (c.kind()) {
      case ConceptKind::Conj: {
        std::vector<Concept> parts;
        for (const auto& x : c.children()) parts.push_back(name_fillers(x));
        return Concept::conj(std::move(parts));
      }
      case ConceptKind::Exists: {
        const Concept& f = c.filler();
        if (f.is_atom() || f.is_top()) return c;
        Concept inner = name_fillers(f);
        return Concept::exists(c.name(), Concept::atom(fresh_for(inner)));
      }
      default: return c;
    }
  }

  // Step 2: F and Er1.B1 .. Erm.Bm with F != Top or m >= 2: name each existential.
  void split_existentials() {
    for (std::size_t i = 0; i < axioms_.size(); ++i) {
      if (axioms_[i].kind == AxiomKind::RoleIncl) continue;
      const Concept rhs = axioms_[i].rhs;
      auto parts = rhs.conjuncts();
      std::size_t exists = 0;
      for (const auto& p : parts) exists += p.kind() == ConceptKind::Exists;
      if (exists == 0 || parts.size() == 1) continue;
      std::vector<Concept> out;
      for (const auto& p : parts) {
        if (p.kind() == ConceptKind::Exists) {
          out.push_back(Concept::atom(fresh_for(p)));  // may grow axioms_
        } else {
          out.push_back(p);
        }
      }
      axioms_[i].rhs = Concept::conj(std::move(out));
    }
  }

  // Step 3: A == Er.Top becomes A <= Er.Top and Er.Top <= A.
  void split_domain_definitions() {
    std::vector<Axiom> extra;
    for (auto& a : axioms_) {
      if (a.kind == AxiomKind::EqAtom && a.rhs.kind() == ConceptKind::Exists && a.rhs.filler().is_top()) {
        a.kind = AxiomKind::SubAtom;
        extra.push_back(Axiom::domain(a.rhs.name(), Concept::atom(a.lhs)));
      }
    }
    axioms_.insert(axioms_.end(), extra.begin(), extra.end());
  }

  // Index of the EqAtom axiom A == F with F a conjunction of names.
  std::unordered_map<Name, std::size_t> conjunctive_definitions() const {
    std::unordered_map<Name, std::size_t> out;
    for (std::size_t i = 0; i < axioms_.size(); ++i) {
      const Axiom& a = axioms_[i];
      if (a.kind == AxiomKind::EqAtom && is_name_conjunction(a.rhs)) out.emplace(a.lhs, i);
    }
    return out;
  }

  // Smallest name lying on a cycle of conjunctive definitions, with the
  // cycle A -> B0 -> .. -> B(n-1) -> A found by breadth-first search.
  std::optional<std::vector<Name>> find_cycle(const std::unordered_map<Name, std::size_t>& defs) const {
    std::vector<Name> names;
    for (const auto& [n, _] : defs) names.push_back(n);
    std::sort(names.begin(), names.end());
    for (const Name& a : names) {
      std::unordered_map<Name, Name> parent;
      std::deque<Name> queue{a};
      while (!queue.empty()) {
        Name cur = queue.front();
        queue.pop_front();
        for (const Name& next : names_of(axioms_[defs.at(cur)].rhs)) {
          if (!defs.count(next)) continue;
          if (next == a) {
            std::vector<Name> path{cur};
            while (path.back() != a) path.push_back(parent.at(path.back()));
            std::reverse(path.begin(), path.end());  // a, B0, .., B(n-1)
            return path;
          }
          if (parent.count(next)) continue;
          parent.emplace(next, cur);
          queue.push_back(next);
        }
      }
    }
    return std::nullopt;
  }

  // Step 4.
  void break_conjunctive_cycles() {
    while (true) {
      auto defs = conjunctive_definitions();
      auto cycle = find_cycle(defs);
      if (!cycle) return;
      const std::vector<Name>& path = *cycle;
      const Name& a = path.front();
      // F'_n: conjuncts of the last definition except A.
      std::vector<Name> current;
      for (const Name& x : names_of(axioms_[defs.at(path.back())].rhs))
        if (x != a) current.push_back(x);
      // F'_{i-1}: replace B_{i-1} in F_{i-1} by F'_i.
      for (std::size_t i = path.size() - 1; i-- > 0;) {
        const Name& replaced = path[i + 1];
        std::vector<Name> next;
        for (const Name& x : names_of(axioms_[defs.at(path[i])].rhs)) {
          if (x == replaced) {
            next.insert(next.end(), current.begin(), current.end());
          } else {
            next.push_back(x);
          }
        }
        current = std::move(next);
      }
      Axiom& def = axioms_[defs.at(a)];
      def.kind = AxiomKind::SubAtom;
      def.rhs = conj_of(current);
    }
  }

  // Step 5: replace conjunctive conjuncts by their (unfolded) definitions.
  void unfold_conjunctive_conjuncts() {
    auto defs = conjunctive_definitions();
    std::unordered_map<Name, std::vector<Name>> memo;
    std::function<const std::vector<Name>&(const Name&)> expand = [&](const Name& b) -> const std::vector<Name>& {
      if (auto it = memo.find(b); it != memo.end()) return it->second;
      std::vector<Name> out;
      for (const Name& x : names_of(axioms_[defs.at(b)].rhs)) {
        if (defs.count(x)) {
          const auto& sub = expand(x);
          out.insert(out.end(), sub.begin(), sub.end());
        } else {
          out.push_back(x);
        }
      }
      return memo.emplace(b, std::move(out)).first->second;
    };
    for (auto& a : axioms_) {
      if (a.kind == AxiomKind::RoleIncl || !is_name_conjunction(a.rhs)) continue;
      std::vector<Name> out;
      for (const Name& x : names_of(a.rhs)) {
        if (defs.count(x)) {
          const auto& sub = expand(x);
          out.insert(out.end(), sub.begin(), sub.end());
        } else {
          out.push_back(x);
        }
      }
      if (a.kind == AxiomKind::SubAtom) {
        // A <= A and F is A <= F.
        out.erase(std::remove(out.begin(), out.end(), a.lhs), out.end());
      }
      a.rhs = conj_of(out);
    }
  }

  const Terminology& input_;
  std::vector<Axiom> axioms_;
  std::map<Concept, Name> fresh_by_concept_;
  std::set<Name> fresh_;
  std::map<Name, Concept> origin_;
  std::size_t counter_ = 0;
};

}  // namespace

NormalizedTerminology normalize(const Terminology& t) { return Normalizer(t).run(); }

bool is_normalized(const Terminology& t) {
  for (const auto& a : t.axioms()) {
    if (a.kind == AxiomKind::RoleIncl) continue;
    const Concept& c = a.rhs;
    if (c.kind() == ConceptKind::Exists) {
      const Concept& f = c.filler();
      if (f.is_atom()) continue;
      if (f.is_top() && a.kind != AxiomKind::EqAtom) continue;
      return false;
    }
    if (!is_name_conjunction(c)) return false;
    for (const auto& x : c.conjuncts())
      if (is_conjunctive(t, x.name())) return false;
  }
  return true;
}

}  // namespace ldiff
