#include "ldiff/terminology.hpp"

#include <algorithm>
#include <unordered_map>

namespace ldiff {

int compare(const Axiom& a, const Axiom& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (int c = a.lhs.compare(b.lhs); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.sup.compare(b.sup); c != 0) return c < 0 ? -1 : 1;
  return compare(a.rhs, b.rhs);
}

Terminology::Terminology(std::vector<Axiom> axioms, std::set<Name> declared_roles)
    : axioms_(std::move(axioms)), declared_roles_(std::move(declared_roles)) {
  for (std::size_t i = 0; i < axioms_.size(); ++i) {
    const Axiom& ax = axioms_[i];
    if (ax.lhs.empty()) throw TerminologyError("axiom with empty left-hand side");
    if (ax.kind == AxiomKind::RoleIncl) {
      if (ax.sup.empty()) throw TerminologyError("role inclusion without super role");
      continue;
    }
    if (ax.rhs.is_top()) throw TerminologyError("right-hand side of an axiom for " + ax.lhs + " is top");
    if (!is_el(ax.rhs)) throw TerminologyError("right-hand side of an axiom for " + ax.lhs + " is not an EL concept");
    if (ax.defines_concept()) {
      auto [it, fresh] = definition_index_.emplace(ax.lhs, i);
      if (!fresh) throw TerminologyError("concept " + ax.lhs + " is defined more than once");
    }
  }
}

const Axiom* Terminology::definition_of(const Name& a) const {
  auto it = definition_index_.find(a);
  return it == definition_index_.end() ? nullptr : &axioms_[it->second];
}

bool Terminology::is_pseudo_primitive(const Name& a) const {
  const Axiom* d = definition_of(a);
  return d == nullptr || d->kind != AxiomKind::EqAtom;
}

bool same_axioms(const Terminology& a, const Terminology& b) {
  auto x = a.axioms();
  auto y = b.axioms();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y && a.declared_roles() == b.declared_roles();
}

void ABox::add_concept(const Name& name, const Name& individual) {
  concepts_.insert({name, individual});
}

void ABox::add_role(const Name& role, const Name& from, const Name& to) {
  roles_.insert({role, from, to});
}

std::set<Name> ABox::obj() const {
  std::set<Name> out;
  for (const auto& c : concepts_) out.insert(c.individual);
  for (const auto& r : roles_) {
    out.insert(r.from);
    out.insert(r.to);
  }
  return out;
}

Signature signature_of(const Axiom& a) {
  Signature s;
  switch (a.kind) {
    case AxiomKind::SubAtom:
    case AxiomKind::EqAtom: s.concepts.insert(a.lhs); break;
    case AxiomKind::RangeRestr:
    case AxiomKind::DomainRestr: s.roles.insert(a.lhs); break;
    case AxiomKind::RoleIncl:
      s.roles.insert(a.lhs);
      s.roles.insert(a.sup);
      return s;
  }
  s.merge(signature_of(a.rhs));
  return s;
}

Signature signature_of(const Terminology& t) {
  Signature s;
  for (const auto& ax : t.axioms()) s.merge(signature_of(ax));
  s.roles.insert(t.declared_roles().begin(), t.declared_roles().end());
  return s;
}

Signature signature_of(const ABox& a) {
  Signature s;
  for (const auto& c : a.concept_assertions())
    if (!c.name.empty()) s.concepts.insert(c.name);
  for (const auto& r : a.role_assertions()) s.roles.insert(r.role);
  return s;
}

bool is_acyclic(const Terminology& t) {
  // Depth-first search over A -> B for B in sig(rhs of A's definition).
  std::unordered_map<Name, std::vector<Name>> succ;
  for (const auto& ax : t.axioms()) {
    if (!ax.defines_concept()) continue;
    auto sig = signature_of(ax.rhs);
    succ[ax.lhs].assign(sig.concepts.begin(), sig.concepts.end());
  }
  enum Mark { White, Grey, Black };
  std::unordered_map<Name, Mark> mark;
  for (const auto& [start, _] : succ) {
    if (mark[start] != White) continue;
    std::vector<std::pair<Name, std::size_t>> stack{{start, 0}};
    mark[start] = Grey;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      auto it = succ.find(node);
      if (it == succ.end() || idx >= it->second.size()) {
        mark[node] = Black;
        stack.pop_back();
        continue;
      }
      const Name next = it->second[idx++];
      Mark m = mark[next];
      if (m == Grey) return false;
      if (m == White) {
        mark[next] = Grey;
        stack.emplace_back(next, 0);
      }
    }
  }
  return true;
}

bool is_conjunctive(const Terminology& t, const Name& a) {
  const Axiom* d = t.definition_of(a);
  if (d == nullptr || d->kind != AxiomKind::EqAtom) return false;
  return d->rhs.kind() != ConceptKind::Exists;
}

std::set<Name> non_conj(const Terminology& t, const Name& a) {
  if (!is_conjunctive(t, a)) return {a};
  std::set<Name> out;
  for (const auto& c : t.definition_of(a)->rhs.conjuncts())
    if (c.is_atom()) out.insert(c.name());
  return out;
}

}  // namespace ldiff
