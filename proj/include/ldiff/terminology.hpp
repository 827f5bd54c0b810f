#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ldiff/concept.hpp"

namespace ldiff {

// Thrown when a set of axioms violates the terminology shape.
class TerminologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AxiomKind { SubAtom, EqAtom, RangeRestr, DomainRestr, RoleIncl };

struct Axiom {
  AxiomKind kind = AxiomKind::SubAtom;
  Name lhs;    // concept name, or role name for Range/Domain/RoleIncl
  Name sup;    // RoleIncl only: the super role
  Concept rhs; // unused for RoleIncl

  static Axiom sub(const Name& a, const Concept& c) { return {AxiomKind::SubAtom, a, {}, c}; }
  static Axiom eq(const Name& a, const Concept& c) { return {AxiomKind::EqAtom, a, {}, c}; }
  static Axiom range(const Name& r, const Concept& c) { return {AxiomKind::RangeRestr, r, {}, c}; }
  static Axiom domain(const Name& r, const Concept& c) { return {AxiomKind::DomainRestr, r, {}, c}; }
  static Axiom role_incl(const Name& r, const Name& s) { return {AxiomKind::RoleIncl, r, s, {}}; }

  bool defines_concept() const { return kind == AxiomKind::SubAtom || kind == AxiomKind::EqAtom; }
};

int compare(const Axiom& a, const Axiom& b);
inline bool operator==(const Axiom& a, const Axiom& b) { return compare(a, b) == 0; }
inline bool operator<(const Axiom& a, const Axiom& b) { return compare(a, b) < 0; }

// A checked ELH^r terminology: every concept name is defined at most once and
// every right-hand side is an EL concept other than Top.
class Terminology {
 public:
  Terminology() = default;
  explicit Terminology(std::vector<Axiom> axioms, std::set<Name> declared_roles = {});

  const std::vector<Axiom>& axioms() const { return axioms_; }
  const std::set<Name>& declared_roles() const { return declared_roles_; }
  // The SubAtom/EqAtom axiom with left-hand side a, if any.
  const Axiom* definition_of(const Name& a) const;

  bool is_pseudo_primitive(const Name& a) const;
  bool is_primitive(const Name& a) const { return definition_of(a) == nullptr; }
  bool empty() const { return axioms_.empty(); }

 private:
  std::vector<Axiom> axioms_;
  std::set<Name> declared_roles_;
  std::map<Name, std::size_t> definition_index_;
};

// Axioms compared as sorted multisets.
bool same_axioms(const Terminology& a, const Terminology& b);

struct ConceptAssertion {
  Name name;  // concept name; empty means Top
  Name individual;
  auto operator<=>(const ConceptAssertion&) const = default;
};

struct RoleAssertion {
  Name role;
  Name from;
  Name to;
  auto operator<=>(const RoleAssertion&) const = default;
};

class ABox {
 public:
  void add_concept(const Name& name, const Name& individual);
  void add_top(const Name& individual) { add_concept({}, individual); }
  void add_role(const Name& role, const Name& from, const Name& to);

  const std::set<ConceptAssertion>& concept_assertions() const { return concepts_; }
  const std::set<RoleAssertion>& role_assertions() const { return roles_; }
  std::set<Name> obj() const;
  bool empty() const { return concepts_.empty() && roles_.empty(); }
  std::size_t size() const { return concepts_.size() + roles_.size(); }
  bool operator==(const ABox& o) const = default;

 private:
  std::set<ConceptAssertion> concepts_;
  std::set<RoleAssertion> roles_;
};

Signature signature_of(const Axiom& a);
Signature signature_of(const Terminology& t);
Signature signature_of(const ABox& a);

bool is_acyclic(const Terminology& t);

// {A} if A is non-conjunctive, the conjuncts of F if A == F with F a
// conjunction of names (a single name counts as a one-element conjunction).
std::set<Name> non_conj(const Terminology& t, const Name& a);
bool is_conjunctive(const Terminology& t, const Name& a);

}  // namespace ldiff
