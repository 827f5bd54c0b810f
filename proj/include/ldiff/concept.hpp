#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ldiff {

// Concept and role names are plain strings. The universal role is not a name;
// it only appears as the ExistsUniversal constructor.
using Name = std::string;

struct Signature {
  std::set<Name> concepts;
  std::set<Name> roles;

  bool has_concept(const Name& n) const { return concepts.count(n) != 0; }
  bool has_role(const Name& n) const { return roles.count(n) != 0; }
  bool empty() const { return concepts.empty() && roles.empty(); }
  void merge(const Signature& o);
  bool operator==(const Signature& o) const = default;
};

Signature intersect(const Signature& a, const Signature& b);

enum class ConceptKind { Top, Atom, Conj, Exists, Ran, ExistsRoles, ExistsUniversal };

// Immutable concept term with structural sharing. Conjunctions are kept
// flattened, sorted by the structural order, free of duplicates and of Top.
class Concept {
 public:
  Concept();  // Top

  static Concept top();
  static Concept atom(const Name& a);
  static Concept conj(std::vector<Concept> parts);
  static Concept conj(const Concept& a, const Concept& b);
  static Concept exists(const Name& role, const Concept& filler);
  static Concept ran(const Name& role);
  static Concept exists_roles(std::vector<Name> roles, const Concept& filler);
  static Concept exists_universal(const Concept& filler);

  ConceptKind kind() const;
  // Atom: concept name. Exists/Ran: role name.
  const Name& name() const;
  // ExistsRoles: sorted role set (size >= 2).
  const std::vector<Name>& roles() const;
  // Conj: the conjuncts. Exists/ExistsRoles/ExistsUniversal: one filler.
  const std::vector<Concept>& children() const;
  const Concept& filler() const;

  bool is_top() const { return kind() == ConceptKind::Top; }
  bool is_atom() const { return kind() == ConceptKind::Atom; }

  // Conjuncts viewed as a list: Top gives {}, a non-conjunction gives {*this}.
  std::vector<Concept> conjuncts() const;

  // Number of nodes of the tree unfolding (saturates at SIZE_MAX / 2).
  std::size_t size() const;
  // Identity of the shared node; stable while any copy is alive.
  const void* id() const { return node_.get(); }

  friend int compare(const Concept& a, const Concept& b);
  bool operator==(const Concept& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Concept& o) const { return compare(*this, o) != 0; }
  bool operator<(const Concept& o) const { return compare(*this, o) < 0; }

  struct Node;

 private:
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

int compare(const Concept& a, const Concept& b);

bool is_el(const Concept& c);        // no Ran, ExistsRoles, ExistsUniversal
bool is_c_ran(const Concept& c);     // no ExistsRoles, ExistsUniversal
bool is_c_and_u(const Concept& c);   // no Ran

Signature signature_of(const Concept& c);
std::size_t role_depth(const Concept& c);

}  // namespace ldiff
