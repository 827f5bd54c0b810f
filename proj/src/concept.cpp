#include "ldiff/concept.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ldiff {

struct Concept::Node {
  ConceptKind kind = ConceptKind::Top;
  Name name;
  std::vector<Name> roles;
  std::vector<Concept> children;
  std::size_t size = 1;
};

namespace {

constexpr std::size_t kSizeCap = std::numeric_limits<std::size_t>::max() / 2;

std::size_t add_sat(std::size_t a, std::size_t b) {
  return (a > kSizeCap - b) ? kSizeCap : a + b;
}

const std::shared_ptr<const Concept::Node>& top_node() {
  static const auto n = std::make_shared<const Concept::Node>();
  return n;
}

}  // namespace

void Signature::merge(const Signature& o) {
  concepts.insert(o.concepts.begin(), o.concepts.end());
  roles.insert(o.roles.begin(), o.roles.end());
}

Signature intersect(const Signature& a, const Signature& b) {
  Signature s;
  std::set_intersection(a.concepts.begin(), a.concepts.end(), b.concepts.begin(),
                        b.concepts.end(), std::inserter(s.concepts, s.concepts.end()));
  std::set_intersection(a.roles.begin(), a.roles.end(), b.roles.begin(), b.roles.end(),
                        std::inserter(s.roles, s.roles.end()));
  return s;
}

Concept::Concept() : node_(top_node()) {}

Concept Concept::top() { return Concept(); }

Concept Concept::atom(const Name& a) {
  if (a.empty()) throw std::invalid_argument("empty concept name");
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::Atom;
  n->name = a;
  return Concept(std::move(n));
}

Concept Concept::conj(std::vector<Concept> parts) {
  std::vector<Concept> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.kind() == ConceptKind::Top) continue;
    if (p.kind() == ConceptKind::Conj) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(p));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::Conj;
  n->size = 1;
  for (const auto& c : flat) n->size = add_sat(n->size, c.size());
  n->children = std::move(flat);
  return Concept(std::move(n));
}

Concept Concept::conj(const Concept& a, const Concept& b) { return conj(std::vector<Concept>{a, b}); }

Concept Concept::exists(const Name& role, const Concept& filler) {
  if (role.empty()) throw std::invalid_argument("empty role name");
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::Exists;
  n->name = role;
  n->children = {filler};
  n->size = add_sat(1, filler.size());
  return Concept(std::move(n));
}

Concept Concept::ran(const Name& role) {
  if (role.empty()) throw std::invalid_argument("empty role name");
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::Ran;
  n->name = role;
  return Concept(std::move(n));
}

Concept Concept::exists_roles(std::vector<Name> roles, const Concept& filler) {
  std::sort(roles.begin(), roles.end());
  roles.erase(std::unique(roles.begin(), roles.end()), roles.end());
  if (roles.empty()) throw std::invalid_argument("role conjunction needs a role");
  if (roles.size() == 1) return exists(roles.front(), filler);
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::ExistsRoles;
  n->roles = std::move(roles);
  n->children = {filler};
  n->size = add_sat(1, filler.size());
  return Concept(std::move(n));
}

Concept Concept::exists_universal(const Concept& filler) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::ExistsUniversal;
  n->children = {filler};
  n->size = add_sat(1, filler.size());
  return Concept(std::move(n));
}

ConceptKind Concept::kind() const { return node_->kind; }
const Name& Concept::name() const { return node_->name; }
const std::vector<Name>& Concept::roles() const { return node_->roles; }
const std::vector<Concept>& Concept::children() const { return node_->children; }

const Concept& Concept::filler() const {
  if (node_->children.size() != 1 || node_->kind == ConceptKind::Conj)
    throw std::logic_error("concept has no filler");
  return node_->children.front();
}

std::vector<Concept> Concept::conjuncts() const {
  if (is_top()) return {};
  if (kind() == ConceptKind::Conj) return children();
  return {*this};
}

std::size_t Concept::size() const { return node_->size; }

int compare(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  const auto& ra = a.roles();
  const auto& rb = b.roles();
  for (std::size_t i = 0; i < ra.size() && i < rb.size(); ++i) {
    if (int c = ra[i].compare(rb[i]); c != 0) return c < 0 ? -1 : 1;
  }
  if (ra.size() != rb.size()) return ra.size() < rb.size() ? -1 : 1;
  const auto& ca = a.children();
  const auto& cb = b.children();
  for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
    if (int c = compare(ca[i], cb[i]); c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

namespace {

// The helpers below walk the shared DAG once per node, so large shared
// witness concepts stay cheap.
bool has_kind(const Concept& c, ConceptKind k, std::unordered_set<const void*>& seen) {
  if (!seen.insert(c.id()).second) return false;
  if (c.kind() == k) return true;
  for (const auto& ch : c.children())
    if (has_kind(ch, k, seen)) return true;
  return false;
}

bool has_kind(const Concept& c, ConceptKind k) {
  std::unordered_set<const void*> seen;
  return has_kind(c, k, seen);
}

void collect_sig(const Concept& c, Signature& s, std::unordered_set<const void*>& seen) {
  if (!seen.insert(c.id()).second) return;
  switch (c.kind()) {
    case ConceptKind::Atom: s.concepts.insert(c.name()); break;
    case ConceptKind::Exists:
    case ConceptKind::Ran: s.roles.insert(c.name()); break;
    case ConceptKind::ExistsRoles: s.roles.insert(c.roles().begin(), c.roles().end()); break;
    default: break;
  }
  for (const auto& ch : c.children()) collect_sig(ch, s, seen);
}

std::size_t depth_of(const Concept& c, std::unordered_map<const void*, std::size_t>& memo) {
  if (auto it = memo.find(c.id()); it != memo.end()) return it->second;
  std::size_t d = 0;
  for (const auto& ch : c.children()) d = std::max(d, depth_of(ch, memo));
  switch (c.kind()) {
    case ConceptKind::Exists:
    case ConceptKind::ExistsRoles:
    case ConceptKind::ExistsUniversal: ++d; break;
    default: break;
  }
  memo.emplace(c.id(), d);
  return d;
}

}  // namespace

bool is_el(const Concept& c) {
  return !has_kind(c, ConceptKind::Ran) && !has_kind(c, ConceptKind::ExistsRoles) &&
         !has_kind(c, ConceptKind::ExistsUniversal);
}

bool is_c_ran(const Concept& c) {
  return !has_kind(c, ConceptKind::ExistsRoles) && !has_kind(c, ConceptKind::ExistsUniversal);
}

bool is_c_and_u(const Concept& c) { return !has_kind(c, ConceptKind::Ran); }

Signature signature_of(const Concept& c) {
  Signature s;
  std::unordered_set<const void*> seen;
  collect_sig(c, s, seen);
  return s;
}

std::size_t role_depth(const Concept& c) {
  std::unordered_map<const void*, std::size_t> memo;
  return depth_of(c, memo);
}

}  // namespace ldiff
