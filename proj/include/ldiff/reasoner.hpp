#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ldiff/normalize.hpp"

namespace ldiff {

// Rule tables compiled from a normalized terminology. Names and roles are
// interned; ids not known to the tables carry no rules.
struct SaturationTables;

// Completion-style saturation over nodes. A node is an ABox individual or a
// context: a concept name A, the domain of r (Er.Top), or ran(r) and D for a
// name D or Top. Labels of context nodes are the names entailed by the
// context concept; labels of individuals are the names they are instances of.
class Saturation {
 public:
  enum class NodeKind { Individual, Name, Domain, Range };
  struct NodeInfo {
    NodeKind kind = NodeKind::Individual;
    int role = -1;   // Domain/Range
    int name = -1;   // Name: A; Range: D or -1 for Top
    Name individual; // Individual
  };

  explicit Saturation(const Terminology& normalized);

  // Contexts; created on demand (call run() before reading labels).
  int name_context(const Name& a);
  int domain_context(const Name& r);
  int range_context(const Name& r, const std::optional<Name>& filler);

  int individual(const Name& a);
  void assert_concept(int node, const Name& a);
  void assert_role(const Name& r, int from, int to);

  void run();

  std::size_t node_count() const { return info_.size(); }
  const NodeInfo& info(int node) const { return info_[node]; }
  bool has_label(int node, const Name& a) const;
  std::vector<Name> labels(int node) const;
  // Told edges (role, target); closure under super roles is left to callers.
  const std::vector<std::pair<int, int>>& edges(int node) const { return out_[node]; }
  std::vector<Name> super_roles(const Name& r) const;
  bool role_sub(const Name& r, const Name& s) const;

  const Name& name_of(int id) const;
  const Name& role_of(int id) const;
  int find_name(const Name& a) const;
  int find_role(const Name& r) const;
  // Concept and role names of the compiled terminology.
  std::vector<Name> terminology_names() const;
  std::vector<Name> terminology_roles() const;
  // The told existentials (r, D or Top) of the terminology.
  std::vector<std::pair<Name, std::optional<Name>>> told_existentials() const;

 private:
  enum class Event : std::uint8_t { Label, Edge, Ran };
  struct Item {
    Event kind;
    int node;
    int a;  // name, role
    int b;  // target (Edge)
  };

  int intern_name(const Name& a);
  int intern_role(const Name& r);
  int new_node(NodeInfo info);
  int context_for(int role, int filler);
  bool has(const std::vector<std::vector<std::uint64_t>>& bits, int node, int id) const;
  static bool set_bit(std::vector<std::uint64_t>& bits, int id);
  void add_label(int node, int a);
  void add_edge(int node, int role, int target);
  void add_ran(int node, int role);
  void fire_label(int node, int a);
  void fire_edge(int node, int role, int target);
  void fire_ran(int node, int role);
  void existential_definitions(int node, int role, int filler_name);
  bool is_sub(int r, int s) const;
  const std::vector<int>& sup(int r) const;

  std::shared_ptr<const SaturationTables> t_;
  std::vector<Name> extra_names_;
  std::unordered_map<Name, int> extra_name_ids_;
  std::vector<Name> extra_roles_;
  std::unordered_map<Name, int> extra_role_ids_;
  std::vector<std::vector<int>> extra_sup_;

  std::vector<NodeInfo> info_;
  std::vector<std::vector<std::uint64_t>> label_bits_;
  std::vector<std::vector<int>> label_list_;
  std::vector<std::vector<std::uint64_t>> ran_bits_;
  std::vector<std::vector<std::pair<int, int>>> out_;
  std::vector<std::vector<std::pair<int, int>>> in_;  // (source, role)
  std::unordered_set<std::uint64_t> edge_keys_;
  std::map<std::tuple<int, int, int>, int> contexts_;  // (kind, role, name) -> node
  std::map<Name, int> individuals_;
  std::vector<Item> queue_;
};

class SubsumptionIndex {
 public:
  SubsumptionIndex() = default;

  const NormalizedTerminology& source() const { return *source_; }
  const Saturation& saturation() const { return *sat_; }
  std::shared_ptr<const Saturation> saturation_ptr() const { return sat_; }

  // T |= A <= B. Reflexive on every name.
  bool subsumes(const Name& a, const Name& b) const;
  // T |= Er.Top <= A and T |= ran(r) <= A.
  bool entails_domain(const Name& r, const Name& a) const;
  bool entails_range(const Name& r, const Name& a) const;
  bool entails_role(const Name& r, const Name& s) const;

  // Supersets (sorted) as stored; names outside T only subsume themselves.
  std::set<Name> supers(const Name& a) const;
  std::set<Name> domain_supers(const Name& r) const;
  std::set<Name> range_supers(const Name& r) const;

  // Names B with T |= B <= A (all of them, not restricted to a signature).
  std::set<Name> subs(const Name& a) const;
  std::set<Name> domain_subs(const Name& a) const;  // roles r: Er.Top <= A
  std::set<Name> range_subs(const Name& a) const;   // roles r: ran(r) <= A
  std::set<Name> role_subs(const Name& r) const;    // roles s: s <= r

  friend SubsumptionIndex classify(const NormalizedTerminology& t, const Signature& extra);

 private:
  std::shared_ptr<const NormalizedTerminology> source_;
  std::shared_ptr<const Saturation> sat_;
  std::map<Name, std::set<Name>> supers_;
  std::map<Name, std::set<Name>> dom_supers_;
  std::map<Name, std::set<Name>> ran_supers_;
  std::map<Name, std::set<Name>> role_supers_;
  std::map<Name, std::set<Name>> subs_;
  std::map<Name, std::set<Name>> dom_subs_;
  std::map<Name, std::set<Name>> ran_subs_;
  std::map<Name, std::set<Name>> role_subs_;
};

// Classifies T; contexts are also created for the names and roles of extra.
SubsumptionIndex classify(const NormalizedTerminology& t, const Signature& extra = {});

struct PreSets {
  std::set<Name> pre_c;
  std::set<Name> pre_dom;
  std::set<Name> pre_ran;
};

PreSets pre_sets(const SubsumptionIndex& idx, const Signature& sigma, const Name& a);
std::set<Name> pre_role(const SubsumptionIndex& idx, const Signature& sigma, const Name& r);

bool entails_role(const NormalizedTerminology& t, const Name& r, const Name& s);

// T |= lhs <= rhs for lhs in C^ran and rhs in C^{and,u}. Throws
// std::invalid_argument on a family violation.
bool entails_subsumption(const SubsumptionIndex& idx, const Concept& lhs, const Concept& rhs);
bool entails_subsumption(const NormalizedTerminology& t, const Concept& lhs, const Concept& rhs);

}  // namespace ldiff
