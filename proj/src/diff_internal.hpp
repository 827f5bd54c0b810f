#pragma once

// Shared between the diff sources; not installed.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ldiff/diff.hpp"

namespace ldiff::detail {

// Per-individual content of the witness ABox of a terminology.
class WitnessAboxBuilder {
 public:
  struct Node {
    std::vector<Name> labels;    // concept assertions
    std::vector<Name> in_roles;  // r(xi_Sigma, xi_B)
    std::vector<std::pair<Name, std::optional<Name>>> out;  // r(xi_B, xi_Sigma) for nullopt
    bool exists = false;
  };

  WitnessAboxBuilder(const NormalizedTerminology& t, const SubsumptionIndex& idx, const Signature& sigma,
                     WitnessAboxVariant variant);

  const std::map<Name, Node>& nodes() const { return nodes_; }
  bool exists(const Name& b) const;
  bool sigma_exists() const { return !sigma_.empty(); }
  const Signature& sigma() const { return sigma_; }

 private:
  Signature sigma_;
  std::map<Name, Node> nodes_;
};

// Saturation of t1 over a compact equivalent of the witness ABox of t2,
// optionally role-split. Edges from xi_Sigma into the other individuals are
// replaced by edges from a label-free individual, and only the individuals
// reachable from the roots are kept.
class WitnessAboxModel {
 public:
  WitnessAboxModel(const DiffContext& c, const std::set<Name>& roots, bool role_split);

  const ABox& abox() const { return abox_; }
  // Individuals standing for xi_B (one per copy when role-split).
  const std::vector<Name>& points(const Name& b) const;
  // An individual of xi_B labelled a by the saturation, if any.
  std::optional<Name> entailing_point(const Name& a, const Name& b);

 private:
  WitnessAboxBuilder builder_;
  ABox abox_;
  std::map<Name, std::vector<Name>> points_;
  std::optional<Saturation> sat_;
};

inline const Name kDummyIndividual = "xi:in";

// Conjuncts of c with ran(s) directly below Es removed (redundant there).
Concept strip_redundant_ran(const Concept& c);

// Greedy removal of assertions while keep holds.
ABox minimize_abox(const ABox& a, const std::function<bool(const ABox&)>& keep);

// The ABox part reachable (both ways) from the individual.
ABox connected_part(const ABox& a, const Name& individual);

}  // namespace ldiff::detail
