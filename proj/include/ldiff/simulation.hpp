#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ldiff/canonical.hpp"

namespace ldiff {

enum class SimulationKind {
  Plain,         // Sigma-simulation: names and single roles
  Range,         // plus ran(r) for r in Sigma on both sides
  Intersection,  // successors matched on the full Sigma role set between them
};

struct SimulationOptions {
  bool extract_witness = true;
  std::size_t max_witness_size = 64;
};

struct SimulationResult {
  bool holds = true;
  std::optional<Concept> witness_concept;
  // The pruned witness exceeded max_witness_size and was omitted.
  bool witness_overflow = false;
};

// Membership of one element in a concept, memoized per (concept, element).
// ExistsUniversal ranges over universe when given, else over the domain.
class PointEvaluator {
 public:
  explicit PointEvaluator(const Interpretation& i, std::optional<std::vector<int>> universe = std::nullopt);
  bool holds(int d, const Concept& c);

 private:
  bool has_incoming(int d, const Name& r);

  const Interpretation& i_;
  std::optional<std::vector<int>> universe_;
  std::unordered_map<const void*, std::pair<Concept, std::unordered_map<int, bool>>> memo_;
  std::vector<std::vector<Name>> incoming_;
  bool incoming_ready_ = false;
};

// Greatest simulation between two interpretations, discovered on demand from
// the queried pairs. Answers are final; later queries extend the explored
// part of the product.
class SimulationSolver {
 public:
  SimulationSolver(const Interpretation& i1, const Interpretation& i2, const Signature& sigma, SimulationKind kind);

  bool simulates(int d, int e);
  // A concept true at d in i1 and false at e in i2 (unpruned); requires
  // !simulates(d, e).
  Concept separating_concept(int d, int e);

  std::size_t explored_pairs() const { return pairs_.size(); }

 private:
  struct Step {
    std::vector<int> roles;  // sorted Sigma role ids
    int target;
  };
  struct PairState {
    int d;
    int e;
    bool dead = false;
    bool propagated = false;
    int reason = -1;  // -1 atomic, else step index of d
    std::size_t counts = 0;  // offset into counts_
  };

  std::optional<Concept> atomic_difference(int d, int e) const;
  int find_or_add(int d, int e, std::vector<int>& fresh);
  void explore(int d, int e);

  const Interpretation& i1_;
  const Interpretation& i2_;
  SimulationKind kind_;
  std::vector<Name> role_names_;
  std::vector<std::vector<Name>> labels1_, labels2_;    // Sigma names, sorted
  std::vector<std::vector<int>> rans1_, rans2_;         // Sigma role ids with an incoming edge
  std::vector<std::vector<Step>> steps1_, steps2_;
  std::unordered_map<std::uint64_t, int> pair_ids_;
  std::vector<PairState> pairs_;
  std::vector<int> counts_;
  std::vector<std::vector<std::pair<int, int>>> parents_;  // child -> (parent, step)
  std::unordered_map<int, Concept> witness_memo_;
};

// Greedy weakening: drops conjuncts, replaces fillers by Top and drops roles
// from role conjunctions while keep holds. keep(c) must hold on entry.
Concept prune_concept(const Concept& c, const std::function<bool(const Concept&)>& keep);

std::vector<int> reachable(const Interpretation& i, int d);

SimulationResult sigma_simulation(const Interpretation& i1, int d, const Interpretation& i2, int e,
                                  const Signature& sigma, const SimulationOptions& opts = {});

SimulationResult range_simulation(const ABox& a1, const Name& x1, const ABox& a2, const Name& x2,
                                  const Signature& sigma, const SimulationOptions& opts = {});

SimulationResult global_intersection_simulation(const Interpretation& i1, int d, const Interpretation& i2, int e,
                                                const Signature& sigma, const SimulationOptions& opts = {});

// Interpretation with one element per individual and the assertions as is.
Interpretation abox_interpretation(const ABox& a);

// Shared by the pointed and batch forms of the global check: an element of
// universe1 without a simulating element in universe2, if any.
std::optional<int> element_without_image(SimulationSolver& s, const std::vector<int>& universe1,
                                         const std::vector<int>& universe2);
// Eu.(conjunction over e in universe2 of a concept separating d from e).
Concept global_separating_concept(SimulationSolver& s, int d, const std::vector<int>& universe2);

// Prunes a raw witness against the two points and applies the size cap.
SimulationResult finish_witness(const Concept& raw, PointEvaluator& left, int d, PointEvaluator& right, int e,
                                const SimulationOptions& opts);

}  // namespace ldiff
