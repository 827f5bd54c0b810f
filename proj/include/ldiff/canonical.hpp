#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ldiff/reasoner.hpp"

namespace ldiff {

struct Element {
  // Named: an ABox individual. Aux: the element x_{ran(r),D} (filler Top for
  // D = Top). Context: a name or domain context of a context model.
  enum class Kind { Named, Aux, Context };
  Kind kind = Kind::Named;
  Name individual;  // Named; a description for Context
  Name role;        // Aux
  Concept filler;   // Aux
};

class Interpretation {
 public:
  int add_element(Element e = {});
  void add_label(int d, const Name& a);
  void add_edge(int d, const Name& r, int e);
  void set_individual(const Name& a, int d);

  std::size_t size() const { return elements_.size(); }
  const Element& element(int d) const { return elements_[d]; }
  const std::set<Name>& labels(int d) const { return labels_[d]; }
  bool has_label(int d, const Name& a) const { return labels_[d].count(a) != 0; }
  // Sorted by (role, target).
  const std::set<std::pair<Name, int>>& edges(int d) const { return edges_[d]; }
  bool has_edge(int d, const Name& r, int e) const { return edges_[d].count({r, e}) != 0; }
  const std::map<Name, int>& individuals() const { return individuals_; }
  std::optional<int> individual(const Name& a) const;

 private:
  std::vector<Element> elements_;
  std::vector<std::set<Name>> labels_;
  std::vector<std::set<std::pair<Name, int>>> edges_;
  std::map<Name, int> individuals_;
};

// Memoized evaluation of concepts of every family on one interpretation.
class ConceptEvaluator {
 public:
  explicit ConceptEvaluator(const Interpretation& i) : i_(i) {}
  const std::vector<bool>& extension(const Concept& c);
  bool holds(int d, const Concept& c) { return extension(c)[d]; }

 private:
  const std::vector<bool>& incoming(const Name& r);

  const Interpretation& i_;
  std::unordered_map<const void*, std::pair<Concept, std::vector<bool>>> memo_;
  std::map<Name, std::vector<bool>> incoming_;
};

std::vector<bool> eval_concept(const Interpretation& i, const Concept& c);

struct KnowledgeBase {
  NormalizedTerminology terminology;
  ABox abox;
};

// The classification saturation extended by the assertions of abox.
Saturation saturate_abox(const SubsumptionIndex& idx, const ABox& abox);

// Elements for every node reachable from seeds, edges closed under super
// roles. node_to_element, when given, receives the node numbering.
Interpretation export_interpretation(const Saturation& s, const std::vector<int>& seeds,
                                     std::vector<int>* node_to_element = nullptr);

// W_K over the grid rol(T) x (names of T and Top).
Interpretation build_generating(const KnowledgeBase& k, const SubsumptionIndex& idx);
// The part of W_K reachable from obj(A); aux elements created on demand.
Interpretation build_canonical(const KnowledgeBase& k, const SubsumptionIndex& idx);
Interpretation build_canonical(const SubsumptionIndex& idx, const ABox& abox);

// Throws std::invalid_argument if a is not an individual of the ABox.
bool instance_check(const KnowledgeBase& k, const SubsumptionIndex& idx, const Concept& c, const Name& a);

struct ConceptABox {
  ABox abox;
  Name root;
};

// A_C with one individual per path of C and the individual a_ran.
ConceptABox concept_to_abox(const Concept& c);

// C^{n,ran}_{A,a}.
Concept abox_neighborhood_concept(const ABox& a, const Name& individual, std::size_t n);

// One interpretation holding the canonical models of (T, {A(a)}) for every
// concept name A and of (T, {r(a,b)}) for every role r of T and of extra.
struct ContextModel {
  Interpretation interp;
  std::map<Name, int> name_point;    // a in (T, {A(a)})
  std::map<Name, int> domain_point;  // a in (T, {r(a,b)})
  std::map<Name, int> range_point;   // b in (T, {r(a,b)})
};

ContextModel context_model(const SubsumptionIndex& idx, const Signature& extra);

}  // namespace ldiff
