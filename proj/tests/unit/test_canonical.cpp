#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ldiff/canonical.hpp"

namespace ldiff {
namespace {

Concept A(const std::string& n) { return Concept::atom(n); }

KnowledgeBase kb(const Terminology& t, const std::string& abox) { return {normalize(t), parse_abox(abox)}; }

TEST(BuildGenerating, EmptyTerminology) {
  KnowledgeBase k = kb(Terminology{}, "(instance a A)");
  Interpretation i = build_generating(k, classify(k.terminology));
  ASSERT_EQ(i.size(), 1u);
  EXPECT_TRUE(i.has_label(*i.individual("a"), "A"));
}

TEST(BuildGenerating, GridSize) {
  KnowledgeBase k = kb(fixtures::merged_successor().t1, "(instance a A)");
  Interpretation i = build_generating(k, classify(k.terminology));
  Signature sig = signature_of(k.terminology.terminology);
  EXPECT_EQ(i.size(), 1 + sig.roles.size() * (sig.concepts.size() + 1));
  std::size_t aux = 0;
  for (std::size_t d = 0; d < i.size(); ++d) aux += i.element(static_cast<int>(d)).kind == Element::Kind::Aux;
  EXPECT_EQ(aux, sig.roles.size() * (sig.concepts.size() + 1));
}

TEST(BuildCanonical, MergedSuccessorHasFourElements) {
  KnowledgeBase k = kb(fixtures::merged_successor().t1, "(instance a A)");
  Interpretation i = build_canonical(k, classify(k.terminology));
  ASSERT_EQ(i.size(), 4u);
  int a = *i.individual("a");
  ASSERT_EQ(i.edges(a).size(), 1u);
  int f0 = i.edges(a).begin()->second;
  EXPECT_EQ(i.element(f0).kind, Element::Kind::Aux);
  EXPECT_EQ(i.element(f0).role, "r");
  EXPECT_EQ(i.element(f0).filler, A("F0"));
  std::set<Concept> fillers;
  for (const auto& [r, e] : i.edges(f0)) fillers.insert(i.element(e).filler);
  EXPECT_EQ(fillers, (std::set<Concept>{A("B1"), A("B2")}));
  Concept c = Concept::exists("r", Concept::conj(Concept::exists("r", A("B1")), Concept::exists("r", A("B2"))));
  EXPECT_TRUE(eval_concept(i, c)[a]);
}

TEST(BuildCanonical, UnreachableAuxElementsAreAbsent) {
  KnowledgeBase k = kb(parse_terminology("(define-primitive-concept X (some q Y))\n(range q Z)"), "(instance a A)");
  Interpretation i = build_canonical(k, classify(k.terminology));
  EXPECT_EQ(i.size(), 1u);
  Interpretation w = build_generating(k, classify(k.terminology));
  EXPECT_GT(w.size(), 1u);
}

TEST(BuildCanonical, IsAModel) {
  KnowledgeBase k = kb(fixtures::range_conjunction().t1, "(related a c r)\n(related b c s)");
  Interpretation i = build_canonical(k, classify(k.terminology));
  int c = *i.individual("c");
  EXPECT_TRUE(i.has_label(c, "A1"));
  EXPECT_TRUE(i.has_label(c, "A2"));
  EXPECT_TRUE(i.has_label(c, "B"));
  EXPECT_FALSE(i.has_label(*i.individual("a"), "A1"));
}

TEST(EvalConcept, Basics) {
  Interpretation i;
  int d = i.add_element();
  int e = i.add_element();
  i.add_label(e, "B");
  i.add_edge(d, "r", e);
  i.add_edge(d, "s", e);
  EXPECT_EQ(eval_concept(i, Concept::top()), (std::vector<bool>{true, true}));
  EXPECT_EQ(eval_concept(i, Concept::exists("r", A("B"))), (std::vector<bool>{true, false}));
  EXPECT_EQ(eval_concept(i, Concept::ran("s")), (std::vector<bool>{false, true}));
  EXPECT_EQ(eval_concept(i, Concept::exists_roles({"r", "s"}, A("B"))), (std::vector<bool>{true, false}));
  EXPECT_EQ(eval_concept(i, Concept::exists_roles({"r", "t"}, Concept::top())), (std::vector<bool>{false, false}));
  EXPECT_EQ(eval_concept(i, Concept::exists_universal(A("B"))), (std::vector<bool>{true, true}));
  EXPECT_EQ(eval_concept(i, Concept::exists_universal(A("C"))), (std::vector<bool>{false, false}));
}

TEST(EvalConcept, RoleConjunctionOnCanonicalModels) {
  auto f = fixtures::shared_successor();
  Concept c = Concept::exists_roles({"r1", "r2"}, Concept::top());
  KnowledgeBase k1 = kb(f.t1, "(instance a A)");
  KnowledgeBase k2 = kb(f.t2, "(instance a A)");
  Interpretation i1 = build_canonical(k1, classify(k1.terminology));
  Interpretation i2 = build_canonical(k2, classify(k2.terminology));
  EXPECT_TRUE(eval_concept(i1, c)[*i1.individual("a")]);
  EXPECT_FALSE(eval_concept(i2, c)[*i2.individual("a")]);
}

TEST(InstanceCheck, RangeConjunction) {
  auto f = fixtures::range_conjunction();
  KnowledgeBase k1 = kb(f.t1, "(related a c r)\n(related b c s)");
  KnowledgeBase k2 = kb(f.t2, "(related a c r)\n(related b c s)");
  EXPECT_TRUE(instance_check(k1, classify(k1.terminology), A("B"), "c"));
  EXPECT_FALSE(instance_check(k2, classify(k2.terminology), A("B"), "c"));
  KnowledgeBase k3 = kb(Terminology{}, "(instance a A)");
  EXPECT_TRUE(instance_check(k3, classify(k3.terminology), A("A"), "a"));
  EXPECT_THROW(instance_check(k3, classify(k3.terminology), A("A"), "zz"), std::invalid_argument);
}

TEST(ConceptToABox, Shapes) {
  ConceptABox a = concept_to_abox(A("A"));
  EXPECT_EQ(a.abox, parse_abox("(instance a_C A)"));
  EXPECT_EQ(a.root, "a_C");
  EXPECT_EQ(concept_to_abox(Concept::ran("r")).abox, parse_abox("(related a_ran a_C r)"));
  EXPECT_EQ(concept_to_abox(Concept::top()).abox, parse_abox("(instance a_C top)"));
}

TEST(ConceptToABox, DistinctOccurrencesGetDistinctIndividuals) {
  Concept av = Concept::conj(A("A"), Concept::ran("v"));
  Concept c = Concept::conj(Concept::exists("r", av),
                            Concept::exists("s", Concept::conj(Concept::exists("t", av),
                                                               Concept::exists("t", Concept::conj(A("B"), Concept::ran("s"))))));
  ConceptABox ca = concept_to_abox(c);
  std::set<Name> v_targets, a_members;
  for (const auto& r : ca.abox.role_assertions())
    if (r.role == "v") {
      EXPECT_EQ(r.from, "a_ran");
      v_targets.insert(r.to);
    }
  for (const auto& x : ca.abox.concept_assertions())
    if (x.name == "A") a_members.insert(x.individual);
  EXPECT_EQ(v_targets.size(), 2u);
  EXPECT_EQ(v_targets, a_members);
  EXPECT_EQ(ca.abox.obj().size(), 6u);  // root, three path individuals below s, one below r, a_ran
}

TEST(NeighborhoodConcept, Recurrence) {
  ABox a = parse_abox("(related a c r)\n(related b c s)");
  EXPECT_EQ(abox_neighborhood_concept(a, "c", 0), Concept::conj(Concept::ran("r"), Concept::ran("s")));
  ABox b = parse_abox("(instance x top)");
  EXPECT_EQ(abox_neighborhood_concept(b, "x", 3), Concept::top());
  ABox c = parse_abox("(instance a A)\n(related a b r)\n(instance b B)");
  EXPECT_EQ(abox_neighborhood_concept(c, "a", 1), Concept::conj(A("A"), Concept::exists("r", Concept::conj(A("B"), Concept::ran("r")))));
  EXPECT_THROW(abox_neighborhood_concept(c, "zz", 1), std::invalid_argument);
}

TEST(ContextModel, PointsMatchSingletonCanonicalModels) {
  auto f = fixtures::merged_successor();
  auto idx = classify(normalize(f.t1), f.sigma);
  ContextModel m = context_model(idx, f.sigma);
  Concept c = Concept::exists("r", Concept::conj(Concept::exists("r", A("B1")), Concept::exists("r", A("B2"))));
  EXPECT_TRUE(eval_concept(m.interp, c)[m.name_point.at("A")]);
  EXPECT_FALSE(eval_concept(m.interp, c)[m.name_point.at("B1")]);
  EXPECT_TRUE(m.domain_point.count("r"));
}

}  // namespace
}  // namespace ldiff
