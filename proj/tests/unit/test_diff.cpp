#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ldiff/diff.hpp"

namespace ldiff {
namespace {

Concept A(const std::string& n) { return Concept::atom(n); }

using Names = std::set<Name>;

const std::vector<Mode> kModes{Mode::Concept, Mode::Instance, Mode::Query};

WitnessReport diff_of(const fixtures::Pair& p, bool examples = false) {
  DiffOptions o;
  o.examples = examples;
  return compute_diff(p.t1, p.t2, p.sigma, o);
}

TEST(RoleWitnesses, SubRoleOnlyInFirst) {
  auto c = make_context(parse_terminology("(define-primitive-role s :parent r)\n"), Terminology{},
                        parse_signature("role r\nrole s\n"));
  std::set<std::pair<Name, Name>> expected{{"s", "r"}};
  EXPECT_EQ(role_witnesses(c.idx1, c.idx2, c.sigma), expected);
  EXPECT_TRUE(role_witnesses(c.idx2, c.idx1, c.sigma).empty());
}

TEST(RoleWitnesses, RolesOutsideSigmaAreIgnored) {
  auto p = fixtures::shared_successor();
  auto c = make_context(p.t1, p.t2, p.sigma);
  EXPECT_TRUE(role_witnesses(c.idx1, c.idx2, c.sigma).empty());
  EXPECT_FALSE(role_witnesses(c.idx1, c.idx2, c.sigma, false).empty());
}

TEST(WitnessAbox, EmptyTerminologyEL) {
  auto t = normalize(Terminology{});
  Signature sig = parse_signature("concept A\nconcept B\nrole r\n");
  ABox a = build_witness_abox(t, classify(t, sig), sig, WitnessAboxVariant::EL);
  ABox expected = parse_abox(
      "(instance xi_B A)\n(instance xi_A B)\n(related xi_A xi:Sigma r)\n(related xi_B xi:Sigma r)\n"
      "(instance xi:Sigma A)\n(instance xi:Sigma B)\n(related xi:Sigma xi:Sigma r)\n");
  EXPECT_EQ(a, expected) << render_abox(a);
}

TEST(WitnessAbox, CyclicDefinitionEL) {
  auto t = normalize(parse_terminology("(define-concept A (some r A))\n"));
  Signature sig = parse_signature("concept A\nconcept B\nrole r\n");
  ABox a = build_witness_abox(t, classify(t, sig), sig, WitnessAboxVariant::EL);
  ABox expected = parse_abox(
      "(instance xi_B A)\n(instance xi_A B)\n(related xi_A xi_A r)\n(related xi_B xi:Sigma r)\n"
      "(instance xi:Sigma A)\n(instance xi:Sigma B)\n(related xi:Sigma xi:Sigma r)\n");
  EXPECT_EQ(a, expected) << render_abox(a);
}

TEST(WitnessAbox, ConjunctiveNamesHaveNoIndividual) {
  auto t = normalize(parse_terminology("(define-concept A (and B1 B2))\n"));
  Signature sig = parse_signature("concept A\nconcept B1\nconcept B2\n");
  ABox a = build_witness_abox(t, classify(t, sig), sig, WitnessAboxVariant::EL);
  ABox expected = parse_abox(
      "(instance xi_B1 B2)\n(instance xi_B2 B1)\n"
      "(instance xi:Sigma A)\n(instance xi:Sigma B1)\n(instance xi:Sigma B2)\n");
  EXPECT_EQ(a, expected) << render_abox(a);
}

TEST(WitnessAbox, RangeVariantSevenAssertions) {
  auto t = normalize(Terminology{});
  Signature sig = parse_signature("concept B\nrole r\nrole s\n");
  ABox a = build_witness_abox(t, classify(t, sig), sig);
  ABox expected = parse_abox(
      "(instance xi:Sigma B)\n(related xi:Sigma xi:Sigma r)\n(related xi:Sigma xi:Sigma s)\n"
      "(related xi_B xi:Sigma r)\n(related xi_B xi:Sigma s)\n(related xi:Sigma xi_B r)\n"
      "(related xi:Sigma xi_B s)\n");
  EXPECT_EQ(a, expected) << render_abox(a);
}

TEST(RoleSplitting, TwoIncomingRoles) {
  ABox a = parse_abox("(related a c r)\n(related b c s)\n");
  ABox expected = parse_abox("(related a_r c_r r)\n(related a_s c_r r)\n(related b_r c_s s)\n(related b_s c_s s)\n");
  ABox u = role_splitting_unfold(a);
  EXPECT_EQ(u, expected) << render_abox(u);
  auto p = fixtures::range_conjunction();
  auto idx = classify(normalize(p.t1));
  KnowledgeBase k{normalize(p.t1), u};
  EXPECT_FALSE(instance_check(k, idx, A("B"), "c_r"));
  EXPECT_FALSE(instance_check(k, idx, A("B"), "c_s"));
  KnowledgeBase plain{normalize(p.t1), a};
  EXPECT_TRUE(instance_check(plain, idx, A("B"), "c"));
}

TEST(RoleSplitting, SingleRole) {
  ABox u = role_splitting_unfold(parse_abox("(related a b r)\n"));
  EXPECT_EQ(u, parse_abox("(related a_r b_r r)\n"));
  EXPECT_THROW(role_splitting_unfold(parse_abox("(instance a A)\n")), std::invalid_argument);
}

TEST(NotWitness, BinaryTreeTable) {
  auto p = fixtures::binary_tree_normalized(2);
  auto c = make_context(p.t1, p.t2, p.sigma);
  NotWitnessTable t(c, WitnessAboxVariant::EL);
  NotWitnessTable r(c, WitnessAboxVariant::ELHr);
  Signature sig1 = signature_of(p.t1);
  sig1.merge(p.sigma);
  for (const auto& x : sig1.concepts) {
    Names expected = x == "A0" || x == "B0" ? Names{"A0"} : Names{};
    EXPECT_EQ(t.get(x), expected) << x;
    EXPECT_EQ(r.get(x), expected) << x;
  }
  EXPECT_EQ(t.rhs_witnesses(), Names{"A1"});
}

TEST(NotWitness, AllPropagatesForUnconstrainedNames) {
  auto c = make_context(parse_terminology("(define-primitive-concept X Y)\n"), Terminology{},
                        parse_signature("concept A\n"));
  NotWitnessTable t(c, WitnessAboxVariant::ELHr);
  EXPECT_TRUE(t.contains("Y", kAll));
  EXPECT_FALSE(t.contains("A", kAll));
}

TEST(NotWitness, RangeWitness) {
  auto p = fixtures::range_conjunction();
  auto c = make_context(p.t1, p.t2, p.sigma);
  NotWitnessTable t(c, WitnessAboxVariant::ELHr);
  EXPECT_FALSE(t.contains("B", "B"));
  EXPECT_EQ(t.rhs_witnesses(), Names{"B"});
  EXPECT_THROW(NotWitnessTable(c, WitnessAboxVariant::EL), std::invalid_argument);
}

TEST(NotWitness, CyclicInputIsRejected) {
  auto t = parse_terminology("(define-concept A (some r A))\n");
  auto c = make_context(t, Terminology{}, parse_signature("concept A\nrole r\n"));
  EXPECT_THROW(NotWitnessTable(c, WitnessAboxVariant::ELHr), CyclicTerminologyError);
  DiffOptions o;
  o.strategy = RhsStrategy::NotWitness;
  EXPECT_THROW(compute_diff(t, Terminology{}, c.sigma, o), CyclicTerminologyError);
}

TEST(RhsWitnesses, StrategiesAgreeOnExamples) {
  for (const auto& p : {fixtures::range_conjunction(), fixtures::binary_tree(2), fixtures::binary_tree_normalized(3),
                        fixtures::merged_successor()}) {
    auto c = make_context(p.t1, p.t2, p.sigma);
    EXPECT_EQ(rhs_witnesses_instance(c, RhsStrategy::NotWitness), rhs_witnesses_instance(c, RhsStrategy::ABox));
  }
}

TEST(RhsWitnesses, ConceptModeFiltersRangeOnlyDifference) {
  auto p = fixtures::range_conjunction();
  auto c = make_context(p.t1, p.t2, p.sigma);
  EXPECT_EQ(rhs_witnesses_instance(c), Names{"B"});
  EXPECT_TRUE(rhs_witnesses_concept(c).empty());
}

TEST(Noimply, EmptyTerminology) {
  auto t = normalize(Terminology{});
  Signature sig = parse_signature("concept A\nconcept B\nrole r\n");
  auto idx = classify(t, sig);
  EXPECT_EQ(noimply_cover(t, idx, sig, "A", 0), std::set<Concept>{A("B")});
  std::set<Concept> one{Concept::conj(A("B"), Concept::exists("r", Concept::conj(A("A"), A("B"))))};
  EXPECT_EQ(noimply_cover(t, idx, sig, "A", 1), one);
}

TEST(Noimply, CyclicDefinition) {
  auto t = normalize(parse_terminology("(define-concept A (some r A))\n"));
  Signature sig = parse_signature("concept A\nconcept B\nrole r\n");
  auto idx = classify(t, sig);
  EXPECT_EQ(noimply_cover(t, idx, sig, "A", 0), std::set<Concept>{A("B")});
  std::set<Concept> one{Concept::conj(A("B"), Concept::exists("r", A("B")))};
  EXPECT_EQ(noimply_cover(t, idx, sig, "A", 1), one);
}

TEST(Noimply, ConjunctiveDefinition) {
  auto t = normalize(parse_terminology("(define-concept A (and B1 B2))\n"));
  Signature sig = parse_signature("concept A\nconcept B1\nconcept B2\n");
  auto idx = classify(t, sig);
  for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(noimply_cover(t, idx, sig, "A", n), (std::set<Concept>{A("B1"), A("B2")}));
}

TEST(Diff, RangeConjunctionMatrix) {
  auto r = diff_of(fixtures::range_conjunction(), true);
  for (auto d : {Direction::Forward, Direction::Backward}) EXPECT_TRUE(r.at(d, Mode::Concept).empty());
  for (auto m : {Mode::Instance, Mode::Query}) {
    EXPECT_EQ(r.at(Direction::Forward, m).rhs, Names{"B"});
    EXPECT_TRUE(r.at(Direction::Forward, m).lhs_atomic.empty());
    EXPECT_TRUE(r.at(Direction::Backward, m).empty());
  }
  const auto& ex = r.at(Direction::Forward, Mode::Instance).examples.at("rhs B");
  EXPECT_EQ(ex.lhs, Concept::conj(Concept::ran("r"), Concept::ran("s")));
  EXPECT_EQ(ex.rhs, A("B"));
}

TEST(Diff, AnonymousSuccessorOnlyInQueryMode) {
  auto r = diff_of(fixtures::anonymous_successor(), true);
  EXPECT_TRUE(r.at(Direction::Forward, Mode::Concept).empty());
  EXPECT_TRUE(r.at(Direction::Forward, Mode::Instance).empty());
  const auto& q = r.at(Direction::Forward, Mode::Query);
  EXPECT_EQ(q.lhs_atomic, Names{"A"});
  EXPECT_TRUE(q.rhs.empty());
  EXPECT_EQ(q.examples.at("lhs A").rhs, Concept::exists_universal(A("B")));
  EXPECT_TRUE(r.at(Direction::Backward, Mode::Query).empty());
}

TEST(Diff, SharedSuccessorOnlyInQueryMode) {
  auto r = diff_of(fixtures::shared_successor(), true);
  for (auto d : {Direction::Forward, Direction::Backward}) {
    EXPECT_TRUE(r.at(d, Mode::Concept).empty());
    EXPECT_TRUE(r.at(d, Mode::Instance).empty());
  }
  const auto& q = r.at(Direction::Forward, Mode::Query);
  EXPECT_EQ(q.lhs_atomic, Names{"A"});
  EXPECT_TRUE(q.role.empty());
  EXPECT_EQ(q.examples.at("lhs A").rhs, Concept::exists_roles({"r1", "r2"}, Concept::top()));
}

Concept tree_concept(int n) {
  Concept c = A("A0");
  for (int i = 0; i < n; ++i) c = Concept::conj(Concept::exists("r", c), Concept::exists("s", c));
  return c;
}

TEST(Diff, BinaryTreeExample) {
  for (int n : {2, 3}) {
    auto r = diff_of(fixtures::binary_tree(n), true);
    const auto& w = r.at(Direction::Forward, Mode::Concept);
    EXPECT_EQ(w.rhs, Names{"A1"});
    const auto& ex = w.examples.at("rhs A1");
    EXPECT_EQ(ex.lhs, tree_concept(n)) << render_concept(ex.lhs);
    EXPECT_EQ(role_depth(ex.lhs), static_cast<std::size_t>(n));
  }
}

TEST(Diff, BinaryTreeExampleOverflow) {
  auto p = fixtures::binary_tree(3);
  auto c = make_context(p.t1, p.t2, p.sigma);
  auto res = generate_rhs_example(c, "A1", Mode::Concept, 8);
  EXPECT_TRUE(res.overflow);
  EXPECT_FALSE(res.inclusion);
}

TEST(Diff, MergedSuccessorLhs) {
  auto r = diff_of(fixtures::merged_successor(), true);
  const auto& w = r.at(Direction::Forward, Mode::Concept);
  EXPECT_EQ(w.lhs_atomic, Names{"A"});
  Concept expected = Concept::exists("r", Concept::conj(Concept::exists("r", A("B1")), Concept::exists("r", A("B2"))));
  EXPECT_EQ(w.examples.at("lhs A"), (Inclusion{A("A"), expected}));
  EXPECT_EQ(r.at(Direction::Forward, Mode::Instance).lhs_atomic, Names{"A"});
}

TEST(Diff, DefinedVersusPrimitive) {
  EXPECT_TRUE(diff_of(fixtures::defined_versus_primitive(false)).empty());
  auto r = diff_of(fixtures::defined_versus_primitive(true), true);
  const auto& w = r.at(Direction::Forward, Mode::Concept);
  EXPECT_TRUE(w.rhs.count("Ap") || w.lhs_atomic.count("A"));
  auto p = fixtures::defined_versus_primitive(true);
  auto c = make_context(p.t1, p.t2, p.sigma);
  EXPECT_TRUE(entails_subsumption(c.idx1, A("A"), A("Ap")));
  EXPECT_FALSE(entails_subsumption(c.idx2, A("A"), A("Ap")));
}

TEST(Diff, SelfDiffIsEmpty) {
  for (const auto& p : {fixtures::range_conjunction(), fixtures::binary_tree(2), fixtures::merged_successor(),
                        fixtures::shared_successor()}) {
    EXPECT_TRUE(compute_diff(p.t1, p.t1, p.sigma).empty());
    EXPECT_TRUE(compute_diff(p.t2, p.t2, p.sigma).empty());
  }
}

TEST(Diff, DefaultSignatureIsSharedVocabulary) {
  auto p = fixtures::merged_successor();
  Signature s = default_signature(p.t1, p.t2);
  EXPECT_EQ(s, parse_signature("concept A\nconcept B1\nconcept B2\nrole r\n"));
}

TEST(Diff, ReservedNamesInSignatureAreRejected) {
  Signature s;
  s.concepts.insert("@N1");
  EXPECT_THROW(compute_diff(Terminology{}, Terminology{}, s), std::invalid_argument);
}

TEST(Diff, ParallelRunMatchesSequential) {
  auto p = fixtures::merged_successor();
  DiffOptions o;
  o.examples = true;
  auto seq = compute_diff(p.t1, p.t2, p.sigma, o);
  o.parallel = 4;
  auto par = compute_diff(p.t1, p.t2, p.sigma, o);
  EXPECT_EQ(render_report(seq, ReportFormat::Tsv), render_report(par, ReportFormat::Tsv));
}

TEST(Report, TsvRecords) {
  auto r = diff_of(fixtures::range_conjunction());
  std::string tsv = render_report(r, ReportFormat::Tsv);
  EXPECT_NE(tsv.find("1->2\tinstance\trhs B\t"), std::string::npos) << tsv;
  EXPECT_EQ(tsv.find("concept"), std::string::npos);
  EXPECT_EQ(render_report(WitnessReport{}, ReportFormat::Text), "no difference\n");
}

TEST(Report, ExampleIsRendered) {
  auto r = diff_of(fixtures::merged_successor(), true);
  std::string tsv = render_report(r, ReportFormat::Tsv);
  EXPECT_NE(tsv.find("(some r (and (some r B1) (some r B2)))"), std::string::npos) << tsv;
}

TEST(BruteForce, RangeConjunctionAtDepthZero) {
  auto p = fixtures::range_conjunction();
  auto c = make_context(p.t1, p.t2, p.sigma);
  auto w = brute_force_witnesses(c, Mode::Instance, 0, 2);
  EXPECT_EQ(w.rhs, Names{"B"});
  EXPECT_TRUE(brute_force_witnesses(make_context(p.t1, p.t1, p.sigma), Mode::Instance, 1, 2).empty());
}

TEST(BruteForce, MergedSuccessorAtDepthTwo) {
  auto p = fixtures::merged_successor();
  auto c = make_context(p.t1, p.t2, p.sigma);
  auto w = brute_force_witnesses(c, Mode::Concept, 2, 2);
  EXPECT_EQ(w.lhs_atomic, Names{"A"});
}

TEST(RandomTerminology, DeterministicAndAcyclic) {
  auto a = generate_random_terminology(50, 5, 0.525, 0.304, 2, 7);
  auto b = generate_random_terminology(50, 5, 0.525, 0.304, 2, 7);
  EXPECT_TRUE(same_axioms(a, b));
  EXPECT_TRUE(is_acyclic(a));
  EXPECT_EQ(a.axioms().size(), 50u);
  RandomTerminologyParams p{50, 5, 0.525, 0.304, 2};
  EXPECT_TRUE(same_axioms(perturb_random_terminology(p, 7, 0.0, 1), a));
  EXPECT_FALSE(same_axioms(perturb_random_terminology(p, 7, 0.5, 1), a));
}

}  // namespace
}  // namespace ldiff
