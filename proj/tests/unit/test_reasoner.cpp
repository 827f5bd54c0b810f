#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ldiff/reasoner.hpp"

namespace ldiff {
namespace {

Concept A(const std::string& n) { return Concept::atom(n); }

SubsumptionIndex index_of(const Terminology& t, const Signature& extra = {}) { return classify(normalize(t), extra); }

TEST(Classify, EmptyTerminologyIsReflexiveOnly) {
  auto idx = index_of(Terminology{}, parse_signature("concept A\nconcept B"));
  EXPECT_TRUE(idx.subsumes("A", "A"));
  EXPECT_TRUE(idx.subsumes("B", "B"));
  EXPECT_FALSE(idx.subsumes("A", "B"));
  EXPECT_FALSE(idx.subsumes("B", "A"));
  EXPECT_EQ(idx.supers("A"), (std::set<Name>{"A"}));
}

TEST(Classify, RangeConjunction) {
  auto idx = index_of(fixtures::range_conjunction().t1);
  EXPECT_TRUE(idx.entails_range("r", "A1"));
  EXPECT_TRUE(idx.entails_range("s", "A2"));
  EXPECT_FALSE(idx.entails_range("r", "B"));
  EXPECT_TRUE(idx.subsumes("B", "A1"));
  EXPECT_TRUE(idx.subsumes("B", "A2"));
}

TEST(Classify, DomainsExistentialsAndRoleHierarchy) {
  auto idx = index_of(parse_terminology(
      "(define-primitive-role s :parent r)\n(domain r D)\n(define-concept E (some r C))\n"
      "(define-primitive-concept A (some s C))\n(range r R)\n(define-concept F (some r R))\n"));
  EXPECT_TRUE(idx.entails_domain("s", "D"));
  EXPECT_TRUE(idx.entails_domain("r", "F"));
  EXPECT_TRUE(idx.subsumes("A", "D"));
  EXPECT_TRUE(idx.subsumes("A", "E"));
  EXPECT_TRUE(idx.subsumes("A", "F"));
  EXPECT_FALSE(idx.subsumes("E", "A"));
  EXPECT_TRUE(idx.entails_range("s", "R"));
}

TEST(PreSets, EmptyTerminology) {
  Signature sigma = parse_signature("concept A\nconcept B\nrole r");
  auto idx = index_of(Terminology{}, sigma);
  PreSets p = pre_sets(idx, sigma, "A");
  EXPECT_EQ(p.pre_c, (std::set<Name>{"A"}));
  EXPECT_TRUE(p.pre_dom.empty());
  EXPECT_TRUE(p.pre_ran.empty());
  EXPECT_EQ(pre_sets(idx, sigma, "Z").pre_c, std::set<Name>{});
  EXPECT_EQ(pre_sets(idx, parse_signature("concept Z"), "Z").pre_c, (std::set<Name>{"Z"}));
}

TEST(PreSets, RangeConjunction) {
  auto f = fixtures::range_conjunction();
  auto idx = index_of(f.t1);
  PreSets p = pre_sets(idx, f.sigma, "B");
  EXPECT_TRUE(p.pre_ran.empty());
  EXPECT_EQ(p.pre_c, (std::set<Name>{"B"}));
  EXPECT_EQ(pre_sets(idx, parse_signature("role r"), "A1").pre_ran, (std::set<Name>{"r"}));
}

TEST(PreRole, Cases) {
  auto f = fixtures::shared_successor();
  auto idx = index_of(f.t1);
  EXPECT_EQ(pre_role(idx, f.sigma, "r1"), (std::set<Name>{"r1"}));
  EXPECT_EQ(pre_role(index_of(Terminology{}), parse_signature("role r"), "r"), (std::set<Name>{"r"}));
  Terminology chain = parse_terminology("(define-primitive-role t :parent s)\n(define-primitive-role s :parent r)");
  EXPECT_EQ(pre_role(index_of(chain), parse_signature("role r\nrole s\nrole t"), "r"), (std::set<Name>{"r", "s", "t"}));
}

TEST(EntailsRole, Cases) {
  auto f = fixtures::shared_successor();
  EXPECT_TRUE(entails_role(normalize(f.t1), "s", "r1"));
  EXPECT_TRUE(entails_role(normalize(f.t1), "r", "r"));
  EXPECT_FALSE(entails_role(normalize(f.t1), "r1", "s"));
  Terminology chain = parse_terminology("(define-primitive-role t :parent s)\n(define-primitive-role s :parent r)");
  EXPECT_TRUE(entails_role(normalize(chain), "t", "r"));
}

TEST(EntailsSubsumption, RangeConjunction) {
  auto f = fixtures::range_conjunction();
  Concept lhs = Concept::conj(Concept::ran("r"), Concept::ran("s"));
  EXPECT_TRUE(entails_subsumption(normalize(f.t1), lhs, A("B")));
  EXPECT_FALSE(entails_subsumption(normalize(f.t2), lhs, A("B")));
  EXPECT_FALSE(entails_subsumption(normalize(f.t1), Concept::ran("r"), A("B")));
}

TEST(EntailsSubsumption, TopOnTheRight) {
  auto f = fixtures::merged_successor();
  EXPECT_TRUE(entails_subsumption(normalize(f.t1), A("Q"), Concept::top()));
  EXPECT_TRUE(entails_subsumption(normalize(f.t1), Concept::ran("r"), Concept::top()));
}

TEST(EntailsSubsumption, RoleConjunction) {
  auto f = fixtures::shared_successor();
  Concept rhs = Concept::exists_roles({"r1", "r2"}, Concept::top());
  EXPECT_TRUE(entails_subsumption(normalize(f.t1), A("A"), rhs));
  EXPECT_FALSE(entails_subsumption(normalize(f.t2), A("A"), rhs));
}

TEST(EntailsSubsumption, FamilyViolation) {
  NormalizedTerminology t = normalize(Terminology{});
  EXPECT_THROW(entails_subsumption(t, Concept::exists_universal(A("A")), A("A")), std::invalid_argument);
  EXPECT_THROW(entails_subsumption(t, A("A"), Concept::ran("r")), std::invalid_argument);
}

TEST(EntailsSubsumption, MergedSuccessor) {
  auto f = fixtures::merged_successor();
  Concept rhs = Concept::exists("r", Concept::conj(Concept::exists("r", A("B1")), Concept::exists("r", A("B2"))));
  EXPECT_TRUE(entails_subsumption(normalize(f.t1), A("A"), rhs));
  EXPECT_FALSE(entails_subsumption(normalize(f.t2), A("A"), rhs));
}

}  // namespace
}  // namespace ldiff
