#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ldiff/syntax.hpp"

namespace ldiff {
namespace {

TEST(ParseTerminology, DefineConcept) {
  Terminology t = parse_terminology("(define-concept A (and B1 B2))");
  ASSERT_EQ(t.axioms().size(), 1u);
  EXPECT_EQ(t.axioms()[0], Axiom::eq("A", Concept::conj(Concept::atom("B1"), Concept::atom("B2"))));
}

TEST(ParseTerminology, RangesAndDefinition) {
  Terminology t = fixtures::range_conjunction().t1;
  std::vector<Axiom> expected{Axiom::range("r", Concept::atom("A1")), Axiom::range("s", Concept::atom("A2")),
                              Axiom::eq("B", Concept::conj(Concept::atom("A1"), Concept::atom("A2")))};
  EXPECT_EQ(t.axioms(), expected);
}

TEST(ParseTerminology, RolesAndDomains) {
  Terminology t = parse_terminology(
      "; comment\n(define-primitive-role s :parent r)\n(define-primitive-role q)\n(domain r (some t A))\n");
  EXPECT_EQ(t.axioms()[0], Axiom::role_incl("s", "r"));
  EXPECT_EQ(t.axioms()[1], Axiom::domain("r", Concept::exists("t", Concept::atom("A"))));
  EXPECT_EQ(t.declared_roles(), (std::set<Name>{"q"}));
  EXPECT_TRUE(signature_of(t).has_role("q"));
}

TEST(ParseTerminology, TopRightHandSideRejected) {
  try {
    parse_terminology("(define-concept A top)");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 1u);
    EXPECT_EQ(e.location().column, 19u);
  }
}

TEST(ParseTerminology, Errors) {
  EXPECT_THROW(parse_terminology("(define-concept A B)\n(define-primitive-concept A C)"), ParseError);
  EXPECT_THROW(parse_terminology("(define-concept @N1 B)"), ParseError);
  EXPECT_THROW(parse_terminology("(define-concept A (ran r))"), ParseError);
  EXPECT_THROW(parse_terminology("(define-concept A B"), ParseError);
  EXPECT_THROW(parse_terminology("(frobnicate A B)"), ParseError);
  EXPECT_THROW(parse_terminology("(define-concept A! B)"), ParseError);
  EXPECT_THROW(parse_terminology(")"), ParseError);
  try {
    parse_terminology("(define-concept A B)\n\n   (define-concept A C)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 3u);
    EXPECT_EQ(e.location().column, 4u);
    EXPECT_NE(std::string(e.what()).find("A"), std::string::npos);
  }
}

TEST(ParseSignature, Declarations) {
  EXPECT_EQ(parse_signature("concept A\nrole r\nrole s"), (Signature{{"A"}, {"r", "s"}}));
  EXPECT_TRUE(parse_signature("").empty());
  EXPECT_EQ(parse_signature("# header\n  concept A  # trailing\n"), (Signature{{"A"}, {}}));
  EXPECT_THROW(parse_signature("concept A\nrole A"), ParseError);
  EXPECT_THROW(parse_signature("thing A"), ParseError);
  EXPECT_THROW(parse_signature("concept A B"), ParseError);
  try {
    parse_signature("concept A\nrole A");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 2u);
    EXPECT_EQ(e.location().column, 6u);
  }
}

TEST(ParseABox, Assertions) {
  ABox a = parse_abox("(instance a A)\n(related a b r)\n(instance c top)");
  EXPECT_EQ(a.obj(), (std::set<Name>{"a", "b", "c"}));
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(parse_abox(render_abox(a)), a);
}

TEST(RenderConcept, Forms) {
  Concept c = Concept::exists("r", Concept::conj(Concept::exists("r", Concept::atom("B1")),
                                                 Concept::exists("r", Concept::atom("B2"))));
  EXPECT_EQ(render_concept(c), "(some r (and (some r B1) (some r B2)))");
  EXPECT_EQ(render_concept(Concept::top()), "top");
  EXPECT_EQ(render_concept(Concept::conj(Concept::ran("r"), Concept::ran("s"))), "(and (ran r) (ran s))");
  Concept q = Concept::exists_universal(Concept::exists_roles({"r1", "r2"}, Concept::top()));
  EXPECT_EQ(render_concept(q), "(some-u (some-all (r1 r2) top))");
  EXPECT_EQ(parse_concept(render_concept(q)), q);
  EXPECT_EQ(parse_concept(render_concept(c)), c);
}

TEST(RenderTerminology, RoundTrip) {
  Terminology t = parse_terminology(
      "(define-primitive-role s :parent r)\n(define-primitive-role q)\n(range r (and A (some s B)))\n"
      "(domain s C)\n(define-concept D (some r top))\n(define-primitive-concept E (and C D))\n");
  EXPECT_TRUE(same_axioms(parse_terminology(render_terminology(t)), t));
}

}  // namespace
}  // namespace ldiff
