#pragma once

// Small terminology pairs used across unit, property and acceptance tests.

#include <string>

#include "ldiff/syntax.hpp"

namespace ldiff::fixtures {

struct Pair {
  Terminology t1;
  Terminology t2;
  Signature sigma;
};

// Ranges of r and s together imply B only in t1.
inline Pair range_conjunction() {
  return {parse_terminology("(range r A1)\n(range s A2)\n(define-concept B (and A1 A2))\n"), Terminology{},
          parse_signature("concept B\nrole r\nrole s\n")};
}

// t1 adds an anonymous B-successor of A.
inline Pair anonymous_successor() {
  return {parse_terminology("(define-primitive-concept A (some r B))\n"), Terminology{},
          parse_signature("concept A\nconcept B\n")};
}

// One s-successor under two super roles versus two separate successors.
inline Pair shared_successor() {
  return {parse_terminology("(define-primitive-concept A (some s top))\n"
                            "(define-primitive-role s :parent r1)\n"
                            "(define-primitive-role s :parent r2)\n"),
          parse_terminology("(define-primitive-concept A (and (some r1 top) (some r2 top)))\n"),
          parse_signature("concept A\nrole r1\nrole r2\n")};
}

// Binary r/s tree of depth n over A0 defining A1 versus a tree below A1.
inline Pair binary_tree(int n) {
  std::string t1 = "(define-primitive-concept A0 B0)\n(define-concept A1 B" + std::to_string(n) + ")\n";
  std::string t2 = "(define-primitive-concept A1 F0)\n";
  for (int i = 0; i < n; ++i) {
    auto b = std::to_string(i);
    auto b1 = std::to_string(i + 1);
    t1 += "(define-concept B" + b1 + " (and (some r B" + b + ") (some s B" + b + ")))\n";
    t2 += "(define-primitive-concept F" + b + " (and (some r F" + b1 + ") (some s F" + b1 + ")))\n";
  }
  return {parse_terminology(t1), parse_terminology(t2), parse_signature("concept A0\nconcept A1\nrole r\nrole s\n")};
}

// The same tree in normal form with the intermediate names spelled out.
inline Pair binary_tree_normalized(int n) {
  std::string t1 = "(define-primitive-concept A0 B0)\n(define-concept A1 B" + std::to_string(n) + ")\n";
  std::string t2 = "(define-primitive-concept A1 F0)\n";
  for (int i = 0; i < n; ++i) {
    auto b = std::to_string(i);
    auto b1 = std::to_string(i + 1);
    t1 += "(define-concept B" + b1 + " (and Bp" + b1 + " Bpp" + b1 + "))\n";
    t1 += "(define-concept Bp" + b1 + " (some r B" + b + "))\n";
    t1 += "(define-concept Bpp" + b1 + " (some s B" + b + "))\n";
    t2 += "(define-concept F" + b + " (and Fp" + b + " Fpp" + b + "))\n";
    t2 += "(define-primitive-concept Fp" + b + " (some r F" + b1 + "))\n";
    t2 += "(define-primitive-concept Fpp" + b + " (some s F" + b1 + "))\n";
  }
  return {parse_terminology(t1), parse_terminology(t2), parse_signature("concept A0\nconcept A1\nrole r\nrole s\n")};
}

// Two r-steps to B1 and B2 through one successor versus two.
inline Pair merged_successor() {
  return {parse_terminology("(define-primitive-concept A (some r F0))\n"
                            "(define-primitive-concept F0 (and F1 F2))\n"
                            "(define-primitive-concept F1 (some r B1))\n"
                            "(define-primitive-concept F2 (some r B2))\n"),
          parse_terminology("(define-primitive-concept A (and G1 G2))\n"
                            "(define-primitive-concept G1 (some r Gp1))\n"
                            "(define-primitive-concept G2 (some r Gp2))\n"
                            "(define-primitive-concept Gp1 (some r B1))\n"
                            "(define-primitive-concept Gp2 (some r B2))\n"),
          parse_signature("concept A\nconcept B1\nconcept B2\nrole r\n")};
}

// A' defined versus only included; inseparable until B <= B' is added.
inline Pair defined_versus_primitive(bool with_extension) {
  std::string ext = with_extension ? "(define-primitive-concept B Bp)\n" : "";
  return {parse_terminology("(define-primitive-concept A (some r B))\n(define-concept Ap (some r Bp))\n" + ext),
          parse_terminology("(define-primitive-concept A (some r B))\n(define-primitive-concept Ap (some r Bp))\n" + ext),
          parse_signature("concept A\nconcept Ap\nconcept B\nconcept Bp\n")};
}

}  // namespace ldiff::fixtures
