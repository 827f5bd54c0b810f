#pragma once

#include <map>
#include <set>
#include <string>

#include "ldiff/terminology.hpp"

namespace ldiff {

inline constexpr const char* kFreshPrefix = "@N";

bool is_fresh_name(const Name& n);

struct NormalizedTerminology {
  Terminology terminology;
  std::set<Name> fresh;
  std::map<Name, Concept> origin;  // fresh name -> the subconcept it abbreviates
};

NormalizedTerminology normalize(const Terminology& t);

// True iff every axiom has one of the normalized shapes:
// A == Er.B, A == F, E <= Er.B, E <= Er.Top, E <= F with every conjunct of F
// non-conjunctive, E a name, Er.Top or ran(r).
bool is_normalized(const Terminology& t);

}  // namespace ldiff
