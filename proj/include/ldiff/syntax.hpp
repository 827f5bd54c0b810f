#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ldiff/concept.hpp"
#include "ldiff/terminology.hpp"

namespace ldiff {

struct SourceLocation {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLocation loc, const std::string& msg);
  const SourceLocation& location() const { return loc_; }

 private:
  SourceLocation loc_;
};

// Names reserved for normalization start with this character.
inline constexpr char kReservedPrefix = '@';

Terminology parse_terminology(std::string_view text);
Signature parse_signature(std::string_view text);
ABox parse_abox(std::string_view text);
// Any concept family, including (ran r), (some-all (r1 .. rk) C) and (some-u C).
Concept parse_concept(std::string_view text);

std::string render_concept(const Concept& c);
std::string render_axiom(const Axiom& a);
std::string render_terminology(const Terminology& t);
std::string render_signature(const Signature& s);
std::string render_abox(const ABox& a);

std::ostream& operator<<(std::ostream& os, const Concept& c);
std::ostream& operator<<(std::ostream& os, const Axiom& a);

}  // namespace ldiff
