#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldiff/canonical.hpp"
#include "ldiff/simulation.hpp"

namespace ldiff {

enum class Mode { Concept, Instance, Query };
enum class Direction { Forward, Backward };
enum class RhsStrategy { Auto, NotWitness, ABox };
enum class WitnessAboxVariant { EL, ELHr };

const char* to_string(Mode m);
const char* to_string(Direction d);

class CyclicTerminologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Marker for "every Sigma-concept" in NotWitness sets.
inline const Name kAll = "@All";

struct Inclusion {
  Concept lhs;
  Concept rhs;
  bool operator==(const Inclusion&) const = default;
};

std::string render_inclusion(const Inclusion& i);

// Example search outcome: an inclusion, or overflow of the size cap.
struct ExampleResult {
  std::optional<Inclusion> inclusion;
  bool overflow = false;
};

struct ModeWitnesses {
  std::set<std::pair<Name, Name>> role;  // (r, s): r <= s holds in t1 only
  std::set<Name> rhs;
  std::set<Name> lhs_atomic;
  std::set<Name> lhs_dom;
  std::set<Name> lhs_ran;
  // Keys: "role r s", "rhs A", "lhs A", "dom r", "ran r".
  std::map<std::string, Inclusion> examples;
  std::set<std::string> overflow;

  bool empty() const;
};

struct WitnessReport {
  std::map<std::pair<Direction, Mode>, ModeWitnesses> entries;

  bool empty() const;
  // Throws std::out_of_range if the entry was not computed.
  const ModeWitnesses& at(Direction d, Mode m) const;
};

struct DiffOptions {
  std::vector<Mode> modes{Mode::Concept, Mode::Instance, Mode::Query};
  bool forward = true;
  bool backward = true;
  RhsStrategy strategy = RhsStrategy::Auto;
  bool examples = false;
  std::size_t max_example_size = 64;
  bool roles_in_sigma = true;
  unsigned parallel = 1;
};

// Both terminologies of one direction, normalized and classified with the
// signature as extra vocabulary.
struct DiffContext {
  NormalizedTerminology t1;
  NormalizedTerminology t2;
  SubsumptionIndex idx1;
  SubsumptionIndex idx2;
  Signature sigma;
};

DiffContext make_context(const Terminology& t1, const Terminology& t2, const Signature& sigma);
// The same pair with the terminologies swapped (no reclassification).
DiffContext reverse_context(const DiffContext& c);

// sig(t1) and sig(t2) intersected, fresh names excluded.
Signature default_signature(const Terminology& t1, const Terminology& t2);

std::set<std::pair<Name, Name>> role_witnesses(const SubsumptionIndex& idx1, const SubsumptionIndex& idx2,
                                               const Signature& sigma, bool restrict_to_sigma = true);

// NotWitness(E) for every E of sig(t1) and sigma, memoized. Requires both
// terminologies acyclic (CyclicTerminologyError otherwise). The EL form
// also requires terminologies without range, domain and role axioms.
class NotWitnessTable {
 public:
  NotWitnessTable(const DiffContext& c, WitnessAboxVariant variant);
  ~NotWitnessTable();
  NotWitnessTable(const NotWitnessTable&) = delete;
  NotWitnessTable& operator=(const NotWitnessTable&) = delete;

  // Xi: kAll first, then the non-conjunctive names of sig(t2) and sigma.
  const std::vector<Name>& xi() const;
  std::set<Name> get(const Name& e);
  bool contains(const Name& e, const Name& a);
  // {A in sig(t1) and sigma | some B in non_conj(t2, A) is not in NotWitness(A)}.
  std::set<Name> rhs_witnesses();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::set<Name> notwitness_el(const DiffContext& c, const Name& e);
std::set<Name> notwitness_elhr(const DiffContext& c, const Name& e);

// Individual names of the witness ABox.
inline const Name kSigmaIndividual = "xi:Sigma";
Name witness_individual(const Name& b);

ABox build_witness_abox(const NormalizedTerminology& t, const SubsumptionIndex& idx, const Signature& sigma,
                        WitnessAboxVariant variant = WitnessAboxVariant::ELHr);

std::set<Name> rhs_witnesses_instance(const DiffContext& c, RhsStrategy strategy = RhsStrategy::Auto);

// Individuals a_r; throws std::invalid_argument if the ABox has no role.
ABox role_splitting_unfold(const ABox& a);
Name split_individual(const Name& a, const Name& r);

// Concept-mode rhs witnesses among the instance-mode ones.
std::set<Name> rhs_witnesses_concept(const DiffContext& c, const std::set<Name>& instance_rhs);
std::set<Name> rhs_witnesses_concept(const DiffContext& c);

struct LhsWitnesses {
  std::set<Name> atomic;
  std::set<Name> dom;
  std::set<Name> ran;
};

enum class LhsPosition { Atomic, Domain, Range };

// Simulation checks between the canonical models of the singleton KBs of
// both terminologies; shared by witness and example computation.
class LhsEngine {
 public:
  LhsEngine(const DiffContext& c, bool query);
  ~LhsEngine();
  LhsEngine(const LhsEngine&) = delete;
  LhsEngine& operator=(const LhsEngine&) = delete;

  LhsWitnesses witnesses();
  bool is_witness(const Name& x, LhsPosition p);
  // A <= D, Er.Top <= D or ran(r) <= D, verified in both terminologies.
  ExampleResult example(const Name& x, LhsPosition p, std::size_t max_size);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LhsWitnesses lhs_witnesses(const DiffContext& c, Mode mode);

ExampleResult generate_rhs_example(const DiffContext& c, const Name& a, Mode mode, std::size_t max_size = 64);
ExampleResult generate_lhs_example(const DiffContext& c, const Name& x, LhsPosition p, Mode mode,
                                   std::size_t max_size = 64);

WitnessReport compute_diff(const Terminology& t1, const Terminology& t2, const std::optional<Signature>& sigma,
                           const DiffOptions& options = {});

// noimply^n_{T,Sigma}(A).
std::set<Concept> noimply_cover(const NormalizedTerminology& t, const SubsumptionIndex& idx, const Signature& sigma,
                                const Name& a, std::size_t n);

// Enumeration oracle over small Sigma-concepts; fills one direction.
ModeWitnesses brute_force_witnesses(const DiffContext& c, Mode mode, std::size_t depth_cap, std::size_t conj_cap);

struct RandomTerminologyParams {
  std::size_t num_defined = 100;
  std::size_t num_roles = 10;
  double eq_ratio = 0.525;
  double exists_ratio = 0.304;
  std::size_t max_conj = 2;
};

// Acyclic EL terminology over names A0.. (defined) and P0.. (primitive).
Terminology generate_random_terminology(const RandomTerminologyParams& p, std::uint64_t seed);
Terminology generate_random_terminology(std::size_t num_defined, std::size_t num_roles, double eq_ratio,
                                        double exists_ratio, std::size_t max_conj, std::uint64_t seed);
// The terminology of (p, seed) with about change_ratio of its definitions
// redrawn from a second stream.
Terminology perturb_random_terminology(const RandomTerminologyParams& p, std::uint64_t seed, double change_ratio,
                                       std::uint64_t change_seed);

enum class ReportFormat { Text, Tsv };
std::string render_report(const WitnessReport& r, ReportFormat f);

}  // namespace ldiff
