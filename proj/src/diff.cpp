#include "ldiff/diff.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "diff_internal.hpp"
#include "ldiff/syntax.hpp"

namespace ldiff {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Concept: return "concept";
    case Mode::Instance: return "instance";
    case Mode::Query: return "query";
  }
  return "?";
}

const char* to_string(Direction d) { return d == Direction::Forward ? "1->2" : "2->1"; }

std::string render_inclusion(const Inclusion& i) {
  return render_concept(i.lhs) + " <= " + render_concept(i.rhs);
}

bool ModeWitnesses::empty() const {
  return role.empty() && rhs.empty() && lhs_atomic.empty() && lhs_dom.empty() && lhs_ran.empty();
}

bool WitnessReport::empty() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.empty(); });
}

const ModeWitnesses& WitnessReport::at(Direction d, Mode m) const { return entries.at({d, m}); }

DiffContext make_context(const Terminology& t1, const Terminology& t2, const Signature& sigma) {
  NormalizedTerminology n1 = normalize(t1);
  NormalizedTerminology n2 = normalize(t2);
  SubsumptionIndex i1 = classify(n1, sigma);
  SubsumptionIndex i2 = classify(n2, sigma);
  return {std::move(n1), std::move(n2), std::move(i1), std::move(i2), sigma};
}

DiffContext reverse_context(const DiffContext& c) { return {c.t2, c.t1, c.idx2, c.idx1, c.sigma}; }

Signature default_signature(const Terminology& t1, const Terminology& t2) {
  Signature s = intersect(signature_of(t1), signature_of(t2));
  std::erase_if(s.concepts, is_fresh_name);
  std::erase_if(s.roles, is_fresh_name);
  return s;
}

std::set<std::pair<Name, Name>> role_witnesses(const SubsumptionIndex& idx1, const SubsumptionIndex& idx2,
                                               const Signature& sigma, bool restrict_to_sigma) {
  std::set<Name> roles = sigma.roles;
  if (!restrict_to_sigma) {
    for (const auto& r : signature_of(idx1.source().terminology).roles)
      if (!is_fresh_name(r)) roles.insert(r);
  }
  std::set<std::pair<Name, Name>> out;
  for (const auto& r : roles)
    for (const auto& s : roles)
      if (r != s && idx1.entails_role(r, s) && !idx2.entails_role(r, s)) out.emplace(r, s);
  return out;
}

namespace {

std::set<Name> rhs_candidates_roots(const DiffContext& c, const std::set<Name>& names) {
  std::set<Name> roots;
  for (const auto& a : names) {
    auto nc = non_conj(c.t2.terminology, a);
    roots.insert(nc.begin(), nc.end());
  }
  return roots;
}

std::set<Name> rhs_by_model(const DiffContext& c, const std::set<Name>& candidates, bool role_split) {
  detail::WitnessAboxModel model(c, rhs_candidates_roots(c, candidates), role_split);
  std::set<Name> out;
  for (const auto& a : candidates)
    for (const auto& b : non_conj(c.t2.terminology, a))
      if (model.entailing_point(a, b)) {
        out.insert(a);
        break;
      }
  return out;
}

bool use_notwitness(const DiffContext& c, RhsStrategy strategy) {
  if (strategy == RhsStrategy::NotWitness) return true;
  if (strategy == RhsStrategy::ABox) return false;
  return is_acyclic(c.t1.terminology) && is_acyclic(c.t2.terminology);
}

}  // namespace

std::set<Name> rhs_witnesses_instance(const DiffContext& c, RhsStrategy strategy) {
  if (use_notwitness(c, strategy)) {
    NotWitnessTable table(c, WitnessAboxVariant::ELHr);
    return table.rhs_witnesses();
  }
  return rhs_by_model(c, c.sigma.concepts, false);
}

std::set<Name> rhs_witnesses_concept(const DiffContext& c, const std::set<Name>& instance_rhs) {
  if (c.sigma.roles.empty() || instance_rhs.empty()) return instance_rhs;
  return rhs_by_model(c, instance_rhs, true);
}

std::set<Name> rhs_witnesses_concept(const DiffContext& c) {
  return rhs_witnesses_concept(c, rhs_witnesses_instance(c));
}

// ---------------------------------------------------------------------------
// Left-hand side witnesses.

struct LhsEngine::Impl {
  const DiffContext& c;
  bool query;
  ContextModel cm1, cm2;
  SimulationSolver solver;
  std::map<int, std::vector<int>> reach1, reach2;
  std::unordered_map<int, std::vector<int>> images;  // known simulating elements of cm2
  std::unordered_map<std::string, std::vector<int>> twins2;
  bool twins_ready = false;

  Impl(const DiffContext& ctx, bool q)
      : c(ctx),
        query(q),
        cm1(context_model(ctx.idx1, ctx.sigma)),
        cm2(context_model(ctx.idx2, ctx.sigma)),
        solver(cm1.interp, cm2.interp, ctx.sigma, q ? SimulationKind::Intersection : SimulationKind::Plain) {}

  static std::string element_key(const Element& e) {
    return std::to_string(static_cast<int>(e.kind)) + "|" + e.individual + "|" + e.role + "|" +
           render_concept(e.filler);
  }

  const std::vector<int>& reach(std::map<int, std::vector<int>>& memo, const Interpretation& i, int d) {
    auto it = memo.find(d);
    if (it == memo.end()) it = memo.emplace(d, reachable(i, d)).first;
    return it->second;
  }

  // Points (d, e) and the roots of the universes (query mode).
  struct Points {
    int d, e, root1, root2;
  };

  Points points(const Name& x, LhsPosition p) const {
    switch (p) {
      case LhsPosition::Atomic: {
        int d = cm1.name_point.at(x), e = cm2.name_point.at(x);
        return {d, e, d, e};
      }
      case LhsPosition::Domain: {
        int d = cm1.domain_point.at(x), e = cm2.domain_point.at(x);
        return {d, e, d, e};
      }
      case LhsPosition::Range:
        return {cm1.range_point.at(x), cm2.range_point.at(x), cm1.domain_point.at(x), cm2.domain_point.at(x)};
    }
    throw std::logic_error("unknown position");
  }

  // An element of u1 without a simulating element in u2.
  std::optional<int> lonely(const std::vector<int>& u1, const std::vector<int>& u2) {
    if (!twins_ready) {
      for (std::size_t e = 0; e < cm2.interp.size(); ++e)
        twins2[element_key(cm2.interp.element(static_cast<int>(e)))].push_back(static_cast<int>(e));
      twins_ready = true;
    }
    std::unordered_set<int> in2(u2.begin(), u2.end());
    for (int d : u1) {
      bool found = false;
      auto& known = images[d];
      for (int e : known)
        if (in2.count(e)) {
          found = true;
          break;
        }
      if (found) continue;
      auto try_e = [&](int e) {
        if (!in2.count(e) || !solver.simulates(d, e)) return false;
        known.push_back(e);
        return true;
      };
      if (auto it = twins2.find(element_key(cm1.interp.element(d))); it != twins2.end())
        for (int e : it->second)
          if ((found = try_e(e))) break;
      if (found) continue;
      for (int e : u2)
        if ((found = try_e(e))) break;
      if (!found) return d;
    }
    return std::nullopt;
  }

  bool is_witness(const Name& x, LhsPosition p) {
    Points pt = points(x, p);
    if (!solver.simulates(pt.d, pt.e)) return true;
    if (!query) return false;
    return lonely(reach(reach1, cm1.interp, pt.root1), reach(reach2, cm2.interp, pt.root2)).has_value();
  }

  ExampleResult example(const Name& x, LhsPosition p, std::size_t max_size) {
    Points pt = points(x, p);
    Concept raw;
    const auto& u1 = reach(reach1, cm1.interp, pt.root1);
    const auto& u2 = reach(reach2, cm2.interp, pt.root2);
    if (!solver.simulates(pt.d, pt.e)) {
      raw = solver.separating_concept(pt.d, pt.e);
    } else if (query) {
      auto d = lonely(u1, u2);
      if (!d) throw std::invalid_argument("not a left-hand side witness: " + x);
      raw = global_separating_concept(solver, *d, u2);
    } else {
      throw std::invalid_argument("not a left-hand side witness: " + x);
    }
    PointEvaluator left(cm1.interp, u1), right(cm2.interp, u2);
    SimulationOptions opts;
    opts.max_witness_size = max_size;
    SimulationResult res = finish_witness(raw, left, pt.d, right, pt.e, opts);
    ExampleResult out;
    if (!res.witness_concept) {
      out.overflow = true;
      return out;
    }
    Concept lhs = p == LhsPosition::Atomic   ? Concept::atom(x)
                  : p == LhsPosition::Domain ? Concept::exists(x, Concept::top())
                                             : Concept::ran(x);
    Inclusion inc{lhs, *res.witness_concept};
    if (!entails_subsumption(c.idx1, inc.lhs, inc.rhs) || entails_subsumption(c.idx2, inc.lhs, inc.rhs))
      throw std::logic_error("left-hand side example failed verification: " + render_inclusion(inc));
    out.inclusion = std::move(inc);
    return out;
  }
};

LhsEngine::LhsEngine(const DiffContext& c, bool query) : impl_(std::make_unique<Impl>(c, query)) {}
LhsEngine::~LhsEngine() = default;

bool LhsEngine::is_witness(const Name& x, LhsPosition p) { return impl_->is_witness(x, p); }

ExampleResult LhsEngine::example(const Name& x, LhsPosition p, std::size_t max_size) {
  return impl_->example(x, p, max_size);
}

LhsWitnesses LhsEngine::witnesses() {
  LhsWitnesses out;
  for (const auto& a : impl_->c.sigma.concepts)
    if (is_witness(a, LhsPosition::Atomic)) out.atomic.insert(a);
  for (const auto& r : impl_->c.sigma.roles) {
    if (is_witness(r, LhsPosition::Domain)) out.dom.insert(r);
    if (is_witness(r, LhsPosition::Range)) out.ran.insert(r);
  }
  return out;
}

LhsWitnesses lhs_witnesses(const DiffContext& c, Mode mode) { return LhsEngine(c, mode == Mode::Query).witnesses(); }

ExampleResult generate_lhs_example(const DiffContext& c, const Name& x, LhsPosition p, Mode mode,
                                   std::size_t max_size) {
  return LhsEngine(c, mode == Mode::Query).example(x, p, max_size);
}

// ---------------------------------------------------------------------------
// Right-hand side examples.

namespace {

// Drops ran(s) for roles s without range consequences in t1 and ran(s)
// directly below Es; the result is EL or ran(r) and EL.
Concept drop_ineffective_ran(const Concept& c, const std::set<Name>& effective) {
  std::vector<Concept> parts;
  for (const auto& p : c.conjuncts()) {
    if (p.kind() == ConceptKind::Ran && !effective.count(p.name())) continue;
    if (p.kind() == ConceptKind::Exists) {
      parts.push_back(Concept::exists(p.name(), drop_ineffective_ran(p.filler(), effective)));
    } else {
      parts.push_back(p);
    }
  }
  return Concept::conj(std::move(parts));
}

Concept concept_shape(const Concept& c, const std::set<Name>& effective) {
  return drop_ineffective_ran(detail::strip_redundant_ran(c), effective);
}

}  // namespace

ExampleResult generate_rhs_example(const DiffContext& c, const Name& a, Mode mode, std::size_t max_size) {
  const bool concept_mode = mode == Mode::Concept && !c.sigma.roles.empty();
  detail::WitnessAboxModel model(c, non_conj(c.t2.terminology, a), concept_mode);
  std::optional<Name> point;
  for (const auto& b : non_conj(c.t2.terminology, a))
    if ((point = model.entailing_point(a, b))) break;
  if (!point) throw std::invalid_argument("not a right-hand side witness: " + a);

  // Assertions over names unknown to t1 have no consequences there.
  Signature sig1 = signature_of(c.t1.terminology);
  const ABox part = detail::connected_part(model.abox(), *point);
  ABox base;
  for (const auto& ca : part.concept_assertions())
    if (sig1.has_concept(ca.name) || ca.name == a) base.add_concept(ca.name, ca.individual);
  for (const auto& ra : part.role_assertions())
    if (sig1.has_role(ra.role)) base.add_role(ra.role, ra.from, ra.to);
  auto entails_a = [&](const ABox& ab) {
    Saturation s = saturate_abox(c.idx1, ab);
    return s.has_label(s.individual(*point), a);
  };
  ABox small = detail::minimize_abox(base, entails_a);
  if (!small.obj().count(*point)) small.add_top(*point);

  std::set<Name> effective;
  for (const auto& r : c.sigma.roles)
    if (!c.idx1.range_supers(r).empty()) effective.insert(r);
  const Concept target = Concept::atom(a);
  constexpr std::size_t kRawLimit = 1 << 14;
  ExampleResult out;
  std::optional<Concept> found;
  for (std::size_t n = 0;; ++n) {
    Concept cand = abox_neighborhood_concept(small, *point, n);
    if (concept_mode) cand = concept_shape(cand, effective);
    if (cand.size() > kRawLimit) {
      out.overflow = true;
      return out;
    }
    if (entails_subsumption(c.idx1, cand, target)) {
      found = cand;
      break;
    }
    if (n > 4 * small.size() + 8) throw std::logic_error("no neighbourhood concept entails " + a);
  }
  auto separates = [&](const Concept& x) {
    return entails_subsumption(c.idx1, x, target) && !entails_subsumption(c.idx2, x, target);
  };
  if (!separates(*found)) throw std::logic_error("right-hand side example failed verification for " + a);
  Concept pruned = prune_concept(*found, separates);
  if (pruned.size() > max_size) {
    out.overflow = true;
    return out;
  }
  if (!separates(pruned)) throw std::logic_error("right-hand side example failed verification for " + a);
  out.inclusion = Inclusion{pruned, target};
  return out;
}

// ---------------------------------------------------------------------------
// Orchestration.

namespace {

template <typename F>
void run_parallel(std::size_t count, unsigned threads, F&& f) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool has_mode(const DiffOptions& o, Mode m) { return std::find(o.modes.begin(), o.modes.end(), m) != o.modes.end(); }

void attach_rhs_examples(const DiffContext& c, Mode mode, ModeWitnesses& w, const DiffOptions& o) {
  std::vector<Name> names(w.rhs.begin(), w.rhs.end());
  std::vector<ExampleResult> results(names.size());
  run_parallel(names.size(), o.parallel,
               [&](std::size_t i) { results[i] = generate_rhs_example(c, names[i], mode, o.max_example_size); });
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string key = "rhs " + names[i];
    if (results[i].inclusion) {
      w.examples.emplace(key, *results[i].inclusion);
    } else {
      w.overflow.insert(key);
    }
  }
}

void attach_lhs_examples(LhsEngine& engine, ModeWitnesses& w, const DiffOptions& o) {
  auto add = [&](const std::string& prefix, const std::set<Name>& names, LhsPosition p) {
    for (const auto& x : names) {
      ExampleResult r = engine.example(x, p, o.max_example_size);
      std::string key = prefix + " " + x;
      if (r.inclusion) {
        w.examples.emplace(key, *r.inclusion);
      } else {
        w.overflow.insert(key);
      }
    }
  };
  add("lhs", w.lhs_atomic, LhsPosition::Atomic);
  add("dom", w.lhs_dom, LhsPosition::Domain);
  add("ran", w.lhs_ran, LhsPosition::Range);
}

std::map<Mode, ModeWitnesses> run_direction(const DiffContext& c, const DiffOptions& o) {
  std::map<Mode, ModeWitnesses> out;
  auto roles = role_witnesses(c.idx1, c.idx2, c.sigma, o.roles_in_sigma);
  std::set<Name> inst_rhs = rhs_witnesses_instance(c, o.strategy);
  for (Mode m : o.modes) out[m].role = roles;

  if (has_mode(o, Mode::Concept) || has_mode(o, Mode::Instance)) {
    LhsEngine engine(c, false);
    LhsWitnesses lhs = engine.witnesses();
    for (Mode m : {Mode::Concept, Mode::Instance}) {
      if (!has_mode(o, m)) continue;
      auto& w = out[m];
      w.rhs = m == Mode::Concept ? rhs_witnesses_concept(c, inst_rhs) : inst_rhs;
      w.lhs_atomic = lhs.atomic;
      w.lhs_dom = lhs.dom;
      w.lhs_ran = lhs.ran;
      if (o.examples) {
        attach_rhs_examples(c, m, w, o);
        attach_lhs_examples(engine, w, o);
      }
    }
  }
  if (has_mode(o, Mode::Query)) {
    LhsEngine engine(c, true);
    LhsWitnesses lhs = engine.witnesses();
    auto& w = out[Mode::Query];
    w.rhs = inst_rhs;
    w.lhs_atomic = lhs.atomic;
    w.lhs_dom = lhs.dom;
    w.lhs_ran = lhs.ran;
    if (o.examples) {
      attach_rhs_examples(c, Mode::Query, w, o);
      attach_lhs_examples(engine, w, o);
    }
  }
  return out;
}

}  // namespace

WitnessReport compute_diff(const Terminology& t1, const Terminology& t2, const std::optional<Signature>& sigma,
                           const DiffOptions& options) {
  Signature s = sigma ? *sigma : default_signature(t1, t2);
  for (const auto& n : s.concepts)
    if (is_fresh_name(n)) throw std::invalid_argument("signature contains reserved name " + n);
  for (const auto& n : s.roles)
    if (is_fresh_name(n)) throw std::invalid_argument("signature contains reserved name " + n);
  if (options.strategy == RhsStrategy::NotWitness && (!is_acyclic(t1) || !is_acyclic(t2)))
    throw CyclicTerminologyError("strategy notwitness requires acyclic terminologies");

  DiffContext forward = make_context(t1, t2, s);
  std::vector<Direction> dirs;
  if (options.forward) dirs.push_back(Direction::Forward);
  if (options.backward) dirs.push_back(Direction::Backward);
  std::vector<std::map<Mode, ModeWitnesses>> results(dirs.size());
  std::optional<DiffContext> backward;
  if (options.backward) backward.emplace(reverse_context(forward));
  DiffOptions inner = options;
  inner.parallel = std::max(1u, options.parallel / std::max<unsigned>(1, static_cast<unsigned>(dirs.size())));
  run_parallel(dirs.size(), options.parallel, [&](std::size_t i) {
    results[i] = run_direction(dirs[i] == Direction::Forward ? forward : *backward, inner);
  });
  WitnessReport report;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (auto& [m, w] : results[i]) report.entries[{dirs[i], m}] = std::move(w);
  return report;
}

}  // namespace ldiff
