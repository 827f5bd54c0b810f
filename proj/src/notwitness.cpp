#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <unordered_map>

#include "ldiff/diff.hpp"

namespace ldiff {

namespace {

using Bits = boost::dynamic_bitset<>;

bool has_role_axioms(const Terminology& t) {
  for (const auto& a : t.axioms())
    if (a.kind == AxiomKind::RangeRestr || a.kind == AxiomKind::DomainRestr || a.kind == AxiomKind::RoleIncl)
      return true;
  return false;
}

}  // namespace

struct NotWitnessTable::Impl {
  struct ExistDef {
    std::size_t a;                     // index in xi
    std::set<Name> pre_role;           // preRole_T2(t)
    std::vector<std::size_t> nonconj;  // non_conj_T2(B) as xi indices
  };

  const DiffContext& c;
  WitnessAboxVariant variant;
  std::vector<Name> xi;
  std::unordered_map<Name, std::size_t> index;
  std::map<Name, Bits> up_c, up_dom, up_ran;
  Bits pseudo_primitive;
  std::vector<ExistDef> exist_defs;
  std::map<Name, std::vector<std::size_t>> exist_by_role;  // s -> defs with s in preRole_T2(t)
  std::map<Name, std::vector<std::size_t>> exist_by_a;     // role r' of the definition -> defs (EL form)
  std::unordered_map<Name, Bits> memo;

  Impl(const DiffContext& ctx, WitnessAboxVariant v) : c(ctx), variant(v) {
    if (!is_acyclic(c.t1.terminology) || !is_acyclic(c.t2.terminology))
      throw CyclicTerminologyError("NotWitness requires acyclic terminologies");
    if (variant == WitnessAboxVariant::EL &&
        (has_role_axioms(c.t1.terminology) || has_role_axioms(c.t2.terminology)))
      throw std::invalid_argument("EL NotWitness: terminologies contain role, range or domain axioms");
    const Terminology& t2 = c.t2.terminology;
    Signature sig2 = signature_of(t2);
    sig2.merge(c.sigma);
    xi.push_back(kAll);
    for (const auto& a : sig2.concepts)
      if (!is_conjunctive(t2, a)) xi.push_back(a);
    for (std::size_t i = 0; i < xi.size(); ++i) index[xi[i]] = i;

    auto bits_of = [this](const std::set<Name>& names) {
      Bits b(xi.size());
      for (const auto& n : names)
        if (auto it = index.find(n); it != index.end()) b.set(it->second);
      return b;
    };
    for (const auto& b : c.sigma.concepts) up_c[b] = bits_of(c.idx2.supers(b));
    for (const auto& r : c.sigma.roles) {
      up_dom[r] = bits_of(c.idx2.domain_supers(r));
      up_ran[r] = bits_of(c.idx2.range_supers(r));
    }
    pseudo_primitive.resize(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
      if (i == 0 || t2.is_pseudo_primitive(xi[i])) {
        pseudo_primitive.set(i);
        continue;
      }
      const Axiom* d = t2.definition_of(xi[i]);
      const Concept& rhs = d->rhs;
      ExistDef e;
      e.a = i;
      e.pre_role = pre_role(c.idx2, c.sigma, rhs.name());
      for (const auto& b : non_conj(t2, rhs.filler().name())) e.nonconj.push_back(index.at(b));
      std::size_t id = exist_defs.size();
      for (const auto& s : e.pre_role) exist_by_role[s].push_back(id);
      exist_by_a[rhs.name()].push_back(id);
      exist_defs.push_back(std::move(e));
    }
  }

  Bits aux(const Name& e) {
    PreSets p = pre_sets(c.idx1, c.sigma, e);
    Bits out(xi.size());
    out.set();
    for (const auto& b : p.pre_c) out &= up_c.at(b);
    if (variant == WitnessAboxVariant::ELHr) {
      for (const auto& r : p.pre_ran) out &= up_ran.at(r);
      for (const auto& r : p.pre_dom) out &= up_dom.at(r);
    }
    return out;
  }

  const Bits& get(const Name& e) {
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    Bits out = compute(e);
    return memo.emplace(e, std::move(out)).first->second;
  }

  Bits compute(const Name& e) {
    const Terminology& t1 = c.t1.terminology;
    const Axiom* d = t1.definition_of(e);
    if (d == nullptr || d->kind != AxiomKind::EqAtom) return aux(e);
    if (d->rhs.kind() != ConceptKind::Exists) {
      Bits out(xi.size());
      for (const auto& ei : non_conj(t1, e)) out |= get(ei);
      return out;
    }
    const Name& r = d->rhs.name();
    const Name& e1 = d->rhs.filler().name();
    return variant == WitnessAboxVariant::EL ? compute_exists_el(e, r, e1) : compute_exists_elhr(e, r, e1);
  }

  Bits compute_exists_el(const Name& e, const Name& r, const Name& e1) {
    const Bits& inner = get(e1);
    if (!c.sigma.has_role(r) || inner.test(0)) return aux(e);
    Bits out(xi.size());
    if (auto it = exist_by_a.find(r); it != exist_by_a.end()) {
      for (std::size_t id : it->second) {
        const auto& def = exist_defs[id];
        bool all = std::all_of(def.nonconj.begin(), def.nonconj.end(), [&](std::size_t b) { return inner.test(b); });
        if (all) out.set(def.a);
      }
    }
    return out & aux(e);
  }

  Bits compute_exists_elhr(const Name& e, const Name& r, const Name& e1) {
    std::set<Name> pre_r = pre_role(c.idx1, c.sigma, r);
    if (pre_r.empty() || get(e1).test(0)) return aux(e);
    Bits aux_e = aux(e);
    Bits prim = pseudo_primitive;
    for (const auto& s : pre_r) prim &= up_dom.at(s);

    std::vector<Name> inner_names;
    for (const auto& x : non_conj(c.t1.terminology, e1)) inner_names.push_back(x);
    std::vector<Bits> inner_bits;
    std::vector<std::set<Name>> inner_pre_ran;
    for (const auto& x : inner_names) {
      inner_bits.push_back(get(x));
      inner_pre_ran.push_back(pre_sets(c.idx1, c.sigma, x).pre_ran);
    }

    Bits exist(xi.size());
    const Name& s0 = *pre_r.begin();
    std::vector<std::size_t> candidates;
    if (auto it = exist_by_role.find(s0); it != exist_by_role.end()) candidates = it->second;
    const Bits& dom0 = up_dom.at(s0);
    for (std::size_t id = 0; id < exist_defs.size(); ++id)
      if (dom0.test(exist_defs[id].a)) candidates.push_back(id);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (std::size_t id : candidates) {
      const auto& def = exist_defs[id];
      if (!aux_e.test(def.a)) continue;
      bool ok = true;
      for (const auto& s : pre_r) {
        bool in_role = def.pre_role.count(s) != 0;
        bool in_dom = up_dom.at(s).test(def.a);
        if (!in_role && !in_dom) {
          ok = false;
          break;
        }
        if (!in_role || in_dom) continue;
        for (std::size_t b : def.nonconj) {
          if (up_ran.at(s).test(b)) continue;
          bool found = false;
          for (std::size_t k = 0; k < inner_names.size() && !found; ++k)
            found = inner_bits[k].test(b) && inner_pre_ran[k].count(s) == 0;
          if (!found) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) exist.set(def.a);
    }
    return (prim | exist) & aux_e;
  }
};

NotWitnessTable::NotWitnessTable(const DiffContext& c, WitnessAboxVariant variant)
    : impl_(std::make_unique<Impl>(c, variant)) {}

NotWitnessTable::~NotWitnessTable() = default;

const std::vector<Name>& NotWitnessTable::xi() const { return impl_->xi; }

std::set<Name> NotWitnessTable::get(const Name& e) {
  const Bits& b = impl_->get(e);
  std::set<Name> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.insert(impl_->xi[i]);
  return out;
}

bool NotWitnessTable::contains(const Name& e, const Name& a) {
  auto it = impl_->index.find(a);
  return it != impl_->index.end() && impl_->get(e).test(it->second);
}

std::set<Name> NotWitnessTable::rhs_witnesses() {
  std::set<Name> out;
  Signature sig1 = signature_of(impl_->c.t1.terminology);
  for (const auto& a : impl_->c.sigma.concepts) {
    if (!sig1.has_concept(a)) continue;
    for (const auto& b : non_conj(impl_->c.t2.terminology, a)) {
      if (!contains(a, b)) {
        out.insert(a);
        break;
      }
    }
  }
  return out;
}

std::set<Name> notwitness_el(const DiffContext& c, const Name& e) {
  NotWitnessTable t(c, WitnessAboxVariant::EL);
  return t.get(e);
}

std::set<Name> notwitness_elhr(const DiffContext& c, const Name& e) {
  NotWitnessTable t(c, WitnessAboxVariant::ELHr);
  return t.get(e);
}

}  // namespace ldiff
