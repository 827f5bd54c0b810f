#include "ldiff/reasoner.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <stdexcept>

namespace ldiff {

struct SaturationTables {
  std::vector<Name> names;
  std::unordered_map<Name, int> name_ids;
  std::vector<Name> roles;
  std::unordered_map<Name, int> role_ids;

  std::vector<std::vector<int>> told_conj;                   // A -> B for A <= B
  std::vector<std::vector<std::pair<int, int>>> told_exist;  // A -> (r, D or -1)
  std::vector<std::vector<int>> conj_defs_by_member;         // B -> X with X == .. B ..
  std::vector<std::vector<int>> conj_def_members;            // X -> members
  std::vector<std::vector<std::pair<int, int>>> exist_defs_by_filler;  // B -> (X, s), X == Es.B
  std::vector<std::pair<int, int>> exist_top_defs;                     // (X, s), X == Es.Top
  std::vector<std::vector<int>> range_conj, dom_conj;
  std::vector<std::vector<std::pair<int, int>>> range_exist, dom_exist;
  std::vector<std::vector<int>> sup;
  std::vector<std::vector<char>> is_sub;
  std::vector<std::pair<int, int>> existentials;

  int name(const Name& a) {
    auto [it, fresh] = name_ids.emplace(a, static_cast<int>(names.size()));
    if (fresh) names.push_back(a);
    return it->second;
  }
  int role(const Name& r) {
    auto [it, fresh] = role_ids.emplace(r, static_cast<int>(roles.size()));
    if (fresh) roles.push_back(r);
    return it->second;
  }
};

namespace {

void not_normalized(const Axiom& ax) {
  throw std::invalid_argument("axiom for " + ax.lhs + " is not in normal form");
}

std::shared_ptr<SaturationTables> compile(const Terminology& t) {
  auto tb = std::make_shared<SaturationTables>();
  Signature sig = signature_of(t);
  for (const auto& a : sig.concepts) tb->name(a);
  for (const auto& r : sig.roles) tb->role(r);
  const auto n = tb->names.size();
  const auto nr = tb->roles.size();
  tb->told_conj.resize(n);
  tb->told_exist.resize(n);
  tb->conj_defs_by_member.resize(n);
  tb->conj_def_members.resize(n);
  tb->exist_defs_by_filler.resize(n);
  tb->range_conj.resize(nr);
  tb->dom_conj.resize(nr);
  tb->range_exist.resize(nr);
  tb->dom_exist.resize(nr);

  std::set<std::pair<int, int>> existentials;
  auto split = [&](const Axiom& ax, std::vector<int>& conj, std::vector<std::pair<int, int>>& exist) {
    for (const auto& c : ax.rhs.conjuncts()) {
      if (c.is_atom()) {
        conj.push_back(tb->name_ids.at(c.name()));
      } else if (c.kind() == ConceptKind::Exists && (c.filler().is_atom() || c.filler().is_top())) {
        int d = c.filler().is_top() ? -1 : tb->name_ids.at(c.filler().name());
        exist.emplace_back(tb->role_ids.at(c.name()), d);
        existentials.emplace(tb->role_ids.at(c.name()), d);
      } else {
        not_normalized(ax);
      }
    }
  };

  std::vector<std::vector<int>> direct_sup(nr);
  for (const auto& ax : t.axioms()) {
    switch (ax.kind) {
      case AxiomKind::SubAtom: {
        int a = tb->name_ids.at(ax.lhs);
        split(ax, tb->told_conj[a], tb->told_exist[a]);
        break;
      }
      case AxiomKind::EqAtom: {
        int a = tb->name_ids.at(ax.lhs);
        split(ax, tb->told_conj[a], tb->told_exist[a]);
        if (ax.rhs.kind() == ConceptKind::Exists) {
          int s = tb->role_ids.at(ax.rhs.name());
          if (ax.rhs.filler().is_top()) {
            tb->exist_top_defs.emplace_back(a, s);
          } else {
            tb->exist_defs_by_filler[tb->name_ids.at(ax.rhs.filler().name())].emplace_back(a, s);
          }
        } else {
          if (!tb->told_exist[a].empty()) not_normalized(ax);
          tb->conj_def_members[a] = tb->told_conj[a];
          for (int b : tb->told_conj[a]) tb->conj_defs_by_member[b].push_back(a);
        }
        break;
      }
      case AxiomKind::RangeRestr: {
        int r = tb->role_ids.at(ax.lhs);
        split(ax, tb->range_conj[r], tb->range_exist[r]);
        break;
      }
      case AxiomKind::DomainRestr: {
        int r = tb->role_ids.at(ax.lhs);
        split(ax, tb->dom_conj[r], tb->dom_exist[r]);
        break;
      }
      case AxiomKind::RoleIncl:
        direct_sup[tb->role_ids.at(ax.lhs)].push_back(tb->role_ids.at(ax.sup));
        break;
    }
  }

  tb->sup.resize(nr);
  tb->is_sub.assign(nr, std::vector<char>(nr, 0));
  for (std::size_t r = 0; r < nr; ++r) {
    std::deque<int> queue{static_cast<int>(r)};
    tb->is_sub[r][r] = 1;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      tb->sup[r].push_back(cur);
      for (int s : direct_sup[cur]) {
        if (tb->is_sub[r][s]) continue;
        tb->is_sub[r][s] = 1;
        queue.push_back(s);
      }
    }
    std::sort(tb->sup[r].begin(), tb->sup[r].end());
  }
  tb->existentials.assign(existentials.begin(), existentials.end());
  return tb;
}

const std::vector<int> kNoInts;
const std::vector<std::pair<int, int>> kNoPairs;

template <class T>
const T& at_or(const std::vector<T>& v, int i, const T& fallback) {
  return i >= 0 && static_cast<std::size_t>(i) < v.size() ? v[i] : fallback;
}

}  // namespace

Saturation::Saturation(const Terminology& normalized) : t_(compile(normalized)) {}

int Saturation::intern_name(const Name& a) {
  if (auto it = t_->name_ids.find(a); it != t_->name_ids.end()) return it->second;
  auto [it, fresh] = extra_name_ids_.emplace(a, static_cast<int>(t_->names.size() + extra_names_.size()));
  if (fresh) extra_names_.push_back(a);
  return it->second;
}

int Saturation::intern_role(const Name& r) {
  if (auto it = t_->role_ids.find(r); it != t_->role_ids.end()) return it->second;
  auto [it, fresh] = extra_role_ids_.emplace(r, static_cast<int>(t_->roles.size() + extra_roles_.size()));
  if (fresh) {
    extra_roles_.push_back(r);
    extra_sup_.push_back({it->second});
  }
  return it->second;
}

int Saturation::find_name(const Name& a) const {
  if (auto it = t_->name_ids.find(a); it != t_->name_ids.end()) return it->second;
  if (auto it = extra_name_ids_.find(a); it != extra_name_ids_.end()) return it->second;
  return -1;
}

int Saturation::find_role(const Name& r) const {
  if (auto it = t_->role_ids.find(r); it != t_->role_ids.end()) return it->second;
  if (auto it = extra_role_ids_.find(r); it != extra_role_ids_.end()) return it->second;
  return -1;
}

const Name& Saturation::name_of(int id) const {
  auto n = static_cast<int>(t_->names.size());
  return id < n ? t_->names[id] : extra_names_[id - n];
}

const Name& Saturation::role_of(int id) const {
  auto n = static_cast<int>(t_->roles.size());
  return id < n ? t_->roles[id] : extra_roles_[id - n];
}

std::vector<Name> Saturation::terminology_names() const {
  std::vector<Name> out = t_->names;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Name> Saturation::terminology_roles() const {
  std::vector<Name> out = t_->roles;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Name, std::optional<Name>>> Saturation::told_existentials() const {
  std::vector<std::pair<Name, std::optional<Name>>> out;
  for (auto [r, d] : t_->existentials)
    out.emplace_back(t_->roles[r], d < 0 ? std::nullopt : std::optional<Name>(t_->names[d]));
  return out;
}

const std::vector<int>& Saturation::sup(int r) const {
  auto n = static_cast<int>(t_->roles.size());
  return r < n ? t_->sup[r] : extra_sup_[r - n];
}

bool Saturation::is_sub(int r, int s) const {
  auto n = static_cast<int>(t_->roles.size());
  if (r < n && s < n) return t_->is_sub[r][s] != 0;
  return r == s;
}

std::vector<Name> Saturation::super_roles(const Name& r) const {
  int id = find_role(r);
  if (id < 0) return {r};
  std::vector<Name> out;
  for (int s : sup(id)) out.push_back(role_of(s));
  std::sort(out.begin(), out.end());
  return out;
}

bool Saturation::role_sub(const Name& r, const Name& s) const {
  if (r == s) return true;
  int a = find_role(r);
  int b = find_role(s);
  return a >= 0 && b >= 0 && is_sub(a, b);
}

int Saturation::new_node(NodeInfo info) {
  constexpr std::size_t kMaxNodes = std::size_t{1} << 24;
  if (info_.size() >= kMaxNodes) throw std::length_error("saturation node limit exceeded");
  info_.push_back(std::move(info));
  label_bits_.emplace_back();
  label_list_.emplace_back();
  ran_bits_.emplace_back();
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<int>(info_.size() - 1);
}

int Saturation::context_for(int role, int filler) {
  auto key = std::make_tuple(2, role, filler);
  if (auto it = contexts_.find(key); it != contexts_.end()) return it->second;
  int node = new_node({NodeKind::Range, role, filler, {}});
  contexts_.emplace(key, node);
  for (int s : sup(role)) add_ran(node, s);
  if (filler >= 0) add_label(node, filler);
  return node;
}

int Saturation::name_context(const Name& a) {
  int id = intern_name(a);
  auto key = std::make_tuple(0, -1, id);
  if (auto it = contexts_.find(key); it != contexts_.end()) return it->second;
  int node = new_node({NodeKind::Name, -1, id, {}});
  contexts_.emplace(key, node);
  add_label(node, id);
  return node;
}

int Saturation::domain_context(const Name& r) {
  int id = intern_role(r);
  auto key = std::make_tuple(1, id, -1);
  if (auto it = contexts_.find(key); it != contexts_.end()) return it->second;
  int node = new_node({NodeKind::Domain, id, -1, {}});
  contexts_.emplace(key, node);
  add_edge(node, id, context_for(id, -1));
  return node;
}

int Saturation::range_context(const Name& r, const std::optional<Name>& filler) {
  return context_for(intern_role(r), filler ? intern_name(*filler) : -1);
}

int Saturation::individual(const Name& a) {
  if (auto it = individuals_.find(a); it != individuals_.end()) return it->second;
  int node = new_node({NodeKind::Individual, -1, -1, a});
  individuals_.emplace(a, node);
  return node;
}

void Saturation::assert_concept(int node, const Name& a) { add_label(node, intern_name(a)); }

void Saturation::assert_role(const Name& r, int from, int to) { add_edge(from, intern_role(r), to); }

bool Saturation::has(const std::vector<std::vector<std::uint64_t>>& bits, int node, int id) const {
  const auto& b = bits[node];
  auto word = static_cast<std::size_t>(id) / 64;
  return word < b.size() && ((b[word] >> (id % 64)) & 1U) != 0;
}

bool Saturation::set_bit(std::vector<std::uint64_t>& bits, int id) {
  auto word = static_cast<std::size_t>(id) / 64;
  if (word >= bits.size()) bits.resize(word + 1, 0);
  std::uint64_t mask = std::uint64_t{1} << (id % 64);
  if (bits[word] & mask) return false;
  bits[word] |= mask;
  return true;
}

bool Saturation::has_label(int node, const Name& a) const {
  int id = find_name(a);
  return id >= 0 && has(label_bits_, node, id);
}

std::vector<Name> Saturation::labels(int node) const {
  std::vector<Name> out;
  for (int a : label_list_[node]) out.push_back(name_of(a));
  std::sort(out.begin(), out.end());
  return out;
}

void Saturation::add_label(int node, int a) {
  if (!set_bit(label_bits_[node], a)) return;
  label_list_[node].push_back(a);
  queue_.push_back({Event::Label, node, a, -1});
}

void Saturation::add_edge(int node, int role, int target) {
  std::uint64_t key = (static_cast<std::uint64_t>(node) << 40) | (static_cast<std::uint64_t>(role) << 24) |
                      static_cast<std::uint64_t>(target);
  if (role >= (1 << 16)) throw std::length_error("saturation role limit exceeded");
  if (!edge_keys_.insert(key).second) return;
  out_[node].emplace_back(role, target);
  in_[target].emplace_back(node, role);
  queue_.push_back({Event::Edge, node, role, target});
}

void Saturation::add_ran(int node, int role) {
  if (!set_bit(ran_bits_[node], role)) return;
  queue_.push_back({Event::Ran, node, role, -1});
}

void Saturation::existential_definitions(int node, int role, int filler_name) {
  for (auto [x, s] : at_or(t_->exist_defs_by_filler, filler_name, kNoPairs))
    if (is_sub(role, s)) add_label(node, x);
}

void Saturation::fire_label(int node, int a) {
  for (int b : at_or(t_->told_conj, a, kNoInts)) add_label(node, b);
  for (auto [r, d] : at_or(t_->told_exist, a, kNoPairs)) add_edge(node, r, context_for(r, d));
  for (int x : at_or(t_->conj_defs_by_member, a, kNoInts)) {
    const auto& members = t_->conj_def_members[x];
    if (std::all_of(members.begin(), members.end(), [&](int m) { return has(label_bits_, node, m); }))
      add_label(node, x);
  }
  if (!at_or(t_->exist_defs_by_filler, a, kNoPairs).empty()) {
    for (std::size_t i = 0; i < in_[node].size(); ++i) {
      auto [pred, role] = in_[node][i];
      existential_definitions(pred, role, a);
    }
  }
}

void Saturation::fire_edge(int node, int role, int target) {
  for (int s : sup(role)) {
    for (int b : at_or(t_->dom_conj, s, kNoInts)) add_label(node, b);
    for (auto [r, d] : at_or(t_->dom_exist, s, kNoPairs)) add_edge(node, r, context_for(r, d));
    add_ran(target, s);
  }
  for (std::size_t i = 0; i < label_list_[target].size(); ++i)
    existential_definitions(node, role, label_list_[target][i]);
  for (auto [x, s] : t_->exist_top_defs)
    if (is_sub(role, s)) add_label(node, x);
}

void Saturation::fire_ran(int node, int role) {
  for (int b : at_or(t_->range_conj, role, kNoInts)) add_label(node, b);
  for (auto [r, d] : at_or(t_->range_exist, role, kNoPairs)) add_edge(node, r, context_for(r, d));
}

void Saturation::run() {
  while (!queue_.empty()) {
    Item it = queue_.back();
    queue_.pop_back();
    switch (it.kind) {
      case Event::Label: fire_label(it.node, it.a); break;
      case Event::Edge: fire_edge(it.node, it.a, it.b); break;
      case Event::Ran: fire_ran(it.node, it.a); break;
    }
  }
}

SubsumptionIndex classify(const NormalizedTerminology& t, const Signature& extra) {
  SubsumptionIndex idx;
  idx.source_ = std::make_shared<NormalizedTerminology>(t);
  auto sat = std::make_shared<Saturation>(t.terminology);
  Signature sig = signature_of(t.terminology);
  sig.merge(extra);
  for (const auto& a : sig.concepts) sat->name_context(a);
  for (const auto& r : sig.roles) {
    sat->domain_context(r);
    sat->range_context(r, std::nullopt);
  }
  for (const auto& [r, d] : sat->told_existentials()) sat->range_context(r, d);
  sat->run();

  for (const auto& a : sig.concepts) {
    auto labels = sat->labels(sat->name_context(a));
    idx.supers_[a] = {labels.begin(), labels.end()};
    for (const auto& b : labels) idx.subs_[b].insert(a);
  }
  for (const auto& r : sig.roles) {
    auto dom = sat->labels(sat->domain_context(r));
    auto ran = sat->labels(sat->range_context(r, std::nullopt));
    idx.dom_supers_[r] = {dom.begin(), dom.end()};
    idx.ran_supers_[r] = {ran.begin(), ran.end()};
    for (const auto& b : dom) idx.dom_subs_[b].insert(r);
    for (const auto& b : ran) idx.ran_subs_[b].insert(r);
    auto sups = sat->super_roles(r);
    idx.role_supers_[r] = {sups.begin(), sups.end()};
    for (const auto& s : sups) idx.role_subs_[s].insert(r);
  }
  idx.sat_ = std::move(sat);
  return idx;
}

namespace {

std::set<Name> lookup(const std::map<Name, std::set<Name>>& m, const Name& k) {
  auto it = m.find(k);
  return it == m.end() ? std::set<Name>{} : it->second;
}

}  // namespace

bool SubsumptionIndex::subsumes(const Name& a, const Name& b) const {
  if (a == b) return true;
  auto it = supers_.find(a);
  return it != supers_.end() && it->second.count(b) != 0;
}

bool SubsumptionIndex::entails_domain(const Name& r, const Name& a) const {
  auto it = dom_supers_.find(r);
  return it != dom_supers_.end() && it->second.count(a) != 0;
}

bool SubsumptionIndex::entails_range(const Name& r, const Name& a) const {
  auto it = ran_supers_.find(r);
  return it != ran_supers_.end() && it->second.count(a) != 0;
}

bool SubsumptionIndex::entails_role(const Name& r, const Name& s) const { return sat_->role_sub(r, s); }

std::set<Name> SubsumptionIndex::supers(const Name& a) const {
  auto out = lookup(supers_, a);
  out.insert(a);
  return out;
}

std::set<Name> SubsumptionIndex::domain_supers(const Name& r) const { return lookup(dom_supers_, r); }
std::set<Name> SubsumptionIndex::range_supers(const Name& r) const { return lookup(ran_supers_, r); }

std::set<Name> SubsumptionIndex::subs(const Name& a) const {
  auto out = lookup(subs_, a);
  out.insert(a);
  return out;
}

std::set<Name> SubsumptionIndex::domain_subs(const Name& a) const { return lookup(dom_subs_, a); }
std::set<Name> SubsumptionIndex::range_subs(const Name& a) const { return lookup(ran_subs_, a); }

std::set<Name> SubsumptionIndex::role_subs(const Name& r) const {
  auto out = lookup(role_subs_, r);
  out.insert(r);
  return out;
}

namespace {

std::set<Name> restrict_to(const std::set<Name>& s, const std::set<Name>& keep) {
  std::set<Name> out;
  std::set_intersection(s.begin(), s.end(), keep.begin(), keep.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

PreSets pre_sets(const SubsumptionIndex& idx, const Signature& sigma, const Name& a) {
  return {restrict_to(idx.subs(a), sigma.concepts), restrict_to(idx.domain_subs(a), sigma.roles),
          restrict_to(idx.range_subs(a), sigma.roles)};
}

std::set<Name> pre_role(const SubsumptionIndex& idx, const Signature& sigma, const Name& r) {
  return restrict_to(idx.role_subs(r), sigma.roles);
}

bool entails_role(const NormalizedTerminology& t, const Name& r, const Name& s) {
  return Saturation(t.terminology).role_sub(r, s);
}

}  // namespace ldiff
