#include "ldiff/syntax.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <vector>

namespace ldiff {

ParseError::ParseError(SourceLocation loc, const std::string& msg)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + msg),
      loc_(loc) {}

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourceLocation loc;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  SourceLocation here() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.loc = here();
    char c = text_[pos_];
    if (c == ')') throw ParseError(e.loc, "unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      skip();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError(e.loc, "unterminated '('");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
        skip();
      }
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      advance();
    }
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' || c == '-';
}

std::string check_name(const std::string& s, SourceLocation loc) {
  if (s.empty()) throw ParseError(loc, "empty name");
  if (s.front() == kReservedPrefix) throw ParseError(loc, "name '" + s + "' uses the reserved prefix '@'");
  for (char c : s)
    if (!name_char(c)) throw ParseError(loc, "invalid character in name '" + s + "'");
  return s;
}

std::string expect_name(const SExpr& e) {
  if (e.is_list) throw ParseError(e.loc, "expected a name");
  return check_name(e.atom, e.loc);
}

const std::string& head_of(const SExpr& e) {
  if (e.items.empty() || e.items.front().is_list) throw ParseError(e.loc, "expected a keyword");
  return e.items.front().atom;
}

Concept to_concept(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "top") return Concept::top();
    return Concept::atom(check_name(e.atom, e.loc));
  }
  const std::string& head = head_of(e);
  const auto n = e.items.size();
  if (head == "and") {
    if (n < 2) throw ParseError(e.loc, "(and ...) needs at least one conjunct");
    std::vector<Concept> parts;
    for (std::size_t i = 1; i < n; ++i) parts.push_back(to_concept(e.items[i]));
    return Concept::conj(std::move(parts));
  }
  if (head == "some") {
    if (n != 3) throw ParseError(e.loc, "(some r C) takes a role and a concept");
    return Concept::exists(expect_name(e.items[1]), to_concept(e.items[2]));
  }
  if (head == "ran") {
    if (n != 2) throw ParseError(e.loc, "(ran r) takes one role");
    return Concept::ran(expect_name(e.items[1]));
  }
  if (head == "some-all") {
    if (n != 3 || !e.items[1].is_list || e.items[1].items.empty())
      throw ParseError(e.loc, "(some-all (r1 .. rk) C) takes a role list and a concept");
    std::vector<Name> roles;
    for (const auto& r : e.items[1].items) roles.push_back(expect_name(r));
    return Concept::exists_roles(std::move(roles), to_concept(e.items[2]));
  }
  if (head == "some-u") {
    if (n != 2) throw ParseError(e.loc, "(some-u C) takes one concept");
    return Concept::exists_universal(to_concept(e.items[1]));
  }
  throw ParseError(e.loc, "unknown concept constructor '" + head + "'");
}

// EL check with a location, so terminology errors point at the offending form.
Concept to_el_rhs(const SExpr& e) {
  Concept c = to_concept(e);
  if (!is_el(c)) throw ParseError(e.loc, "only top, names, and, some are allowed in axioms");
  if (c.is_top()) throw ParseError(e.loc, "right-hand side must not be top");
  return c;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Terminology parse_terminology(std::string_view text) {
  std::vector<Axiom> axioms;
  std::set<Name> declared;
  std::set<Name> defined;
  for (const SExpr& form : Reader(text).read_all()) {
    if (!form.is_list) throw ParseError(form.loc, "expected a form");
    const std::string& head = head_of(form);
    const auto n = form.items.size();
    if (head == "define-concept" || head == "define-primitive-concept") {
      if (n != 3) throw ParseError(form.loc, "(" + head + " NAME C) takes a name and a concept");
      Name a = expect_name(form.items[1]);
      if (!defined.insert(a).second) throw ParseError(form.loc, "concept " + a + " is defined more than once");
      Concept rhs = to_el_rhs(form.items[2]);
      axioms.push_back(head == "define-concept" ? Axiom::eq(a, rhs) : Axiom::sub(a, rhs));
    } else if (head == "define-primitive-role") {
      if (n == 2) {
        declared.insert(expect_name(form.items[1]));
      } else if (n == 4 && !form.items[2].is_list && form.items[2].atom == ":parent") {
        axioms.push_back(Axiom::role_incl(expect_name(form.items[1]), expect_name(form.items[3])));
      } else {
        throw ParseError(form.loc, "(define-primitive-role NAME [:parent NAME]) expected");
      }
    } else if (head == "range" || head == "domain") {
      if (n != 3) throw ParseError(form.loc, "(" + head + " r C) takes a role and a concept");
      Name r = expect_name(form.items[1]);
      Concept rhs = to_el_rhs(form.items[2]);
      axioms.push_back(head == "range" ? Axiom::range(r, rhs) : Axiom::domain(r, rhs));
    } else {
      throw ParseError(form.loc, "unknown form '" + head + "'");
    }
  }
  return Terminology(std::move(axioms), std::move(declared));
}

Signature parse_signature(std::string_view text) {
  Signature s;
  auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream in(line);
    std::string kind, name, extra;
    if (!(in >> kind)) continue;
    SourceLocation loc{i + 1, line.find(kind) + 1};
    if (!(in >> name) || (in >> extra)) throw ParseError(loc, "expected 'concept NAME' or 'role NAME'");
    SourceLocation nloc{i + 1, line.find(name, loc.column - 1 + kind.size()) + 1};
    check_name(name, nloc);
    if (kind == "concept") {
      if (s.has_role(name)) throw ParseError(nloc, "'" + name + "' is already declared as a role");
      s.concepts.insert(name);
    } else if (kind == "role") {
      if (s.has_concept(name)) throw ParseError(nloc, "'" + name + "' is already declared as a concept");
      s.roles.insert(name);
    } else {
      throw ParseError(loc, "unknown declaration '" + kind + "'");
    }
  }
  return s;
}

ABox parse_abox(std::string_view text) {
  ABox a;
  for (const SExpr& form : Reader(text).read_all()) {
    if (!form.is_list) throw ParseError(form.loc, "expected a form");
    const std::string& head = head_of(form);
    if (head == "instance" && form.items.size() == 3) {
      Name ind = expect_name(form.items[1]);
      const SExpr& c = form.items[2];
      if (!c.is_list && c.atom == "top") {
        a.add_top(ind);
      } else {
        a.add_concept(expect_name(c), ind);
      }
    } else if (head == "related" && form.items.size() == 4) {
      a.add_role(expect_name(form.items[3]), expect_name(form.items[1]), expect_name(form.items[2]));
    } else {
      throw ParseError(form.loc, "expected (instance a A) or (related a b r)");
    }
  }
  return a;
}

Concept parse_concept(std::string_view text) {
  auto forms = Reader(text).read_all();
  if (forms.size() != 1) throw ParseError({1, 1}, "expected exactly one concept");
  return to_concept(forms.front());
}

namespace {

void render_into(const Concept& c, std::string& out) {
  switch (c.kind()) {
    case ConceptKind::Top: out += "top"; return;
    case ConceptKind::Atom: out += c.name(); return;
    case ConceptKind::Conj:
      out += "(and";
      for (const auto& ch : c.children()) {
        out += ' ';
        render_into(ch, out);
      }
      out += ')';
      return;
    case ConceptKind::Exists:
      out += "(some " + c.name() + ' ';
      render_into(c.filler(), out);
      out += ')';
      return;
    case ConceptKind::Ran: out += "(ran " + c.name() + ')'; return;
    case ConceptKind::ExistsRoles: {
      out += "(some-all (";
      for (std::size_t i = 0; i < c.roles().size(); ++i) {
        if (i) out += ' ';
        out += c.roles()[i];
      }
      out += ") ";
      render_into(c.filler(), out);
      out += ')';
      return;
    }
    case ConceptKind::ExistsUniversal:
      out += "(some-u ";
      render_into(c.filler(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string render_concept(const Concept& c) {
  std::string out;
  render_into(c, out);
  return out;
}

std::string render_axiom(const Axiom& a) {
  switch (a.kind) {
    case AxiomKind::SubAtom: return "(define-primitive-concept " + a.lhs + " " + render_concept(a.rhs) + ")";
    case AxiomKind::EqAtom: return "(define-concept " + a.lhs + " " + render_concept(a.rhs) + ")";
    case AxiomKind::RangeRestr: return "(range " + a.lhs + " " + render_concept(a.rhs) + ")";
    case AxiomKind::DomainRestr: return "(domain " + a.lhs + " " + render_concept(a.rhs) + ")";
    case AxiomKind::RoleIncl: return "(define-primitive-role " + a.lhs + " :parent " + a.sup + ")";
  }
  return {};
}

std::string render_terminology(const Terminology& t) {
  std::string out;
  for (const auto& r : t.declared_roles()) out += "(define-primitive-role " + r + ")\n";
  for (const auto& ax : t.axioms()) out += render_axiom(ax) + "\n";
  return out;
}

std::string render_signature(const Signature& s) {
  std::string out;
  for (const auto& c : s.concepts) out += "concept " + c + "\n";
  for (const auto& r : s.roles) out += "role " + r + "\n";
  return out;
}

std::string render_abox(const ABox& a) {
  std::string out;
  for (const auto& c : a.concept_assertions())
    out += "(instance " + c.individual + " " + (c.name.empty() ? std::string("top") : c.name) + ")\n";
  for (const auto& r : a.role_assertions()) out += "(related " + r.from + " " + r.to + " " + r.role + ")\n";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Concept& c) { return os << render_concept(c); }
std::ostream& operator<<(std::ostream& os, const Axiom& a) { return os << render_axiom(a); }

}  // namespace ldiff
