#include <sstream>

#include "ldiff/diff.hpp"

namespace ldiff {

namespace {

struct Row {
  std::string direction, mode, witness, example;
};

std::vector<Row> rows_of(const WitnessReport& r) {
  std::vector<Row> rows;
  for (const auto& [key, w] : r.entries) {
    const std::string dir = to_string(key.first), mode = to_string(key.second);
    auto add = [&](const std::string& witness) {
      std::string example;
      if (auto it = w.examples.find(witness); it != w.examples.end()) {
        example = render_inclusion(it->second);
      } else if (w.overflow.count(witness)) {
        example = "overflow";
      }
      rows.push_back({dir, mode, witness, example});
    };
    for (const auto& [a, b] : w.role) add("role " + a + " " + b);
    for (const auto& a : w.rhs) add("rhs " + a);
    for (const auto& a : w.lhs_atomic) add("lhs " + a);
    for (const auto& a : w.lhs_dom) add("dom " + a);
    for (const auto& a : w.lhs_ran) add("ran " + a);
  }
  return rows;
}

}  // namespace

std::string render_report(const WitnessReport& r, ReportFormat f) {
  std::ostringstream out;
  std::vector<Row> rows = rows_of(r);
  if (f == ReportFormat::Tsv) {
    out << "direction\tmode\twitness\texample\n";
    for (const auto& row : rows) out << row.direction << '\t' << row.mode << '\t' << row.witness << '\t' << row.example << '\n';
    return out.str();
  }
  if (rows.empty()) {
    out << "no difference\n";
    return out.str();
  }
  for (const auto& row : rows) {
    out << row.direction << ' ' << row.mode << ' ' << row.witness;
    if (!row.example.empty()) out << "  " << (row.example == "overflow" ? "(example exceeds size cap)" : row.example);
    out << '\n';
  }
  return out.str();
}

}  // namespace ldiff
