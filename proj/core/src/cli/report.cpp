#include "catwb/cli/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace catwb::cli {

void Report::add(CheckRecord r) {
  if (r.verdict == Verdict::Fail && r.witness.empty())
    throw std::logic_error("failing check " + r.id + " has no witness");
  checks_.push_back(std::move(r));
}

void Report::canonicalize() {
  std::stable_sort(checks_.begin(), checks_.end(),
                   [](const CheckRecord &a, const CheckRecord &b) { return a.id < b.id; });
}

const CheckRecord *Report::find(const std::string &id) const {
  for (const auto &c : checks_)
    if (c.id == id)
      return &c;
  return nullptr;
}

Verdict Report::verdict() const {
  Verdict v = Verdict::Pass;
  for (const auto &c : checks_)
    v = worst(v, c.verdict);
  return v;
}

int Report::exitCode() const {
  switch (verdict()) {
  case Verdict::Pass:
    return 0;
  case Verdict::Fail:
    return 1;
  case Verdict::Unknown:
    return 2;
  }
  return 1;
}

namespace {

std::vector<CheckRecord> sorted(std::vector<CheckRecord> v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const CheckRecord &a, const CheckRecord &b) { return a.id < b.id; });
  return v;
}

std::string indent(const std::string &s) {
  std::string out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    out += "    " + line + "\n";
  return out;
}

} // namespace

std::string Report::text() const {
  std::ostringstream out;
  out << command_ << " " << source_ << "\n";
  std::size_t n[3] = {0, 0, 0};
  for (const auto &c : sorted(checks_)) {
    ++n[static_cast<int>(c.verdict)];
    out << "[" << verdictName(c.verdict) << "] " << c.id << "\n";
    if (!c.witness.empty())
      out << "  witness: " << c.witness << "\n";
    if (!c.detail.empty())
      out << indent(c.detail);
  }
  out << n[0] << " pass, " << n[1] << " fail, " << n[2] << " unknown\n";
  return out.str();
}

std::string Report::structured() const {
  using json = nlohmann::ordered_json;
  json checks = json::array();
  std::size_t n[3] = {0, 0, 0};
  for (const auto &c : sorted(checks_)) {
    ++n[static_cast<int>(c.verdict)];
    checks.push_back({{"id", c.id},
                      {"verdict", verdictName(c.verdict)},
                      {"witness", c.witness},
                      {"detail", c.detail},
                      {"budget", {{"size", flags_.budgetSize}, {"iters", flags_.budgetIters}}}});
  }
  json doc = {
      {"schema", "catwb-report/1"},
      {"command", command_},
      {"source", source_},
      {"flags",
       {{"budget_size", flags_.budgetSize},
        {"budget_iters", flags_.budgetIters},
        {"engine", completion::modeName(flags_.engine)},
        {"seed", flags_.seed}}},
      {"checks", checks},
      {"summary",
       {{"pass", n[0]}, {"fail", n[1]}, {"unknown", n[2]}, {"verdict", verdictName(verdict())}}},
      {"exit_code", exitCode()}};
  return doc.dump(2) + "\n";
}

} // namespace catwb::cli
