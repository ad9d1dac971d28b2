#pragma once

// Check records and their text and structured (JSON) renderings. The JSON
// field names are fixed; see docs/report-schema.md.

#include <cstdint>
#include <string>
#include <vector>

#include "catwb/completion/reflected.hpp"
#include "catwb/verdict.hpp"

namespace catwb::cli {

struct Flags {
  enum class Format { Text, Structured };
  std::size_t budgetSize = 6;
  std::size_t budgetIters = 200000;
  completion::EngineMode engine = completion::EngineMode::Nbe;
  Format format = Format::Text;
  std::uint64_t seed = 1;

  msa::Budget budget() const { return {budgetSize, budgetIters}; }
};

struct CheckRecord {
  std::string id;
  Verdict verdict = Verdict::Pass;
  std::string witness; // required when verdict is Fail
  std::string detail;
};

class Report {
public:
  Report(std::string command, std::string source, Flags flags)
      : command_(std::move(command)), source_(std::move(source)), flags_(flags) {}

  /// Throws std::logic_error on a failing record without a witness.
  void add(CheckRecord r);
  /// Sorts the records by id; rendering does this too.
  void canonicalize();

  const std::string &command() const { return command_; }
  const std::vector<CheckRecord> &checks() const { return checks_; }
  const CheckRecord *find(const std::string &id) const;
  Verdict verdict() const;
  /// 0 when every check passes, 1 on any failure, 2 on unknowns only.
  int exitCode() const;

  std::string text() const;
  std::string structured() const;
  std::string render() const {
    return flags_.format == Flags::Format::Structured ? structured() : text();
  }

private:
  std::string command_;
  std::string source_;
  Flags flags_;
  std::vector<CheckRecord> checks_;
};

} // namespace catwb::cli
