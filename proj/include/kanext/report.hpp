#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kanext {

enum class Verdict { Pass, Fail, Error };

std::string to_string(Verdict v);

/// The outcome of one command: ordered key/value fields, witnesses included.
struct Record {
  std::string command;
  std::string tag;
  Verdict verdict = Verdict::Pass;
  std::vector<std::pair<std::string, std::string>> fields;
  double seconds = 0;  // shown in the human format only

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  /// Downgrades a passing record to Fail and cites the reason once.
  void fail(const std::string& reason);
};

struct Report {
  std::string source;  // spec file name, or the built-in suite
  std::vector<Record> records;

  bool all_pass() const;
};

enum class Format { Human, Machine };

/// Machine format: "key: value" lines, one block per record, nothing that
/// varies between runs. Newlines inside values are written as "\n".
std::string emit(const Report& report, Format format);

}  // namespace kanext
